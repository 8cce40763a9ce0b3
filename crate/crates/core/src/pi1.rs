//! The fundamental group of a complex of groups, presented finitely.
//!
//! Generators are one symbol per nontrivial local-group element (element
//! encoding, used for local groups of order at most 16; larger groups get
//! one symbol per group generator with relators from their Cayley graph)
//! plus one symbol per barycentric edge. Relations:
//!
//! * the local multiplication (or the local group's presentation),
//! * `psi_a(g) = a^-1 g a` for every edge `a` and source generator `g`,
//! * for every composable pair, the composed-edge letter equals the product
//!   of the two edge letters corrected by the twist (see
//!   [`TwistConvention`]),
//! * one killed letter per edge of a spanning tree, basing the group at the
//!   chosen cell.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::budget::Budget;
use crate::cog::ComplexOfGroups;
use crate::groups::perm::Perm;
use crate::groups::presentation::{presentation_from_closure, Presentation};
use crate::groups::verdict::{word_verdict, WordVerdict};
use crate::groups::word::Word;

/// Reading of the printed relation `ab = ba g_{a,b}`: with path-order word
/// composition the composed-edge letter must equal `b * a * g_{a,b}`, and
/// the recovery property for group quotients confirms it. The alternative
/// reading is kept selectable; the two agree on twist-trivial complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TwistConvention {
    /// `[ab] = [b][a] g_{a,b}` (default)
    #[default]
    ComposedEqualsBaTwist,
    /// `[ab] = [a][b] g_{a,b}` (alternative reading)
    ComposedEqualsAbTwist,
}

/// Spanning-tree choice; both are breadth-first from the basepoint, differing
/// in the order incident edges are examined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TreeStrategy {
    #[default]
    CanonicalBfs,
    ReversedBfs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pi1Options {
    pub convention: TwistConvention,
    pub tree: TreeStrategy,
    /// Local groups of order up to this bound use the element encoding.
    pub small_group_bound: usize,
}

impl Default for Pi1Options {
    fn default() -> Self {
        Pi1Options {
            convention: TwistConvention::default(),
            tree: TreeStrategy::default(),
            small_group_bound: 16,
        }
    }
}

/// What a presentation generator stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorTag {
    /// Element `element` (closure index) of the local group at `cell`.
    LocalElement { cell: usize, element: usize },
    /// Generator `generator` of the local group at `cell` (large encoding).
    LocalGenerator { cell: usize, generator: usize },
    /// The barycentric edge with this index.
    Edge { edge: usize },
}

#[derive(Clone, Debug)]
enum Encoding {
    /// per closure element: its letter (None for the identity)
    Small(Vec<Option<usize>>),
    /// per group generator: its letter
    Large(Vec<usize>),
}

/// A finite presentation of the fundamental group based at a cell.
#[derive(Clone, Debug)]
pub struct Pi1Presentation {
    pub presentation: Presentation,
    pub dictionary: Vec<GeneratorTag>,
    /// Edge indices of the spanning tree (killed letters).
    pub spanning_tree: Vec<usize>,
    pub basepoint: usize,
    pub options: Pi1Options,
    encodings: Vec<Encoding>,
    edge_letters: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pi1Error {
    DisconnectedBase,
    BasepointOutOfRange,
}

impl fmt::Display for Pi1Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pi1Error::DisconnectedBase => write!(f, "the base complex is not connected"),
            Pi1Error::BasepointOutOfRange => write!(f, "basepoint is not a cell of the base"),
        }
    }
}

impl core::error::Error for Pi1Error {}

impl Pi1Presentation {
    /// The word spelling an element of the local group at `cell`.
    pub fn local_element_word(&self, cog: &ComplexOfGroups, cell: usize, g: &Perm) -> Word {
        let idx = cog
            .local_closure(cell)
            .element_index(g)
            .expect("element of the local group");
        match &self.encodings[cell] {
            Encoding::Small(letters) => match letters[idx] {
                None => Word::empty(),
                Some(l) => Word::generator(l),
            },
            Encoding::Large(letters) => {
                let w = cog
                    .local_closure(cell)
                    .element_word(g)
                    .expect("element of the closure");
                Word::from_letters(w.letters().iter().map(|&l| {
                    let mapped = letters[(l.unsigned_abs() - 1) as usize] as i32 + 1;
                    if l > 0 {
                        mapped
                    } else {
                        -mapped
                    }
                }))
            }
        }
    }

    /// The single-letter word of a barycentric edge.
    pub fn edge_word(&self, edge: usize) -> Word {
        Word::generator(self.edge_letters[edge])
    }

    /// The image of a local-group element in the based fundamental group
    /// (with the tree killed, the bare letter already is the image).
    pub fn iota(&self, cog: &ComplexOfGroups, cell: usize, g: &Perm) -> Word {
        self.local_element_word(cog, cell, g)
    }
}

/// Builds the based fundamental-group presentation of a complex of groups.
pub fn pi1_presentation(
    cog: &ComplexOfGroups,
    basepoint: usize,
    options: Pi1Options,
) -> Result<Pi1Presentation, Pi1Error> {
    let base = cog.base();
    if basepoint >= base.n_cells() {
        return Err(Pi1Error::BasepointOutOfRange);
    }
    if !base.is_connected() {
        return Err(Pi1Error::DisconnectedBase);
    }

    let mut names: Vec<String> = Vec::new();
    let mut dictionary: Vec<GeneratorTag> = Vec::new();
    let mut encodings: Vec<Encoding> = Vec::with_capacity(base.n_cells());

    for cell in 0..base.n_cells() {
        let closure = cog.local_closure(cell);
        if closure.order() <= options.small_group_bound {
            let mut letters = Vec::with_capacity(closure.order());
            for (idx, e) in closure.elements().iter().enumerate() {
                if e.is_identity() {
                    letters.push(None);
                } else {
                    letters.push(Some(names.len()));
                    names.push(format!("g_{}_{}", base.id(cell), idx));
                    dictionary.push(GeneratorTag::LocalElement { cell, element: idx });
                }
            }
            encodings.push(Encoding::Small(letters));
        } else {
            let mut letters = Vec::new();
            for k in 0..cog.local_group(cell).generators().len() {
                letters.push(names.len());
                names.push(format!("g_{}_{}", base.id(cell), k));
                dictionary.push(GeneratorTag::LocalGenerator { cell, generator: k });
            }
            encodings.push(Encoding::Large(letters));
        }
    }
    let mut edge_letters = Vec::with_capacity(base.n_edges());
    for (e, &(hi, lo)) in base.edges().iter().enumerate() {
        edge_letters.push(names.len());
        names.push(format!("e_{}_{}", base.id(hi), base.id(lo)));
        dictionary.push(GeneratorTag::Edge { edge: e });
    }

    // a helper for local element words over the letter tables
    let local_word = |cell: usize, g: &Perm| -> Word {
        let closure = cog.local_closure(cell);
        let idx = closure.element_index(g).expect("local element");
        match &encodings[cell] {
            Encoding::Small(letters) => match letters[idx] {
                None => Word::empty(),
                Some(l) => Word::generator(l),
            },
            Encoding::Large(letters) => {
                let w = closure.element_word(g).expect("closed");
                Word::from_letters(w.letters().iter().map(|&l| {
                    let mapped = letters[(l.unsigned_abs() - 1) as usize] as i32 + 1;
                    if l > 0 {
                        mapped
                    } else {
                        -mapped
                    }
                }))
            }
        }
    };

    let mut relators: Vec<Word> = Vec::new();

    // local group relations
    for cell in 0..base.n_cells() {
        let closure = cog.local_closure(cell);
        match &encodings[cell] {
            Encoding::Small(_) => {
                for i in 0..closure.order() {
                    for j in 0..closure.order() {
                        let a = &closure.elements()[i];
                        let b = &closure.elements()[j];
                        if a.is_identity() || b.is_identity() {
                            continue;
                        }
                        let prod = a.then(b);
                        let r = local_word(cell, a)
                            .concat(&local_word(cell, b))
                            .concat(&local_word(cell, &prod).inverse());
                        let r = r.cyclically_reduced();
                        if !r.is_empty() {
                            relators.push(r);
                        }
                    }
                }
            }
            Encoding::Large(letters) => {
                let p = presentation_from_closure("t", closure);
                for r in p.relators() {
                    let mapped = Word::from_letters(r.letters().iter().map(|&l| {
                        let m = letters[(l.unsigned_abs() - 1) as usize] as i32 + 1;
                        if l > 0 {
                            m
                        } else {
                            -m
                        }
                    }));
                    relators.push(mapped);
                }
            }
        }
    }

    // psi relations: for each edge a and source generator g,
    // a^-1 g a = psi_a(g), i.e. relator a^-1 g a psi_a(g)^-1
    for (e, &(hi, _lo)) in base.edges().iter().enumerate() {
        let a = Word::generator(edge_letters[e]);
        for g in cog.local_group(hi).generators() {
            let img = cog.psi_apply(e, g);
            let r = a
                .inverse()
                .concat(&local_word(hi, g))
                .concat(&a)
                .concat(&local_word(base.edges()[e].1, &img).inverse());
            let r = r.cyclically_reduced();
            if !r.is_empty() {
                relators.push(r);
            }
        }
    }

    // twist relations per composable pair
    for (k, &(a, b, ab)) in cog.composable_pairs().iter().enumerate() {
        let (_, t_a) = base.edges()[a];
        let la = Word::generator(edge_letters[a]);
        let lb = Word::generator(edge_letters[b]);
        let lab = Word::generator(edge_letters[ab]);
        let twist = local_word(t_a, cog.twist(k));
        let rhs = match options.convention {
            TwistConvention::ComposedEqualsBaTwist => lb.concat(&la).concat(&twist),
            TwistConvention::ComposedEqualsAbTwist => la.concat(&lb).concat(&twist),
        };
        let r = lab.inverse().concat(&rhs).cyclically_reduced();
        if !r.is_empty() {
            relators.push(r);
        }
    }

    // spanning tree of the (cells, edges) graph, breadth-first from the
    // basepoint; each tree edge's letter is killed
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); base.n_cells()];
    for (e, &(hi, lo)) in base.edges().iter().enumerate() {
        adjacency[hi].push((e, lo));
        adjacency[lo].push((e, hi));
    }
    let mut visited = vec![false; base.n_cells()];
    visited[basepoint] = true;
    let mut queue = vec![basepoint];
    let mut head = 0;
    let mut tree: Vec<usize> = Vec::new();
    while head < queue.len() {
        let c = queue[head];
        head += 1;
        let neighbors: Vec<(usize, usize)> = match options.tree {
            TreeStrategy::CanonicalBfs => adjacency[c].clone(),
            TreeStrategy::ReversedBfs => adjacency[c].iter().rev().copied().collect(),
        };
        for (e, other) in neighbors {
            if !visited[other] {
                visited[other] = true;
                tree.push(e);
                queue.push(other);
            }
        }
    }
    debug_assert!(visited.iter().all(|&v| v), "base is connected");
    for &e in &tree {
        relators.push(Word::generator(edge_letters[e]));
    }

    let presentation = Presentation::new(names, relators).expect("letters are in range");
    Ok(Pi1Presentation {
        presentation,
        dictionary,
        spanning_tree: tree,
        basepoint,
        options,
        encodings,
        edge_letters,
    })
}

/// One step of an edge loop: an edge traversed forward (`i(a)` to `t(a)`)
/// or backward.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedEdge {
    pub edge: usize,
    pub forward: bool,
}

impl SignedEdge {
    fn start(&self, base: &crate::scwol::CellComplex) -> usize {
        let (hi, lo) = base.edges()[self.edge];
        if self.forward {
            hi
        } else {
            lo
        }
    }

    fn end(&self, base: &crate::scwol::CellComplex) -> usize {
        let (hi, lo) = base.edges()[self.edge];
        if self.forward {
            lo
        } else {
            hi
        }
    }
}

/// A decorated edge loop `g_0 e_1 g_1 ... e_n g_n` based at the
/// presentation's basepoint: each step's decoration lives in the local
/// group at the step's endpoint.
#[derive(Clone, Debug)]
pub struct DecoratedLoop {
    pub start_element: Perm,
    pub steps: Vec<(SignedEdge, Perm)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoopError {
    ChainBroken { step: usize },
    NotClosed,
    ElementOutsideGroup { step: usize },
}

impl fmt::Display for LoopError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopError::ChainBroken { step } => write!(f, "endpoint chain breaks at step {step}"),
            LoopError::NotClosed => write!(f, "loop does not return to the basepoint"),
            LoopError::ElementOutsideGroup { step } => {
                write!(f, "decoration at step {step} is outside its local group")
            }
        }
    }
}

impl core::error::Error for LoopError {}

/// Substitutes each loop decoration by its letter and freely reduces: the
/// forward case contributes `a g`, the backward case `a^-1 g`, and the
/// basepoint element contributes its own letter.
pub fn evaluate_loop(
    p: &Pi1Presentation,
    cog: &ComplexOfGroups,
    l: &DecoratedLoop,
) -> Result<Word, LoopError> {
    let base = cog.base();
    if cog
        .local_closure(p.basepoint)
        .element_index(&l.start_element)
        .is_err()
    {
        return Err(LoopError::ElementOutsideGroup { step: 0 });
    }
    let mut at = p.basepoint;
    let mut word = p.local_element_word(cog, p.basepoint, &l.start_element);
    for (k, (e, g)) in l.steps.iter().enumerate() {
        if e.start(base) != at {
            return Err(LoopError::ChainBroken { step: k + 1 });
        }
        at = e.end(base);
        if cog.local_closure(at).element_index(g).is_err() {
            return Err(LoopError::ElementOutsideGroup { step: k + 1 });
        }
        let letter = if e.forward {
            p.edge_word(e.edge)
        } else {
            p.edge_word(e.edge).inverse()
        };
        word = word.concat(&letter).concat(&p.local_element_word(cog, at, g));
    }
    if at != p.basepoint {
        return Err(LoopError::NotClosed);
    }
    Ok(word)
}

/// A warning from the pushout hypothesis check: a relator image whose
/// triviality in the receiving factor could not be certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvkWarning {
    pub factor: usize,
    pub relator: usize,
    pub verdict_was_unknown: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SvkError {
    MalformedImage { factor: usize, generator: usize },
    RelatorNotKilled { factor: usize, relator: usize },
}

impl fmt::Display for SvkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SvkError::MalformedImage { factor, generator } => {
                write!(f, "image of generator {generator} under j{factor} is malformed")
            }
            SvkError::RelatorNotKilled { factor, relator } => write!(
                f,
                "relator {relator} of the amalgam maps to a certified-nontrivial word in factor {factor}"
            ),
        }
    }
}

impl core::error::Error for SvkError {}

/// The pushout (amalgam) of `p1 <- p0 -> p2`: the free product of `p1` and
/// `p2` modulo `j1(c) = j2(c)` for each generator `c` of `p0`.
///
/// The maps are checked to kill `p0`'s relators in their factors via word
/// verdicts; an `Unknown` verdict is tolerated with a warning, a certified
/// `Nontrivial` is an error.
pub fn svk_pushout(
    p1: &Presentation,
    p2: &Presentation,
    p0: &Presentation,
    j1: &[Word],
    j2: &[Word],
    budget: &Budget,
) -> Result<(Presentation, Vec<SvkWarning>), SvkError> {
    if j1.len() != p0.generators().len() || j2.len() != p0.generators().len() {
        return Err(SvkError::MalformedImage {
            factor: if j1.len() != p0.generators().len() { 1 } else { 2 },
            generator: 0,
        });
    }
    for (gi, w) in j1.iter().enumerate() {
        if w.support_bound() > p1.generators().len() {
            return Err(SvkError::MalformedImage { factor: 1, generator: gi });
        }
    }
    for (gi, w) in j2.iter().enumerate() {
        if w.support_bound() > p2.generators().len() {
            return Err(SvkError::MalformedImage { factor: 2, generator: gi });
        }
    }
    let mut warnings = Vec::new();
    for (ri, r) in p0.relators().iter().enumerate() {
        for (factor, (p, j)) in [(p1, j1), (p2, j2)].iter().enumerate() {
            let image = r.substitute(j);
            match word_verdict(p, &image, budget) {
                WordVerdict::Trivial(_) => {}
                WordVerdict::Unknown { .. } => warnings.push(SvkWarning {
                    factor: factor + 1,
                    relator: ri,
                    verdict_was_unknown: true,
                }),
                WordVerdict::Nontrivial(_) => {
                    return Err(SvkError::RelatorNotKilled {
                        factor: factor + 1,
                        relator: ri,
                    })
                }
            }
        }
    }
    // disjoint union of generators, deterministic renaming on collision
    let mut names: Vec<String> = p1.generators().to_vec();
    let taken: alloc::collections::BTreeSet<String> = names.iter().cloned().collect();
    let mut taken = taken;
    for g in p2.generators() {
        let mut name = g.clone();
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        names.push(name);
    }
    let shift = p1.generators().len() as i32;
    let shift_word = |w: &Word| {
        Word::from_letters(w.letters().iter().map(|&l| {
            if l > 0 {
                l + shift
            } else {
                l - shift
            }
        }))
    };
    let mut relators: Vec<Word> = p1.relators().to_vec();
    relators.extend(p2.relators().iter().map(&shift_word));
    for (w1, w2) in j1.iter().zip(j2) {
        relators.push(w1.concat(&shift_word(w2).inverse()));
    }
    let p = Presentation::new(names, relators).expect("letters in range");
    Ok((p, warnings))
}

/// The triangle-orbifold group of the sphere with cone points of orders
/// `n1, n2, n3`, assembled by a pushout: a disk with two cone points glued
/// to a disk with one cone point along their boundary circle.
pub fn triangle_orbifold(
    n1: u32,
    n2: u32,
    n3: u32,
    budget: &Budget,
) -> (Presentation, Vec<SvkWarning>) {
    let p1 = Presentation::new(
        vec!["l1".to_string(), "l2".to_string()],
        vec![
            Word::generator(0).pow(n1 as i32),
            Word::generator(1).pow(n2 as i32),
        ],
    )
    .unwrap();
    let p2 = Presentation::new(
        vec!["l3".to_string()],
        vec![Word::generator(0).pow(n3 as i32)],
    )
    .unwrap();
    let p0 = Presentation::free(1);
    let j1 = vec![Word::from_letters([1, 2])];
    let j2 = vec![Word::from_letters([-1])];
    svk_pushout(&p1, &p2, &p0, &j1, &j2, budget).expect("images are well-formed")
}

/// A quick structural map useful to tests: the word of `iota(g)` for every
/// nontrivial element of every local group.
pub fn all_local_iota_words(p: &Pi1Presentation, cog: &ComplexOfGroups) -> Vec<(usize, Perm, Word)> {
    let mut out = Vec::new();
    for cell in 0..cog.base().n_cells() {
        for e in cog.local_closure(cell).elements() {
            if !e.is_identity() {
                out.push((cell, e.clone(), p.iota(cog, cell, e)));
            }
        }
    }
    out
}

// Re-exported for the CLI's generator dictionary output.
pub use crate::groups::presentation::AbelianInvariants;

/// Convenience: the abelianization of the fundamental group.
pub fn pi1_abelianization(p: &Pi1Presentation) -> AbelianInvariants {
    p.presentation.abelianization()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::cog::samples;
    use crate::groups::coset::todd_coxeter;
    use crate::groups::homsearch::count_homs;
    use crate::groups::perm::PermGroup;
    use crate::scwol::shapes;

    fn z2() -> PermGroup {
        PermGroup::new(2, vec![Perm::from_cycles(2, &[vec![0, 1]]).unwrap()]).unwrap()
    }

    fn z3() -> PermGroup {
        PermGroup::new(3, vec![Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()]).unwrap()
    }

    #[test]
    fn simplex_with_trivial_groups_is_simply_connected() {
        let c = samples::trivial_groups(shapes::simplex(2));
        let p = pi1_presentation(&c, 0, Pi1Options::default()).unwrap();
        let t = todd_coxeter(&p.presentation, &[], 1000).unwrap();
        assert_eq!(t.n_cosets(), 1);
        assert!(pi1_abelianization(&p).is_trivial());
    }

    #[test]
    fn trivial_circle_has_pi1_z() {
        let c = samples::trivial_groups(shapes::polygon(3));
        let p = pi1_presentation(&c, 0, Pi1Options::default()).unwrap();
        let inv = pi1_abelianization(&p);
        assert_eq!(inv.free_rank, 1);
        assert!(inv.torsion.is_empty());
    }

    #[test]
    fn segment_z2_z3_is_free_product() {
        let c = samples::segment_of_groups(z2(), z3());
        let p = pi1_presentation(&c, 0, Pi1Options::default()).unwrap();
        let inv = pi1_abelianization(&p);
        assert_eq!(inv.torsion, vec![6]);
        assert_eq!(inv.free_rank, 0);
    }

    #[test]
    fn mapping_torus_abelianizations() {
        // tau = inversion on Z/3: abelianization Z
        let inv_tau = samples::mapping_torus(z3(), vec![Perm::from_cycles(3, &[vec![0, 2, 1]]).unwrap()]);
        assert_eq!(inv_tau.validate(), Ok(()));
        let p = pi1_presentation(&inv_tau, 0, Pi1Options::default()).unwrap();
        let inv = pi1_abelianization(&p);
        assert_eq!(inv.free_rank, 1);
        assert!(inv.torsion.is_empty());
        // tau = identity: Z + Z/3
        let id_tau = samples::mapping_torus(z3(), z3().generators().to_vec());
        let p2 = pi1_presentation(&id_tau, 0, Pi1Options::default()).unwrap();
        let inv2 = pi1_abelianization(&p2);
        assert_eq!(inv2.free_rank, 1);
        assert_eq!(inv2.torsion, vec![3]);
    }

    #[test]
    fn disconnected_base_rejected() {
        let cells = [
            crate::scwol::Cell::vertex("a"),
            crate::scwol::Cell::vertex("b"),
        ];
        let base = crate::scwol::build_complex(&cells).unwrap();
        let c = samples::trivial_groups(base);
        assert!(matches!(
            pi1_presentation(&c, 0, Pi1Options::default()),
            Err(Pi1Error::DisconnectedBase)
        ));
    }

    #[test]
    fn basepoint_invariance_of_abelianization_and_hom_counts() {
        let c = samples::mapping_torus(z3(), vec![Perm::from_cycles(3, &[vec![0, 2, 1]]).unwrap()]);
        let budget = Budget::default();
        let p0 = pi1_presentation(&c, 0, Pi1Options::default()).unwrap();
        for bp in 1..c.base().n_cells() {
            let pb = pi1_presentation(&c, bp, Pi1Options::default()).unwrap();
            assert_eq!(
                pi1_abelianization(&p0),
                pi1_abelianization(&pb),
                "abelianization differs at basepoint {bp}"
            );
            for degree in 2..=4 {
                assert_eq!(
                    count_homs(&p0.presentation, degree, &budget),
                    count_homs(&pb.presentation, degree, &budget),
                    "hom count into S_{degree} differs at basepoint {bp}"
                );
            }
        }
    }

    #[test]
    fn tree_strategy_invariance() {
        // abelian invariants always agree; coset counts compared on the
        // fixtures whose enumerations close (the free product is infinite)
        let c = samples::segment_of_groups(z2(), z3());
        let p1 = pi1_presentation(&c, 0, Pi1Options::default()).unwrap();
        let p2 = pi1_presentation(
            &c,
            0,
            Pi1Options {
                tree: TreeStrategy::ReversedBfs,
                ..Pi1Options::default()
            },
        )
        .unwrap();
        assert_eq!(pi1_abelianization(&p1), pi1_abelianization(&p2));

        for c in [
            samples::trivial_groups(shapes::simplex(2)),
            samples::twisted_vertex_group(),
        ] {
            let pa = pi1_presentation(&c, 0, Pi1Options::default()).unwrap();
            let pb = pi1_presentation(
                &c,
                0,
                Pi1Options {
                    tree: TreeStrategy::ReversedBfs,
                    ..Pi1Options::default()
                },
            )
            .unwrap();
            assert_eq!(pi1_abelianization(&pa), pi1_abelianization(&pb));
            let ta = todd_coxeter(&pa.presentation, &[], 1000).unwrap();
            let tb = todd_coxeter(&pb.presentation, &[], 1000).unwrap();
            assert_eq!(ta.n_cosets(), tb.n_cosets());
        }
    }

    #[test]
    fn conventions_agree_on_twist_trivial_input() {
        let c = samples::trivial_groups(shapes::simplex(2));
        for base in [shapes::simplex(2), shapes::polygon(4)] {
            let c = samples::trivial_groups(base);
            let pa = pi1_presentation(&c, 0, Pi1Options::default()).unwrap();
            let pb = pi1_presentation(
                &c,
                0,
                Pi1Options {
                    convention: TwistConvention::ComposedEqualsAbTwist,
                    ..Pi1Options::default()
                },
            )
            .unwrap();
            assert_eq!(pi1_abelianization(&pa), pi1_abelianization(&pb));
        }
        let _ = c;
    }

    #[test]
    fn empty_and_single_element_loops() {
        let c = samples::segment_of_groups(z2(), z3());
        let p = pi1_presentation(&c, 0, Pi1Options::default()).unwrap();
        let empty = DecoratedLoop {
            start_element: Perm::identity(2),
            steps: Vec::new(),
        };
        assert!(evaluate_loop(&p, &c, &empty).unwrap().is_empty());
        let g = DecoratedLoop {
            start_element: Perm::from_cycles(2, &[vec![0, 1]]).unwrap(),
            steps: Vec::new(),
        };
        let w = evaluate_loop(&p, &c, &g).unwrap();
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn broken_loops_rejected() {
        let c = samples::segment_of_groups(z2(), z3());
        let p = pi1_presentation(&c, 0, Pi1Options::default()).unwrap();
        // basepoint is cell 0 = v1; edge 0 = (e12, v1): traversing it forward
        // starts at e12, not v1
        let broken = DecoratedLoop {
            start_element: Perm::identity(2),
            steps: vec![(SignedEdge { edge: 0, forward: true }, Perm::identity(1))],
        };
        assert!(matches!(
            evaluate_loop(&p, &c, &broken),
            Err(LoopError::ChainBroken { step: 1 })
        ));
        // backward from v1 up to e12 leaves the loop open
        let open = DecoratedLoop {
            start_element: Perm::identity(2),
            steps: vec![(SignedEdge { edge: 0, forward: false }, Perm::identity(1))],
        };
        assert!(matches!(evaluate_loop(&p, &c, &open), Err(LoopError::NotClosed)));
    }

    #[test]
    fn svk_free_product_and_absorption() {
        let budget = Budget::default();
        // trivial amalgam: free product
        let pa = Presentation::new(vec!["a".to_string()], vec![Word::from_letters([1, 1])]).unwrap();
        let pb = Presentation::new(vec!["b".to_string()], vec![Word::from_letters([1, 1, 1])]).unwrap();
        let p0 = Presentation::new(vec![], vec![]).unwrap();
        let (p, warnings) = svk_pushout(&pa, &pb, &p0, &[], &[], &budget).unwrap();
        assert!(warnings.is_empty());
        let inv = p.abelianization();
        assert_eq!(inv.torsion, vec![6]);
        // absorption: P2 = P0 with the identity map
        let free1 = Presentation::free(1);
        let (p2, _) = svk_pushout(
            &pa,
            &free1,
            &free1,
            &[Word::from_letters([1])],
            &[Word::from_letters([1])],
            &budget,
        )
        .unwrap();
        assert_eq!(p2.abelianization(), pa.abelianization());
    }

    #[test]
    fn triangle_orbifold_orders() {
        let budget = Budget::default();
        let (p, warnings) = triangle_orbifold(2, 3, 3, &budget);
        assert!(warnings.is_empty());
        let t = todd_coxeter(&p, &[], 10_000).unwrap();
        assert_eq!(t.n_cosets(), 12);
    }

    #[test]
    fn twisted_vertex_group_keeps_its_z2() {
        // the single twist is a coboundary over the contractible base, so
        // the vertex group survives into the fundamental group
        let c = samples::twisted_vertex_group();
        let p = pi1_presentation(&c, 0, Pi1Options::default()).unwrap();
        let t = todd_coxeter(&p.presentation, &[], 1000).unwrap();
        assert_eq!(t.n_cosets(), 2);
        let inv = pi1_abelianization(&p);
        assert_eq!(inv.torsion, vec![2]);
        assert_eq!(inv.free_rank, 0);
    }
}
