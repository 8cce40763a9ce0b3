//! Complexes of groups over a cell complex and homomorphisms between them.
//!
//! The data is a local group per cell, an injection `psi_a` per barycentric
//! edge, and a twist `g_{a,b}` per composable pair, subject to the
//! compatibility condition
//!
//! ```text
//! g_{a,b} psi_{ab}(h) g_{a,b}^-1 = psi_a(psi_b(h))      for h in G_{i(b)}
//! ```
//!
//! and the cocycle condition
//!
//! ```text
//! psi_a(g_{b,c}) g_{a,bc} = g_{a,b} g_{ab,c}
//! ```
//!
//! over all composable pairs and triples. Violations are data, not faults:
//! validation reports the first failure in a fixed lexicographic order.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::groups::perm::{GroupClosure, Perm, PermGroup};
use crate::groups::presentation::extend_homomorphism;
use crate::scwol::CellComplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CogError {
    WrongLocalGroupCount,
    WrongPsiCount,
    WrongTwistCount,
    PsiGeneratorCount { edge: usize },
    PsiImageOutsideGroup { edge: usize },
    TwistOutsideGroup { pair: usize },
    LocalClosureFailed { cell: usize },
    ThetaBreaksFaces { cell: String },
}

impl fmt::Display for CogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CogError::WrongLocalGroupCount => write!(f, "one local group per cell required"),
            CogError::WrongPsiCount => write!(f, "one injection per barycentric edge required"),
            CogError::WrongTwistCount => write!(f, "one twist per composable pair required"),
            CogError::PsiGeneratorCount { edge } => {
                write!(f, "edge {edge}: one image per source generator required")
            }
            CogError::PsiImageOutsideGroup { edge } => {
                write!(f, "edge {edge}: psi image is not an element of the target group")
            }
            CogError::TwistOutsideGroup { pair } => {
                write!(f, "pair {pair}: twist is not an element of its group")
            }
            CogError::LocalClosureFailed { cell } => {
                write!(f, "local group at cell {cell} did not close")
            }
            CogError::ThetaBreaksFaces { cell } => {
                write!(f, "cell map does not respect the faces of {cell}")
            }
        }
    }
}

impl core::error::Error for CogError {}

/// First failing condition found by [`ComplexOfGroups::validate`], with the
/// two mismatched elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    PsiNotHomomorphism { edge: usize },
    PsiNotInjective { edge: usize, kernel_element: Perm },
    Compatibility { pair: usize, generator: usize, lhs: Perm, rhs: Perm },
    Cocycle { edges: (usize, usize, usize), lhs: Perm, rhs: Perm },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PsiNotHomomorphism { edge } => {
                write!(f, "psi on edge {edge} is not a homomorphism")
            }
            Violation::PsiNotInjective { edge, kernel_element } => {
                write!(f, "psi on edge {edge} kills {kernel_element:?}")
            }
            Violation::Compatibility { pair, generator, lhs, rhs } => write!(
                f,
                "compatibility fails at pair {pair}, generator {generator}: {lhs:?} != {rhs:?}"
            ),
            Violation::Cocycle { edges, lhs, rhs } => write!(
                f,
                "cocycle fails at edges {edges:?}: {lhs:?} != {rhs:?}"
            ),
        }
    }
}

/// A complex of groups `(X, G_sigma, psi_a, g_{a,b})`.
#[derive(Clone, Debug)]
pub struct ComplexOfGroups {
    base: CellComplex,
    local_groups: Vec<PermGroup>,
    local_closures: Vec<GroupClosure>,
    /// per edge: images of the source group's generators under `psi_a`
    psi_gen_images: Vec<Vec<Perm>>,
    /// per edge: image of every source element, aligned with the source
    /// closure's element order; `None` until the extension check passes
    psi_tables: Vec<Vec<Perm>>,
    /// per composable pair (in `base.composable_pairs()` order)
    twists: Vec<Perm>,
    pairs: Vec<(usize, usize, usize)>,
    pair_index: BTreeMap<(usize, usize), usize>,
}

impl ComplexOfGroups {
    /// Assembles the data, checking shapes and element membership. The
    /// mathematical conditions are checked separately by [`Self::validate`].
    pub fn new(
        base: CellComplex,
        local_groups: Vec<PermGroup>,
        psi_gen_images: Vec<Vec<Perm>>,
        twists: Vec<Perm>,
        closure_cap: usize,
    ) -> Result<ComplexOfGroups, CogError> {
        if local_groups.len() != base.n_cells() {
            return Err(CogError::WrongLocalGroupCount);
        }
        if psi_gen_images.len() != base.n_edges() {
            return Err(CogError::WrongPsiCount);
        }
        let pairs = base.composable_pairs();
        if twists.len() != pairs.len() {
            return Err(CogError::WrongTwistCount);
        }
        let mut local_closures = Vec::with_capacity(local_groups.len());
        for (c, g) in local_groups.iter().enumerate() {
            local_closures.push(
                g.close(closure_cap)
                    .map_err(|_| CogError::LocalClosureFailed { cell: c })?,
            );
        }
        for (e, &(hi, lo)) in base.edges().iter().enumerate() {
            let images = &psi_gen_images[e];
            if images.len() != local_groups[hi].generators().len() {
                return Err(CogError::PsiGeneratorCount { edge: e });
            }
            for img in images {
                if img.degree() != local_groups[lo].degree() || !local_closures[lo].contains(img) {
                    return Err(CogError::PsiImageOutsideGroup { edge: e });
                }
            }
        }
        for (k, &(a, _b, _ab)) in pairs.iter().enumerate() {
            let (_, t_a) = base.edges()[a];
            let tw = &twists[k];
            if tw.degree() != local_groups[t_a].degree() || !local_closures[t_a].contains(tw) {
                return Err(CogError::TwistOutsideGroup { pair: k });
            }
        }
        let pair_index = pairs.iter().enumerate().map(|(k, &(a, b, _))| ((a, b), k)).collect();
        let psi_tables = vec![Vec::new(); base.n_edges()];
        let mut cog = ComplexOfGroups {
            base,
            local_groups,
            local_closures,
            psi_gen_images,
            psi_tables,
            twists,
            pairs,
            pair_index,
        };
        cog.build_psi_tables();
        Ok(cog)
    }

    fn build_psi_tables(&mut self) {
        for e in 0..self.base.n_edges() {
            let (hi, _lo) = self.base.edges()[e];
            if let Some(table) = extend_homomorphism(
                &self.local_closures[hi],
                &self.local_groups[hi],
                &self.psi_gen_images[e],
            ) {
                self.psi_tables[e] = table;
            }
        }
    }

    pub fn base(&self) -> &CellComplex {
        &self.base
    }

    pub fn local_group(&self, cell: usize) -> &PermGroup {
        &self.local_groups[cell]
    }

    pub fn local_closure(&self, cell: usize) -> &GroupClosure {
        &self.local_closures[cell]
    }

    pub fn psi_gen_images(&self, edge: usize) -> &[Perm] {
        &self.psi_gen_images[edge]
    }

    /// Applies `psi_a` to an arbitrary element of the source group.
    /// Requires the extension table (validation passed the homomorphism
    /// check for this edge).
    pub fn psi_apply(&self, edge: usize, g: &Perm) -> Perm {
        let (hi, _) = self.base.edges()[edge];
        let idx = self.local_closures[hi]
            .element_index(g)
            .expect("element of the source group");
        self.psi_tables[edge][idx].clone()
    }

    pub fn composable_pairs(&self) -> &[(usize, usize, usize)] {
        &self.pairs
    }

    pub fn twist(&self, pair: usize) -> &Perm {
        &self.twists[pair]
    }

    pub fn twist_of(&self, a: usize, b: usize) -> Option<&Perm> {
        self.pair_index.get(&(a, b)).map(|&k| &self.twists[k])
    }

    pub fn pair_lookup(&self, a: usize, b: usize) -> Option<usize> {
        self.pair_index.get(&(a, b)).copied()
    }

    /// All twists are identity permutations.
    pub fn twists_trivial(&self) -> bool {
        self.twists.iter().all(Perm::is_identity)
    }

    /// Checks injectivity of every `psi_a`, compatibility (on generators)
    /// over all composable pairs, and the cocycle condition over all
    /// composable triples, reporting the first failure in lexicographic
    /// order of edge/pair/triple indices.
    pub fn validate(&self) -> Result<(), Violation> {
        for e in 0..self.base.n_edges() {
            let (hi, _lo) = self.base.edges()[e];
            if self.psi_tables[e].len() != self.local_closures[hi].order() {
                return Err(Violation::PsiNotHomomorphism { edge: e });
            }
            // kernel enumeration
            for (i, img) in self.psi_tables[e].iter().enumerate() {
                let src = &self.local_closures[hi].elements()[i];
                if img.is_identity() && !src.is_identity() {
                    return Err(Violation::PsiNotInjective {
                        edge: e,
                        kernel_element: src.clone(),
                    });
                }
            }
        }
        // compatibility (2.1.2a) on generators of G_{i(b)}
        for (k, &(a, b, ab)) in self.pairs.iter().enumerate() {
            let (i_b, _) = self.base.edges()[b];
            let g_ab = &self.twists[k];
            for (gi, h) in self.local_groups[i_b].generators().iter().enumerate() {
                // g_{a,b} psi_{ab}(h) g_{a,b}^-1 = psi_{ab}(h) conjugated by g^-1
                // under this crate's left-to-right composition convention
                let lhs = self.psi_apply(ab, h).conjugate_by(&g_ab.inverse());
                let rhs = self.psi_apply(a, &self.psi_apply(b, h));
                if lhs != rhs {
                    return Err(Violation::Compatibility {
                        pair: k,
                        generator: gi,
                        lhs,
                        rhs,
                    });
                }
            }
        }
        // cocycle (2.1.2b) on composable triples
        for &(a, b, ab) in &self.pairs {
            for &(b2, c, bc) in &self.pairs {
                if b2 != b {
                    continue;
                }
                let k_ab = self.pair_lookup(a, b).expect("listed pair");
                let k_bc = self.pair_lookup(b, c).expect("listed pair");
                let k_a_bc = self.pair_lookup(a, bc).expect("composable by associativity");
                let k_ab_c = self.pair_lookup(ab, c).expect("composable by associativity");
                // psi_a(g_{b,c}) * g_{a,bc}  vs  g_{a,b} * g_{ab,c}
                let lhs = mult(&self.psi_apply(a, &self.twists[k_bc]), &self.twists[k_a_bc]);
                let rhs = mult(&self.twists[k_ab], &self.twists[k_ab_c]);
                if lhs != rhs {
                    return Err(Violation::Cocycle {
                        edges: (a, b, c),
                        lhs,
                        rhs,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Group multiplication `x * y` (apply `x`, then `y`... no: group elements
/// multiply as functions composed right-to-left in the usual notation, but
/// this crate fixes left-to-right word order everywhere; `mult(x, y)` is
/// the element "first x then y", written `xy` in word notation).
#[inline]
pub fn mult(x: &Perm, y: &Perm) -> Perm {
    x.then(y)
}

/// A homomorphism of complexes of groups over a cell map `theta`.
#[derive(Clone, Debug)]
pub struct CogHomomorphism {
    /// image cell in the target base, per source cell
    pub theta: Vec<usize>,
    /// per source cell: images of that local group's generators
    pub phi_gen_images: Vec<Vec<Perm>>,
    /// per source edge `a`: the correction `g'_a` in `G'_{t(theta(a))}`
    pub corrections: Vec<Perm>,
}

/// Outcome of homomorphism validation: on success, the list of source edges
/// whose theta-image is degenerate (collapsed to a single cell). Those are
/// accepted with `psi'` read as the identity, and flagged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    pub degenerate_edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum HomFailure {
    Structural(CogError),
    Violation(HomViolation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomViolation {
    /// (2.1.3a) fails at this edge and source generator.
    EdgeCondition { edge: usize, generator: usize, lhs: Perm, rhs: Perm },
    /// (2.1.3b) fails at this composable pair.
    PairCondition { pair: usize, lhs: Perm, rhs: Perm },
    PhiNotHomomorphism { cell: usize },
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::EdgeCondition { edge, generator, lhs, rhs } => write!(
                f,
                "edge condition fails at edge {edge}, generator {generator}: {lhs:?} != {rhs:?}"
            ),
            HomViolation::PairCondition { pair, lhs, rhs } => {
                write!(f, "pair condition fails at pair {pair}: {lhs:?} != {rhs:?}")
            }
            HomViolation::PhiNotHomomorphism { cell } => {
                write!(f, "phi at cell {cell} is not a homomorphism")
            }
        }
    }
}

/// Validates a homomorphism `source -> target` over its cell map: `theta`
/// must respect faces (collapses allowed and flagged), each `phi_sigma`
/// must be a homomorphism, and the edge and pair conditions must hold on
/// generators / all composable pairs.
pub fn validate_cog_hom(
    hom: &CogHomomorphism,
    source: &ComplexOfGroups,
    target: &ComplexOfGroups,
) -> Result<HomReport, HomFailure> {
    let sb = source.base();
    let tb = target.base();
    if hom.theta.len() != sb.n_cells()
        || hom.phi_gen_images.len() != sb.n_cells()
        || hom.corrections.len() != sb.n_edges()
    {
        return Err(HomFailure::Structural(CogError::WrongLocalGroupCount));
    }
    // theta respects faces: the image of a face lies in the image cell's
    // closure, or coincides with it (collapse)
    for c in 0..sb.n_cells() {
        let tc = hom.theta[c];
        for &f in sb.faces(c) {
            let tf = hom.theta[f];
            if tf != tc && !tb.closure(tc).contains(&tf) {
                return Err(HomFailure::Structural(CogError::ThetaBreaksFaces {
                    cell: sb.id(c).to_string(),
                }));
            }
        }
    }
    // phi extension tables
    let mut phi_tables: Vec<Vec<Perm>> = Vec::with_capacity(sb.n_cells());
    for c in 0..sb.n_cells() {
        match extend_homomorphism(
            source.local_closure(c),
            source.local_group(c),
            &hom.phi_gen_images[c],
        ) {
            Some(t) => phi_tables.push(t),
            None => {
                return Err(HomFailure::Violation(HomViolation::PhiNotHomomorphism {
                    cell: c,
                }))
            }
        }
    }
    let phi_apply = |cell: usize, g: &Perm| -> Perm {
        let idx = source
            .local_closure(cell)
            .element_index(g)
            .expect("element of local group");
        phi_tables[cell][idx].clone()
    };
    // target psi through a possibly-degenerate edge
    let theta_edge = |a: usize| -> Option<usize> {
        let (hi, lo) = sb.edges()[a];
        let (thi, tlo) = (hom.theta[hi], hom.theta[lo]);
        if thi == tlo {
            None // degenerate
        } else {
            Some(tb.edge_index((thi, tlo)).expect("theta respects faces"))
        }
    };
    let psi_prime = |a: usize, g: &Perm| -> Perm {
        match theta_edge(a) {
            Some(e) => target.psi_apply(e, g),
            None => g.clone(),
        }
    };
    let mut degenerate: Vec<usize> = Vec::new();
    // (2.1.3a): g'_a psi'_{theta(a)}(phi_{i(a)}(h)) g'_a^-1 = phi_{t(a)}(psi_a(h))
    for a in 0..sb.n_edges() {
        let (hi, lo) = sb.edges()[a];
        if theta_edge(a).is_none() {
            degenerate.push(a);
        }
        let ga = &hom.corrections[a];
        for (gi, h) in source.local_group(hi).generators().iter().enumerate() {
            let lhs = psi_prime(a, &phi_apply(hi, h)).conjugate_by(&ga.inverse());
            let rhs = phi_apply(lo, &source.psi_apply(a, h));
            if lhs != rhs {
                return Err(HomFailure::Violation(HomViolation::EdgeCondition {
                    edge: a,
                    generator: gi,
                    lhs,
                    rhs,
                }));
            }
        }
    }
    // (2.1.3b): phi_{t(a)}(g_{a,b}) g'_{ab} = g'_a psi'_{theta(a)}(g'_b) g'_{theta(a),theta(b)}
    for (k, &(a, b, ab)) in source.composable_pairs().iter().enumerate() {
        let (_, t_a) = sb.edges()[a];
        let twist = source.twist(k);
        let lhs = mult(&phi_apply(t_a, twist), &hom.corrections[ab]);
        let target_twist = match (theta_edge(a), theta_edge(b)) {
            (Some(ta), Some(tbe)) => match target.twist_of(ta, tbe) {
                Some(t) => t.clone(),
                None => Perm::identity(hom.corrections[a].degree()),
            },
            _ => Perm::identity(hom.corrections[a].degree()),
        };
        let rhs = mult(
            &mult(&hom.corrections[a], &psi_prime(a, &hom.corrections[b])),
            &target_twist,
        );
        if lhs != rhs {
            return Err(HomFailure::Violation(HomViolation::PairCondition {
                pair: k,
                lhs,
                rhs,
            }));
        }
    }
    Ok(HomReport {
        degenerate_edges: degenerate,
    })
}

/// The identity homomorphism of a complex of groups.
pub fn identity_hom(c: &ComplexOfGroups) -> CogHomomorphism {
    CogHomomorphism {
        theta: (0..c.base().n_cells()).collect(),
        phi_gen_images: (0..c.base().n_cells())
            .map(|i| c.local_group(i).generators().to_vec())
            .collect(),
        corrections: c
            .base()
            .edges()
            .iter()
            .map(|&(_, lo)| Perm::identity(c.local_group(lo).degree()))
            .collect(),
    }
}

/// Twists every `psi_a` by `g_a` and corrects the twists to match:
/// `psi'_a = Ad(g_a) psi_a` and `g'_{a,b} = g_a psi_a(g_b) g_{a,b} g_{ab}^-1`.
/// The result is again a valid complex of groups on the same base.
pub fn apply_coboundary(
    c: &ComplexOfGroups,
    assignment: &[Perm],
) -> Result<ComplexOfGroups, CogError> {
    assert_eq!(assignment.len(), c.base().n_edges());
    let psi: Vec<Vec<Perm>> = (0..c.base().n_edges())
        .map(|e| {
            c.psi_gen_images(e)
                .iter()
                .map(|img| img.conjugate_by(&assignment[e].inverse()))
                .collect()
        })
        .collect();
    let twists: Vec<Perm> = c
        .composable_pairs()
        .iter()
        .enumerate()
        .map(|(k, &(a, b, ab))| {
            let part = mult(&assignment[a], &c.psi_apply(a, &assignment[b]));
            mult(&mult(&part, c.twist(k)), &assignment[ab].inverse())
        })
        .collect();
    ComplexOfGroups::new(
        c.base().clone(),
        (0..c.base().n_cells()).map(|i| c.local_group(i).clone()).collect(),
        psi,
        twists,
        usize::MAX,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoboundaryVerdict {
    Equivalent(Vec<Perm>),
    NotEquivalent,
    /// Search space too large under the bound (some `|G_sigma| > 16` or too
    /// many assignments); no verdict.
    Unknown,
}

/// Decides whether two complexes of groups on the same base with the same
/// local groups differ by a coboundary, by bounded brute force over the
/// twisting assignments.
pub fn coboundary_equivalent(
    c1: &ComplexOfGroups,
    c2: &ComplexOfGroups,
    max_assignments: u64,
) -> CoboundaryVerdict {
    if c1.base() != c2.base() {
        return CoboundaryVerdict::NotEquivalent;
    }
    let n_cells = c1.base().n_cells();
    for i in 0..n_cells {
        if c1.local_group(i) != c2.local_group(i) {
            return CoboundaryVerdict::NotEquivalent;
        }
        if c1.local_closure(i).order() > 16 {
            return CoboundaryVerdict::Unknown;
        }
    }
    let n_edges = c1.base().n_edges();
    let mut space: u64 = 1;
    for e in 0..n_edges {
        let (_, lo) = c1.base().edges()[e];
        let size = c1.local_closure(lo).order() as u64;
        space = space.saturating_mul(size);
        if space > max_assignments {
            return CoboundaryVerdict::Unknown;
        }
    }
    // odometer over assignments
    let sizes: Vec<usize> = (0..n_edges)
        .map(|e| {
            let (_, lo) = c1.base().edges()[e];
            c1.local_closure(lo).order()
        })
        .collect();
    let mut counters = vec![0usize; n_edges];
    loop {
        let assignment: Vec<Perm> = (0..n_edges)
            .map(|e| {
                let (_, lo) = c1.base().edges()[e];
                c1.local_closure(lo).elements()[counters[e]].clone()
            })
            .collect();
        if let Ok(cand) = apply_coboundary(c1, &assignment) {
            if cogs_equal_data(&cand, c2) {
                return CoboundaryVerdict::Equivalent(assignment);
            }
        }
        // advance odometer
        let mut pos = 0;
        loop {
            if pos == n_edges {
                return CoboundaryVerdict::NotEquivalent;
            }
            counters[pos] += 1;
            if counters[pos] < sizes[pos] {
                break;
            }
            counters[pos] = 0;
            pos += 1;
        }
    }
}

/// Structural equality of the group data: same psi element tables and the
/// same twists.
pub fn cogs_equal_data(c1: &ComplexOfGroups, c2: &ComplexOfGroups) -> bool {
    c1.psi_tables == c2.psi_tables && c1.twists == c2.twists
}

/// Ready-made complexes of groups used across the test suites and the
/// worked examples.
pub mod samples {
    use super::*;
    use crate::scwol::{build_complex, shapes, Cell};

    /// A segment with the given groups on its endpoint vertices and the
    /// trivial group on the edge.
    pub fn segment_of_groups(left: PermGroup, right: PermGroup) -> ComplexOfGroups {
        let base = shapes::simplex(1); // cells: v1, v2, e12
        let trivial = PermGroup::trivial(1);
        let locals = vec![left, right, trivial];
        // edges (canonical order): (e12, v1), (e12, v2); source group trivial
        let psi = vec![Vec::new(), Vec::new()];
        ComplexOfGroups::new(base, locals, psi, Vec::new(), 1 << 20).expect("valid segment")
    }

    /// The circle nerve (3 vertices, 3 edges) with the same group `g` on
    /// every cell, identity injections except one edge carrying the
    /// automorphism given by `tau_gen_images`, and trivial twists. Its
    /// fundamental group is the corresponding mapping-torus group.
    pub fn mapping_torus(g: PermGroup, tau_gen_images: Vec<Perm>) -> ComplexOfGroups {
        let base = shapes::polygon(3);
        let locals: Vec<PermGroup> = (0..base.n_cells()).map(|_| g.clone()).collect();
        // put tau on the edge (e2, v0); identity elsewhere
        let twisted = base
            .edge_index((
                base.cell_index("e2").expect("edge exists"),
                base.cell_index("v0").expect("vertex exists"),
            ))
            .expect("(e2, v0) is a barycentric edge");
        let psi: Vec<Vec<Perm>> = (0..base.n_edges())
            .map(|e| {
                if e == twisted {
                    tau_gen_images.clone()
                } else {
                    g.generators().to_vec()
                }
            })
            .collect();
        ComplexOfGroups::new(base, locals, psi, Vec::new(), 1 << 20).expect("valid mapping torus")
    }

    /// All local groups trivial on an arbitrary base, all data trivial.
    pub fn trivial_groups(base: CellComplex) -> ComplexOfGroups {
        let trivial = PermGroup::trivial(1);
        let locals = vec![trivial; base.n_cells()];
        let psi = vec![Vec::new(); base.n_edges()];
        let twists = vec![Perm::identity(1); base.composable_pairs().len()];
        ComplexOfGroups::new(base, locals, psi, twists, 16).expect("trivial data is valid")
    }

    /// A 2-simplex with a group of order two on one vertex and a single
    /// nontrivial twist. The twist is a coboundary (the base is
    /// contractible), so the fundamental group is still that Z/2; the
    /// fixture exercises twist bookkeeping through every downstream
    /// computation.
    pub fn twisted_vertex_group() -> ComplexOfGroups {
        let base = shapes::simplex(2);
        let z2 = PermGroup::new(2, vec![Perm::from_cycles(2, &[vec![0, 1]]).unwrap()]).unwrap();
        let v1 = base.cell_index("v1").unwrap();
        let mut locals = vec![PermGroup::trivial(1); base.n_cells()];
        let mut degrees = vec![1usize; base.n_cells()];
        locals[v1] = z2;
        degrees[v1] = 2;
        let psi: Vec<Vec<Perm>> = base.edges().iter().map(|_| Vec::new()).collect();
        // one nontrivial twist on a composable pair ending at v1
        let pairs = base.composable_pairs();
        let mut twists = Vec::with_capacity(pairs.len());
        let mut planted = false;
        for &(a, _b, _ab) in &pairs {
            let (_, lo) = base.edges()[a];
            if lo == v1 && !planted {
                twists.push(Perm::from_cycles(2, &[vec![0, 1]]).unwrap());
                planted = true;
            } else {
                twists.push(Perm::identity(degrees[lo]));
            }
        }
        assert!(planted, "the 2-simplex has pairs ending at each vertex");
        ComplexOfGroups::new(base, locals, psi, twists, 16).expect("valid twisted complex")
    }

    /// The unique complex of groups on a point.
    pub fn point_with_group(g: PermGroup) -> ComplexOfGroups {
        let base = build_complex(&[Cell::vertex("p")]).unwrap();
        ComplexOfGroups::new(base, vec![g], Vec::new(), Vec::new(), 1 << 20).expect("point")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scwol::shapes;

    fn z2() -> PermGroup {
        PermGroup::new(2, vec![Perm::from_cycles(2, &[vec![0, 1]]).unwrap()]).unwrap()
    }

    fn z3() -> PermGroup {
        PermGroup::new(3, vec![Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()]).unwrap()
    }

    #[test]
    fn trivial_cog_validates() {
        let c = samples::trivial_groups(shapes::simplex(2));
        assert_eq!(c.validate(), Ok(()));
    }

    #[test]
    fn segment_z2_z3_validates() {
        let c = samples::segment_of_groups(z2(), z3());
        assert_eq!(c.validate(), Ok(()));
        assert!(c.composable_pairs().is_empty());
    }

    #[test]
    fn twisted_vertex_group_validates() {
        // the twist lives where no compatibility or cocycle constraint sees it
        let c = samples::twisted_vertex_group();
        assert_eq!(c.validate(), Ok(()));
        assert!(!c.twists_trivial());
    }

    #[test]
    fn identity_hom_validates() {
        let c = samples::mapping_torus(z3(), vec![Perm::from_cycles(3, &[vec![0, 2, 1]]).unwrap()]);
        assert_eq!(c.validate(), Ok(()));
        let hom = identity_hom(&c);
        let report = validate_cog_hom(&hom, &c, &c).expect("identity is a homomorphism");
        assert!(report.degenerate_edges.is_empty());
    }

    #[test]
    fn segment_collapse_onto_point() {
        // collapse a segment with constant group Z/3 onto the point with Z/3
        let base = shapes::simplex(1);
        let locals = vec![z3(), z3(), z3()];
        let psi = vec![z3().generators().to_vec(), z3().generators().to_vec()];
        let c = ComplexOfGroups::new(base, locals, psi, Vec::new(), 100).unwrap();
        assert_eq!(c.validate(), Ok(()));
        let target = samples::point_with_group(z3());
        let hom = CogHomomorphism {
            theta: vec![0, 0, 0],
            phi_gen_images: vec![
                z3().generators().to_vec(),
                z3().generators().to_vec(),
                z3().generators().to_vec(),
            ],
            corrections: vec![Perm::identity(3), Perm::identity(3)],
        };
        let report = validate_cog_hom(&hom, &c, &target).expect("collapse is a homomorphism");
        // both barycentric edges collapse
        assert_eq!(report.degenerate_edges.len(), 2);
    }

    #[test]
    fn wrong_correction_reports_violation() {
        // constant (nonabelian) S3 on a segment; a wrong g'_a breaks (2.1.3a)
        let s3 = PermGroup::symmetric(3);
        let base = shapes::simplex(1);
        let locals = vec![s3.clone(), s3.clone(), s3.clone()];
        let psi = vec![s3.generators().to_vec(), s3.generators().to_vec()];
        let c = ComplexOfGroups::new(base, locals, psi, Vec::new(), 100).unwrap();
        let target = samples::point_with_group(s3.clone());
        let mut hom = CogHomomorphism {
            theta: vec![0, 0, 0],
            phi_gen_images: vec![
                s3.generators().to_vec(),
                s3.generators().to_vec(),
                s3.generators().to_vec(),
            ],
            corrections: vec![Perm::identity(3), Perm::identity(3)],
        };
        assert!(validate_cog_hom(&hom, &c, &target).is_ok());
        hom.corrections[0] = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        assert!(matches!(
            validate_cog_hom(&hom, &c, &target),
            Err(HomFailure::Violation(HomViolation::EdgeCondition { .. }))
        ));
    }

    #[test]
    fn coboundary_preserves_validity() {
        let c = samples::mapping_torus(z3(), vec![Perm::from_cycles(3, &[vec![0, 2, 1]]).unwrap()]);
        // assign a nontrivial twisting element on each edge
        let assignment: Vec<Perm> = c
            .base()
            .edges()
            .iter()
            .enumerate()
            .map(|(k, &(_, lo))| {
                let elems = c.local_closure(lo).elements();
                elems[k % elems.len()].clone()
            })
            .collect();
        let c2 = apply_coboundary(&c, &assignment).unwrap();
        assert_eq!(c2.validate(), Ok(()));
        match coboundary_equivalent(&c, &c2, 1 << 22) {
            CoboundaryVerdict::Equivalent(_) => {}
            other => panic!("expected Equivalent, got {other:?}"),
        }
    }

    #[test]
    fn coboundary_unknown_when_too_large() {
        let big = PermGroup::symmetric(4); // order 24 > 16
        let c = samples::point_with_group(big);
        let verdict = coboundary_equivalent(&c, &c, 1 << 22);
        assert_eq!(verdict, CoboundaryVerdict::Unknown);
    }
}
