//! Finite simplicial cell complexes, their barycentric-edge categories, and
//! simplicial group actions.
//!
//! Cells carry only their codimension-1 faces; the full closure is computed
//! transitively. The edge set `E(X)` has one edge per face relation of any
//! codimension, oriented from the higher-dimensional cell to the lower; two
//! edges `a, b` are composable when `i(a) = t(b)` and then `ab` is again an
//! edge. Cells are kept in a canonical order (dimension, then id) so that
//! every downstream iteration is deterministic.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::groups::perm::{GroupClosure, Perm, PermError, PermGroup};

/// Input form of a cell: an id, a dimension, and codimension-1 face ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
    pub faces: Vec<String>,
}

impl Cell {
    pub fn vertex(id: &str) -> Cell {
        Cell {
            id: id.to_string(),
            dim: 0,
            faces: Vec::new(),
        }
    }

    pub fn new(id: &str, dim: usize, faces: &[&str]) -> Cell {
        Cell {
            id: id.to_string(),
            dim,
            faces: faces.iter().map(|f| f.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    DuplicateId(String),
    DanglingFace { cell: String, face: String },
    FaceDimension { cell: String, face: String },
    VertexWithFaces(String),
    NotSimplexLike { cell: String },
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::DuplicateId(id) => write!(f, "duplicate cell id {id}"),
            ComplexError::DanglingFace { cell, face } => {
                write!(f, "cell {cell} references missing face {face}")
            }
            ComplexError::FaceDimension { cell, face } => {
                write!(f, "face {face} of cell {cell} does not have codimension 1")
            }
            ComplexError::VertexWithFaces(id) => write!(f, "0-cell {id} has a nonempty face list"),
            ComplexError::NotSimplexLike { cell } => {
                write!(f, "the closure of cell {cell} is not a simplex")
            }
        }
    }
}

impl core::error::Error for ComplexError {}

/// A barycentric edge `(i(a), t(a))` by cell index, `dim t(a) < dim i(a)`.
pub type Edge = (usize, usize);

/// A validated finite simplicial cell complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    ids: Vec<String>,
    dims: Vec<usize>,
    /// codim-1 faces by index, sorted
    faces: Vec<Vec<usize>>,
    /// full closure (all iterated faces, self excluded) by index
    closures: Vec<BTreeSet<usize>>,
    /// all face-relation pairs (higher, lower), sorted
    edges: Vec<Edge>,
    edge_index: BTreeMap<Edge, usize>,
}

/// Builds and validates a complex from input cells: every referenced id
/// must exist with the right dimension, and every cell's closure must be a
/// combinatorial simplex (a dim-d cell has exactly `binom(d+1, k+1)`
/// distinct k-faces).
pub fn build_complex(cells: &[Cell]) -> Result<CellComplex, ComplexError> {
    let mut sorted: Vec<&Cell> = cells.iter().collect();
    sorted.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
    let mut id_index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, c) in sorted.iter().enumerate() {
        if id_index.insert(&c.id, i).is_some() {
            return Err(ComplexError::DuplicateId(c.id.clone()));
        }
    }
    let mut faces: Vec<Vec<usize>> = Vec::with_capacity(sorted.len());
    for c in &sorted {
        if c.dim == 0 && !c.faces.is_empty() {
            return Err(ComplexError::VertexWithFaces(c.id.clone()));
        }
        let mut fs = Vec::new();
        for fid in &c.faces {
            let Some(&fi) = id_index.get(fid.as_str()) else {
                return Err(ComplexError::DanglingFace {
                    cell: c.id.clone(),
                    face: fid.clone(),
                });
            };
            if sorted[fi].dim + 1 != c.dim {
                return Err(ComplexError::FaceDimension {
                    cell: c.id.clone(),
                    face: fid.clone(),
                });
            }
            fs.push(fi);
        }
        fs.sort_unstable();
        fs.dedup();
        if c.dim > 0 && fs.len() != c.dim + 1 {
            return Err(ComplexError::NotSimplexLike { cell: c.id.clone() });
        }
        faces.push(fs);
    }
    // closures, bottom-up (cells are sorted by dimension)
    let mut closures: Vec<BTreeSet<usize>> = Vec::with_capacity(sorted.len());
    for i in 0..sorted.len() {
        let mut cl = BTreeSet::new();
        for &f in &faces[i] {
            cl.insert(f);
            cl.extend(closures[f].iter().copied());
        }
        closures.push(cl);
    }
    // simplex-closure counts: a d-cell has binom(d+1, k+1) k-faces
    for i in 0..sorted.len() {
        let d = sorted[i].dim;
        for k in 0..d {
            let expect = binomial(d + 1, k + 1);
            let got = closures[i].iter().filter(|&&f| sorted[f].dim == k).count();
            if got != expect {
                return Err(ComplexError::NotSimplexLike {
                    cell: sorted[i].id.clone(),
                });
            }
        }
    }
    let mut edges: Vec<Edge> = Vec::new();
    for i in 0..sorted.len() {
        for &f in &closures[i] {
            edges.push((i, f));
        }
    }
    edges.sort_unstable();
    let edge_index = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    Ok(CellComplex {
        ids: sorted.iter().map(|c| c.id.clone()).collect(),
        dims: sorted.iter().map(|c| c.dim).collect(),
        faces,
        closures,
        edges,
        edge_index,
    })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k.min(n - k) {
        r = r * (n - i) / (i + 1);
    }
    r
}

impl CellComplex {
    pub fn n_cells(&self) -> usize {
        self.ids.len()
    }

    pub fn id(&self, cell: usize) -> &str {
        &self.ids[cell]
    }

    pub fn dim(&self, cell: usize) -> usize {
        self.dims[cell]
    }

    pub fn cell_index(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|i| i == id)
    }

    /// Codimension-1 faces, sorted by index.
    pub fn faces(&self, cell: usize) -> &[usize] {
        &self.faces[cell]
    }

    /// All iterated faces (any codimension), self excluded.
    pub fn closure(&self, cell: usize) -> &BTreeSet<usize> {
        &self.closures[cell]
    }

    /// The barycentric edge set `E(X)`: every face relation, oriented from
    /// the higher-dimensional cell down.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edge_index.get(&e).copied()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// All `(a, b, ab)` with `i(a) = t(b)`; the composite is the edge
    /// `(i(b), t(a))`, which exists by transitivity of the closure.
    pub fn composable_pairs(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (ai, &(a_hi, a_lo)) in self.edges.iter().enumerate() {
            for (bi, &(b_hi, b_lo)) in self.edges.iter().enumerate() {
                if b_lo != a_hi {
                    continue;
                }
                let ab = self
                    .edge_index(( b_hi, a_lo))
                    .expect("closure is transitive");
                out.push((ai, bi, ab));
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|&d| if d % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Number of cells in each dimension.
    pub fn dim_counts(&self) -> Vec<usize> {
        let top = self.dims.iter().copied().max().map_or(0, |d| d + 1);
        let mut counts = vec![0usize; top];
        for &d in &self.dims {
            counts[d] += 1;
        }
        counts
    }

    /// Components of the comparability graph (cells joined by face
    /// relations); each sorted, components ordered by least cell.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n_cells()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.n_cells() {
            if comp[start] != usize::MAX {
                continue;
            }
            let cid = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = cid;
            while let Some(c) = stack.pop() {
                members.push(c);
                for &(hi, lo) in &self.edges {
                    let other = if hi == c {
                        lo
                    } else if lo == c {
                        hi
                    } else {
                        continue;
                    };
                    if comp[other] == usize::MAX {
                        comp[other] = cid;
                        stack.push(other);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// The subcomplex on a face-closed set of cells, keeping ids.
    /// Errors with `NotSimplexLike`/`DanglingFace` if the set is not closed.
    pub fn subcomplex(&self, cells: &BTreeSet<usize>) -> Result<CellComplex, ComplexError> {
        let input: Vec<Cell> = cells
            .iter()
            .map(|&c| Cell {
                id: self.ids[c].clone(),
                dim: self.dims[c],
                faces: self.faces[c].iter().map(|&f| self.ids[f].clone()).collect(),
            })
            .collect();
        build_complex(&input)
    }

    /// The barycentric subdivision: one cell per strictly increasing chain
    /// of cells, with id `"c0|c1|...|ck"`. Also returns each new cell's
    /// chain as a list of old cell indices (increasing dimension).
    pub fn barycentric_subdivision(&self) -> (CellComplex, Vec<Vec<usize>>) {
        let mut chains: Vec<Vec<usize>> = Vec::new();
        // grow chains upward: extend [.., c] by any cell having c in its closure
        let mut cofaces: Vec<Vec<usize>> = vec![Vec::new(); self.n_cells()];
        for &(hi, lo) in &self.edges {
            cofaces[lo].push(hi);
        }
        fn extend(
            chain: &mut Vec<usize>,
            cofaces: &[Vec<usize>],
            closures: &[BTreeSet<usize>],
            out: &mut Vec<Vec<usize>>,
        ) {
            out.push(chain.clone());
            let last = *chain.last().unwrap();
            for &next in &cofaces[last] {
                // every earlier element is below `last`, hence below `next`
                let _ = closures;
                chain.push(next);
                extend(chain, cofaces, closures, out);
                chain.pop();
            }
        }
        for c in 0..self.n_cells() {
            let mut chain = vec![c];
            extend(&mut chain, &cofaces, &self.closures, &mut chains);
        }
        let chain_id = |chain: &[usize]| -> String {
            let mut s = String::new();
            for (k, &c) in chain.iter().enumerate() {
                if k > 0 {
                    s.push('|');
                }
                s.push_str(&self.ids[c]);
            }
            s
        };
        let cells: Vec<Cell> = chains
            .iter()
            .map(|chain| {
                let mut faces = Vec::new();
                if chain.len() > 1 {
                    for drop in 0..chain.len() {
                        let sub: Vec<usize> = chain
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| k != drop)
                            .map(|(_, &c)| c)
                            .collect();
                        faces.push(chain_id(&sub));
                    }
                }
                Cell {
                    id: chain_id(chain),
                    dim: chain.len() - 1,
                    faces,
                }
            })
            .collect();
        let complex = build_complex(&cells).expect("subdivision of a valid complex is valid");
        // map new cell index -> chain, in the complex's canonical order
        let by_id: BTreeMap<String, Vec<usize>> = chains
            .into_iter()
            .map(|chain| (chain_id(&chain), chain))
            .collect();
        let chain_of: Vec<Vec<usize>> = (0..complex.n_cells())
            .map(|i| by_id[complex.id(i)].clone())
            .collect();
        (complex, chain_of)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionError {
    Perm(PermError),
    WrongDegree { expected: usize, got: usize },
    NotSimplicial { generator: usize, cell: String },
    NotAHomomorphism,
    ElementNotInGroup,
    InversionDetected { element: Perm, cell: String },
}

impl fmt::Display for ActionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionError::Perm(e) => write!(f, "{e}"),
            ActionError::WrongDegree { expected, got } => {
                write!(f, "cell map degree {got}, expected {expected} cells")
            }
            ActionError::NotSimplicial { generator, cell } => {
                write!(f, "generator {generator} breaks the face relation at cell {cell}")
            }
            ActionError::NotAHomomorphism => {
                write!(f, "cell maps are inconsistent with the group multiplication")
            }
            ActionError::ElementNotInGroup => write!(f, "element is not in the group"),
            ActionError::InversionDetected { element, cell } => {
                write!(f, "element {element:?} fixes cell {cell} but permutes its faces")
            }
        }
    }
}

impl core::error::Error for ActionError {}

impl From<PermError> for ActionError {
    fn from(e: PermError) -> Self {
        ActionError::Perm(e)
    }
}

/// A simplicial action: an abstract permutation group together with a
/// dimension- and face-preserving permutation of the cells for each
/// generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialAction {
    pub group: PermGroup,
    /// One cell permutation (degree = number of cells) per group generator.
    pub cell_maps: Vec<Perm>,
}

impl SimplicialAction {
    pub fn trivial(group: PermGroup, complex: &CellComplex) -> SimplicialAction {
        let n = complex.n_cells();
        SimplicialAction {
            cell_maps: group.generators().iter().map(|_| Perm::identity(n)).collect(),
            group,
        }
    }
}

/// A closed simplicial action: every group element paired with its cell
/// permutation, in the deterministic order of the group closure.
#[derive(Clone, Debug)]
pub struct ClosedAction {
    pub group: GroupClosure,
    /// `cell_perms[i]` is how `group.elements()[i]` moves cells.
    pub cell_perms: Vec<Perm>,
}

impl ClosedAction {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn cell_perm_of(&self, g: &Perm) -> Result<&Perm, ActionError> {
        let i = self
            .group
            .element_index(g)
            .map_err(|_| ActionError::ElementNotInGroup)?;
        Ok(&self.cell_perms[i])
    }

    /// The orbit of a cell, sorted.
    pub fn orbit(&self, cell: usize) -> Vec<usize> {
        let mut orbit: BTreeSet<usize> = BTreeSet::new();
        for p in &self.cell_perms {
            orbit.insert(p.apply(cell as u32) as usize);
        }
        orbit.into_iter().collect()
    }

    /// Elements stabilizing the cell (as indices into the closure).
    pub fn stabilizer_indices(&self, cell: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.cell_perms[i].apply(cell as u32) as usize == cell)
            .collect()
    }

    /// The stabilizer as a permutation group (all stabilizing elements as
    /// generators; callers needing a small set use `subgroup_generators`).
    pub fn stabilizer(&self, cell: usize) -> Vec<Perm> {
        self.stabilizer_indices(cell)
            .into_iter()
            .map(|i| self.group.elements()[i].clone())
            .collect()
    }

    /// Cells fixed by a group element.
    pub fn fixed_cells(&self, g: &Perm) -> Result<BTreeSet<usize>, ActionError> {
        let p = self.cell_perm_of(g)?;
        Ok((0..p.degree())
            .filter(|&c| p.apply(c as u32) as usize == c)
            .collect())
    }

    /// First inversion found: an element fixing a cell while moving one of
    /// its faces. `None` means the action is without inversion.
    pub fn find_inversion(&self, complex: &CellComplex) -> Option<(Perm, usize)> {
        for (i, p) in self.cell_perms.iter().enumerate() {
            for c in 0..complex.n_cells() {
                if p.apply(c as u32) as usize != c {
                    continue;
                }
                for &f in complex.faces(c) {
                    if p.apply(f as u32) as usize != f {
                        return Some((self.group.elements()[i].clone(), c));
                    }
                }
            }
        }
        None
    }

    pub fn is_without_inversion(&self, complex: &CellComplex) -> bool {
        self.find_inversion(complex).is_none()
    }
}

/// Validates and closes an action: generators act by dimension- and
/// face-preserving cell permutations, the identity acts as the identity,
/// and the generator assignment extends to a group homomorphism (verified
/// by composing on all cells over the full closure).
pub fn close_action(
    complex: &CellComplex,
    action: &SimplicialAction,
    cap: usize,
) -> Result<ClosedAction, ActionError> {
    let n = complex.n_cells();
    if action.cell_maps.len() != action.group.generators().len() {
        return Err(ActionError::NotAHomomorphism);
    }
    for (gi, p) in action.cell_maps.iter().enumerate() {
        if p.degree() != n {
            return Err(ActionError::WrongDegree {
                expected: n,
                got: p.degree(),
            });
        }
        for c in 0..n {
            let img = p.apply(c as u32) as usize;
            if complex.dim(c) != complex.dim(img) {
                return Err(ActionError::NotSimplicial {
                    generator: gi,
                    cell: complex.id(c).to_string(),
                });
            }
            let mut mapped: Vec<usize> = complex
                .faces(c)
                .iter()
                .map(|&f| p.apply(f as u32) as usize)
                .collect();
            mapped.sort_unstable();
            if mapped != complex.faces(img) {
                return Err(ActionError::NotSimplicial {
                    generator: gi,
                    cell: complex.id(c).to_string(),
                });
            }
        }
    }
    let closure = action.group.close(cap)?;
    let cell_group = PermGroup::new(n, action.cell_maps.clone())?;
    let cell_perms: Vec<Perm> = closure
        .elements()
        .iter()
        .map(|e| cell_group.eval_word(&closure.element_word(e).expect("closed")))
        .collect();
    // homomorphism check on all pairs
    for i in 0..closure.order() {
        for j in 0..closure.order() {
            let prod = closure.elements()[i].then(&closure.elements()[j]);
            let pi = closure.element_index(&prod).expect("closed");
            if cell_perms[i].then(&cell_perms[j]) != cell_perms[pi] {
                return Err(ActionError::NotAHomomorphism);
            }
        }
    }
    Ok(ClosedAction {
        group: closure,
        cell_perms,
    })
}

/// Returns the induced action on the barycentric subdivision, which is
/// always without inversion; when the action already is, inputs come back
/// unchanged.
pub fn regularize_action(
    complex: &CellComplex,
    action: &SimplicialAction,
    cap: usize,
) -> Result<(CellComplex, SimplicialAction), ActionError> {
    let closed = close_action(complex, action, cap)?;
    if closed.is_without_inversion(complex) {
        return Ok((complex.clone(), action.clone()));
    }
    let (sub, chains) = complex.barycentric_subdivision();
    let induced = induce_on_subdivision(complex, &sub, &chains, action);
    Ok((sub, induced))
}

/// Transfers an action along a barycentric subdivision: a generator sends
/// the chain cell `[c0 < ... < ck]` to `[g c0 < ... < g ck]`.
pub fn induce_on_subdivision(
    _original: &CellComplex,
    sub: &CellComplex,
    chains: &[Vec<usize>],
    action: &SimplicialAction,
) -> SimplicialAction {
    let index_of: BTreeMap<&[usize], usize> = chains
        .iter()
        .enumerate()
        .map(|(i, ch)| (ch.as_slice(), i))
        .collect();
    let cell_maps = action
        .cell_maps
        .iter()
        .map(|p| {
            let images: Vec<u32> = (0..sub.n_cells())
                .map(|i| {
                    let mapped: Vec<usize> = chains[i]
                        .iter()
                        .map(|&c| p.apply(c as u32) as usize)
                        .collect();
                    index_of[mapped.as_slice()] as u32
                })
                .collect();
            Perm::from_images(images).expect("induced map is a bijection")
        })
        .collect();
    SimplicialAction {
        group: action.group.clone(),
        cell_maps,
    }
}

/// The subcomplex of cells fixed by `g`. Requires an action without
/// inversion, under which the fixed cells are face-closed.
pub fn fixed_subcomplex(
    complex: &CellComplex,
    closed: &ClosedAction,
    g: &Perm,
) -> Result<CellComplex, ActionError> {
    let fixed = closed.fixed_cells(g)?;
    // face-closedness: guaranteed without inversion; verify rather than trust
    for &c in &fixed {
        for &f in complex.faces(c) {
            if !fixed.contains(&f) {
                return Err(ActionError::InversionDetected {
                    element: g.clone(),
                    cell: complex.id(c).to_string(),
                });
            }
        }
    }
    complex
        .subcomplex(&fixed)
        .map_err(|_| ActionError::ElementNotInGroup)
}

/// Convenience builders for the複complexes used across the test suites.
pub mod shapes {
    use super::*;

    /// A single d-simplex with full closure; ids `v1..`, `e12..`, `f123..`.
    pub fn simplex(d: usize) -> CellComplex {
        assert!(d <= 3, "desk scale");
        let mut cells = Vec::new();
        let verts: Vec<String> = (1..=d + 1).map(|i| format!("v{i}")).collect();
        for v in &verts {
            cells.push(Cell::vertex(v));
        }
        if d >= 1 {
            for i in 1..=d + 1 {
                for j in i + 1..=d + 1 {
                    cells.push(Cell {
                        id: format!("e{i}{j}"),
                        dim: 1,
                        faces: vec![format!("v{i}"), format!("v{j}")],
                    });
                }
            }
        }
        if d >= 2 {
            for i in 1..=d + 1 {
                for j in i + 1..=d + 1 {
                    for k in j + 1..=d + 1 {
                        cells.push(Cell {
                            id: format!("f{i}{j}{k}"),
                            dim: 2,
                            faces: vec![format!("e{i}{j}"), format!("e{i}{k}"), format!("e{j}{k}")],
                        });
                    }
                }
            }
        }
        if d == 3 {
            cells.push(Cell {
                id: String::from("t1234"),
                dim: 3,
                faces: vec![
                    String::from("f123"),
                    String::from("f124"),
                    String::from("f134"),
                    String::from("f234"),
                ],
            });
        }
        build_complex(&cells).expect("simplex is valid")
    }

    /// The boundary of a tetrahedron: 4 vertices, 6 edges, 4 triangles.
    pub fn tetrahedron_boundary() -> CellComplex {
        let full = simplex(3);
        let keep: BTreeSet<usize> = (0..full.n_cells()).filter(|&c| full.dim(c) < 3).collect();
        full.subcomplex(&keep).expect("boundary is closed")
    }

    /// A circle made of `n` vertices and `n` edges (`n >= 2`).
    pub fn polygon(n: usize) -> CellComplex {
        assert!(n >= 2);
        let mut cells = Vec::new();
        for i in 0..n {
            cells.push(Cell::vertex(&format!("v{i}")));
        }
        for i in 0..n {
            cells.push(Cell {
                id: format!("e{i}"),
                dim: 1,
                faces: vec![format!("v{i}"), format!("v{}", (i + 1) % n)],
            });
        }
        build_complex(&cells).expect("polygon is valid")
    }

    /// A path of `n` edges on `n+1` vertices.
    pub fn path(n: usize) -> CellComplex {
        let mut cells = Vec::new();
        for i in 0..=n {
            cells.push(Cell::vertex(&format!("v{i}")));
        }
        for i in 0..n {
            cells.push(Cell {
                id: format!("e{i}"),
                dim: 1,
                faces: vec![format!("v{i}"), format!("v{}", i + 1)],
            });
        }
        build_complex(&cells).expect("path is valid")
    }

    /// A point.
    pub fn point() -> CellComplex {
        build_complex(&[Cell::vertex("p")]).expect("point is valid")
    }

    /// The rotation action of Z/n on `polygon(n)`.
    pub fn polygon_rotation(n: usize) -> (CellComplex, SimplicialAction) {
        let complex = polygon(n);
        let group = PermGroup::cyclic(n);
        // the canonical order puts vertices v0..v{n-1} first, then edges e0..
        // only for n <= 10 does the lexicographic id order match numeric order
        assert!(n <= 10, "ids sort lexicographically");
        let images: Vec<u32> = (0..complex.n_cells() as u32)
            .map(|c| {
                let c = c as usize;
                let (base, i) = if c < n { (0, c) } else { (n, c - n) };
                (base + (i + 1) % n) as u32
            })
            .collect();
        let map = Perm::from_images(images).expect("rotation is a bijection");
        let action = SimplicialAction {
            group,
            cell_maps: vec![map],
        };
        (complex, action)
    }

    /// The reflection action of Z/2 on `polygon(n)` fixing vertex `v0` (and,
    /// for even `n`, the antipodal vertex).
    pub fn polygon_reflection(n: usize) -> (CellComplex, SimplicialAction) {
        let complex = polygon(n);
        assert!(n <= 10, "ids sort lexicographically");
        let group = PermGroup::new(2, vec![Perm::from_cycles(2, &[vec![0, 1]]).unwrap()]).unwrap();
        let images: Vec<u32> = (0..complex.n_cells())
            .map(|c| {
                if c < n {
                    // vertex v_i -> v_{n-i mod n}
                    ((n - c) % n) as u32
                } else {
                    // edge e_i = (v_i, v_{i+1}) -> (v_{n-i}, v_{n-i-1}) = e_{n-i-1}
                    (n + (n - 1 - (c - n))) as u32
                }
            })
            .collect();
        let map = Perm::from_images(images).expect("reflection is a bijection");
        let action = SimplicialAction {
            group,
            cell_maps: vec![map],
        };
        (complex, action)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        let x = shapes::point();
        assert_eq!(x.n_cells(), 1);
        assert_eq!(x.n_edges(), 0);
        assert_eq!(x.euler_characteristic(), 1);
    }

    #[test]
    fn one_simplex_barycentric_counts() {
        let x = shapes::simplex(1);
        assert_eq!(x.n_cells(), 3);
        assert_eq!(x.n_edges(), 2);
        assert!(x.composable_pairs().is_empty());
    }

    #[test]
    fn two_simplex_counts() {
        // brute-force oracle: enumerate incident (higher, lower) pairs directly
        let x = shapes::simplex(2);
        assert_eq!(x.n_cells(), 7);
        let mut expected_edges = 0;
        for i in 0..x.n_cells() {
            expected_edges += x.closure(i).len();
        }
        assert_eq!(x.n_edges(), expected_edges);
        assert_eq!(x.n_edges(), 12);
        // composable pairs by brute force over E(X) x E(X)
        let mut expect = 0;
        for &(a_hi, a_lo) in x.edges() {
            for &(b_hi, b_lo) in x.edges() {
                if b_lo == a_hi {
                    assert!(x.edge_index((b_hi, a_lo)).is_some());
                    expect += 1;
                }
            }
        }
        assert_eq!(expect, 6);
        assert_eq!(x.composable_pairs().len(), 6);
    }

    #[test]
    fn composable_pairs_trivial_cases() {
        assert!(shapes::point().composable_pairs().is_empty());
        // disjoint union of two 1-simplices
        let cells = [
            Cell::vertex("a1"),
            Cell::vertex("a2"),
            Cell::new("ea", 1, &["a1", "a2"]),
            Cell::vertex("b1"),
            Cell::vertex("b2"),
            Cell::new("eb", 1, &["b1", "b2"]),
        ];
        let x = build_complex(&cells).unwrap();
        assert!(x.composable_pairs().is_empty());
        assert_eq!(x.connected_components().len(), 2);
    }

    #[test]
    fn composition_associativity() {
        // if (a,b,ab) and (b,c,bc) are listed, (a,bc) and (ab,c) give the same edge
        let x = shapes::simplex(3);
        let pairs = x.composable_pairs();
        let composite: BTreeMap<(usize, usize), usize> =
            pairs.iter().map(|&(a, b, ab)| ((a, b), ab)).collect();
        for &(a, b, ab) in &pairs {
            for &(b2, c, bc) in &pairs {
                if b2 != b {
                    continue;
                }
                let left = composite.get(&(a, bc));
                let right = composite.get(&(ab, c));
                assert!(left.is_some() && right.is_some());
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn subdivision_counts_and_euler() {
        let (sub, _) = shapes::simplex(1).barycentric_subdivision();
        assert_eq!(sub.dim_counts(), vec![3, 2]);

        let (sub, _) = shapes::polygon(3).barycentric_subdivision();
        assert_eq!(sub.dim_counts(), vec![6, 6]);
        assert_eq!(sub.euler_characteristic(), 0);

        let x = shapes::simplex(2);
        let (sub, _) = x.barycentric_subdivision();
        assert_eq!(sub.dim_counts(), vec![7, 12, 6]);
        assert_eq!(sub.euler_characteristic(), x.euler_characteristic());
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(shapes::polygon(4).euler_characteristic(), 0);
        assert_eq!(shapes::tetrahedron_boundary().euler_characteristic(), 2);
    }

    #[test]
    fn invalid_complexes_rejected() {
        let dangling = [Cell::new("e", 1, &["v1", "v2"])];
        assert!(matches!(
            build_complex(&dangling),
            Err(ComplexError::DanglingFace { .. })
        ));
        // an edge with a single distinct endpoint is not a simplex
        let loop_edge = [Cell::vertex("v"), Cell::new("e", 1, &["v", "v"])];
        assert!(matches!(
            build_complex(&loop_edge),
            Err(ComplexError::NotSimplexLike { .. })
        ));
        let dup = [Cell::vertex("v"), Cell::vertex("v")];
        assert!(matches!(build_complex(&dup), Err(ComplexError::DuplicateId(_))));
    }

    #[test]
    fn edge_orientation_invariant() {
        let x = shapes::simplex(2);
        for &(hi, lo) in x.edges() {
            assert!(x.dim(lo) < x.dim(hi));
        }
    }

    #[test]
    fn segment_swap_needs_regularization() {
        // Z/2 swapping the endpoints of a 1-simplex maps the edge to itself
        // and flips its faces; regularization subdivides once.
        let x = shapes::simplex(1);
        // canonical order: v1, v2, e12
        let group = PermGroup::new(2, vec![Perm::from_cycles(2, &[vec![0, 1]]).unwrap()]).unwrap();
        let swap = Perm::from_images(vec![1, 0, 2]).unwrap();
        let action = SimplicialAction {
            group,
            cell_maps: vec![swap],
        };
        let closed = close_action(&x, &action, 100).unwrap();
        assert!(!closed.is_without_inversion(&x));
        let (y, act2) = regularize_action(&x, &action, 100).unwrap();
        assert_eq!(y.dim_counts(), vec![3, 2]);
        let closed2 = close_action(&y, &act2, 100).unwrap();
        assert!(closed2.is_without_inversion(&y));
        // the middle vertex (the old edge barycenter) stays fixed
        let g = closed2.group.elements().iter().find(|e| !e.is_identity()).unwrap().clone();
        let fixed = closed2.fixed_cells(&g).unwrap();
        assert_eq!(fixed.len(), 1);
    }

    #[test]
    fn trivial_action_unchanged_by_regularization() {
        let x = shapes::simplex(2);
        let action = SimplicialAction::trivial(PermGroup::trivial(1), &x);
        let (y, _) = regularize_action(&x, &action, 10).unwrap();
        assert_eq!(y, x);
    }

    #[test]
    fn hexagon_reflection_is_inversion_free() {
        let (x, action) = shapes::polygon_reflection(6);
        let closed = close_action(&x, &action, 100).unwrap();
        assert!(closed.is_without_inversion(&x));
        let (y, _) = regularize_action(&x, &action, 100).unwrap();
        assert_eq!(y, x);
    }

    #[test]
    fn fixed_subcomplexes_of_hexagon() {
        let (x, action) = shapes::polygon_reflection(6);
        let closed = close_action(&x, &action, 100).unwrap();
        let g = closed.group.elements().iter().find(|e| !e.is_identity()).unwrap().clone();
        // reflection fixing v0 and v3: two isolated vertices
        let fix = fixed_subcomplex(&x, &closed, &g).unwrap();
        assert_eq!(fix.n_cells(), 2);
        assert_eq!(fix.euler_characteristic(), 2);
        // identity fixes everything
        let id = Perm::identity(2);
        let all = fixed_subcomplex(&x, &closed, &id).unwrap();
        assert_eq!(all.n_cells(), x.n_cells());
        // a free rotation fixes nothing
        let (x2, rot) = shapes::polygon_rotation(6);
        let closed2 = close_action(&x2, &rot, 100).unwrap();
        let r = closed2.group.elements().iter().find(|e| !e.is_identity()).unwrap().clone();
        let fix2 = fixed_subcomplex(&x2, &closed2, &r).unwrap();
        assert_eq!(fix2.n_cells(), 0);
        assert_eq!(fix2.euler_characteristic(), 0);
    }

    #[test]
    fn element_not_in_group_errors() {
        let (x, action) = shapes::polygon_reflection(6);
        let closed = close_action(&x, &action, 100).unwrap();
        let alien = Perm::from_cycles(2, &[]).unwrap(); // identity, in group
        assert!(closed.fixed_cells(&alien).is_ok());
        let outside = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            fixed_subcomplex(&x, &closed, &outside),
            Err(ActionError::ElementNotInGroup) | Err(ActionError::Perm(_))
        ));
    }

    #[test]
    fn conjugate_fixed_sets_are_translates() {
        let (x, action) = shapes::polygon_reflection(6);
        let closed = close_action(&x, &action, 100).unwrap();
        let g = closed.group.elements().iter().find(|e| !e.is_identity()).unwrap().clone();
        for h in closed.group.elements() {
            let conj = g.conjugate_by(h);
            let fix_g = closed.fixed_cells(&g).unwrap();
            let fix_conj = closed.fixed_cells(&conj).unwrap();
            let hp = closed.cell_perm_of(h).unwrap();
            let translated: BTreeSet<usize> =
                fix_g.iter().map(|&c| hp.apply(c as u32) as usize).collect();
            assert_eq!(translated, fix_conj);
        }
    }
}
