//! Finitely generated abelian groups and exactness checking for short
//! sequences of them.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use super::snf::{hcat, kernel_basis, lattice_contains, IntMat};

/// `Z^n / (column lattice of `relations`)`. The zero group is `n = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub n_gens: usize,
    /// Columns are relation vectors in `Z^n_gens`; may be empty.
    pub relations: IntMat,
}

impl AbelianGroup {
    pub fn zero() -> AbelianGroup {
        AbelianGroup {
            n_gens: 0,
            relations: IntMat::zero(0, 0),
        }
    }

    pub fn free(rank: usize) -> AbelianGroup {
        AbelianGroup {
            n_gens: rank,
            relations: IntMat::zero(rank, 0),
        }
    }

    pub fn cyclic(order: u64) -> AbelianGroup {
        let mut relations = IntMat::zero(1, 1);
        relations[(0, 0)] = BigInt::from(order);
        AbelianGroup { n_gens: 1, relations }
    }
}

/// A map `A -> B` between presented abelian groups: the matrix sends
/// generator `j` of `A` to the column-`j` combination of `B`'s generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianMap {
    /// `b.n_gens x a.n_gens`
    pub matrix: IntMat,
}

impl AbelianMap {
    pub fn zero(target_gens: usize, source_gens: usize) -> AbelianMap {
        AbelianMap {
            matrix: IntMat::zero(target_gens, source_gens),
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> AbelianMap {
        AbelianMap {
            matrix: IntMat::from_rows(rows),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactnessError {
    ShapeMismatch { position: usize, detail: String },
    NotWellDefined { position: usize },
}

impl fmt::Display for ExactnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactnessError::ShapeMismatch { position, detail } => {
                write!(f, "map {position} has mismatched shape: {detail}")
            }
            ExactnessError::NotWellDefined { position } => {
                write!(f, "map {position} does not send relations to relations")
            }
        }
    }
}

impl core::error::Error for ExactnessError {}

/// Result of an exactness check: either exact, or the index of the first
/// interior node where image != kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactnessVerdict {
    Exact,
    FailsAt { node: usize },
}

/// Checks `A_0 -> A_1 -> ... -> A_k` for exactness at every interior node
/// `A_1 .. A_{k-1}`: the image lattice of the incoming map must equal the
/// kernel lattice of the outgoing map, both taken modulo relations.
///
/// Kernels are computed through Smith normal form of the map against the
/// target's relation lattice; equality of subgroups is mutual lattice
/// containment after adjoining the node's relations to both sides.
pub fn check_abelian_exact(
    groups: &[AbelianGroup],
    maps: &[AbelianMap],
) -> Result<ExactnessVerdict, ExactnessError> {
    if maps.len() + 1 != groups.len() {
        return Err(ExactnessError::ShapeMismatch {
            position: 0,
            detail: String::from("need one map between each pair of adjacent groups"),
        });
    }
    for (i, m) in maps.iter().enumerate() {
        let (src, dst) = (&groups[i], &groups[i + 1]);
        if m.matrix.rows != dst.n_gens || m.matrix.cols != src.n_gens {
            return Err(ExactnessError::ShapeMismatch {
                position: i,
                detail: alloc::format!(
                    "matrix is {}x{}, expected {}x{}",
                    m.matrix.rows,
                    m.matrix.cols,
                    dst.n_gens,
                    src.n_gens
                ),
            });
        }
        // well-defined: f(relations of src) must land in relations of dst
        let mapped = m.matrix.mul(&src.relations);
        if dst.n_gens > 0 && !lattice_contains(&dst.relations, &mapped) {
            return Err(ExactnessError::NotWellDefined { position: i });
        }
    }

    for node in 1..groups.len() - 1 {
        let g = &groups[node];
        let incoming = &maps[node - 1];
        let outgoing = &maps[node];
        if g.n_gens == 0 {
            continue; // zero group: always exact here
        }
        // image lattice: columns of incoming map plus the node's relations
        let image = hcat(&incoming.matrix, &g.relations);
        // kernel lattice of (outgoing modulo target relations):
        // x in ker iff outgoing*x lies in target relation lattice, i.e.
        // [outgoing | target_rels] * (x, y)^T = 0 has a solution; project to x.
        let target = &groups[node + 1];
        let kernel = if target.n_gens == 0 {
            // everything is in the kernel
            IntMat::identity(g.n_gens)
        } else {
            let stacked = hcat(&outgoing.matrix, &target.relations);
            let basis = kernel_basis(&stacked);
            // keep the first g.n_gens coordinates of each basis column
            let mut proj = IntMat::zero(g.n_gens, basis.cols);
            for j in 0..basis.cols {
                for i in 0..g.n_gens {
                    proj[(i, j)] = basis[(i, j)].clone();
                }
            }
            proj
        };
        let kernel_full = hcat(&kernel, &g.relations);
        if !lattice_contains(&kernel_full, &image) || !lattice_contains(&image, &kernel_full) {
            return Ok(ExactnessVerdict::FailsAt { node });
        }
    }
    Ok(ExactnessVerdict::Exact)
}

/// The lens-space sequence data: `0 -> Z -> Z -> Z/p -> Z/m -> 0` with the
/// connecting map multiplication by `l = gcd(p, q-1)` and `m = p / l`.
pub fn lens_space_sequence(p: u64, q: u64) -> (Vec<AbelianGroup>, Vec<AbelianMap>, u64, u64) {
    assert!(p >= 1 && q >= 1, "lens space parameters must be positive");
    let l = gcd(p, q - 1).max(1);
    let m = p / l;
    let groups = vec![
        AbelianGroup::zero(),
        AbelianGroup::free(1),
        AbelianGroup::free(1),
        AbelianGroup::cyclic(p),
        AbelianGroup::cyclic(m),
        AbelianGroup::zero(),
    ];
    let maps = vec![
        AbelianMap::zero(1, 0),
        AbelianMap::from_rows(&[vec![l as i64]]),
        AbelianMap::from_rows(&[vec![m as i64]]),
        AbelianMap::from_rows(&[vec![1]]),
        AbelianMap::zero(0, 1),
    ];
    (groups, maps, l, m)
}

fn gcd(a: u64, b: u64) -> u64 {
    if a == 0 {
        b
    } else {
        gcd(b % a, a)
    }
}

/// True when the map matrix would send some relation outside the target's
/// relation lattice (used by tests to build deliberate violations).
pub fn is_well_defined(src: &AbelianGroup, dst: &AbelianGroup, m: &AbelianMap) -> bool {
    if dst.n_gens == 0 {
        return true;
    }
    let mapped = m.matrix.mul(&src.relations);
    lattice_contains(&dst.relations, &mapped)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lens_4_3_is_exact() {
        let (groups, maps, l, m) = lens_space_sequence(4, 3);
        assert_eq!((l, m), (2, 2));
        assert_eq!(check_abelian_exact(&groups, &maps), Ok(ExactnessVerdict::Exact));
    }

    #[test]
    fn identity_sequence_exact() {
        // 0 -> A -> A -> 0 with the identity
        let a = AbelianGroup::cyclic(6);
        let groups = vec![AbelianGroup::zero(), a.clone(), a, AbelianGroup::zero()];
        let maps = vec![
            AbelianMap::zero(1, 0),
            AbelianMap::from_rows(&[vec![1]]),
            AbelianMap::zero(0, 1),
        ];
        assert_eq!(check_abelian_exact(&groups, &maps), Ok(ExactnessVerdict::Exact));
    }

    #[test]
    fn wrong_middle_map_fails_at_reported_node() {
        // 0 -> Z -(x2)-> Z -(1 |-> 1)-> Z/4 -> 0: image 2Z, kernel 4Z; fails at node 2
        let groups = vec![
            AbelianGroup::zero(),
            AbelianGroup::free(1),
            AbelianGroup::free(1),
            AbelianGroup::cyclic(4),
            AbelianGroup::zero(),
        ];
        let maps = vec![
            AbelianMap::zero(1, 0),
            AbelianMap::from_rows(&[vec![2]]),
            AbelianMap::from_rows(&[vec![1]]),
            AbelianMap::zero(0, 1),
        ];
        assert_eq!(
            check_abelian_exact(&groups, &maps),
            Ok(ExactnessVerdict::FailsAt { node: 2 })
        );
    }

    #[test]
    fn shape_mismatch_detected() {
        let groups = vec![AbelianGroup::free(1), AbelianGroup::free(2)];
        let maps = vec![AbelianMap::from_rows(&[vec![1]])];
        assert!(matches!(
            check_abelian_exact(&groups, &maps),
            Err(ExactnessError::ShapeMismatch { .. })
        ));
    }
}
