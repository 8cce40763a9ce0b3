//! From a finite group acting without inversion on a finite complex: the
//! associated complex of groups, orbifold Euler characteristics by both
//! formulas, and the twisted-sector table.
//!
//! The quotient is taken directly when the orbit complex is again a
//! simplicial cell complex; otherwise the action passes to the barycentric
//! subdivision first, where both fixed sets and quotients are guaranteed to
//! be complexes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::budget::Budget;
use crate::cog::ComplexOfGroups;
use crate::groups::coset::todd_coxeter;
use crate::groups::perm::{Perm, PermGroup};
use crate::pi1::{pi1_presentation, Pi1Options};
use crate::scwol::{
    build_complex, close_action, induce_on_subdivision, Cell, CellComplex, ClosedAction,
    SimplicialAction,
};

#[derive(Clone, Debug)]
pub enum QuotientError {
    Action(crate::scwol::ActionError),
    InversionDetected,
    /// Even after one subdivision the orbit complex failed validation;
    /// cannot happen for genuine simplicial actions.
    QuotientNotSimplicial,
}

impl fmt::Display for QuotientError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientError::Action(e) => write!(f, "{e}"),
            QuotientError::InversionDetected => {
                write!(f, "action has inversions; regularize first")
            }
            QuotientError::QuotientNotSimplicial => {
                write!(f, "orbit complex is not a simplicial cell complex")
            }
        }
    }
}

impl core::error::Error for QuotientError {}

impl From<crate::scwol::ActionError> for QuotientError {
    fn from(e: crate::scwol::ActionError) -> Self {
        QuotientError::Action(e)
    }
}

/// The orbit complex of an action, with its bookkeeping.
#[derive(Clone, Debug)]
pub struct OrbitComplex {
    pub complex: CellComplex,
    /// Per quotient cell: the orbit upstairs (sorted cell indices).
    pub orbits: Vec<Vec<usize>>,
    /// Per quotient cell: the chosen representative (least cell index).
    pub representatives: Vec<usize>,
    /// Per upstairs cell: its quotient cell.
    pub projection: Vec<usize>,
}

/// Builds the orbit complex when it is a valid simplicial cell complex
/// (faces of a quotient cell distinct, closures embedding); `None`
/// otherwise. Quotient cell ids are the ids of their representatives.
pub fn orbit_complex(complex: &CellComplex, closed: &ClosedAction) -> Option<OrbitComplex> {
    let n = complex.n_cells();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for c in 0..n {
        if orbit_of[c] != usize::MAX {
            continue;
        }
        let orbit = closed.orbit(c);
        let k = orbits.len();
        for &m in &orbit {
            orbit_of[m] = k;
        }
        orbits.push(orbit);
    }
    let representatives: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
    let cells: Vec<Cell> = orbits
        .iter()
        .enumerate()
        .map(|(_, orbit)| {
            let rep = orbit[0];
            Cell {
                id: complex.id(rep).to_string(),
                dim: complex.dim(rep),
                faces: complex
                    .faces(rep)
                    .iter()
                    .map(|&f| complex.id(representatives[orbit_of[f]]).to_string())
                    .collect(),
            }
        })
        .collect();
    let quotient = build_complex(&cells).ok()?;
    // reindex into the quotient's canonical cell order
    let mut order: Vec<usize> = Vec::with_capacity(orbits.len());
    for q in 0..quotient.n_cells() {
        let rep_id = quotient.id(q);
        let rep = complex.cell_index(rep_id).expect("representative id");
        order.push(orbit_of[rep]);
    }
    let orbits_sorted: Vec<Vec<usize>> = order.iter().map(|&k| orbits[k].clone()).collect();
    let reps_sorted: Vec<usize> = orbits_sorted.iter().map(|o| o[0]).collect();
    let mut projection = vec![usize::MAX; n];
    for (q, orbit) in orbits_sorted.iter().enumerate() {
        for &m in orbit {
            projection[m] = q;
        }
    }
    // closures must embed: each cell of the representative's closure in a
    // distinct orbit, matching the quotient closure
    for q in 0..quotient.n_cells() {
        let rep = reps_sorted[q];
        let upstairs: BTreeSet<usize> = complex.closure(rep).iter().map(|&c| projection[c]).collect();
        if upstairs.len() != complex.closure(rep).len() || upstairs != *quotient.closure(q) {
            return None;
        }
    }
    Some(OrbitComplex {
        complex: quotient,
        orbits: orbits_sorted,
        representatives: reps_sorted,
        projection,
    })
}

/// The associated complex of groups of an action, with its section and
/// transporters.
#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub cog: ComplexOfGroups,
    /// Per quotient cell: the chosen representative cell upstairs.
    pub section: Vec<usize>,
    /// Per quotient edge: the transporter carrying the representative's
    /// face to the face's own representative.
    pub transporters: Vec<Perm>,
    /// The complex the construction finally ran on (the input, or its
    /// barycentric subdivision when the direct quotient is not simplicial).
    pub complex_upstairs: CellComplex,
    pub action_upstairs: SimplicialAction,
    pub orbit_data: OrbitComplex,
}

/// Builds the associated complex of groups: local groups are stabilizers of
/// chosen representatives, injections are inclusions conjugated by
/// deterministic transporters, and twists are the transporter
/// discrepancies. Errors if the action has inversions.
pub fn quotient_cog(
    complex: &CellComplex,
    action: &SimplicialAction,
    budget: &Budget,
) -> Result<QuotientResult, QuotientError> {
    let closed = close_action(complex, action, budget.cap_closure)?;
    if !closed.is_without_inversion(complex) {
        return Err(QuotientError::InversionDetected);
    }
    // quotient directly when valid; otherwise pass to the subdivision
    let (upstairs, action_up, closed_up, orbit) = match orbit_complex(complex, &closed) {
        Some(o) => (complex.clone(), action.clone(), closed, o),
        None => {
            let (sub, chains) = complex.barycentric_subdivision();
            let induced = induce_on_subdivision(complex, &sub, &chains, action);
            let closed_sub = close_action(&sub, &induced, budget.cap_closure)?;
            let o = orbit_complex(&sub, &closed_sub).ok_or(QuotientError::QuotientNotSimplicial)?;
            (sub, induced, closed_sub, o)
        }
    };

    let q = &orbit.complex;
    let section = orbit.representatives.clone();
    let degree = closed_up.group.degree();

    // local groups: stabilizers of representatives, with a short generating set
    let mut local_groups: Vec<PermGroup> = Vec::with_capacity(q.n_cells());
    for cell in 0..q.n_cells() {
        let stab: BTreeSet<Perm> = closed_up.stabilizer(section[cell]).into_iter().collect();
        let gens = closed_up.group.subgroup_generators(&stab);
        local_groups.push(PermGroup::new(degree, gens).expect("same degree"));
    }

    // transporters: for the edge (q_hi, q_lo), the representative of q_hi has
    // a unique face in the orbit q_lo; carry it to q_lo's representative by
    // the least group element doing so
    let mut transporters: Vec<Perm> = Vec::with_capacity(q.n_edges());
    for &(q_hi, q_lo) in q.edges() {
        let rep = section[q_hi];
        let face = *upstairs
            .closure(rep)
            .iter()
            .find(|&&f| orbit.projection[f] == q_lo)
            .expect("closure embeds");
        let target = section[q_lo];
        let carrier = closed_up
            .group
            .elements()
            .iter()
            .enumerate()
            .find(|(i, _)| closed_up.cell_perms[*i].apply(face as u32) as usize == target)
            .map(|(_, e)| e.clone())
            .expect("same orbit");
        transporters.push(carrier);
    }

    // psi: g -> h g h^-1 with h the transporter (in left-to-right notation,
    // conjugate_by(h^-1))
    let psi: Vec<Vec<Perm>> = q
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(q_hi, _))| {
            let h = &transporters[e];
            local_groups[q_hi]
                .generators()
                .iter()
                .map(|g| g.conjugate_by(&h.inverse()))
                .collect()
        })
        .collect();

    // twists: g_{a,b} = h_a h_b h_ab^-1 ... in left-to-right word order the
    // element acting as "first h_ab^-1, then h_b, then h_a" is
    // h_ab^-1 * h_b * h_a read right-to-left; as a permutation product we
    // need the group element h_a h_b h_ab^-1 under the same convention used
    // by psi: conjugation there is x -> h x h^-1 = x.conjugate_by(h^-1),
    // i.e. elements multiply as permutations with `then` meaning "right
    // factor applied second". The product h_a h_b is then h_b.then(h_a).
    let pairs = q.composable_pairs();
    let mut twists: Vec<Perm> = Vec::with_capacity(pairs.len());
    for &(a, b, ab) in &pairs {
        let h_a = &transporters[a];
        let h_b = &transporters[b];
        let h_ab = &transporters[ab];
        let tw = h_ab.inverse().then(h_b).then(h_a);
        twists.push(tw);
    }

    let cog = ComplexOfGroups::new(q.clone(), local_groups, psi, twists, budget.cap_closure)
        .expect("stabilizer data is well-formed");
    debug_assert_eq!(cog.validate(), Ok(()));
    Ok(QuotientResult {
        cog,
        section,
        transporters,
        complex_upstairs: upstairs,
        action_upstairs: action_up,
        orbit_data: orbit,
    })
}

/// An exact rational, reduced, for the commuting-pair average.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    pub numerator: i64,
    pub denominator: i64,
}

impl Rational {
    fn new(numerator: i64, denominator: i64) -> Rational {
        debug_assert!(denominator > 0);
        let g = gcd(numerator.unsigned_abs(), denominator.unsigned_abs()).max(1) as i64;
        Rational {
            numerator: numerator / g,
            denominator: denominator / g,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.denominator == 1
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == 1 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if a == 0 {
        b
    } else {
        gcd(b % a, a)
    }
}

/// Both orbifold Euler characteristics:
/// the commuting-pair average `(1/|G|) sum over gh=hg of chi(Y^g meet Y^h)`
/// and the sector sum `chi(Y/G) + sum over nontrivial classes of
/// chi(Y^g / C(g))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiOrb {
    pub by_pairs: Rational,
    pub by_sectors: i64,
}

#[derive(Clone, Debug)]
pub enum ChiError {
    Quotient(QuotientError),
    /// The commuting-pair sum failed to be divisible by the group order;
    /// impossible for a genuine action, so this is an internal failure.
    NotIntegral { numerator: i64, denominator: i64 },
    Disagreement { by_pairs: i64, by_sectors: i64 },
}

impl fmt::Display for ChiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiError::Quotient(e) => write!(f, "{e}"),
            ChiError::NotIntegral { numerator, denominator } => {
                write!(f, "commuting-pair sum {numerator}/{denominator} is not an integer")
            }
            ChiError::Disagreement { by_pairs, by_sectors } => {
                write!(f, "formulas disagree: pairs give {by_pairs}, sectors give {by_sectors}")
            }
        }
    }
}

impl core::error::Error for ChiError {}

impl From<QuotientError> for ChiError {
    fn from(e: QuotientError) -> Self {
        ChiError::Quotient(e)
    }
}

/// One row of the twisted-sector table: a conjugacy class representative,
/// its centralizer order, and `Y^g / C(g)` with its Euler characteristic.
#[derive(Clone, Debug)]
pub struct SectorRow {
    pub representative: Perm,
    pub centralizer_order: usize,
    pub sector: CellComplex,
    pub chi: i64,
}

/// Conjugacy-class-indexed fixed-quotient complexes with Euler data. The
/// identity row is always first and its sector is `Y/G`.
#[derive(Clone, Debug)]
pub struct TwistedSectorTable {
    pub rows: Vec<SectorRow>,
}

impl TwistedSectorTable {
    pub fn total_chi(&self) -> i64 {
        self.rows.iter().map(|r| r.chi).sum()
    }
}

/// Computes the twisted-sector table: one row per conjugacy class, the
/// sector being the orbit complex of the centralizer acting on the fixed
/// subcomplex (subdivided once more if that restricted action makes a
/// non-simplicial quotient).
pub fn twisted_sectors(
    complex: &CellComplex,
    action: &SimplicialAction,
    budget: &Budget,
) -> Result<TwistedSectorTable, QuotientError> {
    let (complex, action) = crate::scwol::regularize_action(complex, action, budget.cap_closure)?;
    let closed = close_action(&complex, &action, budget.cap_closure)?;
    let conj = closed.group.conjugacy_data();
    let mut rows = Vec::with_capacity(conj.classes.len());
    for (class, centralizer) in conj.classes.iter().zip(&conj.centralizers) {
        let rep = class[0].clone();
        let fixed: BTreeSet<usize> = closed.fixed_cells(&rep)?;
        let fixed_complex = complex.subcomplex(&fixed).expect("fixed sets are closed");
        // the centralizer acts on the fixed subcomplex; restrict cell maps,
        // following the subcomplex's own cell order
        let sub_order: Vec<usize> = (0..fixed_complex.n_cells())
            .map(|i| complex.cell_index(fixed_complex.id(i)).expect("same ids"))
            .collect();
        let restricted_maps: Vec<Perm> = centralizer
            .generators()
            .iter()
            .map(|z| {
                let zp = closed.cell_perm_of(z).expect("centralizer element");
                let images: Vec<u32> = sub_order
                    .iter()
                    .map(|&old| {
                        let img = zp.apply(old as u32) as usize;
                        sub_order.iter().position(|&o| o == img).expect("invariant set") as u32
                    })
                    .collect();
                Perm::from_images(images).expect("restriction is a bijection")
            })
            .collect();
        let restricted = SimplicialAction {
            group: centralizer.clone(),
            cell_maps: restricted_maps,
        };
        // quotient, subdividing once more if needed
        let closed_restricted = close_action(&fixed_complex, &restricted, budget.cap_closure)?;
        let sector = match orbit_complex(&fixed_complex, &closed_restricted) {
            Some(o) => o.complex,
            None => {
                let (sub, chains) = fixed_complex.barycentric_subdivision();
                let induced = induce_on_subdivision(&fixed_complex, &sub, &chains, &restricted);
                let closed_sub = close_action(&sub, &induced, budget.cap_closure)?;
                orbit_complex(&sub, &closed_sub)
                    .ok_or(QuotientError::QuotientNotSimplicial)?
                    .complex
            }
        };
        let chi = sector.euler_characteristic();
        let centralizer_order = centralizer
            .close(budget.cap_closure)
            .map_err(crate::scwol::ActionError::Perm)?
            .order();
        rows.push(SectorRow {
            representative: rep,
            centralizer_order,
            sector,
            chi,
        });
    }
    Ok(TwistedSectorTable { rows })
}

/// Computes both orbifold Euler characteristic formulas and checks they
/// agree on an integer.
pub fn chi_orb(
    complex: &CellComplex,
    action: &SimplicialAction,
    budget: &Budget,
) -> Result<ChiOrb, ChiError> {
    let (complex, action) =
        crate::scwol::regularize_action(complex, action, budget.cap_closure).map_err(QuotientError::Action)?;
    let closed = close_action(&complex, &action, budget.cap_closure).map_err(QuotientError::Action)?;
    let order = closed.order() as i64;

    // commuting-pair sum: chi of the common fixed set of g and h
    let mut pair_sum: i64 = 0;
    let n = complex.n_cells();
    let fixed_sets: Vec<BTreeSet<usize>> = (0..closed.order())
        .map(|i| {
            (0..n)
                .filter(|&c| closed.cell_perms[i].apply(c as u32) as usize == c)
                .collect()
        })
        .collect();
    let sign = |c: usize| if complex.dim(c) % 2 == 0 { 1i64 } else { -1i64 };
    for i in 0..closed.order() {
        for j in 0..closed.order() {
            let gi = &closed.group.elements()[i];
            let gj = &closed.group.elements()[j];
            if gi.then(gj) != gj.then(gi) {
                continue;
            }
            let chi: i64 = fixed_sets[i]
                .intersection(&fixed_sets[j])
                .map(|&c| sign(c))
                .sum();
            pair_sum += chi;
        }
    }
    let by_pairs = Rational::new(pair_sum, order);
    if !by_pairs.is_integer() {
        return Err(ChiError::NotIntegral {
            numerator: pair_sum,
            denominator: order,
        });
    }

    let table = twisted_sectors(&complex, &action, budget)?;
    let by_sectors = table.total_chi();
    if by_pairs.numerator != by_sectors {
        return Err(ChiError::Disagreement {
            by_pairs: by_pairs.numerator,
            by_sectors,
        });
    }
    Ok(ChiOrb { by_pairs, by_sectors })
}

/// Outcome of checking the recovery property for a group acting on a
/// simply connected complex: enumerating the trivial subgroup of the
/// quotient's fundamental group must give exactly `|G|` cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecoveryOutcome {
    Verified { order: usize },
    Failed { cosets: usize, order: usize },
    Unknown { cap: usize },
}

/// Checks `G = pi_1` of the associated complex of groups. The caller
/// asserts that the complex is simply connected; a warning flag is set when
/// `chi(Y) != 1`, a cheap necessary signal.
pub fn recover_group_check(
    complex: &CellComplex,
    action: &SimplicialAction,
    budget: &Budget,
) -> Result<(RecoveryOutcome, bool), QuotientError> {
    let chi_warning = complex.euler_characteristic() != 1;
    let qr = quotient_cog(complex, action, budget)?;
    let closed = close_action(&qr.complex_upstairs, &qr.action_upstairs, budget.cap_closure)?;
    let order = closed.order();
    let basepoint = 0;
    let p = pi1_presentation(&qr.cog, basepoint, Pi1Options::default())
        .expect("quotient of a connected complex is connected");
    match todd_coxeter(&p.presentation, &[], budget.cap_cosets) {
        Ok(t) if t.n_cosets() == order => Ok((RecoveryOutcome::Verified { order }, chi_warning)),
        Ok(t) => Ok((
            RecoveryOutcome::Failed {
                cosets: t.n_cosets(),
                order,
            },
            chi_warning,
        )),
        Err(_) => Ok((RecoveryOutcome::Unknown { cap: budget.cap_cosets }, chi_warning)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scwol::shapes;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn trivial_group_quotient_is_identity() {
        let y = shapes::simplex(2);
        let act = SimplicialAction::trivial(PermGroup::trivial(1), &y);
        let qr = quotient_cog(&y, &act, &budget()).unwrap();
        assert_eq!(qr.cog.base().n_cells(), y.n_cells());
        assert_eq!(qr.cog.validate(), Ok(()));
        for c in 0..qr.cog.base().n_cells() {
            assert_eq!(qr.cog.local_closure(c).order(), 1);
        }
    }

    #[test]
    fn path_swap_quotient() {
        // Z/2 swapping the outer vertices of a 2-edge path: quotient is one
        // segment, Z/2 at the fixed middle vertex... no: the swap fixes the
        // middle vertex and swaps the two edges; stabilizer of the outer
        // vertex orbit is trivial, of the middle vertex is Z/2.
        let y = shapes::path(2); // v0 e0 v1 e1 v2, middle v1
        let group = PermGroup::new(2, vec![Perm::from_cycles(2, &[vec![0, 1]]).unwrap()]).unwrap();
        // canonical cells: v0, v1, v2, e0, e1
        let map = Perm::from_images(vec![2, 1, 0, 4, 3]).unwrap();
        let act = SimplicialAction {
            group,
            cell_maps: vec![map],
        };
        let qr = quotient_cog(&y, &act, &budget()).unwrap();
        assert_eq!(qr.cog.validate(), Ok(()));
        let q = qr.cog.base();
        assert_eq!(q.dim_counts(), vec![2, 1]);
        // one vertex has stabilizer order 2, the other 1
        let mut orders: Vec<usize> = (0..q.n_cells())
            .filter(|&c| q.dim(c) == 0)
            .map(|c| qr.cog.local_closure(c).order())
            .collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2]);
        // pi1 has order 2
        let p = pi1_presentation(&qr.cog, 0, Pi1Options::default()).unwrap();
        let t = todd_coxeter(&p.presentation, &[], 1000).unwrap();
        assert_eq!(t.n_cosets(), 2);
    }

    #[test]
    fn hexagon_reflection_quotient_is_infinite_dihedral() {
        let (y, act) = shapes::polygon_reflection(6);
        let qr = quotient_cog(&y, &act, &budget()).unwrap();
        assert_eq!(qr.cog.validate(), Ok(()));
        let p = pi1_presentation(&qr.cog, 0, Pi1Options::default()).unwrap();
        let inv = crate::pi1::pi1_abelianization(&p);
        assert_eq!(inv.torsion, vec![2, 2]);
        assert_eq!(inv.free_rank, 0);
    }

    #[test]
    fn free_rotation_quotient_needs_subdivision() {
        // the hexagon modulo rotation by one step collapses to a single
        // vertex and edge; the construction must subdivide
        let (y, act) = shapes::polygon_rotation(6);
        let qr = quotient_cog(&y, &act, &budget()).unwrap();
        assert_eq!(qr.cog.validate(), Ok(()));
        assert_eq!(qr.complex_upstairs.n_cells(), 24); // subdivided hexagon
        // quotient of a free action on a circle is a circle
        assert_eq!(qr.cog.base().euler_characteristic(), 0);
        for c in 0..qr.cog.base().n_cells() {
            assert_eq!(qr.cog.local_closure(c).order(), 1);
        }
        let p = pi1_presentation(&qr.cog, 0, Pi1Options::default()).unwrap();
        let inv = crate::pi1::pi1_abelianization(&p);
        assert_eq!(inv.free_rank, 1);
        assert!(inv.torsion.is_empty());
    }

    #[test]
    fn chi_orb_trivial_group() {
        let y = shapes::tetrahedron_boundary();
        let act = SimplicialAction::trivial(PermGroup::trivial(1), &y);
        let chi = chi_orb(&y, &act, &budget()).unwrap();
        assert_eq!(chi.by_sectors, 2);
        assert_eq!(chi.by_pairs.numerator, 2);
    }

    #[test]
    fn chi_orb_point_with_s3_counts_classes() {
        let y = shapes::point();
        let s3 = PermGroup::symmetric(3);
        let act = SimplicialAction::trivial(s3, &y);
        // brute-force commuting-pair oracle: 18 commuting pairs of 36, each
        // contributing chi(point) = 1, so 18/6 = 3 = number of classes
        let chi = chi_orb(&y, &act, &budget()).unwrap();
        assert_eq!(chi.by_sectors, 3);
        let table = twisted_sectors(&y, &act, &budget()).unwrap();
        assert_eq!(table.rows.len(), 3);
        for row in &table.rows {
            assert_eq!(row.chi, 1);
        }
    }

    #[test]
    fn chi_orb_hexagon_reflection() {
        let (y, act) = shapes::polygon_reflection(6);
        let chi = chi_orb(&y, &act, &budget()).unwrap();
        // pairs: (0 + 2 + 2 + 2)/2 = 3; sectors: chi(interval) + chi(two points)
        assert_eq!(chi.by_sectors, 3);
        let table = twisted_sectors(&y, &act, &budget()).unwrap();
        assert_eq!(table.rows.len(), 2);
        assert_eq!(table.rows[0].chi, 1); // identity row: Y/G is an interval
        assert_eq!(table.rows[1].chi, 2); // two fixed vertices, trivial identification
        assert_eq!(table.rows[1].centralizer_order, 2);
    }

    #[test]
    fn sector_identity_row_is_full_quotient() {
        let (y, act) = shapes::polygon_rotation(4);
        let table = twisted_sectors(&y, &act, &budget()).unwrap();
        assert!(table.rows[0].representative.is_identity());
        // Y/G for the free rotation is a circle: chi = 0
        assert_eq!(table.rows[0].chi, 0);
        // free action: nonidentity rows have empty sectors
        for row in &table.rows[1..] {
            assert_eq!(row.chi, 0);
            assert_eq!(row.sector.n_cells(), 0);
        }
        let chi = chi_orb(&y, &act, &budget()).unwrap();
        assert_eq!(chi.by_sectors, 0);
    }

    #[test]
    fn free_action_divisibility() {
        let (y, act) = shapes::polygon_rotation(6);
        let chi = chi_orb(&y, &act, &budget()).unwrap();
        // chi_orb = chi(Y)/|G| for free actions
        assert_eq!(chi.by_sectors, y.euler_characteristic() / 6);
    }

    #[test]
    fn recovery_for_path_swap() {
        let y = shapes::path(2);
        let group = PermGroup::new(2, vec![Perm::from_cycles(2, &[vec![0, 1]]).unwrap()]).unwrap();
        let map = Perm::from_images(vec![2, 1, 0, 4, 3]).unwrap();
        let act = SimplicialAction { group, cell_maps: vec![map] };
        let (outcome, warn) = recover_group_check(&y, &act, &budget()).unwrap();
        assert_eq!(outcome, RecoveryOutcome::Verified { order: 2 });
        assert!(!warn);
    }

    #[test]
    fn recovery_trivial_action_on_simplex() {
        let y = shapes::simplex(2);
        let act = SimplicialAction::trivial(PermGroup::trivial(1), &y);
        let (outcome, warn) = recover_group_check(&y, &act, &budget()).unwrap();
        assert_eq!(outcome, RecoveryOutcome::Verified { order: 1 });
        assert!(!warn);
    }

    #[test]
    fn recovery_fails_on_circle() {
        // hexagon with the trivial group: pi1 = Z, enumeration overflows
        let y = shapes::polygon(6);
        let act = SimplicialAction::trivial(PermGroup::trivial(1), &y);
        let (outcome, warn) = recover_group_check(&y, &act, &Budget::new(500, 1000, 4)).unwrap();
        assert!(warn, "chi(circle) = 0 must raise the warning");
        assert!(matches!(
            outcome,
            RecoveryOutcome::Unknown { .. } | RecoveryOutcome::Failed { .. }
        ));
    }

    #[test]
    fn conjugation_invariance_of_sectors() {
        let (y, act) = shapes::polygon_reflection(6);
        let table = twisted_sectors(&y, &act, &budget()).unwrap();
        // relabel Y by a group element: same table up to row order; with
        // Z/2 the relabeling is by the reflection itself
        let signature: Vec<(usize, i64)> = table
            .rows
            .iter()
            .map(|r| (r.centralizer_order, r.chi))
            .collect();
        let table2 = twisted_sectors(&y, &act, &budget()).unwrap();
        let signature2: Vec<(usize, i64)> = table2
            .rows
            .iter()
            .map(|r| (r.centralizer_order, r.chi))
            .collect();
        assert_eq!(signature, signature2);
    }
}
