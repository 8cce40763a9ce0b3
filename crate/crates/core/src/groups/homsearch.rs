//! Backtracking search for permutation representations of a finitely
//! presented group, with faithfulness constraints.

use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;

use super::perm::Perm;
use super::presentation::Presentation;
use super::word::Word;

/// A homomorphism from a presented group into a symmetric group, recorded by
/// the images of the presentation's generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub degree: usize,
    pub images: Vec<Perm>,
}

impl Homomorphism {
    pub fn eval(&self, w: &Word) -> Perm {
        let mut p = Perm::identity(self.degree);
        for &l in w.letters() {
            let img = &self.images[(l.unsigned_abs() - 1) as usize];
            p = if l > 0 { p.then(img) } else { p.then(&img.inverse()) };
        }
        p
    }

    /// Checks every relator of `p` maps to the identity.
    pub fn satisfies(&self, p: &Presentation) -> bool {
        self.images.len() == p.generators().len()
            && p.relators().iter().all(|r| self.eval(r).is_identity())
    }
}

/// A set of words whose images must be pairwise distinct (for a subgroup's
/// element list this is exactly faithfulness on the subgroup).
pub type FaithfulSet = Vec<Word>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomSearchOutcome {
    Found(Homomorphism),
    /// Search space exhausted up to the degree cap, or budget cancelled;
    /// not a disproof.
    NotFound,
}

/// All permutations of degree `n` in lexicographic order of image lists.
fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut images: Vec<u32> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, images: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if images.len() == n {
            out.push(Perm::from_images(images.clone()).expect("permutation by construction"));
            return;
        }
        for p in 0..n {
            if !used[p] {
                used[p] = true;
                images.push(p as u32);
                rec(n, images, used, out);
                images.pop();
                used[p] = false;
            }
        }
    }
    rec(n, &mut images, &mut used, &mut out);
    out
}

/// For each generator, the gcd of the exponents of its pure power relators
/// (`g^k`); the image's order must divide it. Zero means unconstrained.
fn power_exponents(p: &Presentation) -> Vec<u64> {
    let mut exps = vec![0u64; p.generators().len()];
    for r in p.relators() {
        let letters = r.letters();
        if letters.is_empty() {
            continue;
        }
        let g = letters[0].unsigned_abs();
        if letters.iter().all(|&l| l.unsigned_abs() == g) {
            let e = letters.iter().map(|&l| i64::from(l.signum())).sum::<i64>().unsigned_abs();
            if e > 0 {
                let idx = (g - 1) as usize;
                exps[idx] = gcd_u64(exps[idx], e);
            }
        }
    }
    exps
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if a == 0 {
        b
    } else {
        gcd_u64(b % a, a)
    }
}

struct Searcher<'a> {
    p: &'a Presentation,
    constraints: &'a [FaithfulSet],
    budget: &'a Budget,
    degree: usize,
    candidates: Vec<Vec<Perm>>,
    nodes: u64,
}

impl<'a> Searcher<'a> {
    fn eval_partial(&self, images: &[Option<Perm>], w: &Word) -> Option<Perm> {
        let mut p = Perm::identity(self.degree);
        for &l in w.letters() {
            let img = images[(l.unsigned_abs() - 1) as usize].as_ref()?;
            p = if l > 0 { p.then(img) } else { p.then(&img.inverse()) };
        }
        Some(p)
    }

    /// If a relator touches only assigned generators except for exactly one
    /// occurrence of generator `g`, the image of `g` is forced; solve it.
    fn forced_image(&self, images: &[Option<Perm>], g: usize) -> Option<Perm> {
        'relators: for r in self.p.relators() {
            let mut occurrence = None;
            for (pos, &l) in r.letters().iter().enumerate() {
                let idx = (l.unsigned_abs() - 1) as usize;
                if idx == g {
                    if occurrence.is_some() {
                        continue 'relators; // g occurs twice here
                    }
                    occurrence = Some((pos, l > 0));
                } else if images[idx].is_none() {
                    continue 'relators;
                }
            }
            let Some((pos, positive)) = occurrence else { continue };
            let prefix = Word::from_letters(r.letters()[..pos].iter().copied());
            let suffix = Word::from_letters(r.letters()[pos + 1..].iter().copied());
            let a = self.eval_partial(images, &prefix).expect("assigned");
            let b = self.eval_partial(images, &suffix).expect("assigned");
            // a * x^(+-1) * b = 1
            let x = a.inverse().then(&b.inverse());
            let x = if positive { x } else { x.inverse() };
            return Some(x);
        }
        None
    }

    fn relators_ok(&self, images: &[Option<Perm>], just_assigned: usize) -> bool {
        for r in self.p.relators() {
            let mentions = r.letters().iter().any(|&l| (l.unsigned_abs() - 1) as usize == just_assigned);
            if !mentions {
                continue;
            }
            if let Some(img) = self.eval_partial(images, r) {
                if !img.is_identity() {
                    return false;
                }
            }
        }
        true
    }

    fn constraints_ok(&self, hom: &Homomorphism) -> bool {
        self.constraints.iter().all(|set| {
            let imgs: Vec<Perm> = set.iter().map(|w| hom.eval(w)).collect();
            for i in 0..imgs.len() {
                for j in i + 1..imgs.len() {
                    if imgs[i] == imgs[j] {
                        return false;
                    }
                }
            }
            true
        })
    }

    fn search(&mut self, images: &mut Vec<Option<Perm>>, next: usize) -> Option<Homomorphism> {
        self.nodes += 1;
        if self.nodes % 4096 == 0 && self.budget.cancelled() {
            return None;
        }
        if next == images.len() {
            let hom = Homomorphism {
                degree: self.degree,
                images: images.iter().map(|i| i.clone().unwrap()).collect(),
            };
            if hom.satisfies(self.p) && self.constraints_ok(&hom) {
                return Some(hom);
            }
            return None;
        }
        if let Some(forced) = self.forced_image(images, next) {
            images[next] = Some(forced);
            if self.relators_ok(images, next) {
                if let Some(found) = self.search(images, next + 1) {
                    return Some(found);
                }
            }
            images[next] = None;
            return None;
        }
        // candidate list was precomputed per generator
        for ci in 0..self.candidates[next].len() {
            images[next] = Some(self.candidates[next][ci].clone());
            if self.relators_ok(images, next) {
                if let Some(found) = self.search(images, next + 1) {
                    return Some(found);
                }
            }
            images[next] = None;
            if self.budget.cancelled() {
                return None;
            }
        }
        None
    }
}

/// Searches for a homomorphism into a symmetric group of degree at most
/// `budget.hom_degree` whose restriction to each constraint set is
/// injective. Degrees are tried in increasing order; within a degree the
/// backtracking assigns generator images in declaration order over
/// permutations in lexicographic order, so the outcome is deterministic.
pub fn hom_search(
    p: &Presentation,
    constraints: &[FaithfulSet],
    budget: &Budget,
) -> HomSearchOutcome {
    // Work on a Tietze-simplified copy; constraint words are transported.
    let (sp, images) = p.simplified();
    let constraints: Vec<FaithfulSet> = constraints
        .iter()
        .map(|set| set.iter().map(|w| w.substitute(&images)).collect())
        .collect();

    for degree in 1..=budget.hom_degree {
        if budget.cancelled() {
            return HomSearchOutcome::NotFound;
        }
        let perms = all_perms(degree);
        let exps = power_exponents(&sp);
        let candidates: Vec<Vec<Perm>> = exps
            .iter()
            .map(|&e| {
                perms
                    .iter()
                    .filter(|q| e == 0 || e % q.order() as u64 == 0)
                    .cloned()
                    .collect()
            })
            .collect();
        let mut searcher = Searcher {
            p: &sp,
            constraints: &constraints,
            budget,
            degree,
            candidates,
            nodes: 0,
        };
        let mut slots = vec![None; sp.generators().len()];
        if let Some(hom) = searcher.search(&mut slots, 0) {
            // express the result on the original generators
            let full = Homomorphism {
                degree,
                images: images.iter().map(|w| hom.eval(w)).collect(),
            };
            debug_assert!(full.satisfies(p));
            return HomSearchOutcome::Found(full);
        }
    }
    HomSearchOutcome::NotFound
}

/// Counts all homomorphisms into the symmetric group of the given degree.
/// Exact: the forced-image shortcut prunes only impossible branches.
pub fn count_homs(p: &Presentation, degree: usize, budget: &Budget) -> u64 {
    let (sp, _) = p.simplified();
    let perms = all_perms(degree);
    let exps = power_exponents(&sp);
    let candidates: Vec<Vec<Perm>> = exps
        .iter()
        .map(|&e| {
            perms
                .iter()
                .filter(|q| e == 0 || e % q.order() as u64 == 0)
                .cloned()
                .collect()
        })
        .collect();

    struct Counter<'a> {
        p: &'a Presentation,
        degree: usize,
        candidates: Vec<Vec<Perm>>,
        budget: &'a Budget,
        count: u64,
    }
    impl<'a> Counter<'a> {
        fn eval_partial(&self, images: &[Option<Perm>], w: &Word) -> Option<Perm> {
            let mut p = Perm::identity(self.degree);
            for &l in w.letters() {
                let img = images[(l.unsigned_abs() - 1) as usize].as_ref()?;
                p = if l > 0 { p.then(img) } else { p.then(&img.inverse()) };
            }
            Some(p)
        }
        fn rec(&mut self, images: &mut Vec<Option<Perm>>, next: usize) {
            if self.budget.cancelled() {
                return;
            }
            if next == images.len() {
                let ok = self.p.relators().iter().all(|r| {
                    self.eval_partial(images, r)
                        .map(|p| p.is_identity())
                        .unwrap_or(false)
                });
                if ok {
                    self.count += 1;
                }
                return;
            }
            for ci in 0..self.candidates[next].len() {
                images[next] = Some(self.candidates[next][ci].clone());
                let ok = self.p.relators().iter().all(|r| {
                    match self.eval_partial(images, r) {
                        Some(p) => p.is_identity(),
                        None => true,
                    }
                });
                if ok {
                    self.rec(images, next + 1);
                }
                images[next] = None;
            }
        }
    }
    let mut counter = Counter {
        p: &sp,
        degree,
        candidates,
        budget,
        count: 0,
    };
    let mut slots = vec![None; sp.generators().len()];
    counter.rec(&mut slots, 0);
    counter.count
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn pres(gens: &[&str], relators: &[&[i32]]) -> Presentation {
        Presentation::new(
            gens.iter().map(|s| s.to_string()).collect(),
            relators.iter().map(|r| Word::from_letters(r.iter().copied())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn z2_faithful_at_degree_2() {
        let p = pres(&["a"], &[&[1, 1]]);
        let constraints = vec![vec![Word::empty(), Word::from_letters([1])]];
        let budget = Budget::default();
        match hom_search(&p, &constraints, &budget) {
            HomSearchOutcome::Found(h) => {
                assert_eq!(h.degree, 2);
                assert_eq!(h.eval(&Word::from_letters([1])).cycle_string(), "(1 2)");
            }
            HomSearchOutcome::NotFound => panic!("expected a hom"),
        }
    }

    #[test]
    fn trivial_generator_never_faithful() {
        // <a | a> is the trivial group
        let p = pres(&["a"], &[&[1]]);
        let constraints = vec![vec![Word::empty(), Word::from_letters([1])]];
        let budget = Budget::new(100, 100, 5);
        assert_eq!(hom_search(&p, &constraints, &budget), HomSearchOutcome::NotFound);
    }

    #[test]
    fn triangle_2_3_5_certificate_at_degree_5() {
        let p = pres(
            &["l1", "l2", "l3"],
            &[&[1, 1], &[2, 2, 2], &[3, 3, 3, 3, 3], &[1, 2, 3]],
        );
        let mk = |g: i32, n: u32| -> FaithfulSet {
            (0..n).map(|k| Word::from_letters(vec![g; k as usize])).collect()
        };
        let constraints = vec![mk(1, 2), mk(2, 3), mk(3, 5)];
        let budget = Budget::default();
        match hom_search(&p, &constraints, &budget) {
            HomSearchOutcome::Found(h) => {
                assert_eq!(h.degree, 5);
                assert_eq!(h.eval(&Word::from_letters([1])).order(), 2);
                assert_eq!(h.eval(&Word::from_letters([2])).order(), 3);
                assert_eq!(h.eval(&Word::from_letters([3])).order(), 5);
                // the image group has order (at least) 60; check exactly
                let img = crate::groups::perm::PermGroup::new(5, h.images.clone()).unwrap();
                assert_eq!(img.close(1000).unwrap().order(), 60);
            }
            HomSearchOutcome::NotFound => panic!("expected a degree-5 certificate"),
        }
    }

    #[test]
    fn hom_counts_free_and_cyclic() {
        let budget = Budget::default();
        // free of rank 1: |Hom(Z, S3)| = 6
        assert_eq!(count_homs(&Presentation::free(1), 3, &budget), 6);
        // Z/2: elements of order dividing 2 in S3: 1 + 3 = 4
        let p = pres(&["a"], &[&[1, 1]]);
        assert_eq!(count_homs(&p, 3, &budget), 4);
    }
}
