//! Todd–Coxeter coset enumeration, HLT strategy with lookahead compaction.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::presentation::Presentation;
use super::word::Word;

const UNDEF: u32 = u32::MAX;

/// A closed, collapsed coset table for a subgroup `H` of a finitely
/// presented group: every relator traces to the starting coset everywhere,
/// and every subgroup word fixes coset 0. Cosets are numbered in
/// first-appearance order of a breadth-first scan from coset 0.
#[derive(Clone, Debug)]
pub struct CosetTable {
    n_gens: usize,
    n_cosets: usize,
    /// `rows[c][2*g]` is `c * g`, `rows[c][2*g+1]` is `c * g^-1`.
    rows: Vec<Vec<u32>>,
    subgroup_words: Vec<Word>,
}

/// Outcome of an enumeration that did not close within the coset cap.
/// Signals possibly-infinite index; never an error state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overflow {
    pub cap: usize,
}

impl CosetTable {
    pub fn n_cosets(&self) -> usize {
        self.n_cosets
    }

    pub fn n_generators(&self) -> usize {
        self.n_gens
    }

    pub fn subgroup_words(&self) -> &[Word] {
        &self.subgroup_words
    }

    /// Applies one letter (signed generator index) to a coset.
    pub fn step(&self, coset: usize, letter: i32) -> usize {
        let g = (letter.unsigned_abs() - 1) as usize;
        let col = if letter > 0 { 2 * g } else { 2 * g + 1 };
        self.rows[coset][col] as usize
    }

    /// Traces a word through the table (left to right).
    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.step(c, l))
    }

    /// The permutation action of generator `g` on cosets.
    pub fn generator_action(&self, g: usize) -> Vec<usize> {
        (0..self.n_cosets).map(|c| self.rows[c][2 * g] as usize).collect()
    }

    /// Cosets `Hx` with `x` normalizing `H`: those fixed by right
    /// multiplication with every subgroup generator. Their count is
    /// `[N(H) : H]`.
    pub fn normalizing_cosets(&self) -> Vec<usize> {
        (0..self.n_cosets)
            .filter(|&c| self.subgroup_words.iter().all(|w| self.trace(c, w) == c))
            .collect()
    }

    /// Orbits of the subgroup generated by `words` acting on cosets by right
    /// multiplication; each orbit sorted, orbits ordered by least element.
    /// For `words` generating the image of a local group these orbits are
    /// the double cosets `H \ G / D`.
    pub fn orbits_under(&self, words: &[Word]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n_cosets];
        let mut orbits = Vec::new();
        for start in 0..self.n_cosets {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let c = orbit[head];
                head += 1;
                for w in words {
                    for next in [self.trace(c, w), self.trace(c, &w.inverse())] {
                        if !seen[next] {
                            seen[next] = true;
                            orbit.push(next);
                        }
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Within the orbit of `from` under `words`, finds a word over `words`
    /// carrying `from` to `to` (breadth-first, deterministic). The result is
    /// a word over the original presentation's generators.
    pub fn transporter_word(&self, from: usize, to: usize, words: &[Word]) -> Option<Word> {
        let mut paths: BTreeMap<usize, Word> = BTreeMap::new();
        paths.insert(from, Word::empty());
        let mut queue = vec![from];
        let mut head = 0;
        while head < queue.len() {
            let c = queue[head];
            head += 1;
            if c == to {
                return paths.get(&to).cloned();
            }
            for w in words {
                for (next, step) in [(self.trace(c, w), w.clone()), (self.trace(c, &w.inverse()), w.inverse())] {
                    if !paths.contains_key(&next) {
                        paths.insert(next, paths[&c].concat(&step));
                        queue.push(next);
                    }
                }
            }
        }
        paths.get(&to).cloned()
    }

    /// A word over the presentation's generators reaching each coset from
    /// coset 0 (breadth-first over generators in declaration order, then
    /// their inverses): the Schreier transversal.
    pub fn coset_rep_words(&self) -> Vec<Word> {
        let mut words: Vec<Option<Word>> = vec![None; self.n_cosets];
        words[0] = Some(Word::empty());
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let c = queue[head];
            head += 1;
            for g in 0..self.n_gens {
                for letter in [(g + 1) as i32, -((g + 1) as i32)] {
                    let next = self.step(c, letter);
                    if words[next].is_none() {
                        let mut w = words[c].clone().unwrap();
                        w.push(letter);
                        words[next] = Some(w);
                        queue.push(next);
                    }
                }
            }
        }
        words.into_iter().map(|w| w.expect("table is connected")).collect()
    }

    /// A presentation of the subgroup by the Reidemeister–Schreier method:
    /// one generator per non-tree table entry, one relator per (coset,
    /// relator of `p`) pair, rewritten through the Schreier transversal.
    pub fn subgroup_presentation(&self, p: &Presentation) -> Presentation {
        assert_eq!(p.generators().len(), self.n_gens);
        let reps = self.coset_rep_words();
        // Schreier generator index per (coset, generator): UNDEF for tree edges
        let mut sgen: Vec<Vec<u32>> = vec![vec![UNDEF; self.n_gens]; self.n_cosets];
        let mut names = Vec::new();
        for c in 0..self.n_cosets {
            for g in 0..self.n_gens {
                let target = self.rows[c][2 * g] as usize;
                // tree edge iff rep(c) * g equals rep(target) as words
                let mut w = reps[c].clone();
                w.push((g + 1) as i32);
                if w == reps[target] {
                    continue;
                }
                sgen[c][g] = names.len() as u32;
                names.push(format!("h{}", names.len() + 1));
            }
        }
        // rewrite a word starting at a coset into Schreier generators
        let rewrite = |start: usize, w: &Word| -> Word {
            let mut out = Word::empty();
            let mut c = start;
            for &l in w.letters() {
                let g = (l.unsigned_abs() - 1) as usize;
                if l > 0 {
                    let idx = sgen[c][g];
                    if idx != UNDEF {
                        out.push(idx as i32 + 1);
                    }
                    c = self.rows[c][2 * g] as usize;
                } else {
                    let prev = self.rows[c][2 * g + 1] as usize;
                    let idx = sgen[prev][g];
                    if idx != UNDEF {
                        out.push(-(idx as i32 + 1));
                    }
                    c = prev;
                }
            }
            out
        };
        let mut relators = Vec::new();
        for c in 0..self.n_cosets {
            for r in p.relators() {
                let rw = rewrite(c, r).cyclically_reduced();
                if !rw.is_empty() {
                    relators.push(rw);
                }
            }
        }
        relators.sort();
        relators.dedup();
        Presentation::new(names, relators).expect("indices in range")
    }
}

struct Enumerator {
    n_gens: usize,
    rows: Vec<Vec<u32>>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
    /// Hard bound on cosets ever defined. Without it, an enumeration of an
    /// infinite-index subgroup can churn forever at the live-coset cap:
    /// lookahead frees a few cosets, definitions re-add them, repeat.
    total_cap: usize,
    queue: Vec<(u32, u32)>,
}

impl Enumerator {
    fn new(n_gens: usize, cap: usize) -> Enumerator {
        Enumerator {
            n_gens,
            rows: vec![vec![UNDEF; 2 * n_gens]],
            parent: vec![0],
            live: 1,
            cap,
            total_cap: cap.saturating_mul(2).saturating_add(64),
            queue: Vec::new(),
        }
    }

    fn find(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn col(letter: i32) -> usize {
        let g = (letter.unsigned_abs() - 1) as usize;
        if letter > 0 {
            2 * g
        } else {
            2 * g + 1
        }
    }

    fn inv_col(col: usize) -> usize {
        col ^ 1
    }

    fn get(&mut self, c: u32, col: usize) -> u32 {
        let v = self.rows[c as usize][col];
        if v == UNDEF {
            UNDEF
        } else {
            self.find(v)
        }
    }

    /// Sets `c * col = d` and the inverse entry, queueing a coincidence when
    /// an inconsistent entry already exists.
    fn set(&mut self, c: u32, col: usize, d: u32) {
        let existing = self.get(c, col);
        if existing != UNDEF {
            if existing != d {
                self.queue.push((existing, d));
            }
            return;
        }
        self.rows[c as usize][col] = d;
        let back = self.get(d, Self::inv_col(col));
        if back == UNDEF {
            self.rows[d as usize][Self::inv_col(col)] = c;
        } else if back != c {
            self.queue.push((back, c));
        }
    }

    fn new_coset(&mut self) -> Option<u32> {
        if self.live >= self.cap || self.rows.len() >= self.total_cap {
            return None;
        }
        let id = self.rows.len() as u32;
        self.rows.push(vec![UNDEF; 2 * self.n_gens]);
        self.parent.push(id);
        self.live += 1;
        Some(id)
    }

    /// Merges every queued coincidence (and the ones merging provokes).
    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.queue.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.parent[drop as usize] = keep;
            self.live -= 1;
            for col in 0..2 * self.n_gens {
                let v = self.rows[drop as usize][col];
                if v == UNDEF {
                    continue;
                }
                let v = self.find(v);
                // re-register drop's entry on keep
                let cur = self.get(keep, col);
                if cur == UNDEF {
                    self.rows[keep as usize][col] = v;
                    let back = self.get(v, Self::inv_col(col));
                    if back == UNDEF {
                        self.rows[v as usize][Self::inv_col(col)] = keep;
                    } else if back != keep {
                        self.queue.push((back, keep));
                    }
                } else if cur != v {
                    self.queue.push((cur, v));
                }
            }
        }
    }

    /// Scans `w` at coset `c`, defining cosets to fill any gap (HLT).
    /// Returns false when the coset cap blocks a definition.
    fn scan_and_fill(&mut self, c: u32, w: &Word) -> bool {
        let letters = w.letters();
        if letters.is_empty() {
            return true;
        }
        let mut f = self.find(c);
        let mut b = f;
        let mut i = 0usize;
        let mut r = letters.len(); // letters i..r remain
        loop {
            while i < r {
                let next = self.get(f, Self::col(letters[i]));
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == r {
                if f != b {
                    self.queue.push((f, b));
                    self.process_coincidences();
                }
                return true;
            }
            while r > i {
                let prev = self.get(b, Self::inv_col(Self::col(letters[r - 1])));
                if prev == UNDEF {
                    break;
                }
                b = prev;
                r -= 1;
            }
            if i == r {
                if f != b {
                    self.queue.push((f, b));
                    self.process_coincidences();
                }
                return true;
            }
            if i + 1 == r {
                // deduction closes the scan
                self.set(f, Self::col(letters[i]), b);
                self.process_coincidences();
                return true;
            }
            // gap of length >= 2: define a coset and keep scanning forward
            let Some(new) = self.new_coset() else { return false };
            self.set(f, Self::col(letters[i]), new);
            self.process_coincidences();
            f = self.find(f);
            b = self.find(b);
            // the definition may have merged cosets; re-resolve the step
            let next = self.get(f, Self::col(letters[i]));
            if next == UNDEF {
                // merged away; restart this scan from scratch
                let root = self.find(c);
                return self.scan_and_fill(root, w);
            }
            f = next;
            i += 1;
        }
    }

    /// A definition-free pass applying deductions and coincidences
    /// everywhere. Returns true if it freed at least one coset.
    fn lookahead(&mut self, relators: &[Word]) -> bool {
        let before = self.live;
        let n = self.rows.len() as u32;
        for c in 0..n {
            if self.find(c) != c {
                continue;
            }
            for w in relators {
                self.scan_no_fill(c, w);
            }
        }
        self.live < before
    }

    fn scan_no_fill(&mut self, c: u32, w: &Word) {
        let letters = w.letters();
        let mut f = self.find(c);
        if self.find(c) != c {
            return;
        }
        let mut b = f;
        let mut i = 0usize;
        let mut r = letters.len();
        while i < r {
            let next = self.get(f, Self::col(letters[i]));
            if next == UNDEF {
                break;
            }
            f = next;
            i += 1;
        }
        if i == r {
            if f != b {
                self.queue.push((f, b));
                self.process_coincidences();
            }
            return;
        }
        while r > i {
            let prev = self.get(b, Self::inv_col(Self::col(letters[r - 1])));
            if prev == UNDEF {
                break;
            }
            b = prev;
            r -= 1;
        }
        if i == r {
            if f != b {
                self.queue.push((f, b));
                self.process_coincidences();
            }
        } else if i + 1 == r {
            self.set(f, Self::col(letters[i]), b);
            self.process_coincidences();
        }
    }

    /// Renumbers live cosets in breadth-first first-appearance order and
    /// produces the final table.
    fn standardize(&mut self, subgroup_words: Vec<Word>) -> CosetTable {
        let mut order: Vec<u32> = Vec::with_capacity(self.live);
        let mut number: BTreeMap<u32, u32> = BTreeMap::new();
        let root = self.find(0);
        order.push(root);
        number.insert(root, 0);
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for g in 0..self.n_gens {
                for col in [2 * g, 2 * g + 1] {
                    let next = self.get(c, col);
                    debug_assert_ne!(next, UNDEF, "standardizing an incomplete table");
                    if !number.contains_key(&next) {
                        number.insert(next, order.len() as u32);
                        order.push(next);
                    }
                }
            }
        }
        debug_assert_eq!(order.len(), self.live);
        let mut rows = vec![vec![UNDEF; 2 * self.n_gens]; order.len()];
        for (new_c, &old_c) in order.iter().enumerate() {
            for col in 0..2 * self.n_gens {
                let t = self.get(old_c, col);
                rows[new_c][col] = number[&t];
            }
        }
        CosetTable {
            n_gens: self.n_gens,
            n_cosets: order.len(),
            rows,
            subgroup_words,
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup_words` in
/// the group presented by `p`. On success the coset count is the index of
/// the subgroup; the result does not depend on `cap` once it succeeds.
pub fn todd_coxeter(
    p: &Presentation,
    subgroup_words: &[Word],
    cap: usize,
) -> Result<CosetTable, Overflow> {
    let n_gens = p.generators().len();
    let mut e = Enumerator::new(n_gens, cap.max(1));
    let relators: Vec<Word> = p.relators().to_vec();

    for w in subgroup_words {
        loop {
            let root = e.find(0);
            if e.scan_and_fill(root, w) {
                break;
            }
            if !e.lookahead(&relators) {
                return Err(Overflow { cap });
            }
        }
    }

    let mut c: u32 = 0;
    'outer: while (c as usize) < e.rows.len() {
        if e.find(c) != c {
            c += 1;
            continue;
        }
        for w in &relators {
            loop {
                if e.scan_and_fill(c, w) {
                    break;
                }
                if !e.lookahead(&relators) {
                    return Err(Overflow { cap });
                }
            }
            if e.find(c) != c {
                c += 1;
                continue 'outer;
            }
        }
        // fill any remaining undefined entries so the table closes
        for col in 0..2 * n_gens {
            if e.find(c) != c {
                break;
            }
            if e.get(c, col) == UNDEF {
                let new = loop {
                    if let Some(n) = e.new_coset() {
                        break n;
                    }
                    if !e.lookahead(&relators) {
                        return Err(Overflow { cap });
                    }
                    if e.get(c, col) != UNDEF || e.find(c) != c {
                        break UNDEF;
                    }
                };
                if new != UNDEF {
                    let root = e.find(c);
                    e.set(root, col, new);
                    e.process_coincidences();
                }
            }
        }
        c += 1;
    }

    Ok(e.standardize(subgroup_words.to_vec()))
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

    fn check_table(t: &CosetTable, p: &Presentation) {
        // closed: every relator traces to the start at every coset
        for c in 0..t.n_cosets() {
            for r in p.relators() {
                assert_eq!(t.trace(c, r), c, "relator open at coset {c}");
            }
        }
        // subgroup words fix coset 0
        for w in t.subgroup_words() {
            assert_eq!(t.trace(0, w), 0);
        }
        // generator actions are permutations
        for g in 0..t.n_generators() {
            let mut act = t.generator_action(g);
            act.sort_unstable();
            assert_eq!(act, (0..t.n_cosets()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn cyclic_5() {
        let p = pres(&["a"], &[&[1, 1, 1, 1, 1]]);
        let t = todd_coxeter(&p, &[], 100).unwrap();
        assert_eq!(t.n_cosets(), 5);
        check_table(&t, &p);
    }

    #[test]
    fn two_three_three_has_order_12() {
        // <x,y | x^2, y^3, (xy)^3>, verified against the permutation model
        // x -> (1 2)(3 4), y -> (1 2 3) generating a group of order 12.
        let p = pres(&["x", "y"], &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2]]);
        let t = todd_coxeter(&p, &[], 1000).unwrap();
        assert_eq!(t.n_cosets(), 12);
        check_table(&t, &p);

        use crate::groups::perm::{Perm, PermGroup};
        let model = PermGroup::new(
            4,
            alloc::vec![
                Perm::from_cycles(4, &[alloc::vec![0, 1], alloc::vec![2, 3]]).unwrap(),
                Perm::from_cycles(4, &[alloc::vec![0, 1, 2]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(model.close(100).unwrap().order(), 12);
    }

    #[test]
    fn free_group_overflows() {
        let p = Presentation::free(2);
        let r = todd_coxeter(&p, &[], 1000);
        assert!(matches!(r, Err(Overflow { cap: 1000 })));
    }

    #[test]
    fn subgroup_index() {
        // Z = <a | >, H = <a^3>: index 3
        let p = pres(&["a"], &[]);
        let t = todd_coxeter(&p, &[Word::from_letters([1, 1, 1])], 100).unwrap();
        assert_eq!(t.n_cosets(), 3);
        check_table(&t, &p);
    }

    #[test]
    fn result_independent_of_cap() {
        let p = pres(&["x", "y"], &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2]]);
        let t1 = todd_coxeter(&p, &[], 13).unwrap();
        let t2 = todd_coxeter(&p, &[], 100_000).unwrap();
        assert_eq!(t1.n_cosets(), t2.n_cosets());
        assert_eq!(t1.rows, t2.rows);
    }

    #[test]
    fn normalizer_in_s3() {
        // S3 = <x,y | x^2, y^3, xyxy>: H = <y> (A3) is normal, index 2
        let p = pres(&["x", "y"], &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]);
        let t = todd_coxeter(&p, &[Word::from_letters([2])], 100).unwrap();
        assert_eq!(t.n_cosets(), 2);
        assert_eq!(t.normalizing_cosets().len(), 2);
        // H = <x> has index 3 and is self-normalizing
        let t2 = todd_coxeter(&p, &[Word::from_letters([1])], 100).unwrap();
        assert_eq!(t2.n_cosets(), 3);
        assert_eq!(t2.normalizing_cosets().len(), 1);
    }

    #[test]
    fn schreier_presentation_of_a3_in_s3() {
        let p = pres(&["x", "y"], &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]);
        let t = todd_coxeter(&p, &[Word::from_letters([2])], 100).unwrap();
        let h = t.subgroup_presentation(&p);
        let inv = h.abelianization();
        assert_eq!(inv.torsion, alloc::vec![3]);
        assert_eq!(inv.free_rank, 0);
    }

    #[test]
    fn trivial_group_collapses() {
        // <a | a^2, a^3> is trivial
        let p = pres(&["a"], &[&[1, 1], &[1, 1, 1]]);
        let t = todd_coxeter(&p, &[], 100).unwrap();
        assert_eq!(t.n_cosets(), 1);
    }
}
