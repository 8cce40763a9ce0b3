//! Permutations of `{0, .., degree-1}` and finite permutation groups.
//!
//! Words evaluate left to right: `w = [g, h]` first applies `g`, then `h`.
//! This matches the path-traversal order used everywhere else in the crate
//! (coset tables, edge words in fundamental-group presentations).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::word::Word;

/// A permutation in one-line notation; `images[i]` is the image of point `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            let i = img as usize;
            if i >= n || seen[i] {
                return Err(PermError::NotBijective);
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles of
    /// 0-based points. Repeated points are rejected.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Perm, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let p = p as usize;
                if p >= degree || touched[p] {
                    return Err(PermError::NotBijective);
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as u32;
        }
        Perm { images }
    }

    pub fn conjugate_by(&self, h: &Perm) -> Perm {
        // h^-1 * self * h in left-to-right order: first h^-1, then self, then h.
        h.inverse().then(self).then(h)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut n = 1;
        while !p.is_identity() {
            p = p.then(self);
            n += 1;
        }
        n
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Disjoint cycle decomposition, fixed points omitted, 0-based.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start as u32 {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Renders in 1-based disjoint-cycle notation, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return String::from("()");
        }
        let mut s = String::new();
        for cycle in cycles {
            s.push('(');
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    s.push(' ');
                }
                s.push_str(&alloc::format!("{}", p + 1));
            }
            s.push(')');
        }
        s
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermError {
    NotBijective,
    DegreeMismatch,
    ClosureCapExceeded { cap: usize },
    NotAnElement,
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotBijective => write!(f, "image list is not a bijection"),
            PermError::DegreeMismatch => write!(f, "permutation degrees differ"),
            PermError::ClosureCapExceeded { cap } => {
                write!(f, "group closure exceeds the cap of {cap} elements")
            }
            PermError::NotAnElement => write!(f, "permutation is not an element of the group"),
        }
    }
}

impl core::error::Error for PermError {}

/// A finite permutation group given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup, PermError> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch);
        }
        Ok(PermGroup { degree, generators })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            generators: Vec::new(),
        }
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let degree = n.max(1);
        let cycle: Vec<u32> = (0..degree as u32).collect();
        let gen = if n <= 1 {
            Vec::new()
        } else {
            vec![Perm::from_cycles(degree, &[cycle]).expect("valid cycle")]
        };
        PermGroup {
            degree,
            generators: gen,
        }
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let degree = n.max(1);
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(degree, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            let cycle: Vec<u32> = (0..degree as u32).collect();
            gens.push(Perm::from_cycles(degree, &[cycle]).unwrap());
        }
        PermGroup {
            degree,
            generators: gens,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    /// Evaluates a word over this group's generators, left to right.
    pub fn eval_word(&self, word: &Word) -> Perm {
        let mut p = Perm::identity(self.degree);
        for &letter in word.letters() {
            let idx = (letter.unsigned_abs() - 1) as usize;
            let gen = &self.generators[idx];
            p = if letter > 0 { p.then(gen) } else { p.then(&gen.inverse()) };
        }
        p
    }

    /// Closes the group under composition.
    ///
    /// Elements come back sorted lexicographically on their image lists, and
    /// each element carries a word in the generators found by breadth-first
    /// search from the identity (first-found, hence deterministic).
    pub fn close(&self, cap: usize) -> Result<GroupClosure, PermError> {
        let id = Perm::identity(self.degree);
        let mut index: BTreeMap<Perm, Word> = BTreeMap::new();
        index.insert(id.clone(), Word::empty());
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for (gi, g) in self.generators.iter().enumerate() {
                    let q = p.then(g);
                    if !index.contains_key(&q) {
                        if index.len() >= cap {
                            return Err(PermError::ClosureCapExceeded { cap });
                        }
                        let mut w = index[p].clone();
                        w.push((gi + 1) as i32);
                        index.insert(q.clone(), w);
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
        let elements: Vec<Perm> = index.keys().cloned().collect();
        let words = elements.iter().map(|e| index[e].clone()).collect();
        Ok(GroupClosure {
            degree: self.degree,
            generators: self.generators.clone(),
            elements,
            words,
        })
    }
}

/// The fully enumerated element list of a [`PermGroup`].
#[derive(Clone, Debug)]
pub struct GroupClosure {
    degree: usize,
    generators: Vec<Perm>,
    /// Sorted lexicographically on image lists; index 0 need not be the identity.
    elements: Vec<Perm>,
    /// `words[i]` expresses `elements[i]` in the generators.
    words: Vec<Word>,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn element_index(&self, p: &Perm) -> Result<usize, PermError> {
        self.elements.binary_search(p).map_err(|_| PermError::NotAnElement)
    }

    /// A word in the group's generators evaluating to `p`.
    pub fn element_word(&self, p: &Perm) -> Result<Word, PermError> {
        Ok(self.words[self.element_index(p)?].clone())
    }

    /// Conjugacy classes (each sorted, classes ordered by least member) and
    /// the centralizer of the least representative of each class.
    pub fn conjugacy_data(&self) -> ConjugacyData {
        let mut remaining: BTreeSet<Perm> = self.elements.iter().cloned().collect();
        let mut classes = Vec::new();
        let mut centralizers = Vec::new();
        while let Some(rep) = remaining.iter().next().cloned() {
            let mut class: BTreeSet<Perm> = BTreeSet::new();
            for h in &self.elements {
                class.insert(rep.conjugate_by(h));
            }
            for c in &class {
                remaining.remove(c);
            }
            let cent: Vec<Perm> = self
                .elements
                .iter()
                .filter(|h| h.then(&rep) == rep.then(h))
                .cloned()
                .collect();
            let centralizer = PermGroup::new(self.degree, cent).expect("same degree");
            classes.push(class.into_iter().collect::<Vec<_>>());
            centralizers.push(centralizer);
        }
        ConjugacyData {
            classes,
            centralizers,
        }
    }

    /// A short generating set for the subgroup formed by `members`,
    /// greedily extending by the least element that enlarges the closure.
    /// `members` must be closed under the group operation.
    pub fn subgroup_generators(&self, members: &BTreeSet<Perm>) -> Vec<Perm> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut have: BTreeSet<Perm> = BTreeSet::new();
        have.insert(Perm::identity(self.degree));
        for m in members {
            if !have.contains(m) {
                gens.push(m.clone());
                // re-close
                let g = PermGroup::new(self.degree, gens.clone()).expect("degree");
                let closure = g.close(members.len() + 1).expect("subset of a finite group");
                have = closure.elements.into_iter().collect();
            }
        }
        gens
    }
}

/// Conjugacy classes with centralizers of class representatives.
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    /// Each class sorted; classes ordered by their least element, so the
    /// identity class comes first.
    pub classes: Vec<Vec<Perm>>,
    /// `centralizers[i]` lists all elements commuting with `classes[i][0]`.
    pub centralizers: Vec<PermGroup>,
}
