//! Finitely presented groups: presentations, abelian invariants, Tietze
//! simplification, and presentations of concrete permutation groups.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::perm::{GroupClosure, Perm, PermGroup};
use super::snf::{smith_normal_form, IntMat};
use super::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationError {
    UnknownGenerator { word_index: usize },
    DuplicateGeneratorName(String),
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::UnknownGenerator { word_index } => {
                write!(f, "word {word_index} references an undeclared generator")
            }
            PresentationError::DuplicateGeneratorName(name) => {
                write!(f, "duplicate generator name {name}")
            }
        }
    }
}

impl core::error::Error for PresentationError {}

impl Presentation {
    /// Relators are stored cyclically reduced.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Presentation, PresentationError> {
        let mut seen = BTreeMap::new();
        for g in &generators {
            if seen.insert(g.clone(), ()).is_some() {
                return Err(PresentationError::DuplicateGeneratorName(g.clone()));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if r.support_bound() > generators.len() {
                return Err(PresentationError::UnknownGenerator { word_index: i });
            }
        }
        let relators = relators
            .into_iter()
            .map(|r| r.cyclically_reduced())
            .filter(|r| !r.is_empty())
            .collect();
        Ok(Presentation { generators, relators })
    }

    pub fn free(rank: usize) -> Presentation {
        let generators = (0..rank).map(|i| format!("x{}", i + 1)).collect();
        Presentation {
            generators,
            relators: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn check_word(&self, w: &Word) -> Result<(), PresentationError> {
        if w.support_bound() > self.generators.len() {
            return Err(PresentationError::UnknownGenerator { word_index: 0 });
        }
        Ok(())
    }

    /// The exponent matrix: one row per relator, one column per generator.
    pub fn relator_matrix(&self) -> IntMat {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| r.exponent_vector(self.generators.len()))
            .collect();
        if rows.is_empty() {
            IntMat::zero(0, self.generators.len())
        } else {
            IntMat::from_rows(&rows)
        }
    }

    /// Invariant factors and free rank of the abelianized group.
    pub fn abelianization(&self) -> AbelianInvariants {
        let m = self.relator_matrix();
        let s = smith_normal_form(&m);
        let torsion: Vec<u64> = s
            .invariants
            .iter()
            .filter(|d| **d > BigInt::one())
            .map(|d| d.to_u64().expect("desk-scale torsion"))
            .collect();
        AbelianInvariants {
            torsion,
            free_rank: self.generators.len() - s.rank(),
        }
    }

    /// Eliminates generators forced trivial (length-1 relators) or equal to
    /// another letter (length-2 relators), then drops unused generators.
    ///
    /// Returns the simplified presentation together with the image of each
    /// old generator as a word over the new ones, so that words over `self`
    /// can be transported.
    pub fn simplified(&self) -> (Presentation, Vec<Word>) {
        let n = self.generators.len();
        // image of old generator i as a word over the old generators
        let mut images: Vec<Word> = (0..n).map(Word::generator).collect();
        let mut relators: Vec<Word> = self.relators.clone();

        loop {
            let mut subst: Option<(usize, Word)> = None;
            for r in &relators {
                match r.letters() {
                    [l] => {
                        subst = Some(((l.unsigned_abs() - 1) as usize, Word::empty()));
                        break;
                    }
                    [l, m] => {
                        // l * m = 1, so the generator of l equals m^-1 (or pick the
                        // higher index to eliminate for determinism)
                        let (gi, gm) = ((l.unsigned_abs() - 1) as usize, (m.unsigned_abs() - 1) as usize);
                        if gi == gm {
                            continue; // x^2 or x x^-1; not a substitution
                        }
                        let (victim, replacement) = if gi > gm {
                            (gi, if *l > 0 { Word::from_letters([-*m]) } else { Word::from_letters([*m]) })
                        } else {
                            (gm, if *m > 0 { Word::from_letters([-*l]) } else { Word::from_letters([*l]) })
                        };
                        subst = Some((victim, replacement));
                        break;
                    }
                    _ => {}
                }
            }
            let Some((victim, replacement)) = subst else { break };
            let map: Vec<Word> = (0..n)
                .map(|i| if i == victim { replacement.clone() } else { Word::generator(i) })
                .collect();
            relators = relators
                .iter()
                .map(|r| r.substitute(&map).cyclically_reduced())
                .filter(|r| !r.is_empty())
                .collect();
            for img in images.iter_mut() {
                *img = img.substitute(&map);
            }
        }

        // drop unused generators and renumber
        let mut used = vec![false; n];
        for r in &relators {
            for &l in r.letters() {
                used[(l.unsigned_abs() - 1) as usize] = true;
            }
        }
        for img in &images {
            for &l in img.letters() {
                used[(l.unsigned_abs() - 1) as usize] = true;
            }
        }
        let mut renumber = vec![0usize; n];
        let mut new_gens = Vec::new();
        for i in 0..n {
            if used[i] {
                renumber[i] = new_gens.len();
                new_gens.push(self.generators[i].clone());
            }
        }
        let renum_word = |w: &Word| {
            Word::from_letters(w.letters().iter().map(|&l| {
                let idx = renumber[(l.unsigned_abs() - 1) as usize] as i32 + 1;
                if l > 0 { idx } else { -idx }
            }))
        };
        let relators: Vec<Word> = {
            let mut rs: Vec<Word> = relators.iter().map(renum_word).collect();
            rs.sort();
            rs.dedup();
            rs
        };
        let images = images.iter().map(renum_word).collect();
        (
            Presentation {
                generators: new_gens,
                relators,
            },
            images,
        )
    }

    /// Renders in the plain-text interchange format: a `generators` header,
    /// then one relator per line.
    pub fn to_text(&self) -> String {
        let mut s = String::from("generators");
        for g in &self.generators {
            s.push(' ');
            s.push_str(g);
        }
        s.push('\n');
        for r in &self.relators {
            s.push_str("relator");
            for &l in r.letters() {
                s.push(' ');
                let name = &self.generators[(l.unsigned_abs() - 1) as usize];
                if l > 0 {
                    s.push_str(name);
                } else {
                    s.push_str(&format!("{name}^-1"));
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Invariant factors `d1 | d2 | ...` (all >= 2) plus the free rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn trivial() -> AbelianInvariants {
        AbelianInvariants {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        for _ in 0..self.free_rank {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z")?;
            first = false;
        }
        for t in &self.torsion {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z/{t}")?;
            first = false;
        }
        Ok(())
    }
}

/// A presentation of a finite permutation group on its generating set,
/// built from a spanning tree of the Cayley graph of the regular action:
/// one relator per non-tree edge. The 2-complex these relators bound is the
/// Cayley complex, which is simply connected, so the presentation is full.
pub fn presentation_from_closure(name_prefix: &str, closure: &GroupClosure) -> Presentation {
    let gens = closure.generators();
    let names = (0..gens.len())
        .map(|i| format!("{name_prefix}{}", i + 1))
        .collect();
    let elements = closure.elements();
    let index_of: BTreeMap<&Perm, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let id_index = index_of[&Perm::identity(closure.degree())];

    // BFS spanning tree of the Cayley graph (vertices = elements, edge g -(s)-> g*s)
    let mut tree_word: Vec<Option<Word>> = vec![None; elements.len()];
    tree_word[id_index] = Some(Word::empty());
    let mut queue = vec![id_index];
    let mut head = 0;
    let mut relators = Vec::new();
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for (si, s) in gens.iter().enumerate() {
            let w = index_of[&elements[v].then(s)];
            if tree_word[w].is_none() {
                let mut word = tree_word[v].clone().unwrap();
                word.push((si + 1) as i32);
                tree_word[w] = Some(word);
                queue.push(w);
            }
        }
    }
    for v in 0..elements.len() {
        for (si, s) in gens.iter().enumerate() {
            let w = index_of[&elements[v].then(s)];
            // relator: word(v) * s * word(w)^-1
            let mut r = tree_word[v].clone().unwrap();
            r.push((si + 1) as i32);
            let r = r.concat(&tree_word[w].clone().unwrap().inverse());
            let r = r.cyclically_reduced();
            if !r.is_empty() {
                relators.push(r);
            }
        }
    }
    relators.sort();
    relators.dedup();
    Presentation {
        generators: names,
        relators,
    }
}

/// Checks that generator images in `target` extend to a homomorphism from
/// the closed group, and returns the image of every element if so.
///
/// The check is exhaustive: images are computed through factorization words
/// and verified multiplicative on all pairs.
pub fn extend_homomorphism(
    source: &GroupClosure,
    source_group: &PermGroup,
    images: &[Perm],
) -> Option<Vec<Perm>> {
    debug_assert_eq!(images.len(), source_group.generators().len());
    let target_degree = images.first().map_or(1, Perm::degree);
    let image_group = PermGroup::new(target_degree, images.to_vec()).ok()?;
    let mapped: Vec<Perm> = source
        .elements()
        .iter()
        .map(|e| image_group.eval_word(&source.element_word(e).expect("element of closure")))
        .collect();
    let n = source.elements().len();
    for i in 0..n {
        for j in 0..n {
            let prod = source.elements()[i].then(&source.elements()[j]);
            let pi = source.element_index(&prod).expect("closed");
            if mapped[i].then(&mapped[j]) != mapped[pi] {
                return None;
            }
        }
    }
    // sanity: generators map where they should
    for (g, img) in source_group.generators().iter().zip(images) {
        let gi = source.element_index(g).expect("generator in closure");
        if &mapped[gi] != img {
            return None;
        }
    }
    Some(mapped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::perm::PermGroup;

    fn pres(gens: &[&str], relators: &[&[i32]]) -> Presentation {
        Presentation::new(
            gens.iter().map(|s| String::from(*s)).collect(),
            relators.iter().map(|r| Word::from_letters(r.iter().copied())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn abelianization_cyclic_6() {
        let p = pres(&["a"], &[&[1, 1, 1, 1, 1, 1]]);
        let inv = p.abelianization();
        assert_eq!(inv.torsion, vec![6]);
        assert_eq!(inv.free_rank, 0);
    }

    #[test]
    fn abelianization_triangle_2_3_5_is_trivial() {
        // <l1,l2,l3 | l1^2, l2^3, l3^5, l1 l2 l3>
        let p = pres(
            &["l1", "l2", "l3"],
            &[&[1, 1], &[2, 2, 2], &[3, 3, 3, 3, 3], &[1, 2, 3]],
        );
        assert!(p.abelianization().is_trivial());
    }

    #[test]
    fn abelianization_free_rank_2() {
        let p = Presentation::free(2);
        let inv = p.abelianization();
        assert!(inv.torsion.is_empty());
        assert_eq!(inv.free_rank, 2);
    }

    #[test]
    fn simplify_eliminates_killed_and_paired_generators() {
        // a; b = c^-1; leaves one effective generator pair
        let p = pres(&["a", "b", "c"], &[&[1], &[2, 3], &[2, 2, 2, 2]]);
        let (s, images) = p.simplified();
        // a died, c got replaced by b^-1 (higher index eliminated)
        assert_eq!(s.generators(), &[String::from("b")]);
        assert_eq!(s.relators().len(), 1);
        assert_eq!(s.relators()[0].len(), 4);
        assert!(images[0].is_empty());
        // old words transported through images keep their abelianization
        assert_eq!(p.abelianization(), s.abelianization());
    }

    #[test]
    fn closure_presentation_of_s3() {
        let s3 = PermGroup::symmetric(3);
        let closure = s3.close(100).unwrap();
        let p = presentation_from_closure("s", &closure);
        assert_eq!(p.generators().len(), 2);
        // presents a group of order 6: verify through abelianization (Z/2)
        let inv = p.abelianization();
        assert_eq!(inv.torsion, vec![2]);
        assert_eq!(inv.free_rank, 0);
    }

    #[test]
    fn extend_homomorphism_checks_relations() {
        let c4 = PermGroup::cyclic(4);
        let closure = c4.close(10).unwrap();
        // valid: generator -> (1 2 3 4); invalid: -> (1 2) has order 2, not 4... wait
        // (1 2) has order 2 which divides 4? No: a homomorphism needs img^4 = 1,
        // and (1 2)^4 = 1, so that IS a homomorphism (non-faithful).
        let img_ok = Perm::from_cycles(2, &[vec![0, 1]]).unwrap();
        assert!(extend_homomorphism(&closure, &c4, &[img_ok]).is_some());
        // order 3 does not divide 4: not a homomorphism
        let img_bad = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert!(extend_homomorphism(&closure, &c4, &[img_bad]).is_none());
    }
}
