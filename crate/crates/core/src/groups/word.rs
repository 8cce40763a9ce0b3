//! Freely reduced words over an abstract generating set.
//!
//! A letter is a nonzero `i32`: `+k` is generator `k-1`, `-k` its inverse.

use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn empty() -> Word {
        Word { letters: Vec::new() }
    }

    /// Builds a word, freely reducing as it goes.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Word {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn generator(index: usize) -> Word {
        Word {
            letters: alloc::vec![(index + 1) as i32],
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends one letter with free cancellation.
    pub fn push(&mut self, letter: i32) {
        debug_assert!(letter != 0);
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut w = Word::empty();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Removes equal first and last letters pairs; relators are stored in
    /// this cyclically reduced form.
    pub fn cyclically_reduced(&self) -> Word {
        let mut letters = self.letters.clone();
        while letters.len() >= 2 && letters.first() == letters.last().map(|l| -l).as_ref() {
            letters.pop();
            letters.remove(0);
        }
        Word { letters }
    }

    /// Largest generator index mentioned, plus one; 0 for the empty word.
    pub fn support_bound(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Rewrites each letter through `images`, where `images[k]` is the word
    /// replacing generator `k`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::empty();
        for &l in &self.letters {
            let img = &images[(l.unsigned_abs() - 1) as usize];
            let img = if l > 0 { img.clone() } else { img.inverse() };
            out = out.concat(&img);
        }
        out
    }

    /// Net exponent of each of the first `n_gens` generators.
    pub fn exponent_vector(&self, n_gens: usize) -> Vec<i64> {
        let mut v = alloc::vec![0i64; n_gens];
        for &l in &self.letters {
            let idx = (l.unsigned_abs() - 1) as usize;
            v[idx] += if l > 0 { 1 } else { -1 };
        }
        v
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l > 0 {
                write!(f, "x{}", l)?;
            } else {
                write!(f, "x{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction_on_push() {
        let w = Word::from_letters([1, 2, -2, -1, 3]);
        assert_eq!(w.letters(), &[3]);
    }

    #[test]
    fn inverse_cancels() {
        let w = Word::from_letters([1, 2, -3]);
        assert!(w.concat(&w.inverse()).is_empty());
    }

    #[test]
    fn cyclic_reduction() {
        let w = Word::from_letters([1, 2, 3, -1]);
        // freely reduced already, but cyclically a conjugate of [2, 3]
        assert_eq!(w.cyclically_reduced().letters(), &[2, 3]);
    }

    #[test]
    fn substitution() {
        // x1 -> a b, x2 -> a^-1 over new generators a=1, b=2
        let images = [Word::from_letters([1, 2]), Word::from_letters([-1])];
        let w = Word::from_letters([1, 2]);
        assert_eq!(w.substitute(&images).letters(), &[1, 2, -1]);
    }
}
