//! The computational group-theory kernel: permutation groups, finitely
//! presented groups, coset enumeration, Smith normal form, word verdicts,
//! homomorphism search and abelian exact-sequence checking.

pub mod abelian;
pub mod coset;
pub mod homsearch;
pub mod perm;
pub mod presentation;
pub mod snf;
pub mod verdict;
pub mod word;

pub use abelian::{check_abelian_exact, AbelianGroup, AbelianMap, ExactnessVerdict};
pub use coset::{todd_coxeter, CosetTable, Overflow};
pub use homsearch::{hom_search, HomSearchOutcome, Homomorphism};
pub use perm::{ConjugacyData, GroupClosure, Perm, PermGroup};
pub use presentation::{AbelianInvariants, Presentation};
pub use snf::{smith_normal_form, IntMat, SmithDecomposition};
pub use verdict::{word_verdict, WordVerdict};
pub use word::Word;
