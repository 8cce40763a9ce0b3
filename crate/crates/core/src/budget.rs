//! Caps and cooperative cancellation for potentially long-running searches.

use alloc::sync::Arc;
use core::sync::atomic::{AtomicBool, Ordering};

/// Resource limits shared by the enumeration and search kernels.
///
/// The cancellation flag is cooperative: searches poll [`Budget::cancelled`]
/// between units of work and bail out with an `Unknown`/`Overflow`-style
/// result. Results are identical no matter how the work is scheduled, as
/// long as the flag stays unset.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Maximum number of live cosets in a Todd–Coxeter enumeration.
    pub cap_cosets: usize,
    /// Maximum number of elements when closing a permutation group.
    pub cap_closure: usize,
    /// Largest permutation degree tried by the homomorphism search.
    pub hom_degree: usize,
    cancel: Arc<AtomicBool>,
}

impl Budget {
    pub const DEFAULT_CAP_COSETS: usize = 100_000;
    pub const DEFAULT_CAP_CLOSURE: usize = 1_000_000;
    pub const DEFAULT_HOM_DEGREE: usize = 8;

    pub fn new(cap_cosets: usize, cap_closure: usize, hom_degree: usize) -> Self {
        Budget {
            cap_cosets,
            cap_closure,
            hom_degree,
            cancel: Arc::new(AtomicBool::new(false)),
        }
    }

    /// Request that all searches holding a clone of this budget stop early.
    pub fn cancel(&self) {
        self.cancel.store(true, Ordering::SeqCst);
    }

    pub fn cancelled(&self) -> bool {
        self.cancel.load(Ordering::SeqCst)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(
            Self::DEFAULT_CAP_COSETS,
            Self::DEFAULT_CAP_CLOSURE,
            Self::DEFAULT_HOM_DEGREE,
        )
    }
}
