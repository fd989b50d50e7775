//! Worker configuration for the data-parallel searches.
//!
//! All heavy loops in this crate are grids (height scans, orbit enumeration,
//! per-fiber generation). With the `parallel` feature they run on rayon;
//! without it, or with the worker count pinned to 1, they take the sequential
//! path. Results are order-independent sets or order-preserving collects, so
//! both paths produce identical output.

use std::sync::atomic::{AtomicUsize, Ordering};

/// 0 means "let rayon decide" (all cores); 1 forces the sequential path.
static WORKERS: AtomicUsize = AtomicUsize::new(0);

/// Set the requested worker count. `0` restores the default (all cores).
pub fn set_workers(n: usize) {
    WORKERS.store(n, Ordering::Relaxed);
}

/// Currently requested worker count (0 = default).
pub fn workers() -> usize {
    WORKERS.load(Ordering::Relaxed)
}

/// True when the parallel path should be taken.
#[cfg(feature = "parallel")]
pub(crate) fn parallel_active() -> bool {
    workers() != 1
}

/// Size the global rayon pool. Call once, before any parallel work; later
/// calls are ignored by rayon and that is fine.
#[cfg(feature = "parallel")]
pub fn init_pool(n: usize) {
    set_workers(n);
    if n > 1 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

#[cfg(not(feature = "parallel"))]
pub fn init_pool(n: usize) {
    set_workers(n);
}
