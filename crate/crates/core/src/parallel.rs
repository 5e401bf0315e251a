//! Thin switch between rayon-backed and sequential execution.
//!
//! All data-parallel inner loops in the crate go through these helpers.  With
//! the `parallel` feature (default) they dispatch to rayon unless
//! [`force_sequential`] was called; without the feature they are plain
//! sequential loops.  The runtime toggle exists so the benchmark suite can
//! compare both code paths in a single binary.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Globally disable (or re-enable) rayon dispatch at runtime.
pub fn force_sequential(on: bool) {
    FORCE_SEQUENTIAL.store(on, Ordering::Relaxed);
}

/// True when work should run on the rayon pool.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.load(Ordering::Relaxed)
}

/// Map a function over `0..n`, collecting results in index order.
pub fn map_indexed<T, F>(n: usize, min_len_for_parallel: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel_enabled() && n >= min_len_for_parallel {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    let _ = min_len_for_parallel;
    (0..n).map(f).collect()
}

/// Map a function over a slice, collecting results in order.
pub fn map_slice<'a, S, T, F>(items: &'a [S], min_len_for_parallel: usize, f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&'a S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel_enabled() && items.len() >= min_len_for_parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    let _ = min_len_for_parallel;
    items.iter().map(f).collect()
}

/// Run two closures, in parallel when enabled.
pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel_enabled() {
            return rayon::join(a, b);
        }
    }
    (a(), b())
}
