//! Execution strategy for exhaustive loops.
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! thread pool; otherwise, or when [`Exec::Sequential`] is requested, loops
//! run on the calling thread. Every reduction in this crate is exact integer
//! or rational addition, so both strategies return identical results.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Folds `fold` over every index of `range` and merges partial results.
pub(crate) fn fold_range<T, I, F, R>(exec: Exec, range: Range<u64>, identity: I, fold: F, reduce: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range
            .into_par_iter()
            .fold(&identity, &fold)
            .reduce(&identity, &reduce);
    }
    let _ = (exec, &reduce);
    range.fold(identity(), fold)
}

/// Order-preserving map.
pub(crate) fn map_vec<A, B, F>(exec: Exec, items: &[A], f: F) -> Vec<B>
where
    A: Sync,
    B: Send,
    F: Fn(&A) -> B + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Sizes the global worker pool. Only the first call has an effect; later
/// calls return false.
pub fn init_threads(jobs: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        false
    }
}
