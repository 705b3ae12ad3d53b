//! Data-parallel map over independent work items.
//!
//! Probe verifications, momentum grids, and parameter sweeps are all
//! embarrassingly parallel: each item is evolved or evaluated on its own.
//! With the default `parallel` feature the work is distributed via rayon;
//! without it the same call runs sequentially, which keeps the crate
//! dependency-free for small embeddings and gives benches a baseline.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every item, in parallel when the `parallel` feature is
/// enabled. Output order matches input order either way.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential reference implementation of [`map`], available regardless of
/// features so benchmarks can compare the two paths directly.
pub fn map_sequential<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
