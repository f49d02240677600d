//! Data-parallel execution of independent work items.
//!
//! Everything the crate parallelizes is an index sweep: replicate streams,
//! grid evaluations, Chebyshev node fits. `map_indexed` runs the sweep on
//! the rayon pool when the `parallel` feature is enabled and falls back to
//! a plain sequential loop otherwise. `map_indexed_sequential` is always
//! sequential; the bench suite uses it as the comparison baseline.
//!
//! Results are returned in index order, so output is identical whichever
//! path runs.

#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_indexed_sequential(n, f)
}

pub fn map_indexed_sequential<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
