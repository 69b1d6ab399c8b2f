//! Data-parallel inner loops with a sequential fallback.
//!
//! With the `parallel` feature (default) these helpers fan work out over
//! rayon; without it they compile to plain iterator code. Callers are written
//! once against this module, so the two builds share every code path above
//! the loop level.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Entries a loop must touch before fanning out beats fork-join overhead.
/// Exact rational updates are a few hundred nanoseconds each, so small
/// boundary matrices stay sequential even in parallel builds.
pub(crate) const MIN_PARALLEL_WORK: usize = 1 << 15;

/// Map `0..n` through `f`, collecting results in index order.
#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Apply `f` to every `chunk_size`-sized row of `data`, with the row index.
#[cfg(feature = "parallel")]
pub(crate) fn for_each_chunk_mut<T, F>(data: &mut [T], chunk_size: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Send + Sync,
{
    data.par_chunks_exact_mut(chunk_size)
        .enumerate()
        .for_each(|(i, chunk)| f(i, chunk));
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn for_each_chunk_mut<T, F>(data: &mut [T], chunk_size: usize, f: F)
where
    F: Fn(usize, &mut [T]),
{
    data.chunks_exact_mut(chunk_size)
        .enumerate()
        .for_each(|(i, chunk)| f(i, chunk));
}
