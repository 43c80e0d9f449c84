//! Data-parallel dispatch with a sequential fallback.
//!
//! With the `parallel` feature disabled every helper runs sequentially and
//! `Parallelism::Parallel` is accepted but ignored. Results are always
//! collected in index order, so outputs do not depend on the mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parallelism {
    Sequential,
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

impl Parallelism {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// `(0..n).map(f).collect()`, fanned out over the rayon pool when
/// `mode` is parallel and `n >= threshold`.
pub(crate) fn map_range<T, F>(mode: Parallelism, n: usize, threshold: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() && n >= threshold {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = (mode, threshold);
    (0..n).map(f).collect()
}

/// Smallest `i < n` with `pred(i)`.
pub(crate) fn find_first<F>(mode: Parallelism, n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return (0..n).into_par_iter().find_first(|&i| pred(i));
    }
    let _ = mode;
    (0..n).find(|&i| pred(i))
}

/// Every `i < n` with `pred(i)`, ascending.
pub(crate) fn filter_range<F>(mode: Parallelism, n: usize, pred: F) -> Vec<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return (0..n).into_par_iter().filter(|&i| pred(i)).collect();
    }
    let _ = mode;
    (0..n).filter(|&i| pred(i)).collect()
}
