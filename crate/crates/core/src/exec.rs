//! Execution strategy for the data-parallel loops (per-sink components,
//! obstruction trials, support searches, batch analysis).
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! without it every strategy runs sequentially. Results are always
//! returned in input order, so output never depends on the strategy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Returns the first index in `0..n` (in index order) for which `pred`
    /// holds. The parallel strategy evaluates eagerly but resolves ties
    /// to the smallest index.
    pub fn find_first<F>(self, n: usize, pred: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().find_first(|&i| pred(i)),
            _ => (0..n).find(|&i| pred(i)),
        }
    }
}
