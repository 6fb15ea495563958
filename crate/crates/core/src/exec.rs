//! Execution strategy for the grid sweeps.
//!
//! Every sweep in this crate is a pure map over an index range followed by an
//! ordered collect, so the result never depends on the strategy. With the
//! `parallel` feature disabled, [`Strategy::Parallel`] runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Maps `f` over `0..n`, preserving index order in the output.
pub(crate) fn map_range<T, F>(n: usize, strategy: Strategy, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}

/// Maps `f` over a slice, preserving order.
pub(crate) fn map_slice<S, T, F>(items: &[S], strategy: Strategy, f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}
