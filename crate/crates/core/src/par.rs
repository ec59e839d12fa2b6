//! Parallelism budget handed down from the caller.
//!
//! Library code never builds thread pools. `Par::Rayon` runs inside whatever
//! pool is current (the CLI installs one sized from its flags).

use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Par {
    Sequential,
    #[default]
    Rayon,
}

impl Par {
    /// Sum `f` over `lo..hi`. Integer results are order independent, so the
    /// parallel and sequential paths agree exactly.
    pub fn sum_range<T, F>(self, lo: i64, hi: i64, f: F) -> T
    where
        T: Send + Default + std::ops::Add<Output = T>,
        F: Fn(i64) -> T + Sync + Send,
    {
        match self {
            Par::Sequential => (lo..hi).map(f).fold(T::default(), |a, b| a + b),
            Par::Rayon => (lo..hi).into_par_iter().map(f).reduce(T::default, |a, b| a + b),
        }
    }

    /// Map `f` over `0..n` keeping the output in index order.
    pub fn map_indexed<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Par::Sequential => (0..n).map(f).collect(),
            Par::Rayon => (0..n).into_par_iter().map(f).collect(),
        }
    }
}
