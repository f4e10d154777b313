//! Execution strategy for the independent pairwise tests (overlaps,
//! 3D intersections, local solid checks).
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! without it every call runs sequentially. Results always come back in
//! input order so output stays deterministic either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Exec {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
        }
    }

    /// Runs `f` on every unordered pair `(i, j)`, `i < j < n`, keeping the
    /// `Some` results in lexicographic pair order.
    pub fn filter_pairs<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize, usize) -> Option<R> + Sync + Send,
    {
        let row = |i: usize| -> Vec<R> { (i + 1..n).filter_map(|j| f(i, j)).collect() };
        let rows: Vec<Vec<R>> = match self {
            Exec::Sequential => (0..n).map(row).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(row).collect(),
        };
        rows.into_iter().flatten().collect()
    }
}
