//! Execution strategy for the data-parallel loops (λ-enumeration,
//! convolutions, class enumeration).
//!
//! Every reduction lands in a `BTreeMap`, so the result never depends on
//! the strategy or the worker count.

use std::collections::BTreeMap;
use std::ops::AddAssign;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Sequential,
    /// Uses the current rayon pool; falls back to sequential without the
    /// `parallel` feature.
    #[default]
    Parallel,
}

/// Resource limits and execution strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Largest ambient size accepted by canonicalization.
    pub max_ambient: usize,
    /// Overrides the per-family guard of the brute-force oracle.
    pub oracle_max_n: Option<usize>,
    pub strategy: Strategy,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_ambient: 10, oracle_max_n: None, strategy: Strategy::Parallel }
    }
}

impl Config {
    pub fn sequential() -> Self {
        Config { strategy: Strategy::Sequential, ..Config::default() }
    }
}

pub(crate) fn merge_maps<K: Ord, V: AddAssign>(mut a: BTreeMap<K, V>, mut b: BTreeMap<K, V>) -> BTreeMap<K, V> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (k, v) in b {
        match a.get_mut(&k) {
            Some(slot) => *slot += v,
            None => {
                a.insert(k, v);
            }
        }
    }
    a
}

/// Folds every item into a keyed accumulator and merges the partial maps.
pub(crate) fn fold_keyed<T, K, V, F>(items: &[T], strategy: Strategy, f: F) -> Result<BTreeMap<K, V>>
where
    T: Sync,
    K: Ord + Send,
    V: AddAssign + Send,
    F: Fn(&T, &mut BTreeMap<K, V>) -> Result<()> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy == Strategy::Parallel {
        use rayon::prelude::*;
        return items
            .par_iter()
            .try_fold(BTreeMap::new, |mut acc, item| {
                f(item, &mut acc)?;
                Ok::<_, crate::error::Error>(acc)
            })
            .try_reduce(BTreeMap::new, |a, b| Ok(merge_maps(a, b)));
    }
    let _ = strategy;
    let mut acc = BTreeMap::new();
    for item in items {
        f(item, &mut acc)?;
    }
    Ok(acc)
}
