//! Partial bijections `J_k ⇀ J_n`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A bijection between a subset of `J_source` and a subset of `J_target`.
///
/// Pairs are 0-based and kept sorted by their first coordinate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialBijection {
    source: usize,
    target: usize,
    pairs: Vec<(u32, u32)>,
}

impl PartialBijection {
    pub fn new(source: usize, target: usize, mut pairs: Vec<(u32, u32)>) -> Result<Self> {
        pairs.sort_unstable();
        let mut seen_y = vec![false; target];
        for (i, &(x, y)) in pairs.iter().enumerate() {
            if x as usize >= source || y as usize >= target {
                return Err(Error::Range { entry: x.max(y) as usize + 1, degree: source.max(target) });
            }
            if i > 0 && pairs[i - 1].0 == x {
                return Err(Error::DuplicateEntry((x + 1).to_string()));
            }
            if std::mem::replace(&mut seen_y[y as usize], true) {
                return Err(Error::DuplicateEntry((y + 1).to_string()));
            }
        }
        Ok(PartialBijection { source, target, pairs })
    }

    pub fn empty(source: usize, target: usize) -> Self {
        PartialBijection { source, target, pairs: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        PartialBijection { source: n, target: n, pairs: (0..n as u32).map(|i| (i, i)).collect() }
    }

    /// A total injection `J_len → J_target` given as an image list.
    pub fn from_injection(images: &[u32], target: usize) -> Result<Self> {
        PartialBijection::new(images.len(), target, images.iter().enumerate().map(|(i, &y)| (i as u32, y)).collect())
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    pub fn domain(&self) -> impl Iterator<Item = u32> + '_ {
        self.pairs.iter().map(|p| p.0)
    }

    pub fn image(&self) -> impl Iterator<Item = u32> + '_ {
        self.pairs.iter().map(|p| p.1)
    }

    pub fn get(&self, x: u32) -> Option<u32> {
        self.pairs.binary_search_by_key(&x, |p| p.0).ok().map(|i| self.pairs[i].1)
    }

    /// `(self·mu)(w) = self(mu(w))`, defined where both steps are.
    pub fn product(&self, mu: &PartialBijection) -> Result<PartialBijection> {
        if self.source != mu.target {
            return Err(Error::SizeMismatch(format!(
                "left factor starts at J_{}, right factor ends at J_{}",
                self.source, mu.target
            )));
        }
        let pairs = mu.pairs.iter().filter_map(|&(w, y)| self.get(y).map(|z| (w, z))).collect();
        Ok(PartialBijection { source: mu.source, target: self.target, pairs })
    }

    pub fn inverse(&self) -> PartialBijection {
        let mut pairs: Vec<(u32, u32)> = self.pairs.iter().map(|&(x, y)| (y, x)).collect();
        pairs.sort_unstable();
        PartialBijection { source: self.target, target: self.source, pairs }
    }
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J{}->J{}{{", self.source, self.target)?;
        for (i, (x, y)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", x + 1, y + 1)?;
        }
        f.write_str("}")
    }
}

/// All partial bijections `J_k → J_n`, rank-major and then lexicographic
/// on the sorted pair list.
pub fn pb_enumerate(k: usize, n: usize) -> Vec<PartialBijection> {
    let mut out = Vec::with_capacity(pb_count(k, n) as usize);
    for d in 0..=k.min(n) {
        let mut this_rank = Vec::new();
        for dom in (0..k as u32).combinations(d) {
            for img in (0..n as u32).permutations(d) {
                let pairs = dom.iter().copied().zip(img).collect();
                this_rank.push(PartialBijection { source: k, target: n, pairs });
            }
        }
        this_rank.sort_unstable();
        out.extend(this_rank);
    }
    out
}

/// `Σ_d C(k,d)·C(n,d)·d!`.
pub fn pb_count(k: usize, n: usize) -> u128 {
    (0..=k.min(n) as u128).map(|d| binomial(k as u128, d) * binomial(n as u128, d) * factorial(d)).sum()
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub(crate) fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

/// The rank-`n` map `J_n → J_{n+k}`, `j ↦ j + k`.
pub fn theta(n: usize, k: usize) -> PartialBijection {
    PartialBijection {
        source: n,
        target: n + k,
        pairs: (0..n as u32).map(|j| (j, j + k as u32)).collect(),
    }
}
