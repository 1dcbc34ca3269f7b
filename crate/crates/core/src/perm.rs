//! Permutations of the segment `J_s = {1, ..., s}`.
//!
//! Points are stored 0-based; cycle notation and every textual form are
//! 1-based. Products follow `(a·b)(x) = a(b(x))` throughout the crate.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from its 0-based image list.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        check_bijection(&images)?;
        Ok(Permutation { images })
    }

    /// Parses cycle notation (`e`, or `(1 2 3)(4 5)`) over `J_degree`.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in parse_cycle_tokens(text)? {
            let mut points = Vec::with_capacity(cycle.len());
            for tok in &cycle {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("expected a positive integer, got `{tok}`")))?;
                if v == 0 {
                    return Err(Error::Parse("columns are numbered from 1".into()));
                }
                if v > degree {
                    return Err(Error::Range { entry: v, degree });
                }
                if seen[v - 1] {
                    return Err(Error::DuplicateEntry(tok.clone()));
                }
                seen[v - 1] = true;
                points.push(v as u32 - 1);
            }
            for (i, &p) in points.iter().enumerate() {
                images[p as usize] = points[(i + 1) % points.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    /// `(self·other)(x) = self(other(x))`.
    pub fn product(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    /// Cycles of length at least two, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start];
            while x as usize != start {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let nontrivial = self.cycles().len();
        self.degree() - moved + nontrivial
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("e");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub(crate) fn check_bijection(images: &[u32]) -> Result<()> {
    let mut seen = vec![false; images.len()];
    for &y in images {
        let y = y as usize;
        if y >= images.len() {
            return Err(Error::Range { entry: y + 1, degree: images.len() });
        }
        if seen[y] {
            return Err(Error::DuplicateEntry((y + 1).to_string()));
        }
        seen[y] = true;
    }
    Ok(())
}

/// Splits cycle notation into raw tokens, one `Vec` per cycle.
///
/// `e` (possibly surrounded by whitespace) yields no cycles.
pub(crate) fn parse_cycle_tokens(text: &str) -> Result<Vec<Vec<String>>> {
    let text = text.trim();
    if text == "e" {
        return Ok(Vec::new());
    }
    if text.is_empty() {
        return Err(Error::Parse("empty cycle notation".into()));
    }
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected `(` in `{text}`")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(Error::Parse(format!("nested cycle in `{text}`")));
        }
        let tokens: Vec<String> = inner.split_whitespace().map(str::to_owned).collect();
        if tokens.is_empty() {
            return Err(Error::Parse(format!("empty cycle in `{text}`")));
        }
        cycles.push(tokens);
        rest = &body[close + 1..];
    }
    Ok(cycles)
}
