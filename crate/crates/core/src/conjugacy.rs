//! Classes of `G_n` under conjugation by `K_n = S_n` (columns permuted
//! simultaneously in every row, labels fixed).
//!
//! The representative of a class is the conjugate whose image list (labels
//! first, then rows in order) is lexicographically smallest. It is found by
//! a depth-first search over `τ⁻¹`, one column at a time, pruning a branch
//! as soon as the determined prefix of the conjugate exceeds the best
//! encoding seen so far.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::element::{FamilyDescriptor, GroupElement, Layout, Point};
use crate::error::{Error, Result};
use crate::exec::{fold_keyed, Config};

/// A `K_n`-conjugacy class, identified by its canonical representative.
#[derive(Debug, Clone)]
pub struct ConjClass {
    rep: GroupElement,
    key: String,
}

impl ConjClass {
    pub fn rep(&self) -> &GroupElement {
        &self.rep
    }

    pub fn family(&self) -> &FamilyDescriptor {
        self.rep.family()
    }

    pub fn ambient(&self) -> usize {
        self.rep.ambient()
    }

    /// Element literal of the representative, `@n` included.
    pub fn key(&self) -> &str {
        &self.key
    }

    fn from_canonical(rep: GroupElement) -> Self {
        let key = rep.to_string();
        ConjClass { rep, key }
    }
}

impl PartialEq for ConjClass {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl Eq for ConjClass {}

impl Hash for ConjClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rep.hash(state)
    }
}

/// Family, then ambient size, then the canonical image list.
impl Ord for ConjClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rep.cmp(&other.rep)
    }
}

impl PartialOrd for ConjClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ConjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

const UNSET: u32 = u32::MAX;

enum Slot {
    Exact(u32),
    AtLeast(u32),
    Unknown,
}

struct Search<'a> {
    body: &'a [u32],
    layout: Layout,
    inv: Vec<u32>,
    fwd: Vec<u32>,
    best: Option<Vec<u32>>,
}

impl Search<'_> {
    /// Value of the conjugate at position `q` when `d` columns of `τ⁻¹` are fixed.
    fn slot(&self, q: usize, d: usize) -> Slot {
        let src = match self.layout.point(q) {
            Point::Fixed(l) => Point::Fixed(l),
            Point::Column { col, .. } if col >= d => return Slot::Unknown,
            Point::Column { row, col } => Point::Column { row, col: self.inv[col] as usize },
        };
        match self.layout.point(self.body[self.layout.index(src)] as usize) {
            Point::Fixed(l) => Slot::Exact(l as u32),
            Point::Column { row, col } => {
                let t = self.fwd[col];
                if t == UNSET {
                    Slot::AtLeast(self.layout.index(Point::Column { row, col: d }) as u32)
                } else {
                    Slot::Exact(self.layout.index(Point::Column { row, col: t as usize }) as u32)
                }
            }
        }
    }

    fn pruned(&self, d: usize) -> bool {
        let Some(best) = &self.best else { return false };
        for (q, &b) in best.iter().enumerate() {
            match self.slot(q, d) {
                Slot::Unknown => return false,
                Slot::Exact(v) => match v.cmp(&b) {
                    Ordering::Less => return false,
                    Ordering::Greater => return true,
                    Ordering::Equal => {}
                },
                Slot::AtLeast(lb) => return lb > b,
            }
        }
        false
    }

    fn leaf(&mut self) {
        let n = self.layout.n;
        let enc: Vec<u32> = (0..self.layout.len())
            .map(|q| match self.slot(q, n) {
                Slot::Exact(v) => v,
                _ => unreachable!("all columns assigned at a leaf"),
            })
            .collect();
        if self.best.as_ref().is_none_or(|b| enc < *b) {
            self.best = Some(enc);
        }
    }

    fn descend(&mut self, d: usize) {
        let n = self.layout.n;
        if d == n {
            self.leaf();
            return;
        }
        for c in 0..n {
            if self.fwd[c] != UNSET {
                continue;
            }
            self.inv[d] = c as u32;
            self.fwd[c] = d as u32;
            if !self.pruned(d + 1) {
                self.descend(d + 1);
            }
            self.fwd[c] = UNSET;
        }
    }
}

pub(crate) fn canonical_body(g: &GroupElement) -> Vec<u32> {
    let n = g.ambient();
    let mut search = Search {
        body: g.body(),
        layout: g.layout(),
        inv: vec![UNSET; n],
        fwd: vec![UNSET; n],
        best: None,
    };
    search.descend(0);
    search.best.expect("S_n is non-empty")
}

/// The class of `g`, refusing ambients beyond `config.max_ambient`.
pub fn canonicalize(g: &GroupElement, config: &Config) -> Result<ConjClass> {
    if g.ambient() > config.max_ambient {
        return Err(Error::CapExceeded { ambient: g.ambient(), cap: config.max_ambient });
    }
    Ok(canonicalize_unchecked(g))
}

pub(crate) fn canonicalize_unchecked(g: &GroupElement) -> ConjClass {
    let body = canonical_body(g);
    ConjClass::from_canonical(GroupElement::from_body_unchecked(g.family(), g.ambient(), body))
}

/// Parses a class literal: an element literal, canonicalized.
pub fn parse_class(family: &FamilyDescriptor, text: &str, config: &Config) -> Result<ConjClass> {
    canonicalize(&GroupElement::parse(family, text)?, config)
}

/// Largest `n` for which `G_n` may be enumerated exhaustively.
pub fn enumeration_guard(family: &FamilyDescriptor, config: &Config) -> usize {
    if let Some(n) = config.oracle_max_n {
        return n;
    }
    match family {
        FamilyDescriptor::Product { rows: 1 } => 6,
        FamilyDescriptor::Product { rows: 2 } => 5,
        _ => (0..).take_while(|&n| family.group_order(n) <= 14_400).last().unwrap_or(0),
    }
}

/// Every class of `G_n` with the number of elements it contains, ordered by class.
pub fn class_sizes(family: &FamilyDescriptor, n: usize, config: &Config) -> Result<BTreeMap<ConjClass, u64>> {
    let guard = enumeration_guard(family, config);
    if n > guard || n > config.max_ambient {
        return Err(Error::CapExceeded { ambient: n, cap: guard.min(config.max_ambient) });
    }
    let elements = GroupElement::enumerate(family, n);
    fold_keyed(&elements, config.strategy, |g, acc| {
        *acc.entry(canonicalize_unchecked(g)).or_insert(0u64) += 1;
        Ok(())
    })
}

/// All classes of `G_n`, each once, in class order.
pub fn class_enumerate(family: &FamilyDescriptor, n: usize, config: &Config) -> Result<Vec<ConjClass>> {
    Ok(class_sizes(family, n, config)?.into_keys().collect())
}

/// The class of `rep⁻¹`.
pub fn class_inverse(c: &ConjClass) -> ConjClass {
    canonicalize_unchecked(&c.rep.inverse())
}
