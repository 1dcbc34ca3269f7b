//! Local bijections `⟨ω, Ω⟩` over a finite ambient `V_N`.
//!
//! The support always contains the whole of `X`; only the column set `Ω`
//! is tracked. The body is stored as its trivial extension `ω̃ ∈ G_N`.

use serde::Serialize;

use crate::element::{FamilyDescriptor, GroupElement, Layout, Point};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A set of columns of `J_N`, `N ≤ 64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ColumnSet(u64);

impl ColumnSet {
    pub const MAX_COLUMNS: usize = 64;

    pub fn empty() -> Self {
        ColumnSet(0)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_COLUMNS);
        ColumnSet(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn from_columns<I: IntoIterator<Item = u32>>(cols: I) -> Self {
        ColumnSet(cols.into_iter().fold(0, |m, c| m | (1u64 << c)))
    }

    pub fn contains(self, c: u32) -> bool {
        self.0 >> c & 1 == 1
    }

    pub fn union(self, other: ColumnSet) -> ColumnSet {
        ColumnSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: ColumnSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Columns in increasing order, 0-based.
    pub fn columns(self) -> impl Iterator<Item = u32> {
        (0..64u32).filter(move |&c| self.0 >> c & 1 == 1)
    }

    pub(crate) fn max_column_exclusive(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocalBijection {
    support: ColumnSet,
    extended: GroupElement,
}

impl LocalBijection {
    /// Checks that `extended` fixes every column outside `support`.
    pub fn new(support: ColumnSet, extended: GroupElement) -> Result<Self> {
        let n = extended.ambient();
        if n > ColumnSet::MAX_COLUMNS {
            return Err(Error::Invalid(format!("ambient {n} exceeds {} columns", ColumnSet::MAX_COLUMNS)));
        }
        if support.max_column_exclusive() > n {
            return Err(Error::Invalid("support leaves J_N".into()));
        }
        if extended.column_support().iter().any(|&c| !support.contains(c)) {
            return Err(Error::Invalid("body moves columns outside its support".into()));
        }
        Ok(LocalBijection { support, extended })
    }

    pub(crate) fn new_unchecked(support: ColumnSet, extended: GroupElement) -> Self {
        debug_assert!(LocalBijection::new(support, extended.clone()).is_ok());
        LocalBijection { support, extended }
    }

    /// The empty-support identity of ambient `n` (trivial on `X`).
    pub fn unit(family: &FamilyDescriptor, n: usize) -> Self {
        LocalBijection { support: ColumnSet::empty(), extended: GroupElement::identity(family, n) }
    }

    pub fn family(&self) -> &FamilyDescriptor {
        self.extended.family()
    }

    pub fn ambient(&self) -> usize {
        self.extended.ambient()
    }

    pub fn support(&self) -> ColumnSet {
        self.support
    }

    /// The forgetting map `ι`: the trivial extension as an element of `G_N`.
    pub fn iota(&self) -> &GroupElement {
        &self.extended
    }

    /// `⟨ω,Ω⟩∘⟨μ,M⟩ = (ω̃·μ̃ restricted, Ω ∪ M)`.
    pub fn product(&self, other: &LocalBijection) -> Result<LocalBijection> {
        let extended = self.extended.product(&other.extended)?;
        Ok(LocalBijection { support: self.support.union(other.support), extended })
    }

    pub(crate) fn product_unchecked(&self, other: &LocalBijection) -> LocalBijection {
        LocalBijection {
            support: self.support.union(other.support),
            extended: self.extended.product_unchecked(&other.extended),
        }
    }

    /// `σ⟨ω,Ω⟩σ⁻¹ = ⟨σω̃σ⁻¹, σΩ⟩` for `σ ∈ S_N` acting on columns.
    pub fn conjugate(&self, sigma: &Permutation) -> Result<LocalBijection> {
        let extended = self.extended.conjugate_columns(sigma)?;
        let support = ColumnSet::from_columns(self.support.columns().map(|c| sigma.apply(c)));
        Ok(LocalBijection { support, extended })
    }

    /// Reinterprets the local bijection at a smaller ambient, when `Ω ⊆ J_small`.
    pub fn restrict(&self, small_n: usize) -> Option<LocalBijection> {
        if !self.support.is_subset(ColumnSet::full(small_n)) {
            return None;
        }
        let extended = self.extended.restrict(small_n).ok()?;
        Some(LocalBijection { support: self.support, extended })
    }

    /// Debug dump `{N, Omega:[...], body:<element literal>}`, 1-based.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Dump {
            #[serde(rename = "N")]
            n: usize,
            #[serde(rename = "Omega")]
            omega: Vec<u32>,
            body: String,
        }
        serde_json::to_value(Dump {
            n: self.ambient(),
            omega: self.support.columns().map(|c| c + 1).collect(),
            body: self.extended.to_string(),
        })
        .expect("plain struct serializes")
    }

    /// The body restricted to `X ∪ (I × Ω)`, as an image map of points.
    pub fn body_points(&self) -> Vec<(Point, Point)> {
        let layout: Layout = Layout::new(self.family(), self.ambient());
        (0..layout.len())
            .map(|i| layout.point(i))
            .filter(|p| match p {
                Point::Fixed(_) => true,
                Point::Column { col, .. } => self.support.contains(*col as u32),
            })
            .map(|p| (p, layout.point(self.extended.body()[layout.index(p)] as usize)))
            .collect()
    }
}
