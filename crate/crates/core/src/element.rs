//! The group families `G_n` acting on `V_n = X ∪ (I × J_n)`.
//!
//! Every element is stored as one permutation of the point set of `V_n`,
//! indexed as: fixed labels first (declaration order), then row 0 columns
//! `0..n`, row 1 columns `0..n`, and so on. This image list is also the
//! serialization used for canonical forms.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{check_bijection, parse_cycle_tokens, Permutation};

/// Which family `G_n ⊂ S(V_n)` is in play.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilyDescriptor {
    /// `S_n × ... × S_n` (`rows` factors) acting row by row, `X = ∅`.
    Product { rows: usize },
    /// `S(X ∪ J_n)` with a single row.
    Full { labels: Arc<[String]> },
}

impl FamilyDescriptor {
    pub fn product(rows: usize) -> Result<Self> {
        if rows == 0 {
            return Err(Error::Invalid("a product family needs at least one row".into()));
        }
        Ok(FamilyDescriptor::Product { rows })
    }

    pub fn full<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        for (i, l) in labels.iter().enumerate() {
            let bad = l.is_empty()
                || l.chars().all(|c| c.is_ascii_digit())
                || l.chars().any(|c| c.is_whitespace() || "()|@,:{}\"".contains(c))
                || l == "e";
            if bad {
                return Err(Error::Invalid(format!("`{l}` is not a usable label")));
            }
            if labels[..i].contains(l) {
                return Err(Error::Invalid(format!("label `{l}` declared twice")));
            }
        }
        Ok(FamilyDescriptor::Full { labels: labels.into() })
    }

    /// Parses `s1`, `s2`, `sm:<m>` or `full:<l1,l2,...>`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        match text {
            "s1" => return Self::product(1),
            "s2" => return Self::product(2),
            _ => {}
        }
        if let Some(m) = text.strip_prefix("sm:") {
            let m = m.parse().map_err(|_| Error::Parse(format!("bad row count in `{text}`")))?;
            return Self::product(m);
        }
        if let Some(list) = text.strip_prefix("full:") {
            let labels: Vec<&str> = if list.is_empty() { Vec::new() } else { list.split(',').collect() };
            return Self::full(&labels);
        }
        Err(Error::Parse(format!("unknown family `{text}`")))
    }

    pub fn rows(&self) -> usize {
        match self {
            FamilyDescriptor::Product { rows } => *rows,
            FamilyDescriptor::Full { .. } => 1,
        }
    }

    pub fn labels(&self) -> &[String] {
        match self {
            FamilyDescriptor::Product { .. } => &[],
            FamilyDescriptor::Full { labels } => labels,
        }
    }

    pub fn label_count(&self) -> usize {
        self.labels().len()
    }

    /// True when `X = ∅`.
    pub fn has_no_labels(&self) -> bool {
        self.labels().is_empty()
    }

    /// Number of points of `V_n`.
    pub fn point_count(&self, n: usize) -> usize {
        self.label_count() + self.rows() * n
    }

    /// `|G_n|`, saturating.
    pub fn group_order(&self, n: usize) -> u128 {
        let fact = |k: usize| (1..=k as u128).fold(1u128, |a, b| a.saturating_mul(b));
        match self {
            FamilyDescriptor::Product { rows } => {
                (0..*rows).fold(1u128, |a, _| a.saturating_mul(fact(n)))
            }
            FamilyDescriptor::Full { labels } => fact(labels.len() + n),
        }
    }

    fn label_index(&self, name: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == name)
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::Product { rows: 1 } => f.write_str("s1"),
            FamilyDescriptor::Product { rows: 2 } => f.write_str("s2"),
            FamilyDescriptor::Product { rows } => write!(f, "sm:{rows}"),
            FamilyDescriptor::Full { labels } => write!(f, "full:{}", labels.join(",")),
        }
    }
}

/// A point of `V_n`; rows and columns are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Column { row: usize, col: usize },
    Fixed(usize),
}

/// Index arithmetic on the point set of `V_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Layout {
    pub labels: usize,
    pub rows: usize,
    pub n: usize,
}

impl Layout {
    pub fn new(family: &FamilyDescriptor, n: usize) -> Self {
        Layout { labels: family.label_count(), rows: family.rows(), n }
    }

    pub fn len(&self) -> usize {
        self.labels + self.rows * self.n
    }

    #[inline]
    pub fn index(&self, p: Point) -> usize {
        match p {
            Point::Fixed(l) => l,
            Point::Column { row, col } => self.labels + row * self.n + col,
        }
    }

    #[inline]
    pub fn point(&self, idx: usize) -> Point {
        if idx < self.labels {
            Point::Fixed(idx)
        } else {
            let k = idx - self.labels;
            Point::Column { row: k / self.n, col: k % self.n }
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match p {
            Point::Fixed(l) => l < self.labels,
            Point::Column { row, col } => row < self.rows && col < self.n,
        }
    }
}

/// An element of `G_n` with its ambient size `n` kept explicitly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    family: FamilyDescriptor,
    n: usize,
    body: Vec<u32>,
}

impl GroupElement {
    pub fn identity(family: &FamilyDescriptor, n: usize) -> Self {
        let len = family.point_count(n);
        GroupElement { family: family.clone(), n, body: (0..len as u32).collect() }
    }

    /// Builds an element from its image list over the points of `V_n`.
    pub fn from_body(family: &FamilyDescriptor, n: usize, body: Vec<u32>) -> Result<Self> {
        let layout = Layout::new(family, n);
        if body.len() != layout.len() {
            return Err(Error::SizeMismatch(format!(
                "body has {} points, V_{n} has {}",
                body.len(),
                layout.len()
            )));
        }
        check_bijection(&body)?;
        if let FamilyDescriptor::Product { .. } = family {
            for (i, &y) in body.iter().enumerate() {
                let (Point::Column { row: r0, .. }, Point::Column { row: r1, .. }) =
                    (layout.point(i), layout.point(y as usize))
                else {
                    unreachable!("product families have no labels")
                };
                if r0 != r1 {
                    return Err(Error::Invalid("product family elements preserve rows".into()));
                }
            }
        }
        Ok(GroupElement { family: family.clone(), n, body })
    }

    /// A Product-family element from one permutation per row.
    pub fn from_rows(family: &FamilyDescriptor, rows: &[Permutation]) -> Result<Self> {
        let FamilyDescriptor::Product { rows: m } = family else {
            return Err(Error::FamilyMismatch(family.to_string(), "product".into()));
        };
        if rows.len() != *m {
            return Err(Error::SizeMismatch(format!("expected {m} rows, got {}", rows.len())));
        }
        let n = rows[0].degree();
        let mut body = Vec::with_capacity(m * n);
        for (i, r) in rows.iter().enumerate() {
            if r.degree() != n {
                return Err(Error::DegreeMismatch(n, r.degree()));
            }
            body.extend(r.images().iter().map(|&y| (i * n) as u32 + y));
        }
        Ok(GroupElement { family: family.clone(), n, body })
    }

    /// A Full-family element from a permutation of `X ∪ J_n` (labels first).
    pub fn from_full_permutation(family: &FamilyDescriptor, n: usize, p: &Permutation) -> Result<Self> {
        if !matches!(family, FamilyDescriptor::Full { .. }) {
            return Err(Error::FamilyMismatch(family.to_string(), "full".into()));
        }
        GroupElement::from_body(family, n, p.images().to_vec())
    }

    pub(crate) fn from_body_unchecked(family: &FamilyDescriptor, n: usize, body: Vec<u32>) -> Self {
        debug_assert!(GroupElement::from_body(family, n, body.clone()).is_ok());
        GroupElement { family: family.clone(), n, body }
    }

    pub fn family(&self) -> &FamilyDescriptor {
        &self.family
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Image list over the points of `V_n`; the element's serialization.
    pub fn body(&self) -> &[u32] {
        &self.body
    }

    pub(crate) fn into_body(self) -> Vec<u32> {
        self.body
    }

    pub(crate) fn layout(&self) -> Layout {
        Layout::new(&self.family, self.n)
    }

    /// Row `i` as a permutation of `J_n` (Product family).
    pub fn row(&self, i: usize) -> Option<Permutation> {
        match self.family {
            FamilyDescriptor::Product { rows } if i < rows => {
                let n = self.n;
                let images = self.body[i * n..(i + 1) * n].iter().map(|&y| y - (i * n) as u32).collect();
                Some(Permutation::from_images(images).expect("rows are bijections"))
            }
            _ => None,
        }
    }

    /// The whole body as a permutation of the point set.
    pub fn as_permutation(&self) -> Permutation {
        Permutation::from_images(self.body.clone()).expect("bodies are bijections")
    }

    pub fn is_identity(&self) -> bool {
        self.body.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    pub fn apply(&self, p: Point) -> Result<Point> {
        let layout = self.layout();
        if !layout.contains(p) {
            return Err(Error::PointOutOfRange(format!("{p:?}")));
        }
        Ok(layout.point(self.body[layout.index(p)] as usize))
    }

    fn check_compatible(&self, other: &GroupElement) -> Result<()> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch(self.family.to_string(), other.family.to_string()));
        }
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// `(self·other)(p) = self(other(p))`.
    pub fn product(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_compatible(other)?;
        Ok(self.product_unchecked(other))
    }

    #[inline]
    pub(crate) fn product_unchecked(&self, other: &GroupElement) -> GroupElement {
        let body = other.body.iter().map(|&x| self.body[x as usize]).collect();
        GroupElement { family: self.family.clone(), n: self.n, body }
    }

    pub fn inverse(&self) -> GroupElement {
        let mut inv = vec![0u32; self.body.len()];
        for (x, &y) in self.body.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        GroupElement { family: self.family.clone(), n: self.n, body: inv }
    }

    /// Trivial extension to ambient `big_n`, fixing the new columns.
    pub fn embed(&self, big_n: usize) -> Result<GroupElement> {
        if big_n < self.n {
            return Err(Error::ShrinkNotAllowed { from: self.n, to: big_n });
        }
        let inclusion: Vec<u32> = (0..self.n as u32).collect();
        Ok(self.transport_unchecked(&inclusion, big_n))
    }

    /// Moves the element along an injection `J_n → J_big_n` (0-based image
    /// list of columns) and extends it trivially: the result is
    /// `σ g σ⁻¹` on `X ∪ (I × σJ_n)` and the identity elsewhere.
    pub fn transport(&self, injection: &[u32], big_n: usize) -> Result<GroupElement> {
        if injection.len() != self.n {
            return Err(Error::SizeMismatch(format!(
                "injection has {} entries, ambient is {}",
                injection.len(),
                self.n
            )));
        }
        let mut seen = vec![false; big_n];
        for &c in injection {
            if c as usize >= big_n || std::mem::replace(&mut seen[c as usize], true) {
                return Err(Error::Invalid("not an injection into the target segment".into()));
            }
        }
        Ok(self.transport_unchecked(injection, big_n))
    }

    pub(crate) fn transport_unchecked(&self, injection: &[u32], big_n: usize) -> GroupElement {
        let src = self.layout();
        let dst = Layout::new(&self.family, big_n);
        let mut body: Vec<u32> = (0..dst.len() as u32).collect();
        let map_point = |p: Point| match p {
            Point::Fixed(l) => Point::Fixed(l),
            Point::Column { row, col } => Point::Column { row, col: injection[col] as usize },
        };
        for (i, &y) in self.body.iter().enumerate() {
            let from = map_point(src.point(i));
            let to = map_point(src.point(y as usize));
            body[dst.index(from)] = dst.index(to) as u32;
        }
        GroupElement { family: self.family.clone(), n: big_n, body }
    }

    /// Restriction to a smaller ambient; every dropped column must be fixed.
    pub fn restrict(&self, small_n: usize) -> Result<GroupElement> {
        if small_n > self.n {
            return Err(Error::GrowNotAllowed { from: self.n, to: small_n });
        }
        let src = self.layout();
        let dst = Layout::new(&self.family, small_n);
        let mut body = vec![0u32; dst.len()];
        for (i, &y) in self.body.iter().enumerate() {
            let (p, q) = (src.point(i), src.point(y as usize));
            let inside = |p: Point| matches!(p, Point::Fixed(_)) || matches!(p, Point::Column { col, .. } if col < small_n);
            match (inside(p), inside(q)) {
                (true, true) => body[dst.index(p)] = dst.index(q) as u32,
                (false, false) if p == q => {}
                _ => {
                    return Err(Error::Invalid(format!(
                        "element moves columns beyond {small_n}, cannot restrict"
                    )))
                }
            }
        }
        Ok(GroupElement { family: self.family.clone(), n: small_n, body })
    }

    /// `τ̂ g τ̂⁻¹` where `τ ∈ S_n` permutes columns in every row and fixes `X`.
    pub fn conjugate_columns(&self, tau: &Permutation) -> Result<GroupElement> {
        if tau.degree() != self.n {
            return Err(Error::DegreeMismatch(tau.degree(), self.n));
        }
        Ok(self.transport_unchecked(tau.images(), self.n))
    }

    /// Columns moved by the element in some row (or mapped to/from a label).
    pub fn column_support(&self) -> Vec<u32> {
        let layout = self.layout();
        let mut moved = vec![false; self.n];
        for (i, &y) in self.body.iter().enumerate() {
            if i as u32 != y {
                for p in [layout.point(i), layout.point(y as usize)] {
                    if let Point::Column { col, .. } = p {
                        moved[col] = true;
                    }
                }
            }
        }
        (0..self.n as u32).filter(|&c| moved[c as usize]).collect()
    }

    /// Every element of `G_n`, in a deterministic order.
    pub fn enumerate(family: &FamilyDescriptor, n: usize) -> Vec<GroupElement> {
        match family {
            FamilyDescriptor::Product { rows } => {
                let perms: Vec<Vec<u32>> = (0..n as u32).permutations(n).collect();
                let mut out = Vec::new();
                for choice in (0..*rows).map(|_| 0..perms.len()).multi_cartesian_product() {
                    let mut body = Vec::with_capacity(rows * n);
                    for (i, &c) in choice.iter().enumerate() {
                        body.extend(perms[c].iter().map(|&y| (i * n) as u32 + y));
                    }
                    out.push(GroupElement { family: family.clone(), n, body });
                }
                out
            }
            FamilyDescriptor::Full { labels } => {
                let len = labels.len() + n;
                (0..len as u32)
                    .permutations(len)
                    .map(|body| GroupElement { family: family.clone(), n, body })
                    .collect()
            }
        }
    }

    /// Parses an element literal.
    ///
    /// Product(m): `m` cycle strings joined by `|`, row 1 first. Full(X): one
    /// cycle string over labels and columns. An optional `@k` suffix fixes
    /// the ambient size; otherwise it is the largest column mentioned.
    pub fn parse(family: &FamilyDescriptor, text: &str) -> Result<GroupElement> {
        let text = text.trim();
        let (main, ambient) = match text.rsplit_once('@') {
            Some((m, k)) => {
                let k: usize = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad ambient suffix in `{text}`")))?;
                (m.trim(), Some(k))
            }
            None => (text, None),
        };
        match family {
            FamilyDescriptor::Product { rows } => {
                let parts: Vec<&str> = main.split('|').collect();
                if parts.len() != *rows {
                    return Err(Error::Parse(format!(
                        "`{text}` has {} rows, family {family} needs {rows}",
                        parts.len()
                    )));
                }
                let mut tokens = Vec::new();
                for part in &parts {
                    tokens.push(parse_cycle_tokens(part)?);
                }
                let max_mentioned = tokens
                    .iter()
                    .flatten()
                    .flatten()
                    .map(|t| t.parse::<usize>().unwrap_or(0))
                    .max()
                    .unwrap_or(0);
                let n = ambient.unwrap_or(max_mentioned);
                let perms = parts
                    .iter()
                    .map(|p| Permutation::from_cycles(p, n))
                    .collect::<Result<Vec<_>>>()?;
                if n == 0 {
                    return Ok(GroupElement::identity(family, 0));
                }
                GroupElement::from_rows(family, &perms)
            }
            FamilyDescriptor::Full { .. } => {
                let cycles = parse_cycle_tokens(main)?;
                let mut max_col = 0usize;
                let mut resolved: Vec<Vec<Point>> = Vec::new();
                for cycle in &cycles {
                    let mut pts = Vec::new();
                    for tok in cycle {
                        if let Some(l) = family.label_index(tok) {
                            pts.push(Point::Fixed(l));
                        } else if let Ok(v) = tok.parse::<usize>() {
                            if v == 0 {
                                return Err(Error::Parse("columns are numbered from 1".into()));
                            }
                            max_col = max_col.max(v);
                            pts.push(Point::Column { row: 0, col: v - 1 });
                        } else {
                            return Err(Error::Parse(format!("unknown token `{tok}`")));
                        }
                    }
                    resolved.push(pts);
                }
                let n = ambient.unwrap_or(max_col);
                if max_col > n {
                    return Err(Error::Range { entry: max_col, degree: n });
                }
                let layout = Layout::new(family, n);
                let mut body: Vec<u32> = (0..layout.len() as u32).collect();
                let mut seen = vec![false; layout.len()];
                for (pts, toks) in resolved.iter().zip(&cycles) {
                    for (i, &p) in pts.iter().enumerate() {
                        let idx = layout.index(p);
                        if std::mem::replace(&mut seen[idx], true) {
                            return Err(Error::DuplicateEntry(toks[i].clone()));
                        }
                        body[idx] = layout.index(pts[(i + 1) % pts.len()]) as u32;
                    }
                }
                Ok(GroupElement { family: family.clone(), n, body })
            }
        }
    }

    fn fmt_point(&self, layout: &Layout, idx: usize) -> String {
        match layout.point(idx) {
            Point::Fixed(l) => self.family.labels()[l].clone(),
            Point::Column { col, .. } => (col + 1).to_string(),
        }
    }
}

/// Element literal with an explicit `@n` suffix; parses back to the same element.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            FamilyDescriptor::Product { rows } => {
                for i in 0..*rows {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    match self.row(i) {
                        Some(r) => write!(f, "{r}")?,
                        None => f.write_str("e")?,
                    }
                }
            }
            FamilyDescriptor::Full { .. } => {
                let layout = self.layout();
                let cycles = self.as_permutation().cycles();
                if cycles.is_empty() {
                    f.write_str("e")?;
                }
                for c in cycles {
                    let names: Vec<String> = c.iter().map(|&i| self.fmt_point(&layout, i as usize)).collect();
                    write!(f, "({})", names.join(" "))?;
                }
            }
        }
        write!(f, "@{}", self.n)
    }
}
