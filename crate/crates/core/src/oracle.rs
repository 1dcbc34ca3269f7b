//! Brute-force finite models used to check the stable algebra.
//!
//! `A_N[c]` lives in the group algebra of `G_N`; `B_N[c]` lives in the
//! semigroup algebra of local bijections of `V_N`. Both are built from the
//! sum over `n`-subsets `Ω ⊂ J_N` and bijections `J_n → Ω`, i.e. over all
//! injections `J_n → J_N`, so every coefficient stays integral.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{basis_star, AlgebraElement, Coeff};
use crate::conjugacy::ConjClass;
use crate::element::{FamilyDescriptor, GroupElement};
use crate::error::{Error, Result};
use crate::exec::{fold_keyed, merge_maps, Config, Strategy};
use crate::local::{ColumnSet, LocalBijection};
use crate::partial::PartialBijection;
use crate::perm::Permutation;

/// All injections `J_n → J_big_n` as 0-based image lists.
pub fn injections(n: usize, big_n: usize) -> Vec<Vec<u32>> {
    if n > big_n {
        return Vec::new();
    }
    (0..big_n as u32).permutations(n).collect()
}

fn prune<K: Ord>(terms: BTreeMap<K, Coeff>) -> BTreeMap<K, Coeff> {
    terms.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Integer combination of elements of `G_N`, keyed by their image lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    family: FamilyDescriptor,
    ambient: usize,
    terms: BTreeMap<Vec<u32>, Coeff>,
}

impl GroupAlgebraElement {
    pub fn zero(family: &FamilyDescriptor, ambient: usize) -> Self {
        GroupAlgebraElement { family: family.clone(), ambient, terms: BTreeMap::new() }
    }

    pub fn single(g: &GroupElement, coeff: Coeff) -> Self {
        let mut out = GroupAlgebraElement::zero(g.family(), g.ambient());
        out.add(g, coeff).expect("same family and ambient");
        out
    }

    pub fn family(&self) -> &FamilyDescriptor {
        &self.family
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &GroupElement) -> Coeff {
        self.terms.get(g.body()).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (GroupElement, &Coeff)> + '_ {
        self.terms
            .iter()
            .map(|(b, v)| (GroupElement::from_body_unchecked(&self.family, self.ambient, b.clone()), v))
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> Coeff {
        self.terms.values().sum()
    }

    fn check(&self, family: &FamilyDescriptor, ambient: usize) -> Result<()> {
        if &self.family != family {
            return Err(Error::FamilyMismatch(self.family.to_string(), family.to_string()));
        }
        if self.ambient != ambient {
            return Err(Error::AmbientMismatch(self.ambient, ambient));
        }
        Ok(())
    }

    pub fn add(&mut self, g: &GroupElement, coeff: Coeff) -> Result<()> {
        self.check(g.family(), g.ambient())?;
        let slot = self.terms.entry(g.body().to_vec()).or_insert_with(Coeff::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(g.body());
        }
        Ok(())
    }

    pub fn try_add(&self, other: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        self.check(&other.family, other.ambient)?;
        let terms = prune(merge_maps(self.terms.clone(), other.terms.clone()));
        Ok(GroupAlgebraElement { terms, ..self.clone() })
    }

    pub fn scale(&self, k: &Coeff) -> GroupAlgebraElement {
        let terms = prune(self.terms.iter().map(|(b, v)| (b.clone(), v * k)).collect());
        GroupAlgebraElement { terms, ..self.clone() }
    }

    /// Convolution: bilinear extension of the group product.
    pub fn convolve(&self, other: &GroupAlgebraElement, strategy: Strategy) -> Result<GroupAlgebraElement> {
        self.check(&other.family, other.ambient)?;
        let left: Vec<(&Vec<u32>, &Coeff)> = self.terms.iter().collect();
        let terms = fold_keyed(&left, strategy, |(a, x), acc| {
            for (b, y) in &other.terms {
                let ab: Vec<u32> = b.iter().map(|&p| a[p as usize]).collect();
                *acc.entry(ab).or_insert_with(Coeff::zero) += *x * y;
            }
            Ok(())
        })?;
        Ok(GroupAlgebraElement { family: self.family.clone(), ambient: self.ambient, terms: prune(terms) })
    }

    /// Image under conjugation by `τ ∈ K_N`.
    pub fn conjugate(&self, tau: &Permutation) -> Result<GroupAlgebraElement> {
        let mut out = GroupAlgebraElement::zero(&self.family, self.ambient);
        for (g, v) in self.terms() {
            out.add(&g.conjugate_columns(tau)?, v.clone())?;
        }
        Ok(out)
    }
}

/// `A_N[c] = Σ_{Ω ⊂ J_N, #Ω = n} Σ_{σ: J_n → Ω} σ g σ⁻¹`; zero when `n > N`.
pub fn a_n_element(c: &ConjClass, big_n: usize) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero(c.family(), big_n);
    for sigma in injections(c.ambient(), big_n) {
        let g = c.rep().transport_unchecked(&sigma, big_n);
        let slot = out.terms.entry(g.into_body()).or_insert_with(Coeff::zero);
        *slot += 1;
    }
    out
}

/// Integer combination of local bijections of `V_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalBijAlgebraElement {
    family: FamilyDescriptor,
    ambient: usize,
    terms: BTreeMap<LocalBijection, Coeff>,
}

impl LocalBijAlgebraElement {
    pub fn zero(family: &FamilyDescriptor, ambient: usize) -> Self {
        LocalBijAlgebraElement { family: family.clone(), ambient, terms: BTreeMap::new() }
    }

    /// `1·⟨id, ∅⟩`.
    pub fn unit(family: &FamilyDescriptor, ambient: usize) -> Self {
        LocalBijAlgebraElement::single(&LocalBijection::unit(family, ambient), Coeff::from(1))
    }

    pub fn single(a: &LocalBijection, coeff: Coeff) -> Self {
        let mut out = LocalBijAlgebraElement::zero(a.family(), a.ambient());
        out.add(a, coeff).expect("same family and ambient");
        out
    }

    pub fn family(&self) -> &FamilyDescriptor {
        &self.family
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LocalBijection, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &LocalBijection) -> Coeff {
        self.terms.get(a).cloned().unwrap_or_default()
    }

    pub fn mass(&self) -> Coeff {
        self.terms.values().sum()
    }

    fn check(&self, family: &FamilyDescriptor, ambient: usize) -> Result<()> {
        if &self.family != family {
            return Err(Error::FamilyMismatch(self.family.to_string(), family.to_string()));
        }
        if self.ambient != ambient {
            return Err(Error::AmbientMismatch(self.ambient, ambient));
        }
        Ok(())
    }

    pub fn add(&mut self, a: &LocalBijection, coeff: Coeff) -> Result<()> {
        self.check(a.family(), a.ambient())?;
        let slot = self.terms.entry(a.clone()).or_insert_with(Coeff::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(a);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LocalBijAlgebraElement) -> Result<LocalBijAlgebraElement> {
        self.check(&other.family, other.ambient)?;
        let terms = prune(merge_maps(self.terms.clone(), other.terms.clone()));
        Ok(LocalBijAlgebraElement { terms, ..self.clone() })
    }

    pub fn scale(&self, k: &Coeff) -> LocalBijAlgebraElement {
        let terms = prune(self.terms.iter().map(|(b, v)| (b.clone(), v * k)).collect());
        LocalBijAlgebraElement { terms, ..self.clone() }
    }

    /// Convolution: bilinear extension of the `∘`-product.
    pub fn convolve(&self, other: &LocalBijAlgebraElement, strategy: Strategy) -> Result<LocalBijAlgebraElement> {
        self.check(&other.family, other.ambient)?;
        let left: Vec<(&LocalBijection, &Coeff)> = self.terms.iter().collect();
        let terms = fold_keyed(&left, strategy, |(a, x), acc| {
            for (b, y) in &other.terms {
                *acc.entry(a.product_unchecked(b)).or_insert_with(Coeff::zero) += *x * y;
            }
            Ok(())
        })?;
        Ok(LocalBijAlgebraElement { family: self.family.clone(), ambient: self.ambient, terms: prune(terms) })
    }

    /// `π`: keeps the terms supported inside `J_small`, drops the rest.
    pub fn project(&self, small_n: usize) -> Result<LocalBijAlgebraElement> {
        if small_n > self.ambient {
            return Err(Error::GrowNotAllowed { from: self.ambient, to: small_n });
        }
        let mut out = LocalBijAlgebraElement::zero(&self.family, small_n);
        for (a, v) in &self.terms {
            if let Some(r) = a.restrict(small_n) {
                out.add(&r, v.clone())?;
            }
        }
        Ok(out)
    }

    /// `ι`: forgets supports, aggregating coefficients.
    pub fn iota(&self) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(&self.family, self.ambient);
        for (a, v) in &self.terms {
            out.add(a.iota(), v.clone()).expect("same family and ambient");
        }
        out
    }

    pub fn conjugate(&self, tau: &Permutation) -> Result<LocalBijAlgebraElement> {
        let mut out = LocalBijAlgebraElement::zero(&self.family, self.ambient);
        for (a, v) in &self.terms {
            out.add(&a.conjugate(tau)?, v.clone())?;
        }
        Ok(out)
    }
}

/// `B_N[c] = Σ_Ω Σ_σ ⟨σ g σ⁻¹, X ∪ (I × Ω)⟩`; zero when `n > N`.
pub fn b_n_element(c: &ConjClass, big_n: usize) -> LocalBijAlgebraElement {
    let mut out = LocalBijAlgebraElement::zero(c.family(), big_n);
    for sigma in injections(c.ambient(), big_n) {
        let g = c.rep().transport_unchecked(&sigma, big_n);
        let a = LocalBijection::new_unchecked(ColumnSet::from_columns(sigma.iter().copied()), g);
        *out.terms.entry(a).or_insert_with(Coeff::zero) += 1;
    }
    out
}

/// Largest `N` the oracle accepts: `|G_N| ≤ 14400` unless overridden.
///
/// Gives `N ≤ 7` for Product(1), `N ≤ 5` for Product(2) and `N ≤ 6` for
/// Full with one label.
pub fn oracle_guard(family: &FamilyDescriptor, config: &Config) -> usize {
    if let Some(n) = config.oracle_max_n {
        return n;
    }
    (0..).take_while(|&n| family.group_order(n) <= 14_400).last().unwrap_or(0)
}

fn check_guard(family: &FamilyDescriptor, ns: &[usize], config: &Config) -> Result<()> {
    let guard = oracle_guard(family, config);
    match ns.iter().find(|&&n| n > guard) {
        Some(n) => Err(Error::ResourceGuard(format!("N = {n} exceeds the oracle limit {guard} for {family}"))),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityCheck {
    #[serde(rename = "N")]
    pub n: usize,
    pub pass: bool,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub family: FamilyDescriptor,
    pub g: ConjClass,
    pub h: ConjClass,
    pub constants: AlgebraElement,
    pub checks: Vec<StabilityCheck>,
}

impl StabilityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// `{family, g, h, constants:[{r, coeff}], checks:[{N, pass, lhs_terms, rhs_terms}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Constant {
            r: String,
            coeff: serde_json::Number,
        }
        #[derive(Serialize)]
        struct Report<'a> {
            family: &'a FamilyDescriptor,
            g: &'a str,
            h: &'a str,
            constants: Vec<Constant>,
            checks: &'a [StabilityCheck],
        }
        let constants = self
            .constants
            .terms()
            .map(|(r, v)| Constant { r: r.key().to_owned(), coeff: crate::json::coeff_number(v) })
            .collect();
        serde_json::to_value(Report {
            family: &self.family,
            g: self.g.key(),
            h: self.h.key(),
            constants,
            checks: &self.checks,
        })
        .expect("plain struct serializes")
    }
}

/// Checks `A_N[g]*A_N[h] = Σ_r a^r A_N[r]` for every `N` in `ns`, with the
/// constants `a^r` taken from the stable product.
pub fn verify_stability(g: &ConjClass, h: &ConjClass, ns: &[usize], config: &Config) -> Result<StabilityReport> {
    check_guard(g.family(), ns, config)?;
    let constants = basis_star(g, h, config)?;
    let checks = ns
        .iter()
        .map(|&n| {
            let lhs = a_n_element(g, n).convolve(&a_n_element(h, n), config.strategy)?;
            let mut rhs = GroupAlgebraElement::zero(g.family(), n);
            for (r, coeff) in constants.terms() {
                rhs = rhs.try_add(&a_n_element(r, n).scale(coeff))?;
            }
            Ok(StabilityCheck { n, pass: lhs == rhs, lhs_terms: lhs.len(), rhs_terms: rhs.len() })
        })
        .collect::<Result<_>>()?;
    Ok(StabilityReport { family: g.family().clone(), g: g.clone(), h: h.clone(), constants, checks })
}

/// The local-bijection version: `B_N[g]*B_N[h] = Σ_r a^r B_N[r]` together
/// with `ι(B_N[g]) = A_N[g]` and `ι(B_N[h]) = A_N[h]`.
pub fn verify_local_stability(g: &ConjClass, h: &ConjClass, ns: &[usize], config: &Config) -> Result<StabilityReport> {
    check_guard(g.family(), ns, config)?;
    let constants = basis_star(g, h, config)?;
    let checks = ns
        .iter()
        .map(|&n| {
            let (bg, bh) = (b_n_element(g, n), b_n_element(h, n));
            let forgets = bg.iota() == a_n_element(g, n) && bh.iota() == a_n_element(h, n);
            let lhs = bg.convolve(&bh, config.strategy)?;
            let mut rhs = LocalBijAlgebraElement::zero(g.family(), n);
            for (r, coeff) in constants.terms() {
                rhs = rhs.try_add(&b_n_element(r, n).scale(coeff))?;
            }
            Ok(StabilityCheck { n, pass: forgets && lhs == rhs, lhs_terms: lhs.len(), rhs_terms: rhs.len() })
        })
        .collect::<Result<_>>()?;
    Ok(StabilityReport { family: g.family().clone(), g: g.clone(), h: h.clone(), constants, checks })
}

/// Injection pairs `(σ, τ)` keyed by the partial bijection they induce.
pub type Placements = BTreeMap<PartialBijection, Vec<(Vec<u32>, Vec<u32>)>>;

/// Pairs of injections `σ: J_n → J_M`, `τ: J_k → J_M` with
/// `σJ_n ∪ τJ_k = J_M`, grouped by the partial bijection `σ⁻¹τ: J_k ⇀ J_n`.
pub fn covering_placements(n: usize, k: usize, big_m: usize) -> Placements {
    let sigmas = injections(n, big_m);
    let taus = injections(k, big_m);
    let mut out = Placements::new();
    for s in &sigmas {
        let mut pos = vec![u32::MAX; big_m];
        for (i, &y) in s.iter().enumerate() {
            pos[y as usize] = i as u32;
        }
        for t in &taus {
            let covered = ColumnSet::from_columns(s.iter().chain(t).copied());
            if covered != ColumnSet::full(big_m) {
                continue;
            }
            let pairs = t
                .iter()
                .enumerate()
                .filter(|(_, &y)| pos[y as usize] != u32::MAX)
                .map(|(x, &y)| (x as u32, pos[y as usize]))
                .collect();
            let lambda = PartialBijection::new(k, n, pairs).expect("composition of injections");
            out.entry(lambda).or_default().push((s.clone(), t.clone()));
        }
    }
    out
}

/// Number of covering injection pairs into `J_{n+k-d}`.
pub fn covering_pair_count(n: usize, k: usize, d: usize) -> usize {
    if d > n.min(k) {
        return 0;
    }
    covering_placements(n, k, n + k - d).values().map(Vec::len).sum()
}
