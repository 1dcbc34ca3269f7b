//! The stable algebra: finite integer combinations of classes
//! `∐_n G_n//K_n`, with the product obtained by summing the gluings
//! `g ⊛_λ h` over all partial bijections `λ: J_k ⇀ J_n`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::conjugacy::{canonicalize, class_inverse, ConjClass};
use crate::element::{FamilyDescriptor, GroupElement};
use crate::error::{Error, Result};
use crate::exec::{fold_keyed, Config};
use crate::partial::{pb_enumerate, PartialBijection};

pub type Coeff = BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    family: FamilyDescriptor,
    terms: BTreeMap<ConjClass, Coeff>,
}

impl AlgebraElement {
    pub fn zero(family: &FamilyDescriptor) -> Self {
        AlgebraElement { family: family.clone(), terms: BTreeMap::new() }
    }

    /// The basis vector `B[c]`.
    pub fn basis(c: &ConjClass) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(c.clone(), Coeff::one());
        AlgebraElement { family: c.family().clone(), terms }
    }

    /// `B[identity of G_0]`.
    pub fn unit(family: &FamilyDescriptor) -> Self {
        let c = canonicalize(&GroupElement::identity(family, 0), &Config::default()).expect("ambient 0");
        AlgebraElement::basis(&c)
    }

    pub fn from_terms<I: IntoIterator<Item = (ConjClass, Coeff)>>(family: &FamilyDescriptor, terms: I) -> Result<Self> {
        let mut out = AlgebraElement::zero(family);
        for (c, v) in terms {
            out.check_class(&c)?;
            out.add_term(c, v);
        }
        Ok(out)
    }

    fn check_class(&self, c: &ConjClass) -> Result<()> {
        if c.family() != &self.family {
            return Err(Error::FamilyMismatch(self.family.to_string(), c.family().to_string()));
        }
        Ok(())
    }

    fn check_family(&self, other: &AlgebraElement) -> Result<()> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch(self.family.to_string(), other.family.to_string()));
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, c: ConjClass, v: Coeff) {
        if v.is_zero() {
            return;
        }
        match self.terms.entry(c) {
            Entry::Vacant(e) => {
                e.insert(v);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn family(&self) -> &FamilyDescriptor {
        &self.family
    }

    /// Nonzero terms in class order.
    pub fn terms(&self) -> impl Iterator<Item = (&ConjClass, &Coeff)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, c: &ConjClass) -> Coeff {
        self.terms.get(c).cloned().unwrap_or_default()
    }

    pub fn try_add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_family(other)?;
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_term(c.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.try_add(&other.scale(&-Coeff::one()))
    }

    pub fn scale(&self, k: &Coeff) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.family);
        for (c, v) in &self.terms {
            out.add_term(c.clone(), v * k);
        }
        out
    }

    /// Terms whose class has ambient exactly `n`.
    pub fn homogeneous_part(&self, n: usize) -> AlgebraElement {
        AlgebraElement {
            family: self.family.clone(),
            terms: self.terms.iter().filter(|(c, _)| c.ambient() == n).map(|(c, v)| (c.clone(), v.clone())).collect(),
        }
    }

    /// Filtration degree: the largest ambient among the terms.
    pub fn degree(&self) -> Result<usize> {
        self.terms.keys().map(ConjClass::ambient).max().ok_or(Error::ZeroElement)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|v| !v.is_negative())
    }

    fn from_counts(family: &FamilyDescriptor, counts: BTreeMap<ConjClass, Coeff>) -> Self {
        AlgebraElement { family: family.clone(), terms: counts.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(if v.is_negative() { " - " } else { " + " })?;
            } else if v.is_negative() {
                f.write_str("-")?;
            }
            write!(f, "{}·B[{}]", v.abs(), c)?;
        }
        Ok(())
    }
}

/// The standard placement for a gluing along `λ: J_k ⇀ J_n` of rank `d`:
/// `σ₀` is the inclusion `J_n → J_{n+k-d}`, `τ₀` agrees with `λ` on its
/// domain and sends the rest of `J_k` increasingly onto `J_{n+k-d} ∖ J_n`.
pub fn canonical_placement(lambda: &PartialBijection) -> (Vec<u32>, Vec<u32>) {
    let n = lambda.target();
    let k = lambda.source();
    let sigma: Vec<u32> = (0..n as u32).collect();
    let mut next = n as u32;
    let tau = (0..k as u32)
        .map(|x| {
            lambda.get(x).unwrap_or_else(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    (sigma, tau)
}

/// `σ₀⟨g⟩σ₀⁻¹ ∘ τ₀⟨h⟩τ₀⁻¹` in `G_M` for injections `σ₀: J_n → J_M`,
/// `τ₀: J_k → J_M`.
pub fn glue_element(g: &GroupElement, h: &GroupElement, sigma: &[u32], tau: &[u32], big_m: usize) -> Result<GroupElement> {
    if g.family() != h.family() {
        return Err(Error::FamilyMismatch(g.family().to_string(), h.family().to_string()));
    }
    let left = g.transport(sigma, big_m)?;
    let right = h.transport(tau, big_m)?;
    Ok(left.product_unchecked(&right))
}

/// The class `g ⊛_λ h` for `g ∈ G_n`, `h ∈ G_k`, `λ: J_k ⇀ J_n`.
pub fn glue(g: &GroupElement, h: &GroupElement, lambda: &PartialBijection, config: &Config) -> Result<ConjClass> {
    if lambda.source() != h.ambient() || lambda.target() != g.ambient() {
        return Err(Error::SizeMismatch(format!(
            "λ maps J_{} to J_{}, factors have ambients {} and {}",
            lambda.source(),
            lambda.target(),
            g.ambient(),
            h.ambient()
        )));
    }
    if g.family() != h.family() {
        return Err(Error::FamilyMismatch(g.family().to_string(), h.family().to_string()));
    }
    let big_m = g.ambient() + h.ambient() - lambda.rank();
    let (sigma, tau) = canonical_placement(lambda);
    let r = glue_element(g, h, &sigma, &tau, big_m)?;
    canonicalize(&r, config)
}

/// Multiset `{ g ⊛_λ h : λ ∈ PB(J_k, J_n) }`.
fn gluing_counts(g: &ConjClass, h: &ConjClass, config: &Config) -> Result<BTreeMap<ConjClass, Coeff>> {
    let lambdas = pb_enumerate(h.ambient(), g.ambient());
    fold_keyed(&lambdas, config.strategy, |lambda, acc| {
        let c = glue(g.rep(), h.rep(), lambda, config)?;
        *acc.entry(c).or_insert_with(Coeff::zero) += 1;
        Ok(())
    })
}

/// `B[g] * B[h] = Σ_λ B[g ⊛_λ h]`.
pub fn basis_star(g: &ConjClass, h: &ConjClass, config: &Config) -> Result<AlgebraElement> {
    if g.family() != h.family() {
        return Err(Error::FamilyMismatch(g.family().to_string(), h.family().to_string()));
    }
    Ok(AlgebraElement::from_counts(g.family(), gluing_counts(g, h, config)?))
}

fn bilinear<F>(u: &AlgebraElement, v: &AlgebraElement, basis: F) -> Result<AlgebraElement>
where
    F: Fn(&ConjClass, &ConjClass) -> Result<AlgebraElement>,
{
    u.check_family(v)?;
    let mut out = AlgebraElement::zero(&u.family);
    for (a, x) in &u.terms {
        for (b, y) in &v.terms {
            let xy = x * y;
            for (c, k) in basis(a, b)?.terms {
                out.add_term(c, k * &xy);
            }
        }
    }
    Ok(out)
}

/// The stable product.
pub fn star(u: &AlgebraElement, v: &AlgebraElement, config: &Config) -> Result<AlgebraElement> {
    bilinear(u, v, |a, b| basis_star(a, b, config))
}

/// `B[c]⋆ = B[class of c⁻¹]`, extended linearly.
pub fn involution(u: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(&u.family);
    for (c, v) in &u.terms {
        out.add_term(class_inverse(c), v.clone());
    }
    out
}

/// Product of the associated graded algebra: only the rank-0 gluing.
pub fn bullet(u: &AlgebraElement, v: &AlgebraElement, config: &Config) -> Result<AlgebraElement> {
    bilinear(u, v, |a, b| {
        let lambda = PartialBijection::empty(b.ambient(), a.ambient());
        Ok(AlgebraElement::basis(&glue(a.rep(), b.rep(), &lambda, config)?))
    })
}

/// Graded bracket: `Σ_{rk λ = 1} (B[g ⊛_λ h] − B[h ⊛_{λ⁻¹} g])`.
pub fn bracket_graded(u: &AlgebraElement, v: &AlgebraElement, config: &Config) -> Result<AlgebraElement> {
    bilinear(u, v, |a, b| {
        let lambdas: Vec<PartialBijection> =
            pb_enumerate(b.ambient(), a.ambient()).into_iter().filter(|l| l.rank() == 1).collect();
        let counts = fold_keyed(&lambdas, config.strategy, |lambda, acc| {
            let plus = glue(a.rep(), b.rep(), lambda, config)?;
            let minus = glue(b.rep(), a.rep(), &lambda.inverse(), config)?;
            *acc.entry(plus).or_insert_with(Coeff::zero) += 1;
            *acc.entry(minus).or_insert_with(Coeff::zero) -= 1;
            Ok(())
        })?;
        Ok(AlgebraElement::from_counts(a.family(), counts))
    })
}
