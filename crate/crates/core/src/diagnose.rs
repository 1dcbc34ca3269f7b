//! Diagnostics on the finite algebras `Z(G_N//K_N)`.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::Coeff;
use crate::conjugacy::{class_enumerate, ConjClass};
use crate::element::FamilyDescriptor;
use crate::error::Result;
use crate::exec::Config;
use crate::oracle::a_n_element;

/// How `A_N` of one element changes when the element is re-declared at a
/// larger ambient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmbientShift {
    pub shift: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    /// Whether `A_N[c@n+shift]` is a scalar multiple of `A_N[c@n]`.
    pub proportional: bool,
    /// The measured scalar as `p` or `p/q`.
    pub measured: String,
    /// `(N-n)(N-n-1)...(N-n-shift+1)`.
    pub falling_factorial: String,
}

/// Measures `A_N[embed(c, n+i)] / A_N[c]` for every shift `i ≤ max_shift`
/// and every `N` in `ns` with `N ≥ n`.
pub fn ambient_shift_scalars(c: &ConjClass, max_shift: usize, ns: &[usize], config: &Config) -> Result<Vec<AmbientShift>> {
    let n = c.ambient();
    let mut out = Vec::new();
    for shift in 0..=max_shift {
        let bigger = crate::conjugacy::canonicalize(&c.rep().embed(n + shift)?, config)?;
        for &big_n in ns.iter().filter(|&&m| m >= n) {
            let base = a_n_element(c, big_n);
            let shifted = a_n_element(&bigger, big_n);
            let (num, den) = match base.terms().next() {
                Some((g, v)) => (shifted.coeff(&g), v.clone()),
                None => (Coeff::zero(), Coeff::from(1)),
            };
            let proportional = base.scale(&num) == shifted.scale(&den);
            let g = num.gcd(&den);
            let (p, q) = (&num / &g, &den / &g);
            let measured = if q == Coeff::from(1) { p.to_string() } else { format!("{p}/{q}") };
            let falling: Coeff = (0..shift)
                .map(|i| Coeff::from(big_n as i64 - n as i64 - i as i64).max(Coeff::zero()))
                .product();
            out.push(AmbientShift { shift, big_n, proportional, measured, falling_factorial: falling.to_string() });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub family: FamilyDescriptor,
    #[serde(rename = "N")]
    pub big_n: usize,
    /// Number of classes of `G_N`, the rank of `Z(G_N//K_N)`.
    pub classes: usize,
    /// Number of elements `A_N[r]`, `r` of ambient at most `N`.
    pub generators: usize,
    pub rank: usize,
    /// Index of the span in `Z(G_N//K_N)`; `None` when the rank is deficient.
    pub index: Option<String>,
}

/// Index of the subgroup spanned by all `A_N[r]` (`r` of ambient `≤ N`)
/// inside the integer class functions on `G_N`.
pub fn span_index(family: &FamilyDescriptor, big_n: usize, config: &Config) -> Result<SpanReport> {
    let targets = class_enumerate(family, big_n, config)?;
    let mut rows: Vec<Vec<Coeff>> = Vec::new();
    for j in 0..=big_n {
        for r in class_enumerate(family, j, config)? {
            let a = a_n_element(&r, big_n);
            rows.push(targets.iter().map(|t| a.coeff(t.rep())).collect());
        }
    }
    let generators = rows.len();
    let pivots = echelon_pivots(rows, targets.len());
    let rank = pivots.len();
    let index = (rank == targets.len()).then(|| pivots.iter().fold(Coeff::from(1), |acc, p| acc * p.abs()).to_string());
    Ok(SpanReport { family: family.clone(), big_n, classes: targets.len(), generators, rank, index })
}

/// Integer row reduction to echelon form; returns the pivot entries.
fn echelon_pivots(mut rows: Vec<Vec<Coeff>>, width: usize) -> Vec<Coeff> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        loop {
            // smallest nonzero entry in this column moves to the top row
            let best = (top..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[top][col]);
                let pivot_row = rows[top].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                pivots.push(rows[top][col].clone());
                top += 1;
                break;
            }
        }
        if top == rows.len() {
            break;
        }
    }
    pivots
}
