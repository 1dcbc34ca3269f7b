//! Structure-constant tables.

use crate::algebra::{basis_star, Coeff};
use crate::conjugacy::{class_enumerate, ConjClass};
use crate::element::FamilyDescriptor;
use crate::error::Result;
use crate::exec::Config;

/// One row `family,g,h,r,coeff` with `coeff ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub family: String,
    pub g: ConjClass,
    pub h: ConjClass,
    pub r: ConjClass,
    pub coeff: Coeff,
}

/// All classes with ambient at most `n_max`, in class order.
pub fn basis_up_to(family: &FamilyDescriptor, n_max: usize, config: &Config) -> Result<Vec<ConjClass>> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        out.extend(class_enumerate(family, n, config)?);
    }
    Ok(out)
}

/// Structure constants `a^r_{g,h}` for all ordered basis pairs with ambients
/// at most `n_max`, sorted by `(g, h, r)`.
pub fn structure_table(family: &FamilyDescriptor, n_max: usize, config: &Config) -> Result<Vec<TableRow>> {
    let basis = basis_up_to(family, n_max, config)?;
    let mut rows = Vec::new();
    for g in &basis {
        for h in &basis {
            for (r, coeff) in basis_star(g, h, config)?.terms() {
                rows.push(TableRow {
                    family: family.to_string(),
                    g: g.clone(),
                    h: h.clone(),
                    r: r.clone(),
                    coeff: coeff.clone(),
                });
            }
        }
    }
    Ok(rows)
}
