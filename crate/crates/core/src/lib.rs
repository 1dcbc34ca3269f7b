//! Exact stable algebras of conjugacy classes for symmetric-group families.
//!
//! For a family `G_n ⊂ S(X ∪ (I × J_n))` (row-wise products of symmetric
//! groups, or the full symmetric group of `X ∪ J_n`) with `K_n = S_n`
//! permuting columns, the classes of all `G_n//K_n` form the basis of an
//! associative algebra whose integer structure constants do not depend on
//! `N`. This crate computes those constants by gluing along partial
//! bijections and checks them against brute-force group algebras.

pub mod algebra;
pub mod conjugacy;
pub mod diagnose;
pub mod element;
pub mod error;
pub mod exec;
pub mod json;
pub mod local;
pub mod oracle;
pub mod partial;
pub mod perm;
pub mod surfaces;
pub mod table;

pub use algebra::{
    basis_star, bracket_graded, bullet, canonical_placement, glue, glue_element, involution, star, AlgebraElement,
    Coeff,
};
pub use conjugacy::{canonicalize, class_enumerate, class_inverse, class_sizes, parse_class, ConjClass};
pub use element::{FamilyDescriptor, GroupElement, Point};
pub use error::{Error, Result};
pub use exec::{Config, Strategy};
pub use local::{ColumnSet, LocalBijection};
pub use oracle::{
    a_n_element, b_n_element, verify_local_stability, verify_stability, GroupAlgebraElement, LocalBijAlgebraElement,
    StabilityReport,
};
pub use partial::{pb_count, pb_enumerate, theta, PartialBijection};
pub use perm::Permutation;
pub use surfaces::{surface_star, CheckerSurface, ExportFormat, TopologyReport};
