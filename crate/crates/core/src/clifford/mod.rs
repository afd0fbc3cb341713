//! Complex Clifford algebra, Dirac operators, the Cauchy kernel, the
//! Borel–Pompeiu formulas and the Maxwell extension.
//!
//! Elliptic objects live in `Cl_n` with generators `e₁ … eₙ` paired to the
//! coordinates. The spacetime extension uses `Cl₄` with `e₀` paired to `s`.

mod algebra;
mod borel;
mod domain;
mod field;
mod kernel;
mod maxwell;

pub use algebra::{Multivector, MAX_GENERATORS};
pub use borel::{borel_pompeiu, extended_borel_pompeiu, BpConfig, BpResult};
pub use domain::{regular_point, BoundaryNode, Domain, Shape};
pub use field::{dirac_apply, DiracMode, MultivectorField, MvPolynomial, PolyTerm, Side};
pub use kernel::{cauchy_kernel, cauchy_kernel_real, singular_set_distance};
pub use maxwell::{
    bivector_example, current, dirac_squared, extend_field, maxwell_extend, MaxwellConfig,
    MaxwellPoint, MvSpacetimeField, MAXWELL_DIM,
};
