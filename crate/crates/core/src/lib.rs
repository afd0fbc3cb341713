//! Complex-distance potential theory.
//!
//! The Euclidean distance `r(x)` continued holomorphically to `γ(x + iy)`
//! gives a potential `φ(z)` whose source `δ̃(z)` is an extended charge
//! distribution: a rim charge plus single and double layers on a disk
//! (odd `n`) or a rim charge alone (even `n`). In complex spacetime the same
//! source acts as the propagator of the wave equation, and its Clifford
//! counterpart links the elliptic and hyperbolic Dirac operators.
//!
//! Modules, bottom-up:
//!
//! * [`numerics`]: Gauss–Legendre, circle and sphere rules, finite differences.
//! * [`geometry`]: the complex distance, its branch, oblate spheroidal coordinates.
//! * [`potential`]: Newtonian, holomorphic and regularized potentials.
//! * [`source`]: actions of the extended source on test fields, moments, descent.
//! * [`wave`]: spherical-means propagator for the wave-equation Cauchy problem.
//! * [`clifford`]: multivectors, Dirac operators, Cauchy kernel, Borel–Pompeiu.

pub mod clifford;
pub mod error;
pub mod field;
pub mod geometry;
pub mod numerics;
pub mod potential;
pub mod source;
pub mod wave;

pub use error::{Error, Result};
pub use field::{FnField, TestField, C_INFINITY};
pub use geometry::{ComplexDistance, ComplexPoint, DiskSide, PointClass};
pub use num_complex::Complex64;
pub use source::{SourceAction, SourceConfig, SourceParts};
