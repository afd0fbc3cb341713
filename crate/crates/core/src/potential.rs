//! Newtonian, holomorphic and regularized potentials.

use num_complex::Complex64;

use crate::geometry::{
    classify_point, complex_distance_sided, default_tolerance, ComplexPoint, DiskSide, PointClass,
};
use crate::numerics::unit_sphere_area;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialKind {
    Newtonian,
    Holomorphic,
    Regularized { eps: f64 },
}

/// A potential evaluated at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialValue {
    pub value: Complex64,
    pub at: ComplexPoint,
    pub kind: PotentialKind,
}

fn check_dim(n: usize, len: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "potentials are evaluated for n >= 3, got n = {n}"
        )));
    }
    if len != n {
        return Err(Error::DimensionMismatch { expected: n, got: len });
    }
    Ok(())
}

fn prefactor(n: usize) -> f64 {
    1.0 / (unit_sphere_area(n) * (2.0 - n as f64))
}

/// `r^{2−n} / (ω_n (2 − n))`, the fundamental solution of the Laplacian.
pub fn newtonian(x: &[f64], n: usize) -> Result<f64> {
    check_dim(n, x.len())?;
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 {
        return Err(Error::SingularPoint("newtonian potential at the origin"));
    }
    Ok(prefactor(n) * r.powi(2 - n as i32))
}

/// `γ^{2−n} / (ω_n (2 − n))`.
///
/// On the rim `γ = 0` and the potential is singular. For odd `n` the open
/// disk is a branch cut and `side` must say which face is meant; for even
/// `n` the power is single valued and `side` is ignored.
pub fn holomorphic_potential(z: &ComplexPoint, n: usize, side: Option<DiskSide>) -> Result<Complex64> {
    check_dim(n, z.dim())?;
    let tol = default_tolerance(z.a());
    let class = classify_point(&z.x, &z.y, tol, side);
    match class {
        PointClass::OnRim => return Err(Error::SingularPoint("holomorphic potential on the rim")),
        PointClass::OnDiskFront | PointClass::OnDiskBack if n % 2 == 1 && side.is_none() => {
            return Err(Error::AmbiguousBranch)
        }
        PointClass::YZero => return newtonian(&z.x, n).map(|v| Complex64::new(v, 0.0)),
        _ => {}
    }
    let g = complex_distance_sided(z, side.unwrap_or_default()).gamma();
    if g == Complex64::new(0.0, 0.0) {
        return Err(Error::SingularPoint("holomorphic potential at gamma = 0"));
    }
    Ok(g.powi(2 - n as i32) * prefactor(n))
}

/// `θ(p − ε) φ(z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regularized {
    Value(Complex64),
    /// `p = ε` exactly: the values just inside and just outside the spheroid.
    Jump { inside: Complex64, outside: Complex64 },
}

pub fn regularized_potential(z: &ComplexPoint, n: usize, eps: f64) -> Result<Regularized> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    check_dim(n, z.dim())?;
    let p = complex_distance_sided(z, DiskSide::Front).p;
    let zero = Complex64::new(0.0, 0.0);
    if p < eps {
        Ok(Regularized::Value(zero))
    } else if p > eps {
        // p > ε > 0 keeps z off the disk and the rim
        Ok(Regularized::Value(holomorphic_potential(z, n, None)?))
    } else {
        Ok(Regularized::Jump {
            inside: zero,
            outside: holomorphic_potential(z, n, None)?,
        })
    }
}
