//! The complex distance `γ(x + iy) = √(r² − a² + 2i x·y) = p + iq` with the
//! branch `p ≥ 0`, and the oblate spheroidal coordinates it induces.
//!
//! For fixed `y ≠ 0`, `γ = 0` on the branching sphere `B(y)` (radius `a = |y|`
//! in the hyperplane `y^⊥`) and the cut is the disk `E₀(y)` bounded by it.
//! `p` is continuous across the disk while `q = ±√(a² − r²)` jumps, so a point
//! exactly on the open disk needs an explicit [`DiskSide`].

use num_complex::Complex64;

use crate::numerics::{unit_sphere_area, SphereFrame};
use crate::{Error, Result};

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn norm(u: &[f64]) -> f64 {
    dot(u, u).sqrt()
}

/// A point `z = x + iy` of `Cⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl ComplexPoint {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::InvalidArgument("empty point".into()));
        }
        Ok(Self { x, y })
    }

    pub fn real(x: Vec<f64>) -> Self {
        let y = vec![0.0; x.len()];
        Self { x, y }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// `r = |x|`.
    pub fn r(&self) -> f64 {
        norm(&self.x)
    }

    /// `a = |y|`.
    pub fn a(&self) -> f64 {
        norm(&self.y)
    }

    /// `z·z = r² − a² + 2i x·y`.
    pub fn square(&self) -> Complex64 {
        Complex64::new(
            dot(&self.x, &self.x) - dot(&self.y, &self.y),
            2.0 * dot(&self.x, &self.y),
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            x: self.x.iter().map(|v| -v).collect(),
            y: self.y.iter().map(|v| -v).collect(),
        }
    }

    pub fn coords(&self) -> Vec<Complex64> {
        self.x
            .iter()
            .zip(&self.y)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect()
    }
}

/// Which face of the branch disk a point is approached from: the front has
/// `q > 0` (approach from `ζ > 0`), the back `q < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiskSide {
    #[default]
    Front,
    Back,
}

/// `γ = p + iq`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexDistance {
    pub p: f64,
    pub q: f64,
}

impl ComplexDistance {
    pub fn gamma(&self) -> Complex64 {
        Complex64::new(self.p, self.q)
    }

    /// `γ̄γ = p² + q²`.
    pub fn modulus_squared(&self) -> f64 {
        self.p * self.p + self.q * self.q
    }
}

/// `γ(z)` with `Re γ ≥ 0`; on the open disk the front side is reported.
pub fn complex_distance(z: &ComplexPoint) -> ComplexDistance {
    complex_distance_sided(z, DiskSide::Front)
}

/// `γ(z)` with `Re γ ≥ 0`, resolving the disk jump with `side`.
pub fn complex_distance_sided(z: &ComplexPoint, side: DiskSide) -> ComplexDistance {
    let w = z.square();
    let (re, im) = (w.re, w.im);
    let t = (0.5 * (w.norm() + re.abs())).sqrt();
    if t == 0.0 {
        return ComplexDistance { p: 0.0, q: 0.0 };
    }
    if re >= 0.0 {
        ComplexDistance {
            p: t,
            q: im / (2.0 * t),
        }
    } else if im == 0.0 {
        let q = match side {
            DiskSide::Front => t,
            DiskSide::Back => -t,
        };
        ComplexDistance { p: 0.0, q }
    } else {
        ComplexDistance {
            p: im.abs() / (2.0 * t),
            q: t.copysign(im),
        }
    }
}

/// Position of a real point relative to the singular sets of `γ(· + iy)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    Regular,
    OnDiskFront,
    OnDiskBack,
    OnRim,
    AxisDegenerate,
    YZero,
}

impl PointClass {
    pub fn name(&self) -> &'static str {
        match self {
            PointClass::Regular => "Regular",
            PointClass::OnDiskFront => "OnDiskFront",
            PointClass::OnDiskBack => "OnDiskBack",
            PointClass::OnRim => "OnRim",
            PointClass::AxisDegenerate => "AxisDegenerate",
            PointClass::YZero => "YZero",
        }
    }
}

/// `1e−12 · max(1, a)`.
pub fn default_tolerance(a: f64) -> f64 {
    1e-12 * a.max(1.0)
}

pub fn classify_point(x: &[f64], y: &[f64], tol: f64, side: Option<DiskSide>) -> PointClass {
    let a = norm(y);
    if a <= tol {
        return PointClass::YZero;
    }
    let r = norm(x);
    let xy = dot(x, y);
    let in_plane = xy.abs() <= tol * a;
    if in_plane && (r - a).abs() <= tol {
        return PointClass::OnRim;
    }
    if in_plane && r < a - tol {
        return match side.unwrap_or_default() {
            DiskSide::Front => PointClass::OnDiskFront,
            DiskSide::Back => PointClass::OnDiskBack,
        };
    }
    let zeta = xy / a;
    let rho = (r * r - zeta * zeta).max(0.0).sqrt();
    if rho <= tol {
        return PointClass::AxisDegenerate;
    }
    PointClass::Regular
}

/// Orthonormal frame of `y^⊥`, by Gram–Schmidt on the standard basis with
/// the basis vector along the largest `|y_i|` dropped.
pub fn axis_frame(y: &[f64]) -> Result<SphereFrame> {
    let a = norm(y);
    if a == 0.0 {
        return Err(Error::YZero);
    }
    let n = y.len();
    let pivot = (0..n)
        .max_by(|&i, &j| y[i].abs().total_cmp(&y[j].abs()).then(j.cmp(&i)))
        .expect("non-empty y");
    let mut basis: Vec<Vec<f64>> = vec![y.iter().map(|v| v / a).collect()];
    for i in (0..n).filter(|&i| i != pivot) {
        let mut v: Vec<f64> = (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect();
        // two passes keep the frame orthonormal to rounding
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&v, b);
                v.iter_mut().zip(b).for_each(|(vi, bi)| *vi -= c * bi);
            }
        }
        let len = norm(&v);
        basis.push(v.into_iter().map(|vi| vi / len).collect());
    }
    basis.remove(0);
    SphereFrame::new(basis)
}

/// `ρ = √((a² + p²)(a² − q²)) / a`.
pub fn rho_from_pq(p: f64, q: f64, a: f64) -> f64 {
    ((a * a + p * p) * (a * a - q * q)).max(0.0).sqrt() / a
}

/// `ζ = pq / a`.
pub fn zeta_from_pq(p: f64, q: f64, a: f64) -> f64 {
    p * q / a
}

/// Cylindrical coordinates about the axis `ŷ`: `x = ρσ + ζŷ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CylCoords {
    pub rho: f64,
    pub zeta: f64,
    /// Components of `σ` in [`axis_frame`]; `None` on the axis.
    pub sigma: Option<Vec<f64>>,
}

pub fn to_cylindrical(x: &[f64], y: &[f64]) -> Result<CylCoords> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: y.len(),
            got: x.len(),
        });
    }
    let a = norm(y);
    if a == 0.0 {
        return Err(Error::YZero);
    }
    let frame = axis_frame(y)?;
    let zeta = dot(x, y) / a;
    let comps: Vec<f64> = frame.vectors().iter().map(|v| dot(x, v)).collect();
    let rho = norm(&comps);
    let sigma = (rho > default_tolerance(norm(x))).then(|| comps.iter().map(|c| c / rho).collect());
    Ok(CylCoords { rho, zeta, sigma })
}

/// Oblate spheroidal coordinates `(p, q, σ)` adapted to `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct OblateCoords {
    pub p: f64,
    pub q: f64,
    pub sigma: Option<Vec<f64>>,
}

pub fn to_oblate(x: &[f64], y: &[f64]) -> Result<OblateCoords> {
    let cyl = to_cylindrical(x, y)?;
    let sigma = cyl.sigma.ok_or(Error::AxisDegenerate)?;
    let z = ComplexPoint::new(x.to_vec(), y.to_vec())?;
    let g = complex_distance(&z);
    Ok(OblateCoords {
        p: g.p,
        q: g.q,
        sigma: Some(sigma),
    })
}

pub fn from_oblate(c: &OblateCoords, y: &[f64]) -> Result<Vec<f64>> {
    let a = norm(y);
    if a == 0.0 {
        return Err(Error::YZero);
    }
    if c.p < 0.0 || c.q.abs() > a * (1.0 + 1e-12) {
        return Err(Error::InvalidArgument(format!(
            "oblate coordinates need p >= 0 and |q| <= a, got p={}, q={}",
            c.p, c.q
        )));
    }
    let rho = rho_from_pq(c.p, c.q, a);
    let zeta = zeta_from_pq(c.p, c.q, a);
    let mut x: Vec<f64> = y.iter().map(|v| zeta * v / a).collect();
    let on_axis = rho <= default_tolerance(a);
    match (&c.sigma, on_axis) {
        (Some(_), true) => Err(Error::AxisDegenerate),
        (None, true) => Ok(x),
        (None, false) => Err(Error::MissingDirection),
        (Some(sigma), false) => {
            let frame = axis_frame(y)?;
            if sigma.len() != frame.vectors().len() {
                return Err(Error::DimensionMismatch {
                    expected: frame.vectors().len(),
                    got: sigma.len(),
                });
            }
            if (norm(sigma) - 1.0).abs() > 1e-10 {
                return Err(Error::InvalidArgument("sigma must be a unit vector".into()));
            }
            let mut dir = vec![0.0; y.len()];
            frame.embed_into(sigma, &mut dir);
            x.iter_mut().zip(&dir).for_each(|(xi, d)| *xi += rho * d);
            Ok(x)
        }
    }
}

/// Density of `dx` in `(p, q, σ)` with normalized `dσ`:
/// `(ω_{n−1}/a) ρ^{n−3} (p² + q²)`.
pub fn jacobian_volume(p: f64, q: f64, a: f64, n: usize) -> Result<f64> {
    if !(a > 0.0) || p < 0.0 || q.abs() > a || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "jacobian needs a > 0, p >= 0, |q| <= a, n >= 2; got a={a}, p={p}, q={q}, n={n}"
        )));
    }
    let rho = rho_from_pq(p, q, a);
    Ok(unit_sphere_area(n - 1) / a * rho.powi(n as i32 - 3) * (p * p + q * q))
}

/// `∇p = (p x + q y)/|γ|²` and `∇q = (p y − q x)/|γ|²`, gradients in `x`.
pub fn grad_pq(x: &[f64], y: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let z = ComplexPoint::new(x.to_vec(), y.to_vec())?;
    let g = complex_distance(&z);
    let m = g.modulus_squared();
    if m == 0.0 {
        return Err(Error::SingularPoint("gradient of p, q at gamma = 0"));
    }
    let gp = x.iter().zip(y).map(|(xi, yi)| (g.p * xi + g.q * yi) / m).collect();
    let gq = x.iter().zip(y).map(|(xi, yi)| (g.p * yi - g.q * xi) / m).collect();
    Ok((gp, gq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pt(x: &[f64], y: &[f64]) -> ComplexPoint {
        ComplexPoint::new(x.to_vec(), y.to_vec()).unwrap()
    }

    #[test]
    fn distance_examples() {
        let g = complex_distance(&pt(&[2.0, 0.0, 0.0], &[0.0, 0.0, 1.0]));
        assert_relative_eq!(g.p, 3f64.sqrt(), epsilon = 1e-15);
        assert_eq!(g.q, 0.0);

        let g = complex_distance(&pt(&[1.0, -2.0, 2.0], &[0.0; 3]));
        assert_relative_eq!(g.p, 3.0, epsilon = 1e-15);
        assert_eq!(g.q, 0.0);

        let g = complex_distance(&pt(&[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0]));
        assert_relative_eq!(g.p, 1.0, epsilon = 1e-15);
        assert_relative_eq!(g.q, 1.0, epsilon = 1e-15);

        let rim = pt(&[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]);
        let g = complex_distance(&rim);
        assert_eq!((g.p, g.q), (0.0, 0.0));
        assert_eq!(
            classify_point(&rim.x, &rim.y, 1e-12, None),
            PointClass::OnRim
        );
    }

    #[test]
    fn disk_jump_follows_side() {
        let z = pt(&[0.6, 0.0, 0.0], &[0.0, 0.0, 1.0]);
        let front = complex_distance_sided(&z, DiskSide::Front);
        let back = complex_distance_sided(&z, DiskSide::Back);
        assert_eq!(front.p, 0.0);
        assert_relative_eq!(front.q, 0.8, epsilon = 1e-15);
        assert_relative_eq!(back.q, -0.8, epsilon = 1e-15);
        // limits from either side agree with the sided values
        let above = complex_distance(&pt(&[0.6, 0.0, 1e-9], &[0.0, 0.0, 1.0]));
        let below = complex_distance(&pt(&[0.6, 0.0, -1e-9], &[0.0, 0.0, 1.0]));
        assert_relative_eq!(above.q, 0.8, epsilon = 1e-8);
        assert_relative_eq!(below.q, -0.8, epsilon = 1e-8);
    }

    #[test]
    fn classification_examples() {
        let y = [0.0, 0.0, 1.0];
        assert_eq!(
            classify_point(&[0.5, 0.0, 0.0], &y, 1e-12, None),
            PointClass::OnDiskFront
        );
        assert_eq!(
            classify_point(&[0.5, 0.0, 0.0], &y, 1e-12, Some(DiskSide::Back)),
            PointClass::OnDiskBack
        );
        assert_eq!(
            classify_point(&[0.0, 0.0, 3.0], &y, 1e-12, None),
            PointClass::AxisDegenerate
        );
        assert_eq!(
            classify_point(&[1.0, 2.0, 3.0], &[0.0; 3], 1e-12, None),
            PointClass::YZero
        );
        assert_eq!(
            classify_point(&[1.0, 2.0, 3.0], &y, 1e-12, None),
            PointClass::Regular
        );
    }

    #[test]
    fn oblate_example() {
        let y = [0.0, 0.0, 1.0];
        let c = to_oblate(&[1.0, 0.0, 1.0], &y).unwrap();
        assert_relative_eq!(c.p, 1.272_019_649_514_069, epsilon = 1e-12);
        assert_relative_eq!(c.q, 0.786_151_377_757_423_3, epsilon = 1e-12);
        assert_relative_eq!(c.p * c.q, 1.0, epsilon = 1e-14);
        let sigma = c.sigma.clone().unwrap();
        assert_relative_eq!(sigma[0], 1.0);
        assert_relative_eq!(sigma[1], 0.0);
        let back = from_oblate(&c, &y).unwrap();
        for (u, v) in back.iter().zip([1.0, 0.0, 1.0]) {
            assert_relative_eq!(*u, v, epsilon = 1e-12);
        }
    }

    #[test]
    fn from_oblate_on_axis() {
        let y = [0.0, 0.0, 1.0];
        let with_sigma = OblateCoords {
            p: 2.0,
            q: 1.0,
            sigma: Some(vec![1.0, 0.0]),
        };
        assert_eq!(from_oblate(&with_sigma, &y), Err(Error::AxisDegenerate));
        let without = OblateCoords {
            p: 2.0,
            q: 1.0,
            sigma: None,
        };
        assert_eq!(from_oblate(&without, &y).unwrap(), vec![0.0, 0.0, 2.0]);
        let off_axis = OblateCoords {
            p: 1.0,
            q: 0.5,
            sigma: None,
        };
        assert_eq!(from_oblate(&off_axis, &y), Err(Error::MissingDirection));
    }

    #[test]
    fn front_disk_point_from_coordinates() {
        let y = [0.0, 0.0, 1.0];
        let rho: f64 = 0.6;
        let c = OblateCoords {
            p: 0.0,
            q: (1.0 - rho * rho).sqrt(),
            sigma: Some(vec![0.0, 1.0]),
        };
        let x = from_oblate(&c, &y).unwrap();
        assert_relative_eq!(x[1], rho, epsilon = 1e-15);
        assert_eq!(x[2], 0.0);
    }

    #[test]
    fn to_oblate_degenerate_cases() {
        assert_eq!(to_oblate(&[0.0, 0.0, 2.0], &[0.0, 0.0, 1.0]), Err(Error::AxisDegenerate));
        assert_eq!(to_oblate(&[1.0, 0.0, 2.0], &[0.0; 3]), Err(Error::YZero));
    }

    #[test]
    fn jacobian_examples() {
        let j = jacobian_volume(1.0, 0.5, 1.0, 3).unwrap();
        assert_relative_eq!(j, 2.0 * std::f64::consts::PI * 1.25, epsilon = 1e-14);
        assert_eq!(jacobian_volume(0.0, 0.0, 1.0, 3).unwrap(), 0.0);
        assert_eq!(jacobian_volume(0.0, 0.0, 1.0, 4).unwrap(), 0.0);
        assert!(jacobian_volume(1.0, 2.0, 1.0, 3).is_err());
    }

    #[test]
    fn gradient_example() {
        let (gp, gq) = grad_pq(&[2.0, 0.0, 0.0], &[0.0, 0.0, 1.0]).unwrap();
        assert_relative_eq!(gp[0], 2.0 / 3f64.sqrt(), epsilon = 1e-14);
        assert_eq!(gp[1], 0.0);
        assert_eq!(gp[2], 0.0);
        // ∇q = p y / |γ|² = (0, 0, 1/√3)
        assert_relative_eq!(gq[2], 1.0 / 3f64.sqrt(), epsilon = 1e-14);
        assert!(grad_pq(&[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn frame_for_general_axis() {
        let y = [0.3, -2.0, 0.7, 1.1];
        let frame = axis_frame(&y).unwrap();
        assert_eq!(frame.vectors().len(), 3);
        for v in frame.vectors() {
            assert!(dot(v, &y).abs() < 1e-14);
        }
    }
}
