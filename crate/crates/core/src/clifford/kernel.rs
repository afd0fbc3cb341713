use num_complex::Complex64;

use super::algebra::Multivector;
use crate::geometry::{classify_point, complex_distance, default_tolerance, ComplexPoint, PointClass};
use crate::numerics::unit_sphere_area;
use crate::{Error, Result};

/// `C(z) = z / (ω_n γⁿ)` as a vector of `Cl_n` (generators `e₁ … eₙ`).
///
/// Even `n` needs only `z² = γ²`, so the kernel is singular on the rim alone.
/// Odd `n` carries one factor of `γ` and is cut along the whole branch disk.
pub fn cauchy_kernel(z: &ComplexPoint) -> Result<Multivector> {
    let n = z.dim();
    if n < 2 {
        return Err(Error::Unsupported(format!("Cauchy kernel needs n >= 2, got {n}")));
    }
    let a = z.a();
    if a == 0.0 {
        return cauchy_kernel_real(&z.x);
    }
    let tol = default_tolerance(a);
    let class = classify_point(&z.x, &z.y, tol, None);
    let gamma_n = if n % 2 == 0 {
        if class == PointClass::OnRim {
            return Err(Error::SingularPoint("branching sphere"));
        }
        z.square().powi(n as i32 / 2)
    } else {
        if matches!(class, PointClass::OnRim | PointClass::OnDiskFront | PointClass::OnDiskBack) {
            return Err(Error::SingularPoint("branch disk"));
        }
        complex_distance(z).gamma() * z.square().powi((n as i32 - 1) / 2)
    };
    let scale = 1.0 / (unit_sphere_area(n) * gamma_n);
    Ok(Multivector::vector(1, &z.coords()) * scale)
}

/// `C(x) = x / (ω_n rⁿ)`.
pub fn cauchy_kernel_real(x: &[f64]) -> Result<Multivector> {
    let n = x.len();
    if n < 2 {
        return Err(Error::Unsupported(format!("Cauchy kernel needs n >= 2, got {n}")));
    }
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 {
        return Err(Error::SingularPoint("origin"));
    }
    Ok(Multivector::real_vector(1, x) * (1.0 / (unit_sphere_area(n) * r.powi(n as i32))))
}

/// `C` at `u + iY` when `γ = p + iq` is already known (no branch lookup).
pub(crate) fn cauchy_kernel_with_gamma(u: &[f64], y: &[f64], gamma: Complex64) -> Multivector {
    let n = u.len();
    let z: Vec<Complex64> = u.iter().zip(y).map(|(&re, &im)| Complex64::new(re, im)).collect();
    let gamma_n = if n % 2 == 0 {
        (gamma * gamma).powi(n as i32 / 2)
    } else {
        gamma.powi(n as i32)
    };
    Multivector::vector(1, &z) * (1.0 / (unit_sphere_area(n) * gamma_n))
}

/// Euclidean distance from the real point `w` to the singular set of
/// `C(· + iy)`: the origin when `y = 0`, the closed disk for odd `n`, the
/// rim sphere for even `n`.
pub fn singular_set_distance(w: &[f64], y: &[f64]) -> f64 {
    let n = w.len();
    let a = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    let r2: f64 = w.iter().map(|v| v * v).sum();
    if a == 0.0 {
        return r2.sqrt();
    }
    let par = w.iter().zip(y).map(|(p, q)| p * q).sum::<f64>() / a;
    let perp = (r2 - par * par).max(0.0).sqrt();
    let radial = if n % 2 == 1 { (perp - a).max(0.0) } else { (perp - a).abs() };
    (par * par + radial * radial).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::field::{dirac_apply, DiracMode, MultivectorField, Side};
    use crate::geometry::complex_distance;
    use crate::numerics::FdScheme;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn real_examples() {
        let c = cauchy_kernel(&ComplexPoint::real(vec![1.0, 0.0, 0.0])).unwrap();
        assert!((c.get(&[1]).unwrap().re - 0.0795775).abs() < 1e-7);
        assert!((c.get(&[1]).unwrap().re - 1.0 / (4.0 * PI)).abs() < 1e-16);
        let c2 = cauchy_kernel(&ComplexPoint::real(vec![0.0, 1.0])).unwrap();
        assert!((c2.get(&[2]).unwrap().re - 1.0 / (2.0 * PI)).abs() < 1e-16);
        assert_eq!(c2.terms().len(), 1);
        assert!(matches!(
            cauchy_kernel(&ComplexPoint::real(vec![0.0; 3])),
            Err(Error::SingularPoint(_))
        ));
    }

    #[test]
    fn singular_sets() {
        let y = vec![0.0, 0.0, 1.0];
        let rim3 = ComplexPoint::new(vec![1.0, 0.0, 0.0], y.clone()).unwrap();
        let disk3 = ComplexPoint::new(vec![0.5, 0.0, 0.0], y).unwrap();
        assert!(cauchy_kernel(&rim3).is_err());
        assert!(cauchy_kernel(&disk3).is_err());
        // even n is continuous across the disk
        let y4 = vec![0.0, 0.0, 0.0, 1.0];
        let disk4 = ComplexPoint::new(vec![0.5, 0.0, 0.0, 0.0], y4.clone()).unwrap();
        let rim4 = ComplexPoint::new(vec![0.0, 1.0, 0.0, 0.0], y4).unwrap();
        assert!(cauchy_kernel(&disk4).is_ok());
        assert!(cauchy_kernel(&rim4).is_err());
    }

    #[test]
    fn complex_kernel_reduces_to_real_form() {
        let z = ComplexPoint::new(vec![0.4, -1.0, 0.7], vec![0.0, 0.0, 0.0]).unwrap();
        let a = cauchy_kernel(&z).unwrap();
        let b = cauchy_kernel_real(&z.x).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-16);
        // tiny y: continuous off the source
        let zt = ComplexPoint::new(z.x.clone(), vec![1e-9, 0.0, 2e-9]).unwrap();
        assert!(cauchy_kernel(&zt).unwrap().max_abs_diff(&b) < 1e-8);
    }

    #[test]
    fn kernel_is_odd() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 2..=5 {
            for _ in 0..20 {
                let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.5..0.5)).collect();
                let z = ComplexPoint::new(x, y).unwrap();
                let c = cauchy_kernel(&z).unwrap();
                let cm = cauchy_kernel(&z.neg()).unwrap();
                let g = complex_distance(&z).gamma();
                let gm = complex_distance(&z.neg()).gamma();
                assert!((g - gm).norm() < 1e-12);
                assert!((c.clone() + cm).norm() < 1e-12 * c.norm().max(1.0));
            }
        }
    }

    #[test]
    fn kernel_is_left_and_right_monogenic() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = MultivectorField::cauchy_kernel_shifted(vec![0.0; 3]);
        let scheme = FdScheme::with_step(1e-3);
        for _ in 0..50 {
            let x: Vec<f64> = (0..3)
                .map(|_| rng.gen_range(0.5..1.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
                .collect();
            for side in [Side::Left, Side::Right] {
                let d = dirac_apply(&f, &x, side, DiracMode::Fd, &scheme).unwrap();
                assert!(d.norm() < 1e-6, "{x:?}: {}", d.norm());
            }
        }
    }

    #[test]
    fn complex_kernel_is_monogenic_in_x() {
        let y = vec![0.0, 0.3, 0.0];
        let f = MultivectorField::new(3, move |x| {
            cauchy_kernel(&ComplexPoint::new(x.to_vec(), y.clone()).unwrap()).unwrap()
        });
        let d = dirac_apply(&f, &[0.6, 0.5, -0.4], Side::Left, DiracMode::Fd, &FdScheme::with_step(1e-3))
            .unwrap();
        assert!(d.norm() < 1e-6, "{}", d.norm());
    }

    #[test]
    fn known_gamma_matches_lookup() {
        let z = ComplexPoint::new(vec![0.3, 0.2, 0.9], vec![0.1, -0.4, 0.2]).unwrap();
        let g = complex_distance(&z).gamma();
        let a = cauchy_kernel_with_gamma(&z.x, &z.y, g);
        assert!(a.max_abs_diff(&cauchy_kernel(&z).unwrap()) < 1e-15);
    }

    #[test]
    fn distance_to_singular_set() {
        let y = [0.0, 0.0, 0.5];
        assert!((singular_set_distance(&[0.2, 0.0, 0.3], &y) - 0.3).abs() < 1e-15);
        assert!((singular_set_distance(&[1.5, 0.0, 0.0], &y) - 1.0).abs() < 1e-15);
        let y4 = [0.0, 0.0, 0.0, 0.5];
        assert!((singular_set_distance(&[0.0; 4], &y4) - 0.5).abs() < 1e-15);
        assert_eq!(singular_set_distance(&[3.0, 4.0], &[0.0, 0.0]), 5.0);
        assert!((singular_set_distance(&[0.0, 0.2], &[0.5, 0.0]) - 0.3).abs() < 1e-15);
    }
}
