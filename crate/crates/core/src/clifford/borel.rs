use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::algebra::Multivector;
use super::domain::{regular_point, Domain};
use super::field::{dirac_apply, DiracMode, MultivectorField, Side};
use super::kernel::{cauchy_kernel, cauchy_kernel_real, cauchy_kernel_with_gamma};
use crate::geometry::{axis_frame, complex_distance, jacobian_volume, rho_from_pq, zeta_from_pq, ComplexPoint};
use crate::numerics::{unit_sphere_area, CircleRule, FdScheme, GaussLegendre};
use crate::{Error, Result};

/// The two integrals of a Borel–Pompeiu formula and their difference.
#[derive(Debug, Clone, PartialEq)]
pub struct BpResult {
    pub boundary: Multivector,
    pub volume: Multivector,
    pub value: Multivector,
}

/// Derivative settings for `Df` inside the volume integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BpConfig {
    pub fd: FdScheme,
    /// Gauss–Legendre panels along each ray of the polar volume rule.
    pub radial_panels: usize,
}

impl Default for BpConfig {
    fn default() -> Self {
        Self {
            fd: FdScheme::with_step(1e-3),
            radial_panels: 4,
        }
    }
}

fn dirac_of(f: &MultivectorField, x: &[f64], cfg: &BpConfig) -> Result<Multivector> {
    let mode = if f.polynomial().is_some() {
        DiracMode::ExactPoly
    } else {
        DiracMode::Fd
    };
    dirac_apply(f, x, Side::Left, mode, &cfg.fd)
}

fn check_dims(f: &MultivectorField, m: &Domain, n: usize) -> Result<()> {
    if f.dim() != m.dim() || n != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: if f.dim() != m.dim() { f.dim() } else { n },
        });
    }
    if n < 2 {
        return Err(Error::Unsupported("Borel-Pompeiu needs n >= 2".into()));
    }
    Ok(())
}

/// `Σ_b w_b K(x_b) n(x_b) f(x_b)` for a kernel `K` evaluated at boundary nodes.
fn boundary_term(
    f: &MultivectorField,
    m: &Domain,
    kernel: impl Fn(&[f64]) -> Result<Multivector>,
) -> Result<Multivector> {
    let n = m.dim();
    let mut acc = Multivector::zero(n, 1);
    for b in m.boundary_nodes() {
        let k = kernel(&b.point)?;
        let normal = Multivector::real_vector(1, &b.normal);
        acc = acc + k.mv_mul(&normal)?.mv_mul(&f.eval(&b.point))? * b.weight;
    }
    Ok(acc)
}

/// Breaks `0 = r₀ < … < r_k = len` of equal width.
fn uniform(len: f64, panels: usize) -> Vec<f64> {
    (0..=panels).map(|i| len * i as f64 / panels as f64).collect()
}

/// `∫_M h(x′) dx′` in polar coordinates about the interior point `x`;
/// `ray(ω, ρ)` returns `h(x + ρω) ρ^{n−1}`.
fn polar_volume(
    m: &Domain,
    x: &[f64],
    cfg: &BpConfig,
    mut ray: impl FnMut(&[f64], f64) -> Result<Multivector>,
) -> Result<Multivector> {
    let mut acc = Multivector::zero(m.dim(), 1);
    for (omega, rho, w) in m.polar_nodes(x, cfg.radial_panels) {
        acc = acc + ray(&omega, rho)? * w;
    }
    Ok(acc)
}

/// `∫_{∂M} C(x′−x) n(x′) f(x′) dσ − ∫_M C(x′−x) Df(x′) dx′`, which is `f(x)`
/// inside `M` and `0` outside.
pub fn borel_pompeiu(f: &MultivectorField, m: &Domain, x: &[f64], cfg: &BpConfig) -> Result<BpResult> {
    check_dims(f, m, x.len())?;
    if m.on_boundary(x) {
        return Err(Error::OnBoundary);
    }
    let n = x.len();
    let boundary = boundary_term(f, m, |xb| {
        let u: Vec<f64> = xb.iter().zip(x).map(|(a, b)| a - b).collect();
        cauchy_kernel_real(&u)
    })?;
    let volume = if m.contains(x) {
        // C(ρω) ρ^{n−1} = ω / ω_n, so the singularity cancels
        let inv_area = 1.0 / unit_sphere_area(n);
        polar_volume(m, x, cfg, |omega, rho| {
            let p: Vec<f64> = x.iter().zip(omega).map(|(a, w)| a + rho * w).collect();
            Multivector::real_vector(1, omega).mv_mul(&dirac_of(f, &p, cfg)?).map(|v| v * inv_area)
        })?
    } else {
        let mut acc = Multivector::zero(n, 1);
        for (p, w) in m.volume_nodes() {
            let u: Vec<f64> = p.iter().zip(x).map(|(a, b)| a - b).collect();
            acc = acc + cauchy_kernel_real(&u)?.mv_mul(&dirac_of(f, &p, cfg)?)? * w;
        }
        acc
    };
    let value = boundary.clone() - volume.clone();
    Ok(BpResult {
        boundary,
        volume,
        value,
    })
}

/// Where the kernel singularity `x + S_n(y)` sits relative to `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DiskPlacement {
    Inside,
    Outside,
    Straddling,
}

fn disk_placement(m: &Domain, x: &[f64], y: &[f64]) -> Result<DiskPlacement> {
    let a = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    let frame = axis_frame(y)?;
    let circle = CircleRule::new(64);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..=8 {
        let rho = a * k as f64 / 8.0;
        for phi in circle.angles() {
            let mut p = x.to_vec();
            let mut dir = vec![0.0; x.len()];
            frame.embed_into(&[phi.cos(), phi.sin()], &mut dir);
            p.iter_mut().zip(&dir).for_each(|(pi, d)| *pi += rho * d);
            let sd = m.signed_distance(&p);
            lo = lo.min(sd);
            hi = hi.max(sd);
        }
    }
    Ok(if lo > 0.0 {
        DiskPlacement::Inside
    } else if hi < 0.0 {
        DiskPlacement::Outside
    } else {
        DiskPlacement::Straddling
    })
}

/// The Borel–Pompeiu formula with kernel `C(x′ − z)`, `z = x + iy`.
///
/// Returns `f̃_M(z) = ∫ δ̃(x′ − z) χ_M f(x′) dx′`, the extension of `f` cut off
/// to `M`. Real `z` reduces to [`borel_pompeiu`]. For complex `z` only `n = 3`
/// is supported: the kernel grows like `|γ|^{−n}` on the rim and is locally
/// integrable there only for `n = 3`.
///
/// The kernel is taken in the distributional sense: for odd `n` it carries
/// a layer on the branch disk, where `φ(x′ − z)` jumps. With the branch disk
/// inside `M` the volume integral is split at an oblate spheroid about the
/// disk: inside it oblate coordinates cancel the kernel's growth at the rim,
/// outside it rays from `x` start on the spheroid. With the disk outside `M`
/// plain product quadrature is used.
pub fn extended_borel_pompeiu(
    f: &MultivectorField,
    m: &Domain,
    z: &ComplexPoint,
    cfg: &BpConfig,
) -> Result<BpResult> {
    check_dims(f, m, z.dim())?;
    if !regular_point(z, m)? {
        return Err(Error::NotRegular);
    }
    let a = z.a();
    if a == 0.0 {
        return borel_pompeiu(f, m, &z.x, cfg);
    }
    let n = z.dim();
    if n != 3 {
        return Err(Error::Unsupported(format!(
            "extended Borel-Pompeiu with y != 0 needs n = 3, got {n}"
        )));
    }
    let x = &z.x;
    // C(x′ − z) = C(u + iY) with u = x′ − x, Y = −y
    let axis: Vec<f64> = z.y.iter().map(|v| -v).collect();
    let kernel_at = |u: &[f64]| cauchy_kernel(&ComplexPoint::new(u.to_vec(), axis.clone())?);
    let boundary = boundary_term(f, m, |xb| {
        let u: Vec<f64> = xb.iter().zip(x).map(|(a, b)| a - b).collect();
        kernel_at(&u)
    })?;
    let volume = match disk_placement(m, x, &z.y)? {
        DiskPlacement::Straddling => {
            return Err(Error::Unsupported(
                "branch disk crosses the boundary of M".into(),
            ))
        }
        DiskPlacement::Outside => {
            let mut acc = Multivector::zero(n, 1);
            for (p, w) in m.volume_nodes() {
                let u: Vec<f64> = p.iter().zip(x).map(|(a, b)| a - b).collect();
                acc = acc + kernel_at(&u)?.mv_mul(&dirac_of(f, &p, cfg)?)? * w;
            }
            acc
        }
        DiskPlacement::Inside => split_volume(f, m, x, &axis, cfg)?,
    };
    let value = boundary.clone() - volume.clone();
    Ok(BpResult {
        boundary,
        volume,
        value,
    })
}

/// Near/far evaluation of `∫_M C(x′ − z) Df(x′) dx′` for `n = 3` with the
/// disk inside `M`. `axis` is `Y = −y`.
fn split_volume(
    f: &MultivectorField,
    m: &Domain,
    x: &[f64],
    axis: &[f64],
    cfg: &BpConfig,
) -> Result<Multivector> {
    let n = x.len();
    let a = axis.iter().map(|v| v * v).sum::<f64>().sqrt();
    let reach = 0.8 * m.signed_distance(x);
    if reach <= 1.1 * a {
        return Err(Error::Unsupported(
            "branch disk too close to the boundary for the near-zone rule".into(),
        ));
    }
    // near zone: the oblate spheroid p ≤ p₀, whose semi-axes √(a² + p₀²) and
    // p₀ keep it within |u| ≤ reach
    let p0 = (reach * reach - a * a).sqrt();
    let order = m.volume_order;
    let gl = GaussLegendre::new(order);
    let frame = axis_frame(axis)?;
    let unit_axis: Vec<f64> = axis.iter().map(|v| v / a).collect();
    let circle = CircleRule::new(2 * order);

    // (p, q) = R(cos φ, sin φ) over the rectangle [0, p₀] × [−a, a]; the
    // Jacobian R(p² + q²) cancels the R⁻³ growth of the kernel at the rim
    let corner = (a / p0).atan();
    let sectors = [(-FRAC_PI_2, -corner), (-corner, corner), (corner, FRAC_PI_2)];
    let mut near = Multivector::zero(n, 1);
    for (lo, hi) in sectors {
        for (phi, wphi) in gl.mapped(lo, hi) {
            let (s, c) = phi.sin_cos();
            let rmax = if s == 0.0 { p0 / c } else { (p0 / c).min(a / s.abs()) };
            for pair in uniform(rmax, cfg.radial_panels).windows(2) {
                for (r, wr) in gl.mapped(pair[0], pair[1]) {
                    let (p, q) = (r * c, (r * s).clamp(-a, a));
                    let jac = jacobian_volume(p, q, a, n)?;
                    let rho = rho_from_pq(p, q, a);
                    let zeta = zeta_from_pq(p, q, a);
                    let gamma = Complex64::new(p, q);
                    let mean = circle.mean(|theta| {
                        let mut dir = vec![0.0; n];
                        frame.embed_into(&[theta.cos(), theta.sin()], &mut dir);
                        let u: Vec<f64> =
                            (0..n).map(|i| rho * dir[i] + zeta * unit_axis[i]).collect();
                        let xp: Vec<f64> = x.iter().zip(&u).map(|(a, b)| a + b).collect();
                        let k = cauchy_kernel_with_gamma(&u, axis, gamma);
                        match dirac_of(f, &xp, cfg).and_then(|d| k.mv_mul(&d)) {
                            Ok(v) => v,
                            Err(_) => Multivector::scalar(n, 1, Complex64::new(f64::NAN, f64::NAN)),
                        }
                    });
                    near = near + mean * (jac * r * wphi * wr);
                }
            }
        }
    }
    if !near.is_finite() {
        return Err(Error::NonFiniteIntegrand { at: a });
    }

    // far zone: rays from x start on the spheroid ρ²/(a² + p₀²) + ζ²/p₀² = 1
    let spheroid = |omega: &[f64]| {
        let par: f64 = omega.iter().zip(&unit_axis).map(|(w, y)| w * y).sum();
        let perp2 = (1.0 - par * par).max(0.0);
        1.0 / (perp2 / (a * a + p0 * p0) + par * par / (p0 * p0)).sqrt()
    };
    let mut far = Multivector::zero(n, 1);
    for (omega, rho, w) in m.polar_nodes_beyond(x, cfg.radial_panels, &spheroid) {
        let u: Vec<f64> = omega.iter().map(|v| rho * v).collect();
        let g = complex_distance(&ComplexPoint::new(u.clone(), axis.to_vec())?);
        let xp: Vec<f64> = x.iter().zip(&u).map(|(a, b)| a + b).collect();
        let k = cauchy_kernel_with_gamma(&u, axis, g.gamma());
        far = far + k.mv_mul(&dirac_of(f, &xp, cfg)?)? * (w * rho.powi(n as i32 - 1));
    }

    // jump layer: for odd n the potential φ = −1/(4πγ) jumps by i/(2πQ),
    // Q = √(a² − ρ²), across the disk, so the distributional kernel carries
    // Ŷ i/(2πQ) δ_disk. With ρ = a sin θ the layer is smooth in θ.
    let unit = Multivector::real_vector(1, &unit_axis);
    let mut layer = Multivector::zero(n, 1);
    for (theta, wt) in gl.mapped(0.0, FRAC_PI_2) {
        let rho = a * theta.sin();
        let mean = circle.mean(|phi| {
            let mut dir = vec![0.0; n];
            frame.embed_into(&[phi.cos(), phi.sin()], &mut dir);
            let xp: Vec<f64> = x.iter().zip(&dir).map(|(c, d)| c + rho * d).collect();
            match dirac_of(f, &xp, cfg).and_then(|d| unit.mv_mul(&d)) {
                Ok(v) => v,
                Err(_) => Multivector::scalar(n, 1, Complex64::new(f64::NAN, f64::NAN)),
            }
        });
        layer = layer + mean * (wt * theta.sin());
    }
    let layer = layer * Complex64::new(0.0, a);
    Ok(near + far + layer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::field::{MvPolynomial, PolyTerm};
    use crate::field::{FnField, TestField};
    use crate::source::{singular_action_r3, SourceConfig};
    use std::sync::Arc;

    fn poly_vector_field() -> MvPolynomial {
        // f = (1 + x₁x₂) e₁ + x₃² e₂ + (x₁ − 2x₂x₃) e₃ + x₁ e₁e₂
        let t = |blade: u32, c: f64, exps: [u32; 3]| PolyTerm {
            blade,
            coeff: c.into(),
            exps: exps.to_vec(),
        };
        MvPolynomial::new(
            3,
            vec![
                t(0b001, 1.0, [0, 0, 0]),
                t(0b001, 1.0, [1, 1, 0]),
                t(0b010, 1.0, [0, 0, 2]),
                t(0b100, 1.0, [1, 0, 0]),
                t(0b100, -2.0, [0, 1, 1]),
                t(0b011, 1.0, [1, 0, 0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn constant_inside_and_outside() {
        let c = Multivector::blade(3, 1, &[2]).unwrap() * 1.5 + Multivector::scalar(3, 1, 0.5.into());
        let f = MultivectorField::constant(c.clone());
        let ball = Domain::unit_ball(3);
        let cfg = BpConfig::default();
        let inside = borel_pompeiu(&f, &ball, &[0.0; 3], &cfg).unwrap();
        assert!(inside.value.max_abs_diff(&c) < 1e-4);
        let outside = borel_pompeiu(&f, &ball, &[2.0, 0.0, 0.0], &cfg).unwrap();
        assert!(outside.value.norm() < 1e-4);
        assert!(matches!(
            borel_pompeiu(&f, &ball, &[1.0, 0.0, 0.0], &cfg),
            Err(Error::OnBoundary)
        ));
    }

    #[test]
    fn monogenic_field_needs_only_the_boundary() {
        let f = MultivectorField::cauchy_kernel_shifted(vec![5.0, 0.0, 0.0]);
        let ball = Domain::unit_ball(3);
        let x = [0.2, -0.1, 0.3];
        let r = borel_pompeiu(&f, &ball, &x, &BpConfig::default()).unwrap();
        assert!(r.volume.norm() <= 1e-8, "{}", r.volume.norm());
        assert!(r.boundary.max_abs_diff(&f.eval(&x)) < 1e-8);
    }

    #[test]
    fn polynomial_reproduction_ball_and_box() {
        let f = MultivectorField::from_polynomial(poly_vector_field());
        let cfg = BpConfig::default();
        let ball = Domain::unit_ball(3);
        for x in [[0.1, 0.2, -0.3], [0.6, -0.5, 0.2]] {
            let r = borel_pompeiu(&f, &ball, &x, &cfg).unwrap();
            let exact = f.eval(&x);
            assert!(r.value.max_abs_diff(&exact) <= 1e-4 * exact.norm(), "{x:?}");
        }
        for x in [[1.5, 0.0, 0.0], [0.0, -2.0, 1.0]] {
            assert!(borel_pompeiu(&f, &ball, &x, &cfg).unwrap().value.norm() <= 1e-4);
        }
        let cube = Domain::cuboid(vec![-1.0, -0.5, 0.0], vec![1.0, 0.5, 1.0]).unwrap();
        let x = [0.3, 0.1, 0.4];
        let r = borel_pompeiu(&f, &cube, &x, &cfg).unwrap();
        assert!(r.value.max_abs_diff(&f.eval(&x)) <= 1e-4 * f.eval(&x).norm());
    }

    #[test]
    fn two_dimensional_disk() {
        let f = MultivectorField::from_polynomial(MvPolynomial::identity(2));
        let disk = Domain::unit_ball(2);
        let x = [0.3, -0.4];
        let r = borel_pompeiu(&f, &disk, &x, &BpConfig::default()).unwrap();
        assert!(r.value.max_abs_diff(&f.eval(&x)) < 1e-6);
    }

    #[test]
    fn extended_reduces_to_classical_at_real_points() {
        let f = MultivectorField::from_polynomial(poly_vector_field());
        let ball = Domain::unit_ball(3);
        let cfg = BpConfig::default();
        let x = vec![0.1, 0.2, -0.3];
        let a = extended_borel_pompeiu(&f, &ball, &ComplexPoint::real(x.clone()), &cfg).unwrap();
        let b = borel_pompeiu(&f, &ball, &x, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn extended_constant_tends_to_constant() {
        let c = Multivector::blade(3, 1, &[1, 3]).unwrap();
        let f = MultivectorField::constant(c.clone());
        let ball = Domain::unit_ball(3);
        let cfg = BpConfig::default();
        let mut prev = f64::INFINITY;
        for a in [0.2, 0.1, 0.05] {
            let z = ComplexPoint::new(vec![0.1, 0.0, 0.0], vec![0.0, a, 0.0]).unwrap();
            let r = extended_borel_pompeiu(&f, &ball, &z, &cfg).unwrap();
            let gap = r.value.max_abs_diff(&c);
            assert!(gap < 1e-4, "a = {a}: {gap}");
            assert!(gap <= prev + 1e-10);
            prev = gap;
        }
    }

    /// Componentwise action of the extended source on `u ↦ f_K(x + u)`.
    fn convolution_oracle(p: &MvPolynomial, z: &ComplexPoint) -> Multivector {
        let axis: Vec<f64> = z.y.iter().map(|v| -v).collect();
        let mut out = Multivector::zero(3, 1);
        for mask in 0..8u32 {
            let q = p.clone();
            let x = z.x.clone();
            let comp = FnField::new(3, move |u| {
                let xp: Vec<f64> = x.iter().zip(u).map(|(a, b)| a + b).collect();
                q.eval(&xp).coeff(mask)
            });
            let comp: Arc<dyn TestField> = Arc::new(comp);
            let v = singular_action_r3(&*comp, &axis, &SourceConfig::default()).unwrap();
            out.set(mask, v.value);
        }
        out
    }

    #[test]
    fn extended_matches_source_convolution() {
        let p = poly_vector_field();
        let f = MultivectorField::from_polynomial(p.clone());
        let ball = Domain::unit_ball(3);
        let z = ComplexPoint::new(vec![0.3, 0.0, 0.0], vec![0.0, 0.0, 0.05]).unwrap();
        let r = extended_borel_pompeiu(&f, &ball, &z, &BpConfig::default()).unwrap();
        let oracle = convolution_oracle(&p, &z);
        let gap = r.value.max_abs_diff(&oracle);
        assert!(gap <= 1e-4, "{gap}: {} vs {}", r.value, oracle);
        // a larger disk tilted off the axes
        let z2 = ComplexPoint::new(vec![-0.1, 0.2, 0.1], vec![0.1, -0.15, 0.2]).unwrap();
        let r2 = extended_borel_pompeiu(&f, &ball, &z2, &BpConfig::default()).unwrap();
        assert!(r2.value.max_abs_diff(&convolution_oracle(&p, &z2)) <= 1e-4);
    }

    #[test]
    fn extended_outside_vanishes() {
        let f = MultivectorField::from_polynomial(poly_vector_field());
        let ball = Domain::unit_ball(3);
        let z = ComplexPoint::new(vec![2.5, 0.0, 0.0], vec![0.0, 0.2, 0.0]).unwrap();
        let r = extended_borel_pompeiu(&f, &ball, &z, &BpConfig::default()).unwrap();
        assert!(r.value.norm() <= 1e-4, "{}", r.value.norm());
    }

    #[test]
    fn extended_rejects_irregular_and_unsupported() {
        let f = MultivectorField::constant(Multivector::scalar(3, 1, 1.0.into()));
        let ball = Domain::unit_ball(3);
        let cross = ComplexPoint::new(vec![0.7, 0.0, 0.0], vec![0.0, 0.0, 0.5]).unwrap();
        assert!(matches!(
            extended_borel_pompeiu(&f, &ball, &cross, &BpConfig::default()),
            Err(Error::NotRegular)
        ));
        let f4 = MultivectorField::constant(Multivector::scalar(4, 1, 1.0.into()));
        let z4 = ComplexPoint::new(vec![0.0; 4], vec![0.0, 0.0, 0.0, 0.1]).unwrap();
        assert!(matches!(
            extended_borel_pompeiu(&f4, &Domain::unit_ball(4), &z4, &BpConfig::default()),
            Err(Error::Unsupported(_))
        ));
    }
}
