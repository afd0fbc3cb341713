//! Actions `⟨δ̃, f⟩` of the extended point source on test fields.
//!
//! Everything is expressed through the mean `f̄(ρ, ζ)` of `f` over the
//! sphere `S^{n−2}` of radius `ρ` in `y^⊥`, shifted by `ζŷ`. On the disk
//! (`p = 0`) the field enters through
//!
//! `Ψ(u) = ρ^{n−3} [f̄(ρ, 0) + i u f̄_ζ(ρ, 0) / ((n−2) a)]`, `ρ = √(a² − u)`,
//!
//! so `Ψ(q²)` is the disk density for odd `n` and `Ψ(a² − ρ²)` the rim
//! function whose `ρ²`-derivatives give the even-`n` action.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::field::{Constant, Coordinate, TestField, Translated};
use crate::geometry::{axis_frame, rho_from_pq, zeta_from_pq, ComplexPoint};
use crate::numerics::{
    derivative, factorial, plateau, gamma_half_integer, unit_sphere_area, Accuracy,
    EmbeddedRule, FdScheme, GaussLegendre, SphereRule,
};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Quadrature and differencing parameters for source actions.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceConfig {
    /// Gauss–Legendre order per panel.
    pub quad_order: usize,
    /// Panels over `[0, a]`.
    pub panels: usize,
    /// Trapezoid nodes for circle means (`n = 3`).
    pub circle_nodes: usize,
    /// Polar and azimuthal counts for sphere means (`n ≥ 4`).
    pub sphere_polar: usize,
    pub sphere_azimuth: usize,
    /// Step for `∂_ρ`, `∂_ζ` of sphere means.
    pub fd_step: f64,
    /// Step for derivatives in `u = a² − ρ²`, relative to `a²`.
    pub taylor_step: f64,
}

impl Default for SourceConfig {
    fn default() -> Self {
        Self {
            quad_order: 24,
            panels: 8,
            circle_nodes: 64,
            sphere_polar: 16,
            sphere_azimuth: 32,
            fd_step: 1e-3,
            taylor_step: 1e-3,
        }
    }
}

/// Rim charge, single layer and double layer of the `n = 3` source.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SourceParts {
    pub rim: Complex64,
    pub single_layer: Complex64,
    pub double_layer: Complex64,
}

impl SourceParts {
    pub fn total(&self) -> Complex64 {
        self.rim + self.single_layer + self.double_layer
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceAction {
    pub value: Complex64,
    pub parts: Option<SourceParts>,
    pub err_estimate: f64,
}

impl SourceAction {
    fn exact(value: Complex64) -> Self {
        Self {
            value,
            parts: None,
            err_estimate: 0.0,
        }
    }
}

/// `λ^m_k(0) = λ_{k−m}`: `λ₁ = π`, `λ_{2l} = 2(−1)^{l+1}/((2l−1)a^{2l−1})`,
/// `λ_{2l+1} = 0`.
pub fn lambda_coeff(k: u32, m: u32, a: f64) -> Result<f64> {
    if k < 1 || m >= k {
        return Err(Error::InvalidIndex(format!("need 0 <= m < k, got k={k}, m={m}")));
    }
    if !(a > 0.0) {
        return Err(Error::InvalidArgument(format!("a must be positive, got {a}")));
    }
    let j = k - m;
    Ok(match j {
        1 => PI,
        _ if j % 2 == 1 => 0.0,
        _ => {
            let l = (j / 2) as i32;
            let sign = if l % 2 == 1 { 1.0 } else { -1.0 };
            2.0 * sign / ((2 * l - 1) as f64 * a.powi(2 * l - 1))
        }
    })
}

/// `A_n = ω_n / ω_{n−1}`.
fn area_ratio(n: usize) -> f64 {
    unit_sphere_area(n) / unit_sphere_area(n - 1)
}

fn require_smoothness(f: &dyn TestField, need: u32) -> Result<()> {
    let have = f.smoothness();
    if have < need {
        return Err(Error::InsufficientSmoothness { need, have });
    }
    Ok(())
}

fn check_input(f: &dyn TestField, y: &[f64]) -> Result<()> {
    if f.dim() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: y.len(),
        });
    }
    if y.len() < 3 {
        return Err(Error::Unsupported(format!(
            "source actions need n >= 3, got n = {}",
            y.len()
        )));
    }
    Ok(())
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// Sphere means of `f` about the axis `ŷ` and their derivatives.
struct AxisMeans<'a> {
    f: &'a dyn TestField,
    n: usize,
    a: f64,
    axis: Vec<f64>,
    rule: EmbeddedRule,
    fd: FdScheme,
}

impl<'a> AxisMeans<'a> {
    fn new(f: &'a dyn TestField, y: &[f64], cfg: &SourceConfig) -> Result<Self> {
        let n = y.len();
        let a = norm(y);
        let rule = if n == 3 {
            SphereRule::new(1, 1, cfg.circle_nodes)
        } else {
            SphereRule::new(n - 2, cfg.sphere_polar, cfg.sphere_azimuth)
        };
        let fd = FdScheme::with_step(cfg.fd_step);
        fd.validate()?;
        Ok(Self {
            f,
            n,
            a,
            axis: y.iter().map(|v| v / a).collect(),
            rule: EmbeddedRule::new(&axis_frame(y)?, &rule)?,
            fd,
        })
    }

    /// `f̄(ρ, ζ)`, extended evenly to `ρ < 0`.
    fn mean(&self, rho: f64, zeta: f64) -> Result<Complex64> {
        let center: Vec<f64> = self.axis.iter().map(|v| zeta * v).collect();
        let v = self.rule.mean(|x| self.f.eval(x), &center, rho.abs())?;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFiniteIntegrand { at: rho });
        }
        Ok(v)
    }

    fn d_zeta(&self, rho: f64, zeta: f64) -> Result<Complex64> {
        derivative(|s| self.mean(rho, s).unwrap_or(nan()), zeta, &self.fd, 1).and_then(finite)
    }

    fn d_rho(&self, rho: f64, zeta: f64) -> Result<Complex64> {
        derivative(|s| self.mean(s, zeta).unwrap_or(nan()), rho, &self.fd, 1).and_then(finite)
    }

    /// The disk/rim function `Ψ(u)`.
    fn psi(&self, u: f64) -> Result<Complex64> {
        let a = self.a;
        let rho = (a * a - u).max(0.0).sqrt();
        let weight = rho.powi(self.n as i32 - 3);
        let m = self.mean(rho, 0.0)?;
        let dz = self.d_zeta(rho, 0.0)?;
        Ok((m + I * dz * (u / ((self.n as f64 - 2.0) * a))) * weight)
    }

    /// `Ψ^{(k)}(0)`.
    fn psi_derivative(&self, k: u32, cfg: &SourceConfig) -> Result<Complex64> {
        if k == 0 {
            return self.psi(0.0);
        }
        let a2 = self.a * self.a;
        let scheme = FdScheme {
            step: cfg.taylor_step * a2,
            accuracy: Accuracy::Fourth,
            richardson: true,
            domain: Some((f64::NEG_INFINITY, a2)),
        };
        derivative(|u| self.psi(u).unwrap_or(nan()), 0.0, &scheme, k).and_then(finite)
    }
}

fn nan() -> Complex64 {
    Complex64::new(f64::NAN, f64::NAN)
}

fn finite(v: Complex64) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { at: f64::NAN })
    }
}

/// Composite Gauss–Legendre at the configured order and at half of it; the
/// difference is the error estimate.
struct PanelQuad {
    fine: GaussLegendre,
    coarse: GaussLegendre,
}

impl PanelQuad {
    fn new(order: usize) -> Self {
        Self {
            fine: GaussLegendre::new(order.max(2)),
            coarse: GaussLegendre::new((order / 2).max(1)),
        }
    }

    fn run(&self, breaks: &[f64], g: impl Fn(f64) -> Result<Complex64>) -> Result<(Complex64, f64)> {
        let mut fine = Complex64::default();
        let mut coarse = Complex64::default();
        for w in breaks.windows(2) {
            if w[1] <= w[0] {
                continue;
            }
            for (x, wt) in self.fine.mapped(w[0], w[1]) {
                let v = g(x)?;
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::NonFiniteIntegrand { at: x });
                }
                fine += v * wt;
            }
            for (x, wt) in self.coarse.mapped(w[0], w[1]) {
                coarse += g(x)? * wt;
            }
        }
        Ok((fine, (fine - coarse).norm()))
    }
}

fn uniform_breaks(lo: f64, hi: f64, panels: usize, extra: &[f64]) -> Vec<f64> {
    let panels = panels.max(1);
    let mut b: Vec<f64> = (0..=panels)
        .map(|j| lo + (hi - lo) * j as f64 / panels as f64)
        .collect();
    b.extend(extra.iter().copied().filter(|&e| e > lo && e < hi));
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

fn point_value(f: &dyn TestField) -> SourceAction {
    let v = f.eval(&vec![0.0; f.dim()]);
    SourceAction {
        value: v,
        parts: Some(SourceParts {
            rim: v,
            ..SourceParts::default()
        }),
        err_estimate: 0.0,
    }
}

/// Below this fraction of `a` the `n = 3` single-layer integrand is
/// replaced by its Taylor series.
const SERIES_FRACTION_R3: f64 = 1e-3;
/// The same for the `n = 5` disk integrand, which divides by `q⁴`.
const SERIES_FRACTION_R5: f64 = 2e-2;

/// Single layer `−a ∫ (f̄(ρ,0) − f̄(a,0))/q² dq`, `ρ = √(a² − q²)`, over the
/// front face (`q ∈ (0, a]`) or the back face (`q ∈ [−a, 0)`).
fn single_layer(
    means: &AxisMeans,
    rim: Complex64,
    back: bool,
    quad: &PanelQuad,
    cfg: &SourceConfig,
) -> Result<(Complex64, f64)> {
    let a = means.a;
    let thr = SERIES_FRACTION_R3 * a;
    // f̄(ρ,0) as a function of u = q²
    let flat = |u: f64| means.mean((a * a - u).max(0.0).sqrt(), 0.0);
    let scheme = FdScheme {
        step: cfg.taylor_step * a * a,
        accuracy: Accuracy::Fourth,
        richardson: true,
        domain: Some((f64::NEG_INFINITY, a * a)),
    };
    let mut series = [Complex64::default(); 3];
    for (j, c) in series.iter_mut().enumerate() {
        let k = j as u32 + 1;
        *c = derivative(|u| flat(u).unwrap_or(nan()), 0.0, &scheme, k).and_then(finite)? / factorial(k);
    }
    let integrand = |q: f64| -> Result<Complex64> {
        if q.abs() < thr {
            let u = q * q;
            return Ok(series[0] + series[1] * u + series[2] * u * u);
        }
        let rho = rho_from_pq(0.0, q, a);
        let zeta = zeta_from_pq(0.0, q, a);
        Ok((means.mean(rho, zeta)? - rim) / (q * q))
    };
    let (lo, hi, extra) = if back { (-a, 0.0, -thr) } else { (0.0, a, thr) };
    let (v, e) = quad.run(&uniform_breaks(lo, hi, cfg.panels, &[extra]), integrand)?;
    Ok((-a * v, a * e))
}

/// The `n = 3` action `L₀ + L₁ + iL₂`: rim value, single layer from the
/// disk values and double layer from the normal derivative on the disk.
pub fn singular_action_r3(f: &dyn TestField, y: &[f64], cfg: &SourceConfig) -> Result<SourceAction> {
    check_input(f, y)?;
    if y.len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: y.len() });
    }
    if norm(y) == 0.0 {
        return Ok(point_value(f));
    }
    require_smoothness(f, 1)?;
    let means = AxisMeans::new(f, y, cfg)?;
    let a = means.a;
    let quad = PanelQuad::new(cfg.quad_order);
    let rim = means.mean(a, 0.0)?;
    let (l1, e1) = single_layer(&means, rim, false, &quad, cfg)?;
    let (l2, e2) = quad.run(&uniform_breaks(0.0, a, cfg.panels, &[]), |q| {
        means.d_zeta((a * a - q * q).max(0.0).sqrt(), 0.0)
    })?;
    let parts = SourceParts {
        rim,
        single_layer: l1,
        double_layer: -I * l2,
    };
    Ok(SourceAction {
        value: parts.total(),
        parts: Some(parts),
        err_estimate: e1 + e2,
    })
}

/// The `n = 3` single layer evaluated from either face of the disk; both
/// faces give the same value since the disk density is even in `q`.
pub fn single_layer_r3(
    f: &dyn TestField,
    y: &[f64],
    cfg: &SourceConfig,
    side: crate::DiskSide,
) -> Result<Complex64> {
    check_input(f, y)?;
    if y.len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: y.len() });
    }
    if norm(y) == 0.0 {
        return Err(Error::YZero);
    }
    require_smoothness(f, 1)?;
    let means = AxisMeans::new(f, y, cfg)?;
    let rim = means.mean(means.a, 0.0)?;
    let back = side == crate::DiskSide::Back;
    single_layer(&means, rim, back, &PanelQuad::new(cfg.quad_order), cfg).map(|(v, _)| v)
}

/// The `n = 4` action `f̄(a,0) + a f̄_ρ(a,0) − i a f̄_ζ(a,0)`.
pub fn singular_action_r4(f: &dyn TestField, y: &[f64], cfg: &SourceConfig) -> Result<SourceAction> {
    check_input(f, y)?;
    if y.len() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: y.len() });
    }
    if norm(y) == 0.0 {
        return Ok(SourceAction::exact(f.eval(&[0.0; 4])));
    }
    require_smoothness(f, 1)?;
    let eval = |step: f64| -> Result<Complex64> {
        let mut c = cfg.clone();
        c.fd_step = step;
        let means = AxisMeans::new(f, y, &c)?;
        let a = means.a;
        Ok(means.mean(a, 0.0)? + means.d_rho(a, 0.0)? * a - I * a * means.d_zeta(a, 0.0)?)
    };
    let value = eval(cfg.fd_step)?;
    let coarse = eval(2.0 * cfg.fd_step)?;
    Ok(SourceAction {
        value,
        parts: None,
        err_estimate: (value - coarse).norm(),
    })
}

/// Even `n = 2k + 2`: `(a√π/Γ(k+½)) D^k F` at `ρ = a`, `D = ∂/∂(ρ²)`.
/// Supported for `n ∈ {4, 6}`.
pub fn singular_action_even(f: &dyn TestField, y: &[f64], cfg: &SourceConfig) -> Result<SourceAction> {
    check_input(f, y)?;
    let n = y.len();
    if n % 2 == 1 || n > 6 {
        return Err(Error::Unsupported(format!("even-dimension path supports n = 4, 6; got {n}")));
    }
    if norm(y) == 0.0 {
        return Ok(SourceAction::exact(f.eval(&vec![0.0; n])));
    }
    let k = (n as u32 - 2) / 2;
    require_smoothness(f, k)?;
    let eval = |taylor: f64| -> Result<Complex64> {
        let mut c = cfg.clone();
        c.taylor_step = taylor;
        let means = AxisMeans::new(f, y, &c)?;
        let a = means.a;
        // D^k in ρ² is (−1)^k d^k/du^k in u = a² − ρ²
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        Ok(means.psi_derivative(k, &c)? * (sign * a * PI.sqrt() / gamma_half_integer(k)))
    };
    let value = eval(cfg.taylor_step)?;
    let coarse = eval(2.0 * cfg.taylor_step)?;
    Ok(SourceAction {
        value,
        parts: None,
        err_estimate: (value - coarse).norm(),
    })
}

/// Odd `n = 2k + 3`: `V_n + (2(−1)^k/A_n) Σ_l a^{2l−2k} T_{2l}/(2k−2l+1)`
/// with `T_{2m} = Ψ^{(m)}(0)/m!` and the Taylor-subtracted disk integral
///
/// `V_n = (2 i^{1−n} a/A_n) ∫₀^a (Ψ(q²) − Σ_{m≤k} T_{2m} q^{2m}) / q^{n−1} dq`.
///
/// Supported for `n ∈ {3, 5}`.
pub fn singular_action_odd(f: &dyn TestField, y: &[f64], cfg: &SourceConfig) -> Result<SourceAction> {
    check_input(f, y)?;
    let n = y.len();
    if n % 2 == 0 || n > 5 {
        return Err(Error::Unsupported(format!("odd-dimension path supports n = 3, 5; got {n}")));
    }
    if norm(y) == 0.0 {
        return Ok(SourceAction::exact(f.eval(&vec![0.0; n])));
    }
    require_smoothness(f, n as u32 - 2)?;
    let k = (n - 3) / 2;
    let means = AxisMeans::new(f, y, cfg)?;
    let a = means.a;
    let a_n = area_ratio(n);

    let taylor: Vec<Complex64> = (0..=k as u32)
        .map(|m| Ok(means.psi_derivative(m, cfg)? / factorial(m)))
        .collect::<Result<_>>()?;
    // next three Taylor coefficients serve the series near q = 0
    let series: Vec<Complex64> = (k as u32 + 1..k as u32 + 4)
        .map(|m| Ok(means.psi_derivative(m, cfg)? / factorial(m)))
        .collect::<Result<_>>()?;
    let thr = if n == 3 { SERIES_FRACTION_R3 } else { SERIES_FRACTION_R5 } * a;
    let integrand = |q: f64| -> Result<Complex64> {
        let u = q * q;
        if q < thr {
            return Ok(series[0] + series[1] * u + series[2] * u * u);
        }
        let mut rest = means.psi(u)?;
        let mut um = 1.0;
        for t in &taylor {
            rest -= t * um;
            um *= u;
        }
        Ok(rest / um)
    };
    let quad = PanelQuad::new(cfg.quad_order);
    let (integral, err) = quad.run(&uniform_breaks(0.0, a, cfg.panels, &[thr]), integrand)?;
    let pre = I.powi(1 - n as i32) * (2.0 * a / a_n);
    let disk = pre * integral;

    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let rim: Complex64 = taylor
        .iter()
        .enumerate()
        .map(|(l, t)| t * (a.powi(2 * l as i32 - 2 * k as i32) / (2 * k - 2 * l + 1) as f64))
        .sum::<Complex64>()
        * (2.0 * sign / a_n);
    Ok(SourceAction {
        value: disk + rim,
        parts: None,
        err_estimate: pre.norm() * err,
    })
}

/// `⟨δ̃(· + iy), f⟩` for `n ∈ {3, 4, 5, 6}`.
pub fn singular_action(f: &dyn TestField, y: &[f64], cfg: &SourceConfig) -> Result<SourceAction> {
    check_input(f, y)?;
    match y.len() {
        3 => singular_action_r3(f, y, cfg),
        4 => singular_action_r4(f, y, cfg),
        5 => singular_action_odd(f, y, cfg),
        6 => singular_action_even(f, y, cfg),
        n => Err(Error::Unsupported(format!("source actions support n = 3..=6, got {n}"))),
    }
}

/// `I_ε(f) = ((a²+ε²)^{ν+1}/(a^{n−2} A_n)) ∫_{−a}^{a} F♯(ε+iq)/(ε+iq)^{n−1} dq`
/// with `ν = (n−3)/2` and
/// `F♯(γ) = (a²−q²)^ν [f̄♯(γ) + γ f̄♯_p(γ)/(n−2)]`.
///
/// The integral runs over `q = a sin θ`, graded toward `θ = 0` where the
/// kernel has width `ε`.
pub fn regularized_action(
    f: &dyn TestField,
    y: &[f64],
    eps: f64,
    cfg: &SourceConfig,
) -> Result<SourceAction> {
    check_input(f, y)?;
    let n = y.len();
    if n > 6 {
        return Err(Error::Unsupported(format!("regularized action supports n = 3..=6, got {n}")));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    require_smoothness(f, n as u32 - 2)?;
    if norm(y) == 0.0 {
        return Err(Error::YZero);
    }
    let means = AxisMeans::new(f, y, cfg)?;
    let a = means.a;
    let nf = n as f64;
    let p = eps;
    let integrand = |theta: f64| -> Result<Complex64> {
        let (s, c) = theta.sin_cos();
        let q = a * s;
        let rho = rho_from_pq(p, q, a);
        let zeta = zeta_from_pq(p, q, a);
        let g = Complex64::new(p, q);
        let fp = means.d_rho(rho, zeta)? * (rho * p / (a * a + p * p)) + means.d_zeta(rho, zeta)? * (q / a);
        let sharp = (means.mean(rho, zeta)? + g * fp / (nf - 2.0)) * (a * c).powi(n as i32 - 3);
        Ok(sharp / g.powi(n as i32 - 1) * (a * c))
    };
    let half = PI / 2.0;
    let cap = PI / 16.0;
    let mut pos = vec![0.0];
    let mut t = 0.25 * eps / a;
    while t < half {
        let last = *pos.last().expect("non-empty");
        pos.push(t);
        t = if t - last >= cap { t + cap } else { 2.0 * t };
    }
    pos.push(half);
    let mut breaks: Vec<f64> = pos.iter().rev().map(|v| -v).collect();
    breaks.extend(pos.iter().skip(1));
    let quad = PanelQuad::new(cfg.quad_order);
    let (integral, err) = quad.run(&breaks, integrand)?;
    let pre = (a * a + eps * eps).powf((nf - 1.0) / 2.0) / (a.powi(n as i32 - 2) * area_ratio(n));
    Ok(SourceAction {
        value: integral * pre,
        parts: None,
        err_estimate: err * pre,
    })
}

/// Monopole `Q = ⟨δ̃, 1⟩` and dipole `P_j = ⟨δ̃, x_j⟩`.
pub fn moments(n: usize, y: &[f64], cfg: &SourceConfig) -> Result<(Complex64, Vec<Complex64>)> {
    if y.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: y.len() });
    }
    let one = Constant {
        dim: n,
        value: Complex64::new(1.0, 0.0),
    };
    let q = singular_action(&one, y, cfg)?.value;
    let p = (0..n)
        .map(|index| singular_action(&Coordinate { dim: n, index }, y, cfg).map(|s| s.value))
        .collect::<Result<_>>()?;
    Ok((q, p))
}

/// `∫ x δ̃(x − z_S) dx`, componentwise through translated coordinate fields.
pub fn centroid(z_s: &ComplexPoint, cfg: &SourceConfig) -> Result<Vec<Complex64>> {
    let n = z_s.dim();
    let axis: Vec<f64> = z_s.y.iter().map(|v| -v).collect();
    (0..n)
        .map(|index| {
            let field = Translated {
                inner: Coordinate { dim: n, index },
                shift: z_s.x.clone(),
            };
            singular_action(&field, &axis, cfg).map(|s| s.value)
        })
        .collect()
}

/// Both sides of the descent relation from `R³` to `R⁴`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentCheck {
    pub lhs: SourceAction,
    pub rhs: SourceAction,
}

impl DescentCheck {
    pub fn gap(&self) -> f64 {
        (self.lhs.value - self.rhs.value).norm()
    }
}

/// `C^∞` window equal to one on `|s| ≤ w`, zero for `|s| ≥ 2w`.
struct Lifted<'a> {
    inner: &'a dyn TestField,
    window: f64,
}

impl TestField for Lifted<'_> {
    fn dim(&self) -> usize {
        self.inner.dim() + 1
    }
    fn eval(&self, x: &[f64]) -> Complex64 {
        let (head, s) = x.split_at(self.inner.dim());
        self.inner.eval(head) * plateau(s[0], self.window)
    }
    fn smoothness(&self) -> u32 {
        self.inner.smoothness()
    }
}

/// `⟨δ̃₃(· + iy), f⟩` against `⟨δ̃₄(· + i(y, 0)), f ⊗ χ⟩`, where `χ` is a
/// smooth window in the extra coordinate equal to one on `|s| ≤ window`.
/// The four-dimensional source lives on the sphere of radius `a` in
/// `(y,0)^⊥`, so the window must cover `a` plus the difference stencil.
pub fn descent_check(f: &dyn TestField, y: &[f64], window: f64, cfg: &SourceConfig) -> Result<DescentCheck> {
    check_input(f, y)?;
    if y.len() != 3 {
        return Err(Error::Unsupported(format!("descent is checked from n = 3, got {}", y.len())));
    }
    let needed = norm(y) + 10.0 * cfg.fd_step;
    if !(window >= needed) {
        return Err(Error::WindowTooSmall { window, needed });
    }
    let lhs = singular_action(f, y, cfg)?;
    let lifted = Lifted { inner: f, window };
    let mut y4 = y.to_vec();
    y4.push(0.0);
    let rhs = singular_action_r4(&lifted, &y4, cfg)?;
    Ok(DescentCheck { lhs, rhs })
}
