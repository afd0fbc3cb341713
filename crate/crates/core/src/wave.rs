//! Cauchy problem for the wave equation by spherical means, and the
//! extension `f̃(x, s + it)` of Euclidean spacetime fields it induces.
//!
//! With `M_v(r)`, `M_w(r)` the means of the data over the sphere of radius
//! `r` about `x`:
//!
//! * `n = 3`: `u = ∂_t(t M_v) + t M_w`;
//! * `n = 5`: `u = M_v + (5/3) t M_v′ + (1/3) t² M_v″ + t M_w + (1/3) t² M_w′`;
//! * `n = 2`: the `n = 3` formula for data lifted constant in a third
//!   coordinate, so the sphere mean becomes a weighted disk mean.
//!
//! Means are even in `r`, so negative times need no special handling.

use std::sync::Arc;

use num_complex::Complex64;

use crate::field::{FnField, TestField};
use crate::numerics::{derivative, weighted_sum, FdScheme, SphereRule, Value};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Initial value `v = u(·, 0)` and velocity `w = u_t(·, 0)`.
#[derive(Clone)]
pub struct CauchyData {
    pub v: Arc<dyn TestField>,
    pub w: Arc<dyn TestField>,
}

impl CauchyData {
    pub fn new(v: Arc<dyn TestField>, w: Arc<dyn TestField>) -> Result<Self> {
        if v.dim() != w.dim() {
            return Err(Error::DimensionMismatch {
                expected: v.dim(),
                got: w.dim(),
            });
        }
        Ok(Self { v, w })
    }

    pub fn dim(&self) -> usize {
        self.v.dim()
    }
}

impl std::fmt::Debug for CauchyData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CauchyData").field("dim", &self.dim()).finish()
    }
}

type SpaceTimeFn = dyn Fn(&[f64], f64) -> Complex64 + Send + Sync;

/// `f(x, s)` on `Rⁿ × R`.
#[derive(Clone)]
pub struct SpacetimeField {
    dim: usize,
    smoothness: u32,
    eval: Arc<SpaceTimeFn>,
    ds: Option<Arc<SpaceTimeFn>>,
}

impl SpacetimeField {
    pub fn new(dim: usize, f: impl Fn(&[f64], f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self {
            dim,
            smoothness: crate::C_INFINITY,
            eval: Arc::new(f),
            ds: None,
        }
    }

    pub fn with_smoothness(mut self, k: u32) -> Self {
        self.smoothness = k;
        self
    }

    /// Exact `∂f/∂s`.
    pub fn with_ds(mut self, ds: impl Fn(&[f64], f64) -> Complex64 + Send + Sync + 'static) -> Self {
        self.ds = Some(Arc::new(ds));
        self
    }

    /// `f(x, s) = v(x) − i s w(x)`, whose extension solves the Cauchy
    /// problem with real data `(v, w)` at `s = 0`.
    pub fn from_cauchy(data: &CauchyData) -> Self {
        let (v, w) = (data.v.clone(), data.w.clone());
        let w2 = data.w.clone();
        let smooth = data.v.smoothness().min(data.w.smoothness());
        Self::new(data.dim(), move |x, s| v.eval(x) - I * s * w.eval(x))
            .with_smoothness(smooth)
            .with_ds(move |x, _| -I * w2.eval(x))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn smoothness(&self) -> u32 {
        self.smoothness
    }

    pub fn eval(&self, x: &[f64], s: f64) -> Complex64 {
        (self.eval)(x, s)
    }

    pub fn ds(&self, x: &[f64], s: f64, scheme: &FdScheme) -> Result<Complex64> {
        match &self.ds {
            Some(d) => Ok(d(x, s)),
            None => derivative(|v| self.eval(x, v), s, scheme, 1),
        }
    }
}

impl std::fmt::Debug for SpacetimeField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpacetimeField")
            .field("dim", &self.dim)
            .field("smoothness", &self.smoothness)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveConfig {
    /// `S²` product rule (n = 2, 3).
    pub sphere_polar: usize,
    pub sphere_azimuth: usize,
    /// `S⁴` product rule (n = 5).
    pub hyper_polar: usize,
    pub hyper_azimuth: usize,
    /// Step for radial and `s` derivatives.
    pub fd_step: f64,
}

impl Default for WaveConfig {
    fn default() -> Self {
        Self {
            sphere_polar: 24,
            sphere_azimuth: 48,
            hyper_polar: 12,
            hyper_azimuth: 24,
            fd_step: 1e-3,
        }
    }
}

/// Means over `x + r S^{m}` of fields on `Rⁿ`, `m + 1 ≥ n`; extra sphere
/// coordinates are dropped, which is the descent projection for `n = 2`.
struct RadialMeans {
    n: usize,
    rule: SphereRule,
    fd: FdScheme,
}

impl RadialMeans {
    fn new(n: usize, cfg: &WaveConfig) -> Self {
        let rule = match n {
            2 | 3 => SphereRule::new(2, cfg.sphere_polar, cfg.sphere_azimuth),
            _ => SphereRule::new(n - 1, cfg.hyper_polar, cfg.hyper_azimuth),
        };
        Self {
            n,
            rule,
            fd: FdScheme::with_step(cfg.fd_step),
        }
    }

    fn mean(&self, f: &dyn TestField, x: &[f64], r: f64) -> Complex64 {
        let mut p = vec![0.0; self.n];
        let mut acc = Complex64::default();
        for (omega, w) in self.rule.iter() {
            for ((pi, xi), oi) in p.iter_mut().zip(x).zip(omega) {
                *pi = xi + r * oi;
            }
            acc += f.eval(&p) * w;
        }
        acc
    }

    fn mean_values<T: Value>(&self, f: &impl Fn(&[f64]) -> T, x: &[f64], r: f64) -> T {
        let mut p = vec![0.0; self.n];
        weighted_sum(self.rule.iter().map(|(omega, w)| {
            for ((pi, xi), oi) in p.iter_mut().zip(x).zip(omega) {
                *pi = xi + r * oi;
            }
            (w, f(&p))
        }))
    }

    /// `M′(r)`, from the exact gradient when the field has one.
    fn slope(&self, f: &dyn TestField, x: &[f64], r: f64) -> Result<Complex64> {
        if f.gradient(x).is_none() {
            return derivative(|s| self.mean(f, x, s), r, &self.fd, 1);
        }
        let mut p = vec![0.0; self.n];
        let mut acc = Complex64::default();
        for (omega, w) in self.rule.iter() {
            for ((pi, xi), oi) in p.iter_mut().zip(x).zip(omega) {
                *pi = xi + r * oi;
            }
            let g = f.gradient(&p).ok_or_else(|| {
                Error::InvalidArgument("field reported a gradient at one point only".into())
            })?;
            let dir: Complex64 = g.iter().zip(omega).map(|(gi, oi)| gi * oi).sum();
            acc += dir * w;
        }
        Ok(acc)
    }

    fn curvature(&self, f: &dyn TestField, x: &[f64], r: f64) -> Result<Complex64> {
        if f.gradient(x).is_none() {
            return derivative(|s| self.mean(f, x, s), r, &self.fd, 2);
        }
        derivative(
            |s| self.slope(f, x, s).unwrap_or(Complex64::new(f64::NAN, f64::NAN)),
            r,
            &self.fd,
            1,
        )
    }
}

fn required_smoothness(n: usize) -> (u32, u32) {
    // f ∈ C^{k+2}, g ∈ C^{k+1} for n = 2k+1; n = 2 descends from n = 3
    let k = if n == 5 { 2 } else { 1 };
    (k + 2, k + 1)
}

fn check_data(data: &CauchyData, x: &[f64]) -> Result<usize> {
    let n = data.dim();
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    if !matches!(n, 2 | 3 | 5) {
        return Err(Error::Unsupported(format!("wave solver supports n = 2, 3, 5; got {n}")));
    }
    let (nv, nw) = required_smoothness(n);
    for (need, have) in [(nv, data.v.smoothness()), (nw, data.w.smoothness())] {
        if have < need {
            return Err(Error::InsufficientSmoothness { need, have });
        }
    }
    Ok(n)
}

/// `u(x, t)` for the Cauchy problem `u_tt = Δu`, `u(·,0) = v`, `u_t(·,0) = w`.
pub fn solve_cauchy(data: &CauchyData, x: &[f64], t: f64, cfg: &WaveConfig) -> Result<Complex64> {
    let n = check_data(data, x)?;
    let means = RadialMeans::new(n, cfg);
    solve_with(&means, data, x, t)
}

fn solve_with(means: &RadialMeans, data: &CauchyData, x: &[f64], t: f64) -> Result<Complex64> {
    let (v, w) = (&*data.v, &*data.w);
    let u = match means.n {
        2 | 3 => means.mean(v, x, t) + means.slope(v, x, t)? * t + means.mean(w, x, t) * t,
        _ => {
            means.mean(v, x, t)
                + means.slope(v, x, t)? * (5.0 / 3.0 * t)
                + means.curvature(v, x, t)? * (t * t / 3.0)
                + means.mean(w, x, t) * t
                + means.slope(w, x, t)? * (t * t / 3.0)
        }
    };
    if !u.re.is_finite() || !u.im.is_finite() {
        return Err(Error::NonFiniteIntegrand { at: t });
    }
    Ok(u)
}

/// [`solve_cauchy`] for data with values in any linear space (multivector
/// fields, say). Radial derivatives are always finite differences and no
/// smoothness is checked.
pub fn solve_cauchy_values<T: Value>(
    v: impl Fn(&[f64]) -> T,
    w: impl Fn(&[f64]) -> T,
    n: usize,
    x: &[f64],
    t: f64,
    cfg: &WaveConfig,
) -> Result<T> {
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    if !matches!(n, 2 | 3 | 5) {
        return Err(Error::Unsupported(format!("wave solver supports n = 2, 3, 5; got {n}")));
    }
    let means = RadialMeans::new(n, cfg);
    let mv = |r: f64| means.mean_values(&v, x, r);
    let mw = |r: f64| means.mean_values(&w, x, r);
    let dv = derivative(mv, t, &means.fd, 1)?;
    Ok(match n {
        2 | 3 => mv(t) + dv * t + mw(t) * t,
        _ => {
            let d2v = derivative(mv, t, &means.fd, 2)?;
            let dw = derivative(mw, t, &means.fd, 1)?;
            mv(t) + dv * (5.0 / 3.0 * t) + d2v * (t * t / 3.0) + mw(t) * t + dw * (t * t / 3.0)
        }
    })
}

/// `f̃(x, s + it)`: the wave solution with `v = f(·, s)`, `w = i f_s(·, s)`.
pub fn extend(f: &SpacetimeField, x: &[f64], s: f64, t: f64, cfg: &WaveConfig) -> Result<Complex64> {
    if x.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: x.len() });
    }
    if t == 0.0 {
        return Ok(f.eval(x, s));
    }
    let data = slice_data(f, s, cfg);
    solve_cauchy(&data, x, t, cfg)
}

/// Cauchy data of `f` on the slice `s`.
pub fn slice_data(f: &SpacetimeField, s: f64, cfg: &WaveConfig) -> CauchyData {
    let n = f.dim();
    let smooth = f.smoothness();
    let fv = f.clone();
    let fw = f.clone();
    let scheme = FdScheme::with_step(cfg.fd_step);
    let v = FnField::new(n, move |x| fv.eval(x, s)).with_smoothness(smooth);
    let w = FnField::new(n, move |x| {
        I * fw.ds(x, s, &scheme).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    })
    .with_smoothness(smooth.saturating_sub(1));
    CauchyData {
        v: Arc::new(v),
        w: Arc::new(w),
    }
}

/// Sample points for [`wave_residual`].
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    pub points: Vec<Vec<f64>>,
    pub times: Vec<f64>,
    /// Difference step in space and time.
    pub spacing: f64,
}

impl Lattice {
    /// `count` points on the segment `[lo, hi]` of the first axis.
    pub fn line(n: usize, lo: f64, hi: f64, count: usize, times: Vec<f64>, spacing: f64) -> Self {
        let points = (0..count)
            .map(|j| {
                let mut p = vec![0.0; n];
                p[0] = if count == 1 {
                    lo
                } else {
                    lo + (hi - lo) * j as f64 / (count - 1) as f64
                };
                p
            })
            .collect();
        Self { points, times, spacing }
    }
}

/// `u_tt − Δu` at `(x, t)` by second-order differences with step `h`.
pub fn residual_at(data: &CauchyData, x: &[f64], t: f64, h: f64, cfg: &WaveConfig) -> Result<Complex64> {
    let n = check_data(data, x)?;
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("lattice spacing must be positive, got {h}")));
    }
    let means = RadialMeans::new(n, cfg);
    let u = |p: &[f64], s: f64| solve_with(&means, data, p, s);
    let centre = u(x, t)?;
    let utt = (u(x, t + h)? - centre * 2.0 + u(x, t - h)?) / (h * h);
    let mut lap = Complex64::default();
    let mut p = x.to_vec();
    for i in 0..n {
        p[i] = x[i] + h;
        let plus = u(&p, t)?;
        p[i] = x[i] - h;
        let minus = u(&p, t)?;
        p[i] = x[i];
        lap += (plus - centre * 2.0 + minus) / (h * h);
    }
    Ok(utt - lap)
}

/// Largest `|u_tt − Δu|` over the lattice.
pub fn wave_residual(data: &CauchyData, lattice: &Lattice, cfg: &WaveConfig) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in &lattice.points {
        for &t in &lattice.times {
            worst = worst.max(residual_at(data, x, t, lattice.spacing, cfg)?.norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Bump, Constant, Gaussian, PlaneWave, WaveForm};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> WaveConfig {
        WaveConfig::default()
    }

    fn zero(n: usize) -> Arc<dyn TestField> {
        Arc::new(Constant { dim: n, value: Complex64::default() })
    }

    fn cosine(k: &[f64]) -> Arc<dyn TestField> {
        Arc::new(PlaneWave { k: k.to_vec(), form: WaveForm::Cos })
    }

    fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn constant_velocity_gives_linear_growth() {
        for n in [2usize, 3, 5] {
            let one: Arc<dyn TestField> = Arc::new(Constant { dim: n, value: Complex64::new(1.0, 0.0) });
            let data = CauchyData::new(zero(n), one).unwrap();
            for t in [-1.5, 0.3, 2.0] {
                let u = solve_cauchy(&data, &vec![0.2; n], t, &cfg()).unwrap();
                assert!((u - t).norm() < 1e-12, "n={n} t={t} u={u}");
            }
        }
    }

    #[test]
    fn plane_waves_follow_separation_of_variables() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in [2usize, 3, 5] {
            let mut k: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let len = dot(&k, &k).sqrt();
            k.iter_mut().for_each(|c| *c /= len);
            let pos = CauchyData::new(cosine(&k), zero(n)).unwrap();
            let vel = CauchyData::new(zero(n), cosine(&k)).unwrap();
            for _ in 0..10 {
                let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let t = rng.gen_range(-2.0..2.0);
                let u = solve_cauchy(&pos, &x, t, &cfg()).unwrap();
                assert!((u - dot(&k, &x).cos() * t.cos()).norm() < 1e-6, "n={n}");
                let u = solve_cauchy(&vel, &x, t, &cfg()).unwrap();
                assert!((u - dot(&k, &x).cos() * t.sin()).norm() < 1e-6, "n={n}");
            }
        }
    }

    #[test]
    fn huygens_in_three_dimensions() {
        let bump: Arc<dyn TestField> = Arc::new(Bump { center: vec![0.0; 3], radius: 0.5, amplitude: 1.0 });
        let data = CauchyData::new(bump.clone(), bump).unwrap();
        for t in [1.0, 3.0] {
            let u = solve_cauchy(&data, &[2.0, 0.0, 0.0], t, &cfg()).unwrap();
            assert!(u.norm() <= 1e-8, "t={t} u={u}");
        }
        // inside the cone the field is felt
        assert!(solve_cauchy(&data, &[2.0, 0.0, 0.0], 2.0, &cfg()).unwrap().norm() > 1e-3);
    }

    #[test]
    fn initial_conditions_are_recovered() {
        let v: Arc<dyn TestField> = Arc::new(Gaussian { center: vec![0.1, -0.2, 0.3], width: 1.2 });
        let w: Arc<dyn TestField> = Arc::new(PlaneWave { k: vec![0.3, 0.4, 0.0], form: WaveForm::Sin });
        let x = [0.4, 0.1, -0.5];
        // u(t) − v = t w + O(t²), so the position check uses zero velocity
        let still = CauchyData::new(v.clone(), zero(3)).unwrap();
        let u = solve_cauchy(&still, &x, 1e-4, &cfg()).unwrap();
        assert!((u - v.eval(&x)).norm() <= 1e-6);
        let data = CauchyData::new(v.clone(), w.clone()).unwrap();
        let ut = derivative(|t| solve_cauchy(&data, &x, t, &cfg()).unwrap(), 0.0, &FdScheme::with_step(1e-3), 1).unwrap();
        assert!((ut - w.eval(&x)).norm() <= 1e-4);
    }

    #[test]
    fn extension_reproduces_continuation_of_harmonic_fields() {
        // exp(i k·x − |k| s) is harmonic in (x, s), so f̃ is its continuation
        let k = [0.6, 0.0, 0.8];
        let f = SpacetimeField::new(3, move |x, s| {
            Complex64::new(-s, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]).exp()
        });
        let x = [0.3, -0.4, 0.2];
        for (s, t) in [(0.2, 0.7), (-0.1, -1.3)] {
            let got = extend(&f, &x, s, t, &cfg()).unwrap();
            let expected = f.eval(&x, s) * Complex64::new(0.0, -t).exp();
            assert!((got - expected).norm() <= 1e-6, "{got} vs {expected}");
        }
        assert_eq!(extend(&f, &x, 0.2, 0.0, &cfg()).unwrap(), f.eval(&x, 0.2));
    }

    #[test]
    fn extension_of_a_non_harmonic_field_is_the_cauchy_solution() {
        // exp(i(k·x + |k|s)) is not harmonic in (x, s); its extension is
        // f·(cos|k|t − sin|k|t), not the continuation f·e^{−|k|t}
        let f = SpacetimeField::new(3, |x, s| Complex64::new(0.0, x[0] + s).exp());
        let (x, s, t) = ([0.2, 0.5, -0.3], 0.1, 0.8);
        let got = extend(&f, &x, s, t, &cfg()).unwrap();
        let expected = f.eval(&x, s) * (t.cos() - t.sin());
        assert!((got - expected).norm() <= 1e-6);
        assert!((got - f.eval(&x, s) * (-t).exp()).norm() > 1e-2);
    }

    #[test]
    fn real_data_adapter() {
        let v: Arc<dyn TestField> = Arc::new(Gaussian::centered(3, 1.0));
        let w = cosine(&[0.0, 1.0, 0.0]);
        let data = CauchyData::new(v.clone(), w.clone()).unwrap();
        let f = SpacetimeField::from_cauchy(&data);
        let slice = slice_data(&f, 0.0, &cfg());
        let x = [0.3, 0.2, 0.1];
        assert_eq!(slice.v.eval(&x), v.eval(&x));
        assert!((slice.w.eval(&x) - w.eval(&x)).norm() < 1e-15);
        let a = extend(&f, &x, 0.0, 0.6, &cfg()).unwrap();
        let b = solve_cauchy(&data, &x, 0.6, &cfg()).unwrap();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn residual_on_a_lattice() {
        let times = vec![0.3, 0.7, 1.1];
        let lattice = Lattice::line(3, -1.0, 1.0, 5, times, 0.05);
        let plane = CauchyData::new(cosine(&[0.6, 0.8, 0.0]), zero(3)).unwrap();
        assert!(wave_residual(&plane, &lattice, &cfg()).unwrap() <= 1e-3);
        let nothing = CauchyData::new(zero(3), zero(3)).unwrap();
        assert_eq!(wave_residual(&nothing, &lattice, &cfg()).unwrap(), 0.0);
        let gauss: Arc<dyn TestField> = Arc::new(Gaussian::centered(3, 2.0));
        let gauss = CauchyData::new(gauss, zero(3)).unwrap();
        let coarse = wave_residual(&gauss, &lattice, &cfg()).unwrap();
        assert!(coarse <= 1e-3, "{coarse}");
        let fine = Lattice { spacing: 0.025, ..lattice };
        assert!(wave_residual(&gauss, &fine, &cfg()).unwrap() < coarse);
    }

    #[test]
    fn causality_in_two_dimensions() {
        let base: Arc<dyn TestField> = Arc::new(Gaussian::centered(2, 1.0));
        let (x, t) = ([0.3, -0.2], 0.9);
        let data = CauchyData::new(base.clone(), base.clone()).unwrap();
        let u = solve_cauchy(&data, &x, t, &cfg()).unwrap();
        let b = base.clone();
        let bump = Bump { center: vec![x[0] + 1.5, x[1]], radius: 0.5, amplitude: 3.0 };
        let perturbed: Arc<dyn TestField> = Arc::new(FnField::new(2, move |p| b.eval(p) + bump.eval(p)));
        let moved = CauchyData::new(perturbed.clone(), perturbed).unwrap();
        let u2 = solve_cauchy(&moved, &x, t, &cfg()).unwrap();
        assert!((u - u2).norm() <= 1e-10);
    }

    #[test]
    fn backward_then_forward_returns_the_data() {
        let v: Arc<dyn TestField> = Arc::new(Gaussian { center: vec![0.2, 0.0, -0.1], width: 1.5 });
        let w: Arc<dyn TestField> = Arc::new(Gaussian { center: vec![0.0, 0.3, 0.0], width: 1.2 });
        let data = CauchyData::new(v.clone(), w.clone()).unwrap();
        let big = WaveConfig { sphere_polar: 16, sphere_azimuth: 32, ..cfg() };
        let back = -0.4;
        let (d1, d2, c1, c2) = (data.clone(), data, big.clone(), big.clone());
        let scheme = FdScheme::with_step(1e-3);
        let v_back = FnField::new(3, move |x| solve_cauchy(&d1, x, back, &c1).unwrap());
        let w_back = FnField::new(3, move |x| {
            derivative(|t| solve_cauchy(&d2, x, t, &c2).unwrap(), back, &scheme, 1).unwrap()
        });
        let reversed = CauchyData::new(Arc::new(v_back), Arc::new(w_back)).unwrap();
        let x = [0.1, 0.2, 0.0];
        let again = solve_cauchy(&reversed, &x, -back, &big).unwrap();
        assert!((again - v.eval(&x)).norm() <= 1e-6, "{again} vs {}", v.eval(&x));
    }

    /// Radial bump in `R³`: energy `4π ∫ (u_t² + u_r²) r² dr` by
    /// Gauss–Legendre in `r`, derivatives by differences of the solver.
    #[test]
    fn energy_is_conserved() {
        let bump: Arc<dyn TestField> = Arc::new(Bump { center: vec![0.0; 3], radius: 0.6, amplitude: 1.0 });
        let data = CauchyData::new(bump, zero(3)).unwrap();
        let c = WaveConfig { sphere_polar: 96, sphere_azimuth: 4, ..cfg() };
        let rule = crate::numerics::GaussLegendre::new(24);
        let h = 1e-3;
        let energy = |t: f64| -> f64 {
            let u = |r: f64, s: f64| solve_cauchy(&data, &[0.0, 0.0, r], s, &c).unwrap().re;
            let reach = 0.6 + t.abs();
            let breaks: Vec<f64> = (0..=12).map(|j| reach * j as f64 / 12.0).collect();
            rule.integrate_panels(&breaks, |r| {
                let ut = (u(r, t + h) - u(r, t - h)) / (2.0 * h);
                let ur = (u(r + h, t) - u(r - h, t)) / (2.0 * h);
                4.0 * std::f64::consts::PI * (ut * ut + ur * ur) * r * r
            })
        };
        let e0 = energy(0.0);
        for t in [0.25, 0.5, 1.0] {
            let e = energy(t);
            assert!((e - e0).abs() <= 0.01 * e0, "t={t}: {e} vs {e0}");
        }
    }
}
