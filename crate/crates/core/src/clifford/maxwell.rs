use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::algebra::Multivector;
use crate::numerics::{derivative, partial, FdScheme};
use crate::wave::{solve_cauchy_values, WaveConfig};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Spatial dimension of the Maxwell extension.
pub const MAXWELL_DIM: usize = 3;

type MvEval = dyn Fn(&[f64], f64) -> Multivector + Send + Sync;

/// `f(x, s)` on `R³ × R` with values in `Cl₄`; `e₀` pairs with `s`, `e_k`
/// with `x_k`.
#[derive(Clone)]
pub struct MvSpacetimeField {
    eval: Arc<MvEval>,
    ds: Option<Arc<MvEval>>,
}

impl fmt::Debug for MvSpacetimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MvSpacetimeField")
            .field("exact_ds", &self.ds.is_some())
            .finish()
    }
}

impl MvSpacetimeField {
    pub fn new(f: impl Fn(&[f64], f64) -> Multivector + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(f),
            ds: None,
        }
    }

    /// Supply `∂f/∂s` exactly.
    pub fn with_ds(mut self, g: impl Fn(&[f64], f64) -> Multivector + Send + Sync + 'static) -> Self {
        self.ds = Some(Arc::new(g));
        self
    }

    pub fn eval(&self, x: &[f64], s: f64) -> Multivector {
        (self.eval)(x, s)
    }

    pub fn ds(&self, x: &[f64], s: f64, scheme: &FdScheme) -> Result<Multivector> {
        match &self.ds {
            Some(g) => Ok(g(x, s)),
            None => derivative(|v| self.eval(x, v), s, scheme, 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxwellConfig {
    pub wave: WaveConfig,
    /// Differences in `x` and `t` for `j̃ = D̃f̃`.
    pub fd: FdScheme,
    /// Lattice step `h` of the continuity check.
    pub residual_step: f64,
}

impl Default for MaxwellConfig {
    fn default() -> Self {
        Self {
            wave: WaveConfig::default(),
            fd: FdScheme::with_step(1e-3),
            residual_step: 1e-2,
        }
    }
}

/// The extension at one complex spacetime point.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxwellPoint {
    pub f_tilde: Multivector,
    pub j_tilde: Multivector,
    /// `|⟨D̃j̃⟩₀|`, the scalar (charge-conservation) part of `D̃j̃`.
    pub continuity_residual: f64,
    /// `|D̃j̃|` over all blades.
    pub dirac_residual: f64,
}

fn check_point(x: &[f64]) -> Result<()> {
    if x.len() != MAXWELL_DIM {
        return Err(Error::DimensionMismatch {
            expected: MAXWELL_DIM,
            got: x.len(),
        });
    }
    Ok(())
}

/// `f̃(x, s + it)`: each blade solves the wave equation with `v = f(·, s)`
/// and `w = i ∂_s f(·, s)`.
pub fn extend_field(f: &MvSpacetimeField, x: &[f64], s: f64, t: f64, cfg: &MaxwellConfig) -> Result<Multivector> {
    check_point(x)?;
    if t == 0.0 {
        return Ok(f.eval(x, s));
    }
    let scheme = FdScheme::with_step(cfg.wave.fd_step);
    let u = solve_cauchy_values(
        |p: &[f64]| f.eval(p, s),
        |p: &[f64]| match f.ds(p, s, &scheme) {
            Ok(d) => d * I,
            Err(_) => f.eval(p, s) * f64::NAN,
        },
        MAXWELL_DIM,
        x,
        t,
        &cfg.wave,
    )?;
    if !u.is_finite() {
        return Err(Error::NonFiniteIntegrand { at: t });
    }
    Ok(u)
}

/// `D̃g = Σ_k e_k ∂_k g − i e₀ ∂_t g` for any `g(x, t)` with values in `Cl₄`.
fn hyperbolic_dirac(
    g: &dyn Fn(&[f64], f64) -> Result<Multivector>,
    x: &[f64],
    t: f64,
    scheme: &FdScheme,
) -> Result<Multivector> {
    // errors inside the stencil surface as NaN and are caught below
    let eval = |p: &[f64], s: f64| g(p, s).unwrap_or_else(|_| nan_mv());
    let dt = derivative(|s| eval(x, s), t, scheme, 1)?;
    let mut acc = dt.left_gen(0)? * (-I);
    for k in 0..MAXWELL_DIM {
        let d = partial(|p| eval(p, t), x, k, scheme, 1)?;
        acc = acc + d.left_gen(k + 1)?;
    }
    if !acc.is_finite() {
        return Err(Error::NonFiniteIntegrand { at: t });
    }
    Ok(acc)
}

fn nan_mv() -> Multivector {
    Multivector::scalar(MAXWELL_DIM + 1, 0, Complex64::new(f64::NAN, f64::NAN))
}

/// `j̃ = D̃f̃`. At `t = 0` this is `𝐃f = Σ e_k ∂_k f + e₀ ∂_s f` directly.
pub fn current(f: &MvSpacetimeField, x: &[f64], s: f64, t: f64, cfg: &MaxwellConfig) -> Result<Multivector> {
    check_point(x)?;
    if t == 0.0 {
        let mut acc = f.ds(x, s, &cfg.fd)?.left_gen(0)?;
        for k in 0..MAXWELL_DIM {
            acc = acc + partial(|p| f.eval(p, s), x, k, &cfg.fd, 1)?.left_gen(k + 1)?;
        }
        return Ok(acc);
    }
    hyperbolic_dirac(&|p, tt| extend_field(f, p, s, tt, cfg), x, t, &cfg.fd)
}

/// `D̃(D̃f̃)` by nested second-order differences of step `h/2`, which is
/// the standard `h`-lattice stencil for `Δ − ∂_t²`.
pub fn dirac_squared(f: &MvSpacetimeField, x: &[f64], s: f64, t: f64, h: f64, cfg: &MaxwellConfig) -> Result<Multivector> {
    check_point(x)?;
    let half = FdScheme::second_order(0.5 * h);
    let inner = |p: &[f64], tt: f64| {
        hyperbolic_dirac(&|q, u| extend_field(f, q, s, u, cfg), p, tt, &half)
    };
    hyperbolic_dirac(&inner, x, t, &half)
}

/// `f̃`, `j̃` and the residual of `D̃j̃ = 0` at `(x, s + it)`.
pub fn maxwell_extend(f: &MvSpacetimeField, x: &[f64], s: f64, t: f64, cfg: &MaxwellConfig) -> Result<MaxwellPoint> {
    let f_tilde = extend_field(f, x, s, t, cfg)?;
    let j_tilde = current(f, x, s, t, cfg)?;
    let dj = dirac_squared(f, x, s, t, cfg.residual_step, cfg)?;
    Ok(MaxwellPoint {
        f_tilde,
        j_tilde,
        continuity_residual: dj.scalar_part().norm(),
        dirac_residual: dj.norm(),
    })
}

/// `f = e₀e₁ cos x₂`, constant in `s`.
pub fn bivector_example() -> MvSpacetimeField {
    let e01 = Multivector::blade(MAXWELL_DIM + 1, 0, &[0, 1]).expect("valid blade");
    let zero = Multivector::zero(MAXWELL_DIM + 1, 0);
    MvSpacetimeField::new(move |x, _| e01.clone() * x[1].cos()).with_ds(move |_, _| zero.clone())
}
