use super::{weighted_sum, Value};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Accuracy {
    Second,
    Fourth,
}

impl Accuracy {
    fn order(self) -> i32 {
        match self {
            Accuracy::Second => 2,
            Accuracy::Fourth => 4,
        }
    }
}

/// Central finite-difference scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdScheme {
    pub step: f64,
    pub accuracy: Accuracy,
    pub richardson: bool,
    /// Closed interval the stencil must stay inside, if any.
    pub domain: Option<(f64, f64)>,
}

impl Default for FdScheme {
    fn default() -> Self {
        Self {
            step: 1e-4,
            accuracy: Accuracy::Fourth,
            richardson: true,
            domain: None,
        }
    }
}

impl FdScheme {
    pub fn with_step(step: f64) -> Self {
        Self {
            step,
            ..Self::default()
        }
    }

    /// Plain second-order central differences, no extrapolation.
    pub fn second_order(step: f64) -> Self {
        Self {
            step,
            accuracy: Accuracy::Second,
            richardson: false,
            domain: None,
        }
    }

    pub fn within(mut self, lo: f64, hi: f64) -> Self {
        self.domain = Some((lo, hi));
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "finite-difference step must be positive, got {}",
                self.step
            )));
        }
        Ok(())
    }
}

/// Stencil offsets (in units of h) and coefficients, with the divisor
/// applied as `h^k · denom`.
fn stencil(accuracy: Accuracy, k: u32) -> (&'static [(i32, f64)], f64) {
    match (accuracy, k) {
        (Accuracy::Second, 1) => (&[(-1, -1.0), (1, 1.0)], 2.0),
        (Accuracy::Second, 2) => (&[(-1, 1.0), (0, -2.0), (1, 1.0)], 1.0),
        (Accuracy::Second, 3) => (&[(-2, -1.0), (-1, 2.0), (1, -2.0), (2, 1.0)], 2.0),
        (Accuracy::Second, 4) => (&[(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)], 1.0),
        (Accuracy::Fourth, 1) => (&[(-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)], 12.0),
        (Accuracy::Fourth, 2) => (
            &[(-2, -1.0), (-1, 16.0), (0, -30.0), (1, 16.0), (2, -1.0)],
            12.0,
        ),
        (Accuracy::Fourth, 3) => (
            &[(-3, 1.0), (-2, -8.0), (-1, 13.0), (1, -13.0), (2, 8.0), (3, -1.0)],
            8.0,
        ),
        (Accuracy::Fourth, 4) => (
            &[
                (-3, -1.0),
                (-2, 12.0),
                (-1, -39.0),
                (0, 56.0),
                (1, -39.0),
                (2, 12.0),
                (3, -1.0),
            ],
            6.0,
        ),
        _ => unreachable!("derivative order checked by caller"),
    }
}

fn apply<T: Value>(g: &impl Fn(f64) -> T, at: f64, h: f64, accuracy: Accuracy, k: u32) -> T {
    let (taps, denom) = stencil(accuracy, k);
    let scale = 1.0 / (denom * h.powi(k as i32));
    weighted_sum(taps.iter().map(|&(off, c)| (c * scale, g(at + off as f64 * h))))
}

/// `k`-th derivative of `g` at `at` by central differences, optionally with
/// one level of Richardson extrapolation (steps `h` and `h/2`).
pub fn derivative<T: Value>(g: impl Fn(f64) -> T, at: f64, scheme: &FdScheme, k: u32) -> Result<T> {
    scheme.validate()?;
    if !(1..=4).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "derivative order must be in 1..=4, got {k}"
        )));
    }
    let reach = stencil(scheme.accuracy, k)
        .0
        .iter()
        .map(|(off, _)| off.abs())
        .max()
        .unwrap_or(0) as f64
        * scheme.step;
    if let Some((lo, hi)) = scheme.domain {
        if at - reach < lo || at + reach > hi {
            return Err(Error::StencilOutOfDomain {
                lo: at - reach,
                hi: at + reach,
                domain_lo: lo,
                domain_hi: hi,
            });
        }
    }
    let h = scheme.step;
    let coarse = apply(&g, at, h, scheme.accuracy, k);
    if !scheme.richardson {
        return Ok(coarse);
    }
    let fine = apply(&g, at, 0.5 * h, scheme.accuracy, k);
    let factor = 2f64.powi(scheme.accuracy.order());
    Ok((fine * factor - coarse) * (1.0 / (factor - 1.0)))
}

/// `∂ᵏf/∂x_axisᵏ` at `x`.
pub fn partial<T: Value>(
    f: impl Fn(&[f64]) -> T,
    x: &[f64],
    axis: usize,
    scheme: &FdScheme,
    k: u32,
) -> Result<T> {
    derivative(
        |s| {
            let mut probe = x.to_vec();
            probe[axis] = s;
            f(&probe)
        },
        x[axis],
        scheme,
        k,
    )
}

pub fn gradient<T: Value>(f: impl Fn(&[f64]) -> T, x: &[f64], scheme: &FdScheme) -> Result<Vec<T>> {
    (0..x.len()).map(|i| partial(&f, x, i, scheme, 1)).collect()
}

pub fn laplacian<T: Value>(f: impl Fn(&[f64]) -> T, x: &[f64], scheme: &FdScheme) -> Result<T> {
    let mut terms = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        terms.push((1.0, partial(&f, x, i, scheme, 2)?));
    }
    Ok(weighted_sum(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    #[test]
    fn quadratic_first_derivative() {
        let d = derivative(|x| x * x, 1.0, &FdScheme::default(), 1).unwrap();
        assert!((d - 2.0).abs() < 1e-10);
    }

    #[test]
    fn sine_at_zero() {
        let scheme = FdScheme {
            step: 1e-4,
            accuracy: Accuracy::Fourth,
            richardson: false,
            domain: None,
        };
        let d = derivative(f64::sin, 0.0, &scheme, 1).unwrap();
        assert!((d - 1.0).abs() < 1e-8);
    }

    #[test]
    fn cubic_second_derivative() {
        let d = derivative(|x: f64| x.powi(3), 2.0, &FdScheme::with_step(1e-3), 2).unwrap();
        assert!((d - 12.0).abs() < 1e-8, "{d}");
    }

    #[test]
    fn higher_orders() {
        let s = FdScheme::with_step(2e-2);
        let d3 = derivative(f64::exp, 0.5, &s, 3).unwrap();
        let d4 = derivative(f64::exp, 0.5, &s, 4).unwrap();
        assert_relative_eq!(d3, 0.5f64.exp(), epsilon = 1e-8);
        assert_relative_eq!(d4, 0.5f64.exp(), epsilon = 1e-6);
        let s2 = FdScheme::second_order(1e-3);
        for k in 1..=4 {
            let d = derivative(f64::exp, 0.0, &s2, k).unwrap();
            assert!((d - 1.0).abs() < 1e-3, "k={k}: {d}");
        }
    }

    #[test]
    fn complex_values() {
        let d = derivative(
            |x| Complex64::new(0.0, x).exp(),
            0.3,
            &FdScheme::with_step(1e-3),
            1,
        )
        .unwrap();
        let exact = Complex64::new(0.0, 1.0) * Complex64::new(0.0, 0.3).exp();
        assert!((d - exact).norm() < 1e-12);
    }

    #[test]
    fn stencil_outside_domain() {
        let s = FdScheme::with_step(0.1).within(0.0, 1.0);
        let err = derivative(f64::sqrt, 0.05, &s, 1).unwrap_err();
        assert!(matches!(err, Error::StencilOutOfDomain { .. }));
        assert!(derivative(f64::sqrt, 0.5, &s, 1).is_ok());
    }

    #[test]
    fn rejects_bad_order_and_step() {
        assert!(derivative(f64::sin, 0.0, &FdScheme::default(), 5).is_err());
        assert!(derivative(f64::sin, 0.0, &FdScheme::with_step(0.0), 1).is_err());
    }

    #[test]
    fn gradient_and_laplacian() {
        let f = |x: &[f64]| x[0] * x[0] * x[1] + (x[2]).sin();
        let x = [0.4, -1.1, 0.7];
        let g = gradient(f, &x, &FdScheme::with_step(1e-3)).unwrap();
        assert_relative_eq!(g[0], 2.0 * x[0] * x[1], epsilon = 1e-10);
        assert_relative_eq!(g[1], x[0] * x[0], epsilon = 1e-10);
        assert_relative_eq!(g[2], x[2].cos(), epsilon = 1e-10);
        let l = laplacian(f, &x, &FdScheme::with_step(1e-3)).unwrap();
        assert_relative_eq!(l, 2.0 * x[1] - x[2].sin(), epsilon = 1e-8);
    }
}
