use std::f64::consts::PI;

use num_complex::Complex64;

use super::{weighted_sum, Value};
use crate::{Error, Result};

/// Gauss–Legendre rule on `[−1, 1]`, nodes in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes are the roots of `P_m`, found by Newton iteration from the
    /// Tricomi initial guesses; weights are `2 / ((1 − x²) P'_m(x)²)`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let m = order;
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        for i in 0..m.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    let (_, d) = legendre_with_derivative(m, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // roots come out descending from +1
            nodes[m - 1 - i] = x;
            nodes[i] = -x;
            weights[m - 1 - i] = w;
            weights[i] = w;
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped affinely onto `[lo, hi]`.
    pub fn mapped(&self, lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<T: Value>(&self, lo: f64, hi: f64, mut f: impl FnMut(f64) -> T) -> T {
        weighted_sum(self.mapped(lo, hi).map(|(x, w)| (w, f(x))))
    }

    /// Composite rule over consecutive panels `[breaks[i], breaks[i+1]]`.
    pub fn integrate_panels<T: Value>(&self, breaks: &[f64], mut f: impl FnMut(f64) -> T) -> T {
        assert!(breaks.len() >= 2, "need at least one panel");
        let mut total: Option<T> = None;
        for pair in breaks.windows(2) {
            let part = self.integrate(pair[0], pair[1], &mut f);
            total = Some(match total {
                None => part,
                Some(acc) => acc + part,
            });
        }
        total.expect("at least one panel")
    }
}

/// `(P_m(x), P'_m(x))` by the three-term recurrence.
fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if m == 0 {
        return (1.0, 0.0);
    }
    let m = m as f64;
    let dp = m * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// A quadrature value with an order-doubling error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

/// Gauss–Legendre approximation of `∫_lo^hi g`, with error estimated as the
/// difference to the rule of twice the order.
pub fn integrate_interval(
    g: impl Fn(f64) -> Complex64,
    lo: f64,
    hi: f64,
    rule: &GaussLegendre,
) -> Result<Estimate> {
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "integration bounds must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    let checked = |rule: &GaussLegendre| -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in rule.mapped(lo, hi) {
            let v = g(x);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFiniteIntegrand { at: x });
            }
            acc += v * w;
        }
        Ok(acc)
    };
    let value = checked(rule)?;
    let refined = checked(&GaussLegendre::new(2 * rule.order()))?;
    Ok(Estimate {
        value,
        error: (refined - value).norm(),
    })
}
