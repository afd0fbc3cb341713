//! Deterministic quadrature and finite-difference kernels.
//!
//! Every rule sums in ascending node order, so repeated evaluations are
//! bitwise identical. Sphere means use the normalized measure (total mass 1).

mod diff;
mod gauss;
mod special;
mod sphere;

use std::ops::{Add, Mul, Sub};

pub use diff::{derivative, gradient, laplacian, partial, Accuracy, FdScheme};
pub use gauss::{integrate_interval, Estimate, GaussLegendre};
pub use special::{double_factorial_odd, factorial, gamma_half_integer, unit_sphere_area};
pub use sphere::{mean_on_sphere, CircleRule, EmbeddedRule, SphereFrame, SphereRule};

/// Values that quadrature and difference formulas can combine linearly.
pub trait Value: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl<T> Value for T where T: Clone + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

/// `Σ wᵢ tᵢ` in iteration order. Panics on an empty iterator.
pub(crate) fn weighted_sum<T: Value>(terms: impl IntoIterator<Item = (f64, T)>) -> T {
    let mut iter = terms.into_iter();
    let (w0, t0) = iter.next().expect("weighted_sum over an empty rule");
    iter.fold(t0 * w0, |acc, (w, t)| acc + t * w)
}

/// Smooth plateau: `1` for `|s| ≤ w`, `0` for `|s| ≥ 2w`, `C^∞` between.
pub fn plateau(s: f64, w: f64) -> f64 {
    let t = (s.abs() - w) / w;
    if t <= 0.0 {
        return 1.0;
    }
    if t >= 1.0 {
        return 0.0;
    }
    let bump = |v: f64| if v > 0.0 { (-1.0 / v).exp() } else { 0.0 };
    bump(1.0 - t) / (bump(1.0 - t) + bump(t))
}
