use std::f64::consts::PI;

use super::{weighted_sum, GaussLegendre, Value};
use crate::{Error, Result};

/// Equispaced trapezoid rule on the unit circle, weights `1/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleRule {
    count: usize,
}

impl CircleRule {
    pub fn new(count: usize) -> Self {
        assert!(count >= 1, "circle rule needs at least one node");
        Self { count }
    }

    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |j| 2.0 * PI * j as f64 / self.count as f64)
    }

    /// Mean of a `2π`-periodic function.
    pub fn mean<T: Value>(&self, mut f: impl FnMut(f64) -> T) -> T {
        let w = 1.0 / self.count as f64;
        weighted_sum(self.angles().map(|phi| (w, f(phi))))
    }
}

/// Product rule for the normalized measure on the unit sphere `S^m ⊂ R^{m+1}`.
///
/// `S¹` is the trapezoid rule; `S²` is Gauss–Legendre in `cos θ` times a
/// uniform azimuth; `S^m` for `m ≥ 3` is Gauss–Legendre in the polar angle
/// with weight `sin^{m−1} θ` times the rule for `S^{m−1}`. With an even
/// azimuth count every rule is symmetric under `u ↦ −u`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRule {
    dim: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl SphereRule {
    pub fn new(dim: usize, polar: usize, azimuth: usize) -> Self {
        let (points, weights) = match dim {
            0 => (vec![1.0, -1.0], vec![0.5, 0.5]),
            1 => {
                let circle = CircleRule::new(azimuth);
                let points = circle.angles().flat_map(|phi| [phi.cos(), phi.sin()]).collect();
                (points, vec![1.0 / azimuth as f64; azimuth])
            }
            2 => {
                let gl = GaussLegendre::new(polar);
                let circle = CircleRule::new(azimuth);
                let mut points = Vec::with_capacity(3 * polar * azimuth);
                let mut weights = Vec::with_capacity(polar * azimuth);
                for (t, wt) in gl.mapped(-1.0, 1.0) {
                    let s = (1.0 - t * t).sqrt();
                    for phi in circle.angles() {
                        points.extend([s * phi.cos(), s * phi.sin(), t]);
                        weights.push(0.5 * wt / azimuth as f64);
                    }
                }
                (points, weights)
            }
            _ => {
                let lower = SphereRule::new(dim - 1, polar, azimuth);
                let gl = GaussLegendre::new(polar);
                let mut points = Vec::new();
                let mut weights = Vec::new();
                let mut total = 0.0;
                for (theta, wt) in gl.mapped(0.0, PI) {
                    let (s, c) = theta.sin_cos();
                    let w_theta = wt * s.powi(dim as i32 - 1);
                    for (u, wu) in lower.iter() {
                        points.extend(u.iter().map(|ui| s * ui));
                        points.push(c);
                        weights.push(w_theta * wu);
                        total += w_theta * wu;
                    }
                }
                weights.iter_mut().for_each(|w| *w /= total);
                (points, weights)
            }
        };
        Self {
            dim,
            points,
            weights,
        }
    }

    /// Sphere dimension `m`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Unit points in `R^{m+1}` with their weights.
    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.points
            .chunks_exact(self.dim + 1)
            .zip(self.weights.iter().copied())
    }
}

/// Orthonormal vectors in `Rⁿ` spanning the subspace that carries a sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereFrame {
    ambient: usize,
    vectors: Vec<Vec<f64>>,
}

impl SphereFrame {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        let ambient = vectors.first().map_or(0, Vec::len);
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: v.len(),
                });
            }
            for (j, u) in vectors.iter().enumerate().take(i + 1) {
                let dot: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                if (dot - expected).abs() > 1e-12 {
                    return Err(Error::InvalidArgument("frame is not orthonormal".into()));
                }
            }
        }
        Ok(Self { ambient, vectors })
    }

    /// The full sphere `S^{n−1}` of `Rⁿ`.
    pub fn standard(n: usize) -> Self {
        let vectors = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self {
            ambient: n,
            vectors,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Dimension of the sphere this frame carries.
    pub fn sphere_dim(&self) -> usize {
        self.vectors.len().saturating_sub(1)
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Writes `Σ_j u_j v_j` into `out`.
    pub fn embed_into(&self, u: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for (uj, vj) in u.iter().zip(&self.vectors) {
            for (o, v) in out.iter_mut().zip(vj) {
                *o += uj * v;
            }
        }
    }
}

/// Mean of `f` over the sphere `center + radius·S^m`, `S^m` spanned by `frame`.
pub fn mean_on_sphere<T: Value>(
    f: impl Fn(&[f64]) -> T,
    center: &[f64],
    radius: f64,
    frame: &SphereFrame,
    rule: &SphereRule,
) -> Result<T> {
    if !(radius >= 0.0) {
        return Err(Error::InvalidRadius(radius));
    }
    if center.len() != frame.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: frame.ambient_dim(),
            got: center.len(),
        });
    }
    if rule.dim() != frame.sphere_dim() {
        return Err(Error::DimensionMismatch {
            expected: frame.sphere_dim(),
            got: rule.dim(),
        });
    }
    let mut dir = vec![0.0; center.len()];
    let mut point = vec![0.0; center.len()];
    Ok(weighted_sum(rule.iter().map(|(u, w)| {
        frame.embed_into(u, &mut dir);
        for ((p, c), d) in point.iter_mut().zip(center).zip(&dir) {
            *p = c + radius * d;
        }
        (w, f(&point))
    })))
}

/// A rule with its nodes already embedded through a frame, for repeated
/// means over concentric or translated spheres.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedRule {
    ambient: usize,
    dirs: Vec<f64>,
    weights: Vec<f64>,
}

impl EmbeddedRule {
    pub fn new(frame: &SphereFrame, rule: &SphereRule) -> Result<Self> {
        if rule.dim() != frame.sphere_dim() {
            return Err(Error::DimensionMismatch {
                expected: frame.sphere_dim(),
                got: rule.dim(),
            });
        }
        let ambient = frame.ambient_dim();
        let mut dirs = vec![0.0; ambient * rule.len()];
        for ((u, _), out) in rule.iter().zip(dirs.chunks_exact_mut(ambient)) {
            frame.embed_into(u, out);
        }
        Ok(Self {
            ambient,
            dirs,
            weights: rule.iter().map(|(_, w)| w).collect(),
        })
    }

    /// Same as [`mean_on_sphere`] with the frame and rule baked in.
    pub fn mean<T: Value>(&self, f: impl Fn(&[f64]) -> T, center: &[f64], radius: f64) -> Result<T> {
        if !(radius >= 0.0) {
            return Err(Error::InvalidRadius(radius));
        }
        if center.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: center.len(),
            });
        }
        let mut point = vec![0.0; self.ambient];
        Ok(weighted_sum(self.dirs.chunks_exact(self.ambient).zip(&self.weights).map(|(d, &w)| {
            for ((p, c), d) in point.iter_mut().zip(center).zip(d) {
                *p = c + radius * d;
            }
            (w, f(&point))
        })))
    }
}
