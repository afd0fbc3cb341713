use crate::geometry::ComplexPoint;
use crate::numerics::{unit_sphere_area, GaussLegendre, SphereRule};
use crate::{Error, Result};

use super::kernel::singular_set_distance;

/// Shape of a bounded domain `M`.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Ball { center: Vec<f64>, radius: f64 },
    Box { lo: Vec<f64>, hi: Vec<f64> },
}

/// A ball or box with the quadrature orders used on it.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub shape: Shape,
    /// Polar nodes of the sphere rule on a ball, or nodes per edge on a box face.
    pub boundary_polar: usize,
    pub boundary_azimuth: usize,
    /// Gauss–Legendre order for radial and per-axis volume rules.
    pub volume_order: usize,
}

/// A boundary quadrature node: point, outward unit normal, area weight.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryNode {
    pub point: Vec<f64>,
    pub normal: Vec<f64>,
    pub weight: f64,
}

impl Domain {
    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidArgument(format!("ball radius must be positive, got {radius}")));
        }
        if center.is_empty() {
            return Err(Error::InvalidArgument("empty center".into()));
        }
        Ok(Self::with_shape(Shape::Ball { center, radius }))
    }

    pub fn unit_ball(n: usize) -> Self {
        Self::ball(vec![0.0; n], 1.0).expect("unit ball is valid")
    }

    pub fn cuboid(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        if lo.is_empty() || lo.iter().zip(&hi).any(|(l, h)| !(l < h)) {
            return Err(Error::InvalidArgument("box needs lo < hi on every axis".into()));
        }
        Ok(Self::with_shape(Shape::Box { lo, hi }))
    }

    fn with_shape(shape: Shape) -> Self {
        Self {
            shape,
            boundary_polar: 24,
            boundary_azimuth: 48,
            volume_order: 16,
        }
    }

    pub fn with_orders(mut self, polar: usize, azimuth: usize, volume: usize) -> Self {
        self.boundary_polar = polar;
        self.boundary_azimuth = azimuth;
        self.volume_order = volume;
        self
    }

    pub fn dim(&self) -> usize {
        match &self.shape {
            Shape::Ball { center, .. } => center.len(),
            Shape::Box { lo, .. } => lo.len(),
        }
    }

    /// Diameter-scale length used for tolerances.
    pub fn scale(&self) -> f64 {
        match &self.shape {
            Shape::Ball { radius, .. } => *radius,
            Shape::Box { lo, hi } => lo.iter().zip(hi).map(|(l, h)| h - l).fold(0.0, f64::max),
        }
    }

    /// Positive inside, negative outside, zero on `∂M`.
    pub fn signed_distance(&self, x: &[f64]) -> f64 {
        match &self.shape {
            Shape::Ball { center, radius } => radius - dist(x, center),
            Shape::Box { lo, hi } => {
                let mut inside = f64::INFINITY;
                let mut outside2 = 0.0;
                for i in 0..lo.len() {
                    inside = inside.min(x[i] - lo[i]).min(hi[i] - x[i]);
                    let gap = (lo[i] - x[i]).max(x[i] - hi[i]).max(0.0);
                    outside2 += gap * gap;
                }
                if inside >= 0.0 {
                    inside
                } else {
                    -outside2.sqrt()
                }
            }
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.signed_distance(x) > 0.0
    }

    pub(crate) fn boundary_tolerance(&self) -> f64 {
        1e-12 * self.scale().max(1.0)
    }

    pub fn on_boundary(&self, x: &[f64]) -> bool {
        self.signed_distance(x).abs() <= self.boundary_tolerance()
    }

    pub fn boundary_nodes(&self) -> Vec<BoundaryNode> {
        let n = self.dim();
        match &self.shape {
            Shape::Ball { center, radius } => {
                let rule = SphereRule::new(n - 1, self.boundary_polar, self.boundary_azimuth);
                let area = unit_sphere_area(n) * radius.powi(n as i32 - 1);
                rule.iter()
                    .map(|(w_dir, w)| BoundaryNode {
                        point: center.iter().zip(w_dir).map(|(c, d)| c + radius * d).collect(),
                        normal: w_dir.to_vec(),
                        weight: w * area,
                    })
                    .collect()
            }
            Shape::Box { lo, hi } => {
                let gl = GaussLegendre::new(self.boundary_polar);
                let mut nodes = Vec::new();
                for axis in 0..n {
                    let others: Vec<usize> = (0..n).filter(|&j| j != axis).collect();
                    let per_axis: Vec<Vec<(f64, f64)>> =
                        others.iter().map(|&j| gl.mapped(lo[j], hi[j]).collect()).collect();
                    for (face, sign) in [(lo[axis], -1.0), (hi[axis], 1.0)] {
                        for combo in tensor(&per_axis) {
                            let mut point = vec![0.0; n];
                            point[axis] = face;
                            let mut weight = 1.0;
                            for (k, &j) in others.iter().enumerate() {
                                point[j] = combo[k].0;
                                weight *= combo[k].1;
                            }
                            let mut normal = vec![0.0; n];
                            normal[axis] = sign;
                            nodes.push(BoundaryNode { point, normal, weight });
                        }
                    }
                }
                nodes
            }
        }
    }

    /// Largest gap between neighbouring boundary nodes, roughly.
    pub fn node_spacing(&self) -> f64 {
        let n = self.dim();
        match &self.shape {
            Shape::Ball { radius, .. } => {
                let per = if n == 2 { self.boundary_azimuth } else { self.boundary_polar };
                std::f64::consts::PI * radius / per as f64 * 2.0
            }
            Shape::Box { .. } => 2.0 * self.scale() / self.boundary_polar as f64,
        }
    }

    /// Distance `R(ω)` from the interior point `x` to `∂M` along `ω`.
    pub fn exit_distance(&self, x: &[f64], omega: &[f64]) -> f64 {
        match &self.shape {
            Shape::Ball { center, radius } => {
                let d: Vec<f64> = x.iter().zip(center).map(|(a, b)| a - b).collect();
                let b: f64 = d.iter().zip(omega).map(|(a, w)| a * w).sum();
                let c = d.iter().map(|v| v * v).sum::<f64>() - radius * radius;
                -b + (b * b - c).max(0.0).sqrt()
            }
            Shape::Box { lo, hi } => {
                let mut t = f64::INFINITY;
                for i in 0..x.len() {
                    if omega[i] > 0.0 {
                        t = t.min((hi[i] - x[i]) / omega[i]);
                    } else if omega[i] < 0.0 {
                        t = t.min((lo[i] - x[i]) / omega[i]);
                    }
                }
                t
            }
        }
    }

    /// Rule for `∫_M g dx′` in polar form about the interior point `x`:
    /// `Σ w · g(x + ρω) ρ^{n−1}` over the returned `(ω, ρ, w)`.
    ///
    /// A ball uses directions times radial panels. A box is split into one
    /// pyramid per face with apex `x`, so the exit distance never has kinks
    /// inside a cell: `x′ = x + s(x_f − x)` gives `dx′ = sⁿ⁻¹ h dA ds`.
    pub fn polar_nodes(&self, x: &[f64], radial_panels: usize) -> Vec<(Vec<f64>, f64, f64)> {
        self.polar_nodes_beyond(x, radial_panels, &|_| 0.0)
    }

    /// [`Domain::polar_nodes`] restricted to `ρ ≥ start(ω)` along each ray;
    /// `start` must stay below the exit distance.
    pub fn polar_nodes_beyond(
        &self,
        x: &[f64],
        radial_panels: usize,
        start: &dyn Fn(&[f64]) -> f64,
    ) -> Vec<(Vec<f64>, f64, f64)> {
        let n = self.dim();
        let gl = GaussLegendre::new(self.volume_order);
        let panels = radial_panels.max(1);
        let unit_breaks: Vec<f64> = (0..=panels).map(|i| i as f64 / panels as f64).collect();
        let radial: Vec<(f64, f64)> = unit_breaks
            .windows(2)
            .flat_map(|w| gl.mapped(w[0], w[1]).collect::<Vec<_>>())
            .collect();
        let mut out = Vec::new();
        match &self.shape {
            Shape::Ball { .. } => {
                let dirs = SphereRule::new(n - 1, self.volume_order, 2 * self.volume_order);
                let area = unit_sphere_area(n);
                for (omega, wd) in dirs.iter() {
                    let len = self.exit_distance(x, omega);
                    let r0 = start(omega);
                    for &(s, ws) in &radial {
                        out.push((omega.to_vec(), r0 + s * (len - r0), wd * ws * (len - r0) * area));
                    }
                }
            }
            Shape::Box { lo, hi } => {
                for axis in 0..n {
                    let others: Vec<usize> = (0..n).filter(|&j| j != axis).collect();
                    let per_axis: Vec<Vec<(f64, f64)>> = others
                        .iter()
                        .map(|&j| {
                            let mid = 0.5 * (lo[j] + hi[j]);
                            let mut v: Vec<(f64, f64)> = gl.mapped(lo[j], mid).collect();
                            v.extend(gl.mapped(mid, hi[j]));
                            v
                        })
                        .collect();
                    for face in [lo[axis], hi[axis]] {
                        let height = (face - x[axis]).abs();
                        for combo in tensor(&per_axis) {
                            let mut d = vec![0.0; n];
                            d[axis] = face - x[axis];
                            let mut wa = 1.0;
                            for (k, &j) in others.iter().enumerate() {
                                d[j] = combo[k].0 - x[j];
                                wa *= combo[k].1;
                            }
                            let len = d.iter().map(|v| v * v).sum::<f64>().sqrt();
                            let omega: Vec<f64> = d.iter().map(|v| v / len).collect();
                            let s0 = start(&omega) / len;
                            let scale = wa * height / len.powi(n as i32 - 1) * (1.0 - s0);
                            for &(s, ws) in &radial {
                                let s = s0 + s * (1.0 - s0);
                                out.push((omega.clone(), s * len, ws * scale));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Product rule for `∫_M g dx`: `(point, weight)` pairs.
    pub fn volume_nodes(&self) -> Vec<(Vec<f64>, f64)> {
        let n = self.dim();
        let gl = GaussLegendre::new(self.volume_order);
        match &self.shape {
            Shape::Ball { center, radius } => {
                let dirs = SphereRule::new(n - 1, self.volume_order, 2 * self.volume_order);
                let area = unit_sphere_area(n);
                let mut out = Vec::new();
                for (r, wr) in gl.mapped(0.0, *radius) {
                    for (w_dir, wd) in dirs.iter() {
                        let p = center.iter().zip(w_dir).map(|(c, d)| c + r * d).collect();
                        out.push((p, wr * wd * area * r.powi(n as i32 - 1)));
                    }
                }
                out
            }
            Shape::Box { lo, hi } => {
                let per_axis: Vec<Vec<(f64, f64)>> =
                    (0..n).map(|i| gl.mapped(lo[i], hi[i]).collect()).collect();
                tensor(&per_axis)
                    .into_iter()
                    .map(|combo| {
                        let p = combo.iter().map(|c| c.0).collect();
                        let w = combo.iter().map(|c| c.1).product();
                        (p, w)
                    })
                    .collect()
            }
        }
    }
}

fn dist(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// Cartesian product of per-axis `(node, weight)` lists, last axis fastest.
fn tensor(axes: &[Vec<(f64, f64)>]) -> Vec<Vec<(f64, f64)>> {
    let mut out: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&node| {
                    let mut v = prefix.clone();
                    v.push(node);
                    v
                })
            })
            .collect();
    }
    out
}

/// Whether `z` keeps its kernel singularity `x + S_n(y)` off `∂M`.
///
/// Real points are regular exactly when they are off `∂M`. On a ball the
/// distance from `x + S_n(y)` to the sphere is computed in closed form; on a
/// box it is the minimum over boundary nodes of the distance from `x − x_b`
/// to `S_n(y)`, compared with half the node spacing.
pub fn regular_point(z: &ComplexPoint, m: &Domain) -> Result<bool> {
    if z.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: z.dim(),
        });
    }
    let a = z.a();
    if a == 0.0 {
        return Ok(!m.on_boundary(&z.x));
    }
    let n = z.dim();
    match &m.shape {
        Shape::Ball { center, radius } => {
            let w: Vec<f64> = center.iter().zip(&z.x).map(|(c, x)| c - x).collect();
            let par = w.iter().zip(&z.y).map(|(p, q)| p * q).sum::<f64>() / a;
            let r2: f64 = w.iter().map(|v| v * v).sum();
            let perp = (r2 - par * par).max(0.0).sqrt();
            // distances from the center to the nearest and farthest points of the set
            let near_perp = if n % 2 == 1 { (perp - a).max(0.0) } else { (perp - a).abs() };
            let near = (par * par + near_perp * near_perp).sqrt();
            let far = (par * par + (perp + a) * (perp + a)).sqrt();
            let gap = if n == 2 {
                // rim of two points at perp ± a
                let d1 = (par * par + (perp - a) * (perp - a)).sqrt();
                (d1 - radius).abs().min((far - radius).abs())
            } else if near <= *radius && *radius <= far {
                0.0
            } else {
                (near - radius).abs().min((far - radius).abs())
            };
            Ok(gap > m.boundary_tolerance())
        }
        Shape::Box { .. } => {
            let min = m
                .boundary_nodes()
                .iter()
                .map(|b| {
                    let w: Vec<f64> = z.x.iter().zip(&b.point).map(|(x, p)| x - p).collect();
                    singular_set_distance(&w, &z.y)
                })
                .fold(f64::INFINITY, f64::min);
            Ok(min > 0.5 * m.node_spacing())
        }
    }
}
