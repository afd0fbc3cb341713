use cxpt_core::geometry::{
    axis_frame, classify_point, complex_distance, default_tolerance, from_oblate, grad_pq, jacobian_volume,
    rho_from_pq, to_cylindrical, zeta_from_pq, OblateCoords,
};
use cxpt_core::numerics::{gradient, laplacian, CircleRule, FdScheme, GaussLegendre, SphereRule};
use cxpt_core::{ComplexPoint, PointClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn p_of(x: &[f64], y: &[f64]) -> f64 {
    complex_distance(&ComplexPoint::new(x.to_vec(), y.to_vec()).unwrap()).p
}

fn q_of(x: &[f64], y: &[f64]) -> f64 {
    complex_distance(&ComplexPoint::new(x.to_vec(), y.to_vec()).unwrap()).q
}

/// Distance from `x` to the closed branch disk of `y`.
fn disk_distance(x: &[f64], y: &[f64]) -> f64 {
    let a = norm(y);
    let zeta = dot(x, y) / a;
    let rho = (dot(x, x) - zeta * zeta).max(0.0).sqrt();
    let out = (rho - a).max(0.0);
    (out * out + zeta * zeta).sqrt()
}

/// Random `(x, y)` at least `margin` away from the disk.
fn regular_sample(rng: &mut ChaCha8Rng, n: usize, margin: f64) -> (Vec<f64>, Vec<f64>) {
    loop {
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        if norm(&y) > 0.3 && disk_distance(&x, &y) >= margin {
            return (x, y);
        }
    }
}

#[test]
fn fd_gradients_match_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let scheme = FdScheme::default();
    for j in 0..100 {
        let n = 3 + j % 3;
        let (x, y) = regular_sample(&mut rng, n, 0.3);
        let a = norm(&y);
        let (p, q) = (p_of(&x, &y), q_of(&x, &y));
        let m = p * p + q * q;
        let gp = gradient(|v: &[f64]| p_of(v, &y), &x, &scheme).unwrap();
        let gq = gradient(|v: &[f64]| q_of(v, &y), &x, &scheme).unwrap();
        let (ep, eq) = grad_pq(&x, &y).unwrap();
        let scale = 1.0 / m.sqrt();
        for i in 0..n {
            assert!((gp[i] - ep[i]).abs() <= 1e-6 * scale.max(1.0), "∇p at {x:?}");
            assert!((gq[i] - eq[i]).abs() <= 1e-6 * scale.max(1.0), "∇q at {x:?}");
        }
        let (pp, qq, pq) = (dot(&gp, &gp), dot(&gq, &gq), dot(&gp, &gq));
        assert!((pp - (a * a + p * p) / m).abs() <= 1e-6 * pp, "(∇p)² at {x:?}");
        assert!((qq - (a * a - q * q) / m).abs() <= 1e-6 * pp, "(∇q)² at {x:?}");
        assert!(pq.abs() <= 1e-6 * pp, "∇p·∇q at {x:?}");
        assert!((pp - qq - 1.0).abs() <= 1e-6 * pp, "(∇p)² − (∇q)² at {x:?}");
    }
}

#[test]
fn fd_laplacians_of_p_and_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let scheme = FdScheme::with_step(1e-3);
    for j in 0..100 {
        let n = 3 + j % 3;
        let (x, y) = regular_sample(&mut rng, n, 0.3);
        let (p, q) = (p_of(&x, &y), q_of(&x, &y));
        let m = p * p + q * q;
        let scale = (n - 1) as f64 / m.sqrt();
        let lp = laplacian(|v: &[f64]| p_of(v, &y), &x, &scheme).unwrap();
        let lq = laplacian(|v: &[f64]| q_of(v, &y), &x, &scheme).unwrap();
        assert!((lp - (n - 1) as f64 * p / m).abs() <= 1e-6 * scale, "Δp at {x:?}");
        assert!((lq + (n - 1) as f64 * q / m).abs() <= 1e-6 * scale, "Δq at {x:?}");
    }
}

#[test]
fn coordinate_level_sets_are_quadrics() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in [3usize, 4, 5] {
        for _ in 0..50 {
            let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let a = norm(&y);
            let sigma = {
                let s: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let l = norm(&s);
                s.into_iter().map(|c| c / l).collect::<Vec<_>>()
            };
            let p = rng.gen_range(0.1..3.0);
            let q = rng.gen_range(-0.95..0.95) * a;
            let x = from_oblate(&OblateCoords { p, q, sigma: Some(sigma) }, &y).unwrap();
            let cyl = to_cylindrical(&x, &y).unwrap();
            let (rho2, zeta2) = (cyl.rho * cyl.rho, cyl.zeta * cyl.zeta);
            // constant p: oblate spheroid; constant q: hyperboloid of one sheet
            let spheroid = rho2 / (a * a + p * p) + zeta2 / (p * p);
            let hyperboloid = rho2 / (a * a - q * q) - zeta2 / (q * q);
            assert!((spheroid - 1.0).abs() <= 1e-12 * (1.0 + zeta2 / (p * p)), "{spheroid}");
            assert!((hyperboloid - 1.0).abs() <= 1e-10 * (1.0 + zeta2 / (q * q)), "{hyperboloid}");
            // and the coordinates come back
            let back = complex_distance(&ComplexPoint::new(x.clone(), y.clone()).unwrap());
            assert!((back.p - p).abs() <= 1e-10 && (back.q - q).abs() <= 1e-10);
        }
    }
}

fn gaussian_integral_in_oblate(n: usize, y: &[f64], center: &[f64]) -> f64 {
    let a = norm(y);
    let frame = axis_frame(y).unwrap();
    let yhat: Vec<f64> = y.iter().map(|v| v / a).collect();
    let dirs: Vec<(Vec<f64>, f64)> = if n == 3 {
        let circle = CircleRule::new(48);
        circle.angles().map(|t| (vec![t.cos(), t.sin()], 1.0 / 48.0)).collect()
    } else {
        SphereRule::new(n - 2, 16, 32).iter().map(|(u, w)| (u.to_vec(), w)).collect()
    };
    let gl = GaussLegendre::new(24);
    let p_breaks: Vec<f64> = (0..=16).map(|k| 0.5 * k as f64).collect();
    let theta = GaussLegendre::new(32);
    let mut total = 0.0;
    let mut x = vec![0.0; n];
    let mut dir = vec![0.0; n];
    for w in p_breaks.windows(2) {
        for (p, wp) in gl.mapped(w[0], w[1]) {
            for (th, wt) in theta.mapped(-PI / 2.0, PI / 2.0) {
                let q = a * th.sin();
                let jac = jacobian_volume(p, q, a, n).unwrap() * a * th.cos();
                let (rho, zeta) = (rho_from_pq(p, q, a), zeta_from_pq(p, q, a));
                let mut mean = 0.0;
                for (s, ws) in &dirs {
                    frame.embed_into(s, &mut dir);
                    for i in 0..n {
                        x[i] = rho * dir[i] + zeta * yhat[i];
                    }
                    let d2: f64 = x.iter().zip(center).map(|(u, c)| (u - c) * (u - c)).sum();
                    mean += ws * (-d2).exp();
                }
                total += wp * wt * jac * mean;
            }
        }
    }
    total
}

#[test]
fn oblate_volume_measure_reproduces_cartesian_integral() {
    for (n, y, center) in [
        (3usize, vec![0.0, 0.0, 1.0], vec![0.3, -0.2, 0.1]),
        (3, vec![0.4, -0.3, 0.5], vec![0.0, 0.2, -0.1]),
        (4, vec![0.0, 0.0, 0.0, 1.0], vec![0.3, -0.2, 0.1, 0.4]),
        (4, vec![0.2, 0.5, -0.1, 0.7], vec![0.1, 0.0, -0.2, 0.3]),
    ] {
        let exact = PI.powf(n as f64 / 2.0);
        let got = gaussian_integral_in_oblate(n, &y, &center);
        assert!((got - exact).abs() <= 1e-6 * exact, "n={n}: {got} vs {exact}");
    }
}

#[test]
fn classification_is_consistent_with_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..1000 {
        let n = rng.gen_range(3..=5);
        let (x, y) = regular_sample(&mut rng, n, 1e-6);
        let class = classify_point(&x, &y, default_tolerance(norm(&y)), None);
        assert!(matches!(class, PointClass::Regular | PointClass::AxisDegenerate));
    }
}
