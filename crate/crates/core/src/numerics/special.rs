use std::f64::consts::PI;

/// Area `ω_n = 2π^{n/2}/Γ(n/2)` of the unit sphere `S^{n−1} ⊂ Rⁿ`.
///
/// Built from `ω₁ = 2`, `ω₂ = 2π` and `ω_{n+2} = 2π ω_n / n`, which is exact
/// in the sense that no gamma function is evaluated.
pub fn unit_sphere_area(n: usize) -> f64 {
    assert!(n >= 1, "unit sphere area needs n >= 1");
    let (mut area, mut m) = if n % 2 == 1 { (2.0, 1) } else { (2.0 * PI, 2) };
    while m < n {
        area *= 2.0 * PI / m as f64;
        m += 2;
    }
    area
}

pub fn factorial(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

/// `1·3·5···(2k−1)`, with the empty product for `k = 0`.
pub fn double_factorial_odd(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * (2 * j - 1) as f64)
}

/// `Γ(k + ½) = (2k−1)!! √π / 2^k`.
pub fn gamma_half_integer(k: u32) -> f64 {
    double_factorial_odd(k) * PI.sqrt() / 2f64.powi(k as i32)
}
