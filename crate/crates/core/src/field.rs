//! Scalar test fields on `Rⁿ` and a small catalog of smooth built-ins.

use std::sync::Arc;

use num_complex::Complex64;

/// Smoothness order standing for `C^∞`.
pub const C_INFINITY: u32 = u32::MAX;

/// A complex test function `f: Rⁿ → C`.
pub trait TestField: Send + Sync {
    fn dim(&self) -> usize;

    fn eval(&self, x: &[f64]) -> Complex64;

    /// Largest `k` with `f ∈ C^k`.
    fn smoothness(&self) -> u32 {
        C_INFINITY
    }

    /// Exact gradient, when the field knows it.
    fn gradient(&self, _x: &[f64]) -> Option<Vec<Complex64>> {
        None
    }

    /// Radius of a ball about the origin outside which `f` vanishes.
    fn support_radius(&self) -> Option<f64> {
        None
    }
}

impl<T: TestField + ?Sized> TestField for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, x: &[f64]) -> Complex64 {
        (**self).eval(x)
    }
    fn smoothness(&self) -> u32 {
        (**self).smoothness()
    }
    fn gradient(&self, x: &[f64]) -> Option<Vec<Complex64>> {
        (**self).gradient(x)
    }
    fn support_radius(&self) -> Option<f64> {
        (**self).support_radius()
    }
}

impl<T: TestField + ?Sized> TestField for Arc<T> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, x: &[f64]) -> Complex64 {
        (**self).eval(x)
    }
    fn smoothness(&self) -> u32 {
        (**self).smoothness()
    }
    fn gradient(&self, x: &[f64]) -> Option<Vec<Complex64>> {
        (**self).gradient(x)
    }
    fn support_radius(&self) -> Option<f64> {
        (**self).support_radius()
    }
}

impl<T: TestField + ?Sized> TestField for Box<T> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, x: &[f64]) -> Complex64 {
        (**self).eval(x)
    }
    fn smoothness(&self) -> u32 {
        (**self).smoothness()
    }
    fn gradient(&self, x: &[f64]) -> Option<Vec<Complex64>> {
        (**self).gradient(x)
    }
    fn support_radius(&self) -> Option<f64> {
        (**self).support_radius()
    }
}

type Eval = dyn Fn(&[f64]) -> Complex64 + Send + Sync;
type Grad = dyn Fn(&[f64]) -> Vec<Complex64> + Send + Sync;

/// A field from closures.
#[derive(Clone)]
pub struct FnField {
    dim: usize,
    smoothness: u32,
    eval: Arc<Eval>,
    grad: Option<Arc<Grad>>,
    support: Option<f64>,
}

impl FnField {
    pub fn new(dim: usize, f: impl Fn(&[f64]) -> Complex64 + Send + Sync + 'static) -> Self {
        Self {
            dim,
            smoothness: C_INFINITY,
            eval: Arc::new(f),
            grad: None,
            support: None,
        }
    }

    /// A real-valued field.
    pub fn real(dim: usize, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(dim, move |x| Complex64::new(f(x), 0.0))
    }

    pub fn with_smoothness(mut self, k: u32) -> Self {
        self.smoothness = k;
        self
    }

    pub fn with_gradient(
        mut self,
        g: impl Fn(&[f64]) -> Vec<Complex64> + Send + Sync + 'static,
    ) -> Self {
        self.grad = Some(Arc::new(g));
        self
    }

    pub fn with_support(mut self, radius: f64) -> Self {
        self.support = Some(radius);
        self
    }
}

impl std::fmt::Debug for FnField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FnField")
            .field("dim", &self.dim)
            .field("smoothness", &self.smoothness)
            .field("has_gradient", &self.grad.is_some())
            .finish()
    }
}

impl TestField for FnField {
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, x: &[f64]) -> Complex64 {
        (self.eval)(x)
    }
    fn smoothness(&self) -> u32 {
        self.smoothness
    }
    fn gradient(&self, x: &[f64]) -> Option<Vec<Complex64>> {
        self.grad.as_ref().map(|g| g(x))
    }
    fn support_radius(&self) -> Option<f64> {
        self.support
    }
}

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constant {
    pub dim: usize,
    pub value: Complex64,
}

impl TestField for Constant {
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, _x: &[f64]) -> Complex64 {
        self.value
    }
    fn gradient(&self, _x: &[f64]) -> Option<Vec<Complex64>> {
        Some(vec![Complex64::default(); self.dim])
    }
}

/// `f(x) = x_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coordinate {
    pub dim: usize,
    pub index: usize,
}

impl TestField for Coordinate {
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, x: &[f64]) -> Complex64 {
        re(x[self.index])
    }
    fn gradient(&self, _x: &[f64]) -> Option<Vec<Complex64>> {
        Some((0..self.dim).map(|i| re(if i == self.index { 1.0 } else { 0.0 })).collect())
    }
}

/// `f(x) = exp(−|x − c|²/w²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gaussian {
    pub center: Vec<f64>,
    pub width: f64,
}

impl Gaussian {
    pub fn centered(dim: usize, width: f64) -> Self {
        Self {
            center: vec![0.0; dim],
            width,
        }
    }
}

impl TestField for Gaussian {
    fn dim(&self) -> usize {
        self.center.len()
    }
    fn eval(&self, x: &[f64]) -> Complex64 {
        let d2: f64 = x.iter().zip(&self.center).map(|(a, c)| (a - c) * (a - c)).sum();
        re((-d2 / (self.width * self.width)).exp())
    }
    fn gradient(&self, x: &[f64]) -> Option<Vec<Complex64>> {
        let v = self.eval(x).re;
        let s = -2.0 / (self.width * self.width);
        Some(x.iter().zip(&self.center).map(|(a, c)| re(s * (a - c) * v)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveForm {
    /// `exp(i k·x)`
    Exp,
    /// `cos(k·x)`
    Cos,
    /// `sin(k·x)`
    Sin,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWave {
    pub k: Vec<f64>,
    pub form: WaveForm,
}

impl PlaneWave {
    fn phase(&self, x: &[f64]) -> f64 {
        self.k.iter().zip(x).map(|(k, x)| k * x).sum()
    }
}

impl TestField for PlaneWave {
    fn dim(&self) -> usize {
        self.k.len()
    }
    fn eval(&self, x: &[f64]) -> Complex64 {
        let ph = self.phase(x);
        match self.form {
            WaveForm::Exp => Complex64::new(0.0, ph).exp(),
            WaveForm::Cos => re(ph.cos()),
            WaveForm::Sin => re(ph.sin()),
        }
    }
    fn gradient(&self, x: &[f64]) -> Option<Vec<Complex64>> {
        let ph = self.phase(x);
        let d = match self.form {
            WaveForm::Exp => Complex64::new(0.0, 1.0) * Complex64::new(0.0, ph).exp(),
            WaveForm::Cos => re(-ph.sin()),
            WaveForm::Sin => re(ph.cos()),
        };
        Some(self.k.iter().map(|k| d * *k).collect())
    }
}

/// `Σ c_α x^α` over multi-indices `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub dim: usize,
    pub terms: Vec<(Complex64, Vec<u32>)>,
}

impl Polynomial {
    pub fn new(dim: usize, terms: Vec<(Complex64, Vec<u32>)>) -> Self {
        assert!(terms.iter().all(|(_, a)| a.len() == dim), "multi-index length must equal dim");
        Self { dim, terms }
    }

    fn monomial(x: &[f64], alpha: &[u32]) -> f64 {
        x.iter().zip(alpha).map(|(xi, &e)| xi.powi(e as i32)).product()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(_, a)| a.iter().sum()).max().unwrap_or(0)
    }
}

impl TestField for Polynomial {
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, x: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, a)| c * Self::monomial(x, a))
            .sum()
    }
    fn gradient(&self, x: &[f64]) -> Option<Vec<Complex64>> {
        let mut g = vec![Complex64::default(); self.dim];
        for (c, alpha) in &self.terms {
            for (i, gi) in g.iter_mut().enumerate() {
                if alpha[i] == 0 {
                    continue;
                }
                let mut d = alpha.clone();
                d[i] -= 1;
                *gi += c * alpha[i] as f64 * Self::monomial(x, &d);
            }
        }
        Some(g)
    }
}

/// `C^∞` bump `exp(1 − 1/(1 − s²))`, `s = |x − c|/R`, supported in `s < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bump {
    pub center: Vec<f64>,
    pub radius: f64,
    pub amplitude: f64,
}

impl TestField for Bump {
    fn dim(&self) -> usize {
        self.center.len()
    }
    fn eval(&self, x: &[f64]) -> Complex64 {
        let s2: f64 = x
            .iter()
            .zip(&self.center)
            .map(|(a, c)| (a - c) * (a - c))
            .sum::<f64>()
            / (self.radius * self.radius);
        if s2 >= 1.0 {
            return re(0.0);
        }
        re(self.amplitude * (1.0 - 1.0 / (1.0 - s2)).exp())
    }
    fn gradient(&self, x: &[f64]) -> Option<Vec<Complex64>> {
        let r2 = self.radius * self.radius;
        let s2: f64 = x.iter().zip(&self.center).map(|(a, c)| (a - c) * (a - c)).sum::<f64>() / r2;
        if s2 >= 1.0 {
            return Some(vec![re(0.0); x.len()]);
        }
        let v = self.amplitude * (1.0 - 1.0 / (1.0 - s2)).exp();
        let ds2 = -v / ((1.0 - s2) * (1.0 - s2));
        Some(
            x.iter()
                .zip(&self.center)
                .map(|(a, c)| re(ds2 * 2.0 * (a - c) / r2))
                .collect(),
        )
    }
    fn support_radius(&self) -> Option<f64> {
        let c: f64 = self.center.iter().map(|v| v * v).sum::<f64>().sqrt();
        Some(c + self.radius)
    }
}

/// `x ↦ f(x + shift)`.
#[derive(Debug, Clone)]
pub struct Translated<F> {
    pub inner: F,
    pub shift: Vec<f64>,
}

impl<F: TestField> Translated<F> {
    fn moved(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(&self.shift).map(|(a, b)| a + b).collect()
    }
}

impl<F: TestField> TestField for Translated<F> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn eval(&self, x: &[f64]) -> Complex64 {
        self.inner.eval(&self.moved(x))
    }
    fn smoothness(&self) -> u32 {
        self.inner.smoothness()
    }
    fn gradient(&self, x: &[f64]) -> Option<Vec<Complex64>> {
        self.inner.gradient(&self.moved(x))
    }
}

/// `Σ cᵢ fᵢ`.
#[derive(Clone, Default)]
pub struct Combination {
    pub parts: Vec<(Complex64, Arc<dyn TestField>)>,
}

impl Combination {
    pub fn new(parts: Vec<(Complex64, Arc<dyn TestField>)>) -> Self {
        assert!(!parts.is_empty(), "empty combination");
        Self { parts }
    }
}

impl TestField for Combination {
    fn dim(&self) -> usize {
        self.parts[0].1.dim()
    }
    fn eval(&self, x: &[f64]) -> Complex64 {
        self.parts.iter().map(|(c, f)| c * f.eval(x)).sum()
    }
    fn smoothness(&self) -> u32 {
        self.parts.iter().map(|(_, f)| f.smoothness()).min().unwrap_or(C_INFINITY)
    }
    fn gradient(&self, x: &[f64]) -> Option<Vec<Complex64>> {
        let mut total = vec![Complex64::default(); self.dim()];
        for (c, f) in &self.parts {
            let g = f.gradient(x)?;
            total.iter_mut().zip(g).for_each(|(t, gi)| *t += c * gi);
        }
        Some(total)
    }
}
