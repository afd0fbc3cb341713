use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::algebra::{blade_sign, Multivector};
use crate::field::TestField;
use crate::numerics::{partial, FdScheme};
use crate::{Error, Result};

/// One term `c · x^exps · e_K` of a multivector polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyTerm {
    pub blade: u32,
    pub coeff: Complex64,
    pub exps: Vec<u32>,
}

/// Polynomial `Rⁿ → Cl_n` with generators `e₁ … eₙ` paired to coordinates
/// `x₁ … xₙ`. Differentiation is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct MvPolynomial {
    dim: usize,
    terms: Vec<PolyTerm>,
}

impl MvPolynomial {
    pub fn new(dim: usize, terms: Vec<PolyTerm>) -> Result<Self> {
        for t in &terms {
            if t.exps.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: t.exps.len(),
                });
            }
            if t.blade >> dim != 0 {
                return Err(Error::InvalidIndex(format!("blade mask {:#b} outside Cl_{dim}", t.blade)));
            }
        }
        Ok(Self { dim, terms }.canonical())
    }

    /// `Σ_k x_k e_k`.
    pub fn identity(dim: usize) -> Self {
        let terms = (0..dim)
            .map(|k| PolyTerm {
                blade: 1 << k,
                coeff: 1.0.into(),
                exps: (0..dim).map(|j| u32::from(j == k)).collect(),
            })
            .collect();
        Self { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[PolyTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.exps.iter().sum()).max().unwrap_or(0)
    }

    /// Merge like terms and drop zeros, sorted by blade then exponents.
    fn canonical(mut self) -> Self {
        self.terms
            .sort_by(|a, b| a.blade.cmp(&b.blade).then_with(|| a.exps.cmp(&b.exps)));
        let mut merged: Vec<PolyTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            match merged.last_mut() {
                Some(last) if last.blade == t.blade && last.exps == t.exps => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != Complex64::default());
        Self {
            dim: self.dim,
            terms: merged,
        }
    }

    pub fn eval(&self, x: &[f64]) -> Multivector {
        let mut out = Multivector::zero(self.dim, 1);
        for t in &self.terms {
            let mono: f64 = t.exps.iter().zip(x).map(|(&e, &xi)| xi.powi(e as i32)).product();
            out.set(t.blade, out.coeff(t.blade) + t.coeff * mono);
        }
        out
    }

    /// `∂/∂x_axis`.
    pub fn partial(&self, axis: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.exps[axis] > 0)
            .map(|t| {
                let mut exps = t.exps.clone();
                exps[axis] -= 1;
                PolyTerm {
                    blade: t.blade,
                    coeff: t.coeff * t.exps[axis] as f64,
                    exps,
                }
            })
            .collect();
        Self { dim: self.dim, terms }.canonical()
    }

    /// `e_k · self` (left) or `self · e_k` (right), `k` zero-based.
    fn times_generator(&self, k: usize, side: Side) -> Self {
        let bit = 1u32 << k;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let s = match side {
                    Side::Left => blade_sign(bit, t.blade),
                    Side::Right => blade_sign(t.blade, bit),
                };
                PolyTerm {
                    blade: t.blade ^ bit,
                    coeff: t.coeff * s,
                    exps: t.exps.clone(),
                }
            })
            .collect();
        Self { dim: self.dim, terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self { dim: self.dim, terms }.canonical()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let neg = Self {
            dim: other.dim,
            terms: other
                .terms
                .iter()
                .map(|t| PolyTerm {
                    coeff: -t.coeff,
                    ..t.clone()
                })
                .collect(),
        };
        self.add(&neg)
    }

    /// `Σ e_k ∂_k f` (left) or `Σ ∂_k f e_k` (right), exactly.
    pub fn dirac(&self, side: Side) -> Self {
        let mut acc = Self {
            dim: self.dim,
            terms: Vec::new(),
        };
        for k in 0..self.dim {
            acc = acc.add(&self.partial(k).times_generator(k, side));
        }
        acc
    }

    /// `Σ ∂_k² f`, exactly.
    pub fn laplacian(&self) -> Self {
        let mut acc = Self {
            dim: self.dim,
            terms: Vec::new(),
        };
        for k in 0..self.dim {
            acc = acc.add(&self.partial(k).partial(k));
        }
        acc
    }
}

/// Which side the Dirac operator acts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Side {
    #[default]
    Left,
    Right,
}

/// How derivatives are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiracMode {
    /// Symbolic differentiation of the polynomial form.
    ExactPoly,
    #[default]
    Fd,
}

type Evaluator = dyn Fn(&[f64]) -> Multivector + Send + Sync;

/// `f: Rⁿ → Cl_n`, generators `e₁ … eₙ`.
#[derive(Clone)]
pub struct MultivectorField {
    dim: usize,
    eval: Arc<Evaluator>,
    poly: Option<Arc<MvPolynomial>>,
}

impl fmt::Debug for MultivectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultivectorField")
            .field("dim", &self.dim)
            .field("polynomial", &self.poly.is_some())
            .finish()
    }
}

impl MultivectorField {
    pub fn new(dim: usize, f: impl Fn(&[f64]) -> Multivector + Send + Sync + 'static) -> Self {
        Self {
            dim,
            eval: Arc::new(f),
            poly: None,
        }
    }

    pub fn from_polynomial(p: MvPolynomial) -> Self {
        let p = Arc::new(p);
        let q = p.clone();
        Self {
            dim: p.dim(),
            eval: Arc::new(move |x| q.eval(x)),
            poly: Some(p),
        }
    }

    /// A scalar field times the unit `e_∅`.
    pub fn scalar(f: Arc<dyn TestField>) -> Self {
        let dim = f.dim();
        Self::new(dim, move |x| Multivector::scalar(dim, 1, f.eval(x)))
    }

    /// A constant field.
    pub fn constant(value: Multivector) -> Self {
        let dim = value.gens();
        Self::new(dim, move |_| value.clone())
    }

    /// `x ↦ C(x − x₀)`, monogenic away from `x₀`.
    pub fn cauchy_kernel_shifted(x0: Vec<f64>) -> Self {
        let dim = x0.len();
        Self::new(dim, move |x| {
            let u: Vec<f64> = x.iter().zip(&x0).map(|(a, b)| a - b).collect();
            super::kernel::cauchy_kernel_real(&u).unwrap_or_else(|_| {
                Multivector::scalar(dim, 1, Complex64::new(f64::NAN, f64::NAN))
            })
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &[f64]) -> Multivector {
        (self.eval)(x)
    }

    pub fn polynomial(&self) -> Option<&MvPolynomial> {
        self.poly.as_deref()
    }
}

/// `Df` at `x`: `Σ e_k ∂_k f` (left) or `Σ ∂_k f e_k` (right).
pub fn dirac_apply(
    f: &MultivectorField,
    x: &[f64],
    side: Side,
    mode: DiracMode,
    scheme: &FdScheme,
) -> Result<Multivector> {
    if x.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: x.len(),
        });
    }
    match mode {
        DiracMode::ExactPoly => {
            let p = f.polynomial().ok_or_else(|| {
                Error::Unsupported("exact Dirac mode needs a polynomial form".into())
            })?;
            Ok(p.dirac(side).eval(x))
        }
        DiracMode::Fd => {
            let mut acc = Multivector::zero(f.dim(), 1);
            for k in 0..f.dim() {
                let d = partial(|p| f.eval(p), x, k, scheme, 1)?;
                acc = acc
                    + match side {
                        Side::Left => d.left_gen(k + 1)?,
                        Side::Right => d.right_gen(k + 1)?,
                    };
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn term(blade: u32, c: f64, exps: &[u32]) -> PolyTerm {
        PolyTerm {
            blade,
            coeff: c.into(),
            exps: exps.to_vec(),
        }
    }

    fn random_poly(rng: &mut impl Rng, dim: usize) -> MvPolynomial {
        let terms = (0..8)
            .map(|_| PolyTerm {
                blade: rng.gen_range(0..1u32 << dim),
                coeff: Complex64::new(rng.gen_range(-2..=2) as f64, rng.gen_range(-2..=2) as f64),
                exps: (0..dim).map(|_| rng.gen_range(0..4)).collect(),
            })
            .collect();
        MvPolynomial::new(dim, terms).unwrap()
    }

    #[test]
    fn identity_field_has_divergence_n() {
        let f = MultivectorField::from_polynomial(MvPolynomial::identity(3));
        let x = [0.2, -0.5, 1.3];
        for mode in [DiracMode::ExactPoly, DiracMode::Fd] {
            for side in [Side::Left, Side::Right] {
                let d = dirac_apply(&f, &x, side, mode, &FdScheme::default()).unwrap();
                let three = Multivector::scalar(3, 1, 3.0.into());
                assert!(d.max_abs_diff(&three) < 1e-9, "{mode:?} {side:?}: {d}");
            }
        }
    }

    #[test]
    fn constant_is_annihilated() {
        let f = MultivectorField::constant(Multivector::blade(3, 1, &[1, 3]).unwrap());
        let d = dirac_apply(&f, &[0.1, 0.2, 0.3], Side::Left, DiracMode::Fd, &FdScheme::default()).unwrap();
        assert!(d.norm() < 1e-10);
        let p = MvPolynomial::new(3, vec![term(0b101, 2.0, &[0, 0, 0])]).unwrap();
        assert!(p.dirac(Side::Left).is_zero());
    }

    #[test]
    fn square_of_first_coordinate() {
        // f = x₁² e₁: Df = 2x₁, D²f = 2e₁ = Δf
        let p = MvPolynomial::new(3, vec![term(0b001, 1.0, &[2, 0, 0])]).unwrap();
        let df = p.dirac(Side::Left);
        assert_eq!(df, MvPolynomial::new(3, vec![term(0, 2.0, &[1, 0, 0])]).unwrap());
        let d2 = df.dirac(Side::Left);
        assert_eq!(d2, MvPolynomial::new(3, vec![term(0b001, 2.0, &[0, 0, 0])]).unwrap());
        assert_eq!(d2, p.laplacian());
    }

    #[test]
    fn dirac_squared_is_laplacian_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for dim in 2..=5 {
            for _ in 0..10 {
                let p = random_poly(&mut rng, dim);
                let lap = p.laplacian();
                assert_eq!(p.dirac(Side::Left).dirac(Side::Left), lap);
                assert_eq!(p.dirac(Side::Right).dirac(Side::Right), lap);
            }
        }
    }

    #[test]
    fn polynomial_form_matches_fd() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let p = random_poly(&mut rng, 3);
        let f = MultivectorField::from_polynomial(p);
        let x = [0.4, -0.3, 0.8];
        for side in [Side::Left, Side::Right] {
            let exact = dirac_apply(&f, &x, side, DiracMode::ExactPoly, &FdScheme::default()).unwrap();
            let fd = dirac_apply(&f, &x, side, DiracMode::Fd, &FdScheme::with_step(1e-3)).unwrap();
            assert!(exact.max_abs_diff(&fd) < 1e-8);
        }
    }

    #[test]
    fn exact_mode_needs_polynomial() {
        let f = MultivectorField::constant(Multivector::zero(2, 1));
        let err = dirac_apply(&f, &[0.0, 0.0], Side::Left, DiracMode::ExactPoly, &FdScheme::default());
        assert!(matches!(err, Err(Error::Unsupported(_))));
    }

    #[test]
    fn canonical_merges_terms() {
        let p = MvPolynomial::new(
            2,
            vec![term(1, 1.0, &[1, 0]), term(1, -1.0, &[1, 0]), term(2, 3.0, &[0, 1])],
        )
        .unwrap();
        assert_eq!(p.terms().len(), 1);
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.degree(), 1);
    }
}
