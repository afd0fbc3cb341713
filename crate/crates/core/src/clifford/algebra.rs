use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Largest generator count; `2^MAX_GENERATORS` coefficients per element.
pub const MAX_GENERATORS: usize = 8;

/// Sign of `e_A e_B` for blades given as bitmasks, metric `+1`.
pub(crate) fn blade_sign(a: u32, b: u32) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// An element of the complex Clifford algebra on `gens` generators labelled
/// `base, base+1, …`. Bit `i` of a blade mask stands for label `base + i`,
/// so ascending bits are the canonical order of `e_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    gens: usize,
    base: usize,
    coeffs: Vec<Complex64>,
}

impl Multivector {
    pub fn zero(gens: usize, base: usize) -> Self {
        assert!(gens <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators");
        Self {
            gens,
            base,
            coeffs: vec![Complex64::default(); 1 << gens],
        }
    }

    pub fn scalar(gens: usize, base: usize, c: Complex64) -> Self {
        let mut m = Self::zero(gens, base);
        m.coeffs[0] = c;
        m
    }

    /// `Σ v_k e_{base+k}`.
    pub fn vector(base: usize, v: &[Complex64]) -> Self {
        let mut m = Self::zero(v.len(), base);
        for (k, c) in v.iter().enumerate() {
            m.coeffs[1 << k] = *c;
        }
        m
    }

    pub fn real_vector(base: usize, v: &[f64]) -> Self {
        let c: Vec<Complex64> = v.iter().map(|&x| x.into()).collect();
        Self::vector(base, &c)
    }

    /// `e_{l₁} e_{l₂} ⋯` for labels in any order; repeated labels contract.
    pub fn blade(gens: usize, base: usize, labels: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        let mut sign = 1.0;
        for &l in labels {
            let bit = Self::bit_of(gens, base, l)?;
            sign *= blade_sign(mask, bit);
            mask ^= bit;
        }
        Ok(Self::from_mask(gens, base, mask, Complex64::new(sign, 0.0)))
    }

    pub fn from_mask(gens: usize, base: usize, mask: u32, c: Complex64) -> Self {
        let mut m = Self::zero(gens, base);
        m.coeffs[mask as usize] = c;
        m
    }

    pub fn from_coeffs(gens: usize, base: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 1 << gens {
            return Err(Error::DimensionMismatch {
                expected: 1 << gens,
                got: coeffs.len(),
            });
        }
        Ok(Self { gens, base, coeffs })
    }

    fn bit_of(gens: usize, base: usize, label: usize) -> Result<u32> {
        if label < base || label >= base + gens {
            return Err(Error::InvalidIndex(format!(
                "generator e{label} outside e{base}..e{}",
                base + gens - 1
            )));
        }
        Ok(1 << (label - base))
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: u32) -> Complex64 {
        self.coeffs[mask as usize]
    }

    pub fn set(&mut self, mask: u32, c: Complex64) {
        self.coeffs[mask as usize] = c;
    }

    /// Coefficient of `e_K` for strictly increasing labels `K`.
    pub fn get(&self, labels: &[usize]) -> Result<Complex64> {
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndex(format!(
                "blade labels must be strictly increasing, got {labels:?}"
            )));
        }
        let mut mask = 0;
        for &l in labels {
            mask |= Self::bit_of(self.gens, self.base, l)?;
        }
        Ok(self.coeffs[mask as usize])
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn labels(&self, mask: u32) -> Vec<usize> {
        (0..self.gens)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.base + i)
            .collect()
    }

    /// Nonzero terms as `(labels, coefficient)`, ascending by mask.
    pub fn terms(&self) -> Vec<(Vec<usize>, Complex64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Complex64::default())
            .map(|(m, c)| (self.labels(m as u32), *c))
            .collect()
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        self.gens == other.gens && self.base == other.base
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::InvalidArgument(format!(
                "generator labels start at e{} and e{}",
                self.base, other.base
            )));
        }
        if self.gens != other.gens {
            return Err(Error::DimensionMismatch {
                expected: self.gens,
                got: other.gens,
            });
        }
        Ok(())
    }

    /// The geometric product `self · other`.
    pub fn mv_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.gens, self.base);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if *ca == Complex64::default() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if *cb == Complex64::default() {
                    continue;
                }
                let s = blade_sign(a as u32, b as u32);
                out.coeffs[a ^ b] += ca * cb * s;
            }
        }
        Ok(out)
    }

    /// `e_label · self`.
    pub fn left_gen(&self, label: usize) -> Result<Self> {
        let bit = Self::bit_of(self.gens, self.base, label)?;
        let mut out = Self::zero(self.gens, self.base);
        for (m, c) in self.coeffs.iter().enumerate() {
            out.coeffs[m ^ bit as usize] = c * blade_sign(bit, m as u32);
        }
        Ok(out)
    }

    /// `self · e_label`.
    pub fn right_gen(&self, label: usize) -> Result<Self> {
        let bit = Self::bit_of(self.gens, self.base, label)?;
        let mut out = Self::zero(self.gens, self.base);
        for (m, c) in self.coeffs.iter().enumerate() {
            out.coeffs[m ^ bit as usize] = c * blade_sign(m as u32, bit);
        }
        Ok(out)
    }

    fn zip(mut self, rhs: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert!(
            self.same_algebra(rhs),
            "multivectors from different algebras: Cl({}, e{}) and Cl({}, e{})",
            self.gens,
            self.base,
            rhs.gens,
            rhs.base
        );
        self.coeffs.iter_mut().zip(&rhs.coeffs).for_each(|(a, b)| *a = op(*a, *b));
        self
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

// Linear operations panic on mismatched algebras; `mv_mul` reports them.
impl Add for Multivector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a + b)
    }
}

impl Sub for Multivector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a - b)
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(mut self) -> Self {
        self.coeffs.iter_mut().for_each(|c| *c = -*c);
        self
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;
    fn mul(mut self, s: f64) -> Self {
        self.coeffs.iter_mut().for_each(|c| *c *= s);
        self
    }
}

impl Mul<Complex64> for Multivector {
    type Output = Self;
    fn mul(mut self, s: Complex64) -> Self {
        self.coeffs.iter_mut().for_each(|c| *c *= s);
        self
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (labels, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i)", c.re, c.im)?;
            for l in labels {
                write!(f, " e{l}")?;
            }
        }
        Ok(())
    }
}
