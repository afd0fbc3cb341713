//! Built-in test-field catalog, parsed from `family:parameters` strings.
//!
//! ```text
//! constant:RE[,IM]
//! coordinate:INDEX              1-based
//! polynomial:C@E1,E2,..;C@...   real coefficients, one exponent per axis
//! gaussian:WIDTH[@C1,C2,..]     exp(-|x - c|^2 / WIDTH^2)
//! plane_wave:K1,K2,..[@cos|sin|exp]
//! cauchy_kernel_shifted:X1,X2,..  multivector-valued
//! ```

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use cxpt_core::clifford::{Multivector, MultivectorField, MvPolynomial, PolyTerm};
use cxpt_core::field::{Constant, Coordinate, Gaussian, PlaneWave, Polynomial, WaveForm};
use cxpt_core::{Complex64, TestField};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("field spec {spec:?}: {message}")]
pub struct FieldSpecError {
    pub spec: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FieldSpec {
    Constant(Complex64),
    /// 0-based axis.
    Coordinate(usize),
    Polynomial(Vec<(f64, Vec<u32>)>),
    Gaussian { width: f64, center: Option<Vec<f64>> },
    PlaneWave { k: Vec<f64>, form: WaveForm },
    CauchyKernelShifted(Vec<f64>),
}

pub fn parse_vector(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|c| {
            let c = c.trim();
            c.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("not a finite number: {c:?}"))
        })
        .collect()
}

impl FromStr for FieldSpec {
    type Err = FieldSpecError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let fail = |message: String| FieldSpecError {
            spec: spec.to_string(),
            message,
        };
        let (family, params) = spec.split_once(':').unwrap_or((spec, ""));
        let params = params.trim();
        let field = match family.trim() {
            "constant" => {
                let v = parse_vector(params).map_err(fail)?;
                match v.as_slice() {
                    [re] => FieldSpec::Constant(Complex64::new(*re, 0.0)),
                    [re, im] => FieldSpec::Constant(Complex64::new(*re, *im)),
                    _ => return Err(fail("constant takes RE or RE,IM".into())),
                }
            }
            "coordinate" => {
                let k: usize = params
                    .parse()
                    .ok()
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| fail("coordinate takes a 1-based axis index".into()))?;
                FieldSpec::Coordinate(k - 1)
            }
            "polynomial" => {
                let mut terms = Vec::new();
                for term in params.split(';').filter(|t| !t.trim().is_empty()) {
                    let (c, e) = term
                        .split_once('@')
                        .ok_or_else(|| fail(format!("term {term:?} is not COEF@EXPONENTS")))?;
                    let c: f64 = c.trim().parse().map_err(|_| fail(format!("bad coefficient {c:?}")))?;
                    let e = e
                        .split(',')
                        .map(|v| v.trim().parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| fail(format!("bad exponents {e:?}")))?;
                    terms.push((c, e));
                }
                if terms.is_empty() {
                    return Err(fail("polynomial needs at least one term".into()));
                }
                FieldSpec::Polynomial(terms)
            }
            "gaussian" => {
                let (w, c) = match params.split_once('@') {
                    Some((w, c)) => (w, Some(parse_vector(c).map_err(fail)?)),
                    None => (params, None),
                };
                let width: f64 = w
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&v: &f64| v > 0.0 && v.is_finite())
                    .ok_or_else(|| fail("gaussian width must be positive".into()))?;
                FieldSpec::Gaussian { width, center: c }
            }
            "plane_wave" => {
                let (k, form) = match params.split_once('@') {
                    Some((k, f)) => (k, f.trim()),
                    None => (params, "cos"),
                };
                let form = match form {
                    "cos" => WaveForm::Cos,
                    "sin" => WaveForm::Sin,
                    "exp" => WaveForm::Exp,
                    _ => return Err(fail(format!("plane wave form must be cos, sin or exp, got {form:?}"))),
                };
                FieldSpec::PlaneWave {
                    k: parse_vector(k).map_err(fail)?,
                    form,
                }
            }
            "cauchy_kernel_shifted" => FieldSpec::CauchyKernelShifted(parse_vector(params).map_err(fail)?),
            other => return Err(fail(format!("unknown family {other:?}"))),
        };
        Ok(field)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[f64]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        match self {
            FieldSpec::Constant(c) => write!(f, "constant:{},{}", c.re, c.im),
            FieldSpec::Coordinate(k) => write!(f, "coordinate:{}", k + 1),
            FieldSpec::Polynomial(terms) => {
                let parts: Vec<String> = terms
                    .iter()
                    .map(|(c, e)| {
                        let e: Vec<String> = e.iter().map(|v| v.to_string()).collect();
                        format!("{c}@{}", e.join(","))
                    })
                    .collect();
                write!(f, "polynomial:{}", parts.join(";"))
            }
            FieldSpec::Gaussian { width, center: None } => write!(f, "gaussian:{width}"),
            FieldSpec::Gaussian { width, center: Some(c) } => write!(f, "gaussian:{width}@{}", join(c)),
            FieldSpec::PlaneWave { k, form } => {
                let form = match form {
                    WaveForm::Cos => "cos",
                    WaveForm::Sin => "sin",
                    WaveForm::Exp => "exp",
                };
                write!(f, "plane_wave:{}@{form}", join(k))
            }
            FieldSpec::CauchyKernelShifted(x0) => write!(f, "cauchy_kernel_shifted:{}", join(x0)),
        }
    }
}

impl FieldSpec {
    fn check_len(&self, what: &str, len: usize, n: usize) -> Result<(), FieldSpecError> {
        if len != n {
            return Err(FieldSpecError {
                spec: self.to_string(),
                message: format!("{what} has {len} components but n = {n}"),
            });
        }
        Ok(())
    }

    /// The scalar field on `Rⁿ`.
    pub fn scalar(&self, n: usize) -> Result<Arc<dyn TestField>, FieldSpecError> {
        Ok(match self {
            FieldSpec::Constant(c) => Arc::new(Constant { dim: n, value: *c }),
            FieldSpec::Coordinate(k) => {
                if *k >= n {
                    return Err(FieldSpecError {
                        spec: self.to_string(),
                        message: format!("axis {} exceeds n = {n}", k + 1),
                    });
                }
                Arc::new(Coordinate { dim: n, index: *k })
            }
            FieldSpec::Polynomial(terms) => {
                for (_, e) in terms {
                    self.check_len("a multi-index", e.len(), n)?;
                }
                let terms = terms.iter().map(|(c, e)| (Complex64::new(*c, 0.0), e.clone())).collect();
                Arc::new(Polynomial::new(n, terms))
            }
            FieldSpec::Gaussian { width, center } => {
                let center = center.clone().unwrap_or_else(|| vec![0.0; n]);
                self.check_len("the center", center.len(), n)?;
                Arc::new(Gaussian { center, width: *width })
            }
            FieldSpec::PlaneWave { k, form } => {
                self.check_len("the wave vector", k.len(), n)?;
                Arc::new(PlaneWave { k: k.clone(), form: *form })
            }
            FieldSpec::CauchyKernelShifted(_) => {
                return Err(FieldSpecError {
                    spec: self.to_string(),
                    message: "multivector-valued; only clifford commands accept it".into(),
                })
            }
        })
    }

    /// The field as `Rⁿ → Cl_n`: scalar families times the blade `e_K`.
    /// Polynomials keep an exact polynomial form.
    pub fn multivector(&self, n: usize, blade: &[usize]) -> Result<MultivectorField, FieldSpecError> {
        let fail = |message: String| FieldSpecError {
            spec: self.to_string(),
            message,
        };
        let unit = Multivector::blade(n, 1, blade).map_err(|e| fail(e.to_string()))?;
        if let FieldSpec::CauchyKernelShifted(x0) = self {
            self.check_len("the shift", x0.len(), n)?;
            if !blade.is_empty() {
                return Err(fail("the shifted Cauchy kernel takes no blade".into()));
            }
            return Ok(MultivectorField::cauchy_kernel_shifted(x0.clone()));
        }
        if let FieldSpec::Polynomial(terms) = self {
            // e_K may carry a sign when the labels are out of order
            let (mask, sign) = unit
                .terms()
                .first()
                .map(|(labels, c)| (labels.iter().fold(0u32, |m, l| m | 1 << (l - 1)), *c))
                .ok_or_else(|| fail("empty blade".into()))?;
            let mut out = Vec::new();
            for (c, e) in terms {
                self.check_len("a multi-index", e.len(), n)?;
                out.push(PolyTerm {
                    blade: mask,
                    coeff: sign * *c,
                    exps: e.clone(),
                });
            }
            let p = MvPolynomial::new(n, out).map_err(|e| fail(e.to_string()))?;
            return Ok(MultivectorField::from_polynomial(p));
        }
        let f = self.scalar(n)?;
        Ok(MultivectorField::new(n, move |x| unit.clone() * f.eval(x)))
    }
}
