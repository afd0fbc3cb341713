//! JSON shapes shared by the subcommands. Field order follows declaration
//! order, so output is byte-stable.

use cxpt_core::clifford::Multivector;
use cxpt_core::Complex64;
use serde::Serialize;

/// A complex number as `{"re": …, "im": …}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

pub fn cx_vec(v: &[Complex64]) -> Vec<Cx> {
    v.iter().map(|&c| c.into()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BladeTerm {
    pub blade: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

/// Nonzero blade coefficients in ascending mask order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MvJson {
    pub generators: Vec<usize>,
    pub terms: Vec<BladeTerm>,
}

impl From<&Multivector> for MvJson {
    fn from(m: &Multivector) -> Self {
        Self {
            generators: (m.base()..m.base() + m.gens()).collect(),
            terms: m
                .terms()
                .into_iter()
                .map(|(blade, c)| BladeTerm { blade, re: c.re, im: c.im })
                .collect(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}
