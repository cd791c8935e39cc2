//! JSON interchange for polynomials and polynomial matrices.
//!
//! A polynomial is `{"nvars":k,"terms":[{"e":[..],"c":"p/q"},..]}` with terms
//! listed from the graded-lex largest to the smallest. A matrix carries its
//! shape, twists and entries row by row. Twists of a one-dimensional grading
//! are written as plain integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::matrix::PolyMatrix;
use super::poly::{Monomial, MultiPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TwistJson {
    Scalar(i64),
    Vector(Vec<i64>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub nvars: usize,
    pub rows: usize,
    pub cols: usize,
    pub row_twists: Vec<TwistJson>,
    pub col_twists: Vec<TwistJson>,
    pub entries: Vec<Vec<PolyJson>>,
}

pub fn parse_coeff(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("coefficient `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl From<&MultiPoly> for PolyJson {
    fn from(p: &MultiPoly) -> Self {
        PolyJson {
            nvars: p.nvars(),
            terms: p.terms().rev().map(|(m, c)| TermJson { e: m.0.clone(), c: c.to_string() }).collect(),
        }
    }
}

impl TryFrom<&PolyJson> for MultiPoly {
    type Error = Error;
    fn try_from(j: &PolyJson) -> Result<Self> {
        let mut p = MultiPoly::zero(j.nvars);
        for t in &j.terms {
            if t.e.len() != j.nvars {
                return Err(Error::Parse(format!("exponent {:?} in a {}-variable ring", t.e, j.nvars)));
            }
            p.add_term(Monomial(t.e.clone()), parse_coeff(&t.c)?);
        }
        Ok(p)
    }
}

fn twist_out(t: &[i64]) -> TwistJson {
    if t.len() == 1 {
        TwistJson::Scalar(t[0])
    } else {
        TwistJson::Vector(t.to_vec())
    }
}

fn twist_in(t: &TwistJson) -> Vec<i64> {
    match t {
        TwistJson::Scalar(x) => vec![*x],
        TwistJson::Vector(v) => v.clone(),
    }
}

impl From<&PolyMatrix> for MatrixJson {
    fn from(m: &PolyMatrix) -> Self {
        MatrixJson {
            nvars: m.nvars(),
            rows: m.rows(),
            cols: m.cols(),
            row_twists: m.row_twists().iter().map(|t| twist_out(t)).collect(),
            col_twists: m.col_twists().iter().map(|t| twist_out(t)).collect(),
            entries: (0..m.rows()).map(|i| m.row(i).iter().map(PolyJson::from).collect()).collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for PolyMatrix {
    type Error = Error;
    fn try_from(j: &MatrixJson) -> Result<Self> {
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::Parse(format!("matrix entries do not match shape {}x{}", j.rows, j.cols)));
        }
        let rows = j
            .entries
            .iter()
            .map(|r| r.iter().map(MultiPoly::try_from).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = if j.rows == 0 || j.cols == 0 {
            PolyMatrix::zeros(j.nvars, j.rows, j.cols)
        } else {
            PolyMatrix::from_rows(j.nvars, rows)?
        };
        m.with_twists(j.row_twists.iter().map(twist_in).collect(), j.col_twists.iter().map(twist_in).collect())
    }
}

pub fn poly_to_json(p: &MultiPoly) -> serde_json::Value {
    serde_json::to_value(PolyJson::from(p)).expect("serializable")
}

pub fn poly_from_json(v: &serde_json::Value) -> Result<MultiPoly> {
    let j: PolyJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    MultiPoly::try_from(&j)
}

pub fn matrix_to_json(m: &PolyMatrix) -> serde_json::Value {
    serde_json::to_value(MatrixJson::from(m)).expect("serializable")
}

pub fn matrix_from_json(v: &serde_json::Value) -> Result<PolyMatrix> {
    let j: MatrixJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    PolyMatrix::try_from(&j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip() {
        let p = MultiPoly::parse("3/2*x^2 - y + 4", &["x", "y"]).unwrap();
        let v = poly_to_json(&p);
        assert_eq!(
            v.to_string(),
            r#"{"nvars":2,"terms":[{"c":"3/2","e":[2,0]},{"c":"-1","e":[0,1]},{"c":"4","e":[0,0]}]}"#
        );
        assert_eq!(poly_from_json(&v).unwrap(), p);
    }

    #[test]
    fn matrix_round_trip() {
        let x = MultiPoly::var(2, 0);
        let m = PolyMatrix::from_rows(2, vec![vec![x.clone(), MultiPoly::zero(2)]])
            .unwrap()
            .with_scalar_twists(&[0], &[1, 3])
            .unwrap();
        let v = matrix_to_json(&m);
        let back = matrix_from_json(&v).unwrap();
        assert_eq!(back, m);
        assert_eq!(matrix_to_json(&back).to_string(), v.to_string());
    }
}
