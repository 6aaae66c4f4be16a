//! Real-coefficient polynomials, constant term first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Default)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    /// Builds `Σ coeffs[j] x^j`, dropping trailing zeros.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if let Some(j) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                location: format!("polynomial coefficient {j}"),
            });
        }
        let mut coeffs = coeffs;
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Ok(Self { coeffs })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c]).expect("finite constant")
    }

    /// `alpha · x`.
    pub fn linear(alpha: f64) -> Self {
        Self::new(vec![0.0, alpha]).expect("finite coefficient")
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree, `-1` for the zero polynomial.
    pub fn degree(&self) -> i32 {
        self.coeffs.len() as i32 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

impl FromStr for RealPolynomial {
    type Err = Error;

    /// Parses comma-separated real coefficients, e.g. `"0,3"` for `3x`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::zero());
        }
        let coeffs = s
            .split(',')
            .enumerate()
            .map(|(j, tok)| {
                tok.trim().parse::<f64>().map_err(|_| {
                    Error::InvalidParameter(format!(
                        "polynomial coefficient {j} ({:?}) is not a real number",
                        tok.trim()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

impl fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for RealPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coeffs = Vec::<f64>::deserialize(d)?;
        Self::new(coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_degree() {
        let p: RealPolynomial = "0,3".parse().unwrap();
        assert_eq!(p.coeffs(), &[0.0, 3.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!("1, 0, 0".parse::<RealPolynomial>().unwrap().degree(), 0);
        assert_eq!("0".parse::<RealPolynomial>().unwrap().degree(), -1);
        assert!("".parse::<RealPolynomial>().unwrap().is_zero());
    }

    #[test]
    fn rejects_complex_and_garbage() {
        assert!("1+2i".parse::<RealPolynomial>().is_err());
        assert!("1,,2".parse::<RealPolynomial>().is_err());
        assert!("nan".parse::<RealPolynomial>().is_err());
        assert!(serde_json::from_str::<RealPolynomial>(r#"[[1, 2]]"#).is_err());
    }

    #[test]
    fn horner_eval() {
        let p = RealPolynomial::new(vec![1.0, -2.0, 0.5]).unwrap();
        assert_eq!(p.eval(2.0), 1.0 - 4.0 + 2.0);
        assert_eq!(p.to_string().parse::<RealPolynomial>().unwrap(), p);
    }
}
