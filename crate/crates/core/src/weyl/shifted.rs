use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::algebra::{boost_conjugate, weyl_adjoint, WeylPolynomial};
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::poly::RealPolynomial;

/// `H̃ = p² + f(p) + α·V(x − β − iγ)` with its boost parameter `θ = 2γ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftedPotentialSpec {
    #[serde(rename = "V")]
    pub v: RealPolynomial,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    #[serde(default)]
    pub f: RealPolynomial,
}

impl ShiftedPotentialSpec {
    pub fn new(v: RealPolynomial, alpha: f64, beta: f64, gamma: f64, f: RealPolynomial) -> Result<Self> {
        let spec = Self {
            v,
            alpha,
            beta,
            gamma,
            f,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)] {
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    location: format!("spec field {name}"),
                });
            }
        }
        Ok(())
    }

    /// Always `2γ`.
    pub fn theta(&self) -> f64 {
        2.0 * self.gamma
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let spec: Self = serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })?;
        spec.validate()?;
        Ok(spec)
    }
}

/// Expands `p² + f(p) + α·V(x − β − iγ)` in normal order.
pub fn build_shifted_hamiltonian<C: Scalar>(spec: &ShiftedPotentialSpec) -> WeylPolynomial<C> {
    let kinetic = WeylPolynomial::monomial(0, 2, C::one());
    let f_coeffs: Vec<C> = spec.f.coeffs().iter().map(|&c| C::from_f64(c)).collect();
    let alpha = C::from_f64(spec.alpha);
    let v_coeffs: Vec<C> = spec
        .v
        .coeffs()
        .iter()
        .map(|&c| alpha.clone() * C::from_f64(c))
        .collect();
    let shift = C::from_f64(spec.beta) + C::imag_unit() * C::from_f64(spec.gamma);
    let potential = WeylPolynomial::poly_in_x_shifted(&v_coeffs, &shift);
    &(&kinetic + &WeylPolynomial::poly_in_p(&f_coeffs)) + &potential
}

/// `R = e^{-θp} H̃ e^{θp} − H̃†`, with `θ = 2γ` unless overridden.
///
/// `R = 0` certifies `η H̃ η⁻¹ = H̃†` for `η = e^{-θp}` as an identity of
/// polynomials. In the exact field the doubling `θ = 2γ` is carried out on
/// the rational image of `γ`, so no rounding enters.
pub fn check_symbolic<C: Scalar>(spec: &ShiftedPotentialSpec, theta_override: Option<f64>) -> WeylPolynomial<C> {
    let h = build_shifted_hamiltonian::<C>(spec);
    let theta = match theta_override {
        Some(t) => C::from_f64(t),
        None => C::from_integer(2) * C::from_f64(spec.gamma),
    };
    &boost_conjugate(&h, &theta) - &weyl_adjoint(&h)
}

/// One residual term in the report format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualTerm {
    pub a: u32,
    pub b: u32,
    pub re: String,
    pub im: String,
}

impl<C: Scalar> WeylPolynomial<C> {
    pub fn residual_terms(&self) -> Vec<ResidualTerm> {
        self.terms()
            .map(|(a, b, c)| {
                let (re, im) = c.parts_text();
                ResidualTerm { a, b, re, im }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{ExactComplex, ExactWeyl, FloatWeyl};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(re: i64, im: i64) -> ExactComplex {
        ExactComplex::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    fn harmonic(f: RealPolynomial) -> ShiftedPotentialSpec {
        ShiftedPotentialSpec::new(RealPolynomial::new(vec![0.0, 0.0, 1.0]).unwrap(), 1.0, 0.0, 1.0, f).unwrap()
    }

    #[test]
    fn builds_harmonic_with_imaginary_shift() {
        let h: ExactWeyl = build_shifted_hamiltonian(&harmonic(RealPolynomial::zero()));
        let want = ExactWeyl::from_terms([(0, 2, q(1, 0)), (2, 0, q(1, 0)), (1, 0, q(0, -2)), (0, 0, q(-1, 0))]);
        assert_eq!(h, want);
    }

    #[test]
    fn builds_momentum_coupling() {
        let h: ExactWeyl = build_shifted_hamiltonian(&harmonic(RealPolynomial::linear(2.0)));
        let want = ExactWeyl::from_terms([
            (0, 2, q(1, 0)),
            (0, 1, q(2, 0)),
            (2, 0, q(1, 0)),
            (1, 0, q(0, -2)),
            (0, 0, q(-1, 0)),
        ]);
        assert_eq!(h, want);
    }

    #[test]
    fn free_hamiltonian() {
        let spec = ShiftedPotentialSpec::new(RealPolynomial::zero(), 1.0, 0.3, 0.7, RealPolynomial::zero()).unwrap();
        let h: ExactWeyl = build_shifted_hamiltonian(&spec);
        assert_eq!(h, ExactWeyl::monomial(0, 2, q(1, 0)));
    }

    #[test]
    fn residual_vanishes_at_twice_gamma() {
        let spec = harmonic(RealPolynomial::zero());
        assert!(check_symbolic::<ExactComplex>(&spec, None).is_zero());
        assert!(check_symbolic::<ExactComplex>(&spec, Some(2.0)).is_zero());
    }

    #[test]
    fn residual_at_zero_theta() {
        let r = check_symbolic::<ExactComplex>(&harmonic(RealPolynomial::zero()), Some(0.0));
        assert_eq!(r, ExactWeyl::monomial(1, 0, q(0, -4)));
        let terms = r.residual_terms();
        assert_eq!(
            terms,
            vec![ResidualTerm {
                a: 1,
                b: 0,
                re: "0".into(),
                im: "-4".into()
            }]
        );
    }

    #[test]
    fn pure_momentum_is_boost_invariant() {
        let f = RealPolynomial::new(vec![0.5, -1.0, 0.0, 2.0]).unwrap();
        let spec = ShiftedPotentialSpec::new(RealPolynomial::zero(), 3.0, 1.0, -0.25, f).unwrap();
        for theta in [0.0, 1.0, -3.5, 17.0] {
            assert!(check_symbolic::<ExactComplex>(&spec, Some(theta)).is_zero());
        }
    }

    #[test]
    fn float_coefficients_agree() {
        let spec = harmonic(RealPolynomial::linear(2.0));
        let r: FloatWeyl = check_symbolic(&spec, None);
        assert!(r.max_modulus() <= 1e-12);
        let r: FloatWeyl = check_symbolic(&spec, Some(0.0));
        assert!((r.coefficient(1, 0) - num_complex::Complex64::new(0.0, -4.0)).norm() < 1e-12);
    }

    #[test]
    fn spec_json_schema() {
        let spec: ShiftedPotentialSpec =
            serde_json::from_str(r#"{"V": [0, 0, 1], "alpha": 1, "beta": 0, "gamma": 1, "f": [0, 2]}"#).unwrap();
        assert_eq!(spec, harmonic(RealPolynomial::linear(2.0)));
        assert_eq!(spec.theta(), 2.0);
        assert!(serde_json::from_str::<ShiftedPotentialSpec>(
            r#"{"V": [0, 0, 1], "alpha": [1, 1], "beta": 0, "gamma": 1}"#
        )
        .is_err());
        assert!(serde_json::from_str::<ShiftedPotentialSpec>(
            r#"{"V": [0, 0, 1], "alpha": 1, "beta": 0, "gamma": 1, "theta": 5}"#
        )
        .is_err());
    }
}
