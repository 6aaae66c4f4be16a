//! Positive metrics: square roots, the equivalent Hermitian Hamiltonian
//! `η^{1/2} H η^{-1/2}`, and the induced inner product `⟨φ|ηψ⟩`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ComplexVector};
use crate::metric::{classify_metric, residual};

#[derive(Clone, Debug, Serialize)]
pub struct InducedForm {
    pub eta: ComplexMatrix,
    pub sqrt_eta: ComplexMatrix,
    pub inv_sqrt_eta: ComplexMatrix,
}

/// Principal square root of a positive metric and its inverse.
///
/// The Hermitian part of `eta` is diagonalized, which for a metric that
/// passed the Hermiticity check differs from `eta` only by rounding.
pub fn metric_sqrt(eta: &ComplexMatrix, tol: f64) -> Result<InducedForm> {
    let class = classify_metric(eta, tol);
    if !class.hermitian {
        return Err(Error::NotHermitian {
            what: "eta",
            defect: class.hermiticity_defect,
        });
    }
    if !class.positive {
        return Err(Error::NotPositive {
            min_eigenvalue: class.min_eigenvalue_of_hermitian_part,
        });
    }
    let (values, vectors) = eta.hermitian_eigen();
    let n = eta.dim();
    let assemble = |g: &dyn Fn(f64) -> f64| {
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for (k, &lambda) in values.iter().enumerate() {
            let col = vectors.column(k);
            m += (col * col.adjoint()) * Complex64::new(g(lambda), 0.0);
        }
        ComplexMatrix::from_dmatrix(m).map(|m| m.hermitian_part())
    };
    Ok(InducedForm {
        eta: eta.clone(),
        sqrt_eta: assemble(&f64::sqrt)?,
        inv_sqrt_eta: assemble(&|l: f64| 1.0 / l.sqrt())?,
    })
}

/// `H_η = η^{1/2} H η^{-1/2}`, Hermitian whenever `η` is a positive metric for `H`.
pub fn induced_hamiltonian(h: &ComplexMatrix, form: &InducedForm, tol: f64) -> Result<ComplexMatrix> {
    let r = residual(h, &form.eta)?;
    if r > tol {
        return Err(Error::NotAMetric { residual: r, tol });
    }
    Ok(&(&form.sqrt_eta * h) * &form.inv_sqrt_eta)
}

/// `⟨φ|ηψ⟩`.
///
/// Unless `allow_indefinite` is set, `eta` must be positive so that the
/// result is a genuine inner product; otherwise it is only a Hermitian
/// sesquilinear form.
pub fn induced_inner(
    phi: &ComplexVector,
    psi: &ComplexVector,
    eta: &ComplexMatrix,
    tol: f64,
    allow_indefinite: bool,
) -> Result<Complex64> {
    if phi.dim() != eta.dim() {
        return Err(Error::DimensionMismatch {
            expected: eta.dim(),
            found: phi.dim(),
        });
    }
    if psi.dim() != eta.dim() {
        return Err(Error::DimensionMismatch {
            expected: eta.dim(),
            found: psi.dim(),
        });
    }
    if !allow_indefinite {
        let class = classify_metric(eta, tol);
        if !class.positive {
            return Err(Error::NotPositive {
                min_eigenvalue: class.min_eigenvalue_of_hermitian_part,
            });
        }
    }
    Ok(phi.inner(&ComplexVector::apply(eta, psi)))
}
