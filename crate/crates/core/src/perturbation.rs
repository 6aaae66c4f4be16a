//! Perturbations `H̃ = H + f(K)` that keep a known metric.
//!
//! If `η` is a metric for `H` and `K` is Hermitian with `[K, η] = 0`, then
//! `η` is also a metric for `H + f(K)` for every real polynomial `f`, and
//! the anti-Hermitian part of `H` is untouched. Taking `K = f(η)` satisfies
//! both hypotheses automatically.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::metric::residual;
use crate::poly::RealPolynomial;

#[derive(Clone, Debug, Serialize)]
pub struct PerturbedHamiltonian {
    pub h: ComplexMatrix,
    pub k: ComplexMatrix,
    pub f: RealPolynomial,
    pub h_tilde: ComplexMatrix,
    pub eta: ComplexMatrix,
    pub residual: f64,
    /// Commutator defect of `K` with `eta`.
    pub commutator_defect: f64,
}

/// `‖AB − BA‖_F / max(1, ‖A‖_F‖B‖_F)`.
pub fn commutator_defect(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    a.check_same_dim(b)?;
    let comm = &(a * b) - &(b * a);
    Ok(comm.frobenius_norm() / (a.frobenius_norm() * b.frobenius_norm()).max(1.0))
}

/// `f(K) = Σ c_j K^j` by Horner's rule, with `K⁰ = I`.
pub fn matrix_poly(k: &ComplexMatrix, f: &RealPolynomial) -> ComplexMatrix {
    let n = k.dim();
    f.coeffs()
        .iter()
        .rev()
        .fold(ComplexMatrix::zeros(n), |acc, &c| (&acc * k).add_identity(c))
}

fn hermiticity_defect(m: &ComplexMatrix) -> f64 {
    m.anti_hermitian_norm() / m.frobenius_norm().max(1.0)
}

/// Builds `H + f(K)` after checking every hypothesis.
///
/// Checks, in order: `eta` Hermitian, `eta` intertwines `H`, `K` Hermitian,
/// `[K, eta] = 0`, and `H` non-Hermitian (unless `allow_hermitian`). The
/// Hermitian part of `f(K)` is added, which is `f(K)` itself up to rounding
/// and keeps `H̃ − H̃†` equal to `H − H†` to the last bit where possible.
pub fn perturb(
    h: &ComplexMatrix,
    eta: &ComplexMatrix,
    k: &ComplexMatrix,
    f: &RealPolynomial,
    tol: f64,
    allow_hermitian: bool,
) -> Result<PerturbedHamiltonian> {
    h.check_same_dim(eta)?;
    h.check_same_dim(k)?;

    let defect = hermiticity_defect(eta);
    if defect > tol {
        return Err(Error::NotHermitian { what: "eta", defect });
    }
    let r = residual(h, eta)?;
    if r > tol {
        return Err(Error::NotAMetric { residual: r, tol });
    }
    let defect = hermiticity_defect(k);
    if defect > tol {
        return Err(Error::NotHermitian { what: "K", defect });
    }
    let comm = commutator_defect(k, eta)?;
    if comm > tol {
        return Err(Error::NotCommuting { defect: comm, tol });
    }
    if !allow_hermitian && hermiticity_defect(h) <= tol {
        return Err(Error::HermitianHamiltonian);
    }

    let fk = matrix_poly(k, f).hermitian_part();
    let h_tilde = h + &fk;
    let r_tilde = residual(&h_tilde, eta)?;
    if r_tilde > tol {
        return Err(Error::Numerical(format!(
            "perturbed residual {r_tilde:e} exceeds {tol:e}"
        )));
    }
    if !allow_hermitian && hermiticity_defect(&h_tilde) <= tol {
        return Err(Error::Numerical("perturbed Hamiltonian became Hermitian".into()));
    }
    Ok(PerturbedHamiltonian {
        h: h.clone(),
        k: k.clone(),
        f: f.clone(),
        h_tilde,
        eta: eta.clone(),
        residual: r_tilde,
        commutator_defect: comm,
    })
}

/// `K = f(η)`, which is Hermitian and commutes with `η` by construction.
pub fn auto_k(eta: &ComplexMatrix, f: &RealPolynomial, tol: f64) -> Result<ComplexMatrix> {
    let defect = hermiticity_defect(eta);
    if defect > tol {
        return Err(Error::NotHermitian { what: "eta", defect });
    }
    Ok(matrix_poly(eta, f))
}
