//! The intertwining relation `ηH = H†η`: residuals, classification of
//! candidate metrics, the Hermitian solution space, and the two-level
//! catalog Hamiltonians.

mod catalog;
mod solve;

use serde::Serialize;

use crate::error::Result;
use crate::matrix::ComplexMatrix;

pub use catalog::{catalog_oscillator, catalog_two_point};
pub use solve::{find_metric, solve_metric_space, MetricBasis, FIND_METRIC_TRIALS, NULLSPACE_RTOL};

/// Relative intertwining residual `‖ηH − H†η‖_F / max(1, ‖H‖_F‖η‖_F)`.
///
/// The multiplied-through form needs no inverse, so singular candidates
/// are measured like any other.
pub fn residual(h: &ComplexMatrix, eta: &ComplexMatrix) -> Result<f64> {
    h.check_same_dim(eta)?;
    let lhs = eta * h;
    let rhs = &h.adjoint() * eta;
    let scale = (h.frobenius_norm() * eta.frobenius_norm()).max(1.0);
    Ok((&lhs - &rhs).frobenius_norm() / scale)
}

/// Numerical profile of a candidate metric.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricClass {
    pub hermitian: bool,
    pub invertible: bool,
    pub positive: bool,
    pub min_singular_value: f64,
    pub min_eigenvalue_of_hermitian_part: f64,
    /// `‖η − η†‖_F / max(1, ‖η‖_F)`.
    pub hermiticity_defect: f64,
}

/// Classifies `eta` against tolerance `tol`.
///
/// Singularity and positivity thresholds are `tol·‖η‖_F`, so the boolean
/// flags are invariant under positive rescaling of `eta`.
pub fn classify_metric(eta: &ComplexMatrix, tol: f64) -> MetricClass {
    let norm = eta.frobenius_norm();
    let hermiticity_defect = eta.anti_hermitian_norm() / norm.max(1.0);
    let min_singular_value = eta.min_singular_value();
    let (eigs, _) = eta.hermitian_eigen();
    let min_eig = eigs.first().copied().unwrap_or(0.0);
    let threshold = tol * norm;

    let hermitian = hermiticity_defect <= tol;
    let invertible = norm > 0.0 && min_singular_value > threshold;
    let positive = hermitian && invertible && min_eig > threshold;
    MetricClass {
        hermitian,
        invertible,
        positive,
        min_singular_value,
        min_eigenvalue_of_hermitian_part: min_eig,
        hermiticity_defect,
    }
}
