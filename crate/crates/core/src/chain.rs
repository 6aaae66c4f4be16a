//! Chains of metrics `η_k = (H†)^k η_0`.
//!
//! If `η` is a Hermitian metric for `H` then so is `H†η`, provided `H†` is
//! invertible. When `H` is singular the chain is built on `H + αI` for a
//! real shift `α`; every element still intertwines the original `H`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::metric::{classify_metric, residual, MetricClass, NULLSPACE_RTOL};

/// Rungs tried by [`shift_for_invertibility`] before giving up.
pub const SHIFT_LADDER_RUNGS: usize = 100;

#[derive(Clone, Debug, Serialize)]
pub struct EtaChain {
    #[serde(skip)]
    pub h: ComplexMatrix,
    /// Matrix whose adjoint generates the chain: `H + shift_alpha·I`.
    #[serde(skip)]
    pub generator: ComplexMatrix,
    pub shift_alpha: f64,
    pub normalized: bool,
    pub etas: Vec<ComplexMatrix>,
    /// Residuals against `h` (the unshifted Hamiltonian).
    pub residuals: Vec<f64>,
    pub classes: Vec<MetricClass>,
    /// Elements whose smallest singular value is below threshold.
    pub degenerate: Vec<bool>,
    /// Rank of `{η_0, …, η_K}` viewed as vectors in `C^{n²}`.
    pub rank: usize,
}

impl EtaChain {
    pub fn len(&self) -> usize {
        self.etas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.etas.is_empty()
    }

    pub fn has_degenerate(&self) -> bool {
        self.degenerate.iter().any(|&d| d)
    }
}

/// `H†·η`.
pub fn next_eta(h: &ComplexMatrix, eta: &ComplexMatrix) -> Result<ComplexMatrix> {
    h.check_same_dim(eta)?;
    Ok(&h.adjoint() * eta)
}

fn check_seed(h: &ComplexMatrix, eta0: &ComplexMatrix, tol: f64) -> Result<()> {
    h.check_same_dim(eta0)?;
    let defect = eta0.anti_hermitian_norm() / eta0.frobenius_norm().max(1.0);
    if defect > tol {
        return Err(Error::NotHermitian { what: "eta0", defect });
    }
    let r = residual(h, eta0)?;
    if r > tol {
        return Err(Error::NotAMetric { residual: r, tol });
    }
    Ok(())
}

/// Builds `η_0 … η_{k_max}` from `η_{k+1} = H†η_k`.
///
/// With `normalize` every element is rescaled to unit Frobenius norm; the
/// recursion then runs on the rescaled elements, so `etas[k+1]` is a
/// positive multiple of `H†·etas[k]`.
pub fn build_chain(
    h: &ComplexMatrix,
    eta0: &ComplexMatrix,
    k_max: usize,
    normalize: bool,
    tol: f64,
) -> Result<EtaChain> {
    check_seed(h, eta0, tol)?;
    let h_adj = h.adjoint();
    let mut etas = Vec::with_capacity(k_max + 1);
    let mut current = if normalize { unit(eta0) } else { eta0.clone() };
    etas.push(current.clone());
    for _ in 0..k_max {
        let next = &h_adj * &current;
        current = if normalize { unit(&next) } else { next };
        etas.push(current.clone());
    }
    finish(h.clone(), h.clone(), 0.0, normalize, etas, tol)
}

fn unit(m: &ComplexMatrix) -> ComplexMatrix {
    let norm = m.frobenius_norm();
    if norm > 0.0 {
        m.scale(1.0 / norm)
    } else {
        m.clone()
    }
}

fn finish(
    h: ComplexMatrix,
    generator: ComplexMatrix,
    shift_alpha: f64,
    normalized: bool,
    etas: Vec<ComplexMatrix>,
    tol: f64,
) -> Result<EtaChain> {
    let residuals = etas.iter().map(|e| residual(&h, e)).collect::<Result<Vec<_>>>()?;
    let classes: Vec<MetricClass> = etas.iter().map(|e| classify_metric(e, tol)).collect();
    let degenerate = classes.iter().map(|c| !c.invertible).collect();
    let rank = vector_rank(&etas);
    Ok(EtaChain {
        h,
        generator,
        shift_alpha,
        normalized,
        etas,
        residuals,
        classes,
        degenerate,
        rank,
    })
}

/// Numerical rank of the matrices as vectors, each scaled to unit norm first.
fn vector_rank(mats: &[ComplexMatrix]) -> usize {
    let cols: Vec<&ComplexMatrix> = mats.iter().filter(|m| m.frobenius_norm() > 0.0).collect();
    if cols.is_empty() {
        return 0;
    }
    let n2 = cols[0].dim() * cols[0].dim();
    let mut a = DMatrix::<Complex64>::zeros(n2, cols.len());
    for (j, m) in cols.iter().enumerate() {
        let s = 1.0 / m.frobenius_norm();
        for (i, z) in m.entries_row_major().enumerate() {
            a[(i, j)] = z * s;
        }
    }
    let sv = a.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > NULLSPACE_RTOL * max).count()
}

/// Finds a real `α` with `H + αI` invertible.
///
/// Returns `α = 0` when `H` is already invertible, otherwise the first rung
/// of `{1, −1, 2, −2, …}·(1 + ‖H‖_F)` that works.
pub fn shift_for_invertibility(h: &ComplexMatrix, tol: f64) -> Result<(f64, ComplexMatrix)> {
    let invertible = |m: &ComplexMatrix| {
        let norm = m.frobenius_norm();
        norm > 0.0 && m.min_singular_value() > tol * norm
    };
    if invertible(h) {
        return Ok((0.0, h.clone()));
    }
    let step = 1.0 + h.frobenius_norm();
    for rung in 0..SHIFT_LADDER_RUNGS {
        let magnitude = (rung / 2 + 1) as f64;
        let sign = if rung % 2 == 0 { 1.0 } else { -1.0 };
        let alpha = sign * magnitude * step;
        let shifted = h.add_identity(alpha);
        if invertible(&shifted) {
            return Ok((alpha, shifted));
        }
    }
    Err(Error::ShiftLadderExhausted {
        rungs: SHIFT_LADDER_RUNGS,
    })
}

/// Builds the chain on `H + αI` and validates every element against `H`.
///
/// A real multiple of the identity is Hermitian and commutes with
/// everything, so `η` intertwines `H` exactly when it intertwines `H + αI`.
pub fn chain_via_shift(
    h: &ComplexMatrix,
    eta0: &ComplexMatrix,
    k_max: usize,
    normalize: bool,
    tol: f64,
) -> Result<EtaChain> {
    check_seed(h, eta0, tol)?;
    let (alpha, shifted) = shift_for_invertibility(h, tol)?;
    let chain = build_chain(&shifted, eta0, k_max, normalize, tol)?;
    finish(h.clone(), shifted, alpha, normalize, chain.etas, tol)
}
