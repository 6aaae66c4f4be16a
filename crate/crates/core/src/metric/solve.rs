use nalgebra::{DMatrix, SVD};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::{classify_metric, MetricClass};
use crate::matrix::ComplexMatrix;

/// Singular values at or below this fraction of the largest one span the nullspace.
pub const NULLSPACE_RTOL: f64 = 1e-8;

/// Random combinations tried by [`find_metric`] after the basis elements.
pub const FIND_METRIC_TRIALS: usize = 1000;

/// Orthonormal real basis of the Hermitian solutions of `ηH = H†η`.
#[derive(Clone, Debug, Serialize)]
pub struct MetricBasis {
    #[serde(skip)]
    pub h: ComplexMatrix,
    pub dimension: usize,
    pub basis: Vec<ComplexMatrix>,
    pub classifications: Vec<MetricClass>,
}

impl MetricBasis {
    /// Real coordinates `Re tr(B_i† η)` of `eta` in the basis.
    pub fn coordinates(&self, eta: &ComplexMatrix) -> Vec<f64> {
        self.basis.iter().map(|b| real_inner(b, eta)).collect()
    }

    /// `‖η − P η‖_F / ‖η‖_F` where `P` projects onto the span of the basis.
    pub fn projection_defect(&self, eta: &ComplexMatrix) -> f64 {
        let norm = eta.frobenius_norm();
        if norm == 0.0 {
            return 0.0;
        }
        let projected = self.combine(&self.coordinates(eta));
        (eta - &projected).frobenius_norm() / norm
    }

    /// `Σ c_i B_i`.
    pub fn combine(&self, coeffs: &[f64]) -> ComplexMatrix {
        let n = self.h.dim();
        let mut acc = ComplexMatrix::zeros(n);
        for (b, &c) in self.basis.iter().zip(coeffs) {
            acc = &acc + &b.scale(c);
        }
        acc
    }
}

/// `Re tr(A†B)`.
pub(crate) fn real_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.entries_row_major()
        .zip(b.entries_row_major())
        .map(|(x, y)| (x.conj() * y).re)
        .sum()
}

/// Orthonormal basis of the n×n Hermitian matrices under `Re tr(A†B)`,
/// in row-major order over the upper triangle: `E_jj`, then for `j < k`
/// the symmetric real and antisymmetric imaginary pairs.
fn hermitian_unit_basis(n: usize) -> Vec<ComplexMatrix> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in j..n {
            if j == k {
                let mut m = DMatrix::zeros(n, n);
                m[(j, j)] = Complex64::new(1.0, 0.0);
                out.push(ComplexMatrix::from_dmatrix(m).unwrap());
            } else {
                let mut s = DMatrix::zeros(n, n);
                s[(j, k)] = Complex64::new(r, 0.0);
                s[(k, j)] = Complex64::new(r, 0.0);
                out.push(ComplexMatrix::from_dmatrix(s).unwrap());
                let mut a = DMatrix::zeros(n, n);
                a[(j, k)] = Complex64::new(0.0, r);
                a[(k, j)] = Complex64::new(0.0, -r);
                out.push(ComplexMatrix::from_dmatrix(a).unwrap());
            }
        }
    }
    out
}

/// Solves `ηH − H†η = 0` over the Hermitian matrices.
///
/// The map is real-linear on the n²-dimensional real space of Hermitian
/// matrices; its realified 2n²×n² matrix is decomposed by SVD and the
/// nullspace projector is reduced to a basis by pivoted Gram–Schmidt on its
/// columns (largest projection first, lowest index on ties). This makes
/// the basis independent of the rotation freedom inside the SVD's null
/// block. Each element is then signed so that its first nonzero entry
/// (row-major, real part before imaginary part) is positive.
pub fn solve_metric_space(h: &ComplexMatrix, tol: f64) -> MetricBasis {
    let n = h.dim();
    let dim = n * n;
    let units = hermitian_unit_basis(n);
    let h_adj = h.adjoint();

    let mut op = DMatrix::<f64>::zeros(2 * dim, dim);
    for (col, g) in units.iter().enumerate() {
        let image = &(g * h) - &(&h_adj * g);
        for (k, z) in image.entries_row_major().enumerate() {
            op[(2 * k, col)] = z.re;
            op[(2 * k + 1, col)] = z.im;
        }
    }

    let svd = SVD::new(op, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let null_rows: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= NULLSPACE_RTOL * sigma_max)
        .collect();
    let d = null_rows.len();

    // Projector onto the nullspace, in coordinates of `units`.
    let mut proj = DMatrix::<f64>::zeros(dim, dim);
    for &i in &null_rows {
        let v = v_t.row(i);
        for a in 0..dim {
            for b in 0..dim {
                proj[(a, b)] += v[a] * v[b];
            }
        }
    }

    let coeff_vectors = pivoted_gram_schmidt(&proj, d);

    let mut basis = Vec::with_capacity(d);
    for coeffs in coeff_vectors {
        let mut m = ComplexMatrix::zeros(n);
        for (g, &c) in units.iter().zip(&coeffs) {
            if c != 0.0 {
                m = &m + &g.scale(c);
            }
        }
        basis.push(fix_sign(m));
    }
    let classifications = basis.iter().map(|b| classify_metric(b, tol)).collect();
    MetricBasis {
        h: h.clone(),
        dimension: basis.len(),
        basis,
        classifications,
    }
}

fn pivoted_gram_schmidt(proj: &DMatrix<f64>, d: usize) -> Vec<Vec<f64>> {
    let dim = proj.nrows();
    let mut residual: Vec<Vec<f64>> = (0..dim).map(|j| proj.column(j).iter().copied().collect()).collect();
    let mut used = vec![false; dim];
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(d);
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();

    for _ in 0..d {
        let best = (0..dim)
            .filter(|&j| !used[j])
            .map(|j| norm(&residual[j]))
            .fold(0.0, f64::max);
        if best == 0.0 {
            break;
        }
        let pick = (0..dim)
            .find(|&j| !used[j] && norm(&residual[j]) >= best * (1.0 - 1e-9))
            .expect("a column attains the maximum");
        used[pick] = true;
        let q: Vec<f64> = residual[pick].iter().map(|x| x / best).collect();
        for (j, r) in residual.iter_mut().enumerate() {
            if used[j] {
                continue;
            }
            let dot: f64 = r.iter().zip(&q).map(|(a, b)| a * b).sum();
            for (x, qv) in r.iter_mut().zip(&q) {
                *x -= dot * qv;
            }
        }
        out.push(q);
    }
    out
}

fn fix_sign(m: ComplexMatrix) -> ComplexMatrix {
    let lead = m
        .entries_row_major()
        .flat_map(|z| [z.re, z.im])
        .find(|x| x.abs() > 1e-10);
    match lead {
        Some(x) if x < 0.0 => m.scale(-1.0),
        _ => m,
    }
}

/// Picks an invertible (optionally positive) unit-norm element of the span.
///
/// Basis elements are tried first, then [`FIND_METRIC_TRIALS`] random
/// combinations drawn from a ChaCha8 stream seeded with `seed`. For a
/// positive search each candidate is also tried with its sign flipped.
pub fn find_metric(basis: &MetricBasis, want_positive: bool, tol: f64, seed: u64) -> Option<ComplexMatrix> {
    if basis.basis.is_empty() {
        return None;
    }
    let accept = |c: &ComplexMatrix| -> Option<ComplexMatrix> {
        let norm = c.frobenius_norm();
        if norm == 0.0 {
            return None;
        }
        let c = c.scale(1.0 / norm);
        let class = classify_metric(&c, tol);
        if !want_positive {
            return class.invertible.then_some(c);
        }
        if class.positive {
            return Some(c);
        }
        let neg = c.scale(-1.0);
        classify_metric(&neg, tol).positive.then_some(neg)
    };

    if let Some(found) = basis.basis.iter().find_map(accept) {
        return Some(found);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..FIND_METRIC_TRIALS {
        let coeffs: Vec<f64> = (0..basis.dimension).map(|_| StandardNormal.sample(&mut rng)).collect();
        if let Some(found) = accept(&basis.combine(&coeffs)) {
            return Some(found);
        }
    }
    None
}
