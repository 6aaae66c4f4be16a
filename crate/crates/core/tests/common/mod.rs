//! Test-only generators and brute-force oracles.
//!
//! Nothing here calls into the crate's solvers: the oracles use plain
//! `Vec` arithmetic so they stay independent of the paths they check.
#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64;
use pseudoherm::ComplexMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Dense = Vec<Vec<Complex64>>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| {
        c(rng.random_range(-scale..scale), rng.random_range(-scale..scale))
    })
    .unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexMatrix {
    random_complex(rng, n, scale).hermitian_part()
}

/// Hermitian, invertible, with condition number at most `max_cond`.
pub fn random_invertible_hermitian(rng: &mut ChaCha8Rng, n: usize, max_cond: f64) -> ComplexMatrix {
    loop {
        let m = random_hermitian(rng, n, 1.0);
        let sv = m.singular_values();
        let cond = sv[0] / sv[n - 1];
        if cond.is_finite() && cond <= max_cond {
            return m;
        }
    }
}

/// `H = η⁻¹A` with `η`, `A` Hermitian, so `ηH = A = H†η`.
pub fn random_pseudo_hermitian(rng: &mut ChaCha8Rng, n: usize) -> (ComplexMatrix, ComplexMatrix) {
    loop {
        let eta = random_invertible_hermitian(rng, n, 20.0);
        let a = random_hermitian(rng, n, 1.0);
        let h = &eta.try_inverse().unwrap() * &a;
        if n == 1 || !h.is_hermitian(1e-6) {
            return (h, eta);
        }
    }
}

pub fn dense(m: &ComplexMatrix) -> Dense {
    m.rows()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = vec![vec![c(0.0, 0.0); m]; n];
    for i in 0..n {
        for l in 0..k {
            let ail = a[i][l];
            for j in 0..m {
                out[i][j] += ail * b[l][j];
            }
        }
    }
    out
}

pub fn adjoint(a: &Dense) -> Dense {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn frob(a: &Dense) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn sub(a: &Dense, b: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

/// `‖ηH − H†η‖_F / max(1, ‖H‖_F‖η‖_F)` evaluated with explicit loops.
pub fn residual_oracle(h: &ComplexMatrix, eta: &ComplexMatrix) -> f64 {
    let (h, eta) = (dense(h), dense(eta));
    let diff = sub(&matmul(&eta, &h), &matmul(&adjoint(&h), &eta));
    frob(&diff) / (frob(&h) * frob(&eta)).max(1.0)
}

/// Rank of a real matrix by Gaussian elimination with full pivoting.
pub fn rank_full_pivot(mut a: Vec<Vec<f64>>, rel_tol: f64) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let scale = a.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return 0;
    }
    let mut rank = 0;
    let mut col_used = vec![false; cols];
    for _ in 0..rows.min(cols) {
        let mut best = (0.0, 0, 0);
        for i in rank..rows {
            for j in 0..cols {
                if !col_used[j] && a[i][j].abs() > best.0 {
                    best = (a[i][j].abs(), i, j);
                }
            }
        }
        if best.0 <= rel_tol * scale {
            break;
        }
        let (_, pi, pj) = best;
        a.swap(rank, pi);
        col_used[pj] = true;
        for i in 0..rows {
            if i != rank {
                let factor = a[i][pj] / a[rank][pj];
                if factor != 0.0 {
                    for j in 0..cols {
                        a[i][j] -= factor * a[rank][j];
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the real solution space of `ηH = H†η`, `η = η†`, over all
/// 2n² real unknowns `(Re η_jk, Im η_jk)`.
pub fn brute_force_metric_dimension(h: &ComplexMatrix) -> usize {
    let n = h.dim();
    let hd = dense(h);
    let unknowns = 2 * n * n;
    let mut equations: Vec<Vec<f64>> = Vec::new();
    // (ηH − H†η)_{ij} = Σ_l η_il H_lj − conj(H_li) η_lj, split into re/im rows
    for i in 0..n {
        for j in 0..n {
            let mut re_row = vec![0.0; unknowns];
            let mut im_row = vec![0.0; unknowns];
            let mut add = |row: usize, col: usize, coef: Complex64| {
                // coef · (x + i y) with x = Re η_{row,col}, y = Im η_{row,col}
                let k = 2 * (row * n + col);
                re_row[k] += coef.re;
                re_row[k + 1] -= coef.im;
                im_row[k] += coef.im;
                im_row[k + 1] += coef.re;
            };
            for l in 0..n {
                add(i, l, hd[l][j]);
                add(l, j, -hd[l][i].conj());
            }
            equations.push(re_row);
            equations.push(im_row);
        }
    }
    // Hermiticity: η_ij − conj(η_ji) = 0
    for i in 0..n {
        for j in 0..n {
            let mut re_row = vec![0.0; unknowns];
            let mut im_row = vec![0.0; unknowns];
            let kij = 2 * (i * n + j);
            let kji = 2 * (j * n + i);
            re_row[kij] += 1.0;
            re_row[kji] -= 1.0;
            im_row[kij + 1] += 1.0;
            im_row[kji + 1] += 1.0;
            equations.push(re_row);
            equations.push(im_row);
        }
    }
    unknowns - rank_full_pivot(equations, 1e-9)
}

/// Eigenvalues from the characteristic polynomial: Faddeev–LeVerrier
/// coefficients, Durand–Kerner roots, Newton polishing.
pub fn char_poly_eigenvalues(m: &ComplexMatrix) -> Vec<Complex64> {
    let n = m.dim();
    let a = dense(m);
    let ident: Dense = (0..n)
        .map(|i| (0..n).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect())
        .collect();
    // coeffs[k] multiplies λ^k; monic
    let mut coeffs = vec![c(0.0, 0.0); n + 1];
    coeffs[n] = c(1.0, 0.0);
    let mut mk: Dense = vec![vec![c(0.0, 0.0); n]; n];
    for k in 1..=n {
        let am = matmul(&a, &mk);
        mk = am
            .iter()
            .zip(&ident)
            .map(|(r, e)| r.iter().zip(e).map(|(x, y)| x + y * coeffs[n - k + 1]).collect())
            .collect();
        let amk = matmul(&a, &mk);
        let trace: Complex64 = (0..n).map(|i| amk[i][i]).sum();
        coeffs[n - k] = -trace / k as f64;
    }
    let eval = |z: Complex64| coeffs.iter().rev().fold(c(0.0, 0.0), |acc, &ck| acc * z + ck);
    let deriv = |z: Complex64| {
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(c(0.0, 0.0), |acc, (k, &ck)| acc * z + ck * k as f64)
    };
    let radius = 1.0 + coeffs.iter().take(n).map(|z| z.norm()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..n).map(|k| c(0.4, 0.9).powu(k as u32) * radius * 0.5).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for k in 0..n {
            let mut denom = c(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    denom *= roots[k] - roots[j];
                }
            }
            let step = eval(roots[k]) / denom;
            roots[k] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    for r in roots.iter_mut() {
        for _ in 0..5 {
            let d = deriv(*r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / d;
        }
    }
    roots
}

/// Largest distance in an optimal-by-greedy matching of two spectra.
pub fn spectrum_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut unused: Vec<Complex64> = b.to_vec();
    let mut worst = 0.0f64;
    for z in a {
        let (idx, d) = unused
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (z - w).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        worst = worst.max(d);
        unused.remove(idx);
    }
    worst
}

/// Position and momentum on the first `dim` oscillator states:
/// `x = (a + a†)/√2`, `p = i(a† − a)/√2`.
pub fn truncated_xp(dim: usize) -> (Dense, Dense) {
    let mut a = vec![vec![c(0.0, 0.0); dim]; dim];
    for k in 1..dim {
        a[k - 1][k] = c((k as f64).sqrt(), 0.0);
    }
    let ad = adjoint(&a);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x: Dense = (0..dim)
        .map(|i| (0..dim).map(|j| (a[i][j] + ad[i][j]) * s).collect())
        .collect();
    let p: Dense = (0..dim)
        .map(|i| (0..dim).map(|j| (ad[i][j] - a[i][j]) * c(0.0, s)).collect())
        .collect();
    (x, p)
}

pub fn dense_pow(m: &Dense, k: u32) -> Dense {
    let n = m.len();
    let mut out: Dense = (0..n)
        .map(|i| (0..n).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect())
        .collect();
    for _ in 0..k {
        out = matmul(&out, m);
    }
    out
}

/// Matrix of `Σ c_ab x^a p^b` in the truncated basis.
pub fn weyl_matrix(terms: &[(u32, u32, Complex64)], x: &Dense, p: &Dense) -> Dense {
    let n = x.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for &(a, b, coef) in terms {
        let m = matmul(&dense_pow(x, a), &dense_pow(p, b));
        for i in 0..n {
            for j in 0..n {
                out[i][j] += coef * m[i][j];
            }
        }
    }
    out
}

/// Largest entry difference on the leading `block × block` corner.
pub fn corner_distance(a: &Dense, b: &Dense, block: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..block {
        for j in 0..block {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}
