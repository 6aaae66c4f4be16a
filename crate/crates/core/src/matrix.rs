//! Dense complex matrices and vectors with validated construction and the
//! shared JSON file schema.
//!
//! Files store complex scalars as `[re, im]` pairs and matrices row-major:
//!
//! ```json
//! {"n": 2, "entries": [[[0, 0], [0, 1]], [[0, -4], [0, 0]]]}
//! ```

use std::fmt;
use std::fs;
use std::ops::{Add, Mul, Sub};
use std::path::Path;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct VectorFile {
    n: usize,
    entries: Vec<[f64; 2]>,
}

fn check_finite(z: Complex64, location: impl FnOnce() -> String) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { location: location() })
    }
}

impl ComplexMatrix {
    /// Wraps an nalgebra matrix after checking it is square, non-empty and finite.
    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() == 0 {
            return Err(Error::Empty);
        }
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                check_finite(m[(i, j)], || format!("({i}, {j})"))?;
            }
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Ragged {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        Self::from_dmatrix(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// Builds a matrix from real/imaginary pairs given row by row.
    ///
    /// Panics on malformed input; intended for literals in code and tests.
    pub fn from_pairs(rows: &[&[(f64, f64)]]) -> Self {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
            .collect();
        Self::from_rows(&rows).expect("well-formed matrix literal")
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        Self::from_dmatrix(DMatrix::from_fn(n, n, f))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(DMatrix::zeros(n, n))
    }

    pub fn diag(values: &[Complex64]) -> Self {
        let n = values.len();
        Self(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                values[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    /// Row-major view of the entries.
    pub fn entries_row_major(&self) -> impl Iterator<Item = Complex64> + '_ {
        let n = self.dim();
        (0..n * n).map(move |k| self.0[(k / n, k % n)])
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    /// `(M + M†) / 2`, exactly Hermitian in floating point.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim();
        Self(DMatrix::from_fn(n, n, |i, j| {
            (self.0[(i, j)] + self.0[(j, i)].conj()) * 0.5
        }))
    }

    /// `‖M − M†‖_F`.
    pub fn anti_hermitian_norm(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.0[(i, j)] - self.0[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.anti_hermitian_norm() <= tol * self.frobenius_norm().max(1.0)
    }

    pub fn add_identity(&self, alpha: f64) -> Self {
        let mut m = self.0.clone();
        for i in 0..self.dim() {
            m[(i, i)] += alpha;
        }
        Self(m)
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self.0.clone().singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    pub fn min_singular_value(&self) -> f64 {
        self.singular_values().last().copied().unwrap_or(0.0)
    }

    /// Eigen-decomposition of the Hermitian part, eigenvalues ascending.
    pub fn hermitian_eigen(&self) -> (Vec<f64>, DMatrix<Complex64>) {
        let eig = SymmetricEigen::new(self.hermitian_part().0);
        let n = self.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
        (values, vectors)
    }

    /// Eigenvalues of a general complex matrix via the complex Schur form,
    /// sorted by real part then imaginary part.
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        let schur = nalgebra::Schur::try_new(self.0.clone(), f64::EPSILON, 10_000)
            .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
        let t = schur.unpack().1;
        let mut ev: Vec<Complex64> = (0..self.dim()).map(|i| t[(i, i)]).collect();
        ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(ev)
    }

    pub fn try_inverse(&self) -> Option<Self> {
        self.0.clone().try_inverse().map(Self)
    }

    /// Reads a matrix from the shared JSON schema.
    pub fn read_json(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let file: MatrixFile = serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })?;
        Self::try_from_file(file)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|source| Error::Json {
            path: "<string>".into(),
            source,
        })?;
        Self::try_from_file(file)
    }

    fn try_from_file(file: MatrixFile) -> Result<Self> {
        if file.entries.len() != file.n {
            return Err(Error::DimensionMismatch {
                expected: file.n,
                found: file.entries.len(),
            });
        }
        let rows: Vec<Vec<Complex64>> = file
            .entries
            .iter()
            .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("matrix serializes")
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixFile {
            n: self.dim(),
            entries: self
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = MatrixFile::deserialize(d)?;
        Self::try_from_file(file).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{:?}", self.rows())
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|z| format!("{:+.6}{:+.6}i", z.re, z.im)).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "matrix product dimension mismatch");
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "matrix sum dimension mismatch");
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "matrix difference dimension mismatch");
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// Complex column vector with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector(DVector<Complex64>);

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        for (i, &z) in entries.iter().enumerate() {
            check_finite(z, || format!("[{i}]"))?;
        }
        Ok(Self(DVector::from_vec(entries)))
    }

    pub fn from_pairs(entries: &[(f64, f64)]) -> Self {
        Self::new(entries.iter().map(|&(re, im)| Complex64::new(re, im)).collect()).expect("well-formed vector literal")
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_dvector(&self) -> &DVector<Complex64> {
        &self.0
    }

    pub fn entries(&self) -> &[Complex64] {
        self.0.as_slice()
    }

    /// Standard inner product `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.0.dotc(&other.0)
    }

    pub fn apply(m: &ComplexMatrix, v: &Self) -> Self {
        Self(m.as_dmatrix() * &v.0)
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let file: VectorFile = serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })?;
        if file.entries.len() != file.n {
            return Err(Error::DimensionMismatch {
                expected: file.n,
                found: file.entries.len(),
            });
        }
        Self::new(file.entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
    }
}

impl Serialize for ComplexVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VectorFile {
            n: self.dim(),
            entries: self.0.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parses_oscillator_file() {
        let m = ComplexMatrix::from_json_str(r#"{"n":2,"entries":[[[0,0],[0,1]],[[0,-4],[0,0]]]}"#).unwrap();
        assert_eq!(m.get(0, 1), c(0.0, 1.0));
        assert_eq!(m.get(1, 0), c(0.0, -4.0));
        assert_eq!(m.get(0, 0), c(0.0, 0.0));
    }

    #[test]
    fn parses_one_by_one() {
        let m = ComplexMatrix::from_json_str(r#"{"n":1,"entries":[[[1,0]]]}"#).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.get(0, 0), c(1.0, 0.0));
    }

    #[test]
    fn rejects_ragged_and_mismatched() {
        assert!(ComplexMatrix::from_json_str(r#"{"n":2,"entries":[[[1,0]]]}"#).is_err());
        assert!(matches!(
            ComplexMatrix::from_json_str(r#"{"n":2,"entries":[[[1,0]],[[1,0]]]}"#),
            Err(Error::Ragged { .. })
        ));
        assert!(ComplexMatrix::from_json_str(r#"{"n":0,"entries":[]}"#).is_err());
        assert!(ComplexMatrix::from_json_str("not json").is_err());
    }

    #[test]
    fn rejects_non_finite() {
        let err = ComplexMatrix::from_rows(&[vec![c(f64::NAN, 0.0)]]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
        assert!(ComplexVector::new(vec![c(0.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn adjoint_is_involution() {
        let m = ComplexMatrix::from_pairs(&[&[(1.0, 2.0), (3.0, -1.0)], &[(0.5, 0.0), (-2.0, 4.0)]]);
        assert_eq!(m.adjoint().adjoint(), m);
        assert_eq!(m.adjoint().get(0, 1), c(0.5, -0.0));
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let m = ComplexMatrix::from_pairs(&[
            &[(0.1, 1.0 / 3.0), (std::f64::consts::PI, -1e-300)],
            &[(2.0f64.sqrt(), 0.0), (-7.25, 1e20)],
        ]);
        let text = serde_json::to_string(&m).unwrap();
        let back = ComplexMatrix::from_json_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn schur_eigenvalues_of_oscillator() {
        let h = ComplexMatrix::from_pairs(&[&[(0.0, 0.0), (0.0, 1.0)], &[(0.0, -4.0), (0.0, 0.0)]]);
        let ev = h.eigenvalues().unwrap();
        assert!((ev[0] - c(-2.0, 0.0)).norm() < 1e-12);
        assert!((ev[1] - c(2.0, 0.0)).norm() < 1e-12);
    }
}
