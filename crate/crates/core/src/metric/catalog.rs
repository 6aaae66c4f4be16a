use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Particle on a two-point axis: `H = [[x, y], [ȳ, x̄]]` with its metric
/// `[[0, y], [ȳ, 0]]`, or `[[0, 1], [1, 0]]` when `y = 0`.
pub fn catalog_two_point(x: Complex64, y: Complex64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if x.im == 0.0 {
        return Err(Error::InvalidParameter(
            "two-point Hamiltonian needs Im(x) != 0, otherwise H is Hermitian".into(),
        ));
    }
    let zero = Complex64::new(0.0, 0.0);
    let h = ComplexMatrix::from_rows(&[vec![x, y], vec![y.conj(), x.conj()]])?;
    let eta = if y == zero {
        let one = Complex64::new(1.0, 0.0);
        ComplexMatrix::from_rows(&[vec![zero, one], vec![one, zero]])?
    } else {
        ComplexMatrix::from_rows(&[vec![zero, y], vec![y.conj(), zero]])?
    };
    Ok((h, eta))
}

/// Two-level oscillator `H = [[0, i], [−iω², 0]]` with metric `[[0, i], [−i, 0]]`.
pub fn catalog_oscillator(omega: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "oscillator needs a finite nonzero omega, got {omega}"
        )));
    }
    let h = ComplexMatrix::from_pairs(&[&[(0.0, 0.0), (0.0, 1.0)], &[(0.0, -omega * omega), (0.0, 0.0)]]);
    let eta = ComplexMatrix::from_pairs(&[&[(0.0, 0.0), (0.0, 1.0)], &[(0.0, -1.0), (0.0, 0.0)]]);
    Ok((h, eta))
}
