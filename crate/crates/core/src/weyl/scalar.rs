use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Complex number with exact rational real and imaginary parts.
pub type ExactComplex = Complex<BigRational>;

/// Coefficient field for [`WeylPolynomial`](super::WeylPolynomial).
pub trait Scalar:
    Clone + PartialEq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn imag_unit() -> Self;
    fn from_integer(n: i64) -> Self;
    /// Exact image of a finite double; panics on NaN or infinity.
    fn from_f64(x: f64) -> Self;
    fn conjugate(&self) -> Self;
    /// `self · rhs` without consuming either side.
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn is_zero_scalar(&self) -> bool;
    /// Modulus as a double, for reporting and float tolerances.
    fn modulus(&self) -> f64;
    /// Real and imaginary parts as text: `"p/q"` for exact, shortest round-trip for floats.
    fn parts_text(&self) -> (String, String);
}

impl Scalar for ExactComplex {
    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        Self::from_integer(1)
    }

    fn imag_unit() -> Self {
        Complex::new(BigRational::zero(), BigRational::from_integer(BigInt::from(1)))
    }

    fn from_integer(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    fn from_f64(x: f64) -> Self {
        let re = BigRational::from_float(x).expect("finite coefficient");
        Complex::new(re, BigRational::zero())
    }

    fn conjugate(&self) -> Self {
        self.conj()
    }

    // Most operands in normal ordering and boosts are purely real or purely
    // imaginary; skipping zero parts saves the gcd work of rational products.
    fn mul_ref(&self, rhs: &Self) -> Self {
        let prod = |x: &BigRational, y: &BigRational| (!x.is_zero() && !y.is_zero()).then(|| x * y);
        let combine = |p: Option<BigRational>, q: Option<BigRational>, subtract: bool| match (p, q) {
            (Some(p), Some(q)) if subtract => p - q,
            (Some(p), Some(q)) => p + q,
            (Some(p), None) => p,
            (None, Some(q)) if subtract => -q,
            (None, Some(q)) => q,
            (None, None) => BigRational::zero(),
        };
        Complex::new(
            combine(prod(&self.re, &rhs.re), prod(&self.im, &rhs.im), true),
            combine(prod(&self.re, &rhs.im), prod(&self.im, &rhs.re), false),
        )
    }

    fn is_zero_scalar(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn modulus(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(f64::INFINITY);
        let im = self.im.to_f64().unwrap_or(f64::INFINITY);
        re.abs().hypot(im.abs())
    }

    fn parts_text(&self) -> (String, String) {
        (self.re.to_string(), self.im.to_string())
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn from_integer(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "finite coefficient");
        Complex64::new(x, 0.0)
    }

    fn conjugate(&self) -> Self {
        self.conj()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn is_zero_scalar(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn parts_text(&self) -> (String, String) {
        (self.re.to_string(), self.im.to_string())
    }
}

/// `(-i)^k`.
pub(crate) fn neg_i_pow<C: Scalar>(k: u32) -> C {
    match k % 4 {
        0 => C::one(),
        1 => -C::imag_unit(),
        2 => -C::one(),
        _ => C::imag_unit(),
    }
}

/// Binomial coefficient `C(n, k)`.
pub(crate) fn binomial_count(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k as u128 {
        // acc·(n − j) is divisible by (j + 1) at every step
        acc = acc
            .checked_mul(n as u128 - j)
            .expect("binomial coefficient overflows u128; polynomial degree too large")
            / (j + 1);
    }
    acc
}

/// Binomial coefficient `C(n, k)` as a scalar.
pub(crate) fn binomial<C: Scalar>(n: u32, k: u32) -> C {
    from_u128(binomial_count(n, k))
}

/// Coefficient of `x^{c−k} p^{b−k}` in `p^b x^c`: `C(b,k) C(c,k) k! (−i)^k`.
pub(crate) fn reorder_coefficient<C: Scalar>(b: u32, c: u32, k: u32) -> C {
    let factorial = (1..=k as u128).try_fold(1u128, |acc, j| acc.checked_mul(j));
    let count = factorial
        .and_then(|f| f.checked_mul(binomial_count(b, k)))
        .and_then(|f| f.checked_mul(binomial_count(c, k)))
        .expect("reordering coefficient overflows u128; polynomial degree too large");
    from_u128::<C>(count).mul_ref(&neg_i_pow(k))
}

pub(crate) fn from_u128<C: Scalar>(v: u128) -> C {
    if let Ok(small) = i64::try_from(v) {
        return C::from_integer(small);
    }
    let hi = (v >> 62) as i64;
    let lo = (v & ((1u128 << 62) - 1)) as i64;
    C::from_integer(hi) * C::from_integer(1i64 << 62) + C::from_integer(lo)
}
