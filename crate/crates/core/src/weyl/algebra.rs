use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{binomial, reorder_coefficient, Scalar};

/// `Σ c_{ab} x^a p^b` in normal order. Zero coefficients are never stored,
/// so two polynomials are equal exactly when their term maps are.
#[derive(Clone, PartialEq)]
pub struct WeylPolynomial<C> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Scalar> Default for WeylPolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> WeylPolynomial<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, C::one())
    }

    pub fn p() -> Self {
        Self::monomial(0, 1, C::one())
    }

    /// `c·x^a p^b`.
    pub fn monomial(a: u32, b: u32, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(a, b, c);
        out
    }

    /// Builds from `(a, b, c)` triples, summing repeated monomials.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, C)>) -> Self {
        let mut out = Self::zero();
        for (a, b, c) in terms {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: C) {
        if c.is_zero_scalar() {
            return;
        }
        match self.terms.entry((a, b)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = c + o.get().clone();
                if sum.is_zero_scalar() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: u32, b: u32) -> C {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in ascending `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &C)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    /// Largest total degree `a + b`, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::from_terms(self.terms().map(|(a, b, c)| (a, b, c.mul_ref(s))))
    }

    /// Largest coefficient modulus, `0` for the zero polynomial.
    pub fn max_modulus(&self) -> f64 {
        self.terms.values().map(|c| c.modulus()).fold(0.0, f64::max)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| normal_multiply(&acc, self))
    }

    /// Substitutes a polynomial in `x` alone: `Σ coeffs[j]·(x − shift)^j`.
    pub fn poly_in_x_shifted(coeffs: &[C], shift: &C) -> Self {
        let mut out = Self::zero();
        let table = shift_table(&-shift.clone(), coeffs.len().saturating_sub(1) as u32);
        for (j, cj) in coeffs.iter().enumerate() {
            if cj.is_zero_scalar() {
                continue;
            }
            for (m, t) in table[j].iter().enumerate() {
                out.add_term(m as u32, 0, cj.mul_ref(t));
            }
        }
        out
    }

    /// `Σ coeffs[j]·p^j`.
    pub fn poly_in_p(coeffs: &[C]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(j, c)| (0, j as u32, c.clone())))
    }
}

/// Product `A·B` re-expressed in normal order.
///
/// `(x^a p^b)(x^c p^d) = Σ_k C(b,k) C(c,k) k! (−i)^k x^{a+c−k} p^{b+d−k}`.
pub fn normal_multiply<C: Scalar>(lhs: &WeylPolynomial<C>, rhs: &WeylPolynomial<C>) -> WeylPolynomial<C> {
    let mut out = WeylPolynomial::zero();
    for (a, b, u) in lhs.terms() {
        for (c, d, v) in rhs.terms() {
            let uv = u.mul_ref(v);
            for k in 0..=b.min(c) {
                out.add_term(a + c - k, b + d - k, uv.mul_ref(&reorder_coefficient::<C>(b, c, k)));
            }
        }
    }
    out
}

/// Formal adjoint with `x† = x`, `p† = p`: `(c x^a p^b)† = c̄ p^b x^a`.
pub fn weyl_adjoint<C: Scalar>(poly: &WeylPolynomial<C>) -> WeylPolynomial<C> {
    let mut out = WeylPolynomial::zero();
    for (a, b, c) in poly.terms() {
        let cbar = c.conjugate();
        for k in 0..=a.min(b) {
            out.add_term(a - k, b - k, cbar.mul_ref(&reorder_coefficient::<C>(b, a, k)));
        }
    }
    out
}

/// `table[a][j] = C(a, j)·shift^{a−j}`, the coefficient of `x^j` in `(x + shift)^a`.
fn shift_table<C: Scalar>(shift: &C, max_degree: u32) -> Vec<Vec<C>> {
    let mut powers = vec![C::one()];
    for k in 1..=max_degree as usize {
        powers.push(powers[k - 1].mul_ref(shift));
    }
    (0..=max_degree)
        .map(|a| {
            (0..=a)
                .map(|j| binomial::<C>(a, j).mul_ref(&powers[(a - j) as usize]))
                .collect()
        })
        .collect()
}

/// `e^{-θp} A e^{θp}`: substitutes `x → x + iθ`, leaves `p` unchanged.
pub fn boost_conjugate<C: Scalar>(poly: &WeylPolynomial<C>, theta: &C) -> WeylPolynomial<C> {
    let max_a = poly.terms().map(|(a, _, _)| a).max().unwrap_or(0);
    let table = shift_table(&C::imag_unit().mul_ref(theta), max_a);
    let mut out = WeylPolynomial::zero();
    for (a, b, c) in poly.terms() {
        for (j, t) in table[a as usize].iter().enumerate() {
            out.add_term(j as u32, b, c.mul_ref(t));
        }
    }
    out
}

impl<C: Scalar> Add for &WeylPolynomial<C> {
    type Output = WeylPolynomial<C>;
    fn add(self, rhs: &WeylPolynomial<C>) -> WeylPolynomial<C> {
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for &WeylPolynomial<C> {
    type Output = WeylPolynomial<C>;
    fn sub(self, rhs: &WeylPolynomial<C>) -> WeylPolynomial<C> {
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(a, b, -c.clone());
        }
        out
    }
}

impl<C: Scalar> Neg for &WeylPolynomial<C> {
    type Output = WeylPolynomial<C>;
    fn neg(self) -> WeylPolynomial<C> {
        WeylPolynomial::from_terms(self.terms().map(|(a, b, c)| (a, b, -c.clone())))
    }
}

impl<C: Scalar> Mul for &WeylPolynomial<C> {
    type Output = WeylPolynomial<C>;
    fn mul(self, rhs: &WeylPolynomial<C>) -> WeylPolynomial<C> {
        normal_multiply(self, rhs)
    }
}

impl<C: Scalar> fmt::Display for WeylPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let (re, im) = c.parts_text();
            write!(f, "({re} + {im}i)")?;
            match a {
                0 => {}
                1 => write!(f, " x")?,
                _ => write!(f, " x^{a}")?,
            }
            match b {
                0 => {}
                1 => write!(f, " p")?,
                _ => write!(f, " p^{b}")?,
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for WeylPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylPolynomial[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{ExactComplex, ExactWeyl};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(re: i64, im: i64) -> ExactComplex {
        ExactComplex::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    fn terms(t: &[(u32, u32, i64, i64)]) -> ExactWeyl {
        WeylPolynomial::from_terms(t.iter().map(|&(a, b, re, im)| (a, b, q(re, im))))
    }

    #[test]
    fn xp_is_already_normal() {
        let prod = normal_multiply(&ExactWeyl::x(), &ExactWeyl::p());
        assert_eq!(prod, terms(&[(1, 1, 1, 0)]));
    }

    #[test]
    fn px_picks_up_commutator() {
        let prod = normal_multiply(&ExactWeyl::p(), &ExactWeyl::x());
        assert_eq!(prod, terms(&[(1, 1, 1, 0), (0, 0, 0, -1)]));
        let comm = &normal_multiply(&ExactWeyl::x(), &ExactWeyl::p()) - &prod;
        assert_eq!(comm, terms(&[(0, 0, 0, 1)]));
    }

    #[test]
    fn p2_x2_normal_form() {
        let p2 = ExactWeyl::p().pow(2);
        let x2 = ExactWeyl::x().pow(2);
        assert_eq!(
            normal_multiply(&p2, &x2),
            terms(&[(2, 2, 1, 0), (1, 1, 0, -4), (0, 0, -2, 0)])
        );
    }

    #[test]
    fn adjoint_examples() {
        let h = terms(&[(2, 0, 1, 0), (0, 2, 1, 0)]);
        assert_eq!(weyl_adjoint(&h), h);
        assert_eq!(weyl_adjoint(&terms(&[(1, 0, 0, 1)])), terms(&[(1, 0, 0, -1)]));
        assert_eq!(
            weyl_adjoint(&terms(&[(1, 1, 1, 0)])),
            terms(&[(1, 1, 1, 0), (0, 0, 0, -1)])
        );
    }

    #[test]
    fn boost_examples() {
        let theta = q(2, 0);
        let p3 = ExactWeyl::p().pow(3);
        assert_eq!(boost_conjugate(&p3, &theta), p3);
        let c = ExactWeyl::constant(q(3, -7));
        assert_eq!(boost_conjugate(&c, &theta), c);
        assert_eq!(
            boost_conjugate(&ExactWeyl::x().pow(2), &theta),
            terms(&[(2, 0, 1, 0), (1, 0, 0, 4), (0, 0, -4, 0)])
        );
    }

    #[test]
    fn shifted_x_polynomial() {
        // (x − i)² = x² − 2i x − 1
        let v = ExactWeyl::poly_in_x_shifted(&[q(0, 0), q(0, 0), q(1, 0)], &q(0, 1));
        assert_eq!(v, terms(&[(2, 0, 1, 0), (1, 0, 0, -2), (0, 0, -1, 0)]));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = terms(&[(1, 2, 3, 1)]);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).len(), 0);
    }

    #[test]
    fn display_is_readable() {
        let s = terms(&[(1, 0, 0, -4)]).to_string();
        assert_eq!(s, "(0 + -4i) x");
        assert_eq!(ExactWeyl::zero().to_string(), "0");
    }
}
