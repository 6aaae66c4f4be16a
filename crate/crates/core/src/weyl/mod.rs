//! Exact polynomial algebra in position `x` and momentum `p` with
//! `[x, p] = i`, kept in normal order (every `x` left of every `p`).
//!
//! Conjugation by `e^{-θp}` fixes `p` and sends `x` to `x + iθ`; on
//! polynomials this is an algebra automorphism, so pseudo-Hermiticity of
//! `H̃ = p² + f(p) + αV(x − β − iγ)` under `η = e^{-θp}` reduces to the
//! identity `boost(H̃, θ) = H̃†`, which can be checked term by term.

mod algebra;
mod scalar;
mod shifted;

pub use algebra::{boost_conjugate, normal_multiply, weyl_adjoint, WeylPolynomial};
pub use scalar::{ExactComplex, Scalar};
pub use shifted::{build_shifted_hamiltonian, check_symbolic, ResidualTerm, ShiftedPotentialSpec};

pub type ExactWeyl = WeylPolynomial<ExactComplex>;
pub type FloatWeyl = WeylPolynomial<num_complex::Complex64>;
