//! Metric operators for pseudo-Hermitian Hamiltonians.
//!
//! A Hamiltonian `H` is pseudo-Hermitian with respect to a Hermitian
//! automorphism `η` when `η H η⁻¹ = H†`. This crate works with that relation
//! in two settings:
//!
//! * dense complex matrices: verifying and solving the intertwining relation
//!   `ηH = H†η`, generating chains `η_k = (H†)^k η`, perturbing `H` by
//!   Hermitian operators that commute with `η`, and the quasi-Hermitian
//!   similarity `η^{1/2} H η^{-1/2}` ([`metric`], [`chain`],
//!   [`perturbation`], [`quasi`]);
//! * polynomials in position and momentum with `[x, p] = i`, where
//!   conjugation by `e^{-θp}` is checked exactly in normal order ([`weyl`]).
//!
//! The [`cli`] module drives all of the above from JSON files.

pub mod chain;
pub mod cli;
pub mod error;
pub mod matrix;
pub mod metric;
pub mod perturbation;
pub mod poly;
pub mod quasi;
pub mod weyl;

pub use chain::{build_chain, chain_via_shift, next_eta, shift_for_invertibility, EtaChain};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, ComplexVector};
pub use metric::{
    catalog_oscillator, catalog_two_point, classify_metric, find_metric, residual, solve_metric_space, MetricBasis,
    MetricClass,
};
pub use perturbation::{auto_k, commutator_defect, matrix_poly, perturb, PerturbedHamiltonian};
pub use poly::RealPolynomial;
pub use quasi::{induced_hamiltonian, induced_inner, metric_sqrt, InducedForm};

/// Default relative tolerance for every numerical check.
pub const DEFAULT_TOL: f64 = 1e-10;
