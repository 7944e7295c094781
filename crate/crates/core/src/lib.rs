//! Kurepa's left-factorial function K(z) on the complex plane, the
//! polynomial and rational sequences that connect K(z) with K(z − n), and a
//! numerical check of the classical inequalities for K on the positive axis.

pub mod bounds;
pub mod error;
pub mod gamma;
pub mod kurepa;
pub mod quadrature;
pub mod recurrences;
pub mod verify;

/// Complex argument and result type used throughout the crate.
pub type ComplexValue = num_complex::Complex64;

pub use error::{KurepaError, Result};
pub use gamma::{gamma, gamma_residue, log_gamma, POLE_TOLERANCE};
pub use kurepa::{
    kurepa, kurepa_derivative, kurepa_derivative_with, kurepa_integral, kurepa_residue, kurepa_with,
    left_factorial_exact, ExactLeftFactorial, KurepaValue, Method, QuadratureConfig,
};
pub use recurrences::{g_k, p_n, q_n, r_n, verify_theorem1, verify_theorem2, Family, Route, SequenceEval};
