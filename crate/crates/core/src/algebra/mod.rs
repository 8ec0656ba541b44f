//! Exact coefficient arithmetic in the variable `v = q^{1/2}`.
//!
//! Every quantity the engine manipulates (weight polynomials, Kac
//! polynomials, Hua coefficients) is a [`LaurentPolynomial`] or a
//! [`RationalFunction`] in `v`, with `q = v^2`.

mod laurent;
mod rational;

pub use laurent::LaurentPolynomial;
pub use rational::{RationalFunction, Substitution};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not an integer polynomial in q: {0}")]
    NotAPolynomial(String),
    #[error("cannot evaluate at an integer q: odd power of q^(1/2) present")]
    HalfIntegralPower,
    #[error("pole at q = {0}")]
    Pole(String),
}
