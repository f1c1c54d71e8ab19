use thiserror::Error;

use crate::algebra::{ParseError, Rational};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("{what} arity {got} outside the supported range {min}..={max}")]
    ArityOutOfRange {
        what: &'static str,
        got: usize,
        min: usize,
        max: usize,
    },

    #[error("expected an element of C[x], got {0}")]
    NotInPolynomialRing(String),

    #[error("expectation of {poly} is {expectation}, not zero")]
    NotCentered { poly: String, expectation: Box<Rational> },

    #[error("moments of order {order} differ: E(p^n) = {left}, E(q^n) = {right}")]
    MomentMismatch {
        order: usize,
        left: Box<Rational>,
        right: Box<Rational>,
    },

    #[error("cumulants of order {order} differ: {left} vs {right}")]
    CumulantMismatch {
        order: usize,
        left: Box<Rational>,
        right: Box<Rational>,
    },

    #[error("argument {index} is not closed: d of it is {witness}")]
    NotClosed { index: usize, witness: String },

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("operator image of {0} leaves the truncation")]
    TruncationLeak(String),
}

pub type Result<T> = std::result::Result<T, Error>;
