//! Exact computer algebra for homotopy probability spaces.
//!
//! The crate is organized bottom-up:
//!
//! - [`algebra`]: rationals and graded-commutative polynomials in `x, eta, t, dt`;
//! - [`chain`]: differentials, probability spaces and their chain-map checks;
//! - [`transport`]: the symmetric coalgebra, the cumulant map and its inverse,
//!   transported brackets, total and joint cumulants;
//! - [`cone`]: exact linear algebra on truncated spaces and the algebraic cone;
//! - [`ce`]: Chevalley-Eilenberg complexes of Lie algebra actions;
//! - [`gaussian`]: the homotopy Gaussian and its explicit homotopies.

pub mod algebra;
pub mod ce;
pub mod chain;
pub mod cone;
pub mod error;
pub mod gaussian;
pub mod linalg;
pub mod report;
pub mod transport;

pub use algebra::{parse_poly, GradedPoly, Monomial, Rational};
pub use error::{Error, Result};
pub use report::Report;
