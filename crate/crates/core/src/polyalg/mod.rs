//! Exact rational arithmetic, sparse multivariate polynomials and exact
//! linear solving.
//!
//! Everything symbolic in the crate sits on top of these three pieces:
//! [`Rational`] coefficients, [`Poly`] with a graded-lexicographic term order,
//! and [`solve_linear_exact`], a deterministic fraction-free eliminator that
//! either returns the reduced-row-echelon particular solution together with a
//! kernel basis, or a row combination certifying infeasibility.

mod linsolve;
mod parse;
mod poly;
mod rational;

pub use linsolve::{det_exact, rank_exact, solve_linear_exact, Matrix, SolveOutcome};
pub use parse::ParseError;
pub use poly::{Monomial, Poly};
pub use rational::{format_rational, parse_rational, rat, rat_int, Rational};
pub(crate) use rational::{pow_i32, to_f64};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}
