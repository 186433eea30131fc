//! Exact Poisson calculus on polynomial multivector fields, formal
//! linearization by gauge iteration, and numerical symplectic realizations.
//!
//! The shared data types are re-exported at the crate root.

pub mod formal;
pub mod liealg;
pub mod multivector;
pub mod poisson;
pub mod polyalg;
pub mod realize;

pub use formal::{FilteredJet, GaugeSolution, HomotopyOutcome, ProlongOutcome};
pub use liealg::{LieAlgebraSpec, WeylCircleSample};
pub use multivector::{GradedPiece, Order, PolyMVF};
pub use poisson::{CohomologyTable, PoissonCheck};
pub use polyalg::{Poly, Rational};
pub use realize::{RealizationReport, SprayField};
