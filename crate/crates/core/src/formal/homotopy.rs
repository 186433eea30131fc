use rayon::prelude::*;

use super::FormalError;
use crate::multivector::{assemble_system, combine, GradedPiece, PolyMVF};
use crate::polyalg::{solve_linear_exact, Rational, SolveOutcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomotopyOutcome {
    /// `[π, x] = Z`
    Solved(GradedPiece),
    /// No `x` exists in the search space; `witness` is a row functional
    /// vanishing on the image of `[π, ·]` but not on `Z`.
    Obstructed { cochain: GradedPiece, witness: Vec<Rational> },
}

/// Solves `[π, x] = z` over the homogeneous fields of the given `basis`.
pub(crate) fn solve_in_basis(
    pi: &PolyMVF,
    basis: &[PolyMVF],
    z: &PolyMVF,
    scale: &Rational,
) -> Result<Result<PolyMVF, Vec<Rational>>, FormalError> {
    let images: Vec<PolyMVF> = basis
        .par_iter()
        .map(|b| pi.schouten(b).map(|w| w.scale(scale)))
        .collect::<Result<_, _>>()?;
    let (a, rhs, _) = assemble_system(&images, Some(z));
    Ok(match solve_linear_exact(&a, &rhs) {
        SolveOutcome::Feasible { particular, .. } => {
            let template = z.zero_like(basis.first().map_or(z.grade().saturating_sub(1), PolyMVF::grade));
            Ok(combine(basis, &particular, &template))
        }
        SolveOutcome::Infeasible { witness } => Err(witness),
    })
}

/// Exact homotopy step: finds a vector field `x` of grade `z.l` with
/// `[π_lin, x] = z`, taking the reduced-row-echelon particular solution.
/// Base-variable degrees in the search space are capped at `base_cap`.
pub fn homotopy_solve(pi_lin: &PolyMVF, z: &GradedPiece, base_cap: u32) -> Result<HomotopyOutcome, FormalError> {
    crate::poisson::require_linear_poisson(pi_lin)?;
    if z.value.grade() != 2 {
        return Err(FormalError::WrongGrade { expected: 2, got: z.value.grade() });
    }
    let residual = pi_lin.schouten(&z.value)?;
    if !residual.is_zero() {
        return Err(FormalError::NotCocycle { residual });
    }
    if z.value.is_zero() {
        return Ok(HomotopyOutcome::Solved(GradedPiece { l: z.l, value: z.value.zero_like(1) }));
    }
    let basis = PolyMVF::graded_basis(pi_lin.nvars(), pi_lin.weights(), 1, z.l, base_cap);
    let one = num_traits::One::one();
    Ok(match solve_in_basis(pi_lin, &basis, &z.value, &one)? {
        Ok(mut x) => {
            if basis.is_empty() {
                x = z.value.zero_like(1);
            }
            HomotopyOutcome::Solved(GradedPiece { l: z.l, value: x })
        }
        Err(witness) => HomotopyOutcome::Obstructed { cochain: z.clone(), witness },
    })
}
