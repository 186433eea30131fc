use rayon::prelude::*;

use super::{check_poisson, PoissonError};
use crate::multivector::{assemble_system, PolyMVF};
use crate::polyalg::{rank_exact, solve_linear_exact, Monomial, Poly, Rational, SolveOutcome};

/// Basis of the Casimir polynomials of degree at most `max_degree`.
///
/// When every coefficient of π is homogeneous of one common degree the map
/// `f ↦ [π, f]` preserves homogeneity and each degree is solved separately;
/// otherwise all monomials up to `max_degree` go into one system.
pub fn casimir_basis(pi: &PolyMVF, max_degree: u32) -> Result<Vec<Poly>, PoissonError> {
    let check = check_poisson(pi)?;
    if !check.is_poisson {
        return Err(PoissonError::NotPoisson { witness: check.witness });
    }
    let n = pi.nvars();
    let degrees: std::collections::BTreeSet<u32> =
        pi.terms().flat_map(|(_, p)| p.terms().map(|(m, _)| m.degree())).collect();
    let blocks: Vec<Vec<Monomial>> = if degrees.len() <= 1 {
        (0..=max_degree).map(|d| Monomial::all_of_degree(n, d)).collect()
    } else {
        vec![(0..=max_degree).flat_map(|d| Monomial::all_of_degree(n, d)).collect()]
    };
    let mut out = Vec::new();
    for block in blocks {
        out.extend(kernel_block(pi, &block)?);
    }
    Ok(out)
}

fn kernel_block(pi: &PolyMVF, monomials: &[Monomial]) -> Result<Vec<Poly>, PoissonError> {
    let n = pi.nvars();
    let images: Vec<PolyMVF> = monomials
        .par_iter()
        .map(|m| {
            let f = PolyMVF::from_poly(Poly::monomial(n, m.clone(), num_traits::One::one()), pi.weights().to_vec());
            pi.schouten(&f)
        })
        .collect::<Result<_, _>>()?;
    let (a, b, _) = assemble_system(&images, None);
    let kernel = match solve_linear_exact(&a, &b) {
        SolveOutcome::Feasible { kernel, .. } => kernel,
        SolveOutcome::Infeasible { .. } => unreachable!("homogeneous systems are feasible"),
    };
    debug_assert_eq!(kernel.len(), monomials.len() - rank_exact(&a));
    Ok(kernel
        .into_iter()
        .map(|v: Vec<Rational>| Poly::from_terms(n, monomials.iter().cloned().zip(v)))
        .collect())
}
