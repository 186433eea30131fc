//! Poisson calculus on polynomial bivectors: the Jacobi test, the sharp map,
//! brackets, Casimirs, cohomology of linear structures, pointwise gauge
//! transformations and the rescaling path `π^t(x) = π(tx)/t`.

mod casimir;
mod cohomology;
mod gauge;

pub use casimir::casimir_basis;
pub use cohomology::{cohomology_dims, differential_matrix, CohomologyRow, CohomologyTable};
pub use gauge::gauge_pointwise;
pub(crate) use cohomology::require_linear_poisson;

use num_traits::Zero;
use thiserror::Error;

use crate::multivector::{MvfError, PolyMVF};
use crate::polyalg::{pow_i32, Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PoissonError {
    #[error("expected a field of degree {expected}, got degree {got}")]
    WrongGrade { expected: usize, got: usize },
    #[error("bivector is not Poisson: [π,π] = {witness}")]
    NotPoisson { witness: PolyMVF },
    #[error("bivector is not linear (grades present: {grades:?})")]
    NotLinear { grades: Vec<u32> },
    #[error("gauge transformation singular: det(I - ωπ) = {det:e}")]
    Singular { det: f64 },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("coefficient on {indices:?} does not vanish at the origin")]
    ConstantTerm { indices: Vec<usize> },
    #[error(transparent)]
    Mvf(#[from] MvfError),
}

/// Outcome of the Jacobi test; `witness` is `[π, π]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonCheck {
    pub is_poisson: bool,
    pub witness: PolyMVF,
}

pub(crate) fn require_bivector(pi: &PolyMVF) -> Result<(), PoissonError> {
    if pi.grade() != 2 {
        return Err(PoissonError::WrongGrade { expected: 2, got: pi.grade() });
    }
    Ok(())
}

pub fn check_poisson(pi: &PolyMVF) -> Result<PoissonCheck, PoissonError> {
    require_bivector(pi)?;
    let witness = pi.schouten(pi)?;
    Ok(PoissonCheck { is_poisson: witness.is_zero(), witness })
}

/// `π♯(α) = π(α, ·)` for a polynomial one-form `α = Σ α_i dx_i`.
pub fn sharp(pi: &PolyMVF, alpha: &[Poly]) -> Result<PolyMVF, PoissonError> {
    require_bivector(pi)?;
    Ok(pi.interior(alpha))
}

pub fn differential(f: &Poly) -> Vec<Poly> {
    (0..f.nvars()).map(|i| f.derivative(i)).collect()
}

/// Hamiltonian vector field `H_f = π♯(df)`.
pub fn hamiltonian(pi: &PolyMVF, f: &Poly) -> Result<PolyMVF, PoissonError> {
    sharp(pi, &differential(f))
}

/// `{f, g} = π(df, dg)`.
pub fn poisson_bracket(pi: &PolyMVF, f: &Poly, g: &Poly) -> Result<Poly, PoissonError> {
    require_bivector(pi)?;
    Ok(pi.evaluate_forms(&[differential(f), differential(g)]))
}

/// `π^t(x) = π(tx)/t`; `t = 0` gives the linear part. Coefficients must
/// vanish at the origin.
pub fn conn_rescale(pi: &PolyMVF, t: &Rational) -> Result<PolyMVF, PoissonError> {
    if let Some((idx, _)) = pi.terms().find(|(_, p)| !p.constant_term().is_zero()) {
        return Err(PoissonError::ConstantTerm { indices: idx.iter().map(|i| i + 1).collect() });
    }
    if t.is_zero() {
        return Ok(pi.map_coeffs(|p| p.homogeneous_component(1)));
    }
    Ok(pi.map_coeffs(|p| p.scale_by_degree(|m| pow_i32(t, m.degree() as i32 - 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{rat, rat_int};

    fn poly(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    pub(crate) fn so3() -> PolyMVF {
        let mut pi = PolyMVF::zero_unweighted(3, 2);
        pi.add_wedge_term(&[1, 2], poly("x1", 3));
        pi.add_wedge_term(&[2, 0], poly("x2", 3));
        pi.add_wedge_term(&[0, 1], poly("x3", 3));
        pi
    }

    #[test]
    fn check_examples() {
        assert!(check_poisson(&so3()).unwrap().is_poisson);
        let plane = PolyMVF::term(2, vec![1, 1], &[0, 1], poly("x1^3*x2 - 7*x2^2 + 1", 2));
        assert!(check_poisson(&plane).unwrap().is_poisson);
        let mut bad = PolyMVF::zero_unweighted(3, 2);
        bad.add_wedge_term(&[0, 1], poly("x3", 3));
        bad.add_wedge_term(&[0, 2], poly("x1", 3));
        let c = check_poisson(&bad).unwrap();
        assert!(!c.is_poisson);
        // oracle: the cyclic Jacobiator of the coordinate brackets
        let x: Vec<Poly> = (1..=3).map(|i| poly(&format!("x{i}"), 3)).collect();
        let br = |f: &Poly, g: &Poly| poisson_bracket(&bad, f, g).unwrap();
        let jac = br(&x[0], &br(&x[1], &x[2])) + br(&x[1], &br(&x[2], &x[0])) + br(&x[2], &br(&x[0], &x[1]));
        assert_eq!(jac, poly("x3", 3));
        assert_eq!(c.witness, PolyMVF::term(3, vec![1; 3], &[0, 1, 2], jac.scale(&rat_int(2))));
        let vf = PolyMVF::zero_unweighted(3, 1);
        assert!(matches!(check_poisson(&vf), Err(PoissonError::WrongGrade { .. })));
    }

    #[test]
    fn sharp_and_brackets() {
        let pi = so3();
        let dx = differential(&poly("x1", 3));
        let mut expected = PolyMVF::zero_unweighted(3, 1);
        expected.add_wedge_term(&[1], poly("x3", 3));
        expected.add_wedge_term(&[2], poly("-x2", 3));
        assert_eq!(sharp(&pi, &dx).unwrap(), expected);
        assert!(sharp(&PolyMVF::zero_unweighted(3, 2), &dx).unwrap().is_zero());
        let sym = PolyMVF::term(2, vec![1, 1], &[0, 1], poly("1", 2));
        assert_eq!(
            sharp(&sym, &differential(&poly("x1", 2))).unwrap(),
            PolyMVF::term(2, vec![1, 1], &[1], poly("1", 2))
        );
        assert_eq!(poisson_bracket(&pi, &poly("x1", 3), &poly("x2", 3)).unwrap(), poly("x3", 3));
        let f = poly("x1^2*x2 + x3", 3);
        assert!(poisson_bracket(&pi, &f, &f).unwrap().is_zero());
        let r2 = poly("x1^2 + x2^2 + x3^2", 3);
        for g in ["x1", "x2", "x3"] {
            assert!(poisson_bracket(&pi, &r2, &poly(g, 3)).unwrap().is_zero());
        }
    }

    #[test]
    fn rescale_examples() {
        let pi = so3();
        assert_eq!(conn_rescale(&pi, &rat_int(5)).unwrap(), pi);
        let quad = PolyMVF::term(3, vec![1; 3], &[0, 1], poly("x1*x3 - x2^2", 3));
        assert_eq!(conn_rescale(&quad, &rat(3, 2)).unwrap(), quad.scale(&rat(3, 2)));
        let perturbed = &pi + &quad;
        assert_eq!(conn_rescale(&perturbed, &rat_int(0)).unwrap(), pi);
        assert_eq!(conn_rescale(&perturbed, &rat_int(1)).unwrap(), perturbed);
        let constant = PolyMVF::term(3, vec![1; 3], &[0, 1], poly("1 + x1", 3));
        assert!(matches!(conn_rescale(&constant, &rat_int(2)), Err(PoissonError::ConstantTerm { .. })));
    }
}
