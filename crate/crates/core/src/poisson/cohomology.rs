use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_poisson, PoissonError};
use crate::multivector::{assemble_system, PolyMVF};
use crate::polyalg::{rank_exact, Matrix};

/// Base-variable degree cap used when π has base (weight 0) variables.
pub const COHOMOLOGY_BASE_CAP: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub k: usize,
    pub dim: usize,
    pub rank: usize,
    pub betti: usize,
}

/// Dimensions, ranks of `d_π: gr_l 𝔛^k → gr_l 𝔛^{k+1}` and Betti numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub grade: u32,
    pub rows: Vec<CohomologyRow>,
}

impl CohomologyTable {
    pub fn betti(&self, k: usize) -> Option<usize> {
        self.rows.iter().find(|r| r.k == k).map(|r| r.betti)
    }
}

/// Matrix of `d_π = [π, ·]` on the monomial basis of `gr_l 𝔛^k`, together
/// with that basis. Rows are indexed by the coordinates occurring in images.
pub fn differential_matrix(pi: &PolyMVF, k: usize, l: u32) -> Result<(Matrix, Vec<PolyMVF>), PoissonError> {
    let basis = PolyMVF::graded_basis(pi.nvars(), pi.weights(), k, l, COHOMOLOGY_BASE_CAP);
    let images: Vec<PolyMVF> = basis.par_iter().map(|b| pi.schouten(b)).collect::<Result<_, _>>()?;
    let (a, _, _) = assemble_system(&images, None);
    Ok((a, basis))
}

pub(crate) fn require_linear_poisson(pi: &PolyMVF) -> Result<(), PoissonError> {
    super::require_bivector(pi)?;
    let grades: Vec<u32> = pi.grades().into_iter().collect();
    if !(grades.is_empty() || grades == [1]) {
        return Err(PoissonError::NotLinear { grades });
    }
    let check = check_poisson(pi)?;
    if !check.is_poisson {
        return Err(PoissonError::NotPoisson { witness: check.witness });
    }
    Ok(())
}

pub fn cohomology_dims(pi: &PolyMVF, l: u32, kmax: usize) -> Result<CohomologyTable, PoissonError> {
    require_linear_poisson(pi)?;
    let n = pi.nvars();
    let kmax = kmax.min(n);
    let per_k: Vec<(usize, usize)> = (0..=kmax)
        .into_par_iter()
        .map(|k| {
            let (a, basis) = differential_matrix(pi, k, l)?;
            let rank = if a.rows() == 0 { 0 } else { rank_exact(&a) };
            Ok((basis.len(), rank))
        })
        .collect::<Result<_, PoissonError>>()?;
    let rows = per_k
        .iter()
        .enumerate()
        .map(|(k, &(dim, rank))| {
            let incoming = if k == 0 { 0 } else { per_k[k - 1].1 };
            CohomologyRow { k, dim, rank, betti: dim - rank - incoming }
        })
        .collect();
    Ok(CohomologyTable { grade: l, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::tests::so3;

    #[test]
    fn so3_grade_two() {
        let t = cohomology_dims(&so3(), 2, 3).unwrap();
        let dims: Vec<usize> = t.rows.iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![6, 18, 18, 6]);
        let betti: Vec<usize> = t.rows.iter().map(|r| r.betti).collect();
        assert_eq!(betti, vec![1, 0, 0, 1]);
    }

    #[test]
    fn abelian_plane() {
        let t = cohomology_dims(&PolyMVF::zero_unweighted(2, 2), 1, 2).unwrap();
        for r in &t.rows {
            assert_eq!(r.rank, 0);
            assert_eq!(r.betti, r.dim);
        }
        assert_eq!(t.rows.iter().map(|r| r.dim).collect::<Vec<_>>(), vec![2, 4, 2]);
    }

    #[test]
    fn rejects_nonlinear() {
        let q = PolyMVF::term(2, vec![1, 1], &[0, 1], crate::polyalg::Poly::parse("x1^2", 2).unwrap());
        assert!(matches!(cohomology_dims(&q, 1, 2), Err(PoissonError::NotLinear { .. })));
    }
}
