use nalgebra::DMatrix;

use super::PoissonError;

const SINGULAR_DET: f64 = 1e-10;

/// Gauge transformation of a Poisson tensor by a 2-form at one point,
/// `π^ω = π (I - ω π)^{-1}` on coefficient matrices.
///
/// The sign inside the inverse makes `π = ω = J` (the standard symplectic
/// matrix) with `ω = cJ` give `π/(1+c)`; it also yields the composition law
/// `(π^ω)^ω' = π^(ω+ω')`.
pub fn gauge_pointwise(pi: &DMatrix<f64>, omega: &DMatrix<f64>) -> Result<DMatrix<f64>, PoissonError> {
    let n = pi.nrows();
    if pi.ncols() != n || omega.nrows() != n || omega.ncols() != n {
        return Err(PoissonError::Shape(format!(
            "π is {}x{}, ω is {}x{}",
            pi.nrows(),
            pi.ncols(),
            omega.nrows(),
            omega.ncols()
        )));
    }
    let m = DMatrix::identity(n, n) - omega * pi;
    let det = m.determinant();
    if !det.is_finite() || det.abs() <= SINGULAR_DET {
        return Err(PoissonError::Singular { det });
    }
    let inv = m.try_inverse().ok_or(PoissonError::Singular { det })?;
    let out = pi * inv;
    Ok((&out - out.transpose()) * 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j() -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])
    }

    #[test]
    fn planar_examples() {
        let p = j();
        assert_eq!(gauge_pointwise(&p, &DMatrix::zeros(2, 2)).unwrap(), p);
        let c = 0.7;
        let g = gauge_pointwise(&p, &(j() * c)).unwrap();
        assert!((g - &p / (1.0 + c)).abs().max() < 1e-14);
        match gauge_pointwise(&p, &(j() * -1.0)) {
            Err(PoissonError::Singular { det }) => assert!(det.abs() < 1e-10),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inverse_parameter() {
        let p = j();
        for c in [0.3, -0.4, 2.5] {
            let g = gauge_pointwise(&p, &(j() * c)).unwrap();
            // second gauge with parameter c' = -c/(1+c) relative to the new tensor
            let back_form = -g.clone().try_inverse().unwrap() * (-c / (1.0 + c));
            let back = gauge_pointwise(&g, &back_form).unwrap();
            assert!((back - &p).abs().max() < 1e-10);
        }
    }
}
