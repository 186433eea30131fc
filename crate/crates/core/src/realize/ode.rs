use nalgebra::{DMatrix, DVector};

use super::{RealizeError, SprayField};

/// Classical fourth-order Runge–Kutta on `[0, t_final]` with `steps` equal
/// steps. Fails with the time of the first non-finite state.
pub(crate) fn rk4<F>(f: F, y0: DVector<f64>, t_final: f64, steps: usize) -> Result<DVector<f64>, RealizeError>
where
    F: Fn(f64, &DVector<f64>) -> DVector<f64>,
{
    if steps == 0 {
        return Err(RealizeError::ZeroSteps);
    }
    let h = t_final / steps as f64;
    let mut y = y0;
    for s in 0..steps {
        let t = s as f64 * h;
        let k1 = f(t, &y);
        let k2 = f(t + 0.5 * h, &(&y + &k1 * (0.5 * h)));
        let k3 = f(t + 0.5 * h, &(&y + &k2 * (0.5 * h)));
        let k4 = f(t + h, &(&y + &k3 * h));
        y += (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0);
        if y.iter().any(|v| !v.is_finite()) {
            return Err(RealizeError::BlowUp { time: t + h });
        }
    }
    Ok(y)
}

/// `Ω_can = [[0, I], [-I, 0]]` in `(x, y)` coordinates.
pub fn omega_can(n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m[(i, n + i)] = 1.0;
        m[(n + i, i)] = -1.0;
    }
    m
}

/// Endpoint of the flow together with its Jacobian.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowResult {
    pub point: Vec<f64>,
    pub jacobian: DMatrix<f64>,
}

fn pack(z: &[f64], mats: &[&DMatrix<f64>]) -> DVector<f64> {
    let mut v = z.to_vec();
    for m in mats {
        v.extend_from_slice(m.as_slice());
    }
    DVector::from_vec(v)
}

fn unpack_matrix(v: &DVector<f64>, offset: usize, dim: usize) -> DMatrix<f64> {
    DMatrix::from_column_slice(dim, dim, &v.as_slice()[offset..offset + dim * dim])
}

/// Time-`t_final` flow of the spray from `ξ`, with the variational
/// equation `J' = DV J`, `J(0) = I` integrated in the same pass.
pub fn flow_with_jacobian(v: &SprayField, xi: &[f64], t_final: f64, steps: usize) -> Result<FlowResult, RealizeError> {
    let dim = 2 * v.n();
    check_point(v, xi)?;
    let y0 = pack(xi, &[&DMatrix::identity(dim, dim)]);
    let end = rk4(
        |_, s| {
            let z = &s.as_slice()[..dim];
            let j = unpack_matrix(s, dim, dim);
            pack(&v.eval(z), &[&(v.derivative(z) * j)])
        },
        y0,
        t_final,
        steps,
    )?;
    Ok(FlowResult { point: end.as_slice()[..dim].to_vec(), jacobian: unpack_matrix(&end, dim, dim) })
}

/// `ω_ξ = ∫₀¹ J_tᵀ Ω_can J_t dt`, the integral carried as extra state of the
/// same Runge–Kutta pass as the flow.
pub fn realization_form_with(v: &SprayField, xi: &[f64], steps: usize) -> Result<DMatrix<f64>, RealizeError> {
    let dim = 2 * v.n();
    check_point(v, xi)?;
    let omega = omega_can(v.n());
    let y0 = pack(xi, &[&DMatrix::identity(dim, dim), &DMatrix::zeros(dim, dim)]);
    let end = rk4(
        |_, s| {
            let z = &s.as_slice()[..dim];
            let j = unpack_matrix(s, dim, dim);
            let integrand = j.transpose() * &omega * &j;
            pack(&v.eval(z), &[&(v.derivative(z) * j), &integrand])
        },
        y0,
        1.0,
        steps,
    )?;
    Ok(unpack_matrix(&end, dim + dim * dim, dim))
}

fn check_point(v: &SprayField, xi: &[f64]) -> Result<(), RealizeError> {
    if xi.len() != 2 * v.n() {
        return Err(RealizeError::Shape { expected: 2 * v.n(), got: xi.len() });
    }
    Ok(())
}
