use std::f64::consts::PI;

use nalgebra::DVector;

use super::{RealizeError, SprayField};
use crate::multivector::PolyMVF;

/// Default `(φ, θ)` grid for [`symplectic_area`].
pub const DEFAULT_AREA_GRID: (usize, usize) = (64, 1024);

const MIN_GRID: usize = 32;

/// Integral of `f(φ, θ) dφ∧dθ` over `[0, 2π] × [-π/2, π/2]` by the composite
/// midpoint rule on an `n_phi × n_theta` grid.
pub fn symplectic_area<F>(density: F, n_phi: usize, n_theta: usize) -> Result<f64, RealizeError>
where
    F: Fn(f64, f64) -> f64,
{
    if n_phi < MIN_GRID || n_theta < MIN_GRID {
        return Err(RealizeError::Grid { n_phi, n_theta, min: MIN_GRID });
    }
    let hp = 2.0 * PI / n_phi as f64;
    let ht = PI / n_theta as f64;
    let mut total = 0.0;
    for i in 0..n_phi {
        let phi = (i as f64 + 0.5) * hp;
        let row: f64 = (0..n_theta).map(|j| density(phi, -PI / 2.0 + (j as f64 + 0.5) * ht)).sum();
        total += row;
    }
    Ok(total * hp * ht)
}

fn sphere_chart(r: f64, phi: f64, theta: f64) -> [[f64; 3]; 3] {
    let (sp, cp) = phi.sin_cos();
    let (st, ct) = theta.sin_cos();
    [
        [r * ct * cp, r * ct * sp, r * st],
        [-r * ct * sp, r * ct * cp, 0.0],
        [-r * st * cp, -r * st * sp, r * ct],
    ]
}

/// Density of the leaf symplectic form of a Poisson structure on `ℝ³`,
/// pulled back to the sphere of radius `r` by
/// `(φ, θ) ↦ r(cos θ cos φ, cos θ sin φ, sin θ)`. The sphere must be a
/// union of leaves where the density is evaluated.
///
/// With `u = ∂_φ p = π♯(α)` the leaf form is `ω(u, v) = -⟨α, v⟩`.
pub fn leaf_area_density(pi: &PolyMVF, r: f64) -> Result<impl Fn(f64, f64) -> f64, RealizeError> {
    if pi.nvars() != 3 {
        return Err(RealizeError::Shape { expected: 3, got: pi.nvars() });
    }
    let spray = SprayField::new(pi)?;
    Ok(move |phi: f64, theta: f64| {
        let [p, dphi, dtheta] = sphere_chart(r, phi, theta);
        let pt = spray.bivector_at(&p).transpose();
        let Ok(pinv) = pt.pseudo_inverse(1e-12) else { return f64::NAN };
        let alpha = pinv * DVector::from_row_slice(&dphi);
        -alpha.dot(&DVector::from_row_slice(&dtheta))
    })
}

/// `(d/dr) area(σ₁)`, `(d/dr) area(σ₂)` by central differences with step
/// `h`, where `σ₂` is the so(3) leaf of radius `r` and `σ₁` the unit leaf
/// with its form scaled by `1/(1 + r²)`.
pub fn dh_variation(r: f64, h: f64) -> Result<(f64, f64), RealizeError> {
    if r.is_nan() || h.is_nan() || r <= 0.0 || h <= 0.0 {
        return Err(RealizeError::BadParameter { what: "r and h must be positive" });
    }
    let pi = so3_bivector();
    let (n_phi, n_theta) = DEFAULT_AREA_GRID;
    let unit = symplectic_area(leaf_area_density(&pi, 1.0)?, n_phi, n_theta)?;
    let sigma1 = |s: f64| unit / (1.0 + s * s);
    let sigma2 = |s: f64| -> Result<f64, RealizeError> {
        symplectic_area(leaf_area_density(&pi, s)?, n_phi, n_theta)
    };
    let d1 = (sigma1(r + h) - sigma1(r - h)) / (2.0 * h);
    let d2 = (sigma2(r + h)? - sigma2(r - h)?) / (2.0 * h);
    Ok((d1, d2))
}

fn so3_bivector() -> PolyMVF {
    crate::liealg::linear_poisson(&crate::liealg::preset("so3").expect("so3 preset"))
}

/// `∫ ω_r` over the so(3) leaf of radius `r`.
pub fn so3_leaf_area(r: f64, n_phi: usize, n_theta: usize) -> Result<f64, RealizeError> {
    symplectic_area(leaf_area_density(&so3_bivector(), r)?, n_phi, n_theta)
}
