//! Symplectic realizations from the flow of a Poisson spray.
//!
//! For the spray `V(x, y) = π♯_x(y)` on `T*ℝⁿ` with flow `φ_t`, the form
//! `ω = ∫₀¹ φ_t^* ω_can dt` is symplectic near the zero section and the
//! bundle projection is a Poisson map. Everything here is floating point.

mod area;
mod ode;
mod spray;

pub use area::{dh_variation, leaf_area_density, so3_leaf_area, symplectic_area, DEFAULT_AREA_GRID};
pub use ode::{flow_with_jacobian, omega_can, realization_form_with, FlowResult};
pub use spray::SprayField;

use std::sync::OnceLock;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multivector::PolyMVF;
use crate::polyalg::Poly;

pub const DEFAULT_STEPS: usize = 2000;
pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_RADIUS: f64 = 0.1;
pub const DEFAULT_SEED: u64 = 42;

/// Finite-difference step for `dω` relative to the sampling radius.
pub const FD_STEP_FACTOR: f64 = 1e-4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RealizeError {
    #[error("expected a bivector, got a field of degree {grade}")]
    NotBivector { grade: usize },
    #[error("expected dimension {expected}, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("at least one integration step is required")]
    ZeroSteps,
    #[error("flow left the numeric range at t = {time}")]
    BlowUp { time: f64 },
    #[error("grid {n_phi}x{n_theta} is below the minimum {min}x{min}")]
    Grid { n_phi: usize, n_theta: usize, min: usize },
    #[error("invalid parameter: {what}")]
    BadParameter { what: &'static str },
    #[error("Ω_can self-test failed: zero-section residual {residual:e}")]
    SelfTest { residual: f64 },
}

/// Residuals of a sampled realization form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationReport {
    pub seed: u64,
    pub steps: usize,
    pub radius: f64,
    pub fd_step: f64,
    pub samples: usize,
    pub skipped: usize,
    pub sample_points: Vec<Vec<f64>>,
    pub max_skew_defect: f64,
    pub max_domega: f64,
    pub min_abs_det: f64,
    pub max_poisson_residual: f64,
    pub max_zero_section_residual: f64,
}

impl RealizationReport {
    pub fn within(&self, poisson: f64, domega: f64, det: f64, zero_section: f64) -> bool {
        self.skipped == 0
            && self.max_poisson_residual < poisson
            && self.max_domega < domega
            && self.min_abs_det > det
            && self.max_zero_section_residual < zero_section
    }
}

/// `ω` at the zero-section point over `x`:
/// `ω(v, w) = ⟨θ_w, v̄⟩ - ⟨θ_v, w̄⟩ + π(θ_v, θ_w)`, i.e. `[[0, I], [-I, π(x)]]`.
pub fn zero_section_form(pi_x: &DMatrix<f64>) -> DMatrix<f64> {
    let n = pi_x.nrows();
    let mut m = omega_can(n);
    m.view_mut((n, n), (n, n)).copy_from(pi_x);
    m
}

/// `∫₀¹ φ_t^* ω_can dt` at `ξ = (x, y)`.
pub fn realization_form(pi: &PolyMVF, xi: &[f64], steps: usize) -> Result<DMatrix<f64>, RealizeError> {
    self_test()?;
    realization_form_with(&SprayField::new(pi)?, xi, steps)
}

fn self_test() -> Result<(), RealizeError> {
    static RESULT: OnceLock<Result<(), RealizeError>> = OnceLock::new();
    RESULT
        .get_or_init(|| {
            let mut pi = PolyMVF::zero_unweighted(3, 2);
            for (idx, c) in [([0, 1], "x3 + x1^2"), ([0, 2], "-x2"), ([1, 2], "x1*x3")] {
                pi.add_wedge_term(&idx, Poly::parse(c, 3).expect("self-test polynomial"));
            }
            let v = SprayField::new(&pi)?;
            let x = [0.3, -0.2, 0.5];
            let xi = [x[0], x[1], x[2], 0.0, 0.0, 0.0];
            let w = realization_form_with(&v, &xi, 16)?;
            let residual = (w - zero_section_form(&v.bivector_at(&x))).amax();
            if residual < 1e-12 {
                Ok(())
            } else {
                Err(RealizeError::SelfTest { residual })
            }
        })
        .clone()
}

#[derive(Debug, Clone)]
struct SampleResidual {
    skew: f64,
    domega: f64,
    det: f64,
    poisson: f64,
    zero_section: f64,
}

fn sample_point(seed: u64, index: usize, dim: usize, radius: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let dir: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
    let norm = dir.iter().map(|d| d * d).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    let u: f64 = rng.random();
    let scale = radius * u.powf(1.0 / dim as f64) / norm;
    dir.into_iter().map(|d| d * scale).collect()
}

fn evaluate_sample(v: &SprayField, xi: &[f64], steps: usize, h: f64) -> Result<SampleResidual, RealizeError> {
    let n = v.n();
    let dim = 2 * n;
    let w = realization_form_with(v, xi, steps)?;
    let skew = (&w + w.transpose()).amax();
    let det = w.determinant().abs();

    let pi_x = v.bivector_at(&xi[..n]);
    let poisson = match w.clone().try_inverse() {
        Some(inv) => (inv.view((0, 0), (n, n)) - &pi_x).amax(),
        None => f64::INFINITY,
    };

    let mut grads = Vec::with_capacity(dim);
    for a in 0..dim {
        let mut plus = xi.to_vec();
        let mut minus = xi.to_vec();
        plus[a] += h;
        minus[a] -= h;
        let wp = realization_form_with(v, &plus, steps)?;
        let wm = realization_form_with(v, &minus, steps)?;
        grads.push((wp - wm) / (2.0 * h));
    }
    let mut domega: f64 = 0.0;
    for a in 0..dim {
        for b in a + 1..dim {
            for c in b + 1..dim {
                let val = grads[a][(b, c)] + grads[b][(c, a)] + grads[c][(a, b)];
                domega = domega.max(val.abs());
            }
        }
    }

    let mut base = xi[..n].to_vec();
    base.resize(dim, 0.0);
    let w0 = realization_form_with(v, &base, steps)?;
    let zero_section = (w0 - zero_section_form(&pi_x)).amax();

    Ok(SampleResidual { skew, domega, det, poisson, zero_section })
}

/// Samples `ξ` uniformly in the ball of the given radius in `T*ℝⁿ` and
/// checks that `ω_ξ` is closed, nondegenerate and that the projection is a
/// Poisson map. Each sample uses its own ChaCha stream of `seed`; samples
/// whose flows blow up are skipped and counted.
pub fn verify_realization(
    pi: &PolyMVF,
    n_samples: usize,
    radius: f64,
    seed: u64,
    steps: usize,
) -> Result<RealizationReport, RealizeError> {
    self_test()?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(RealizeError::BadParameter { what: "radius must be positive" });
    }
    if steps == 0 {
        return Err(RealizeError::ZeroSteps);
    }
    let v = SprayField::new(pi)?;
    let dim = 2 * v.n();
    let h = FD_STEP_FACTOR * radius;
    let points: Vec<Vec<f64>> = (0..n_samples).map(|i| sample_point(seed, i, dim, radius)).collect();
    let results: Vec<Result<SampleResidual, RealizeError>> =
        points.par_iter().map(|xi| evaluate_sample(&v, xi, steps, h)).collect();

    let mut report = RealizationReport {
        seed,
        steps,
        radius,
        fd_step: h,
        samples: n_samples,
        skipped: 0,
        sample_points: points,
        max_skew_defect: 0.0,
        max_domega: 0.0,
        min_abs_det: f64::INFINITY,
        max_poisson_residual: 0.0,
        max_zero_section_residual: 0.0,
    };
    for r in results {
        match r {
            Ok(s) => {
                report.max_skew_defect = report.max_skew_defect.max(s.skew);
                report.max_domega = report.max_domega.max(s.domega);
                report.min_abs_det = report.min_abs_det.min(s.det);
                report.max_poisson_residual = report.max_poisson_residual.max(s.poisson);
                report.max_zero_section_residual = report.max_zero_section_residual.max(s.zero_section);
            }
            Err(RealizeError::BlowUp { .. }) => report.skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}
