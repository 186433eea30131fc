use std::sync::OnceLock;

use nalgebra::Matrix3;
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::presets::{gmul, gtrace, su3_basis};
use crate::polyalg::{rat, to_f64, Monomial, Poly, Rational};

/// `-tr(e_i e_i)` for the su(3) preset basis.
pub const SU3_NORMS: [f64; 8] = [0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 1.5];

fn exact_norms() -> Vec<Rational> {
    (0..8).map(|i| if i == 7 { rat(3, 2) } else { rat(1, 2) }).collect()
}

fn numeric_basis() -> &'static [Matrix3<Complex64>; 8] {
    static BASIS: OnceLock<[Matrix3<Complex64>; 8]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let b = su3_basis();
        std::array::from_fn(|k| Matrix3::from_fn(|i, j| Complex64::new(to_f64(&b[k][i][j].re), to_f64(&b[k][i][j].im))))
    })
}

/// The matrix `A ∈ su(3)` with `x_i = -tr(A e_i)`.
pub fn su3_matrix(xi: &[f64]) -> Matrix3<Complex64> {
    assert_eq!(xi.len(), 8, "su(3)* has dimension 8");
    numeric_basis()
        .iter()
        .zip(xi.iter().zip(SU3_NORMS))
        .fold(Matrix3::zeros(), |acc, (e, (x, c))| acc + e * Complex64::new(x / c, 0.0))
}

fn coordinates(a: &Matrix3<Complex64>) -> [f64; 8] {
    let b = numeric_basis();
    std::array::from_fn(|i| -(a * b[i]).trace().re)
}

/// `(p1, p2, imaginary residue)` with `p1 = -tr(A²)`, `p2 = i√6 tr(A³)`.
pub fn su3_invariants_with_residue(xi: &[f64]) -> (f64, f64, f64) {
    let a = su3_matrix(xi);
    let a2 = a * a;
    let p1 = -a2.trace();
    let p2 = Complex64::new(0.0, 6f64.sqrt()) * (a2 * a).trace();
    (p1.re, p2.re, p1.im.abs().max(p2.im.abs()))
}

pub fn su3_invariants(xi: &[f64]) -> (f64, f64) {
    let (p1, p2, _) = su3_invariants_with_residue(xi);
    (p1, p2)
}

/// Point `r A(θ)` on the Weyl circle of radius `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeylCircleSample {
    pub r: f64,
    pub theta: f64,
    pub point: [f64; 8],
    pub q1: f64,
    pub q2: f64,
}

/// `A(θ) = cos θ/√2 · diag(i, -i, 0) + sin θ/√6 · diag(i, i, -2i)`, a unit
/// vector for the trace form.
pub fn weyl_circle_sample(r: f64, theta: f64) -> WeylCircleSample {
    let (s, c) = theta.sin_cos();
    let d = [
        c / 2f64.sqrt() + s / 6f64.sqrt(),
        -c / 2f64.sqrt() + s / 6f64.sqrt(),
        -2.0 * s / 6f64.sqrt(),
    ];
    let a = Matrix3::from_fn(|i, j| if i == j { Complex64::new(0.0, r * d[i]) } else { Complex64::zero() });
    let point = coordinates(&a);
    let (q1, q2) = su3_invariants(&point);
    WeylCircleSample { r, theta, point, q1, q2 }
}

/// Image under the outer automorphism `A ↦ conj(A)`.
pub fn su3_conjugate(xi: &[f64]) -> [f64; 8] {
    let a = su3_matrix(xi).map(|z| z.conj());
    coordinates(&a)
}

/// `U A U*` for `U = exp(H)`, `H` a random traceless anti-Hermitian matrix.
pub fn random_su3_conjugation<R: Rng + ?Sized>(xi: &[f64], rng: &mut R) -> [f64; 8] {
    let h_coords: Vec<f64> = (0..8).map(|_| rng.sample(StandardNormal)).collect();
    let u = su3_matrix(&h_coords).exp();
    let a = su3_matrix(xi);
    coordinates(&(u * a * u.adjoint()))
}

/// `p1 = -tr(A²)` as a polynomial in the coordinates.
pub fn su3_p1_poly() -> Poly {
    let norms = exact_norms();
    Poly::from_terms(8, (0..8).map(|i| {
        let mut e = vec![0; 8];
        e[i] = 2;
        (Monomial::new(e), norms[i].recip())
    }))
}

/// The rational cubic `q` with `tr(A³) = i q(x)`, so that `p2 = -√6 q`.
pub fn su3_cubic_poly() -> Poly {
    let b = su3_basis();
    let norms = exact_norms();
    let mut q = Poly::zero(8);
    let mut real_part = Poly::zero(8);
    for i in 0..8 {
        let bij: Vec<_> = (0..8).map(|j| gmul(&b[i], &b[j])).collect();
        for (j, eij) in bij.iter().enumerate() {
            for (k, ek) in b.iter().enumerate() {
                let t = gtrace(&gmul(eij, ek));
                if t.is_zero() {
                    continue;
                }
                let mut e = vec![0; 8];
                e[i] += 1;
                e[j] += 1;
                e[k] += 1;
                let scale = (&norms[i] * &norms[j] * &norms[k]).recip();
                q.add_term(Monomial::new(e.clone()), &t.im * &scale);
                real_part.add_term(Monomial::new(e), &t.re * &scale);
            }
        }
    }
    debug_assert!(real_part.is_zero());
    q
}
