#![allow(dead_code)]

use poisson_forge_core::multivector::index_tuples;
use poisson_forge_core::polyalg::{rat, Monomial, Poly, Rational};
use poisson_forge_core::PolyMVF;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.random_range(-5i64..=5);
    let den = rng.random_range(1i64..=3);
    rat(num, den)
}

pub fn nonzero_rat(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = small_rat(rng);
        if !num_traits::Zero::is_zero(&r) {
            return r;
        }
    }
}

fn monomial_with(rng: &mut ChaCha8Rng, nvars: usize, degree: u32) -> Monomial {
    let mut e = vec![0u32; nvars];
    for _ in 0..degree {
        e[rng.random_range(0..nvars)] += 1;
    }
    Monomial::new(e)
}

/// Up to `terms` monomials of degree in `min_deg..=max_deg`.
pub fn poly(rng: &mut ChaCha8Rng, nvars: usize, min_deg: u32, max_deg: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..terms {
        let d = rng.random_range(min_deg..=max_deg);
        p.add_term(monomial_with(rng, nvars, d), small_rat(rng));
    }
    p
}

pub fn homogeneous_poly(rng: &mut ChaCha8Rng, nvars: usize, degree: u32, terms: usize) -> Poly {
    poly(rng, nvars, degree, degree, terms)
}

/// Random field of the given degree with coefficient degrees in
/// `min_deg..=max_deg`.
pub fn mvf(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    weights: &[u8],
    grade: usize,
    min_deg: u32,
    max_deg: u32,
    terms: usize,
) -> PolyMVF {
    let tuples = index_tuples(nvars, grade);
    let mut w = PolyMVF::zero(nvars, weights.to_vec(), grade);
    for _ in 0..terms {
        let idx = tuples[rng.random_range(0..tuples.len())].clone();
        w.add_term(idx, poly(rng, nvars, min_deg, max_deg, 2));
    }
    w
}

pub fn unweighted(rng: &mut ChaCha8Rng, nvars: usize, grade: usize, max_deg: u32, terms: usize) -> PolyMVF {
    mvf(rng, nvars, &vec![1; nvars], grade, 0, max_deg, terms)
}

/// Random weight vector in `{0,1}^n`.
pub fn weights(rng: &mut ChaCha8Rng, nvars: usize) -> Vec<u8> {
    (0..nvars).map(|_| rng.random_range(0..=1u8)).collect()
}

/// Vector field on `ℝⁿ` whose coefficients vanish to second order.
pub fn order_one_field(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u32, terms: usize) -> PolyMVF {
    mvf(rng, nvars, &vec![1; nvars], 1, 2, max_deg.max(2), terms)
}

/// `g · Σ ε_ijk ∂_k C ∂_i∧∂_j` on `ℝ³`, Poisson for every `C` and `g`.
pub fn jacobian_poisson(c: &Poly, g: &Poly) -> PolyMVF {
    let mut pi = PolyMVF::zero_unweighted(3, 2);
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        pi.add_wedge_term(&[i, j], g * &c.derivative(k));
    }
    pi
}

pub fn random_jacobian_poisson(rng: &mut ChaCha8Rng) -> PolyMVF {
    let c = poly(rng, 3, 1, 3, 3);
    let g = poly(rng, 3, 0, 1, 2);
    jacobian_poisson(&c, &g)
}
