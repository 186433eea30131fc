#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use poisson_forge_core::multivector::index_tuples;
use poisson_forge_core::polyalg::{rat, Monomial, Poly, Rational};
use poisson_forge_core::PolyMVF;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_poisson-forge"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-5i64..=5), rng.random_range(1i64..=3))
}

pub fn nonzero_rat(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = small_rat(rng);
        if !num_traits::Zero::is_zero(&r) {
            return r;
        }
    }
}

pub fn poly(rng: &mut ChaCha8Rng, nvars: usize, min_deg: u32, max_deg: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..terms {
        let mut e = vec![0u32; nvars];
        for _ in 0..rng.random_range(min_deg..=max_deg) {
            e[rng.random_range(0..nvars)] += 1;
        }
        p.add_term(Monomial::new(e), small_rat(rng));
    }
    p
}

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

pub fn weights(rng: &mut ChaCha8Rng, nvars: usize) -> Vec<u8> {
    (0..nvars).map(|_| rng.random_range(0..=1u8)).collect()
}

/// Vector field whose coefficients vanish to second order.
pub fn order_one_field(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u32, terms: usize) -> PolyMVF {
    mvf(rng, nvars, &vec![1; nvars], 1, 2, max_deg.max(2), terms)
}
