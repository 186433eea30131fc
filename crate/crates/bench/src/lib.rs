//! Inputs shared by the benchmarks in `benches/`.

use poisson_forge_core::formal::ad_exp;
use poisson_forge_core::liealg::{linear_poisson, preset};
use poisson_forge_core::polyalg::{rat, Matrix, Poly};
use poisson_forge_core::PolyMVF;

pub fn linear(name: &str) -> PolyMVF {
    linear_poisson(&preset(name).expect("known preset"))
}

/// so(3)* pulled back by the time-one flow of a fixed field vanishing to
/// second order, truncated at grade `d`.
pub fn perturbed_so3(d: u32) -> PolyMVF {
    let mut x = PolyMVF::zero_unweighted(3, 1);
    x.add_wedge_term(&[0], Poly::parse("x2*x3 + 2*x1^3", 3).unwrap());
    x.add_wedge_term(&[1], Poly::parse("x1^2 - 1/2*x3^2", 3).unwrap());
    x.add_wedge_term(&[2], Poly::parse("x1*x2*x3", 3).unwrap());
    ad_exp(&x, &linear("so3"), d).unwrap()
}

/// Dense `n x n` rational matrix with small pseudo-random entries.
pub fn dense_matrix(n: usize) -> Matrix {
    Matrix::from_rows(
        (0..n)
            .map(|i| (0..n).map(|j| rat(((i * 7 + j * 13 + i * j) % 11) as i64 - 5, 1 + ((i + 2 * j) % 3) as i64)).collect())
            .collect(),
    )
}
