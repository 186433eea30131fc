use nalgebra::DMatrix;

use super::RealizeError;
use crate::multivector::PolyMVF;
use crate::polyalg::{to_f64, Poly};

/// Polynomial flattened for repeated floating-point evaluation.
#[derive(Debug, Clone)]
struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl CompiledPoly {
    fn new(p: &Poly) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let powers = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e as i32))
                    .collect();
                (to_f64(c), powers)
            })
            .collect();
        CompiledPoly { terms }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, powers)| powers.iter().fold(*c, |acc, &(i, e)| acc * x[i].powi(e)))
            .sum()
    }
}

#[derive(Debug, Clone)]
struct Entry {
    i: usize,
    j: usize,
    value: CompiledPoly,
    grad: Vec<CompiledPoly>,
}

/// The spray `V(x, y) = Σ_{i,j} π_ij(x) y_i ∂/∂x_j` on `T*ℝⁿ` with zero
/// vertical part. States are laid out as `(x_1..x_n, y_1..y_n)`.
#[derive(Debug, Clone)]
pub struct SprayField {
    n: usize,
    pi: PolyMVF,
    entries: Vec<Entry>,
}

impl SprayField {
    pub fn new(pi: &PolyMVF) -> Result<Self, RealizeError> {
        if pi.grade() != 2 {
            return Err(RealizeError::NotBivector { grade: pi.grade() });
        }
        let n = pi.nvars();
        let entries = pi
            .terms()
            .map(|(idx, p)| Entry {
                i: idx[0],
                j: idx[1],
                value: CompiledPoly::new(p),
                grad: (0..n).map(|k| CompiledPoly::new(&p.derivative(k))).collect(),
            })
            .collect();
        Ok(SprayField { n, pi: pi.clone(), entries })
    }

    /// Base dimension `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pi(&self) -> &PolyMVF {
        &self.pi
    }

    /// `π_ij(x)` as a dense skew matrix.
    pub fn bivector_at(&self, x: &[f64]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for e in &self.entries {
            let v = e.value.eval(x);
            m[(e.i, e.j)] += v;
            m[(e.j, e.i)] -= v;
        }
        m
    }

    /// `π♯(y)` at `x`, the horizontal part of `V(x, y)`.
    pub fn sharp(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for e in &self.entries {
            let v = e.value.eval(x);
            out[e.j] += v * y[e.i];
            out[e.i] -= v * y[e.j];
        }
        out
    }

    /// `V(ξ)` as a `2n` vector.
    pub fn eval(&self, xi: &[f64]) -> Vec<f64> {
        self.check_len(xi);
        let (x, y) = xi.split_at(self.n);
        let mut out = self.sharp(x, y);
        out.resize(2 * self.n, 0.0);
        out
    }

    /// Derivative `DV(ξ)`; only the top block row is nonzero.
    pub fn derivative(&self, xi: &[f64]) -> DMatrix<f64> {
        self.check_len(xi);
        let n = self.n;
        let (x, y) = xi.split_at(n);
        let mut d = DMatrix::zeros(2 * n, 2 * n);
        for e in &self.entries {
            let v = e.value.eval(x);
            d[(e.j, n + e.i)] += v;
            d[(e.i, n + e.j)] -= v;
            for (k, g) in e.grad.iter().enumerate() {
                let dv = g.eval(x);
                if dv != 0.0 {
                    d[(e.j, k)] += dv * y[e.i];
                    d[(e.i, k)] -= dv * y[e.j];
                }
            }
        }
        d
    }

    #[cfg(test)]
    fn eval_vector(&self, xi: &[f64]) -> nalgebra::DVector<f64> {
        nalgebra::DVector::from_vec(self.eval(xi))
    }

    fn check_len(&self, xi: &[f64]) {
        assert_eq!(xi.len(), 2 * self.n, "cotangent point has wrong dimension");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{linear_poisson, preset};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn projection_and_homogeneity() {
        let pi = linear_poisson(&preset("so3").unwrap());
        let v = SprayField::new(&pi).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let xi: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..1.0)).collect();
            let p = pi.bivector_matrix_f64(&xi[..3]);
            let out = v.eval(&xi);
            for j in 0..3 {
                let expect: f64 = (0..3).map(|i| p[i][j] * xi[3 + i]).sum();
                assert!((out[j] - expect).abs() < 1e-12);
                assert_eq!(out[3 + j], 0.0);
            }
            let t = 2.5;
            let scaled: Vec<f64> = xi.iter().enumerate().map(|(k, &c)| if k < 3 { c } else { t * c }).collect();
            for (a, b) in v.eval(&scaled).iter().zip(&out) {
                assert!((a - t * b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn derivative_matches_differences() {
        let mut pi = PolyMVF::zero_unweighted(3, 2);
        pi.add_wedge_term(&[0, 1], Poly::parse("x3^2 + x1*x2", 3).unwrap());
        pi.add_wedge_term(&[1, 2], Poly::parse("x1^3", 3).unwrap());
        let v = SprayField::new(&pi).unwrap();
        let xi = [0.3, -0.7, 0.4, 1.1, 0.2, -0.5];
        let d = v.derivative(&xi);
        let h = 1e-6;
        for k in 0..6 {
            let mut plus = xi;
            let mut minus = xi;
            plus[k] += h;
            minus[k] -= h;
            let fd = (v.eval_vector(&plus) - v.eval_vector(&minus)) / (2.0 * h);
            for r in 0..6 {
                assert!((fd[r] - d[(r, k)]).abs() < 1e-8, "entry ({r},{k})");
            }
        }
    }
}
