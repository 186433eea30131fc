//! Lie algebras given by structure constants, the linear Poisson structures
//! they induce on the dual, Killing-form classification, matrix presets and
//! the invariant geometry of su(3).

mod presets;
mod su3;

pub use presets::{preset, preset_names, GMatrix, Gaussian};
pub use su3::{
    random_su3_conjugation, su3_conjugate, su3_cubic_poly, su3_invariants, su3_invariants_with_residue,
    su3_matrix, su3_p1_poly, weyl_circle_sample, WeylCircleSample, SU3_NORMS,
};

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multivector::PolyMVF;
use crate::polyalg::{det_exact, format_rational, parse_rational, Matrix, Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("antisymmetry fails: C^{k}_{{{i},{j}}} and C^{k}_{{{j},{i}}} do not cancel")]
    Antisymmetry { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails on (e{i}, e{j}, e{k}), component e{component}: {residual}")]
    Jacobi { i: usize, j: usize, k: usize, component: usize, residual: String },
    #[error("matrix basis does not reproduce the constants at [e{i}, e{j}]")]
    BasisMismatch { i: usize, j: usize },
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bad coefficient {0:?}")]
    BadCoefficient(String),
    #[error("unknown preset {0:?} (expected one of so3, su2, sl2, su3)")]
    UnknownPreset(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// Structure constants `[e_i, e_j] = Σ_k C^k_{ij} e_k`, stored as `c[k][i][j]`
/// with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    dim: usize,
    c: Vec<Vec<Vec<Rational>>>,
    basis: Option<Vec<GMatrix>>,
}

/// Raw constants before validation. Only entries with `i < j` matter after
/// antisymmetric completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawConstants {
    pub dim: usize,
    pub c: Vec<Vec<Vec<Rational>>>,
}

impl RawConstants {
    pub fn zero(dim: usize) -> Self {
        RawConstants { dim, c: vec![vec![vec![Rational::zero(); dim]; dim]; dim] }
    }

    /// Sets `C^k_{ij} = v` and `C^k_{ji} = -v` (0-based).
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        self.c[k][j][i] = -v.clone();
        self.c[k][i][j] = v;
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[k][i][j]
    }

    /// First Jacobi violation as `(i, j, k, component, residual)`, 0-based.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize, usize, Rational)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for m in 0..n {
                        let r = jacobiator(&self.c, i, j, k, m);
                        if !r.is_zero() {
                            return Some((i, j, k, m, r));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Component `m` of `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`.
fn jacobiator(c: &[Vec<Vec<Rational>>], i: usize, j: usize, k: usize, m: usize) -> Rational {
    let n = c.len();
    let mut acc = Rational::zero();
    for (a, b, d) in [(i, j, k), (j, k, i), (k, i, j)] {
        for l in 0..n {
            let inner = &c[l][b][d];
            if !inner.is_zero() && !c[m][a][l].is_zero() {
                acc += inner * &c[m][a][l];
            }
        }
    }
    acc
}

/// Checks antisymmetry and the Jacobi identity exactly.
pub fn validate(raw: RawConstants) -> Result<LieAlgebraSpec, LieError> {
    let n = raw.dim;
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                if !(&raw.c[k][i][j] + &raw.c[k][j][i]).is_zero() {
                    return Err(LieError::Antisymmetry { i: i + 1, j: j + 1, k: k + 1 });
                }
            }
        }
    }
    if let Some((i, j, k, m, r)) = raw.jacobi_violation() {
        return Err(LieError::Jacobi {
            i: i + 1,
            j: j + 1,
            k: k + 1,
            component: m + 1,
            residual: format_rational(&r),
        });
    }
    Ok(LieAlgebraSpec { dim: n, c: raw.c, basis: None })
}

/// Linear bivector `Σ_{i<j} C^k_{ij} x_k ∂_i ∧ ∂_j` for arbitrary constants;
/// Poisson exactly when the constants satisfy Jacobi.
pub fn linear_bivector(raw: &RawConstants) -> PolyMVF {
    let n = raw.dim;
    let mut pi = PolyMVF::zero_unweighted(n, 2);
    for i in 0..n {
        for j in i + 1..n {
            let coeff = Poly::from_terms(
                n,
                (0..n).map(|k| (crate::polyalg::Monomial::var(n, k), raw.c[k][i][j].clone())),
            );
            pi.add_term(vec![i, j], coeff);
        }
    }
    pi
}

pub fn linear_poisson(spec: &LieAlgebraSpec) -> PolyMVF {
    linear_bivector(&spec.raw())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillingClass {
    pub semisimple: bool,
    pub compact_type: bool,
}

impl LieAlgebraSpec {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `C^k_{ij}` with 0-based indices.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[k][i][j]
    }

    pub fn raw(&self) -> RawConstants {
        RawConstants { dim: self.dim, c: self.c.clone() }
    }

    pub fn basis(&self) -> Option<&[GMatrix]> {
        self.basis.as_deref()
    }

    /// Attaches a matrix realization after checking that commutators of the
    /// matrices reproduce the constants.
    pub fn with_basis(mut self, basis: Vec<GMatrix>) -> Result<Self, LieError> {
        if basis.len() != self.dim {
            return Err(LieError::IndexOutOfRange { index: basis.len(), dim: self.dim });
        }
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let comm = presets::commutator(&basis[i], &basis[j]);
                let mut expected = presets::gzero(basis[i].len());
                for (k, b) in basis.iter().enumerate() {
                    presets::gaxpy(&mut expected, &self.c[k][i][j], b);
                }
                if comm != expected {
                    return Err(LieError::BasisMismatch { i: i + 1, j: j + 1 });
                }
            }
        }
        self.basis = Some(basis);
        Ok(self)
    }

    /// Matrix of `ad_{e_i}`: entry `(k, l)` is `C^k_{il}`.
    pub fn ad(&self, i: usize) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            for l in 0..n {
                m.set(k, l, self.c[k][i][l].clone());
            }
        }
        m
    }

    /// `K_ij = tr(ad_i ad_j) = Σ_{k,l} C^k_{il} C^l_{jk}`.
    pub fn killing_form(&self) -> Matrix {
        let n = self.dim;
        let mut kf = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for k in 0..n {
                    for l in 0..n {
                        if !self.c[k][i][l].is_zero() && !self.c[l][j][k].is_zero() {
                            acc += &self.c[k][i][l] * &self.c[l][j][k];
                        }
                    }
                }
                kf.set(i, j, acc);
            }
        }
        kf
    }

    /// Lie algebra direct sum; the matrix basis is dropped.
    pub fn direct_sum(&self, other: &LieAlgebraSpec) -> LieAlgebraSpec {
        let n = self.dim + other.dim;
        let mut raw = RawConstants::zero(n);
        for (src, off) in [(self, 0), (other, self.dim)] {
            for k in 0..src.dim {
                for i in 0..src.dim {
                    for j in 0..src.dim {
                        raw.c[k + off][i + off][j + off] = src.c[k][i][j].clone();
                    }
                }
            }
        }
        LieAlgebraSpec { dim: n, c: raw.c, basis: None }
    }
}

/// Semisimple iff the Killing form is nondegenerate; compact type iff it is
/// negative definite, tested by the signs of the leading principal minors.
pub fn killing_classify(spec: &LieAlgebraSpec) -> KillingClass {
    let kf = spec.killing_form();
    let n = spec.dim;
    let semisimple = n > 0 && !det_exact(&kf).is_zero();
    let compact_type = semisimple
        && (1..=n).all(|k| {
            let minor = Matrix::from_rows((0..k).map(|i| kf.row(i)[..k].to_vec()).collect());
            let d = det_exact(&minor);
            if k % 2 == 1 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        });
    KillingClass { semisimple, compact_type }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: String,
}

/// Wire form: nonzero constants with 1-based indices; the antisymmetric
/// partner of each entry is implied. Optional basis matrices carry entries as
/// `[re, im]` rational strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieJson {
    pub dim: usize,
    #[serde(rename = "C")]
    pub c: Vec<ConstantJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Vec<[String; 2]>>>>,
}

impl RawConstants {
    pub fn from_json(j: &LieJson) -> Result<RawConstants, LieError> {
        let n = j.dim;
        let mut raw = RawConstants::zero(n);
        let mut given = std::collections::BTreeMap::new();
        for e in &j.c {
            for idx in [e.i, e.j, e.k] {
                if idx == 0 || idx > n {
                    return Err(LieError::IndexOutOfRange { index: idx, dim: n });
                }
            }
            let v = parse_rational(&e.value).ok_or_else(|| LieError::BadCoefficient(e.value.clone()))?;
            let (i, jj, k) = (e.i - 1, e.j - 1, e.k - 1);
            if i == jj {
                if !v.is_zero() {
                    return Err(LieError::Antisymmetry { i: e.i, j: e.j, k: e.k });
                }
                continue;
            }
            let (lo, hi, val) = if i < jj { (i, jj, v) } else { (jj, i, -v) };
            if let Some(prev) = given.insert((lo, hi, k), val.clone()) {
                if prev != val {
                    return Err(LieError::Antisymmetry { i: e.i, j: e.j, k: e.k });
                }
            }
            raw.set(lo, hi, k, val);
        }
        Ok(raw)
    }
}

impl LieAlgebraSpec {
    pub fn from_json(j: &LieJson) -> Result<LieAlgebraSpec, LieError> {
        let spec = validate(RawConstants::from_json(j)?)?;
        match &j.basis {
            None => Ok(spec),
            Some(mats) => {
                let basis = mats
                    .iter()
                    .map(|m| {
                        m.iter()
                            .map(|row| {
                                row.iter()
                                    .map(|[re, im]| {
                                        let re = parse_rational(re).ok_or_else(|| LieError::BadCoefficient(re.clone()))?;
                                        let im = parse_rational(im).ok_or_else(|| LieError::BadCoefficient(im.clone()))?;
                                        Ok(Gaussian::new(re, im))
                                    })
                                    .collect::<Result<Vec<_>, LieError>>()
                            })
                            .collect::<Result<Vec<_>, LieError>>()
                    })
                    .collect::<Result<Vec<_>, LieError>>()?;
                spec.with_basis(basis)
            }
        }
    }

    pub fn to_json(&self) -> LieJson {
        let n = self.dim;
        let mut c = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let v = &self.c[k][i][j];
                    if !v.is_zero() {
                        c.push(ConstantJson { i: i + 1, j: j + 1, k: k + 1, value: format_rational(v) });
                    }
                }
            }
        }
        let basis = self.basis.as_ref().map(|b| {
            b.iter()
                .map(|m| {
                    m.iter()
                        .map(|row| row.iter().map(|z| [format_rational(&z.re), format_rational(&z.im)]).collect())
                        .collect()
                })
                .collect()
        });
        LieJson { dim: n, c, basis }
    }
}

/// Largest drift `|f(ξ(t)) - f(ξ(0))|` along coadjoint flows
/// `ξ' = {ξ, ⟨ξ, X⟩}` for random starts and random `X`, integrated with RK4
/// on `t ∈ [0, 1]`. Trial `t` draws from its own ChaCha stream.
pub fn coadjoint_invariance_check(spec: &LieAlgebraSpec, f: &Poly, trials: usize, seed: u64) -> f64 {
    const STEPS: usize = 400;
    let n = spec.dim;
    let c: Vec<Vec<Vec<f64>>> = spec
        .c
        .iter()
        .map(|a| a.iter().map(|r| r.iter().map(crate::polyalg::to_f64).collect()).collect())
        .collect();
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let mut xi: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let a: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            // ξ'_j = Σ_{i,k} a_i C^k_{ji} ξ_k
            let mut m = vec![vec![0.0; n]; n];
            for (j, row) in m.iter_mut().enumerate() {
                for (k, entry) in row.iter_mut().enumerate() {
                    *entry = (0..n).map(|i| a[i] * c[k][j][i]).sum();
                }
            }
            let apply = |v: &[f64]| -> Vec<f64> {
                m.iter().map(|row| row.iter().zip(v).map(|(p, q)| p * q).sum()).collect()
            };
            let f0 = f.eval_f64(&xi);
            let h = 1.0 / STEPS as f64;
            let mut worst: f64 = 0.0;
            for _ in 0..STEPS {
                let k1 = apply(&xi);
                let y: Vec<f64> = xi.iter().zip(&k1).map(|(x, k)| x + 0.5 * h * k).collect();
                let k2 = apply(&y);
                let y: Vec<f64> = xi.iter().zip(&k2).map(|(x, k)| x + 0.5 * h * k).collect();
                let k3 = apply(&y);
                let y: Vec<f64> = xi.iter().zip(&k3).map(|(x, k)| x + h * k).collect();
                let k4 = apply(&y);
                for (idx, x) in xi.iter_mut().enumerate() {
                    *x += h / 6.0 * (k1[idx] + 2.0 * k2[idx] + 2.0 * k3[idx] + k4[idx]);
                }
                worst = worst.max((f.eval_f64(&xi) - f0).abs());
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}
