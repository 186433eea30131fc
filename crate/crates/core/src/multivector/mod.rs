//! Polynomial multivector fields on ℝⁿ, the Schouten bracket, and the
//! weighted dilation grading.
//!
//! A field of degree `q` is stored as a map from strictly increasing index
//! tuples (0-based internally, 1-based in text and JSON) to nonzero
//! polynomial coefficients. Every variable carries a weight in {0, 1}:
//! weight 1 marks a fibre coordinate that the dilation scales, weight 0 a
//! base coordinate that it leaves alone.
//!
//! The bracket is computed with the odd-variable formula
//!
//! ```text
//! [P, Q] = Σ_i (P ∂/∂θ_i)(∂_{x_i} Q) - (-1)^{(p-1)(q-1)} (Q ∂/∂θ_i)(∂_{x_i} P)
//! ```
//!
//! with right derivatives in the odd variables θ_i = ∂_i. On vector fields it
//! is the usual Lie bracket, `[X, f] = X(f)`, and for a bivector
//! `[π, f] = -π♯(df)`.

mod grading;
mod json;

pub use grading::{index_tuples, GradedPiece, Order};
pub use json::{MvfJson, TermJson};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::polyalg::{Poly, PolyError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MvfError {
    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },
    #[error("weight vectors differ: {left:?} vs {right:?}")]
    WeightMismatch { left: Vec<u8>, right: Vec<u8> },
    #[error("weights must be 0 or 1, one per variable (got {0:?})")]
    InvalidWeights(Vec<u8>),
    #[error("grade mismatch: expected {expected}, got {got}")]
    GradeMismatch { expected: usize, got: usize },
    #[error("term {term}: index {index} out of range 1..={nvars}")]
    IndexOutOfRange { term: usize, index: usize, nvars: usize },
    #[error("term {term}: indices must be strictly increasing, got {indices:?}")]
    NotIncreasing { term: usize, indices: Vec<usize> },
    #[error("term {term}: expected {expected} indices, got {got}")]
    WrongLength { term: usize, expected: usize, got: usize },
    #[error("term {term}: index tuple {indices:?} repeats an earlier term")]
    RepeatedTuple { term: usize, indices: Vec<usize> },
    #[error("term {term}: {source}")]
    Poly { term: usize, source: PolyError },
    #[error("dilation parameter must be nonzero")]
    ZeroDilation,
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// Polynomial multivector field with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMVF {
    nvars: usize,
    weights: Vec<u8>,
    grade: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
}

/// Sign of the permutation sorting `idx`, or `None` if an index repeats.
fn sort_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

/// Merge of two sorted tuples with the sign of the shuffle, `None` on overlap.
fn merge(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                inversions += a.len() - i;
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, inversions % 2 == 1))
}

impl PolyMVF {
    pub fn zero(nvars: usize, weights: Vec<u8>, grade: usize) -> Self {
        assert_eq!(weights.len(), nvars, "one weight per variable");
        assert!(weights.iter().all(|&w| w <= 1), "weights must be 0 or 1");
        PolyMVF { nvars, weights, grade, terms: BTreeMap::new() }
    }

    /// Zero field with every variable scaled by the dilation.
    pub fn zero_unweighted(nvars: usize, grade: usize) -> Self {
        Self::zero(nvars, vec![1; nvars], grade)
    }

    pub fn from_poly(p: Poly, weights: Vec<u8>) -> Self {
        let mut w = Self::zero(p.nvars(), weights, 0);
        w.add_term(Vec::new(), p);
        w
    }

    /// `coeff * ∂_{i1} ∧ … ∧ ∂_{iq}` for 0-based indices in any order.
    pub fn term(nvars: usize, weights: Vec<u8>, indices: &[usize], coeff: Poly) -> Self {
        let mut w = Self::zero(nvars, weights, indices.len());
        w.add_wedge_term(indices, coeff);
        w
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn weights(&self) -> &[u8] {
        &self.weights
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    /// Coefficient on a sorted 0-based tuple.
    pub fn coeff(&self, indices: &[usize]) -> Poly {
        self.terms.get(indices).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// Same field with different weights.
    pub fn with_weights(mut self, weights: Vec<u8>) -> Result<Self, MvfError> {
        if weights.len() != self.nvars || weights.iter().any(|&w| w > 1) {
            return Err(MvfError::InvalidWeights(weights));
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn zero_like(&self, grade: usize) -> Self {
        Self::zero(self.nvars, self.weights.clone(), grade)
    }

    /// Adds `p` to the coefficient of a strictly increasing tuple.
    pub fn add_term(&mut self, indices: Vec<usize>, p: Poly) {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(indices.len(), self.grade);
        assert_eq!(p.nvars(), self.nvars, "coefficient has wrong number of variables");
        if p.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(indices) {
            Entry::Vacant(v) => {
                v.insert(p);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &p;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Adds `p * ∂_{i1} ∧ …` for indices in any order, reordering with sign.
    pub fn add_wedge_term(&mut self, indices: &[usize], p: Poly) {
        assert_eq!(indices.len(), self.grade, "wrong number of legs");
        assert!(indices.iter().all(|&i| i < self.nvars), "index out of range");
        let mut idx = indices.to_vec();
        match sort_sign(&mut idx) {
            None => {}
            Some(1) => self.add_term(idx, p),
            Some(_) => self.add_term(idx, -p),
        }
    }

    fn compatible(&self, other: &PolyMVF) -> Result<(), MvfError> {
        if self.nvars != other.nvars {
            return Err(MvfError::DimensionMismatch { left: self.nvars, right: other.nvars });
        }
        if self.weights != other.weights {
            return Err(MvfError::WeightMismatch {
                left: self.weights.clone(),
                right: other.weights.clone(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &PolyMVF) -> Result<PolyMVF, MvfError> {
        self.compatible(other)?;
        if self.grade != other.grade {
            // the zero field of any grade is accepted as additive identity
            if other.is_zero() {
                return Ok(self.clone());
            }
            if self.is_zero() {
                return Ok(other.clone());
            }
            return Err(MvfError::GradeMismatch { expected: self.grade, got: other.grade });
        }
        let mut out = self.clone();
        for (i, p) in &other.terms {
            out.add_term(i.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> PolyMVF {
        let mut out = self.zero_like(self.grade);
        if c.is_zero() {
            return out;
        }
        for (i, p) in &self.terms {
            out.terms.insert(i.clone(), p.scale(c));
        }
        out
    }

    /// Multiplication by a function.
    pub fn mul_poly(&self, f: &Poly) -> PolyMVF {
        let mut out = self.zero_like(self.grade);
        for (i, p) in &self.terms {
            out.add_term(i.clone(), p * f);
        }
        out
    }

    pub fn map_coeffs<F: Fn(&Poly) -> Poly>(&self, f: F) -> PolyMVF {
        let mut out = self.zero_like(self.grade);
        for (i, p) in &self.terms {
            out.add_term(i.clone(), f(p));
        }
        out
    }

    /// Exterior product.
    pub fn wedge(&self, other: &PolyMVF) -> Result<PolyMVF, MvfError> {
        self.compatible(other)?;
        let mut out = self.zero_like(self.grade + other.grade);
        if out.grade > self.nvars {
            return Ok(out);
        }
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                if let Some((k, odd)) = merge(i, j) {
                    let c = a * b;
                    out.add_term(k, if odd { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Right derivative with respect to the odd variable θ_var.
    fn right_odd_derivative(&self, var: usize) -> PolyMVF {
        let mut out = self.zero_like(self.grade.saturating_sub(1));
        if self.grade == 0 {
            return out;
        }
        let p = self.grade;
        for (idx, a) in &self.terms {
            if let Some(k) = idx.iter().position(|&i| i == var) {
                let mut rest = idx.clone();
                rest.remove(k);
                let negative = (p - 1 - k) % 2 == 1;
                out.add_term(rest, if negative { -a } else { a.clone() });
            }
        }
        out
    }

    fn partial_x(&self, var: usize) -> PolyMVF {
        self.map_coeffs(|p| p.derivative(var))
    }

    /// Schouten–Nijenhuis bracket; grade `|W| + |V| - 1` (a bracket involving
    /// two functions is the zero function).
    pub fn schouten(&self, other: &PolyMVF) -> Result<PolyMVF, MvfError> {
        self.compatible(other)?;
        let (p, q) = (self.grade, other.grade);
        let g = (p + q).saturating_sub(1);
        let mut out = self.zero_like(g);
        if p + q == 0 || g > self.nvars {
            return Ok(out);
        }
        let swap_negative = p > 0 && q > 0 && (p - 1) * (q - 1) % 2 == 1;
        for i in 0..self.nvars {
            if p > 0 {
                let dq = other.partial_x(i);
                if !dq.is_zero() {
                    let t = self.right_odd_derivative(i).wedge(&dq)?;
                    out.absorb(t, false);
                }
            }
            if q > 0 {
                let dp = self.partial_x(i);
                if !dp.is_zero() {
                    let t = other.right_odd_derivative(i).wedge(&dp)?;
                    // p = 0 gives exponent (-1)(q-1), parity of q-1
                    let negative_sign = if p == 0 { (q - 1) % 2 == 1 } else { swap_negative };
                    out.absorb(t, !negative_sign);
                }
            }
        }
        Ok(out)
    }

    fn absorb(&mut self, other: PolyMVF, negate: bool) {
        debug_assert_eq!(self.grade, other.grade);
        for (i, p) in other.terms {
            self.add_term(i, if negate { -p } else { p });
        }
    }

    /// Interior product `ι_α W` with the 1-form `α = Σ α_i dx_i` on the first slot.
    pub fn interior(&self, alpha: &[Poly]) -> PolyMVF {
        assert_eq!(alpha.len(), self.nvars, "one-form has wrong dimension");
        let mut out = self.zero_like(self.grade.saturating_sub(1));
        if self.grade == 0 {
            return out;
        }
        for (idx, a) in &self.terms {
            for (k, &i) in idx.iter().enumerate() {
                if alpha[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(k);
                let c = a * &alpha[i];
                out.add_term(rest, if k % 2 == 1 { -c } else { c });
            }
        }
        out
    }

    /// `W(α_1, …, α_q)` for one-forms given by coefficient vectors.
    pub fn evaluate_forms(&self, forms: &[Vec<Poly>]) -> Poly {
        assert_eq!(forms.len(), self.grade, "need one form per leg");
        let mut w = self.clone();
        for f in forms {
            w = w.interior(f);
        }
        w.coeff(&[])
    }

    /// The underlying function of a grade-0 field.
    pub fn as_poly(&self) -> Poly {
        assert_eq!(self.grade, 0, "not a function");
        self.coeff(&[])
    }

    /// Numeric coefficients at a point, keyed by 0-based tuple.
    pub fn eval_f64(&self, point: &[f64]) -> Vec<(Vec<usize>, f64)> {
        self.terms.iter().map(|(i, p)| (i.clone(), p.eval_f64(point))).collect()
    }

    /// Bivector coefficients at a point as a dense skew matrix.
    pub fn bivector_matrix_f64(&self, point: &[f64]) -> Vec<Vec<f64>> {
        assert_eq!(self.grade, 2, "not a bivector");
        let n = self.nvars;
        let mut m = vec![vec![0.0; n]; n];
        for (idx, p) in &self.terms {
            let v = p.eval_f64(point);
            m[idx[0]][idx[1]] = v;
            m[idx[1]][idx[0]] = -v;
        }
        m
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms.values().map(Poly::max_abs_coeff).max().unwrap_or_else(Rational::zero)
    }

    /// Largest total polynomial degree among coefficients.
    pub fn max_poly_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(Poly::degree).max()
    }
}

/// Row key of a linear system over multivector coordinates.
pub(crate) type CoordKey = (Vec<usize>, crate::polyalg::Monomial);

/// Writes the columns (and optionally a right-hand side) in a common
/// coordinate system keyed by `(tuple, monomial)`, rows in ascending key order.
pub(crate) fn assemble_system(
    columns: &[PolyMVF],
    rhs: Option<&PolyMVF>,
) -> (crate::polyalg::Matrix, Vec<Rational>, Vec<CoordKey>) {
    use crate::polyalg::Matrix;
    let mut keys: BTreeMap<CoordKey, usize> = BTreeMap::new();
    for w in columns.iter().chain(rhs) {
        for (idx, p) in &w.terms {
            for (m, _) in p.terms() {
                keys.entry((idx.clone(), m.clone())).or_insert(0);
            }
        }
    }
    for (row, v) in keys.values_mut().enumerate() {
        *v = row;
    }
    let mut a = Matrix::zeros(keys.len(), columns.len());
    for (j, w) in columns.iter().enumerate() {
        for (idx, p) in &w.terms {
            for (m, c) in p.terms() {
                a.set(keys[&(idx.clone(), m.clone())], j, c.clone());
            }
        }
    }
    let mut b = vec![Rational::zero(); keys.len()];
    if let Some(r) = rhs {
        for (idx, p) in &r.terms {
            for (m, c) in p.terms() {
                b[keys[&(idx.clone(), m.clone())]] = c.clone();
            }
        }
    }
    (a, b, keys.into_keys().collect())
}

/// `Σ c_j columns_j`
pub(crate) fn combine(columns: &[PolyMVF], coeffs: &[Rational], template: &PolyMVF) -> PolyMVF {
    let mut out = template.clone();
    for (w, c) in columns.iter().zip(coeffs) {
        if !c.is_zero() {
            for (idx, p) in &w.terms {
                out.add_term(idx.clone(), p.scale(c));
            }
        }
    }
    out
}

impl fmt::Display for PolyMVF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, p)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let legs: Vec<String> = idx.iter().map(|i| format!("d{}", i + 1)).collect();
            if legs.is_empty() {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})*{}", legs.join("^"))?;
            }
        }
        Ok(())
    }
}

impl Add<&PolyMVF> for &PolyMVF {
    type Output = PolyMVF;
    fn add(self, rhs: &PolyMVF) -> PolyMVF {
        self.checked_add(rhs).expect("incompatible multivector fields")
    }
}

impl Add for PolyMVF {
    type Output = PolyMVF;
    fn add(self, rhs: PolyMVF) -> PolyMVF {
        &self + &rhs
    }
}

impl Sub<&PolyMVF> for &PolyMVF {
    type Output = PolyMVF;
    fn sub(self, rhs: &PolyMVF) -> PolyMVF {
        self + &-rhs
    }
}

impl Sub for PolyMVF {
    type Output = PolyMVF;
    fn sub(self, rhs: PolyMVF) -> PolyMVF {
        &self - &rhs
    }
}

impl Neg for &PolyMVF {
    type Output = PolyMVF;
    fn neg(self) -> PolyMVF {
        self.scale(&-Rational::one())
    }
}

impl Neg for PolyMVF {
    type Output = PolyMVF;
    fn neg(self) -> PolyMVF {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    fn vf(n: usize, i: usize, s: &str) -> PolyMVF {
        PolyMVF::term(n, vec![1; n], &[i], poly(s, n))
    }

    pub(crate) fn so3() -> PolyMVF {
        let mut pi = PolyMVF::zero_unweighted(3, 2);
        pi.add_wedge_term(&[1, 2], poly("x1", 3));
        pi.add_wedge_term(&[2, 0], poly("x2", 3));
        pi.add_wedge_term(&[0, 1], poly("x3", 3));
        pi
    }

    #[test]
    fn wedge_examples() {
        let d1 = vf(2, 0, "1");
        let d2 = vf(2, 1, "1");
        let b = d1.wedge(&d2).unwrap();
        assert_eq!(b, PolyMVF::term(2, vec![1, 1], &[0, 1], poly("1", 2)));
        assert!(d1.wedge(&d1).unwrap().is_zero());
        let w = vf(2, 0, "x2").wedge(&vf(2, 1, "x1")).unwrap();
        assert_eq!(w, PolyMVF::term(2, vec![1, 1], &[0, 1], poly("x1*x2", 2)));
        assert_eq!(d2.wedge(&d1).unwrap(), -b);
    }

    #[test]
    fn schouten_examples() {
        let d = vf(1, 0, "1");
        let xd = vf(1, 0, "x1");
        assert_eq!(d.schouten(&xd).unwrap(), d);
        let pi = so3();
        assert!(pi.schouten(&pi).unwrap().is_zero());
        let x = PolyMVF::from_poly(poly("x1", 3), vec![1; 3]);
        let h = -pi.schouten(&x).unwrap();
        let expected = &vf(3, 1, "x3") - &vf(3, 2, "x2");
        assert_eq!(h, expected);
    }

    #[test]
    fn interior_matches_contraction() {
        let pi = so3();
        let dx = vec![poly("1", 3), Poly::zero(3), Poly::zero(3)];
        let expected = &vf(3, 1, "x3") - &vf(3, 2, "x2");
        assert_eq!(pi.interior(&dx), expected);
        let dy = vec![Poly::zero(3), poly("1", 3), Poly::zero(3)];
        assert_eq!(pi.evaluate_forms(&[dx, dy]), poly("x3", 3));
    }

    #[test]
    fn mismatches_rejected() {
        let a = vf(2, 0, "1");
        let b = vf(3, 0, "1");
        assert!(matches!(a.wedge(&b), Err(MvfError::DimensionMismatch { .. })));
        let c = a.clone().with_weights(vec![0, 1]).unwrap();
        assert!(matches!(a.schouten(&c), Err(MvfError::WeightMismatch { .. })));
    }
}
