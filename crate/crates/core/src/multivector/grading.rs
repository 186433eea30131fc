use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;

use super::{MvfError, PolyMVF};
use crate::polyalg::{Monomial, Poly, Rational};

/// Filtration order: `min grade - 1`, or infinite for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(i64),
    Infinite,
}

impl Order {
    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Order::Finite(v) => Some(v),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(v) => write!(f, "{v}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// A field homogeneous of weighted grade `l`: dilation by `t` multiplies it
/// by `t^(l-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub l: u32,
    pub value: PolyMVF,
}

impl PolyMVF {
    fn fibre_mask(&self) -> Vec<bool> {
        self.weights.iter().map(|&w| w == 1).collect()
    }

    fn base_legs(&self, idx: &[usize]) -> u32 {
        idx.iter().filter(|&&i| self.weights[i] == 0).count() as u32
    }

    /// Weighted grade of the term `x^m ∂_idx`.
    pub fn term_grade(&self, idx: &[usize], m: &Monomial) -> u32 {
        m.degree_in(&self.fibre_mask()) + self.base_legs(idx)
    }

    /// All grades carrying a nonzero piece, ascending.
    pub fn grades(&self) -> BTreeSet<u32> {
        let mask = self.fibre_mask();
        let mut out = BTreeSet::new();
        for (idx, p) in &self.terms {
            let legs = self.base_legs(idx);
            for (m, _) in p.terms() {
                out.insert(m.degree_in(&mask) + legs);
            }
        }
        out
    }

    pub fn min_grade(&self) -> Option<u32> {
        self.grades().first().copied()
    }

    pub fn max_grade(&self) -> Option<u32> {
        self.grades().last().copied()
    }

    pub fn order(&self) -> Order {
        match self.min_grade() {
            Some(g) => Order::Finite(g as i64 - 1),
            None => Order::Infinite,
        }
    }

    fn filter_grades<F: Fn(u32) -> bool>(&self, keep: F) -> PolyMVF {
        let mask = self.fibre_mask();
        let mut out = self.zero_like(self.grade);
        for (idx, p) in &self.terms {
            let legs = self.base_legs(idx);
            out.add_term(idx.clone(), p.filter_terms(|m| keep(m.degree_in(&mask) + legs)));
        }
        out
    }

    /// The homogeneous piece of weighted grade `l`.
    pub fn grade_component(&self, l: u32) -> GradedPiece {
        GradedPiece { l, value: self.filter_grades(|g| g == l) }
    }

    /// Drops every piece of grade above `k`.
    pub fn truncate_jet(&self, k: u32) -> PolyMVF {
        self.filter_grades(|g| g <= k)
    }

    /// The dilation `t^(|base legs| - 1) a(x, t y)`; on `gr_l` it is
    /// multiplication by `t^(l-1)`.
    pub fn dilate(&self, t: &Rational) -> Result<PolyMVF, MvfError> {
        use num_traits::Zero;
        if t.is_zero() {
            return Err(MvfError::ZeroDilation);
        }
        let mask = self.fibre_mask();
        let mut out = self.zero_like(self.grade);
        for (idx, p) in &self.terms {
            let legs = self.base_legs(idx) as i32;
            let scaled = p.scale_by_degree(|m| {
                crate::polyalg::pow_i32(t, m.degree_in(&mask) as i32 + legs - 1)
            });
            out.add_term(idx.clone(), scaled);
        }
        Ok(out)
    }

    /// Basis of the homogeneous fields of grade `l` and degree `legs`, each a
    /// single term with coefficient 1. Base-variable degree is capped at
    /// `base_cap`; without base variables the space is finite anyway.
    pub fn graded_basis(
        nvars: usize,
        weights: &[u8],
        legs: usize,
        l: u32,
        base_cap: u32,
    ) -> Vec<PolyMVF> {
        let mask: Vec<bool> = weights.iter().map(|&w| w == 1).collect();
        let mut out = Vec::new();
        for idx in index_tuples(nvars, legs) {
            let base_legs = idx.iter().filter(|&&i| weights[i] == 0).count() as u32;
            if base_legs > l {
                continue;
            }
            for m in Monomial::all_with_split_degree(nvars, &mask, l - base_legs, base_cap) {
                let mut w = PolyMVF::zero(nvars, weights.to_vec(), legs);
                w.add_term(idx.clone(), Poly::monomial(nvars, m, Rational::one()));
                out.push(w);
            }
        }
        out
    }
}

/// Strictly increasing tuples of length `k` from `0..n`, lexicographic.
pub fn index_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}
