//! Truncated filtered graded Lie algebra of multivector jets.
//!
//! Elements are [`PolyMVF`] values cut off above a weighted grade `D`. The
//! order of an element is its lowest grade minus one. Fields of order at
//! least 1 act nilpotently by `ad`, so `exp(ad_X)` and the
//! Baker–Campbell–Hausdorff product are finite sums inside the truncation.

mod gauge;
mod homotopy;

pub use gauge::{formal_linearize, mc_equivalence, prolong_step, GaugeSolution, ProlongOutcome};
pub use homotopy::{homotopy_solve, HomotopyOutcome};

use thiserror::Error;

use crate::multivector::{MvfError, Order, PolyMVF};
use crate::poisson::PoissonError;
use crate::polyalg::{rat, Rational};

/// Base-variable degree cap for weighted problems.
pub const DEFAULT_BASE_DEGREE_CAP: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormalError {
    #[error("{what} must have order >= {required}, found {found}")]
    OrderTooLow { what: &'static str, required: i64, found: Order },
    #[error("expected a field of degree {expected}, got degree {got}")]
    WrongGrade { expected: usize, got: usize },
    #[error("{which} is not Maurer-Cartan within the truncation: [γ,γ] = {witness}")]
    NotMaurerCartan { which: &'static str, witness: PolyMVF },
    #[error("right-hand side is not a cocycle: [π, Z] = {residual}")]
    NotCocycle { residual: PolyMVF },
    #[error("linear part is not Poisson: [π₁, π₁] = {witness}")]
    LinearNotPoisson { witness: PolyMVF },
    #[error("π has a nonzero piece of grade 0 (it must vanish along the base)")]
    ConstantPart,
    #[error("Jacobiator has a nonzero piece of grade {grade} below the requested grade {m}")]
    JacobiBelow { grade: u32, m: u32 },
    #[error("re-expansion check failed after {rounds} rounds")]
    Verification { rounds: usize },
    #[error(transparent)]
    Mvf(#[from] MvfError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

/// A multivector field truncated above weighted grade `truncation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredJet {
    value: PolyMVF,
    truncation: u32,
}

impl FilteredJet {
    pub fn new(value: &PolyMVF, truncation: u32) -> Self {
        FilteredJet { value: value.truncate_jet(truncation), truncation }
    }

    pub fn value(&self) -> &PolyMVF {
        &self.value
    }

    pub fn into_value(self) -> PolyMVF {
        self.value
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn order(&self) -> Order {
        self.value.order()
    }
}

/// `min grade - 1` of the truncated value, infinite for zero.
pub fn order_of(u: &FilteredJet) -> Order {
    u.order()
}

fn require_order(what: &'static str, x: &PolyMVF, required: i64) -> Result<(), FormalError> {
    let found = x.order();
    if found < Order::Finite(required) {
        return Err(FormalError::OrderTooLow { what, required, found });
    }
    Ok(())
}

/// `[a, b]` truncated at grade `d`.
pub fn bracket_trunc(a: &PolyMVF, b: &PolyMVF, d: u32) -> Result<PolyMVF, FormalError> {
    Ok(a.schouten(b)?.truncate_jet(d))
}

/// `exp(ad_X) u = Σ ad_X^n u / n!`, truncated at grade `d`. `X` must be a
/// vector field of order at least 1.
pub fn ad_exp(x: &PolyMVF, u: &PolyMVF, d: u32) -> Result<PolyMVF, FormalError> {
    if x.grade() != 1 {
        return Err(FormalError::WrongGrade { expected: 1, got: x.grade() });
    }
    require_order("X", x, 1)?;
    let mut term = u.truncate_jet(d);
    let mut sum = term.clone();
    let mut n: i64 = 1;
    while !term.is_zero() {
        term = bracket_trunc(x, &term, d)?.scale(&rat(1, n));
        sum = &sum + &term;
        n += 1;
    }
    Ok(sum)
}

/// Coefficients of a polynomial in an auxiliary parameter `t`.
type TPoly = Vec<PolyMVF>;

fn tpoly_is_zero(v: &TPoly) -> bool {
    v.iter().all(PolyMVF::is_zero)
}

/// `exp(t ad_Y) V` for a `t`-polynomial `V`.
fn exp_t_ad(y: &PolyMVF, v: &TPoly, d: u32) -> Result<TPoly, FormalError> {
    let mut out: TPoly = Vec::new();
    for (m, vm) in v.iter().enumerate() {
        let mut term = vm.clone();
        let mut n = 0usize;
        while !term.is_zero() {
            if out.len() <= m + n {
                out.resize(m + n + 1, term.zero_like(term.grade()));
            }
            out[m + n] = &out[m + n] + &term;
            n += 1;
            term = bracket_trunc(y, &term, d)?.scale(&rat(1, n as i64));
        }
    }
    Ok(out)
}

/// Baker–Campbell–Hausdorff product `X * Y` with `exp(ad_{X*Y}) =
/// exp(ad_X) exp(ad_Y)`, computed from the integral form
///
/// ```text
/// X * Y = X + ∫₀¹ Ψ(e^{ad X} e^{t ad Y}) Y dt,   Ψ(w) = w log w / (w - 1)
/// ```
///
/// with `Ψ(w) = 1 + Σ_{k≥1} (-1)^{k+1} (w-1)^k / (k(k+1))`. Powers of `t` are
/// carried exactly and integrated termwise.
///
/// Pieces of `X * Y` above grade `d` are dropped, so the group law
/// `exp(ad_{X*Y}) u = exp(ad_X) exp(ad_Y) u` holds mod grade `d` for `u` of
/// order at least 0.
pub fn bch(x: &PolyMVF, y: &PolyMVF, d: u32) -> Result<PolyMVF, FormalError> {
    for (what, v) in [("X", x), ("Y", y)] {
        if v.grade() != 1 {
            return Err(FormalError::WrongGrade { expected: 1, got: v.grade() });
        }
        require_order(what, v, 1)?;
    }
    let x = x.truncate_jet(d);
    let y = y.truncate_jet(d);
    let mut result = &x + &y;
    let mut v: TPoly = vec![y.clone()];
    let mut k: i64 = 1;
    loop {
        // v <- (e^{ad X} e^{t ad Y} - 1) v
        let shifted = exp_t_ad(&y, &v, d)?;
        let mut next: TPoly = Vec::with_capacity(shifted.len());
        for (m, s) in shifted.iter().enumerate() {
            let mut w = ad_exp(&x, s, d)?;
            if let Some(old) = v.get(m) {
                w = &w - old;
            }
            next.push(w);
        }
        v = next;
        if tpoly_is_zero(&v) {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let ck: Rational = rat(sign, k * (k + 1));
        for (m, vm) in v.iter().enumerate() {
            if !vm.is_zero() {
                result = &result + &vm.scale(&(&ck * rat(1, m as i64 + 1)));
            }
        }
        k += 1;
    }
    Ok(result)
}
