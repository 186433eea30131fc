use serde_json::{json, Value};

use super::homotopy::solve_in_basis;
use super::{ad_exp, bch, homotopy_solve, FilteredJet, FormalError, HomotopyOutcome};
use crate::multivector::{GradedPiece, Order, PolyMVF};
use crate::polyalg::{format_rational, rat_int, Monomial, Rational};

/// Result of a gauge-equivalence search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaugeSolution {
    /// `exp(ad_X) γ' = γ` up to the truncation grade.
    Equivalent { x: FilteredJet, rounds: usize },
    /// The homogeneous equation at `degree` has no solution with base
    /// degrees at most `base_degree_cap`.
    Obstructed { degree: u32, cochain: PolyMVF, witness: Vec<Rational>, base_degree_cap: u32, round: usize },
}

impl GaugeSolution {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, GaugeSolution::Equivalent { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            GaugeSolution::Equivalent { x, rounds } => json!({
                "status": "equivalent",
                "X": x.value().to_json(),
                "rounds": rounds,
            }),
            GaugeSolution::Obstructed { degree, cochain, witness, base_degree_cap, round } => json!({
                "status": "obstructed",
                "degree": degree,
                "cochain": cochain.to_json(),
                "base_degree_cap": base_degree_cap,
                "round": round,
                "witness_nonzero_entries": witness.iter().filter(|w| !num_traits::Zero::is_zero(*w)).count(),
                "witness": witness.iter().map(format_rational).collect::<Vec<_>>(),
            }),
        }
    }
}

fn require_mc(which: &'static str, g: &PolyMVF, d: u32) -> Result<(), FormalError> {
    if g.grade() != 2 {
        return Err(FormalError::WrongGrade { expected: 2, got: g.grade() });
    }
    let witness = g.schouten(g)?.truncate_jet(d);
    if !witness.is_zero() {
        return Err(FormalError::NotMaurerCartan { which, witness });
    }
    Ok(())
}

/// Gauge equivalence of two Maurer–Cartan jets with the same linear part.
///
/// Starting from `γ_0 = γ'`, each round takes the lowest piece `Z` of
/// `γ_{k-1} - γ`, solves `[π_lin, X_k] = Z` and sets
/// `γ_k = exp(ad_{X_k}) γ_{k-1}`. The order of `γ_k - γ` rises every round,
/// so at most `d` rounds are needed. The `X_k` are composed as
/// `X_k * (… * X_1)` and the result is re-checked by direct expansion.
pub fn mc_equivalence(gamma: &PolyMVF, gamma_prime: &PolyMVF, d: u32, base_cap: u32) -> Result<GaugeSolution, FormalError> {
    let gamma = gamma.truncate_jet(d);
    let gamma_prime = gamma_prime.truncate_jet(d);
    require_mc("γ", &gamma, d)?;
    require_mc("γ'", &gamma_prime, d)?;
    if gamma.min_grade() == Some(0) || gamma_prime.min_grade() == Some(0) {
        return Err(FormalError::ConstantPart);
    }
    let diff = &gamma - &gamma_prime;
    let found = diff.order();
    if found < Order::Finite(1) {
        return Err(FormalError::OrderTooLow { what: "γ - γ'", required: 1, found });
    }
    let pi_lin = gamma.grade_component(1).value;
    let mut current = gamma_prime.clone();
    let mut total = gamma.zero_like(1);
    let mut last_order = Order::Finite(0);
    let mut rounds = 0;
    loop {
        let delta = &current - &gamma;
        let Some(q) = delta.min_grade() else { break };
        let order = delta.order();
        assert!(order > last_order, "order failed to increase");
        last_order = order;
        rounds += 1;
        let z = delta.grade_component(q);
        let x_k = match homotopy_solve(&pi_lin, &z, base_cap)? {
            HomotopyOutcome::Solved(x) => x.value,
            HomotopyOutcome::Obstructed { cochain, witness } => {
                return Ok(GaugeSolution::Obstructed {
                    degree: q,
                    cochain: cochain.value,
                    witness,
                    base_degree_cap: base_cap,
                    round: rounds,
                })
            }
        };
        current = ad_exp(&x_k, &current, d)?;
        total = bch(&x_k, &total, d)?;
    }
    if ad_exp(&total, &gamma_prime, d)? != gamma {
        return Err(FormalError::Verification { rounds });
    }
    Ok(GaugeSolution::Equivalent { x: FilteredJet::new(&total, d), rounds })
}

/// Gauge equivalence between the jet of `π` and its linear part.
pub fn formal_linearize(pi: &PolyMVF, d: u32, base_cap: u32) -> Result<GaugeSolution, FormalError> {
    if pi.grade() != 2 {
        return Err(FormalError::WrongGrade { expected: 2, got: pi.grade() });
    }
    if pi.min_grade() == Some(0) {
        return Err(FormalError::ConstantPart);
    }
    let lin = pi.grade_component(1).value;
    let witness = lin.schouten(&lin)?;
    if !witness.is_zero() {
        return Err(FormalError::LinearNotPoisson { witness });
    }
    mc_equivalence(&pi.truncate_jet(d), &lin, d, base_cap)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProlongOutcome {
    /// `[π + η, π + η]` has no piece of grade `≤ m`.
    Extended { eta: GradedPiece, jacobiator: PolyMVF },
    /// `2[π_p, η] = -[π,π]_m` has no solution vanishing to second order
    /// along the base.
    Obstructed { grade: u32, cochain: PolyMVF, witness: Vec<Rational>, base_degree_cap: u32 },
}

impl ProlongOutcome {
    pub fn is_extended(&self) -> bool {
        matches!(self, ProlongOutcome::Extended { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            ProlongOutcome::Extended { eta, jacobiator } => json!({
                "status": "extended",
                "eta_grade": eta.l,
                "eta": eta.value.to_json(),
                "jacobiator_min_grade": jacobiator.min_grade(),
            }),
            ProlongOutcome::Obstructed { grade, cochain, witness, base_degree_cap } => json!({
                "status": "obstructed",
                "grade": grade,
                "cochain": cochain.to_json(),
                "base_degree_cap": base_degree_cap,
                "witness_nonzero_entries": witness.iter().filter(|w| !num_traits::Zero::is_zero(*w)).count(),
                "witness": witness.iter().map(format_rational).collect::<Vec<_>>(),
            }),
        }
    }
}

/// One step of extending a partial Poisson jet. With `p` the lowest grade of
/// `π`, looks for `η` homogeneous of grade `m - p + 1` whose coefficients
/// vanish to second order in the fibre variables (so the first jet of `π`
/// along the base is kept), solving `2[π_p, η] = -[π, π]_m`.
pub fn prolong_step(pi: &PolyMVF, m: u32, base_cap: u32) -> Result<ProlongOutcome, FormalError> {
    if pi.grade() != 2 {
        return Err(FormalError::WrongGrade { expected: 2, got: pi.grade() });
    }
    let jac = pi.schouten(pi)?;
    if let Some(g) = jac.min_grade().filter(|&g| g < m) {
        return Err(FormalError::JacobiBelow { grade: g, m });
    }
    let zero_eta = |l| GradedPiece { l, value: pi.zero_like(2) };
    let Some(p) = pi.min_grade() else {
        return Ok(ProlongOutcome::Extended { eta: zero_eta(m + 1), jacobiator: jac });
    };
    let l = (m + 1).saturating_sub(p);
    let rhs = jac.grade_component(m).value;
    if rhs.is_zero() {
        return Ok(ProlongOutcome::Extended { eta: zero_eta(l), jacobiator: jac });
    }
    let pi_p = pi.grade_component(p).value;
    let fibre: Vec<bool> = pi.weights().iter().map(|&w| w == 1).collect();
    let basis: Vec<PolyMVF> = if m + 1 < p {
        Vec::new()
    } else {
        PolyMVF::graded_basis(pi.nvars(), pi.weights(), 2, l, base_cap)
            .into_iter()
            .filter(|b| b.terms().all(|(_, c)| c.terms().all(|(mono, _): (&Monomial, _)| mono.degree_in(&fibre) >= 2)))
            .collect()
    };
    let target = -&rhs;
    Ok(match solve_in_basis(&pi_p, &basis, &target, &rat_int(2))? {
        Ok(eta) => {
            let eta = if basis.is_empty() { pi.zero_like(2) } else { eta };
            let next = pi + &eta;
            let jacobiator = next.schouten(&next)?;
            debug_assert!(jacobiator.min_grade().is_none_or(|g| g > m));
            ProlongOutcome::Extended { eta: GradedPiece { l, value: eta }, jacobiator }
        }
        Err(witness) => ProlongOutcome::Obstructed { grade: m, cochain: rhs, witness, base_degree_cap: base_cap },
    })
}
