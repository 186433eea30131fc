use std::f64::consts::PI;
use std::fmt::Write as _;

use anyhow::{bail, Result};
use poisson_forge_core::formal::{formal_linearize, prolong_step, FormalError};
use poisson_forge_core::liealg::{
    killing_classify, random_su3_conjugation, su3_conjugate, su3_invariants, weyl_circle_sample,
};
use poisson_forge_core::poisson::{casimir_basis, check_poisson, cohomology_dims, PoissonError};
use poisson_forge_core::realize::{
    dh_variation, leaf_area_density, symplectic_area, verify_realization, DEFAULT_AREA_GRID,
};
use poisson_forge_core::{GaugeSolution, PolyMVF};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde_json::{json, Value};

use crate::input::Input;

/// What a verb produced: a JSON document, a human summary and the verdict.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

fn mvf(p: &PolyMVF) -> Value {
    serde_json::to_value(p.to_json()).expect("serializable")
}

fn require_bivector(pi: &PolyMVF) -> Result<()> {
    if pi.grade() != 2 {
        bail!("expected a bivector (grade 2), got a field of degree {}", pi.grade());
    }
    Ok(())
}

pub fn check(input: &Input) -> Result<Report> {
    let pi = input.bivector();
    require_bivector(&pi)?;
    let verdict = check_poisson(&pi)?;
    let mut json = json!({
        "verb": "check",
        "is_poisson": verdict.is_poisson,
        "witness": mvf(&verdict.witness),
    });
    let mut text = format!("poisson: {}\n", verdict.is_poisson);
    if !verdict.is_poisson {
        let _ = writeln!(text, "[π,π] = {}", verdict.witness);
    }
    if let Input::Lie { raw, .. } = input {
        match raw.jacobi_violation() {
            Some((i, j, k, m, residual)) => {
                let residual = poisson_forge_core::polyalg::format_rational(&residual);
                json["jacobi_violation"] =
                    json!({ "i": i + 1, "j": j + 1, "k": k + 1, "component": m + 1, "residual": residual });
                let _ = writeln!(
                    text,
                    "Jacobi fails on (e{}, e{}, e{}), component e{}: {residual}",
                    i + 1,
                    j + 1,
                    k + 1,
                    m + 1
                );
            }
            None => {
                let spec = input.lie_spec()?.expect("Lie input");
                let class = killing_classify(&spec);
                json["killing"] = serde_json::to_value(class)?;
                let _ = writeln!(text, "semisimple: {}\ncompact type: {}", class.semisimple, class.compact_type);
            }
        }
    }
    Ok(Report { json, text, ok: verdict.is_poisson })
}

fn not_poisson(verb: &str, witness: &PolyMVF) -> Report {
    Report {
        json: json!({ "verb": verb, "status": "not_poisson", "witness": mvf(witness) }),
        text: format!("not Poisson: [π,π] = {witness}\n"),
        ok: false,
    }
}

pub fn casimirs(input: &Input, max_degree: u32) -> Result<Report> {
    let pi = input.bivector();
    require_bivector(&pi)?;
    match casimir_basis(&pi, max_degree) {
        Ok(basis) => {
            let polys: Vec<String> = basis.iter().map(ToString::to_string).collect();
            let mut text = format!("{} Casimir(s) up to degree {max_degree}\n", polys.len());
            for p in &polys {
                let _ = writeln!(text, "  {p}");
            }
            Ok(Report {
                json: json!({ "verb": "casimirs", "max_degree": max_degree, "casimirs": polys }),
                text,
                ok: true,
            })
        }
        Err(PoissonError::NotPoisson { witness }) => Ok(not_poisson("casimirs", &witness)),
        Err(e) => Err(e.into()),
    }
}

pub fn cohomology(input: &Input, grade: u32, kmax: usize) -> Result<Report> {
    let pi = input.bivector();
    require_bivector(&pi)?;
    match cohomology_dims(&pi, grade, kmax) {
        Ok(table) => {
            let mut text = format!("grade {grade}\n  k    dim   rank  betti\n");
            for r in &table.rows {
                let _ = writeln!(text, "{:>3} {:>6} {:>6} {:>6}", r.k, r.dim, r.rank, r.betti);
            }
            Ok(Report { json: serde_json::to_value(&table)?, text, ok: true })
        }
        Err(PoissonError::NotPoisson { witness }) => Ok(not_poisson("cohomology", &witness)),
        Err(e) => Err(e.into()),
    }
}

pub fn linearize(input: &Input, truncate: u32, base_cap: u32) -> Result<Report> {
    let pi = input.bivector();
    require_bivector(&pi)?;
    let solution = match formal_linearize(&pi, truncate, base_cap) {
        Ok(s) => s,
        Err(FormalError::NotMaurerCartan { witness, .. }) | Err(FormalError::LinearNotPoisson { witness }) => {
            return Ok(not_poisson("linearize", &witness));
        }
        Err(e) => return Err(e.into()),
    };
    let text = match &solution {
        GaugeSolution::Equivalent { x, rounds } => {
            format!("equivalent to the linear part up to grade {truncate} after {rounds} round(s)\nX = {}\n", x.value())
        }
        GaugeSolution::Obstructed { degree, cochain, base_degree_cap, .. } => format!(
            "obstructed at degree {degree} (base degree cap {base_degree_cap})\ncochain = {cochain}\n"
        ),
    };
    Ok(Report { json: solution.to_json(), text, ok: solution.is_equivalent() })
}

pub fn prolong(input: &Input, weights: Option<Vec<u8>>, grade: Option<u32>, base_cap: u32) -> Result<Report> {
    let mut pi = input.bivector();
    require_bivector(&pi)?;
    if let Some(w) = weights {
        pi = pi.with_weights(w)?;
    }
    let m = match grade {
        Some(m) => m,
        None => match pi.schouten(&pi)?.min_grade() {
            Some(g) => g,
            None => pi.max_grade().unwrap_or(0) + 1,
        },
    };
    let outcome = prolong_step(&pi, m, base_cap)?;
    let mut json = outcome.to_json();
    json["m"] = json!(m);
    let text = match &outcome {
        poisson_forge_core::ProlongOutcome::Extended { eta, .. } => {
            format!("extended through grade {m}\nη = {}\n", eta.value)
        }
        poisson_forge_core::ProlongOutcome::Obstructed { cochain, base_degree_cap, .. } => format!(
            "obstructed at grade {m} (base degree cap {base_degree_cap})\n[π,π]_{m} = {cochain}\n"
        ),
    };
    Ok(Report { json, text, ok: outcome.is_extended() })
}

/// Tolerances used for the verdict of `realize`.
pub const REALIZE_TOLERANCES: (f64, f64, f64, f64) = (1e-6, 1e-5, 1e-6, 1e-8);

pub fn realize(input: &Input, samples: usize, radius: f64, seed: u64, steps: usize) -> Result<Report> {
    let pi = input.bivector();
    require_bivector(&pi)?;
    let report = verify_realization(&pi, samples, radius, seed, steps)?;
    let (tp, td, tdet, tz) = REALIZE_TOLERANCES;
    let ok = report.within(tp, td, tdet, tz);
    let text = format!(
        "samples {} (skipped {}), radius {}, steps {}, seed {}\n\
         skew defect        {:.3e}\n\
         |dω| (h = {:.1e})   {:.3e}\n\
         min |det ω|        {:.6}\n\
         Poisson residual   {:.3e}\n\
         zero section       {:.3e}\n\
         verdict: {}\n",
        report.samples,
        report.skipped,
        report.radius,
        report.steps,
        report.seed,
        report.max_skew_defect,
        report.fd_step,
        report.max_domega,
        report.min_abs_det,
        report.max_poisson_residual,
        report.max_zero_section_residual,
        if ok { "symplectic realization" } else { "tolerances exceeded" },
    );
    let mut json = serde_json::to_value(&report)?;
    json["verdict"] = json!(ok);
    Ok(Report { json, text, ok })
}

pub fn su3(point: Option<Vec<f64>>, samples: usize, seed: u64) -> Result<Report> {
    if let Some(xi) = point {
        if xi.len() != 8 {
            bail!("--point needs 8 coordinates, got {}", xi.len());
        }
        let (p1, p2) = su3_invariants(&xi);
        let ok = p1.powi(3) >= p2 * p2 - 1e-9;
        return Ok(Report {
            json: json!({ "verb": "su3", "point": xi, "p1": p1, "p2": p2, "in_image": ok }),
            text: format!("p1 = {p1}\np2 = {p2}\np1^3 >= p2^2: {ok}\n"),
            ok,
        });
    }
    let mut circle_err: f64 = 0.0;
    for i in 1..=10 {
        for j in 0..10 {
            let r = 0.25 * i as f64;
            let theta = 2.0 * PI * j as f64 / 10.0;
            let s = weyl_circle_sample(r, theta);
            circle_err = circle_err.max((s.q1 - r * r).abs()).max((s.q2 - r.powi(3) * (3.0 * theta).sin()).abs());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_gap = f64::INFINITY;
    let mut flip_err: f64 = 0.0;
    let mut conj_err: f64 = 0.0;
    for _ in 0..samples {
        let xi: Vec<f64> = (0..8).map(|_| StandardNormal.sample(&mut rng)).collect();
        let (p1, p2) = su3_invariants(&xi);
        min_gap = min_gap.min(p1.powi(3) - p2 * p2);
        let (c1, c2) = su3_invariants(&su3_conjugate(&xi));
        flip_err = flip_err.max((c1 - p1).abs()).max((c2 + p2).abs());
        let (u1, u2) = su3_invariants(&random_su3_conjugation(&xi, &mut rng));
        conj_err = conj_err.max((u1 - p1).abs()).max((u2 - p2).abs());
    }
    let ok = circle_err < 1e-10 && min_gap >= -1e-9 && flip_err < 1e-10 && conj_err < 1e-9;
    let json = json!({
        "verb": "su3",
        "seed": seed,
        "samples": samples,
        "weyl_circle_max_error": circle_err,
        "min_p1_cubed_minus_p2_squared": min_gap,
        "outer_automorphism_max_error": flip_err,
        "conjugation_max_error": conj_err,
        "verdict": ok,
    });
    let text = format!(
        "Weyl circle (q1, q2) error    {circle_err:.3e}\n\
         min p1^3 - p2^2 ({samples} samples) {min_gap:.6}\n\
         p2 sign flip error           {flip_err:.3e}\n\
         SU(3) conjugation error      {conj_err:.3e}\n\
         verdict: {ok}\n"
    );
    Ok(Report { json, text, ok })
}

pub fn area(input: Option<&Input>, radius: f64, h: f64) -> Result<Report> {
    if radius.is_nan() || radius <= 0.0 {
        bail!("--radius must be positive");
    }
    let (n_phi, n_theta) = DEFAULT_AREA_GRID;
    let pi = match input {
        Some(i) => i.bivector(),
        None => poisson_forge_core::liealg::linear_poisson(&poisson_forge_core::liealg::preset("so3")?),
    };
    require_bivector(&pi)?;
    let a = symplectic_area(leaf_area_density(&pi, radius)?, n_phi, n_theta)?;
    let mut json = json!({ "verb": "area", "radius": radius, "grid": [n_phi, n_theta], "area": a });
    let mut text = format!("area of the leaf through the sphere of radius {radius}: {a:.12}\n");
    if input.is_none() {
        let (d1, d2) = dh_variation(radius, h)?;
        let expected = 4.0 * PI * radius;
        json["expected_area"] = json!(expected);
        json["relative_error"] = json!((a - expected).abs() / expected);
        json["dh_variation"] = json!({ "h": h, "d_sigma1": d1, "d_sigma2": d2 });
        let _ = writeln!(text, "4πr = {expected:.12}\nd/dr (σ1, σ2) = ({d1:.9}, {d2:.9})");
    }
    Ok(Report { json, text, ok: true })
}
