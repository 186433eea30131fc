mod common;

use std::collections::BTreeSet;

use num_traits::Zero;
use poisson_forge_core::liealg::{
    coadjoint_invariance_check, killing_classify, linear_bivector, linear_poisson, preset, random_su3_conjugation,
    su3_cubic_poly, su3_invariants, su3_p1_poly, validate, LieError, RawConstants,
};
use poisson_forge_core::poisson::{casimir_basis, check_poisson};
use poisson_forge_core::polyalg::{rat_int, solve_linear_exact, Matrix, Monomial, Poly, Rational, SolveOutcome};
use poisson_forge_core::LieAlgebraSpec;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Constants in the basis `e'_b = e_b + s e_a`, applied for a few random
/// shears. The change of basis keeps Jacobi.
fn sheared(spec: &LieAlgebraSpec, r: &mut ChaCha8Rng) -> LieAlgebraSpec {
    let n = spec.dim();
    let mut raw = spec.raw();
    for _ in 0..3 {
        let a = r.random_range(0..n);
        let b = r.random_range(0..n);
        if a == b {
            continue;
        }
        let s = common::nonzero_rat(r);
        // P = I + s E_ab, P^{-1} = I - s E_ab
        let p = |x: usize, y: usize| -> Rational {
            let mut v = if x == y { rat_int(1) } else { Rational::zero() };
            if (x, y) == (a, b) {
                v += &s;
            }
            v
        };
        let pinv = |x: usize, y: usize| -> Rational {
            let mut v = if x == y { rat_int(1) } else { Rational::zero() };
            if (x, y) == (a, b) {
                v -= &s;
            }
            v
        };
        let mut next = RawConstants::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = Rational::zero();
                    for x in 0..n {
                        for y in 0..n {
                            for c in 0..n {
                                let term = p(x, i) * p(y, j) * raw.get(x, y, c) * pinv(k, c);
                                acc += term;
                            }
                        }
                    }
                    next.c[k][i][j] = acc;
                }
            }
        }
        raw = next;
    }
    validate(raw).expect("basis change keeps Jacobi")
}

fn random_algebra(r: &mut ChaCha8Rng) -> LieAlgebraSpec {
    let names = ["so3", "su2", "sl2"];
    let first = preset(names[r.random_range(0..3)]).unwrap();
    let spec = match r.random_range(0..3) {
        0 => first,
        1 => first.direct_sum(&preset(names[r.random_range(0..3)]).unwrap()),
        _ => first.direct_sum(&validate(RawConstants::zero(r.random_range(1..=2))).unwrap()),
    };
    sheared(&spec, r)
}

#[test]
fn linear_structures_are_poisson() {
    let mut r = common::rng(11);
    for _ in 0..40 {
        let spec = random_algebra(&mut r);
        let pi = linear_poisson(&spec);
        assert!(check_poisson(&pi).unwrap().is_poisson);
        assert_eq!(pi.grade_component(1).value, pi);
    }
}

#[test]
fn killing_form_is_invariant() {
    let mut r = common::rng(12);
    let mut specs: Vec<LieAlgebraSpec> = ["so3", "su2", "sl2", "su3"].iter().map(|n| preset(n).unwrap()).collect();
    specs.extend((0..10).map(|_| random_algebra(&mut r)));
    for spec in specs {
        let n = spec.dim();
        let k = spec.killing_form();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // K([e_x,e_y], e_z) + K(e_y, [e_x,e_z])
                    let mut acc = Rational::zero();
                    for m in 0..n {
                        acc += spec.constant(x, y, m) * k.get(m, z);
                        acc += spec.constant(x, z, m) * k.get(y, m);
                    }
                    assert!(acc.is_zero());
                }
            }
        }
    }
}

#[test]
fn classification_of_presets() {
    for (name, semisimple, compact) in [("so3", true, true), ("su2", true, true), ("sl2", true, false), ("su3", true, true)] {
        let c = killing_classify(&preset(name).unwrap());
        assert_eq!((c.semisimple, c.compact_type), (semisimple, compact), "{name}");
    }
    let abelian = validate(RawConstants::zero(3)).unwrap();
    assert!(!killing_classify(&abelian).semisimple);
    let mut r = common::rng(13);
    for _ in 0..10 {
        let spec = random_algebra(&mut r);
        let c = killing_classify(&spec);
        // basis changes preserve the class of the summands
        if spec.dim() == 3 {
            assert!(c.semisimple);
        }
    }
}

#[test]
fn random_tables_without_jacobi_are_rejected() {
    let mut r = common::rng(14);
    let mut rejected = 0;
    for _ in 0..100 {
        let mut raw = RawConstants::zero(3);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            for k in 0..3 {
                raw.set(i, j, k, rat_int(r.random_range(-2..=2)));
            }
        }
        let poisson = check_poisson(&linear_bivector(&raw)).unwrap().is_poisson;
        match validate(raw.clone()) {
            Ok(_) => assert!(poisson),
            Err(LieError::Jacobi { i, j, k, component, .. }) => {
                assert!(!poisson);
                assert_eq!((i, j, k), (1, 2, 3));
                let (_, _, _, m, res) = raw.jacobi_violation().unwrap();
                assert_eq!(component, m + 1);
                assert!(!res.is_zero());
                rejected += 1;
            }
            Err(e) => panic!("{e}"),
        }
    }
    assert!(rejected > 50);
}

fn in_span(f: &Poly, gens: &[Poly]) -> bool {
    let monos: BTreeSet<Monomial> =
        std::iter::once(f).chain(gens).flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    let a = Matrix::from_rows(monos.iter().map(|m| gens.iter().map(|g| g.coeff(m)).collect()).collect());
    let b: Vec<Rational> = monos.iter().map(|m| f.coeff(m)).collect();
    matches!(solve_linear_exact(&a, &b), SolveOutcome::Feasible { .. })
}

#[test]
fn su3_casimirs_are_the_invariants() {
    let pi = linear_poisson(&preset("su3").unwrap());
    let basis = casimir_basis(&pi, 3).unwrap();
    assert_eq!(basis.len(), 3);
    let gens = [Poly::one(8), su3_p1_poly(), su3_cubic_poly()];
    for g in &gens[1..] {
        for i in 0..8 {
            let x = Poly::var(8, i);
            assert!(poisson_forge_core::poisson::poisson_bracket(&pi, g, &x).unwrap().is_zero());
        }
    }
    let mut r = common::rng(15);
    for c in &basis {
        assert!(in_span(c, &gens));
        // numeric: c is a combination of 1, p1, p2 with p2 = -√6 q
        let pts: Vec<Vec<f64>> = (0..12).map(|_| (0..8).map(|_| r.sample(StandardNormal)).collect()).collect();
        let rows: Vec<[f64; 3]> = pts
            .iter()
            .map(|x| {
                let (p1, p2) = su3_invariants(x);
                [1.0, p1, p2]
            })
            .collect();
        let a = nalgebra::DMatrix::from_fn(rows.len(), 3, |i, j| rows[i][j]);
        let b = nalgebra::DVector::from_iterator(pts.len(), pts.iter().map(|x| c.eval_f64(x)));
        let coef = a.clone().svd(true, true).solve(&b, 1e-12).unwrap();
        assert!((a * coef - b).amax() < 1e-10);
    }
}

#[test]
fn su3_invariants_under_conjugation() {
    let mut r = common::rng(16);
    for _ in 0..200 {
        let xi: Vec<f64> = (0..8).map(|_| r.sample(StandardNormal)).collect();
        let (p1, p2) = su3_invariants(&xi);
        let (q1, q2) = su3_invariants(&random_su3_conjugation(&xi, &mut r));
        assert!((p1 - q1).abs() < 1e-9 && (p2 - q2).abs() < 1e-9);
    }
}

#[test]
fn coadjoint_flow_preserves_casimirs() {
    let so3 = preset("so3").unwrap();
    let c = Poly::parse("x1^2 + x2^2 + x3^2", 3).unwrap();
    assert!(coadjoint_invariance_check(&so3, &c, 20, 7) < 1e-9);
    let drift = coadjoint_invariance_check(&preset("su3").unwrap(), &su3_cubic_poly(), 10, 8);
    // RK4 truncation error with 400 steps on a cubic of size ~10
    assert!(drift < 1e-7, "{drift}");
    assert!(coadjoint_invariance_check(&so3, &Poly::parse("x1", 3).unwrap(), 20, 7) > 1e-3);
}

#[test]
fn json_roundtrip() {
    for name in ["so3", "su2", "sl2", "su3"] {
        let spec = preset(name).unwrap();
        let text = serde_json::to_string(&spec.to_json()).unwrap();
        let back = LieAlgebraSpec::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, spec);
    }
}
