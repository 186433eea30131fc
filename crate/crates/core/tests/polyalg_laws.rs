mod common;

use num_traits::{One, Zero};
use poisson_forge_core::polyalg::{det_exact, rank_exact, rat, solve_linear_exact, Matrix, Poly, Rational, SolveOutcome};
use proptest::prelude::*;
use rand::Rng;

fn random_matrix(rng: &mut rand_chacha::ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| rat(rng.random_range(-3..=3), 1)).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_laws(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let n = r.random_range(1..=3);
        let a = common::poly(&mut r, n, 0, 3, 4);
        let b = common::poly(&mut r, n, 0, 3, 4);
        let c = common::poly(&mut r, n, 0, 3, 4);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(n), a.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn substitute_scale_composes(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let n = r.random_range(1..=4);
        let p = common::poly(&mut r, n, 0, 4, 5);
        let mask: Vec<usize> = (0..n).filter(|_| r.random_bool(0.5)).collect();
        let s = common::nonzero_rat(&mut r);
        let t = common::nonzero_rat(&mut r);
        let lhs = p.substitute_scale(&t, &mask).substitute_scale(&s, &mask);
        prop_assert_eq!(lhs, p.substitute_scale(&(&s * &t), &mask));
    }

    #[test]
    fn derivative_is_a_derivation(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let n = r.random_range(1..=3);
        let a = common::poly(&mut r, n, 0, 3, 3);
        let b = common::poly(&mut r, n, 0, 3, 3);
        let k = r.random_range(0..n);
        prop_assert_eq!((&a * &b).derivative(k), &(&a.derivative(k) * &b) + &(&a * &b.derivative(k)));
    }

    #[test]
    fn display_parse_roundtrip(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let n = r.random_range(1..=4);
        let p = common::poly(&mut r, n, 0, 4, 5);
        prop_assert_eq!(Poly::parse(&p.to_string(), n).unwrap(), p);
    }

    #[test]
    fn solver_invariants(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let rows = r.random_range(1..=5);
        let cols = r.random_range(1..=5);
        let a = random_matrix(&mut r, rows, cols);
        let b: Vec<Rational> = (0..rows).map(|_| rat(r.random_range(-4..=4), 1)).collect();
        match solve_linear_exact(&a, &b) {
            SolveOutcome::Feasible { particular, kernel } => {
                prop_assert_eq!(kernel.len(), cols - rank_exact(&a));
                let mut x = particular.clone();
                for k in &kernel {
                    prop_assert!(a.mul_vec(k).iter().all(Zero::is_zero));
                    let c = common::small_rat(&mut r);
                    for (xi, ki) in x.iter_mut().zip(k) {
                        *xi += &c * ki;
                    }
                }
                prop_assert_eq!(a.mul_vec(&x), b);
            }
            SolveOutcome::Infeasible { witness } => {
                prop_assert!(a.left_mul_vec(&witness).iter().all(Zero::is_zero));
                let wb: Rational = witness.iter().zip(&b).map(|(w, bi)| w * bi).sum();
                prop_assert!(!wb.is_zero());
            }
        }
    }

    #[test]
    fn determinant_rules(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let n = r.random_range(1..=4);
        let a = random_matrix(&mut r, n, n);
        let b = random_matrix(&mut r, n, n);
        let mut ab = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v: Rational = (0..n).map(|k| a.get(i, k) * b.get(k, j)).sum();
                ab.set(i, j, v);
            }
        }
        prop_assert_eq!(det_exact(&ab), det_exact(&a) * det_exact(&b));
        prop_assert_eq!(det_exact(&a.transpose()), det_exact(&a));
        prop_assert_eq!(det_exact(&a).is_zero(), rank_exact(&a) < n);
        prop_assert!(det_exact(&Matrix::identity(n)).is_one());
    }
}
