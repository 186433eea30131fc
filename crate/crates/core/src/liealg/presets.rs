use num_complex::Complex;
use num_traits::Zero;

use super::{validate, LieAlgebraSpec, LieError, RawConstants};
use crate::polyalg::{rat, rat_int, Rational};

/// Exact complex number with rational parts.
pub type Gaussian = Complex<Rational>;
/// Square matrix of Gaussian rationals, row-major.
pub type GMatrix = Vec<Vec<Gaussian>>;

pub(crate) fn gzero(n: usize) -> GMatrix {
    vec![vec![Gaussian::zero(); n]; n]
}

fn g(re: Rational, im: Rational) -> Gaussian {
    Gaussian::new(re, im)
}

fn real(v: i64) -> Gaussian {
    g(rat_int(v), rat_int(0))
}

fn imag(v: Rational) -> Gaussian {
    g(rat_int(0), v)
}

pub(crate) fn gmul(a: &GMatrix, b: &GMatrix) -> GMatrix {
    let n = a.len();
    let mut out = gzero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub(crate) fn commutator(a: &GMatrix, b: &GMatrix) -> GMatrix {
    let ab = gmul(a, b);
    let ba = gmul(b, a);
    ab.iter()
        .zip(&ba)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

/// `y += c * x`
pub(crate) fn gaxpy(y: &mut GMatrix, c: &Rational, x: &GMatrix) {
    if c.is_zero() {
        return;
    }
    for (ry, rx) in y.iter_mut().zip(x) {
        for (a, b) in ry.iter_mut().zip(rx) {
            *a = &*a + b.scale(c.clone());
        }
    }
}

pub(crate) fn gtrace(a: &GMatrix) -> Gaussian {
    (0..a.len()).fold(Gaussian::zero(), |acc, i| acc + &a[i][i])
}

fn from_int_rows(rows: &[&[i64]]) -> GMatrix {
    rows.iter().map(|r| r.iter().map(|&v| real(v)).collect()).collect()
}

fn scale_i_half(m: &GMatrix) -> GMatrix {
    let f = imag(rat(1, 2));
    m.iter().map(|r| r.iter().map(|z| z * &f).collect()).collect()
}

pub fn preset_names() -> [&'static str; 4] {
    ["so3", "su2", "sl2", "su3"]
}

pub fn preset(name: &str) -> Result<LieAlgebraSpec, LieError> {
    let spec = match name {
        "so3" => epsilon_algebra(1, so3_basis()),
        "su2" => epsilon_algebra(-1, su2_basis()),
        "sl2" => sl2(),
        "su3" => su3(),
        other => return Err(LieError::UnknownPreset(other.to_string())),
    };
    Ok(spec.expect("preset constants are valid"))
}

/// `[e_a, e_b] = sign ε_abc e_c`.
fn epsilon_algebra(sign: i64, basis: Vec<GMatrix>) -> Result<LieAlgebraSpec, LieError> {
    let mut raw = RawConstants::zero(3);
    raw.set(0, 1, 2, rat_int(sign));
    raw.set(1, 2, 0, rat_int(sign));
    raw.set(2, 0, 1, rat_int(sign));
    validate(raw)?.with_basis(basis)
}

/// `(L_a)_{bc} = -ε_abc`
fn so3_basis() -> Vec<GMatrix> {
    vec![
        from_int_rows(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
        from_int_rows(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]),
        from_int_rows(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]),
    ]
}

fn pauli() -> Vec<GMatrix> {
    let z = real(0);
    let one = real(1);
    let i = imag(rat_int(1));
    vec![
        vec![vec![z.clone(), one.clone()], vec![one.clone(), z.clone()]],
        vec![vec![z.clone(), -i.clone()], vec![i, z.clone()]],
        vec![vec![one, z.clone()], vec![z, real(-1)]],
    ]
}

/// `i σ_a / 2`
fn su2_basis() -> Vec<GMatrix> {
    pauli().iter().map(scale_i_half).collect()
}

/// Basis `(e, f, h)` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
fn sl2() -> Result<LieAlgebraSpec, LieError> {
    let mut raw = RawConstants::zero(3);
    raw.set(0, 1, 2, rat_int(1));
    raw.set(2, 0, 0, rat_int(2));
    raw.set(2, 1, 1, rat_int(-2));
    let basis = vec![
        from_int_rows(&[&[0, 1], &[0, 0]]),
        from_int_rows(&[&[0, 0], &[1, 0]]),
        from_int_rows(&[&[1, 0], &[0, -1]]),
    ];
    validate(raw)?.with_basis(basis)
}

/// `e_a = (i/2) λ_a` for the Gell-Mann matrices `λ_1..λ_7`, and
/// `e_8 = (i/2) diag(1, 1, -2)`. The basis is orthogonal for `-tr(AB)` with
/// norms 1/2 (a ≤ 7) and 3/2.
pub(crate) fn su3_basis() -> Vec<GMatrix> {
    let z = || real(0);
    let one = || real(1);
    let i = || imag(rat_int(1));
    let mi = || imag(rat_int(-1));
    let lambdas: Vec<GMatrix> = vec![
        vec![vec![z(), one(), z()], vec![one(), z(), z()], vec![z(), z(), z()]],
        vec![vec![z(), mi(), z()], vec![i(), z(), z()], vec![z(), z(), z()]],
        vec![vec![one(), z(), z()], vec![z(), real(-1), z()], vec![z(), z(), z()]],
        vec![vec![z(), z(), one()], vec![z(), z(), z()], vec![one(), z(), z()]],
        vec![vec![z(), z(), mi()], vec![z(), z(), z()], vec![i(), z(), z()]],
        vec![vec![z(), z(), z()], vec![z(), z(), one()], vec![z(), one(), z()]],
        vec![vec![z(), z(), z()], vec![z(), z(), mi()], vec![z(), i(), z()]],
        vec![vec![one(), z(), z()], vec![z(), one(), z()], vec![z(), z(), real(-2)]],
    ];
    lambdas.iter().map(scale_i_half).collect()
}

fn su3() -> Result<LieAlgebraSpec, LieError> {
    let basis = su3_basis();
    let norms: Vec<Rational> = basis.iter().map(|e| -gtrace(&gmul(e, e)).re).collect();
    let mut raw = RawConstants::zero(8);
    for i in 0..8 {
        for j in i + 1..8 {
            let comm = commutator(&basis[i], &basis[j]);
            for k in 0..8 {
                let t = gtrace(&gmul(&comm, &basis[k]));
                debug_assert!(t.im.is_zero());
                raw.set(i, j, k, -t.re / &norms[k]);
            }
        }
    }
    validate(raw)?.with_basis(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su3_basis_orthogonal() {
        let b = su3_basis();
        for i in 0..8 {
            for j in 0..8 {
                let ip = -gtrace(&gmul(&b[i], &b[j]));
                let expected = match (i == j, i) {
                    (false, _) => rat_int(0),
                    (true, 7) => rat(3, 2),
                    (true, _) => rat(1, 2),
                };
                assert_eq!(ip, g(expected, rat_int(0)));
            }
        }
    }

    #[test]
    fn su2_matches_so3_up_to_sign() {
        let so3 = preset("so3").unwrap();
        let su2 = preset("su2").unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(su2.constant(i, j, k), &-so3.constant(i, j, k).clone());
                }
            }
        }
    }

    #[test]
    fn presets_valid() {
        for name in preset_names() {
            let p = preset(name).unwrap();
            assert!(p.basis().is_some());
            assert!(validate(p.raw()).is_ok());
        }
        assert_eq!(preset("su3").unwrap().dim(), 8);
        assert!(matches!(preset("g2"), Err(LieError::UnknownPreset(_))));
    }
}
