use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(data: Vec<Vec<Rational>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `w^T A`
    pub fn left_mul_vec(&self, w: &[Rational]) -> Vec<Rational> {
        assert_eq!(w.len(), self.rows, "vector length mismatch");
        let mut out = vec![Rational::zero(); self.cols];
        for (row, wi) in self.data.iter().zip(w) {
            if wi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o += a * wi;
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Feasible { particular: Vec<Rational>, kernel: Vec<Vec<Rational>> },
    /// `witness^T A = 0` and `witness . b != 0`.
    Infeasible { witness: Vec<Rational> },
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible { .. })
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|r| !r.is_zero())
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter().map(|r| (r * Rational::from_integer(lcm.clone())).to_integer()).collect()
}

fn normalize(row: &mut [BigInt]) {
    let g = row.iter().filter(|v| !v.is_zero()).fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v = &*v / &g;
        }
    }
}

/// `target := p * target - f * source`, then divide out the row content.
fn eliminate(target: &mut [BigInt], source: &[BigInt], p: &BigInt, f: &BigInt) {
    for (t, s) in target.iter_mut().zip(source) {
        let scaled = if t.is_zero() { BigInt::zero() } else { &*t * p };
        *t = if s.is_zero() { scaled } else { scaled - f * s };
    }
    normalize(target);
}

/// Integer row echelon form of the given rows restricted to the first
/// `ncols` columns used for pivoting. Returns pivot columns in row order.
fn echelon(rows: &mut Vec<Vec<BigInt>>, ncols: usize) -> Vec<usize> {
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    for r in rows.iter_mut() {
        normalize(r);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let p = pivot_row[c].clone();
        for row in tail.iter_mut() {
            if !row[c].is_zero() {
                let f = row[c].clone();
                eliminate(row, pivot_row, &p, &f);
            }
        }
        pivots.push(c);
        r += 1;
        // rows reduced to zero drop out so later pivot searches stay short
        let keep: Vec<Vec<BigInt>> = rows
            .drain(r..)
            .filter(|row| row.iter().any(|v| !v.is_zero()))
            .collect();
        rows.extend(keep);
    }
    pivots
}

/// Exact rank of `a`.
pub fn rank_exact(a: &Matrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = a.data.iter().map(|r| integer_row(r)).collect();
    echelon(&mut rows, a.cols).len()
}

/// Solves `A x = b` exactly.
///
/// Fraction-free elimination on the integer-scaled augmented matrix, pivoting
/// on the first row with a nonzero entry in the leftmost unresolved column.
/// A feasible system yields the reduced-row-echelon particular solution
/// (free variables zero) and one kernel vector per free column.
pub fn solve_linear_exact(a: &Matrix, b: &[Rational]) -> SolveOutcome {
    assert_eq!(b.len(), a.rows, "right-hand side length mismatch");
    let n = a.cols;
    let mut rows: Vec<Vec<BigInt>> = a
        .data
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut full = r.clone();
            full.push(bi.clone());
            integer_row(&full)
        })
        .collect();
    let pivots = echelon(&mut rows, n);
    if rows.len() > pivots.len() {
        return SolveOutcome::Infeasible { witness: infeasibility_witness(a, b) };
    }
    // back elimination to reduced form
    for k in (0..pivots.len()).rev() {
        let c = pivots[k];
        let (head, tail) = rows.split_at_mut(k);
        let pivot_row = &tail[0];
        let p = pivot_row[c].clone();
        for row in head.iter_mut() {
            if !row[c].is_zero() {
                let f = row[c].clone();
                eliminate(row, pivot_row, &p, &f);
            }
        }
    }
    let mut particular = vec![Rational::zero(); n];
    for (k, &c) in pivots.iter().enumerate() {
        particular[c] = Rational::new(rows[k][n].clone(), rows[k][c].clone());
    }
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut kernel = Vec::new();
    for f in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Rational::zero(); n];
        v[f] = Rational::one();
        for (k, &c) in pivots.iter().enumerate() {
            if !rows[k][f].is_zero() {
                v[c] = -Rational::new(rows[k][f].clone(), rows[k][c].clone());
            }
        }
        kernel.push(v);
    }
    SolveOutcome::Feasible { particular, kernel }
}

/// A vector `w` with `w^T A = 0`, `w . b = 1`, found by solving the
/// transposed system `[A^T; b^T] w = e_last`.
fn infeasibility_witness(a: &Matrix, b: &[Rational]) -> Vec<Rational> {
    let mut t = a.transpose().data;
    t.push(b.to_vec());
    let m = Matrix::from_rows_with_cols(t, a.rows);
    let mut rhs = vec![Rational::zero(); a.cols + 1];
    rhs[a.cols] = Rational::one();
    match solve_linear_exact(&m, &rhs) {
        SolveOutcome::Feasible { particular, .. } => particular,
        SolveOutcome::Infeasible { .. } => unreachable!("Fredholm alternative violated"),
    }
}

impl Matrix {
    fn from_rows_with_cols(data: Vec<Vec<Rational>>, cols: usize) -> Self {
        Matrix { rows: data.len(), cols, data }
    }
}

/// Exact determinant of a square matrix by rational elimination.
pub fn det_exact(a: &Matrix) -> Rational {
    assert_eq!(a.rows, a.cols, "determinant of a non-square matrix");
    let mut m = a.data.clone();
    let n = a.rows;
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..n {
                let v = &f * &m[c][j];
                m[i][j] -= v;
            }
        }
    }
    det
}

/// `true` when every entry is zero.
#[cfg(test)]
fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}
