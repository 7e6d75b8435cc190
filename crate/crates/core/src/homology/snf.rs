//! Smith normal form over the integers.
//!
//! The elimination first runs in `i64` with checked arithmetic; if any
//! intermediate value overflows it restarts in arbitrary precision. Pivots
//! are always the smallest-magnitude nonzero entry of the active block.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

use super::matrix::IntMatrix;

/// Diagonal `d_1 | d_2 | ...` with `U · A · V = D`.
/// `(U, V)` with `U·A·V = D`.
pub type Transforms = (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// `min(rows, cols)` non-negative entries forming a divisibility chain.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    /// `(U, V)`, unimodular, when requested.
    pub transforms: Option<Transforms>,
}

impl SnfResult {
    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect()
    }
}

trait Scalar:
    Clone + PartialOrd + Zero + One + Signed + Integer + CheckedAdd + CheckedSub + CheckedMul
{
    fn from_i64(x: i64) -> Self;
    fn into_big(self) -> BigInt;
}

impl Scalar for i64 {
    fn from_i64(x: i64) -> Self {
        x
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Scalar for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    run(a, false)
}

pub fn smith_normal_form_with_transforms(a: &IntMatrix) -> SnfResult {
    run(a, true)
}

fn run(a: &IntMatrix, with_transforms: bool) -> SnfResult {
    match Elimination::<i64>::new(a, with_transforms).reduce() {
        Some(result) => result,
        None => Elimination::<BigInt>::new(a, with_transforms)
            .reduce()
            .expect("arbitrary precision cannot overflow"),
    }
}

struct Elimination<T> {
    a: Vec<Vec<T>>,
    u: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
    rows: usize,
    cols: usize,
}

fn identity<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

/// `dst -= q * src`, elementwise.
fn axpy<T: Scalar>(dst: &mut [T], src: &[T], q: &T) -> Option<()> {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.checked_sub(&q.checked_mul(s)?)?;
        }
    }
    Some(())
}

impl<T: Scalar> Elimination<T> {
    fn new(m: &IntMatrix, with_transforms: bool) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        let mut a = vec![vec![T::zero(); cols]; rows];
        #[allow(clippy::needless_range_loop)]
        for j in 0..cols {
            for &(i, x) in m.column(j) {
                a[i][j] = T::from_i64(x);
            }
        }
        Self {
            a,
            u: with_transforms.then(|| identity(rows)),
            v: with_transforms.then(|| identity(cols)),
            rows,
            cols,
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap(i, k);
        if let Some(u) = &mut self.u {
            u.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        for row in &mut self.a {
            row.swap(j, k);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(j, k);
            }
        }
    }

    /// `row_i -= q * row_k`
    fn row_op(&mut self, i: usize, k: usize, q: &T) -> Option<()> {
        let src = self.a[k].clone();
        axpy(&mut self.a[i], &src, q)?;
        if let Some(u) = &mut self.u {
            let src = u[k].clone();
            axpy(&mut u[i], &src, q)?;
        }
        Some(())
    }

    /// `col_j -= q * col_k`
    fn col_op(&mut self, j: usize, k: usize, q: &T) -> Option<()> {
        for row in &mut self.a {
            if !row[k].is_zero() {
                row[j] = row[j].checked_sub(&q.checked_mul(&row[k])?)?;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v {
                if !row[k].is_zero() {
                    row[j] = row[j].checked_sub(&q.checked_mul(&row[k])?)?;
                }
            }
        }
        Some(())
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Smallest nonzero entry in row `t` or column `t` of the active block.
    fn smallest_on_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = self.a[t][t].abs();
        for i in t + 1..self.rows {
            let x = self.a[i][t].abs();
            if !x.is_zero() && (best_abs.is_zero() || x < best_abs) {
                best = (i, t);
                best_abs = x;
            }
        }
        for j in t + 1..self.cols {
            let x = self.a[t][j].abs();
            if !x.is_zero() && (best_abs.is_zero() || x < best_abs) {
                best = (t, j);
                best_abs = x;
            }
        }
        best
    }

    /// Clears row and column `t` except for the pivot.
    fn clear_cross(&mut self, t: usize) -> Option<()> {
        loop {
            let (pi, pj) = self.smallest_on_cross(t);
            if pi != t {
                self.swap_rows(t, pi);
            }
            if pj != t {
                self.swap_cols(t, pj);
            }
            let mut remainder = false;
            for i in t + 1..self.rows {
                if self.a[i][t].is_zero() {
                    continue;
                }
                let q = self.a[i][t].div_floor(&self.a[t][t]);
                self.row_op(i, t, &q)?;
                remainder |= !self.a[i][t].is_zero();
            }
            for j in t + 1..self.cols {
                if self.a[t][j].is_zero() {
                    continue;
                }
                let q = self.a[t][j].div_floor(&self.a[t][t]);
                self.col_op(j, t, &q)?;
                remainder |= !self.a[t][j].is_zero();
            }
            if !remainder {
                return Some(());
            }
        }
    }

    fn reduce(mut self) -> Option<SnfResult> {
        let steps = self.rows.min(self.cols);
        let mut rank = 0;
        for t in 0..steps {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                self.clear_cross(t)?;
                // the pivot must divide the rest of the block
                let offender = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&self.a[t][t]))
                });
                match offender {
                    Some(i) => self.row_op(t, i, &T::from_i64(-1))?,
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                for x in &mut self.a[t] {
                    *x = -x.clone();
                }
                if let Some(u) = &mut self.u {
                    for x in &mut u[t] {
                        *x = -x.clone();
                    }
                }
            }
            rank += 1;
        }
        let diagonal = (0..steps).map(|t| self.a[t][t].clone().into_big()).collect();
        let to_big = |m: Vec<Vec<T>>| -> Vec<Vec<BigInt>> {
            m.into_iter()
                .map(|row| row.into_iter().map(Scalar::into_big).collect())
                .collect()
        };
        let transforms = match (self.u, self.v) {
            (Some(u), Some(v)) => Some((to_big(u), to_big(v))),
            _ => None,
        };
        Some(SnfResult {
            diagonal,
            rank,
            transforms,
        })
    }
}

/// Rank over the prime field `F_p`.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> usize {
    assert!((2..(1 << 32)).contains(&p), "modulus must be a prime below 2^32");
    let reduce = |x: i64| x.rem_euclid(p as i64) as u64;
    let mut m: Vec<Vec<u64>> = a
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(reduce).collect())
        .collect();
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    for j in 0..cols {
        let Some(pivot) = (rank..rows).find(|&i| m[i][j] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][j], p - 2, p);
        for x in &mut m[rank] {
            *x = *x * inv % p;
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[j] != 0 {
                let factor = row[j];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
