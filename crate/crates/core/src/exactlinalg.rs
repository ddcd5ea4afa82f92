//! Exact linear algebra over ℤ, ℚ and 𝔽_p.

// row operations read more plainly with explicit indices
#![allow(clippy::needless_range_loop)]

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    /// Integers modulo a prime.
    Prime(u64),
}

impl Ring {
    /// `p = 0` stands for ℚ.
    pub fn from_characteristic(p: u64) -> Ring {
        if p == 0 {
            Ring::Rationals
        } else {
            Ring::Prime(p)
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Z"),
            Ring::Rationals => f.write_str("Q"),
            Ring::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> ExactMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        ExactMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn to_grid(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    fn to_residues(&self, p: u64) -> Vec<Vec<u64>> {
        let bp = BigInt::from(p);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|x| {
                        let v = x.mod_floor(&bp);
                        u64::try_from(v).expect("residue fits")
                    })
                    .collect()
            })
            .collect()
    }
}

/// Rank over the given ring (over ℤ this is the rank over ℚ).
pub fn rank(m: &ExactMatrix, ring: Ring) -> usize {
    match ring {
        Ring::Integers | Ring::Rationals => bareiss_rank(m.to_grid()),
        Ring::Prime(p) => rank_mod_p(m.to_residues(p), p),
    }
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * a as u128 % p as u128) as u64;
        }
        a = (a as u128 * a as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Rank of a matrix already reduced modulo `p`.
pub fn rank_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_multiple_of(p)) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for j in c..cols {
            a[r][j] = (a[r][j] as u128 * inv as u128 % p as u128) as u64;
        }
        for i in 0..rows {
            if i == r || a[i][c] == 0 {
                continue;
            }
            let f = a[i][c];
            for j in c..cols {
                let sub = (f as u128 * a[r][j] as u128 % p as u128) as u64;
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Elementary divisors `d_1 | d_2 | …` (positive, one per unit of rank).
pub fn smith_normal_form(m: &ExactMatrix) -> Vec<BigInt> {
    let mut a = m.to_grid();
    let rows = m.rows;
    let cols = m.cols;
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let bad = (t + 1..rows).find_map(|i| {
                (t + 1..cols).find(|&j| !(&a[i][j] % &a[t][t]).is_zero()).map(|_| i)
            });
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

pub fn is_unimodular(m: &ExactMatrix) -> bool {
    m.rows == m.cols && {
        let d = smith_normal_form(m);
        d.len() == m.rows && d.iter().all(|x| x.is_one())
    }
}

/// Coefficients expressing `target` in terms of `basis`, if it lies in the span.
pub fn solve_in_span(target: &[BigInt], basis: &[Vec<BigInt>], ring: Ring) -> Option<Vec<Scalar>> {
    let k = basis.len();
    let dim = target.len();
    assert!(basis.iter().all(|b| b.len() == dim), "dimension mismatch");
    match ring {
        Ring::Integers | Ring::Rationals => {
            // augmented system: columns are basis vectors, last column the target
            let mut a: Vec<Vec<BigRational>> = (0..dim)
                .map(|r| {
                    let mut row: Vec<BigRational> =
                        basis.iter().map(|b| BigRational::from_integer(b[r].clone())).collect();
                    row.push(BigRational::from_integer(target[r].clone()));
                    row
                })
                .collect();
            let pivots = rref(&mut a, k, |x| x.is_zero(), |x| x.recip(), |x, y| x * y, |x, y| x - y);
            extract(&a, &pivots, k, BigRational::zero()).map(|v| v.into_iter().map(Scalar::Rational).collect())
        }
        Ring::Prime(p) => {
            let bp = BigInt::from(p);
            let red = |x: &BigInt| u64::try_from(x.mod_floor(&bp)).expect("residue fits");
            let mut a: Vec<Vec<u64>> = (0..dim)
                .map(|r| {
                    let mut row: Vec<u64> = basis.iter().map(|b| red(&b[r])).collect();
                    row.push(red(&target[r]));
                    row
                })
                .collect();
            let mul = |x: &u64, y: &u64| (*x as u128 * *y as u128 % p as u128) as u64;
            let pivots = rref(&mut a, k, |x| *x == 0, |x| inv_mod(*x, p), mul, |x, y| (x + p - y) % p);
            extract(&a, &pivots, k, 0).map(|v| v.into_iter().map(Scalar::Residue).collect())
        }
    }
}

fn rref<T: Clone>(
    a: &mut [Vec<T>],
    k: usize,
    is_zero: impl Fn(&T) -> bool,
    inv: impl Fn(&T) -> T,
    mul: impl Fn(&T, &T) -> T,
    sub: impl Fn(&T, &T) -> T,
) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(piv) = (r..rows).find(|&i| !is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, piv);
        let iv = inv(&a[r][c]);
        for j in c..=k {
            a[r][j] = mul(&a[r][j], &iv);
        }
        for i in 0..rows {
            if i != r && !is_zero(&a[i][c]) {
                let f = a[i][c].clone();
                for j in c..=k {
                    let v = mul(&f, &a[r][j]);
                    a[i][j] = sub(&a[i][j], &v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn extract<T>(a: &[Vec<T>], pivots: &[usize], k: usize, zero: T) -> Option<Vec<T>>
where
    T: Clone + PartialEq,
{
    if a.iter().skip(pivots.len()).any(|row| row[k] != zero) {
        return None;
    }
    let mut out = vec![zero; k];
    for (r, &c) in pivots.iter().enumerate() {
        out[c] = a[r][k].clone();
    }
    Some(out)
}
