//! Integer vectors and the small amount of exact linear algebra the
//! root-datum code needs.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// An element of the character lattice of the dual torus, in the datum's
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, c: i64) -> Self {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: i64, other: &Weight) -> Self {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + c * b)
                .collect(),
        )
    }

    /// Sum of absolute values of the coordinates; the size measure used to
    /// bound enumerations.
    pub fn height(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts `1,0,-1` with or without surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Ok(Weight(Vec::new()));
        }
        body.split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dense integer matrix stored as rows.
pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_vec(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Row vector times matrix: the contragredient-style action on covectors.
pub fn vec_mat(v: &[i64], m: &IntMatrix) -> Vec<i64> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| v.iter().zip(m).map(|(x, row)| x * row[j]).sum())
        .collect()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Inverse of a square integer matrix over the rationals.
pub fn rational_inverse(m: &IntMatrix) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x)).collect();
            r.extend((0..n).map(|j| Rational::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != Rational::from_integer(0))?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && a[r][col] != Rational::from_integer(0) {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Integer basis of `{x in Z^cols : m x = 0}`. The result spans the
/// saturated kernel: column reduction with a unimodular transform, whose
/// columns over the zero part of the echelon form are the basis.
pub fn integer_kernel(m: &IntMatrix, cols: usize) -> IntMatrix {
    let rows = m.len();
    let mut a: Vec<Vec<i64>> = m.clone();
    let mut u = identity(cols);
    let mut pivot_col = 0;
    for r in 0..rows {
        if pivot_col >= cols {
            break;
        }
        // gcd-reduce row r across columns pivot_col.. until one nonzero remains
        loop {
            let nz: Vec<usize> = (pivot_col..cols).filter(|&c| a[r][c] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&c) = nz.first() {
                    swap_cols(&mut a, &mut u, c, pivot_col);
                    pivot_col += 1;
                }
                break;
            }
            let &small = nz.iter().min_by_key(|&&c| a[r][c].abs()).unwrap();
            for &c in &nz {
                if c != small {
                    let f = a[r][c].div_euclid(a[r][small]);
                    add_col(&mut a, &mut u, c, small, -f);
                }
            }
        }
    }
    (pivot_col..cols)
        .map(|c| (0..cols).map(|i| u[i][c]).collect())
        .collect()
}

fn swap_cols(a: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize) {
    for row in a.iter_mut().chain(u.iter_mut()) {
        row.swap(i, j);
    }
}

/// column `dst` += f * column `src`
fn add_col(a: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, f: i64) {
    for row in a.iter_mut().chain(u.iter_mut()) {
        row[dst] += f * row[src];
    }
}

/// Every integer vector of length `rank` with coordinate absolute values
/// summing to at most `max_height`, in lexicographic order.
pub fn vectors_up_to_height(rank: usize, max_height: i64) -> Vec<Weight> {
    fn go(rank: usize, budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if prefix.len() == rank {
            out.push(Weight(prefix.clone()));
            return;
        }
        for x in -budget..=budget {
            prefix.push(x);
            go(rank, budget - x.abs(), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, max_height.max(0), &mut Vec::new(), &mut out);
    out
}
