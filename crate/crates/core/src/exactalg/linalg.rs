//! Dense rational matrices with fraction-free elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{common_denominator, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(RationalMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Invalid("matrix shapes do not compose".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Q, &Q) -> Q) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Invalid("matrix shapes differ".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Each row scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = common_denominator(row);
                row.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        exact_rank(self)
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<Q> {
        if self.rows != self.cols {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(Q::one());
        }
        let scale: Q = (0..self.rows)
            .map(|i| Q::from_integer(common_denominator(self.row(i))))
            .fold(Q::one(), |a, b| a * b);
        let mut a = self.integer_rows();
        let e = bareiss(&mut a, self.cols);
        if e.rank < self.rows {
            return Ok(Q::zero());
        }
        let mut d = Q::from_integer(a[self.rows - 1][self.cols - 1].clone());
        if e.swaps % 2 == 1 {
            d = -d;
        }
        Ok(d / scale)
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        if self.rows != self.cols {
            return Err(Error::Invalid("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(None);
            };
            a.swap(col, p);
            inv.swap(col, p);
            let piv = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &piv;
                inv[col][j] /= &piv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
        Ok(Some(Self::from_rows(inv)?))
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

struct Echelon {
    rank: usize,
    swaps: usize,
    pivots: Vec<usize>,
}

/// Bareiss elimination in place on the first `cols` columns (the rest ride along).
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> Echelon {
    let rows = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let piv = &pivot_row[col];
        for row in rest.iter_mut() {
            let f = row[col].clone();
            for j in col + 1..width {
                let v = piv * &row[j] - &f * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        // Rows above the pivot are untouched; scale consistency only matters below.
        prev = piv.clone();
        pivots.push(col);
        rank += 1;
    }
    Echelon { rank, swaps, pivots }
}

/// Rank by fraction-free elimination.
pub fn exact_rank(m: &RationalMatrix) -> usize {
    let mut a = m.integer_rows();
    bareiss(&mut a, m.cols).rank
}

/// Result of solving `M·x = v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// A particular solution with all free variables set to zero.
    pub x: Vec<Q>,
    pub rank: usize,
    /// True when the solution is unique (full column rank).
    pub unique: bool,
}

/// Exact solve; `None` when the system is inconsistent.
pub fn exact_solve(m: &RationalMatrix, v: &[Q]) -> Result<Option<Solution>> {
    if v.len() != m.rows {
        return Err(Error::Invalid("right-hand side length differs from row count".into()));
    }
    let mut aug = RationalMatrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols)] = v[i].clone();
    }
    let mut a = aug.integer_rows();
    let e = bareiss(&mut a, m.cols);
    if a[e.rank..].iter().any(|row| !row[m.cols].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Q::zero(); m.cols];
    for (k, &pc) in e.pivots.iter().enumerate().rev() {
        let row = &a[k];
        let mut acc = Q::from_integer(row[m.cols].clone());
        for j in pc + 1..m.cols {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc -= Q::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[pc] = acc / Q::from_integer(row[pc].clone());
    }
    Ok(Some(Solution { x, rank: e.rank, unique: e.rank == m.cols }))
}
