//! Symbolic determinants by memoized Laplace expansion.

use std::collections::HashMap;

use super::poly::{Coeff, SparsePoly};
use crate::error::{Error, Result};

pub const DEFAULT_DET_BOUND: usize = 6;

/// Determinant of a square matrix of polynomials, size at most [`DEFAULT_DET_BOUND`].
pub fn det_symbolic<C: Coeff>(m: &[Vec<SparsePoly<C>>]) -> Result<SparsePoly<C>> {
    det_symbolic_bounded(m, DEFAULT_DET_BOUND)
}

pub fn det_symbolic_bounded<C: Coeff>(m: &[Vec<SparsePoly<C>>], bound: usize) -> Result<SparsePoly<C>> {
    let n = m.len();
    if n > bound {
        return Err(Error::SizeBound(format!("symbolic determinant of size {n} exceeds bound {bound}")));
    }
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Err(Error::Invalid("empty matrix has no universe; use SparsePoly::one".into()));
    }
    let mut memo = HashMap::new();
    expand(m, (1u32 << n) - 1, &mut memo)
}

/// Determinant of the rows n−|cols|..n restricted to the column set `cols`.
fn expand<C: Coeff>(
    m: &[Vec<SparsePoly<C>>],
    cols: u32,
    memo: &mut HashMap<u32, SparsePoly<C>>,
) -> Result<SparsePoly<C>> {
    if let Some(p) = memo.get(&cols) {
        return Ok(p.clone());
    }
    let n = m.len();
    let k = cols.count_ones() as usize;
    let universe = m[0][0].universe();
    if k == 0 {
        return Ok(SparsePoly::one(universe));
    }
    let row = n - k;
    let mut acc = SparsePoly::zero(universe);
    let mut pos = 0;
    for j in 0..n {
        if cols & (1 << j) == 0 {
            continue;
        }
        let entry = &m[row][j];
        if !entry.is_zero() {
            let minor = expand(m, cols & !(1 << j), memo)?;
            let term = entry.try_mul(&minor)?;
            acc = if pos % 2 == 0 { acc.try_add(&term)? } else { acc.try_sub(&term)? };
        }
        pos += 1;
    }
    memo.insert(cols, acc.clone());
    Ok(acc)
}
