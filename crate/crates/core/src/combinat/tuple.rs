use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strictly increasing tuple of indices in [1, m]; empty means ∅.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct IndexTuple(Vec<u8>);

impl IndexTuple {
    /// Checks strict increase and the bound `m`.
    pub fn new(entries: impl Into<Vec<u8>>, m: usize) -> Result<Self> {
        let t = Self::try_from(entries.into())?;
        if let Some(&last) = t.0.last() {
            if last as usize > m {
                return Err(Error::Invalid(format!("{t} has an entry above m = {m}")));
            }
        }
        Ok(t)
    }

    pub fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_entry(&self) -> usize {
        self.0.last().copied().unwrap_or(0) as usize
    }

    /// The digits (a_1..a_r, m, …, m, 1) of length n+1 used by the weight.
    pub fn padded_digits(&self, n: usize, m: usize) -> Vec<u8> {
        debug_assert!(self.len() <= n);
        let mut d = self.0.clone();
        d.resize(n, m as u8);
        d.push(1);
        d
    }
}

impl TryFrom<Vec<u8>> for IndexTuple {
    type Error = Error;
    fn try_from(v: Vec<u8>) -> Result<Self> {
        if v.first() == Some(&0) {
            return Err(Error::Invalid(format!("indices start at 1, got {v:?}")));
        }
        if v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!("tuple {v:?} is not strictly increasing")));
        }
        Ok(IndexTuple(v))
    }
}

impl From<IndexTuple> for Vec<u8> {
    fn from(t: IndexTuple) -> Self {
        t.0
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for tests and examples: panics on invalid input.
pub fn tup(entries: &[u8]) -> IndexTuple {
    IndexTuple::try_from(entries.to_vec()).expect("valid tuple")
}

/// A ≥ A′ iff |A| ≤ |A′| and a_j ≥ a′_j for j ≤ |A|.
pub fn tuple_ge(a: &IndexTuple, b: &IndexTuple) -> bool {
    a.len() <= b.len() && a.0.iter().zip(&b.0).all(|(x, y)| x >= y)
}

pub fn tuple_gt(a: &IndexTuple, b: &IndexTuple) -> bool {
    a != b && tuple_ge(a, b)
}

/// A total order refining [`tuple_ge`]: compare entries padded with a large
/// sentinel, shorter tuple first on ties. `Greater` means "larger".
pub fn tuple_linear_cmp(a: &IndexTuple, b: &IndexTuple) -> Ordering {
    let k = a.len().max(b.len());
    for j in 0..k {
        let x = a.0.get(j).copied().unwrap_or(u8::MAX);
        let y = b.0.get(j).copied().unwrap_or(u8::MAX);
        match x.cmp(&y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    b.len().cmp(&a.len())
}

/// I(r, m) in lexicographic order.
pub fn tuples(r: usize, m: usize) -> Vec<IndexTuple> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: u8, r: usize, m: u8, cur: &mut Vec<u8>, out: &mut Vec<IndexTuple>) {
        if cur.len() == r {
            out.push(IndexTuple(cur.clone()));
            return;
        }
        let need = (r - cur.len()) as u8;
        let mut x = start;
        while x + need - 1 <= m {
            cur.push(x);
            rec(x + 1, r, m, cur, out);
            cur.pop();
            x += 1;
        }
    }
    if r <= m {
        rec(1, r, m as u8, &mut cur, &mut out);
    }
    out
}
