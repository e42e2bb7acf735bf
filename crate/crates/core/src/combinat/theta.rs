//! The index map θ from I(m,2m) to pairs of subsets of [1,m].

use super::doset::MinorPair;
use super::tuple::{tuples, IndexTuple};
use crate::error::{Error, Result};

/// An element of I_G(m,2m): for each j exactly one of j, 2m+1−j occurs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticIndex {
    m: usize,
    i: IndexTuple,
}

impl SymplecticIndex {
    pub fn new(i: IndexTuple, m: usize) -> Result<Self> {
        if !is_symplectic(&i, m) {
            return Err(Error::Invalid(format!("{i} is not in I_G({m},{})", 2 * m)));
        }
        Ok(SymplecticIndex { m, i })
    }

    pub fn tuple(&self) -> &IndexTuple {
        &self.i
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

pub fn is_symplectic(i: &IndexTuple, m: usize) -> bool {
    if i.len() != m || i.max_entry() > 2 * m {
        return false;
    }
    let e = i.entries();
    (1..=2 * m).all(|j| {
        let jp = 2 * m + 1 - j;
        e.contains(&(j as u8)) != e.contains(&(jp as u8))
    })
}

/// I_G(m,2m) in lexicographic order.
pub fn symplectic_indices(m: usize) -> Vec<SymplecticIndex> {
    tuples(m, 2 * m)
        .into_iter()
        .filter(|i| is_symplectic(i, m))
        .map(|i| SymplecticIndex { m, i })
        .collect()
}

/// The set formulas on any increasing tuple over [1,2m]: with r entries ≤ m,
/// A = {2m+1−i_m, …, 2m+1−i_{r+1}} and B = [1,m] ∖ {i_1..i_r}.
pub fn theta_sets(i: &IndexTuple, m: usize) -> (IndexTuple, IndexTuple) {
    let e = i.entries();
    let r = e.iter().filter(|&&x| x as usize <= m).count();
    let mut a: Vec<u8> = e[r..].iter().map(|&x| (2 * m + 1) as u8 - x).collect();
    a.sort_unstable();
    let b: Vec<u8> = (1..=m as u8).filter(|x| !e[..r].contains(x)).collect();
    (IndexTuple::try_from(a).expect("distinct"), IndexTuple::try_from(b).expect("increasing"))
}

/// θ on I_G(m,2m); the image is a diagonal pair (A, A).
pub fn theta_map(i: &SymplecticIndex) -> MinorPair {
    let (a, b) = theta_sets(&i.i, i.m);
    debug_assert_eq!(a, b);
    MinorPair::new(a, b).expect("θ lands on the diagonal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::doset::{symbol_ge, Symbol};
    use crate::combinat::tuple::{tup, tuple_ge};

    fn th(i: &[u8], m: usize) -> MinorPair {
        theta_map(&SymplecticIndex::new(tup(i), m).unwrap())
    }

    #[test]
    fn small_values() {
        assert_eq!(th(&[1, 2], 2), MinorPair::empty());
        assert_eq!(th(&[3, 4], 2), MinorPair::diagonal(tup(&[1, 2])));
        assert!(SymplecticIndex::new(tup(&[1, 4]), 2).is_err());
    }

    #[test]
    fn chain_is_reversed() {
        let chain: Vec<Symbol> =
            [[1, 2], [1, 3], [2, 4], [3, 4]].iter().map(|i| Symbol::Pair(th(i, 2))).collect();
        assert!(chain.windows(2).all(|w| symbol_ge(&w[0], &w[1])));
    }

    #[test]
    fn order_reversal_and_injectivity() {
        for m in 1..=4 {
            let ig = symplectic_indices(m);
            assert_eq!(ig.len(), 1 << m);
            let imgs: Vec<MinorPair> = ig.iter().map(theta_map).collect();
            let set: std::collections::BTreeSet<_> = imgs.iter().collect();
            assert_eq!(set.len(), ig.len());
            for (x, px) in ig.iter().zip(&imgs) {
                assert_eq!(px.a(), px.b());
                for (y, py) in ig.iter().zip(&imgs) {
                    let le = tuple_ge(y.tuple(), x.tuple());
                    assert_eq!(le, symbol_ge(&Symbol::Pair(px.clone()), &Symbol::Pair(py.clone())));
                }
            }
        }
    }
}
