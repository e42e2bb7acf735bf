//! The ground poset P = ∪ I(r,m) ∪ {1} and the doset D ⊂ P×P.

use std::fmt;

use super::doset::{DosetContext, Symbol};
use super::tuple::{tuple_ge, tuples, IndexTuple};
use crate::error::Result;
use crate::report::Report;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosetElement {
    Top,
    T(IndexTuple),
}

impl fmt::Debug for PosetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetElement::Top => write!(f, "1"),
            PosetElement::T(t) => write!(f, "{t}"),
        }
    }
}

pub fn poset_ge(x: &PosetElement, y: &PosetElement) -> bool {
    match (x, y) {
        (PosetElement::Top, _) => true,
        (_, PosetElement::Top) => false,
        (PosetElement::T(a), PosetElement::T(b)) => tuple_ge(a, b),
    }
}

#[derive(Clone, Debug)]
pub struct GroundPoset {
    pub m: usize,
    pub n: usize,
    pub elements: Vec<PosetElement>,
}

impl GroundPoset {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        DosetContext::new(n, m)?;
        let mut elements = vec![PosetElement::Top];
        for r in 1..=n {
            elements.extend(tuples(r, m).into_iter().map(PosetElement::T));
        }
        Ok(GroundPoset { m, n, elements })
    }

    fn ge(&self, i: usize, j: usize) -> bool {
        poset_ge(&self.elements[i], &self.elements[j])
    }

    /// Least upper bound (or greatest lower bound) by brute force.
    fn bound(&self, i: usize, j: usize, upper: bool) -> Option<usize> {
        let k = self.elements.len();
        let cands: Vec<usize> = (0..k)
            .filter(|&z| if upper { self.ge(z, i) && self.ge(z, j) } else { self.ge(i, z) && self.ge(j, z) })
            .collect();
        cands.iter().copied().find(|&z| {
            cands.iter().all(|&w| if upper { self.ge(w, z) } else { self.ge(z, w) })
        })
    }

    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        self.bound(i, j, true)
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.bound(i, j, false)
    }
}

/// Checks that P is a lattice and that meet distributes over join.
pub fn lattice_check(m: usize, n: usize) -> Result<Report> {
    let p = GroundPoset::new(n, m)?;
    let mut rep = Report::new("lattice");
    let k = p.elements.len();
    rep.detail(format!("|P| = {k}"));
    let mut join = vec![vec![0; k]; k];
    let mut meet = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            match (p.join(i, j), p.meet(i, j)) {
                (Some(a), Some(b)) => {
                    join[i][j] = a;
                    meet[i][j] = b;
                }
                (a, b) => {
                    let (x, y) = (&p.elements[i], &p.elements[j]);
                    rep.fail(format!("{x:?}, {y:?}: join {:?}, meet {:?}", a.map(|z| &p.elements[z]), b.map(|z| &p.elements[z])));
                    return Ok(rep);
                }
            }
        }
    }
    'outer: for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                let lhs = meet[x][join[y][z]];
                let rhs = join[meet[x][y]][meet[x][z]];
                if lhs != rhs {
                    let e = &p.elements;
                    rep.fail(format!("distributivity fails at {:?}, {:?}, {:?}", e[x], e[y], e[z]));
                    break 'outer;
                }
            }
        }
    }
    Ok(rep)
}

/// The image of a doset symbol in P×P: p(A,B) ↦ (A,B), u(I) ↦ (I,I), 1 ↦ (1,1).
pub fn embed(s: &Symbol) -> (PosetElement, PosetElement) {
    match s {
        Symbol::One => (PosetElement::Top, PosetElement::Top),
        Symbol::Pair(p) => (PosetElement::T(p.a().clone()), PosetElement::T(p.b().clone())),
        Symbol::U(i) => (PosetElement::T(i.clone()), PosetElement::T(i.clone())),
    }
}

/// Brute-force check of the doset axioms for D = H_p ∪ H_u ∪ {1} in P×P.
pub fn doset_axioms_check(m: usize, n: usize) -> Result<Report> {
    let ctx = DosetContext::new(n, m)?;
    let p = GroundPoset::new(n, m)?;
    let mut rep = Report::new("doset-axioms");
    let d: std::collections::BTreeSet<(PosetElement, PosetElement)> = ctx.doset().iter().map(embed).collect();
    rep.detail(format!("|P| = {}, |D| = {}", p.elements.len(), d.len()));
    let has = |a: &PosetElement, b: &PosetElement| d.contains(&(a.clone(), b.clone()));
    for x in &p.elements {
        if !has(x, x) {
            rep.fail(format!("diagonal: ({x:?},{x:?}) missing"));
        }
    }
    for (a, b) in &d {
        if !poset_ge(a, b) {
            rep.fail(format!("({a:?},{b:?}) in D but a ≱ b"));
        }
    }
    for a in &p.elements {
        for b in p.elements.iter().filter(|b| poset_ge(a, b)) {
            for c in p.elements.iter().filter(|c| poset_ge(b, c)) {
                if has(a, b) && has(b, c) && !has(a, c) {
                    rep.fail(format!("transitivity: ({a:?},{b:?}), ({b:?},{c:?}) in D but ({a:?},{c:?}) not"));
                }
                if has(a, c) && !(has(a, b) && has(b, c)) {
                    rep.fail(format!("interval: ({a:?},{c:?}) in D but not both ({a:?},{b:?}), ({b:?},{c:?})"));
                }
            }
        }
    }
    rep.failures.truncate(20);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_case() {
        assert!(lattice_check(2, 1).unwrap().pass);
        let p = GroundPoset::new(1, 2).unwrap();
        assert_eq!(p.elements.len(), 3);
        assert!(doset_axioms_check(2, 1).unwrap().pass);
    }

    #[test]
    fn small_cases_pass() {
        for (m, n) in [(3, 2), (4, 2), (4, 3)] {
            let l = lattice_check(m, n).unwrap();
            assert!(l.pass, "{l:?}");
            let d = doset_axioms_check(m, n).unwrap();
            assert!(d.pass, "{d:?}");
        }
    }
}
