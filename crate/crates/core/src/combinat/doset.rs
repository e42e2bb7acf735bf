use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::tuple::{tuple_ge, tuple_linear_cmp, tuples, IndexTuple};
use crate::error::{Error, Result};

/// An index pair (A, B) with |A| = |B| and A ≥ B; names the minor p(A, B).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorPair {
    a: IndexTuple,
    b: IndexTuple,
}

impl MinorPair {
    pub fn new(a: IndexTuple, b: IndexTuple) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Invalid(format!("pair ({a},{b}) has unequal sizes")));
        }
        if !tuple_ge(&a, &b) {
            return Err(Error::Invalid(format!("pair ({a},{b}) violates A ≥ B")));
        }
        Ok(MinorPair { a, b })
    }

    pub fn empty() -> Self {
        MinorPair { a: IndexTuple::empty(), b: IndexTuple::empty() }
    }

    pub fn diagonal(a: IndexTuple) -> Self {
        MinorPair { b: a.clone(), a }
    }

    pub fn a(&self) -> &IndexTuple {
        &self.a
    }

    pub fn b(&self) -> &IndexTuple {
        &self.b
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

impl fmt::Debug for MinorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A generator symbol: p(A, B), u(I) or the formal top element 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SymbolWire", into = "SymbolWire")]
pub enum Symbol {
    One,
    Pair(MinorPair),
    U(IndexTuple),
}

pub type Word = Vec<Symbol>;

#[allow(non_snake_case)]
#[derive(Serialize, Deserialize)]
#[serde(tag = "t", deny_unknown_fields)]
enum SymbolWire {
    #[serde(rename = "one")]
    One,
    #[serde(rename = "p")]
    P { A: IndexTuple, B: IndexTuple },
    #[serde(rename = "u")]
    U { I: IndexTuple },
}

impl TryFrom<SymbolWire> for Symbol {
    type Error = Error;
    fn try_from(w: SymbolWire) -> Result<Self> {
        Ok(match w {
            SymbolWire::One => Symbol::One,
            SymbolWire::P { A, B } => Symbol::Pair(MinorPair::new(A, B)?),
            SymbolWire::U { I } => Symbol::U(I),
        })
    }
}

impl From<Symbol> for SymbolWire {
    fn from(s: Symbol) -> Self {
        match s {
            Symbol::One => SymbolWire::One,
            Symbol::Pair(p) => SymbolWire::P { A: p.a, B: p.b },
            Symbol::U(i) => SymbolWire::U { I: i },
        }
    }
}

impl Symbol {
    pub fn pair(a: IndexTuple, b: IndexTuple) -> Result<Self> {
        Ok(Symbol::Pair(MinorPair::new(a, b)?))
    }

    /// All index tuples of the symbol, in order (A, B for pairs).
    pub fn tuples(&self) -> Vec<&IndexTuple> {
        match self {
            Symbol::One => vec![],
            Symbol::Pair(p) => vec![&p.a, &p.b],
            Symbol::U(i) => vec![i],
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::One => write!(f, "1"),
            Symbol::Pair(p) => write!(f, "p({},{})", p.a, p.b),
            Symbol::U(i) => write!(f, "u{i}"),
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn fmt_word(w: &[Symbol]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join("·")
}

/// The comparison relation x ≽ y on generator symbols. Not reflexive on
/// pairs with A > B.
pub fn symbol_ge(x: &Symbol, y: &Symbol) -> bool {
    match (x, y) {
        (Symbol::One, _) => true,
        (_, Symbol::One) => false,
        (Symbol::Pair(p), Symbol::Pair(q)) => tuple_ge(&p.b, &q.a),
        (Symbol::Pair(p), Symbol::U(i)) => tuple_ge(&p.b, i),
        (Symbol::U(i), Symbol::U(j)) => tuple_ge(i, j),
        (Symbol::U(_), Symbol::Pair(_)) => false,
    }
}

/// Consecutive chain test; the empty word is standard.
pub fn is_standard(w: &[Symbol]) -> bool {
    w.windows(2).all(|p| symbol_ge(&p[0], &p[1]))
}

/// Total order placing a standard arrangement first: `Greater` sorts earlier.
fn canon_cmp(x: &Symbol, y: &Symbol) -> Ordering {
    match (x, y) {
        (Symbol::One, Symbol::One) => Ordering::Equal,
        (Symbol::One, _) => Ordering::Greater,
        (_, Symbol::One) => Ordering::Less,
        (Symbol::Pair(p), Symbol::Pair(q)) => {
            tuple_linear_cmp(&p.a, &q.a).then_with(|| tuple_linear_cmp(&p.b, &q.b))
        }
        (Symbol::Pair(_), Symbol::U(_)) => Ordering::Greater,
        (Symbol::U(_), Symbol::Pair(_)) => Ordering::Less,
        (Symbol::U(i), Symbol::U(j)) => tuple_linear_cmp(i, j),
    }
}

/// Canonical arrangement of a monomial (words commute). If any arrangement
/// is standard, this one is.
pub fn canonical(w: &[Symbol]) -> Word {
    let mut v = w.to_vec();
    v.sort_by(|x, y| canon_cmp(y, x));
    v
}

pub fn is_standard_monomial(w: &[Symbol]) -> bool {
    is_standard(&canonical(w))
}

/// Pairs (A, B), A ≥ B, with sizes in `sizes`.
pub fn pairs_of_sizes(sizes: impl IntoIterator<Item = usize>, m: usize) -> Vec<MinorPair> {
    let mut out = Vec::new();
    for r in sizes {
        let ts = tuples(r, m);
        for a in &ts {
            for b in &ts {
                if tuple_ge(a, b) {
                    out.push(MinorPair { a: a.clone(), b: b.clone() });
                }
            }
        }
    }
    out
}

/// H_{t−1}: all pairs of size ≤ t−1, including (∅,∅).
pub fn h_pairs(max_size: usize, m: usize) -> Vec<MinorPair> {
    pairs_of_sizes(0..=max_size.min(m), m)
}

/// The (n, m) setting of the SO_n invariants and the doset D = H_p ∪ H_u ∪ {1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DosetContext {
    pub n: usize,
    pub m: usize,
}

impl DosetContext {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Unsupported("n must be at least 1".into()));
        }
        if m < n {
            return Err(Error::PolynomialRegime(format!(
                "m = {m} < n = {n}: the invariant ring is a polynomial algebra in the φ_ij and u(I) is undefined"
            )));
        }
        if m > 16 {
            return Err(Error::Unsupported(format!("m = {m} is beyond the supported bound 16")));
        }
        Ok(DosetContext { n, m })
    }

    /// H_p: pairs with 1 ≤ |A| ≤ n−1.
    pub fn hp(&self) -> Vec<MinorPair> {
        pairs_of_sizes(1..self.n, self.m)
    }

    /// H_u = I(n, m).
    pub fn hu(&self) -> Vec<IndexTuple> {
        tuples(self.n, self.m)
    }

    /// H = H_p ∪ H_u, pairs first.
    pub fn generators(&self) -> Vec<Symbol> {
        let mut g: Vec<Symbol> = self.hp().into_iter().map(Symbol::Pair).collect();
        g.extend(self.hu().into_iter().map(Symbol::U));
        g
    }

    /// D = H ∪ {1}, with 1 first.
    pub fn doset(&self) -> Vec<Symbol> {
        let mut g = vec![Symbol::One];
        g.extend(self.generators());
        g
    }

    pub fn validate_symbol(&self, s: &Symbol, allow_one: bool) -> Result<()> {
        let in_range = |t: &IndexTuple| t.max_entry() <= self.m;
        match s {
            Symbol::One if allow_one => Ok(()),
            Symbol::One => Err(Error::Invalid("the symbol 1 is not a generator here".into())),
            Symbol::Pair(p) if p.size() >= 1 && p.size() < self.n && in_range(&p.a) && in_range(&p.b) => Ok(()),
            Symbol::U(i) if i.len() == self.n && in_range(i) => Ok(()),
            _ => Err(Error::Invalid(format!("{s} is not in D for (n,m) = ({},{})", self.n, self.m))),
        }
    }

    pub fn validate_word(&self, w: &[Symbol], allow_one: bool) -> Result<()> {
        w.iter().try_for_each(|s| self.validate_symbol(s, allow_one))
    }

    /// `d1 ≥ d2` in the comparison order on D.
    pub fn cmp(&self, d1: &Symbol, d2: &Symbol) -> Result<bool> {
        self.validate_symbol(d1, true)?;
        self.validate_symbol(d2, true)?;
        Ok(symbol_ge(d1, d2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::tuple::tup;

    fn p(a: &[u8], b: &[u8]) -> Symbol {
        Symbol::pair(tup(a), tup(b)).unwrap()
    }

    fn u(i: &[u8]) -> Symbol {
        Symbol::U(tup(i))
    }

    #[test]
    fn comparison_examples() {
        assert!(!symbol_ge(&p(&[2], &[1]), &p(&[2], &[1])));
        assert!(symbol_ge(&p(&[2], &[2]), &p(&[1], &[1])));
        let ctx = DosetContext::new(2, 2).unwrap();
        assert!(ctx.cmp(&p(&[2], &[1]), &u(&[1, 2])).unwrap());
        assert!(!symbol_ge(&u(&[1, 2]), &p(&[1], &[1])));
        assert!(symbol_ge(&Symbol::One, &Symbol::One));
        assert!(ctx.cmp(&p(&[3], &[1]), &u(&[1, 2])).is_err());
    }

    #[test]
    fn standardness_examples() {
        assert!(is_standard(&[p(&[2], &[2]), p(&[1], &[1])]));
        assert!(!is_standard(&[p(&[2], &[1]), p(&[2], &[1])]));
        assert!(is_standard(&[u(&[2, 4]), u(&[1, 3])]));
        assert!(is_standard(&[]));
        assert!(!is_standard(&[u(&[1, 3]), p(&[1], &[1])]));
        assert!(is_standard(&[Symbol::One, Symbol::One, p(&[1], &[1]), u(&[1, 2])]));
    }

    #[test]
    fn canonical_finds_the_standard_arrangement() {
        let w = vec![u(&[1, 2]), p(&[1], &[1]), Symbol::One, u(&[1, 3]), p(&[3], &[2])];
        let c = canonical(&w);
        assert_eq!(c, vec![Symbol::One, p(&[3], &[2]), p(&[1], &[1]), u(&[1, 3]), u(&[1, 2])]);
        assert!(is_standard(&c));
        assert!(!is_standard_monomial(&[u(&[1, 4]), u(&[2, 3])]));
    }

    #[test]
    fn generator_counts() {
        let ctx = DosetContext::new(2, 3).unwrap();
        assert_eq!(ctx.hp().len(), 6);
        assert_eq!(ctx.hu().len(), 3);
        assert_eq!(ctx.doset().len(), 10);
        assert_eq!(DosetContext::new(1, 2).unwrap().hp().len(), 0);
        assert!(matches!(DosetContext::new(2, 1), Err(Error::PolynomialRegime(_))));
        assert!(h_pairs(2, 2).contains(&MinorPair::empty()));
    }

    #[test]
    fn json_wire_form() {
        let w = vec![p(&[2], &[1]), u(&[1, 2]), Symbol::One];
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"[{"t":"p","A":[2],"B":[1]},{"t":"u","I":[1,2]},{"t":"one"}]"#);
        let back: Word = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<Symbol>(r#"{"t":"p","A":[1],"B":[2]}"#).is_err());
        assert!(serde_json::from_str::<Symbol>(r#"{"t":"u","I":[2,1]}"#).is_err());
    }
}
