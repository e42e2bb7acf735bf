//! The weight n_F: padded index digits read in radix m+1.

use num_bigint::BigUint;

use super::Relation;
use crate::combinat::{fmt_word, Symbol};
use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightContext {
    pub n: usize,
    pub m: usize,
    pub radix: u32,
}

impl WeightContext {
    pub fn new(n: usize, m: usize) -> Self {
        WeightContext { n, m, radix: m as u32 + 1 }
    }
}

/// Digit string: Ā, B̄ for each pair and m^(2n+2) for each 1, in word
/// order, followed by Ī for each u(I).
pub fn weight_digits(w: &[Symbol], ctx: &WeightContext) -> Vec<u8> {
    let (n, m) = (ctx.n, ctx.m);
    let mut head = Vec::new();
    let mut tail = Vec::new();
    for s in w {
        match s {
            Symbol::One => head.extend(std::iter::repeat_n(m as u8, 2 * n + 2)),
            Symbol::Pair(p) => {
                head.extend(p.a().padded_digits(n, m));
                head.extend(p.b().padded_digits(n, m));
            }
            Symbol::U(i) => tail.extend(i.padded_digits(n, m)),
        }
    }
    head.extend(tail);
    head
}

pub fn weight(w: &[Symbol], ctx: &WeightContext) -> BigUint {
    let mut acc = BigUint::from(0u32);
    for d in weight_digits(w, ctx) {
        acc = acc * ctx.radix + d as u32;
    }
    acc
}

/// Digit blocks of length n+1 used by the word: 2 per pair or 1, 1 per u(I).
pub fn slots(w: &[Symbol]) -> usize {
    w.iter().map(|s| if matches!(s, Symbol::U(_)) { 1 } else { 2 }).sum()
}

/// Prepends copies of 1 until the word fills `target` slots.
pub fn pad_with_ones(w: &[Symbol], target: usize) -> Result<Vec<Symbol>> {
    let have = slots(w);
    if have > target || (target - have) % 2 != 0 {
        return Err(Error::Invalid(format!("cannot pad a word of {have} slots to {target}")));
    }
    let mut out = vec![Symbol::One; (target - have) / 2];
    out.extend_from_slice(w);
    Ok(out)
}

/// Checks n_F(rhs word) > n_F(lhs) for every term of every relation, both
/// sides padded with 1 to a common width. Ties fail the check and are also
/// flagged separately so a reader can tell them apart from decreases.
pub fn weight_law(relations: &[Relation], ctx: &WeightContext) -> Report {
    let mut rep = Report::new("weight-law");
    let (mut terms, mut ties) = (0usize, 0usize);
    for r in relations {
        let width = r.rhs.iter().map(|t| slots(&t.w)).chain([slots(&r.lhs)]).max().unwrap_or(0);
        let Ok(lhs) = pad_with_ones(&r.lhs, width) else {
            rep.fail(format!("parity: {}", fmt_word(&r.lhs)));
            continue;
        };
        let lw = weight(&lhs, ctx);
        for t in &r.rhs {
            terms += 1;
            let Ok(w) = pad_with_ones(&t.w, width) else {
                rep.fail(format!("parity: {}", fmt_word(&t.w)));
                continue;
            };
            let tw = weight(&w, ctx);
            if tw == lw {
                ties += 1;
                rep.fail(format!("tie: {} and {}", fmt_word(&r.lhs), fmt_word(&t.w)));
            } else if tw < lw {
                rep.fail(format!("decrease: {} -> {}", fmt_word(&r.lhs), fmt_word(&t.w)));
            }
        }
    }
    rep.detail(format!("relations={} terms={terms} ties={ties}", relations.len()));
    if ties > 0 {
        rep.flag(format!("{ties} equal-weight terms: padded digit strings collide for tuples ending in m"));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{canonical, tup, tuples, DosetContext, MinorPair};

    #[test]
    fn digits_follow_the_padding_rule() {
        let c = WeightContext::new(2, 4);
        let w = vec![Symbol::U(tup(&[1, 3])), Symbol::Pair(MinorPair::new(tup(&[3]), tup(&[2])).unwrap())];
        assert_eq!(weight_digits(&w, &c), vec![3, 4, 1, 2, 4, 1, 1, 3, 1]);
        assert_eq!(weight_digits(&[Symbol::One], &c), vec![4; 6]);
        assert_eq!(weight(&[Symbol::U(tup(&[1, 2]))], &c), BigUint::from(1u32 * 25 + 2 * 5 + 1));
    }

    #[test]
    fn top_word_has_maximum_weight() {
        let (n, m) = (2usize, 4usize);
        let c = WeightContext::new(n, m);
        let ctx = DosetContext::new(n, m).unwrap();
        let top_p = Symbol::Pair(MinorPair::diagonal(tup(&[m as u8])));
        let top_u = Symbol::U(tuples(n, m).pop().unwrap());
        for (r, s) in [(1, 1), (2, 0), (0, 2), (2, 1)] {
            let mut top = vec![top_p.clone(); r];
            top.extend(vec![top_u.clone(); s]);
            let wt = weight(&top, &c);
            let mut pairs: Vec<Symbol> = ctx.hp().into_iter().map(Symbol::Pair).collect();
            pairs.extend(ctx.hu().into_iter().map(Symbol::U));
            // every word with r pairs and s u's, in any multidegree
            let words = all_words(&pairs, r, s);
            assert!(words.iter().all(|w| weight(w, &c) <= wt));
        }
    }

    fn all_words(gens: &[Symbol], r: usize, s: usize) -> Vec<Vec<Symbol>> {
        let ps: Vec<_> = gens.iter().filter(|g| matches!(g, Symbol::Pair(_))).cloned().collect();
        let us: Vec<_> = gens.iter().filter(|g| matches!(g, Symbol::U(_))).cloned().collect();
        let mut out = vec![vec![]];
        for _ in 0..r {
            out = out.into_iter().flat_map(|w: Vec<Symbol>| ps.iter().map(move |p| { let mut v = w.clone(); v.push(p.clone()); v })).collect();
        }
        for _ in 0..s {
            out = out.into_iter().flat_map(|w: Vec<Symbol>| us.iter().map(move |p| { let mut v = w.clone(); v.push(p.clone()); v })).collect();
        }
        out.into_iter().map(|w| canonical(&w)).collect()
    }

    #[test]
    fn padding() {
        let u = Symbol::U(tup(&[1, 2]));
        assert_eq!(pad_with_ones(&[u.clone(), u.clone()], 4).unwrap(), vec![Symbol::One, u.clone(), u.clone()]);
        assert!(pad_with_ones(&[u.clone()], 2).is_err());
        assert_eq!(slots(&[Symbol::One, u]), 3);
    }

    #[test]
    fn law_on_small_catalogs() {
        use crate::straighten::{Catalog, StraightenContext};
        let ctx = StraightenContext::new(2, 3).unwrap();
        let cat = Catalog::build(&ctx).unwrap();
        assert!(weight_law(&cat.relations, &WeightContext::new(2, 3)).pass);
        // (2,3) and (2) share the digits (2,3,3,1) here, so some terms tie
        let ctx = StraightenContext::new(3, 3).unwrap();
        let cat = Catalog::build(&ctx).unwrap();
        let rep = weight_law(&cat.relations, &WeightContext::new(3, 3));
        assert!(!rep.pass && rep.failures.iter().all(|f| f.starts_with("tie")));
    }
}
