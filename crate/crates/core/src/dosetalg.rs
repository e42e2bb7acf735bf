//! Graded doset algebras over D = H_p ∪ H_u ∪ {1}: homogenized relations
//! of R(D), the discrete doset algebra K{D}, the Stanley–Reisner algebra
//! K{P}, Hilbert counts and the straightening axioms of a doset algebra.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinat::{
    embed, enumerate_standard, fmt_word, is_standard, poset_ge, DosetContext, Family, Grading, GroundPoset,
    MinorPair, PosetElement, Symbol, Word,
};
use crate::error::{Error, Result};
use crate::exactalg::fmt_q;
use crate::report::Report;
use crate::straighten::{pad_with_ones, slots, Catalog, Relation, StraightenContext};

/// Maps p(∅,∅) to 1 and pads every word with 1 at the front to a common
/// slot count (two per pair or 1, one per u(I)), so that a size-n minor
/// u(D₁)u(D₂) takes the place of a single pair. Usually only the right side
/// is padded; the left side is padded too if a right word is longer.
pub fn homogenize(rel: &Relation) -> Relation {
    let fix = |w: &[Symbol]| -> Word {
        w.iter()
            .map(|s| match s {
                Symbol::Pair(p) if p.is_empty() => Symbol::One,
                s => s.clone(),
            })
            .collect()
    };
    let lhs = fix(&rel.lhs);
    let rhs: Vec<(Word, _)> = rel.rhs.iter().map(|t| (fix(&t.w), t.c.clone())).collect();
    let width = rhs.iter().map(|(w, _)| slots(w)).chain([slots(&lhs)]).max().unwrap_or(0);
    // slot parity is fixed by the u-degree mod 2, so padding never fails
    let pad = |w: Word| pad_with_ones(&w, width).expect("equal slot parity");
    let mut terms = BTreeMap::new();
    for (w, c) in rhs {
        *terms.entry(pad(w)).or_insert_with(|| crate::exactalg::q(0)) += c;
    }
    Relation::from_map(pad(lhs), terms)
}

/// Sets 1 ↦ 1: drops every One.
pub fn dehomogenize(rel: &Relation) -> Relation {
    let strip = |w: &[Symbol]| -> Word { w.iter().filter(|s| **s != Symbol::One).cloned().collect() };
    let mut terms = BTreeMap::new();
    for t in &rel.rhs {
        *terms.entry(strip(&t.w)).or_insert_with(|| crate::exactalg::q(0)) += &t.c;
    }
    Relation::from_map(strip(&rel.lhs), terms)
}

/// Number of standard words of length d over D (One included).
pub fn hilbert_rd(m: usize, n: usize, d: usize) -> Result<usize> {
    Ok(enumerate_standard(m, n, Family::RD, &Grading::Degree(d))?.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "word", rename_all = "lowercase")]
pub enum DiscreteProduct {
    Zero,
    Word(Word),
}

fn element_cmp(x: &PosetElement, y: &PosetElement) -> Ordering {
    match (x, y) {
        (PosetElement::Top, PosetElement::Top) => Ordering::Equal,
        (PosetElement::Top, _) => Ordering::Greater,
        (_, PosetElement::Top) => Ordering::Less,
        (PosetElement::T(a), PosetElement::T(b)) => crate::combinat::tuple_linear_cmp(a, b),
    }
}

/// Image tuples of a word in P, two per symbol.
pub fn word_elements(w: &[Symbol]) -> Vec<PosetElement> {
    w.iter()
        .flat_map(|s| {
            let (a, b) = embed(s);
            [a, b]
        })
        .collect()
}

/// Product in K{D}. The 2r elements of P are sorted by a linear extension
/// of ≥; this is the only order that can be a chain, so the product is the
/// paired-up sorted sequence when it is a chain and 0 otherwise.
pub fn discrete_mul(ctx: &DosetContext, w1: &[Symbol], w2: &[Symbol]) -> Result<DiscreteProduct> {
    for w in [w1, w2] {
        ctx.validate_word(w, true)?;
        if !is_standard(w) {
            return Err(Error::Invalid(format!("{} is not standard", fmt_word(w))));
        }
    }
    let mut els = word_elements(w1);
    els.extend(word_elements(w2));
    els.sort_by(|x, y| element_cmp(y, x));
    if !els.windows(2).all(|p| poset_ge(&p[0], &p[1])) {
        return Ok(DiscreteProduct::Zero);
    }
    let mut out = Vec::with_capacity(els.len() / 2);
    for pair in els.chunks(2) {
        let s = match (&pair[0], &pair[1]) {
            (PosetElement::Top, PosetElement::Top) => Symbol::One,
            (PosetElement::T(a), PosetElement::T(b)) if a == b && a.len() == ctx.n => Symbol::U(a.clone()),
            (PosetElement::T(a), PosetElement::T(b)) if a.len() < ctx.n => Symbol::Pair(MinorPair::new(a.clone(), b.clone())?),
            (x, y) => {
                return Err(Error::TheoremViolation(format!(
                    "chain pairs {x:?} ≥ {y:?}, which is not an admissible pair"
                )))
            }
        };
        out.push(s);
    }
    Ok(DiscreteProduct::Word(out))
}

/// Elements of P in slot order: A, B for a pair, I for u(I), 1, 1 for 1.
pub fn slot_elements(w: &[Symbol]) -> Vec<PosetElement> {
    w.iter()
        .flat_map(|s| match s {
            Symbol::U(i) => vec![PosetElement::T(i.clone())],
            s => {
                let (a, b) = embed(s);
                vec![a, b]
            }
        })
        .collect()
}

/// x ≥ y lexicographically in P: equal, or strictly greater at the first
/// position where they differ.
fn lex_ge(x: &[PosetElement], y: &[PosetElement]) -> bool {
    match x.iter().zip(y).find(|(a, b)| a != b) {
        None => true,
        Some((a, b)) => poset_ge(a, b),
    }
}

/// Distinct rearrangements of `els`.
fn permutations(els: &[PosetElement]) -> Vec<Vec<PosetElement>> {
    let mut sorted = els.to_vec();
    sorted.sort();
    let mut out = vec![];
    let mut used = vec![false; sorted.len()];
    let mut cur = vec![];
    fn rec(s: &[PosetElement], used: &mut [bool], cur: &mut Vec<PosetElement>, out: &mut Vec<Vec<PosetElement>>) {
        if cur.len() == s.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..s.len() {
            if used[i] || (i > 0 && s[i] == s[i - 1] && !used[i - 1]) {
                continue;
            }
            used[i] = true;
            cur.push(s[i].clone());
            rec(s, used, cur, out);
            cur.pop();
            used[i] = false;
        }
    }
    rec(&sorted, &mut used, &mut cur, &mut out);
    out
}

/// Ordering and reshuffle clauses for every non-standard degree-2 word over D, on the
/// homogenized catalog relations. 1·x is always standard, so the words are
/// exactly the catalog's left sides.
pub fn dalg_axioms_check(m: usize, n: usize, catalog: Option<&Catalog>) -> Result<Report> {
    let ctx = StraightenContext::new(n, m)?;
    let owned;
    let cat = match catalog {
        Some(c) => c,
        None => {
            owned = Catalog::build(&ctx)?;
            &owned
        }
    };
    let mut rep = Report::new("dalg-axioms");
    let mut cases = [0usize; 3];
    let mut reshuffles = 0usize;
    for rel in &cat.relations {
        let h = homogenize(rel);
        let lhs_core: Word = h.lhs.iter().filter(|s| **s != Symbol::One).cloned().collect();
        match lhs_core.as_slice() {
            [Symbol::U(_), Symbol::U(_)] => cases[0] += 1,
            [Symbol::Pair(_), Symbol::U(_)] | [Symbol::U(_), Symbol::Pair(_)] => cases[1] += 1,
            _ => cases[2] += 1,
        }
        let perms = permutations(&slot_elements(&h.lhs));
        for t in &h.rhs {
            let x = slot_elements(&t.w);
            if let Some(bad) = perms.iter().find(|y| !lex_ge(&x, y)) {
                rep.fail(format!("ordering: {} is not ≥ the rearrangement {bad:?} of {}", fmt_word(&t.w), fmt_word(&h.lhs)));
            }
        }
        if let DiscreteProduct::Word(w) = discrete_mul(&ctx.doset, &lhs_core[..1], &lhs_core[1..])? {
            reshuffles += 1;
            let want = pad_with_ones(&w, slots(&h.lhs))?;
            match h.rhs.iter().find(|t| t.w == want) {
                Some(t) if t.c == crate::exactalg::q(1) || t.c == crate::exactalg::q(-1) => {}
                Some(t) => rep.fail(format!("reshuffle: {} has coefficient {} in {}", fmt_word(&want), fmt_q(&t.c), rel.display())),
                None => rep.fail(format!("reshuffle: {} is missing from {}", fmt_word(&want), rel.display())),
            }
        }
    }
    rep.detail(format!(
        "n={n} m={m} relations={} y·y={} x·y={} x·x={} reshuffle={reshuffles}",
        cat.len(),
        cases[0],
        cases[1],
        cases[2]
    ));
    Ok(rep)
}

/// Multichains x_1 ≥ … ≥ x_d in P, the monomials of K{P} of degree d.
pub fn hilbert_kp(m: usize, n: usize, d: usize) -> Result<usize> {
    let p = GroundPoset::new(n, m)?;
    if d == 0 {
        return Ok(1);
    }
    let k = p.elements.len();
    // ending[x] = multichains of the current length whose last element is x
    let mut ending = vec![1usize; k];
    for _ in 1..d {
        ending = (0..k)
            .map(|y| (0..k).filter(|&x| poset_ge(&p.elements[x], &p.elements[y])).map(|x| ending[x]).sum())
            .collect();
    }
    Ok(ending.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{is_standard_monomial, monomials_of_length, tup};
    use crate::exactalg::q;
    use crate::straighten::{residual, straighten_solve, Term};
    use std::collections::BTreeSet;

    fn p(a: &[u8], b: &[u8]) -> Symbol {
        Symbol::Pair(MinorPair::new(tup(a), tup(b)).unwrap())
    }

    fn u(i: &[u8]) -> Symbol {
        Symbol::U(tup(i))
    }

    #[test]
    fn homogenize_pads_and_round_trips() {
        let ctx = StraightenContext::new(2, 3).unwrap();
        let cat = Catalog::build(&ctx).unwrap();
        for r in &cat.relations {
            let h = homogenize(r);
            let width = slots(&h.lhs);
            assert!(h.rhs.iter().all(|t| slots(&t.w) == width));
            let back = dehomogenize(&h);
            assert_eq!(back.rhs_map(), r.rhs_map());
            assert!(residual(&ctx, &back).unwrap().is_zero());
        }
        let r = straighten_solve(&ctx, &[u(&[1, 3]), u(&[2, 3])]).unwrap();
        assert_eq!(homogenize(&r), r);
        // p(∅,∅) becomes 1
        let r = Relation {
            lhs: vec![p(&[2], &[1]), p(&[2], &[1])],
            rhs: vec![
                Term { c: q(1), w: vec![p(&[2], &[2]), p(&[1], &[1])] },
                Term { c: q(-1), w: vec![Symbol::Pair(MinorPair::empty()), p(&[1, 2], &[1, 2])] },
            ],
        };
        assert!(homogenize(&r).rhs.iter().any(|t| t.w[0] == Symbol::One));
    }

    #[test]
    fn rd_counts() {
        for (n, m) in [(2usize, 3usize), (2, 4), (1, 2), (3, 3)] {
            let ctx = DosetContext::new(n, m).unwrap();
            assert_eq!(hilbert_rd(m, n, 0).unwrap(), 1);
            assert_eq!(hilbert_rd(m, n, 1).unwrap(), ctx.hp().len() + ctx.hu().len() + 1);
        }
        assert_eq!(hilbert_rd(3, 2, 1).unwrap(), 10);
    }

    #[test]
    fn rd_count_matches_brute_force_and_discrete_products() {
        for (n, m) in [(2usize, 3usize), (2, 4)] {
            let ctx = DosetContext::new(n, m).unwrap();
            let gens = ctx.doset();
            for d in 0..=3 {
                let all = monomials_of_length(&gens, d);
                let brute = all.iter().filter(|w| is_standard_monomial(w)).count();
                assert_eq!(hilbert_rd(m, n, d).unwrap(), brute);
                // nonzero K{D} products of d letters are exactly the standard words
                let mut images = BTreeSet::new();
                for w in &all {
                    let mut acc = DiscreteProduct::Word(vec![]);
                    for s in w {
                        acc = match acc {
                            DiscreteProduct::Word(x) => discrete_mul(&ctx, &x, std::slice::from_ref(s)).unwrap(),
                            z => z,
                        };
                    }
                    if let DiscreteProduct::Word(x) = acc {
                        assert!(is_standard(&x));
                        images.insert(x);
                    }
                }
                assert_eq!(images.len(), brute, "n={n} m={m} d={d}");
            }
        }
    }

    #[test]
    fn discrete_examples() {
        let ctx = DosetContext::new(2, 4).unwrap();
        assert_eq!(discrete_mul(&ctx, &[u(&[1, 4])], &[u(&[2, 3])]).unwrap(), DiscreteProduct::Zero);
        let w = vec![p(&[3], &[2]), u(&[2, 4])];
        assert_eq!(discrete_mul(&ctx, &w, &[Symbol::One]).unwrap(), DiscreteProduct::Word([vec![Symbol::One], w.clone()].concat()));
        assert_eq!(
            discrete_mul(&ctx, &[p(&[4], &[3])], &[p(&[2], &[1])]).unwrap(),
            DiscreteProduct::Word(vec![p(&[4], &[3]), p(&[2], &[1])])
        );
        assert_eq!(
            discrete_mul(&ctx, &[p(&[2], &[1])], &[p(&[2], &[1])]).unwrap(),
            DiscreteProduct::Word(vec![p(&[2], &[2]), p(&[1], &[1])])
        );
        assert!(discrete_mul(&ctx, &[u(&[1, 4]), u(&[2, 3])], &[]).is_err());
    }

    #[test]
    fn discrete_mul_is_associative() {
        let ctx = DosetContext::new(2, 3).unwrap();
        let gens = ctx.doset();
        let mul = |a: &DiscreteProduct, b: &DiscreteProduct| match (a, b) {
            (DiscreteProduct::Word(x), DiscreteProduct::Word(y)) => discrete_mul(&ctx, x, y).unwrap(),
            _ => DiscreteProduct::Zero,
        };
        let one = |s: &Symbol| DiscreteProduct::Word(vec![s.clone()]);
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let l = mul(&mul(&one(a), &one(b)), &one(c));
                    let r = mul(&one(a), &mul(&one(b), &one(c)));
                    assert_eq!(l, r, "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn axioms_hold_and_corruption_is_caught() {
        let rep = dalg_axioms_check(3, 2, None).unwrap();
        assert!(rep.pass, "{rep:?}");
        let ctx = StraightenContext::new(2, 2).unwrap();
        let mut cat = Catalog::build(&ctx).unwrap();
        assert!(dalg_axioms_check(2, 2, Some(&cat)).unwrap().pass);
        for t in &mut cat.relations[0].rhs {
            t.c = q(3);
        }
        assert!(!dalg_axioms_check(2, 2, Some(&cat)).unwrap().pass);
    }

    fn comparable(a: &PosetElement, b: &PosetElement) -> bool {
        poset_ge(a, b) || poset_ge(b, a)
    }

    #[test]
    fn kp_counts_against_brute_force() {
        assert_eq!(hilbert_kp(2, 1, 2).unwrap(), 6);
        for (n, m) in [(1usize, 2usize), (2, 3), (2, 4)] {
            let pset = GroundPoset::new(n, m).unwrap();
            assert_eq!(hilbert_kp(m, n, 0).unwrap(), 1);
            assert_eq!(hilbert_kp(m, n, 1).unwrap(), pset.elements.len());
            let syms: Vec<Symbol> = (0..pset.elements.len()).map(|i| Symbol::U(tup(&[i as u8 + 1]))).collect();
            for d in 2..=3 {
                let brute = monomials_of_length(&syms, d)
                    .iter()
                    .filter(|w| {
                        let ix: Vec<usize> = w.iter().map(|s| if let Symbol::U(t) = s { t.entries()[0] as usize - 1 } else { 0 }).collect();
                        ix.iter().all(|&i| ix.iter().all(|&j| comparable(&pset.elements[i], &pset.elements[j])))
                    })
                    .count();
                assert_eq!(hilbert_kp(m, n, d).unwrap(), brute);
            }
        }
    }
}
