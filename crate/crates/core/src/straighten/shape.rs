//! Clause-by-clause checks of the qualitative shape of degree-2 relations.

use crate::combinat::{canonical, fmt_word, is_standard, tuple_ge, tuple_gt, tuple_linear_cmp, IndexTuple, MinorPair, Symbol};
use crate::report::Report;

use super::Relation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeSetting {
    /// Relations in S over H_p ∪ H_u.
    S { n: usize, m: usize },
    /// Relations in K[D_t(Sym M_m)] over H_{t−1}.
    Dt { m: usize, t: usize },
}

/// Checks the bounds, strictness clauses and the ±1 reshuffle clause.
///
/// Right-hand words of S are read in the symmetric-minor form p(C)p(D):
/// u(D₁)u(D₂) stands for the size-n minor p(D₁,D₂) and a missing factor for
/// p(∅,∅).
pub fn verify_shape(rel: &Relation, setting: ShapeSetting) -> Report {
    let mut rep = Report::new("shape");
    let lhs = canonical(&rel.lhs);
    if lhs.len() != 2 || is_standard(&lhs) {
        rep.fail(format!("lhs: {} is not a non-standard degree-2 word", fmt_word(&rel.lhs)));
        return rep;
    }
    for t in &rel.rhs {
        if !is_standard(&t.w) {
            rep.fail(format!("standard: {} is not standard", fmt_word(&t.w)));
        }
    }
    match (&lhs[0], &lhs[1], setting) {
        (Symbol::U(i), Symbol::U(j), ShapeSetting::S { .. }) => case_uu(rel, i, j, &mut rep),
        (Symbol::Pair(p), Symbol::U(i), ShapeSetting::S { n, .. }) => case_pu(rel, p, i, n, &mut rep),
        (Symbol::Pair(a), Symbol::Pair(b), _) => case_pp(rel, a, b, setting, &mut rep),
        _ => rep.fail(format!("lhs: unexpected symbols in {}", fmt_word(&lhs))),
    }
    reshuffle(rel, &lhs, setting, &mut rep);
    rep
}

fn case_uu(rel: &Relation, i: &IndexTuple, j: &IndexTuple, rep: &mut Report) {
    for t in &rel.rhs {
        match t.w.as_slice() {
            [Symbol::U(ir), Symbol::U(jr)] => {
                rep.require(tuple_gt(ir, i) && tuple_gt(ir, j), || format!("rel1: {ir} is not > both {i}, {j}"));
                rep.require(tuple_ge(i, jr) && tuple_ge(j, jr), || format!("rel1: {jr} is not ≤ both {i}, {j}"));
            }
            w => rep.fail(format!("shape: u·u relation has the term {}", fmt_word(w))),
        }
    }
}

fn case_pu(rel: &Relation, p: &MinorPair, i: &IndexTuple, n: usize, rep: &mut Report) {
    for t in &rel.rhs {
        match t.w.as_slice() {
            [Symbol::Pair(q), Symbol::U(it)] => {
                let (at, bt) = (q.a(), q.b());
                rep.require(q.size() >= 1 && q.size() < n, || format!("rel3: ({at},{bt}) is not in H_p"));
                rep.require(tuple_ge(bt, it), || format!("rel3: {bt} ≱ {it}"));
                rep.require(tuple_ge(at, p.a()) && tuple_ge(at, i), || format!("rel3: {at} is not ≥ both {} and {i}", p.a()));
                if at == p.a() {
                    rep.require(tuple_gt(bt, p.b()), || format!("rel3: A_t = A but {bt} is not > {}", p.b()));
                }
            }
            w => rep.fail(format!("shape: p·u relation has the term {}", fmt_word(w))),
        }
    }
}

/// Right-hand word as p(C)·p(D) with C ≽ D.
fn minor_form(w: &[Symbol], setting: ShapeSetting) -> Option<(MinorPair, MinorPair)> {
    let e = MinorPair::empty;
    match (setting, w) {
        (_, [Symbol::Pair(c), Symbol::Pair(d)]) => Some((c.clone(), d.clone())),
        (_, [Symbol::Pair(d)]) => Some((e(), d.clone())),
        (_, []) => Some((e(), e())),
        (ShapeSetting::S { .. }, [Symbol::Pair(c), Symbol::U(d1), Symbol::U(d2)]) => {
            Some((c.clone(), MinorPair::new(d1.clone(), d2.clone()).ok()?))
        }
        (ShapeSetting::S { .. }, [Symbol::U(d1), Symbol::U(d2)]) => Some((e(), MinorPair::new(d1.clone(), d2.clone()).ok()?)),
        _ => None,
    }
}

fn case_pp(rel: &Relation, a: &MinorPair, b: &MinorPair, setting: ShapeSetting, rep: &mut Report) {
    let bound = match setting {
        ShapeSetting::S { n, .. } => n,
        ShapeSetting::Dt { t, .. } => t - 1,
    };
    let (a1, a2, b1, b2) = (a.a(), a.b(), b.a(), b.b());
    for t in &rel.rhs {
        let Some((c, d)) = minor_form(&t.w, setting) else {
            rep.fail(format!("shape: p·p relation has the term {}", fmt_word(&t.w)));
            continue;
        };
        let (c1, c2, d1, d2) = (c.a(), c.b(), d.a(), d.b());
        let w = fmt_word(&t.w);
        rep.require(c.size() <= bound && d.size() <= bound, || format!("q2-size: {w} has a minor of size > {bound}"));
        rep.require(tuple_ge(c2, d1), || format!("chain: {c2} ≱ {d1} in {w}"));
        rep.require(tuple_ge(c1, a1) && tuple_ge(c1, b1), || format!("rel2a: {c1} is not ≥ both {a1}, {b1} in {w}"));
        if c1 == a1 {
            rep.require(tuple_gt(c2, a2), || format!("rel2a: C1 = A1 but {c2} is not > {a2} in {w}"));
        }
        if c1 == b1 {
            rep.require(tuple_gt(c2, b2), || format!("rel2a: C1 = B1 but {c2} is not > {b2} in {w}"));
        }
        rep.require(tuple_ge(a2, d2) && tuple_ge(b2, d2), || format!("rel2b: {d2} is not ≤ both {a2}, {b2} in {w}"));
        if d2 == a2 {
            rep.require(tuple_gt(a1, d1), || format!("rel2b: D2 = A2 but {d1} is not < {a1} in {w}"));
        }
        if d2 == b2 {
            rep.require(tuple_gt(b1, d1), || format!("rel2b: D2 = B2 but {d1} is not < {b1} in {w}"));
        }
    }
}

/// Tuples of the word's image in P×P.
fn image_tuples(w: &[Symbol]) -> Vec<IndexTuple> {
    w.iter()
        .flat_map(|s| match s {
            Symbol::Pair(p) => vec![p.a().clone(), p.b().clone()],
            Symbol::U(i) => vec![i.clone(), i.clone()],
            Symbol::One => vec![],
        })
        .collect()
}

/// If the lhs tuples can be reshuffled into a chain, the resulting standard
/// word must occur with coefficient ±1.
fn reshuffle(rel: &Relation, lhs: &[Symbol], setting: ShapeSetting, rep: &mut Report) {
    let mut ts = image_tuples(lhs);
    ts.sort_by(|x, y| tuple_linear_cmp(y, x));
    if !ts.windows(2).all(|w| tuple_ge(&w[0], &w[1])) {
        return;
    }
    let mut expected = Vec::new();
    for pair in ts.chunks(2) {
        let (x, y) = (&pair[0], &pair[1]);
        match setting {
            ShapeSetting::S { n, .. } if x.len() == n => {
                expected.push(Symbol::U(x.clone()));
                expected.push(Symbol::U(y.clone()));
            }
            _ => match MinorPair::new(x.clone(), y.clone()) {
                Ok(p) => expected.push(Symbol::Pair(p)),
                Err(_) => {
                    rep.fail(format!("q2-3: reshuffled pair ({x},{y}) is not admissible"));
                    return;
                }
            },
        }
    }
    let expected = canonical(&expected);
    let strip = |w: &[Symbol]| -> Vec<Symbol> { w.iter().filter(|s| !matches!(s, Symbol::Pair(p) if p.is_empty())).cloned().collect() };
    let coeff = rel.rhs.iter().find(|t| strip(&t.w) == expected).map(|t| t.c.clone());
    let one = crate::exactalg::q(1);
    match coeff {
        Some(c) if c == one || c == -one.clone() => {}
        Some(c) => rep.fail(format!("q2-3: reshuffle {} has coefficient {}", fmt_word(&expected), crate::exactalg::fmt_q(&c))),
        None => rep.fail(format!("q2-3: reshuffle {} is missing", fmt_word(&expected))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::tup;
    use crate::exactalg::q;
    use crate::straighten::{straighten_solve, StraightenContext, Term};

    fn p(a: &[u8], b: &[u8]) -> Symbol {
        Symbol::Pair(MinorPair::new(tup(a), tup(b)).unwrap())
    }

    fn u(i: &[u8]) -> Symbol {
        Symbol::U(tup(i))
    }

    #[test]
    fn plucker_passes() {
        let ctx = StraightenContext::new(2, 4).unwrap();
        let r = straighten_solve(&ctx, &[u(&[1, 4]), u(&[2, 3])]).unwrap();
        let rep = verify_shape(&r, ShapeSetting::S { n: 2, m: 4 });
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn square_passes_and_corruption_fails() {
        let ctx = StraightenContext::new(2, 2).unwrap();
        let mut r = straighten_solve(&ctx, &[p(&[2], &[1]), p(&[2], &[1])]).unwrap();
        assert!(verify_shape(&r, ShapeSetting::S { n: 2, m: 2 }).pass);
        for t in r.rhs.iter_mut() {
            if t.w == vec![p(&[2], &[2]), p(&[1], &[1])] {
                t.c = q(2);
            }
        }
        let rep = verify_shape(&r, ShapeSetting::S { n: 2, m: 2 });
        assert!(!rep.pass);
        assert!(rep.failures.iter().any(|f| f.starts_with("q2-3")));
    }

    #[test]
    fn bad_bounds_are_reported() {
        let r = Relation {
            lhs: vec![u(&[1, 4]), u(&[2, 3])],
            rhs: vec![Term { c: q(1), w: vec![u(&[1, 4]), u(&[1, 3])] }],
        };
        let rep = verify_shape(&r, ShapeSetting::S { n: 2, m: 4 });
        assert!(rep.failures.iter().any(|f| f.starts_with("rel1")));
    }
}
