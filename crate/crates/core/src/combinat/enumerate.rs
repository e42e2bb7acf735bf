//! Enumeration of standard words and of all monomials of a given grading.

use super::doset::{canonical, h_pairs, symbol_ge, DosetContext, MinorPair, Symbol, Word};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Words over H = H_p ∪ H_u, graded by length.
    S,
    /// Words over H_{t−1} without (∅,∅), graded by z-degree Σ|A|.
    Dt { t: usize },
    /// Words over D = H ∪ {1}, graded by length.
    RD,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grading {
    Degree(usize),
    /// Occurrences of each index 1..=m across all tuples.
    Multidegree(Vec<u32>),
}

/// Occurrences of each index across the tuples of a symbol.
pub fn symbol_blocks(s: &Symbol, m: usize) -> Vec<u32> {
    let mut d = vec![0; m];
    for t in s.tuples() {
        for &x in t.entries() {
            d[x as usize - 1] += 1;
        }
    }
    d
}

pub fn word_blocks(w: &[Symbol], m: usize) -> Vec<u32> {
    let mut d = vec![0; m];
    for s in w {
        for (x, y) in d.iter_mut().zip(symbol_blocks(s, m)) {
            *x += y;
        }
    }
    d
}

/// Generators of the family, in a fixed order.
pub fn family_generators(m: usize, n: usize, family: Family) -> Result<Vec<Symbol>> {
    Ok(match family {
        Family::S => DosetContext::new(n, m)?.generators(),
        Family::RD => DosetContext::new(n, m)?.doset(),
        Family::Dt { t } => {
            check_t(m, t)?;
            h_pairs(t - 1, m).into_iter().filter(|p| !p.is_empty()).map(Symbol::Pair).collect()
        }
    })
}

pub fn check_t(m: usize, t: usize) -> Result<()> {
    if m == 0 || t == 0 || t > m + 1 {
        return Err(Error::Unsupported(format!("need m ≥ 1 and 1 ≤ t ≤ m+1, got m = {m}, t = {t}")));
    }
    if m > 16 {
        return Err(Error::Unsupported(format!("m = {m} is beyond the supported bound 16")));
    }
    Ok(())
}

fn cost(s: &Symbol, family: Family, grading: &Grading, m: usize) -> Vec<u32> {
    match grading {
        Grading::Multidegree(_) => symbol_blocks(s, m),
        Grading::Degree(_) => match (family, s) {
            (Family::Dt { .. }, Symbol::Pair(p)) => vec![p.size() as u32],
            _ => vec![1],
        },
    }
}

fn budget(grading: &Grading) -> Vec<u32> {
    match grading {
        Grading::Degree(d) => vec![*d as u32],
        Grading::Multidegree(v) => v.clone(),
    }
}

fn spend(rem: &[u32], c: &[u32]) -> Option<Vec<u32>> {
    rem.iter().zip(c).map(|(r, c)| r.checked_sub(*c)).collect()
}

/// All standard words of the family with the given grading, duplicate-free and
/// sorted by the derived order on encoded words.
pub fn enumerate_standard(m: usize, n: usize, family: Family, grading: &Grading) -> Result<Vec<Word>> {
    let gens = family_generators(m, n, family)?;
    if let Grading::Multidegree(v) = grading {
        if v.len() != m {
            return Err(Error::Invalid(format!("multidegree must have {m} entries")));
        }
        if family == Family::RD {
            return Err(Error::Unsupported("R(D) is graded by length only".into()));
        }
    }
    let costs: Vec<Vec<u32>> = gens.iter().map(|g| cost(g, family, grading, m)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    chains(&gens, &costs, budget(grading), &mut cur, &mut out);
    out.sort();
    Ok(out)
}

fn chains(gens: &[Symbol], costs: &[Vec<u32>], rem: Vec<u32>, cur: &mut Word, out: &mut Vec<Word>) {
    if rem.iter().all(|&x| x == 0) {
        out.push(cur.clone());
        return;
    }
    for (g, c) in gens.iter().zip(costs) {
        if let Some(last) = cur.last() {
            if !symbol_ge(last, g) {
                continue;
            }
        }
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        if let Some(next) = spend(&rem, c) {
            cur.push(g.clone());
            chains(gens, costs, next, cur, out);
            cur.pop();
        }
    }
}

/// Every monomial (standard or not) over `gens` with the given cost budget,
/// each in canonical arrangement.
pub fn enumerate_monomials(gens: &[Symbol], m: usize, multidegree: &[u32]) -> Vec<Word> {
    let costs: Vec<Vec<u32>> = gens.iter().map(|g| symbol_blocks(g, m)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    multisets(&costs, 0, multidegree.to_vec(), &mut cur, &mut out);
    let mut words: Vec<Word> =
        out.into_iter().map(|idx| canonical(&idx.iter().map(|&i| gens[i].clone()).collect::<Vec<_>>())).collect();
    words.sort();
    words
}

fn multisets(costs: &[Vec<u32>], start: usize, rem: Vec<u32>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rem.iter().all(|&x| x == 0) {
        out.push(cur.clone());
        return;
    }
    for i in start..costs.len() {
        if costs[i].iter().all(|&x| x == 0) {
            continue;
        }
        if let Some(next) = spend(&rem, &costs[i]) {
            cur.push(i);
            multisets(costs, i, next, cur, out);
            cur.pop();
        }
    }
}

/// Every monomial of a given length over `gens`, canonical arrangement.
pub fn monomials_of_length(gens: &[Symbol], d: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(gens: &[Symbol], start: usize, d: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == d {
            out.push(canonical(cur));
            return;
        }
        for i in start..gens.len() {
            cur.push(gens[i].clone());
            rec(gens, i, d, cur, out);
            cur.pop();
        }
    }
    rec(gens, 0, d, &mut cur, &mut out);
    out.sort();
    out
}

/// Pairs of the D_t family including (∅,∅), for straightening.
pub fn dt_pairs(m: usize, t: usize) -> Result<Vec<MinorPair>> {
    check_t(m, t)?;
    Ok(h_pairs(t - 1, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::doset::is_standard;
    use std::collections::BTreeSet;

    #[test]
    fn s_family_degree_one() {
        let w = enumerate_standard(3, 2, Family::S, &Grading::Degree(1)).unwrap();
        assert_eq!(w.len(), 9);
        let rd = enumerate_standard(3, 2, Family::RD, &Grading::Degree(1)).unwrap();
        assert_eq!(rd.len(), 10);
    }

    #[test]
    fn degree_zero_is_the_empty_word() {
        for fam in [Family::S, Family::RD, Family::Dt { t: 2 }] {
            assert_eq!(enumerate_standard(3, 2, fam, &Grading::Degree(0)).unwrap(), vec![Vec::<Symbol>::new()]);
        }
    }

    #[test]
    fn quadric_cone_counts() {
        for d in 0..6 {
            let w = enumerate_standard(2, 1, Family::Dt { t: 2 }, &Grading::Degree(d)).unwrap();
            // nonincreasing sequences of length 2d over {1,2}
            assert_eq!(w.len(), 2 * d + 1);
        }
    }

    #[test]
    fn matches_filtering_of_all_monomials() {
        let ctx = DosetContext::new(2, 3).unwrap();
        let gens = ctx.generators();
        for d in 0..=3 {
            let all = monomials_of_length(&gens, d);
            let filtered: BTreeSet<Word> =
                all.iter().filter(|w| is_standard(w)).cloned().collect();
            let std: BTreeSet<Word> =
                enumerate_standard(3, 2, Family::S, &Grading::Degree(d)).unwrap().into_iter().collect();
            assert_eq!(filtered, std, "d = {d}");
        }
    }

    #[test]
    fn multidegree_enumeration_matches_blocks() {
        let md = vec![1, 2, 1, 0];
        let w = enumerate_standard(4, 2, Family::S, &Grading::Multidegree(md.clone())).unwrap();
        assert!(!w.is_empty());
        for x in &w {
            assert!(is_standard(x));
            assert_eq!(word_blocks(x, 4), md);
        }
        let all = enumerate_monomials(&DosetContext::new(2, 4).unwrap().generators(), 4, &md);
        assert!(all.len() > w.len());
    }

    #[test]
    fn bad_ranges() {
        assert!(enumerate_standard(2, 1, Family::Dt { t: 4 }, &Grading::Degree(1)).is_err());
        assert!(enumerate_standard(1, 2, Family::S, &Grading::Degree(1)).is_err());
    }
}
