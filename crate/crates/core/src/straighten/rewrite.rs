//! Straightening by repeated substitution of degree-2 catalog relations.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::catalog::Catalog;
use super::weight::{pad_with_ones, slots, weight, WeightContext};
use super::Relation;
use crate::combinat::{canonical, fmt_word, is_standard, symbol_ge, Symbol, Word};
use crate::error::{Error, Result};
use crate::exactalg::Q;

const STEP_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub substitutions: usize,
    pub max_terms: usize,
    /// Substitutions whose new word has the same weight as the old one.
    /// This happens when two tuples share a padded digit string, e.g. (2,m)
    /// and (2) both map to (2,m,…,m,1).
    pub weight_ties: usize,
}

/// Rewrites `w` into standard words using `catalog`, substituting at the
/// leftmost non-standard adjacent pair of the first non-standard term.
/// Every substitution must not lower the weight n_F (with 1-padding so both
/// sides have equally many digits); a decrease is reported as a violation,
/// ties are counted.
pub fn straighten_rewrite(w: &[Symbol], catalog: &Catalog) -> Result<(Relation, RewriteStats)> {
    let wc = WeightContext::new(catalog.key.n, catalog.key.m);
    let mut terms: BTreeMap<Word, Q> = BTreeMap::new();
    terms.insert(canonical(w), Q::from_integer(1.into()));
    let mut stats = RewriteStats::default();
    loop {
        stats.max_terms = stats.max_terms.max(terms.len());
        let Some(word) = terms.keys().find(|t| !is_standard(t)).cloned() else {
            break;
        };
        let c = terms.remove(&word).expect("present");
        let i = (0..word.len() - 1).find(|&i| !symbol_ge(&word[i], &word[i + 1])).expect("non-standard");
        let key = canonical(&word[i..i + 2]);
        let rel = catalog.get(&key).ok_or_else(|| {
            Error::TheoremViolation(format!("catalog has no relation for {}", fmt_word(&key)))
        })?;
        let mut rest = word[..i].to_vec();
        rest.extend_from_slice(&word[i + 2..]);
        let width = rel.rhs.iter().map(|t| slots(&t.w)).chain([slots(&key)]).max().unwrap_or(0);
        let old = canonical(&[rest.clone(), pad_with_ones(&key, width)?].concat());
        let old_wt = weight(&old, &wc);
        for t in &rel.rhs {
            let new = canonical(&[rest.clone(), pad_with_ones(&t.w, width)?].concat());
            let new_wt = weight(&new, &wc);
            if new_wt == old_wt {
                stats.weight_ties += 1;
            } else if new_wt < old_wt {
                return Err(Error::TheoremViolation(format!(
                    "weight decreases: {} -> {} via {}",
                    fmt_word(&old),
                    fmt_word(&new),
                    rel.display()
                )));
            }
            let e = terms.entry(new).or_insert_with(Q::zero);
            *e += &c * &t.c;
        }
        terms.retain(|_, c| !c.is_zero());
        stats.substitutions += 1;
        if stats.substitutions > STEP_LIMIT {
            return Err(Error::TheoremViolation(format!("rewriting {} did not terminate", fmt_word(w))));
        }
    }
    let mut out: BTreeMap<Word, Q> = BTreeMap::new();
    for (t, c) in terms {
        let stripped: Word = t.into_iter().filter(|s| *s != Symbol::One).collect();
        *out.entry(stripped).or_insert_with(Q::zero) += c;
    }
    Ok((Relation::from_map(w.to_vec(), out), stats))
}
