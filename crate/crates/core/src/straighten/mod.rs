//! Straightening in S: expansion of words, exact solve against the standard
//! basis of a block multidegree, the degree-2 catalog, the rewrite engine,
//! the weight n_F, shape verification and presentations.

pub mod catalog;
pub mod presentation;
pub mod rewrite;
pub mod shape;
pub mod weight;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::combinat::{
    canonical, enumerate_standard, fmt_word, is_standard_monomial, word_blocks, DosetContext, Family, Grading,
    Symbol, Word,
};
use crate::error::{Error, Result};
use crate::exactalg::rational::serde_q;
use crate::exactalg::{exact_rank, exact_solve, RationalMatrix, SparsePoly, Q};
use crate::invariants::{Form, InvariantContext};

pub use catalog::{cache_dir_from_env, nonstandard_degree2, Catalog, CatalogKey, CACHE_ENV};
pub use presentation::{presentation, OnPresentation, PresentationBundle};
pub use rewrite::{straighten_rewrite, RewriteStats};
pub use shape::{verify_shape, ShapeSetting};
pub use weight::{pad_with_ones, slots, weight, weight_digits, weight_law, WeightContext};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(with = "serde_q")]
    pub c: Q,
    pub w: Word,
}

/// `lhs = Σ c·w` with every `w` standard.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Vec<Term>,
}

impl Relation {
    pub fn from_map(lhs: Word, terms: BTreeMap<Word, Q>) -> Self {
        use num_traits::Zero;
        let rhs = terms.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| Term { c, w }).collect();
        Relation { lhs, rhs }
    }

    pub fn rhs_map(&self) -> BTreeMap<Word, Q> {
        let mut m = BTreeMap::new();
        for t in &self.rhs {
            *m.entry(t.w.clone()).or_insert_with(|| Q::from_integer(0.into())) += &t.c;
        }
        m
    }

    pub fn display(&self) -> String {
        let rhs: Vec<String> = self.rhs.iter().map(|t| format!("({})·{}", crate::exactalg::fmt_q(&t.c), fmt_word(&t.w))).collect();
        format!("{} = {}", fmt_word(&self.lhs), if rhs.is_empty() { "0".into() } else { rhs.join(" + ") })
    }
}

/// Generator polynomials of S for fixed (n, m).
#[derive(Clone, Debug)]
pub struct StraightenContext {
    pub doset: DosetContext,
    pub inv: InvariantContext,
    gens: HashMap<Symbol, SparsePoly>,
}

impl StraightenContext {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Self::with_form(n, m, Form::default())
    }

    pub fn with_form(n: usize, m: usize, form: Form) -> Result<Self> {
        let doset = DosetContext::new(n, m)?;
        let inv = InvariantContext::with_form(n, m, form)?;
        let mut gens = HashMap::new();
        for g in doset.generators() {
            let p = match &g {
                Symbol::Pair(p) => inv.p_minor(p.a(), p.b())?,
                Symbol::U(i) => inv.u_det(i)?,
                Symbol::One => unreachable!(),
            };
            gens.insert(g, p);
        }
        gens.insert(Symbol::One, SparsePoly::one(inv.universe()));
        Ok(StraightenContext { doset, inv, gens })
    }

    pub fn n(&self) -> usize {
        self.doset.n
    }

    pub fn m(&self) -> usize {
        self.doset.m
    }

    pub fn generator_poly(&self, s: &Symbol) -> Result<&SparsePoly> {
        self.gens
            .get(s)
            .ok_or_else(|| Error::Invalid(format!("{s} is not a generator for (n,m) = ({},{})", self.n(), self.m())))
    }

    /// Product of generator polynomials; 1 evaluates to the constant 1.
    pub fn expand(&self, w: &[Symbol]) -> Result<SparsePoly> {
        let mut acc = SparsePoly::one(self.inv.universe());
        for s in w {
            acc = acc.try_mul(self.generator_poly(s)?)?;
        }
        Ok(acc)
    }

    /// Occurrences of each row index across the word's tuples.
    pub fn block_multidegree(&self, w: &[Symbol]) -> Vec<u32> {
        word_blocks(w, self.m())
    }

    pub fn standard_words(&self, multidegree: &[u32]) -> Result<Vec<Word>> {
        enumerate_standard(self.m(), self.n(), Family::S, &Grading::Multidegree(multidegree.to_vec()))
    }
}

/// Coefficient matrix (rows = monomials in the union of supports, columns =
/// `basis`) and the target's coefficient vector.
pub(crate) fn coefficient_system(target: &SparsePoly, basis: &[SparsePoly]) -> Result<(RationalMatrix, Vec<Q>)> {
    let mut index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for p in basis.iter().chain(std::iter::once(target)) {
        for (e, _) in p.terms() {
            let k = index.len();
            index.entry(e.to_vec()).or_insert(k);
        }
    }
    let mut m = RationalMatrix::zeros(index.len(), basis.len());
    for (j, p) in basis.iter().enumerate() {
        for (e, c) in p.terms() {
            m[(index[e], j)] = c.clone();
        }
    }
    let mut v = vec![Q::from_integer(0.into()); index.len()];
    for (e, c) in target.terms() {
        v[index[e]] = c.clone();
    }
    Ok((m, v))
}

/// Solves `target = Σ x_k basis_k` and turns failures into flagged errors.
pub(crate) fn solve_in_span(target: &SparsePoly, basis: &[SparsePoly], what: &str) -> Result<Vec<Q>> {
    let (m, v) = coefficient_system(target, basis)?;
    match exact_solve(&m, &v)? {
        None => Err(Error::TheoremViolation(format!(
            "{what} is not in the span of the {} standard words of its degree",
            basis.len()
        ))),
        Some(s) if !s.unique => Err(Error::IndependenceViolation(format!(
            "the {} standard words for {what} have rank {}",
            basis.len(),
            s.rank
        ))),
        Some(s) => Ok(s.x),
    }
}

/// Expresses a word of S in the standard monomial basis by an exact solve
/// within its block multidegree.
pub fn straighten_solve(ctx: &StraightenContext, w: &[Symbol]) -> Result<Relation> {
    ctx.doset.validate_word(w, false)?;
    if is_standard_monomial(w) {
        let mut m = BTreeMap::new();
        m.insert(canonical(w), Q::from_integer(1.into()));
        return Ok(Relation::from_map(w.to_vec(), m));
    }
    let cands = ctx.standard_words(&ctx.block_multidegree(w))?;
    let target = ctx.expand(w)?;
    let basis = cands.iter().map(|c| ctx.expand(c)).collect::<Result<Vec<_>>>()?;
    let x = solve_in_span(&target, &basis, &fmt_word(w))?;
    Ok(Relation::from_map(w.to_vec(), cands.into_iter().zip(x).collect()))
}

/// expand(lhs) − Σ c·expand(w); zero for a correct relation.
pub fn residual(ctx: &StraightenContext, rel: &Relation) -> Result<SparsePoly> {
    let mut r = ctx.expand(&rel.lhs)?;
    for t in &rel.rhs {
        r.add_scaled(&-t.c.clone(), &ctx.expand(&t.w)?)?;
    }
    Ok(r)
}

/// (number of standard words, rank of their expansions) for one multidegree.
pub fn basis_rank(ctx: &StraightenContext, multidegree: &[u32]) -> Result<(usize, usize)> {
    let words = ctx.standard_words(multidegree)?;
    let polys = words.iter().map(|w| ctx.expand(w)).collect::<Result<Vec<_>>>()?;
    if polys.is_empty() {
        return Ok((0, 0));
    }
    let zero = SparsePoly::zero(ctx.inv.universe());
    let (m, _) = coefficient_system(&zero, &polys)?;
    Ok((words.len(), exact_rank(&m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{tup, MinorPair};
    use crate::exactalg::q;

    fn p(a: &[u8], b: &[u8]) -> Symbol {
        Symbol::Pair(MinorPair::new(tup(a), tup(b)).unwrap())
    }

    fn u(i: &[u8]) -> Symbol {
        Symbol::U(tup(i))
    }

    #[test]
    fn expansion_basics() {
        let c = StraightenContext::new(2, 3).unwrap();
        assert_eq!(c.expand(&[]).unwrap(), SparsePoly::one(c.inv.universe()));
        assert_eq!(c.expand(&[p(&[2], &[1])]).unwrap(), c.inv.gram_entry(2, 1).unwrap());
        let uu = c.expand(&[u(&[1, 3]), u(&[2, 3])]).unwrap();
        assert_eq!(uu, c.inv.p_minor(&tup(&[1, 3]), &tup(&[2, 3])).unwrap());
        assert_eq!(c.block_multidegree(&[p(&[2], &[1])]), vec![1, 1, 0]);
        assert_eq!(c.block_multidegree(&[u(&[1, 2])]), vec![1, 1, 0]);
        let w = [p(&[3], &[1]), u(&[2, 3])];
        let md = c.block_multidegree(&w);
        let e = c.expand(&w).unwrap();
        let n = c.n();
        assert_eq!(e.multidegree(|v| v / n, 3), Some(md));
    }

    #[test]
    fn standard_word_is_its_own_expression() {
        let c = StraightenContext::new(2, 4).unwrap();
        let w = vec![p(&[3], &[2]), u(&[2, 4])];
        let r = straighten_solve(&c, &w).unwrap();
        assert_eq!(r.rhs, vec![Term { c: q(1), w: w.clone() }]);
    }

    #[test]
    fn plucker_relation() {
        let c = StraightenContext::new(2, 4).unwrap();
        let r = straighten_solve(&c, &[u(&[1, 4]), u(&[2, 3])]).unwrap();
        let want: BTreeMap<Word, Q> =
            [(vec![u(&[2, 4]), u(&[1, 3])], q(1)), (vec![u(&[3, 4]), u(&[1, 2])], q(-1))].into_iter().collect();
        assert_eq!(r.rhs_map(), want);
        assert!(residual(&c, &r).unwrap().is_zero());
    }

    #[test]
    fn square_of_off_diagonal_entry() {
        let c = StraightenContext::new(2, 2).unwrap();
        let r = straighten_solve(&c, &[p(&[2], &[1]), p(&[2], &[1])]).unwrap();
        let want: BTreeMap<Word, Q> =
            [(vec![p(&[2], &[2]), p(&[1], &[1])], q(1)), (vec![u(&[1, 2]), u(&[1, 2])], q(-1))].into_iter().collect();
        assert_eq!(r.rhs_map(), want);
    }

    #[test]
    fn relation_json_shape() {
        let c = StraightenContext::new(2, 4).unwrap();
        let r = straighten_solve(&c, &[u(&[1, 4]), u(&[2, 3])]).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with(r#"{"lhs":[{"t":"u","I":[1,4]},{"t":"u","I":[2,3]}],"rhs":[{"c":"#));
        assert_eq!(serde_json::from_str::<Relation>(&s).unwrap(), r);
    }

    #[test]
    fn invalid_words_are_rejected() {
        let c = StraightenContext::new(2, 3).unwrap();
        assert!(straighten_solve(&c, &[u(&[1, 2, 3])]).is_err());
        assert!(straighten_solve(&c, &[Symbol::One]).is_err());
        assert!(straighten_solve(&c, &[p(&[4], &[1])]).is_err());
    }
}
