//! Symmetric determinantal varieties D_t(Sym M_m) = {rank ≤ t−1}: minors of
//! the generic symmetric matrix, straightening in K[D_t], Hilbert counts,
//! dimension and singular-locus checks.
//!
//! K[D_t] is handled through the parametrization B ↦ B·Bᵀ with B an m×(t−1)
//! rational matrix: two functions agree on D_t iff they agree on its image.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::combinat::{
    canonical, check_t, enumerate_standard, fmt_word, h_pairs, is_standard, tuples, word_blocks, Family, Grading,
    IndexTuple, MinorPair, Symbol, Word,
};
use crate::error::{Error, Result};
use crate::exactalg::{det_symbolic, exact_rank, exact_solve, q, RationalMatrix, SparsePoly, Universe, Q};
use crate::report::Report;
use crate::rng::{seeded, small_int};
use crate::straighten::{solve_in_span, Catalog, CatalogKey, PresentationBundle, Relation};

const POINT_SEED: u64 = 0x5eed_d7;

#[derive(Clone, Debug)]
pub struct SymContext {
    pub m: usize,
    pub t: usize,
    pub universe: Arc<Universe>,
}

impl SymContext {
    pub fn new(m: usize, t: usize) -> Result<Self> {
        check_t(m, t)?;
        Ok(SymContext { m, t, universe: Universe::z_sym(m) })
    }

    /// H_{t−1} without (∅,∅).
    pub fn generators(&self) -> Vec<MinorPair> {
        h_pairs(self.t - 1, self.m).into_iter().filter(|p| !p.is_empty()).collect()
    }

    pub fn sym_minor(&self, a: &IndexTuple, b: &IndexTuple) -> Result<SparsePoly> {
        sym_minor_in(&self.universe, a, b)
    }

    pub fn expand(&self, w: &[Symbol]) -> Result<SparsePoly> {
        let mut acc = SparsePoly::one(&self.universe);
        for s in w {
            let p = pair_of(s)?;
            acc = acc.try_mul(&self.sym_minor(p.a(), p.b())?)?;
        }
        Ok(acc)
    }

    fn standard_words(&self, w: &[Symbol]) -> Result<Vec<Word>> {
        enumerate_standard(self.m, 1, Family::Dt { t: self.t }, &Grading::Multidegree(word_blocks(w, self.m)))
    }
}

fn pair_of(s: &Symbol) -> Result<&MinorPair> {
    match s {
        Symbol::Pair(p) => Ok(p),
        _ => Err(Error::Invalid(format!("{s} is not a minor pair"))),
    }
}

/// Minor with rows A and columns B of the generic symmetric matrix (z_ij).
pub fn sym_minor(m: usize, a: &IndexTuple, b: &IndexTuple) -> Result<SparsePoly> {
    sym_minor_in(&Universe::z_sym(m), a, b)
}

pub(crate) fn sym_minor_in(u: &Arc<Universe>, a: &IndexTuple, b: &IndexTuple) -> Result<SparsePoly> {
    let m = match u.kind {
        crate::exactalg::UniverseKind::Z { m } => m,
        _ => return Err(Error::Invalid("sym_minor needs the z universe".into())),
    };
    if a.len() != b.len() {
        return Err(Error::Invalid(format!("minor ({a},{b}) is not square")));
    }
    if a.len() > m || a.max_entry() > m || b.max_entry() > m {
        return Err(Error::SizeBound(format!("minor ({a},{b}) does not fit in a {m}×{m} matrix")));
    }
    if a.is_empty() {
        return Ok(SparsePoly::one(u));
    }
    let rows: Vec<Vec<SparsePoly>> = a
        .entries()
        .iter()
        .map(|&i| b.entries().iter().map(|&j| SparsePoly::var(u, u.z_index(i as usize, j as usize))).collect())
        .collect();
    det_symbolic(&rows)
}

/// A random symmetric point Y = B·Bᵀ, B an m×r integer matrix.
pub fn rank_point(rng: &mut ChaCha8Rng, m: usize, r: usize) -> RationalMatrix {
    rank_point_within(rng, m, r, 3)
}

/// As `rank_point` with entries of B in [−k, k].
pub fn rank_point_within(rng: &mut ChaCha8Rng, m: usize, r: usize, k: i64) -> RationalMatrix {
    let b = RationalMatrix::from_rows((0..m).map(|_| (0..r).map(|_| small_int(rng, k)).collect()).collect())
        .expect("rectangular");
    if r == 0 {
        return RationalMatrix::zeros(m, m);
    }
    b.mul(&b.transpose()).expect("conformable")
}

/// z-coordinates (i ≤ j) of a symmetric matrix.
pub fn z_coords(y: &RationalMatrix) -> Vec<Q> {
    let m = y.rows();
    (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).map(|(i, j)| y[(i, j)].clone()).collect()
}

/// Value of a minor at a concrete matrix.
fn minor_at(y: &RationalMatrix, p: &MinorPair) -> Q {
    if p.is_empty() {
        return q(1);
    }
    let rows: Vec<Vec<Q>> = p
        .a()
        .entries()
        .iter()
        .map(|&i| p.b().entries().iter().map(|&j| y[(i as usize - 1, j as usize - 1)].clone()).collect())
        .collect();
    RationalMatrix::from_rows(rows).expect("square").determinant().expect("square")
}

/// Values of words at one point, with minors memoized.
fn eval_words(y: &RationalMatrix, words: &[Word]) -> Result<Vec<Q>> {
    let mut memo: HashMap<&MinorPair, Q> = HashMap::new();
    let mut out = Vec::with_capacity(words.len());
    for w in words {
        let mut v = q(1);
        for s in w {
            let p = pair_of(s)?;
            let x = memo.entry(p).or_insert_with(|| minor_at(y, p));
            v *= &*x;
        }
        out.push(v);
    }
    Ok(out)
}

/// Expresses a word of minors in the standard basis of K[D_t]. For t = m+1
/// coefficients are matched in the polynomial ring; otherwise by evaluation
/// at rank ≤ t−1 points, adding points until the basis is separated.
/// Right-hand words are padded with p(∅,∅) to the length of the input.
pub fn straighten_sym(ctx: &SymContext, w: &[Symbol]) -> Result<Relation> {
    for s in w {
        let p = pair_of(s)?;
        if p.size() > ctx.t - 1 || p.a().max_entry() > ctx.m {
            return Err(Error::Invalid(format!("{p:?} is not in H_{}", ctx.t - 1)));
        }
    }
    let core: Word = canonical(&w.iter().filter(|s| !matches!(s, Symbol::Pair(p) if p.is_empty())).cloned().collect::<Vec<_>>());
    let pad = |x: Word| -> Word {
        let mut v = vec![Symbol::Pair(MinorPair::empty()); w.len().saturating_sub(x.len())];
        v.extend(x);
        v
    };
    if is_standard(&core) {
        return Ok(Relation::from_map(w.to_vec(), [(pad(core), q(1))].into_iter().collect()));
    }
    let cands = ctx.standard_words(&core)?;
    let x = if ctx.t == ctx.m + 1 {
        let target = ctx.expand(&core)?;
        let basis = cands.iter().map(|c| ctx.expand(c)).collect::<Result<Vec<_>>>()?;
        solve_in_span(&target, &basis, &fmt_word(w))?
    } else {
        solve_by_points(ctx, &core, &cands)?
    };
    let terms: BTreeMap<Word, Q> = cands.into_iter().map(pad).zip(x).collect();
    Ok(Relation::from_map(w.to_vec(), terms))
}

fn solve_by_points(ctx: &SymContext, w: &[Symbol], cands: &[Word]) -> Result<Vec<Q>> {
    let mut rng = seeded(POINT_SEED);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let cap = 4 * cands.len() + 20;
    let lhs = [w.to_vec()];
    let mut sample = |rows: &mut Vec<Vec<Q>>, rhs: &mut Vec<Q>| -> Result<()> {
        let y = rank_point(&mut rng, ctx.m, ctx.t - 1);
        rows.push(eval_words(&y, cands)?);
        rhs.push(eval_words(&y, &lhs)?.pop().expect("one word"));
        Ok(())
    };
    let not_in_span = || {
        Error::TheoremViolation(format!(
            "{} is not in the span of its {} standard words on D_{}",
            fmt_word(w),
            cands.len(),
            ctx.t
        ))
    };
    while rows.len() < cap {
        sample(&mut rows, &mut rhs)?;
        if rows.len() < cands.len() {
            continue;
        }
        if cands.is_empty() || exact_rank(&RationalMatrix::from_rows(rows.clone())?) == cands.len() {
            // a few extra points so consistency is tested, not just solvability
            for _ in 0..3 {
                sample(&mut rows, &mut rhs)?;
            }
            if cands.is_empty() {
                use num_traits::Zero;
                return if rhs.iter().all(Q::is_zero) { Ok(vec![]) } else { Err(not_in_span()) };
            }
            return exact_solve(&RationalMatrix::from_rows(rows)?, &rhs)?.map(|s| s.x).ok_or_else(not_in_span);
        }
    }
    Err(Error::IndependenceViolation(format!(
        "{} standard words for {} stay dependent on {cap} points of D_{}",
        cands.len(),
        fmt_word(w),
        ctx.t
    )))
}

/// Number of standard words over H_{t−1} of z-degree d.
pub fn hilbert_dt(m: usize, t: usize, d: usize) -> Result<usize> {
    Ok(enumerate_standard(m, 1, Family::Dt { t }, &Grading::Degree(d))?.len())
}

/// Rank of the standard words of z-degree exactly d evaluated at
/// `sample_count` random points of D_t; must equal their number.
pub fn independence_by_points(m: usize, t: usize, d: usize, sample_count: usize, seed: u64) -> Result<Report> {
    check_t(m, t)?;
    let words = enumerate_standard(m, 1, Family::Dt { t }, &Grading::Degree(d))?;
    let mut rep = Report::new("independence-by-points").with_seed(seed);
    let mut rng = seeded(seed);
    let rows = (0..sample_count)
        // degree-d words need many distinct points, so the range grows with d
        .map(|_| eval_words(&rank_point_within(&mut rng, m, t - 1, 3 + d as i64), &words))
        .collect::<Result<Vec<_>>>()?;
    let rank = if words.is_empty() || rows.is_empty() { 0 } else { exact_rank(&RationalMatrix::from_rows(rows)?) };
    rep.detail(format!("m={m} t={t} d={d} points={sample_count} words={} rank={rank}", words.len()));
    if sample_count < words.len() {
        rep.fail(format!("{sample_count} points cannot separate {} words", words.len()));
    } else {
        rep.require(rank == words.len(), || {
            format!("INDEPENDENCE-VIOLATION: rank {rank} < {} standard words", words.len())
        });
    }
    Ok(rep)
}

/// ½(t−1)(2m+2−t).
pub fn expected_dim(m: usize, t: usize) -> usize {
    (t - 1) * (2 * m + 2 - t) / 2
}

/// Rank of the differential of B ↦ B·Bᵀ at B.
fn param_jacobian_rank(b: &[Vec<Q>], m: usize, r: usize) -> usize {
    if r == 0 {
        return 0;
    }
    let mut rows = Vec::new();
    for i in 0..m {
        for j in i..m {
            let mut row = vec![q(0); m * r];
            for l in 0..r {
                // ∂(Σ_l B_il B_jl)/∂B_kl
                row[i * r + l] += &b[j][l];
                row[j * r + l] += &b[i][l];
            }
            rows.push(row);
        }
    }
    exact_rank(&RationalMatrix::from_rows(rows).expect("rectangular"))
}

/// Jacobian rank of the parametrization at a random point against
/// ½(t−1)(2m+2−t). A mismatch is retried at two more points first.
pub fn dim_check(m: usize, t: usize, seed: u64) -> Result<Report> {
    check_t(m, t)?;
    let mut rep = Report::new("dim").with_seed(seed);
    let want = expected_dim(m, t);
    let mut rng = seeded(seed);
    let mut ranks = Vec::new();
    for _ in 0..3 {
        let b: Vec<Vec<Q>> = (0..m).map(|_| (0..t - 1).map(|_| small_int(&mut rng, 5)).collect()).collect();
        let r = param_jacobian_rank(&b, m, t - 1);
        ranks.push(r);
        if r == want {
            break;
        }
    }
    rep.detail(format!("m={m} t={t} expected={want} ranks={ranks:?}"));
    rep.require(ranks.last() == Some(&want), || format!("Jacobian rank {ranks:?} never reached {want}"));
    Ok(rep)
}

/// The t-minors generating I_t, one per unordered pair of row/column sets.
pub fn ideal_generators(ctx: &SymContext) -> Result<Vec<SparsePoly>> {
    let ts = tuples(ctx.t, ctx.m);
    let mut out = Vec::new();
    for (k, a) in ts.iter().enumerate() {
        for b in &ts[k..] {
            out.push(ctx.sym_minor(a, b)?);
        }
    }
    Ok(out)
}

fn jacobian_rank_at(gens: &[SparsePoly], nvars: usize, point: &[Q]) -> Result<usize> {
    let rows = gens
        .iter()
        .map(|f| (0..nvars).map(|v| f.derivative(v).eval(point)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(if rows.is_empty() { 0 } else { exact_rank(&RationalMatrix::from_rows(rows)?) })
}

/// Jacobian of the t-minors at a random rank-(t−1) point (expected: the
/// codimension) and at a random rank-(t−2) point (expected: smaller).
pub fn singular_locus_check(m: usize, t: usize, seed: u64) -> Result<Report> {
    if t < 2 || t > m {
        return Err(Error::Invalid(format!("singular locus check needs 2 ≤ t ≤ m, got t = {t}, m = {m}")));
    }
    let ctx = SymContext::new(m, t)?;
    let gens = ideal_generators(&ctx)?;
    let nvars = ctx.universe.len();
    let codim = nvars - expected_dim(m, t);
    let mut rng = seeded(seed);
    let mut rep = Report::new("singular-locus").with_seed(seed);
    let mut smooth = 0;
    for _ in 0..3 {
        let y = rank_point(&mut rng, m, t - 1);
        if y.rank() != t - 1 {
            continue;
        }
        smooth = jacobian_rank_at(&gens, nvars, &z_coords(&y))?;
        if smooth == codim {
            break;
        }
    }
    let y = rank_point(&mut rng, m, t - 2);
    let sing = jacobian_rank_at(&gens, nvars, &z_coords(&y))?;
    rep.detail(format!("m={m} t={t} codim={codim} rank_at_smooth={smooth} rank_at_singular={sing}"));
    rep.require(smooth == codim, || format!("rank {smooth} at a rank-{} point, expected {codim}", t - 1));
    rep.require(sing < codim, || format!("rank {sing} at a rank-{} point is not below {codim}", t - 2));
    Ok(rep)
}

/// Degree-2 non-standard words over H_{t−1} (without (∅,∅)).
pub fn nonstandard_pairs(ctx: &SymContext) -> Vec<Word> {
    let g = ctx.generators();
    let mut out = Vec::new();
    for (i, x) in g.iter().enumerate() {
        for y in &g[i..] {
            let w = canonical(&[Symbol::Pair(x.clone()), Symbol::Pair(y.clone())]);
            if !is_standard(&w) {
                out.push(w);
            }
        }
    }
    out.sort();
    out
}

pub fn catalog_dt(ctx: &SymContext) -> Result<Catalog> {
    use rayon::prelude::*;
    let rels = nonstandard_pairs(ctx).par_iter().map(|w| straighten_sym(ctx, w)).collect::<Result<Vec<_>>>()?;
    Ok(Catalog::new(CatalogKey::dt(ctx.m, ctx.t), rels))
}

pub const PRESENTATION_DT_MAX_M: usize = 5;

/// Generators x(A,B), (A,B) ∈ H_{t−1}, and the degree-2 relations.
pub fn presentation_dt(m: usize, t: usize) -> Result<PresentationBundle> {
    if m > PRESENTATION_DT_MAX_M {
        return Err(Error::SizeBound(format!("D_t presentation is limited to m ≤ {PRESENTATION_DT_MAX_M}")));
    }
    let ctx = SymContext::new(m, t)?;
    let cat = catalog_dt(&ctx)?;
    Ok(PresentationBundle {
        family: "dt".into(),
        n: None,
        m,
        t: Some(t),
        generators: ctx.generators().into_iter().map(Symbol::Pair).collect(),
        relations: cat.relations,
        o_n: None,
    })
}
