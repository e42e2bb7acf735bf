//! Property suites: the fixed acceptance checks and the configurable
//! `verify-all` run.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{
    doset_axioms_check, fmt_word, is_standard, lattice_check, monomials_of_length, tup, tuples, DosetContext,
    MinorPair, Symbol, Word,
};
use crate::detvar::{
    dim_check, hilbert_dt, independence_by_points, presentation_dt, singular_locus_check, straighten_sym, SymContext,
};
use crate::dosetalg::{dalg_axioms_check, discrete_mul, hilbert_rd, DiscreteProduct};
use crate::error::{Error, Result};
use crate::exactalg::{q, SparsePoly};
use crate::invariants::{random_orthogonal, InvariantContext};
use crate::report::Report;
use crate::rng::seeded;
use crate::sl2traces::{theta_embed_check, trace_basis_check, transition_matrix, TypeTriple};
use crate::straighten::{
    basis_rank, residual, straighten_rewrite, straighten_solve, verify_shape, weight_law, Catalog, ShapeSetting,
    StraightenContext, WeightContext,
};

/// Turns a mathematical failure into a failed report; input errors pass through.
fn guard(check: &str, r: Result<Report>) -> Result<Report> {
    match r {
        Ok(rep) => Ok(rep),
        Err(e) if e.is_violation() => {
            let mut rep = Report::new(check);
            rep.fail(e.to_string());
            Ok(rep)
        }
        Err(e) => Err(e),
    }
}

/// u(I)u(J) = p(I,J) for all I, J ∈ I(n,m).
pub fn lemma_check(n: usize, m: usize) -> Result<Report> {
    let ctx = InvariantContext::new(n, m)?;
    ctx.require_u()?;
    let mut rep = Report::new("lemma");
    let dets: Vec<_> = tuples(n, m).into_iter().map(|i| Ok((i.clone(), ctx.u_det(&i)?))).collect::<Result<_>>()?;
    for (i, ui) in &dets {
        for (j, uj) in &dets {
            let diff = &(ui * uj) - &ctx.p_minor(i, j)?;
            rep.require(diff.is_zero(), || format!("u({i})u({j}) − p({i},{j}) ≠ 0"));
        }
    }
    rep.detail(format!("n={n} m={m} pairs={}", dets.len() * dets.len()));
    Ok(rep)
}

/// For every block multidegree met by words of length ≤ `max_len`: the
/// standard words there are independent (count = rank) and every
/// non-standard word straightens with zero residual.
pub fn basis_spanning_check(n: usize, m: usize, max_len: usize) -> Result<Report> {
    let ctx = StraightenContext::new(n, m)?;
    let gens = ctx.doset.generators();
    let mut groups: BTreeMap<Vec<u32>, Vec<Word>> = BTreeMap::new();
    for d in 0..=max_len {
        for w in monomials_of_length(&gens, d) {
            groups.entry(ctx.block_multidegree(&w)).or_default().push(w);
        }
    }
    let outcomes: Vec<Result<(usize, Vec<String>)>> = groups
        .par_iter()
        .map(|(md, words)| {
            let mut bad = Vec::new();
            let (count, rank) = basis_rank(&ctx, md)?;
            if count != rank {
                bad.push(format!("multidegree {md:?}: {count} standard words, rank {rank}"));
            }
            let mut straightened = 0;
            for w in words.iter().filter(|w| !is_standard(w)) {
                match straighten_solve(&ctx, w).and_then(|r| residual(&ctx, &r)) {
                    Ok(p) if p.is_zero() => straightened += 1,
                    Ok(_) => bad.push(format!("{}: nonzero residual", fmt_word(w))),
                    Err(e) => bad.push(format!("{}: {e}", fmt_word(w))),
                }
            }
            Ok((straightened, bad))
        })
        .collect();
    let mut rep = Report::new("basis-spanning");
    let mut straightened = 0;
    for o in outcomes {
        let (s, bad) = o?;
        straightened += s;
        bad.into_iter().for_each(|b| rep.fail(b));
    }
    let words: usize = groups.values().map(Vec::len).sum();
    rep.detail(format!(
        "n={n} m={m} length≤{max_len} multidegrees={} words={words} straightened={straightened}",
        groups.len()
    ));
    Ok(rep)
}

/// The worked D_t example: p(2,1)² = p(2,2)p(1,1) − p(∅,∅)p(12,12) for m=2, t=3.
pub fn worked_example_check() -> Result<Report> {
    let ctx = SymContext::new(2, 3)?;
    let p = |a: &[u8], b: &[u8]| -> Result<Symbol> { Ok(Symbol::Pair(MinorPair::new(tup(a), tup(b))?)) };
    let rel = straighten_sym(&ctx, &[p(&[2], &[1])?, p(&[2], &[1])?])?;
    let mut want = BTreeMap::new();
    want.insert(vec![p(&[2], &[2])?, p(&[1], &[1])?], q(1));
    want.insert(vec![Symbol::Pair(MinorPair::empty()), p(&[1, 2], &[1, 2])?], q(-1));
    let mut rep = Report::new("worked-example");
    rep.detail(rel.display());
    rep.require(rel.rhs_map() == want, || format!("got {}", rel.display()));
    Ok(rep)
}

/// hilbert_Dt(2,2,d) = 2d+1 for d ≤ max_d, confirmed by evaluation rank.
pub fn quadric_cone_check(max_d: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("hilbert-dt").with_seed(seed);
    for d in 0..=max_d {
        let h = hilbert_dt(2, 2, d)?;
        rep.require(h == 2 * d + 1, || format!("hilbert_Dt(2,2,{d}) = {h}, want {}", 2 * d + 1));
        let r = independence_by_points(2, 2, d, 3 * h + 3, seed)?;
        rep.merge(r);
    }
    rep.detail(format!("d ≤ {max_d}"));
    Ok(rep)
}

pub fn dims_check(max_m: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("dimension").with_seed(seed);
    for m in 1..=max_m {
        for t in 1..=m + 1 {
            rep.merge(guard("dim", dim_check(m, t, seed))?);
        }
    }
    Ok(rep)
}

pub fn sing_check(max_m: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("singular-locus").with_seed(seed);
    for m in 2..=max_m {
        for t in 2..=m {
            rep.merge(guard("sing", singular_locus_check(m, t, seed))?);
        }
    }
    Ok(rep)
}

/// All clauses of the shape propositions on the (n,m) catalog.
pub fn shape_check(n: usize, m: usize, catalog: &Catalog) -> Report {
    let mut rep = Report::new("shape");
    for r in &catalog.relations {
        let s = verify_shape(r, ShapeSetting::S { n, m });
        for f in s.failures {
            rep.fail(format!("{}: {f}", r.display()));
        }
    }
    rep.detail(format!("n={n} m={m} relations={}", catalog.len()));
    rep
}

/// Random words of length 2..=max_len over H, seeded.
pub fn random_words(ctx: &StraightenContext, count: usize, max_len: usize, seed: u64) -> Vec<Word> {
    let gens = ctx.doset.generators();
    let mut rng = seeded(seed);
    (0..count)
        .map(|_| {
            let len = rng.random_range(2..=max_len);
            (0..len).map(|_| gens[rng.random_range(0..gens.len())].clone()).collect()
        })
        .collect()
}

/// Weight law over the catalog plus rewrite-versus-solver agreement.
pub fn weight_and_rewrite_check(n: usize, m: usize, catalog: &Catalog, words: usize, seed: u64) -> Result<Report> {
    let ctx = StraightenContext::new(n, m)?;
    let mut rep = Report::new("weight-rewrite").with_seed(seed);
    rep.merge(weight_law(&catalog.relations, &WeightContext::new(n, m)));
    let ws = random_words(&ctx, words, 4, seed);
    let outcomes: Vec<Option<String>> = ws
        .par_iter()
        .map(|w| {
            let solved = match straighten_solve(&ctx, w) {
                Ok(r) => r,
                Err(e) => return Some(format!("{}: solver: {e}", fmt_word(w))),
            };
            match straighten_rewrite(w, catalog) {
                Ok((r, _)) if r.rhs_map() == solved.rhs_map() => None,
                Ok(_) => Some(format!("{}: rewrite and solver disagree", fmt_word(w))),
                Err(e) => Some(format!("{}: rewrite: {e}", fmt_word(w))),
            }
        })
        .collect();
    outcomes.into_iter().flatten().for_each(|f| rep.fail(f));
    rep.detail(format!("random words={words}"));
    Ok(rep)
}

pub fn doset_lattice_check(max_m: usize, max_n: usize) -> Result<Report> {
    let mut rep = Report::new("doset-lattice");
    for n in 1..=max_n {
        for m in n..=max_m {
            rep.merge(doset_axioms_check(m, n)?);
            rep.merge(lattice_check(m, n)?);
        }
    }
    Ok(rep)
}

/// Nonzero K{D} products of `d` letters, which must be the standard words.
pub fn discrete_standard_count(n: usize, m: usize, d: usize) -> Result<usize> {
    let ctx = DosetContext::new(n, m)?;
    let mut images = BTreeSet::new();
    for w in monomials_of_length(&ctx.doset(), d) {
        let mut acc = DiscreteProduct::Word(vec![]);
        for s in &w {
            acc = match acc {
                DiscreteProduct::Word(x) => discrete_mul(&ctx, &x, std::slice::from_ref(s))?,
                z => z,
            };
        }
        if let DiscreteProduct::Word(x) = acc {
            images.insert(x);
        }
    }
    Ok(images.len())
}

pub fn rd_hilbert_check(n: usize, m: usize, max_d: usize) -> Result<Report> {
    let mut rep = Report::new("hilbert-rd");
    for d in 0..=max_d {
        let (h, k) = (hilbert_rd(m, n, d)?, discrete_standard_count(n, m, d)?);
        rep.detail(format!("d={d} hilbert_RD={h} K{{D}}={k}"));
        rep.require(h == k, || format!("d={d}: hilbert_RD {h} ≠ discrete count {k}"));
    }
    Ok(rep)
}

pub fn sl2_check(m: usize, max_deg: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("sl2").with_seed(seed);
    for r in 0..=max_deg {
        for s in 0..=max_deg - r {
            for t in 0..=max_deg - r - s {
                let tt = TypeTriple { r, s, t };
                match transition_matrix(m, tt) {
                    Ok(tr) => rep.detail(format!("({r},{s},{t}) size={} order={}", tr.rows.len(), tr.order)),
                    Err(e) if e.is_violation() => rep.fail(format!("({r},{s},{t}): {e}")),
                    Err(e) => return Err(e),
                }
                rep.merge(trace_basis_check(m, tt, seed)?);
            }
        }
    }
    rep.merge(theta_embed_check(3)?);
    Ok(rep)
}

fn sign(k: usize) -> i32 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Words of length ≤ 2 over H are fixed by det +1 samples; a det −1 sample
/// multiplies each by (−1)^(number of u's).
pub fn invariance_suite(n: usize, m: usize, samples: usize, seed: u64) -> Result<Report> {
    let sctx = StraightenContext::new(n, m)?;
    let ctx = &sctx.inv;
    let gens = sctx.doset.generators();
    let base: Vec<SparsePoly> = gens.iter().map(|g| sctx.generator_poly(g).cloned()).collect::<Result<_>>()?;
    let mut words: Vec<Vec<usize>> = (0..gens.len()).map(|i| vec![i]).collect();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            words.push(vec![i, j]);
        }
    }
    let u_count = |w: &[usize]| w.iter().filter(|&&i| matches!(gens[i], Symbol::U(_))).count();
    let mut rep = Report::new("invariance").with_seed(seed);
    let mut plans: Vec<(u64, i32)> = (0..samples as u64).map(|k| (seed.wrapping_add(k), 1)).collect();
    plans.push((seed.wrapping_add(samples as u64), -1));
    let results: Vec<Result<Vec<String>>> = plans
        .par_iter()
        .map(|&(s, det)| {
            let g = random_orthogonal(ctx, s, det)?;
            let images = ctx.action_images(&g.g)?;
            let moved: Vec<SparsePoly> = base.iter().map(|p| p.substitute(&images)).collect::<Result<_>>()?;
            let mut bad = Vec::new();
            for w in &words {
                let prod = |ps: &[SparsePoly]| w.iter().fold(SparsePoly::one(ctx.universe()), |acc, &i| &acc * &ps[i]);
                let want = prod(&base).scale(&q(if det == 1 { 1 } else { sign(u_count(w)) as i64 }));
                if prod(&moved) != want {
                    let word: Word = w.iter().map(|&i| gens[i].clone()).collect();
                    bad.push(format!("det {det} sample {s}: {} not multiplied by the expected sign", fmt_word(&word)));
                }
            }
            Ok(bad)
        })
        .collect();
    for r in results {
        r?.into_iter().for_each(|b| rep.fail(b));
    }
    rep.detail(format!("n={n} m={m} words={} det+1 samples={samples} det−1 samples=1", words.len()));
    Ok(rep)
}

/// Acceptance criterion `k` (1..=12) at its fixed sizes.
pub fn criterion(k: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new(format!("criterion-{k}")).with_seed(seed);
    match k {
        1 => rep.merge(worked_example_check()?),
        2 => {
            for (n, m) in [(1, 3), (2, 4), (3, 5)] {
                rep.merge(lemma_check(n, m)?);
            }
        }
        3 => rep.merge(basis_spanning_check(2, 4, 3)?),
        4 => rep.merge(quadric_cone_check(5, seed)?),
        5 => rep.merge(dims_check(4, seed)?),
        6 => rep.merge(sing_check(3, seed)?),
        7 => {
            for (n, m) in [(2, 3), (2, 4)] {
                let cat = Catalog::build(&StraightenContext::new(n, m)?)?;
                rep.merge(shape_check(n, m, &cat));
            }
        }
        8 => {
            let cat = Catalog::build(&StraightenContext::new(2, 4)?)?;
            rep.merge(weight_and_rewrite_check(2, 4, &cat, 100, seed)?);
        }
        9 => rep.merge(doset_lattice_check(4, 3)?),
        10 => {
            for m in [3, 4] {
                rep.merge(dalg_axioms_check(m, 2, None)?);
                rep.merge(rd_hilbert_check(2, m, 3)?);
            }
        }
        11 => rep.merge(guard("sl2", sl2_check(4, 2, seed))?),
        12 => {
            for (n, m) in [(2, 4), (3, 4)] {
                rep.merge(invariance_suite(n, m, 20, seed)?);
            }
        }
        _ => return Err(Error::Invalid(format!("no criterion {k}"))),
    }
    Ok(rep)
}

pub const CRITERIA: usize = 12;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n: usize,
    pub m: usize,
    /// Word length bound for the basis check.
    pub d: usize,
    /// Minor bound for the D_t checks.
    pub t: usize,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { n: 2, m: 4, d: 3, t: 2, seed: 1, cache_dir: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub theorem: String,
    pub pass: bool,
    pub seconds: f64,
    pub report: Report,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub t: usize,
    pub pass: bool,
    pub checks: Vec<CheckOutcome>,
}

/// Size limits for `verify-all`, so a run stays in the minutes range.
pub fn validate_config(c: &VerifyConfig) -> Result<()> {
    DosetContext::new(c.n, c.m)?;
    if c.m > 5 || c.n > 3 {
        return Err(Error::Unsupported(format!("verify-all supports n ≤ 3, m ≤ 5, got n={} m={}", c.n, c.m)));
    }
    if c.d > 3 {
        return Err(Error::Unsupported(format!("verify-all supports d ≤ 3, got {}", c.d)));
    }
    if c.t < 1 || c.t > c.m + 1 {
        return Err(Error::Unsupported(format!("need 1 ≤ t ≤ m+1, got t={}", c.t)));
    }
    Ok(())
}

/// Runs each theorem-tagged suite at the configured sizes.
pub fn verify_all(c: &VerifyConfig) -> Result<VerifyReport> {
    validate_config(c)?;
    let (n, m, seed) = (c.n, c.m, c.seed);
    let sctx = StraightenContext::new(n, m)?;
    let catalog = Catalog::load_or_build(&sctx, c.cache_dir.as_deref())?;
    let dm = m.min(3);
    type Job<'a> = (&'static str, Box<dyn Fn() -> Result<Report> + 'a>);
    let jobs: Vec<Job> = vec![
        ("capMain", Box::new(|| basis_spanning_check(n, m, c.d))),
        ("iden", Box::new(|| {
            let mut r = Report::new("iden");
            r.merge(worked_example_check()?);
            for d in 0..=c.d {
                let t = c.t.min(dm + 1);
                r.merge(independence_by_points(dm, t, d, 3 * hilbert_dt(dm, t, d)? + 3, seed)?);
            }
            Ok(r)
        })),
        ("iso", Box::new(|| dims_check(dm, seed))),
        ("sing", Box::new(|| sing_check(dm, seed))),
        ("mainprime", Box::new(|| rd_hilbert_check(n, m, c.d))),
        ("present″", Box::new(|| {
            let mut r = Report::new("present″");
            r.merge(catalog.verify(&sctx)?);
            if n >= 2 {
                r.merge(lemma_check(n, m)?);
            }
            r.merge(shape_check(n, m, &catalog));
            r.merge(weight_and_rewrite_check(n, m, &catalog, 20, seed)?);
            if n >= 2 {
                r.merge(invariance_suite(n, m, 3, seed)?);
            }
            let dt = presentation_dt(dm, c.t.min(dm + 1))?;
            r.detail(format!("D_t presentation: {} generators, {} relations", dt.generators.len(), dt.relations.len()));
            Ok(r)
        })),
        ("standard", Box::new(|| sl2_check(4, 1, seed))),
        ("dos", Box::new(|| doset_lattice_check(m, n))),
        ("dalg", Box::new(|| dalg_axioms_check(m, n, Some(&catalog)))),
    ];
    let mut checks = Vec::new();
    for (theorem, job) in jobs {
        let start = Instant::now();
        let rep = guard(theorem, job())?;
        checks.push(CheckOutcome {
            theorem: theorem.into(),
            pass: rep.pass,
            seconds: (start.elapsed().as_secs_f64() * 1000.0).round() / 1000.0,
            report: rep,
        });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { seed, n, m, d: c.d, t: c.t, pass, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites() {
        assert!(lemma_check(2, 3).unwrap().pass);
        assert!(basis_spanning_check(2, 3, 2).unwrap().pass);
        assert!(worked_example_check().unwrap().pass);
        assert!(rd_hilbert_check(2, 3, 2).unwrap().pass);
        assert!(invariance_suite(2, 3, 2, 4).unwrap().pass);
        assert!(criterion(13, 0).is_err());
    }

    #[test]
    fn random_words_are_reproducible() {
        let ctx = StraightenContext::new(2, 3).unwrap();
        let a = random_words(&ctx, 10, 4, 7);
        assert_eq!(a, random_words(&ctx, 10, 4, 7));
        assert!(a.iter().all(|w| (2..=4).contains(&w.len())));
    }

    #[test]
    fn config_bounds() {
        assert!(validate_config(&VerifyConfig::default()).is_ok());
        let bad = VerifyConfig { m: 1, n: 2, ..Default::default() };
        assert!(matches!(validate_config(&bad), Err(Error::PolynomialRegime(_))));
        let bad = VerifyConfig { d: 9, ..Default::default() };
        assert!(validate_config(&bad).is_err());
    }
}
