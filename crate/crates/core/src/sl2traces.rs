//! Invariants of SL₂ acting by conjugation on m copies of sl₂: trace
//! generators, the identification θ with K³ and its SO₃ action, the map ω
//! onto Type II trace patterns and the transition matrix between standard
//! p/u monomials and standard trace monomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{enumerate_standard, tup, tuples, Family, Grading, MinorPair, Symbol, Word};
use crate::error::{Error, Result};
use crate::exactalg::{det_symbolic, exact_rank, q, q_frac, QuadExt, RationalMatrix, SparsePoly, Universe, Q};
use crate::report::Report;
use crate::rng::{seeded, small_int};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "t", rename_all = "lowercase")]
pub enum TraceSymbol {
    /// tr(A_i A_j), i ≥ j.
    U2 { i: u8, j: u8 },
    /// tr(A_i A_j A_k), i < j < k.
    U3 { i: u8, j: u8, k: u8 },
}

impl TraceSymbol {
    /// U(i,j) with the indices put in decreasing order.
    pub fn u2(i: usize, j: usize) -> Self {
        TraceSymbol::U2 { i: i.max(j) as u8, j: i.min(j) as u8 }
    }

    pub fn u3(i: usize, j: usize, k: usize) -> Result<Self> {
        if !(i < j && j < k) {
            return Err(Error::Invalid(format!("U({i},{j},{k}) needs i < j < k")));
        }
        Ok(TraceSymbol::U3 { i: i as u8, j: j as u8, k: k as u8 })
    }
}

impl fmt::Display for TraceSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceSymbol::U2 { i, j } => write!(f, "U({i},{j})"),
            TraceSymbol::U3 { i, j, k } => write!(f, "U({i},{j},{k})"),
        }
    }
}

/// (r, s, t): numbers of size-1 pairs, size-2 pairs and u's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeTriple {
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

#[derive(Clone, Debug)]
pub struct Sl2Context {
    pub m: usize,
    pub universe: Arc<Universe>,
    /// Formal variables, one per trace symbol.
    pub traces: Arc<Universe>,
    symbols: Vec<TraceSymbol>,
    index: HashMap<TraceSymbol, usize>,
}

impl Sl2Context {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > 16 {
            return Err(Error::Unsupported(format!("need 1 ≤ m ≤ 16, got {m}")));
        }
        let mut symbols = Vec::new();
        for i in 1..=m {
            for j in 1..=i {
                symbols.push(TraceSymbol::u2(i, j));
            }
        }
        for t in tuples(3, m) {
            let e = t.entries();
            symbols.push(TraceSymbol::u3(e[0] as usize, e[1] as usize, e[2] as usize)?);
        }
        let index = symbols.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        let traces = Universe::named(symbols.iter().map(|s| s.to_string()));
        Ok(Sl2Context { m, universe: Universe::sl2(m), traces, symbols, index })
    }

    pub fn symbols(&self) -> &[TraceSymbol] {
        &self.symbols
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.m {
            return Err(Error::Invalid(format!("index {i} is outside 1..={}", self.m)));
        }
        Ok(())
    }

    /// A_i = [[a_i, b_i], [c_i, −a_i]] over coefficients C.
    fn matrix<C: crate::exactalg::Coeff>(&self, i: usize) -> [[SparsePoly<C>; 2]; 2] {
        let v = |w| SparsePoly::<C>::var(&self.universe, self.universe.sl2_index(i, w));
        [[v(0), v(1)], [v(2), -v(0)]]
    }

    /// tr(A_i A_j).
    pub fn trace2(&self, i: usize, j: usize) -> Result<SparsePoly> {
        self.check(i)?;
        self.check(j)?;
        Ok(trace(&[self.matrix(i), self.matrix(j)]))
    }

    /// tr(A_i A_j A_k) for any indices; zero when two coincide.
    pub fn trace3(&self, i: usize, j: usize, k: usize) -> Result<SparsePoly> {
        for x in [i, j, k] {
            self.check(x)?;
        }
        Ok(trace(&[self.matrix(i), self.matrix(j), self.matrix(k)]))
    }

    pub fn trace_poly(&self, s: &TraceSymbol) -> Result<SparsePoly> {
        match *s {
            TraceSymbol::U2 { i, j } => self.trace2(i as usize, j as usize),
            TraceSymbol::U3 { i, j, k } => self.trace3(i as usize, j as usize, k as usize),
        }
    }

    /// The formal variable of a trace symbol.
    pub fn trace_var(&self, s: &TraceSymbol) -> SparsePoly {
        SparsePoly::var(&self.traces, self.index[s])
    }

    /// Exponent vector of a product of trace symbols.
    fn monomial(&self, syms: &[TraceSymbol]) -> Vec<u32> {
        let mut e = vec![0; self.symbols.len()];
        for s in syms {
            e[self.index[s]] += 1;
        }
        e
    }

    /// θ(A_i) = (b/√2, −a, c/√2).
    pub fn theta(&self, i: usize) -> [SparsePoly<QuadExt>; 3] {
        let v = |w| SparsePoly::<QuadExt>::var(&self.universe, self.universe.sl2_index(i, w));
        let half_root = QuadExt::new(Q::zero(), q_frac(1, 2));
        [v(1).scale(&half_root), -v(0), v(2).scale(&half_root)]
    }
}

fn mat_mul<C: crate::exactalg::Coeff>(x: &[[SparsePoly<C>; 2]; 2], y: &[[SparsePoly<C>; 2]; 2]) -> [[SparsePoly<C>; 2]; 2] {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn trace<C: crate::exactalg::Coeff>(ms: &[[[SparsePoly<C>; 2]; 2]]) -> SparsePoly<C> {
    let mut acc = ms[0].clone();
    for m in &ms[1..] {
        acc = mat_mul(&acc, m);
    }
    &acc[0][0] + &acc[1][1]
}

/// ⟨u, v⟩ for the anti-diagonal form on K³.
fn form_j(u: &[SparsePoly<QuadExt>; 3], v: &[SparsePoly<QuadExt>; 3]) -> SparsePoly<QuadExt> {
    &u[0] * &v[2] + &u[1] * &v[1] + &u[2] * &v[0]
}

fn to_quad(p: &SparsePoly) -> SparsePoly<QuadExt> {
    p.map_coeffs(|c| QuadExt::rational(c.clone()))
}

/// tr(A_iA_j) = 2⟨θ(A_i),θ(A_j)⟩ for all i, j and tr(A_iA_jA_k) =
/// 2·det(θ(A_i),θ(A_j),θ(A_k)) for all i < j < k, over Q(√2).
pub fn theta_embed_check(m: usize) -> Result<Report> {
    let ctx = Sl2Context::new(m)?;
    let mut rep = Report::new("theta-embed");
    let two = QuadExt::rational(q(2));
    let thetas: Vec<_> = (1..=m).map(|i| ctx.theta(i)).collect();
    let mut checked = 0;
    for i in 1..=m {
        for j in 1..=m {
            let lhs = to_quad(&ctx.trace2(i, j)?);
            let rhs = form_j(&thetas[i - 1], &thetas[j - 1]).scale(&two);
            checked += 1;
            rep.require(lhs == rhs, || format!("tr(A{i}A{j}) ≠ 2⟨θ{i},θ{j}⟩"));
            rep.require(rhs.terms().all(|(_, c)| c.as_rational().is_some()), || format!("2⟨θ{i},θ{j}⟩ is not rational"));
        }
    }
    for t in tuples(3, m) {
        let e: Vec<usize> = t.entries().iter().map(|&x| x as usize).collect();
        let rows: Vec<Vec<SparsePoly<QuadExt>>> = e.iter().map(|&x| thetas[x - 1].to_vec()).collect();
        let det = det_symbolic(&rows)?.scale(&two);
        let tr = to_quad(&ctx.trace3(e[0], e[1], e[2])?);
        checked += 1;
        rep.require(tr == det, || format!("tr(A{}A{}A{}) ≠ 2·det θ", e[0], e[1], e[2]));
    }
    rep.detail(format!("m={m} identities={checked}"));
    Ok(rep)
}

/// ω(p(A,B)) for A = (a,b), B = (c,d) of size 2.
pub fn omega(p: &MinorPair) -> Result<(TraceSymbol, TraceSymbol)> {
    if p.size() != 2 {
        return Err(Error::Invalid(format!("ω needs a pair of 2-subsets, got {p:?}")));
    }
    let (a, b) = (p.a().entries()[0] as usize, p.a().entries()[1] as usize);
    let (c, d) = (p.b().entries()[0] as usize, p.b().entries()[1] as usize);
    Ok(if d >= a {
        (TraceSymbol::u2(b, c), TraceSymbol::u2(d, a))
    } else {
        (TraceSymbol::u2(b, d), TraceSymbol::u2(a, c))
    })
}

/// U(j,i)U(l,k) can be written with α₁ ≥ α₂ ≥ α₃ ≥ α₄.
pub fn is_standard_type1(x: &TraceSymbol, y: &TraceSymbol) -> bool {
    match (x, y) {
        (TraceSymbol::U2 { i: j, j: i }, TraceSymbol::U2 { i: l, j: k }) => i >= l || k >= j,
        _ => false,
    }
}

/// Non-standard degree-2 Type I trace monomials, as sorted pairs.
pub fn nonstandard_type1(m: usize) -> Vec<(TraceSymbol, TraceSymbol)> {
    let u2: Vec<TraceSymbol> = (1..=m).flat_map(|i| (1..=i).map(move |j| TraceSymbol::u2(i, j))).collect();
    let mut out = Vec::new();
    for (x, s) in u2.iter().enumerate() {
        for t in &u2[x..] {
            if !is_standard_type1(s, t) {
                out.push((s.clone(), t.clone()));
            }
        }
    }
    out
}

fn triple_of(w: &[Symbol]) -> TypeTriple {
    let mut tt = TypeTriple { r: 0, s: 0, t: 0 };
    for s in w {
        match s {
            Symbol::Pair(p) if p.size() == 1 => tt.r += 1,
            Symbol::Pair(_) => tt.s += 1,
            _ => tt.t += 1,
        }
    }
    tt
}

/// M_{r,s,t}: standard monomials of S for n = 3 with the given counts.
pub fn standard_of_type(m: usize, tt: TypeTriple) -> Result<Vec<Word>> {
    let words = enumerate_standard(m, 3, Family::S, &Grading::Degree(tt.r + tt.s + tt.t))?;
    Ok(words.into_iter().filter(|w| triple_of(w) == tt).collect())
}

/// ω on a standard monomial, as a product of trace symbols.
pub fn omega_word(w: &[Symbol]) -> Result<Vec<TraceSymbol>> {
    let mut out = Vec::new();
    for s in w {
        match s {
            Symbol::Pair(p) if p.size() == 1 => {
                out.push(TraceSymbol::u2(p.a().entries()[0] as usize, p.b().entries()[0] as usize))
            }
            Symbol::Pair(p) => {
                let (x, y) = omega(p)?;
                out.push(x);
                out.push(y);
            }
            Symbol::U(i) => {
                let e = i.entries();
                out.push(TraceSymbol::u3(e[0] as usize, e[1] as usize, e[2] as usize)?);
            }
            Symbol::One => return Err(Error::Invalid("1 has no trace image".into())),
        }
    }
    out.sort();
    Ok(out)
}

/// Indexing tuple: size-2 pairs as (a₂,a₁,b₂,b₁), then the
/// size-1 indices, then the u indices.
pub fn n_tuple(w: &[Symbol]) -> Vec<u8> {
    let mut big = Vec::new();
    let mut alpha = Vec::new();
    let mut us = Vec::new();
    for s in w {
        match s {
            Symbol::Pair(p) if p.size() == 2 => {
                let (a, b) = (p.a().entries(), p.b().entries());
                big.extend([a[1], a[0], b[1], b[0]]);
            }
            Symbol::Pair(p) => alpha.extend([p.a().entries()[0], p.b().entries()[0]]),
            Symbol::U(i) => us.extend_from_slice(i.entries()),
            Symbol::One => {}
        }
    }
    big.extend(alpha);
    big.extend(us);
    big
}

/// Expansion of a standard monomial into trace symbols:
/// p(i,j) = ½U(i,j), p(A,B) = ¼(U(a,c)U(b,d) − U(b,c)U(a,d)), u(I) = ½U(I).
pub fn expand_in_traces(ctx: &Sl2Context, w: &[Symbol]) -> Result<SparsePoly> {
    let mut acc = SparsePoly::one(&ctx.traces);
    for s in w {
        let f = match s {
            Symbol::Pair(p) if p.size() == 1 => {
                ctx.trace_var(&TraceSymbol::u2(p.a().entries()[0] as usize, p.b().entries()[0] as usize))
                    .scale(&q_frac(1, 2))
            }
            Symbol::Pair(p) if p.size() == 2 => {
                let (a, b) = (p.a().entries()[0] as usize, p.a().entries()[1] as usize);
                let (c, d) = (p.b().entries()[0] as usize, p.b().entries()[1] as usize);
                let u = |x, y| ctx.trace_var(&TraceSymbol::u2(x, y));
                (u(a, c) * u(b, d) - u(b, c) * u(a, d)).scale(&q_frac(1, 4))
            }
            Symbol::U(i) => {
                let e = i.entries();
                ctx.trace_var(&TraceSymbol::u3(e[0] as usize, e[1] as usize, e[2] as usize)?).scale(&q_frac(1, 2))
            }
            _ => return Err(Error::Invalid(format!("{s} has no trace expansion"))),
        };
        acc = acc * f;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct Transition {
    pub m: usize,
    pub triple: TypeTriple,
    /// M_{r,s,t} in the chosen order.
    pub rows: Vec<Word>,
    /// ω of each row.
    pub cols: Vec<Vec<TraceSymbol>>,
    /// Direction of the lexicographic order on n-tuples that makes the
    /// matrix upper triangular: "descending" or "ascending".
    pub order: String,
    #[serde(serialize_with = "matrix_strings")]
    pub matrix: RationalMatrix,
    pub flags: Vec<String>,
}

fn matrix_strings<S: serde::Serializer>(a: &RationalMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = a.to_rows().iter().map(|r| r.iter().map(crate::exactalg::fmt_q).collect()).collect();
    rows.serialize(s)
}

fn upper_with_nonzero_diagonal(a: &RationalMatrix) -> bool {
    (0..a.rows()).all(|i| !a[(i, i)].is_zero() && (0..i).all(|j| a[(i, j)].is_zero()))
}

/// Rows are the standard p/u monomials of type (r,s,t), columns their ω
/// images, entries the coefficient of each column monomial in the trace
/// expansion of each row. Both directions of the n-tuple order are tried.
pub fn transition_matrix(m: usize, tt: TypeTriple) -> Result<Transition> {
    let ctx = Sl2Context::new(m)?;
    let mut rows = standard_of_type(m, tt)?;
    let mut flags = Vec::new();
    if m <= 3 {
        flags.push(format!("m = {m} ≤ 3: the basis theorem assumes m > 3"));
    }
    rows.sort_by_key(|w| n_tuple(w));
    let build = |rows: &[Word]| -> Result<(RationalMatrix, Vec<Vec<TraceSymbol>>)> {
        let cols: Vec<Vec<TraceSymbol>> = rows.iter().map(|w| omega_word(w)).collect::<Result<_>>()?;
        let mut col_of: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for (k, c) in cols.iter().enumerate() {
            if col_of.insert(ctx.monomial(c), k).is_some() {
                return Err(Error::TheoremViolation(format!("ω is not injective on type ({},{},{})", tt.r, tt.s, tt.t)));
            }
        }
        let mut a = RationalMatrix::zeros(rows.len(), rows.len());
        for (i, w) in rows.iter().enumerate() {
            for (e, c) in expand_in_traces(&ctx, w)?.terms() {
                if let Some(&j) = col_of.get(e) {
                    a[(i, j)] = c.clone();
                }
            }
        }
        Ok((a, cols))
    };
    for order in ["descending", "ascending"] {
        let mut r = rows.clone();
        if order == "descending" {
            r.reverse();
        }
        let (a, cols) = build(&r)?;
        if upper_with_nonzero_diagonal(&a) {
            return Ok(Transition { m, triple: tt, rows: r, cols, order: order.into(), matrix: a, flags });
        }
    }
    Err(Error::TheoremViolation(format!(
        "transition matrix for type ({},{},{}) at m = {m} is not triangular in either n-tuple order",
        tt.r, tt.s, tt.t
    )))
}

/// Values of all trace symbols at a point A_1..A_m with integer entries.
fn trace_values(ctx: &Sl2Context, point: &[Q]) -> Result<Vec<Q>> {
    ctx.symbols.iter().map(|s| ctx.trace_poly(s)?.eval(point)).collect()
}

fn eval_monomial(e: &[u32], vals: &[Q]) -> Q {
    e.iter()
        .zip(vals)
        .filter(|(k, _)| **k > 0)
        .fold(Q::one(), |acc, (k, v)| acc * num_traits::pow(v.clone(), *k as usize))
}

/// Rank of N_{r,s,t} evaluated at random points of sl₂^m against |M_{r,s,t}|.
pub fn trace_basis_check(m: usize, tt: TypeTriple, seed: u64) -> Result<Report> {
    let ctx = Sl2Context::new(m)?;
    let mut rep = Report::new("trace-basis").with_seed(seed);
    if m <= 3 {
        rep.flag(format!("m = {m} ≤ 3: the basis theorem assumes m > 3"));
    }
    let rows = standard_of_type(m, tt)?;
    let images: std::collections::BTreeSet<Vec<u32>> =
        rows.iter().map(|w| omega_word(w).map(|c| ctx.monomial(&c))).collect::<Result<_>>()?;
    let monos: Vec<Vec<u32>> = images.into_iter().collect();
    let mut rng = seeded(seed);
    // a first batch barely larger than the count usually suffices; a second
    // batch is drawn only on a deficit
    let mut mat: Vec<Vec<Q>> = Vec::new();
    let mut rank = 0;
    for batch in [monos.len() + 4, monos.len() + 4] {
        for _ in 0..batch {
            let point: Vec<Q> = (0..ctx.universe.len()).map(|_| small_int(&mut rng, 3)).collect();
            let vals = trace_values(&ctx, &point)?;
            mat.push(monos.iter().map(|e| eval_monomial(e, &vals)).collect());
        }
        rank = if monos.is_empty() { 0 } else { exact_rank(&RationalMatrix::from_rows(mat.clone())?) };
        if rank == monos.len() {
            break;
        }
    }
    let npts = mat.len();
    rep.detail(format!(
        "m={m} type=({},{},{}) count={} images={} rank={rank} points={npts}",
        tt.r,
        tt.s,
        tt.t,
        rows.len(),
        monos.len()
    ));
    rep.require(monos.len() == rows.len(), || format!("ω sends {} standard monomials to {} trace monomials", rows.len(), monos.len()));
    rep.require(rank == monos.len(), || format!("rank {rank} < {} trace monomials", monos.len()));
    Ok(rep)
}

/// A random g ∈ SL₂(Q): integer first column and b, d solved for det 1.
pub fn random_sl2(seed: u64) -> [[Q; 2]; 2] {
    let mut rng = seeded(seed);
    loop {
        let (a, b, c) = (small_int(&mut rng, 4), small_int(&mut rng, 4), small_int(&mut rng, 4));
        if a.is_zero() {
            continue;
        }
        // a d − b c = 1
        let d = (Q::one() + &b * &c) / &a;
        return [[a, b], [c, d]];
    }
}

/// Images of a_i, b_i, c_i under A_i ↦ g A_i g⁻¹.
pub fn conjugation_images(ctx: &Sl2Context, g: &[[Q; 2]; 2]) -> Vec<SparsePoly> {
    let u = &ctx.universe;
    let ginv = [[g[1][1].clone(), -g[0][1].clone()], [-g[1][0].clone(), g[0][0].clone()]];
    let c = |x: &Q| SparsePoly::constant(u, x.clone());
    let gm = [[c(&g[0][0]), c(&g[0][1])], [c(&g[1][0]), c(&g[1][1])]];
    let gi = [[c(&ginv[0][0]), c(&ginv[0][1])], [c(&ginv[1][0]), c(&ginv[1][1])]];
    let mut images = vec![SparsePoly::zero(u); u.len()];
    for i in 1..=ctx.m {
        let x = mat_mul(&mat_mul(&gm, &ctx.matrix(i)), &gi);
        images[u.sl2_index(i, 0)] = x[0][0].clone();
        images[u.sl2_index(i, 1)] = x[0][1].clone();
        images[u.sl2_index(i, 2)] = x[1][0].clone();
    }
    images
}

/// Every trace generator is fixed by conjugation with `samples` random
/// elements of SL₂(Q).
pub fn adjoint_invariance_check(m: usize, samples: usize, seed: u64) -> Result<Report> {
    let ctx = Sl2Context::new(m)?;
    let mut rep = Report::new("adjoint-invariance").with_seed(seed);
    let polys: Vec<(TraceSymbol, SparsePoly)> =
        ctx.symbols.iter().map(|s| Ok((s.clone(), ctx.trace_poly(s)?))).collect::<Result<_>>()?;
    for k in 0..samples {
        let g = random_sl2(seed.wrapping_add(k as u64));
        let images = conjugation_images(&ctx, &g);
        for (s, p) in &polys {
            let moved = p.substitute(&images)?;
            rep.require(&moved == p, || format!("{s} moved by sample {k}"));
        }
    }
    rep.detail(format!("m={m} samples={samples} generators={}", polys.len()));
    Ok(rep)
}

/// Index tuple helper for tests and the CLI.
pub fn pair2(a: [u8; 2], b: [u8; 2]) -> Result<MinorPair> {
    MinorPair::new(tup(&a), tup(&b))
}
