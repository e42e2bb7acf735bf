//! Sparse multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{fmt_q, parse_q, Q};
use crate::error::{Error, Result};

/// Coefficient ring for [`SparsePoly`].
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_int(k: i64) -> Self;
}

impl Coeff for Q {
    fn from_int(k: i64) -> Self {
        Q::from_integer(k.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UniverseKind {
    /// Coordinates u_{ik} of an m×n matrix.
    U { m: usize, n: usize },
    /// Entries z_{ij}, i ≤ j, of a generic symmetric m×m matrix.
    Z { m: usize },
    /// Entries a_i, b_i, c_i of m traceless 2×2 matrices [[a,b],[c,−a]].
    Sl2 { m: usize },
    Named,
}

/// The ordered list of variables a polynomial lives over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    pub kind: UniverseKind,
    pub names: Vec<String>,
}

impl Universe {
    pub fn u_matrix(m: usize, n: usize) -> Arc<Self> {
        let mut names = Vec::with_capacity(m * n);
        for i in 1..=m {
            for k in 1..=n {
                names.push(format!("u[{i}][{k}]"));
            }
        }
        Arc::new(Universe { kind: UniverseKind::U { m, n }, names })
    }

    pub fn z_sym(m: usize) -> Arc<Self> {
        let mut names = Vec::new();
        for i in 1..=m {
            for j in i..=m {
                names.push(format!("z[{i}][{j}]"));
            }
        }
        Arc::new(Universe { kind: UniverseKind::Z { m }, names })
    }

    pub fn sl2(m: usize) -> Arc<Self> {
        let mut names = Vec::with_capacity(3 * m);
        for i in 1..=m {
            for l in ["a", "b", "c"] {
                names.push(format!("{l}[{i}]"));
            }
        }
        Arc::new(Universe { kind: UniverseKind::Sl2 { m }, names })
    }

    pub fn named<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Self> {
        let names = names.into_iter().map(Into::into).collect();
        Arc::new(Universe { kind: UniverseKind::Named, names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Position of u_{ik} (1-based indices).
    pub fn u_index(&self, i: usize, k: usize) -> usize {
        match self.kind {
            UniverseKind::U { n, .. } => (i - 1) * n + (k - 1),
            _ => panic!("not a u-universe"),
        }
    }

    /// Position of z_{ij} = z_{ji} (1-based indices).
    pub fn z_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        match self.kind {
            UniverseKind::Z { m } => (i - 1) * (2 * m + 2 - i) / 2 + (j - i),
            _ => panic!("not a z-universe"),
        }
    }

    /// Position of a_i, b_i or c_i: `which` is 0, 1, 2 respectively.
    pub fn sl2_index(&self, i: usize, which: usize) -> usize {
        match self.kind {
            UniverseKind::Sl2 { .. } => 3 * (i - 1) + which,
            _ => panic!("not an sl2-universe"),
        }
    }
}

/// Polynomial as a map from dense exponent vectors to nonzero coefficients.
#[derive(Clone)]
pub struct SparsePoly<C = Q> {
    universe: Arc<Universe>,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> PartialEq for SparsePoly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.terms == other.terms
    }
}

fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl<C: Coeff> SparsePoly<C> {
    pub fn zero(universe: &Arc<Universe>) -> Self {
        SparsePoly { universe: universe.clone(), terms: BTreeMap::new() }
    }

    pub fn one(universe: &Arc<Universe>) -> Self {
        Self::constant(universe, C::one())
    }

    pub fn constant(universe: &Arc<Universe>, c: C) -> Self {
        let mut p = Self::zero(universe);
        if !c.is_zero() {
            p.terms.insert(vec![0; universe.len()], c);
        }
        p
    }

    pub fn var(universe: &Arc<Universe>, idx: usize) -> Self {
        let mut e = vec![0; universe.len()];
        e[idx] = 1;
        let mut p = Self::zero(universe);
        p.terms.insert(e, C::one());
        p
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, merging repeats.
    pub fn from_terms(
        universe: &Arc<Universe>,
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
    ) -> Result<Self> {
        let mut p = Self::zero(universe);
        for (e, c) in terms {
            if e.len() != universe.len() {
                return Err(Error::Invalid(format!(
                    "exponent of length {} in a universe of {} variables",
                    e.len(),
                    universe.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: C) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.universe);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(add_exps(e1, e2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.universe);
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c.clone())).collect();
        SparsePoly { universe: self.universe.clone(), terms }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &C, other: &Self) -> Result<()> {
        self.check(other)?;
        for (e, x) in &other.terms {
            self.add_term(e.clone(), x.clone() * c.clone());
        }
        Ok(())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.universe);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.universe.len() {
            return Err(Error::Invalid("evaluation point has the wrong length".into()));
        }
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Replaces variable i by `images[i]`; the result lives in the images' universe.
    pub fn substitute(&self, images: &[SparsePoly<C>]) -> Result<Self> {
        if images.len() != self.universe.len() {
            return Err(Error::Invalid("one image per variable is required".into()));
        }
        let target = match images.first() {
            Some(p) => p.universe.clone(),
            None => self.universe.clone(),
        };
        if images.iter().any(|p| !same_universe(&p.universe, &target)) {
            return Err(Error::UniverseMismatch);
        }
        let mut powers: Vec<Vec<SparsePoly<C>>> = vec![vec![Self::one(&target)]; images.len()];
        let mut out = Self::zero(&target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.try_mul(&powers[i][k as usize])?;
            }
            for (e2, c2) in t.terms {
                out.add_term(e2, c2);
            }
        }
        Ok(out)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.universe);
        for (e, c) in &self.terms {
            let k = e[var];
            if k > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                out.add_term(e2, c.clone() * C::from_int(k as i64));
            }
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SparsePoly<D> {
        let mut out = SparsePoly::zero(&self.universe);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Degree of every term in each block of variables; `None` if not multihomogeneous.
    pub fn multidegree(&self, block_of: impl Fn(usize) -> usize, blocks: usize) -> Option<Vec<u32>> {
        let mut found: Option<Vec<u32>> = None;
        for e in self.terms.keys() {
            let mut d = vec![0; blocks];
            for (v, &k) in e.iter().enumerate() {
                d[block_of(v)] += k;
            }
            match &found {
                None => found = Some(d),
                Some(f) if *f != d => return None,
                _ => {}
            }
        }
        found
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<'a, C: Coeff> $tr<&'a SparsePoly<C>> for &'a SparsePoly<C> {
            type Output = SparsePoly<C>;
            /// Panics on a universe mismatch; use the `try_` form to get an error instead.
            fn $m(self, rhs: &'a SparsePoly<C>) -> SparsePoly<C> {
                self.$f(rhs).expect("polynomials over different universes")
            }
        }
        impl<C: Coeff> $tr for SparsePoly<C> {
            type Output = SparsePoly<C>;
            fn $m(self, rhs: SparsePoly<C>) -> SparsePoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl<C: Coeff> Neg for &SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn neg(self) -> SparsePoly<C> {
        self.scale(&(-C::one()))
    }
}

impl<C: Coeff> Neg for SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn neg(self) -> SparsePoly<C> {
        -&self
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*{}", self.universe.names[v])?,
                    _ => write!(f, "*{}^{p}", self.universe.names[v])?,
                }
            }
        }
        Ok(())
    }
}

impl<C: Coeff> Debug for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SparsePoly").field("vars", &self.universe.names).field("terms", &self.terms).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: String,
}

/// Wire form `{"vars":[...],"terms":[{"e":[..],"c":"p/q"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl SparsePoly<Q> {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.universe.names.clone(),
            terms: self.terms.iter().map(|(e, c)| TermJson { e: e.clone(), c: fmt_q(c) }).collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let u = Universe::named(j.vars.iter().cloned());
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.e.clone(), parse_q(&t.c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(&u, terms)
    }
}
