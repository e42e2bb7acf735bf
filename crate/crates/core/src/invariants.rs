//! Generators of the SO_n invariants of m vectors: Gram minors p(A,B) and
//! row determinants u(I) as polynomials in the coordinates u_{ik}.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::IndexTuple;
use crate::error::{Error, Result};
use crate::exactalg::{det_symbolic, exact_rank, RationalMatrix, SparsePoly, Universe, Q};
use crate::report::Report;
use crate::rng::{seeded, small_int};

/// Matrix of the bilinear form on V = K^n.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    /// ⟨x,y⟩ = Σ x_k y_k. With this form u(I)u(J) = p(I,J) exactly.
    #[default]
    Identity,
    /// ⟨x,y⟩ = Σ x_k y_{n+1−k}. Here u(I)u(J) = det(J_n)·p(I,J).
    AntiDiagonal,
}

impl Form {
    /// F[k][l], 0-based.
    pub fn entry(&self, n: usize, k: usize, l: usize) -> i64 {
        let hit = match self {
            Form::Identity => k == l,
            Form::AntiDiagonal => k + l == n - 1,
        };
        hit as i64
    }

    pub fn matrix(&self, n: usize) -> RationalMatrix {
        let mut f = RationalMatrix::zeros(n, n);
        for k in 0..n {
            for l in 0..n {
                f[(k, l)] = Q::from_integer(self.entry(n, k, l).into());
            }
        }
        f
    }

    /// det F: 1 for the identity, (−1)^⌊n/2⌋ for the anti-diagonal form.
    pub fn det(&self, n: usize) -> i64 {
        match self {
            Form::Identity => 1,
            Form::AntiDiagonal => {
                if (n / 2) % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct InvariantContext {
    pub n: usize,
    pub m: usize,
    pub form: Form,
    universe: Arc<Universe>,
}

impl InvariantContext {
    /// Any m ≥ 1 is allowed; operations involving u(I) additionally need m ≥ n.
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Self::with_form(n, m, Form::default())
    }

    pub fn with_form(n: usize, m: usize, form: Form) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Unsupported("need n ≥ 1 and m ≥ 1".into()));
        }
        if m > 16 || n > 8 {
            return Err(Error::Unsupported(format!("(n,m) = ({n},{m}) is beyond the supported bounds")));
        }
        Ok(InvariantContext { n, m, form, universe: Universe::u_matrix(m, n) })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn u_var(&self, i: usize, k: usize) -> SparsePoly {
        SparsePoly::var(&self.universe, self.universe.u_index(i, k))
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.m {
            return Err(Error::Invalid(format!("row index {i} outside [1,{}]", self.m)));
        }
        Ok(())
    }

    fn check_tuple(&self, t: &IndexTuple) -> Result<()> {
        if t.max_entry() > self.m {
            return Err(Error::Invalid(format!("{t} has an entry above m = {}", self.m)));
        }
        Ok(())
    }

    /// φ_ij = ⟨u_i, u_j⟩.
    pub fn gram_entry(&self, i: usize, j: usize) -> Result<SparsePoly> {
        self.check_row(i)?;
        self.check_row(j)?;
        let n = self.n;
        let mut acc = SparsePoly::zero(&self.universe);
        for k in 1..=n {
            for l in 1..=n {
                if self.form.entry(n, k - 1, l - 1) != 0 {
                    acc = &acc + &(&self.u_var(i, k) * &self.u_var(j, l));
                }
            }
        }
        Ok(acc)
    }

    /// The minor of (φ_ij) with rows A and columns B; p(∅,∅) = 1.
    pub fn p_minor(&self, a: &IndexTuple, b: &IndexTuple) -> Result<SparsePoly> {
        if a.len() != b.len() {
            return Err(Error::Invalid(format!("minor ({a},{b}) is not square")));
        }
        if a.len() > self.n {
            return Err(Error::Invalid(format!(
                "minor of size {} > n = {} is identically zero beyond rank",
                a.len(),
                self.n
            )));
        }
        self.check_tuple(a)?;
        self.check_tuple(b)?;
        if a.is_empty() {
            return Ok(SparsePoly::one(&self.universe));
        }
        let rows = a
            .entries()
            .iter()
            .map(|&i| b.entries().iter().map(|&j| self.gram_entry(i as usize, j as usize)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        det_symbolic(&rows)
    }

    /// Like [`p_minor`](Self::p_minor) but without the size guard, for
    /// checking that larger minors vanish.
    pub fn gram_minor_unchecked(&self, a: &IndexTuple, b: &IndexTuple) -> Result<SparsePoly> {
        if a.len() != b.len() {
            return Err(Error::Invalid(format!("minor ({a},{b}) is not square")));
        }
        if a.is_empty() {
            return Ok(SparsePoly::one(&self.universe));
        }
        let rows = a
            .entries()
            .iter()
            .map(|&i| b.entries().iter().map(|&j| self.gram_entry(i as usize, j as usize)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        det_symbolic(&rows)
    }

    /// The n×n minor of (u_{ik}) with rows I.
    pub fn u_det(&self, i: &IndexTuple) -> Result<SparsePoly> {
        self.require_u()?;
        if i.len() != self.n {
            return Err(Error::Invalid(format!("u(I) needs |I| = n = {}, got {i}", self.n)));
        }
        self.check_tuple(i)?;
        let rows = i
            .entries()
            .iter()
            .map(|&r| (1..=self.n).map(|k| self.u_var(r as usize, k)).collect())
            .collect::<Vec<Vec<_>>>();
        det_symbolic(&rows)
    }

    pub fn require_u(&self) -> Result<()> {
        if self.m < self.n {
            return Err(Error::PolynomialRegime(format!(
                "m = {} < n = {}: no n×n row minors; the invariants form a polynomial algebra in the φ_ij",
                self.m, self.n
            )));
        }
        Ok(())
    }

    /// f ↦ f(U·g): u_{ik} ↦ Σ_l u_{il} g_{lk}.
    pub fn act(&self, poly: &SparsePoly, g: &RationalMatrix) -> Result<SparsePoly> {
        let images = self.action_images(g)?;
        poly.substitute(&images)
    }

    pub fn action_images(&self, g: &RationalMatrix) -> Result<Vec<SparsePoly>> {
        if g.rows() != self.n || g.cols() != self.n {
            return Err(Error::Invalid("group element has the wrong size".into()));
        }
        let mut images = Vec::with_capacity(self.m * self.n);
        for i in 1..=self.m {
            for k in 1..=self.n {
                let mut img = SparsePoly::zero(&self.universe);
                for l in 1..=self.n {
                    let c = &g[(l - 1, k - 1)];
                    if !c.is_zero() {
                        img = &img + &self.u_var(i, l).scale(c);
                    }
                }
                images.push(img);
            }
        }
        Ok(images)
    }

    /// Exact Jacobian rank of the φ_ij, i ≤ j, at a random rational point.
    /// Equals m(m+1)/2 iff they are algebraically independent (m ≤ n).
    pub fn gram_jacobian_rank(&self, seed: u64) -> Result<usize> {
        let mut rng = seeded(seed);
        let point: Vec<Q> = (0..self.universe.len()).map(|_| small_int(&mut rng, 9)).collect();
        let mut rows = Vec::new();
        for i in 1..=self.m {
            for j in i..=self.m {
                let f = self.gram_entry(i, j)?;
                rows.push((0..self.universe.len()).map(|v| f.derivative(v).eval(&point)).collect::<Result<Vec<_>>>()?);
            }
        }
        Ok(exact_rank(&RationalMatrix::from_rows(rows)?))
    }
}

/// A rational element of O(V) for the context's form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalSample {
    pub g: RationalMatrix,
    pub det_sign: i32,
}

/// Cayley transform g = (I − S)(I + S)⁻¹ with Sᵀ F = −F S, times the swap of
/// e_1 and e_n when `det_sign` is −1.
pub fn random_orthogonal(ctx: &InvariantContext, seed: u64, det_sign: i32) -> Result<OrthogonalSample> {
    let n = ctx.n;
    if det_sign != 1 && det_sign != -1 {
        return Err(Error::Invalid("det_sign must be ±1".into()));
    }
    if det_sign == -1 && n < 2 {
        return Err(Error::Invalid("a det −1 sample needs n ≥ 2".into()));
    }
    let f = ctx.form.matrix(n);
    let mut rng = seeded(seed);
    for _ in 0..64 {
        let mut x = RationalMatrix::zeros(n, n);
        for k in 0..n {
            for l in k + 1..n {
                let v = small_int(&mut rng, 3);
                x[(l, k)] = -v.clone();
                x[(k, l)] = v;
            }
        }
        let s = f.mul(&x)?;
        if let Some(g) = cayley(&s)? {
            let g = if det_sign == -1 { g.mul(&swap_first_last(n))? } else { g };
            let sample = OrthogonalSample { g, det_sign };
            verify_sample(ctx, &sample)?;
            return Ok(sample);
        }
    }
    Err(Error::Sampling("I + S stayed singular over 64 draws".into()))
}

/// (I − S)(I + S)⁻¹, or `None` if I + S is singular.
pub fn cayley(s: &RationalMatrix) -> Result<Option<RationalMatrix>> {
    let id = RationalMatrix::identity(s.rows());
    match id.add(s)?.inverse()? {
        Some(inv) => Ok(Some(id.sub(s)?.mul(&inv)?)),
        None => Ok(None),
    }
}

pub fn swap_first_last(n: usize) -> RationalMatrix {
    let mut p = RationalMatrix::identity(n);
    if n >= 2 {
        p[(0, 0)] = Q::zero();
        p[(n - 1, n - 1)] = Q::zero();
        p[(0, n - 1)] = Q::one();
        p[(n - 1, 0)] = Q::one();
    }
    p
}

/// gᵀ F g = F and det g = det_sign, exactly.
pub fn verify_sample(ctx: &InvariantContext, s: &OrthogonalSample) -> Result<()> {
    let f = ctx.form.matrix(ctx.n);
    let lhs = s.g.transpose().mul(&f)?.mul(&s.g)?;
    if lhs != f {
        return Err(Error::Sampling("sample does not preserve the form".into()));
    }
    if s.g.determinant()? != Q::from_integer(s.det_sign.into()) {
        return Err(Error::Sampling("sample has the wrong determinant".into()));
    }
    Ok(())
}

/// Checks f(U·g) = expected_sign · f(U) exactly.
pub fn invariance_check(
    ctx: &InvariantContext,
    poly: &SparsePoly,
    g: &OrthogonalSample,
    expected_sign: i32,
) -> Result<Report> {
    let mut rep = Report::new("invariance");
    let moved = ctx.act(poly, &g.g)?;
    let want = poly.scale(&Q::from_integer(expected_sign.into()));
    rep.require(moved == want, || {
        format!("f(U·g) ≠ {expected_sign}·f(U) for a det {} sample", g.det_sign)
    });
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{tup, tuples};
    use crate::exactalg::q;

    #[test]
    fn gram_entry_examples() {
        let c = InvariantContext::new(1, 2).unwrap();
        assert_eq!(c.gram_entry(1, 1).unwrap(), c.u_var(1, 1).pow(2));
        let j = InvariantContext::with_form(2, 2, Form::AntiDiagonal).unwrap();
        let want = &(&j.u_var(1, 1) * &j.u_var(2, 2)) + &(&j.u_var(1, 2) * &j.u_var(2, 1));
        assert_eq!(j.gram_entry(1, 2).unwrap(), want);
        for ctx in [c, j] {
            assert!((&ctx.gram_entry(1, 2).unwrap() - &ctx.gram_entry(2, 1).unwrap()).is_zero());
        }
        assert!(InvariantContext::new(2, 2).unwrap().gram_entry(3, 1).is_err());
    }

    #[test]
    fn minors_and_determinants() {
        let c = InvariantContext::new(2, 2).unwrap();
        assert_eq!(c.p_minor(&IndexTuple::empty(), &IndexTuple::empty()).unwrap(), SparsePoly::one(c.universe()));
        assert_eq!(c.p_minor(&tup(&[2]), &tup(&[1])).unwrap(), c.gram_entry(2, 1).unwrap());
        let u12 = c.u_det(&tup(&[1, 2])).unwrap();
        let want = &(&c.u_var(1, 1) * &c.u_var(2, 2)) - &(&c.u_var(1, 2) * &c.u_var(2, 1));
        assert_eq!(u12, want);
        assert_eq!(c.p_minor(&tup(&[1, 2]), &tup(&[1, 2])).unwrap(), &u12 * &u12);
        assert!(c.p_minor(&tup(&[1, 2, 3]), &tup(&[1, 2, 3])).is_err());
        assert!(c.u_det(&tup(&[1])).is_err());
        let one = InvariantContext::new(1, 3).unwrap();
        assert_eq!(one.u_det(&tup(&[2])).unwrap(), one.u_var(2, 1));
        assert!(matches!(InvariantContext::new(3, 2).unwrap().u_det(&tup(&[1, 2, 3])), Err(Error::PolynomialRegime(_)) | Err(Error::Invalid(_))));
    }

    #[test]
    fn lemma_formula_sign_depends_on_the_form() {
        for n in 1..=3 {
            let m = n + 1;
            for form in [Form::Identity, Form::AntiDiagonal] {
                let c = InvariantContext::with_form(n, m, form).unwrap();
                let d = Q::from_integer(form.det(n).into());
                for i in tuples(n, m) {
                    for j in tuples(n, m) {
                        let lhs = &c.u_det(&i).unwrap() * &c.u_det(&j).unwrap();
                        let rhs = c.p_minor(&i, &j).unwrap().scale(&d);
                        assert_eq!(lhs, rhs, "n={n} {form:?} {i} {j}");
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonal_samples() {
        for form in [Form::Identity, Form::AntiDiagonal] {
            for n in 1..=4 {
                let c = InvariantContext::with_form(n, n, form).unwrap();
                for seed in 0..5 {
                    let s = random_orthogonal(&c, seed, 1).unwrap();
                    verify_sample(&c, &s).unwrap();
                    if n >= 2 {
                        let t = random_orthogonal(&c, seed, -1).unwrap();
                        assert_eq!(t.g.determinant().unwrap(), q(-1));
                    }
                }
            }
        }
        let c = InvariantContext::new(1, 1).unwrap();
        assert!(random_orthogonal(&c, 0, -1).is_err());
    }

    #[test]
    fn zero_generator_gives_identity() {
        let s = RationalMatrix::zeros(3, 3);
        assert_eq!(cayley(&s).unwrap().unwrap(), RationalMatrix::identity(3));
        let p = swap_first_last(2);
        assert_eq!(p.determinant().unwrap(), q(-1));
        let f = Form::AntiDiagonal.matrix(2);
        assert_eq!(p.transpose().mul(&f).unwrap().mul(&p).unwrap(), f);
    }

    #[test]
    fn invariance_of_generators() {
        let c = InvariantContext::new(2, 3).unwrap();
        let plus = random_orthogonal(&c, 7, 1).unwrap();
        let minus = random_orthogonal(&c, 7, -1).unwrap();
        let p11 = c.p_minor(&tup(&[1]), &tup(&[1])).unwrap();
        let u12 = c.u_det(&tup(&[1, 2])).unwrap();
        assert!(invariance_check(&c, &p11, &plus, 1).unwrap().pass);
        assert!(invariance_check(&c, &u12, &plus, 1).unwrap().pass);
        assert!(invariance_check(&c, &u12, &minus, -1).unwrap().pass);
        assert!(!invariance_check(&c, &u12, &minus, 1).unwrap().pass);
    }

    #[test]
    fn gram_entries_independent_when_m_le_n() {
        for m in 1..=3 {
            let c = InvariantContext::new(3, m).unwrap();
            assert_eq!(c.gram_jacobian_rank(11).unwrap(), m * (m + 1) / 2);
        }
        // m > n: φ_ij are dependent
        let c = InvariantContext::new(1, 2).unwrap();
        assert!(c.gram_jacobian_rank(11).unwrap() < 3);
    }
}
