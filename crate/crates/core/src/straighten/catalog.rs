//! The catalog of degree-2 straightening relations, with an on-disk cache.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{residual, straighten_solve, Relation, StraightenContext};
use crate::combinat::{is_standard, monomials_of_length, Symbol, Word};
use crate::error::{Error, Result};
use crate::invariants::Form;
use crate::report::Report;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "SMT_CACHE_DIR";

/// Bumped whenever the catalog format or its conventions change.
pub const CATALOG_FORMAT: u32 = 1;

pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()).map(PathBuf::from)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CatalogKey {
    /// "s" for S, "dt" for K[D_t(Sym M_m)].
    pub family: String,
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Form>,
    pub version: String,
}

impl CatalogKey {
    pub fn s(n: usize, m: usize, form: Form) -> Self {
        CatalogKey { family: "s".into(), n, m, t: None, form: Some(form), version: code_version() }
    }

    pub fn dt(m: usize, t: usize) -> Self {
        CatalogKey { family: "dt".into(), n: t - 1, m, t: Some(t), form: None, version: code_version() }
    }

    pub fn file_name(&self) -> String {
        let mut s = format!("catalog-{}-n{}-m{}", self.family, self.n, self.m);
        if let Some(t) = self.t {
            s += &format!("-t{t}");
        }
        if let Some(f) = self.form {
            s += match f {
                Form::Identity => "-id",
                Form::AntiDiagonal => "-j",
            };
        }
        format!("{s}-v{}.json", self.version)
    }
}

pub fn code_version() -> String {
    format!("{}.{CATALOG_FORMAT}", env!("CARGO_PKG_VERSION"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub key: CatalogKey,
    pub relations: Vec<Relation>,
    #[serde(skip)]
    index: HashMap<Word, usize>,
}

impl Catalog {
    pub fn new(key: CatalogKey, relations: Vec<Relation>) -> Self {
        let index = relations.iter().enumerate().map(|(k, r)| (r.lhs.clone(), k)).collect();
        Catalog { key, relations, index }
    }

    /// Relation whose left side is the canonical degree-2 word `lhs`.
    pub fn get(&self, lhs: &[Symbol]) -> Option<&Relation> {
        self.index.get(lhs).map(|&k| &self.relations[k])
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Catalog = serde_json::from_str(s)?;
        Ok(Catalog::new(c.key, c.relations))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// Builds the S catalog: one exact solve per non-standard degree-2 monomial.
    pub fn build(ctx: &StraightenContext) -> Result<Self> {
        let lhs = nonstandard_degree2(ctx);
        let relations = lhs.par_iter().map(|w| straighten_solve(ctx, w)).collect::<Result<Vec<_>>>()?;
        Ok(Catalog::new(CatalogKey::s(ctx.n(), ctx.m(), ctx.inv.form), relations))
    }

    /// Reads the cached catalog for `ctx` from `dir`, building and writing it
    /// when missing or unreadable. The cached copy is not re-verified here.
    pub fn load_or_build(ctx: &StraightenContext, dir: Option<&Path>) -> Result<Self> {
        let key = CatalogKey::s(ctx.n(), ctx.m(), ctx.inv.form);
        let Some(dir) = dir else {
            return Self::build(ctx);
        };
        let path = dir.join(key.file_name());
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(c) = Self::from_json(&text) {
                if c.key == key {
                    return Ok(c);
                }
            }
        }
        let c = Self::build(ctx)?;
        std::fs::create_dir_all(dir)?;
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, c.to_json()?)?;
        std::fs::rename(&tmp, &path)?;
        Ok(c)
    }

    /// Every relation has a canonical non-standard lhs, standard rhs and zero
    /// residual; every non-standard degree-2 word is covered exactly once.
    pub fn verify(&self, ctx: &StraightenContext) -> Result<Report> {
        let mut rep = Report::new("catalog");
        if self.key.n != ctx.n() || self.key.m != ctx.m() {
            rep.fail(format!("THEOREM-VIOLATION: catalog is for (n,m) = ({},{})", self.key.n, self.key.m));
            return Ok(rep);
        }
        let want = nonstandard_degree2(ctx);
        rep.detail(format!("{} relations, {} non-standard degree-2 words", self.len(), want.len()));
        for w in &want {
            if self.get(w).is_none() {
                rep.fail(format!("THEOREM-VIOLATION: no relation for {}", crate::combinat::fmt_word(w)));
            }
        }
        if self.index.len() != self.relations.len() || self.relations.len() != want.len() {
            rep.fail("THEOREM-VIOLATION: duplicate or extra left sides".to_string());
        }
        let checks: Vec<Option<String>> = self
            .relations
            .par_iter()
            .map(|r| {
                if ctx.doset.validate_word(&r.lhs, false).is_err()
                    || r.rhs.iter().any(|t| ctx.doset.validate_word(&t.w, false).is_err())
                {
                    return Some(format!("THEOREM-VIOLATION: {} uses symbols outside D", r.display()));
                }
                if r.rhs.iter().any(|t| !is_standard(&t.w)) {
                    return Some(format!("THEOREM-VIOLATION: non-standard right side in {}", r.display()));
                }
                match residual(ctx, r) {
                    Ok(p) if p.is_zero() => None,
                    Ok(_) => Some(format!("THEOREM-VIOLATION: nonzero residual for {}", r.display())),
                    Err(e) => Some(format!("THEOREM-VIOLATION: {e}")),
                }
            })
            .collect();
        for f in checks.into_iter().flatten() {
            rep.fail(f);
        }
        Ok(rep)
    }
}

/// Non-standard degree-2 monomials over H, canonical arrangement, sorted.
pub fn nonstandard_degree2(ctx: &StraightenContext) -> Vec<Word> {
    monomials_of_length(&ctx.doset.generators(), 2).into_iter().filter(|w| !is_standard(w)).collect()
}

impl From<Error> for Report {
    fn from(e: Error) -> Self {
        let mut r = Report::new("error");
        r.fail(e.to_string());
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_round_trips_through_the_cache() {
        let ctx = StraightenContext::new(2, 3).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let a = Catalog::load_or_build(&ctx, Some(dir.path())).unwrap();
        let path = dir.path().join(a.key.file_name());
        assert!(path.exists());
        let b = Catalog::load_or_build(&ctx, Some(dir.path())).unwrap();
        assert_eq!(a, b);
        assert!(b.verify(&ctx).unwrap().pass);
        assert_eq!(a.len(), nonstandard_degree2(&ctx).len());
    }

    #[test]
    fn degenerate_catalog_for_n_one() {
        let ctx = StraightenContext::new(1, 2).unwrap();
        let c = Catalog::build(&ctx).unwrap();
        assert!(c.is_empty());
        assert!(c.verify(&ctx).unwrap().pass);
    }

    #[test]
    fn corrupted_catalog_fails_verification() {
        let ctx = StraightenContext::new(2, 3).unwrap();
        let mut c = Catalog::build(&ctx).unwrap();
        c.relations[0].rhs[0].c += crate::exactalg::q(1);
        let c = Catalog::new(c.key.clone(), c.relations);
        let r = c.verify(&ctx).unwrap();
        assert!(!r.pass);
        assert!(r.failures[0].starts_with("THEOREM-VIOLATION"));
    }
}
