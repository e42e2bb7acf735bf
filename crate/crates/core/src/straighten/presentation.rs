//! Presentations of S (generators and degree-2 relations) and of the O_n
//! invariants (φ_ij modulo the (n+1)-minors).

use serde::{Deserialize, Serialize};

use super::catalog::Catalog;
use super::{Relation, StraightenContext};
use crate::combinat::{tuples, IndexTuple, Symbol};
use crate::error::{Error, Result};
use crate::exactalg::{PolyJson, Universe};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorRelation {
    pub rows: IndexTuple,
    pub cols: IndexTuple,
    /// The minor as a polynomial in the φ_ij.
    pub poly: PolyJson,
}

/// O_n: generators φ_ij (i ≤ j), relations the (n+1)-minors of (φ_ij).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnPresentation {
    pub generators: Vec<(usize, usize)>,
    /// Empty when m ≤ n: then the φ_ij are algebraically independent.
    pub relations: Vec<MinorRelation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationBundle {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub generators: Vec<Symbol>,
    pub relations: Vec<Relation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub o_n: Option<OnPresentation>,
}

pub const PRESENTATION_MAX_M: usize = 6;

pub fn on_presentation(n: usize, m: usize) -> Result<OnPresentation> {
    let u = Universe::z_sym(m);
    let minor = |a: &IndexTuple, b: &IndexTuple| crate::detvar::sym_minor_in(&u, a, b);
    let generators = (1..=m).flat_map(|i| (i..=m).map(move |j| (i, j))).collect();
    let mut relations = Vec::new();
    let ts = tuples(n + 1, m);
    for (k, a) in ts.iter().enumerate() {
        for b in &ts[k..] {
            let poly = minor(a, b)?;
            let mut j = poly.to_json();
            j.vars = j.vars.iter().map(|v| v.replacen('z', "phi", 1)).collect();
            relations.push(MinorRelation { rows: a.clone(), cols: b.clone(), poly: j });
        }
    }
    Ok(OnPresentation { generators, relations })
}

/// Generators H_p ∪ H_u of S, its full degree-2 catalog and the O_n sub-bundle.
pub fn presentation(ctx: &StraightenContext, catalog: Option<&Catalog>) -> Result<PresentationBundle> {
    if ctx.m() > PRESENTATION_MAX_M {
        return Err(Error::SizeBound(format!("presentation is limited to m ≤ {PRESENTATION_MAX_M}")));
    }
    let owned;
    let cat = match catalog {
        Some(c) => c,
        None => {
            owned = Catalog::build(ctx)?;
            &owned
        }
    };
    Ok(PresentationBundle {
        family: "s".into(),
        n: Some(ctx.n()),
        m: ctx.m(),
        t: None,
        generators: ctx.doset.generators(),
        relations: cat.relations.clone(),
        o_n: Some(on_presentation(ctx.n(), ctx.m())?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{canonical, tup};
    use crate::straighten::nonstandard_degree2;
    use std::collections::BTreeSet;

    #[test]
    fn degenerate_case() {
        let ctx = StraightenContext::new(1, 2).unwrap();
        let b = presentation(&ctx, None).unwrap();
        assert_eq!(b.generators, vec![Symbol::U(tup(&[1])), Symbol::U(tup(&[2]))]);
        assert!(b.relations.is_empty());
        let on = b.o_n.unwrap();
        assert_eq!(on.generators.len(), 3);
        assert_eq!(on.relations.len(), 1);
    }

    #[test]
    fn every_nonstandard_word_once() {
        let ctx = StraightenContext::new(2, 3).unwrap();
        let b = presentation(&ctx, None).unwrap();
        let lhs: Vec<_> = b.relations.iter().map(|r| canonical(&r.lhs)).collect();
        let set: BTreeSet<_> = lhs.iter().cloned().collect();
        assert_eq!(set.len(), lhs.len());
        assert_eq!(set, nonstandard_degree2(&ctx).into_iter().collect());
    }

    #[test]
    fn includes_plucker() {
        let ctx = StraightenContext::new(2, 4).unwrap();
        let b = presentation(&ctx, None).unwrap();
        let w = vec![Symbol::U(tup(&[1, 4])), Symbol::U(tup(&[2, 3]))];
        assert!(b.relations.iter().any(|r| canonical(&r.lhs) == canonical(&w)));
        // m ≤ n: no O_n relations
        assert!(on_presentation(3, 3).unwrap().relations.is_empty());
    }
}
