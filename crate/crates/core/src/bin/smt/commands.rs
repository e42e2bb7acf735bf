use serde::Serialize;
use serde_json::{json, Value};

use smt_core::combinat::{enumerate_standard, fmt_word, Family, Grading, Word};
use smt_core::detvar::{
    dim_check, hilbert_dt, independence_by_points, presentation_dt, singular_locus_check, straighten_sym, SymContext,
};
use smt_core::dosetalg::{dalg_axioms_check, discrete_mul, hilbert_kp, hilbert_rd, DiscreteProduct};
use smt_core::combinat::{doset_axioms_check, lattice_check, DosetContext};
use smt_core::exactalg::fmt_q;
use smt_core::invariants::{random_orthogonal, InvariantContext};
use smt_core::sl2traces::{theta_embed_check, trace_basis_check, transition_matrix, Sl2Context, TypeTriple};
use smt_core::straighten::{
    cache_dir_from_env, presentation, straighten_rewrite, straighten_solve, Catalog, Relation, StraightenContext,
};
use smt_core::verify::{invariance_suite, lemma_check, verify_all, VerifyConfig};
use smt_core::{Error, Report, Result};

use crate::{Cli, Cmd, DetOp, DosetOp, FamilyArg, Format, InvOp, Sl2Op};

pub struct Output {
    pub text: String,
    pub pass: bool,
    pub failures: Vec<String>,
}

struct Res {
    value: Value,
    table: Vec<String>,
    pass: bool,
    failures: Vec<String>,
}

impl Res {
    fn ok(value: Value, table: Vec<String>) -> Self {
        Res { value, table, pass: true, failures: vec![] }
    }

    fn report(rep: Report) -> Result<Self> {
        let table = report_lines(&rep);
        Ok(Res { pass: rep.pass, failures: rep.failures.clone(), value: to_value(&rep)?, table })
    }
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn report_lines(rep: &Report) -> Vec<String> {
    let mut out = vec![format!("{}: {}", rep.check, if rep.pass { "pass" } else { "FAIL" })];
    out.extend(rep.details.iter().map(|d| format!("  {d}")));
    out.extend(rep.failures.iter().map(|d| format!("  failure: {d}")));
    out.extend(rep.flags.iter().map(|d| format!("  flag: {d}")));
    out
}

fn parse_word(s: &str) -> Result<Word> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("word JSON at line {} column {}: {e}", e.line(), e.column())))
}

fn relation_lines(r: &Relation) -> Vec<String> {
    let mut out = vec![format!("{} =", fmt_word(&r.lhs))];
    out.extend(r.rhs.iter().map(|t| format!("  {:>8}  {}", fmt_q(&t.c).trim_end_matches("/1"), fmt_word(&t.w))));
    out
}

fn family(f: FamilyArg, t: usize) -> Result<Family> {
    Ok(match f {
        FamilyArg::S => Family::S,
        FamilyArg::Dt => Family::Dt { t },
        FamilyArg::Rd => Family::RD,
        FamilyArg::Kp => return Err(Error::Invalid("K{P} has no word enumeration; use hilbert".into())),
    })
}

fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::S => "s",
        FamilyArg::Dt => "dt",
        FamilyArg::Rd => "rd",
        FamilyArg::Kp => "kp",
    }
}

fn name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Straighten { .. } => "straighten",
        Cmd::Enumerate { .. } => "enumerate",
        Cmd::Hilbert { .. } => "hilbert",
        Cmd::Presentation { .. } => "presentation",
        Cmd::Invariants { .. } => "invariants",
        Cmd::Detvar { .. } => "detvar",
        Cmd::Doset { .. } => "doset",
        Cmd::Sl2 { .. } => "sl2",
        Cmd::VerifyAll { .. } => "verify-all",
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    let seed = cli.seed;
    let res = match &cli.cmd {
        Cmd::Straighten { family: f, sizes, word, rewrite } => {
            let w = parse_word(word)?;
            let (rel, stats) = match f {
                FamilyArg::S => {
                    let ctx = StraightenContext::new(sizes.n, sizes.m)?;
                    if *rewrite {
                        let cat = Catalog::load_or_build(&ctx, cache_dir_from_env().as_deref())?;
                        let (r, s) = straighten_rewrite(&w, &cat)?;
                        (r, Some(json!({"substitutions": s.substitutions, "max_terms": s.max_terms, "weight_ties": s.weight_ties})))
                    } else {
                        (straighten_solve(&ctx, &w)?, None)
                    }
                }
                FamilyArg::Dt => (straighten_sym(&SymContext::new(sizes.m, sizes.t)?, &w)?, None),
                _ => return Err(Error::Invalid("straighten supports the s and dt families".into())),
            };
            let mut v = to_value(&rel)?;
            if let Some(s) = stats {
                v["stats"] = s;
            }
            Res::ok(v, relation_lines(&rel))
        }
        Cmd::Enumerate { family: f, sizes, d } => {
            let words = enumerate_standard(sizes.m, sizes.n, family(*f, sizes.t)?, &Grading::Degree(*d))?;
            let table = words.iter().map(|w| fmt_word(w)).collect();
            Res::ok(json!({"family": family_name(*f), "d": d, "count": words.len(), "words": words}), table)
        }
        Cmd::Hilbert { family: f, sizes, d } => {
            let value = match f {
                FamilyArg::S => enumerate_standard(sizes.m, sizes.n, Family::S, &Grading::Degree(*d))?.len(),
                FamilyArg::Dt => hilbert_dt(sizes.m, sizes.t, *d)?,
                FamilyArg::Rd => hilbert_rd(sizes.m, sizes.n, *d)?,
                FamilyArg::Kp => hilbert_kp(sizes.m, sizes.n, *d)?,
            };
            Res::ok(json!({"family": family_name(*f), "d": d, "value": value}), vec![value.to_string()])
        }
        Cmd::Presentation { family: f, sizes } => {
            let b = match f {
                FamilyArg::S => {
                    let ctx = StraightenContext::new(sizes.n, sizes.m)?;
                    let cat = Catalog::load_or_build(&ctx, cache_dir_from_env().as_deref())?;
                    presentation(&ctx, Some(&cat))?
                }
                FamilyArg::Dt => presentation_dt(sizes.m, sizes.t)?,
                _ => return Err(Error::Invalid("presentation supports the s and dt families".into())),
            };
            let mut table = vec![format!("generators: {}", b.generators.len()), format!("relations: {}", b.relations.len())];
            table.extend(b.relations.iter().map(|r| r.display()));
            Res::ok(to_value(&b)?, table)
        }
        Cmd::Invariants { op } => match op {
            InvOp::Lemma { n, m } => Res::report(lemma_check(*n, *m)?)?,
            InvOp::Invariance { n, m, samples } => Res::report(invariance_suite(*n, *m, *samples, seed)?)?,
            InvOp::Sample { n, det } => {
                let ctx = InvariantContext::new(*n, *n)?;
                let g = random_orthogonal(&ctx, seed, *det)?;
                let rows: Vec<Vec<String>> = g.g.to_rows().iter().map(|r| r.iter().map(fmt_q).collect()).collect();
                let table = rows.iter().map(|r| r.join("  ")).collect();
                Res::ok(json!({"det": det, "g": rows}), table)
            }
        },
        Cmd::Detvar { op } => match op {
            DetOp::Dim { m, t } => Res::report(dim_check(*m, *t, seed)?)?,
            DetOp::Sing { m, t } => Res::report(singular_locus_check(*m, *t, seed)?)?,
            DetOp::Independence { m, t, d, samples } => {
                let k = match samples {
                    Some(k) => *k,
                    None => 3 * hilbert_dt(*m, *t, *d)? + 3,
                };
                Res::report(independence_by_points(*m, *t, *d, k, seed)?)?
            }
        },
        Cmd::Doset { op } => match op {
            DosetOp::Axioms { n, m } => {
                let mut rep = doset_axioms_check(*m, *n)?;
                rep.merge(lattice_check(*m, *n)?);
                Res::report(rep)?
            }
            DosetOp::Dalg { n, m } => {
                let ctx = StraightenContext::new(*n, *m)?;
                let cat = Catalog::load_or_build(&ctx, cache_dir_from_env().as_deref())?;
                Res::report(dalg_axioms_check(*m, *n, Some(&cat))?)?
            }
            DosetOp::Mul { n, m, left, right } => {
                let ctx = DosetContext::new(*n, *m)?;
                let p = discrete_mul(&ctx, &parse_word(left)?, &parse_word(right)?)?;
                let line = match &p {
                    DiscreteProduct::Zero => "0".to_string(),
                    DiscreteProduct::Word(w) => fmt_word(w),
                };
                Res::ok(to_value(&p)?, vec![line])
            }
        },
        Cmd::Sl2 { op } => match op {
            Sl2Op::Trace2 { m, i, j } => {
                let p = Sl2Context::new(*m)?.trace2(*i, *j)?;
                Res::ok(to_value(&p.to_json())?, vec![p.to_string()])
            }
            Sl2Op::Trace3 { m, i, j, k } => {
                let p = Sl2Context::new(*m)?.trace3(*i, *j, *k)?;
                Res::ok(to_value(&p.to_json())?, vec![p.to_string()])
            }
            Sl2Op::Transition { m, r, s, t } => {
                let tr = transition_matrix(*m, TypeTriple { r: *r, s: *s, t: *t })?;
                let mut table = vec![format!("order: {}", tr.order)];
                for (i, w) in tr.rows.iter().enumerate() {
                    let cols: Vec<String> = tr.cols[i].iter().map(|c| c.to_string()).collect();
                    let diag = fmt_q(&tr.matrix[(i, i)]);
                    table.push(format!("{}  ->  {}  diag {diag}", fmt_word(w), cols.join("·")));
                }
                Res::ok(to_value(&tr)?, table)
            }
            Sl2Op::Basis { m, r, s, t } => Res::report(trace_basis_check(*m, TypeTriple { r: *r, s: *s, t: *t }, seed)?)?,
            Sl2Op::Theta { m } => Res::report(theta_embed_check(*m)?)?,
        },
        Cmd::VerifyAll { n, m, d, t } => {
            let cfg = VerifyConfig { n: *n, m: *m, d: *d, t: *t, seed, cache_dir: cache_dir_from_env() };
            let v = verify_all(&cfg)?;
            let mut table = Vec::new();
            let mut failures = Vec::new();
            for c in &v.checks {
                table.push(format!("{:<10} {:<4} {:>8.3}s", c.theorem, if c.pass { "pass" } else { "FAIL" }, c.seconds));
                for f in &c.report.failures {
                    let line = if f.contains("VIOLATION") { f.clone() } else { format!("THEOREM-VIOLATION: {}: {f}", c.theorem) };
                    table.push(format!("  {line}"));
                    failures.push(line);
                }
            }
            Res { pass: v.pass, value: to_value(&v)?, table, failures }
        }
    };
    let text = match cli.format {
        Format::Json => {
            let env = json!({"command": name(&cli.cmd), "seed": seed, "result": res.value});
            serde_json::to_string_pretty(&env)?
        }
        Format::Table => {
            let mut lines = vec![format!("# {} seed={seed}", name(&cli.cmd))];
            lines.extend(res.table);
            lines.join("\n")
        }
    };
    Ok(Output { text, pass: res.pass, failures: res.failures })
}
