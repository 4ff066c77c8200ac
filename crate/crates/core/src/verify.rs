//! Check suites over a single lattice and the full `verify-all` run.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::catalog::gen_one;
use crate::foulis::{
    lin_foulis_tables, sasaki_set_report, validate_foulis, verify_star_laws, FoulisError, FoulisMS, SasakiSet,
};
use crate::linmap::{downset_embedding, enumerate_lin, try_adjoint, LatMap, LinMap};
use crate::module_action::{foulis_action, lin_action_on, verify_m_claims, verify_sasaki_actions, ModuleError};
use crate::oml::{Elem, LatticeData, Oml, OmlError, Ortholattice};
use crate::report::{first_failure, Report};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Lattice(#[from] OmlError),
    #[error(transparent)]
    Foulis(#[from] FoulisError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Ortholattice validation and the three orthomodularity conditions, suite
/// `oml`. Structural failures become FAIL records; malformed input (size,
/// duplicate labels, complement coverage) is an error.
pub fn oml_report(data: &LatticeData, cap: usize) -> Result<(Report, Option<Oml>), OmlError> {
    const SUITE: &str = "oml";
    let mut r = Report::new();
    let lab = |x: Elem| data.labels.get(x).map_or("?", String::as_str).to_string();
    let l = match Ortholattice::build_with_cap(data, cap) {
        Ok(l) => l,
        Err(e) => {
            let (name, witness) = match e {
                OmlError::NotAPoset { x, y } => ("poset", format!("{} {}", lab(x), lab(y))),
                OmlError::NotBounded(x) => ("bounds", lab(x)),
                OmlError::NotALattice { op, x, y } => ("lattice", format!("{op} {} {}", lab(x), lab(y))),
                OmlError::NotOrtho { law, x, y } => ("ortho", format!("{law} {} {}", lab(x), lab(y))),
                other => return Err(other),
            };
            for step in ["poset", "bounds", "lattice", "ortho"] {
                if step == name {
                    r.fail(SUITE, step, witness);
                    break;
                }
                r.pass(SUITE, step);
            }
            return Ok((r, None));
        }
    };
    for step in ["poset", "bounds", "lattice", "ortho"] {
        r.pass(SUITE, step);
    }
    let v = l.orthomodular_three_ways();
    let w = |p: Option<(Elem, Elem)>| p.map(|(x, y)| format!("{} {}", l.label(x), l.label(y)));
    r.check(SUITE, "orthomodular_join_form", w(v.join_form));
    r.check(SUITE, "orthomodular_meet_form", w(v.meet_form));
    r.check(SUITE, "orthomodular_cancellation", w(v.cancellation));
    let oml = l.try_into().ok();
    Ok((r, oml))
}

/// Sasaki projection facts (a)–(d), idempotence and self-adjointness.
pub fn sasaki_facts(x: &Arc<Oml>) -> Report {
    const SUITE: &str = "sasaki";
    let mut r = Report::new();
    let n = x.len();
    let l = |e: Elem| x.label(e);
    let p = |a, y| x.sasaki(a, y);
    r.check(
        SUITE,
        "fact_a_fixes_downset",
        first_failure(n, |a| {
            x.elements().find(|&y| x.leq(y, a) != (p(a, y) == y)).map(|y| format!("a={} y={}", l(a), l(y)))
        }),
    );
    r.check(
        SUITE,
        "fact_b_contraction",
        first_failure(n, |a| {
            x.elements().find(|&y| !x.leq(p(a, x.perp(p(a, x.perp(y)))), y)).map(|y| format!("a={} y={}", l(a), l(y)))
        }),
    );
    r.check(
        SUITE,
        "fact_c_kernel",
        first_failure(n, |a| {
            x.elements()
                .find(|&y| (p(a, y) == x.bottom()) != x.leq(y, x.perp(a)))
                .map(|y| format!("a={} y={}", l(a), l(y)))
        }),
    );
    r.check(
        SUITE,
        "fact_d_symmetric",
        first_failure(n, |a| {
            x.elements().find_map(|y| {
                x.elements()
                    .find(|&z| x.ortho(p(a, y), z) != x.ortho(y, p(a, z)))
                    .map(|z| format!("a={} y={} z={}", l(a), l(y), l(z)))
            })
        }),
    );
    r.check(
        SUITE,
        "idempotent",
        first_failure(n, |a| {
            x.elements().find(|&y| p(a, p(a, y)) != p(a, y)).map(|y| format!("a={} y={}", l(a), l(y)))
        }),
    );
    r.check(
        SUITE,
        "self_adjoint",
        first_failure(n, |a| match LinMap::sasaki(x, a) {
            Ok(f) if f.adjoint_table() == f.table() => None,
            Ok(_) => Some(format!("a={} adjoint_differs", l(a))),
            Err(_) => Some(format!("a={} not_linear", l(a))),
        }),
    );
    r
}

/// Downsets with relative complement are orthomodular and embed as dagger
/// monomorphisms with adjoint `π_a`.
pub fn downset_lemma(x: &Arc<Oml>) -> Report {
    const SUITE: &str = "downset";
    let mut r = Report::new();
    let n = x.len();
    let l = |e: Elem| x.label(e).to_string();
    r.check(
        SUITE,
        "is_orthomodular",
        first_failure(n, |a| x.downset(a).err().map(|e| format!("a={} {}", l(a), e.to_string().replace(' ', "_")))),
    );
    r.check(
        SUITE,
        "embedding_adjoint_is_sasaki",
        first_failure(n, |a| {
            let emb = match downset_embedding(x, a) {
                Ok(e) => e,
                Err(_) => return Some(format!("a={}", l(a))),
            };
            let canonical = try_adjoint(emb.map().clone());
            match canonical {
                Ok(c) if c.adjoint_table() == emb.adjoint_table() && emb.orthogonality_failure().is_none() => None,
                _ => Some(format!("a={}", l(a))),
            }
        }),
    );
    r.check(
        SUITE,
        "dagger_mono",
        first_failure(n, |a| {
            let emb = downset_embedding(x, a).ok()?;
            let back = emb.dagger().compose(&emb).ok()?;
            (back.table() != LinMap::identity(emb.dom()).table()).then(|| format!("a={}", l(a)))
        }),
    );
    r
}

fn provenance(s: &FoulisMS) -> Result<(&Arc<Oml>, &[LinMap]), FoulisError> {
    let p = s.provenance.as_ref().ok_or(FoulisError::NoProvenance)?;
    Ok((&p.base, &p.maps))
}

/// `ker f = ↓f*(1)'` and the self-adjoint corollary, for every map in
/// `maps` (typically all of `Lin(X)`).
pub fn kernel_lemma(x: &Oml, maps: &[LinMap]) -> Report {
    const SUITE: &str = "kernel";
    let mut r = Report::new();
    let k = maps.len();
    let l = |i: usize| map_label(x, maps[i].table());
    r.check(
        SUITE,
        "zero_set_is_downset",
        first_failure(k, |i| {
            let f = &maps[i];
            (f.zero_set() != x.down_set(f.kernel())).then(|| format!("f={}", l(i)))
        }),
    );
    r.check(
        SUITE,
        "kernel_is_orthomodular",
        first_failure(k, |i| x.downset(maps[i].kernel()).err().map(|_| format!("f={}", l(i)))),
    );
    r.check(
        SUITE,
        "self_adjoint_kernel",
        first_failure(k, |i| {
            let f = &maps[i];
            (f.is_self_adjoint() == Ok(true) && f.kernel() != x.perp(f.apply(x.top()))).then(|| format!("f={}", l(i)))
        }),
    );
    r.check(
        SUITE,
        "self_adjoint_contraction",
        first_failure(k, |i| {
            let f = &maps[i];
            if f.is_self_adjoint() != Ok(true) {
                return None;
            }
            x.elements()
                .find(|&y| !x.leq(f.apply(x.perp(f.apply(x.perp(y)))), y))
                .map(|y| format!("f={} y={}", l(i), x.label(y)))
        }),
    );
    r
}

fn map_label(x: &Oml, table: &[Elem]) -> String {
    let parts: Vec<&str> = table.iter().map(|&v| x.label(v)).collect();
    format!("[{}]", parts.join(","))
}

/// Dagger laws with every adjoint recomputed through [`try_adjoint`].
pub fn dagger_laws(s: &FoulisMS) -> Result<Report, FoulisError> {
    const SUITE: &str = "dagger";
    let (x, maps) = provenance(s)?;
    let mut r = Report::new();
    let k = maps.len();
    let l = |i: usize| s.label(i);
    let canonical = |m: &LatMap| try_adjoint(m.clone()).ok().map(|f| f.adjoint_table().to_vec());

    r.check(
        SUITE,
        "orthogonality_law",
        first_failure(k, |i| {
            maps[i].orthogonality_failure().map(|(a, b)| format!("f={} x={} y={}", l(i), x.label(a), x.label(b)))
        }),
    );
    r.check(
        SUITE,
        "adjoint_unique",
        first_failure(k, |i| {
            (canonical(maps[i].map()).as_deref() != Some(maps[i].adjoint_table())).then(|| format!("f={}", l(i)))
        }),
    );
    r.check(
        SUITE,
        "involution",
        first_failure(k, |i| {
            let star = maps[i].dagger();
            (canonical(star.map()).as_deref() != Some(maps[i].table())).then(|| format!("f={}", l(i)))
        }),
    );
    let id = LinMap::identity(x);
    r.check(SUITE, "identity", (canonical(id.map()).as_deref() != Some(id.table())).then(String::new));
    r.check(
        SUITE,
        "contravariant",
        first_failure(k, |i| {
            (0..k).find_map(|j| {
                let (g, f) = (&maps[i], &maps[j]);
                let gf = g.compose(f).ok()?;
                let expected = f.dagger().compose(&g.dagger()).ok()?;
                (canonical(gf.map()).as_deref() != Some(expected.table())).then(|| format!("g={} f={}", l(i), l(j)))
            })
        }),
    );
    r.check(
        SUITE,
        "join_adjoint",
        first_failure(k, |i| {
            (0..k).find_map(|j| {
                let fg = maps[i].join(&maps[j]).ok()?;
                (canonical(fg.map()).as_deref() != Some(fg.adjoint_table())).then(|| format!("f={} g={}", l(i), l(j)))
            })
        }),
    );

    // the one-element lattice is a zero object
    let zero = Arc::new(gen_one());
    let into: Vec<Elem> =
        x.elements().filter(|&v| LatMap::new(zero.clone(), x.clone(), vec![v]).and_then(try_adjoint).is_ok()).collect();
    r.check(SUITE, "zero_object_initial", (into != [x.bottom()]).then(|| format!("maps={}", into.len())));
    let out = LatMap::new(x.clone(), zero.clone(), vec![0; x.len()]).and_then(try_adjoint);
    r.check(SUITE, "zero_object_terminal", out.is_err().then(String::new));
    Ok(r)
}

/// `Lin(X)` is a join-semilattice under the pointwise order with
/// `(f v g)* = f* v g*`, and its tables agree with the maps.
pub fn lin_proposition(s: &FoulisMS) -> Result<Report, FoulisError> {
    const SUITE: &str = "proposition";
    let (x, maps) = provenance(s)?;
    let mut r = Report::new();
    let k = maps.len();
    let l = |i: usize| s.label(i);
    let ms = &s.ms;
    let zero = LinMap::zero(x, x);
    r.check(SUITE, "zero_map_linear", (maps[ms.zero] != zero).then(|| l(ms.zero).to_string()));
    r.check(
        SUITE,
        "pointwise_join",
        first_failure(k, |i| {
            (0..k).find_map(|j| {
                let joined = maps[i].join(&maps[j]).ok()?;
                (joined != maps[ms.join(i, j)]).then(|| format!("f={} g={}", l(i), l(j)))
            })
        }),
    );
    r.check(
        SUITE,
        "composition",
        first_failure(k, |i| {
            (0..k).find_map(|j| {
                let c = maps[i].compose(&maps[j]).ok()?;
                (c != maps[ms.mult(i, j)]).then(|| format!("f={} g={}", l(i), l(j)))
            })
        }),
    );
    r.check(
        SUITE,
        "involution_is_adjoint",
        first_failure(k, |i| (maps[i].dagger() != maps[ms.star(i)]).then(|| format!("f={}", l(i)))),
    );
    Ok(r)
}

/// Compares `b ↦ π_b` with `[Lin(X)]`. Informational only.
pub fn explore_sasaki_map(s: &FoulisMS, set: &SasakiSet) -> Result<Report, FoulisError> {
    let (x, maps) = provenance(s)?;
    let index: HashMap<&[Elem], usize> = maps.iter().enumerate().map(|(i, f)| (f.table(), i)).collect();
    let image: Vec<Option<usize>> =
        x.elements().map(|b| index.get(x.sasaki_projection(b).as_slice()).and_then(|&c| set.position(c))).collect();
    let oml = set.oml();
    let verdict = if image.iter().any(Option::is_none) {
        "not_into_projections".to_string()
    } else {
        let img: Vec<usize> = image.into_iter().flatten().collect();
        let mut sorted = img.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != x.len() || sorted.len() != set.len() {
            format!("not_bijective images={} projections={}", sorted.len(), set.len())
        } else if x.elements().any(|b| x.elements().any(|c| x.leq(b, c) != oml.leq(img[b], img[c]))) {
            "not_order_isomorphism".to_string()
        } else if x.elements().any(|b| img[x.perp(b)] != oml.perp(img[b])) {
            "order_isomorphism_not_ortho".to_string()
        } else {
            "ortho_isomorphism".to_string()
        }
    };
    let mut r = Report::new();
    r.info("explore", "b_to_pi_b", verdict);
    Ok(r)
}

/// Every suite in order. Stops after lattice validation when the input is
/// not an orthomodular lattice.
pub fn verify_all(data: &LatticeData, cap: usize) -> Result<Report, VerifyError> {
    let (mut report, oml) = oml_report(data, cap)?;
    let Some(oml) = oml else {
        return Ok(report);
    };
    let x = Arc::new(oml);
    report.extend(sasaki_facts(&x));
    report.extend(downset_lemma(&x));

    let maps = enumerate_lin(&x).map_err(FoulisError::from)?;
    report.extend(kernel_lemma(&x, &maps));
    drop(maps);
    let s = match lin_foulis_tables(&x) {
        Ok(s) => s,
        Err(FoulisError::AxiomFailure(w)) => {
            report.fail("proposition", "closure", w.replace(' ', "_"));
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    report.info("lin", "carrier", s.size().to_string());
    report.extend(dagger_laws(&s)?);
    report.extend(lin_proposition(&s)?);
    report.extend(validate_foulis(&s));
    report.extend(verify_star_laws(&s));
    let (structure, set) = sasaki_set_report(&s);
    report.extend(structure);
    report.extend(lin_action_on(&s)?.report("lin_action"));
    let Some(set) = set else {
        report.fail("foulis_action", "structure", "unavailable");
        return Ok(report);
    };
    report.info("lin", "projections", set.len().to_string());
    report.extend(foulis_action(&s, &set)?.report("foulis_action"));
    report.extend(verify_m_claims(&s, &set));
    report.extend(verify_sasaki_actions(&s, &set));
    report.extend(explore_sasaki_map(&s, &set)?);
    Ok(report)
}
