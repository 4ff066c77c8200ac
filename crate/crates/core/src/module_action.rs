//! Left modules over unital m-semilattices and the actions of `S` on
//! `X` (for `S = Lin(X)`) and on `[S]`.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::foulis::{build_lin_foulis, for_each_subset, FoulisError, FoulisMS, MSemilattice, SasakiSet};
use crate::linmap::{try_adjoint, LatMap};
use crate::oml::Oml;
use crate::report::{first_failure, Report};

/// Subset size bound for the finite-join axioms.
pub const MAX_SUBSET: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("action table has {len} entries, expected {expected}")]
    BadLength { len: usize, expected: usize },
    #[error("action value {value} is outside the module carrier")]
    OutOfRange { value: usize },
    #[error(transparent)]
    Foulis(#[from] FoulisError),
}

/// A finite join-semilattice with least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinSemilattice {
    pub labels: Vec<String>,
    pub join: Vec<usize>,
    pub bottom: usize,
}

impl JoinSemilattice {
    pub fn from_oml(x: &Oml) -> Self {
        let join = x.elements().flat_map(|a| x.elements().map(move |b| x.join(a, b))).collect();
        JoinSemilattice { labels: x.labels().to_vec(), join, bottom: x.bottom() }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b]
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }
}

/// `None` when the axiom holds, otherwise a witness.
pub type Verdict = Option<String>;

/// Outcome of checking A1–A4 for an action `•: S × A → A`.
///
/// A1 and A2 quantify over finite subsets. The `_empty` verdicts cover the
/// empty subset (`s • 0 = 0`, `0 • a = 0`); the plain ones cover nonempty
/// subsets up to [`MAX_SUBSET`] elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftModuleWitness {
    action: Vec<usize>,
    module_size: usize,
    a1: Verdict,
    a1_empty: Verdict,
    a2: Verdict,
    a2_empty: Verdict,
    a3: Verdict,
    a4: Verdict,
}

impl LeftModuleWitness {
    pub fn act(&self, s: usize, a: usize) -> usize {
        self.action[s * self.module_size + a]
    }

    pub fn action(&self) -> &[usize] {
        &self.action
    }

    pub fn a1(&self) -> &Verdict {
        &self.a1
    }

    pub fn a1_empty(&self) -> &Verdict {
        &self.a1_empty
    }

    pub fn a2(&self) -> &Verdict {
        &self.a2
    }

    pub fn a2_empty(&self) -> &Verdict {
        &self.a2_empty
    }

    pub fn a3(&self) -> &Verdict {
        &self.a3
    }

    pub fn a4(&self) -> &Verdict {
        &self.a4
    }

    /// All axioms under the nonempty-subset reading.
    pub fn passes_nonempty(&self) -> bool {
        self.a1.is_none() && self.a2.is_none() && self.a3.is_none() && self.a4.is_none()
    }

    /// All axioms with empty subsets included.
    pub fn passes_with_empty(&self) -> bool {
        self.passes_nonempty() && self.a1_empty.is_none() && self.a2_empty.is_none()
    }

    pub fn report(&self, suite: &str) -> Report {
        let mut r = Report::new();
        r.check(suite, "a1_join_in_module", self.a1.clone());
        r.check(suite, "a1_empty", self.a1_empty.clone());
        r.check(suite, "a2_join_in_scalars", self.a2.clone());
        r.check(suite, "a2_empty", self.a2_empty.clone());
        r.check(suite, "a3_associative", self.a3.clone());
        r.check(suite, "a4_unital", self.a4.clone());
        r
    }
}

/// Exhaustively checks A1–A4. `action[s * |A| + a] = s • a`.
pub fn validate_left_module(
    s: &MSemilattice,
    a: &JoinSemilattice,
    action: Vec<usize>,
) -> Result<LeftModuleWitness, ModuleError> {
    let (ks, ka) = (s.size(), a.size());
    if action.len() != ks * ka {
        return Err(ModuleError::BadLength { len: action.len(), expected: ks * ka });
    }
    if let Some(&value) = action.iter().find(|&&v| v >= ka) {
        return Err(ModuleError::OutOfRange { value });
    }
    let act = |u: usize, x: usize| action[u * ka + x];
    let ls = |u: usize| s.label(u);
    let la = |x: usize| a.labels[x].as_str();

    let a1 = first_failure(ks, |u| {
        let mut found = None;
        for_each_subset(ka, MAX_SUBSET, |sub| {
            if found.is_none()
                && !sub.is_empty()
                && act(u, a.join_all(sub.iter().copied())) != a.join_all(sub.iter().map(|&x| act(u, x)))
            {
                let names: Vec<&str> = sub.iter().map(|&x| la(x)).collect();
                found = Some(format!("s={} B={{{}}}", ls(u), names.join(",")));
            }
        });
        found
    });
    let a1_empty = first_failure(ks, |u| (act(u, a.bottom) != a.bottom).then(|| format!("s={}", ls(u))));

    // T ranges over subsets of S; split on the smallest member.
    let a2 = (0..ks).into_par_iter().find_map_first(|i| {
        let check = |t: &[usize]| -> Option<String> {
            let joined = s.join_all(t.iter().copied());
            (0..ka).find(|&x| act(joined, x) != a.join_all(t.iter().map(|&u| act(u, x)))).map(|x| {
                let names: Vec<&str> = t.iter().map(|&u| ls(u)).collect();
                format!("T={{{}}} a={}", names.join(","), la(x))
            })
        };
        if let Some(w) = check(&[i]) {
            return Some(w);
        }
        for j in (i + 1)..ks {
            if let Some(w) = check(&[i, j]) {
                return Some(w);
            }
            if MAX_SUBSET >= 3 {
                for l in (j + 1)..ks {
                    if let Some(w) = check(&[i, j, l]) {
                        return Some(w);
                    }
                }
            }
        }
        None
    });
    let a2_empty = (0..ka).find(|&x| act(s.zero, x) != a.bottom).map(|x| format!("a={}", la(x)));

    let a3 = first_failure(ks, |u| {
        (0..ks).find_map(|v| {
            (0..ka)
                .find(|&x| act(u, act(v, x)) != act(s.mult(u, v), x))
                .map(|x| format!("u={} v={} a={}", ls(u), ls(v), la(x)))
        })
    });
    let a4 = (0..ka).find(|&x| act(s.unit, x) != x).map(|x| format!("a={}", la(x)));

    Ok(LeftModuleWitness { action, module_size: ka, a1, a1_empty, a2, a2_empty, a3, a4 })
}

/// `X` as a left `Lin(X)`-module under `f • x = f(x)`.
pub fn lin_action(x: &Arc<Oml>) -> Result<LeftModuleWitness, ModuleError> {
    lin_action_on(&build_lin_foulis(x)?)
}

/// The application action for an `S` built from linear maps.
pub fn lin_action_on(s: &FoulisMS) -> Result<LeftModuleWitness, ModuleError> {
    let prov = s.provenance.as_ref().ok_or(FoulisError::NoProvenance)?;
    let action = prov.maps.iter().flat_map(|f| f.table().iter().copied()).collect();
    validate_left_module(&s.ms, &JoinSemilattice::from_oml(&prov.base), action)
}

/// `u • k = (u·k)⊥⊥` on `[S]`, as lattice positions.
pub fn foulis_action_table(s: &FoulisMS, set: &SasakiSet) -> Vec<usize> {
    (0..s.size())
        .flat_map(|u| set.members().iter().map(move |&k| s.pp(s.ms.mult(u, k))))
        .map(|c| set.position(c).expect("double complement lies in [S]"))
        .collect()
}

/// `[S]` as a left `S`-module.
pub fn foulis_action(s: &FoulisMS, set: &SasakiSet) -> Result<LeftModuleWitness, ModuleError> {
    validate_left_module(&s.ms, &JoinSemilattice::from_oml(set.oml()), foulis_action_table(s, set))
}

/// Claims (M1)–(M3), suite `m_claims`.
pub fn verify_m_claims(s: &FoulisMS, set: &SasakiSet) -> Report {
    const SUITE: &str = "m_claims";
    let mut r = Report::new();
    let ms = &s.ms;
    let k = s.size();
    let l = |u: usize| s.label(u);
    let oml = set.oml();

    // s ≤ t ⇒ r·s ≤ (r·s)⊥⊥ ≤ (r·t)⊥⊥
    r.check(
        SUITE,
        "m1",
        first_failure(k, |sv| {
            (0..k).filter(|&t| s.leq(sv, t)).find_map(|t| {
                (0..k)
                    .find(|&rv| {
                        let rs = ms.mult(rv, sv);
                        !(s.leq(rs, s.pp(rs)) && s.leq(s.pp(rs), s.pp(ms.mult(rv, t))))
                    })
                    .map(|rv| format!("r={} s={} t={}", l(rv), l(sv), l(t)))
            })
        }),
    );
    // (s·t)⊥⊥ = (s·t⊥⊥)⊥⊥
    r.check(
        SUITE,
        "m2",
        first_failure(k, |sv| {
            (0..k)
                .find(|&t| s.pp(ms.mult(sv, t)) != s.pp(ms.mult(sv, s.pp(t))))
                .map(|t| format!("s={} t={}", l(sv), l(t)))
        }),
    );
    // (⊔T)⊥ = ⋀ s⊥ and (⊔T)⊥⊥ = ⋁ s⊥⊥, meets and joins taken in [S]
    let pos = |c: usize| set.position(c).expect("complement lies in [S]");
    let subset_check = |t: &[usize], double: bool| -> bool {
        let joined = ms.join_all(t.iter().copied());
        if double {
            pos(s.pp(joined)) == oml.join_all(t.iter().map(|&u| pos(s.pp(u))))
        } else {
            pos(s.perp(joined)) == oml.meet_all(t.iter().map(|&u| pos(s.perp(u))))
        }
    };
    for (name, double) in [("m3_meet", false), ("m3_join", true)] {
        let empty = (!subset_check(&[], double)).then(|| "T={}".to_string());
        let witness = empty.or_else(|| {
            (0..k).into_par_iter().find_map_first(|i| {
                let fail = |t: &[usize]| {
                    (!subset_check(t, double)).then(|| {
                        let names: Vec<&str> = t.iter().map(|&u| l(u)).collect();
                        format!("T={{{}}}", names.join(","))
                    })
                };
                fail(&[i]).or_else(|| {
                    ((i + 1)..k).find_map(|j| fail(&[i, j]).or_else(|| ((j + 1)..k).find_map(|m| fail(&[i, j, m]))))
                })
            })
        });
        r.check(SUITE, name, witness);
    }
    r
}

/// `σ_u: k ↦ (u·k)⊥⊥` over `[S]`, as lattice positions.
pub fn sasaki_action(s: &FoulisMS, set: &SasakiSet, u: usize) -> Vec<usize> {
    set.members().iter().map(|&k| set.position(s.pp(s.ms.mult(u, k))).expect("double complement lies in [S]")).collect()
}

/// For `u ∈ [S]`: `σ_u` equals its adjoint, is idempotent, has image `↓u`
/// and fixes `↓u` pointwise.
pub fn verify_sasaki_action(s: &FoulisMS, set: &SasakiSet, u: usize) -> Result<Report, FoulisError> {
    const SUITE: &str = "sasaki_action";
    let ui = set.position(u).ok_or_else(|| FoulisError::NotAProjection(s.label(u).to_string()))?;
    let oml = set.oml();
    let table = sasaki_action(s, set, u);
    let lu = s.label(u);
    let mut r = Report::new();

    let adjoint = LatMap::endo(oml, table.clone()).and_then(try_adjoint);
    r.check(
        SUITE,
        "self_adjoint",
        match adjoint {
            Ok(f) if f.adjoint_table() == table.as_slice() => None,
            Ok(_) => Some(format!("u={lu} adjoint differs")),
            Err(e) => Some(format!("u={lu} {}", e.to_string().replace(' ', "_"))),
        },
    );
    r.check(
        SUITE,
        "idempotent",
        (0..table.len()).find(|&i| table[table[i]] != table[i]).map(|i| format!("u={lu} k={}", oml.label(i))),
    );
    let mut image = table.clone();
    image.sort_unstable();
    image.dedup();
    r.check(SUITE, "image_is_downset", (image != oml.downset_elements(ui)).then(|| format!("u={lu}")));
    r.check(
        SUITE,
        "fixes_downset",
        oml.downset_elements(ui).into_iter().find(|&i| table[i] != i).map(|i| format!("u={lu} k={}", oml.label(i))),
    );
    Ok(r)
}

/// [`verify_sasaki_action`] for every `u ∈ [S]`, one record per property
/// carrying the first failing `u`.
pub fn verify_sasaki_actions(s: &FoulisMS, set: &SasakiSet) -> Report {
    let per_u: Vec<Report> =
        set.members().par_iter().map(|&u| verify_sasaki_action(s, set, u).expect("member of [S]")).collect();
    let mut r = Report::new();
    for name in ["self_adjoint", "idempotent", "image_is_downset", "fixes_downset"] {
        let witness = per_u.iter().find_map(|rep| rep.get("sasaki_action", name).flatten().map(str::to_string));
        r.check("sasaki_action", name, witness);
    }
    r
}
