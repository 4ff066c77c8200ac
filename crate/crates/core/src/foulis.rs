//! Involutive unital m-semilattices, Foulis m-semilattices, the construction
//! `Lin(X)` and the orthomodular lattice `[S]` of Sasaki projections.
//!
//! Everything here works on full operation tables over carrier indices
//! `0..k`, so abstract instances are checked exactly like ones built from
//! linear maps.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::linmap::{enumerate_lin, LinMap, LinMapError};
use crate::oml::{Elem, LatticeData, Oml, MAX_ELEMENTS};
use crate::report::{first_failure, Report};

/// Largest carrier the cubic scans are run on.
pub const MAX_CARRIER: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoulisError {
    #[error("carrier has {k} elements, the cap is {cap}")]
    SizeCap { k: usize, cap: usize },
    #[error(transparent)]
    Lin(#[from] LinMapError),
    #[error("malformed tables: {0}")]
    Shape(String),
    #[error("axiom failure: {0}")]
    AxiomFailure(String),
    #[error("structure failure: {0}")]
    StructureFailure(String),
    #[error("{0} is not a Sasaki projection")]
    NotAProjection(String),
    #[error("carrier has no linear-map provenance")]
    NoProvenance,
}

/// An involutive unital m-semilattice given by tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MSemilattice {
    pub labels: Vec<String>,
    /// `join[a * k + b] = a ⊔ b`
    pub join: Vec<usize>,
    /// `mult[a * k + b] = a · b`
    pub mult: Vec<usize>,
    pub star: Vec<usize>,
    pub unit: usize,
    pub zero: usize,
}

impl MSemilattice {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b]
    }

    #[inline]
    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.size() + b]
    }

    #[inline]
    pub fn star(&self, a: usize) -> usize {
        self.star[a]
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.zero, |acc, x| self.join(acc, x))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn check_shape(&self) -> Result<(), FoulisError> {
        let k = self.size();
        let bad = |what: &str| Err(FoulisError::Shape(what.to_string()));
        if k == 0 {
            return bad("empty carrier");
        }
        if self.join.len() != k * k || self.mult.len() != k * k || self.star.len() != k {
            return bad("table length");
        }
        if self.unit >= k || self.zero >= k {
            return bad("unit or zero out of range");
        }
        if self.join.iter().chain(&self.mult).chain(&self.star).any(|&v| v >= k) {
            return bad("table value out of range");
        }
        Ok(())
    }
}

/// The two-element chain: multiplication is meet, involution the identity.
pub fn two_ms() -> MSemilattice {
    MSemilattice {
        labels: vec!["0".into(), "1".into()],
        join: vec![0, 1, 1, 1],
        mult: vec![0, 0, 0, 1],
        star: vec![0, 1],
        unit: 1,
        zero: 0,
    }
}

/// Carrier built from linear maps: index `i` is `maps[i]`.
#[derive(Debug, Clone)]
pub struct LinProvenance {
    pub base: Arc<Oml>,
    pub maps: Vec<LinMap>,
}

/// A Foulis m-semilattice candidate: m-semilattice tables plus `s ↦ [s]`.
#[derive(Debug, Clone)]
pub struct FoulisMS {
    pub ms: MSemilattice,
    pub sai: Vec<usize>,
    pub provenance: Option<LinProvenance>,
}

impl FoulisMS {
    pub fn size(&self) -> usize {
        self.ms.size()
    }

    #[inline]
    pub fn sai(&self, s: usize) -> usize {
        self.sai[s]
    }

    /// `s⊥ = [s*]`
    #[inline]
    pub fn perp(&self, s: usize) -> usize {
        self.sai[self.ms.star(s)]
    }

    /// `s⊥⊥`
    #[inline]
    pub fn pp(&self, s: usize) -> usize {
        self.perp(self.perp(s))
    }

    /// `s ≤ t` iff `s = t · s`.
    #[inline]
    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.ms.mult(t, s) == s
    }

    /// `s ⊥ t` iff `s* · t = 0`.
    #[inline]
    pub fn ortho(&self, s: usize, t: usize) -> bool {
        self.ms.mult(self.ms.star(s), t) == self.ms.zero
    }

    pub fn label(&self, s: usize) -> &str {
        self.ms.label(s)
    }

    pub fn check_shape(&self) -> Result<(), FoulisError> {
        self.ms.check_shape()?;
        if self.sai.len() != self.size() || self.sai.iter().any(|&v| v >= self.size()) {
            return Err(FoulisError::Shape("sai table".into()));
        }
        Ok(())
    }

    /// `{[t] : t ∈ S}`, ascending.
    pub fn projections(&self) -> Vec<usize> {
        let mut v = self.sai.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// The two-element chain as a Foulis m-semilattice with `[s] = s'`.
pub fn two_foulis() -> FoulisMS {
    FoulisMS { ms: two_ms(), sai: vec![1, 0], provenance: None }
}

fn map_label(x: &Oml, table: &[Elem]) -> String {
    let parts: Vec<&str> = table.iter().map(|&v| x.label(v)).collect();
    format!("[{}]", parts.join(","))
}

/// Tables of `Lin(X)`: pointwise join, composition, adjoint, and
/// `[s] = π_{s*(1)'}`. No axioms are checked here.
pub fn lin_foulis_tables(x: &Arc<Oml>) -> Result<FoulisMS, FoulisError> {
    let maps = enumerate_lin(x)?;
    let k = maps.len();
    if k > MAX_CARRIER {
        return Err(FoulisError::SizeCap { k, cap: MAX_CARRIER });
    }
    let index: HashMap<&[Elem], usize> = maps.iter().enumerate().map(|(i, f)| (f.table(), i)).collect();
    let lookup = |t: &[Elem], what: &str| {
        index
            .get(t)
            .copied()
            .ok_or_else(|| FoulisError::AxiomFailure(format!("{what} {} is not linear", map_label(x, t))))
    };

    // one (join row, mult row) pair per map
    type Rows = Vec<(Vec<usize>, Vec<usize>)>;
    let rows: Result<Rows, FoulisError> = maps
        .par_iter()
        .map(|f| {
            let mut join = Vec::with_capacity(k);
            let mut mult = Vec::with_capacity(k);
            for g in &maps {
                join.push(lookup(f.join(g)?.table(), "join")?);
                mult.push(lookup(f.compose(g)?.table(), "composite")?);
            }
            Ok((join, mult))
        })
        .collect();
    let (join, mult): (Vec<_>, Vec<_>) = rows?.into_iter().unzip();
    let star = maps.iter().map(|f| lookup(f.adjoint_table(), "adjoint")).collect::<Result<Vec<_>, _>>()?;
    let sai = maps
        .iter()
        .map(|f| lookup(&x.sasaki_projection(f.kernel()), "Sasaki projection"))
        .collect::<Result<Vec<_>, _>>()?;
    let unit = lookup(LinMap::identity(x).table(), "identity")?;
    let zero = lookup(LinMap::zero(x, x).table(), "zero map")?;

    let ms = MSemilattice {
        labels: maps.iter().map(|f| map_label(x, f.table())).collect(),
        join: join.concat(),
        mult: mult.concat(),
        star,
        unit,
        zero,
    };
    Ok(FoulisMS { ms, sai, provenance: Some(LinProvenance { base: x.clone(), maps }) })
}

/// `Lin(X)` as a Foulis m-semilattice, with every axiom verified.
pub fn build_lin_foulis(x: &Arc<Oml>) -> Result<FoulisMS, FoulisError> {
    let s = lin_foulis_tables(x)?;
    let report = validate_foulis(&s);
    if let Some(first) = report.failures().into_iter().next() {
        return Err(FoulisError::AxiomFailure(first));
    }
    Ok(s)
}

/// m-semilattice and involution laws, suite `msemilattice`.
pub fn validate_msemilattice(ms: &MSemilattice) -> Report {
    let mut r = Report::new();
    const SUITE: &str = "msemilattice";
    if let Err(e) = ms.check_shape() {
        r.fail(SUITE, "shape", e.to_string());
        return r;
    }
    let k = ms.size();
    let l = |a: usize| ms.label(a);
    let w2 = |a, b| format!("x={} y={}", l(a), l(b));
    let w3 = |a, b, c| format!("x={} y={} z={}", l(a), l(b), l(c));

    r.check(SUITE, "join_idempotent", first_failure(k, |a| (ms.join(a, a) != a).then(|| format!("x={}", l(a)))));
    r.check(
        SUITE,
        "join_commutative",
        first_failure(k, |a| (0..k).find(|&b| ms.join(a, b) != ms.join(b, a)).map(|b| w2(a, b))),
    );
    r.check(
        SUITE,
        "join_associative",
        first_failure(k, |a| {
            (0..k).find_map(|b| {
                (0..k).find(|&c| ms.join(a, ms.join(b, c)) != ms.join(ms.join(a, b), c)).map(|c| w3(a, b, c))
            })
        }),
    );
    r.check(SUITE, "zero_is_least", first_failure(k, |a| (ms.join(ms.zero, a) != a).then(|| format!("x={}", l(a)))));
    r.check(
        SUITE,
        "mult_associative",
        first_failure(k, |a| {
            (0..k).find_map(|b| {
                (0..k).find(|&c| ms.mult(a, ms.mult(b, c)) != ms.mult(ms.mult(a, b), c)).map(|c| w3(a, b, c))
            })
        }),
    );
    r.check(
        SUITE,
        "unit",
        first_failure(k, |a| (ms.mult(ms.unit, a) != a || ms.mult(a, ms.unit) != a).then(|| format!("x={}", l(a)))),
    );
    r.check(
        SUITE,
        "distributive_left",
        first_failure(k, |a| {
            (0..k).find_map(|b| {
                (0..k)
                    .find(|&c| ms.mult(a, ms.join(b, c)) != ms.join(ms.mult(a, b), ms.mult(a, c)))
                    .map(|c| w3(a, b, c))
            })
        }),
    );
    r.check(
        SUITE,
        "distributive_right",
        first_failure(k, |a| {
            (0..k).find_map(|b| {
                (0..k)
                    .find(|&c| ms.mult(ms.join(b, c), a) != ms.join(ms.mult(b, a), ms.mult(c, a)))
                    .map(|c| w3(a, b, c))
            })
        }),
    );
    // distributivity over the empty join
    r.check(
        SUITE,
        "zero_absorbs",
        first_failure(k, |a| {
            (ms.mult(a, ms.zero) != ms.zero || ms.mult(ms.zero, a) != ms.zero).then(|| format!("x={}", l(a)))
        }),
    );
    r.check(SUITE, "star_involution", first_failure(k, |a| (ms.star(ms.star(a)) != a).then(|| format!("x={}", l(a)))));
    r.check(
        SUITE,
        "star_reverses_mult",
        first_failure(k, |a| {
            (0..k).find(|&b| ms.star(ms.mult(a, b)) != ms.mult(ms.star(b), ms.star(a))).map(|b| w2(a, b))
        }),
    );
    r.check(
        SUITE,
        "star_preserves_join",
        first_failure(k, |a| {
            (0..k).find(|&b| ms.star(ms.join(a, b)) != ms.join(ms.star(a), ms.star(b))).map(|b| w2(a, b))
        }),
    );
    r.check(SUITE, "star_zero", (ms.star(ms.zero) != ms.zero).then(|| format!("0*={}", l(ms.star(ms.zero)))));
    r.check(SUITE, "star_unit", (ms.star(ms.unit) != ms.unit).then(|| format!("e*={}", l(ms.star(ms.unit)))));
    r
}

/// Foulis axioms (1)–(4), the `⊥`-form characterization and derived facts.
/// Includes the `msemilattice` suite. Never fails outright: problems become
/// FAIL records with witnesses.
pub fn validate_foulis(s: &FoulisMS) -> Report {
    let mut r = validate_msemilattice(&s.ms);
    const SUITE: &str = "foulis";
    if let Err(e) = s.check_shape() {
        r.fail(SUITE, "shape", e.to_string());
        return r;
    }
    let ms = &s.ms;
    let k = s.size();
    let l = |a: usize| s.label(a);
    let w2 = |a, b| format!("s={} t={}", l(a), l(b));

    let axiom1 = if ms.star(ms.unit) != ms.unit {
        Some(format!("e*={}", l(ms.star(ms.unit))))
    } else {
        first_failure(k, |a| {
            if ms.star(ms.star(a)) != a {
                return Some(format!("s={}", l(a)));
            }
            (0..k).find(|&b| ms.star(ms.mult(a, b)) != ms.mult(ms.star(b), ms.star(a))).map(|b| w2(a, b))
        })
    };
    r.check(SUITE, "axiom1_involutive_monoid", axiom1);

    r.check(
        SUITE,
        "axiom2_projection",
        first_failure(k, |a| {
            let p = s.sai(a);
            (ms.mult(p, p) != p || ms.star(p) != p).then(|| format!("s={} [s]={}", l(a), l(p)))
        }),
    );

    let z = s.sai(ms.unit);
    let axiom3 = if z != ms.zero {
        Some(format!("[e]={} 0={}", l(z), l(ms.zero)))
    } else {
        first_failure(k, |a| (ms.mult(z, a) != z || ms.mult(a, z) != z).then(|| format!("s={}", l(a))))
    };
    r.check(SUITE, "axiom3_zero", axiom3);

    // s·t = 0 iff t ∈ [s]·S
    r.check(
        SUITE,
        "axiom4_annihilator",
        first_failure(k, |a| {
            let ideal = right_ideal(ms, s.sai(a));
            (0..k).find(|&b| (ms.mult(a, b) == ms.zero) != ideal[b]).map(|b| w2(a, b))
        }),
    );

    r.check(
        SUITE,
        "remark1_perp_projection",
        first_failure(k, |a| {
            let p = s.perp(a);
            (ms.mult(p, p) != p || ms.star(p) != p).then(|| format!("s={}", l(a)))
        }),
    );
    r.check(
        SUITE,
        "remark2_unit_perp_zero",
        (s.perp(ms.unit) != ms.zero).then(|| format!("e'={}", l(s.perp(ms.unit)))),
    );
    r.check(
        SUITE,
        "remark3_ortho_annihilator",
        first_failure(k, |a| {
            let ideal = right_ideal(ms, s.perp(a));
            (0..k).find(|&b| s.ortho(a, b) != ideal[b]).map(|b| w2(a, b))
        }),
    );
    r.check(
        SUITE,
        "remark_s_ortho_perp",
        first_failure(k, |a| {
            let p = s.perp(a);
            (ms.mult(ms.star(a), p) != ms.zero || ms.mult(p, a) != ms.zero).then(|| format!("s={}", l(a)))
        }),
    );

    r.check(
        SUITE,
        "leq_transitive",
        first_failure(k, |a| {
            (0..k).filter(|&b| s.leq(a, b)).find_map(|b| {
                (0..k).find(|&c| s.leq(b, c) && !s.leq(a, c)).map(|c| format!("s={} t={} u={}", l(a), l(b), l(c)))
            })
        }),
    );
    r.check(
        SUITE,
        "ortho_symmetric",
        first_failure(k, |a| (0..k).find(|&b| s.ortho(a, b) != s.ortho(b, a)).map(|b| w2(a, b))),
    );
    r
}

/// Membership vector of `{p · y : y ∈ S}`.
fn right_ideal(ms: &MSemilattice, p: usize) -> Vec<bool> {
    let mut member = vec![false; ms.size()];
    for y in 0..ms.size() {
        member[ms.mult(p, y)] = true;
    }
    member
}

/// The chains `(*)`, `(**)`, `(***)` and the facts derived alongside them.
pub fn verify_star_laws(s: &FoulisMS) -> Report {
    let mut r = Report::new();
    const SUITE: &str = "star";
    if let Err(e) = s.check_shape() {
        r.fail(SUITE, "shape", e.to_string());
        return r;
    }
    let ms = &s.ms;
    let k = s.size();
    let l = |a: usize| s.label(a);
    let w = |a, b| format!("r={} t={}", l(a), l(b));

    // r ⊥ t ⇔ r*·t = 0 ⇔ t = [r*]·t = r⊥·t ⇔ t ≤ r⊥
    r.check(
        SUITE,
        "single",
        first_failure(k, |a| {
            (0..k)
                .find(|&t| {
                    let v = [
                        s.ortho(a, t),
                        ms.mult(ms.star(a), t) == ms.zero,
                        t == ms.mult(s.sai(ms.star(a)), t),
                        t == ms.mult(s.perp(a), t),
                        s.leq(t, s.perp(a)),
                    ];
                    v.iter().any(|&b| b != v[0])
                })
                .map(|t| w(a, t))
        }),
    );
    // t ≤ r ⇔ t = r·t ⇒ r⊥ = t⊥·r⊥ ⇔ r⊥ ≤ t⊥
    r.check(
        SUITE,
        "double",
        first_failure(k, |a| {
            (0..k)
                .find(|&t| {
                    let le = s.leq(t, a);
                    let perp_eq = s.perp(a) == ms.mult(s.perp(t), s.perp(a));
                    le != (t == ms.mult(a, t)) || (le && !perp_eq) || perp_eq != s.leq(s.perp(a), s.perp(t))
                })
                .map(|t| w(a, t))
        }),
    );
    let projections = s.projections();
    r.check(
        SUITE,
        "double_perp_fixes_projections",
        projections.iter().find(|&&p| s.pp(p) != p).map(|&p| format!("k={}", l(p))),
    );
    // t ≤ r⊥ ⇔ r ≤ t⊥
    r.check(
        SUITE,
        "triple",
        first_failure(k, |a| (0..k).find(|&t| s.leq(t, s.perp(a)) != s.leq(a, s.perp(t))).map(|t| w(a, t))),
    );
    r.check(SUITE, "below_double_perp", first_failure(k, |a| (!s.leq(a, s.pp(a))).then(|| format!("r={}", l(a)))));
    r.check(SUITE, "zero_perp_is_unit", (s.perp(ms.zero) != ms.unit).then(|| format!("0'={}", l(s.perp(ms.zero)))));
    r.check(
        SUITE,
        "zero_iff_double_perp_zero",
        first_failure(k, |a| ((a == ms.zero) != (s.pp(a) == ms.zero)).then(|| format!("r={}", l(a)))),
    );
    r
}

/// `[S]` with its orthomodular lattice structure. Lattice element `i`
/// corresponds to carrier element `members[i]`.
#[derive(Debug, Clone)]
pub struct SasakiSet {
    members: Vec<usize>,
    position: Vec<Option<usize>>,
    oml: Arc<Oml>,
}

impl SasakiSet {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn member(&self, i: usize) -> usize {
        self.members[i]
    }

    /// Lattice index of a carrier element, if it lies in `[S]`.
    pub fn position(&self, s: usize) -> Option<usize> {
        self.position[s]
    }

    pub fn oml(&self) -> &Arc<Oml> {
        &self.oml
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `(k₁ · [[k₂]·k₁])⊥⊥`
pub fn formula_meet(s: &FoulisMS, k1: usize, k2: usize) -> usize {
    let ms = &s.ms;
    s.pp(ms.mult(k1, s.sai(ms.mult(s.sai(k2), k1))))
}

/// `[[⊔X]]`
pub fn formula_join<I: IntoIterator<Item = usize>>(s: &FoulisMS, xs: I) -> usize {
    s.sai(s.sai(s.ms.join_all(xs)))
}

/// Builds `[S]` from the structure formulas and cross-checks them against
/// the order-theoretic operations, returning the checks alongside.
pub fn sasaki_set_report(s: &FoulisMS) -> (Report, Option<SasakiSet>) {
    let mut r = Report::new();
    const SUITE: &str = "structure";
    if let Err(e) = s.check_shape() {
        r.fail(SUITE, "shape", e.to_string());
        return (r, None);
    }
    let ms = &s.ms;
    let members = s.projections();
    let mut position = vec![None; s.size()];
    for (i, &m) in members.iter().enumerate() {
        position[m] = Some(i);
    }
    let l = |a: usize| s.label(a);

    let top = s.sai(ms.zero);
    if top != ms.unit || position[ms.unit].is_none() || position[ms.zero].is_none() {
        r.fail(SUITE, "top_is_unit", format!("[0]={}", l(top)));
        return (r, None);
    }
    r.pass(SUITE, "top_is_unit");
    if members.len() > MAX_ELEMENTS {
        r.fail(SUITE, "oml", format!("{} projections exceed the lattice cap", members.len()));
        return (r, None);
    }

    let mut leq = Vec::new();
    let mut perp = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            if i != j && s.leq(a, b) {
                leq.push((i, j));
            }
        }
        match position[s.sai(a)] {
            Some(j) if i <= j => perp.push((i, j)),
            Some(_) => {}
            None => {
                r.fail(SUITE, "perp_closed", format!("k={}", l(a)));
                return (r, None);
            }
        }
    }
    let data = LatticeData {
        name: "sasaki".into(),
        labels: members.iter().map(|&m| l(m).to_string()).collect(),
        leq,
        perp,
        bottom: position[ms.zero].unwrap(),
        top: position[ms.unit].unwrap(),
    };
    let oml = match Oml::build(&data) {
        Ok(o) => Arc::new(o),
        Err(e) => {
            r.fail(SUITE, "oml", e.to_string());
            return (r, None);
        }
    };
    r.pass(SUITE, "oml");

    let m = members.len();
    let pos = |c: usize| position[c];
    r.check(
        SUITE,
        "meet_formula",
        (0..m).find_map(|i| {
            (0..m)
                .find(|&j| pos(formula_meet(s, members[i], members[j])) != Some(oml.meet(i, j)))
                .map(|j| format!("k1={} k2={}", l(members[i]), l(members[j])))
        }),
    );
    r.check(
        SUITE,
        "join_formula",
        (0..m).find_map(|i| {
            (0..m)
                .find(|&j| pos(formula_join(s, [members[i], members[j]])) != Some(oml.join(i, j)))
                .map(|j| format!("k1={} k2={}", l(members[i]), l(members[j])))
        }),
    );
    let mut subset_failure = None;
    for_each_subset(m, 3, |sub| {
        if subset_failure.is_some() {
            return;
        }
        let formula = pos(formula_join(s, sub.iter().map(|&i| members[i])));
        if formula != Some(oml.join_all(sub.iter().copied())) {
            let names: Vec<&str> = sub.iter().map(|&i| l(members[i])).collect();
            subset_failure = Some(format!("X={{{}}}", names.join(",")));
        }
    });
    r.check(SUITE, "join_formula_subsets", subset_failure);
    // the binary meet formula folded from the top `e`
    let mut subset_failure = None;
    for_each_subset(m, 3, |sub| {
        if subset_failure.is_some() {
            return;
        }
        let formula = sub.iter().fold(ms.unit, |acc, &i| formula_meet(s, acc, members[i]));
        if pos(formula) != Some(oml.meet_all(sub.iter().copied())) {
            let names: Vec<&str> = sub.iter().map(|&i| l(members[i])).collect();
            subset_failure = Some(format!("X={{{}}}", names.join(",")));
        }
    });
    r.check(SUITE, "meet_formula_subsets", subset_failure);

    let set = SasakiSet { members, position, oml };
    (r, Some(set))
}

/// `[S]` as an orthomodular lattice; any structural check failing is an error.
pub fn sasaki_set(s: &FoulisMS) -> Result<SasakiSet, FoulisError> {
    let (report, set) = sasaki_set_report(s);
    if let Some(first) = report.failures().into_iter().next() {
        return Err(FoulisError::StructureFailure(first));
    }
    set.ok_or_else(|| FoulisError::StructureFailure("no lattice".into()))
}

/// Calls `f` on every subset of `0..n` of size at most `max` (including the
/// empty one), as ascending index lists.
pub fn for_each_subset<F: FnMut(&[usize])>(n: usize, max: usize, mut f: F) {
    fn go<F: FnMut(&[usize])>(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, f: &mut F) {
        f(cur);
        if cur.len() == max {
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, max, cur, f);
            cur.pop();
        }
    }
    go(0, n, max, &mut Vec::new(), &mut f);
}
