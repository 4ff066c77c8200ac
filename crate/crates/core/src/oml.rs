//! Finite ortholattices and orthomodular lattices as validated operation tables.
//!
//! Elements are dense indices `0..n`. The order is kept as two bitset rows per
//! element (`up[x]` holds every `y` with `x <= y`, `down[x]` every `y <= x`),
//! which caps the carrier at 64 elements.

use std::fmt;
use std::ops::Deref;

use thiserror::Error;

/// Element index into a lattice carrier.
pub type Elem = usize;

/// Largest carrier supported by the bitset representation.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmlError {
    #[error("lattice has no elements")]
    Empty,
    #[error("lattice has {n} elements, the size cap is {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("element index {0} out of range")]
    BadIndex(usize),
    #[error("orthocomplement pairs do not cover element #{0} exactly once")]
    BadPerp(Elem),
    #[error("order is not antisymmetric: #{x} <= #{y} <= #{x}")]
    NotAPoset { x: Elem, y: Elem },
    #[error("declared bound #{0} is not a bound of the order")]
    NotBounded(Elem),
    #[error("#{x} and #{y} have no {op}")]
    NotALattice { op: LatticeOp, x: Elem, y: Elem },
    #[error("orthocomplement violates {law} at #{x}, #{y}")]
    NotOrtho { law: OrthoLaw, x: Elem, y: Elem },
    #[error("orthomodular law fails: #{x} <= #{y} but y != x v (x' ^ y)")]
    NotOrthomodular { x: Elem, y: Elem },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Meet,
    Join,
}

impl fmt::Display for LatticeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeOp::Meet => "meet",
            LatticeOp::Join => "join",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthoLaw {
    Involution,
    Antitone,
    MeetComplement,
    JoinComplement,
    DeMorgan,
}

impl fmt::Display for OrthoLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrthoLaw::Involution => "involution",
            OrthoLaw::Antitone => "antitone",
            OrthoLaw::MeetComplement => "meet_complement",
            OrthoLaw::JoinComplement => "join_complement",
            OrthoLaw::DeMorgan => "de_morgan",
        })
    }
}

/// Raw presentation of a lattice: labels plus generating order pairs and
/// complement pairs, all by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeData {
    pub name: String,
    pub labels: Vec<String>,
    pub leq: Vec<(Elem, Elem)>,
    pub perp: Vec<(Elem, Elem)>,
    pub bottom: Elem,
    pub top: Elem,
}

#[inline]
fn bit(i: usize) -> u64 {
    1u64 << i
}

/// A validated ortholattice. Orthomodularity is not assumed; see [`Oml`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ortholattice {
    name: String,
    labels: Vec<String>,
    up: Vec<u64>,
    down: Vec<u64>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    perp: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl Ortholattice {
    pub fn build(data: &LatticeData) -> Result<Self, OmlError> {
        Self::build_with_cap(data, MAX_ELEMENTS)
    }

    pub fn build_with_cap(data: &LatticeData, cap: usize) -> Result<Self, OmlError> {
        let n = data.labels.len();
        let cap = cap.min(MAX_ELEMENTS);
        if n == 0 {
            return Err(OmlError::Empty);
        }
        if n > cap {
            return Err(OmlError::SizeCap { n, cap });
        }
        for (i, l) in data.labels.iter().enumerate() {
            if data.labels[..i].contains(l) {
                return Err(OmlError::DuplicateLabel(l.clone()));
            }
        }
        let check = |x: Elem| if x < n { Ok(x) } else { Err(OmlError::BadIndex(x)) };
        check(data.bottom)?;
        check(data.top)?;

        let mut perp = vec![usize::MAX; n];
        for &(a, b) in &data.perp {
            check(a)?;
            check(b)?;
            if perp[a] != usize::MAX {
                return Err(OmlError::BadPerp(a));
            }
            if a != b && perp[b] != usize::MAX {
                return Err(OmlError::BadPerp(b));
            }
            perp[a] = b;
            perp[b] = a;
        }
        if let Some(x) = perp.iter().position(|&p| p == usize::MAX) {
            return Err(OmlError::BadPerp(x));
        }

        // Reflexive-transitive closure (Warshall over bitset rows).
        let mut up: Vec<u64> = (0..n).map(bit).collect();
        for &(a, b) in &data.leq {
            check(a)?;
            check(b)?;
            up[a] |= bit(b);
        }
        for k in 0..n {
            for i in 0..n {
                if up[i] & bit(k) != 0 {
                    up[i] |= up[k];
                }
            }
        }
        let mut down = vec![0u64; n];
        for (x, row) in up.iter().enumerate() {
            for (y, d) in down.iter_mut().enumerate() {
                if row & bit(y) != 0 {
                    *d |= bit(x);
                }
            }
        }
        for x in 0..n {
            let both = up[x] & down[x] & !bit(x);
            if both != 0 {
                return Err(OmlError::NotAPoset { x, y: both.trailing_zeros() as usize });
            }
        }

        let all = if n == 64 { u64::MAX } else { bit(n) - 1 };
        if up[data.bottom] != all {
            return Err(OmlError::NotBounded(data.bottom));
        }
        if down[data.top] != all {
            return Err(OmlError::NotBounded(data.top));
        }

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let lower = down[x] & down[y];
                meet[x * n + y] = greatest(lower, &down).ok_or(OmlError::NotALattice { op: LatticeOp::Meet, x, y })?;
                let upper = up[x] & up[y];
                join[x * n + y] = greatest(upper, &up).ok_or(OmlError::NotALattice { op: LatticeOp::Join, x, y })?;
            }
        }

        let l = Ortholattice {
            name: data.name.clone(),
            labels: data.labels.clone(),
            up,
            down,
            meet,
            join,
            perp,
            bottom: data.bottom,
            top: data.top,
        };
        l.check_ortho()?;
        Ok(l)
    }

    fn check_ortho(&self) -> Result<(), OmlError> {
        let n = self.len();
        let fail = |law, x, y| Err(OmlError::NotOrtho { law, x, y });
        for x in 0..n {
            if self.perp(self.perp(x)) != x {
                return fail(OrthoLaw::Involution, x, self.perp(x));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.leq(x, y) && !self.leq(self.perp(y), self.perp(x)) {
                    return fail(OrthoLaw::Antitone, x, y);
                }
            }
        }
        for x in 0..n {
            if self.meet(x, self.perp(x)) != self.bottom {
                return fail(OrthoLaw::MeetComplement, x, self.perp(x));
            }
            if self.join(x, self.perp(x)) != self.top {
                return fail(OrthoLaw::JoinComplement, x, self.perp(x));
            }
        }
        // The join table is computed independently; it must agree with
        // x v y = (x' ^ y')'.
        for x in 0..n {
            for y in 0..n {
                if self.join(x, y) != self.perp(self.meet(self.perp(x), self.perp(y))) {
                    return fail(OrthoLaw::DeMorgan, x, y);
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.up[x] & bit(y) != 0
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.len() + y]
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.len() + y]
    }

    #[inline]
    pub fn perp(&self, x: Elem) -> Elem {
        self.perp[x]
    }

    /// Bitset of `{y : x <= y}`.
    pub fn up_set(&self, x: Elem) -> u64 {
        self.up[x]
    }

    /// Bitset of `{y : y <= x}`.
    pub fn down_set(&self, x: Elem) -> u64 {
        self.down[x]
    }

    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// `x ⊥ y` iff `x <= y'`.
    pub fn ortho(&self, x: Elem, y: Elem) -> bool {
        self.leq(x, self.perp(y))
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<Elem> {
        self.covers().into_iter().filter(|&(x, _)| x == self.bottom).map(|(_, y)| y).collect()
    }

    /// Cover relation `x ⋖ y`, sorted.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if x != y && self.leq(x, y) && (self.up[x] & self.down[y]) == (bit(x) | bit(y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Exhaustive check of the three orthomodularity conditions.
    pub fn orthomodular_three_ways(&self) -> OrthomodularVerdicts {
        let pairs =
            || self.elements().flat_map(move |x| self.elements().map(move |y| (x, y))).filter(|&(x, y)| self.leq(x, y));
        let join_form = pairs().find(|&(x, y)| y != self.join(x, self.meet(self.perp(x), y)));
        let meet_form = pairs().find(|&(x, y)| x != self.meet(y, self.join(self.perp(y), x)));
        let cancellation = pairs().find(|&(x, y)| self.meet(self.perp(x), y) == self.bottom && x != y);
        OrthomodularVerdicts { join_form, meet_form, cancellation }
    }

    /// Reconstructs a presentation with the cover relation as generating pairs.
    pub fn to_data(&self) -> LatticeData {
        let perp = self.elements().filter(|&x| x <= self.perp(x)).map(|x| (x, self.perp(x))).collect();
        let mut leq = self.covers();
        if leq.is_empty() {
            leq.push((self.bottom, self.top));
        }
        LatticeData {
            name: self.name.clone(),
            labels: self.labels.clone(),
            leq,
            perp,
            bottom: self.bottom,
            top: self.top,
        }
    }
}

/// Unique element of `set` whose own row equals `set`: the maximum of a set of
/// lower bounds when `rows` is `down`, the minimum of upper bounds with `up`.
fn greatest(set: u64, rows: &[u64]) -> Option<Elem> {
    let mut rest = set;
    while rest != 0 {
        let z = rest.trailing_zeros() as usize;
        if rows[z] == set {
            return Some(z);
        }
        rest &= rest - 1;
    }
    None
}

/// First failing `(x, y)` pair for each condition, `None` where it holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrthomodularVerdicts {
    /// `x <= y` implies `y = x v (x' ^ y)`.
    pub join_form: Option<(Elem, Elem)>,
    /// `x <= y` implies `x = y ^ (y' v x)`.
    pub meet_form: Option<(Elem, Elem)>,
    /// `x <= y` and `x' ^ y = 0` implies `x = y`.
    pub cancellation: Option<(Elem, Elem)>,
}

impl OrthomodularVerdicts {
    pub fn as_bools(&self) -> (bool, bool, bool) {
        (self.join_form.is_none(), self.meet_form.is_none(), self.cancellation.is_none())
    }

    pub fn all_hold(&self) -> bool {
        self.as_bools() == (true, true, true)
    }
}

/// A validated finite orthomodular lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oml(Ortholattice);

impl Deref for Oml {
    type Target = Ortholattice;

    fn deref(&self) -> &Ortholattice {
        &self.0
    }
}

impl TryFrom<Ortholattice> for Oml {
    type Error = OmlError;

    fn try_from(l: Ortholattice) -> Result<Self, OmlError> {
        if let Some((x, y)) = l.orthomodular_three_ways().join_form {
            return Err(OmlError::NotOrthomodular { x, y });
        }
        Ok(Oml(l))
    }
}

impl Oml {
    pub fn build(data: &LatticeData) -> Result<Self, OmlError> {
        Ortholattice::build(data)?.try_into()
    }

    pub fn build_with_cap(data: &LatticeData, cap: usize) -> Result<Self, OmlError> {
        Ortholattice::build_with_cap(data, cap)?.try_into()
    }

    pub fn as_ortholattice(&self) -> &Ortholattice {
        &self.0
    }

    /// `π_a(y) = a ^ (a' v y)`.
    #[inline]
    pub fn sasaki(&self, a: Elem, y: Elem) -> Elem {
        self.meet(a, self.join(self.perp(a), y))
    }

    /// The Sasaki projection onto `a` as a table.
    pub fn sasaki_projection(&self, a: Elem) -> Vec<Elem> {
        self.elements().map(|y| self.sasaki(a, y)).collect()
    }

    /// Elements below `a`, ascending. Index `i` of the downset lattice
    /// corresponds to the `i`-th entry.
    pub fn downset_elements(&self, a: Elem) -> Vec<Elem> {
        self.elements().filter(|&u| self.leq(u, a)).collect()
    }

    /// The principal downset `↓a` with relative complement `u ↦ a ^ u'`.
    pub fn downset(&self, a: Elem) -> Result<Oml, OmlError> {
        let members = self.downset_elements(a);
        let pos = |x: Elem| members.binary_search(&x).expect("element of downset");
        let labels = members.iter().map(|&u| self.labels[u].clone()).collect();
        let mut leq = Vec::new();
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate() {
                if i != j && self.leq(u, v) {
                    leq.push((i, j));
                }
            }
        }
        let mut perp = Vec::new();
        for (i, &u) in members.iter().enumerate() {
            let j = pos(self.meet(a, self.perp(u)));
            if i <= j {
                perp.push((i, j));
            }
        }
        let data = LatticeData {
            name: format!("{}/down({})", self.name, self.labels[a]),
            labels,
            leq,
            perp,
            bottom: pos(self.bottom),
            top: pos(a),
        };
        Oml::build(&data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> LatticeData {
        LatticeData {
            name: "chain2".into(),
            labels: vec!["0".into(), "1".into()],
            leq: vec![(0, 1)],
            perp: vec![(0, 1)],
            bottom: 0,
            top: 1,
        }
    }

    #[test]
    fn one_element_is_valid() {
        let d = LatticeData {
            name: "one".into(),
            labels: vec!["0".into()],
            leq: vec![],
            perp: vec![(0, 0)],
            bottom: 0,
            top: 0,
        };
        let l = Oml::build(&d).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l.perp(0), 0);
        assert!(l.atoms().is_empty());
    }

    #[test]
    fn chain_tables() {
        let l = Oml::build(&chain2()).unwrap();
        assert_eq!(l.meet(0, 1), 0);
        assert_eq!(l.join(0, 1), 1);
        assert!(l.ortho(0, 1) && l.ortho(1, 0) && !l.ortho(1, 1));
        assert_eq!(l.sasaki_projection(1), vec![0, 1]);
        assert_eq!(l.covers(), vec![(0, 1)]);
    }

    #[test]
    fn rejects_cycle() {
        let mut d = chain2();
        d.leq.push((1, 0));
        assert!(matches!(Oml::build(&d), Err(OmlError::NotAPoset { .. })));
    }

    #[test]
    fn rejects_missing_and_double_perp() {
        let mut d = chain2();
        d.perp.clear();
        assert_eq!(Oml::build(&d), Err(OmlError::BadPerp(0)));
        let mut d = chain2();
        d.perp.push((1, 1));
        assert_eq!(Oml::build(&d), Err(OmlError::BadPerp(1)));
    }

    #[test]
    fn rejects_duplicates_and_oversize() {
        let mut d = chain2();
        d.labels[1] = "0".into();
        assert_eq!(Oml::build(&d), Err(OmlError::DuplicateLabel("0".into())));
        assert_eq!(Oml::build_with_cap(&chain2(), 1), Err(OmlError::SizeCap { n: 2, cap: 1 }));
    }

    #[test]
    fn rejects_non_lattice() {
        // 0 < a, b < c, d < 1 with a, b both below c and d: no join of a and b.
        let d = LatticeData {
            name: "bowtie".into(),
            labels: ["0", "a", "b", "c", "d", "1"].iter().map(|s| s.to_string()).collect(),
            leq: vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)],
            perp: vec![(0, 5), (1, 3), (2, 4)],
            bottom: 0,
            top: 5,
        };
        assert!(matches!(Oml::build(&d), Err(OmlError::NotALattice { op: LatticeOp::Join, x: 1, y: 2 })));
    }

    #[test]
    fn rejects_non_complement() {
        // three-element chain with the middle element self-complementary
        let d = LatticeData {
            name: "chain3".into(),
            labels: ["0", "m", "1"].iter().map(|s| s.to_string()).collect(),
            leq: vec![(0, 1), (1, 2)],
            perp: vec![(0, 2), (1, 1)],
            bottom: 0,
            top: 2,
        };
        assert!(matches!(Oml::build(&d), Err(OmlError::NotOrtho { law: OrthoLaw::MeetComplement, .. })));
    }

    #[test]
    fn rejects_wrong_bounds() {
        let mut d = chain2();
        d.bottom = 1;
        assert_eq!(Oml::build(&d), Err(OmlError::NotBounded(1)));
    }
}
