//! Maps between orthomodular lattices and the linear maps among them.
//!
//! A map `f: X → Y` is linear when some `h: Y → X` satisfies
//! `f(x) ⊥ y ⟺ x ⊥ h(y)`. Such an `h` is unique and is recovered from the
//! right order-adjoint `ĥ(y) = ⋁{x : f(x) <= y}` as `h(y) = ĥ(y')'`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::oml::{Elem, Oml, OmlError};

/// Upper bound on candidate maps examined by [`enumerate_lin`].
pub const MAX_CANDIDATES: u64 = 1 << 24;

/// Largest carrier accepted by [`enumerate_lin_brute_force`].
pub const MAX_BRUTE_FORCE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinMapError {
    #[error("no adjoint: {0}")]
    NoAdjoint(NoAdjoint),
    #[error("domain/codomain mismatch")]
    DomainMismatch,
    #[error("table has length {len}, expected {expected}")]
    BadLength { len: usize, expected: usize },
    #[error("value #{value} at #{at} is outside the codomain")]
    OutOfRange { at: Elem, value: Elem },
    #[error("enumeration needs {needed} candidates, cap is {cap}")]
    SizeCap { needed: u64, cap: u64 },
    #[error(transparent)]
    Lattice(#[from] OmlError),
}

/// Why a map has no adjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoAdjoint {
    ZeroNotPreserved {
        image: Elem,
    },
    JoinNotPreserved {
        x: Elem,
        y: Elem,
    },
    /// `f(x) ⊥ y` and `x ⊥ h(y)` disagree for the canonical candidate `h`.
    Orthogonality {
        x: Elem,
        y: Elem,
    },
}

impl fmt::Display for NoAdjoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoAdjoint::ZeroNotPreserved { image } => write!(f, "f(0) = #{image}"),
            NoAdjoint::JoinNotPreserved { x, y } => write!(f, "f(#{x} v #{y}) != f(#{x}) v f(#{y})"),
            NoAdjoint::Orthogonality { x, y } => write!(f, "orthogonality fails at #{x}, #{y}"),
        }
    }
}

/// A total function between two lattice carriers.
#[derive(Debug, Clone)]
pub struct LatMap {
    dom: Arc<Oml>,
    cod: Arc<Oml>,
    table: Vec<Elem>,
}

impl PartialEq for LatMap {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.dom, &other.dom) && Arc::ptr_eq(&self.cod, &other.cod) && self.table == other.table
    }
}

impl Eq for LatMap {}

impl LatMap {
    pub fn new(dom: Arc<Oml>, cod: Arc<Oml>, table: Vec<Elem>) -> Result<Self, LinMapError> {
        if table.len() != dom.len() {
            return Err(LinMapError::BadLength { len: table.len(), expected: dom.len() });
        }
        if let Some(at) = table.iter().position(|&v| v >= cod.len()) {
            return Err(LinMapError::OutOfRange { at, value: table[at] });
        }
        Ok(LatMap { dom, cod, table })
    }

    pub fn endo(x: &Arc<Oml>, table: Vec<Elem>) -> Result<Self, LinMapError> {
        Self::new(x.clone(), x.clone(), table)
    }

    pub fn dom(&self) -> &Arc<Oml> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Oml> {
        &self.cod
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x]
    }

    fn diagnose(&self, x: Elem, y: Elem) -> NoAdjoint {
        let (dom, cod) = (&*self.dom, &*self.cod);
        if self.apply(dom.bottom()) != cod.bottom() {
            return NoAdjoint::ZeroNotPreserved { image: self.apply(dom.bottom()) };
        }
        for a in dom.elements() {
            for b in dom.elements() {
                if self.apply(dom.join(a, b)) != cod.join(self.apply(a), self.apply(b)) {
                    return NoAdjoint::JoinNotPreserved { x: a, y: b };
                }
            }
        }
        NoAdjoint::Orthogonality { x, y }
    }
}

/// A map together with its adjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    map: LatMap,
    adjoint: Vec<Elem>,
}

/// Computes the adjoint of `f`, or explains why none exists.
///
/// The verdict rests solely on the orthogonality law for the canonical
/// candidate; the witness is refined afterwards for diagnostics.
pub fn try_adjoint(f: LatMap) -> Result<LinMap, LinMapError> {
    let (dom, cod) = (f.dom.clone(), f.cod.clone());
    let right: Vec<Elem> =
        cod.elements().map(|y| dom.join_all(dom.elements().filter(|&x| cod.leq(f.apply(x), y)))).collect();
    let adjoint: Vec<Elem> = cod.elements().map(|y| dom.perp(right[cod.perp(y)])).collect();
    let lin = LinMap { map: f, adjoint };
    match lin.orthogonality_failure() {
        None => Ok(lin),
        Some((x, y)) => Err(LinMapError::NoAdjoint(lin.map.diagnose(x, y))),
    }
}

impl LinMap {
    fn from_parts(map: LatMap, adjoint: Vec<Elem>) -> Self {
        debug_assert_eq!(adjoint.len(), map.cod.len());
        LinMap { map, adjoint }
    }

    pub fn identity(x: &Arc<Oml>) -> Self {
        let table: Vec<Elem> = x.elements().collect();
        Self::from_parts(LatMap { dom: x.clone(), cod: x.clone(), table: table.clone() }, table)
    }

    /// The constant-bottom map; its adjoint is the constant-bottom map back.
    pub fn zero(dom: &Arc<Oml>, cod: &Arc<Oml>) -> Self {
        let map = LatMap { dom: dom.clone(), cod: cod.clone(), table: vec![cod.bottom(); dom.len()] };
        Self::from_parts(map, vec![dom.bottom(); cod.len()])
    }

    /// The Sasaki projection `π_a`, constructed through [`try_adjoint`].
    pub fn sasaki(x: &Arc<Oml>, a: Elem) -> Result<Self, LinMapError> {
        try_adjoint(LatMap::endo(x, x.sasaki_projection(a))?)
    }

    pub fn map(&self) -> &LatMap {
        &self.map
    }

    pub fn dom(&self) -> &Arc<Oml> {
        &self.map.dom
    }

    pub fn cod(&self) -> &Arc<Oml> {
        &self.map.cod
    }

    pub fn table(&self) -> &[Elem] {
        &self.map.table
    }

    pub fn adjoint_table(&self) -> &[Elem] {
        &self.adjoint
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map.table[x]
    }

    #[inline]
    pub fn apply_adjoint(&self, y: Elem) -> Elem {
        self.adjoint[y]
    }

    /// First `(x, y)` where `f(x) ⊥ y` and `x ⊥ f*(y)` disagree.
    pub fn orthogonality_failure(&self) -> Option<(Elem, Elem)> {
        let (dom, cod) = (self.dom(), self.cod());
        for x in dom.elements() {
            for y in cod.elements() {
                if cod.ortho(self.apply(x), y) != dom.ortho(x, self.apply_adjoint(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn dagger(&self) -> LinMap {
        let map = LatMap { dom: self.cod().clone(), cod: self.dom().clone(), table: self.adjoint.clone() };
        Self::from_parts(map, self.map.table.clone())
    }

    /// `self ∘ f`, with adjoint `f* ∘ self*`.
    pub fn compose(&self, f: &LinMap) -> Result<LinMap, LinMapError> {
        if !Arc::ptr_eq(f.cod(), self.dom()) {
            return Err(LinMapError::DomainMismatch);
        }
        let table = f.table().iter().map(|&x| self.apply(x)).collect();
        let adjoint = self.adjoint.iter().map(|&z| f.apply_adjoint(z)).collect();
        let map = LatMap { dom: f.dom().clone(), cod: self.cod().clone(), table };
        Ok(Self::from_parts(map, adjoint))
    }

    /// Pointwise join; the adjoint is the pointwise join of the adjoints.
    pub fn join(&self, g: &LinMap) -> Result<LinMap, LinMapError> {
        if !Arc::ptr_eq(self.dom(), g.dom()) || !Arc::ptr_eq(self.cod(), g.cod()) {
            return Err(LinMapError::DomainMismatch);
        }
        let (dom, cod) = (self.dom(), self.cod());
        let table = dom.elements().map(|x| cod.join(self.apply(x), g.apply(x))).collect();
        let adjoint = cod.elements().map(|y| dom.join(self.apply_adjoint(y), g.apply_adjoint(y))).collect();
        Ok(Self::from_parts(LatMap { dom: dom.clone(), cod: cod.clone(), table }, adjoint))
    }

    /// The element `f*(1)'` whose downset is the kernel.
    pub fn kernel(&self) -> Elem {
        self.dom().perp(self.apply_adjoint(self.cod().top()))
    }

    /// Bitset of `{x : f(x) = 0}`.
    pub fn zero_set(&self) -> u64 {
        let bottom = self.cod().bottom();
        self.dom().elements().filter(|&x| self.apply(x) == bottom).fold(0, |acc, x| acc | (1u64 << x))
    }

    /// Values of the map, ascending and deduplicated.
    pub fn image(&self) -> Vec<Elem> {
        let mut v = self.map.table.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_endo(&self) -> bool {
        Arc::ptr_eq(self.dom(), self.cod())
    }

    pub fn is_self_adjoint(&self) -> Result<bool, LinMapError> {
        if !self.is_endo() {
            return Err(LinMapError::DomainMismatch);
        }
        Ok(self.map.table == self.adjoint)
    }
}

/// The inclusion `↓a ↣ X`, whose adjoint is `π_a` corestricted to `↓a`.
pub fn downset_embedding(x: &Arc<Oml>, a: Elem) -> Result<LinMap, LinMapError> {
    let down = Arc::new(x.downset(a)?);
    let members = x.downset_elements(a);
    let adjoint = x.elements().map(|y| members.binary_search(&x.sasaki(a, y)).expect("π_a lands below a")).collect();
    let map = LatMap::new(down, x.clone(), members)?;
    Ok(LinMap::from_parts(map, adjoint))
}

fn preserves_binary_joins(x: &Oml, table: &[Elem]) -> bool {
    for a in x.elements() {
        for b in (a + 1)..x.len() {
            if table[x.join(a, b)] != x.join(table[a], table[b]) {
                return false;
            }
        }
    }
    true
}

/// Every linear endomap of `x`, sorted by table.
///
/// Finite orthomodular lattices are atomistic, so a join-preserving map is
/// fixed by its atom images: each assignment is extended by joins and then
/// handed to [`try_adjoint`]. Work is split on the image of the first atom.
pub fn enumerate_lin(x: &Arc<Oml>) -> Result<Vec<LinMap>, LinMapError> {
    let n = x.len();
    let atoms = x.atoms();
    let needed = (n as u64).checked_pow(atoms.len() as u32).unwrap_or(u64::MAX);
    if needed > MAX_CANDIDATES {
        return Err(LinMapError::SizeCap { needed, cap: MAX_CANDIDATES });
    }
    // atom positions below each element
    let below: Vec<Vec<usize>> =
        x.elements().map(|e| (0..atoms.len()).filter(|&p| x.leq(atoms[p], e)).collect()).collect();
    let extend =
        |images: &[Elem]| -> Vec<Elem> { below.iter().map(|ps| x.join_all(ps.iter().map(|&p| images[p]))).collect() };
    let candidate = |images: &[Elem]| -> Option<LinMap> {
        let table = extend(images);
        if !preserves_binary_joins(x, &table) {
            return None;
        }
        try_adjoint(LatMap { dom: x.clone(), cod: x.clone(), table }).ok()
    };

    let mut maps: Vec<LinMap> = if atoms.is_empty() {
        candidate(&[]).into_iter().collect()
    } else {
        (0..n)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut images = vec![0; atoms.len()];
                images[0] = first;
                let mut found = Vec::new();
                loop {
                    found.extend(candidate(&images));
                    if !odometer(&mut images[1..], n) {
                        break;
                    }
                }
                found
            })
            .collect()
    };
    maps.sort_by(|f, g| f.table().cmp(g.table()));
    maps.dedup_by(|f, g| f.table() == g.table());
    Ok(maps)
}

/// Full `n^n` scan through [`try_adjoint`], for small carriers.
pub fn enumerate_lin_brute_force(x: &Arc<Oml>) -> Result<Vec<LinMap>, LinMapError> {
    let n = x.len();
    if n > MAX_BRUTE_FORCE {
        return Err(LinMapError::SizeCap {
            needed: (n as u64).pow(n as u32),
            cap: (MAX_BRUTE_FORCE as u64).pow(MAX_BRUTE_FORCE as u32),
        });
    }
    let mut table = vec![0; n];
    let mut out = Vec::new();
    loop {
        if let Ok(f) = try_adjoint(LatMap { dom: x.clone(), cod: x.clone(), table: table.clone() }) {
            out.push(f);
        }
        if !odometer(&mut table, n) {
            break;
        }
    }
    Ok(out)
}

/// Advances `digits` in base `base`, last digit fastest; false on wrap-around.
fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
