//! Deterministic generators for the lattice corpus.
//!
//! Element orderings are fixed: bottom first, top last, atoms in index order
//! with complements adjacent where the family allows it.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::oml::{LatticeData, Oml, OmlError, Ortholattice, MAX_ELEMENTS};

pub const MAX_BOOLEAN_ATOMS: usize = 6;
pub const MAX_MO_PAIRS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("parameter {param} out of range for family `{family}`")]
    ParameterOutOfRange { family: &'static str, param: usize },
    #[error("product has {n} elements, the size cap is {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("unknown lattice family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Invalid(#[from] OmlError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogId {
    One,
    Chain2,
    Boolean(usize),
    Mo(usize),
    Benzene,
    Product(Box<CatalogId>, Box<CatalogId>),
}

impl CatalogId {
    pub fn product(a: CatalogId, b: CatalogId) -> Self {
        CatalogId::Product(Box::new(a), Box::new(b))
    }

    /// Builds the lattice presentation. The benzene ring yields data that
    /// passes ortholattice validation only.
    pub fn data(&self) -> Result<LatticeData, CatalogError> {
        Ok(match self {
            CatalogId::One => gen_one().to_data(),
            CatalogId::Chain2 => gen_chain2().to_data(),
            CatalogId::Boolean(k) => gen_boolean(*k)?.to_data(),
            CatalogId::Mo(m) => gen_mo(*m)?.to_data(),
            CatalogId::Benzene => benzene_data(),
            CatalogId::Product(a, b) => gen_product(&a.build()?, &b.build()?)?.to_data(),
        })
    }

    pub fn build(&self) -> Result<Oml, CatalogError> {
        match self {
            CatalogId::One => Ok(gen_one()),
            CatalogId::Chain2 => Ok(gen_chain2()),
            CatalogId::Boolean(k) => gen_boolean(*k),
            CatalogId::Mo(m) => gen_mo(*m),
            CatalogId::Benzene => Ok(Oml::build(&benzene_data())?),
            CatalogId::Product(a, b) => gen_product(&a.build()?, &b.build()?),
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogId::One => write!(f, "one"),
            CatalogId::Chain2 => write!(f, "chain2"),
            CatalogId::Boolean(k) => write!(f, "boolean{k}"),
            CatalogId::Mo(m) => write!(f, "mo{m}"),
            CatalogId::Benzene => write!(f, "benzene"),
            CatalogId::Product(a, b) => write!(f, "product({a},{b})"),
        }
    }
}

impl FromStr for CatalogId {
    type Err = CatalogError;

    /// Accepts the names produced by `Display`, e.g. `mo2` or
    /// `product(mo2,chain2)`.
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let unknown = || CatalogError::UnknownFamily(s.to_string());
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            // split at the top-level comma
            let mut depth = 0;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        return Ok(CatalogId::product(inner[..i].parse()?, inner[i + 1..].parse()?));
                    }
                    _ => {}
                }
            }
            return Err(unknown());
        }
        match s {
            "one" => return Ok(CatalogId::One),
            "chain2" => return Ok(CatalogId::Chain2),
            "benzene" => return Ok(CatalogId::Benzene),
            _ => {}
        }
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?;
        let param: usize = s[split..].parse().map_err(|_| unknown())?;
        match &s[..split] {
            "boolean" => Ok(CatalogId::Boolean(param)),
            "mo" => Ok(CatalogId::Mo(param)),
            _ => Err(unknown()),
        }
    }
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// The one-element lattice `{0}`, the zero object.
pub fn gen_one() -> Oml {
    let data =
        LatticeData { name: "one".into(), labels: labels(&["0"]), leq: vec![], perp: vec![(0, 0)], bottom: 0, top: 0 };
    Oml::build(&data).expect("one-element lattice")
}

pub fn gen_chain2() -> Oml {
    let data = LatticeData {
        name: "chain2".into(),
        labels: labels(&["0", "1"]),
        leq: vec![(0, 1)],
        perp: vec![(0, 1)],
        bottom: 0,
        top: 1,
    };
    Oml::build(&data).expect("two-element chain")
}

/// Powerset of `k` atoms. Element `i` is the subset with bitmask `i`; atoms
/// are labelled `a`, `b`, ... and other subsets by their atom letters.
pub fn gen_boolean(k: usize) -> Result<Oml, CatalogError> {
    if k > MAX_BOOLEAN_ATOMS {
        return Err(CatalogError::ParameterOutOfRange { family: "boolean", param: k });
    }
    let n = 1usize << k;
    let full = n - 1;
    let labels = (0..n)
        .map(|s| match s {
            0 => "0".to_string(),
            s if s == full => "1".to_string(),
            s => (0..k).filter(|i| s & (1 << i) != 0).map(|i| (b'a' + i as u8) as char).collect(),
        })
        .collect();
    let mut leq = Vec::new();
    for s in 0..n {
        for i in 0..k {
            if s & (1 << i) == 0 {
                leq.push((s, s | (1 << i)));
            }
        }
    }
    let perp = (0..n).filter(|&s| s <= full ^ s).map(|s| (s, full ^ s)).collect();
    let data = LatticeData { name: format!("boolean{k}"), labels, leq, perp, bottom: 0, top: full };
    Ok(Oml::build(&data)?)
}

/// `MO_m`: bottom, `m` complementary atom pairs `x, x'`, top.
pub fn gen_mo(m: usize) -> Result<Oml, CatalogError> {
    if !(1..=MAX_MO_PAIRS).contains(&m) {
        return Err(CatalogError::ParameterOutOfRange { family: "mo", param: m });
    }
    let n = 2 * m + 2;
    let top = n - 1;
    let mut labels = vec!["0".to_string()];
    for i in 0..m {
        let c = (b'a' + i as u8) as char;
        labels.push(c.to_string());
        labels.push(format!("{c}'"));
    }
    labels.push("1".to_string());
    let mut leq = Vec::new();
    for x in 1..top {
        leq.push((0, x));
        leq.push((x, top));
    }
    let mut perp = vec![(0, top)];
    for i in 0..m {
        perp.push((2 * i + 1, 2 * i + 2));
    }
    let data = LatticeData { name: format!("mo{m}"), labels, leq, perp, bottom: 0, top };
    Ok(Oml::build(&data)?)
}

/// The hexagon `0 < x < y < 1`, `0 < y' < x' < 1`.
pub fn benzene_data() -> LatticeData {
    LatticeData {
        name: "benzene".into(),
        labels: labels(&["0", "x", "y", "y'", "x'", "1"]),
        leq: vec![(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)],
        perp: vec![(0, 5), (1, 4), (2, 3)],
        bottom: 0,
        top: 5,
    }
}

/// The benzene ring: a valid ortholattice that is not orthomodular.
pub fn gen_benzene() -> Ortholattice {
    Ortholattice::build(&benzene_data()).expect("benzene is an ortholattice")
}

/// Componentwise product. Element `(i, j)` has index `i * |l2| + j`.
pub fn gen_product(l1: &Oml, l2: &Oml) -> Result<Oml, CatalogError> {
    let (n1, n2) = (l1.len(), l2.len());
    let n = n1 * n2;
    if n > MAX_ELEMENTS {
        return Err(CatalogError::SizeCap { n, cap: MAX_ELEMENTS });
    }
    let idx = |i: usize, j: usize| i * n2 + j;
    let mut labels = Vec::with_capacity(n);
    for i in 0..n1 {
        for j in 0..n2 {
            labels.push(format!("({},{})", l1.label(i), l2.label(j)));
        }
    }
    let mut leq = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            for (a, b) in l1.covers() {
                if a == i {
                    leq.push((idx(i, j), idx(b, j)));
                }
            }
            for (a, b) in l2.covers() {
                if a == j {
                    leq.push((idx(i, j), idx(i, b)));
                }
            }
        }
    }
    let mut perp = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            let (x, y) = (idx(i, j), idx(l1.perp(i), l2.perp(j)));
            if x <= y {
                perp.push((x, y));
            }
        }
    }
    let data = LatticeData {
        name: format!("product({},{})", l1.name(), l2.name()),
        labels,
        leq,
        perp,
        bottom: idx(l1.bottom(), l2.bottom()),
        top: idx(l1.top(), l2.top()),
    };
    Ok(Oml::build(&data)?)
}
