//! Independent oracles for the integration tests.
//!
//! Nothing here calls into the library's lattice algorithms: lattices are
//! written down from their defining order predicates, meets and joins are
//! found by naive scans, and linear maps are found by trying every table.

#![allow(dead_code)]

use omlkit::Ortholattice;

/// A lattice given by its order matrix and complement, with meet and join
/// computed on demand by scanning bounds.
#[derive(Debug, Clone)]
pub struct Naive {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub perp: Vec<usize>,
}

impl Naive {
    pub fn new(n: usize, leq: impl Fn(usize, usize) -> bool, perp: impl Fn(usize) -> usize) -> Self {
        Naive {
            n,
            leq: (0..n).map(|x| (0..n).map(|y| leq(x, y)).collect()).collect(),
            perp: (0..n).map(perp).collect(),
        }
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        let lower: Vec<usize> = (0..self.n).filter(|&z| self.le(z, x) && self.le(z, y)).collect();
        *lower.iter().find(|&&z| lower.iter().all(|&w| self.le(w, z))).expect("meet exists")
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        let upper: Vec<usize> = (0..self.n).filter(|&z| self.le(x, z) && self.le(y, z)).collect();
        *upper.iter().find(|&&z| upper.iter().all(|&w| self.le(z, w))).expect("join exists")
    }

    pub fn bottom(&self) -> usize {
        (0..self.n).find(|&z| (0..self.n).all(|w| self.le(z, w))).unwrap()
    }

    pub fn top(&self) -> usize {
        (0..self.n).find(|&z| (0..self.n).all(|w| self.le(w, z))).unwrap()
    }

    pub fn sasaki(&self, a: usize, y: usize) -> usize {
        self.meet(a, self.join(self.perp[a], y))
    }

    /// The orthomodular law in its defining form, first failing pair.
    pub fn orthomodular_witness(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| (x, y)))
            .find(|&(x, y)| self.le(x, y) && self.join(x, self.meet(self.perp[x], y)) != y)
    }

    pub fn ortho(&self, x: usize, y: usize) -> bool {
        self.le(x, self.perp[y])
    }
}

pub fn chain2() -> Naive {
    Naive::new(2, |x, y| x <= y, |x| 1 - x)
}

/// Subsets of `k` atoms as bitmasks.
pub fn boolean(k: usize) -> Naive {
    let full = (1 << k) - 1;
    Naive::new(1 << k, |x, y| x & y == x, move |x| full ^ x)
}

/// `0`, atoms `1..=2m` with `2i-1` and `2i` complementary, top `2m+1`.
pub fn mo(m: usize) -> Naive {
    let top = 2 * m + 1;
    Naive::new(
        top + 1,
        move |x, y| x == y || x == 0 || y == top,
        move |x| match x {
            0 => top,
            x if x == top => 0,
            x if x % 2 == 1 => x + 1,
            x => x - 1,
        },
    )
}

/// The hexagon `0 < x < y < 1`, `0 < y' < x' < 1` in the order
/// `0, x, y, y', x', 1`.
pub fn benzene() -> Naive {
    let up = [vec![0, 1, 2, 3, 4, 5], vec![1, 2, 5], vec![2, 5], vec![3, 4, 5], vec![4, 5], vec![5]];
    Naive::new(6, |x, y| up[x].contains(&y), |x| 5 - x)
}

pub fn product(a: &Naive, b: &Naive) -> Naive {
    let nb = b.n;
    Naive::new(a.n * nb, |x, y| a.le(x / nb, y / nb) && b.le(x % nb, y % nb), |x| a.perp[x / nb] * nb + b.perp[x % nb])
}

/// An order and complement preserving bijection `phi` with
/// `naive -> lattice`, found by backtracking.
pub fn isomorphism(naive: &Naive, l: &Ortholattice) -> Option<Vec<usize>> {
    if naive.n != l.len() {
        return None;
    }
    fn extend(naive: &Naive, l: &Ortholattice, phi: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = phi.len();
        if i == naive.n {
            return true;
        }
        for c in 0..naive.n {
            if used[c] {
                continue;
            }
            let consistent = (0..i).all(|j| {
                naive.le(i, j) == l.leq(c, phi[j])
                    && naive.le(j, i) == l.leq(phi[j], c)
                    && (naive.perp[i] != j || l.perp(c) == phi[j])
            }) && (naive.perp[i] != i || l.perp(c) == c);
            if consistent {
                phi.push(c);
                used[c] = true;
                if extend(naive, l, phi, used) {
                    return true;
                }
                phi.pop();
                used[c] = false;
            }
        }
        false
    }
    let mut phi = Vec::new();
    let mut used = vec![false; naive.n];
    extend(naive, l, &mut phi, &mut used).then_some(phi)
}

/// Calls `f` on every table `0..n -> 0..n`.
pub fn for_each_table(n: usize, mut f: impl FnMut(&[usize])) {
    let mut t = vec![0; n];
    loop {
        f(&t);
        let mut i = 0;
        while i < n && t[i] == n - 1 {
            t[i] = 0;
            i += 1;
        }
        if i == n {
            return;
        }
        t[i] += 1;
    }
}

/// Tables `h` with `f(x) ⊥ y ⇔ x ⊥ h(y)`, by exhaustive search.
pub fn adjoints_by_search(x: &Naive, f: &[usize]) -> Vec<Vec<usize>> {
    // the condition separates over y, so search each h(y) independently
    let per_y: Vec<Vec<usize>> = (0..x.n)
        .map(|y| (0..x.n).filter(|&hy| (0..x.n).all(|a| x.ortho(f[a], y) == x.ortho(a, hy))).collect())
        .collect();
    let mut out = Vec::new();
    if per_y.iter().any(Vec::is_empty) {
        return out;
    }
    let mut idx = vec![0; x.n];
    loop {
        out.push((0..x.n).map(|y| per_y[y][idx[y]]).collect());
        let mut i = 0;
        while i < x.n && idx[i] + 1 == per_y[i].len() {
            idx[i] = 0;
            i += 1;
        }
        if i == x.n {
            return out;
        }
        idx[i] += 1;
    }
}

/// Every endofunction admitting an adjoint, by trying all `n^n` tables.
pub fn lin_by_search(x: &Naive) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_table(x.n, |f| {
        if !adjoints_by_search(x, f).is_empty() {
            out.push(f.to_vec());
        }
    });
    out
}

/// Endofunctions preserving `0` and binary joins, by trying all tables.
pub fn join_preserving(x: &Naive) -> Vec<Vec<usize>> {
    let join: Vec<Vec<usize>> = (0..x.n).map(|a| (0..x.n).map(|b| x.join(a, b)).collect()).collect();
    let bottom = x.bottom();
    let mut out = Vec::new();
    for_each_table(x.n, |f| {
        if f[bottom] == bottom && (0..x.n).all(|a| (0..a).all(|b| f[join[a][b]] == join[f[a]][f[b]])) {
            out.push(f.to_vec());
        }
    });
    out
}

/// Carries a table through an isomorphism: `phi ∘ f ∘ phi⁻¹`.
pub fn transport(phi: &[usize], f: &[usize]) -> Vec<usize> {
    let mut g = vec![0; f.len()];
    for (i, &v) in f.iter().enumerate() {
        g[phi[i]] = phi[v];
    }
    g
}
