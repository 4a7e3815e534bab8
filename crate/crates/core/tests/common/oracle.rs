//! Brute-force reference implementations. Everything here works on raw
//! Cayley tables and shares no search code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use mulaut_core::{construct_ring, mul_monoid_of, parse_spec, Config, FiniteMonoid, FiniteRing};

/// Row-major Cayley table with its size.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Table {
    pub n: usize,
    pub t: Vec<usize>,
}

impl Table {
    pub fn of(m: &FiniteMonoid) -> Self {
        let n = m.size();
        Table {
            n,
            t: (0..n * n).map(|k| m.op(k / n, k % n)).collect(),
        }
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.t[a * self.n + b]
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|x| self.op(e, x) == x && self.op(x, e) == x))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.op(self.op(a, b), c) == self.op(a, self.op(b, c)))))
    }
}

pub fn is_hom(m: &Table, n: &Table, f: &[usize]) -> bool {
    let (Some(em), Some(en)) = (m.identity(), n.identity()) else {
        return false;
    };
    f[em] == en && (0..m.n).all(|a| (0..m.n).all(|b| f[m.op(a, b)] == n.op(f[a], f[b])))
}

/// Every map `M -> N`, filtered by the homomorphism laws.
pub fn naive_homs(m: &Table, n: &Table) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let total = n.n.pow(m.n as u32);
    let mut f = vec![0usize; m.n];
    for mut code in 0..total {
        for x in f.iter_mut() {
            *x = code % n.n;
            code /= n.n;
        }
        if is_hom(m, n, &f) {
            out.insert(f.clone());
        }
    }
    out
}

/// Calls `visit` on every permutation of `0..n`.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(p: &mut Vec<usize>, used: &mut [bool], visit: &mut dyn FnMut(&[usize])) {
        let n = used.len();
        if p.len() == n {
            visit(p);
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                p.push(v);
                rec(p, used, visit);
                p.pop();
                used[v] = false;
            }
        }
    }
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut visit);
}

/// Every bijection `M -> M`, filtered by the homomorphism laws.
pub fn naive_auts(m: &Table) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for_each_permutation(m.n, |p| {
        if is_hom(m, m, p) {
            out.insert(p.to_vec());
        }
    });
    out
}

/// Automorphisms by plain backtracking over element images in index order,
/// testing every product whose factors and result are already assigned.
/// For carriers too large for [`naive_auts`].
pub fn backtrack_auts(m: &Table) -> BTreeSet<Vec<usize>> {
    fn consistent(m: &Table, f: &[Option<usize>], x: usize) -> bool {
        (0..m.n).all(|y| {
            let (Some(fx), Some(fy)) = (f[x], f[y]) else { return true };
            let checks = [(m.op(x, y), m.op(fx, fy)), (m.op(y, x), m.op(fy, fx))];
            checks.iter().all(|&(p, q)| f[p].is_none_or(|fp| fp == q))
        })
    }
    fn rec(m: &Table, f: &mut Vec<Option<usize>>, used: &mut [bool], x: usize, out: &mut BTreeSet<Vec<usize>>) {
        if x == m.n {
            let g: Vec<usize> = f.iter().map(|v| v.unwrap()).collect();
            if is_hom(m, m, &g) {
                out.insert(g);
            }
            return;
        }
        for v in 0..m.n {
            if used[v] {
                continue;
            }
            f[x] = Some(v);
            used[v] = true;
            if consistent(m, f, x) {
                rec(m, f, used, x + 1, out);
            }
            used[v] = false;
            f[x] = None;
        }
    }
    let mut out = BTreeSet::new();
    rec(m, &mut vec![None; m.n], &mut vec![false; m.n], 0, &mut out);
    out
}

fn relabel(t: &Table, p: &[usize]) -> Table {
    // p maps old -> new.
    let n = t.n;
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[p[a] * n + p[b]] = p[t.op(a, b)];
        }
    }
    Table { n, t: out }
}

/// All monoids of order `n` up to isomorphism, identity at index 0, each in
/// the lexicographically least relabelling.
pub fn all_monoids(n: usize) -> Vec<Table> {
    let free: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
    let mut seen = BTreeSet::new();
    let total = n.pow(free.len() as u32);
    let mut t = vec![0usize; n * n];
    for x in 0..n {
        t[x] = x;
        t[x * n] = x;
    }
    for mut code in 0..total {
        for &(a, b) in &free {
            t[a * n + b] = code % n;
            code /= n;
        }
        let table = Table { n, t: t.clone() };
        if !table.is_associative() {
            continue;
        }
        let mut best: Option<Table> = None;
        for_each_permutation(n - 1, |q| {
            let p: Vec<usize> = std::iter::once(0).chain(q.iter().map(|&v| v + 1)).collect();
            let r = relabel(&table, &p);
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        });
        seen.insert(best.unwrap());
    }
    seen.into_iter().collect()
}

pub fn monoid_of_table(t: &Table) -> Arc<FiniteMonoid> {
    FiniteMonoid::from_table(t.t.clone(), None).expect("valid monoid table")
}

pub fn ring(spec: &str) -> Arc<FiniteRing> {
    construct_ring(&parse_spec(spec).unwrap(), &Config::default()).unwrap()
}

pub fn ring_monoid(spec: &str) -> Arc<FiniteMonoid> {
    mul_monoid_of(&ring(spec), &Config::default())
}

/// `{e} ∪ L` where `L` is a left-zero band of size `k` (`xy = x` on `L`):
/// a non-commutative monoid of order `k + 1`.
pub fn left_zero_with_identity(k: usize) -> Table {
    let n = k + 1;
    let mut t = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            t[a * n + b] = if a == 0 { b } else { a };
        }
    }
    Table { n, t }
}

/// Cyclic group of order `n`.
pub fn cyclic(n: usize) -> Table {
    Table {
        n,
        t: (0..n * n).map(|k| (k / n + k % n) % n).collect(),
    }
}

/// The chain `0 < 1 < ... < n-1` under max: `0` is the identity and `n-1`
/// is absorbing.
pub fn chain(n: usize) -> Table {
    Table {
        n,
        t: (0..n * n).map(|k| (k / n).max(k % n)).collect(),
    }
}

/// Rings whose multiplicative monoids the suites iterate over, by size.
pub const SMALL_RINGS: &[&str] = &[
    "Z/2",
    "Z/3",
    "Z/4",
    "Z/2[x]/(x^2)",
    "Z/2[x]/(x^2+x+1)",
    "Z/2 x Z/2",
    "Z/5",
    "Z/6",
    "Z/2 x Z/3",
    "Z/7",
    "Z/8",
    "Z/2[x]/(x^3)",
    "Z/2[x]/(x^3+x+1)",
    "Z/2 x Z/4",
    "Z/2 x Z/2[x]/(x^2)",
    "Z/2 x Z/2 x Z/2",
    "Z/9",
    "Z/3[x]/(x^2)",
    "Z/3[x]/(x^2+1)",
    "Z/3 x Z/3",
];
