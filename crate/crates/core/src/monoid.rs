//! Finite monoids given by Cayley tables, by ring multiplication, or as
//! direct products of other monoids.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::ring::{strides_for, FiniteRing};

/// Where a monoid came from. Also drives the operation when no table is
/// materialized.
#[derive(Debug, Clone)]
pub enum Provenance {
    Table,
    Ring(Arc<FiniteRing>),
    Product {
        factors: Vec<Arc<FiniteMonoid>>,
        strides: Vec<usize>,
    },
}

pub struct FiniteMonoid {
    size: usize,
    identity: usize,
    absorbing: Option<usize>,
    labels: Vec<String>,
    table: Option<Vec<u32>>,
    provenance: Provenance,
    units: OnceLock<Vec<usize>>,
    inverses: OnceLock<Vec<Option<usize>>>,
    center: OnceLock<Vec<usize>>,
    generators: OnceLock<Vec<usize>>,
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMonoid")
            .field("size", &self.size)
            .field("identity", &self.identity)
            .field("absorbing", &self.absorbing)
            .finish_non_exhaustive()
    }
}

/// Sorted subset of a monoid's carrier.
#[derive(Debug, Clone)]
pub struct SubsetHandle {
    parent: Arc<FiniteMonoid>,
    members: Vec<usize>,
}

impl SubsetHandle {
    pub fn new(parent: &Arc<FiniteMonoid>, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= parent.size) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: parent.size,
            });
        }
        Ok(SubsetHandle {
            parent: Arc::clone(parent),
            members,
        })
    }

    pub fn parent(&self) -> &Arc<FiniteMonoid> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

fn find_identity(n: usize, op: impl Fn(usize, usize) -> usize) -> Option<usize> {
    (0..n).find(|&e| (0..n).all(|x| op(e, x) == x && op(x, e) == x))
}

fn find_absorbing(n: usize, op: impl Fn(usize, usize) -> usize) -> Option<usize> {
    (0..n).find(|&z| (0..n).all(|x| op(z, x) == z && op(x, z) == z))
}

impl FiniteMonoid {
    fn assemble(
        size: usize,
        identity: usize,
        absorbing: Option<usize>,
        labels: Vec<String>,
        provenance: Provenance,
        table_limit: usize,
    ) -> Self {
        let mut m = FiniteMonoid {
            size,
            identity,
            absorbing,
            labels,
            table: None,
            provenance,
            units: OnceLock::new(),
            inverses: OnceLock::new(),
            center: OnceLock::new(),
            generators: OnceLock::new(),
        };
        if size <= table_limit && !matches!(m.provenance, Provenance::Table) {
            let table = (0..size * size)
                .map(|k| m.structured_op(k / size, k % size) as u32)
                .collect();
            m.table = Some(table);
        }
        m
    }

    /// Builds a monoid from a row-major Cayley table, checking closure,
    /// associativity and the existence of a two-sided identity.
    pub fn from_table(table: Vec<usize>, labels: Option<Vec<String>>) -> Result<Arc<Self>> {
        let size = (table.len() as f64).sqrt().round() as usize;
        if size == 0 || size * size != table.len() {
            return Err(Error::InvalidMonoid("table is not square".into()));
        }
        if table.iter().any(|&x| x >= size) {
            return Err(Error::InvalidMonoid("table entry out of range".into()));
        }
        let op = |a: usize, b: usize| table[a * size + b];
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if op(op(a, b), c) != op(a, op(b, c)) {
                        return Err(Error::InvalidMonoid(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let identity = find_identity(size, op)
            .ok_or_else(|| Error::InvalidMonoid("no two-sided identity".into()))?;
        let absorbing = find_absorbing(size, op);
        let labels = match labels {
            Some(l) if l.len() == size => l,
            Some(_) => return Err(Error::InvalidMonoid("label count mismatch".into())),
            None => (0..size).map(|i| i.to_string()).collect(),
        };
        let mut m = Self::assemble(size, identity, absorbing, labels, Provenance::Table, 0);
        m.table = Some(table.into_iter().map(|x| x as u32).collect());
        Ok(Arc::new(m))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn absorbing(&self) -> Option<usize> {
        self.absorbing
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The ring this is the multiplicative monoid of, if any.
    pub fn ring(&self) -> Option<&Arc<FiniteRing>> {
        match &self.provenance {
            Provenance::Ring(r) => Some(r),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[Arc<FiniteMonoid>]> {
        match &self.provenance {
            Provenance::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.size + b] as usize,
            None => self.structured_op(a, b),
        }
    }

    fn structured_op(&self, a: usize, b: usize) -> usize {
        match &self.provenance {
            Provenance::Table => unreachable!("table monoids always carry their table"),
            Provenance::Ring(r) => r.mul(a, b),
            Provenance::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| f.op((a / s) % f.size, (b / s) % f.size) * s)
                .sum(),
        }
    }

    /// Coordinates of a product element, first factor first.
    pub fn coords(&self, a: usize) -> Vec<usize> {
        match &self.provenance {
            Provenance::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| (a / s) % f.size)
                .collect(),
            _ => vec![a],
        }
    }

    pub fn index_of(&self, coords: &[usize]) -> usize {
        match &self.provenance {
            Provenance::Product { strides, .. } => {
                coords.iter().zip(strides).map(|(c, s)| c * s).sum()
            }
            _ => coords[0],
        }
    }

    pub fn units(&self) -> &[usize] {
        self.units.get_or_init(|| {
            self.inverses()
                .iter()
                .enumerate()
                .filter(|(_, inv)| inv.is_some())
                .map(|(x, _)| x)
                .collect()
        })
    }

    fn inverses(&self) -> &[Option<usize>] {
        self.inverses.get_or_init(|| {
            (0..self.size)
                .map(|x| {
                    (0..self.size).find(|&y| {
                        self.op(x, y) == self.identity && self.op(y, x) == self.identity
                    })
                })
                .collect()
        })
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.inverses()[x].is_some()
    }

    /// Two-sided inverse of `x`, when `x` is a unit.
    pub fn inverse(&self, x: usize) -> Option<usize> {
        self.inverses()[x]
    }

    pub fn center(&self) -> &[usize] {
        self.center.get_or_init(|| {
            (0..self.size)
                .filter(|&m| (0..self.size).all(|n| self.op(m, n) == self.op(n, m)))
                .collect()
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.center().len() == self.size
    }

    /// Same object, or the same carrier size, identity and operation.
    pub fn same_as(&self, other: &FiniteMonoid) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        self.size == other.size
            && self.identity == other.identity
            && (0..self.size).all(|a| (0..self.size).all(|b| self.op(a, b) == other.op(a, b)))
    }

    /// Submonoid generated by `gens`, as a membership mask.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.size];
        let mut members = vec![self.identity];
        seen[self.identity] = true;
        self.extend_closure(&mut seen, &mut members, gens, 0);
        seen
    }

    /// Right-multiplies every member from `start` on by each generator until
    /// the set is closed.
    fn extend_closure(
        &self,
        seen: &mut [bool],
        members: &mut Vec<usize>,
        gens: &[usize],
        start: usize,
    ) {
        let mut i = start;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.op(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
    }

    /// Greedy generating set. Each step adds the element outside the
    /// current closure whose addition enlarges the closure most, breaking
    /// ties by smallest index. The empty list generates the trivial monoid.
    pub fn generating_set(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut gens: Vec<usize> = Vec::new();
            let mut seen = self.closure(&[]);
            let mut count = 1;
            while count < self.size {
                let mut best: Option<(usize, usize)> = None;
                for x in 0..self.size {
                    if seen[x] {
                        continue;
                    }
                    let mut trial = gens.clone();
                    trial.push(x);
                    let grown = self.closure(&trial).iter().filter(|&&b| b).count();
                    if best.map_or(true, |(_, s)| grown > s) {
                        best = Some((x, grown));
                    }
                }
                let (x, grown) = best.expect("closure is a proper subset");
                gens.push(x);
                seen = self.closure(&gens);
                count = grown;
            }
            gens
        })
    }
}

/// The multiplicative monoid `(R, ·)`: identity `1`, absorbing element `0`.
pub fn mul_monoid_of(ring: &Arc<FiniteRing>, config: &Config) -> Arc<FiniteMonoid> {
    Arc::new(FiniteMonoid::assemble(
        ring.size(),
        ring.one(),
        Some(ring.zero()),
        ring.labels().to_vec(),
        Provenance::Ring(Arc::clone(ring)),
        config.table_limit,
    ))
}

/// Direct product with the mixed-radix encoding, first factor most significant.
pub fn product_monoid(factors: &[Arc<FiniteMonoid>], config: &Config) -> Result<Arc<FiniteMonoid>> {
    if factors.len() < 2 {
        return Err(Error::InvalidSpec("a product needs at least two factors".into()));
    }
    let size = factors
        .iter()
        .try_fold(1u128, |acc, f| acc.checked_mul(f.size as u128))
        .unwrap_or(u128::MAX);
    if size > config.max_size as u128 {
        return Err(Error::SizeCapExceeded {
            size,
            cap: config.max_size,
        });
    }
    let size = size as usize;
    let strides = strides_for(factors.iter().map(|f| f.size));
    let coords_of = |a: usize| -> Vec<usize> {
        factors
            .iter()
            .zip(&strides)
            .map(|(f, &s)| (a / s) % f.size)
            .collect()
    };
    let index = |pick: &dyn Fn(&FiniteMonoid) -> usize| -> usize {
        factors.iter().zip(&strides).map(|(f, s)| pick(f) * s).sum()
    };
    let identity = index(&|f| f.identity);
    let absorbing = factors
        .iter()
        .all(|f| f.absorbing.is_some())
        .then(|| index(&|f| f.absorbing.unwrap()));
    let labels = (0..size)
        .map(|a| {
            let parts: Vec<&str> = coords_of(a)
                .into_iter()
                .zip(factors)
                .map(|(c, f)| f.label(c))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    Ok(Arc::new(FiniteMonoid::assemble(
        size,
        identity,
        absorbing,
        labels,
        Provenance::Product {
            factors: factors.to_vec(),
            strides,
        },
        config.table_limit,
    )))
}

/// Units, center and absorbing element of `m`.
pub fn units_center_absorbing(
    m: &Arc<FiniteMonoid>,
) -> (SubsetHandle, SubsetHandle, Option<usize>) {
    let units = SubsetHandle {
        parent: Arc::clone(m),
        members: m.units().to_vec(),
    };
    let center = SubsetHandle {
        parent: Arc::clone(m),
        members: m.center().to_vec(),
    };
    (units, center, m.absorbing())
}

/// True when every element of `a` commutes with every element of `b`.
pub fn commuting_images(m: &Arc<FiniteMonoid>, a: &SubsetHandle, b: &SubsetHandle) -> Result<bool> {
    if !Arc::ptr_eq(m, &a.parent) || !Arc::ptr_eq(m, &b.parent) {
        return Err(Error::SubsetParentMismatch);
    }
    Ok(subsets_commute(m, &a.members, &b.members))
}

pub(crate) fn subsets_commute(m: &FiniteMonoid, a: &[usize], b: &[usize]) -> bool {
    a.iter()
        .all(|&x| b.iter().all(|&y| m.op(x, y) == m.op(y, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{construct_ring, RingSpec};

    fn zmod_monoid(n: u64) -> Arc<FiniteMonoid> {
        let cfg = Config::default();
        let r = construct_ring(&RingSpec::zmod(n).unwrap(), &cfg).unwrap();
        mul_monoid_of(&r, &cfg)
    }

    #[test]
    fn ring_monoids() {
        let m = zmod_monoid(4);
        assert_eq!((m.size(), m.identity(), m.absorbing()), (4, 1, Some(0)));

        let cfg = Config::default();
        let gf4 = construct_ring(&RingSpec::poly_quotient(RingSpec::zmod(2).unwrap(), &[1, 1, 1]).unwrap(), &cfg).unwrap();
        assert_eq!(mul_monoid_of(&gf4, &cfg).units().len(), 3);

        let t = construct_ring(&RingSpec::poly_quotient(RingSpec::zmod(2).unwrap(), &[0, 0, 0, 1]).unwrap(), &cfg).unwrap();
        let m = mul_monoid_of(&t, &cfg);
        assert_eq!((m.size(), m.absorbing()), (8, Some(0)));
    }

    #[test]
    fn products() {
        let cfg = Config::default();
        let p = product_monoid(&[zmod_monoid(2), zmod_monoid(4)], &cfg).unwrap();
        assert_eq!(p.size(), 8);
        assert_eq!(p.label(p.identity()), "(1,1)");
        assert_eq!(p.label(p.absorbing().unwrap()), "(0,0)");
        assert_eq!(p.coords(p.identity()), vec![1, 1]);

        assert_eq!(product_monoid(&[zmod_monoid(4), zmod_monoid(4)], &cfg).unwrap().size(), 16);
        let three = product_monoid(&[zmod_monoid(2), zmod_monoid(4), zmod_monoid(8)], &cfg).unwrap();
        assert_eq!(three.size(), 64);

        let small = Config { max_size: 32, ..cfg };
        assert!(matches!(
            product_monoid(&[zmod_monoid(8), zmod_monoid(8)], &small),
            Err(Error::SizeCapExceeded { size: 64, cap: 32 })
        ));
    }

    #[test]
    fn product_without_absorbing_factor() {
        // {e, a} with a*a = a is a semilattice; a is absorbing. Drop it by
        // using the cyclic group of order 2 instead.
        let c2 = FiniteMonoid::from_table(vec![0, 1, 1, 0], None).unwrap();
        assert_eq!(c2.absorbing(), None);
        let p = product_monoid(&[c2, zmod_monoid(2)], &Config::default()).unwrap();
        assert_eq!(p.absorbing(), None);
    }

    #[test]
    fn units_and_center() {
        let m = zmod_monoid(8);
        let (units, center, absorbing) = units_center_absorbing(&m);
        assert_eq!(units.members(), &[1, 3, 5, 7]);
        assert_eq!(center.len(), 8);
        assert_eq!(absorbing, Some(0));
        assert_eq!(zmod_monoid(4).units(), &[1, 3]);
    }

    #[test]
    fn commuting_images_cases() {
        let m = zmod_monoid(8);
        let a = SubsetHandle::new(&m, vec![m.identity()]).unwrap();
        let all = SubsetHandle::new(&m, (0..8).collect()).unwrap();
        assert!(commuting_images(&m, &a, &all).unwrap());
        assert!(commuting_images(&m, &all, &all).unwrap());
        let other = zmod_monoid(8);
        let foreign = SubsetHandle::new(&other, vec![1]).unwrap();
        assert_eq!(commuting_images(&m, &a, &foreign), Err(Error::SubsetParentMismatch));
    }

    #[test]
    fn noncommutative_subsets() {
        // Left-zero semigroup {a, b} with an identity adjoined: xy = x.
        let t = vec![0, 1, 2, 1, 1, 1, 2, 2, 2];
        let m = FiniteMonoid::from_table(t, None).unwrap();
        assert_eq!(m.center(), &[0]);
        let a = SubsetHandle::new(&m, vec![1]).unwrap();
        let b = SubsetHandle::new(&m, vec![2]).unwrap();
        assert!(!commuting_images(&m, &a, &b).unwrap());
    }

    #[test]
    fn generating_sets() {
        let m = zmod_monoid(4);
        let g = m.generating_set();
        assert!(g.len() <= 2);
        assert_eq!(g, &[2, 3]);
        assert!(m.closure(g).iter().all(|&b| b));

        let trivial = FiniteMonoid::from_table(vec![0], None).unwrap();
        assert!(trivial.generating_set().is_empty());

        let m = zmod_monoid(8);
        assert!(m.generating_set().len() <= 3);
        assert!(m.closure(m.generating_set()).iter().all(|&b| b));
    }

    #[test]
    fn from_table_rejects_bad_input() {
        assert!(FiniteMonoid::from_table(vec![0, 1, 1], None).is_err());
        // Not associative: 1*1 = 2, 2*1 = 1 ...
        let bad = vec![0, 1, 2, 1, 2, 1, 2, 0, 2];
        assert!(FiniteMonoid::from_table(bad, None).is_err());
        // No identity.
        assert!(FiniteMonoid::from_table(vec![0, 0, 0, 0], None).is_err());
    }
}
