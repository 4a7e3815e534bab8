//! Monoid homomorphisms and their enumeration.
//!
//! Homomorphisms are stored as full image vectors. Two homomorphisms are
//! equal exactly when their image vectors are equal, and enumerators return
//! them sorted lexicographically by image vector.

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exec;
use crate::monoid::FiniteMonoid;
use crate::ring::FiniteRing;

#[derive(Clone)]
pub struct MonoidHom {
    source: Arc<FiniteMonoid>,
    target: Arc<FiniteMonoid>,
    image: Vec<usize>,
}

impl fmt::Debug for MonoidHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("MonoidHom").field(&self.image).finish()
    }
}

impl PartialEq for MonoidHom {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
    }
}

impl Eq for MonoidHom {}

impl PartialOrd for MonoidHom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonoidHom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.image.cmp(&other.image)
    }
}

impl std::hash::Hash for MonoidHom {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.image.hash(state);
    }
}

/// First violation of the homomorphism laws, if any.
fn hom_violation(source: &FiniteMonoid, target: &FiniteMonoid, image: &[usize]) -> Option<String> {
    if image.len() != source.size() {
        return Some(format!(
            "image has {} entries, source has {} elements",
            image.len(),
            source.size()
        ));
    }
    if let Some(&bad) = image.iter().find(|&&y| y >= target.size()) {
        return Some(format!("image value {bad} outside the target"));
    }
    if image[source.identity()] != target.identity() {
        return Some("identity is not preserved".into());
    }
    for x in 0..source.size() {
        for y in 0..source.size() {
            if image[source.op(x, y)] != target.op(image[x], image[y]) {
                return Some(format!("h({x} * {y}) != h({x}) * h({y})"));
            }
        }
    }
    None
}

impl MonoidHom {
    /// Checked constructor: verifies identity preservation and
    /// multiplicativity over all pairs.
    pub fn new(source: &Arc<FiniteMonoid>, target: &Arc<FiniteMonoid>, image: Vec<usize>) -> Result<Self> {
        if let Some(msg) = hom_violation(source, target, &image) {
            return Err(Error::NotAHomomorphism(msg));
        }
        Ok(Self::from_parts(source, target, image))
    }

    pub(crate) fn from_parts(source: &Arc<FiniteMonoid>, target: &Arc<FiniteMonoid>, image: Vec<usize>) -> Self {
        MonoidHom {
            source: Arc::clone(source),
            target: Arc::clone(target),
            image,
        }
    }

    /// The constant map onto the target identity.
    pub fn trivial(source: &Arc<FiniteMonoid>, target: &Arc<FiniteMonoid>) -> Self {
        Self::from_parts(source, target, vec![target.identity(); source.size()])
    }

    pub fn identity(m: &Arc<FiniteMonoid>) -> Self {
        Self::from_parts(m, m, (0..m.size()).collect())
    }

    pub fn source(&self) -> &Arc<FiniteMonoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteMonoid> {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_trivial(&self) -> bool {
        let e = self.target.identity();
        self.image.iter().all(|&y| y == e)
    }

    /// Identity on the carrier; source and target must be the same monoid
    /// (structurally).
    pub fn is_identity(&self) -> bool {
        self.source.same_as(&self.target) && self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Sorted image set.
    pub fn image_set(&self) -> Vec<usize> {
        let mut seen = vec![false; self.target.size()];
        for &y in &self.image {
            seen[y] = true;
        }
        (0..seen.len()).filter(|&y| seen[y]).collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        self.image.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size() == self.target.size() && self.is_injective()
    }

    /// Inverse of a bijective homomorphism, verified to be a homomorphism.
    pub fn inverse(&self) -> Result<MonoidHom> {
        if !self.is_bijective() {
            return Err(Error::NotAHomomorphism("map is not bijective".into()));
        }
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        MonoidHom::new(&self.target, &self.source, inv)
    }

    /// Is this a bijective endomorphism?
    pub fn is_automorphism(&self) -> bool {
        self.source.same_as(&self.target) && self.is_bijective()
    }

    /// Re-runs the exhaustive homomorphism check.
    pub fn verify(&self) -> Result<()> {
        match hom_violation(&self.source, &self.target, &self.image) {
            Some(msg) => Err(Error::NotAHomomorphism(msg)),
            None => Ok(()),
        }
    }
}

/// The trivial morphism `M -> N`, and the identity when `M` and `N` are the
/// same monoid object.
pub fn canonical_homs(m: &Arc<FiniteMonoid>, n: &Arc<FiniteMonoid>) -> (MonoidHom, Option<MonoidHom>) {
    let identity = Arc::ptr_eq(m, n).then(|| MonoidHom::identity(m));
    (MonoidHom::trivial(m, n), identity)
}

/// `g ∘ f`.
pub fn compose(g: &MonoidHom, f: &MonoidHom) -> Result<MonoidHom> {
    if !f.target.same_as(&g.source) {
        return Err(Error::CompositionMismatch);
    }
    Ok(compose_unchecked(g, f))
}

pub(crate) fn compose_unchecked(g: &MonoidHom, f: &MonoidHom) -> MonoidHom {
    let image = f.image.iter().map(|&y| g.image[y]).collect();
    MonoidHom::from_parts(&f.source, &g.target, image)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Hom,
    Aut,
}

/// Partial assignment closed under right multiplication by the generators
/// placed so far.
#[derive(Clone)]
struct Partial<'a> {
    source: &'a FiniteMonoid,
    target: &'a FiniteMonoid,
    mode: Mode,
    image: Vec<Option<usize>>,
    members: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl<'a> Partial<'a> {
    fn new(source: &'a FiniteMonoid, target: &'a FiniteMonoid, mode: Mode) -> Option<Self> {
        let mut p = Partial {
            source,
            target,
            mode,
            image: vec![None; source.size()],
            members: Vec::new(),
            used: vec![false; target.size()],
            trail: Vec::new(),
        };
        if !p.assign(source.identity(), target.identity()) {
            return None;
        }
        if mode == Mode::Aut {
            match (source.absorbing(), target.absorbing()) {
                (Some(z), Some(w)) => {
                    if !p.assign(z, w) {
                        return None;
                    }
                }
                (None, None) => {}
                _ => return None,
            }
        }
        p.trail.clear();
        Some(p)
    }

    /// Assigns `x -> y` or checks consistency with an earlier assignment.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if let Some(prev) = self.image[x] {
            return prev == y;
        }
        if self.mode == Mode::Aut {
            if self.used[y] || self.source.is_unit(x) != self.target.is_unit(y) {
                return false;
            }
            if let (Some(z), Some(w)) = (self.source.absorbing(), self.target.absorbing()) {
                if (x == z) != (y == w) {
                    return false;
                }
            }
            self.used[y] = true;
        }
        self.image[x] = Some(y);
        self.members.push(x);
        self.trail.push(x);
        true
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            if let Some(y) = self.image[x].take() {
                self.used[y] = false;
            }
            self.members.pop();
        }
    }

    /// Places generator `gens[depth]` at `value` and propagates forced
    /// values of products. Returns false on any conflict.
    fn extend(&mut self, gens: &[usize], depth: usize, value: usize) -> bool {
        let g = gens[depth];
        let old_len = self.members.len();
        if !self.assign(g, value) {
            return false;
        }
        for i in 0..old_len {
            let x = self.members[i];
            let fx = self.image[x].unwrap();
            if !self.assign(self.source.op(x, g), self.target.op(fx, value)) {
                return false;
            }
        }
        let mut i = old_len;
        while i < self.members.len() {
            let x = self.members[i];
            let fx = self.image[x].unwrap();
            for &h in &gens[..=depth] {
                let fh = self.image[h].unwrap();
                if !self.assign(self.source.op(x, h), self.target.op(fx, fh)) {
                    return false;
                }
            }
            i += 1;
        }
        true
    }

    fn candidates(&self, g: usize) -> Vec<usize> {
        if let Some(v) = self.image[g] {
            return vec![v];
        }
        (0..self.target.size())
            .filter(|&y| match self.mode {
                Mode::Hom => true,
                Mode::Aut => !self.used[y] && self.source.is_unit(g) == self.target.is_unit(y),
            })
            .collect()
    }
}

struct Budget {
    limit: u64,
    spent: AtomicU64,
}

impl Budget {
    fn tick(&self) -> Result<()> {
        if self.spent.fetch_add(1, AtomicOrdering::Relaxed) >= self.limit {
            return Err(Error::SearchBudgetExceeded { budget: self.limit });
        }
        Ok(())
    }
}

fn dfs(p: &mut Partial<'_>, gens: &[usize], depth: usize, budget: &Budget, out: &mut Vec<Vec<usize>>) -> Result<()> {
    if depth == gens.len() {
        out.push(p.image.iter().map(|v| v.expect("closure covers the source")).collect());
        return Ok(());
    }
    for v in p.candidates(gens[depth]) {
        budget.tick()?;
        let mark = p.trail.len();
        if p.extend(gens, depth, v) {
            dfs(p, gens, depth + 1, budget, out)?;
        }
        p.rollback(mark);
    }
    Ok(())
}

/// Runs the search, splitting the first decision level across workers.
fn search(source: &FiniteMonoid, target: &FiniteMonoid, mode: Mode, config: &Config) -> Result<Vec<Vec<usize>>> {
    let Some(root) = Partial::new(source, target, mode) else {
        return Ok(Vec::new());
    };
    let gens = source.generating_set();
    let budget = Budget {
        limit: config.budget,
        spent: AtomicU64::new(0),
    };
    let mut found = if gens.is_empty() {
        let mut out = Vec::new();
        dfs(&mut root.clone(), gens, 0, &budget, &mut out)?;
        out
    } else {
        let branches = root.candidates(gens[0]);
        let per_branch = exec::try_map_collect(config.execution, branches, |v| {
            let mut p = root.clone();
            let mut out = Vec::new();
            budget.tick()?;
            if p.extend(gens, 0, v) {
                dfs(&mut p, gens, 1, &budget, &mut out)?;
            }
            Ok::<_, Error>(out)
        })?;
        per_branch.into_iter().flatten().collect()
    };
    found.sort_unstable();
    found.dedup();
    Ok(found)
}

/// All homomorphisms `M -> N`, sorted by image vector.
pub fn enumerate_homs(m: &Arc<FiniteMonoid>, n: &Arc<FiniteMonoid>, config: &Config) -> Result<Vec<MonoidHom>> {
    for size in [m.size(), n.size()] {
        if size > config.max_hom_size {
            return Err(Error::SizeCapExceeded {
                size: size as u128,
                cap: config.max_hom_size,
            });
        }
    }
    search(m, n, Mode::Hom, config)?
        .into_iter()
        .map(|image| MonoidHom::new(m, n, image))
        .collect()
}

/// All automorphisms of `M`, sorted by image vector. Each is checked to be
/// a bijective homomorphism whose inverse is again a homomorphism.
pub fn enumerate_automorphisms(m: &Arc<FiniteMonoid>, config: &Config) -> Result<Vec<MonoidHom>> {
    if m.size() > config.max_aut_size {
        return Err(Error::SizeCapExceeded {
            size: m.size() as u128,
            cap: config.max_aut_size,
        });
    }
    let images = search(m, m, Mode::Aut, config)?;
    exec::try_map_collect(config.execution, images, |image| {
        let h = MonoidHom::from_parts(m, m, image);
        if !h.is_bijective() {
            return Err(Error::SelfCheckFailed("automorphism candidate is not bijective".into()));
        }
        h.verify()?;
        h.inverse()?;
        Ok(h)
    })
}

/// How a multiplicative homomorphism between rings treats zero and the zero
/// divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroDivisorVerdict {
    pub is_trivial: bool,
    pub value_at_zero: usize,
    pub value_at_zero_is_one: bool,
    pub value_at_zero_is_zero_divisor: bool,
    pub image_has_zero_divisor: bool,
    pub maps_zero_to_zero: bool,
    pub maps_zerodivisors_into_zerodivisors: bool,
    pub target_is_d_ring: bool,
    pub source_is_d_ring: bool,
}

impl ZeroDivisorVerdict {
    /// Names of the equivalence chains that fail for this verdict. The
    /// D-ring chains are only checked when the target is a D-ring.
    ///
    /// The link to `h(Z_R) ⊆ Z_S` also needs the source to be a D-ring:
    /// `x ↦ [3 ∤ x]` from `(Z/6, ·)` to `(Z/2, ·)` is nontrivial with
    /// `h(0) = 0` but sends the zero divisor `2` to `1`.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.is_trivial != self.value_at_zero_is_one
            || self.is_trivial == self.image_has_zero_divisor
        {
            out.push("trivial <=> h(0) = 1 <=> image has no zero divisor");
        }
        if !self.is_trivial != self.value_at_zero_is_zero_divisor {
            out.push("nontrivial <=> h(0) is a zero divisor");
        }
        if self.target_is_d_ring {
            let chain = [!self.is_trivial, self.image_has_zero_divisor, self.maps_zero_to_zero];
            if chain.iter().any(|&b| b != chain[0]) {
                out.push("D-ring target: nontrivial <=> image has zero divisor <=> h(0) = 0");
            }
            if !self.is_trivial != self.maps_zerodivisors_into_zerodivisors {
                out.push("D-ring target: nontrivial <=> h(Z_R) in Z_S");
            }
        }
        out
    }
}

fn is_ring_monoid(m: &FiniteMonoid, ring: &Arc<FiniteRing>) -> bool {
    match m.ring() {
        Some(r) if Arc::ptr_eq(r, ring) => true,
        _ => {
            m.size() == ring.size()
                && m.identity() == ring.one()
                && (0..m.size()).all(|a| (0..m.size()).all(|b| m.op(a, b) == ring.mul(a, b)))
        }
    }
}

/// Classifies `h: (R,·) -> (S,·)` by its behaviour on zero and zero divisors.
pub fn classify_ring_hom(h: &MonoidHom, source_ring: &Arc<FiniteRing>, target_ring: &Arc<FiniteRing>) -> Result<ZeroDivisorVerdict> {
    if !is_ring_monoid(&h.source, source_ring) || !is_ring_monoid(&h.target, target_ring) {
        return Err(Error::MonoidRingMismatch);
    }
    let s = target_ring;
    let value_at_zero = h.apply(source_ring.zero());
    Ok(ZeroDivisorVerdict {
        is_trivial: h.is_trivial(),
        value_at_zero,
        value_at_zero_is_one: value_at_zero == s.one(),
        value_at_zero_is_zero_divisor: s.is_zero_divisor(value_at_zero),
        image_has_zero_divisor: h.image().iter().any(|&y| s.is_zero_divisor(y)),
        maps_zero_to_zero: value_at_zero == s.zero(),
        maps_zerodivisors_into_zerodivisors: source_ring
            .elements()
            .filter(|&z| source_ring.is_zero_divisor(z))
            .all(|z| s.is_zero_divisor(h.apply(z))),
        target_is_d_ring: s.ring_profile().is_d_ring,
        source_is_d_ring: source_ring.ring_profile().is_d_ring,
    })
}
