//! Finite commutative rings built from `Z/n`, polynomial quotients and
//! direct products.
//!
//! Elements are flattened indices over a mixed-radix coordinate encoding:
//!
//! * `Z/n`: the residue itself.
//! * `B[x]/(f)` of degree `d`: `c_0 + c_1 |B| + ... + c_{d-1} |B|^{d-1}`, the
//!   coefficient tuple read lowest degree first.
//! * `R_1 x ... x R_k`: first factor most significant.
//!
//! Zero is always index 0.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

/// Abstract syntax of a ring description.
///
/// Polynomial moduli are stored lowest degree first, with each coefficient
/// `c` standing for `c * 1` in the base ring and reduced modulo the base
/// characteristic. Use the checked constructors to build values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zmod(u64),
    PolyQuotient { base: Box<RingSpec>, modulus: Vec<u64> },
    Product(Vec<RingSpec>),
}

impl RingSpec {
    pub fn zmod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpec(format!("Z/{n}: modulus must be at least 2")));
        }
        Ok(RingSpec::Zmod(n))
    }

    /// Builds `base[x]/(f)` from integer coefficients of `f`, lowest degree
    /// first. Coefficients are reduced into the base ring; the reduced
    /// polynomial must be monic of degree at least one.
    pub fn poly_quotient(base: RingSpec, coeffs: &[i64]) -> Result<Self> {
        let ch = base.characteristic();
        let mut modulus: Vec<u64> = coeffs
            .iter()
            .map(|&c| (c as i128).rem_euclid(ch as i128) as u64)
            .collect();
        while modulus.last() == Some(&0) {
            modulus.pop();
        }
        if modulus.len() < 2 {
            // A written term of positive degree that reduced away is a
            // leading coefficient that is not one.
            if coeffs.len() >= 2 {
                return Err(Error::NonMonicModulus);
            }
            return Err(Error::InvalidSpec("quotient modulus must have degree at least 1".into()));
        }
        if modulus.last() != Some(&1) {
            return Err(Error::NonMonicModulus);
        }
        Ok(RingSpec::PolyQuotient { base: Box::new(base), modulus })
    }

    pub fn product(factors: Vec<RingSpec>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::InvalidSpec("a product needs at least two factors".into()));
        }
        Ok(RingSpec::Product(factors))
    }

    /// Additive order of the identity.
    pub fn characteristic(&self) -> u64 {
        match self {
            RingSpec::Zmod(n) => *n,
            RingSpec::PolyQuotient { base, .. } => base.characteristic(),
            RingSpec::Product(fs) => fs.iter().map(|f| f.characteristic()).fold(1, lcm),
        }
    }

    /// Carrier size, or `None` on overflow.
    pub fn size(&self) -> Option<u128> {
        match self {
            RingSpec::Zmod(n) => Some(*n as u128),
            RingSpec::PolyQuotient { base, modulus } => {
                let b = base.size()?;
                let mut acc: u128 = 1;
                for _ in 1..modulus.len() {
                    acc = acc.checked_mul(b)?;
                }
                Some(acc)
            }
            RingSpec::Product(fs) => fs
                .iter()
                .try_fold(1u128, |acc, f| acc.checked_mul(f.size()?)),
        }
    }

    /// Re-checks the invariants the constructors enforce.
    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::Zmod(n) => RingSpec::zmod(*n).map(|_| ()),
            RingSpec::PolyQuotient { base, modulus } => {
                base.validate()?;
                let ch = base.characteristic();
                if modulus.iter().any(|&c| c >= ch) {
                    return Err(Error::InvalidSpec("modulus coefficients must be reduced".into()));
                }
                if modulus.len() < 2 {
                    return Err(Error::InvalidSpec(
                        "quotient modulus must have degree at least 1".into(),
                    ));
                }
                if modulus.last() != Some(&1) {
                    return Err(Error::NonMonicModulus);
                }
                Ok(())
            }
            RingSpec::Product(fs) => {
                if fs.len() < 2 {
                    return Err(Error::InvalidSpec("a product needs at least two factors".into()));
                }
                fs.iter().try_for_each(|f| f.validate())
            }
        }
    }

    pub fn check_size(&self, cap: usize) -> Result<usize> {
        match self.size() {
            Some(s) if s <= cap as u128 => Ok(s as usize),
            Some(s) => Err(Error::SizeCapExceeded { size: s, cap }),
            None => Err(Error::SizeCapExceeded { size: u128::MAX, cap }),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Canonical surface syntax, accepted back by [`crate::parse::parse_spec`].
impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(n) => write!(f, "Z/{n}"),
            RingSpec::PolyQuotient { base, modulus } => {
                match **base {
                    RingSpec::Product(_) => write!(f, "({base})")?,
                    _ => write!(f, "{base}")?,
                }
                write!(f, "[x]/(")?;
                let mut first = true;
                for (deg, &c) in modulus.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    match (c, deg) {
                        (_, 0) => write!(f, "{c}")?,
                        (1, 1) => write!(f, "x")?,
                        (1, _) => write!(f, "x^{deg}")?,
                        (_, 1) => write!(f, "{c}*x")?,
                        _ => write!(f, "{c}*x^{deg}")?,
                    }
                }
                write!(f, ")")
            }
            RingSpec::Product(fs) => {
                for (i, factor) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    match factor {
                        RingSpec::Product(_) => write!(f, "({factor})")?,
                        _ => write!(f, "{factor}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug)]
enum Kind {
    Zmod {
        n: usize,
    },
    Poly {
        base: Arc<FiniteRing>,
        /// Base-ring element indices, lowest degree first, leading one included.
        modulus: Vec<usize>,
        degree: usize,
    },
    Product {
        factors: Vec<Arc<FiniteRing>>,
        strides: Vec<usize>,
    },
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

/// Per-element classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ElementProfile {
    pub element: usize,
    pub is_unit: bool,
    pub is_zero_divisor: bool,
    /// Least `k >= 1` with `a^k = 0`.
    pub nilpotency_index: Option<u32>,
}

/// Global structure of a finite commutative ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingProfile {
    pub is_local: bool,
    pub is_d_ring: bool,
    pub is_total_ring_of_fractions: bool,
    pub nilradical: Vec<usize>,
    pub units: Vec<usize>,
    pub zero_divisors: Vec<usize>,
}

/// A finite commutative ring with immutable, precomputed arithmetic.
#[derive(Debug)]
pub struct FiniteRing {
    spec: RingSpec,
    size: usize,
    one: usize,
    kind: Kind,
    tables: Option<Tables>,
    labels: Vec<String>,
    elements: OnceLock<Vec<ElementProfile>>,
    profile: OnceLock<RingProfile>,
}

/// Builds the ring described by `spec` and verifies the ring axioms.
pub fn construct_ring(spec: &RingSpec, config: &Config) -> Result<Arc<FiniteRing>> {
    spec.validate()?;
    spec.check_size(config.max_size)?;
    let ring = build(spec, config)?;
    ring.verify_axioms(config.exhaustive_axiom_limit)?;
    Ok(ring)
}

fn build(spec: &RingSpec, config: &Config) -> Result<Arc<FiniteRing>> {
    let size = spec.check_size(config.max_size)?;
    let (kind, one) = match spec {
        RingSpec::Zmod(n) => (Kind::Zmod { n: *n as usize }, 1),
        RingSpec::PolyQuotient { base, modulus } => {
            let base = build(base, config)?;
            let modulus: Vec<usize> = modulus.iter().map(|&c| base.from_int(c)).collect();
            let one = base.one;
            (
                Kind::Poly {
                    degree: modulus.len() - 1,
                    base,
                    modulus,
                },
                one,
            )
        }
        RingSpec::Product(fs) => {
            let factors = fs
                .iter()
                .map(|f| build(f, config))
                .collect::<Result<Vec<_>>>()?;
            let strides = strides_for(factors.iter().map(|f| f.size));
            let one = factors
                .iter()
                .zip(&strides)
                .map(|(f, s)| f.one * s)
                .sum();
            (Kind::Product { factors, strides }, one)
        }
    };
    let mut ring = FiniteRing {
        spec: spec.clone(),
        size,
        one,
        kind,
        tables: None,
        labels: Vec::new(),
        elements: OnceLock::new(),
        profile: OnceLock::new(),
    };
    ring.labels = (0..size).map(|a| ring.structured_label(a)).collect();
    if size <= config.table_limit {
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                add.push(ring.structured_add(a, b) as u32);
                mul.push(ring.structured_mul(a, b) as u32);
            }
        }
        ring.tables = Some(Tables { add, mul });
    }
    Ok(Arc::new(ring))
}

/// Mixed-radix strides with the first coordinate most significant.
pub(crate) fn strides_for(radices: impl Iterator<Item = usize>) -> Vec<usize> {
    let radices: Vec<usize> = radices.collect();
    let mut strides = vec![1; radices.len()];
    for k in (0..radices.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * radices[k + 1];
    }
    strides
}

impl FiniteRing {
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some(t) => t.add[a * self.size + b] as usize,
            None => self.structured_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some(t) => t.mul[a * self.size + b] as usize,
            None => self.structured_mul(a, b),
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        match &self.kind {
            Kind::Zmod { n } => (n - a) % n,
            Kind::Poly { base, degree, .. } => {
                let coeffs: Vec<usize> = self.poly_coeffs(a, base, *degree);
                self.poly_index(coeffs.into_iter().map(|c| base.neg(c)), base.size)
            }
            Kind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| f.neg((a / s) % f.size) * s)
                .sum(),
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut base = a;
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The element `k * 1`.
    pub fn from_int(&self, k: u64) -> usize {
        let mut acc = 0;
        let mut term = self.one;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, term);
            }
            term = self.add(term, term);
            k >>= 1;
        }
        acc
    }

    fn poly_coeffs(&self, a: usize, base: &FiniteRing, degree: usize) -> Vec<usize> {
        let mut rest = a;
        (0..degree)
            .map(|_| {
                let c = rest % base.size;
                rest /= base.size;
                c
            })
            .collect()
    }

    fn poly_index(&self, coeffs: impl DoubleEndedIterator<Item = usize>, radix: usize) -> usize {
        coeffs.rev().fold(0, |acc, c| acc * radix + c)
    }

    fn structured_add(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            Kind::Zmod { n } => (a + b) % n,
            Kind::Poly { base, degree, .. } => {
                let ca = self.poly_coeffs(a, base, *degree);
                let cb = self.poly_coeffs(b, base, *degree);
                self.poly_index(ca.iter().zip(&cb).map(|(&x, &y)| base.add(x, y)), base.size)
            }
            Kind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| f.add((a / s) % f.size, (b / s) % f.size) * s)
                .sum(),
        }
    }

    fn structured_mul(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            Kind::Zmod { n } => ((a as u64 * b as u64) % *n as u64) as usize,
            Kind::Poly {
                base,
                modulus,
                degree,
            } => {
                let d = *degree;
                let ca = self.poly_coeffs(a, base, d);
                let cb = self.poly_coeffs(b, base, d);
                let mut prod = vec![0usize; 2 * d - 1];
                for (i, &x) in ca.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in cb.iter().enumerate() {
                        prod[i + j] = base.add(prod[i + j], base.mul(x, y));
                    }
                }
                // Reduce by the monic modulus from the top degree down.
                for k in (d..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    for i in 0..d {
                        let t = base.mul(c, modulus[i]);
                        prod[k - d + i] = base.sub(prod[k - d + i], t);
                    }
                    prod[k] = 0;
                }
                prod.truncate(d);
                self.poly_index(prod.into_iter(), base.size)
            }
            Kind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| f.mul((a / s) % f.size, (b / s) % f.size) * s)
                .sum(),
        }
    }

    fn structured_label(&self, a: usize) -> String {
        match &self.kind {
            Kind::Zmod { .. } => a.to_string(),
            Kind::Poly { base, degree, .. } => {
                let parts: Vec<&str> = self
                    .poly_coeffs(a, base, *degree)
                    .into_iter()
                    .map(|c| base.label(c))
                    .collect();
                format!("({})", parts.join(","))
            }
            Kind::Product { factors, strides } => {
                let parts: Vec<&str> = factors
                    .iter()
                    .zip(strides)
                    .map(|(f, &s)| f.label((a / s) % f.size))
                    .collect();
                format!("({})", parts.join(","))
            }
        }
    }

    fn verify_axioms(&self, exhaustive_limit: usize) -> Result<()> {
        let n = self.size;
        if self.one == 0 {
            return Err(Error::AxiomViolated("zero equals one".into()));
        }
        for a in 0..n {
            if self.add(a, 0) != a {
                return Err(Error::AxiomViolated(format!("{} + 0 != {}", self.label(a), self.label(a))));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(Error::AxiomViolated(format!("{} has no additive inverse", self.label(a))));
            }
            if self.mul(a, self.one) != a {
                return Err(Error::AxiomViolated(format!("{} * 1 != {}", self.label(a), self.label(a))));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::AxiomViolated("addition is not commutative".into()));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::AxiomViolated("multiplication is not commutative".into()));
                }
            }
        }
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Err(Error::AxiomViolated("addition is not associative".into()));
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::AxiomViolated("multiplication is not associative".into()));
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Err(Error::AxiomViolated("distributivity fails".into()));
            }
            Ok(())
        };
        if n <= exhaustive_limit {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..200_000 {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    fn compute_profile(&self, a: usize) -> ElementProfile {
        let is_unit = (0..self.size).any(|x| self.mul(a, x) == self.one);
        let is_zero_divisor = (1..self.size).any(|t| self.mul(a, t) == 0);
        let nilpotency_index = if is_unit {
            None
        } else {
            let mut p = a;
            let mut found = None;
            for k in 1..=self.size as u32 {
                if p == 0 {
                    found = Some(k);
                    break;
                }
                p = self.mul(p, a);
            }
            found
        };
        ElementProfile {
            element: a,
            is_unit,
            is_zero_divisor,
            nilpotency_index,
        }
    }

    /// Classification of every element, computed once.
    pub fn element_profiles(&self) -> &[ElementProfile] {
        self.elements.get_or_init(|| {
            exec::map_collect(Execution::default(), (0..self.size).collect(), |a| {
                self.compute_profile(a)
            })
        })
    }

    pub fn classify_element(&self, a: usize) -> Result<ElementProfile> {
        if a >= self.size {
            return Err(Error::IndexOutOfRange {
                index: a,
                size: self.size,
            });
        }
        Ok(self.element_profiles()[a])
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.element_profiles()[a].is_unit
    }

    pub fn is_zero_divisor(&self, a: usize) -> bool {
        self.element_profiles()[a].is_zero_divisor
    }

    pub fn ring_profile(&self) -> &RingProfile {
        self.profile.get_or_init(|| {
            let profiles = self.element_profiles();
            let pick = |f: fn(&ElementProfile) -> bool| -> Vec<usize> {
                profiles.iter().filter(|p| f(p)).map(|p| p.element).collect()
            };
            let units = pick(|p| p.is_unit);
            let zero_divisors = pick(|p| p.is_zero_divisor);
            let nilradical = pick(|p| p.nilpotency_index.is_some());
            let non_units = pick(|p| !p.is_unit);
            let is_local = non_units
                .iter()
                .all(|&a| non_units.iter().all(|&b| !profiles[self.add(a, b)].is_unit));
            let is_d_ring = profiles
                .iter()
                .all(|p| !p.is_zero_divisor || p.nilpotency_index.is_some());
            let is_total_ring_of_fractions = profiles.iter().all(|p| p.is_zero_divisor || p.is_unit);
            RingProfile {
                is_local,
                is_d_ring,
                is_total_ring_of_fractions,
                nilradical,
                units,
                zero_divisors,
            }
        })
    }

    pub fn nilradical(&self) -> &[usize] {
        &self.ring_profile().nilradical
    }

    /// Finite local rings are exactly the D-rings which are total rings of fractions.
    pub fn satisfies_rigidity_hypotheses(&self) -> bool {
        let p = self.ring_profile();
        p.is_d_ring && p.is_total_ring_of_fractions
    }
}
