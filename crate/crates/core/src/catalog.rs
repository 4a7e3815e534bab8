//! Built-in ring families used by the sweep and the property tests.
//!
//! The catalog holds `Z/n` for `2 <= n <= max_order` and, for each prime
//! `p <= 7` and `1 <= k <= 3` with `p^k <= max_order`, the truncated
//! polynomial ring `Z/p[x]/(x^k)`. `Z/p^k` is already among the `Z/n`.

use std::sync::Arc;

use serde::Serialize;

use crate::config::Config;
use crate::error::Result;
use crate::exec;
use crate::ring::{construct_ring, FiniteRing, RingSpec};

const TEMPLATE_PRIMES: [u64; 4] = [2, 3, 5, 7];
const TEMPLATE_MAX_EXPONENT: u32 = 3;

/// Which family a catalog entry comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Zmod,
    Truncated,
    Product,
}

pub fn catalog_specs(max_order: u64) -> Vec<(Family, RingSpec)> {
    let mut out: Vec<(Family, RingSpec)> = (2..=max_order)
        .map(|n| (Family::Zmod, RingSpec::Zmod(n)))
        .collect();
    for p in TEMPLATE_PRIMES {
        for k in 1..=TEMPLATE_MAX_EXPONENT {
            if p.checked_pow(k).is_some_and(|q| q <= max_order) {
                let mut coeffs = vec![0i64; k as usize + 1];
                coeffs[k as usize] = 1;
                let spec = RingSpec::poly_quotient(RingSpec::Zmod(p), &coeffs).expect("monic");
                out.push((Family::Truncated, spec));
            }
        }
    }
    out
}

/// Unordered pairs (with repetition) of catalog rings of size at most
/// `max_factor_size`, as two-factor products.
pub fn product_specs(max_factor_size: u64) -> Vec<(Family, RingSpec)> {
    let small: Vec<RingSpec> = catalog_specs(max_factor_size).into_iter().map(|(_, s)| s).collect();
    let mut out = Vec::new();
    for i in 0..small.len() {
        for j in i..small.len() {
            let spec = RingSpec::product(vec![small[i].clone(), small[j].clone()]).expect("two factors");
            out.push((Family::Product, spec));
        }
    }
    out
}

/// One row of the locality sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogRow {
    pub spec: String,
    pub family: Family,
    pub size: usize,
    pub is_local: bool,
    pub is_d_ring: bool,
    pub is_total_ring_of_fractions: bool,
    pub agree: bool,
}

impl CatalogRow {
    pub fn of(family: Family, ring: &FiniteRing) -> Self {
        let p = ring.ring_profile();
        CatalogRow {
            spec: ring.spec().to_string(),
            family,
            size: ring.size(),
            is_local: p.is_local,
            is_d_ring: p.is_d_ring,
            is_total_ring_of_fractions: p.is_total_ring_of_fractions,
            agree: p.is_local == p.is_d_ring,
        }
    }
}

pub fn construct_all(specs: Vec<(Family, RingSpec)>, config: &Config) -> Result<Vec<(Family, Arc<FiniteRing>)>> {
    exec::try_map_collect(config.execution, specs, |(f, s)| Ok((f, construct_ring(&s, config)?)))
}

/// Profiles every catalog ring up to `max_order`, in catalog order.
pub fn catalog(max_order: u64, config: &Config) -> Result<Vec<CatalogRow>> {
    let rings = construct_all(catalog_specs(max_order), config)?;
    Ok(rings.iter().map(|(f, r)| CatalogRow::of(*f, r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_contents() {
        let names: Vec<String> = catalog_specs(8).iter().map(|(_, s)| s.to_string()).collect();
        assert_eq!(
            names,
            [
                "Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/7", "Z/8", "Z/2[x]/(x)", "Z/2[x]/(x^2)",
                "Z/2[x]/(x^3)", "Z/3[x]/(x)", "Z/5[x]/(x)", "Z/7[x]/(x)"
            ]
        );
        assert_eq!(catalog_specs(1).len(), 0);
    }

    #[test]
    fn rows_agree() {
        let rows = catalog(12, &Config::default()).unwrap();
        assert!(rows.iter().all(|r| r.agree && r.is_total_ring_of_fractions));
        let z6 = rows.iter().find(|r| r.spec == "Z/6").unwrap();
        assert!(!z6.is_local && !z6.is_d_ring);
        let z9 = rows.iter().find(|r| r.spec == "Z/9").unwrap();
        assert!(z9.is_local && z9.is_d_ring);
    }

    #[test]
    fn products_are_never_local() {
        let specs = product_specs(4);
        assert_eq!(specs.len(), 6 * 7 / 2);
        for (f, r) in construct_all(specs, &Config::default()).unwrap() {
            let row = CatalogRow::of(f, &r);
            assert!(row.agree && !row.is_local);
        }
    }
}
