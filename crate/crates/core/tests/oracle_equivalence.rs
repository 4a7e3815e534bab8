mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::oracle::*;
use mulaut_core::{enumerate_automorphisms, enumerate_homs, mul_monoid_of, product_monoid, Config, FiniteMonoid};

fn lib_homs(m: &Arc<FiniteMonoid>, n: &Arc<FiniteMonoid>) -> BTreeSet<Vec<usize>> {
    enumerate_homs(m, n, &Config::default())
        .unwrap()
        .into_iter()
        .map(|h| h.image().to_vec())
        .collect()
}

fn lib_auts(m: &Arc<FiniteMonoid>) -> BTreeSet<Vec<usize>> {
    enumerate_automorphisms(m, &Config::default())
        .unwrap()
        .into_iter()
        .map(|h| h.image().to_vec())
        .collect()
}

/// Monoids of order at most five: every monoid of order at most four up to
/// isomorphism, plus ring monoids and a few other monoids of order five.
fn small_monoids() -> Vec<Arc<FiniteMonoid>> {
    let mut out: Vec<Arc<FiniteMonoid>> = (1..=4).flat_map(all_monoids).map(|t| monoid_of_table(&t)).collect();
    for t in [cyclic(5), chain(5), left_zero_with_identity(4)] {
        out.push(monoid_of_table(&t));
    }
    out.push(ring_monoid("Z/5"));
    out.push(ring_monoid("Z/4"));
    out.push(ring_monoid("Z/2 x Z/2"));
    out
}

#[test]
fn monoid_counts_by_order() {
    // Known counts of monoids up to isomorphism: 1, 2, 7, 35.
    let counts: Vec<usize> = (1..=4).map(|n| all_monoids(n).len()).collect();
    assert_eq!(counts, [1, 2, 7, 35]);
}

#[test]
fn homs_match_all_maps_filter() {
    let ms = small_monoids();
    for m in &ms {
        for n in &ms {
            let expected = naive_homs(&Table::of(m), &Table::of(n));
            assert_eq!(lib_homs(m, n), expected, "{:?} -> {:?}", Table::of(m), Table::of(n));
        }
    }
}

#[test]
fn automorphisms_match_all_bijections_filter() {
    let mut ms: Vec<Arc<FiniteMonoid>> = SMALL_RINGS
        .iter()
        .map(|s| ring_monoid(s))
        .filter(|m| m.size() <= 8)
        .collect();
    ms.extend((1..=4).flat_map(all_monoids).map(|t| monoid_of_table(&t)));
    for t in [cyclic(6), cyclic(8), chain(7), left_zero_with_identity(5), left_zero_with_identity(7)] {
        ms.push(monoid_of_table(&t));
    }
    for m in &ms {
        let t = Table::of(m);
        assert_eq!(lib_auts(m), naive_auts(&t), "{t:?}");
    }
}

#[test]
fn derived_automorphism_orders() {
    // Confirmed by the all-bijections filter before being used anywhere else.
    let expect = [("Z/2", 1), ("Z/4", 1), ("Z/8", 4), ("Z/2[x]/(x^3)", 4), ("Z/2[x]/(x^2+x+1)", 2)];
    for (spec, order) in expect {
        let t = Table::of(&ring_monoid(spec));
        assert_eq!(naive_auts(&t).len(), order, "{spec}");
        assert_eq!(lib_auts(&ring_monoid(spec)).len(), order, "{spec}");
    }
}

#[test]
fn product_automorphisms_match_backtracking_oracle() {
    let cfg = Config::default();
    let cases: [(&[&str], usize); 5] = [
        (&["Z/4", "Z/4"], 2),
        (&["Z/2", "Z/4"], 1),
        (&["Z/2", "Z/2"], 2),
        (&["Z/3", "Z/3"], 2),
        (&["Z/4", "Z/2[x]/(x^2)"], 2),
    ];
    for (specs, order) in cases {
        let factors: Vec<_> = specs.iter().map(|s| mul_monoid_of(&ring(s), &cfg)).collect();
        let p = product_monoid(&factors, &cfg).unwrap();
        let oracle = backtrack_auts(&Table::of(&p));
        assert_eq!(oracle.len(), order, "{specs:?}");
        assert_eq!(lib_auts(&p), oracle, "{specs:?}");
    }
}

#[test]
fn backtracking_oracle_agrees_with_bijection_filter() {
    for spec in ["Z/8", "Z/2 x Z/4", "Z/2 x Z/2 x Z/2", "Z/7"] {
        let t = Table::of(&ring_monoid(spec));
        assert_eq!(backtrack_auts(&t), naive_auts(&t), "{spec}");
    }
}
