mod common;

use mulaut_core::catalog::catalog_specs;
use mulaut_core::rigidity::assemble_automorphisms;
use mulaut_core::{
    compose, construct_ring, find_nondiagonal_automorphisms, parse_spec, verify_decomposition, Config, IndexAssignment,
    RigidityReport, RingSpec,
};

fn specs(xs: &[&str]) -> Vec<RingSpec> {
    xs.iter().map(|s| parse_spec(s).unwrap()).collect()
}

fn local_catalog(max: u64) -> Vec<RingSpec> {
    let cfg = Config::default();
    catalog_specs(max)
        .into_iter()
        .map(|(_, s)| s)
        .filter(|s| construct_ring(s, &cfg).unwrap().ring_profile().is_local)
        .collect()
}

/// Lemma-level facts for every automorphism, recomputed from the matrices.
fn check_lemmas(r: &RigidityReport) {
    let n = r.context.n();
    for a in &r.per_automorphism {
        let (p, q) = (&a.matrix, &a.inverse);
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                for k in 0..n {
                    assert!(compose(p.entry(i, k), q.entry(k, j)).unwrap().is_trivial());
                    assert!(compose(q.entry(i, k), p.entry(k, j)).unwrap().is_trivial());
                }
            }
        }
        assert!(a.offdiagonal.cross_composites_trivial());
        if r.hypotheses_hold {
            let IndexAssignment { c, d } = a.indices.clone().expect("index maps exist");
            for r_ in 0..n {
                let zero = |i: usize| r.rings[i].zero();
                let (cr, dr) = (c[r_], d[r_]);
                assert_eq!(q.entry(cr, r_).apply(zero(r_)), zero(cr));
                assert_eq!(p.entry(r_, cr).apply(zero(cr)), zero(r_));
                assert_eq!(p.entry(dr, r_).apply(zero(r_)), zero(dr));
                assert_eq!(q.entry(r_, dr).apply(zero(dr)), zero(r_));
                assert!(!r.rings[r_].is_unit(p.entry(r_, cr).apply(q.entry(cr, r_).apply(zero(r_)))));
            }
            let mut cs = c.clone();
            cs.sort_unstable();
            cs.dedup();
            let mut ds = d.clone();
            ds.sort_unstable();
            ds.dedup();
            assert_eq!((cs.len(), ds.len()), (n, n), "c and d are injective");
        }
        if r.theorem_applies() {
            assert!(a.diagonal_entries_nontrivial);
            assert!(a.is_diagonal);
            assert!(a.offdiagonal.diagonal_automorphisms.iter().all(|&b| b));
        }
    }
}

#[test]
fn worked_examples() {
    let cfg = Config::default();
    let r = verify_decomposition(&specs(&["Z/2", "Z/4"]), &cfg).unwrap();
    assert!(r.decomposition_holds && r.product_aut_order == 1);

    let r = verify_decomposition(&specs(&["Z/2", "Z/4", "Z/8"]), &cfg).unwrap();
    assert!(r.decomposition_holds);
    assert_eq!(r.aut_orders_per_factor, [1, 1, 4]);
    assert_eq!(r.product_aut_order, 4);
    for a in &r.per_automorphism {
        let id = vec![0, 1, 2];
        assert_eq!(a.indices, Some(IndexAssignment { c: id.clone(), d: id }));
    }

    let r = verify_decomposition(&specs(&["Z/4", "Z/2[x]/(x^3)"]), &cfg).unwrap();
    assert!(r.decomposition_holds);
    assert_eq!(r.product_aut_order, r.order_product());

    let r = verify_decomposition(&specs(&["Z/4", "Z/4"]), &cfg).unwrap();
    assert!(!r.decomposition_holds);
    assert_eq!(r.product_aut_order, 2);
    assert_eq!(r.order_product(), 1);
    let w = &r.nondiagonal_witnesses[0];
    assert!(w.entry(0, 0).is_trivial() && w.entry(1, 1).is_trivial());
    assert!(w.entry(0, 1).is_identity() && w.entry(1, 0).is_identity());
    check_lemmas(&r);
}

#[test]
fn nondiagonal_search() {
    let cfg = Config::default();
    assert!(find_nondiagonal_automorphisms(&specs(&["Z/2", "Z/4"]), &cfg).unwrap().is_empty());
    assert_eq!(find_nondiagonal_automorphisms(&specs(&["Z/4", "Z/4"]), &cfg).unwrap().len(), 1);
}

#[test]
fn same_size_different_structure_probe() {
    // Z/4 and GF(4) have non-isomorphic multiplicative monoids (one has a
    // nonzero nilpotent), so no automorphism can exchange the factors.
    let cfg = Config::default();
    let r = verify_decomposition(&specs(&["Z/4", "Z/2[x]/(x^2+x+1)"]), &cfg).unwrap();
    check_lemmas(&r);
    assert_eq!((r.product_aut_order, r.decomposition_holds), (2, true));
}

#[test]
fn isomorphic_monoids_from_non_isomorphic_rings() {
    // (Z/4, ·) and (Z/2[x]/(x^2), ·) are isomorphic monoids, so the product
    // has an exchange automorphism although the rings differ.
    let cfg = Config::default();
    let r = verify_decomposition(&specs(&["Z/4", "Z/2[x]/(x^2)"]), &cfg).unwrap();
    assert!(!r.decomposition_holds);
    assert_eq!(r.product_aut_order, 2);
    check_lemmas(&r);
}

#[test]
fn distinct_sizes_always_decompose() {
    let cfg = Config::default();
    let locals = local_catalog(16);
    let mut checked = 0;
    for (i, a) in locals.iter().enumerate() {
        for b in &locals[i + 1..] {
            let fa = construct_ring(a, &cfg).unwrap();
            let fb = construct_ring(b, &cfg).unwrap();
            if fa.size() == fb.size() || fa.size() * fb.size() > 128 {
                continue;
            }
            let r = verify_decomposition(&[a.clone(), b.clone()], &cfg).unwrap();
            assert!(r.theorem_applies() && r.decomposition_holds, "{a} x {b}");
            assert_eq!(r.product_aut_order, r.order_product());
            check_lemmas(&r);
            checked += 1;
        }
    }
    assert!(checked >= 20, "{checked}");
}

#[test]
fn lemmas_hold_on_equal_size_products() {
    let cfg = Config::default();
    for pair in [
        ["Z/2", "Z/2"],
        ["Z/3", "Z/3"],
        ["Z/4", "Z/4"],
        ["Z/5", "Z/5"],
        ["Z/2[x]/(x^2)", "Z/2[x]/(x^2)"],
        ["Z/8", "Z/8"],
        ["Z/8", "Z/2[x]/(x^3)"],
        ["Z/9", "Z/3[x]/(x^2)"],
    ] {
        let r = verify_decomposition(&specs(&pair), &cfg).unwrap();
        check_lemmas(&r);
        assert!(r.product_aut_order >= r.order_product());
    }
    let r = verify_decomposition(&specs(&["Z/2", "Z/2", "Z/2"]), &cfg).unwrap();
    assert_eq!(r.product_aut_order, 6);
    check_lemmas(&r);
}

#[test]
fn non_local_factors_are_flagged_not_rejected() {
    let cfg = Config::default();
    let r = verify_decomposition(&specs(&["Z/2", "Z/6"]), &cfg).unwrap();
    assert!(!r.hypotheses_hold);
    assert!(r.per_automorphism.iter().all(|a| a.indices.is_none()));
    // (Z/6, ·) ≅ (Z/2, ·) x (Z/3, ·), so Z/2 x Z/6 has a factor exchange.
    assert!(!r.decomposition_holds);
}

#[test]
fn assembly_agrees_with_direct_search() {
    let cfg = Config::default();
    for xs in [&["Z/2", "Z/3", "Z/4"][..], &["Z/4", "Z/4"], &["Z/2", "Z/2", "Z/2"]] {
        let r = verify_decomposition(&specs(xs), &cfg).unwrap();
        let assembled = assemble_automorphisms(&r.context, &cfg).unwrap();
        let direct: Vec<_> = r.per_automorphism.iter().map(|a| a.matrix.clone()).collect();
        assert_eq!(assembled, direct);
    }
}
