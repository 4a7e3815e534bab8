//! Report values for the command-line front end.
//!
//! Every report serializes with fixed field order and arrays in canonical
//! element or factor order, and renders to a plain-text form. Elements are
//! written by their labels; factor indices are 0-based.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::catalog::CatalogRow;
use crate::config::Config;
use crate::error::Result;
use crate::hom::{classify_ring_hom, enumerate_automorphisms, enumerate_homs, MonoidHom, ZeroDivisorVerdict};
use crate::matrix::{HomMatrix, PsiSampleSummary};
use crate::monoid::mul_monoid_of;
use crate::rigidity::{IndexAssignment, RigidityReport};
use crate::ring::FiniteRing;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileJson {
    pub is_local: bool,
    pub is_d_ring: bool,
    pub is_total_ring_of_fractions: bool,
    pub units: Vec<String>,
    pub zero_divisors: Vec<String>,
    pub nilradical: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementJson {
    pub index: usize,
    pub label: String,
    pub is_unit: bool,
    pub is_zero_divisor: bool,
    pub nilpotency_index: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub command: &'static str,
    pub spec: String,
    pub size: usize,
    pub profile: ProfileJson,
    pub elements: Vec<ElementJson>,
}

fn labels_of(ring: &FiniteRing, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| ring.label(x).to_string()).collect()
}

fn profile_json(ring: &FiniteRing) -> ProfileJson {
    let p = ring.ring_profile();
    ProfileJson {
        is_local: p.is_local,
        is_d_ring: p.is_d_ring,
        is_total_ring_of_fractions: p.is_total_ring_of_fractions,
        units: labels_of(ring, &p.units),
        zero_divisors: labels_of(ring, &p.zero_divisors),
        nilradical: labels_of(ring, &p.nilradical),
    }
}

pub fn classify_report(ring: &FiniteRing) -> ClassifyReport {
    ClassifyReport {
        command: "classify",
        spec: ring.spec().to_string(),
        size: ring.size(),
        profile: profile_json(ring),
        elements: ring
            .element_profiles()
            .iter()
            .map(|e| ElementJson {
                index: e.element,
                label: ring.label(e.element).to_string(),
                is_unit: e.is_unit,
                is_zero_divisor: e.is_zero_divisor,
                nilpotency_index: e.nilpotency_index,
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictJson {
    pub is_trivial: bool,
    pub value_at_zero: String,
    pub value_at_zero_is_one: bool,
    pub value_at_zero_is_zero_divisor: bool,
    pub image_has_zero_divisor: bool,
    pub maps_zero_to_zero: bool,
    pub maps_zero_divisors_into_zero_divisors: bool,
    pub target_is_d_ring: bool,
    pub source_is_d_ring: bool,
    pub violations: Vec<String>,
}

fn verdict_json(v: &ZeroDivisorVerdict, target: &FiniteRing) -> VerdictJson {
    VerdictJson {
        is_trivial: v.is_trivial,
        value_at_zero: target.label(v.value_at_zero).to_string(),
        value_at_zero_is_one: v.value_at_zero_is_one,
        value_at_zero_is_zero_divisor: v.value_at_zero_is_zero_divisor,
        image_has_zero_divisor: v.image_has_zero_divisor,
        maps_zero_to_zero: v.maps_zero_to_zero,
        maps_zero_divisors_into_zero_divisors: v.maps_zerodivisors_into_zerodivisors,
        target_is_d_ring: v.target_is_d_ring,
        source_is_d_ring: v.source_is_d_ring,
        violations: v.violations().into_iter().map(String::from).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomJson {
    /// `h(x)` for every source element `x` in index order.
    pub image: Vec<String>,
    pub verdict: VerdictJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomsReport {
    pub command: &'static str,
    pub source: String,
    pub target: String,
    pub source_elements: Vec<String>,
    pub count: usize,
    pub homs: Vec<HomJson>,
}

fn image_labels(h: &MonoidHom) -> Vec<String> {
    h.image().iter().map(|&y| h.target().label(y).to_string()).collect()
}

pub fn homs_report(source: &Arc<FiniteRing>, target: &Arc<FiniteRing>, config: &Config) -> Result<HomsReport> {
    let m = mul_monoid_of(source, config);
    let n = mul_monoid_of(target, config);
    let homs = enumerate_homs(&m, &n, config)?;
    let homs = homs
        .iter()
        .map(|h| {
            let v = classify_ring_hom(h, source, target)?;
            Ok(HomJson {
                image: image_labels(h),
                verdict: verdict_json(&v, target),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomsReport {
        command: "homs",
        source: source.spec().to_string(),
        target: target.spec().to_string(),
        source_elements: source.labels().to_vec(),
        count: homs.len(),
        homs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutReport {
    pub command: &'static str,
    pub spec: String,
    pub size: usize,
    pub elements: Vec<String>,
    pub order: usize,
    /// Image vectors in index order of the source.
    pub automorphisms: Vec<Vec<String>>,
}

pub fn aut_report(ring: &Arc<FiniteRing>, config: &Config) -> Result<AutReport> {
    let m = mul_monoid_of(ring, config);
    let auts = enumerate_automorphisms(&m, config)?;
    Ok(AutReport {
        command: "aut",
        spec: ring.spec().to_string(),
        size: ring.size(),
        elements: ring.labels().to_vec(),
        order: auts.len(),
        automorphisms: auts.iter().map(image_labels).collect(),
    })
}

/// A matrix entry: `"ee"` for the trivial morphism, `"id"` for the identity
/// of a factor, and the image vector otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryJson {
    pub name: Option<&'static str>,
    pub image: Vec<String>,
}

fn entry_json(h: &MonoidHom) -> EntryJson {
    let name = if h.is_trivial() {
        Some("ee")
    } else if h.is_identity() {
        Some("id")
    } else {
        None
    };
    EntryJson {
        name,
        image: image_labels(h),
    }
}

fn matrix_json(a: &HomMatrix) -> Vec<Vec<EntryJson>> {
    a.rows()
        .into_iter()
        .map(|row| row.into_iter().map(entry_json).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorJson {
    pub spec: String,
    pub size: usize,
    pub is_local: bool,
    pub is_d_ring: bool,
    pub is_total_ring_of_fractions: bool,
    pub aut_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomorphismJson {
    pub matrix: Vec<Vec<EntryJson>>,
    pub is_diagonal: bool,
    pub index_assignment: Option<IndexAssignment>,
    pub cross_composites_trivial: bool,
    pub diagonal_entries_nontrivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub factors: Vec<FactorJson>,
    pub product_size: usize,
    pub cardinalities: Vec<usize>,
    pub distinct_cardinalities: bool,
    pub hypotheses_hold: bool,
    pub theorem_applies: bool,
    pub aut_orders_per_factor: Vec<usize>,
    pub order_product: usize,
    pub product_aut_order: usize,
    pub methods_agree: bool,
    pub decomposition_holds: bool,
    pub nondiagonal_witnesses: Vec<Vec<Vec<EntryJson>>>,
    pub automorphisms: Vec<AutomorphismJson>,
    pub psi_sample: Option<PsiSampleSummary>,
}

pub fn verify_report(r: &RigidityReport, psi_sample: Option<PsiSampleSummary>) -> VerifyReport {
    VerifyReport {
        command: "verify",
        factors: r
            .rings
            .iter()
            .zip(&r.aut_orders_per_factor)
            .map(|(ring, &aut_order)| {
                let p = ring.ring_profile();
                FactorJson {
                    spec: ring.spec().to_string(),
                    size: ring.size(),
                    is_local: p.is_local,
                    is_d_ring: p.is_d_ring,
                    is_total_ring_of_fractions: p.is_total_ring_of_fractions,
                    aut_order,
                }
            })
            .collect(),
        product_size: r.context.product().size(),
        cardinalities: r.cardinalities.clone(),
        distinct_cardinalities: r.distinct_cardinalities,
        hypotheses_hold: r.hypotheses_hold,
        theorem_applies: r.theorem_applies(),
        aut_orders_per_factor: r.aut_orders_per_factor.clone(),
        order_product: r.order_product(),
        product_aut_order: r.product_aut_order,
        methods_agree: true,
        decomposition_holds: r.decomposition_holds,
        nondiagonal_witnesses: r.nondiagonal_witnesses.iter().map(matrix_json).collect(),
        automorphisms: r
            .per_automorphism
            .iter()
            .map(|a| AutomorphismJson {
                matrix: matrix_json(&a.matrix),
                is_diagonal: a.is_diagonal,
                index_assignment: a.indices.clone(),
                cross_composites_trivial: a.offdiagonal.cross_composites_trivial(),
                diagonal_entries_nontrivial: a.diagonal_entries_nontrivial,
            })
            .collect(),
        psi_sample,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogReport {
    pub command: &'static str,
    pub max_order: u64,
    pub rows: Vec<CatalogRow>,
    pub total: usize,
    pub agreeing: usize,
}

pub fn catalog_report(max_order: u64, rows: Vec<CatalogRow>) -> CatalogReport {
    CatalogReport {
        command: "catalog",
        max_order,
        total: rows.len(),
        agreeing: rows.iter().filter(|r| r.agree).count(),
        rows,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set(xs: &[String]) -> String {
    format!("{{{}}}", xs.join(", "))
}

pub fn render_classify(r: &ClassifyReport) -> String {
    let mut s = String::new();
    let p = &r.profile;
    writeln!(s, "ring: {}", r.spec).unwrap();
    writeln!(s, "size: {}", r.size).unwrap();
    writeln!(s, "local: {}", yes_no(p.is_local)).unwrap();
    writeln!(s, "D-ring: {}", yes_no(p.is_d_ring)).unwrap();
    writeln!(s, "total ring of fractions: {}", yes_no(p.is_total_ring_of_fractions)).unwrap();
    writeln!(s, "units: {}", set(&p.units)).unwrap();
    writeln!(s, "zero divisors: {}", set(&p.zero_divisors)).unwrap();
    writeln!(s, "nilradical: {}", set(&p.nilradical)).unwrap();
    writeln!(s).unwrap();
    writeln!(s, "{:<12} {:<5} {:<12} nilpotency", "element", "unit", "zero divisor").unwrap();
    for e in &r.elements {
        let nil = e.nilpotency_index.map_or("-".to_string(), |k| k.to_string());
        writeln!(s, "{:<12} {:<5} {:<12} {}", e.label, yes_no(e.is_unit), yes_no(e.is_zero_divisor), nil).unwrap();
    }
    s
}

pub fn render_homs(r: &HomsReport) -> String {
    let mut s = String::new();
    writeln!(s, "Hom({}, {}) under multiplication: {}", r.source, r.target, r.count).unwrap();
    writeln!(s, "source elements: [{}]", r.source_elements.join(", ")).unwrap();
    for h in &r.homs {
        let tag = if h.verdict.is_trivial { "  trivial" } else { "" };
        writeln!(s, "  [{}]  h(0) = {}{}", h.image.join(", "), h.verdict.value_at_zero, tag).unwrap();
        for v in &h.verdict.violations {
            writeln!(s, "    violation: {v}").unwrap();
        }
    }
    s
}

pub fn render_aut(r: &AutReport) -> String {
    let mut s = String::new();
    writeln!(s, "Aut({}) under multiplication: {}", r.spec, r.order).unwrap();
    writeln!(s, "elements: [{}]", r.elements.join(", ")).unwrap();
    for a in &r.automorphisms {
        writeln!(s, "  [{}]", a.join(", ")).unwrap();
    }
    s
}

fn render_matrix(s: &mut String, m: &[Vec<EntryJson>], indent: &str) {
    for row in m {
        let cells: Vec<String> = row
            .iter()
            .map(|e| match e.name {
                Some(n) => n.to_string(),
                None => format!("[{}]", e.image.join(",")),
            })
            .collect();
        writeln!(s, "{indent}| {} |", cells.join("  ")).unwrap();
    }
}

fn map_str(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().enumerate().map(|(r, k)| format!("{r}->{k}")).collect();
    parts.join(" ")
}

pub fn render_verify(r: &VerifyReport) -> String {
    let mut s = String::new();
    let names: Vec<&str> = r.factors.iter().map(|f| f.spec.as_str()).collect();
    writeln!(s, "product: {} ({} elements)", names.join(" x "), r.product_size).unwrap();
    writeln!(s, "factors:").unwrap();
    for (i, f) in r.factors.iter().enumerate() {
        writeln!(
            s,
            "  {i}: {}  size {}  local {}  D-ring {}  total ring of fractions {}  |Aut| {}",
            f.spec,
            f.size,
            yes_no(f.is_local),
            yes_no(f.is_d_ring),
            yes_no(f.is_total_ring_of_fractions),
            f.aut_order
        )
        .unwrap();
    }
    writeln!(s, "distinct cardinalities: {}", yes_no(r.distinct_cardinalities)).unwrap();
    writeln!(s, "factor hypotheses hold: {}", yes_no(r.hypotheses_hold)).unwrap();
    writeln!(s, "rigidity theorem applies: {}", yes_no(r.theorem_applies)).unwrap();
    let orders: Vec<String> = r.aut_orders_per_factor.iter().map(|o| o.to_string()).collect();
    writeln!(s, "|Aut(product)|: {}", r.product_aut_order).unwrap();
    writeln!(s, "product of factor orders: {} = {}", orders.join(" * "), r.order_product).unwrap();
    writeln!(s, "direct search and matrix assembly agree: {}", yes_no(r.methods_agree)).unwrap();
    writeln!(s, "decomposition holds: {}", yes_no(r.decomposition_holds)).unwrap();
    if let Some(p) = &r.psi_sample {
        writeln!(s, "sampled matrix checks: {} pairs, seed {}, {} violations", p.pairs, p.seed, p.violations).unwrap();
    }
    writeln!(s, "automorphisms:").unwrap();
    for (k, a) in r.automorphisms.iter().enumerate() {
        let kind = if a.is_diagonal { "diagonal" } else { "non-diagonal" };
        writeln!(s, "  #{k} {kind}").unwrap();
        render_matrix(&mut s, &a.matrix, "    ");
        if let Some(ix) = &a.index_assignment {
            writeln!(s, "    c: {}   d: {}", map_str(&ix.c), map_str(&ix.d)).unwrap();
        }
        writeln!(
            s,
            "    cross composites trivial: {}   diagonal entries nontrivial: {}",
            yes_no(a.cross_composites_trivial),
            yes_no(a.diagonal_entries_nontrivial)
        )
        .unwrap();
    }
    if !r.nondiagonal_witnesses.is_empty() {
        writeln!(s, "non-diagonal witnesses: {}", r.nondiagonal_witnesses.len()).unwrap();
    }
    s
}

pub fn render_catalog(r: &CatalogReport) -> String {
    let mut s = String::new();
    writeln!(s, "{:<18} {:>5}  {:<5} {:<6} {:<6} agree", "ring", "size", "local", "D-ring", "total").unwrap();
    for row in &r.rows {
        writeln!(
            s,
            "{:<18} {:>5}  {:<5} {:<6} {:<6} {}",
            row.spec,
            row.size,
            yes_no(row.is_local),
            yes_no(row.is_d_ring),
            yes_no(row.is_total_ring_of_fractions),
            yes_no(row.agree)
        )
        .unwrap();
    }
    writeln!(s, "agreement: {}/{}", r.agreeing, r.total).unwrap();
    s
}
