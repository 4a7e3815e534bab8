//! Checks whether every automorphism of `(R_1 x ... x R_n, ·)` acts factor
//! by factor.
//!
//! The automorphism group of the product is computed twice: by direct
//! backtracking on the product monoid, and by assembling matrices from the
//! factor hom-sets and keeping the `⊙`-invertible ones. The two results
//! must agree. The decomposition holds when the matrices of all
//! automorphisms are exactly the diagonal matrices with factor
//! automorphisms on the diagonal.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exec;
use crate::hom::{compose_unchecked, enumerate_automorphisms, MonoidHom};
use crate::matrix::{hom_table, inverse_pair_check, psi, psi_inv, HomMatrix, ProductContext};
use crate::monoid::{mul_monoid_of, subsets_commute, FiniteMonoid};
use crate::ring::{construct_ring, FiniteRing, RingSpec};

/// Zero-preserving index maps of an automorphism (0-based factor indices).
///
/// For each `r`, `c[r]` is the least `k` with `A_rk(B_kr(0))` a non-unit and
/// `d[r]` the least `k` with `B_rk(A_kr(0))` a non-unit, where `A` is the
/// matrix of the automorphism and `B` that of its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexAssignment {
    pub c: Vec<usize>,
    pub d: Vec<usize>,
}

fn check_ring_factors(ctx: &ProductContext, rings: &[Arc<FiniteRing>]) -> Result<()> {
    if rings.len() != ctx.n() {
        return Err(Error::MonoidRingMismatch);
    }
    for (i, ring) in rings.iter().enumerate() {
        let f = ctx.factor(i);
        let matches = match f.ring() {
            Some(r) => Arc::ptr_eq(r, ring),
            None => false,
        };
        if !matches {
            return Err(Error::MonoidRingMismatch);
        }
    }
    Ok(())
}

/// Steps a mixed-radix counter, last digit fastest. False after wrapping.
fn advance(choice: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for i in (0..choice.len()).rev() {
        choice[i] += 1;
        if choice[i] < radix(i) {
            return true;
        }
        choice[i] = 0;
    }
    false
}

fn is_injective(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&k| !std::mem::replace(&mut seen[k], true))
}

/// Finds `c` and `d` for the inverse pair `(a, b)` over rings that are
/// D-rings and total rings of fractions, and checks that both are injective.
pub fn locate_zero_indices(a: &HomMatrix, b: &HomMatrix, rings: &[Arc<FiniteRing>]) -> Result<IndexAssignment> {
    let ctx = a.context();
    check_ring_factors(ctx, rings)?;
    if let Some(factor) = rings.iter().position(|r| !r.satisfies_rigidity_hypotheses()) {
        return Err(Error::HypothesisViolated { factor });
    }
    if !inverse_pair_check(a, b)? {
        return Err(Error::NotAnInversePair);
    }
    let n = ctx.n();
    let zero = |i: usize| rings[i].zero();
    let pick = |p: &HomMatrix, q: &HomMatrix, r: usize| -> Result<usize> {
        let k = (0..n)
            .find(|&k| !rings[r].is_unit(p.entry(r, k).apply(q.entry(k, r).apply(zero(r)))))
            .ok_or(Error::NoIndexFound { row: r })?;
        if q.entry(k, r).apply(zero(r)) != zero(k) || p.entry(r, k).apply(zero(k)) != zero(r) {
            return Err(Error::NoIndexFound { row: r });
        }
        Ok(k)
    };
    let c = (0..n).map(|r| pick(a, b, r)).collect::<Result<Vec<_>>>()?;
    let d = (0..n).map(|r| pick(b, a, r)).collect::<Result<Vec<_>>>()?;
    if !is_injective(&c) || !is_injective(&d) {
        return Err(Error::SelfCheckFailed(format!("index maps not injective: c = {c:?}, d = {d:?}")));
    }
    Ok(IndexAssignment { c, d })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellFlags {
    pub row: usize,
    pub col: usize,
    /// `A_ij` is the trivial morphism.
    pub entry_trivial: bool,
    /// `A_ik ∘ B_kj` is trivial for every `k`.
    pub cross_composites_trivial: bool,
    /// `B_ik ∘ A_kj` is trivial for every `k`.
    pub inverse_cross_composites_trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffDiagonalReport {
    pub cells: Vec<CellFlags>,
    pub diagonal_automorphisms: Vec<bool>,
}

impl OffDiagonalReport {
    pub fn cross_composites_trivial(&self) -> bool {
        self.cells
            .iter()
            .all(|c| c.cross_composites_trivial && c.inverse_cross_composites_trivial)
    }

    pub fn entries_trivial(&self) -> bool {
        self.cells.iter().all(|c| c.entry_trivial)
    }
}

/// Per-cell flags for the off-diagonal part of an inverse pair.
pub fn offdiagonal_report(a: &HomMatrix, b: &HomMatrix) -> Result<OffDiagonalReport> {
    if !inverse_pair_check(a, b)? {
        return Err(Error::NotAnInversePair);
    }
    let n = a.n();
    let all_trivial = |p: &HomMatrix, q: &HomMatrix, i: usize, j: usize| {
        (0..n).all(|k| compose_unchecked(p.entry(i, k), q.entry(k, j)).is_trivial())
    };
    let cells = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| CellFlags {
            row: i,
            col: j,
            entry_trivial: a.entry(i, j).is_trivial(),
            cross_composites_trivial: all_trivial(a, b, i, j),
            inverse_cross_composites_trivial: all_trivial(b, a, i, j),
        })
        .collect();
    let diagonal_automorphisms = (0..n).map(|i| a.entry(i, i).is_automorphism()).collect();
    Ok(OffDiagonalReport {
        cells,
        diagonal_automorphisms,
    })
}

/// One automorphism of the product together with the facts checked about it.
#[derive(Debug, Clone)]
pub struct AutomorphismRecord {
    pub matrix: HomMatrix,
    pub inverse: HomMatrix,
    pub is_diagonal: bool,
    pub offdiagonal: OffDiagonalReport,
    /// Present when every factor is a D-ring which is a total ring of fractions.
    pub indices: Option<IndexAssignment>,
    /// `A_ii` and `B_ii` are nontrivial for every `i`.
    pub diagonal_entries_nontrivial: bool,
}

#[derive(Debug, Clone)]
pub struct RigidityReport {
    pub factor_specs: Vec<RingSpec>,
    pub rings: Vec<Arc<FiniteRing>>,
    pub context: Arc<ProductContext>,
    pub cardinalities: Vec<usize>,
    pub distinct_cardinalities: bool,
    /// Per factor: D-ring and total ring of fractions.
    pub factor_hypotheses: Vec<bool>,
    pub hypotheses_hold: bool,
    pub aut_orders_per_factor: Vec<usize>,
    pub product_aut_order: usize,
    pub decomposition_holds: bool,
    pub nondiagonal_witnesses: Vec<HomMatrix>,
    pub per_automorphism: Vec<AutomorphismRecord>,
}

impl RigidityReport {
    pub fn order_product(&self) -> usize {
        self.aut_orders_per_factor.iter().product()
    }

    /// Hypotheses of the rigidity theorem: local factors of pairwise
    /// distinct sizes.
    pub fn theorem_applies(&self) -> bool {
        self.hypotheses_hold && self.distinct_cardinalities
    }
}

/// Automorphisms of the product assembled column by column from the factor
/// hom-sets. A column is kept only if the partial map on the factors placed
/// so far stays injective; complete matrices are kept when `Ψ⁻¹` is
/// bijective and the matrix of the inverse is a two-sided `⊙`-inverse.
pub fn assemble_automorphisms(ctx: &Arc<ProductContext>, config: &Config) -> Result<Vec<HomMatrix>> {
    let n = ctx.n();
    let table = hom_table(ctx, config)?;
    let spent = AtomicU64::new(0);
    let tick = || -> Result<()> {
        if spent.fetch_add(1, Ordering::Relaxed) >= config.budget {
            return Err(Error::SearchBudgetExceeded { budget: config.budget });
        }
        Ok(())
    };

    // Column candidates: the column map m_j -> (A_ij(m_j))_i must be injective.
    let mut columns: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut out = Vec::new();
        let mut choice = vec![0usize; n];
        loop {
            tick()?;
            let size = ctx.factor(j).size();
            let keys: Vec<Vec<usize>> = (0..size)
                .map(|x| (0..n).map(|i| table[i][j][choice[i]].apply(x)).collect())
                .collect();
            let mut sorted = keys.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() == size {
                out.push(choice.clone());
            }
            if !advance(&mut choice, |i| table[i][j].len()) {
                break;
            }
        }
        columns.push(out);
    }

    let entry = |chosen: &[Vec<usize>], i: usize, j: usize| -> &MonoidHom { &table[i][j][chosen[j][i]] };

    // Partial injectivity on M_0 x ... x M_last with the other coordinates
    // held at the identity, plus row centrality among placed columns.
    let admissible = |chosen: &[Vec<usize>]| -> bool {
        let last = chosen.len() - 1;
        for i in 0..n {
            let fi = ctx.factor(i);
            if fi.is_commutative() {
                continue;
            }
            let new_image = entry(chosen, i, last).image_set();
            for k in 0..last {
                if !subsets_commute(fi, &entry(chosen, i, k).image_set(), &new_image) {
                    return false;
                }
            }
        }
        let sizes: Vec<usize> = (0..=last).map(|k| ctx.factor(k).size()).collect();
        let total: usize = sizes.iter().product();
        let mut seen = std::collections::HashSet::with_capacity(total);
        let mut coords = vec![0usize; last + 1];
        for mut idx in 0..total {
            for k in (0..=last).rev() {
                coords[k] = idx % sizes[k];
                idx /= sizes[k];
            }
            let value: Vec<usize> = (0..n)
                .map(|i| {
                    let fi = ctx.factor(i);
                    (0..=last).fold(fi.identity(), |acc, k| fi.op(acc, entry(chosen, i, k).apply(coords[k])))
                })
                .collect();
            if !seen.insert(value) {
                return false;
            }
        }
        true
    };

    fn rec(
        n: usize,
        columns: &[Vec<Vec<usize>>],
        chosen: &mut Vec<Vec<usize>>,
        admissible: &dyn Fn(&[Vec<usize>]) -> bool,
        tick: &dyn Fn() -> Result<()>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) -> Result<()> {
        if chosen.len() == n {
            out.push(chosen.clone());
            return Ok(());
        }
        for col in &columns[chosen.len()] {
            tick()?;
            chosen.push(col.clone());
            if admissible(chosen) {
                rec(n, columns, chosen, admissible, tick, out)?;
            }
            chosen.pop();
        }
        Ok(())
    }

    let first: Vec<Vec<usize>> = columns[0].clone();
    let grids = exec::try_map_collect(config.execution, first, |col| {
        let mut chosen = vec![col];
        let mut out = Vec::new();
        if admissible(&chosen) {
            rec(n, &columns, &mut chosen, &admissible, &tick, &mut out)?;
        }
        Ok::<_, Error>(out)
    })?;

    let mut result = Vec::new();
    for chosen in grids.into_iter().flatten() {
        let rows: Vec<Vec<MonoidHom>> = (0..n)
            .map(|i| (0..n).map(|j| entry(&chosen, i, j).clone()).collect())
            .collect();
        let a = crate::matrix::make_matrix(ctx, rows)?;
        let theta = psi_inv(&a);
        if !theta.is_bijective() {
            continue;
        }
        let b = psi(ctx, &theta.inverse()?)?;
        if inverse_pair_check(&a, &b)? {
            result.push(a);
        }
    }
    result.sort();
    Ok(result)
}

/// Diagonal matrices with factor automorphisms on the diagonal.
pub fn diagonal_set(ctx: &Arc<ProductContext>, factor_auts: &[Vec<MonoidHom>]) -> Result<Vec<HomMatrix>> {
    let n = ctx.n();
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    if factor_auts.iter().any(|a| a.is_empty()) {
        return Ok(out);
    }
    loop {
        let rows: Vec<Vec<MonoidHom>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            factor_auts[i][choice[i]].clone()
                        } else {
                            MonoidHom::trivial(ctx.factor(j), ctx.factor(i))
                        }
                    })
                    .collect()
            })
            .collect();
        out.push(crate::matrix::make_matrix(ctx, rows)?);
        if !advance(&mut choice, |i| factor_auts[i].len()) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

fn build_factors(specs: &[RingSpec], config: &Config) -> Result<(Vec<Arc<FiniteRing>>, Arc<ProductContext>)> {
    if specs.len() < 2 {
        return Err(Error::InvalidSpec("need at least two factors".into()));
    }
    if specs.len() > config.max_factors {
        return Err(Error::InvalidSpec(format!(
            "at most {} factors are supported",
            config.max_factors
        )));
    }
    let rings = specs
        .iter()
        .map(|s| construct_ring(s, config))
        .collect::<Result<Vec<_>>>()?;
    let monoids: Vec<Arc<FiniteMonoid>> = rings.iter().map(|r| mul_monoid_of(r, config)).collect();
    let ctx = ProductContext::new(monoids, config)?;
    Ok((rings, ctx))
}

/// Computes the automorphism group of the product two ways and decides
/// whether it is exactly the set of diagonal automorphisms.
pub fn verify_decomposition(specs: &[RingSpec], config: &Config) -> Result<RigidityReport> {
    let (rings, ctx) = build_factors(specs, config)?;
    let n = ctx.n();
    if ctx.product().size() > config.max_aut_size {
        return Err(Error::SizeCapExceeded {
            size: ctx.product().size() as u128,
            cap: config.max_aut_size,
        });
    }
    ctx.check_structure_maps()?;

    let cardinalities: Vec<usize> = rings.iter().map(|r| r.size()).collect();
    let distinct_cardinalities = {
        let mut s = cardinalities.clone();
        s.sort_unstable();
        s.windows(2).all(|w| w[0] != w[1])
    };
    let factor_hypotheses: Vec<bool> = rings.iter().map(|r| r.satisfies_rigidity_hypotheses()).collect();
    let hypotheses_hold = factor_hypotheses.iter().all(|&h| h);

    let factor_auts = exec::try_map_collect(config.execution, ctx.factors().to_vec(), |f| {
        enumerate_automorphisms(&f, config)
    })?;

    let (direct, assembled) = exec::join(
        config.execution,
        || -> Result<Vec<(MonoidHom, HomMatrix)>> {
            let auts = enumerate_automorphisms(ctx.product(), config)?;
            auts.into_iter()
                .map(|theta| {
                    let m = psi(&ctx, &theta)?;
                    Ok((theta, m))
                })
                .collect()
        },
        || assemble_automorphisms(&ctx, config),
    );
    let mut direct = direct?;
    let assembled = assembled?;
    direct.sort_by(|a, b| a.1.cmp(&b.1));
    let direct_matrices: Vec<HomMatrix> = direct.iter().map(|(_, m)| m.clone()).collect();
    if direct_matrices != assembled {
        return Err(Error::MethodDisagreement(format!(
            "direct search found {} automorphisms, matrix assembly found {}",
            direct_matrices.len(),
            assembled.len()
        )));
    }

    let diagonal = diagonal_set(&ctx, &factor_auts)?;
    if !diagonal.iter().all(|d| direct_matrices.binary_search(d).is_ok()) {
        return Err(Error::SelfCheckFailed(
            "a diagonal automorphism is missing from the automorphism group".into(),
        ));
    }
    let aut_orders_per_factor: Vec<usize> = factor_auts.iter().map(|a| a.len()).collect();
    let product_aut_order = direct_matrices.len();
    let decomposition_holds = direct_matrices == diagonal;
    let all_diagonal = direct_matrices.iter().all(|m| m.is_diagonal_automorphic());
    let orders_match = product_aut_order == aut_orders_per_factor.iter().product::<usize>();
    if decomposition_holds != all_diagonal || decomposition_holds != orders_match {
        return Err(Error::SelfCheckFailed(
            "decomposition, diagonality and order product disagree".into(),
        ));
    }

    let per_automorphism = exec::try_map_collect(config.execution, direct, |(theta, matrix)| {
        let inverse = psi(&ctx, &theta.inverse()?)?;
        let offdiagonal = offdiagonal_report(&matrix, &inverse)?;
        let indices = if hypotheses_hold {
            Some(locate_zero_indices(&matrix, &inverse, &rings)?)
        } else {
            None
        };
        let diagonal_entries_nontrivial =
            (0..n).all(|i| !matrix.entry(i, i).is_trivial() && !inverse.entry(i, i).is_trivial());
        Ok::<_, Error>(AutomorphismRecord {
            is_diagonal: matrix.is_diagonal(),
            matrix,
            inverse,
            offdiagonal,
            indices,
            diagonal_entries_nontrivial,
        })
    })?;

    let nondiagonal_witnesses: Vec<HomMatrix> = per_automorphism
        .iter()
        .filter(|r| !r.is_diagonal)
        .map(|r| r.matrix.clone())
        .collect();

    let report = RigidityReport {
        factor_specs: specs.to_vec(),
        rings,
        context: ctx,
        cardinalities,
        distinct_cardinalities,
        factor_hypotheses,
        hypotheses_hold,
        aut_orders_per_factor,
        product_aut_order,
        decomposition_holds,
        nondiagonal_witnesses,
        per_automorphism,
    };
    if report.theorem_applies() && !report.decomposition_holds {
        return Err(Error::SelfCheckFailed(
            "factors are local of distinct sizes but a non-diagonal automorphism exists".into(),
        ));
    }
    Ok(report)
}

/// Matrices of automorphisms with a nontrivial off-diagonal entry.
pub fn find_nondiagonal_automorphisms(specs: &[RingSpec], config: &Config) -> Result<Vec<HomMatrix>> {
    Ok(verify_decomposition(specs, config)?.nondiagonal_witnesses)
}
