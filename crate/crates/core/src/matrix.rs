//! Endomorphisms of a finite direct product `M = M_1 x ... x M_n` as
//! `n x n` matrices of homomorphisms between the factors.
//!
//! Entry `(i, j)` of a matrix is a homomorphism `M_j -> M_i`. Matrices
//! multiply by `(A ⊙ B)_ij = ⋆_k A_ik ∘ B_kj`, where `⋆_k` is the pointwise
//! product in `M_i` taken in factor order `k = 1..n`. A matrix is valid when,
//! in every row, the images of distinct entries commute elementwise.

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exec;
use crate::hom::{compose_unchecked, enumerate_homs, MonoidHom};
use crate::monoid::{product_monoid, subsets_commute, FiniteMonoid};

/// A product monoid together with its factors, injections and projections.
pub struct ProductContext {
    factors: Vec<Arc<FiniteMonoid>>,
    product: Arc<FiniteMonoid>,
    injections: Vec<MonoidHom>,
    projections: Vec<MonoidHom>,
}

impl fmt::Debug for ProductContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<usize> = self.factors.iter().map(|m| m.size()).collect();
        f.debug_struct("ProductContext").field("factor_sizes", &sizes).finish()
    }
}

impl ProductContext {
    pub fn new(factors: Vec<Arc<FiniteMonoid>>, config: &Config) -> Result<Arc<Self>> {
        let product = product_monoid(&factors, config)?;
        Self::from_product(&product)
    }

    /// Context of a monoid built by [`product_monoid`].
    pub fn from_product(product: &Arc<FiniteMonoid>) -> Result<Arc<Self>> {
        let factors = product
            .factors()
            .ok_or_else(|| Error::InvalidSpec("monoid is not a direct product".into()))?
            .to_vec();
        let identities: Vec<usize> = factors.iter().map(|f| f.identity()).collect();
        let injections = factors
            .iter()
            .enumerate()
            .map(|(j, f)| {
                let image = (0..f.size())
                    .map(|x| {
                        let mut c = identities.clone();
                        c[j] = x;
                        product.index_of(&c)
                    })
                    .collect();
                MonoidHom::new(f, product, image)
            })
            .collect::<Result<Vec<_>>>()?;
        let projections = factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let image = (0..product.size()).map(|m| product.coords(m)[i]).collect();
                MonoidHom::new(product, f, image)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(ProductContext {
            factors,
            product: Arc::clone(product),
            injections,
            projections,
        }))
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Arc<FiniteMonoid>] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &Arc<FiniteMonoid> {
        &self.factors[i]
    }

    pub fn product(&self) -> &Arc<FiniteMonoid> {
        &self.product
    }

    pub fn injection(&self, j: usize) -> &MonoidHom {
        &self.injections[j]
    }

    pub fn projection(&self, i: usize) -> &MonoidHom {
        &self.projections[i]
    }

    /// Checks `π_i ∘ ι_j` (identity on the diagonal, trivial elsewhere) and
    /// that the pointwise product of all `ι_ℓ ∘ π_ℓ` is the identity of `M`.
    pub fn check_structure_maps(&self) -> Result<()> {
        for i in 0..self.n() {
            for j in 0..self.n() {
                let pi = compose_unchecked(&self.projections[i], &self.injections[j]);
                let ok = if i == j { pi.is_identity() } else { pi.is_trivial() };
                if !ok {
                    return Err(Error::SelfCheckFailed(format!("π_{i} ∘ ι_{j} has the wrong form")));
                }
            }
        }
        let m = &self.product;
        let parts: Vec<MonoidHom> = (0..self.n())
            .map(|l| compose_unchecked(&self.injections[l], &self.projections[l]))
            .collect();
        for x in 0..m.size() {
            let v = parts.iter().fold(m.identity(), |acc, h| m.op(acc, h.apply(x)));
            if v != x {
                return Err(Error::SelfCheckFailed(
                    "pointwise product of ι_ℓ ∘ π_ℓ is not the identity".into(),
                ));
            }
        }
        Ok(())
    }

    fn coords(&self, m: usize) -> Vec<usize> {
        self.product.coords(m)
    }
}

/// An `n x n` matrix of factor homomorphisms, validated against its context.
#[derive(Clone)]
pub struct HomMatrix {
    context: Arc<ProductContext>,
    entries: Vec<MonoidHom>,
}

impl fmt::Debug for HomMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<&[usize]>> = (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.entry(i, j).image()).collect())
            .collect();
        f.debug_tuple("HomMatrix").field(&rows).finish()
    }
}

impl PartialEq for HomMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for HomMatrix {}

impl PartialOrd for HomMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HomMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries.cmp(&other.entries)
    }
}

impl std::hash::Hash for HomMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

fn same_monoid(a: &Arc<FiniteMonoid>, b: &Arc<FiniteMonoid>) -> bool {
    Arc::ptr_eq(a, b) || a.same_as(b)
}

/// First pair of columns in `row` whose images fail to commute.
fn row_centrality_violation(factor: &FiniteMonoid, row: &[&MonoidHom]) -> Option<(usize, usize)> {
    if factor.is_commutative() {
        return None;
    }
    let images: Vec<Vec<usize>> = row.iter().map(|h| h.image_set()).collect();
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            if !subsets_commute(factor, &images[a], &images[b]) {
                return Some((a, b));
            }
        }
    }
    None
}

impl HomMatrix {
    fn validated(context: &Arc<ProductContext>, entries: Vec<MonoidHom>) -> Result<Self> {
        let n = context.n();
        for i in 0..n {
            let row: Vec<&MonoidHom> = entries[i * n..(i + 1) * n].iter().collect();
            if let Some((col_a, col_b)) = row_centrality_violation(context.factor(i), &row) {
                return Err(Error::CentralityViolation { row: i, col_a, col_b });
            }
        }
        Ok(HomMatrix {
            context: Arc::clone(context),
            entries,
        })
    }

    pub fn context(&self) -> &Arc<ProductContext> {
        &self.context
    }

    pub fn n(&self) -> usize {
        self.context.n()
    }

    pub fn entry(&self, i: usize, j: usize) -> &MonoidHom {
        &self.entries[i * self.n() + j]
    }

    pub fn rows(&self) -> Vec<Vec<&MonoidHom>> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Off-diagonal entries are all trivial.
    pub fn is_diagonal(&self) -> bool {
        (0..self.n()).all(|i| (0..self.n()).all(|j| i == j || self.entry(i, j).is_trivial()))
    }

    /// Diagonal with automorphisms on the diagonal.
    pub fn is_diagonal_automorphic(&self) -> bool {
        self.is_diagonal() && (0..self.n()).all(|i| self.entry(i, i).is_automorphism())
    }
}

/// Validates a grid where `entries[i][j]` maps factor `j` into factor `i`.
pub fn make_matrix(context: &Arc<ProductContext>, entries: Vec<Vec<MonoidHom>>) -> Result<HomMatrix> {
    let n = context.n();
    if entries.len() != n || entries.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidSpec(format!("expected a {n} x {n} grid")));
    }
    for (i, row) in entries.iter().enumerate() {
        for (j, h) in row.iter().enumerate() {
            if !same_monoid(h.source(), context.factor(j)) || !same_monoid(h.target(), context.factor(i)) {
                return Err(Error::EntrySignatureMismatch { row: i, col: j });
            }
        }
    }
    HomMatrix::validated(context, entries.into_iter().flatten().collect())
}

/// `I_n`: identities on the diagonal, trivial morphisms elsewhere.
pub fn identity_matrix(context: &Arc<ProductContext>) -> HomMatrix {
    let n = context.n();
    let entries = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            if i == j {
                MonoidHom::identity(context.factor(i))
            } else {
                MonoidHom::trivial(context.factor(j), context.factor(i))
            }
        })
        .collect();
    HomMatrix {
        context: Arc::clone(context),
        entries,
    }
}

fn odot_entries(a: &HomMatrix, b: &HomMatrix, order: &[usize]) -> Vec<MonoidHom> {
    let ctx = &a.context;
    let n = ctx.n();
    (0..n * n)
        .map(|cell| {
            let (i, j) = (cell / n, cell % n);
            let target = ctx.factor(i);
            let source = ctx.factor(j);
            let image = (0..source.size())
                .map(|x| {
                    order.iter().fold(target.identity(), |acc, &k| {
                        target.op(acc, a.entry(i, k).apply(b.entry(k, j).apply(x)))
                    })
                })
                .collect();
            MonoidHom::from_parts(source, target, image)
        })
        .collect()
}

fn check_same_context(a: &HomMatrix, b: &HomMatrix) -> Result<()> {
    if !Arc::ptr_eq(&a.context, &b.context) {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

/// `A ⊙ B`, re-validated for row centrality.
pub fn odot(a: &HomMatrix, b: &HomMatrix) -> Result<HomMatrix> {
    check_same_context(a, b)?;
    let order: Vec<usize> = (0..a.n()).collect();
    HomMatrix::validated(&a.context, odot_entries(a, b, &order))
}

/// `A ⊙ B` with the pointwise products evaluated in reverse factor order.
/// Agrees with [`odot`] whenever both matrices are valid.
pub fn odot_reversed(a: &HomMatrix, b: &HomMatrix) -> Result<HomMatrix> {
    check_same_context(a, b)?;
    let order: Vec<usize> = (0..a.n()).rev().collect();
    HomMatrix::validated(&a.context, odot_entries(a, b, &order))
}

/// `Ψ(θ)`: entry `(i, j)` is `π_i ∘ θ ∘ ι_j`.
pub fn psi(context: &Arc<ProductContext>, theta: &MonoidHom) -> Result<HomMatrix> {
    let m = context.product();
    if !same_monoid(theta.source(), m) || !same_monoid(theta.target(), m) || theta.verify().is_err() {
        return Err(Error::NotAnEndomorphism);
    }
    let n = context.n();
    let entries = (0..n * n)
        .map(|cell| {
            let (i, j) = (cell / n, cell % n);
            let inner = compose_unchecked(theta, context.injection(j));
            compose_unchecked(context.projection(i), &inner)
        })
        .collect();
    HomMatrix::validated(context, entries)
}

/// `Ψ⁻¹(A)`: `m ↦ (θ_1(m), ..., θ_n(m))` with `θ_i(m) = ⋆_k A_ik(m_k)`.
pub fn psi_inv(a: &HomMatrix) -> MonoidHom {
    let ctx = &a.context;
    let m = ctx.product();
    let n = ctx.n();
    let image = (0..m.size())
        .map(|x| {
            let coords = ctx.coords(x);
            let out: Vec<usize> = (0..n)
                .map(|i| {
                    let f = ctx.factor(i);
                    (0..n).fold(f.identity(), |acc, k| f.op(acc, a.entry(i, k).apply(coords[k])))
                })
                .collect();
            m.index_of(&out)
        })
        .collect();
    MonoidHom::new(m, m, image).expect("a valid matrix defines an endomorphism of the product")
}

/// True when `A ⊙ B` and `B ⊙ A` both have identities on the diagonal and
/// trivial morphisms off it.
pub fn inverse_pair_check(a: &HomMatrix, b: &HomMatrix) -> Result<bool> {
    check_same_context(a, b)?;
    let n = a.n();
    let is_identity_grid = |p: &HomMatrix| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                let e = p.entry(i, j);
                if i == j {
                    e.is_identity()
                } else {
                    e.is_trivial()
                }
            })
        })
    };
    Ok(is_identity_grid(&odot(a, b)?) && is_identity_grid(&odot(b, a)?))
}

/// For an inverse pair, checks that every cross term `A_ik(B_kj(m))` with
/// `i != j` is a unit of `M_i` equal to the inverse of the product of the
/// remaining terms, and the same with `A` and `B` exchanged.
pub fn unit_factor_check(a: &HomMatrix, b: &HomMatrix) -> Result<bool> {
    if !inverse_pair_check(a, b)? {
        return Err(Error::NotAnInversePair);
    }
    let ctx = &a.context;
    let n = ctx.n();
    for (p, q) in [(a, b), (b, a)] {
        for i in 0..n {
            let fi = ctx.factor(i);
            for j in (0..n).filter(|&j| j != i) {
                for x in 0..ctx.factor(j).size() {
                    let terms: Vec<usize> = (0..n).map(|l| p.entry(i, l).apply(q.entry(l, j).apply(x))).collect();
                    for k in 0..n {
                        if !fi.is_unit(terms[k]) {
                            return Ok(false);
                        }
                        let rest = (0..n)
                            .filter(|&l| l != k)
                            .fold(fi.identity(), |acc, l| fi.op(acc, terms[l]));
                        if fi.inverse(rest) != Some(terms[k]) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// The `⊙`-inverse of `A`, which exists exactly when `Ψ⁻¹(A)` is bijective.
pub fn matrix_inverse(a: &HomMatrix) -> Option<HomMatrix> {
    let theta = psi_inv(a);
    let inv = theta.inverse().ok()?;
    psi(&a.context, &inv).ok()
}

/// `Hom(M_j, M_i)` for every cell, indexed `[i][j]`.
pub fn hom_table(context: &Arc<ProductContext>, config: &Config) -> Result<Vec<Vec<Vec<MonoidHom>>>> {
    let n = context.n();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let lists = exec::try_map_collect(config.execution, cells, |(i, j)| {
        enumerate_homs(context.factor(j), context.factor(i), config)
    })?;
    let mut it = lists.into_iter();
    Ok((0..n).map(|_| (0..n).map(|_| it.next().unwrap()).collect()).collect())
}

/// Every valid matrix over `context`, sorted. Intended for small products.
pub fn enumerate_matrices(context: &Arc<ProductContext>, config: &Config) -> Result<Vec<HomMatrix>> {
    let n = context.n();
    let table = hom_table(context, config)?;
    let spent = AtomicU64::new(0);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n * n);

    fn rec(
        ctx: &Arc<ProductContext>,
        table: &[Vec<Vec<MonoidHom>>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<HomMatrix>,
        spent: &AtomicU64,
        budget: u64,
    ) -> Result<()> {
        let n = ctx.n();
        let cell = chosen.len();
        if cell == n * n {
            let entries = (0..n * n).map(|c| table[c / n][c % n][chosen[c]].clone()).collect();
            out.push(HomMatrix::validated(ctx, entries)?);
            return Ok(());
        }
        let (i, j) = (cell / n, cell % n);
        for h in 0..table[i][j].len() {
            if spent.fetch_add(1, AtomicOrdering::Relaxed) >= budget {
                return Err(Error::SearchBudgetExceeded { budget });
            }
            chosen.push(h);
            let row: Vec<&MonoidHom> = (0..=j).map(|c| &table[i][c][chosen[i * n + c]]).collect();
            if row_centrality_violation(ctx.factor(i), &row).is_none() {
                rec(ctx, table, chosen, out, spent, budget)?;
            }
            chosen.pop();
        }
        Ok(())
    }

    rec(context, &table, &mut chosen, &mut out, &spent, config.budget)?;
    out.sort();
    Ok(out)
}

/// Outcome of [`sample_psi_checks`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiSampleSummary {
    pub seed: u64,
    pub pairs: usize,
    pub violations: usize,
}

fn random_matrix(
    context: &Arc<ProductContext>,
    table: &[Vec<Vec<MonoidHom>>],
    rng: &mut ChaCha8Rng,
) -> Result<HomMatrix> {
    let n = context.n();
    for _ in 0..1000 {
        let entries = (0..n * n)
            .map(|c| {
                let list = &table[c / n][c % n];
                list[rng.gen_range(0..list.len())].clone()
            })
            .collect();
        match HomMatrix::validated(context, entries) {
            Ok(m) => return Ok(m),
            Err(Error::CentralityViolation { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SelfCheckFailed("no valid random matrix after 1000 draws".into()))
}

/// Draws `pairs` random valid matrices `(A, A')` with a seeded generator and
/// checks `Ψ(Ψ⁻¹(A)) = A`, `Ψ(Ψ⁻¹(A) ∘ Ψ⁻¹(A')) = A ⊙ A'` and that `⊙`
/// does not depend on the evaluation order of the row products.
pub fn sample_psi_checks(
    context: &Arc<ProductContext>,
    pairs: usize,
    seed: u64,
    config: &Config,
) -> Result<PsiSampleSummary> {
    let table = hom_table(context, config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = Vec::with_capacity(pairs);
    for _ in 0..pairs {
        draws.push((random_matrix(context, &table, &mut rng)?, random_matrix(context, &table, &mut rng)?));
    }
    let bad = exec::try_map_collect(config.execution, draws, |(a, b)| {
        let ta = psi_inv(&a);
        let tb = psi_inv(&b);
        let prod = odot(&a, &b)?;
        let ok = psi(context, &ta)? == a
            && psi(context, &compose_unchecked(&ta, &tb))? == prod
            && odot_reversed(&a, &b)? == prod;
        Ok::<_, Error>(!ok)
    })?;
    Ok(PsiSampleSummary {
        seed,
        pairs,
        violations: bad.into_iter().filter(|&b| b).count(),
    })
}
