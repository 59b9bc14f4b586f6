//! Constant-dimension subspace codes: lifted rank-metric codes, spreads,
//! cyclic orbit codes of Sidon spaces, and the block-enlarged family built
//! on top of the lifted Gabidulin code.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linalg::{enumerate_subspaces, field_elements_as_vectors, FqMatrix, Subspace};
use crate::metrics::{min_over_pairs, subset_distance, MetricReport, SearchLimit, VectorCode, Word};
use crate::provenance::Provenance;
use crate::rank_metric::{self, gabidulin_code, RankCode};

/// Guard on `|V|` for exhaustive Sidon checks.
pub const SIDON_LIMIT: u128 = 1 << 16;
/// Guard on the ambient space size for spreads and orbits.
pub const AMBIENT_LIMIT: u128 = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceCode {
    q: u32,
    ambient: usize,
    members: Vec<Subspace>,
    constant_dim: Option<usize>,
    declared_distance: usize,
    pub provenance: Option<Provenance>,
}

impl SubspaceCode {
    pub fn new(q: u32, ambient: usize, members: Vec<Subspace>, declared_distance: usize) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, m) in members.iter().enumerate() {
            if m.q() != q || m.ambient() != ambient {
                return Err(Error::AmbientMismatch(ambient, m.ambient()));
            }
            if !seen.insert(m) {
                return Err(Error::DuplicateCodeword(i));
            }
        }
        let constant_dim = match members.first() {
            Some(f) if members.iter().all(|m| m.dim() == f.dim()) => Some(f.dim()),
            _ => None,
        };
        Ok(SubspaceCode { q, ambient, members, constant_dim, declared_distance, provenance: None })
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn constant_dim(&self) -> Option<usize> {
        self.constant_dim
    }

    pub fn declared_distance(&self) -> usize {
        self.declared_distance
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, s: &Subspace) -> Option<usize> {
        self.members.iter().position(|m| m == s)
    }
}

/// Exhaustive minimum of `dim U + dim V - 2 dim(U ∩ V)`.
pub fn subspace_code_min_distance(c: &SubspaceCode, limit: SearchLimit) -> Result<MetricReport> {
    let m = c.members();
    min_over_pairs(m.len(), limit, "subspace", |i, j| m[i].distance(&m[j]).expect("shared ambient"))
}

/// Checks the declared distance against an exhaustive sweep.
pub fn verify_declared(c: &SubspaceCode, limit: SearchLimit) -> Result<MetricReport> {
    let report = subspace_code_min_distance(c, limit)?;
    if report.minimum < c.declared_distance() {
        return Err(Error::PropertyViolation(format!(
            "declared distance {} but pair {:?} is at distance {}",
            c.declared_distance(),
            report.witness,
            report.minimum
        )));
    }
    Ok(report)
}

/// Row spaces of `(I, A)` for every member `A`.
pub fn lift_rank_code(rc: &RankCode) -> Result<SubspaceCode> {
    let (rows, cols) = (rc.rows(), rc.cols());
    let q = rc.field().q();
    let id = FqMatrix::identity(q, rows);
    let members = rc
        .matrices()
        .iter()
        .map(|a| Subspace::from_matrix_rows(&id.hstack(a)))
        .collect::<Vec<_>>();
    let mut p = Provenance::new("lifted-mrd").with("q", q).with("rows", rows).with("cols", cols);
    if let Some(t) = rc.t() {
        p = p.with("t", t);
    }
    Ok(SubspaceCode::new(q, rows + cols, members, 2 * rc.declared_distance())?.with_provenance(p))
}

fn ambient_guard(q: u32, n: usize, what: &'static str) -> Result<()> {
    let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > AMBIENT_LIMIT {
        return Err(Error::EnumerationTooLarge { what, size, limit: AMBIENT_LIMIT });
    }
    Ok(())
}

/// The 1-dimensional `F_{q^{k+1}}`-subspaces of `F_{q^{n+1}}`, as
/// `(k+1)`-dimensional subspaces of `F_q^{n+1}`.
pub fn spread(q: u32, k_plus_1: usize, n_plus_1: usize) -> Result<SubspaceCode> {
    if k_plus_1 == 0 || !n_plus_1.is_multiple_of(k_plus_1) {
        return Err(Error::DivisibilityViolation { k: k_plus_1, n: n_plus_1 });
    }
    ambient_guard(q, n_plus_1, "spread")?;
    let ctx = FieldCtx::new(q, n_plus_1, None)?;
    let sub = ctx.subfield_elements(k_plus_1)?;
    let mut covered = HashSet::new();
    let mut members = Vec::new();
    for x in ctx.nonzero_elements() {
        if covered.contains(&x) {
            continue;
        }
        let coset: Vec<FieldElement> = sub.iter().map(|s| ctx.mul(&x, s)).collect();
        members.push(Subspace::span(q, n_plus_1, &field_elements_as_vectors(&ctx, &coset))?);
        covered.extend(coset);
    }
    let p = Provenance::new("spread").with("q", q).with("k", k_plus_1).with("n", n_plus_1);
    let d = if members.len() > 1 { 2 * k_plus_1 } else { 0 };
    Ok(SubspaceCode::new(q, n_plus_1, members, d)?.with_provenance(p))
}

/// Canonical representative of the line through a nonzero `v`: the multiple
/// whose leading nonzero coordinate is 1.
fn line_key(ctx: &FieldCtx, v: &FieldElement) -> FieldElement {
    let lead = *v.coeffs().iter().find(|&&c| c != 0).expect("nonzero");
    ctx.scale(crate::field::fp::inv(lead, ctx.q()), v)
}

fn sidon_guard(v: &Subspace) -> Result<()> {
    let size = (v.q() as u128).checked_pow(v.dim() as u32).unwrap_or(u128::MAX);
    if size > SIDON_LIMIT {
        return Err(Error::EnumerationTooLarge { what: "Sidon check", size, limit: SIDON_LIMIT });
    }
    Ok(())
}

/// Whether `ab = cd` for nonzero `a, b, c, d` in `V` forces
/// `{aF_q, bF_q} = {cF_q, dF_q}`.
///
/// Products are grouped: `V` is Sidon iff every product value is reached by
/// a single unordered pair of lines.
pub fn sidon_check(ctx: &FieldCtx, v: &Subspace) -> Result<bool> {
    if v.ambient() != ctx.n() || v.q() != ctx.q() {
        return Err(Error::AmbientMismatch(ctx.n(), v.ambient()));
    }
    sidon_guard(v)?;
    let elems: Vec<FieldElement> = v
        .vectors()?
        .into_iter()
        .filter(|x| x.iter().any(|&c| c != 0))
        .map(|x| ctx.element(x).expect("vector of the right length"))
        .collect();
    let lines: Vec<FieldElement> = elems.iter().map(|e| line_key(ctx, e)).collect();
    let mut by_product: HashMap<FieldElement, (FieldElement, FieldElement)> = HashMap::new();
    for i in 0..elems.len() {
        for j in i..elems.len() {
            let p = ctx.mul(&elems[i], &elems[j]);
            let key = if lines[i] <= lines[j] {
                (lines[i].clone(), lines[j].clone())
            } else {
                (lines[j].clone(), lines[i].clone())
            };
            match by_product.get(&p) {
                Some(k) if *k != key => return Ok(false),
                Some(_) => {}
                None => {
                    by_product.insert(p, key);
                }
            }
        }
    }
    Ok(true)
}

/// First `k`-dimensional Sidon space of `F_{q^n}` in enumeration order.
pub fn sidon_search(ctx: &FieldCtx, k: usize) -> Result<Subspace> {
    if 2 * k >= ctx.n() {
        return Err(Error::ParameterOutOfRange(format!("Sidon spaces need 2k < n, got k = {k}, n = {}", ctx.n())));
    }
    for v in enumerate_subspaces(ctx.q(), ctx.n(), k)? {
        if sidon_check(ctx, &v)? {
            return Ok(v);
        }
    }
    Err(Error::NotFound(format!("no {k}-dimensional Sidon space in F_{}^{}", ctx.q(), ctx.n())))
}

/// `x V` as a subspace: row `i` of the multiplication matrix is `x * alpha^i`.
pub fn scale_subspace(ctx: &FieldCtx, v: &Subspace, x: &FieldElement) -> Subspace {
    v.map_rows(&ctx.multiplication_matrix(x))
}

/// `{xV : x != 0}`, in order of first appearance.
pub fn orbit_cyclic_code(ctx: &FieldCtx, v: &Subspace) -> Result<SubspaceCode> {
    if v.ambient() != ctx.n() || v.q() != ctx.q() {
        return Err(Error::AmbientMismatch(ctx.n(), v.ambient()));
    }
    ambient_guard(ctx.q(), ctx.n(), "orbit code")?;
    let mut seen = HashSet::new();
    let mut members = Vec::new();
    for x in ctx.nonzero_elements() {
        let image = scale_subspace(ctx, v, &x);
        if seen.insert(image.clone()) {
            members.push(image);
        }
    }
    let k = v.dim();
    let declared = if members.len() < 2 {
        0
    } else if k == 1 {
        2
    } else if sidon_guard(v).is_ok() && sidon_check(ctx, v)? {
        2 * k - 2
    } else {
        subspace_code_min_distance(
            &SubspaceCode::new(ctx.q(), ctx.n(), members.clone(), 0)?,
            SearchLimit::default(),
        )?
        .minimum
    };
    let p = Provenance::new("sidon-orbit")
        .with("q", ctx.q())
        .with("n", ctx.n())
        .with("k", k)
        .with("generator", serde_json::to_value(v.basis().row_vecs()).expect("plain data"));
    Ok(SubspaceCode::new(ctx.q(), ctx.n(), members, declared)?.with_provenance(p))
}

/// Whether multiplying every member by a primitive element lands back in the code.
pub fn is_cyclic(ctx: &FieldCtx, c: &SubspaceCode) -> bool {
    let g = ctx.primitive_element();
    let set: HashSet<&Subspace> = c.members().iter().collect();
    c.members().iter().all(|m| set.contains(&scale_subspace(ctx, m, &g)))
}

/// The word code obtained from row spaces of `(G, GA)` with
/// `G = [[I, H1], [0, H2]]`, each row read as a symbol of `F_{q^{2n}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockEnlargedFamily {
    pub q: u32,
    pub n: usize,
    pub t: usize,
    /// Elements of `F_{q^{n/2}}` whose multiplication matrices were kept as `H2`.
    pub h2_elements: Vec<FieldElement>,
    pub h1_count: usize,
    pub a_count: usize,
    /// Codewords indexed as `(g * a_count + a)` with `g` running over the `G` matrices.
    pub words: VectorCode,
    /// Distinct row spaces among the codewords.
    pub spans: SubspaceCode,
    pub formula: BigRational,
    pub subset_report: Option<MetricReport>,
    pub subspace_report: Option<MetricReport>,
    /// Minimum subset distance over pairs that share `A`.
    pub same_a_subset_min: Option<usize>,
    /// Lower bound `2 * rank distance` for pairs with different `A`.
    pub cross_a_bound: usize,
}

/// Greedy choice of nonzero `x` in `F_{q^m}` whose multiplication matrices
/// pairwise share no row.
pub fn greedy_row_disjoint(ctx: &FieldCtx) -> Vec<FieldElement> {
    let mut used: HashSet<Vec<u32>> = HashSet::new();
    let mut chosen = Vec::new();
    for x in ctx.nonzero_elements() {
        let rows = ctx.multiplication_matrix(&x).row_vecs();
        if rows.iter().all(|r| !used.contains(r)) {
            used.extend(rows);
            chosen.push(x);
        }
    }
    chosen
}

/// One level of the block construction for even `n` and `n/2 <= t < n`.
pub fn block_enlarged_family(q: u32, n: usize, t: usize, limit: SearchLimit) -> Result<BlockEnlargedFamily> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::ParameterOutOfRange(format!("n = {n} must be even and positive")));
    }
    let h = n / 2;
    if t < h || t >= n {
        return Err(Error::ParameterOutOfRange(format!("t = {t} must satisfy {h} <= t < {n}")));
    }
    let small = FieldCtx::new(q, h, None)?;
    let base = FieldCtx::new(q, n, None)?;
    let big = FieldCtx::new(q, 2 * n, None)?;
    let h2_elements = greedy_row_disjoint(&small);
    if h2_elements.is_empty() {
        return Err(Error::InfeasibleParameters("no admissible H2".into()));
    }
    let h1s = gabidulin_code(&small, t - h)?;
    let gab = gabidulin_code(&base, t)?;
    let mut gs = Vec::new();
    for x in &h2_elements {
        let h2 = small.multiplication_matrix(x);
        for h1 in h1s.matrices() {
            let top = FqMatrix::identity(q, h).hstack(h1);
            let bottom = FqMatrix::zeros(q, h, h).hstack(&h2);
            gs.push(top.vstack(&bottom));
        }
    }
    let size = gs.len() as u128 * gab.len() as u128;
    if size > crate::metrics::LINEAR_SPAN_LIMIT {
        return Err(Error::EnumerationTooLarge { what: "block family", size, limit: crate::metrics::LINEAR_SPAN_LIMIT });
    }
    let mut words = Vec::with_capacity(size as usize);
    let mut span_index: BTreeMap<Subspace, usize> = BTreeMap::new();
    let mut spans = Vec::new();
    for g in &gs {
        for a in gab.matrices() {
            let m = g.hstack(&g.mul(a));
            let symbols = m.row_vecs().into_iter().map(|r| big.element(r).expect("2n coordinates")).collect();
            words.push(Word::new(symbols));
            let s = Subspace::from_matrix_rows(&m);
            if !span_index.contains_key(&s) {
                span_index.insert(s.clone(), spans.len());
                spans.push(s);
            }
        }
    }
    let provenance = Provenance::new("block-enlarged").with("q", q).with("n", n).with("t", t);
    let words = VectorCode::new(big, n, words)?.with_provenance(provenance.clone());
    let spans = SubspaceCode::new(q, 2 * n, spans, 2 * (n - t))?.with_provenance(provenance);

    let w = words.codewords();
    let subset_report = if limit.check(w.len()).is_ok() {
        Some(min_over_pairs(w.len(), limit, "subset", |i, j| subset_distance(&w[i], &w[j]))?)
    } else {
        None
    };
    let subspace_report = if limit.check(w.len()).is_ok() {
        let ctx = words.ctx();
        Some(min_over_pairs(w.len(), limit, "subspace", |i, j| {
            crate::metrics::subspace_distance(ctx, &w[i], &w[j])
        })?)
    } else {
        None
    };
    let a_count = gab.len();
    let same_a_subset_min = (0..a_count)
        .flat_map(|a| {
            let gs_len = gs.len();
            (0..gs_len).flat_map(move |g1| ((g1 + 1)..gs_len).map(move |g2| (g1 * a_count + a, g2 * a_count + a)))
        })
        .map(|(i, j)| subset_distance(&w[i], &w[j]))
        .min();
    Ok(BlockEnlargedFamily {
        q,
        n,
        t,
        h2_elements,
        h1_count: h1s.len(),
        a_count,
        cross_a_bound: 2 * rank_metric::rank_distance_of_code(&gab)?,
        words,
        spans,
        formula: thm7_2_cardinality(q, n, t),
        subset_report,
        subspace_report,
        same_a_subset_min,
    })
}

fn pow(q: u32, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

fn thm7_2_cardinality(q: u32, n: usize, t: usize) -> BigRational {
    let e = 3 * n * (t + 1) / 2 - n * n / 4;
    let num = pow(q, e) * BigInt::from(4) * (pow(q, n / 2) - BigInt::one());
    BigRational::new(num, BigInt::from(n * n))
}

/// Closed-form cardinalities attached to the near-Singleton constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Thm71,
    Cor71,
    Cor72,
    Thm72,
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm7_1" => Ok(Construction::Thm71),
            "cor7_1" => Ok(Construction::Cor71),
            "cor7_2" => Ok(Construction::Cor72),
            "thm7_2" => Ok(Construction::Thm72),
            _ => Err(Error::Parse(format!("unknown construction {s}"))),
        }
    }
}

/// Exact value of the stated closed form; only `Thm72` can be non-integral.
///
/// `s` is used by `Cor72` only. The rank counts are those of `Q_{q,n,t}`
/// (rank distance `n - t`). Sums whose lower index exceeds the upper one are
/// empty, and `0^0 = 1`, so `Cor72` with `s = 0` is 1.
pub fn cardinality_calculator(construction: Construction, q: u32, n: usize, t: usize, s: usize) -> Result<BigRational> {
    if n == 0 || t >= n {
        return Err(Error::ParameterOutOfRange(format!("need 0 <= t < n, got t = {t}, n = {n}")));
    }
    let int = |v: BigUint| BigRational::from_integer(BigInt::from(v));
    let base = pow(q, n * (t + 1));
    match construction {
        Construction::Thm71 => Ok(BigRational::from_integer(base)),
        Construction::Cor71 => {
            let dist = rank_metric::delsarte_rank_distribution(n, n - t, q)?;
            let extra = if n - t <= t { rank_metric::rank_sum(&dist, n - t, t) } else { BigUint::zero() };
            Ok(BigRational::from_integer(base) + int(extra))
        }
        Construction::Cor72 => {
            let dist = rank_metric::delsarte_rank_distribution(n, n - t, q)?;
            let inner = if t <= n - t { rank_metric::rank_sum(&dist, t, n - t) } else { BigUint::zero() };
            let inner = BigInt::from(inner);
            let mut total = BigInt::zero();
            for j in 0..=s {
                total += pow(q, (s - j) * n * (t + 1)) * inner.pow(j as u32);
            }
            Ok(BigRational::from_integer(total))
        }
        Construction::Thm72 => {
            if !n.is_multiple_of(2) || 2 * t < n {
                return Err(Error::ParameterOutOfRange("thm7_2 needs even n and t >= n/2".into()));
            }
            Ok(thm7_2_cardinality(q, n, t))
        }
    }
}

/// Nonzero vectors of the ambient space covered by members, with multiplicity.
pub fn coverage(c: &SubspaceCode) -> Result<BTreeMap<Vec<u32>, usize>> {
    let mut count = BTreeMap::new();
    for m in c.members() {
        for v in m.vectors()? {
            if v.iter().any(|&x| x != 0) {
                *count.entry(v).or_insert(0) += 1;
            }
        }
    }
    Ok(count)
}

/// Unordered pairs of distinct members sharing a nonzero vector.
pub fn intersecting_pairs(c: &SubspaceCode) -> Result<usize> {
    let mut n = 0;
    for i in 0..c.len() {
        for j in (i + 1)..c.len() {
            if c.members()[i].intersection_dim(&c.members()[j])? > 0 {
                n += 1;
            }
        }
    }
    Ok(n)
}

/// Distinct lines `aF_q` spanned by nonzero elements of `V`.
pub fn lines_of(ctx: &FieldCtx, v: &Subspace) -> Result<BTreeSet<FieldElement>> {
    Ok(v.vectors()?
        .into_iter()
        .filter(|x| x.iter().any(|&c| c != 0))
        .map(|x| line_key(ctx, &ctx.element(x).expect("right length")))
        .collect())
}
