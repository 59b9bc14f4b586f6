//! Rank-metric codes from linearized polynomials.
//!
//! A linearized polynomial `a_0 x + a_1 x^q + ... + a_t x^{q^t}` over
//! `F_{q^n}` is an `F_q`-linear map of `F_{q^n} = F_q^n`; its matrix has row
//! `i` equal to the image of the basis element `x^i`. The Gabidulin code
//! `Q_{q,n,t}` collects all of them and has rank distance `n - t`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bignum;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement, LinearEmbedding};
use crate::linalg::FqMatrix;
use crate::metrics::{MetricReport, SearchLimit};
use crate::provenance::Provenance;

/// Guard on the number of members materialized by a Gabidulin enumeration.
pub const MEMBER_LIMIT: u128 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearizedPoly {
    coeffs: Vec<FieldElement>,
}

impl LinearizedPoly {
    pub fn new(coeffs: Vec<FieldElement>) -> Self {
        LinearizedPoly { coeffs }
    }

    pub fn identity(ctx: &FieldCtx) -> Self {
        LinearizedPoly { coeffs: vec![ctx.one()] }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// The q-degree bound `t` (number of coefficients minus one).
    pub fn t(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, ctx: &FieldCtx, x: &FieldElement) -> FieldElement {
        let mut acc = ctx.zero();
        let mut power = x.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = ctx.frobenius(&power, 1);
            }
            if !a.is_zero() {
                acc = ctx.add(&acc, &ctx.mul(a, &power));
            }
        }
        acc
    }

    /// `n x n` matrix whose row `i` is the image of `x^i`.
    pub fn to_matrix(&self, ctx: &FieldCtx) -> FqMatrix {
        let rows = (0..ctx.n()).map(|i| self.eval(ctx, &ctx.basis(i)).into_coeffs()).collect();
        FqMatrix::from_rows(ctx.q(), ctx.n(), rows).expect("images are reduced")
    }

    /// Matrix of `x -> sum a_i phi(x^{q^i})` for `x` in the source field of `phi`.
    pub fn to_matrix_embedded(&self, src: &FieldCtx, dst: &FieldCtx, phi: &LinearEmbedding) -> FqMatrix {
        let rows = (0..src.n())
            .map(|i| {
                let mut acc = dst.zero();
                let mut power = src.basis(i);
                for (j, a) in self.coeffs.iter().enumerate() {
                    if j > 0 {
                        power = src.frobenius(&power, 1);
                    }
                    acc = dst.add(&acc, &dst.mul(a, &phi.apply(&power)));
                }
                acc.into_coeffs()
            })
            .collect();
        FqMatrix::from_rows(dst.q(), dst.n(), rows).expect("images are reduced")
    }
}

/// A set of `rows x cols` matrices over `F_q`, optionally generated by
/// linearized polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct RankCode {
    field: FieldCtx,
    source: Option<FieldCtx>,
    t: Option<usize>,
    polys: Vec<LinearizedPoly>,
    matrices: Vec<FqMatrix>,
    rows: usize,
    cols: usize,
    linear: bool,
    declared_distance: usize,
    pub provenance: Option<Provenance>,
}

impl RankCode {
    /// An explicit matrix code, treated as nonlinear.
    pub fn from_matrices(
        field: FieldCtx,
        rows: usize,
        cols: usize,
        matrices: Vec<FqMatrix>,
        declared_distance: usize,
    ) -> Result<Self> {
        for (i, m) in matrices.iter().enumerate() {
            if m.rows() != rows || m.cols() != cols || m.q() != field.q() {
                return Err(Error::LengthMismatch { expected: rows * cols, found: m.rows() * m.cols() });
            }
            if matrices[..i].contains(m) {
                return Err(Error::DuplicateCodeword(i));
            }
        }
        Ok(RankCode {
            field,
            source: None,
            t: None,
            polys: Vec::new(),
            matrices,
            rows,
            cols,
            linear: false,
            declared_distance,
            provenance: None,
        })
    }

    /// Members given by linearized polynomials; `source` is the domain field
    /// of a rectangular code and defaults to `field`.
    pub fn from_polys(
        field: FieldCtx,
        source: Option<FieldCtx>,
        polys: Vec<LinearizedPoly>,
        declared_distance: usize,
        linear: bool,
    ) -> Result<Self> {
        let src = source.clone().unwrap_or_else(|| field.clone());
        let phi = crate::field::embed_linear(&src, &field)?;
        for p in &polys {
            if let Some(c) = p.coeffs().iter().find(|c| !field.contains(c)) {
                return Err(Error::InvalidElement(format!("{c} is not in the coefficient field")));
            }
        }
        let matrices: Vec<FqMatrix> = polys.iter().map(|p| p.to_matrix_embedded(&src, &field, &phi)).collect();
        for i in 0..matrices.len() {
            if matrices[..i].contains(&matrices[i]) {
                return Err(Error::DuplicateCodeword(i));
            }
        }
        Ok(RankCode {
            t: polys.iter().map(|p| p.t()).max(),
            rows: src.n(),
            cols: field.n(),
            source: (src != field).then_some(src),
            field,
            polys,
            matrices,
            linear,
            declared_distance,
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    /// The coefficient (codomain) field.
    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    /// Domain field of a rectangular code.
    pub fn source(&self) -> Option<&FieldCtx> {
        self.source.as_ref()
    }

    pub fn t(&self) -> Option<usize> {
        self.t
    }

    pub fn polys(&self) -> &[LinearizedPoly] {
        &self.polys
    }

    pub fn matrices(&self) -> &[FqMatrix] {
        &self.matrices
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }

    pub fn declared_distance(&self) -> usize {
        self.declared_distance
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Keeps the members whose indices satisfy `keep`; the result is treated as nonlinear.
    pub fn subcode(&self, keep: impl Fn(usize) -> bool) -> RankCode {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        RankCode {
            polys: if self.polys.is_empty() {
                Vec::new()
            } else {
                idx.iter().map(|&i| self.polys[i].clone()).collect()
            },
            matrices: idx.iter().map(|&i| self.matrices[i].clone()).collect(),
            linear: false,
            ..self.clone()
        }
    }
}

fn coefficient_tuples(ctx: &FieldCtx, count: usize) -> Result<Vec<Vec<FieldElement>>> {
    let size = (ctx.order() as u128).checked_pow(count as u32).unwrap_or(u128::MAX);
    if size > MEMBER_LIMIT {
        return Err(Error::EnumerationTooLarge { what: "Gabidulin code", size, limit: MEMBER_LIMIT });
    }
    Ok((0..size as u64)
        .map(|idx| {
            let mut rest = idx;
            let mut c = vec![ctx.zero(); count];
            for slot in c.iter_mut().rev() {
                *slot = ctx.element_at(rest % ctx.order());
                rest /= ctx.order();
            }
            c
        })
        .collect())
}

/// All linearized polynomials with `t + 1` coefficients over `F_{q^n}`.
pub fn gabidulin_code(ctx: &FieldCtx, t: usize) -> Result<RankCode> {
    if t >= ctx.n() {
        return Err(Error::ParameterOutOfRange(format!("t = {t} must be below n = {}", ctx.n())));
    }
    let polys: Vec<LinearizedPoly> =
        coefficient_tuples(ctx, t + 1)?.into_iter().map(LinearizedPoly::new).collect();
    let matrices = polys.iter().map(|p| p.to_matrix(ctx)).collect();
    Ok(RankCode {
        field: ctx.clone(),
        source: None,
        t: Some(t),
        polys,
        matrices,
        rows: ctx.n(),
        cols: ctx.n(),
        linear: true,
        declared_distance: ctx.n() - t,
        provenance: Some(Provenance::new("gabidulin").with("q", ctx.q()).with("n", ctx.n()).with("t", t)),
    })
}

/// Maps `F_{q^k} -> F_{q^{k+h}}` of the form `sum a_i phi(x^{q^i})`, `a_i` in the larger field.
pub fn gabidulin_rect(src: &FieldCtx, dst: &FieldCtx, t: usize) -> Result<RankCode> {
    let phi = crate::field::embed_linear(src, dst)?;
    if t >= src.n() {
        return Err(Error::ParameterOutOfRange(format!("t = {t} must be below k = {}", src.n())));
    }
    let polys: Vec<LinearizedPoly> =
        coefficient_tuples(dst, t + 1)?.into_iter().map(LinearizedPoly::new).collect();
    let matrices = polys.iter().map(|p| p.to_matrix_embedded(src, dst, &phi)).collect();
    Ok(RankCode {
        field: dst.clone(),
        source: (src != dst).then(|| src.clone()),
        t: Some(t),
        polys,
        matrices,
        rows: src.n(),
        cols: dst.n(),
        linear: true,
        declared_distance: src.n() - t,
        provenance: Some(
            Provenance::new("gabidulin-rect").with("q", src.q()).with("k", src.n()).with("m", dst.n()).with("t", t),
        ),
    })
}

/// Exact minimum rank distance; witness indices refer to member positions.
pub fn rank_distance_report(c: &RankCode, limit: SearchLimit) -> Result<MetricReport> {
    let m = c.matrices();
    if m.len() < 2 {
        return Err(Error::TooFewCodewords(m.len()));
    }
    if c.is_linear() {
        // min rank over nonzero members; pairs reported as the member count
        let zero = m.iter().position(|x| x.is_zero()).unwrap_or(0);
        let best = m
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (x.rank(), i))
            .min()
            .expect("a linear code with two members has a nonzero member");
        let witness = if zero < best.1 { (zero, best.1) } else { (best.1, zero) };
        return Ok(MetricReport {
            metric: "rank".into(),
            minimum: best.0,
            witness,
            pairs: (m.len() - 1) as u64,
        });
    }
    crate::metrics::min_over_pairs(m.len(), limit, "rank", |i, j| m[i].sub(&m[j]).rank())
}

pub fn rank_distance_of_code(c: &RankCode) -> Result<usize> {
    Ok(rank_distance_report(c, SearchLimit::default())?.minimum)
}

/// `q^{max(m,n) (min(m,n) - d + 1)}`.
pub fn mrd_bound(q: u32, rows: usize, cols: usize, d: usize) -> BigUint {
    let lo = rows.min(cols);
    let hi = rows.max(cols);
    if d == 0 || d > lo + 1 {
        return BigUint::zero();
    }
    BigUint::from(q).pow((hi * (lo + 1 - d)) as u32)
}

/// Whether `|c|` meets the MRD bound for rank distance `d`.
pub fn mrd_check(c: &RankCode, d: usize) -> bool {
    BigUint::from(c.len()) == mrd_bound(c.field().q(), c.rows(), c.cols(), d)
}

/// `[n choose k]_q`, the number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let qb = BigUint::from(q);
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= qb.pow((n - i) as u32) - &one;
        den *= qb.pow((k - i) as u32) - &one;
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Number of members of each rank `0..=max rank`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankDistribution {
    #[serde(with = "bignum::biguint_vec")]
    pub counts: Vec<BigUint>,
}

impl RankDistribution {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn get(&self, r: usize) -> BigUint {
        self.counts.get(r).cloned().unwrap_or_default()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("rank,count\n");
        for (r, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{r},{c}\n"));
        }
        out
    }
}

/// Rank distribution of an `n x n` MRD code with rank distance `d`:
/// `rank_r = [n,r]_q sum_{i=0}^{r-d} (-1)^i q^{i(i-1)/2} [r,i]_q (q^{n(r-d+1-i)} - 1)`.
pub fn delsarte_rank_distribution(n: usize, d: usize, q: u32) -> Result<RankDistribution> {
    if d == 0 || d > n {
        return Err(Error::ParameterOutOfRange(format!("rank distance {d} must lie in 1..={n}")));
    }
    let qb = BigInt::from(q);
    let mut counts = vec![BigUint::zero(); n + 1];
    counts[0] = BigUint::one();
    for (r, slot) in counts.iter_mut().enumerate().skip(d) {
        let mut sum = BigInt::zero();
        for i in 0..=(r - d) {
            // q^{n(n-d+1)} / q^{n(n+i-r)} is the integer q^{n(r-d+1-i)}
            let ratio = qb.pow((n * (r - d + 1 - i)) as u32);
            let term = qb.pow((i * i.saturating_sub(1) / 2) as u32)
                * BigInt::from(gaussian_binomial(r, i, q))
                * (ratio - BigInt::one());
            if i % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        let value = BigInt::from(gaussian_binomial(n, r, q)) * sum;
        if value.is_negative() {
            return Err(Error::PropertyViolation(format!("negative rank count at r = {r}")));
        }
        *slot = value.to_biguint().expect("nonnegative");
    }
    let expected = BigUint::from(q).pow((n * (n - d + 1)) as u32);
    let total: BigUint = counts.iter().sum();
    if total != expected {
        return Err(Error::PropertyViolation(format!("rank counts sum to {total}, expected {expected}")));
    }
    Ok(RankDistribution { counts })
}

/// Census of member ranks.
pub fn empirical_rank_distribution(c: &RankCode) -> RankDistribution {
    let max_rank = c.rows().min(c.cols());
    let mut counts = vec![0u64; max_rank + 1];
    #[cfg(feature = "parallel")]
    let ranks: Vec<usize> = {
        use rayon::prelude::*;
        c.matrices().par_iter().map(|m| m.rank()).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let ranks: Vec<usize> = c.matrices().iter().map(|m| m.rank()).collect();
    for r in ranks {
        counts[r] += 1;
    }
    RankDistribution { counts: counts.into_iter().map(BigUint::from).collect() }
}

/// Sum of `rank_i` over `i` in `lo..=hi` (empty when `lo > hi`).
pub fn rank_sum(dist: &RankDistribution, lo: usize, hi: usize) -> BigUint {
    (lo..=hi).map(|i| dist.get(i)).sum()
}

/// Rank distribution as small integers, for display.
pub fn counts_u64(dist: &RankDistribution) -> Vec<u64> {
    dist.counts.iter().map(|c| c.to_u64().unwrap_or(u64::MAX)).collect()
}
