//! Hamming, insdel, subspace and subset distances, their folded variants,
//! exhaustive code minimum distances and generalized Hamming weights.
//!
//! The subspace and subset distances only look at the *set* of symbols of a
//! word, so they do not depend on coordinate positions. For any two words
//! `d_S <= d_subset <= d_insdel <= 2 d_H`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extlin;
use crate::field::{FieldCtx, FieldElement};
use crate::linalg::FqMatrix;
use crate::provenance::Provenance;

/// Default guard on the number of unordered pairs examined by a sweep.
pub const PAIR_LIMIT: u128 = 10_000_000;
/// Guard on the number of position subsets examined for generalized weights.
pub const SUPPORT_LIMIT: u128 = 1 << 20;
/// Guard on `|F|^k` when materializing a linear code.
pub const LINEAR_SPAN_LIMIT: u128 = 1 << 20;

/// A word over the alphabet `F_{q^n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<FieldElement>);

impl Word {
    pub fn new(symbols: Vec<FieldElement>) -> Self {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<FieldElement> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn vectors(&self) -> Vec<Vec<u32>> {
        self.0.iter().map(|s| s.coeffs().to_vec()).collect()
    }
}

impl From<Vec<FieldElement>> for Word {
    fn from(v: Vec<FieldElement>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

/// A word cut into blocks of `block_len` symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FoldedWord {
    pub block_len: usize,
    pub blocks: Vec<Vec<FieldElement>>,
}

impl FoldedWord {
    /// Each block flattened to a vector of length `n * block_len` over `F_q`.
    pub fn block_vectors(&self) -> Vec<Vec<u32>> {
        self.blocks
            .iter()
            .map(|b| b.iter().flat_map(|s| s.coeffs().iter().copied()).collect())
            .collect()
    }
}

/// Longest common subsequence length by the standard two-row table.
pub fn lcs_len<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// `|A| + |B| - 2|A ∩ B|` on the deduplicated symbol sets.
pub fn set_distance<T: Ord>(a: &[T], b: &[T]) -> usize {
    let sa: BTreeSet<&T> = a.iter().collect();
    let sb: BTreeSet<&T> = b.iter().collect();
    let common = sa.intersection(&sb).count();
    sa.len() + sb.len() - 2 * common
}

/// `dim(S_a + S_b) - dim(S_a ∩ S_b)` for the `F_q`-spans of two vector lists.
pub fn span_distance(q: u32, ambient: usize, a: &[Vec<u32>], b: &[Vec<u32>]) -> usize {
    let rank = |rows: Vec<Vec<u32>>| FqMatrix::from_rows(q, ambient, rows).expect("valid vectors").rank();
    let da = rank(a.to_vec());
    let db = rank(b.to_vec());
    let ds = rank(a.iter().chain(b).cloned().collect());
    2 * ds - da - db
}

pub fn hamming_distance(a: &Word, b: &Word) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { expected: a.len(), found: b.len() });
    }
    Ok(a.0.iter().zip(&b.0).filter(|(x, y)| x != y).count())
}

/// `|a| + |b| - 2 LCS(a, b)`.
pub fn insdel_distance(a: &Word, b: &Word) -> usize {
    a.len() + b.len() - 2 * lcs_len(&a.0, &b.0)
}

pub fn subspace_distance(ctx: &FieldCtx, a: &Word, b: &Word) -> usize {
    span_distance(ctx.q(), ctx.n(), &a.vectors(), &b.vectors())
}

pub fn subset_distance(a: &Word, b: &Word) -> usize {
    set_distance(&a.0, &b.0)
}

/// Splits into `ceil(m / r)` blocks; a short final block is padded with zeros.
pub fn fold(ctx: &FieldCtx, a: &Word, r: usize) -> Result<FoldedWord> {
    if r == 0 {
        return Err(Error::ParameterOutOfRange("block length must be at least 1".into()));
    }
    let blocks = a
        .0
        .chunks(r)
        .map(|c| {
            let mut b = c.to_vec();
            b.resize(r, ctx.zero());
            b
        })
        .collect();
    Ok(FoldedWord { block_len: r, blocks })
}

fn check_same_len(a: &Word, b: &Word) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { expected: a.len(), found: b.len() });
    }
    Ok(())
}

pub fn folded_subspace_distance(ctx: &FieldCtx, a: &FoldedWord, b: &FoldedWord) -> usize {
    let ambient = ctx.n() * a.block_len;
    span_distance(ctx.q(), ambient, &a.block_vectors(), &b.block_vectors())
}

pub fn folded_subset_distance(a: &FoldedWord, b: &FoldedWord) -> usize {
    set_distance(&a.blocks, &b.blocks)
}

/// Subspace distance of the `r`-folded words, blocks viewed in `F_q^{nr}`.
pub fn r_subspace_distance(ctx: &FieldCtx, a: &Word, b: &Word, r: usize) -> Result<usize> {
    check_same_len(a, b)?;
    Ok(folded_subspace_distance(ctx, &fold(ctx, a, r)?, &fold(ctx, b, r)?))
}

pub fn r_subset_distance(ctx: &FieldCtx, a: &Word, b: &Word, r: usize) -> Result<usize> {
    check_same_len(a, b)?;
    Ok(folded_subset_distance(&fold(ctx, a, r)?, &fold(ctx, b, r)?))
}

/// Distance selector for code-level sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    Hamming,
    Insdel,
    Subspace,
    Subset,
    RSubspace(usize),
    RSubset(usize),
}

impl Metric {
    /// Parses a base metric name, turning subspace/subset into their folded
    /// variants when a block length is given.
    pub fn parse(name: &str, block_len: Option<usize>) -> Result<Metric> {
        let base: Metric = name.parse()?;
        Ok(match (base, block_len) {
            (m, None) => m,
            (Metric::Subspace, Some(r)) => Metric::RSubspace(r),
            (Metric::Subset, Some(r)) => Metric::RSubset(r),
            (m, Some(_)) => {
                return Err(Error::Parse(format!("metric {m} does not take a block length")))
            }
        })
    }

    pub fn distance(&self, ctx: &FieldCtx, a: &Word, b: &Word) -> Result<usize> {
        match *self {
            Metric::Hamming => hamming_distance(a, b),
            Metric::Insdel => Ok(insdel_distance(a, b)),
            Metric::Subspace => Ok(subspace_distance(ctx, a, b)),
            Metric::Subset => Ok(subset_distance(a, b)),
            Metric::RSubspace(r) => r_subspace_distance(ctx, a, b, r),
            Metric::RSubset(r) => r_subset_distance(ctx, a, b, r),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Hamming => write!(f, "hamming"),
            Metric::Insdel => write!(f, "insdel"),
            Metric::Subspace => write!(f, "subspace"),
            Metric::Subset => write!(f, "subset"),
            Metric::RSubspace(r) => write!(f, "r_subspace({r})"),
            Metric::RSubset(r) => write!(f, "r_subset({r})"),
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Metric> {
        let parse_r = |inner: &str| {
            inner.parse::<usize>().map_err(|_| Error::Parse(format!("bad block length in {s}")))
        };
        match s {
            "hamming" => Ok(Metric::Hamming),
            "insdel" => Ok(Metric::Insdel),
            "subspace" => Ok(Metric::Subspace),
            "subset" => Ok(Metric::Subset),
            _ => {
                if let Some(inner) = s.strip_prefix("r_subspace(").and_then(|t| t.strip_suffix(')')) {
                    Ok(Metric::RSubspace(parse_r(inner)?))
                } else if let Some(inner) = s.strip_prefix("r_subset(").and_then(|t| t.strip_suffix(')')) {
                    Ok(Metric::RSubset(parse_r(inner)?))
                } else {
                    Err(Error::Parse(format!("unknown metric {s}")))
                }
            }
        }
    }
}

/// A set of distinct words of equal length over `F_{q^n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorCode {
    ctx: FieldCtx,
    length: usize,
    codewords: Vec<Word>,
    generator: Option<Vec<Word>>,
    pub provenance: Option<Provenance>,
}

impl VectorCode {
    pub fn new(ctx: FieldCtx, length: usize, codewords: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, w) in codewords.iter().enumerate() {
            if w.len() != length {
                return Err(Error::LengthMismatch { expected: length, found: w.len() });
            }
            if let Some(s) = w.0.iter().find(|s| !ctx.contains(s)) {
                return Err(Error::InvalidElement(format!("{s} is not in the alphabet field")));
            }
            if !seen.insert(w) {
                return Err(Error::DuplicateCodeword(i));
            }
        }
        Ok(VectorCode { ctx, length, codewords, generator: None, provenance: None })
    }

    /// The row span of `generator` over `F_{q^n}`; rows must be independent.
    pub fn linear(ctx: FieldCtx, generator: Vec<Word>) -> Result<Self> {
        let k = generator.len();
        let length = generator.first().map_or(0, |g| g.len());
        if k == 0 {
            return Err(Error::NotLinear("empty generator".into()));
        }
        for g in &generator {
            if g.len() != length {
                return Err(Error::LengthMismatch { expected: length, found: g.len() });
            }
            if let Some(s) = g.0.iter().find(|s| !ctx.contains(s)) {
                return Err(Error::InvalidElement(format!("{s} is not in the alphabet field")));
            }
        }
        let rows: Vec<Vec<FieldElement>> = generator.iter().map(|g| g.0.clone()).collect();
        if extlin::rank(&ctx, &rows) != k {
            return Err(Error::NotLinear("generator rows are linearly dependent".into()));
        }
        let size = (ctx.order() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if size > LINEAR_SPAN_LIMIT {
            return Err(Error::EnumerationTooLarge { what: "linear code", size, limit: LINEAR_SPAN_LIMIT });
        }
        let mut codewords = Vec::with_capacity(size as usize);
        for idx in 0..size as u64 {
            let mut rest = idx;
            let mut msg = vec![ctx.zero(); k];
            for m in msg.iter_mut().rev() {
                *m = ctx.element_at(rest % ctx.order());
                rest /= ctx.order();
            }
            codewords.push(encode(&ctx, &generator, &msg));
        }
        Ok(VectorCode { ctx, length, codewords, generator: Some(generator), provenance: None })
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn codewords(&self) -> &[Word] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn generator(&self) -> Option<&[Word]> {
        self.generator.as_deref()
    }

    /// Dimension over the alphabet field, when linear.
    pub fn dimension(&self) -> Option<usize> {
        self.generator.as_ref().map(|g| g.len())
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.codewords.iter().position(|c| c == w)
    }
}

fn encode(ctx: &FieldCtx, generator: &[Word], msg: &[FieldElement]) -> Word {
    let length = generator[0].len();
    let mut out = vec![ctx.zero(); length];
    for (m, g) in msg.iter().zip(generator) {
        if m.is_zero() {
            continue;
        }
        for (o, s) in out.iter_mut().zip(&g.0) {
            *o = ctx.add(o, &ctx.mul(m, s));
        }
    }
    Word(out)
}

/// Minimum over distinct pairs, with the first minimizing pair as witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricReport {
    pub metric: String,
    pub minimum: usize,
    pub witness: (usize, usize),
    pub pairs: u64,
}

impl MetricReport {
    pub const CSV_HEADER: &'static str = "metric,min,witness_i,witness_j,pairs";

    pub fn to_csv_record(&self) -> String {
        format!("{},{},{},{},{}", self.metric, self.minimum, self.witness.0, self.witness.1, self.pairs)
    }
}

/// Pair-count guard for exhaustive sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimit {
    pub max_pairs: u128,
}

impl Default for SearchLimit {
    fn default() -> Self {
        SearchLimit { max_pairs: PAIR_LIMIT }
    }
}

impl SearchLimit {
    pub fn forced() -> Self {
        SearchLimit { max_pairs: u128::MAX }
    }

    pub fn new(force: bool) -> Self {
        if force {
            Self::forced()
        } else {
            Self::default()
        }
    }

    pub fn check(&self, count: usize) -> Result<u64> {
        let pairs = count as u128 * count.saturating_sub(1) as u128 / 2;
        if pairs > self.max_pairs {
            return Err(Error::SearchTooLarge { pairs, limit: self.max_pairs });
        }
        Ok(pairs as u64)
    }
}

/// Exact minimum of `dist(i, j)` over `i < j < count`. The reduction is on
/// `(distance, i, j)`, so the witness matches a sequential scan.
pub fn min_over_pairs<F>(count: usize, limit: SearchLimit, metric: &str, dist: F) -> Result<MetricReport>
where
    F: Fn(usize, usize) -> usize + Sync + Send,
{
    if count < 2 {
        return Err(Error::TooFewCodewords(count));
    }
    let pairs = limit.check(count)?;
    let row_min = |i: usize| ((i + 1)..count).map(|j| (dist(i, j), i, j)).min();
    #[cfg(feature = "parallel")]
    let best = {
        use rayon::prelude::*;
        (0..count - 1).into_par_iter().filter_map(row_min).min()
    };
    #[cfg(not(feature = "parallel"))]
    let best = (0..count - 1).filter_map(row_min).min();
    let (minimum, i, j) = best.expect("at least one pair");
    Ok(MetricReport { metric: metric.to_string(), minimum, witness: (i, j), pairs })
}

/// Histogram of pairwise distances over all unordered distinct pairs.
pub fn distance_spectrum<F>(count: usize, limit: SearchLimit, dist: F) -> Result<BTreeMap<usize, u64>>
where
    F: Fn(usize, usize) -> usize + Sync + Send,
{
    limit.check(count)?;
    let row = |i: usize| {
        let mut h = BTreeMap::new();
        for j in (i + 1)..count {
            *h.entry(dist(i, j)).or_insert(0u64) += 1;
        }
        h
    };
    let merge = |mut a: BTreeMap<usize, u64>, b: BTreeMap<usize, u64>| {
        for (k, v) in b {
            *a.entry(k).or_insert(0) += v;
        }
        a
    };
    #[cfg(feature = "parallel")]
    let out = {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(row).reduce(BTreeMap::new, merge)
    };
    #[cfg(not(feature = "parallel"))]
    let out = (0..count).map(row).fold(BTreeMap::new(), merge);
    Ok(out)
}

pub fn code_min_distance(c: &VectorCode, metric: Metric, limit: SearchLimit) -> Result<MetricReport> {
    if let Metric::RSubspace(0) | Metric::RSubset(0) = metric {
        return Err(Error::ParameterOutOfRange("block length must be at least 1".into()));
    }
    let words = c.codewords();
    min_over_pairs(words.len(), limit, &metric.to_string(), |i, j| {
        metric.distance(c.ctx(), &words[i], &words[j]).expect("codewords share a length")
    })
}

/// Generalized Hamming weights `d_1 < ... < d_k` of a linear code.
///
/// `d_r` is the smallest `|S|` such that the codewords supported inside `S`
/// form a subcode of dimension at least `r`; that subcode has dimension
/// `k - rank(G restricted to the columns outside S)`.
pub fn generalized_hamming_weights(c: &VectorCode) -> Result<Vec<usize>> {
    let generator = c
        .generator()
        .ok_or_else(|| Error::NotLinear("code has no generator matrix".into()))?;
    let n = c.length();
    let k = generator.len();
    let size = 1u128 << n.min(127);
    if size > SUPPORT_LIMIT {
        return Err(Error::SearchTooLarge { pairs: size, limit: SUPPORT_LIMIT });
    }
    let ctx = c.ctx();
    let mut best = vec![usize::MAX; k + 1];
    for mask in 0u64..(1u64 << n) {
        let support = mask.count_ones() as usize;
        let outside: Vec<Vec<FieldElement>> = generator
            .iter()
            .map(|g| (0..n).filter(|i| mask >> i & 1 == 0).map(|i| g.0[i].clone()).collect())
            .collect();
        let sub_dim = if outside[0].is_empty() { k } else { k - extlin::rank(ctx, &outside) };
        for b in best.iter_mut().take(sub_dim + 1).skip(1) {
            *b = (*b).min(support);
        }
    }
    Ok(best[1..].to_vec())
}
