//! Closed-form upper bounds and the zero-distance witness for high-rate
//! linear codes.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bignum;
use crate::error::{Error, Result};
use crate::extlin;
use crate::field::FieldElement;
use crate::metrics::{
    code_min_distance, generalized_hamming_weights, insdel_distance, subset_distance, Metric, SearchLimit,
    VectorCode, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMetric {
    Hamming,
    Insdel,
    Subspace,
    Subset,
}

impl std::fmt::Display for BoundMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BoundMetric::Hamming => "hamming",
            BoundMetric::Insdel => "insdel",
            BoundMetric::Subspace => "subspace",
            BoundMetric::Subset => "subset",
        };
        f.write_str(s)
    }
}

/// One evaluated bound, optionally checked against a concrete code.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound: String,
    pub params: BTreeMap<String, Value>,
    #[serde(with = "bignum::rational")]
    pub value: BigRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub satisfied: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str = "bound,params,value,measured,satisfied,note";

    pub fn new(bound: &str, value: impl Into<BigInt>) -> Self {
        BoundReport {
            bound: bound.to_string(),
            params: BTreeMap::new(),
            value: BigRational::from_integer(value.into()),
            measured: None,
            satisfied: None,
            note: None,
        }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn checked(mut self, measured: impl Into<Value>, satisfied: bool) -> Self {
        self.measured = Some(measured.into());
        self.satisfied = Some(satisfied);
        self
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }

    pub fn value_string(&self) -> String {
        match bignum::rational_to_json(&self.value) {
            Value::String(s) => s,
            other => other.to_string(),
        }
    }

    pub fn to_csv_record(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
        format!(
            "{},{},{},{},{},{}",
            self.bound,
            params.join(";"),
            self.value_string(),
            self.measured.as_ref().map(plain).unwrap_or_default(),
            self.satisfied.map(|s| s.to_string()).unwrap_or_default(),
            self.note.as_deref().unwrap_or("").replace(',', ";")
        )
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string().replace(',', " "),
    }
}

pub fn bounds_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from(BoundReport::CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.to_csv_record());
        out.push('\n');
    }
    out
}

fn qpow(q: u32, e: usize) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// `q^{n-d+1}` for Hamming; `floor(q^{n - d/2 + 1})` (as `floor(sqrt(q^{2n+2-d}))`) otherwise.
pub fn singleton_bound(n: usize, d: usize, q: u32, metric: BoundMetric) -> Result<BoundReport> {
    if n == 0 || q < 2 {
        return Err(Error::ParameterOutOfRange("need n >= 1 and q >= 2".into()));
    }
    let value = match metric {
        BoundMetric::Hamming => {
            if d == 0 || d > n {
                return Err(Error::ParameterOutOfRange(format!("Hamming distance {d} outside 1..={n}")));
            }
            qpow(q, n - d + 1)
        }
        _ => {
            if d == 0 || d > 2 * n {
                return Err(Error::ParameterOutOfRange(format!("{metric} distance {d} outside 1..={}", 2 * n)));
            }
            qpow(q, 2 * n + 2 - d).sqrt()
        }
    };
    Ok(BoundReport::new("singleton", value)
        .param("metric", metric.to_string())
        .param("n", n)
        .param("d", d)
        .param("q", q))
}

/// `max(2(n - 2k + 2), 2)`.
pub fn half_singleton(n: usize, k: usize) -> Result<usize> {
    if k == 0 || k > n {
        return Err(Error::ParameterOutOfRange(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    Ok((2 * (n as i64 - 2 * k as i64 + 2)).max(2) as usize)
}

/// Both readings of the generalized-weight bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongHalfSingleton {
    /// `min_r 2(d_r - 2r + 2)`.
    pub doubled: i64,
    /// `min_r (d_r - 2r + 2)`.
    pub plain: i64,
}

pub fn strong_half_singleton(ghw: &[usize]) -> Result<StrongHalfSingleton> {
    if ghw.is_empty() || ghw.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NonMonotoneInput);
    }
    let plain = ghw
        .iter()
        .enumerate()
        .map(|(i, &d)| d as i64 - 2 * (i as i64 + 1) + 2)
        .min()
        .expect("nonempty");
    Ok(StrongHalfSingleton { doubled: 2 * plain, plain })
}

/// `floor((q^{n-1} + (n-2) q^{n-2} + q) / n)`.
pub fn levenshtein_bound(n: usize, q: u32) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(format!("n = {n} must be at least 2")));
    }
    Ok((qpow(q, n - 1) + BigUint::from(n - 2) * qpow(q, n - 2) + BigUint::from(q)) / BigUint::from(n))
}

/// `q^2 (q+1) / 4` for even `q`.
pub fn klo_bound(q: u32) -> Result<BigUint> {
    if !q.is_multiple_of(2) {
        return Err(Error::ParityViolation(q));
    }
    Ok(qpow(q, 2) * BigUint::from(q + 1) / BigUint::from(4u32))
}

/// `(x_2, ..., x_n, x_1)`.
pub fn left_shift(w: &Word) -> Word {
    let mut s = w.symbols().to_vec();
    if !s.is_empty() {
        s.rotate_left(1);
    }
    Word::new(s)
}

/// A codeword whose left cyclic shift is again a codeword.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftWitness {
    pub word: Word,
    pub shifted: Word,
    /// Whether the two words differ.
    pub distinct: bool,
}

/// Rows spanning `{h : G h = 0}`.
pub fn parity_check(c: &VectorCode) -> Result<Vec<Vec<FieldElement>>> {
    let g = c.generator().ok_or_else(|| Error::NotLinear("code has no generator matrix".into()))?;
    let rows: Vec<Vec<FieldElement>> = g.iter().map(|w| w.symbols().to_vec()).collect();
    Ok(extlin::kernel(c.ctx(), &rows, c.length()))
}

fn satisfies(c: &VectorCode, h: &[Vec<FieldElement>], w: &Word) -> bool {
    extlin::apply(c.ctx(), h, w.symbols()).iter().all(|x| x.is_zero())
}

/// Kernel vector of the parity checks stacked with their rotated copy.
///
/// The rotated check `H'` has column `i` equal to column `i - 1` of `H`, so
/// `H' x = H (shift x)`. A kernel basis vector that is not constant is
/// preferred, which makes the pair distinct whenever possible.
pub fn cyclic_shift_witness(c: &VectorCode) -> Result<ShiftWitness> {
    let h = parity_check(c)?;
    let n = c.length();
    let k = c.dimension().expect("linear");
    if 2 * k <= n {
        return Err(Error::RateTooLow { n, k });
    }
    let rotated: Vec<Vec<FieldElement>> = h
        .iter()
        .map(|row| (0..n).map(|i| row[(i + n - 1) % n].clone()).collect())
        .collect();
    let stacked: Vec<Vec<FieldElement>> = h.iter().chain(&rotated).cloned().collect();
    let kernel = if stacked.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.ctx().one() } else { c.ctx().zero() }).collect())
            .collect()
    } else {
        extlin::kernel(c.ctx(), &stacked, n)
    };
    let pick = kernel
        .iter()
        .find(|v| v.iter().any(|x| *x != v[0]))
        .or_else(|| kernel.first())
        .ok_or_else(|| Error::NotFound("stacked parity checks have trivial kernel".into()))?;
    let word = Word::new(pick.clone());
    let shifted = left_shift(&word);
    if !satisfies(c, &h, &word) || !satisfies(c, &h, &shifted) {
        return Err(Error::PropertyViolation("witness failed the membership check".into()));
    }
    Ok(ShiftWitness { distinct: word != shifted, word, shifted })
}

/// Exhaustive distances of a code, every applicable bound, and the chain
/// `d_S <= d_subset <= d_insdel <= 2 d_H`. Violations are reported in the
/// `satisfied` field rather than raised.
pub fn verify_bounds(c: &VectorCode, limit: SearchLimit) -> Result<Vec<BoundReport>> {
    let n = c.length();
    let q = c.ctx().order();
    let dist = |m: Metric| code_min_distance(c, m, limit).map(|r| r.minimum);
    let d_h = dist(Metric::Hamming)?;
    let d_s = dist(Metric::Subspace)?;
    let d_sub = dist(Metric::Subset)?;
    let d_ins = dist(Metric::Insdel)?;
    let size = BigUint::from(c.len());
    let mut out = Vec::new();

    let chain = d_s <= d_sub && d_sub <= d_ins && d_ins <= 2 * d_h;
    out.push(
        BoundReport::new("metric_chain", BigInt::zero())
            .param("d_hamming", d_h)
            .param("d_subspace", d_s)
            .param("d_subset", d_sub)
            .param("d_insdel", d_ins)
            .checked(format!("{d_s} <= {d_sub} <= {d_ins} <= {}", 2 * d_h), chain),
    );

    let q32 = u32::try_from(q).map_err(|_| Error::ParameterOutOfRange("alphabet too large".into()))?;
    for (metric, d) in [
        (BoundMetric::Hamming, d_h),
        (BoundMetric::Insdel, d_ins),
        (BoundMetric::Subspace, d_s),
        (BoundMetric::Subset, d_sub),
    ] {
        if d == 0 {
            continue;
        }
        if let Ok(r) = singleton_bound(n, d, q32, metric) {
            let ok = size <= r.value.to_integer().to_biguint().unwrap_or_default();
            out.push(r.checked(c.len(), ok));
        }
    }

    if let Some(k) = c.dimension() {
        if 2 * k <= n {
            let hs = half_singleton(n, k)?;
            out.push(
                BoundReport::new("half_singleton", hs)
                    .param("n", n)
                    .param("k", k)
                    .checked(d_ins, d_ins <= hs),
            );
        } else {
            let w = cyclic_shift_witness(c)?;
            let zero = subset_distance(&w.word, &w.shifted) == 0;
            out.push(
                BoundReport::new("shift_witness", BigInt::zero())
                    .param("n", n)
                    .param("k", k)
                    .checked(
                        serde_json::json!({"d_subspace": d_s, "d_subset": d_sub, "distinct": w.distinct}),
                        zero && (!w.distinct || (d_s == 0 && d_sub == 0)),
                    )
                    .with_note("high-rate linear codes have zero subspace and subset distance"),
            );
        }
        if n <= 20 {
            let ghw = generalized_hamming_weights(c)?;
            let gs = ghw.iter().enumerate().all(|(i, &d)| d <= n - k + i + 1);
            out.push(
                BoundReport::new("generalized_singleton", BigInt::from(n - k))
                    .param("ghw", ghw.clone())
                    .checked(ghw.clone(), gs)
                    .with_note("d_r <= n - k + r"),
            );
            let sh = strong_half_singleton(&ghw)?;
            out.push(
                BoundReport::new("strong_half_singleton_doubled", sh.doubled)
                    .param("ghw", ghw.clone())
                    .checked(d_ins, d_ins as i64 <= sh.doubled),
            );
            out.push(
                BoundReport::new("strong_half_singleton_plain", sh.plain)
                    .param("ghw", ghw)
                    .checked(d_sub, d_sub as i64 <= sh.plain),
            );
        }
    }
    Ok(out)
}

/// Parameter-only table: Singleton values for each metric at `d`, plus
/// Levenshtein and (for `n = 4`, even `q`) the improved bound.
pub fn bounds_table(n: usize, q: u32, d: Option<usize>, k: Option<usize>) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    if let Some(d) = d {
        for m in [BoundMetric::Hamming, BoundMetric::Insdel, BoundMetric::Subspace, BoundMetric::Subset] {
            if let Ok(r) = singleton_bound(n, d, q, m) {
                out.push(r);
            }
        }
    }
    if let Some(k) = k {
        out.push(BoundReport::new("half_singleton", half_singleton(n, k)?).param("n", n).param("k", k));
    }
    if n >= 2 {
        out.push(BoundReport::new("levenshtein", levenshtein_bound(n, q)?).param("n", n).param("q", q));
    }
    if n == 4 && q.is_multiple_of(2) {
        let klo = klo_bound(q)?;
        let lev = levenshtein_bound(4, q)?;
        out.push(
            BoundReport::new("klo", klo.clone())
                .param("q", q)
                .checked(lev.to_u64().map(Value::from).unwrap_or(Value::Null), klo <= lev)
                .with_note("compared against levenshtein at n = 4"),
        );
    }
    Ok(out)
}

/// Rotation costs at most one deletion and one insertion.
pub fn rotation_insdel(w: &Word) -> usize {
    insdel_distance(w, &left_shift(w))
}
