//! Property suites behind `verify`. A failed check is an implementation
//! bug; a finding records a published claim next to the measured value.

use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{self, cyclic_shift_witness};
use crate::channel::{run_trials, ChannelSpec};
use crate::derived::{
    all_vectors_code, evaluation_folded_code, folded_max_subset_distance, folded_min_distance, m_of_d,
    partial_span_code, singer_difference_set, FoldedMetric,
};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::metrics::{
    code_min_distance, generalized_hamming_weights, hamming_distance, insdel_distance, subset_distance,
    subspace_distance, Metric, SearchLimit, VectorCode, Word,
};
use crate::rank_metric::{
    delsarte_rank_distribution, empirical_rank_distribution, gabidulin_code, mrd_check, rank_distance_report,
};
use crate::subspace_codes::{
    block_enlarged_family, coverage, intersecting_pairs, is_cyclic, lift_rank_code, orbit_cyclic_code, sidon_check,
    sidon_search, spread, subspace_code_min_distance,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

/// A published claim and what was measured instead.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub claim: String,
    pub claimed: Value,
    pub measured: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub findings: Vec<Finding>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), passed: true, checks: Vec::new(), findings: Vec::new(), elapsed_ms: 0 }
    }

    fn check(&mut self, name: &str, passed: bool, detail: Value) {
        self.passed &= passed;
        self.checks.push(Check { name: name.into(), passed, detail });
    }

    fn finding(&mut self, claim: &str, claimed: Value, measured: Value) {
        self.findings.push(Finding { claim: claim.into(), claimed, measured });
    }

    pub const CSV_HEADER: &'static str = "suite,check,passed,detail";

    pub fn csv_records(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| format!("{},{},{},{}", self.suite, c.name, c.passed, c.detail.to_string().replace(',', ";")))
            .collect()
    }
}

/// Sampling sizes and seed shared by the randomized suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub codes: usize,
    pub trials: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, samples: 10_000, codes: 100, trials: 1000 }
    }
}

pub const SUITES: &[&str] = &[
    "pseudometric",
    "chain",
    "delsarte",
    "lifting",
    "spread",
    "orbit",
    "thm21",
    "thm91",
    "bounds",
    "channel",
    "thm72",
];

pub fn run_suite(name: &str, cfg: SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut r = match name {
        "pseudometric" => pseudometric(cfg),
        "chain" => chain(cfg),
        "delsarte" => delsarte(),
        "lifting" => lifting(),
        "spread" => spreads(),
        "orbit" => orbit(),
        "thm21" => thm21(cfg),
        "thm91" => thm91(),
        "bounds" => bounds_suite(),
        "channel" => channel(cfg),
        "thm72" => thm72(),
        _ => return Err(Error::Parse(format!("unknown suite {name}; expected one of {} or all", SUITES.join(", ")))),
    }?;
    r.elapsed_ms = start.elapsed().as_millis();
    Ok(r)
}

pub fn run_suites(name: &str, cfg: SuiteConfig) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        SUITES.iter().map(|s| run_suite(s, cfg)).collect()
    } else {
        Ok(vec![run_suite(name, cfg)?])
    }
}

pub fn random_word(rng: &mut ChaCha20Rng, ctx: &FieldCtx, len: usize) -> Word {
    Word::new((0..len).map(|_| ctx.element_at(rng.gen_range(0..ctx.order()))).collect())
}

/// Chain `d_S <= d_subset <= d_insdel <= 2 d_H` on one pair.
pub fn chain_holds(ctx: &FieldCtx, a: &Word, b: &Word) -> bool {
    let ds = subspace_distance(ctx, a, b);
    let dsub = subset_distance(a, b);
    let di = insdel_distance(a, b);
    let dh = hamming_distance(a, b).expect("equal lengths");
    ds <= dsub && dsub <= di && di <= 2 * dh
}

fn pseudometric(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("pseudometric");
    let ctx = FieldCtx::new(2, 3, None)?;
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    let (mut tri_s, mut tri_sub, mut sym, mut refl) = (0, 0, 0, 0);
    for _ in 0..cfg.samples {
        let x = random_word(&mut rng, &ctx, 5);
        let y = random_word(&mut rng, &ctx, 5);
        let z = random_word(&mut rng, &ctx, 5);
        let ds = |a: &Word, b: &Word| subspace_distance(&ctx, a, b);
        if ds(&x, &z) > ds(&x, &y) + ds(&y, &z) {
            tri_s += 1;
        }
        if subset_distance(&x, &z) > subset_distance(&x, &y) + subset_distance(&y, &z) {
            tri_sub += 1;
        }
        if ds(&x, &y) != ds(&y, &x) || subset_distance(&x, &y) != subset_distance(&y, &x) {
            sym += 1;
        }
        if ds(&x, &x) != 0 || subset_distance(&x, &x) != 0 {
            refl += 1;
        }
    }
    r.check("triangle_subspace", tri_s == 0, json!({"triples": cfg.samples, "violations": tri_s}));
    r.check("triangle_subset", tri_sub == 0, json!({"triples": cfg.samples, "violations": tri_sub}));
    r.check("symmetry", sym == 0, json!({"violations": sym}));
    r.check("reflexivity", refl == 0, json!({"violations": refl}));
    Ok(r)
}

fn chain(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("chain");
    let ctx = FieldCtx::new(2, 3, None)?;
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    let mut bad = 0;
    for _ in 0..cfg.samples {
        let a = random_word(&mut rng, &ctx, 5);
        let b = random_word(&mut rng, &ctx, 5);
        if !chain_holds(&ctx, &a, &b) {
            bad += 1;
        }
    }
    r.check("random_pairs_gf8_len5", bad == 0, json!({"pairs": cfg.samples, "violations": bad}));
    let f4 = FieldCtx::new(2, 2, None)?;
    let words: Vec<Word> = (0..16u64).map(|i| Word::new(vec![f4.element_at(i / 4), f4.element_at(i % 4)])).collect();
    let mut bad = 0;
    let mut pairs = 0;
    for a in &words {
        for b in &words {
            pairs += 1;
            if !chain_holds(&f4, a, b) {
                bad += 1;
            }
        }
    }
    r.check("exhaustive_gf4_len2", bad == 0, json!({"pairs": pairs, "violations": bad}));
    Ok(r)
}

fn delsarte() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("delsarte");
    for (n, t) in [(3usize, 1usize), (4, 2), (3, 0), (4, 1)] {
        let ctx = FieldCtx::new(2, n, None)?;
        let census = empirical_rank_distribution(&gabidulin_code(&ctx, t)?);
        let formula = delsarte_rank_distribution(n, n - t, 2)?;
        r.check(
            &format!("census_q2_n{n}_t{t}"),
            census == formula,
            json!({"census": census.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                   "formula": formula.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                   "total": census.total().to_string()}),
        );
    }
    Ok(r)
}

fn lifting() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("lifting");
    let ctx = FieldCtx::new(2, 3, None)?;
    let g = gabidulin_code(&ctx, 1)?;
    let rd = rank_distance_report(&g, SearchLimit::default())?;
    r.check("rank_distance", rd.minimum == 2, json!({"minimum": rd.minimum, "nonzero_members": rd.pairs}));
    r.check("mrd", mrd_check(&g, 2), json!({"members": g.len()}));
    let lifted = lift_rank_code(&g)?;
    let report = subspace_code_min_distance(&lifted, SearchLimit::default())?;
    r.check(
        "lifted_code",
        lifted.ambient() == 6 && lifted.len() == 64 && lifted.constant_dim() == Some(3) && report.minimum == 4,
        json!({"ambient": lifted.ambient(), "members": lifted.len(), "dim": lifted.constant_dim(),
               "min_distance": report.minimum, "pairs": report.pairs}),
    );
    Ok(r)
}

fn spreads() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("spread");
    let s = spread(2, 2, 4)?;
    let cov = coverage(&s)?;
    let d = subspace_code_min_distance(&s, SearchLimit::default())?;
    r.check(
        "spread_2_2_4",
        s.len() == 5 && cov.len() == 15 && cov.values().all(|&c| c == 1) && d.minimum == 4,
        json!({"members": s.len(), "covered": cov.len(), "min_distance": d.minimum}),
    );
    let s6 = spread(2, 2, 6)?;
    let d6 = subspace_code_min_distance(&s6, SearchLimit::default())?;
    let cov6 = coverage(&s6)?;
    r.check(
        "spread_2_2_6",
        s6.len() == 21 && d6.minimum == 4 && intersecting_pairs(&s6)? == 0 && cov6.values().all(|&c| c == 1),
        json!({"members": s6.len(), "min_distance": d6.minimum, "covered": cov6.len()}),
    );
    Ok(r)
}

fn orbit() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("orbit");
    let ctx = FieldCtx::new(2, 5, None)?;
    let v = sidon_search(&ctx, 2)?;
    r.check("sidon_space", sidon_check(&ctx, &v)?, json!({"basis": v.basis().row_vecs()}));
    let code = orbit_cyclic_code(&ctx, &v)?;
    let d = subspace_code_min_distance(&code, SearchLimit::default())?;
    r.check(
        "orbit_code",
        code.len() == 31 && d.minimum == 2,
        json!({"members": code.len(), "min_distance": d.minimum, "pairs": d.pairs}),
    );
    r.check("cyclic", is_cyclic(&ctx, &code), json!(null));
    let words = partial_span_code(&code, 2)?;
    let di = code_min_distance(&words, Metric::Insdel, SearchLimit::default())?;
    let ds = code_min_distance(&words, Metric::Subspace, SearchLimit::default())?;
    r.check(
        "span_code_len2",
        di.minimum >= 2 && ds.minimum == 2,
        json!({"insdel": di.minimum, "subspace": ds.minimum, "codewords": words.len()}),
    );
    Ok(r)
}

pub fn random_linear_code(rng: &mut ChaCha20Rng, ctx: &FieldCtx, n: usize, k: usize) -> VectorCode {
    loop {
        let g: Vec<Word> = (0..k).map(|_| random_word(rng, ctx, n)).collect();
        if let Ok(c) = VectorCode::linear(ctx.clone(), g) {
            return c;
        }
    }
}

fn thm21(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("thm21");
    let ctx = FieldCtx::prime(2)?;
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    let (mut ok, mut distinct) = (0, 0);
    let mut failures = Vec::new();
    for i in 0..cfg.codes {
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(n / 2 + 1..=n);
        let c = random_linear_code(&mut rng, &ctx, n, k);
        let good = match cyclic_shift_witness(&c) {
            Ok(w) => {
                distinct += w.distinct as usize;
                w.word.symbols().iter().any(|s| !s.is_zero())
                    && c.position(&w.word).is_some()
                    && c.position(&w.shifted).is_some()
                    && subset_distance(&w.word, &w.shifted) == 0
            }
            Err(_) => false,
        };
        if good {
            ok += 1;
        } else {
            failures.push(i);
        }
    }
    r.check(
        "witnesses",
        ok == cfg.codes,
        json!({"codes": cfg.codes, "success": ok, "distinct_pairs": distinct, "failures": failures}),
    );
    Ok(r)
}

fn thm91() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("thm91");
    for n in [3usize, 4, 5] {
        let ctx = FieldCtx::new(2, n, None)?;
        let ds = singer_difference_set(&ctx)?;
        let expected = ((1u64 << n) - 1, (1usize << (n - 1)) - 1, (1usize << (n - 2)) - 1);
        r.check(
            &format!("singer_n{n}"),
            (ds.v, ds.k, ds.lambda) == expected && m_of_d(&ctx, &ds.members)? == ds.lambda,
            json!({"v": ds.v, "k": ds.k, "lambda": ds.lambda}),
        );
        let code = evaluation_folded_code(&ctx, &ds.members)?;
        let min = folded_min_distance(&code, FoldedMetric::Subset, SearchLimit::default())?.minimum;
        let max = folded_max_subset_distance(&code, SearchLimit::default())?;
        r.check(
            &format!("equidistant_n{n}"),
            min == max && min == 2 * (ds.k - ds.lambda),
            json!({"codewords": code.len(), "min": min, "max": max}),
        );
        r.finding(
            &format!("folded code subset distance D - m(D), n = {n}"),
            json!(ds.k - ds.lambda),
            json!(min),
        );
        r.finding(&format!("Singer folded code distance 2^(n-2), n = {n}"), json!(1u64 << (n - 2)), json!(min));
        r.finding(&format!("Singer folded code cardinality 2^(n-2), n = {n}"), json!(1u64 << (n - 2)), json!(code.len()));
    }
    Ok(r)
}

fn bounds_suite() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("bounds");
    let lev = bounds::levenshtein_bound(4, 2)?;
    let klo = bounds::klo_bound(2)?;
    r.check("levenshtein_4_2", lev == BigUint::from(4u32), json!(lev.to_string()));
    r.check("klo_2", klo == BigUint::from(3u32), json!(klo.to_string()));
    let h1 = bounds::half_singleton(6, 2)?;
    let h2 = bounds::half_singleton(4, 3)?;
    r.check("half_singleton_6_2", h1 == 8, json!(h1));
    r.check("half_singleton_4_3", h2 == 2, json!(h2));
    let f2 = FieldCtx::prime(2)?;
    let w = |b: [u32; 4]| Word::new(b.iter().map(|&x| f2.scalar(x)).collect());
    let rep = VectorCode::linear(f2.clone(), vec![w([1, 1, 0, 0]), w([0, 0, 1, 1])])?;
    let ghw = generalized_hamming_weights(&rep)?;
    let gs = ghw.iter().enumerate().all(|(i, &d)| d <= 4 - 2 + i + 1);
    r.check("ghw_pair_repetition", ghw == vec![2, 4] && gs, json!(ghw));
    let sh = bounds::strong_half_singleton(&ghw)?;
    r.finding(
        "strong half-Singleton for the pair-repetition code (doubled vs plain form)",
        json!({"doubled": sh.doubled, "plain": sh.plain}),
        json!({"d_insdel": code_min_distance(&rep, Metric::Insdel, SearchLimit::default())?.minimum,
               "d_subset": code_min_distance(&rep, Metric::Subset, SearchLimit::default())?.minimum}),
    );
    Ok(r)
}

/// The all-vectors code of `spread(2, 2, 4)` with `l = 3`.
pub fn spread_channel_code() -> Result<VectorCode> {
    Ok(all_vectors_code(&spread(2, 2, 4)?, 3)?.code)
}

fn channel(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("channel");
    let code = spread_channel_code()?;
    let d = code_min_distance(&code, Metric::Insdel, SearchLimit::default())?.minimum;
    r.check("insdel_distance", d == 6, json!(d));
    let run = run_trials(&code, d, ChannelSpec { insertions: 0, deletions: 2, seed: cfg.seed }, cfg.trials)?;
    r.check(
        "two_deletions",
        run.summary.ok == cfg.trials && run.summary.ambiguous == 0,
        serde_json::to_value(&run.summary).expect("plain data"),
    );
    Ok(r)
}

fn thm72() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("thm72");
    for (n, t) in [(2usize, 1usize), (4, 2)] {
        let fam = block_enlarged_family(2, n, t, SearchLimit::default())?;
        let target = 2 * (n - t);
        let subset_ok = fam.same_a_subset_min.is_none_or(|d| d >= target) && fam.cross_a_bound >= target;
        r.check(
            &format!("subset_distance_n{n}_t{t}"),
            subset_ok && fam.subset_report.as_ref().is_none_or(|s| s.minimum >= target),
            json!({"same_a_min": fam.same_a_subset_min, "cross_a_bound": fam.cross_a_bound,
                   "exhaustive": fam.subset_report.as_ref().map(|s| s.minimum)}),
        );
        r.finding(
            &format!("block family subspace distance 2(n-t), n = {n}, t = {t}"),
            json!(target),
            json!({"exhaustive": fam.subspace_report.as_ref().map(|s| s.minimum),
                   "distinct_row_spaces": fam.spans.len(), "words": fam.words.len()}),
        );
        r.finding(
            &format!("block family cardinality, n = {n}, t = {t}"),
            crate::bignum::rational_to_json(&fam.formula),
            json!(fam.words.len()),
        );
    }
    Ok(r)
}
