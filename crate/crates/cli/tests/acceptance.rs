//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand::Rng;
use rand_chacha::ChaCha20Rng;
use subspace_metric::bounds::{cyclic_shift_witness, half_singleton, klo_bound, levenshtein_bound};
use subspace_metric::channel::{run_trials, ChannelSpec};
use subspace_metric::derived::{
    evaluation_folded_code, folded_max_subset_distance, folded_min_distance, m_of_d, singer_difference_set, span_code,
    translate_intersections, FoldedMetric,
};
use subspace_metric::metrics::{
    code_min_distance, generalized_hamming_weights, hamming_distance, insdel_distance, subset_distance,
    subspace_distance, Metric, SearchLimit, VectorCode, Word,
};
use subspace_metric::rank_metric::{delsarte_rank_distribution, empirical_rank_distribution, gabidulin_code};
use subspace_metric::subspace_codes::{
    coverage, lift_rank_code, orbit_cyclic_code, sidon_check, sidon_search, spread, subspace_code_min_distance,
};
use subspace_metric::suites::{random_linear_code, random_word, spread_channel_code, SuiteConfig, run_suite};
use subspace_metric::FieldCtx;

const SEED: u64 = 20240611;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn chain(ctx: &FieldCtx, a: &Word, b: &Word) -> bool {
    let ds = subspace_distance(ctx, a, b);
    let dsub = subset_distance(a, b);
    let di = insdel_distance(a, b);
    let dh = hamming_distance(a, b).expect("equal lengths");
    ds <= dsub && dsub <= di && di <= 2 * dh
}

fn c1_metric_chain() -> Outcome {
    let f8 = FieldCtx::new(2, 3, None).map_err(e)?;
    let mut rng = ChaCha20Rng::seed_from_u64(SEED);
    let mut bad = 0;
    for _ in 0..10_000 {
        let a = random_word(&mut rng, &f8, 5);
        let b = random_word(&mut rng, &f8, 5);
        bad += !chain(&f8, &a, &b) as usize;
    }
    let f4 = FieldCtx::new(2, 2, None).map_err(e)?;
    let words: Vec<Word> = f4
        .elements()
        .flat_map(|x| f4.elements().map(move |y| Word::new(vec![x.clone(), y])))
        .collect();
    let mut pairs = 0;
    for a in &words {
        for b in &words {
            pairs += 1;
            bad += !chain(&f4, a, b) as usize;
        }
    }
    ensure(bad == 0, format!("{bad} violations"))?;
    Ok(format!("10000 random pairs in F8^5, {pairs} exhaustive pairs in F4^2, 0 violations"))
}

fn c2_pseudometric() -> Outcome {
    let f8 = FieldCtx::new(2, 3, None).map_err(e)?;
    let mut rng = ChaCha20Rng::seed_from_u64(SEED);
    let (mut vs, mut vsub) = (0, 0);
    for _ in 0..10_000 {
        let [x, y, z] = [(); 3].map(|_| random_word(&mut rng, &f8, 5));
        let ds = |a: &Word, b: &Word| subspace_distance(&f8, a, b);
        vs += (ds(&x, &z) > ds(&x, &y) + ds(&y, &z)) as usize;
        vsub += (subset_distance(&x, &z) > subset_distance(&x, &y) + subset_distance(&y, &z)) as usize;
    }
    ensure(vs == 0 && vsub == 0, format!("subspace {vs}, subset {vsub} violations"))?;
    Ok("10000 triples, 0 triangle violations for d_S and d_subset".into())
}

fn c3_delsarte() -> Outcome {
    let mut parts = Vec::new();
    for (n, t, expect) in [(3usize, 1usize, vec![1u64, 0, 49, 14]), (4, 2, vec![1, 0, 525, 2250, 1320])] {
        let ctx = FieldCtx::new(2, n, None).map_err(e)?;
        let code = gabidulin_code(&ctx, t).map_err(e)?;
        let census = empirical_rank_distribution(&code);
        let formula = delsarte_rank_distribution(n, n - t, 2).map_err(e)?;
        let want: Vec<BigUint> = expect.iter().map(|&v| BigUint::from(v)).collect();
        ensure(census.counts == want, format!("census {:?} for n={n}", census.counts))?;
        ensure(formula.counts == census.counts, format!("formula {:?} for n={n}", formula.counts))?;
        ensure(census.total() == BigUint::from(1u64 << (n * (t + 1))), "wrong total")?;
        parts.push(format!("(2,{n},{t}) {:?} sum {}", expect, census.total()));
    }
    Ok(parts.join("; "))
}

fn c4_mrd_lifting() -> Outcome {
    let ctx = FieldCtx::new(2, 3, None).map_err(e)?;
    let code = gabidulin_code(&ctx, 1).map_err(e)?;
    let ranks: Vec<usize> = code.matrices().iter().filter(|m| !m.is_zero()).map(|m| m.rank()).collect();
    ensure(ranks.len() == 63, format!("{} nonzero members", ranks.len()))?;
    let min_rank = *ranks.iter().min().unwrap();
    ensure(min_rank == 2, format!("min rank {min_rank}"))?;
    let lifted = lift_rank_code(&code).map_err(e)?;
    ensure(lifted.ambient() == 6 && lifted.len() == 64 && lifted.constant_dim() == Some(3), "lift shape")?;
    let r = subspace_code_min_distance(&lifted, SearchLimit::default()).map_err(e)?;
    ensure(r.pairs == 2016 && r.minimum == 4, format!("{} pairs, min {}", r.pairs, r.minimum))?;
    Ok("63 nonzero members of rank >= 2 (min 2); lift (6,64,4,3)_2 min distance 4 over 2016 pairs".into())
}

fn c5_spread() -> Outcome {
    let s4 = spread(2, 2, 4).map_err(e)?;
    ensure(s4.len() == 5, format!("{} members", s4.len()))?;
    let cov = coverage(&s4).map_err(e)?;
    ensure(cov.len() == 15 && cov.values().all(|&c| c == 1), "coverage is not a partition")?;
    let r = subspace_code_min_distance(&s4, SearchLimit::default()).map_err(e)?;
    let members = s4.members();
    let all4 = (0..members.len())
        .all(|i| (i + 1..members.len()).all(|j| members[i].distance(&members[j]).unwrap() == 4));
    ensure(r.minimum == 4 && all4, "pairwise distance is not 4")?;
    let s6 = spread(2, 2, 6).map_err(e)?;
    ensure(s6.len() == 21, format!("spread(2,2,6) has {} members", s6.len()))?;
    Ok("spread(2,2,4): 5 members, 15 vectors once each, pairwise 4; spread(2,2,6): 21 members".into())
}

fn c6_shift_witness() -> Outcome {
    let f2 = FieldCtx::prime(2).map_err(e)?;
    let mut rng = ChaCha20Rng::seed_from_u64(SEED);
    let mut ok = 0;
    for _ in 0..100 {
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(n / 2 + 1..=n);
        let c = random_linear_code(&mut rng, &f2, n, k);
        if let Ok(w) = cyclic_shift_witness(&c) {
            let good = w.word.symbols().iter().any(|s| !s.is_zero())
                && c.position(&w.word).is_some()
                && c.position(&w.shifted).is_some()
                && subset_distance(&w.word, &w.shifted) == 0;
            ok += good as usize;
        }
    }
    ensure(ok == 100, format!("{ok}/100"))?;
    Ok("100/100 random codes with n <= 6, k > n/2".into())
}

fn c7_sidon_orbit() -> Outcome {
    let ctx = FieldCtx::new(2, 5, None).map_err(e)?;
    let v = sidon_search(&ctx, 2).map_err(e)?;
    ensure(sidon_check(&ctx, &v).map_err(e)?, "search result is not Sidon")?;
    let orbit = orbit_cyclic_code(&ctx, &v).map_err(e)?;
    ensure(orbit.len() == 31, format!("{} members", orbit.len()))?;
    let r = subspace_code_min_distance(&orbit, SearchLimit::default()).map_err(e)?;
    ensure(r.minimum == 2, format!("min distance {}", r.minimum))?;
    let words = span_code(&orbit, 2).map_err(e)?;
    let di = code_min_distance(&words, Metric::Insdel, SearchLimit::default()).map_err(e)?;
    ensure(di.minimum >= 2, format!("span code insdel {}", di.minimum))?;
    Ok(format!("Sidon 2-space in F32, orbit 31 members, min distance 2, span code insdel {}", di.minimum))
}

fn c8_singer_folded() -> Outcome {
    let mut parts = Vec::new();
    for (n, want, dist) in [(3usize, (7u64, 3usize, 1usize), 4usize), (4, (15, 7, 3), 8)] {
        let ctx = FieldCtx::new(2, n, None).map_err(e)?;
        let ds = singer_difference_set(&ctx).map_err(e)?;
        ensure((ds.v, ds.k, ds.lambda) == want, format!("n={n}: ({}, {}, {})", ds.v, ds.k, ds.lambda))?;
        let tr = translate_intersections(&ctx, &ds.members);
        ensure(tr.len() as u64 == ds.v - 1 && tr.iter().all(|(_, c)| *c == ds.lambda), "translate property")?;
        ensure(m_of_d(&ctx, &ds.members).map_err(e)? == ds.lambda, "m(D)")?;
        let code = evaluation_folded_code(&ctx, &ds.members).map_err(e)?;
        let lo = folded_min_distance(&code, FoldedMetric::Subset, SearchLimit::default()).map_err(e)?.minimum;
        let hi = folded_max_subset_distance(&code, SearchLimit::default()).map_err(e)?;
        ensure(lo == hi && lo == dist && dist == 2 * (ds.k - ds.lambda), format!("n={n}: min {lo} max {hi}"))?;
        parts.push(format!("n={n} {want:?} equidistant {lo}"));
    }
    let report = run_suite("thm91", SuiteConfig::default()).map_err(e)?;
    let has = |s: &str| report.findings.iter().any(|f| f.claim.contains(s));
    ensure(has("distance 2^(n-2)") && has("cardinality 2^(n-2)"), "findings missing")?;
    parts.push(format!("{} findings recorded", report.findings.len()));
    Ok(parts.join("; "))
}

fn c9_bounds() -> Outcome {
    ensure(levenshtein_bound(4, 2).map_err(e)? == BigUint::from(4u32), "levenshtein(4,2)")?;
    ensure(klo_bound(2).map_err(e)? == BigUint::from(3u32), "klo(2)")?;
    ensure(half_singleton(6, 2).map_err(e)? == 8, "half_singleton(6,2)")?;
    ensure(half_singleton(4, 3).map_err(e)? == 2, "half_singleton(4,3)")?;
    let f2 = FieldCtx::prime(2).map_err(e)?;
    let w = |b: [u32; 4]| Word::new(b.iter().map(|&x| f2.scalar(x)).collect());
    let rep = VectorCode::linear(f2.clone(), vec![w([1, 1, 0, 0]), w([0, 0, 1, 1])]).map_err(e)?;
    let ghw = generalized_hamming_weights(&rep).map_err(e)?;
    ensure(ghw == vec![2, 4], format!("ghw {ghw:?}"))?;
    ensure(ghw.iter().enumerate().all(|(i, &d)| d <= 4 - 2 + i + 1), "generalized Singleton")?;
    Ok("levenshtein(4,2)=4 klo(2)=3 half_singleton(6,2)=8 half_singleton(4,3)=2 ghw=(2,4)".into())
}

fn c10_channel() -> Outcome {
    let code = spread_channel_code().map_err(e)?;
    let d = code_min_distance(&code, Metric::Insdel, SearchLimit::default()).map_err(e)?.minimum;
    ensure(d == 6, format!("d_insdel {d}"))?;
    let run = run_trials(&code, d, ChannelSpec { insertions: 0, deletions: 2, seed: SEED }, 1000).map_err(e)?;
    let s = &run.summary;
    ensure(s.success_rate == 1.0 && s.ambiguous == 0, format!("{} ok, {} ambiguous", s.ok, s.ambiguous))?;
    Ok(format!("d_insdel 6, 1000 trials with 2 deletions: success rate {}, 0 ambiguous", s.success_rate))
}

/// Runs a fixed pipeline in `dir` and returns every file it wrote, sorted by name.
fn pipeline(dir: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let bin = env!("CARGO_BIN_EXE_smc");
    let seed = SEED.to_string();
    let steps: Vec<Vec<&str>> = vec![
        vec!["construct", "gabidulin", "--n", "3", "--t", "1", "--out", "gab.json"],
        vec!["construct", "lifted-mrd", "--input", "gab.json", "--out", "lift.json"],
        vec!["construct", "spread", "--k", "2", "--n", "4", "--out", "spread.json"],
        vec!["construct", "all-vectors", "--input", "spread.json", "--l", "3", "--out", "av.json"],
        vec!["construct", "singer-ds", "--n", "4", "--out", "ds.json"],
        vec!["construct", "folded-eval", "--input", "ds.json", "--out", "folded.json"],
        vec!["metric", "lift.json", "--metric", "subspace", "--out", "lift.metric.json"],
        vec!["bounds", "--n", "6", "--k", "2", "--d", "4", "--out", "bounds.json"],
        vec!["--format", "csv", "verify", "--suite", "all", "--samples", "2000", "--trials", "200", "--out", "verify.csv"],
        vec!["--seed", &seed, "simulate", "av.json", "--del", "2", "--trials", "1000", "--out", "sim.csv"],
    ];
    for args in &steps {
        let out = Command::new(bin).args(args).current_dir(dir).output().map_err(e)?;
        if !out.status.success() {
            return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
        }
    }
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(e)? {
        let entry = entry.map_err(e)?;
        files.push((entry.file_name().to_string_lossy().into_owned(), std::fs::read(entry.path()).map_err(e)?));
    }
    files.sort();
    Ok(files)
}

fn c11_determinism() -> Outcome {
    let a = tempfile::tempdir().map_err(e)?;
    let b = tempfile::tempdir().map_err(e)?;
    let fa = pipeline(a.path())?;
    let fb = pipeline(b.path())?;
    let names: Vec<&str> = fa.iter().map(|(n, _)| n.as_str()).collect();
    ensure(fa.len() == fb.len(), "different file sets")?;
    for ((na, ba), (nb, bb)) in fa.iter().zip(&fb) {
        ensure(na == nb && ba == bb, format!("{na} differs"))?;
    }
    ensure(names.iter().filter(|n| n.ends_with(".manifest.json")).count() == 10, "missing manifests")?;
    Ok(format!("{} files byte-identical across two runs in separate directories", fa.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("metric chain", 10, c1_metric_chain),
        ("pseudometric axioms", 10, c2_pseudometric),
        ("Delsarte cross-check", 30, c3_delsarte),
        ("MRD and lifting", 30, c4_mrd_lifting),
        ("spread", 10, c5_spread),
        ("cyclic shift witness", 30, c6_shift_witness),
        ("Sidon orbit", 60, c7_sidon_orbit),
        ("Singer folded code", 30, c8_singer_folded),
        ("bounds table", 5, c9_bounds),
        ("channel demonstration", 60, c10_channel),
        ("determinism", 120, c11_determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let late = took > Duration::from_secs(*limit);
        let (status, detail) = match (&result, late) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over the {limit} s limit; {d}")),
            (Err(m), _) => ("FAIL", m.clone()),
        };
        failed += (status == "FAIL") as usize;
        println!("{status} {:>2} {name} [{:.2} s] {detail}", i + 1, took.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
