use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use subspace_metric::bounds::{bounds_csv, bounds_table, verify_bounds};
use subspace_metric::channel::{run_trials, ChannelSpec};
use subspace_metric::derived::{
    all_vectors_code, evaluation_folded_code, folded_code_from_vector_code, folded_min_distance, partial_span_code,
    singer_difference_set, span_code, FoldedMetric,
};
use subspace_metric::io::CodeFile;
use subspace_metric::metrics::{code_min_distance, Metric, MetricReport, SearchLimit, VectorCode};
use subspace_metric::rank_metric::{gabidulin_code, rank_distance_report, RankCode};
use subspace_metric::subspace_codes::{
    block_enlarged_family, lift_rank_code, orbit_cyclic_code, sidon_search, spread, verify_declared, SubspaceCode,
};
use subspace_metric::suites::{run_suites, SuiteConfig, SuiteReport};
use subspace_metric::{bignum, Error, FieldCtx, Provenance};

use crate::manifest::{artifact, manifest_path, sibling, write_atomic, RunManifest};
use crate::{
    BoundsArgs, Cli, Command, ConstructArgs, FoldArgs, Format, Kind, MetricArgs, SimulateArgs, VerifyArgs,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Verification(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Verification(s) => write!(f, "verification failed: {s}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::PropertyViolation(s) => CliError::Verification(s),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// What a command produced, before it is printed or written.
#[derive(Default)]
struct Output {
    primary: String,
    /// Extra files written next to `--out`, keyed by suffix.
    secondary: Vec<(&'static str, String)>,
    /// Printed to standard output when `--out` is given.
    stdout_with_out: Option<String>,
    inputs: Vec<PathBuf>,
    modulus: Option<Vec<u32>>,
    failed: Option<String>,
}

pub fn run(cli: &Cli, argv: Vec<String>) -> CliResult<ExitCode> {
    let limit = SearchLimit::new(cli.force);
    let out = match &cli.command {
        Command::Construct(a) => construct(a, limit)?,
        Command::Metric(a) => metric(a, cli.format, limit)?,
        Command::Verify(a) => verify(a, cli.format, cli.seed)?,
        Command::Bounds(a) => bounds(a, cli.format, limit)?,
        Command::Simulate(a) => simulate(a, cli.format, cli.seed, cli.out.is_some(), limit)?,
        Command::Fold(a) => fold(a)?,
    };
    match &cli.out {
        Some(path) => {
            write_atomic(path, out.primary.as_bytes())?;
            let mut outputs = vec![artifact(path)?];
            for (suffix, body) in &out.secondary {
                let p = sibling(path, suffix);
                write_atomic(&p, body.as_bytes())?;
                outputs.push(artifact(&p)?);
            }
            let inputs = out.inputs.iter().map(|p| artifact(p)).collect::<std::io::Result<Vec<_>>>()?;
            let full = serde_json::to_value(cli).expect("plain data");
            let m = RunManifest {
                tool: "smc",
                version: env!("CARGO_PKG_VERSION"),
                command: command_name(&cli.command).into(),
                argv,
                params: full,
                modulus: out.modulus.clone(),
                seed: cli.seed,
                inputs,
                outputs,
            };
            let mut text = serde_json::to_string_pretty(&m).expect("plain data");
            text.push('\n');
            write_atomic(&manifest_path(path), text.as_bytes())?;
            if let Some(s) = &out.stdout_with_out {
                print!("{s}");
            }
        }
        None => print!("{}", out.primary),
    }
    match out.failed {
        Some(msg) => Err(CliError::Verification(msg)),
        None => Ok(ExitCode::SUCCESS),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Construct(_) => "construct",
        Command::Metric(_) => "metric",
        Command::Verify(_) => "verify",
        Command::Bounds(_) => "bounds",
        Command::Simulate(_) => "simulate",
        Command::Fold(_) => "fold",
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn load(path: &Path) -> CliResult<CodeFile> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    CodeFile::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn need<T: Copy>(v: Option<T>, name: &str, kind: Kind) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!(
        "construct {} needs --{name}",
        kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    )))
}

fn load_subspace(path: &Option<PathBuf>) -> CliResult<(SubspaceCode, PathBuf)> {
    let path = path.clone().ok_or_else(|| CliError::Usage("this construction needs --input".into()))?;
    match load(&path)? {
        CodeFile::Subspace(c) => Ok((c, path)),
        other => Err(CliError::Usage(format!("expected a subspace_code, found {}", other.kind()))),
    }
}

fn load_vector(path: &Path) -> CliResult<VectorCode> {
    match load(path)? {
        CodeFile::Vector(c) => Ok(c),
        other => Err(CliError::Usage(format!("expected a vector_code, found {}", other.kind()))),
    }
}

fn add(p: Option<Provenance>, key: &str, v: impl Into<Value>) -> Provenance {
    p.unwrap_or_default().with(key, v)
}

/// Exhaustive distances stored with derived word codes.
fn word_code_distances(c: &VectorCode, limit: SearchLimit) -> CliResult<(MetricReport, MetricReport, MetricReport)> {
    Ok((
        code_min_distance(c, Metric::Subspace, limit)?,
        code_min_distance(c, Metric::Subset, limit)?,
        code_min_distance(c, Metric::Insdel, limit)?,
    ))
}

fn record_distances(mut c: VectorCode, limit: SearchLimit, floor: usize, what: &str) -> CliResult<VectorCode> {
    if c.len() < 2 {
        return Ok(c);
    }
    let (ds, dsub, dins) = word_code_distances(&c, limit)?;
    let measured = match what {
        "insdel" => dins.minimum,
        _ => ds.minimum,
    };
    if measured < floor {
        return Err(CliError::Verification(format!("{what} distance {measured} is below the guarantee {floor}")));
    }
    c.provenance = Some(
        add(c.provenance.take(), "verified_subspace_distance", ds.minimum)
            .with("verified_subset_distance", dsub.minimum)
            .with("verified_insdel_distance", dins.minimum),
    );
    Ok(c)
}

fn verified_subspace(c: SubspaceCode, limit: SearchLimit) -> CliResult<SubspaceCode> {
    if c.len() < 2 {
        return Ok(c);
    }
    let r = verify_declared(&c, limit)?;
    let p = add(c.provenance.clone(), "verified_distance", r.minimum);
    Ok(c.with_provenance(p))
}

fn verified_rank(mut c: RankCode, limit: SearchLimit) -> CliResult<RankCode> {
    let r = rank_distance_report(&c, limit)?;
    if r.minimum < c.declared_distance() {
        return Err(CliError::Verification(format!(
            "rank distance {} below declared {}",
            r.minimum,
            c.declared_distance()
        )));
    }
    c.provenance = Some(add(c.provenance.take(), "verified_distance", r.minimum));
    Ok(c)
}

fn construct(a: &ConstructArgs, limit: SearchLimit) -> CliResult<Output> {
    let mut inputs = Vec::new();
    let field = |n: usize| FieldCtx::new(a.q, n, a.modulus.clone());
    let file = match a.kind {
        Kind::Gabidulin => {
            let ctx = field(need(a.n, "n", a.kind)?)?;
            CodeFile::Rank(verified_rank(gabidulin_code(&ctx, need(a.t, "t", a.kind)?)?, limit)?)
        }
        Kind::LiftedMrd => {
            let rc = match &a.input {
                Some(p) => {
                    inputs.push(p.clone());
                    match load(p)? {
                        CodeFile::Rank(rc) => rc,
                        other => return Err(CliError::Usage(format!("expected a rank_code, found {}", other.kind()))),
                    }
                }
                None => gabidulin_code(&field(need(a.n, "n", a.kind)?)?, need(a.t, "t", a.kind)?)?,
            };
            CodeFile::Subspace(verified_subspace(lift_rank_code(&rc)?, limit)?)
        }
        Kind::Spread => {
            let c = spread(a.q, need(a.k, "k", a.kind)?, need(a.n, "n", a.kind)?)?;
            CodeFile::Subspace(verified_subspace(c, limit)?)
        }
        Kind::SidonOrbit => {
            let ctx = field(need(a.n, "n", a.kind)?)?;
            let v = sidon_search(&ctx, need(a.k, "k", a.kind)?)?;
            CodeFile::Subspace(verified_subspace(orbit_cyclic_code(&ctx, &v)?, limit)?)
        }
        Kind::BlockEnlarged => {
            let (n, t) = (need(a.n, "n", a.kind)?, need(a.t, "t", a.kind)?);
            let fam = block_enlarged_family(a.q, n, t, limit)?;
            let target = 2 * (n - t);
            let subset_ok = fam.same_a_subset_min.is_none_or(|d| d >= target)
                && fam.cross_a_bound >= target
                && fam.subset_report.as_ref().is_none_or(|r| r.minimum >= target);
            if !subset_ok {
                return Err(CliError::Verification("block family subset distance below 2(n - t)".into()));
            }
            let mut words = fam.words.clone();
            let p = add(words.provenance.take(), "formula_cardinality", bignum::rational_to_json(&fam.formula))
                .with("achieved_cardinality", fam.words.len())
                .with("h2_count", fam.h2_elements.len())
                .with("h1_count", fam.h1_count)
                .with("a_count", fam.a_count)
                .with("distinct_row_spaces", fam.spans.len())
                .with("same_a_subset_min", json!(fam.same_a_subset_min))
                .with("cross_a_subset_bound", fam.cross_a_bound)
                .with("exhaustive_subset_min", json!(fam.subset_report.as_ref().map(|r| r.minimum)))
                .with("exhaustive_subspace_min", json!(fam.subspace_report.as_ref().map(|r| r.minimum)))
                .with(
                    "finding",
                    "rows of (G, GA) span the same space as (I, A): words sharing A are at subspace distance 0",
                );
            CodeFile::Vector(words.with_provenance(p))
        }
        Kind::Span => {
            let (sc, p) = load_subspace(&a.input)?;
            inputs.push(p);
            let l = a.l.unwrap_or_else(|| sc.members().iter().map(|m| m.dim()).max().unwrap_or(1));
            CodeFile::Vector(record_distances(span_code(&sc, l)?, limit, sc.declared_distance(), "subspace")?)
        }
        Kind::PartialSpan => {
            let (sc, p) = load_subspace(&a.input)?;
            inputs.push(p);
            let l = need(a.l, "l", a.kind)?;
            let k = sc.constant_dim().unwrap_or(0);
            let t = k.saturating_sub(sc.declared_distance() / 2);
            let c = partial_span_code(&sc, l)?;
            CodeFile::Vector(record_distances(c, limit, 2 * l.saturating_sub(t), "subspace")?)
        }
        Kind::AllVectors => {
            let (sc, p) = load_subspace(&a.input)?;
            inputs.push(p);
            let av = all_vectors_code(&sc, need(a.l, "l", a.kind)?)?;
            CodeFile::Vector(record_distances(av.code, limit, av.guarantee, "insdel")?)
        }
        Kind::FoldedEval => {
            let (ctx, d) = match &a.input {
                Some(p) => {
                    inputs.push(p.clone());
                    match load(p)? {
                        CodeFile::DifferenceSet(ds) => (ds.ctx, ds.members),
                        other => {
                            return Err(CliError::Usage(format!("expected a difference_set, found {}", other.kind())))
                        }
                    }
                }
                None => {
                    let ctx = FieldCtx::new(2, need(a.n, "n", a.kind)?, a.modulus.clone())?;
                    let ds = singer_difference_set(&ctx)?;
                    (ctx, ds.members)
                }
            };
            let mut code = evaluation_folded_code(&ctx, &d)?;
            if code.len() >= 2 {
                let r = folded_min_distance(&code, FoldedMetric::Subset, limit)?;
                code.provenance = Some(add(code.provenance.take(), "verified_subset_distance", r.minimum));
            }
            CodeFile::Folded(code)
        }
        Kind::SingerDs => {
            let ctx = FieldCtx::new(2, need(a.n, "n", a.kind)?, a.modulus.clone())?;
            CodeFile::DifferenceSet(singer_difference_set(&ctx)?)
        }
    };
    let text = file.to_json();
    if CodeFile::from_json(&text)? != file {
        return Err(CliError::Verification("written file does not read back to the same code".into()));
    }
    Ok(Output { primary: text, inputs, modulus: file_modulus(&file), ..Default::default() })
}

fn file_modulus(f: &CodeFile) -> Option<Vec<u32>> {
    match f {
        CodeFile::Vector(c) => Some(c.ctx().modulus().to_vec()),
        CodeFile::Rank(c) => Some(c.field().modulus().to_vec()),
        CodeFile::Folded(c) => Some(c.ctx.modulus().to_vec()),
        CodeFile::DifferenceSet(d) => Some(d.ctx.modulus().to_vec()),
        CodeFile::Subspace(_) => None,
    }
}

fn report_output(r: &MetricReport, format: Format) -> String {
    match format {
        Format::Json => pretty(r),
        Format::Csv => format!("{}\n{}\n", MetricReport::CSV_HEADER, r.to_csv_record()),
    }
}

fn metric(a: &MetricArgs, format: Format, limit: SearchLimit) -> CliResult<Output> {
    let file = load(&a.code)?;
    let name = a.metric.as_str();
    let wrong = |kind: &str| CliError::Usage(format!("metric {name} does not apply to a {kind}"));
    let report = match &file {
        CodeFile::Vector(c) => code_min_distance(c, Metric::parse(name, a.block_len)?, limit)?,
        CodeFile::Subspace(c) if name == "subspace" && a.block_len.is_none() => {
            subspace_metric::subspace_codes::subspace_code_min_distance(c, limit)?
        }
        CodeFile::Rank(c) if name == "rank" && a.block_len.is_none() => rank_distance_report(c, limit)?,
        CodeFile::Folded(c) if a.block_len.is_none() && (name == "subset" || name == "subspace") => {
            let m = if name == "subset" { FoldedMetric::Subset } else { FoldedMetric::Subspace };
            folded_min_distance(c, m, limit)?
        }
        other => return Err(wrong(other.kind())),
    };
    Ok(Output {
        primary: report_output(&report, format),
        inputs: vec![a.code.clone()],
        modulus: file_modulus(&file),
        ..Default::default()
    })
}

fn verify(a: &VerifyArgs, format: Format, seed: u64) -> CliResult<Output> {
    let cfg = SuiteConfig { seed, samples: a.samples, codes: a.codes, trials: a.trials };
    let reports = run_suites(&a.suite, cfg)?;
    let passed = reports.iter().all(|r| r.passed);
    let primary = match format {
        Format::Json => pretty(&json!({"passed": passed, "suites": reports})),
        Format::Csv => {
            let mut s = format!("{}\n", SuiteReport::CSV_HEADER);
            for r in &reports {
                for line in r.csv_records() {
                    s.push_str(&line);
                    s.push('\n');
                }
            }
            s
        }
    };
    for r in &reports {
        eprintln!("{} {} ({} ms)", if r.passed { "PASS" } else { "FAIL" }, r.suite, r.elapsed_ms);
        for f in &r.findings {
            eprintln!("  finding: {}: claimed {} measured {}", f.claim, f.claimed, f.measured);
        }
    }
    let failed = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.suite.clone())
        .collect::<Vec<_>>();
    Ok(Output {
        primary,
        failed: (!failed.is_empty()).then(|| failed.join(", ")),
        ..Default::default()
    })
}

fn bounds(a: &BoundsArgs, format: Format, limit: SearchLimit) -> CliResult<Output> {
    let (reports, inputs, modulus) = match &a.code {
        Some(p) => {
            let c = load_vector(p)?;
            let m = Some(c.ctx().modulus().to_vec());
            (verify_bounds(&c, limit)?, vec![p.clone()], m)
        }
        None => {
            let n = a.n.ok_or_else(|| CliError::Usage("bounds needs --n or --code".into()))?;
            (bounds_table(n, a.q, a.d, a.k)?, Vec::new(), None)
        }
    };
    let primary = match format {
        Format::Json => pretty(&reports),
        Format::Csv => bounds_csv(&reports),
    };
    Ok(Output { primary, inputs, modulus, ..Default::default() })
}

fn simulate(a: &SimulateArgs, format: Format, seed: u64, has_out: bool, limit: SearchLimit) -> CliResult<Output> {
    let c = load_vector(&a.code)?;
    let d = code_min_distance(&c, Metric::Insdel, limit)?.minimum;
    let spec = ChannelSpec { insertions: a.insertions, deletions: a.deletions, seed };
    let run = run_trials(&c, d, spec, a.trials)?;
    let summary = pretty(&run.summary);
    let transcript = run.transcript_csv();
    let within_failed = run.summary.within_guarantee && run.summary.ok != run.summary.trials;
    let (primary, secondary, stdout_with_out) = match (has_out, format) {
        (true, _) => (transcript, vec![(".summary.json", summary.clone())], Some(summary)),
        (false, Format::Csv) => (transcript, Vec::new(), None),
        (false, Format::Json) => (summary, Vec::new(), None),
    };
    Ok(Output {
        primary,
        secondary,
        stdout_with_out,
        inputs: vec![a.code.clone()],
        modulus: Some(c.ctx().modulus().to_vec()),
        failed: within_failed.then(|| "decoding failed inside the correction capability".into()),
    })
}

fn fold(a: &FoldArgs) -> CliResult<Output> {
    let c = load_vector(&a.code)?;
    let f = CodeFile::Folded(folded_code_from_vector_code(&c, a.s)?);
    Ok(Output {
        primary: f.to_json(),
        inputs: vec![a.code.clone()],
        modulus: file_modulus(&f),
        ..Default::default()
    })
}
