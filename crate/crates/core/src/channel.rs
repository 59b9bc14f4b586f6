//! Seeded insertion/deletion channel and an exhaustive nearest-codeword
//! decoder under the insdel distance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{insdel_distance, VectorCode, Word};

/// Name of the generator driving the channel, recorded in summaries.
pub const PRNG: &str = "ChaCha20Rng (rand_chacha 0.3, seed_from_u64)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub insertions: usize,
    pub deletions: usize,
    pub seed: u64,
}

/// Deletions at uniform positions, then insertions of uniform symbols at
/// uniform positions.
pub fn apply_channel(ctx: &crate::field::FieldCtx, w: &Word, spec: ChannelSpec) -> Result<Word> {
    if spec.deletions > w.len() {
        return Err(Error::TooManyDeletions { deletions: spec.deletions, len: w.len() });
    }
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    let mut s = w.symbols().to_vec();
    for _ in 0..spec.deletions {
        let i = rng.gen_range(0..s.len());
        s.remove(i);
    }
    for _ in 0..spec.insertions {
        let i = rng.gen_range(0..=s.len());
        let sym = ctx.element_at(rng.gen_range(0..ctx.order()));
        s.insert(i, sym);
    }
    Ok(Word::new(s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded {
    Unique { index: usize, distance: usize },
    Ambiguous { distance: usize, candidates: usize },
}

/// The unique codeword at minimum insdel distance, or `Ambiguous` on a tie.
pub fn decode_nearest(c: &VectorCode, received: &Word) -> Decoded {
    let mut best = usize::MAX;
    let mut hits = Vec::new();
    for (i, w) in c.codewords().iter().enumerate() {
        let d = insdel_distance(w, received);
        if d < best {
            best = d;
            hits.clear();
        }
        if d == best {
            hits.push(i);
        }
    }
    match hits.as_slice() {
        [i] => Decoded::Unique { index: *i, distance: best },
        _ => Decoded::Ambiguous { distance: best, candidates: hits.len() },
    }
}

/// Largest `e` with `2e < d`.
pub fn correction_capability(d_insdel: usize) -> usize {
    d_insdel.div_ceil(2).saturating_sub(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Ok,
    Wrong,
    Ambiguous,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Ok => "ok",
            Outcome::Wrong => "wrong",
            Outcome::Ambiguous => "ambiguous",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub ins: usize,
    pub del: usize,
    pub result: Outcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub trials: u64,
    pub ok: u64,
    pub wrong: u64,
    pub ambiguous: u64,
    pub success_rate: f64,
    pub d_insdel: usize,
    pub capability: usize,
    pub within_guarantee: bool,
    pub insertions: usize,
    pub deletions: usize,
    pub seed: u64,
    pub prng: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialRun {
    pub records: Vec<TrialRecord>,
    pub summary: TrialSummary,
}

impl TrialRun {
    pub const CSV_HEADER: &'static str = "trial,seed,ins,del,result";

    pub fn transcript_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&format!("{},{},{},{},{}\n", r.trial, r.seed, r.ins, r.del, r.result.as_str()));
        }
        out
    }
}

/// Trial `i` sends codeword `i mod |C|` through the channel seeded with
/// `seed + i` and decodes the result.
pub fn run_trials(c: &VectorCode, d_insdel: usize, spec: ChannelSpec, trials: u64) -> Result<TrialRun> {
    if c.is_empty() {
        return Err(Error::TooFewCodewords(0));
    }
    if spec.deletions > c.length() {
        return Err(Error::TooManyDeletions { deletions: spec.deletions, len: c.length() });
    }
    let one = |t: u64| -> TrialRecord {
        let seed = spec.seed.wrapping_add(t);
        let sent = (t % c.len() as u64) as usize;
        let received = apply_channel(c.ctx(), &c.codewords()[sent], ChannelSpec { seed, ..spec })
            .expect("deletions checked above");
        let result = match decode_nearest(c, &received) {
            Decoded::Unique { index, .. } if index == sent => Outcome::Ok,
            Decoded::Unique { .. } => Outcome::Wrong,
            Decoded::Ambiguous { .. } => Outcome::Ambiguous,
        };
        TrialRecord { trial: t, seed, ins: spec.insertions, del: spec.deletions, result }
    };
    #[cfg(feature = "parallel")]
    let records: Vec<TrialRecord> = {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let records: Vec<TrialRecord> = (0..trials).map(one).collect();
    let count = |o: Outcome| records.iter().filter(|r| r.result == o).count() as u64;
    let ok = count(Outcome::Ok);
    let capability = correction_capability(d_insdel);
    let summary = TrialSummary {
        trials,
        ok,
        wrong: count(Outcome::Wrong),
        ambiguous: count(Outcome::Ambiguous),
        success_rate: if trials == 0 { 1.0 } else { ok as f64 / trials as f64 },
        d_insdel,
        capability,
        within_guarantee: spec.insertions + spec.deletions <= capability,
        insertions: spec.insertions,
        deletions: spec.deletions,
        seed: spec.seed,
        prng: PRNG.to_string(),
    };
    Ok(TrialRun { records, summary })
}
