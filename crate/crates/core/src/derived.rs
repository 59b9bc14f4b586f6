//! Words over `F_{q^N}` read off from subspace codes, Singer difference sets
//! and the evaluation folded code built on them.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linalg::Subspace;
use crate::metrics::{
    fold, folded_subset_distance, folded_subspace_distance, min_over_pairs, FoldedWord, MetricReport, SearchLimit,
    VectorCode, Word,
};
use crate::provenance::Provenance;
use crate::subspace_codes::SubspaceCode;

fn vector_symbol(ctx: &FieldCtx, v: &[u32]) -> FieldElement {
    ctx.element(v.to_vec()).expect("ambient matches the field degree")
}

/// Basis rows, then `b_1 + b_j` for `j = 2, 3, ...` (cycling) until `l` symbols.
fn span_word(ctx: &FieldCtx, s: &Subspace, l: usize) -> Word {
    let basis = s.basis().row_vecs();
    let mut out: Vec<FieldElement> = basis.iter().take(l).map(|b| vector_symbol(ctx, b)).collect();
    let pads: Vec<FieldElement> = match basis.len() {
        0 => vec![ctx.zero()],
        1 => vec![vector_symbol(ctx, &basis[0])],
        _ => {
            let b1 = vector_symbol(ctx, &basis[0]);
            basis[1..].iter().map(|b| ctx.add(&b1, &vector_symbol(ctx, b))).collect()
        }
    };
    let mut i = 0;
    while out.len() < l {
        out.push(pads[i % pads.len()].clone());
        i += 1;
    }
    Word::new(out)
}

fn alphabet(sc: &SubspaceCode) -> Result<FieldCtx> {
    FieldCtx::new(sc.q(), sc.ambient(), None)
}

/// One length-`l` word per member whose symbols span that member.
pub fn span_code(sc: &SubspaceCode, l: usize) -> Result<VectorCode> {
    let max_dim = sc.members().iter().map(|m| m.dim()).max().unwrap_or(0);
    if l < max_dim || l == 0 {
        return Err(Error::LengthTooShort { l, dim: max_dim });
    }
    let ctx = alphabet(sc)?;
    let words = sc.members().iter().map(|m| span_word(&ctx, m, l)).collect();
    let p = Provenance::new("span")
        .with("l", l)
        .with("source", source_name(sc))
        .with("declared_subspace_distance", sc.declared_distance());
    Ok(VectorCode::new(ctx.clone(), l, words)?.with_provenance(p))
}

fn source_name(sc: &SubspaceCode) -> String {
    sc.provenance.as_ref().map_or_else(|| "subspace_code".into(), |p| p.construction.clone())
}

fn constant_dim(sc: &SubspaceCode) -> Result<usize> {
    sc.constant_dim()
        .ok_or_else(|| Error::InvalidSubspace("code is not constant dimension".into()))
}

/// The first `l` basis rows of each member; `t = k - d/2` from the declared distance.
pub fn partial_span_code(sc: &SubspaceCode, l: usize) -> Result<VectorCode> {
    let k = constant_dim(sc)?;
    let t = k.saturating_sub(sc.declared_distance() / 2);
    if l < t + 1 || l > k {
        return Err(Error::LengthOutOfRange { l, range: format!("{}..={k}", t + 1) });
    }
    let ctx = alphabet(sc)?;
    let words = sc
        .members()
        .iter()
        .map(|m| Word::new(m.basis().row_vecs().iter().take(l).map(|b| vector_symbol(&ctx, b)).collect()))
        .collect();
    let p = Provenance::new("partial-span").with("l", l).with("t", t).with("source", source_name(sc));
    Ok(VectorCode::new(ctx.clone(), l, words)?.with_provenance(p))
}

/// Word code from all vectors of each member, with its guaranteed insdel distance.
#[derive(Clone, Debug, PartialEq)]
pub struct AllVectorsCode {
    pub code: VectorCode,
    /// `2 (l - q^{k - d/2})`.
    pub guarantee: usize,
}

/// Per member, the first `l` vectors with nonzero vectors in lexicographic
/// order and the zero vector last.
pub fn all_vectors_code(sc: &SubspaceCode, l: usize) -> Result<AllVectorsCode> {
    let k = constant_dim(sc)?;
    let half = sc.declared_distance() / 2;
    if half > k {
        return Err(Error::ParameterOutOfRange("declared distance exceeds 2k".into()));
    }
    let q = sc.q() as usize;
    let floor = q.pow((k - half) as u32);
    let top = q.pow(k as u32);
    if l <= floor || l > top {
        return Err(Error::LengthOutOfRange { l, range: format!("{}..={top}", floor + 1) });
    }
    let ctx = alphabet(sc)?;
    let mut words = Vec::with_capacity(sc.len());
    for m in sc.members() {
        let mut vs = m.vectors()?;
        let zero = vs.remove(0);
        vs.push(zero);
        words.push(Word::new(vs.iter().take(l).map(|v| vector_symbol(&ctx, v)).collect()));
    }
    let guarantee = 2 * (l - floor);
    let p = Provenance::new("all-vectors")
        .with("l", l)
        .with("order", "nonzero lexicographic, zero last")
        .with("guarantee", guarantee)
        .with("source", source_name(sc));
    Ok(AllVectorsCode { code: VectorCode::new(ctx.clone(), l, words)?.with_provenance(p), guarantee })
}

/// A `(v, k, lambda)` difference set in `F_{q^n}^*`.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceSet {
    pub ctx: FieldCtx,
    pub members: Vec<FieldElement>,
    pub v: u64,
    pub k: usize,
    pub lambda: usize,
}

/// `|yD ∩ D|` for every nonzero `y` other than 1, in element order.
pub fn translate_intersections(ctx: &FieldCtx, d: &[FieldElement]) -> Vec<(FieldElement, usize)> {
    let set: HashSet<&FieldElement> = d.iter().collect();
    let one = ctx.one();
    ctx.nonzero_elements()
        .filter(|y| *y != one)
        .map(|y| {
            let hits = d.iter().filter(|x| set.contains(&ctx.mul(&y, x))).count();
            (y, hits)
        })
        .collect()
}

/// The common value of `|yD ∩ D|` over `y != 1`, if there is one.
pub fn difference_set_lambda(ctx: &FieldCtx, d: &[FieldElement]) -> Option<usize> {
    let counts = translate_intersections(ctx, d);
    let first = counts.first()?.1;
    counts.iter().all(|(_, c)| *c == first).then_some(first)
}

impl DifferenceSet {
    /// Validates membership and the difference-set property exhaustively.
    pub fn new(ctx: FieldCtx, members: Vec<FieldElement>) -> Result<Self> {
        check_nonzero_set(&ctx, &members)?;
        let lambda = difference_set_lambda(&ctx, &members)
            .ok_or_else(|| Error::PropertyViolation("translates meet the set unevenly".into()))?;
        Ok(DifferenceSet { v: ctx.order() - 1, k: members.len(), lambda, ctx, members })
    }
}

fn check_nonzero_set(ctx: &FieldCtx, d: &[FieldElement]) -> Result<()> {
    if d.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut seen = HashSet::new();
    for (i, x) in d.iter().enumerate() {
        if !ctx.contains(x) || x.is_zero() {
            return Err(Error::InvalidElement(format!("{x} is not a nonzero field element")));
        }
        if !seen.insert(x) {
            return Err(Error::DuplicateCodeword(i));
        }
    }
    Ok(())
}

/// Nonzero trace-zero elements of `F_{2^n}`.
pub fn singer_difference_set(ctx: &FieldCtx) -> Result<DifferenceSet> {
    if ctx.q() != 2 {
        return Err(Error::ParameterOutOfRange(format!("Singer sets need q = 2, got {}", ctx.q())));
    }
    if ctx.n() < 3 {
        return Err(Error::ParameterTooSmall(format!("n = {} must be at least 3", ctx.n())));
    }
    let members: Vec<FieldElement> = ctx.nonzero_elements().filter(|x| ctx.trace(x) == 0).collect();
    let ds = DifferenceSet::new(ctx.clone(), members)?;
    let n = ctx.n() as u32;
    if ds.k != (1 << (n - 1)) - 1 || ds.lambda != (1 << (n - 2)) - 1 {
        return Err(Error::PropertyViolation(format!(
            "trace-zero set has parameters ({}, {}, {})",
            ds.v, ds.k, ds.lambda
        )));
    }
    Ok(ds)
}

/// `max |yD ∩ D|` over nonzero `y != 1`.
pub fn m_of_d(ctx: &FieldCtx, d: &[FieldElement]) -> Result<usize> {
    check_nonzero_set(ctx, d)?;
    Ok(translate_intersections(ctx, d).into_iter().map(|(_, c)| c).max().unwrap_or(0))
}

/// Words made of blocks; every block has `block_len` symbols of the field.
#[derive(Clone, Debug, PartialEq)]
pub struct FoldedCode {
    pub ctx: FieldCtx,
    pub block_len: usize,
    pub codewords: Vec<FoldedWord>,
    pub provenance: Option<Provenance>,
}

impl FoldedCode {
    pub fn new(ctx: FieldCtx, block_len: usize, codewords: Vec<FoldedWord>) -> Result<Self> {
        let mut seen = HashSet::new();
        let blocks = codewords.first().map_or(0, |w| w.blocks.len());
        for (i, w) in codewords.iter().enumerate() {
            if w.block_len != block_len || w.blocks.iter().any(|b| b.len() != block_len) {
                return Err(Error::LengthMismatch { expected: block_len, found: w.block_len });
            }
            if w.blocks.len() != blocks {
                return Err(Error::LengthMismatch { expected: blocks, found: w.blocks.len() });
            }
            if let Some(s) = w.blocks.iter().flatten().find(|s| !ctx.contains(s)) {
                return Err(Error::InvalidElement(format!("{s} is not in the alphabet field")));
            }
            if !seen.insert(w) {
                return Err(Error::DuplicateCodeword(i));
            }
        }
        Ok(FoldedCode { ctx, block_len, codewords, provenance: None })
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Number of blocks per codeword.
    pub fn blocks(&self) -> usize {
        self.codewords.first().map_or(0, |w| w.blocks.len())
    }
}

/// `(w x_1, ..., w x_D)` for every nonzero `w`, one single-symbol block per coordinate.
pub fn evaluation_folded_code(ctx: &FieldCtx, d: &[FieldElement]) -> Result<FoldedCode> {
    check_nonzero_set(ctx, d)?;
    let mut seen = HashSet::new();
    let mut words = Vec::new();
    for w in ctx.nonzero_elements() {
        let word = FoldedWord { block_len: 1, blocks: d.iter().map(|x| vec![ctx.mul(&w, x)]).collect() };
        if seen.insert(word.clone()) {
            words.push(word);
        }
    }
    let p = Provenance::new("folded-eval")
        .with("q", ctx.q())
        .with("n", ctx.n())
        .with("d", serde_json::to_value(d).expect("plain data"));
    Ok(FoldedCode::new(ctx.clone(), 1, words)?.with_provenance(p))
}

/// Folds every codeword into blocks of `s` symbols.
pub fn folded_code_from_vector_code(c: &VectorCode, s: usize) -> Result<FoldedCode> {
    let words = c.codewords().iter().map(|w| fold(c.ctx(), w, s)).collect::<Result<Vec<_>>>()?;
    let p = Provenance::new("fold").with("s", s).with("length", c.length());
    Ok(FoldedCode::new(c.ctx().clone(), s, words)?.with_provenance(p))
}

/// Which block distance a folded sweep uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FoldedMetric {
    Subset,
    Subspace,
}

pub fn folded_min_distance(c: &FoldedCode, metric: FoldedMetric, limit: SearchLimit) -> Result<MetricReport> {
    let w = &c.codewords;
    match metric {
        FoldedMetric::Subset => min_over_pairs(w.len(), limit, "folded_subset", |i, j| folded_subset_distance(&w[i], &w[j])),
        FoldedMetric::Subspace => min_over_pairs(w.len(), limit, "folded_subspace", |i, j| {
            folded_subspace_distance(&c.ctx, &w[i], &w[j])
        }),
    }
}

/// Largest pairwise folded subset distance.
pub fn folded_max_subset_distance(c: &FoldedCode, limit: SearchLimit) -> Result<usize> {
    let w = &c.codewords;
    let spectrum = crate::metrics::distance_spectrum(w.len(), limit, |i, j| folded_subset_distance(&w[i], &w[j]))?;
    Ok(spectrum.keys().next_back().copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::enumerate_subspaces;
    use crate::metrics::{code_min_distance, insdel_distance, subset_distance, Metric};
    use crate::rank_metric::gabidulin_code;
    use crate::subspace_codes::{lift_rank_code, orbit_cyclic_code, sidon_search, spread};

    fn gf8() -> FieldCtx {
        FieldCtx::new(2, 3, Some(vec![1, 1, 0, 1])).unwrap()
    }

    /// Span-code pairs never beat the subspace distance of their sources.
    fn assert_subset_dominates(sc: &SubspaceCode, c: &VectorCode) {
        let w = c.codewords();
        for i in 0..w.len() {
            for j in (i + 1)..w.len() {
                let ds = sc.members()[i].distance(&sc.members()[j]).unwrap();
                assert!(subset_distance(&w[i], &w[j]) >= ds);
            }
        }
    }

    #[test]
    fn span_code_single_member() {
        let s = Subspace::span(2, 3, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let sc = SubspaceCode::new(2, 3, vec![s.clone()], 0).unwrap();
        let c = span_code(&sc, 4).unwrap();
        assert_eq!(c.len(), 1);
        let w = &c.codewords()[0];
        let ctx = c.ctx();
        assert_eq!(w.symbols()[2], ctx.add(&w.symbols()[0], &w.symbols()[1]));
        assert_eq!(w.symbols()[3], w.symbols()[2]);
        assert!(matches!(span_code(&sc, 1), Err(Error::LengthTooShort { .. })));
    }

    #[test]
    fn span_code_spans_its_member() {
        let sc = SubspaceCode::new(2, 4, enumerate_subspaces(2, 4, 2).unwrap().collect(), 2).unwrap();
        let c = span_code(&sc, 5).unwrap();
        for (w, m) in c.codewords().iter().zip(sc.members()) {
            let vectors: Vec<Vec<u32>> = w.symbols().iter().map(|s| s.coeffs().to_vec()).collect();
            assert_eq!(&Subspace::span(2, 4, &vectors).unwrap(), m);
        }
        assert_subset_dominates(&sc, &c);
    }

    #[test]
    fn span_code_of_lifted_gabidulin() {
        let sc = lift_rank_code(&gabidulin_code(&gf8(), 1).unwrap()).unwrap();
        let c = span_code(&sc, 3).unwrap();
        assert_eq!((c.len(), c.length(), c.ctx().n()), (64, 3, 6));
        let r = code_min_distance(&c, Metric::Subspace, SearchLimit::default()).unwrap();
        assert!(r.minimum >= 4);
        assert_subset_dominates(&sc, &c);
    }

    #[test]
    fn span_code_of_spread() {
        let sc = spread(2, 2, 4).unwrap();
        let c = span_code(&sc, 2).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(code_min_distance(&c, Metric::Insdel, SearchLimit::default()).unwrap().minimum, 4);
    }

    #[test]
    fn partial_span_codes() {
        let f32 = FieldCtx::new(2, 5, None).unwrap();
        let orbit = orbit_cyclic_code(&f32, &sidon_search(&f32, 2).unwrap()).unwrap();
        let c = partial_span_code(&orbit, 2).unwrap();
        assert_eq!(c.len(), 31);
        assert_eq!(code_min_distance(&c, Metric::Subspace, SearchLimit::default()).unwrap().minimum, 2);
        assert!(code_min_distance(&c, Metric::Insdel, SearchLimit::default()).unwrap().minimum >= 2);
        assert_eq!(c.codewords(), span_code(&orbit, 2).unwrap().codewords());
        assert!(matches!(partial_span_code(&orbit, 1), Err(Error::LengthOutOfRange { .. })));
        assert!(matches!(partial_span_code(&orbit, 3), Err(Error::LengthOutOfRange { .. })));

        let lifted = lift_rank_code(&gabidulin_code(&gf8(), 1).unwrap()).unwrap();
        let p = partial_span_code(&lifted, 2).unwrap();
        assert!(code_min_distance(&p, Metric::Subspace, SearchLimit::default()).unwrap().minimum >= 2);
    }

    #[test]
    fn all_vectors_of_spread() {
        let sc = spread(2, 2, 4).unwrap();
        let av = all_vectors_code(&sc, 3).unwrap();
        assert_eq!(av.guarantee, 4);
        assert_eq!(av.code.len(), 5);
        assert_eq!(code_min_distance(&av.code, Metric::Insdel, SearchLimit::default()).unwrap().minimum, 6);
        let full = all_vectors_code(&sc, 4).unwrap();
        assert!(full.code.codewords().iter().all(|w| w.symbols()[3].is_zero()));
        assert!(matches!(all_vectors_code(&sc, 1), Err(Error::LengthOutOfRange { .. })));
        let floor = all_vectors_code(&sc, 2).unwrap();
        assert_eq!(floor.guarantee, 2);
    }

    #[test]
    fn all_vectors_of_lifted_code() {
        let sc = lift_rank_code(&gabidulin_code(&gf8(), 1).unwrap()).unwrap();
        // k = 3, d = 4: q^{k - d/2} = 2
        let av = all_vectors_code(&sc, 3).unwrap();
        assert_eq!(av.guarantee, 2);
        let r = code_min_distance(&av.code, Metric::Insdel, SearchLimit::default()).unwrap();
        assert!(r.minimum >= av.guarantee);
    }

    #[test]
    fn singer_sets() {
        let d3 = singer_difference_set(&gf8()).unwrap();
        assert_eq!((d3.v, d3.k, d3.lambda), (7, 3, 1));
        let a = gf8().x();
        let expected: Vec<FieldElement> = [1, 2, 4].iter().map(|&e| gf8().pow(&a, e).unwrap()).collect();
        let mut got = d3.members.clone();
        got.sort();
        let mut want = expected.clone();
        want.sort();
        assert_eq!(got, want);

        let f16 = FieldCtx::new(2, 4, None).unwrap();
        let d4 = singer_difference_set(&f16).unwrap();
        assert_eq!((d4.v, d4.k, d4.lambda), (15, 7, 3));
        for x in &d4.members {
            assert!(d4.members.contains(&f16.frobenius(x, 1)));
        }
        assert!(matches!(
            singer_difference_set(&FieldCtx::new(2, 2, None).unwrap()),
            Err(Error::ParameterTooSmall(_))
        ));
    }

    #[test]
    fn m_of_d_examples() {
        let f = gf8();
        let d = singer_difference_set(&f).unwrap();
        assert_eq!(m_of_d(&f, &d.members).unwrap(), d.lambda);
        assert_eq!(m_of_d(&f, &[f.x()]).unwrap(), 0);
        let all: Vec<FieldElement> = f.nonzero_elements().collect();
        assert_eq!(m_of_d(&f, &all).unwrap(), 7);
        assert_eq!(m_of_d(&f, &[]), Err(Error::EmptySet));
    }

    #[test]
    fn evaluation_folded_codes_are_equidistant() {
        for n in 3..=5 {
            let f = FieldCtx::new(2, n, None).unwrap();
            let d = singer_difference_set(&f).unwrap();
            let c = evaluation_folded_code(&f, &d.members).unwrap();
            assert_eq!(c.len(), (1 << n) - 1);
            let min = folded_min_distance(&c, FoldedMetric::Subset, SearchLimit::default()).unwrap().minimum;
            let max = folded_max_subset_distance(&c, SearchLimit::default()).unwrap();
            assert_eq!(min, 2 * (d.k - d.lambda));
            assert_eq!(min, max);
        }
        let f = gf8();
        let single = evaluation_folded_code(&f, &[f.one()]).unwrap();
        assert_eq!(single.len(), 7);
        assert_eq!(folded_min_distance(&single, FoldedMetric::Subset, SearchLimit::default()).unwrap().minimum, 2);
    }

    #[test]
    fn translation_identity() {
        let f = gf8();
        let d = vec![f.one(), f.x(), f.element(vec![1, 1, 1]).unwrap()];
        let c = evaluation_folded_code(&f, &d).unwrap();
        let set: HashSet<&FieldElement> = d.iter().collect();
        for (i, a) in c.codewords.iter().enumerate() {
            for b in &c.codewords[i + 1..] {
                let ratio = f.div(&b.blocks[0][0], &a.blocks[0][0]).unwrap();
                let hits = d.iter().filter(|x| set.contains(&f.mul(&ratio, x))).count();
                assert_eq!(folded_subset_distance(a, b), 2 * (d.len() - hits));
            }
        }
    }

    #[test]
    fn folding_vector_codes() {
        let f2 = FieldCtx::prime(2).unwrap();
        let rep = VectorCode::linear(
            f2.clone(),
            vec![Word::new([1, 1, 0, 0].iter().map(|&c| f2.scalar(c)).collect()), Word::new([0, 0, 1, 1].iter().map(|&c| f2.scalar(c)).collect())],
        )
        .unwrap();
        let same = folded_code_from_vector_code(&rep, 1).unwrap();
        assert_eq!(same.len(), rep.len());
        assert!(same.codewords.iter().zip(rep.codewords()).all(|(a, b)| a.blocks.concat() == b.symbols()));
        let whole = folded_code_from_vector_code(&rep, 4).unwrap();
        assert_eq!(whole.blocks(), 1);
        let halves = folded_code_from_vector_code(&rep, 2).unwrap();
        // codewords 0000, 0011, 1100, 1111 become {00}, {00,11}, {11,00}, {11}
        let w = &halves.codewords;
        assert_eq!(folded_subset_distance(&w[0], &w[1]), 1);
        assert_eq!(folded_subset_distance(&w[1], &w[2]), 0);
        assert_eq!(folded_subset_distance(&w[0], &w[3]), 2);
        for i in 0..4 {
            for j in 0..4 {
                let r = crate::metrics::r_subset_distance(&f2, &rep.codewords()[i], &rep.codewords()[j], 2).unwrap();
                assert_eq!(r, folded_subset_distance(&w[i], &w[j]));
            }
        }
        assert_eq!(insdel_distance(&rep.codewords()[1], &rep.codewords()[2]), 4);
    }
}
