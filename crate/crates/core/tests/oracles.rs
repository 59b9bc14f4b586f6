//! Library results against naive reimplementations that share no code with it.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use subspace_metric::field::FieldElement;
use subspace_metric::linalg::{enumerate_subspaces, Subspace};
use subspace_metric::metrics::{insdel_distance, subset_distance, subspace_distance, Word};
use subspace_metric::rank_metric::{delsarte_rank_distribution, empirical_rank_distribution, gabidulin_code, gaussian_binomial};
use subspace_metric::subspace_codes::{lift_rank_code, sidon_check, spread};
use subspace_metric::FieldCtx;

/// Every `F_q` combination of `gens`, as a set of coefficient vectors.
fn span_set(q: u32, len: usize, gens: &[Vec<u32>]) -> HashSet<Vec<u32>> {
    let mut set = HashSet::from([vec![0; len]]);
    for g in gens {
        let mut next = HashSet::new();
        for v in &set {
            for c in 0..q {
                next.insert(v.iter().zip(g).map(|(a, b)| (a + c * b) % q).collect::<Vec<_>>());
            }
        }
        set = next;
    }
    set
}

fn log_q(size: usize, q: u32) -> usize {
    let mut d = 0;
    let mut s = 1;
    while s < size {
        s *= q as usize;
        d += 1;
    }
    assert_eq!(s, size);
    d
}

fn span_dim(q: u32, len: usize, gens: &[Vec<u32>]) -> usize {
    log_q(span_set(q, len, gens).len(), q)
}

fn naive_subspace_distance(ctx: &FieldCtx, a: &Word, b: &Word) -> usize {
    let va: Vec<Vec<u32>> = a.symbols().iter().map(|s| s.coeffs().to_vec()).collect();
    let vb: Vec<Vec<u32>> = b.symbols().iter().map(|s| s.coeffs().to_vec()).collect();
    let both: Vec<Vec<u32>> = va.iter().chain(&vb).cloned().collect();
    let (q, n) = (ctx.q(), ctx.n());
    2 * span_dim(q, n, &both) - span_dim(q, n, &va) - span_dim(q, n, &vb)
}

/// Recursive LCS without tabulation order tricks.
fn naive_lcs(a: &[FieldElement], b: &[FieldElement], memo: &mut HashMap<(usize, usize), usize>) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    if let Some(&v) = memo.get(&(a.len(), b.len())) {
        return v;
    }
    let v = if a[0] == b[0] {
        1 + naive_lcs(&a[1..], &b[1..], memo)
    } else {
        naive_lcs(&a[1..], b, memo).max(naive_lcs(a, &b[1..], memo))
    };
    memo.insert((a.len(), b.len()), v);
    v
}

fn all_words(ctx: &FieldCtx, len: usize) -> Vec<Word> {
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w: Vec<FieldElement>| {
                ctx.elements().map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    words.into_iter().map(Word::new).collect()
}

#[test]
fn word_metrics_match_naive_definitions() {
    let ctx = FieldCtx::new(2, 2, None).unwrap();
    let words = all_words(&ctx, 3);
    for a in &words {
        for b in words.iter().step_by(3) {
            assert_eq!(subspace_distance(&ctx, a, b), naive_subspace_distance(&ctx, a, b));
            let sa: BTreeSet<_> = a.symbols().iter().collect();
            let sb: BTreeSet<_> = b.symbols().iter().collect();
            assert_eq!(subset_distance(a, b), sa.symmetric_difference(&sb).count());
            let lcs = naive_lcs(a.symbols(), b.symbols(), &mut HashMap::new());
            assert_eq!(insdel_distance(a, b), a.len() + b.len() - 2 * lcs);
        }
    }
}

#[test]
fn ternary_subspace_distance_matches_naive() {
    let ctx = FieldCtx::new(3, 2, None).unwrap();
    let words = all_words(&ctx, 2);
    for a in &words {
        for b in &words {
            assert_eq!(subspace_distance(&ctx, a, b), naive_subspace_distance(&ctx, a, b));
        }
    }
}

#[test]
fn enumeration_counts_match_gaussian_binomials() {
    for (q, n) in [(2u32, 4usize), (2, 5), (3, 3)] {
        for k in 0..=n {
            let subs: Vec<Subspace> = enumerate_subspaces(q, n, k).unwrap().collect();
            assert_eq!(BigUint::from(subs.len()), gaussian_binomial(n, k, q), "q={q} n={n} k={k}");
            let distinct: HashSet<Vec<Vec<u32>>> = subs
                .iter()
                .map(|s| {
                    let mut v: Vec<Vec<u32>> = span_set(q, n, &s.basis().row_vecs()).into_iter().collect();
                    v.sort();
                    v
                })
                .collect();
            assert_eq!(distinct.len(), subs.len());
        }
    }
}

/// Counts rank of each `n x n` matrix of a Gabidulin code by brute force span size.
#[test]
fn rank_census_by_span_size() {
    for (q, n, t) in [(2u32, 3usize, 1usize), (3, 2, 0), (2, 4, 1)] {
        let ctx = FieldCtx::new(q, n, None).unwrap();
        let code = gabidulin_code(&ctx, t).unwrap();
        let mut counts = vec![0u64; n + 1];
        for m in code.matrices() {
            counts[span_dim(q, n, &m.row_vecs())] += 1;
        }
        let want: Vec<BigUint> = counts.iter().map(|&c| BigUint::from(c)).collect();
        assert_eq!(empirical_rank_distribution(&code).counts, want);
        assert_eq!(delsarte_rank_distribution(n, n - t, q).unwrap().counts, want);
    }
}

#[test]
fn lifted_code_distance_is_twice_rank_distance() {
    let ctx = FieldCtx::new(2, 3, None).unwrap();
    let code = gabidulin_code(&ctx, 1).unwrap();
    let lifted = lift_rank_code(&code).unwrap();
    let ms = code.matrices();
    for i in 0..ms.len() {
        for j in (i + 1)..ms.len() {
            let rank = span_dim(2, 3, &ms[i].sub(&ms[j]).row_vecs());
            assert_eq!(lifted.members()[i].distance(&lifted.members()[j]).unwrap(), 2 * rank);
        }
    }
}

#[test]
fn spread_partitions_nonzero_vectors() {
    for (k, n) in [(2usize, 4usize), (2, 6), (3, 6)] {
        let s = spread(2, k, n).unwrap();
        let mut seen = HashSet::new();
        for m in s.members() {
            let vs = span_set(2, n, &m.basis().row_vecs());
            assert_eq!(vs.len(), 1 << k);
            for v in vs {
                if v.iter().any(|&c| c != 0) {
                    assert!(seen.insert(v));
                }
            }
        }
        assert_eq!(seen.len(), (1 << n) - 1);
    }
}

/// Quadruple search over the span: ab = cd must force {a F_q, b F_q} = {c F_q, d F_q}.
fn naive_sidon(ctx: &FieldCtx, v: &Subspace) -> bool {
    let elems: Vec<FieldElement> = span_set(ctx.q(), ctx.n(), &v.basis().row_vecs())
        .into_iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .map(|c| ctx.element(c).unwrap())
        .collect();
    let line = |x: &FieldElement| -> BTreeSet<FieldElement> { (1..ctx.q()).map(|c| ctx.scale(c, x)).collect() };
    for a in &elems {
        for b in &elems {
            let ab = ctx.mul(a, b);
            for c in &elems {
                for d in &elems {
                    if ctx.mul(c, d) == ab {
                        let lhs: BTreeSet<_> = [line(a), line(b)].into();
                        let rhs: BTreeSet<_> = [line(c), line(d)].into();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

#[test]
fn sidon_check_matches_quadruple_search() {
    // F_32 has no proper subfield past F_2, so every plane there is Sidon; F_16 and F_64 contain F_4
    let mut seen = (0, 0);
    for n in [4usize, 5, 6] {
        let ctx = FieldCtx::new(2, n, None).unwrap();
        for s in enumerate_subspaces(2, n, 2).unwrap() {
            let fast = sidon_check(&ctx, &s).unwrap();
            assert_eq!(fast, naive_sidon(&ctx, &s), "n={n}");
            if fast {
                seen.0 += 1;
            } else {
                seen.1 += 1;
            }
        }
    }
    assert!(seen.0 > 0 && seen.1 > 0);
}
