//! Gaussian elimination over the extension field `F_{q^n}`, used for
//! generator and parity-check matrices of codes over that alphabet.

use crate::field::{FieldCtx, FieldElement};

/// RREF of `rows` (zero rows dropped) together with the pivot columns.
pub fn rref(ctx: &FieldCtx, rows: &[Vec<FieldElement>]) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == m.len() {
            break;
        }
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = ctx.inv(&m[rank][col]).expect("pivot is nonzero");
        m[rank] = m[rank].iter().map(|x| ctx.mul(x, &inv)).collect();
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            let pivot_row = m[rank].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                *x = ctx.sub(x, &ctx.mul(&f, y));
            }
        }
        pivots.push(col);
        rank += 1;
    }
    m.truncate(rank);
    (m, pivots)
}

pub fn rank(ctx: &FieldCtx, rows: &[Vec<FieldElement>]) -> usize {
    rref(ctx, rows).1.len()
}

/// Basis of `{x : M x = 0}` for the `rows.len() x cols` matrix `M`.
pub fn kernel(ctx: &FieldCtx, rows: &[Vec<FieldElement>], cols: usize) -> Vec<Vec<FieldElement>> {
    let (r, pivots) = rref(ctx, rows);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![ctx.zero(); cols];
            v[f] = ctx.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = ctx.neg(&r[i][f]);
            }
            v
        })
        .collect()
}

/// `M x` for a column vector `x`.
pub fn apply(ctx: &FieldCtx, rows: &[Vec<FieldElement>], x: &[FieldElement]) -> Vec<FieldElement> {
    rows.iter()
        .map(|row| row.iter().zip(x).fold(ctx.zero(), |acc, (a, b)| ctx.add(&acc, &ctx.mul(a, b))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_over_gf4() {
        let f = FieldCtx::new(2, 2, None).unwrap();
        let a = f.x();
        let m = vec![vec![f.one(), a.clone(), f.zero()], vec![f.zero(), f.one(), a.clone()]];
        let k = kernel(&f, &m, 3);
        assert_eq!(k.len(), 1);
        assert!(apply(&f, &m, &k[0]).iter().all(|x| x.is_zero()));
        assert_eq!(rank(&f, &m), 2);
        let dup = vec![m[0].clone(), m[0].iter().map(|x| f.mul(x, &a)).collect()];
        assert_eq!(rank(&f, &dup), 1);
    }
}
