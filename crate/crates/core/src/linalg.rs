//! Matrices and canonical subspaces over a prime field `F_q`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{fp, FieldCtx, FieldElement};

/// Guard on `q^N` for subspace enumeration.
pub const ENUMERATION_LIMIT: u128 = 1 << 20;

/// Dense row-major matrix over `F_q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    q: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqMatrix(q={}, {}x{}) [", self.q, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl FqMatrix {
    pub fn zeros(q: u32, rows: usize, cols: usize) -> Self {
        FqMatrix { q, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(q: u32, n: usize) -> Self {
        let mut m = Self::zeros(q, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of length `cols`; entries must be reduced mod `q`.
    pub fn from_rows(q: u32, cols: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, found: row.len() });
            }
            if let Some(&c) = row.iter().find(|&&c| c >= q) {
                return Err(Error::InvalidElement(format!("entry {c} not reduced mod {q}")));
            }
            data.extend(row);
        }
        Ok(FqMatrix { q, rows: n_rows, cols, data })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.q;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.q, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let q = self.q as u64;
        let mut out = Self::zeros(self.q, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, c) as u64) % q) as u32;
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let q = self.q as u64;
        let mut out = vec![0u64; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = (*o + a as u64 * self.get(r, c) as u64) % q;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Matrix times column vector.
    pub fn apply_col(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u32, |acc, (&a, &b)| fp::add(acc, fp::mul(a, b, self.q), self.q))
            })
            .collect()
    }

    pub fn add(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| fp::add(a, b, self.q)).collect();
        FqMatrix { q: self.q, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| fp::sub(a, b, self.q)).collect();
        FqMatrix { q: self.q, rows: self.rows, cols: self.cols, data }
    }

    /// `(self | other)`.
    pub fn hstack(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.rows, other.rows);
        let rows = (0..self.rows)
            .map(|r| self.row(r).iter().chain(other.row(r)).copied().collect())
            .collect();
        FqMatrix::from_rows(self.q, self.cols + other.cols, rows).unwrap()
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FqMatrix { q: self.q, rows: self.rows + other.rows, cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduced row echelon form (zero rows last) and rank.
    pub fn rref(&self) -> (FqMatrix, usize) {
        let mut m = self.clone();
        let q = self.q;
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(rank, p);
            let inv = fp::inv(m.get(rank, col), q);
            for c in col..m.cols {
                let v = fp::mul(m.get(rank, c), inv, q);
                m.set(rank, c, v);
            }
            for r in 0..m.rows {
                let f = m.get(r, col);
                if r == rank || f == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = fp::sub(m.get(r, c), fp::mul(f, m.get(rank, c), q), q);
                    m.set(r, c, v);
                }
            }
            rank += 1;
        }
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Pivot column of each nonzero row, assuming `self` is in echelon form.
    fn pivots(&self) -> Vec<usize> {
        (0..self.rows).filter_map(|r| self.row(r).iter().position(|&c| c != 0)).collect()
    }

    /// Whether the matrix is in reduced row echelon form with no zero rows.
    pub fn is_rref_full_rank(&self) -> bool {
        let pivots = self.pivots();
        if pivots.len() != self.rows {
            return false;
        }
        if pivots.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        pivots.iter().enumerate().all(|(r, &p)| {
            self.get(r, p) == 1 && (0..self.rows).all(|o| o == r || self.get(o, p) == 0)
        })
    }

    /// Right null space `{x : M x = 0}` as a subspace of `F_q^cols`.
    pub fn kernel(&self) -> Subspace {
        let (r, rank) = self.rref();
        let pivots: Vec<usize> = (0..rank)
            .map(|i| r.row(i).iter().position(|&c| c != 0).unwrap())
            .collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = fp::neg(r.get(i, f), self.q);
                }
                v
            })
            .collect::<Vec<_>>();
        Subspace::span(self.q, self.cols, &vectors).expect("kernel vectors have matching length")
    }
}

/// A subspace of `F_q^N` stored as its RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: FqMatrix,
}

#[derive(Serialize, Deserialize)]
struct SubspaceSpec {
    ambient: usize,
    q: u32,
    basis: Vec<Vec<u32>>,
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceSpec { ambient: self.ambient, q: self.q(), basis: self.basis.row_vecs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = SubspaceSpec::deserialize(d)?;
        Subspace::from_rref(spec.q, spec.ambient, spec.basis).map_err(serde::de::Error::custom)
    }
}

impl Subspace {
    pub fn zero(q: u32, ambient: usize) -> Self {
        Subspace { ambient, basis: FqMatrix::zeros(q, 0, ambient) }
    }

    /// The span of `vectors`, each of length `ambient`.
    pub fn span(q: u32, ambient: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::LengthMismatch { expected: ambient, found: v.len() });
            }
        }
        let reduced = vectors.iter().map(|v| v.iter().map(|&c| c % q).collect()).collect();
        let m = FqMatrix::from_rows(q, ambient, reduced)?;
        Ok(Self::from_matrix_rows(&m))
    }

    /// Row space of a matrix.
    pub fn from_matrix_rows(m: &FqMatrix) -> Self {
        let (r, rank) = m.rref();
        let rows = (0..rank).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient: m.cols(), basis: FqMatrix::from_rows(m.q(), m.cols(), rows).unwrap() }
    }

    /// Wraps a basis that must already be in RREF without zero rows.
    pub fn from_rref(q: u32, ambient: usize, basis: Vec<Vec<u32>>) -> Result<Self> {
        let m = FqMatrix::from_rows(q, ambient, basis)?;
        if !m.is_rref_full_rank() {
            return Err(Error::InvalidSubspace("basis is not in reduced row echelon form".into()));
        }
        Ok(Subspace { ambient, basis: m })
    }

    pub fn q(&self) -> u32 {
        self.basis.q()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    fn check_same_space(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.q() != other.q() {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_space(other)?;
        Ok(Self::from_matrix_rows(&self.basis.vstack(&other.basis)))
    }

    /// `dim U + dim V - dim(U + V)`.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        let s = self.sum(other)?;
        Ok(self.dim() + other.dim() - s.dim())
    }

    /// `dim U + dim V - 2 dim(U ∩ V)`.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        let s = self.sum(other)?.dim();
        Ok(2 * s - self.dim() - other.dim())
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let row = FqMatrix::from_rows(self.q(), self.ambient, vec![v.to_vec()]);
        match row {
            Ok(row) => self.basis.vstack(&row).rank() == self.dim(),
            Err(_) => false,
        }
    }

    /// Image under `v -> v M` for a square matrix `M`.
    pub fn map_rows(&self, m: &FqMatrix) -> Subspace {
        Self::from_matrix_rows(&self.basis.mul(m))
    }

    /// Every vector of the subspace, in lexicographic order.
    pub fn vectors(&self) -> Result<Vec<Vec<u32>>> {
        let q = self.q();
        let size = (q as u128).pow(self.dim() as u32);
        if size > ENUMERATION_LIMIT {
            return Err(Error::EnumerationTooLarge {
                what: "subspace vectors",
                size,
                limit: ENUMERATION_LIMIT,
            });
        }
        let mut out = Vec::with_capacity(size as usize);
        let mut coeffs = vec![0u32; self.dim()];
        loop {
            out.push(self.basis.apply_row(&coeffs));
            if !odometer_step(&mut coeffs, q) {
                break;
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Advances a base-`q` counter, last digit fastest; false once it wraps.
pub(crate) fn odometer_step(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

struct PivotOdometer {
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u32>,
}

impl PivotOdometer {
    fn current(&self, q: u32, ambient: usize) -> Vec<u32> {
        let k = self.pivots.len();
        let mut flat = vec![0u32; k * ambient];
        for (r, &p) in self.pivots.iter().enumerate() {
            flat[r * ambient + p] = 1;
        }
        for (&(r, c), &d) in self.free.iter().zip(&self.digits) {
            flat[r * ambient + c] = d % q;
        }
        flat
    }
}

/// Streams every `k`-dimensional subspace of `F_q^N` exactly once, ordered
/// lexicographically by the flattened RREF basis.
pub struct SubspaceEnumerator {
    q: u32,
    ambient: usize,
    k: usize,
    cursors: Vec<PivotOdometer>,
    heap: BinaryHeap<Reverse<(Vec<u32>, usize)>>,
}

impl Iterator for SubspaceEnumerator {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let Reverse((flat, idx)) = self.heap.pop()?;
        let cur = &mut self.cursors[idx];
        if odometer_step(&mut cur.digits, self.q) {
            self.heap.push(Reverse((cur.current(self.q, self.ambient), idx)));
        }
        let rows = flat.chunks(self.ambient.max(1)).take(self.k).map(|c| c.to_vec()).collect();
        let basis = FqMatrix::from_rows(self.q, self.ambient, rows).unwrap();
        Some(Subspace { ambient: self.ambient, basis })
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn enumerate_subspaces(q: u32, ambient: usize, k: usize) -> Result<SubspaceEnumerator> {
    if k > ambient {
        return Err(Error::ParameterOutOfRange(format!("dimension {k} exceeds ambient {ambient}")));
    }
    let size = (q as u128).checked_pow(ambient as u32).unwrap_or(u128::MAX);
    if size > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge { what: "ambient space", size, limit: ENUMERATION_LIMIT });
    }
    let mut cursors = Vec::new();
    for pivots in combinations(ambient, k) {
        let free = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                let pivots = &pivots;
                ((p + 1)..ambient).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect::<Vec<_>>();
        let digits = vec![0; free.len()];
        cursors.push(PivotOdometer { pivots, free, digits });
    }
    let heap = cursors
        .iter()
        .enumerate()
        .map(|(i, c)| Reverse((c.current(q, ambient), i)))
        .collect();
    Ok(SubspaceEnumerator { q, ambient, k, cursors, heap })
}

/// Identifies field elements with their coefficient vectors in `F_q^n`.
pub fn field_elements_as_vectors(ctx: &FieldCtx, elements: &[FieldElement]) -> Vec<Vec<u32>> {
    debug_assert!(elements.iter().all(|e| ctx.contains(e)));
    elements.iter().map(|e| e.coeffs().to_vec()).collect()
}
