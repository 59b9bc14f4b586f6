//! Arithmetic in `F_{q^n}` for a prime `q`.
//!
//! Elements are coefficient vectors over `F_q` in the power basis
//! `1, x, ..., x^{n-1}` of `F_q[x]/(f)`, constant term first. Elements are
//! ordered lexicographically with the constant coefficient most significant,
//! which is also the order of [`FieldCtx::elements`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::FqMatrix;

/// Largest supported extension degree (irreducibility is checked by trial division).
pub const MAX_DEGREE: usize = 24;
/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 40;

/// Arithmetic helpers modulo a prime.
pub(crate) mod fp {
    pub fn add(a: u32, b: u32, q: u32) -> u32 {
        ((a as u64 + b as u64) % q as u64) as u32
    }

    pub fn sub(a: u32, b: u32, q: u32) -> u32 {
        ((a as u64 + q as u64 - b as u64) % q as u64) as u32
    }

    pub fn mul(a: u32, b: u32, q: u32) -> u32 {
        ((a as u64 * b as u64) % q as u64) as u32
    }

    pub fn neg(a: u32, q: u32) -> u32 {
        if a == 0 {
            0
        } else {
            q - a
        }
    }

    pub fn pow(mut a: u32, mut e: u64, q: u32) -> u32 {
        let mut acc = 1 % q;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a, q);
            }
            a = mul(a, a, q);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue; `q` must be prime.
    pub fn inv(a: u32, q: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(q));
        pow(a, q as u64 - 2, q)
    }
}

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_q` (constant term first).
fn poly_rem(a: &[u32], m: &[u32], q: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if c != 0 {
            for (j, &mj) in m.iter().enumerate() {
                r[shift + j] = fp::sub(r[shift + j], fp::mul(c, mj, q), q);
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`q`
/// digits of `index`, constant coefficient most significant.
fn monic_from_index(mut index: u64, deg: usize, q: u32) -> Vec<u32> {
    let mut p = vec![0u32; deg + 1];
    p[deg] = 1;
    for i in (0..deg).rev() {
        p[i] = (index % q as u64) as u32;
        index /= q as u64;
    }
    p
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], q: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (q as u64).pow(d as u32);
        for idx in 0..count {
            let g = monic_from_index(idx, d, q);
            if poly_rem(poly, &g, q).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// An element of `F_{q^n}`: `n` coefficients in `[0, q)`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(Vec<u32>);

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct FieldSpec {
    q: u32,
    n: usize,
    modulus: Vec<u32>,
}

/// The field `F_q[x]/(modulus)`; immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldSpec", into = "FieldSpec")]
pub struct FieldCtx {
    q: u32,
    n: usize,
    modulus: Vec<u32>,
    order: u64,
}

impl TryFrom<FieldSpec> for FieldCtx {
    type Error = Error;

    fn try_from(spec: FieldSpec) -> Result<Self> {
        FieldCtx::new(spec.q, spec.n, Some(spec.modulus))
    }
}

impl From<FieldCtx> for FieldSpec {
    fn from(ctx: FieldCtx) -> Self {
        FieldSpec { q: ctx.q, n: ctx.n, modulus: ctx.modulus }
    }
}

impl FieldCtx {
    /// Builds `F_{q^n}`. Without a modulus the lexicographically smallest monic
    /// irreducible of degree `n` is used (constant term compared first).
    pub fn new(q: u32, n: usize, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NonPrimeCharacteristic(q));
        }
        if n == 0 {
            return Err(Error::ParameterOutOfRange("extension degree must be at least 1".into()));
        }
        let order = (q as u64)
            .checked_pow(n as u32)
            .filter(|&o| o <= MAX_ORDER && n <= MAX_DEGREE)
            .ok_or(Error::FieldTooLarge { q, n })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != n + 1 || m[n] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial of degree {n} (constant term first), got {m:?}"
                    )));
                }
                if let Some(&c) = m.iter().find(|&&c| c >= q) {
                    return Err(Error::InvalidModulus(format!("coefficient {c} not reduced mod {q}")));
                }
                if !is_irreducible(&m, q) {
                    return Err(Error::ReducibleModulus { q });
                }
                m
            }
            None => Self::default_modulus(q, n),
        };
        Ok(FieldCtx { q, n, modulus, order })
    }

    /// `F_q` itself, with modulus `x`.
    pub fn prime(q: u32) -> Result<Self> {
        Self::new(q, 1, None)
    }

    fn default_modulus(q: u32, n: usize) -> Vec<u32> {
        let count = (q as u64).pow(n as u32);
        (0..count)
            .map(|idx| monic_from_index(idx, n, q))
            .find(|p| is_irreducible(p, q))
            .expect("an irreducible polynomial exists for every degree")
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Number of elements `q^n`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.n])
    }

    pub fn one(&self) -> FieldElement {
        let mut c = vec![0; self.n];
        c[0] = 1;
        FieldElement(c)
    }

    /// The class of `x`, i.e. the generator of the power basis.
    pub fn x(&self) -> FieldElement {
        if self.n >= 2 {
            self.basis(1)
        } else {
            FieldElement(vec![fp::neg(self.modulus[0], self.q)])
        }
    }

    /// The power-basis element `x^i` for `i < n`.
    pub fn basis(&self, i: usize) -> FieldElement {
        assert!(i < self.n, "basis index {i} out of range");
        let mut c = vec![0; self.n];
        c[i] = 1;
        FieldElement(c)
    }

    pub fn scalar(&self, c: u32) -> FieldElement {
        let mut v = vec![0; self.n];
        v[0] = c % self.q;
        FieldElement(v)
    }

    /// Validates a coefficient vector and wraps it as an element.
    pub fn element(&self, coeffs: Vec<u32>) -> Result<FieldElement> {
        if coeffs.len() != self.n {
            return Err(Error::InvalidElement(format!(
                "expected {} coefficients, found {}",
                self.n,
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.q) {
            return Err(Error::InvalidElement(format!("coefficient {c} not reduced mod {}", self.q)));
        }
        Ok(FieldElement(coeffs))
    }

    /// Reduces arbitrary integers mod `q` into an element.
    pub fn element_reduced(&self, coeffs: &[i64]) -> Result<FieldElement> {
        if coeffs.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: coeffs.len() });
        }
        let q = self.q as i64;
        Ok(FieldElement(coeffs.iter().map(|&c| c.rem_euclid(q) as u32).collect()))
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        a.0.len() == self.n && a.0.iter().all(|&c| c < self.q)
    }

    /// The element at position `index` of the enumeration order.
    pub fn element_at(&self, mut index: u64) -> FieldElement {
        assert!(index < self.order, "element index out of range");
        let mut c = vec![0u32; self.n];
        for i in (0..self.n).rev() {
            c[i] = (index % self.q as u64) as u32;
            index /= self.q as u64;
        }
        FieldElement(c)
    }

    pub fn index_of(&self, a: &FieldElement) -> u64 {
        a.0.iter().fold(0u64, |acc, &c| acc * self.q as u64 + c as u64)
    }

    /// All elements in enumeration order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.order).map(move |i| self.element_at(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| fp::add(x, y, self.q)).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| fp::sub(x, y, self.q)).collect())
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|&x| fp::neg(x, self.q)).collect())
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, c: u32, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|&x| fp::mul(c, x, self.q)).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = self.n;
        let q = self.q as u64;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % q;
            }
        }
        // x^n = -(m_0 + m_1 x + ... + m_{n-1} x^{n-1})
        for i in (n..2 * n - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..n {
                let m = self.modulus[j] as u64;
                prod[i - n + j] = (prod[i - n + j] + c * ((q - m) % q)) % q;
            }
        }
        prod.truncate(n);
        FieldElement(prod.into_iter().map(|c| c as u32).collect())
    }

    fn pow_u64(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a^e`; negative exponents go through the inverse.
    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            Ok(self.pow_u64(a, e as u64))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow_u64(&inv, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow_u64(a, self.order - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `x^{q^i}`.
    pub fn frobenius(&self, x: &FieldElement, i: usize) -> FieldElement {
        let mut y = x.clone();
        for _ in 0..(i % self.n) {
            y = self.pow_u64(&y, self.q as u64);
        }
        y
    }

    /// Absolute trace `x + x^q + ... + x^{q^{n-1}}`, an element of `F_q`.
    pub fn trace(&self, x: &FieldElement) -> u32 {
        let mut acc = self.zero();
        let mut y = x.clone();
        for _ in 0..self.n {
            acc = self.add(&acc, &y);
            y = self.pow_u64(&y, self.q as u64);
        }
        debug_assert!(acc.0[1..].iter().all(|&c| c == 0), "trace left the base field");
        acc.0[0]
    }

    /// Whether `x` lies in the subfield `F_{q^k}`, i.e. `x^{q^k} = x`.
    pub fn subfield_member(&self, x: &FieldElement, k: usize) -> Result<bool> {
        if k == 0 || !self.n.is_multiple_of(k) {
            return Err(Error::NonDivisorDegree { k, n: self.n });
        }
        Ok(&self.frobenius(x, k) == x)
    }

    /// All elements of the subfield `F_{q^k}` in enumeration order.
    pub fn subfield_elements(&self, k: usize) -> Result<Vec<FieldElement>> {
        if k == 0 || !self.n.is_multiple_of(k) {
            return Err(Error::NonDivisorDegree { k, n: self.n });
        }
        Ok(self.elements().filter(|x| self.frobenius(x, k) == *x).collect())
    }

    /// Matrix of `y -> x*y`: row `i` holds the coefficients of `x * x^i`.
    pub fn multiplication_matrix(&self, x: &FieldElement) -> FqMatrix {
        let rows = (0..self.n)
            .map(|i| self.mul(x, &self.basis(i)).into_coeffs())
            .collect::<Vec<_>>();
        FqMatrix::from_rows(self.q, self.n, rows).expect("rows are reduced")
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: &FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let mut ord = self.order - 1;
        for p in prime_factors(self.order - 1) {
            while ord.is_multiple_of(p) && self.pow_u64(x, ord / p) == self.one() {
                ord /= p;
            }
        }
        Ok(ord)
    }

    /// First generator of the multiplicative group in enumeration order.
    pub fn primitive_element(&self) -> FieldElement {
        let target = self.order - 1;
        self.nonzero_elements()
            .find(|x| self.multiplicative_order(x).ok() == Some(target))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

/// The coordinate embedding `F_{q^k} -> F_{q^{k+h}}` sending `x^i` to `x^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEmbedding {
    q: u32,
    src_n: usize,
    dst_n: usize,
}

impl LinearEmbedding {
    pub fn src_degree(&self) -> usize {
        self.src_n
    }

    pub fn dst_degree(&self) -> usize {
        self.dst_n
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        let mut c = x.coeffs().to_vec();
        c.resize(self.dst_n, 0);
        FieldElement(c)
    }

    /// `src_n x dst_n` matrix whose row `i` is the image of `x^i`.
    pub fn matrix(&self) -> FqMatrix {
        let mut m = FqMatrix::zeros(self.q, self.src_n, self.dst_n);
        for i in 0..self.src_n {
            m.set(i, i, 1);
        }
        m
    }
}

pub fn embed_linear(src: &FieldCtx, dst: &FieldCtx) -> Result<LinearEmbedding> {
    if src.q != dst.q {
        return Err(Error::FieldMismatch);
    }
    if dst.n < src.n {
        return Err(Error::DimensionTooSmall { src: src.n, dst: dst.n });
    }
    Ok(LinearEmbedding { q: src.q, src_n: src.n, dst_n: dst.n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> FieldCtx {
        FieldCtx::new(2, 3, Some(vec![1, 1, 0, 1])).unwrap()
    }

    fn gf4() -> FieldCtx {
        FieldCtx::new(2, 2, None).unwrap()
    }

    fn gf16() -> FieldCtx {
        FieldCtx::new(2, 4, None).unwrap()
    }

    fn el(ctx: &FieldCtx, c: &[u32]) -> FieldElement {
        ctx.element(c.to_vec()).unwrap()
    }

    #[test]
    fn create_contexts() {
        let f2 = FieldCtx::new(2, 1, None).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f2.order(), 2);
        assert_eq!(gf8().modulus(), &[1, 1, 0, 1]);
        assert!(FieldCtx::new(2, 3, Some(vec![1, 0, 1, 1])).is_ok());
        assert_eq!(FieldCtx::new(4, 2, None), Err(Error::NonPrimeCharacteristic(4)));
        assert_eq!(
            FieldCtx::new(2, 3, Some(vec![1, 0, 0, 1])),
            Err(Error::ReducibleModulus { q: 2 })
        );
        assert!(matches!(FieldCtx::new(2, 3, Some(vec![1, 1, 0])), Err(Error::InvalidModulus(_))));
    }

    #[test]
    fn default_modulus_is_smallest_constant_first() {
        // candidates for degree 3, constant term first: [1,0,1,1] precedes [1,1,0,1]
        assert_eq!(FieldCtx::new(2, 3, None).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(gf4().modulus(), &[1, 1, 1]);
        assert_eq!(FieldCtx::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn irreducibility_oracle_gf8() {
        // a cubic is reducible iff it has a root in F_2
        for idx in 0..8u64 {
            let p = monic_from_index(idx, 3, 2);
            let has_root = (0..2u32).any(|r| {
                let v: u32 = p.iter().enumerate().map(|(i, &c)| c * r.pow(i as u32)).sum();
                v.is_multiple_of(2)
            });
            assert_eq!(is_irreducible(&p, 2), !has_root, "{p:?}");
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f = gf8();
        let a = f.x();
        let a2 = f.mul(&a, &a);
        assert_eq!(f.mul(&a, &a2), el(&f, &[1, 1, 0]));
        assert_eq!(f.mul(&a, &f.one()), a);
        assert_eq!(f.inv(&a).unwrap(), el(&f, &[1, 0, 1]));
        assert_eq!(f.inv(&f.zero()), Err(Error::ZeroInverse));
        assert_eq!(f.pow(&a, -1).unwrap(), el(&f, &[1, 0, 1]));
        assert_eq!(f.pow(&a, 7).unwrap(), f.one());
    }

    #[test]
    fn inverse_by_exhaustion() {
        let f = gf8();
        for a in f.nonzero_elements() {
            let found: Vec<_> = f.nonzero_elements().filter(|b| f.mul(&a, b) == f.one()).collect();
            assert_eq!(found, vec![f.inv(&a).unwrap()]);
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for ctx in [gf4(), gf8(), FieldCtx::new(3, 2, None).unwrap()] {
            let els: Vec<_> = ctx.elements().collect();
            for a in &els {
                for b in &els {
                    assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
                    for c in &els {
                        assert_eq!(ctx.mul(&ctx.mul(a, b), c), ctx.mul(a, &ctx.mul(b, c)));
                        assert_eq!(
                            ctx.mul(a, &ctx.add(b, c)),
                            ctx.add(&ctx.mul(a, b), &ctx.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let f = gf8();
        let a = f.x();
        assert_eq!(f.frobenius(&a, 1), el(&f, &[0, 0, 1]));
        assert_eq!(f.frobenius(&a, 3), a);
        let a1 = f.add(&a, &f.one());
        assert_eq!(f.frobenius(&a1, 1), el(&f, &[1, 0, 1]));
        for x in f.elements() {
            assert_eq!(f.frobenius(&x, 3), x);
        }
    }

    #[test]
    fn trace_examples_and_properties() {
        let f = gf8();
        assert_eq!(f.trace(&f.one()), 1);
        assert_eq!(f.trace(&f.x()), 0);
        assert_eq!(f.trace(&f.zero()), 0);
        for ctx in [gf8(), gf16(), FieldCtx::new(3, 3, None).unwrap()] {
            let mut hit = vec![false; ctx.q() as usize];
            for x in ctx.elements() {
                hit[ctx.trace(&x) as usize] = true;
                assert_eq!(ctx.trace(&ctx.frobenius(&x, 1)), ctx.trace(&x));
                let y = ctx.x();
                assert_eq!(
                    ctx.trace(&ctx.add(&x, &y)),
                    fp::add(ctx.trace(&x), ctx.trace(&y), ctx.q())
                );
            }
            assert!(hit.iter().all(|&h| h));
        }
    }

    #[test]
    fn subfield_membership() {
        let f = gf16();
        let b = f.primitive_element();
        assert!(f.subfield_member(&f.zero(), 2).unwrap());
        assert!(f.subfield_member(&f.pow(&b, 5).unwrap(), 2).unwrap());
        assert!(!f.subfield_member(&b, 2).unwrap());
        assert_eq!(f.subfield_member(&b, 3), Err(Error::NonDivisorDegree { k: 3, n: 4 }));
        for k in [1, 2, 4] {
            assert_eq!(f.subfield_elements(k).unwrap().len(), 1 << k);
        }
    }

    #[test]
    fn multiplication_matrices() {
        let f = gf4();
        assert_eq!(f.multiplication_matrix(&f.one()), FqMatrix::identity(2, 2));
        assert_eq!(f.multiplication_matrix(&f.zero()), FqMatrix::zeros(2, 2, 2));
        let m = f.multiplication_matrix(&f.x());
        assert_eq!(m.row(0), &[0, 1]);
        assert_eq!(m.row(1), &[1, 1]);
        let g = FieldCtx::new(2, 3, None).unwrap();
        for x in g.elements() {
            assert_eq!(g.multiplication_matrix(&x).rank() == 3, !x.is_zero());
            for y in g.elements() {
                // row convention: v -> v * M, so M(xy) = M(y) M(x) = M(x) M(y)
                assert_eq!(
                    g.multiplication_matrix(&g.mul(&x, &y)),
                    g.multiplication_matrix(&x).mul(&g.multiplication_matrix(&y))
                );
            }
        }
    }

    #[test]
    fn embeddings() {
        let f2 = FieldCtx::new(2, 1, None).unwrap();
        let e = embed_linear(&f2, &gf4()).unwrap();
        assert_eq!(e.apply(&f2.one()), gf4().one());
        let e = embed_linear(&gf4(), &gf16()).unwrap();
        let mut images: Vec<_> = gf4().elements().map(|x| e.apply(&x)).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 4);
        // phi o frobenius as an F_2-linear map F_4 -> F_16 has rank 2
        let g = gf4();
        let rows: Vec<_> =
            (0..2).map(|i| e.apply(&g.frobenius(&g.basis(i), 1)).into_coeffs()).collect();
        assert_eq!(FqMatrix::from_rows(2, 4, rows).unwrap().rank(), 2);
        assert_eq!(
            embed_linear(&gf16(), &gf4()),
            Err(Error::DimensionTooSmall { src: 4, dst: 2 })
        );
    }

    #[test]
    fn enumeration_roundtrip() {
        let f = FieldCtx::new(3, 2, None).unwrap();
        let els: Vec<_> = f.elements().collect();
        assert_eq!(els.len(), 9);
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        for (i, x) in els.iter().enumerate() {
            assert_eq!(f.index_of(x), i as u64);
        }
    }

    #[test]
    fn json_validation() {
        let f = gf8();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"q":2,"n":3,"modulus":[1,1,0,1]}"#);
        assert_eq!(serde_json::from_str::<FieldCtx>(&s).unwrap(), f);
        assert!(serde_json::from_str::<FieldCtx>(r#"{"q":2,"n":3,"modulus":[1,0,0,1]}"#).is_err());
    }
}
