//! Finite field arithmetic backed by discrete-log tables.
//!
//! A [`FieldSpec`] describes F_q with q = p^k up to a configured cap
//! (default 2^16, so the exp/log tables fit comfortably in memory).
//! Elements are identified by an index in `[0, q)`: the index encodes the
//! coefficient vector of the element in the polynomial basis, base p, so
//! index 0 is the additive identity and index 1 the multiplicative one.
//! Multiplication, inversion and powers go through the log/exp tables in
//! O(1); addition works digit-wise in base p (a single modular add when
//! k = 1).

use crate::error::{Error, Result};
use std::sync::Arc;

/// Default upper bound on the field order.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 16;

/// An element of a finite field, identified by its index in `[0, q)`.
///
/// The index is only meaningful together with the [`FieldSpec`] that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The finite field F_q, q = p^k, with log/exp tables over a fixed
/// generator of the multiplicative group.
#[derive(Debug)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible modulus over F_p, low-to-high coefficients,
    /// length k+1. For k = 1 this is the placeholder `x`.
    modulus: Vec<u64>,
    /// exp[i] = index of g^i for i in [0, q-1).
    exp: Vec<u32>,
    /// log[idx] for idx != 0; log[0] is a sentinel.
    log: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense univariate polynomial arithmetic over F_p, used only while
/// building tables. Coefficients low-to-high, no trailing zeros.
mod fp_poly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        rem(&mut prod, modulus, p);
        prod
    }

    /// Reduce `a` modulo the monic `modulus` in place.
    pub fn rem(a: &mut Vec<u64>, modulus: &[u64], p: u64) {
        let dm = modulus.len() - 1;
        while a.len() > dm {
            let lead = *a.last().unwrap();
            let shift = a.len() - 1 - dm;
            if lead != 0 {
                for (i, &mc) in modulus.iter().enumerate() {
                    let idx = i + shift;
                    a[idx] = (a[idx] + (p - mc % p) % p * lead) % p;
                }
            }
            a.pop();
        }
        trim(a);
    }

    /// Remainder of `a` divided by a not-necessarily-monic divisor.
    pub fn rem_general(a: &[u64], b: &[u64], p: u64, inv: impl Fn(u64) -> u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv(b[db]);
        while r.len() > db {
            let coef = *r.last().unwrap() % p * lead_inv % p;
            let shift = r.len() - 1 - db;
            if coef != 0 {
                for (i, &bc) in b.iter().enumerate() {
                    let idx = i + shift;
                    r[idx] = (r[idx] + (p - bc * coef % p) % p) % p;
                }
            }
            r.pop();
            trim(&mut r);
            if r.len() <= db {
                break;
            }
        }
        r
    }
}

/// Irreducibility over F_p by trial division against every monic
/// polynomial of degree 1..=deg/2.
fn fp_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    let inv = |a: u64| -> u64 {
        // Fermat inverse; p is prime and a != 0.
        let mut r = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        r
    };
    for d in 1..=deg / 2 {
        // All monic divisors of degree d: p^d candidates.
        let count = p.pow(d as u32);
        for m in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut mm = m;
            for _ in 0..d {
                cand.push(mm % p);
                mm /= p;
            }
            cand.push(1);
            let r = fp_poly::rem_general(poly, &cand, p, inv);
            if r.is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest (by base-p integer encoding of the non-leading coefficients)
/// monic irreducible of degree k over F_p.
fn find_modulus(p: u64, k: u32) -> Result<Vec<u64>> {
    if k == 1 {
        return Ok(vec![0, 1]);
    }
    let count = p
        .checked_pow(k)
        .ok_or(Error::NoIrreducibleFound(k, p))?;
    for m in 0..count {
        let mut cand = Vec::with_capacity(k as usize + 1);
        let mut mm = m;
        for _ in 0..k {
            cand.push(mm % p);
            mm /= p;
        }
        cand.push(1);
        if fp_irreducible(&cand, p) {
            return Ok(cand);
        }
    }
    Err(Error::NoIrreducibleFound(k, p))
}

impl FieldSpec {
    /// Construct F_{p^k} with the default order cap.
    pub fn new(p: u64, k: u32) -> Result<Arc<FieldSpec>> {
        Self::with_cap(p, k, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(p: u64, k: u32, cap: u64) -> Result<Arc<FieldSpec>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::InvalidInput("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= cap)
            .ok_or(Error::OrderTooLarge(p.saturating_pow(k), cap))?;
        let modulus = find_modulus(p, k)?;
        debug_assert!(fp_irreducible(&modulus, p));

        let spec = FieldSpec {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let (exp, log) = spec.build_tables()?;
        Ok(Arc::new(FieldSpec { exp, log, ..spec }))
    }

    fn decode(&self, idx: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut m = idx;
        for _ in 0..self.k {
            v.push(m % self.p);
            m /= self.p;
        }
        fp_poly::trim(&mut v);
        v
    }

    fn encode(&self, poly: &[u64]) -> u64 {
        let mut idx = 0u64;
        for &c in poly.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    fn build_tables(&self) -> Result<(Vec<u32>, Vec<u32>)> {
        let q = self.q;
        let order = q - 1;
        let factors = prime_factors(order);
        let mul_idx = |a: u64, b: u64| -> u64 {
            let pa = self.decode(a);
            let pb = self.decode(b);
            self.encode(&fp_poly::mul_mod(&pa, &pb, &self.modulus, self.p))
        };
        let pow_idx = |mut base: u64, mut e: u64| -> u64 {
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_idx(acc, base);
                }
                base = mul_idx(base, base);
                e >>= 1;
            }
            acc
        };
        // Smallest-index generator of the multiplicative group.
        let mut generator = 0u64;
        for cand in 2..q {
            if factors.iter().all(|&r| pow_idx(cand, order / r) != 1) {
                generator = cand;
                break;
            }
        }
        if generator == 0 {
            if q == 2 {
                generator = 1;
            } else {
                return Err(Error::NoIrreducibleFound(self.k, self.p));
            }
        }
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut acc = 1u64;
        for i in 0..order {
            exp[i as usize] = acc as u32;
            log[acc as usize] = i as u32;
            acc = mul_idx(acc, generator);
        }
        if acc != 1 {
            return Err(Error::NoIrreducibleFound(self.k, self.p));
        }
        Ok((exp, log))
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The fixed generator g with exp(1) = g.
    pub fn generator(&self) -> FieldElement {
        if self.q == 2 {
            FieldElement::ONE
        } else {
            FieldElement(self.exp[1])
        }
    }

    pub fn element(&self, index: u64) -> FieldElement {
        assert!(index < self.q, "element index {index} out of range");
        FieldElement(index as u32)
    }

    /// Embed a signed integer via reduction into the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let p = self.p as i64;
        let r = v.rem_euclid(p) as u32;
        FieldElement(r)
    }

    /// All elements, in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|i| FieldElement(i as u32))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            let s = a.0 as u64 + b.0 as u64;
            let s = if s >= self.p { s - self.p } else { s };
            return FieldElement(s as u32);
        }
        let mut ai = a.0 as u64;
        let mut bi = b.0 as u64;
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.k {
            let s = (ai % self.p + bi % self.p) % self.p;
            out += s * mult;
            mult *= self.p;
            ai /= self.p;
            bi /= self.p;
        }
        FieldElement(out as u32)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.k == 1 {
            if a.0 == 0 {
                return a;
            }
            return FieldElement((self.p - a.0 as u64) as u32);
        }
        let mut ai = a.0 as u64;
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.k {
            let d = ai % self.p;
            let nd = if d == 0 { 0 } else { self.p - d };
            out += nd * mult;
            mult *= self.p;
            ai /= self.p;
        }
        FieldElement(out as u32)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = (self.q - 1) as u64;
        let la = self.log[a.0 as usize] as u64;
        let lb = self.log[b.0 as usize] as u64;
        FieldElement(self.exp[((la + lb) % order) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = (self.q - 1) as u64;
        let la = self.log[a.0 as usize] as u64;
        Ok(FieldElement(self.exp[((order - la) % order) as usize]))
    }

    /// a^e with the conventions 0^0 = 1 and 0^e = 0 for e > 0.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = (self.q - 1) as u64;
        let la = self.log[a.0 as usize] as u64;
        let le = (la % order).wrapping_mul(e % order) % order;
        FieldElement(self.exp[le as usize])
    }

    /// g^e for the fixed generator.
    pub fn generator_pow(&self, e: u64) -> FieldElement {
        self.pow(self.generator(), e)
    }

    /// Discrete log of a nonzero element with respect to the fixed generator.
    pub fn dlog(&self, a: FieldElement) -> Option<u32> {
        if a.0 == 0 {
            None
        } else {
            Some(self.log[a.0 as usize])
        }
    }

    /// Whether the element lies in the prime subfield (its index encodes a
    /// constant polynomial).
    pub fn in_prime_subfield(&self, a: FieldElement) -> bool {
        (a.0 as u64) < self.p
    }

    /// The embedding of this field into an extension `ext` of the same
    /// characteristic with k | ext.k, as a full lookup table indexed by
    /// element index. The generator image is chosen as the smallest-index
    /// root of this field's modulus in `ext`, so the embedding is
    /// deterministic.
    pub fn embedding_into(&self, ext: &FieldSpec) -> Result<Vec<FieldElement>> {
        if ext.p != self.p || ext.k % self.k != 0 {
            return Err(Error::DimensionMismatch(format!(
                "no embedding of F_{} into F_{}",
                self.q, ext.q
            )));
        }
        if self.k == 1 {
            return Ok((0..self.q).map(|i| FieldElement(i as u32)).collect());
        }
        // Root of our modulus inside ext.
        let mut root = None;
        for z in ext.elements() {
            let mut acc = FieldElement::ZERO;
            let mut zp = FieldElement::ONE;
            for &c in &self.modulus {
                if c != 0 {
                    acc = ext.add(acc, ext.mul(ext.from_int(c as i64), zp));
                }
                zp = ext.mul(zp, z);
            }
            if acc.is_zero() {
                root = Some(z);
                break;
            }
        }
        let root = root.ok_or_else(|| {
            Error::DimensionMismatch(format!("modulus has no root in F_{}", ext.q))
        })?;
        let table = (0..self.q)
            .map(|idx| {
                let digits = self.decode(idx);
                let mut acc = FieldElement::ZERO;
                let mut zp = FieldElement::ONE;
                for &c in &digits {
                    if c != 0 {
                        acc = ext.add(acc, ext.mul(ext.from_int(c as i64), zp));
                    }
                    zp = ext.mul(zp, root);
                }
                acc
            })
            .collect();
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert!(matches!(FieldSpec::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(FieldSpec::new(1, 1), Err(Error::NotPrime(1))));
    }

    #[test]
    fn rejects_orders_above_cap() {
        assert!(matches!(
            FieldSpec::new(2, 17),
            Err(Error::OrderTooLarge(..))
        ));
    }

    #[test]
    fn small_prime_fields() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f2.q(), 2);
        let f17 = FieldSpec::new(17, 1).unwrap();
        assert_eq!(f17.q(), 17);
        // F_5: 3 + 4 = 2
        let f5 = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f5.add(f5.element(3), f5.element(4)), f5.element(2));
        // F_7: inv(3) = 5
        let f7 = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f7.inv(f7.element(3)).unwrap(), f7.element(5));
    }

    #[test]
    fn f9_multiplicative_orders() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.q(), 9);
        // Every nonzero element satisfies a^8 = 1, brute force over the table.
        for a in f9.elements().skip(1) {
            let mut acc = FieldElement::ONE;
            for _ in 0..8 {
                acc = f9.mul(acc, a);
            }
            assert_eq!(acc, FieldElement::ONE, "a={:?}", a);
        }
    }

    #[test]
    fn exp_table_is_bijective_onto_nonzero() {
        for (p, k) in [(2u64, 4u32), (3, 2), (5, 2), (7, 1), (13, 1)] {
            let f = FieldSpec::with_cap(p, k, 1 << 16).unwrap();
            let q = f.q();
            let mut seen = vec![false; q as usize];
            for i in 0..(q - 1) {
                let e = f.exp[i as usize];
                assert!(e != 0);
                assert!(!seen[e as usize]);
                seen[e as usize] = true;
            }
            // exp(i)*exp(j) = exp((i+j) mod (q-1))
            for i in 0..(q - 1) {
                for j in 0..(q - 1) {
                    let prod = f.mul(FieldElement(f.exp[i as usize]), FieldElement(f.exp[j as usize]));
                    assert_eq!(prod.0, f.exp[((i + j) % (q - 1)) as usize]);
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for (p, k) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
            let f = FieldSpec::new(p, k).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, FieldElement::ZERO), a);
                assert_eq!(f.mul(a, FieldElement::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn inv_of_zero_errors() {
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn pow_conventions() {
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f.pow(FieldElement::ZERO, 0), FieldElement::ONE);
        assert_eq!(f.pow(FieldElement::ZERO, 3), FieldElement::ZERO);
        assert_eq!(f.pow(f.element(2), 4), FieldElement::ONE);
    }

    #[test]
    fn deterministic_modulus_selection() {
        let a = FieldSpec::new(2, 4).unwrap();
        let b = FieldSpec::new(2, 4).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        // x^4 + x + 1 is the smallest-encoding irreducible of degree 4 over F_2.
        assert_eq!(a.modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn embedding_preserves_structure() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        let f81 = FieldSpec::new(3, 4).unwrap();
        let emb = f9.embedding_into(&f81).unwrap();
        for a in f9.elements() {
            for b in f9.elements() {
                assert_eq!(
                    emb[f9.add(a, b).0 as usize],
                    f81.add(emb[a.0 as usize], emb[b.0 as usize])
                );
                assert_eq!(
                    emb[f9.mul(a, b).0 as usize],
                    f81.mul(emb[a.0 as usize], emb[b.0 as usize])
                );
            }
        }
        // Injective.
        let mut seen = std::collections::HashSet::new();
        for e in &emb {
            assert!(seen.insert(e.0));
        }
    }
}
