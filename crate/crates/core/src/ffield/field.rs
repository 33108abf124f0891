use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::arith::{is_prime, prime_factors};
use crate::error::{Error, Result};

/// Largest field size we build tables for.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// An element of `F_q`, stored as the base-`p` integer `Σ c_i p^i` of its
/// coefficient vector over `F_p[t]/(m(t))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Raw base-`p` encoding.
    pub fn index(self) -> u32 {
        self.0
    }
}

struct FieldInner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus over `F_p`, low degree first, length `k + 1`; empty for prime fields.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `0 ≤ i < 2(q-1)`.
    exp: Vec<u32>,
    /// Discrete log of every nonzero element; `log[0]` unused.
    log: Vec<u32>,
}

/// A finite field `F_q = F_p[t]/(m(t))`.
///
/// Cheap to clone; all tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.k == other.inner.k
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.p.hash(state);
        self.inner.k.hash(state);
        self.inner.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.inner.p, self.inner.k, self.inner.modulus)
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.inner.q)
    }
}

/// Multiplies two base-`p` encoded elements through the modulus, no tables.
fn slow_mul(p: u32, k: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let (p64, k) = (p as u64, k as usize);
    let da = digits(p, k, a);
    let db = digits(p, k, b);
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    for i in (k..2 * k).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..k {
            let m = modulus[j] as u64;
            prod[i - k + j] = (prod[i - k + j] + (p64 - m) * c) % p64;
        }
    }
    encode(p, &prod[..k].iter().map(|&c| c as u32).collect::<Vec<_>>())
}

fn digits(p: u32, k: usize, mut a: u32) -> Vec<u32> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    out
}

fn encode(p: u32, coeffs: &[u32]) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_pow(p: u32, k: u32, modulus: &[u32], a: u32, mut e: u64) -> u32 {
    let mut base = a;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(p, k, modulus, acc, base);
        }
        base = slow_mul(p, k, modulus, base, base);
        e >>= 1;
    }
    acc
}

/// Trial division irreducibility test over a prime field, used only to pick
/// the defining modulus before any tables exist.
fn modulus_is_irreducible(p: u32, coeffs: &[u32]) -> bool {
    let n = coeffs.len() - 1;
    let p64 = p as u64;
    // remainder of `coeffs` modulo a monic divisor given low-first
    let rem_is_zero = |div: &[u64]| -> bool {
        let dd = div.len() - 1;
        let mut r: Vec<u64> = coeffs.iter().map(|&c| c as u64).collect();
        for i in (dd..=n).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            for j in 0..=dd {
                r[i - dd + j] = (r[i - dd + j] + (p64 - div[j]) * c) % p64;
            }
        }
        r[..dd].iter().all(|&c| c == 0)
    };
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut m = idx;
            for _ in 0..d {
                div.push(m % p64);
                m /= p64;
            }
            div.push(1);
            if rem_is_zero(&div) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds `F_{p^k}`. For `k > 1` the modulus is the lexicographically
    /// smallest monic irreducible of degree `k`, comparing coefficients from
    /// the constant term upwards.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::BadDegree(k));
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q <= MAX_FIELD_SIZE as u128);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p, k });
        };
        let (p32, q32) = (p as u32, q as u32);
        let modulus = if k == 1 { Vec::new() } else { smallest_irreducible(p32, k) };
        Ok(Self::with_modulus(p32, k, q32, modulus))
    }

    fn with_modulus(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Self {
        let order = (q - 1) as u64;
        let mul = |a: u32, b: u32| -> u32 {
            if k == 1 {
                ((a as u64 * b as u64) % p as u64) as u32
            } else {
                slow_mul(p, k, &modulus, a, b)
            }
        };
        let pow = |a: u32, e: u64| -> u32 {
            if k == 1 {
                let mut base = a as u64;
                let mut acc = 1u64;
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p as u64;
                    }
                    base = base * base % p as u64;
                    e >>= 1;
                }
                acc as u32
            } else {
                slow_pow(p, k, &modulus, a, e)
            }
        };
        let factors = prime_factors(order.max(1));
        let generator = if q == 2 {
            1
        } else {
            (2..q)
                .chain(std::iter::once(1))
                .find(|&g| factors.iter().all(|&l| pow(g, order / l) != 1))
                .expect("multiplicative group is cyclic")
        };
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..n {
            exp[i] = cur;
            exp[i + n] = cur;
            log[cur as usize] = i as u32;
            cur = mul(cur, generator);
        }
        FieldSpec { inner: Arc::new(FieldInner { p, k, q, modulus, exp, log }) }
    }

    pub fn p(&self) -> u64 {
        self.inner.p as u64
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn q(&self) -> u64 {
        self.inner.q as u64
    }

    /// Defining modulus over `F_p`, low degree first (`None` for prime fields).
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.inner.k == 1 {
            None
        } else {
            Some(&self.inner.modulus)
        }
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.k == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The class of `t` (only meaningful for `k > 1`).
    pub fn generator_t(&self) -> FieldElement {
        if self.inner.k == 1 {
            FieldElement::ZERO
        } else {
            FieldElement(self.inner.p)
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let p = self.inner.p;
        assert!(coeffs.len() <= self.inner.k as usize);
        FieldElement(encode(p, &coeffs.iter().map(|c| c % p).collect::<Vec<_>>()))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits(self.inner.p, self.inner.k as usize, a.0)
    }

    /// Element with raw encoding `idx < q`.
    pub fn element(&self, idx: u64) -> FieldElement {
        assert!(idx < self.q());
        FieldElement(idx as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.q).map(FieldElement)
    }

    /// Element as an integer in `[0, p)`, if it lies in the prime field.
    pub fn as_prime(&self, a: FieldElement) -> Option<u32> {
        (a.0 < self.inner.p).then_some(a.0)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let FieldInner { p, k, .. } = *self.inner;
        if k == 1 {
            let s = a.0 + b.0;
            FieldElement(if s >= p { s - p } else { s })
        } else if p == 2 {
            FieldElement(a.0 ^ b.0)
        } else {
            let (mut x, mut y, mut r, mut pw) = (a.0, b.0, 0u32, 1u32);
            for _ in 0..k {
                let d = (x % p + y % p) % p;
                r += d * pw;
                pw = pw.wrapping_mul(p);
                x /= p;
                y /= p;
            }
            FieldElement(r)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let FieldInner { p, k, .. } = *self.inner;
        if p == 2 {
            a
        } else if k == 1 {
            FieldElement(if a.0 == 0 { 0 } else { p - a.0 })
        } else {
            let (mut x, mut r, mut pw) = (a.0, 0u32, 1u32);
            for _ in 0..k {
                let d = x % p;
                r += ((p - d) % p) * pw;
                pw = pw.wrapping_mul(p);
                x /= p;
            }
            FieldElement(r)
        }
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
        let inner = &*self.inner;
        FieldElement(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let inner = &*self.inner;
        let n = inner.q - 1;
        let l = inner.log[a.0 as usize];
        Some(FieldElement(inner.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let inner = &*self.inner;
        let n = (inner.q - 1) as u64;
        let l = (inner.log[a.0 as usize] as u64 * (e % n)) % n;
        FieldElement(inner.exp[l as usize])
    }

    /// Discrete log with respect to the table generator.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.inner.log[a.0 as usize])
    }

    /// Whether `a` is a nonzero square. In characteristic 2 every nonzero
    /// element qualifies.
    pub fn is_nonzero_square(&self, a: FieldElement) -> bool {
        if a.0 == 0 {
            return false;
        }
        self.inner.p == 2 || self.inner.log[a.0 as usize].is_multiple_of(2)
    }

    /// Quadratic character: `0` at zero, `1` on squares, `-1` otherwise.
    pub fn legendre(&self, a: FieldElement) -> i8 {
        if a.0 == 0 {
            0
        } else if self.is_nonzero_square(a) {
            1
        } else {
            -1
        }
    }

    pub fn sqrt(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return Some(a);
        }
        let inner = &*self.inner;
        let l = inner.log[a.0 as usize];
        if inner.p == 2 {
            // squaring is a bijection; invert it through the log
            let n = inner.q - 1;
            let half = if l.is_multiple_of(2) { l / 2 } else { (l + n) / 2 };
            return Some(FieldElement(inner.exp[half as usize]));
        }
        l.is_multiple_of(2).then(|| FieldElement(inner.exp[(l / 2) as usize]))
    }

    /// Absolute trace `F_q → F_p`, returned as an integer in `[0, p)`.
    pub fn trace(&self, a: FieldElement) -> u32 {
        let mut acc = FieldElement::ZERO;
        let mut cur = a;
        for _ in 0..self.inner.k {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.inner.p as u64);
        }
        self.as_prime(acc).expect("trace lands in the prime field")
    }

    /// Builds `F_{q^degree}` together with the embedding of `F_q` into it.
    pub fn extension(&self, degree: u32) -> Result<Embedding> {
        let target = FieldSpec::new(self.p(), self.k() * degree)?;
        Embedding::new(self, target)
    }

    pub fn fmt_element(&self, a: FieldElement) -> String {
        if self.inner.k == 1 {
            return a.0.to_string();
        }
        let c = self.coeffs(a);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let t = match i {
                0 => ci.to_string(),
                1 if ci == 1 => "t".to_string(),
                1 => format!("{ci}*t"),
                _ if ci == 1 => format!("t^{i}"),
                _ => format!("{ci}*t^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Number of nonzero `t`-terms in the printed form of `a`.
    pub(crate) fn term_count(&self, a: FieldElement) -> usize {
        self.coeffs(a).iter().filter(|&&c| c != 0).count()
    }
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for idx in 0..count {
        // c_0 is the most significant digit so the scan is low-degree-first lexicographic
        let mut coeffs = vec![0u32; k as usize + 1];
        let mut m = idx;
        for i in (0..k as usize).rev() {
            coeffs[i] = (m % p as u64) as u32;
            m /= p as u64;
        }
        coeffs[k as usize] = 1;
        if coeffs[0] != 0 && modulus_is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// A field embedding `F_q ↪ F_{q^d}` given by the image of every element.
#[derive(Clone)]
pub struct Embedding {
    pub source: FieldSpec,
    pub target: FieldSpec,
    image: Arc<Vec<FieldElement>>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({:?} -> {:?})", self.source, self.target)
    }
}

impl Embedding {
    pub fn new(source: &FieldSpec, target: FieldSpec) -> Result<Self> {
        if source.p() != target.p() || !target.k().is_multiple_of(source.k()) {
            return Err(Error::FieldMismatch);
        }
        let image = if source.is_prime_field() {
            (0..source.q() as u32).map(FieldElement).collect()
        } else {
            // a root of the source modulus inside the subfield of order q
            let n = target.q() - 1;
            let h = target.pow(FieldElement(target.inner.exp[1]), n / (source.q() - 1));
            let modulus = source.modulus().expect("extension field");
            let eval = |x: FieldElement| {
                modulus
                    .iter()
                    .rev()
                    .fold(FieldElement::ZERO, |acc, &c| target.add(target.mul(acc, x), FieldElement(c)))
            };
            let root = (0..source.q() - 1)
                .map(|j| target.pow(h, j))
                .find(|&x| eval(x).is_zero())
                .ok_or_else(|| Error::Consistency("no root of the modulus in the extension".into()))?;
            let powers: Vec<FieldElement> = (0..source.k()).map(|j| target.pow(root, j as u64)).collect();
            source
                .elements()
                .map(|a| {
                    source.coeffs(a).iter().zip(&powers).fold(FieldElement::ZERO, |acc, (&c, &pw)| {
                        target.add(acc, target.mul(FieldElement(c), pw))
                    })
                })
                .collect()
        };
        Ok(Embedding { source: source.clone(), target, image: Arc::new(image) })
    }

    #[inline]
    pub fn map(&self, a: FieldElement) -> FieldElement {
        self.image[a.0 as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_has_no_modulus() {
        let f = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f.q(), 7);
        assert!(f.modulus().is_none());
    }

    #[test]
    fn f4_modulus_is_t2_t_1() {
        let f = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f.modulus().unwrap(), &[1, 1, 1]);
    }

    #[test]
    fn f9_modulus_is_t2_plus_1() {
        let f = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f.modulus().unwrap(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_composite_and_oversized() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FieldSpec::new(2, 21), Err(Error::FieldTooLarge { .. })));
        assert!(FieldSpec::new(2, 20).is_ok());
    }

    #[test]
    fn field_axioms_small_extensions() {
        for (p, k) in [(2, 3), (3, 2), (5, 2), (7, 1)] {
            let f = FieldSpec::new(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for b in f.elements() {
                    let direct = slow_mul(p as u32, k, &f.inner.modulus, a.0, b.0);
                    if k > 1 {
                        assert_eq!(f.mul(a, b).0, direct);
                    }
                }
            }
        }
    }

    #[test]
    fn squares_and_roots() {
        let f = FieldSpec::new(7, 1).unwrap();
        let squares: Vec<u32> = f.elements().filter(|&a| f.is_nonzero_square(a)).map(|a| a.0).collect();
        assert_eq!(squares, vec![1, 2, 4]);
        let r = f.sqrt(f.from_int(2)).unwrap();
        assert_eq!(f.mul(r, r), f.from_int(2));
        let f8 = FieldSpec::new(2, 3).unwrap();
        for a in f8.elements() {
            let r = f8.sqrt(a).unwrap();
            assert_eq!(f8.mul(r, r), a);
        }
    }

    #[test]
    fn trace_is_additive_and_balanced() {
        let f = FieldSpec::new(2, 3).unwrap();
        let zeros = f.elements().filter(|&a| f.trace(a) == 0).count();
        assert_eq!(zeros, 4);
        let a = f.element(3);
        let b = f.element(6);
        assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % 2);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let f4 = FieldSpec::new(2, 2).unwrap();
        let emb = f4.extension(3).unwrap();
        let big = &emb.target;
        assert_eq!(big.q(), 64);
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(emb.map(f4.mul(a, b)), big.mul(emb.map(a), emb.map(b)));
                assert_eq!(emb.map(f4.add(a, b)), big.add(emb.map(a), emb.map(b)));
            }
        }
    }
}
