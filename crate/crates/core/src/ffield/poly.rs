use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::field::{Embedding, FieldElement, FieldSpec};
use crate::arith::prime_factors;
use crate::error::{Error, Result};

/// A univariate polynomial over `F_q`, coefficients low degree first with no
/// trailing zeros. The zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {:?})", self.field)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivMod,
    Gcd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyArith {
    Single(Poly),
    Pair(Poly, Poly),
}

/// Exact ring arithmetic dispatched by operation name.
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<PolyArith> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        PolyOp::Add => PolyArith::Single(a.add(b)),
        PolyOp::Sub => PolyArith::Single(a.sub(b)),
        PolyOp::Mul => PolyArith::Single(a.mul(b)),
        PolyOp::DivMod => {
            let (q, r) = a.divmod(b)?;
            PolyArith::Pair(q, r)
        }
        PolyOp::Gcd => PolyArith::Single(a.gcd(b)),
    })
}

impl Poly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(field, FieldElement::ONE)
    }

    pub fn constant(field: &FieldSpec, c: FieldElement) -> Self {
        Self::new(field, vec![c])
    }

    pub fn x(field: &FieldSpec) -> Self {
        Self::new(field, vec![FieldElement::ZERO, FieldElement::ONE])
    }

    /// `x - a`.
    pub fn linear(field: &FieldSpec, a: FieldElement) -> Self {
        Self::new(field, vec![field.neg(a), FieldElement::ONE])
    }

    /// The monic polynomial of degree `d` whose lower coefficients are the
    /// base-`q` digits of `idx`.
    pub fn monic_from_index(field: &FieldSpec, d: usize, mut idx: u64) -> Self {
        let q = field.q();
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(field.element(idx % q));
            idx /= q;
        }
        coeffs.push(FieldElement::ONE);
        Poly { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement::ONE
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElement::ONE
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    fn check(&self, other: &Poly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    /// `(quotient, remainder)` with `deg remainder < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor);
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[i - dd] = factor;
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(factor, dj));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::Consistency(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int((i as u64 % f.p()) as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluates at a point of an extension field through `emb`.
    pub fn eval_in(&self, emb: &Embedding, x: FieldElement) -> FieldElement {
        let t = &emb.target;
        self.coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| t.add(t.mul(acc, x), emb.map(c)))
    }

    /// Image of the polynomial under a field embedding.
    pub fn map(&self, emb: &Embedding) -> Poly {
        assert!(self.field == emb.source);
        Poly::new(&emb.target, self.coeffs.iter().map(|&c| emb.map(c)).collect())
    }

    pub fn mulmod(&self, other: &Poly, modulus: &Poly) -> Poly {
        self.mul(other).rem(modulus).expect("nonzero modulus")
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, e: &BigUint, modulus: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(modulus).expect("nonzero modulus");
        let base = self.rem(modulus).expect("nonzero modulus");
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, modulus);
            if e.bit(i) {
                acc = acc.mulmod(&base, modulus);
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `x^(q^j) mod self` for `j = 0..=n`.
    fn frobenius_powers(&self, n: usize) -> Vec<Poly> {
        let q = BigUint::from(self.field.q());
        let x = Poly::x(&self.field).rem(self).expect("nonzero");
        let mut out = vec![x];
        for _ in 0..n {
            let next = out.last().unwrap().powmod(&q, self);
            out.push(next);
        }
        out
    }

    /// Rabin's test. Errors on constant input.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let x = Poly::x(&self.field);
        let frob = f.frobenius_powers(n);
        if !frob[n].sub(&x).rem(&f)?.is_zero() {
            return Ok(false);
        }
        for r in prime_factors(n as u64) {
            let g = frob[n / r as usize].sub(&x).gcd(&f);
            if !g.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Squarefree decomposition: pairwise coprime monic squarefree factors
    /// with their multiplicities, so that `self = lc · Π a_i^{m_i}`.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        self.monic().sqf_rec(1, &mut out);
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    fn sqf_rec(&self, scale: usize, out: &mut Vec<(Poly, usize)>) {
        let f = &self.field;
        let p = f.p() as usize;
        let d = self.derivative();
        let mut c = self.gcd(&d);
        let mut w = self.exact_div(&c).expect("gcd divides");
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.exact_div(&y).expect("gcd divides");
            if !fac.is_one() {
                out.push((fac, i * scale));
            }
            w = y;
            c = c.exact_div(&w).expect("gcd divides");
            i += 1;
        }
        if !c.is_one() {
            // c is a p-th power: take coefficient-wise p-th roots
            let root_exp = f.q() / f.p();
            let coeffs: Vec<FieldElement> =
                c.coeffs.iter().step_by(p).map(|&a| f.pow(a, root_exp)).collect();
            Poly::new(f, coeffs).sqf_rec(scale * p, out);
        }
    }

    /// Product of the squarefree parts occurring with odd multiplicity, times
    /// the leading coefficient.
    pub fn odd_part(&self) -> Poly {
        let mut acc = Poly::constant(&self.field, self.leading());
        for (a, m) in self.squarefree_decomposition() {
            if m % 2 == 1 {
                acc = acc.mul(&a);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree_decomposition().iter().all(|(_, m)| *m == 1)
    }

    /// `v_P(self)` for a nonconstant `P`; `None` for the zero polynomial.
    pub fn valuation(&self, p: &Poly) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut v = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divmod(p).ok()?;
            if !r.is_zero() {
                return Some(v);
            }
            cur = q;
            v += 1;
        }
    }

    /// Distinct-degree factorisation of a squarefree polynomial: for each
    /// degree `d`, the product of its monic irreducible factors of degree `d`.
    pub fn distinct_degree_factorization(&self) -> Vec<(usize, Poly)> {
        let mut out = Vec::new();
        let mut f = self.monic();
        if f.is_constant() {
            return out;
        }
        let q = BigUint::from(self.field.q());
        let x = Poly::x(&self.field);
        let mut h = x.rem(&f).unwrap();
        let mut d = 0;
        while f.degree().unwrap() >= 2 * (d + 1) {
            d += 1;
            h = h.powmod(&q, &f);
            let g = h.sub(&x).gcd(&f);
            if !g.is_one() {
                f = f.exact_div(&g).unwrap();
                h = h.rem(&f).unwrap();
                out.push((d, g));
            }
        }
        if let Some(n) = f.degree().filter(|&n| n > 0) {
            out.push((n, f));
        }
        out
    }

    /// Monic irreducible factors, by trial division against enumerated
    /// irreducibles inside each distinct-degree block. `max_work` caps
    /// `q^d` for the blocks we split; larger blocks are returned whole with
    /// `false` in the flag.
    pub fn irreducible_factors(&self, max_work: u64) -> Vec<(Poly, usize, bool)> {
        let mut out = Vec::new();
        for (sqf, mult) in self.squarefree_decomposition() {
            for (d, block) in sqf.distinct_degree_factorization() {
                if block.degree() == Some(d) {
                    out.push((block, mult, true));
                    continue;
                }
                let work = self.field.q().checked_pow(d as u32);
                match work {
                    Some(w) if w <= max_work => {
                        let mut rest = block;
                        for idx in 0..w {
                            let cand = Poly::monic_from_index(&self.field, d, idx);
                            if cand.divides(&rest) && cand.is_irreducible().unwrap_or(false) {
                                rest = rest.exact_div(&cand).unwrap();
                                out.push((cand, mult, true));
                                if rest.is_one() {
                                    break;
                                }
                            }
                        }
                    }
                    _ => out.push((block, mult, false)),
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = &self.field;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let cs = field.fmt_element(c);
            let multi = field.term_count(c) > 1;
            if i == 0 {
                write!(f, "{cs}")?;
                continue;
            }
            if c != FieldElement::ONE {
                if multi {
                    write!(f, "({cs})*")?;
                } else {
                    write!(f, "{cs}*")?;
                }
            }
            if i == 1 {
                write!(f, "x")?;
            } else {
                write!(f, "x^{i}")?;
            }
        }
        Ok(())
    }
}

/// Number of monic irreducible polynomials of degree `d` over `F_q`,
/// `(1/d) Σ_{e|d} μ(e) q^{d/e}`.
pub fn count_monic_irreducibles(field: &FieldSpec, d: u32) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let q = num_bigint::BigInt::from(field.q());
    let mut total = num_bigint::BigInt::zero();
    for e in crate::arith::divisors(d as u64) {
        let mu = crate::arith::mobius(e);
        if mu != 0 {
            total += q.pow(d / e as u32) * mu;
        }
    }
    let d_big = num_bigint::BigInt::from(d);
    debug_assert!((&total % &d_big).is_zero());
    Ok((total / d_big).to_biguint().expect("count is nonnegative"))
}

/// All monic irreducibles of degree `d`, in index order. `q^d` must not
/// exceed `max_work`.
pub fn enumerate_monic_irreducibles(field: &FieldSpec, d: u32, max_work: u64) -> Result<Vec<Poly>> {
    let n = field
        .q()
        .checked_pow(d)
        .filter(|&n| n <= max_work)
        .ok_or(Error::BudgetExceeded { needed: u64::MAX, allowed: max_work })?;
    let mut out = Vec::new();
    for idx in 0..n {
        let cand = Poly::monic_from_index(field, d as usize, idx);
        if cand.is_irreducible()? {
            out.push(cand);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareTest {
    pub is_square: bool,
    /// Some `w` with `w² ≡ u mod P`, reported when `deg P ≤ 3`. Among `±w`
    /// the one with the smaller coefficient vector (constant term first).
    pub witness: Option<Poly>,
}

/// Euler's criterion alone, without searching for a witness.
pub fn residue_is_square(u: &Poly, place: &Poly) -> Result<bool> {
    let field = u.field();
    if field.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let d = place.degree().filter(|&d| d > 0).ok_or(Error::ConstantPolynomial)?;
    let r = u.rem(place)?;
    if r.is_zero() {
        return Err(Error::ZeroResidue);
    }
    let order = BigUint::from(field.q()).pow(d as u32);
    let e = (order - BigUint::one()) / BigUint::from(2u32);
    Ok(r.powmod(&e, place).is_one())
}

/// Euler's criterion in `F_q[x]/(P)`.
pub fn is_square_in_residue_field(u: &Poly, place: &Poly) -> Result<SquareTest> {
    let field = u.field();
    if field.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let d = place.degree().filter(|&d| d > 0).ok_or(Error::ConstantPolynomial)?;
    let r = u.rem(place)?;
    if r.is_zero() {
        return Err(Error::ZeroResidue);
    }
    let order = BigUint::from(field.q()).pow(d as u32);
    let e = (order - BigUint::one()) / BigUint::from(2u32);
    let is_square = r.powmod(&e, place).is_one();
    let witness = if is_square && d <= 3 { find_square_root(&r, place, d) } else { None };
    Ok(SquareTest { is_square, witness })
}

fn find_square_root(r: &Poly, place: &Poly, d: usize) -> Option<Poly> {
    let field = r.field();
    let q = field.q();
    let total = q.pow(d as u32);
    let mut best: Option<Poly> = None;
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(d);
        let mut m = idx;
        for _ in 0..d {
            coeffs.push(field.element(m % q));
            m /= q;
        }
        let w = Poly::new(field, coeffs);
        if w.mulmod(&w, place) == *r {
            let key = |p: &Poly| (0..d).map(|i| p.coeff(i)).collect::<Vec<_>>();
            if best.as_ref().is_none_or(|b| key(&w) < key(b)) {
                best = Some(w);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::new(p, 1).unwrap()
    }

    fn trial_division_irreducible(poly: &Poly) -> bool {
        let field = poly.field();
        let n = poly.degree().unwrap();
        for d in 1..=n / 2 {
            for idx in 0..field.q().pow(d as u32) {
                if Poly::monic_from_index(field, d, idx).divides(poly) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn gcd_of_common_factor() {
        let f7 = f(7);
        let a = Poly::from_ints(&f7, &[-1, 0, 1]);
        let b = Poly::from_ints(&f7, &[-1, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&f7, &[6, 1]));
    }

    #[test]
    fn long_division_over_f3() {
        let f3 = f(3);
        let (q, r) = Poly::from_ints(&f3, &[0, 0, 0, 1]).divmod(&Poly::from_ints(&f3, &[1, 0, 1])).unwrap();
        assert_eq!(q, Poly::from_ints(&f3, &[0, 1]));
        assert_eq!(r, Poly::from_ints(&f3, &[0, 2]));
    }

    #[test]
    fn product_expansion() {
        let f7 = f(7);
        let p = Poly::from_ints(&f7, &[1, 1]).mul(&Poly::from_ints(&f7, &[2, 1]));
        assert_eq!(p, Poly::from_ints(&f7, &[2, 3, 1]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f7 = f(7);
        let a = Poly::x(&f7);
        assert_eq!(a.divmod(&Poly::zero(&f7)).unwrap_err(), Error::DivisionByZero);
        assert!(matches!(poly_arith(&a, &Poly::zero(&f7), PolyOp::DivMod), Err(Error::DivisionByZero)));
        assert_eq!(poly_arith(&a, &Poly::x(&f(5)), PolyOp::Add).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn zero_has_no_degree() {
        let f7 = f(7);
        assert_eq!(Poly::zero(&f7).degree(), None);
        assert_eq!(Poly::from_ints(&f7, &[7, 14]).degree(), None);
        assert_eq!(Poly::one(&f7).degree(), Some(0));
    }

    #[test]
    fn irreducibility_examples() {
        let f7 = f(7);
        assert!(Poly::from_ints(&f7, &[6, 4, 1]).is_irreducible().unwrap());
        assert!(!Poly::from_ints(&f7, &[-1, 0, 1]).is_irreducible().unwrap());
        assert!(!Poly::from_ints(&f(13), &[1, 0, 1]).is_irreducible().unwrap());
        assert_eq!(Poly::one(&f7).is_irreducible().unwrap_err(), Error::ConstantPolynomial);
    }

    #[test]
    fn rabin_matches_trial_division_exhaustively() {
        for (p, k, max_deg) in [(2u64, 1u32, 6usize), (3, 1, 5), (5, 1, 4), (2, 2, 4), (7, 1, 3)] {
            let field = FieldSpec::new(p, k).unwrap();
            for d in 1..=max_deg {
                for idx in 0..field.q().pow(d as u32) {
                    let poly = Poly::monic_from_index(&field, d, idx);
                    assert_eq!(poly.is_irreducible().unwrap(), trial_division_irreducible(&poly), "{poly}");
                }
            }
        }
    }

    #[test]
    fn mobius_count_matches_enumeration() {
        for (p, k, max_deg) in [(2u64, 1u32, 8u32), (3, 1, 5), (7, 1, 3), (2, 2, 4), (3, 2, 2), (13, 1, 2)] {
            let field = FieldSpec::new(p, k).unwrap();
            for d in 1..=max_deg {
                let listed = enumerate_monic_irreducibles(&field, d, 100_000).unwrap();
                assert_eq!(BigUint::from(listed.len()), count_monic_irreducibles(&field, d).unwrap());
            }
        }
        assert_eq!(count_monic_irreducibles(&f(7), 2).unwrap(), BigUint::from(21u32));
        assert_eq!(count_monic_irreducibles(&f(2), 3).unwrap(), BigUint::from(2u32));
        assert_eq!(count_monic_irreducibles(&f(11), 1).unwrap(), BigUint::from(11u32));
    }

    #[test]
    fn a7_congruence_has_witness() {
        let f7 = f(7);
        let q = Poly::from_ints(&f7, &[1, 0, 1, 3, 3, 2, 1]);
        let place = Poly::from_ints(&f7, &[6, 4, 1]);
        let t = is_square_in_residue_field(&q, &place).unwrap();
        assert!(t.is_square);
        assert_eq!(t.witness, Some(Poly::from_ints(&f7, &[3, 2])));
    }

    #[test]
    fn euler_criterion_small_cases() {
        let f7 = f(7);
        let place = Poly::from_ints(&f7, &[1, 1]);
        assert!(!is_square_in_residue_field(&Poly::x(&f7), &place).unwrap().is_square);
        assert!(is_square_in_residue_field(&Poly::one(&f7), &place).unwrap().is_square);
        assert_eq!(is_square_in_residue_field(&place, &place).unwrap_err(), Error::ZeroResidue);
        let f2 = f(2);
        assert_eq!(
            is_square_in_residue_field(&Poly::one(&f2), &Poly::x(&f2)).unwrap_err(),
            Error::EvenCharacteristic
        );
    }

    #[test]
    fn euler_matches_exhaustive_squaring() {
        for (p, k) in [(3u64, 1u32), (5, 1), (7, 1), (3, 2)] {
            let field = FieldSpec::new(p, k).unwrap();
            for d in 1..=2usize {
                for pidx in 0..field.q().pow(d as u32) {
                    let place = Poly::monic_from_index(&field, d, pidx);
                    if !place.is_irreducible().unwrap() {
                        continue;
                    }
                    let n = field.q().pow(d as u32);
                    let residues: Vec<Poly> = (0..n)
                        .map(|i| {
                            let mut c = Vec::new();
                            let mut m = i;
                            for _ in 0..d {
                                c.push(field.element(m % field.q()));
                                m /= field.q();
                            }
                            Poly::new(&field, c)
                        })
                        .collect();
                    let squares: std::collections::HashSet<Poly> =
                        residues.iter().map(|w| w.mulmod(w, &place)).collect();
                    for u in residues.iter().filter(|u| !u.is_zero()) {
                        let t = is_square_in_residue_field(u, &place).unwrap();
                        assert_eq!(t.is_square, squares.contains(u));
                        if let Some(w) = t.witness {
                            assert_eq!(w.mulmod(&w, &place), *u);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn squarefree_decomposition_handles_pth_powers() {
        let f3 = f(3);
        let a = Poly::from_ints(&f3, &[1, 1]); // x+1
        let b = Poly::from_ints(&f3, &[1, 0, 1]); // x^2+1
        let u = a.pow(3).mul(&b.pow(2)).mul(&Poly::x(&f3));
        let dec = u.squarefree_decomposition();
        let rebuilt = dec.iter().fold(Poly::one(&f3), |acc, (p, m)| acc.mul(&p.pow(*m as u32)));
        assert_eq!(rebuilt, u);
        assert_eq!(u.odd_part(), Poly::x(&f3).mul(&a));
    }

    #[test]
    fn factors_via_ddf_and_trial_division() {
        let f7 = f(7);
        let u = Poly::from_ints(&f7, &[0, 1]).mul(&Poly::from_ints(&f7, &[1, 1]))
            .mul(&Poly::from_ints(&f7, &[6, 4, 1]))
            .mul(&Poly::from_ints(&f7, &[4, 0, 1]));
        let facs = u.irreducible_factors(1000);
        assert_eq!(facs.len(), 4);
        assert!(facs.iter().all(|(p, m, split)| *m == 1 && *split && p.is_irreducible().unwrap()));
    }
}
