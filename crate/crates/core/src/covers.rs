//! Quadratic covers of the rational function field: Kummer `y² = u(x)`,
//! Artin–Schreier `y² + y = f(x)` in characteristic 2, composita of several
//! Kummer covers, and the closed-form invariants of the
//! `y^q + y = x^{q₀}(x^q + x)` family.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{parse_poly, residue_is_square, FieldElement, FieldSpec, Poly};

/// A place of `F_q(x)`: a monic irreducible polynomial or the infinite place.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn finite(p: Poly) -> Result<Place> {
        if !p.is_monic() {
            return Err(Error::InvalidArgument(format!("place {p} is not monic")));
        }
        if !p.is_irreducible()? {
            return Err(Error::NotIrreducible(p.to_string()));
        }
        Ok(Place::Finite(p))
    }

    /// `x - a`.
    pub fn rational(field: &FieldSpec, a: FieldElement) -> Place {
        Place::Finite(Poly::linear(field, a))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().expect("nonzero"),
            Place::Infinity => 1,
        }
    }

    /// Parses `"inf"` or a monic irreducible polynomial.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Place> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(Place::Infinity),
            other => Place::finite(parse_poly(field, other)?),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite places by polynomial order, infinity last.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SplitType {
    Ramified,
    Split,
    Inert,
}

/// Behaviour of a place in a compositum of quadratic covers: which
/// coordinates ramify, and the Frobenius character on the rest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MultiSplit {
    pub ramified: Vec<bool>,
    /// `1` where the place is inert in `k(y_i)`, `0` otherwise (always `0`
    /// on ramified coordinates).
    pub characters: Vec<u8>,
}

impl MultiSplit {
    pub fn splits_completely(&self) -> bool {
        self.ramified.iter().all(|r| !r) && self.characters.iter().all(|&c| c == 0)
    }

    pub fn is_unramified(&self) -> bool {
        self.ramified.iter().all(|r| !r)
    }
}

/// `y² = u(x)` over `F_q`, `q` odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KummerCover {
    u: Poly,
    u_sf: Poly,
}

impl KummerCover {
    pub fn new(u: Poly) -> Result<Self> {
        if u.field().p() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if u.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let u_sf = u.odd_part();
        if u_sf.is_constant() {
            return Err(Error::InvalidCover(format!("{u} is a constant times a square")));
        }
        Ok(KummerCover { u, u_sf })
    }

    pub fn parse(field: &FieldSpec, s: &str) -> Result<Self> {
        Self::new(parse_poly(field, s)?)
    }

    pub fn field(&self) -> &FieldSpec {
        self.u.field()
    }

    pub fn u(&self) -> &Poly {
        &self.u
    }

    /// Product of the factors of `u` with odd multiplicity, times `lc(u)`.
    pub fn u_sf(&self) -> &Poly {
        &self.u_sf
    }

    pub fn splitting(&self, place: &Place) -> Result<SplitType> {
        kummer_splitting(self, place)
    }

    /// `Σ deg P` over ramified places, infinity included.
    pub fn ramified_degree_sum(&self) -> usize {
        let d = self.u_sf.degree().unwrap();
        d + d % 2
    }

    pub fn genus(&self) -> usize {
        kummer_genus(self)
    }

    /// Ramified places, finite ones found by factoring the odd part of `u`.
    /// Factor blocks whose degree puts enumeration past `max_work` are
    /// reported through the second component as `(degree, count)`.
    pub fn ramified_places(&self, max_work: u64) -> (Vec<Place>, Vec<(usize, usize)>) {
        let mut places = Vec::new();
        let mut unsplit = Vec::new();
        for (p, _, split) in self.u_sf.monic().irreducible_factors(max_work) {
            let d = p.degree().unwrap();
            if split {
                places.push(Place::Finite(p));
            } else {
                let n = p.distinct_degree_factorization().first().map(|(dd, _)| *dd).unwrap_or(d);
                unsplit.push((n, d / n));
            }
        }
        if self.u_sf.degree().unwrap() % 2 == 1 {
            places.push(Place::Infinity);
        }
        places.sort();
        (places, unsplit)
    }
}

/// Ramified iff `v_P(u)` is odd; otherwise split iff the unit part of `u` is
/// a square in the residue field. At infinity, ramified iff `deg u` is odd,
/// else split iff the leading coefficient is a square.
pub fn kummer_splitting(c: &KummerCover, place: &Place) -> Result<SplitType> {
    match place {
        Place::Infinity => {
            if c.u.degree().unwrap() % 2 == 1 {
                Ok(SplitType::Ramified)
            } else if c.field().is_nonzero_square(c.u.leading()) {
                Ok(SplitType::Split)
            } else {
                Ok(SplitType::Inert)
            }
        }
        Place::Finite(p) => {
            let v = c.u.valuation(p).expect("u is nonzero");
            if v % 2 == 1 {
                return Ok(SplitType::Ramified);
            }
            let unit = c.u.exact_div(&p.pow(v as u32))?;
            let t = residue_is_square(&unit, p)?;
            Ok(if t { SplitType::Split } else { SplitType::Inert })
        }
    }
}

/// Hurwitz: `2g - 2 = -4 + Σ_{P ramified} deg P`.
pub fn kummer_genus(c: &KummerCover) -> usize {
    let s = c.ramified_degree_sum();
    debug_assert!(s.is_multiple_of(2) && s >= 2);
    (s - 2) / 2
}

/// `y² + y = f(x)` over `F_q`, `q` even, with every pole of odd order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct As2Cover {
    num: Poly,
    den: Poly,
}

impl As2Cover {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        let field = num.field().clone();
        if field.p() != 2 {
            return Err(Error::OddCharacteristic);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() { (num, den) } else { (num.exact_div(&g)?, den.exact_div(&g)?) };
        let lc = field.inv(den.leading()).expect("nonzero");
        num = num.scale(lc);
        den = den.scale(lc);
        if den.is_constant() && num.is_constant() {
            return Err(Error::InvalidCover("constant right-hand side".into()));
        }
        for (a, m) in den.squarefree_decomposition() {
            if m % 2 == 0 {
                return Err(Error::InvalidCover(format!(
                    "pole of even order {m} at {a}; Artin–Schreier reduction is not supported"
                )));
            }
        }
        let (dn, dd) = (num.degree().unwrap_or(0), den.degree().unwrap());
        if !num.is_zero() && dn > dd && (dn - dd) % 2 == 0 {
            return Err(Error::InvalidCover(format!(
                "pole of even order {} at infinity; Artin–Schreier reduction is not supported",
                dn - dd
            )));
        }
        Ok(As2Cover { num, den })
    }

    pub fn field(&self) -> &FieldSpec {
        self.num.field()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Pole order at infinity (0 if regular there).
    pub fn pole_order_at_infinity(&self) -> usize {
        match self.num.degree() {
            Some(dn) if dn > self.den.degree().unwrap() => dn - self.den.degree().unwrap(),
            _ => 0,
        }
    }

    /// Value at infinity when regular there.
    pub fn value_at_infinity(&self) -> Option<FieldElement> {
        if self.pole_order_at_infinity() > 0 {
            return None;
        }
        if self.num.degree() == self.den.degree() {
            self.field().div(self.num.leading(), self.den.leading())
        } else {
            Some(FieldElement::ZERO)
        }
    }

    pub fn splitting(&self, place: &Place) -> Result<SplitType> {
        as2_splitting(self, place)
    }

    pub fn genus(&self) -> usize {
        as2_genus(self)
    }
}

/// Poles ramify; elsewhere the place splits iff the absolute trace of the
/// residue of `f` vanishes.
pub fn as2_splitting(c: &As2Cover, place: &Place) -> Result<SplitType> {
    let field = c.field();
    match place {
        Place::Infinity => match c.value_at_infinity() {
            None => Ok(SplitType::Ramified),
            Some(v) => Ok(if field.trace(v) == 0 { SplitType::Split } else { SplitType::Inert }),
        },
        Place::Finite(p) => {
            if p.divides(&c.den) {
                return Ok(SplitType::Ramified);
            }
            let d = p.degree().unwrap();
            // den^{-1} = den^{q^d - 2} in the residue field
            let order = BigUint::from(field.q()).pow(d as u32);
            let inv = c.den.powmod(&(order - BigUint::from(2u32)), p);
            let val = c.num.mulmod(&inv, p);
            let mut acc = Poly::zero(field);
            let mut cur = val;
            for _ in 0..field.k() as usize * d {
                acc = acc.add(&cur);
                cur = cur.mulmod(&cur, p);
            }
            if acc.is_zero() {
                Ok(SplitType::Split)
            } else if acc.is_one() {
                Ok(SplitType::Inert)
            } else {
                Err(Error::Consistency(format!("trace of residue at {p} is not in F_2: {acc}")))
            }
        }
    }
}

/// `2g - 2 = -4 + Σ_{poles P} (m_P + 1) deg P`.
pub fn as2_genus(c: &As2Cover) -> usize {
    let mut s: usize = c
        .den
        .squarefree_decomposition()
        .iter()
        .map(|(a, m)| (m + 1) * a.degree().unwrap())
        .sum();
    let m_inf = c.pole_order_at_infinity();
    if m_inf > 0 {
        s += m_inf + 1;
    }
    debug_assert!(s.is_multiple_of(2) && s >= 2);
    (s - 2) / 2
}

/// The compositum of `k(y_i)`, `y_i² = u_i`, for pairwise coprime
/// squarefree `u_i` over `F_q`, `q` odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiQuadCover {
    factors: Vec<Poly>,
}

impl MultiQuadCover {
    pub fn new(factors: Vec<Poly>) -> Result<Self> {
        let first = factors.first().ok_or_else(|| Error::InvalidCover("no factors".into()))?;
        if first.field().p() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        for (i, a) in factors.iter().enumerate() {
            if a.is_constant() {
                return Err(Error::ConstantPolynomial);
            }
            if !a.is_squarefree() {
                return Err(Error::InvalidCover(format!("factor {a} is not squarefree")));
            }
            for b in &factors[..i] {
                if !a.gcd(b).is_one() {
                    return Err(Error::InvalidCover(format!("factors {b} and {a} are not coprime")));
                }
            }
        }
        Ok(MultiQuadCover { factors })
    }

    pub fn field(&self) -> &FieldSpec {
        self.factors[0].field()
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    /// `k(y)` with `y² = Π u_i`.
    pub fn product_cover(&self) -> Result<KummerCover> {
        let prod = self.factors.iter().fold(Poly::one(self.field()), |acc, f| acc.mul(f));
        KummerCover::new(prod)
    }

    pub fn analysis(&self, place: &Place) -> Result<MultiSplit> {
        multiquad_analysis(self, place)
    }

    /// Hurwitz over `k`: every ramified place has index 2 in the compositum.
    pub fn genus(&self) -> usize {
        let n = self.n() as u32;
        let d: usize = self.factors.iter().map(|f| f.degree().unwrap()).sum();
        let inf = self.factors.iter().any(|f| f.degree().unwrap() % 2 == 1) as usize;
        // 2g - 2 = -2^{n+1} + 2^{n-1}(D + δ)
        let two_g = (1i128 << (n - 1)) * (d + inf) as i128 - (1i128 << (n + 1)) + 2;
        (two_g / 2) as usize
    }
}

pub fn multiquad_analysis(c: &MultiQuadCover, place: &Place) -> Result<MultiSplit> {
    let field = c.field();
    let n = c.n();
    let mut ramified = vec![false; n];
    let mut characters = vec![0u8; n];
    for (i, u) in c.factors.iter().enumerate() {
        match place {
            Place::Infinity => {
                if u.degree().unwrap() % 2 == 1 {
                    ramified[i] = true;
                } else if !field.is_nonzero_square(u.leading()) {
                    characters[i] = 1;
                }
            }
            Place::Finite(p) => {
                if p.divides(u) {
                    ramified[i] = true;
                } else if !residue_is_square(u, p)? {
                    characters[i] = 1;
                }
            }
        }
    }
    Ok(MultiSplit { ramified, characters })
}

/// Genera of `k(y)` and of the compositum `H` when `n` distinct monic
/// irreducibles of degree `m` are used: `g(k(y)) - 1 = (mn + ε - 4)/2` and
/// `g(H) = 2^{n-2}(mn + ε - 4) + 1`, `ε = m mod 2`.
pub fn multiquad_genus_construction(m: u64, n: u32) -> Result<(u64, u64)> {
    if n < 2 || m * n as u64 <= 3 {
        return Err(Error::InvalidArgument(format!("need n ≥ 2 and mn ≥ 4 (m={m}, n={n})")));
    }
    let eps = m % 2;
    let core = m * n as u64 + eps - 4;
    if core % 2 == 1 {
        return Err(Error::InvalidArgument(format!("mn + ε - 4 = {core} is odd; genus not integral")));
    }
    Ok((core / 2 + 1, (1u64 << (n - 2)) * core + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DlFamilyStats {
    pub q: u64,
    pub q0: u64,
    /// Rational places of `y^q + y = x^{q₀}(x^q + x)`.
    pub n: u64,
    pub genus: u64,
    /// Rational places of the degree-`q/4` subcover (only for `q ≥ 4`).
    pub m_n: Option<u64>,
    pub m_genus: Option<u64>,
    /// Direct count of affine solutions plus the point at infinity, for small `q`.
    pub brute_force_n: Option<u64>,
}

/// Closed-form invariants of `y^q + y = x^{q₀}(x^q + x)`, `q = 2q₀²`.
pub fn dl_family_stats(q: u64) -> Result<DlFamilyStats> {
    let e = q.trailing_zeros();
    if q < 2 || !q.is_power_of_two() || e.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("{q} is not an odd power of 2")));
    }
    let q0 = 1u64 << (e / 2);
    let brute_force_n = if q <= 8 { Some(dl_brute_force_count(q)?) } else { None };
    let stats = DlFamilyStats {
        q,
        q0,
        n: q * q + 1,
        genus: q0 * (q - 1),
        m_n: (q >= 4).then(|| q * q / 4 + 1),
        m_genus: (q >= 4).then(|| q0 * (q / 4 - 1)),
        brute_force_n,
    };
    if let Some(b) = brute_force_n {
        if b != stats.n {
            return Err(Error::Consistency(format!("brute-force count {b} differs from q²+1 = {}", stats.n)));
        }
    }
    Ok(stats)
}

fn dl_brute_force_count(q: u64) -> Result<u64> {
    let e = q.trailing_zeros();
    let field = FieldSpec::new(2, e)?;
    let q0 = 1u64 << (e / 2);
    let mut count = 1; // the totally ramified place at infinity
    for x in field.elements() {
        let rhs = field.mul(field.pow(x, q0), field.add(field.pow(x, q), x));
        for y in field.elements() {
            if field.add(field.pow(y, q), y) == rhs {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Anything we can count points on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverModel {
    Rational(FieldSpec),
    Kummer(KummerCover),
    As2(As2Cover),
    MultiQuad(MultiQuadCover),
}

impl CoverModel {
    pub fn field(&self) -> &FieldSpec {
        match self {
            CoverModel::Rational(f) => f,
            CoverModel::Kummer(c) => c.field(),
            CoverModel::As2(c) => c.field(),
            CoverModel::MultiQuad(c) => c.field(),
        }
    }

    pub fn genus(&self) -> usize {
        match self {
            CoverModel::Rational(_) => 0,
            CoverModel::Kummer(c) => c.genus(),
            CoverModel::As2(c) => c.genus(),
            CoverModel::MultiQuad(c) => c.genus(),
        }
    }

    /// Degree over `F_q(x)`.
    pub fn degree(&self) -> u64 {
        match self {
            CoverModel::Rational(_) => 1,
            CoverModel::Kummer(_) | CoverModel::As2(_) => 2,
            CoverModel::MultiQuad(c) => 1 << c.n(),
        }
    }
}

impl fmt::Display for CoverModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverModel::Rational(field) => write!(f, "{field}(x)"),
            CoverModel::Kummer(c) => write!(f, "y^2 = {} over {}", c.u(), c.field()),
            CoverModel::As2(c) => {
                if c.denominator().is_one() {
                    write!(f, "y^2+y = {} over {}", c.numerator(), c.field())
                } else {
                    write!(f, "y^2+y = ({})/({}) over {}", c.numerator(), c.denominator(), c.field())
                }
            }
            CoverModel::MultiQuad(c) => {
                let parts: Vec<String> = c.factors().iter().map(|u| u.to_string()).collect();
                write!(f, "compositum of y_i^2 = [{}] over {}", parts.join(", "), c.field())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::parse_poly;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::new(p, 1).unwrap()
    }

    fn q7() -> KummerCover {
        KummerCover::parse(&f(7), "x^6+2*x^5+3*x^4+3*x^3+x^2+1").unwrap()
    }

    #[test]
    fn q_cover_splitting() {
        let c = q7();
        let f7 = f(7);
        let p = Place::parse(&f7, "x+3").unwrap();
        assert_eq!(c.splitting(&p).unwrap(), SplitType::Split);
        let q = Place::Finite(c.u().clone());
        assert_eq!(c.splitting(&q).unwrap(), SplitType::Ramified);
        for a in f7.elements() {
            assert_eq!(c.splitting(&Place::rational(&f7, a)).unwrap(), SplitType::Split);
        }
        assert_eq!(c.splitting(&Place::Infinity).unwrap(), SplitType::Split);
    }

    #[test]
    fn even_valuation_never_ramifies() {
        let f7 = f(7);
        let c = KummerCover::new(parse_poly(&f7, "x^2*(x+1)").unwrap()).unwrap();
        assert_eq!(c.splitting(&Place::parse(&f7, "x").unwrap()).unwrap(), SplitType::Split);
        assert_eq!(c.genus(), 0);
    }

    #[test]
    fn kummer_genus_examples() {
        assert_eq!(q7().genus(), 2);
        let f13 = f(13);
        let c = KummerCover::parse(&f13, "x*(x-1)*(x-2)*(x-3)*(x-4)*(x-5)*(x-6)*(x-7)*(x-9)").unwrap();
        assert_eq!(c.genus(), 4);
        let (places, unsplit) = c.ramified_places(1000);
        assert_eq!(places.len(), 10);
        assert!(unsplit.is_empty());
        assert!(places.contains(&Place::Infinity));
    }

    #[test]
    fn kummer_rejects_bad_input() {
        let f7 = f(7);
        assert_eq!(KummerCover::new(Poly::one(&f7)).unwrap_err(), Error::ConstantPolynomial);
        assert!(matches!(KummerCover::parse(&f7, "(x+1)^2"), Err(Error::InvalidCover(_))));
        assert_eq!(KummerCover::new(Poly::x(&f(2))).unwrap_err(), Error::EvenCharacteristic);
    }

    #[test]
    fn as2_examples() {
        let f2 = f(2);
        let c = As2Cover::new(Poly::one(&f2), Poly::x(&f2)).unwrap();
        assert_eq!(c.splitting(&Place::Infinity).unwrap(), SplitType::Split);
        assert_eq!(c.splitting(&Place::parse(&f2, "x").unwrap()).unwrap(), SplitType::Ramified);
        assert_eq!(c.genus(), 0);
        let c2 = As2Cover::new(Poly::one(&f2), parse_poly(&f2, "x*(x+1)").unwrap()).unwrap();
        assert_eq!(c2.genus(), 1);
        let f4 = FieldSpec::new(2, 2).unwrap();
        let e = As2Cover::new(parse_poly(&f4, "x^3").unwrap(), Poly::one(&f4)).unwrap();
        assert_eq!(e.genus(), 1);
        assert_eq!(e.splitting(&Place::Infinity).unwrap(), SplitType::Ramified);
    }

    #[test]
    fn as2_rejects_even_poles() {
        let f2 = f(2);
        let err = As2Cover::new(Poly::one(&f2), parse_poly(&f2, "x^2").unwrap()).unwrap_err();
        assert!(matches!(err, Error::InvalidCover(_)));
        let err = As2Cover::new(parse_poly(&f2, "x^2").unwrap(), Poly::one(&f2)).unwrap_err();
        assert!(matches!(err, Error::InvalidCover(_)));
    }

    #[test]
    fn multiquad_mask_and_characters() {
        let f7 = f(7);
        let facs = vec![parse_poly(&f7, "x").unwrap(), parse_poly(&f7, "x+1").unwrap(), parse_poly(&f7, "x^2+4").unwrap()];
        let c = MultiQuadCover::new(facs).unwrap();
        let a = c.analysis(&Place::parse(&f7, "x+1").unwrap()).unwrap();
        assert_eq!(a.ramified, vec![false, true, false]);
        let inf = c.analysis(&Place::Infinity).unwrap();
        assert_eq!(inf.ramified, vec![true, true, false]);
        assert!(MultiQuadCover::new(vec![parse_poly(&f7, "x").unwrap(), parse_poly(&f7, "x").unwrap()]).is_err());
    }

    #[test]
    fn multiquad_construction_genera() {
        assert_eq!(multiquad_genus_construction(2, 24).unwrap().0, 23);
        assert_eq!(multiquad_genus_construction(1, 5).unwrap(), (2, 17));
        assert_eq!(multiquad_genus_construction(2, 2).unwrap(), (1, 1));
        assert!(multiquad_genus_construction(1, 4).is_err());
        assert!(multiquad_genus_construction(1, 1).is_err());
    }

    #[test]
    fn dl_family() {
        let s2 = dl_family_stats(2).unwrap();
        assert_eq!((s2.n, s2.genus, s2.brute_force_n), (5, 1, Some(5)));
        let s8 = dl_family_stats(8).unwrap();
        assert_eq!((s8.n, s8.genus, s8.m_n, s8.m_genus), (65, 14, Some(17), Some(2)));
        assert_eq!(s8.brute_force_n, Some(65));
        let s32 = dl_family_stats(32).unwrap();
        assert_eq!((s32.n, s32.genus), (1025, 124));
        assert!(dl_family_stats(4).is_err());
        assert!(dl_family_stats(6).is_err());
    }
}
