//! Exact integer and rational helpers shared by the bound evaluators.
//!
//! Every square root, floor and ceiling that feeds a verification path goes
//! through the integer square root here; nothing is ever rounded from a float.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// `⌊√x⌋` for `x ≥ 0`.
pub fn isqrt(x: &BigInt) -> BigInt {
    assert!(!x.is_negative(), "isqrt of a negative number");
    x.sqrt()
}

/// Smallest `c ≥ 0` with `c² ≥ x`.
pub fn ceil_sqrt(x: &BigInt) -> BigInt {
    if x.is_negative() || x.is_zero() {
        return BigInt::zero();
    }
    let s = isqrt(x);
    if &s * &s == *x {
        s
    } else {
        s + 1
    }
}

/// `⌈2√x⌉`, i.e. the smallest `c` with `c² ≥ 4x`.
pub fn ceil_two_sqrt(x: &BigInt) -> BigInt {
    ceil_sqrt(&(x * 4))
}

/// `⌊2√x⌋ = ⌊√(4x)⌋`.
pub fn floor_two_sqrt(x: &BigInt) -> BigInt {
    isqrt(&(x * 4))
}

pub fn is_perfect_square(x: &BigInt) -> bool {
    !x.is_negative() && {
        let s = isqrt(x);
        &s * &s == *x
    }
}

/// Floor of a rational.
pub fn floor_rat(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Ceiling of a rational.
pub fn ceil_rat(x: &BigRational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

/// `a ≥ 2 + 2√b`, decided without square roots.
pub fn ge_two_plus_two_sqrt(a: &BigInt, b: &BigInt) -> bool {
    let d: BigInt = a - 2;
    !d.is_negative() && &d * &d >= b * 4
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Splits a prime power `q = p^k`; `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let ps = prime_factors(q);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut k = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

/// `"num/den"`, or just `"num"` when the denominator is one.
pub fn fmt_rat(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Always `"num/den"`; the JSON wire format.
pub fn fmt_rat_wire(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Decimal rendering with `places` digits after the point, rounded half away
/// from zero. Presentation only.
pub fn decimal(x: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = x * BigRational::from_integer(scale.clone());
    let neg = scaled.is_negative();
    let a = scaled.abs();
    let twice = &a * BigRational::from_integer(big(2));
    let r: BigInt = (floor_rat(&twice) + 1) / 2;
    let (ip, fp) = r.div_rem(&scale);
    let mut s = String::new();
    if neg && !r.is_zero() {
        s.push('-');
    }
    s.push_str(&ip.to_string());
    if places > 0 {
        s.push('.');
        s.push_str(&format!("{:0>width$}", fp.to_string(), width = places as usize));
    }
    s
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// A closed rational interval `[lo, hi]` certified to contain a real value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rat_serde")]
    pub lo: BigRational,
    #[serde(with = "rat_serde")]
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", fmt_rat(&self.lo))
        } else {
            write!(f, "[{}, {}]", decimal(&self.lo, 6), decimal(&self.hi, 6))
        }
    }
}

/// Enclosure of `√x` for rational `x ≥ 0` with width at most `10^-digits`
/// (exact when `x` is the square of a rational).
pub fn sqrt_enclosure(x: &BigRational, digits: u32) -> Interval {
    assert!(!x.is_negative(), "square root of a negative rational");
    let (n, d) = (x.numer(), x.denom());
    if is_perfect_square(n) && is_perfect_square(d) {
        return Interval::point(BigRational::new(isqrt(n), isqrt(d)));
    }
    // √(n/d) = √(n·d)/d
    let scale = BigInt::from(10u32).pow(digits);
    let radicand = n * d * &scale * &scale;
    let s = isqrt(&radicand);
    let denom = d * &scale;
    Interval {
        lo: BigRational::new(s.clone(), denom.clone()),
        hi: BigRational::new(s + 1, denom),
    }
}

/// Serializes any `Display` value as a JSON string (for big integers).
pub fn ser_display<T: fmt::Display, S: serde::Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Serializes an optional rational as `"num/den"` or `null`.
pub fn ser_opt_rat<S: serde::Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&fmt_rat_wire(v)),
        None => s.serialize_none(),
    }
}

pub mod rat_serde {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::fmt_rat_wire(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rat(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceilings_and_floors_of_roots() {
        assert_eq!(ceil_two_sqrt(&big(17)), big(9));
        assert_eq!(ceil_two_sqrt(&big(15)), big(8));
        assert_eq!(ceil_two_sqrt(&big(16)), big(8));
        assert_eq!(ceil_two_sqrt(&big(23)), big(10));
        assert_eq!(ceil_two_sqrt(&big(10)), big(7));
        assert_eq!(ceil_two_sqrt(&big(14)), big(8));
        assert_eq!(floor_two_sqrt(&big(7)), big(5));
        assert_eq!(floor_two_sqrt(&big(4)), big(4));
        assert_eq!(ceil_sqrt(&big(0)), big(0));
        assert_eq!(ceil_sqrt(&big(1)), big(1));
    }

    #[test]
    fn gs_comparison_is_exact() {
        assert!(ge_two_plus_two_sqrt(&big(11), &big(19)));
        assert!(ge_two_plus_two_sqrt(&big(12), &big(25)));
        assert!(!ge_two_plus_two_sqrt(&big(4), &big(2)));
        assert!(!ge_two_plus_two_sqrt(&big(1), &big(0)));
    }

    #[test]
    fn number_theory_helpers() {
        assert!(is_prime(7) && is_prime(2) && !is_prime(1) && !is_prime(9));
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(7), -1);
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&rat(9, 10), 6), "0.900000");
        assert_eq!(decimal(&rat(12, 11), 4), "1.0909");
        assert_eq!(decimal(&rat(-1, 3), 2), "-0.33");
        assert_eq!(decimal(&rat(2, 3), 0), "1");
    }

    #[test]
    fn sqrt_enclosures() {
        let e = sqrt_enclosure(&rat(7, 1), 3);
        assert_eq!(e.lo, rat(2645, 1000));
        assert_eq!(e.hi, rat(2646, 1000));
        assert!(sqrt_enclosure(&rat(9, 4), 3).is_exact());
    }

    #[test]
    fn rational_floor_ceil() {
        assert_eq!(floor_rat(&rat(-7, 2)), big(-4));
        assert_eq!(ceil_rat(&rat(-7, 2)), big(-3));
        assert_eq!(ceil_rat(&rat(7, 2)), big(4));
        assert_eq!(parse_rat("9/10"), Some(rat(9, 10)));
        assert_eq!(parse_rat("3"), Some(rat(3, 1)));
    }
}
