//! Closed-form lower and upper bounds on `A(q^r)`, evaluated exactly.
//!
//! Every floor, ceiling and square root is taken in integers. A value that
//! involves an irrational square root is reported as a certified rational
//! interval; everything else is a point interval.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{
    big, ceil_sqrt, ceil_two_sqrt, decimal, divisors, floor_two_sqrt, fmt_rat, is_perfect_square, is_prime,
    isqrt, mobius, prime_power, rat, rat_int, sqrt_enclosure, Interval,
};
use crate::error::{Error, Result};
use crate::towers::{ceil_two_log_ratio, floor_theta_r_log2};

/// Digits of the enclosure used for irrational square roots.
pub const SQRT_DIGITS: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypStatus {
    Verified,
    Assumed,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub description: String,
    pub status: HypStatus,
}

fn hyp(description: impl Into<String>, ok: bool) -> Hypothesis {
    Hypothesis { description: description.into(), status: if ok { HypStatus::Verified } else { HypStatus::Violated } }
}

fn assumed(description: impl Into<String>) -> Hypothesis {
    Hypothesis { description: description.into(), status: HypStatus::Assumed }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub name: String,
    /// E.g. `A(7^3)`.
    pub target: String,
    pub kind: Kind,
    /// Certified enclosure; a point when the value is rational.
    pub value: Interval,
    #[serde(serialize_with = "crate::arith::ser_opt_rat")]
    pub exact: Option<BigRational>,
    /// Presentation only.
    pub decimal: String,
    pub hypotheses: Vec<Hypothesis>,
    pub source: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(name: &str, target: String, kind: Kind, value: Interval, source: &str) -> Self {
        let exact = value.is_exact().then(|| value.lo.clone());
        let mid = (&value.lo + &value.hi) / rat(2, 1);
        BoundReport {
            name: name.into(),
            target,
            kind,
            decimal: decimal(&mid, 6),
            exact,
            value,
            hypotheses: vec![],
            source: source.into(),
            notes: vec![],
        }
    }

    fn exact(name: &str, target: String, value: BigRational, source: &str) -> Self {
        Self::new(name, target, Kind::Lower, Interval::point(value), source)
    }

    fn with(mut self, h: Hypothesis) -> Self {
        self.hypotheses.push(h);
        self
    }

    pub fn is_violated(&self) -> bool {
        self.hypotheses.iter().any(|h| h.status == HypStatus::Violated)
    }

    pub fn is_assumed(&self) -> bool {
        self.hypotheses.iter().any(|h| h.status == HypStatus::Assumed)
    }

    /// The exact value; errors for interval-valued reports.
    pub fn value_exact(&self) -> Result<&BigRational> {
        self.exact.as_ref().ok_or_else(|| Error::InvalidArgument(format!("{} is interval-valued", self.name)))
    }
}

fn target(q: u64, r: u64) -> String {
    if r == 1 {
        format!("A({q})")
    } else {
        format!("A({q}^{r})")
    }
}

fn ratio(n: BigInt, d: BigInt) -> Result<BigRational> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

fn fdiv(a: BigInt, b: BigInt) -> BigInt {
    a.div_floor(&b)
}

fn check_prime_power(q: u64) -> Result<(u64, u32)> {
    prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))
}

/// `q + 1 + g⌊2√q⌋`.
pub fn weil_serre_max(q: u64, g: u64) -> BigInt {
    big(q as i64) + 1 + big(g as i64) * floor_two_sqrt(&big(q as i64))
}

/// Number of degree-`r` places of `F_q(x)`: `(1/r) Σ μ(r/d) q^d`, plus `∞` for `r = 1`.
pub fn rational_b_r(q: u64, r: u64) -> BigInt {
    let qb = BigInt::from(q);
    let mut acc = BigInt::zero();
    for d in divisors(r) {
        acc += BigInt::from(mobius(r / d)) * qb.pow(d as u32);
    }
    let b = acc / BigInt::from(r);
    if r == 1 {
        b + 1
    } else {
        b
    }
}

/// `√Q - 1` with `Q = q^r`, enclosed to `digits` decimals; exact for square `Q`.
pub fn drinfeld_vladut_interval(q: u64, r: u64, digits: u32) -> Interval {
    let big_q = BigInt::from(q).pow(r as u32);
    let s = sqrt_enclosure(&rat_int(&big_q), digits);
    let one = BigRational::one();
    Interval { lo: s.lo - &one, hi: s.hi - one }
}

pub fn drinfeld_vladut_upper(q: u64, r: u64) -> Result<BoundReport> {
    check_prime_power(q)?;
    let v = drinfeld_vladut_interval(q, r, SQRT_DIGITS);
    let mut rep = BoundReport::new("drinfeld_vladut", target(q, r), Kind::Upper, v, "Drinfeld–Vlăduţ");
    if rep.exact.is_some() {
        rep.notes.push("square size: equal to the Ihara lower bound, so A is known exactly".into());
    }
    Ok(rep)
}

/// `√Q - 1` for square `Q` (Ihara); `None` otherwise.
pub fn ihara_square(q: u64, r: u64) -> Option<BoundReport> {
    let big_q = BigInt::from(q).pow(r as u32);
    is_perfect_square(&big_q).then(|| {
        BoundReport::exact("ihara_square", target(q, r), rat_int(&(isqrt(&big_q) - 1)), "Ihara; Tsfasman–Vlăduţ–Zink")
            .with(hyp("q^r is a square", true))
    })
}

/// `A(p³) ≥ 2(p²-1)/(p+2)`.
pub fn zink(p: u64) -> Result<BoundReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = big(p as i64);
    let v = ratio(2 * (&pb * &pb - 1), &pb + 2)?;
    Ok(BoundReport::exact("zink", target(p, 3), v, "Zink").with(hyp("p prime", true)))
}

/// `A(q^l) ≥ (√l·√(q-1) - 2l)/(l-1)`, for `l` prime, `q > 4l+1`, `q ≡ 1 (mod l)`.
pub fn perret(q: u64, l: u64) -> Result<BoundReport> {
    check_prime_power(q)?;
    if l < 2 {
        return Err(Error::InvalidArgument(format!("l = {l} < 2")));
    }
    let root = sqrt_enclosure(&rat_int(&big((l * (q - 1)) as i64)), SQRT_DIGITS);
    let two_l = rat((2 * l) as i64, 1);
    let den = rat((l - 1) as i64, 1);
    let v = Interval { lo: (root.lo - &two_l) / &den, hi: (root.hi - &two_l) / &den };
    Ok(BoundReport::new("perret", target(q, l), Kind::Lower, v, "Perret")
        .with(hyp("l prime", is_prime(l)))
        .with(hyp(format!("q > 4l+1 = {}", 4 * l + 1), q > 4 * l + 1))
        .with(hyp(format!("q ≡ 1 mod {l}"), q % l == 1)))
}

/// Odd `q`, `m ≥ 3`: `A(q^m) ≥ 2q/(⌈2√(2q+1)⌉+1)`.
pub fn nx_odd(q: u64, m: u64) -> Result<BoundReport> {
    check_prime_power(q)?;
    let qb = big(q as i64);
    let v = ratio(2 * &qb, ceil_two_sqrt(&(2 * &qb + 1)) + 1)?;
    Ok(BoundReport::exact("nx_odd", target(q, m), v, "Niederreiter–Xing")
        .with(hyp("q odd", q % 2 == 1))
        .with(hyp("m ≥ 3", m >= 3)))
}

/// Even `q ≥ 4`, odd `m ≥ 3`: `A(q^m) ≥ (q+1)/(⌈2√(2q+2)⌉+2)`.
pub fn nx_even(q: u64, m: u64) -> Result<BoundReport> {
    check_prime_power(q)?;
    let qb = big(q as i64);
    let v = ratio(&qb + 1, ceil_two_sqrt(&(2 * &qb + 2)) + 2)?;
    Ok(BoundReport::exact("nx_even", target(q, m), v, "Niederreiter–Xing")
        .with(hyp("q ≥ 4 even", q >= 4 && q.is_multiple_of(2)))
        .with(hyp("m ≥ 3 odd", m >= 3 && m % 2 == 1)))
}

/// Zink, Perret and the two Niederreiter–Xing bounds applicable to `A(q^r)`.
pub fn classic_lower_bounds(q: u64, r: u64) -> Result<Vec<BoundReport>> {
    let (p, k) = check_prime_power(q)?;
    let mut out = Vec::new();
    if u64::from(k) * r == 3 {
        out.push(zink(p)?);
    }
    if is_prime(r) {
        out.push(perret(q, r)?);
    }
    if q % 2 == 1 {
        out.push(nx_odd(q, r)?);
    } else {
        out.push(nx_even(q, r)?);
    }
    Ok(out)
}

/// Hypotheses of the generalised Niederreiter–Xing bound that the caller
/// may know; `None` leaves them assumed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GennxInput {
    pub b_r: Option<u64>,
    pub h_ratio_odd: Option<bool>,
}

/// Odd `q`: `2(N-1)/(2g+⌈2√(2N-1)⌉+1)`; even `q`: `(N-1)/(g+⌈2√(2N-2)⌉+2)`.
pub fn gennx(q: u64, r: u64, n: u64, g: u64, input: &GennxInput) -> Result<BoundReport> {
    check_prime_power(q)?;
    if n == 0 {
        return Err(Error::InvalidArgument("N ≥ 1 required".into()));
    }
    let (nb, gb) = (big(n as i64), big(g as i64));
    let odd = q % 2 == 1;
    let (v, radicand) = if odd {
        let rad = 2 * &nb - 1;
        (ratio(2 * (&nb - 1), 2 * &gb + ceil_two_sqrt(&rad) + 1)?, rad)
    } else {
        let rad = 2 * &nb - 2;
        (ratio(&nb - 1, &gb + ceil_two_sqrt(&rad) + 2)?, rad)
    };
    let mut rep = BoundReport::exact(if odd { "gennx_odd" } else { "gennx_even" }, target(q, r), v, "Niederreiter–Xing")
        .with(hyp("r ≥ 3", r >= 3));
    let desc = format!("B_r ≥ 2√{radicand} + 3");
    rep = rep.with(match input.b_r {
        // B_r - 3 ≥ 2√rad  ⇔  B_r ≥ 3 and (B_r-3)² ≥ 4·rad
        Some(b) => {
            let d: BigInt = big(b as i64) - 3;
            hyp(desc, !d.is_negative() && &d * &d >= 4 * &radicand)
        }
        None => assumed(desc),
    });
    rep = rep.with(match input.h_ratio_odd {
        Some(ok) => hyp("h(F_r)/h(F) odd", ok),
        None => assumed("h(F_r)/h(F) odd"),
    });
    Ok(rep)
}

/// `q ≡ n²+1, n²+n+1` or `n²+n+2`, or `p | ⌊2√q⌋`.
pub fn is_special(q: u64) -> bool {
    let (p, _) = match prime_power(q) {
        Some(x) => x,
        None => return false,
    };
    let f = floor_two_sqrt(&big(q as i64)).to_u64().unwrap();
    if f.is_multiple_of(p) {
        return true;
    }
    let qb = big(q as i64);
    // n² + 1 = q
    if is_perfect_square(&(&qb - 1)) {
        return true;
    }
    // n² + n + c = q  ⇔  (2n+1)² = 4(q - c) + 1
    [1i64, 2].iter().any(|&c| {
        let d: BigInt = (&qb - c) * 4 + 1;
        !d.is_negative() && is_perfect_square(&d)
    })
}

/// The `A(q³)` bounds whose case conditions hold at `q`.
pub fn cube_bounds(q: u64) -> Result<Vec<BoundReport>> {
    let (p, _) = check_prime_power(q)?;
    if q < 3 {
        return Err(Error::InvalidArgument(format!("q = {q} < 3")));
    }
    let qb = big(q as i64);
    let fs = isqrt(&qb);
    let f2 = floor_two_sqrt(&qb);
    let t = target(q, 3);
    let src = "Niederreiter–Xing (cubes)";
    let mut out = Vec::new();
    let f2_u = f2.to_u64().unwrap();
    if q % 2 == 1 {
        let a: BigInt = &qb * 2 + &fs * 4;
        if !f2_u.is_multiple_of(p) {
            let v = ratio(a.clone(), 3 + ceil_two_sqrt(&(&a + 1)))?;
            out.push(BoundReport::exact("cube_odd", t.clone(), v, src).with(hyp(format!("p ∤ ⌊2√q⌋ = {f2}"), true)));
        } else {
            let v = ratio(&a - 4, 3 + ceil_two_sqrt(&(&a - 3)))?;
            out.push(BoundReport::exact("cube_odd_p_divides", t.clone(), v, src).with(hyp(format!("p | ⌊2√q⌋ = {f2}"), true)));
        }
        if q >= 11 && f2_u.is_multiple_of(2) && !is_special(q) {
            let v = ratio(a.clone(), 5 + ceil_two_sqrt(&(&a + 1)))?;
            out.push(
                BoundReport::exact("cube_odd_nonspecial", t.clone(), v, src)
                    .with(hyp("q ≥ 11, ⌊2√q⌋ even, q not special", true)),
            );
        }
    } else if q >= 4 {
        if f2_u % 2 == 1 {
            let v = ratio(&qb + &f2, 3 + ceil_two_sqrt(&(2 * &qb + 2 * &f2)))?;
            out.push(BoundReport::exact("cube_even_odd_floor", t.clone(), v, src).with(hyp(format!("⌊2√q⌋ = {f2} odd"), true)));
        } else {
            let v = ratio(&qb + &f2 - 1, 3 + ceil_two_sqrt(&(2 * &qb + 2 * &f2 - 2)))?;
            out.push(BoundReport::exact("cube_even_even_floor", t, v, src).with(hyp(format!("⌊2√q⌋ = {f2} even"), true)));
        }
    }
    Ok(out)
}

/// `⌊(3+⌈2√(2N+1)⌉)/(r-2)⌋`.
pub fn qodd_threshold(n: u64, r: u64) -> BigInt {
    fdiv(ceil_two_sqrt(&big(2 * n as i64 + 1)) + 3, big(r as i64 - 2))
}

/// `A(q^{rs}) ≥ 4Ns/(4g + ⌊(3+⌈2√(2N+1)⌉)/(r-2)⌋ + ⌈2√(2N+1)⌉)`. `b_r` (when
/// known) checks `B_r > ⌊…⌋`; the class number ratio stays assumed unless
/// `h_ratio_odd` is given.
pub fn thm_qodd(q: u64, n: u64, g: u64, r: u64, s: u64, b_r: Option<u64>, h_ratio_odd: Option<bool>) -> Result<BoundReport> {
    check_prime_power(q)?;
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("r = {r} must be odd ≥ 3")));
    }
    if s == 0 || r.gcd(&s) != 1 {
        return Err(Error::InvalidArgument(format!("gcd(r, s) = gcd({r}, {s}) ≠ 1")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("N ≥ 1 required".into()));
    }
    let c = ceil_two_sqrt(&big(2 * n as i64 + 1));
    let th = qodd_threshold(n, r);
    let v = ratio(big((4 * n * s) as i64), 4 * big(g as i64) + &th + c)?;
    let desc = format!("B_r > {th}");
    Ok(BoundReport::exact("qodd", target(q, r * s), v, "Drinfeld-module tower, odd q")
        .with(hyp("q odd", q % 2 == 1))
        .with(match b_r {
            Some(b) => hyp(desc, big(b as i64) > th),
            None => assumed(desc),
        })
        .with(match h_ratio_odd {
            Some(ok) => hyp("h(F_r)/h(F) odd", ok),
            None => assumed("h(F_r)/h(F) odd"),
        }))
}

/// Largest `N ≤ b_s` with `b_r > threshold(N)`; thresholds grow with `N`.
fn largest_n(b_s: &BigInt, b_r: &BigInt, threshold: impl Fn(u64) -> BigInt) -> Option<u64> {
    let cap = b_s.to_u64()?;
    (1..=cap).rev().find(|&n| *b_r > threshold(n))
}

/// Rational-field instance: `F = F_q(x)`, `N` the largest admissible value.
pub fn thm_qodd_rational(q: u64, r: u64, s: u64) -> Result<BoundReport> {
    let b_s = rational_b_r(q, s);
    let b_r = rational_b_r(q, r);
    let n = largest_n(&b_s, &b_r, |n| qodd_threshold(n, r))
        .ok_or_else(|| Error::InvalidArgument(format!("no admissible N for q={q}, r={r}, s={s}")))?;
    let mut rep = thm_qodd(q, n, 0, r, s, b_r.to_u64(), Some(true))?;
    rep.name = "qodd_rational".into();
    rep.notes.push(format!("F = F_q(x): B_s = {b_s}, B_r = {b_r}, N = {n}, h ratio 1"));
    Ok(rep)
}

/// `(4q+4)/(⌊(3+⌈2√(2q+2)⌉)/(r-2)⌋ + ⌈2√(2q+3)⌉)`, verbatim.
pub fn cor_qoddcor(q: u64, r: u64) -> Result<BoundReport> {
    check_prime_power(q)?;
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("r = {r} must be odd ≥ 3")));
    }
    let qb = big(q as i64);
    let fl = fdiv(ceil_two_sqrt(&(2 * &qb + 2)) + 3, big(r as i64 - 2));
    let v = ratio(4 * &qb + 4, fl + ceil_two_sqrt(&(2 * &qb + 3)))?;
    Ok(BoundReport::exact("qodd_cor", target(q, r), v, "Drinfeld-module tower, odd q, F = F_q(x)")
        .with(hyp("q odd", q % 2 == 1)))
}

/// `pNs/(pg - p + 2(p-1)(3+⌈2√(pN)⌉))`, verbatim.
pub fn thm_anyp(p: u64, n: u64, g: u64, s: u64) -> Result<BigRational> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("N ≥ 1 required".into()));
    }
    let (pb, nb) = (big(p as i64), big(n as i64));
    let den = &pb * big(g as i64) - &pb + 2 * (&pb - 1) * (3 + ceil_two_sqrt(&(&pb * &nb)));
    ratio(&pb * &nb * big(s as i64), den)
}

/// `⌊(6+2⌈2√(2pN)⌉)/(r-1)⌋`.
pub fn anyp_threshold(p: u64, n: u64, r: u64) -> BigInt {
    fdiv(ceil_two_sqrt(&big((2 * p * n) as i64)) * 2 + 6, big(r as i64 - 1))
}

/// Rational-field instance, `s = 1`: `N` the largest value with
/// `B_1 ≥ N` and `B_r > ⌊(6+2⌈2√(2pN)⌉)/(r-1)⌋`.
pub fn thm_anyp_rational(q: u64, r: u64) -> Result<BoundReport> {
    let (p, _) = check_prime_power(q)?;
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("r = {r} must be odd ≥ 3")));
    }
    let b_1 = rational_b_r(q, 1);
    let b_r = rational_b_r(q, r);
    let n = largest_n(&b_1, &b_r, |n| anyp_threshold(p, n, r));
    let th_desc = |n: u64| format!("B_r = {b_r} > {}", anyp_threshold(p, n, r));
    let (v, h) = match n {
        Some(n) => (thm_anyp(p, n, 0, 1)?, hyp(th_desc(n), true)),
        None => (thm_anyp(p, 1, 0, 1)?, hyp(th_desc(1), false)),
    };
    let mut rep = BoundReport::exact("anyp_rational", target(q, r), v, "Drinfeld-module tower, any p")
        .with(h)
        .with(hyp("h(F_r)/h(F) prime to p", true));
    rep.notes.push(format!("F = F_q(x), s = 1, N = {}", n.unwrap_or(1)));
    Ok(rep)
}

/// Even `q`: `A(q^r) ≥ N/(g + ⌈2√(2N)⌉ + 2)`.
pub fn thm_qeven(n: u64, g: u64) -> Result<BigRational> {
    let nb = big(n as i64);
    ratio(nb.clone(), big(g as i64) + ceil_two_sqrt(&(2 * &nb)) + 2)
}

pub fn thm_qeven_rational(q: u64, r: u64) -> Result<BoundReport> {
    check_prime_power(q)?;
    let n = q + 1;
    let th = fdiv(ceil_two_sqrt(&big(2 * n as i64)) * 2 + 6, big(r as i64 - 1));
    let b_r = rational_b_r(q, r);
    Ok(BoundReport::exact("qeven_rational", target(q, r), thm_qeven(n, 0)?, "Drinfeld-module tower, even q")
        .with(hyp("q even", q.is_multiple_of(2)))
        .with(hyp("r ≥ 2", r >= 2))
        .with(hyp(format!("B_r = {b_r} > {th}"), b_r > th))
        .with(hyp("h(F_r)/h(F) odd", true)))
}

const ASYMPTOTIC: &str = "q sufficiently large (asymptotic regime)";

/// `q = 2^(2e+1)`: `√(2q)` is the integer `2^(e+1)`.
fn sqrt_two_q(q: u64) -> Option<u64> {
    let (p, k) = prime_power(q)?;
    (p == 2 && k % 2 == 1).then(|| 1u64 << k.div_ceil(2))
}

/// Deligne–Lusztig tower bounds for `q` an odd power of 2.
/// `r ≥ 5` odd: `(2q²+2)/(√(2q)(q-1) + 2⌈2√(2q²+2)⌉ + 4)`;
/// `r = 3`, `q ≥ 4`: `(2q²+8)/(√(2q)(q-4) + 8⌈√(2q²+8)⌉ + 16)`.
pub fn thm_qevenagain(q: u64, r: u64) -> Result<BoundReport> {
    let s = sqrt_two_q(q).ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not an odd power of 2")))?;
    let (qb, sb) = (big(q as i64), big(s as i64));
    let q2 = &qb * &qb;
    let v = match r {
        3 if q >= 4 => ratio(2 * &q2 + 8, &sb * (&qb - 4) + 8 * ceil_sqrt(&(2 * &q2 + 8)) + 16)?,
        3 => return Err(Error::InvalidArgument("the r = 3 form needs q ≥ 4".into())),
        r if r >= 5 && r % 2 == 1 => ratio(2 * &q2 + 2, &sb * (&qb - 1) + 2 * ceil_two_sqrt(&(2 * &q2 + 2)) + 4)?,
        _ => return Err(Error::InvalidArgument(format!("r = {r} must be 3 or odd ≥ 5"))),
    };
    let mut rep = BoundReport::exact(if r == 3 { "qeven_dl_r3" } else { "qeven_dl" }, target(q, r), v, "Deligne–Lusztig tower, even q")
        .with(assumed(ASYMPTOTIC));
    rep.notes.push(if r == 3 {
        "evaluated with numerator 2q²+8 and radicand 2q²+8; the short statement writes 2q² and ⌈√2 q⌉".into()
    } else {
        "evaluated with numerator 2q²+2 and radicand 2q²+2; the short statement writes 2q² and ⌈2√2 q⌉".into()
    });
    Ok(rep)
}

/// `q` a power of `p ∈ {3, 5, 7}`:
/// `2(q²+p²)/(√(pq)(q-p²) + 4p(p-1)⌈√(q²/p+p)⌉ + 10p² - 12p)`.
/// `√(pq)` must be an integer, i.e. `q` an odd power of `p`.
pub fn thm_357(q: u64) -> Result<BoundReport> {
    let (p, k) = check_prime_power(q)?;
    if ![3, 5, 7].contains(&p) {
        return Err(Error::InvalidArgument(format!("q = {q} is not a power of 3, 5 or 7")));
    }
    if k % 2 == 0 {
        return Err(Error::InvalidArgument(format!("q = {q} is an even power of p; √(pq) is irrational")));
    }
    let (pb, qb) = (big(p as i64), big(q as i64));
    let spq = isqrt(&(&pb * &qb));
    let q2 = &qb * &qb;
    let den = &spq * (&qb - &pb * &pb) + 4 * &pb * (&pb - 1) * ceil_sqrt(&(&q2 / &pb + &pb)) + 10 * &pb * &pb - 12 * &pb;
    let v = ratio(2 * (q2 + &pb * &pb), den)?;
    Ok(BoundReport::exact("char357", target(q, 3), v, "Deligne–Lusztig style tower, p ∈ {3,5,7}").with(assumed(ASYMPTOTIC)))
}

/// Compositum-tower bounds: with `x = ⌊θ r log₂ q⌋` and
/// `M = ⌈2 log r/log q⌉ + 1`, odd `q^r` gives `((x-3)²-4)r/(2M(x+1)-6)`,
/// even `q^r` gives `(x-2)²r/(4M(x+1)-8)`.
pub fn kem_bounds(q: u64, r: u64, theta: &BigRational) -> Result<BoundReport> {
    check_prime_power(q)?;
    let x = big(floor_theta_r_log2(q, r, theta)? as i64);
    let m = big(ceil_two_log_ratio(q, r) as i64 + 1);
    let rb = big(r as i64);
    let (name, num, den): (&str, BigInt, BigInt) = if q % 2 == 1 {
        let t = &x - 3;
        ("kem_odd", (&t * &t - 4) * &rb, 2 * &m * (&x + 1) - 6)
    } else {
        let t = &x - 2;
        ("kem_even", &t * &t * &rb, 4 * &m * (&x + 1) - 8)
    };
    if !den.is_positive() {
        return Err(Error::InvalidArgument(format!("denominator {den} ≤ 0 at x = {x}")));
    }
    let v = ratio(num, den)?;
    let mut rep = BoundReport::exact(name, target(q, r), v, "compositum of quadratic covers")
        .with(assumed("q^r sufficiently large (asymptotic regime)"));
    rep.notes.push(format!("θ = {}, ⌊θ r log₂ q⌋ = {x}, ⌈2 log r/log q⌉ + 1 = {m}", fmt_rat(theta)));
    // the display is |S'|·r/(g-1) with |S'| ≈ ((x-3)/2)² - 1, resp. (x-2)²/4 - 1; it says nothing unless |S'| > 0
    let min_x = if q % 2 == 1 { 6 } else { 5 };
    rep = rep.with(hyp(format!("⌊θ r log₂ q⌋ ≥ {min_x} (nonempty S')"), x >= big(min_x)));
    Ok(rep)
}

/// Constants quoted from the literature, for display.
pub fn literature_constants(q: u64, r: u64) -> Vec<BoundReport> {
    let big_q = match q.checked_pow(r as u32) {
        Some(v) => v,
        None => return vec![],
    };
    let list: &[(u64, i64, i64, &str)] = &[
        (2, 81, 317, "Niederreiter–Xing"),
        (3, 62, 163, "Niederreiter–Xing"),
        (3, 8, 17, "Temkine"),
        (5, 2, 3, "Niederreiter–Xing"),
        (5, 8, 11, "Temkine"),
    ];
    list.iter()
        .filter(|e| e.0 == big_q)
        .map(|&(_, n, d, src)| BoundReport::exact("literature", target(q, r), rat(n, d), src).with(assumed("quoted, not recomputed")))
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TableOptions {
    pub s: Option<u64>,
    pub theta: Option<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub q: u64,
    pub r: u64,
    pub lower: Vec<BoundReport>,
    pub upper: BoundReport,
    /// Index into `lower` of the largest non-violated bound.
    pub best: Option<usize>,
    /// `A(q^r)` itself when the upper and best lower bound coincide.
    #[serde(serialize_with = "crate::arith::ser_opt_rat")]
    pub exact: Option<BigRational>,
}

impl BoundTable {
    pub fn best_report(&self) -> Option<&BoundReport> {
        self.best.map(|i| &self.lower[i])
    }

    pub fn find(&self, name: &str) -> Option<&BoundReport> {
        self.lower.iter().find(|b| b.name == name)
    }
}

/// Every bound applicable to `A(q^r)`, the upper bound, and the best lower
/// bound (by certified lower endpoint; ties to the earlier name). Errors with
/// `SanityViolation` if a lower bound whose hypotheses are not violated
/// provably exceeds the upper bound.
pub fn best_table(q: u64, r: u64, opts: &TableOptions) -> Result<BoundTable> {
    let (p, k) = check_prime_power(q)?;
    if r == 0 {
        return Err(Error::InvalidArgument("r ≥ 1 required".into()));
    }
    let upper = drinfeld_vladut_upper(q, r)?;
    let mut lower = Vec::new();
    lower.extend(ihara_square(q, r));
    lower.extend(literature_constants(q, r));
    if r >= 2 {
        lower.extend(classic_lower_bounds(q, r)?);
    } else if k == 3 {
        lower.push(zink(p)?);
    }
    if r >= 3 {
        let b_r = rational_b_r(q, r).to_u64();
        lower.push(gennx(q, r, q + 1, 0, &GennxInput { b_r, h_ratio_odd: Some(true) })?);
    }
    if r == 3 && q >= 3 {
        lower.extend(cube_bounds(q)?);
    }
    if q % 2 == 1 && r >= 3 {
        // split r = r'·s with r' odd ≥ 3 and gcd(r', s) = 1
        for rp in divisors(r) {
            let s = r / rp;
            if rp >= 3 && rp % 2 == 1 && rp.gcd(&s) == 1 && opts.s.is_none_or(|want| want == s) {
                if let Ok(b) = thm_qodd_rational(q, rp, s) {
                    lower.push(b);
                }
            }
        }
        if r % 2 == 1 {
            lower.push(cor_qoddcor(q, r)?);
        }
    }
    if r >= 3 && r % 2 == 1 {
        lower.push(thm_anyp_rational(q, r)?);
    }
    if q.is_multiple_of(2) && r >= 3 {
        lower.push(thm_qeven_rational(q, r)?);
    }
    if sqrt_two_q(q).is_some() && r % 2 == 1 && (r >= 5 || (r == 3 && q >= 4)) {
        lower.push(thm_qevenagain(q, r)?);
    }
    if r == 3 && [3, 5, 7].contains(&p) && k % 2 == 1 {
        lower.push(thm_357(q)?);
    }
    if let Some(theta) = &opts.theta {
        if let Ok(b) = kem_bounds(q, r, theta) {
            lower.push(b);
        }
    }
    for b in lower.iter().filter(|b| !b.is_violated()) {
        if b.value.lo > upper.value.hi {
            return Err(Error::SanityViolation(format!(
                "{} = {} exceeds the upper bound {} for {}",
                b.name, b.value, upper.value, b.target
            )));
        }
    }
    let mut best: Option<usize> = None;
    for (i, b) in lower.iter().enumerate() {
        if b.is_violated() {
            continue;
        }
        let better = match best {
            None => true,
            Some(j) => {
                let c = &lower[j];
                b.value.lo > c.value.lo || (b.value.lo == c.value.lo && b.name < c.name)
            }
        };
        if better {
            best = Some(i);
        }
    }
    let exact = match (best.map(|i| &lower[i]), &upper.exact) {
        (Some(b), Some(u)) if b.exact.as_ref() == Some(u) => Some(u.clone()),
        _ => None,
    };
    Ok(BoundTable { q, r, lower, upper, best, exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn weil_serre_examples() {
        assert_eq!(weil_serre_max(7, 2), big(18));
        assert_eq!(weil_serre_max(13, 0), big(14));
        assert_eq!(weil_serre_max(4, 1), big(9));
    }

    #[test]
    fn drinfeld_vladut_examples() {
        assert_eq!(drinfeld_vladut_upper(4, 1).unwrap().exact, Some(rat(1, 1)));
        assert_eq!(drinfeld_vladut_upper(9, 1).unwrap().exact, Some(rat(2, 1)));
        let v = drinfeld_vladut_interval(7, 1, 3);
        assert_eq!((v.lo, v.hi), (rat(1645, 1000), rat(1646, 1000)));
    }

    #[test]
    fn classic_examples() {
        assert_eq!(zink(3).unwrap().exact, Some(rat(16, 5)));
        assert_eq!(nx_odd(7, 3).unwrap().exact, Some(rat(14, 9)));
        assert_eq!(nx_even(4, 3).unwrap().exact, Some(rat(5, 9)));
        let per = perret(31, 3).unwrap();
        assert!(!per.is_violated());
        assert!(per.value.contains(&rat(1, 1)) || per.value.lo < per.value.hi);
        assert!(perret(7, 3).unwrap().is_violated());
    }

    #[test]
    fn gennx_examples() {
        let g = gennx(7, 3, 8, 0, &GennxInput::default()).unwrap();
        assert_eq!(g.exact, Some(rat(14, 9)));
        assert!(g.is_assumed());
        assert_eq!(gennx(7, 3, 1, 0, &GennxInput::default()).unwrap().exact, Some(rat(0, 1)));
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27] {
            assert_eq!(gennx(q, 3, q + 1, 0, &GennxInput::default()).unwrap().exact, nx_odd(q, 3).unwrap().exact);
        }
    }

    #[test]
    fn cube_examples() {
        let c7 = cube_bounds(7).unwrap();
        assert_eq!(c7[0].exact, Some(rat(22, 13)));
        assert!(is_special(5));
        assert!(cube_bounds(5).unwrap().iter().all(|b| b.name != "cube_odd_nonspecial"));
        let c4 = cube_bounds(4).unwrap();
        assert_eq!(c4[0].name, "cube_even_even_floor");
        assert_eq!(c4[0].exact, Some(rat(7, 11)));
    }

    #[test]
    fn special_forms() {
        // 13 = 3² + 3 + 1, 17 = 4² + 1, 23: ⌊2√23⌋ = 9 and 23 is not of the three forms
        assert!(is_special(13));
        assert!(is_special(17));
        assert!(!is_special(23));
        // 9: p = 3 divides ⌊2√9⌋ = 6
        assert!(is_special(9));
    }

    #[test]
    fn qodd_examples() {
        assert_eq!(thm_qodd(7, 8, 0, 3, 1, None, None).unwrap().exact, Some(rat(32, 21)));
        let a = thm_qodd(7, 8, 1, 3, 1, None, None).unwrap().exact.unwrap();
        let b = thm_qodd(7, 8, 1, 3, 2, None, None).unwrap().exact.unwrap();
        assert_eq!(b, a * rat(2, 1));
        assert!(thm_qodd(7, 8, 0, 3, 3, None, None).is_err());
        // verbatim: ⌊(3+⌈2√16⌉)/3⌋ + ⌈2√17⌉ = 3 + 9
        assert_eq!(cor_qoddcor(7, 5).unwrap().exact, Some(rat(32, 12)));
    }

    #[test]
    fn anyp_examples() {
        assert_eq!(thm_anyp(2, 2, 0, 1).unwrap(), rat(1, 3));
        // 12/(3 - 3 + 4(3 + ⌈√48⌉)) = 12/40
        assert_eq!(thm_anyp(3, 4, 1, 1).unwrap(), rat(3, 10));
        for (n, g) in [(3u64, 0u64), (9, 2), (17, 5), (33, 1)] {
            assert_eq!(thm_anyp(2, n, g, 1).unwrap(), thm_qeven(n, g).unwrap());
        }
    }

    #[test]
    fn qevenagain_examples() {
        assert_eq!(thm_qevenagain(8, 5).unwrap().exact, Some(rat(5, 3)));
        assert_eq!(thm_qevenagain(8, 7).unwrap().exact, Some(rat(5, 3)));
        assert_eq!(thm_qevenagain(8, 3).unwrap().exact, Some(rat(17, 16)));
        assert!(thm_qevenagain(2, 3).is_err());
        assert!(thm_qevenagain(4, 5).is_err());
    }

    #[test]
    fn char357_exact() {
        let b = thm_357(27).unwrap();
        assert!(b.exact.is_some());
        assert!(thm_357(9).is_err());
        assert!(thm_357(11).is_err());
    }

    #[test]
    fn kem_examples() {
        let b = kem_bounds(3, 101, &rat(1, 4)).unwrap();
        // x = ⌊(101/4) log₂ 3⌋ = 40, M = ⌈2 log 101/log 3⌉ + 1 = 9 + 1
        assert_eq!(b.exact, Some(rat((37 * 37 - 4) * 101, 2 * 10 * 41 - 6)));
        let small = kem_bounds(3, 5, &rat(1, 4)).unwrap();
        assert!(small.is_violated());
    }

    #[test]
    fn table_examples() {
        let t = best_table(4, 2, &TableOptions::default()).unwrap();
        assert_eq!(t.upper.exact, Some(rat(3, 1)));
        assert_eq!(t.exact, Some(rat(3, 1)));
        let t = best_table(2, 1, &TableOptions::default()).unwrap();
        assert!(t.lower.iter().any(|b| b.exact == Some(rat(81, 317))));
        let t = best_table(7, 3, &TableOptions::default()).unwrap();
        assert!(t.find("cube_odd").is_some());
        let t = best_table(8, 3, &TableOptions::default()).unwrap();
        assert_eq!(t.find("qeven_dl_r3").unwrap().exact, Some(rat(17, 16)));
    }

    #[test]
    fn rational_b_r_small() {
        assert_eq!(rational_b_r(2, 1), big(3));
        assert_eq!(rational_b_r(2, 4), big(3));
        assert_eq!(rational_b_r(3, 2), big(3));
    }

    proptest! {
        #[test]
        fn sanity_wall(qi in 0usize..12, r in 1u64..8, num in 1i64..50) {
            let qs = [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27];
            let theta = rat(num, 101);
            let opts = TableOptions { s: None, theta: Some(theta) };
            prop_assert!(best_table(qs[qi], r, &opts).is_ok());
        }

        #[test]
        fn qodd_scales_with_s(n in 1u64..500, g in 0u64..50, s in 1u64..20) {
            let r = 3;
            prop_assume!(s % 3 != 0);
            let one = thm_qodd(3, n, g, r, 1, None, None).unwrap().exact.unwrap();
            let many = thm_qodd(3, n, g, r, s, None, None).unwrap().exact.unwrap();
            prop_assert_eq!(many, one * rat(s as i64, 1));
        }
    }
}
