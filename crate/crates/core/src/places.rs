//! Place counts: exact `B_r` for `F_q(x)`, the certified `B_r` window for a
//! genus-`g` function field, point counting over constant field extensions,
//! the L-polynomial, and class number ratios `h(F_r)/h(F)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{divisors, is_perfect_square, isqrt, mobius, sqrt_enclosure, Interval};
use crate::covers::CoverModel;
use crate::error::{Error, Result};
use crate::ffield::{count_monic_irreducibles, Embedding, FieldElement, FieldSpec, Poly, MAX_FIELD_SIZE};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Cap on field-element evaluations spent by point counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub evaluations: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { evaluations: DEFAULT_BUDGET }
    }
}

impl Budget {
    pub fn new(evaluations: u64) -> Self {
        Budget { evaluations }
    }

    /// Errors unless `Σ_{i≤m} q^i` evaluations fit and `q^m ≤ 2^20`.
    pub fn check_counts(&self, q: u64, m: u32) -> Result<()> {
        let mut needed: u64 = 0;
        for i in 1..=m {
            let qi = q.checked_pow(i).unwrap_or(u64::MAX);
            if qi > MAX_FIELD_SIZE {
                return Err(Error::BudgetExceeded { needed: qi, allowed: MAX_FIELD_SIZE });
            }
            needed = needed.saturating_add(qi);
        }
        if needed > self.evaluations {
            return Err(Error::BudgetExceeded { needed, allowed: self.evaluations });
        }
        Ok(())
    }
}

/// Number of degree-`r` places of `F_q(x)`.
pub fn b_r_exact_rational_ff(field: &FieldSpec, r: u32) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let n = count_monic_irreducibles(field, r)?;
    Ok(if r == 1 { n + 1u32 } else { n })
}

/// Rational enclosure of `q^r/r ∓ E` with
/// `E = (q/(q-1) + 2g√q/(√q-1))·(q^{r/2} - 1)/r`. Each occurrence of `√q`
/// takes the endpoint that widens the window: `q^{r/2}` uses the integer
/// bracket `⌊√q⌋ + 1` (exact for square `q`), while `√q/(√q-1)` uses a
/// twelve-digit lower enclosure, since the integer floor is 1 for `q < 4`.
pub fn b_r_interval(q: u64, r: u32, g: u64) -> Result<Interval> {
    if q < 2 || r == 0 {
        return Err(Error::InvalidArgument(format!("need q ≥ 2 and r ≥ 1 (q={q}, r={r})")));
    }
    let qi = BigInt::from(q);
    let qb = BigRational::from_integer(qi.clone());
    let one = BigRational::one();
    let s_lo = sqrt_enclosure(&qb, 12).lo;
    let s_hi = if is_perfect_square(&qi) { isqrt(&qi) } else { isqrt(&qi) + 1 };
    let mut qh = BigRational::from_integer(qi.pow(r / 2));
    if r % 2 == 1 {
        qh *= BigRational::from_integer(s_hi);
    }
    let e = (&qb / (&qb - &one) + BigRational::from_integer(BigInt::from(2 * g)) * &s_lo / (&s_lo - &one))
        * (qh - &one)
        / BigRational::from_integer(BigInt::from(r));
    let centre = BigRational::from_integer(qi.pow(r)) / BigRational::from_integer(BigInt::from(r));
    Ok(Interval { lo: &centre - &e, hi: centre + e })
}

/// `B_r = (1/r) Σ_{d|r} μ(r/d) N_d` from `N_1..N_r`.
pub fn b_r_from_counts(counts: &[u64], r: u32) -> Result<u64> {
    if (counts.len() as u32) < r || r == 0 {
        return Err(Error::InvalidArgument(format!("need N_1..N_{r}")));
    }
    let mut acc = BigInt::zero();
    for d in divisors(r as u64) {
        acc += BigInt::from(mobius(r as u64 / d)) * BigInt::from(counts[d as usize - 1]);
    }
    let (b, rem) = (&acc / r, &acc % r);
    if !rem.is_zero() || b.is_negative() {
        return Err(Error::Consistency(format!("Möbius sum {acc} not a nonnegative multiple of {r}")));
    }
    Ok(b.to_u64().expect("fits"))
}

/// `N_i = #F(F_{q^i})` for `i = 1..=m`.
pub fn point_counts(cover: &CoverModel, m: u32, budget: Budget) -> Result<Vec<u64>> {
    let field = cover.field();
    budget.check_counts(field.q(), m)?;
    (1..=m)
        .map(|i| {
            let emb = field.extension(i)?;
            Ok(count_over(cover, &emb))
        })
        .collect()
}

fn horner(f: &FieldSpec, coeffs: &[FieldElement], x: FieldElement) -> FieldElement {
    coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

fn count_over(cover: &CoverModel, emb: &Embedding) -> u64 {
    let big = &emb.target;
    let qq = big.q();
    match cover {
        CoverModel::Rational(_) => qq + 1,
        CoverModel::Kummer(c) => {
            let u = c.u_sf().map(emb);
            let co = u.coeffs();
            let affine: u64 = (0..qq)
                .into_par_iter()
                .map(|i| {
                    let v = horner(big, co, big.element(i));
                    if v.is_zero() {
                        1
                    } else if big.is_nonzero_square(v) {
                        2
                    } else {
                        0
                    }
                })
                .sum();
            let deg = u.degree().unwrap();
            let inf = if deg % 2 == 1 {
                1
            } else if big.is_nonzero_square(u.leading()) {
                2
            } else {
                0
            };
            affine + inf
        }
        CoverModel::As2(c) => {
            let num = c.numerator().map(emb);
            let den = c.denominator().map(emb);
            let affine: u64 = (0..qq)
                .into_par_iter()
                .map(|i| {
                    let x = big.element(i);
                    let d = horner(big, den.coeffs(), x);
                    if d.is_zero() {
                        return 1;
                    }
                    let v = big.div(horner(big, num.coeffs(), x), d).unwrap();
                    if big.trace(v) == 0 {
                        2
                    } else {
                        0
                    }
                })
                .sum();
            let inf = match c.value_at_infinity() {
                None => 1,
                Some(v) => {
                    if big.trace(emb.map(v)) == 0 {
                        2
                    } else {
                        0
                    }
                }
            };
            affine + inf
        }
        CoverModel::MultiQuad(c) => {
            let n = c.n() as u32;
            let facs: Vec<Poly> = c.factors().iter().map(|u| u.map(emb)).collect();
            let affine: u64 = (0..qq)
                .into_par_iter()
                .map(|i| {
                    let x = big.element(i);
                    let mut zero = false;
                    for u in &facs {
                        let v = horner(big, u.coeffs(), x);
                        if v.is_zero() {
                            zero = true;
                        } else if !big.is_nonzero_square(v) {
                            return 0;
                        }
                    }
                    if zero {
                        1 << (n - 1)
                    } else {
                        1 << n
                    }
                })
                .sum();
            let odd: Vec<bool> = facs.iter().map(|u| u.degree().unwrap() % 2 == 1).collect();
            let chars: Vec<bool> = facs.iter().map(|u| !big.is_nonzero_square(u.leading())).collect();
            let inf = if odd.iter().all(|o| !o) {
                if chars.iter().all(|c| !c) {
                    1 << n
                } else {
                    0
                }
            } else {
                let first = odd.iter().position(|&o| o).unwrap();
                let ok = (0..facs.len()).all(|i| if odd[i] { chars[i] == chars[first] } else { !chars[i] });
                if ok {
                    1 << (n - 1)
                } else {
                    0
                }
            };
            affine + inf
        }
    }
}

/// `L(u) = Σ a_i u^i`, `a_0 = 1`, `a_{2g} = q^g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPolynomial {
    pub q: BigInt,
    pub genus: usize,
    pub coeffs: Vec<BigInt>,
}

impl LPolynomial {
    /// Newton's identities on `S_i = N_i - q^i - 1`, `i ≤ g`, completed by
    /// the functional equation `a_{2g-i} = q^{g-i} a_i`.
    pub fn from_counts(q: u64, genus: usize, counts: &[u64]) -> Result<Self> {
        if counts.len() < genus {
            return Err(Error::InvalidArgument(format!("need N_1..N_{genus}")));
        }
        let qb = BigInt::from(q);
        let s: Vec<BigInt> = (1..=genus)
            .map(|i| BigInt::from(counts[i - 1]) - qb.pow(i as u32) - 1)
            .collect();
        for (i, si) in s.iter().enumerate() {
            // Weil: S_i² ≤ 4g² q^i
            if si * si > BigInt::from(4 * genus * genus) * qb.pow(i as u32 + 1) {
                return Err(Error::InconsistentLPolynomial(format!("N_{} violates the Weil bound", i + 1)));
            }
        }
        let mut a = vec![BigInt::zero(); 2 * genus + 1];
        a[0] = BigInt::one();
        for i in 1..=genus {
            let mut acc = BigInt::zero();
            for j in 1..=i {
                acc += &s[j - 1] * &a[i - j];
            }
            if !(&acc % i).is_zero() {
                return Err(Error::InconsistentLPolynomial(format!("a_{i} = {acc}/{i} is not integral")));
            }
            a[i] = acc / i;
        }
        for i in 0..genus {
            a[2 * genus - i] = qb.pow((genus - i) as u32) * &a[i];
        }
        let l = LPolynomial { q: qb, genus, coeffs: a };
        if !l.class_number().is_positive() {
            return Err(Error::InconsistentLPolynomial("L(1) ≤ 0".into()));
        }
        Ok(l)
    }

    pub fn eval(&self, u: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * u + c)
    }

    pub fn class_number(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `S_1..S_n`, where `N_i = q^i + 1 + S_i`.
    pub fn power_sums(&self, n: usize) -> Vec<BigInt> {
        let coeff = |i: usize| self.coeffs.get(i).cloned().unwrap_or_default();
        let mut s: Vec<BigInt> = Vec::with_capacity(n);
        for k in 1..=n {
            let mut v = coeff(k) * k;
            for j in 1..k {
                v -= &s[j - 1] * coeff(k - j);
            }
            s.push(v);
        }
        s
    }

    pub fn predicted_counts(&self, n: usize) -> Vec<BigInt> {
        self.power_sums(n)
            .into_iter()
            .enumerate()
            .map(|(i, s)| self.q.pow(i as u32 + 1) + 1 + s)
            .collect()
    }

    /// The L-polynomial over `F_{q^r}`, from the power sums `S_{r}, S_{2r}, …`.
    pub fn base_change(&self, r: u32) -> LPolynomial {
        let g = self.genus;
        let r = r as usize;
        let s = self.power_sums(g * r);
        let qr = self.q.pow(r as u32);
        let mut a = vec![BigInt::zero(); 2 * g + 1];
        a[0] = BigInt::one();
        for i in 1..=g {
            let mut acc = BigInt::zero();
            for j in 1..=i {
                acc += &s[j * r - 1] * &a[i - j];
            }
            a[i] = acc / i;
        }
        for i in 0..g {
            a[2 * g - i] = qr.pow((g - i) as u32) * &a[i];
        }
        LPolynomial { q: qr, genus: g, coeffs: a }
    }
}

/// L-polynomial of `cover` assuming genus `g`. When the budget also covers
/// `N_{g+1}`, the count predicted by `L` is checked against it, so a wrong
/// genus is reported rather than silently accepted.
pub fn l_polynomial(cover: &CoverModel, g: usize, budget: Budget) -> Result<LPolynomial> {
    let q = cover.field().q();
    let check = budget.check_counts(q, g as u32 + 1).is_ok();
    let m = if check { g + 1 } else { g };
    let counts = point_counts(cover, m as u32, budget)?;
    let l = LPolynomial::from_counts(q, g, &counts)?;
    if check {
        let predicted = &l.predicted_counts(g + 1)[g];
        if *predicted != BigInt::from(counts[g]) {
            return Err(Error::InconsistentLPolynomial(format!(
                "L predicts N_{} = {predicted} but {} were counted; genus {g} is wrong",
                g + 1,
                counts[g]
            )));
        }
    }
    Ok(l)
}

/// `h(F_r)/h(F) = Res(1 + u + … + u^{r-1}, L(u))`.
pub fn h_ratio(l: &LPolynomial, r: u32) -> Result<BigInt> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let phi = vec![BigInt::one(); r as usize];
    let res = resultant(&phi, &l.coeffs).abs();
    if res.is_zero() {
        return Err(Error::Consistency("vanishing resultant".into()));
    }
    Ok(res)
}

/// Resultant of two integer polynomials (coefficients low-degree first) as
/// the Sylvester determinant, by fraction-free elimination.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let trim = |p: &[BigInt]| {
        let mut v = p.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let (a, b) = (trim(a), trim(b));
    assert!(!a.is_empty() && !b.is_empty(), "resultant with the zero polynomial");
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 {
        return a[0].pow(n as u32);
    }
    if n == 0 {
        return b[0].pow(m as u32);
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            mat[row][row + j] = c.clone();
        }
    }
    for row in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            mat[n + row][row + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::covers::{As2Cover, KummerCover};
    use crate::ffield::parse_poly;

    fn f(p: u64, k: u32) -> FieldSpec {
        FieldSpec::new(p, k).unwrap()
    }

    #[test]
    fn rational_b_r_small_cases() {
        assert_eq!(b_r_exact_rational_ff(&f(7, 1), 1).unwrap(), BigUint::from(8u32));
        assert_eq!(b_r_exact_rational_ff(&f(2, 1), 4).unwrap(), BigUint::from(3u32));
        assert_eq!(b_r_exact_rational_ff(&f(3, 1), 2).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn interval_widens_with_genus() {
        let a = b_r_interval(7, 3, 0).unwrap();
        let b = b_r_interval(7, 3, 2).unwrap();
        assert!(b.lo < a.lo && a.hi < b.hi);
        assert!(a.contains(&rat(112, 1)));
    }

    #[test]
    fn elliptic_counts_over_f2() {
        let f2 = f(2, 1);
        let c = CoverModel::As2(As2Cover::new(Poly::one(&f2), parse_poly(&f2, "x*(x+1)").unwrap()).unwrap());
        let counts = point_counts(&c, 2, Budget::default()).unwrap();
        // the two poles ramify; infinity (value 0) splits
        assert_eq!(counts[0], 4);
        let l = l_polynomial(&c, 1, Budget::default()).unwrap();
        assert_eq!(l.coeffs, vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)]);
        assert_eq!(l.class_number(), BigInt::from(4));
    }

    #[test]
    fn wrong_genus_is_detected() {
        let f7 = f(7, 1);
        let c = CoverModel::Kummer(KummerCover::parse(&f7, "x^6+2*x^5+3*x^4+3*x^3+x^2+1").unwrap());
        assert!(l_polynomial(&c, 2, Budget::default()).is_ok());
        assert!(matches!(l_polynomial(&c, 1, Budget::default()), Err(Error::InconsistentLPolynomial(_))));
    }

    #[test]
    fn budget_is_enforced() {
        let f13 = f(13, 1);
        let c = CoverModel::Rational(f13);
        assert!(matches!(point_counts(&c, 6, Budget::new(1000)), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(point_counts(&c, 6, Budget::default()), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn resultant_of_small_polynomials() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        // Res(x - 2, x^2 + 1) = 5
        assert_eq!(resultant(&b(&[-2, 1]), &b(&[1, 0, 1])), BigInt::from(5));
        // Res(x^2 - 1, x^2 - 4) = (1-4)^2 = 9
        assert_eq!(resultant(&b(&[-1, 0, 1]), &b(&[-4, 0, 1])), BigInt::from(9));
    }

    #[test]
    fn h_ratio_matches_base_change() {
        let f7 = f(7, 1);
        let c = CoverModel::Kummer(KummerCover::parse(&f7, "x^6+2*x^5+3*x^4+3*x^3+x^2+1").unwrap());
        let l = l_polynomial(&c, 2, Budget::default()).unwrap();
        for r in 1..=5 {
            let lr = l.base_change(r);
            let ratio = h_ratio(&l, r).unwrap();
            assert_eq!(&ratio * l.class_number(), lr.class_number(), "r = {r}");
        }
    }

    #[test]
    fn b_r_from_counts_of_rational_field() {
        let f3 = f(3, 1);
        let counts = point_counts(&CoverModel::Rational(f3.clone()), 6, Budget::default()).unwrap();
        for r in 1..=6 {
            assert_eq!(BigUint::from(b_r_from_counts(&counts, r).unwrap()), b_r_exact_rational_ff(&f3, r).unwrap());
        }
    }
}
