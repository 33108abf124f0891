//! Tower criterion, unit ranks, class-group rank lower bounds, and the
//! parameter planners behind the odd-`q` tower construction and the
//! multi-quadratic compositum construction.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{ceil_two_sqrt, divisors, ge_two_plus_two_sqrt};
use crate::covers::{multiquad_genus_construction, CoverModel, MultiQuadCover};
use crate::error::{Error, Result};
use crate::ffield::{count_monic_irreducibles, enumerate_monic_irreducibles, FieldSpec, Poly};
use crate::places::{b_r_from_counts, point_counts, Budget};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankBoundInput {
    /// `d_l G_P` for each ramified place.
    pub inertia_ranks: Vec<u64>,
    pub t_size: u64,
    /// `d_l F_q^*`, 0 or 1.
    pub d_l_units_of_constants: u64,
    pub d_l_g: u64,
    pub l: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerWitness {
    pub s_size: u64,
    pub genus: u64,
    pub d_l_cls_lower: i64,
    pub d_l_units: u64,
    pub l: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankBound {
    pub value: u64,
    /// The raw formula went negative and was clamped to zero.
    pub clamped: bool,
}

/// Dirichlet: `d_l O_S^* = |S|` when `l | q - 1`, else `|S| - 1`.
pub fn unit_rank(l: u64, q: u64, s_size: u64) -> u64 {
    if (q - 1).is_multiple_of(l) {
        s_size
    } else {
        s_size.saturating_sub(1)
    }
}

/// `d_l Cl_S ≥ 2 + 2√(d_l O_S^* + 1)`, decided in integers.
pub fn gs_check(w: &TowerWitness) -> bool {
    ge_two_plus_two_sqrt(&BigInt::from(w.d_l_cls_lower), &BigInt::from(w.d_l_units + 1))
}

/// `Σ d_l G_P - (|T| - 1 + d_l F_q^*) - d_l G`, one less when no place of
/// `T` splits completely; negatives clamp to zero.
pub fn rank_lower_bound(inp: &RankBoundInput, infinity_splits: bool) -> RankBound {
    let sum: i64 = inp.inertia_ranks.iter().map(|&r| r as i64).sum();
    let mut v = sum - (inp.t_size as i64 - 1 + inp.d_l_units_of_constants as i64) - inp.d_l_g as i64;
    if !infinity_splits {
        v -= 1;
    }
    if v < 0 {
        RankBound { value: 0, clamped: true }
    } else {
        RankBound { value: v as u64, clamped: false }
    }
}

/// `|S| / (g - 1)`.
pub fn tower_aq_bound(s_size: u64, genus: u64) -> Result<BigRational> {
    if genus < 2 {
        return Err(Error::InvalidArgument(format!("genus {genus} < 2")));
    }
    Ok(BigRational::new(BigInt::from(s_size), BigInt::from(genus - 1)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QoddPlan {
    pub n_places: u64,
    pub r: u64,
    pub n: u64,
    pub a: u64,
    pub t1: u64,
    pub t: u64,
    pub z_size: u64,
    /// `⌈2√(2N+1)⌉`.
    pub ceil_root: u64,
    /// Upper bound on `2g(L) - 2 - 4g(F)`: `⌊A/(r-2)⌋ + ⌈2√(2N+1)⌉`.
    pub genus_excess_bound: u64,
    /// `2g(L) - 2 - 4g(F) = n - 4 + n(r-2) + t` for the chosen sets.
    pub genus_excess: i64,
}

/// Bookkeeping of the odd-`q` construction with `N` places and odd `r ≥ 3`.
pub fn qodd_plan(n_places: u64, r: u64) -> Result<QoddPlan> {
    if n_places == 0 || r < 3 || r.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("need N ≥ 1 and odd r ≥ 3 (N={n_places}, r={r})")));
    }
    let ceil_root = ceil_two_sqrt(&BigInt::from(2 * n_places + 1)).to_u64().expect("small");
    let a = 3 + ceil_root;
    let n = a / (r - 2);
    let t1 = a - n * (r - 2);
    let t = if t1 == 0 || t1.is_multiple_of(2) { t1 } else { t1 + 1 };
    let z_size = n * (r - 2) + t;
    if !ge_two_plus_two_sqrt(&BigInt::from(z_size as i64 - 1), &BigInt::from(2 * n_places + 1)) {
        return Err(Error::Consistency(format!("|Z| - 1 = {} < 2 + 2√{}", z_size as i64 - 1, 2 * n_places + 1)));
    }
    let genus_excess = n as i64 - 4 + z_size as i64;
    let genus_excess_bound = n + ceil_root;
    if genus_excess > genus_excess_bound as i64 {
        return Err(Error::Consistency(format!("Hurwitz excess {genus_excess} > {genus_excess_bound}")));
    }
    Ok(QoddPlan { n_places, r, n, a, t1, t, z_size, ceil_root, genus_excess_bound, genus_excess })
}

/// `⌊θ r log₂ q⌋`: the largest `a` with `2^{a·den} ≤ q^{num·r}`.
pub fn floor_theta_r_log2(q: u64, r: u64, theta: &BigRational) -> Result<u64> {
    let (num, den) = theta_parts(theta)?;
    let rhs = BigUint::from(q).pow((num * r) as u32);
    let mut a = 0u64;
    while BigUint::from(2u32).pow(((a + 1) * den) as u32) <= rhs {
        a += 1;
    }
    Ok(a)
}

/// `⌈2 log r / log q⌉`: the smallest `c ≥ 0` with `q^c ≥ r²`.
pub fn ceil_two_log_ratio(q: u64, r: u64) -> u64 {
    let target = BigUint::from(r) * BigUint::from(r);
    let mut c = 0u32;
    while BigUint::from(q).pow(c) < target {
        c += 1;
    }
    c as u64
}

fn theta_parts(theta: &BigRational) -> Result<(u64, u64)> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if *theta <= BigRational::zero() || *theta >= half {
        return Err(Error::InvalidArgument(format!("θ = {theta} not in (0, 1/2)")));
    }
    let num = theta.numer().to_u64().ok_or_else(|| Error::InvalidArgument("θ too large".into()))?;
    let den = theta.denom().to_u64().ok_or_else(|| Error::InvalidArgument("θ too large".into()))?;
    if num > 4096 || den > 4096 {
        return Err(Error::InvalidArgument(format!("θ = {theta} has an oversized representation")));
    }
    Ok((num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KemPlan {
    pub q: u64,
    pub r: u64,
    #[serde(with = "crate::arith::rat_serde")]
    pub theta: BigRational,
    /// `⌊θ r log₂ q⌋`.
    pub x: u64,
    pub n: u64,
    pub m: u64,
    /// `⌈2 log r/log q⌉ + 1`.
    pub m_cap: u64,
    pub m_within_cap: bool,
    pub epsilon: u64,
    pub g_base_minus_1: u64,
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub g_h: BigUint,
    /// Number of degree-`r` places the tower criterion can afford in `S'`.
    pub s_prime_size: i64,
    #[serde(with = "crate::arith::rat_serde")]
    pub bound: BigRational,
}

impl KemPlan {
    /// `S'` must be nonempty for the construction to say anything.
    pub fn is_degenerate(&self) -> bool {
        self.s_prime_size <= 0
    }
}

/// Parameters of the compositum construction at `(q, r, θ)`, `r` odd.
/// Odd `q` uses Kummer covers and odd `n`; even `q` uses Artin–Schreier
/// covers `y_i² + y_i = 1/P_i` with unrestricted `n`.
pub fn kem_plan(q: u64, r: u64, theta: &BigRational) -> Result<KemPlan> {
    let (p, k) = crate::arith::prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
    if r == 0 || r.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("r = {r} must be odd")));
    }
    let x = floor_theta_r_log2(q, r, theta)?;
    let odd_q = q % 2 == 1;
    let n = if odd_q {
        if (x + 1) % 2 == 1 {
            x + 1
        } else {
            x
        }
    } else {
        x + 1
    };
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} is too small for a compositum")));
    }
    let field = FieldSpec::new(p, k)?;
    let mut m = 1u64;
    while count_monic_irreducibles(&field, m as u32)? < BigUint::from(n) {
        m += 1;
    }
    let m_cap = ceil_two_log_ratio(q, r) + 1;
    let (epsilon, g_base_minus_1, g_h, s_prime_size, bound) = if odd_q {
        let (gb, gh) = multiquad_genus_construction(m, n as u32)?;
        let eps = m % 2;
        let s = ((n as i64 - 3) / 2).pow(2) - 1;
        let b = BigRational::new(BigInt::from(2 * s * r as i64), BigInt::from(m * n + eps - 4));
        (eps, gb - 1, BigUint::from(gh), s, b)
    } else {
        if m * n < 3 {
            return Err(Error::InvalidArgument(format!("mn = {} too small", m * n)));
        }
        let gm1 = m * n - 2;
        let gh = (BigUint::one() << (n - 1)) * BigUint::from(gm1) + 1u32;
        let s = ((n as i64 - 3).pow(2) / 4) - 1;
        let b = BigRational::new(BigInt::from(s * r as i64), BigInt::from(gm1));
        (0, gm1, gh, s, b)
    };
    Ok(KemPlan {
        q,
        r,
        theta: theta.clone(),
        x,
        n,
        m,
        m_cap,
        m_within_cap: m <= m_cap,
        epsilon,
        g_base_minus_1,
        g_h,
        s_prime_size,
        bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KemConstruction {
    /// The `n` chosen irreducibles of degree `m`, printed.
    pub factors: Vec<String>,
    /// Degree-`r` places of `F_q(x)` splitting in every `k(y_i)`.
    pub base_split_places: u64,
    /// Degree-`r` places of `k(y)` splitting completely in `H`.
    pub split_places: u64,
    /// `B_r(H)` from point counts of `H`.
    pub b_r_h: u64,
    /// `split_places · 2^{n-1} = B_r(H)`.
    pub consistent: bool,
    /// `s_prime_size ≤ split_places` and `s_prime_size > 0`.
    pub feasible: bool,
}

/// Builds `H` from the first `n` monic irreducibles of degree `m` and
/// enumerates the degree-`r` places of `k(y)` splitting completely in it.
/// Odd `q` only.
pub fn kem_construct(plan: &KemPlan, budget: Budget) -> Result<KemConstruction> {
    let (p, k) = crate::arith::prime_power(plan.q).expect("checked by kem_plan");
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let field = FieldSpec::new(p, k)?;
    let mut factors = enumerate_monic_irreducibles(&field, plan.m as u32, budget.evaluations)?;
    factors.truncate(plan.n as usize);
    if factors.len() < plan.n as usize {
        return Err(Error::Consistency("fewer irreducibles than N_m promised".into()));
    }
    let r = plan.r as u32;
    let h = CoverModel::MultiQuad(MultiQuadCover::new(factors.clone())?);
    let counts = point_counts(&h, r, budget)?;
    let b_r_h = b_r_from_counts(&counts, r)?;
    let base_split = count_split_degree_r_places(&field, &factors, r)?;
    let split_places = 2 * base_split;
    let consistent = BigUint::from(split_places) << (plan.n - 1) == BigUint::from(b_r_h);
    let feasible = plan.s_prime_size > 0 && plan.s_prime_size as u64 <= split_places;
    Ok(KemConstruction {
        factors: factors.iter().map(|f| f.to_string()).collect(),
        base_split_places: base_split,
        split_places,
        b_r_h,
        consistent,
        feasible,
    })
}

/// Degree-`r` places `P` of `F_q(x)` (`r` odd) with every `u_i` a nonzero
/// square mod `P`, counted through their roots `α ∈ F_{q^r}` of exact
/// degree `r`: `P` splits in `k(y_i)` iff `u_i(α)` is a square in `F_{q^r}`.
pub fn count_split_degree_r_places(field: &FieldSpec, factors: &[Poly], r: u32) -> Result<u64> {
    let emb = field.extension(r)?;
    let big = &emb.target;
    let q = field.q();
    let mapped: Vec<Poly> = factors.iter().map(|u| u.map(&emb)).collect();
    let proper: Vec<u64> = divisors(r as u64).into_iter().filter(|&d| d < r as u64).collect();
    let roots: u64 = (0..big.q())
        .into_par_iter()
        .filter(|&i| {
            let a = big.element(i);
            let exact = proper.iter().all(|&d| big.pow(a, q.pow(d as u32)) != a);
            exact
                && mapped.iter().all(|u| {
                    let v = u.eval(a);
                    !v.is_zero() && big.is_nonzero_square(v)
                })
        })
        .count() as u64;
    let (places, rem) = roots.div_rem(&(r as u64));
    if rem != 0 {
        return Err(Error::Consistency(format!("{roots} roots not divisible by {r}")));
    }
    Ok(places)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn unit_rank_examples() {
        assert_eq!(unit_rank(2, 7, 18), 18);
        assert_eq!(unit_rank(3, 7, 5), 5);
        assert_eq!(unit_rank(5, 7, 5), 4);
        assert_eq!(unit_rank(2, 4, 10), 9);
    }

    #[test]
    fn gs_examples() {
        let w = |d, u| TowerWitness { s_size: 1, genus: 2, d_l_cls_lower: d, d_l_units: u, l: 2 };
        assert!(gs_check(&w(11, 18)));
        assert!(gs_check(&w(7, 4)));
        assert!(!gs_check(&w(4, 1)));
        assert!(!gs_check(&w(-3, 0)));
        assert!(gs_check(&w(12, 24)));
    }

    #[test]
    fn rank_examples() {
        let a7 = RankBoundInput { inertia_ranks: vec![2; 11], t_size: 10, d_l_units_of_constants: 1, d_l_g: 1, l: 2 };
        assert_eq!(rank_lower_bound(&a7, true).value, 11);
        assert_eq!(rank_lower_bound(&a7, false).value, 10);
        let a13 = RankBoundInput { inertia_ranks: vec![1; 10], t_size: 2, d_l_units_of_constants: 1, d_l_g: 1, l: 2 };
        assert_eq!(rank_lower_bound(&a13, true).value, 7);
        let none = RankBoundInput { inertia_ranks: vec![], t_size: 3, d_l_units_of_constants: 1, d_l_g: 1, l: 2 };
        assert_eq!(rank_lower_bound(&none, true), RankBound { value: 0, clamped: true });
    }

    #[test]
    fn aq_examples() {
        assert_eq!(tower_aq_bound(18, 21).unwrap(), rat(9, 10));
        assert_eq!(tower_aq_bound(24, 23).unwrap(), rat(12, 11));
        assert_eq!(tower_aq_bound(8, 6).unwrap(), rat(8, 5));
        assert!(tower_aq_bound(8, 1).is_err());
    }

    #[test]
    fn qodd_examples() {
        let p = qodd_plan(8, 3).unwrap();
        assert_eq!((p.a, p.n, p.t1, p.t), (12, 12, 0, 0));
        let p = qodd_plan(4, 5).unwrap();
        assert_eq!((p.a, p.n, p.t1, p.t, p.z_size), (9, 3, 0, 0, 9));
        let p = qodd_plan(8, 5).unwrap();
        assert_eq!((p.a, p.n, p.t1, p.t), (12, 4, 0, 0));
        let p = qodd_plan(8, 7).unwrap();
        assert_eq!((p.n, p.t1, p.t), (2, 2, 2));
        let p = qodd_plan(8, 9).unwrap();
        assert_eq!((p.n, p.t1, p.t), (1, 5, 6));
    }

    #[test]
    fn qodd_chain_exhaustive() {
        for r in [3, 5, 7, 9] {
            for n in 1..=10_000 {
                qodd_plan(n, r).unwrap();
            }
        }
    }

    #[test]
    fn log_comparisons() {
        // 9/20·9·log₂3 ≈ 6.42
        assert_eq!(floor_theta_r_log2(3, 9, &rat(9, 20)).unwrap(), 6);
        assert_eq!(floor_theta_r_log2(4, 5, &rat(2, 5)).unwrap(), 4);
        assert_eq!(ceil_two_log_ratio(3, 9), 4);
        assert_eq!(ceil_two_log_ratio(5, 7), 3);
        assert!(floor_theta_r_log2(3, 9, &rat(1, 2)).is_err());
    }

    #[test]
    fn kem_plan_q9() {
        let p = kem_plan(9, 5, &rat(2, 5)).unwrap();
        assert_eq!((p.x, p.n, p.m, p.epsilon, p.g_base_minus_1, p.s_prime_size), (6, 7, 1, 1, 2, 3));
        assert_eq!(p.bound, rat(15, 2));
        assert_eq!(p.g_h, BigUint::from(129u32));
    }

    #[test]
    fn kem_plan_even_q() {
        let p = kem_plan(4, 7, &rat(2, 5)).unwrap();
        assert_eq!(p.x, 5);
        assert_eq!(p.n, 6);
        assert_eq!(p.g_base_minus_1, p.m * p.n - 2);
    }

    #[test]
    fn kem_small_n_is_degenerate() {
        // n = 5 gives ((5-3)/2)² - 1 = 0
        let p = kem_plan(3, 7, &rat(2, 5)).unwrap();
        assert_eq!((p.n, p.m), (5, 3));
        assert!(p.is_degenerate());
    }

    #[test]
    fn kem_construction_q3_is_coherent() {
        let plan = kem_plan(3, 9, &rat(9, 20)).unwrap();
        let c = kem_construct(&plan, Budget::default()).unwrap();
        assert!(c.consistent, "{c:?}");
        assert!(c.feasible);
    }
}
