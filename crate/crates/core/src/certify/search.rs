use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use num_rational::BigRational;

use super::verify::{best_prefix, ramified_contribution, t_contribution, tower_numbers};
use super::{verify, BaseCoverSpec, Claimed, SecondCoverSpec, TowerCertificate, VerificationReport};
use crate::arith::is_prime;
use crate::covers::{Place, SplitType};
use crate::error::{Error, Result};
use crate::ffield::{enumerate_monic_irreducibles, FieldSpec, Poly};
use crate::towers::tower_aq_bound;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Use the first `max_linear` of the `p` linear factors `x - a`.
    pub max_linear: usize,
    /// Append the first `max_quad` monic irreducible quadratics.
    pub max_quad: usize,
    /// Candidate evaluations; the space is enumerated when it fits, sampled otherwise.
    pub budget: u64,
    pub seed: u64,
    /// Also search `F ⊂ FK` towers over sextic bases `F`.
    pub two_level: bool,
    pub max_results: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_linear: usize::MAX, max_quad: 0, budget: 200_000, seed: 1, two_level: false, max_results: 5 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchHit {
    pub certificate: TowerCertificate,
    pub report: VerificationReport,
}

const MAX_POOL: usize = 128;
const TWO_LEVEL_BASES: usize = 3;

/// Everything the fast evaluator needs about the rational places.
struct Tables {
    degrees: Vec<usize>,
    /// Per rational place (finite `a` in order, then ∞): factors vanishing there.
    zero: Vec<u128>,
    /// Per rational place: factors whose value is a non-square.
    nonsquare: Vec<u128>,
    places: Vec<Place>,
}

fn build_tables(field: &FieldSpec, pool: &[Poly]) -> Tables {
    let mut places: Vec<Place> = field.elements().map(|a| Place::rational(field, field.neg(a))).collect();
    places.sort();
    let mut zero = Vec::new();
    let mut nonsquare = Vec::new();
    for place in &places {
        let Place::Finite(lin) = place else { unreachable!() };
        let root = field.neg(lin.coeff(0));
        let (mut z, mut ns) = (0u128, 0u128);
        for (i, f) in pool.iter().enumerate() {
            let v = f.eval(root);
            if v.is_zero() {
                z |= 1 << i;
            } else if !field.is_nonzero_square(v) {
                ns |= 1 << i;
            }
        }
        zero.push(z);
        nonsquare.push(ns);
    }
    // monic factors: every even-degree product splits at ∞
    zero.push(0);
    nonsquare.push(0);
    places.push(Place::Infinity);
    Tables { degrees: pool.iter().map(|f| f.degree().unwrap()).collect(), zero, nonsquare, places }
}

/// Base-cover behaviour at every pool factor's place and every rational place.
struct BaseTables {
    u: Poly,
    at_factor: Vec<SplitType>,
    at_place: Vec<SplitType>,
    genus: u64,
    /// Pool mask equal to the base's own factor set, if it lies in the pool.
    same_field: Option<u128>,
}

#[derive(Debug, Clone)]
struct Candidate {
    bound: BigRational,
    base: Option<usize>,
    mask: u128,
    chosen: Vec<usize>,
    claimed: Claimed,
}

fn evaluate(q: u64, t: &Tables, base: Option<&BaseTables>, mask: u128) -> Option<(BigRational, Vec<usize>, Claimed)> {
    if mask == 0 || base.is_some_and(|b| b.same_field == Some(mask)) {
        return None;
    }
    let mut deg = 0;
    let (mut sigma, mut hurwitz) = (0u64, 0u64);
    for (i, &d) in t.degrees.iter().enumerate() {
        if mask >> i & 1 == 1 {
            deg += d;
            let (s, h) = ramified_contribution(base.map(|b| b.at_factor[i]), d as u64);
            sigma += s;
            hurwitz += h;
        }
    }
    let inf = t.places.len() - 1;
    if deg % 2 == 1 {
        let (s, h) = ramified_contribution(base.map(|b| b.at_place[inf]), 1);
        sigma += s;
        hurwitz += h;
    }
    let g_base = base.map_or(0, |b| b.genus as i64);
    let two_g_minus_2 = 2 * (2 * g_base - 2) + hurwitz as i64;
    if two_g_minus_2 < 2 {
        return None;
    }
    let genus = (two_g_minus_2 / 2 + 1) as u64;

    let mut cands: Vec<(usize, (u64, u64, bool))> = Vec::new();
    for (j, (&z, &ns)) in t.zero.iter().zip(&t.nonsquare).enumerate() {
        let top = if j == inf {
            if deg % 2 == 1 { SplitType::Ramified } else { SplitType::Split }
        } else if mask & z != 0 {
            SplitType::Ramified
        } else if (mask & ns).count_ones().is_multiple_of(2) {
            SplitType::Split
        } else {
            SplitType::Inert
        };
        if let Ok(c) = t_contribution(base.map(|b| b.at_place[j]), top) {
            cands.push((j, c));
        }
    }
    cands.sort_by_key(|&(j, (c, g, _))| (std::cmp::Reverse(g as i64 - c as i64), j));
    let contribs: Vec<_> = cands.iter().map(|c| c.1).collect();
    let len = best_prefix(q, sigma, &contribs)?;
    let (mut t_size, mut s_size, mut any) = (0, 0, false);
    for &(c, g, sp) in &contribs[..len] {
        t_size += c;
        s_size += g;
        any |= sp;
    }
    let nums = tower_numbers(q, sigma, t_size, s_size, any);
    let bound = tower_aq_bound(s_size, genus).ok()?;
    let mut chosen: Vec<usize> = cands[..len].iter().map(|c| c.0).collect();
    chosen.sort();
    let claimed = Claimed { t_size: Some(t_size), s_size, rank_lb: nums.rank, genus, l: 2, bound: bound.clone() };
    Some((bound, chosen, claimed))
}

fn product_string(pool: &[Poly], mask: u128) -> String {
    (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| format!("({})", pool[i])).collect::<Vec<_>>().join("*")
}

fn masks(n: usize, count: u64, rng: &mut ChaCha8Rng) -> Vec<u128> {
    if n < 64 && (1u64 << n) <= count {
        (1..1u128 << n).collect()
    } else {
        let full = u128::MAX >> (128 - n);
        let mut v: Vec<u128> = (0..count).map(|_| rng.gen::<u128>() & full).collect();
        v.sort();
        v.dedup();
        v
    }
}

fn base_tables(field: &FieldSpec, pool: &[Poly], tables: &Tables, factors: &[Poly]) -> Result<BaseTables> {
    let u = factors.iter().fold(Poly::one(field), |a, f| a.mul(f));
    let cover = crate::covers::KummerCover::new(u.clone())?;
    let at_factor = pool.iter().map(|f| cover.splitting(&Place::Finite(f.clone()))).collect::<Result<Vec<_>>>()?;
    let at_place = tables.places.iter().map(|p| cover.splitting(p)).collect::<Result<Vec<_>>>()?;
    let mut same = 0u128;
    let mut all_in = true;
    for f in factors {
        match pool.iter().position(|g| g == f) {
            Some(i) => same |= 1 << i,
            None => all_in = false,
        }
    }
    Ok(BaseTables { u, at_factor, at_place, genus: cover.genus() as u64, same_field: all_in.then_some(same) })
}

/// Sextic bases `F: y² = Q₁Q₂Q₃` with the most completely split rational places.
fn choose_bases(field: &FieldSpec, tables: &Tables, quads: &[Poly], budget: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<Poly>> {
    let n = quads.len();
    let mut triples: Vec<[usize; 3]> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                triples.push([a, b, c]);
            }
        }
    }
    triples.shuffle(rng);
    triples.truncate(budget.max(1) as usize);
    let mut scored: Vec<(usize, [usize; 3])> = triples
        .into_par_iter()
        .map(|tr| {
            let u = tr.iter().fold(Poly::one(field), |acc, &i| acc.mul(&quads[i]));
            let split = tables.places[..tables.places.len() - 1]
                .iter()
                .filter(|p| {
                    let Place::Finite(l) = p else { return false };
                    let v = u.eval(field.neg(l.coeff(0)));
                    field.is_nonzero_square(v)
                })
                .count();
            (split, tr)
        })
        .collect();
    scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    scored.into_iter().take(TWO_LEVEL_BASES).map(|(_, tr)| tr.iter().map(|&i| quads[i].clone()).collect()).collect()
}

/// Searches squarefree products of small irreducibles over `F_p` for
/// quadratic covers meeting the tower criterion; returns the best verified
/// certificates, highest bound first.
pub fn search(p: u64, config: &SearchConfig) -> Result<Vec<SearchHit>> {
    if !(3..=31).contains(&p) || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("search needs an odd prime p ≤ 31 (got {p})")));
    }
    let field = FieldSpec::new(p, 1)?;
    let mut pool: Vec<Poly> =
        field.elements().take(config.max_linear.min(p as usize)).map(|a| Poly::linear(&field, field.neg(a))).collect();
    let quads = enumerate_monic_irreducibles(&field, 2, 1 << 20)?;
    pool.extend(quads.iter().take(config.max_quad).cloned());
    if pool.len() > MAX_POOL {
        return Err(Error::InvalidArgument(format!("factor pool of {} exceeds {MAX_POOL}", pool.len())));
    }
    let tables = build_tables(&field, &pool);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let bases: Vec<BaseTables> = if config.two_level {
        choose_bases(&field, &tables, &quads, config.budget / 4, &mut rng)
            .iter()
            .map(|fs| base_tables(&field, &pool, &tables, fs))
            .collect::<Result<_>>()?
    } else {
        vec![]
    };

    let mut runs: Vec<(Option<usize>, Vec<u128>)> = Vec::new();
    if bases.is_empty() {
        runs.push((None, masks(pool.len(), config.budget, &mut rng)));
    } else {
        let share = config.budget / bases.len() as u64;
        for i in 0..bases.len() {
            runs.push((Some(i), masks(pool.len(), share, &mut rng)));
        }
    }

    let mut found: Vec<Candidate> = Vec::new();
    for (b, ms) in runs {
        let base = b.map(|i| &bases[i]);
        let hits: Vec<Candidate> = ms
            .par_iter()
            .filter_map(|&mask| {
                evaluate(p, &tables, base, mask).map(|(bound, chosen, claimed)| Candidate { bound, base: b, mask, chosen, claimed })
            })
            .collect();
        found.extend(hits);
    }
    found.sort_by(|x, y| y.bound.cmp(&x.bound).then(x.base.cmp(&y.base)).then(x.mask.cmp(&y.mask)));

    let mut out = Vec::new();
    for c in found {
        if out.len() >= config.max_results {
            break;
        }
        let cert = TowerCertificate {
            q: p,
            base_cover: c.base.map(|i| BaseCoverSpec { u: bases[i].u.to_string() }),
            second_cover: SecondCoverSpec::Kummer { u: product_string(&pool, c.mask) },
            t: c.chosen.iter().map(|&j| tables.places[j].to_string()).collect(),
            claimed: c.claimed,
            notes: vec![],
        };
        let report = verify(&cert);
        if report.passed() {
            out.push(SearchHit { certificate: cert, report });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn rediscovers_thirteen() {
        let hits = search(13, &SearchConfig::default()).unwrap();
        assert!(!hits.is_empty());
        assert!(hits[0].report.bound.as_ref().unwrap() >= &rat(4, 3));
        for h in &hits {
            assert!(h.report.passed());
        }
    }

    #[test]
    fn deterministic() {
        let cfg = SearchConfig { budget: 3000, max_quad: 4, ..SearchConfig::default() };
        let a: Vec<String> = search(11, &cfg).unwrap().iter().map(|h| h.certificate.to_json()).collect();
        let b: Vec<String> = search(11, &cfg).unwrap().iter().map(|h| h.certificate.to_json()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn tiny_budget_may_be_empty() {
        let cfg = SearchConfig { budget: 5, ..SearchConfig::default() };
        assert!(search(3, &cfg).is_ok());
    }

    #[test]
    fn rejects_bad_prime() {
        assert!(search(9, &SearchConfig::default()).is_err());
        assert!(search(37, &SearchConfig::default()).is_err());
    }

    #[test]
    fn two_level_hits_verify() {
        let cfg = SearchConfig { budget: 4000, max_linear: 7, max_quad: 3, two_level: true, ..SearchConfig::default() };
        for h in search(7, &cfg).unwrap() {
            assert!(h.report.passed());
            assert!(h.certificate.base_cover.is_some());
        }
    }
}
