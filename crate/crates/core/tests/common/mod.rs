//! Brute-force oracles for the integration and acceptance tests. They share
//! no code with the library: plain integer arithmetic, naive algorithms.

#![allow(dead_code)]

/// `GF(p^k)`, elements `0..q` as base-`p` digit vectors (constant first),
/// reduced by the first monic irreducible of degree `k` found by trial.
#[derive(Debug, Clone)]
pub struct Gf {
    pub p: u64,
    pub k: usize,
    pub q: u64,
    modulus: Vec<u64>,
}

fn digits(mut a: u64, p: u64, k: usize) -> Vec<u64> {
    let mut v = vec![0; k];
    for d in v.iter_mut() {
        *d = a % p;
        a /= p;
    }
    v
}

fn undigits(v: &[u64], p: u64) -> u64 {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo monic `m` over `F_p` (coefficients constant first).
fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - lead * c % p) % p;
            }
        }
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Monic `m` of degree `k` is irreducible over `F_p` iff no monic polynomial
/// of degree `1..=k/2` divides it.
fn irreducible_by_trial(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut f = digits(idx, p, d);
            f.push(1);
            if poly_rem(m.to_vec(), &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Gf {
    pub fn new(p: u64, k: usize) -> Gf {
        let q = p.pow(k as u32);
        if k == 1 {
            return Gf { p, k, q, modulus: vec![0, 1] };
        }
        for idx in 0..p.pow(k as u32) {
            let mut m = digits(idx, p, k);
            m.push(1);
            if m[0] != 0 && irreducible_by_trial(&m, p) {
                return Gf { p, k, q, modulus: m };
            }
        }
        unreachable!("an irreducible of every degree exists")
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (digits(a, self.p, self.k), digits(b, self.p, self.k));
        undigits(&x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect::<Vec<_>>(), self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let x = digits(a, self.p, self.k);
        undigits(&x.iter().map(|u| (self.p - u) % self.p).collect::<Vec<_>>(), self.p)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let prod = poly_mul(&digits(a, self.p, self.k), &digits(b, self.p, self.k), self.p);
        let r = poly_rem(prod, &self.modulus, self.p);
        undigits(&r, self.p)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Quadratic character: 0, 1 or -1 (odd `q`).
    pub fn chi(&self, a: u64) -> i64 {
        if a == 0 {
            return 0;
        }
        if self.pow(a, (self.q - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// Embeds `c ∈ F_p` (as an integer residue).
    pub fn embed(&self, c: i64) -> u64 {
        c.rem_euclid(self.p as i64) as u64
    }

    /// `u(x)` with integer coefficients (constant first).
    pub fn eval_int_poly(&self, u: &[i64], x: u64) -> u64 {
        u.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), self.embed(c)))
    }
}

/// Number of monic irreducibles of degree `r` over `GF(q)` by sieving out
/// every product of two monic polynomials of positive degree.
pub fn count_irreducibles_by_sieve(gf: &Gf, r: usize) -> u64 {
    let q = gf.q;
    let total = q.pow(r as u32);
    if r == 1 {
        return q;
    }
    let mut reducible = vec![false; total as usize];
    let monic = |d: usize, idx: u64| -> Vec<u64> {
        let mut v = digits(idx, q, d);
        v.push(1);
        v
    };
    for a in 1..=r / 2 {
        for i in 0..q.pow(a as u32) {
            let f = monic(a, i);
            for j in 0..q.pow((r - a) as u32) {
                let g = monic(r - a, j);
                let mut prod = vec![0u64; r + 1];
                for (x, &fx) in f.iter().enumerate() {
                    for (y, &gy) in g.iter().enumerate() {
                        prod[x + y] = gf.add(prod[x + y], gf.mul(fx, gy));
                    }
                }
                reducible[undigits(&prod[..r], q) as usize] = true;
            }
        }
    }
    reducible.iter().filter(|&&b| !b).count() as u64
}

/// Degree-`r` places of the rational function field, by sieve (plus `∞`
/// for `r = 1`).
pub fn rational_b_r_oracle(gf: &Gf, r: usize) -> u64 {
    count_irreducibles_by_sieve(gf, r) + u64::from(r == 1)
}

/// `#{(x, y)} + points at infinity` of the smooth model of `y² = u(x)` over
/// `GF(p^n)`, `u` squarefree with integer coefficients (constant first).
pub fn kummer_points(p: u64, u: &[i64], n: usize) -> u64 {
    let gf = Gf::new(p, n);
    let mut affine: i64 = 0;
    for x in 0..gf.q {
        affine += 1 + gf.chi(gf.eval_int_poly(u, x));
    }
    let deg = u.len() - 1;
    let lead = gf.embed(*u.last().unwrap());
    let at_inf = if deg % 2 == 1 { 1 } else { 1 + gf.chi(lead) };
    (affine + at_inf) as u64
}

/// Legendre symbol of an integer modulo an odd prime.
pub fn legendre(a: i64, p: u64) -> i64 {
    Gf::new(p, 1).chi(a.rem_euclid(p as i64) as u64)
}

/// Value at `a` of the product of integer polynomials (constant first) mod `p`.
pub fn eval_product(factors: &[Vec<i64>], a: i64, p: u64) -> i64 {
    let pi = p as i64;
    factors.iter().fold(1i64, |acc, f| {
        let v = f.iter().rev().fold(0i64, |s, &c| (s * a + c).rem_euclid(pi));
        acc * v % pi
    })
}

/// Integer coefficients (constant first) of a polynomial written like
/// `x^2+4*x+6`, `x-3` or `x`: a tiny parser for the prime-field test data.
pub fn int_poly(s: &str) -> Vec<i64> {
    let s = s.replace(' ', "").replace('-', "+-");
    let mut coeffs = vec![0i64; 1];
    for term in s.split('+').filter(|t| !t.is_empty()) {
        let (c, e) = if let Some((c, rest)) = term.split_once("x") {
            let c = match c.trim_end_matches('*') {
                "" => 1,
                "-" => -1,
                c => c.parse().unwrap(),
            };
            let e = rest.strip_prefix('^').map_or(1, |e| e.parse().unwrap());
            (c, e)
        } else {
            (term.parse().unwrap(), 0)
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] += c;
    }
    coeffs
}

/// Square of `w` reduced modulo monic `m`, over `F_p`, integer coefficients.
pub fn square_mod(w: &[i64], m: &[i64], p: u64) -> Vec<i64> {
    let pi = p as i64;
    let wv: Vec<u64> = w.iter().map(|c| c.rem_euclid(pi) as u64).collect();
    let mv: Vec<u64> = m.iter().map(|c| c.rem_euclid(pi) as u64).collect();
    let r = poly_rem(poly_mul(&wv, &wv, p), &mv, p);
    trim(r.into_iter().map(|c| c as i64).collect())
}

pub fn reduce_mod(a: &[i64], m: &[i64], p: u64) -> Vec<i64> {
    let pi = p as i64;
    let av: Vec<u64> = a.iter().map(|c| c.rem_euclid(pi) as u64).collect();
    let mv: Vec<u64> = m.iter().map(|c| c.rem_euclid(pi) as u64).collect();
    trim(poly_rem(av, &mv, p).into_iter().map(|c| c as i64).collect())
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Irreducibility over `F_p` by trial division (integer coefficients).
pub fn is_irreducible_int(f: &[i64], p: u64) -> bool {
    let pi = p as i64;
    let mut m: Vec<u64> = f.iter().map(|c| c.rem_euclid(pi) as u64).collect();
    while m.last() == Some(&0) {
        m.pop();
    }
    let lead = *m.last().unwrap();
    let inv = Gf::new(p, 1).pow(lead, p - 2);
    let m: Vec<u64> = m.iter().map(|c| c * inv % p).collect();
    m.len() >= 2 && irreducible_by_trial(&m, p)
}

/// Decimal digits of `√n` to `digits` places by schoolbook long-hand root
/// extraction (two digits at a time): `⌊√n · 10^digits⌋`.
pub fn decimal_sqrt_scaled(n: u128, digits: usize) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    let mut s = n.to_string();
    if s.len() % 2 == 1 {
        s.insert(0, '0');
    }
    let mut pairs: Vec<u32> = s.as_bytes().chunks(2).map(|c| ((c[0] - b'0') * 10 + (c[1] - b'0')) as u32).collect();
    pairs.extend(std::iter::repeat_n(0, digits));
    let (mut rem, mut root) = (BigUint::from(0u32), BigUint::from(0u32));
    for pair in pairs {
        rem = rem * 100u32 + pair;
        let mut d = 9u32;
        loop {
            let trial = (&root * 20u32 + d) * d;
            if trial <= rem {
                rem -= trial;
                root = root * 10u32 + d;
                break;
            }
            d -= 1;
        }
    }
    root
}
