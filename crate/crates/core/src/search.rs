//! Searches for parameter tuples solving Gras' system
//!
//! ```text
//! b(x^2 - y^2) + 2axy = +-2
//! m [z^2 - chi g (x^2 + y^2)]^2 - 4g^2 = +-16
//! ```
//!
//! together with the (x, y)-family probes built on the necessary condition
//! g^2 +- 4 = m c^2.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorize, is_perfect_square, is_qr_mod};
use crate::certify::{certify_params, Certificate};
use crate::error::{Error, Result};
use crate::gras::{scan_t, verify_system, GrasParams};

/// Inclusive upper bounds for the sweep. b runs over even values only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepBounds {
    pub a_max: u64,
    pub b_max: u64,
    pub x_max: u64,
    pub g_max: u64,
}

impl SweepBounds {
    /// 1 <= a <= 500, 2 <= b <= 20000, 1 <= x <= 200, 1 <= g <= 10^6.
    pub const FULL: SweepBounds = SweepBounds {
        a_max: 500,
        b_max: 20_000,
        x_max: 200,
        g_max: 1_000_000,
    };

    pub fn new(a_max: u64, b_max: u64, x_max: u64, g_max: u64) -> Result<Self> {
        if a_max == 0 || b_max == 0 || x_max == 0 || g_max == 0 {
            return Err(Error::MalformedParams(
                "sweep bounds must be at least 1".into(),
            ));
        }
        Ok(SweepBounds {
            a_max,
            b_max,
            x_max,
            g_max,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepHit {
    pub params: GrasParams,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepStats {
    pub triples: u64,
    pub first_eq_solutions: u64,
    pub system_solutions: u64,
    pub no_valid_t: u64,
    pub rejected: u64,
    pub duplicates: u64,
    pub hits: u64,
}

impl SweepStats {
    fn add(&mut self, o: &SweepStats) {
        self.triples += o.triples;
        self.first_eq_solutions += o.first_eq_solutions;
        self.system_solutions += o.system_solutions;
        self.no_valid_t += o.no_valid_t;
        self.rejected += o.rejected;
        self.duplicates += o.duplicates;
        self.hits += o.hits;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepResult {
    pub hits: Vec<SweepHit>,
    pub stats: SweepStats,
}

/// All integers y with b(x^2 - y^2) + 2axy = 2 or -2, in increasing order.
///
/// For b != 0 this is b y^2 - 2ax y - (b x^2 - s) = 0 with s = +-2, so
/// y = (ax +- sqrt(m x^2 - s b)) / b with m = a^2 + b^2.
pub fn solve_first_eq(a: &BigInt, b: &BigInt, x: &BigInt) -> BTreeSet<BigInt> {
    let mut out = BTreeSet::new();
    for s in [BigInt::from(2), BigInt::from(-2)] {
        if b.is_zero() {
            // 2axy = s
            let lin: BigInt = BigInt::from(2) * a * x;
            if !lin.is_zero() && (&s % &lin).is_zero() {
                out.insert(&s / &lin);
            }
            continue;
        }
        let m = a * a + b * b;
        let disc = &m * x * x - &s * b;
        let Some(r) = is_perfect_square(&disc) else {
            continue;
        };
        let ax = a * x;
        for num in [&ax + &r, &ax - &r] {
            if (&num % b).is_zero() {
                out.insert(num / b);
            }
        }
    }
    out
}

/// All z >= 0 with (z^2 - chi g c)^2 = (4g^2 +- 16) / m.
pub fn solve_second_eq(m: &BigInt, g: &BigInt, c: &BigInt, chi: i8) -> BTreeSet<BigInt> {
    let mut out = BTreeSet::new();
    if m.is_zero() {
        return out;
    }
    let base = BigInt::from(chi) * g * c;
    for s in [16, -16] {
        let n: BigInt = BigInt::from(4) * g * g + s;
        let (q, r) = n.div_rem(m);
        if !r.is_zero() {
            continue;
        }
        let Some(root) = is_perfect_square(&q) else {
            continue;
        };
        for z2 in [&base + &root, &base - &root] {
            if let Some(z) = is_perfect_square(&z2) {
                out.insert(z);
            }
        }
    }
    out
}

fn isqrt_exact(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = (n as u128).sqrt() as i128;
    (r * r == n).then_some(r)
}

/// Machine-word version of `solve_second_eq`; `None` on overflow.
fn second_eq_small(m: i128, g: i128, c: i128, chi: i128) -> Option<Vec<i128>> {
    let base = chi.checked_mul(g)?.checked_mul(c)?;
    let four_g2 = g.checked_mul(g)?.checked_mul(4)?;
    let mut out = Vec::new();
    for s in [16, -16] {
        let n = four_g2 + s;
        if n % m != 0 {
            continue;
        }
        let Some(root) = isqrt_exact(n / m) else {
            continue;
        };
        for z2 in [base + root, base - root] {
            if let Some(z) = isqrt_exact(z2) {
                out.push(z);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

fn second_eq_range(m: &BigInt, g_max: u64, c: &BigInt, chi: i8) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    let small = m
        .to_i128()
        .zip(c.to_i128())
        .filter(|&(m, c)| m < 1 << 60 && c < 1 << 40);
    for g in 1..=g_max {
        let zs: Vec<BigInt> =
            match small.and_then(|(m, c)| second_eq_small(m, g as i128, c, chi as i128)) {
                Some(zs) => zs.into_iter().map(BigInt::from).collect(),
                None => solve_second_eq(m, &BigInt::from(g), c, chi)
                    .into_iter()
                    .collect(),
            };
        out.extend(zs.into_iter().map(|z| (BigInt::from(g), z)));
    }
    out
}

fn sweep_chunk(cells: &[(u64, u64)], bounds: &SweepBounds, chi: i8) -> (Vec<SweepHit>, SweepStats) {
    let mut stats = SweepStats::default();
    let mut hits = Vec::new();
    for &(a, b) in cells {
        let (ab, bb) = (BigInt::from(a), BigInt::from(b));
        let m = &ab * &ab + &bb * &bb;
        for x in 1..=bounds.x_max {
            stats.triples += 1;
            let xb = BigInt::from(x);
            for y in solve_first_eq(&ab, &bb, &xb) {
                stats.first_eq_solutions += 1;
                let c = &xb * &xb + &y * &y;
                for (g, z) in second_eq_range(&m, bounds.g_max, &c, chi) {
                    stats.system_solutions += 1;
                    let Ok(p) = GrasParams::new(a, b, g, x, y.clone(), z, chi) else {
                        stats.rejected += 1;
                        continue;
                    };
                    match scan_t(&p) {
                        Some(choice) if choice.hasse => {
                            let p = p.with_t(choice.t);
                            match certify_params(&p) {
                                Ok(certificate) if certificate.irreducible && certificate.is_c4 => {
                                    hits.push(SweepHit {
                                        params: p,
                                        certificate,
                                    });
                                }
                                _ => stats.rejected += 1,
                            }
                        }
                        _ => stats.no_valid_t += 1,
                    }
                }
            }
        }
    }
    (hits, stats)
}

fn order_key(p: &GrasParams) -> [&BigInt; 6] {
    [&p.a, &p.b, &p.x, &p.y, &p.g, &p.z]
}

/// The polynomial and its image under X -> -X, whichever prints first.
fn canonical_poly(c: &Certificate) -> String {
    let f = c.polynomial.to_poly();
    let (u, v) = (f.to_string(), f.negate_variable().to_string());
    u.min(v)
}

/// Runs the sweep over the (a, b) grid split into `jobs` contiguous shards.
///
/// Hits are sorted by (a, b, x, y, g, z); hits sharing conductor, field
/// discriminant and polynomial up to X -> -X keep only the least tuple.
pub fn sweep(bounds: &SweepBounds, chi: i8, jobs: usize) -> Result<SweepResult> {
    let cells: Vec<(u64, u64)> = (1..=bounds.a_max)
        .flat_map(|a| (2..=bounds.b_max).step_by(2).map(move |b| (a, b)))
        .collect();
    let jobs = jobs.max(1);
    let chunk = cells.len().div_ceil(jobs).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::MalformedParams(e.to_string()))?;
    let parts: Vec<(Vec<SweepHit>, SweepStats)> = pool.install(|| {
        cells
            .par_chunks(chunk)
            .map(|cs| sweep_chunk(cs, bounds, chi))
            .collect()
    });

    let mut stats = SweepStats::default();
    let mut hits = Vec::new();
    for (h, s) in parts {
        stats.add(&s);
        hits.extend(h);
    }
    hits.sort_by(|u, v| order_key(&u.params).cmp(&order_key(&v.params)));
    let mut seen = BTreeSet::new();
    let mut kept = Vec::with_capacity(hits.len());
    for h in hits {
        let key = (
            h.certificate.conductor.clone(),
            h.certificate.disc_field.clone(),
            canonical_poly(&h.certificate),
        );
        if seen.insert(key) {
            kept.push(h);
        } else {
            stats.duplicates += 1;
        }
    }
    stats.hits = kept.len() as u64;
    Ok(SweepResult { hits: kept, stats })
}

/// A solution of g^2 + sign * 4 = m c^2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XyHit {
    pub g: BigInt,
    pub m: BigInt,
    pub sign: i8,
    /// Whether m has the shape of a real quadratic conductor: squarefree
    /// and 1 mod 4, or 4 times a squarefree number that is 2 or 3 mod 4.
    pub conductor_shaped: bool,
}

fn conductor_shaped(m: &BigInt) -> bool {
    let four = BigInt::from(4);
    let sqfree = |n: &BigInt| factorize(n).is_ok_and(|f| f.is_squarefree());
    match m.mod_floor(&four).to_u8() {
        Some(1) => sqfree(m),
        Some(0) => {
            let q = m / &four;
            let r = q.mod_floor(&four);
            (r == BigInt::from(2) || r == BigInt::from(3)) && sqfree(&q)
        }
        _ => false,
    }
}

/// All g in [1, g_max] with g^2 +- 4 = m c^2 for an integer m >= 1, ordered
/// by g and then sign (+ first).
pub fn xy_constraint_search(c: &BigInt, g_max: u64) -> Result<Vec<XyHit>> {
    if c < &BigInt::one() {
        return Err(Error::MalformedParams(format!("c = {c} must be positive")));
    }
    let c2 = c * c;
    let mut out = Vec::new();
    let small = c2.to_u128().filter(|&v| v < 1 << 80);
    for g in 1..=g_max {
        for sign in [1i8, -1] {
            let hit = match small {
                Some(c2s) => {
                    let g2 = (g as u128) * (g as u128);
                    let n = if sign > 0 {
                        Some(g2 + 4)
                    } else {
                        g2.checked_sub(4)
                    };
                    n.filter(|&n| n > 0 && n % c2s == 0)
                        .map(|n| BigInt::from(n / c2s))
                }
                None => {
                    let n = BigInt::from(g) * BigInt::from(g) + BigInt::from(4 * sign);
                    let (q, r) = n.div_rem(&c2);
                    (n.is_positive() && r.is_zero()).then_some(q)
                }
            };
            if let Some(m) = hit {
                let shaped = conductor_shaped(&m);
                out.push(XyHit {
                    g: BigInt::from(g),
                    m,
                    sign,
                    conductor_shaped: shaped,
                });
            }
        }
    }
    Ok(out)
}

/// Whether 10x^7 + 42x^5 + 70x^3 + 70x - 32 is a square modulo (x^2 + 1)^4,
/// the condition for the pair (x, (x^2 - 1)/2) to carry a family.
pub fn x_check(x: &BigInt) -> Result<bool> {
    if x.is_even() || x < &BigInt::from(3) {
        return Err(Error::BadOddX(x.clone()));
    }
    let n = BigInt::from(10) * x.pow(7)
        + BigInt::from(42) * x.pow(5)
        + BigInt::from(70) * x.pow(3)
        + BigInt::from(70) * x
        - 32;
    let base: BigInt = x * x + 1;
    let modulus = base.pow(4);
    is_qr_mod(&n, &modulus)
}

/// Tuples (a, b) with a^2 + b^2 = m, b even, and b u + a v = s, where
/// u = x^2 - y^2, v = 2xy and c = x^2 + y^2.
///
/// The line meets the circle at (a, b) = (s v - u w, s u + v w) / c^2 with
/// w^2 = m c^2 - s^2.
fn first_eq_points(m: &BigInt, x: &BigInt, y: &BigInt) -> Vec<(BigInt, BigInt)> {
    let u = x * x - y * y;
    let v = BigInt::from(2) * x * y;
    let c2 = x * x + y * y;
    let c2 = &c2 * &c2;
    let mut out = Vec::new();
    for s in [BigInt::from(2), BigInt::from(-2)] {
        let Some(w) = is_perfect_square(&(m * &c2 - &s * &s)) else {
            continue;
        };
        for w in [w.clone(), -w] {
            let an = &s * &v - &u * &w;
            let bn = &s * &u + &v * &w;
            if (&an % &c2).is_zero() && (&bn % &c2).is_zero() {
                let (a, b) = (an / &c2, bn / &c2);
                if b.is_even() {
                    out.push((a, b));
                }
            }
        }
    }
    out
}

/// Bounded probe for the pair (x, (x/2)^2 - 1), 4 | x: the first tuple
/// (a, b, g, x, y, z) solving the whole system with g <= g_max and
/// z <= z_max, if any.
pub fn x_check_even_probe(x: &BigInt, g_max: u64, z_max: &BigInt) -> Result<Option<GrasParams>> {
    let four = BigInt::from(4);
    if x.mod_floor(&four) == BigInt::from(2) {
        return Err(Error::XTwoModFour(x.clone()));
    }
    if !x.mod_floor(&four).is_zero() || x.is_zero() {
        return Err(Error::BadEvenX(x.clone()));
    }
    let half = x / 2;
    let y = &half * &half - 1;
    let c = x * x + &y * &y;
    for hit in xy_constraint_search(&c, g_max)? {
        for (a, b) in first_eq_points(&hit.m, x, &y) {
            for z in solve_second_eq(&hit.m, &hit.g, &c, 1) {
                if &z > z_max {
                    continue;
                }
                let p = GrasParams::new(
                    a.clone(),
                    b.clone(),
                    hit.g.clone(),
                    x.clone(),
                    y.clone(),
                    z,
                    1,
                )?;
                if verify_system(&p) {
                    return Ok(Some(p));
                }
            }
        }
    }
    Ok(None)
}

/// `x_check_even_probe` with g <= 10^6 and z <= 10^4.
pub fn x_check_even(x: &BigInt) -> Result<bool> {
    Ok(x_check_even_probe(x, 1_000_000, &BigInt::from(10_000))?.is_some())
}
