//! Dedekind's criterion: whether Z[theta] is maximal at a prime p, for theta
//! a root of a monic integer polynomial f.
//!
//! Write f = prod phi_i^e_i mod p, g = prod phi_i and h = f / g (lifted to
//! Z), and F = (f - g h) / p. Then Z[theta] is p-maximal iff
//! gcd(F mod p, g mod p, h mod p) = 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Factorization;
use crate::intpoly::{self, degree, trim};

/// Polynomial over F_p, constant term first, coefficients in [0, p).
type Fp = Vec<BigInt>;

fn reduce(f: &[BigInt], p: &BigInt) -> Fp {
    let mut out: Fp = f.iter().map(|c| c.mod_floor(p)).collect();
    trim(&mut out);
    out
}

fn inverse(a: &BigInt, p: &BigInt) -> BigInt {
    a.modpow(&(p - 2u32), p)
}

fn make_monic(f: Fp, p: &BigInt) -> Fp {
    match f.last() {
        Some(lc) if !lc.is_one() => {
            let inv = inverse(lc, p);
            f.iter().map(|c| (c * &inv).mod_floor(p)).collect()
        }
        _ => f,
    }
}

fn divrem(a: &Fp, b: &Fp, p: &BigInt) -> (Fp, Fp) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = inverse(&b[db], p);
    let mut r = a.clone();
    trim(&mut r);
    let mut q = vec![BigInt::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let coef = (&r[dr] * &inv).mod_floor(p);
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] = (&r[dr - db + i] - &coef * bc).mod_floor(p);
        }
        q[dr - db] = coef;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn gcd(a: &Fp, b: &Fp, p: &BigInt) -> Fp {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let (_, r) = divrem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(x, p)
}

fn derivative(f: &Fp, p: &BigInt) -> Fp {
    reduce(&intpoly::derivative(f), p)
}

/// Monic polynomials of degree d over F_p in a fixed order.
fn monic_of_degree(d: usize, p: u64) -> impl Iterator<Item = Fp> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut k| {
        let mut out = Vec::with_capacity(d + 1);
        for _ in 0..d {
            out.push(BigInt::from(k % p));
            k /= p;
        }
        out.push(BigInt::one());
        out
    })
}

/// Product of the distinct monic irreducible factors of a monic f over F_p.
fn radical(f: &Fp, p: &BigInt) -> Fp {
    let n = degree(f).unwrap_or(0);
    if n == 0 {
        return vec![BigInt::one()];
    }
    let small = p.to_string().parse::<u64>().ok().filter(|&q| q <= n as u64);
    let Some(q) = small else {
        // Every multiplicity is below p, so f / gcd(f, f') is the radical.
        let d = gcd(f, &derivative(f, p), p);
        return divrem(f, &d, p).0;
    };
    // p <= deg f: a multiplicity may be divisible by p, so factor by trial
    // division. After all factors of degree <= deg/2 are removed, what is
    // left is 1 or irreducible.
    let mut rest = f.clone();
    let mut rad: Fp = vec![BigInt::one()];
    for d in 1..=n / 2 {
        for phi in monic_of_degree(d, q) {
            let mut seen = false;
            loop {
                let (quot, r) = divrem(&rest, &phi, p);
                if degree(&r).is_some() {
                    break;
                }
                rest = quot;
                seen = true;
            }
            if seen {
                rad = reduce(&intpoly::mul(&rad, &phi), p);
            }
        }
    }
    if degree(&rest).is_some_and(|d| d > 0) {
        rad = reduce(&intpoly::mul(&rad, &make_monic(rest, p)), p);
    }
    rad
}

/// Whether Z[theta] is maximal at the prime p, for theta a root of the monic
/// integer polynomial `f` (constant term first).
pub fn is_p_maximal(f: &[BigInt], p: &BigInt) -> bool {
    let fbar = reduce(f, p);
    let g = radical(&fbar, p);
    let (h, r) = divrem(&fbar, &g, p);
    debug_assert!(degree(&r).is_none());
    let gh = intpoly::mul(&g, &h);
    let mut diff: Vec<BigInt> = f.to_vec();
    if diff.len() < gh.len() {
        diff.resize(gh.len(), BigInt::zero());
    }
    for (i, c) in gh.iter().enumerate() {
        diff[i] -= c;
    }
    let big_f: Vec<BigInt> = diff.iter().map(|c| c / p).collect();
    debug_assert!(diff.iter().all(|c| (c % p).is_zero()));
    let big_f = reduce(&big_f, p);
    let common = gcd(&gcd(&big_f, &g, p), &h, p);
    degree(&common) == Some(0)
}

/// Primes p with p^2 dividing the discriminant at which Z[theta] is not
/// maximal. Empty exactly when Z[theta] is the full ring of integers.
pub fn non_maximal_primes(f: &[BigInt], disc: &Factorization) -> Vec<BigInt> {
    disc.factors()
        .iter()
        .filter(|(_, e)| *e >= 2)
        .map(|(p, _)| p)
        .filter(|p| !is_p_maximal(f, p))
        .cloned()
        .collect()
}
