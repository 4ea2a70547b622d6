//! Exact integer utilities: factorization, squarefree tests, integer square
//! roots, and square roots modulo arbitrary moduli.
//!
//! Factorization runs trial division below 10^6, then Miller-Rabin and
//! Brent's variant of Pollard rho with a fixed sequence of seeds, so every
//! call is deterministic. Cofactors that fit in a machine word take a `u64`
//! fast path.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_BOUND: usize = 1_000_000;

/// Miller-Rabin bases; deterministic for every n < 3.3 * 10^24.
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut sieve = vec![true; TRIAL_BOUND + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= TRIAL_BOUND {
            if sieve[i] {
                let mut j = i * i;
                while j <= TRIAL_BOUND {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(k, &p)| p.then_some(k as u32))
            .collect()
    })
}

/// Prime factorization of a nonzero integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    value: BigInt,
    sign: i8,
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Prime-exponent pairs in strictly increasing prime order.
    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e <= 1)
    }

    /// Smallest prime whose square divides the value, if any.
    pub fn square_witness(&self) -> Option<&BigInt> {
        self.factors.iter().find(|&&(_, e)| e >= 2).map(|(p, _)| p)
    }

    /// The squarefree d with value = d * s^2, sign preserved.
    pub fn kernel(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            if e % 2 == 1 {
                acc *= p;
            }
        }
        acc
    }
}

/// Factors `n` into primes. Output is deterministic.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    factorize_with_hints(n, &[])
}

/// Factors `n`, first splitting off every prime that divides one of `hints`.
///
/// Useful when `n` is known to be built from smaller pieces (a polynomial
/// discriminant that should equal m^3 g^2, say): the hints are factored
/// instead of the much larger `n`.
pub fn factorize_with_hints(n: &BigInt, hints: &[BigInt]) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput("factorize"));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.magnitude().clone();
    let mut map: BTreeMap<BigUint, u32> = BTreeMap::new();

    for hint in hints {
        if hint.is_zero() || rest.is_one() {
            continue;
        }
        for p in factor_magnitude(hint.magnitude().clone()).into_keys() {
            let mut e = 0;
            while (&rest % &p).is_zero() {
                rest /= &p;
                e += 1;
            }
            if e > 0 {
                *map.entry(p).or_insert(0) += e;
            }
        }
    }
    for (p, e) in factor_magnitude(rest) {
        *map.entry(p).or_insert(0) += e;
    }

    Ok(Factorization {
        value: n.clone(),
        sign,
        factors: map
            .into_iter()
            .map(|(p, e)| (BigInt::from_biguint(Sign::Plus, p), e))
            .collect(),
    })
}

fn factor_magnitude(mut n: BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return out;
    }
    if let Some(small) = n.to_u64() {
        for (p, e) in factor_u64(small) {
            out.insert(BigUint::from(p), e);
        }
        return out;
    }
    for &p in small_primes() {
        if let Some(small) = n.to_u64() {
            for (q, e) in factor_u64(small) {
                *out.entry(BigUint::from(q)).or_insert(0) += e;
            }
            return out;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > n {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.insert(pb, e);
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u64() {
            for (q, e) in factor_u64(small) {
                *out.entry(BigUint::from(q)).or_insert(0) += e;
            }
            continue;
        }
        if is_prime_big(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let root = m.sqrt();
        if &root * &root == m {
            stack.push(root.clone());
            stack.push(root);
            continue;
        }
        let d = rho_big(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out
}

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: BTreeMap<u64, u32> = BTreeMap::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        while n.is_multiple_of(p) {
            n /= p;
            *out.entry(p).or_insert(0) += 1;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = rho_u64(m);
        stack.push(m / d);
        stack.push(d);
    }
    out.into_iter().collect()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Brent's cycle-finding rho; `n` must be odd composite.
fn rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn is_prime_big(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'bases: for &a in &MR_BASES {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return *n == a;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn rho_big(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r: u64 = 1;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..(128.min(r - k)) {
                    y = f(&y);
                    q = (q * diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
    }
    unreachable!()
}

/// True iff no prime square divides `n`. The sign of `n` is ignored.
pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    if n.is_zero() {
        return Err(Error::ZeroInput("is_squarefree"));
    }
    Ok(factorize(&n.abs())?.is_squarefree())
}

/// Returns the squarefree d with n = d * s^2 (sign preserved).
pub fn squarefree_kernel(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroInput("squarefree_kernel"));
    }
    Ok(factorize(n)?.kernel())
}

/// Exact integer square root of a perfect square, `None` otherwise.
pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Whether the product `a * b` is a perfect square, i.e. a and b have the
/// same squarefree kernel (when both are nonzero).
pub fn same_square_class(a: &BigInt, b: &BigInt) -> bool {
    is_perfect_square(&(a * b)).is_some()
}

/// Fundamental discriminant of the quadratic field Q(sqrt(n)).
pub fn fundamental_discriminant(n: &BigInt) -> Result<BigInt> {
    let d = squarefree_kernel(n)?;
    if d.mod_floor(&BigInt::from(4)) == BigInt::one() {
        Ok(d)
    } else {
        Ok(d * 4)
    }
}

fn p_valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Square root of a unit modulo an odd prime (Tonelli-Shanks).
pub fn sqrt_mod_prime(n: &BigInt, p: &BigInt) -> Option<BigInt> {
    let n = n.mod_floor(p);
    let two = BigInt::from(2);
    if n.is_zero() || *p == two {
        return Some(n);
    }
    let one = BigInt::one();
    let p1 = p - &one;
    let euler = |a: &BigInt| a.modpow(&(&p1 / &two), p);
    if euler(&n) != one {
        return None;
    }
    let s = p_valuation(&p1, &two);
    let q = &p1 >> s;
    let mut nonresidue = two.clone();
    while euler(&nonresidue) == one {
        nonresidue += 1;
    }
    let mut m = s;
    let mut c = nonresidue.modpow(&q, p);
    let mut t = n.modpow(&q, p);
    let mut r = n.modpow(&((&q + &one) / &two), p);
    while t != one {
        let mut i = 0;
        let mut t2 = t.clone();
        while t2 != one {
            t2 = (&t2 * &t2).mod_floor(p);
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b).mod_floor(p);
        t = (&t * &c).mod_floor(p);
        r = (&r * &b).mod_floor(p);
    }
    Some(r)
}

/// Square root of a unit `u` modulo p^e.
fn sqrt_unit_mod_prime_power(u: &BigInt, p: &BigInt, e: u32) -> Option<BigInt> {
    let pe = num_traits::pow(p.clone(), e as usize);
    let u = u.mod_floor(&pe);
    if *p == BigInt::from(2) {
        let eight = BigInt::from(8);
        return match e {
            1 => Some(BigInt::one()),
            2 => (u.mod_floor(&BigInt::from(4)).is_one()).then(BigInt::one),
            _ => {
                if !u.mod_floor(&eight).is_one() {
                    return None;
                }
                // r^2 = u mod 2^i; exactly one of r, r + 2^(i-1) works mod 2^(i+1).
                let mut r = BigInt::one();
                for i in 3..e {
                    let next = BigInt::one() << (i + 1);
                    if !(&r * &r - &u).mod_floor(&next).is_zero() {
                        r += BigInt::one() << (i - 1);
                    }
                }
                Some(r.mod_floor(&pe))
            }
        };
    }
    let mut r = sqrt_mod_prime(&u, p)?;
    let mut pk = p.clone();
    for _ in 1..e {
        // Hensel step: r <- r - (r^2 - u) / (2r) mod p^(k+1).
        pk *= p;
        let inv = mod_inverse(&(&r * 2), &pk)?;
        r = (&r - (&r * &r - &u) * inv).mod_floor(&pk);
    }
    Some(r)
}

/// A square root of `n` modulo p^k for prime `p`, if one exists.
pub fn sqrt_mod_prime_power(n: &BigInt, p: &BigInt, k: u32) -> Option<BigInt> {
    let pk = num_traits::pow(p.clone(), k as usize);
    let n = n.mod_floor(&pk);
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let v = p_valuation(&n, p);
    if v % 2 == 1 {
        return None;
    }
    let unit = &n / num_traits::pow(p.clone(), v as usize);
    let root = sqrt_unit_mod_prime_power(&unit, p, k - v)?;
    Some((root * num_traits::pow(p.clone(), (v / 2) as usize)).mod_floor(&pk))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// A square root of `n` modulo `modulus`, assembled from prime-power roots
/// by the Chinese remainder theorem.
pub fn sqrt_mod(n: &BigInt, modulus: &BigInt) -> Result<Option<BigInt>> {
    if *modulus < BigInt::from(2) {
        return Err(Error::BadModulus(modulus.clone()));
    }
    let fac = factorize(modulus)?;
    let mut acc = BigInt::zero();
    let mut acc_mod = BigInt::one();
    for (p, e) in fac.factors() {
        let Some(r) = sqrt_mod_prime_power(n, p, *e) else {
            return Ok(None);
        };
        let pe = num_traits::pow(p.clone(), *e as usize);
        let inv = mod_inverse(&acc_mod, &pe).expect("prime powers are coprime");
        let step = ((r - &acc) * inv).mod_floor(&pe);
        acc += step * &acc_mod;
        acc_mod *= pe;
    }
    Ok(Some(acc.mod_floor(modulus)))
}

/// True iff y^2 = n (mod modulus) has a solution.
pub fn is_qr_mod(n: &BigInt, modulus: &BigInt) -> Result<bool> {
    Ok(sqrt_mod(n, modulus)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    fn as_pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors()
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn factorize_non_squarefree_family_values() {
        let f = factorize(&big(7742)).unwrap();
        assert_eq!(as_pairs(&f), trial_division(7742));
        assert_eq!(as_pairs(&f), vec![(2, 1), (7, 2), (79, 1)]);

        let f = factorize(&big(80654)).unwrap();
        assert_eq!(as_pairs(&f), vec![(2, 1), (7, 2), (823, 1)]);

        let f = factorize(&big(1)).unwrap();
        assert!(f.factors().is_empty());
        assert_eq!(f.sign(), 1);
    }

    #[test]
    fn factorize_rejects_zero() {
        assert_eq!(factorize(&big(0)), Err(Error::ZeroInput("factorize")));
    }

    #[test]
    fn factorize_large_semiprimes() {
        // Both factors are above the trial-division bound.
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let r: BigInt = "1000000000000000003".parse().unwrap();
        let n = &p * &q * &r * &r;
        let f = factorize(&n).unwrap();
        assert_eq!(f.product(), n);
        assert_eq!(f.factors().len(), 3);
        assert_eq!(f.exponent_of(&r), 2);

        let neg = -(&p * &p * &q);
        let f = factorize(&neg).unwrap();
        assert_eq!(f.sign(), -1);
        assert_eq!(f.kernel(), -q.clone());
    }

    #[test]
    fn factorize_with_hints_matches_plain() {
        let m = big(533);
        let g = big(23);
        let disc = num_traits::pow(m.clone(), 3) * &g * &g;
        let a = factorize_with_hints(&disc, &[m, g]).unwrap();
        let b = factorize(&disc).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(&big(14)).unwrap());
        assert!(!is_squarefree(&big(50)).unwrap());
        assert!(!is_squarefree(&big(1_626_266_930)).unwrap());
        assert!(is_squarefree(&big(-14)).unwrap());
        assert!(is_squarefree(&big(0)).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(squarefree_kernel(&big(16 * 49 * 53)).unwrap(), big(53));
        assert_eq!(squarefree_kernel(&big(-4)).unwrap(), big(-1));
        assert_eq!(squarefree_kernel(&big(53)).unwrap(), big(53));
        assert!(squarefree_kernel(&big(0)).is_err());
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(is_perfect_square(&big(0)), Some(big(0)));
        assert_eq!(is_perfect_square(&big(4)), Some(big(2)));
        assert_eq!(is_perfect_square(&big(-4)), None);
        for z in 2i64..=50 {
            let m = z.pow(4) - 4 * z * z + 8;
            assert_eq!(is_perfect_square(&big(m)), None, "z = {z}");
        }
    }

    #[test]
    fn perfect_square_roots_exact() {
        for k in (0u64..=1_000_000).step_by(7) {
            let n = BigInt::from(k) * k;
            assert_eq!(is_perfect_square(&n), Some(BigInt::from(k)));
        }
    }

    #[test]
    fn qr_examples() {
        assert!(is_qr_mod(&big(2), &big(7)).unwrap());
        assert!(!is_qr_mod(&big(3), &big(4)).unwrap());
        let x = big(11);
        let n = big(10) * x.pow(7) + big(42) * x.pow(5) + big(70) * x.pow(3) + big(70) * &x - 32;
        assert!(is_qr_mod(&n, &big(122).pow(4)).unwrap());
        assert!(is_qr_mod(&big(1), &big(1)).is_err());
    }

    #[test]
    fn qr_agrees_with_exhaustive_small_moduli() {
        for modulus in 2u64..=200 {
            let squares: std::collections::HashSet<u64> =
                (0..modulus).map(|y| y * y % modulus).collect();
            for n in 0..modulus {
                let got = sqrt_mod(&BigInt::from(n), &BigInt::from(modulus)).unwrap();
                assert_eq!(got.is_some(), squares.contains(&n), "n={n} mod {modulus}");
                if let Some(r) = got {
                    assert_eq!(
                        (&r * &r - n).mod_floor(&BigInt::from(modulus)),
                        BigInt::zero()
                    );
                }
            }
        }
    }

    #[test]
    fn qr_agrees_with_exhaustive_all_moduli_sampled_residues() {
        for modulus in 201u64..=10_000 {
            let squares: std::collections::HashSet<u64> =
                (0..modulus).map(|y| y * y % modulus).collect();
            // A spread of residues, including multiples of small primes.
            for n in [
                0,
                1,
                2,
                3,
                4,
                8,
                12,
                18,
                27,
                32,
                modulus / 3,
                modulus / 2,
                modulus - 1,
            ] {
                let n = n % modulus;
                let got = is_qr_mod(&BigInt::from(n), &BigInt::from(modulus)).unwrap();
                assert_eq!(got, squares.contains(&n), "n={n} mod {modulus}");
            }
        }
    }

    #[test]
    fn tonelli_shanks_large_prime() {
        // p = 1 mod 2^k exercises the full loop.
        let p = BigInt::from(998_244_353u64);
        for n in [2u64, 3, 5, 10, 12345] {
            let n = BigInt::from(n);
            if let Some(r) = sqrt_mod_prime(&n, &p) {
                assert_eq!((&r * &r - &n).mod_floor(&p), BigInt::zero());
            }
        }
    }

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(fundamental_discriminant(&big(5)).unwrap(), big(5));
        assert_eq!(fundamental_discriminant(&big(200)).unwrap(), big(8));
        assert_eq!(fundamental_discriminant(&big(1160)).unwrap(), big(1160));
        assert_eq!(fundamental_discriminant(&big(-1)).unwrap(), big(-4));
    }
}
