//! Helpers for dense integer polynomials stored constant term first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Divides out the (positive) content; the sign of every coefficient is kept.
pub(crate) fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut p);
    let c = content(&p);
    if !c.is_zero() && !c.is_one() {
        for x in p.iter_mut() {
            *x /= &c;
        }
    }
    p
}

pub(crate) fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    trim(&mut d);
    d
}

pub(crate) fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Sign of p(num/den) for den > 0, computed without division.
pub(crate) fn sign_at_fraction(p: &[BigInt], num: &BigInt, den: &BigInt) -> i8 {
    let n = p.len();
    if n == 0 {
        return 0;
    }
    // sum c_i num^i den^(n-1-i)
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    let mut terms: Vec<BigInt> = Vec::with_capacity(n);
    for _ in 0..n {
        terms.push(den_pow.clone());
        den_pow *= den;
    }
    let mut num_pow = BigInt::one();
    for (i, c) in p.iter().enumerate() {
        acc += c * &num_pow * &terms[n - 1 - i];
        num_pow *= num;
    }
    sign_of(&acc)
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
pub(crate) fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b).expect("pseudo-division by zero polynomial");
    let lc = &b[db];
    let mut r: Vec<BigInt> = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return r;
    };
    if da < db {
        return r;
    }
    let mut steps = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lead = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &lead * bc;
        }
        trim(&mut r);
        steps -= 1;
    }
    let mult = num_traits::pow(lc.clone(), steps);
    for c in r.iter_mut() {
        *c *= &mult;
    }
    r
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact division of `a` by `b` over Z; `None` if the quotient is not integral
/// or a nonzero remainder is left.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = degree(b)?;
    let mut r = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return Some(Vec::new());
    };
    if da < db {
        return None;
    }
    let mut q = vec![BigInt::zero(); da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            return None;
        }
        let (coef, rem) = r[dr].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &coef * bc;
        }
        q[dr - db] = coef;
        trim(&mut r);
    }
    Some(q)
}

/// Primitive gcd over Q[X], returned as a primitive integer polynomial with
/// positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = primitive(a.to_vec());
    let mut y = primitive(b.to_vec());
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while degree(&y).is_some() {
        let r = primitive(prem(&x, &y));
        x = y;
        y = r;
    }
    if x.last().is_some_and(Signed::is_negative) {
        for c in x.iter_mut() {
            *c = -c.clone();
        }
    }
    x
}

/// Determinant by fraction-free (Bareiss) elimination.
pub(crate) fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant of two nonconstant integer polynomials via the Sylvester matrix.
pub(crate) fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let df = degree(f).expect("nonzero f");
    let dg = degree(g).expect("nonzero g");
    let size = df + dg;
    let mut rows = Vec::with_capacity(size);
    // Rows hold coefficients from the leading term down.
    for i in 0..dg {
        let mut row = vec![BigInt::zero(); size];
        for k in 0..=df {
            row[i + k] = f[df - k].clone();
        }
        rows.push(row);
    }
    for i in 0..df {
        let mut row = vec![BigInt::zero(); size];
        for k in 0..=dg {
            row[i + k] = g[dg - k].clone();
        }
        rows.push(row);
    }
    bareiss_determinant(rows)
}
