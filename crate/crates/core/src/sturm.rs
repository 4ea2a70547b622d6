//! Sturm sequences over Z with content stripping at every step.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::intpoly::{self, degree, sign_at_fraction, sign_of};

/// Sturm chain p, p', -rem(p, p'), ... with each member scaled to a
/// primitive integer polynomial by a positive factor.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<Vec<BigInt>>,
}

impl SturmChain {
    /// Builds the chain of a nonconstant integer polynomial (constant first).
    pub fn new(p: &[BigInt]) -> Self {
        let p0 = intpoly::primitive(p.to_vec());
        assert!(
            degree(&p0).is_some_and(|d| d >= 1),
            "Sturm chain needs a nonconstant polynomial"
        );
        let p1 = intpoly::primitive(intpoly::derivative(&p0));
        let mut polys = vec![p0, p1];
        loop {
            let n = polys.len();
            let (a, b) = (&polys[n - 2], &polys[n - 1]);
            let da = degree(a).unwrap();
            let db = degree(b).unwrap();
            let r = intpoly::prem(a, b);
            if degree(&r).is_none() {
                break;
            }
            // prem = lc(b)^(da-db+1) * rem; recover the sign of -rem.
            let flip = b[db].is_negative() && (da - db + 1) % 2 == 1;
            let mut next = intpoly::primitive(r);
            if !flip {
                for c in next.iter_mut() {
                    *c = -c.clone();
                }
            }
            polys.push(next);
        }
        SturmChain { polys }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigInt) -> usize {
        Self::count_variations(self.polys.iter().map(|p| sign_of(&intpoly::eval(p, x))))
    }

    pub fn variations_at_rational(&self, x: &BigRational) -> usize {
        Self::count_variations(
            self.polys
                .iter()
                .map(|p| sign_at_fraction(p, x.numer(), x.denom())),
        )
    }

    /// Sign variations at +infinity (`positive`) or -infinity.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::count_variations(self.polys.iter().map(|p| {
            let d = degree(p).unwrap();
            let s = sign_of(&p[d]);
            if positive || d.is_multiple_of(2) {
                s
            } else {
                -s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at_rational(a) - self.variations_at_rational(b)
    }

    /// All integer roots, located by bisecting integer intervals.
    pub fn integer_roots(&self) -> Vec<BigInt> {
        let p = &self.polys[0];
        // Cauchy bound: every root has |x| < 1 + max |c_i / c_n|.
        let d = degree(p).unwrap();
        let lead = p[d].abs();
        let bound = p[..d]
            .iter()
            .map(|c| c.abs().div_ceil(&lead))
            .max()
            .unwrap_or_default()
            + 1;
        let lo = -&bound - 1;
        let hi = bound;
        let mut out = Vec::new();
        let vlo = self.variations_at(&lo);
        let vhi = self.variations_at(&hi);
        self.bisect(lo, hi, vlo, vhi, &mut out);
        out
    }

    fn bisect(&self, lo: BigInt, hi: BigInt, vlo: usize, vhi: usize, out: &mut Vec<BigInt>) {
        if vlo <= vhi {
            return;
        }
        if &hi - &lo == BigInt::one() {
            if intpoly::eval(&self.polys[0], &hi).is_zero() {
                out.push(hi);
            }
            return;
        }
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        let vmid = self.variations_at(&mid);
        self.bisect(lo, mid.clone(), vlo, vmid, out);
        self.bisect(mid, hi, vmid, vhi, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn counts_roots_of_split_cubic() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let chain = SturmChain::new(&v(&[6, -7, 0, 1]));
        assert_eq!(chain.count_real_roots(), 3);
        let mut roots = chain.integer_roots();
        roots.sort();
        assert_eq!(roots, v(&[-3, 1, 2]));
    }

    #[test]
    fn half_open_interval_includes_right_endpoint() {
        let chain = SturmChain::new(&v(&[6, -7, 0, 1]));
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        assert_eq!(chain.count_in(&r(0), &r(1)), 1);
        assert_eq!(chain.count_in(&r(1), &r(2)), 1);
        assert_eq!(chain.count_in(&r(-3), &r(0)), 0);
        assert_eq!(chain.count_in(&r(-4), &r(-3)), 1);
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (x-1)^2 (x+1)
        let chain = SturmChain::new(&v(&[1, -1, -1, 1]));
        assert_eq!(chain.count_real_roots(), 2);
        let mut roots = chain.integer_roots();
        roots.sort();
        assert_eq!(roots, v(&[-1, 1]));
    }

    #[test]
    fn no_real_roots() {
        let chain = SturmChain::new(&v(&[2, 0, 4, 0, 1]));
        assert_eq!(chain.count_real_roots(), 0);
        assert!(chain.integer_roots().is_empty());
    }
}
