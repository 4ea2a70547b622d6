//! Dense univariate polynomials over Q and monic integer quartics.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intpoly;
use crate::sturm::SturmChain;

pub fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn frac(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Polynomial with exact rational coefficients, constant term first.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    coeffs: Vec<BigRational>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_ints<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        Self::new(coeffs.into_iter().map(rat).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// q(X) = p(X + r).
    pub fn shift(&self, r: &BigRational) -> Self {
        // Horner in the ring: q <- q * (X + r) + c.
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().rev() {
            let mut next = vec![BigRational::zero(); out.len() + 1];
            for (i, q) in out.iter().enumerate() {
                next[i + 1] += q;
                next[i] += q * r;
            }
            next[0] += c;
            out = next;
        }
        Self::new(out)
    }

    /// p(-X).
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i))
                .collect(),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.coeffs.iter().map(|c| c.numer().clone()).collect())
    }

    /// Writes p = scale * q with q a primitive integer polynomial and
    /// scale > 0.
    pub fn primitive_part(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::one(), Vec::new());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * rat(lcm.clone())).to_integer())
            .collect();
        let content = intpoly::content(&scaled);
        let prim = scaled.into_iter().map(|c| c / &content).collect();
        (BigRational::new(content, lcm), prim)
    }

    /// disc(p) = (-1)^(n(n-1)/2) Res(p, p') / lc(p).
    pub fn discriminant(&self) -> Result<BigRational> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(Error::ConstantPolynomial),
        };
        let (scale, q) = self.primitive_part();
        let res = intpoly::resultant(&q, &intpoly::derivative(&q));
        let mut disc = res / &q[n];
        if (n * (n - 1) / 2) % 2 == 1 {
            disc = -disc;
        }
        // disc(c q) = c^(2n - 2) disc(q)
        let factor = num_traits::pow(scale, 2 * n - 2);
        Ok(rat(disc) * factor)
    }

    /// Every rational root, sorted ascending, without multiplicity.
    pub fn rational_roots(&self) -> Result<Vec<BigRational>> {
        if self.is_zero() {
            return Err(Error::ZeroInput("rational_roots"));
        }
        let (_, q) = self.primitive_part();
        let mut roots = Vec::new();
        let zero_mult = q.iter().take_while(|c| c.is_zero()).count();
        if zero_mult > 0 {
            roots.push(BigRational::zero());
        }
        let q: Vec<BigInt> = q[zero_mult..].to_vec();
        if intpoly::degree(&q).unwrap_or(0) == 0 {
            return Ok(roots);
        }
        let g = intpoly::gcd(&q, &intpoly::derivative(&q));
        // g is primitive, so q / g is integral by Gauss's lemma.
        let sf = intpoly::primitive(intpoly::div_exact(&q, &g).expect("gcd divides"));
        let n = intpoly::degree(&sf).unwrap();
        let lc = sf[n].clone();
        // Q(Y) = lc^(n-1) sf(Y / lc) is monic; its integer roots are lc * root.
        let mut monic = Vec::with_capacity(n + 1);
        for (i, c) in sf.iter().enumerate().take(n) {
            monic.push(c * num_traits::pow(lc.clone(), n - 1 - i));
        }
        monic.push(BigInt::one());
        for y in SturmChain::new(&monic).integer_roots() {
            roots.push(BigRational::new(y, lc.clone()));
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }

    /// Parses the comma-separated interchange format, constant term first,
    /// e.g. `-1069,-747,-149,-3,1`. Entries may be fractions such as `-13/2`.
    pub fn parse(text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|s| {
                let s = s.trim();
                BigRational::from_str(s).map_err(|_| Error::Parse(format!("bad coefficient '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for ExactPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Monic integer quartic X^4 + a3 X^3 + a2 X^2 + a1 X + a0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntQuartic {
    pub a3: BigInt,
    pub a2: BigInt,
    pub a1: BigInt,
    pub a0: BigInt,
}

impl IntQuartic {
    pub fn new(
        a3: impl Into<BigInt>,
        a2: impl Into<BigInt>,
        a1: impl Into<BigInt>,
        a0: impl Into<BigInt>,
    ) -> Self {
        IntQuartic {
            a3: a3.into(),
            a2: a2.into(),
            a1: a1.into(),
            a0: a0.into(),
        }
    }

    /// Coefficients constant term first, including the leading 1.
    pub fn coeffs(&self) -> [BigInt; 5] {
        [
            self.a0.clone(),
            self.a1.clone(),
            self.a2.clone(),
            self.a3.clone(),
            BigInt::one(),
        ]
    }

    pub fn to_poly(&self) -> ExactPoly {
        ExactPoly::from_ints(self.coeffs())
    }

    pub fn discriminant(&self) -> BigInt {
        self.to_poly()
            .discriminant()
            .expect("quartic is nonconstant")
            .to_integer()
    }

    /// The resolvent cubic X^3 - bX^2 + (ac - 4d)X - (a^2 d - 4bd + c^2),
    /// constant term first. Its roots are a1 a2 + a3 a4 and the two other
    /// pairings of the quartic's roots.
    pub fn resolvent_cubic(&self) -> Vec<BigInt> {
        let (a, b, c, d) = (&self.a3, &self.a2, &self.a1, &self.a0);
        vec![
            -(a * a * d - BigInt::from(4) * b * d + c * c),
            a * c - BigInt::from(4) * d,
            -b.clone(),
            BigInt::one(),
        ]
    }
}

impl TryFrom<&ExactPoly> for IntQuartic {
    type Error = Error;

    fn try_from(p: &ExactPoly) -> Result<Self> {
        if p.degree() != Some(4) || !p.is_monic() {
            return Err(Error::NotIntegralQuartic(p.to_string()));
        }
        let c = p
            .integer_coeffs()
            .ok_or_else(|| Error::NotIntegralQuartic(p.to_string()))?;
        Ok(IntQuartic::new(
            c[3].clone(),
            c[2].clone(),
            c[1].clone(),
            c[0].clone(),
        ))
    }
}

impl fmt::Display for IntQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// A splitting of a monic integer quartic into two monic integer quadratics
/// X^2 + pX + q and X^2 + rX + u, if one exists.
///
/// Any such splitting has q + u equal to an integer root y of the resolvent
/// cubic, with q, u the roots of T^2 - yT + d and p, r the roots of
/// T^2 - aT + (b - y); every candidate is checked against the X coefficient.
pub fn quadratic_splitting(f: &IntQuartic) -> Option<([BigInt; 2], [BigInt; 2])> {
    let (a, b, c, d) = (&f.a3, &f.a2, &f.a1, &f.a0);
    let resolvent = SturmChain::new(&f.resolvent_cubic());
    let two = BigInt::from(2);
    for y in resolvent.integer_roots() {
        let Some(delta) = crate::arith::is_perfect_square(&(&y * &y - d * BigInt::from(4))) else {
            continue;
        };
        let Some(eps) = crate::arith::is_perfect_square(&(a * a - (b - &y) * BigInt::from(4)))
        else {
            continue;
        };
        if (&y + &delta).is_odd() || (a + &eps).is_odd() {
            continue;
        }
        let (q, u) = ((&y + &delta) / &two, (&y - &delta) / &two);
        let (p, r) = ((a + &eps) / &two, (a - &eps) / &two);
        for (p, r) in [(p.clone(), r.clone()), (r, p)] {
            if &p * &u + &r * &q == *c {
                return Some(([p, q.clone()], [r, u.clone()]));
            }
        }
    }
    None
}

/// Exact irreducibility of a monic integer quartic over Q.
pub fn quartic_irreducible(f: &IntQuartic) -> bool {
    let roots = f.to_poly().rational_roots().expect("quartic is nonzero");
    roots.is_empty() && quadratic_splitting(f).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> ExactPoly {
        ExactPoly::from_ints([-1069, -747, -149, -3, 1])
    }

    #[test]
    fn evaluate_examples() {
        let f0 = ExactPoly::from_ints([2, 0, 4, 0, 1]);
        assert_eq!(f0.evaluate(&rat(0)), rat(2));
        assert_eq!(ExactPoly::zero().evaluate(&frac(7, 3)), rat(0));
        let cyclo = ExactPoly::from_ints([1, 1, 1, 1, 1]);
        assert_eq!(cyclo.evaluate(&rat(1)), rat(5));
    }

    #[test]
    fn shift_examples() {
        let x2 = ExactPoly::from_ints([0, 0, 1]);
        assert_eq!(x2.shift(&rat(1)), ExactPoly::from_ints([1, 2, 1]));
        let p = ExactPoly::new(vec![frac(1, 3), rat(-2), frac(5, 7), rat(1)]);
        let r = frac(-3, 4);
        assert_eq!(p.shift(&r).shift(&-r.clone()), p);
    }

    #[test]
    fn integrality() {
        assert!(f3().is_integral());
        let half = ExactPoly::new(vec![rat(1), frac(-13, 2), rat(1)]);
        assert!(!half.is_integral());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(
            ExactPoly::from_ints([2, 0, 4, 0, 1])
                .discriminant()
                .unwrap(),
            rat(2048)
        );
        assert_eq!(
            ExactPoly::from_ints([1, 1, 1, 1, 1])
                .discriminant()
                .unwrap(),
            rat(125)
        );
        assert_eq!(f3().discriminant().unwrap(), rat(7_294_973));
        assert_eq!(
            ExactPoly::from_ints([5]).discriminant(),
            Err(Error::ConstantPolynomial)
        );
        // Quadratic: b^2 - 4ac.
        assert_eq!(
            ExactPoly::from_ints([3, 5, 2]).discriminant().unwrap(),
            rat(25 - 24)
        );
        // Non-monic with rational coefficients: disc(c p) = c^(2n-2) disc(p).
        let half = ExactPoly::new(vec![frac(3, 2), frac(5, 2), rat(1)]);
        assert_eq!(half.discriminant().unwrap(), frac(25 - 24, 4));
    }

    #[test]
    fn rational_root_examples() {
        let empty: Vec<BigRational> = vec![];
        assert_eq!(
            ExactPoly::from_ints([1, 0, 1]).rational_roots().unwrap(),
            empty
        );
        assert_eq!(
            ExactPoly::from_ints([0, -5, 1]).rational_roots().unwrap(),
            vec![rat(0), rat(5)]
        );
        // (2x - 1)^2 (3x + 4)
        let p = ExactPoly::from_ints([4, -13, 4, 12]);
        assert_eq!(p.rational_roots().unwrap(), vec![frac(-4, 3), frac(1, 2)]);
        assert!(ExactPoly::zero().rational_roots().is_err());
    }

    #[test]
    fn irreducibility_examples() {
        let f = IntQuartic::try_from(&f3()).unwrap();
        assert!(quartic_irreducible(&f));
        assert!(!quartic_irreducible(&IntQuartic::new(0, 0, 0, -1)));
        assert!(quartic_irreducible(&IntQuartic::new(0, -371, 0, 2597)));
        // X^4 + 4 = (X^2 + 2X + 2)(X^2 - 2X + 2): no rational root.
        assert!(!quartic_irreducible(&IntQuartic::new(0, 0, 0, 4)));
        // (X^2 + X + 1)(X^2 + 3X + 5)
        assert!(!quartic_irreducible(&IntQuartic::new(4, 9, 8, 5)));
    }

    #[test]
    fn parse_and_display() {
        let p: ExactPoly = "-1069,-747,-149,-3,1".parse().unwrap();
        assert_eq!(p, f3());
        assert_eq!(p.to_string(), "-1069,-747,-149,-3,1");
        let q: ExactPoly = "1, -13/2, 0".parse().unwrap();
        assert_eq!(q.to_string(), "1,-13/2");
        assert!("1,x".parse::<ExactPoly>().is_err());
    }

    /// Closed-form discriminant of X^4 + aX^3 + bX^2 + cX + d.
    fn closed_form_disc(a: i64, b: i64, c: i64, d: i64) -> BigInt {
        let (a, b, c, d) = (
            BigInt::from(a),
            BigInt::from(b),
            BigInt::from(c),
            BigInt::from(d),
        );
        let t = |k: i64| BigInt::from(k);
        let a2 = &a * &a;
        let b2 = &b * &b;
        let c2 = &c * &c;
        let d2 = &d * &d;
        &a2 * &b2 * &c2 - t(4) * &b2 * &b * &c2 - t(4) * &a2 * &a * &c2 * &c
            + t(18) * &a * &b * &c2 * &c
            - t(27) * &c2 * &c2
            + t(256) * &d2 * &d
            + &d * (t(-4) * &a2 * &b2 * &b + t(16) * &b2 * &b2 + t(18) * &a2 * &a * &b * &c
                - t(80) * &a * &b2 * &c
                - t(6) * &a2 * &c2
                + t(144) * &b * &c2)
            + &d2 * (t(-27) * &a2 * &a2 + t(144) * &a2 * &b - t(128) * &b2 - t(192) * &a * &c)
    }

    /// Brute force: try every monic quadratic X^2 + pX + q with q | d and
    /// |p| bounded by twice the Cauchy root bound.
    fn brute_force_reducible(a: i64, b: i64, c: i64, d: i64) -> bool {
        let bound = 1 + [a, b, c, d].iter().map(|x| x.abs()).max().unwrap();
        for x in -bound..=bound {
            if x * x * x * x + a * x * x * x + b * x * x + c * x + d == 0 {
                return true;
            }
        }
        if d == 0 {
            return true;
        }
        for q in 1..=d.abs() {
            if d % q != 0 {
                continue;
            }
            for q in [q, -q] {
                let u = d / q;
                for p in -2 * bound..=2 * bound {
                    let r = a - p;
                    if q + u + p * r == b && p * u + r * q == c {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn irreducibility_matches_brute_force_on_random_quartics() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let (a, b, c, d) = (
                rng.gen_range(-50..=50),
                rng.gen_range(-50..=50),
                rng.gen_range(-50..=50),
                rng.gen_range(-50..=50),
            );
            let q = IntQuartic::new(a, b, c, d);
            assert_eq!(
                q.discriminant(),
                closed_form_disc(a, b, c, d),
                "disc of {q}"
            );
            assert_eq!(
                !quartic_irreducible(&q),
                brute_force_reducible(a, b, c, d),
                "irreducibility of {q}"
            );
        }
    }

    #[test]
    fn reducible_products_are_detected() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let (p, q, r, u): (i64, i64, i64, i64) = (
                rng.gen_range(-20..=20),
                rng.gen_range(-20..=20),
                rng.gen_range(-20..=20),
                rng.gen_range(-20..=20),
            );
            let f = IntQuartic::new(p + r, q + u + p * r, p * u + r * q, q * u);
            assert!(!quartic_irreducible(&f), "{f}");
        }
    }

    /// Divisor-enumeration oracle for rational roots of small integer polys.
    fn divisor_roots(c: &[i64]) -> Vec<BigRational> {
        let lead = *c.last().unwrap();
        let mut out = Vec::new();
        if c[0] == 0 {
            out.push(rat(0));
        }
        let first = c.iter().copied().find(|&x| x != 0).unwrap();
        for num in 1..=first.abs() {
            if first % num != 0 {
                continue;
            }
            for den in 1..=lead.abs() {
                if lead % den != 0 {
                    continue;
                }
                for s in [1, -1] {
                    let x = frac(s * num, den);
                    let p = ExactPoly::from_ints(c.iter().copied());
                    if p.evaluate(&x).is_zero() {
                        out.push(x);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    proptest! {
        #[test]
        fn rational_roots_match_divisor_enumeration(
            c in proptest::collection::vec(-30i64..=30, 2..=6)
        ) {
            prop_assume!(*c.last().unwrap() != 0);
            let p = ExactPoly::from_ints(c.iter().copied());
            prop_assert_eq!(p.rational_roots().unwrap(), divisor_roots(&c));
        }

        #[test]
        fn discriminant_is_shift_invariant(
            a in -50i64..=50, b in -50i64..=50, c in -50i64..=50, d in -50i64..=50,
            rn in -20i64..=20, rd in 1i64..=9,
        ) {
            let p = IntQuartic::new(a, b, c, d).to_poly();
            let r = frac(rn, rd);
            prop_assert_eq!(p.shift(&r).discriminant().unwrap(), p.discriminant().unwrap());
        }
    }
}
