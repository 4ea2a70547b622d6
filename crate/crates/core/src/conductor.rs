//! Conductors of cyclic quartic fields.
//!
//! Every cyclic quartic field is Q(sqrt(A(D + B sqrt(D)))) for unique
//! integers with A squarefree and odd, D = B^2 + C^2 squarefree, B, C > 0 and
//! gcd(A, D) = 1. In that form the conductor is 2^l |A| D where l is read off
//! from D mod 4, the parity of B, and A + B mod 4.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, fundamental_discriminant, is_perfect_square};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalCyclicQuartic {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

fn not_squarefree(what: &'static str, value: &BigInt) -> Result<Option<Error>> {
    let f = factorize(value)?;
    Ok(f.square_witness().map(|p| Error::NotSquarefree {
        what,
        value: value.clone(),
        factor: p.clone(),
    }))
}

impl CanonicalCyclicQuartic {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let out = CanonicalCyclicQuartic {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        out.validate()?;
        Ok(out)
    }

    /// Checks every invariant of the canonical form.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::BadCanonical(msg));
        let CanonicalCyclicQuartic { a, b, c, d } = self;
        if a.is_zero() || a.is_even() {
            return bad(format!("A = {a} must be odd"));
        }
        if !b.is_positive() || !c.is_positive() {
            return bad(format!("B = {b} and C = {c} must be positive"));
        }
        if *d != b * b + c * c {
            return bad(format!("D = {d} differs from B^2 + C^2"));
        }
        if !a.gcd(d).is_one() {
            return bad(format!("gcd(A, D) = {} is not 1", a.gcd(d)));
        }
        if let Some(e) = not_squarefree("A", a)? {
            return Err(e);
        }
        if let Some(e) = not_squarefree("D", d)? {
            return Err(e);
        }
        Ok(())
    }

    /// The exponent l of 2 in the conductor.
    pub fn two_exponent(&self) -> u32 {
        let four = BigInt::from(4);
        let d4 = self.d.mod_floor(&four);
        if d4 == BigInt::from(2) || self.b.is_odd() {
            3
        } else if (&self.a + &self.b).mod_floor(&four) == BigInt::from(3) {
            2
        } else {
            0
        }
    }
}

/// Conductor 2^l |A| D of the field with the given canonical data.
pub fn sw_conductor(c: &CanonicalCyclicQuartic) -> Result<BigInt> {
    c.validate()?;
    Ok((BigInt::one() << c.two_exponent()) * c.a.abs() * &c.d)
}

fn family_am(z: &BigInt) -> Result<(BigInt, BigInt)> {
    if z.abs() < BigInt::from(2) {
        return Err(Error::SmallZ(z.clone()));
    }
    let a: BigInt = z * z - 2;
    let m: BigInt = &a * &a + 4;
    Ok((a, m))
}

/// Canonical data of the field generated by a root of f_z:
/// (a/2, a/2, 1, m/4) for even z and (a, 2, a, m) for odd z, where
/// a = z^2 - 2 and m = z^4 - 4z^2 + 8.
pub fn family_canonical(z: &BigInt) -> Result<CanonicalCyclicQuartic> {
    let (a, m) = family_am(z)?;
    let data = if z.is_even() {
        let half: BigInt = &a / 2;
        CanonicalCyclicQuartic {
            a: half.clone(),
            b: half,
            c: BigInt::one(),
            d: &m / 4,
        }
    } else {
        CanonicalCyclicQuartic {
            a: a.clone(),
            b: BigInt::from(2),
            c: a,
            d: m,
        }
    };
    data.validate()?;
    Ok(data)
}

/// Conductor m of the quadratic subfield Q(sqrt(m)) for the f_z family.
pub fn quadratic_conductor(z: &BigInt) -> Result<BigInt> {
    let (_, m) = family_am(z)?;
    let four = BigInt::from(4);
    if z.is_even() {
        let quarter: BigInt = &m / 4;
        if let Some(e) = not_squarefree("m/4", &quarter)? {
            return Err(e);
        }
        if quarter.mod_floor(&four) != BigInt::from(2) {
            return Err(Error::MalformedParams(format!(
                "m/4 = {quarter} is not 2 mod 4"
            )));
        }
    } else {
        if let Some(e) = not_squarefree("m", &m)? {
            return Err(e);
        }
        if m.mod_floor(&four) != BigInt::one() {
            return Err(Error::MalformedParams(format!("m = {m} is not 1 mod 4")));
        }
    }
    let disc = fundamental_discriminant(&m)?;
    debug_assert_eq!(disc, m);
    Ok(disc)
}

/// Discriminant m^3 g^2 of a cyclic quartic field with conductor m g whose
/// quadratic subfield has conductor m.
pub fn field_discriminant(m: &BigInt, g: &BigInt) -> BigInt {
    m * m * m * g * g
}

/// Conductor of a real cyclic quartic field recovered from its
/// discriminant: disc = f^2 d_k, with d_k the discriminant of the quadratic
/// subfield.
pub fn conductor_from_discriminant(disc: &BigInt, d_k: &BigInt) -> Option<BigInt> {
    let (q, r) = disc.div_rem(d_k);
    if !r.is_zero() {
        return None;
    }
    is_perfect_square(&q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn sw_examples() {
        let c = CanonicalCyclicQuartic::new(23, 2, 23, 533).unwrap();
        assert_eq!(c.two_exponent(), 0);
        assert_eq!(sw_conductor(&c).unwrap(), big(12259));

        let c = CanonicalCyclicQuartic::new(17, 17, 1, 290).unwrap();
        assert_eq!(c.two_exponent(), 3);
        assert_eq!(sw_conductor(&c).unwrap(), big(39440));

        let c = CanonicalCyclicQuartic::new(7, 2, 7, 53).unwrap();
        assert_eq!(sw_conductor(&c).unwrap(), big(371));
    }

    #[test]
    fn sw_two_exponent_cases() {
        // D = 1 mod 4 with B odd.
        let c = CanonicalCyclicQuartic::new(-1, 1, 2, 5).unwrap();
        assert_eq!(c.two_exponent(), 3);
        // D = 1 mod 4, B even, A + B = 3 mod 4.
        let c = CanonicalCyclicQuartic::new(1, 2, 1, 5).unwrap();
        assert_eq!(c.two_exponent(), 2);
        assert_eq!(sw_conductor(&c).unwrap(), big(20));
        let c = CanonicalCyclicQuartic::new(-1, 2, 1, 5).unwrap();
        assert_eq!(c.two_exponent(), 0);
        assert_eq!(sw_conductor(&c).unwrap(), big(5));
    }

    #[test]
    fn canonical_rejects_bad_data() {
        assert!(matches!(
            CanonicalCyclicQuartic::new(2, 1, 2, 5),
            Err(Error::BadCanonical(_))
        ));
        assert!(matches!(
            CanonicalCyclicQuartic::new(3, 1, 2, 6),
            Err(Error::BadCanonical(_))
        ));
        assert!(matches!(
            CanonicalCyclicQuartic::new(5, 1, 2, 5),
            Err(Error::BadCanonical(_))
        ));
        assert!(matches!(
            CanonicalCyclicQuartic::new(1, 0, 2, 4),
            Err(Error::BadCanonical(_))
        ));
        assert_eq!(
            CanonicalCyclicQuartic::new(9, 1, 2, 5),
            Err(Error::NotSquarefree {
                what: "A",
                value: big(9),
                factor: big(3)
            })
        );
        assert_eq!(
            CanonicalCyclicQuartic::new(1, 7, 1, 50),
            Err(Error::NotSquarefree {
                what: "D",
                value: big(50),
                factor: big(5)
            })
        );
    }

    #[test]
    fn family_canonical_examples() {
        assert_eq!(
            family_canonical(&big(5)).unwrap(),
            CanonicalCyclicQuartic::new(23, 2, 23, 533).unwrap()
        );
        assert_eq!(
            family_canonical(&big(6)).unwrap(),
            CanonicalCyclicQuartic::new(17, 17, 1, 290).unwrap()
        );
        assert_eq!(
            family_canonical(&big(4)),
            Err(Error::NotSquarefree {
                what: "D",
                value: big(50),
                factor: big(5)
            })
        );
        assert_eq!(family_canonical(&big(1)), Err(Error::SmallZ(big(1))));
    }

    #[test]
    fn quadratic_conductor_examples() {
        assert_eq!(quadratic_conductor(&big(5)).unwrap(), big(533));
        assert_eq!(quadratic_conductor(&big(6)).unwrap(), big(1160));
        assert_eq!(quadratic_conductor(&big(3)).unwrap(), big(53));
        assert!(matches!(
            quadratic_conductor(&big(4)),
            Err(Error::NotSquarefree { .. })
        ));
    }

    #[test]
    fn field_discriminant_examples() {
        assert_eq!(field_discriminant(&big(533), &big(23)), big(80100882173));
        assert_eq!(field_discriminant(&big(1160), &big(34)), big(1804395776000));
        assert_eq!(field_discriminant(&big(53), &big(7)), big(7294973));
        assert_eq!(
            conductor_from_discriminant(&big(80100882173), &big(533)),
            Some(big(12259))
        );
        assert_eq!(conductor_from_discriminant(&big(7294973), &big(5)), None);
    }

    #[test]
    fn family_conductor_properties() {
        for z in 2i64..=60 {
            let zb = big(z);
            let Ok(c) = family_canonical(&zb) else {
                continue;
            };
            let a = z * z - 2;
            let m = big(z).pow(4) - big(4 * z * z) + 8;
            assert_eq!(sw_conductor(&c).unwrap(), &m * big(a), "z = {z}");
            assert!(c.a.gcd(&c.d).is_one());
            if z % 2 == 1 {
                assert_eq!((&c.a + &c.b).mod_floor(&big(4)), big(1));
                assert_eq!(c.two_exponent(), 0);
            } else {
                assert_eq!(c.d.mod_floor(&big(4)), big(2));
                assert_eq!(c.two_exponent(), 3);
            }
        }
    }

    /// Elements u + v sqrt(m) of Q(sqrt(m)) as coefficient pairs.
    fn qmul(
        x: &(BigRational, BigRational),
        y: &(BigRational, BigRational),
        m: &BigInt,
    ) -> (BigRational, BigRational) {
        let m = BigRational::from_integer(m.clone());
        (&x.0 * &y.0 + &x.1 * &y.1 * m, &x.0 * &y.1 + &x.1 * &y.0)
    }

    #[test]
    fn odd_generator_rewriting_identity() {
        // a(m + 2 sqrt m) / (2a(m + a sqrt m)) = (a - 2 - sqrt m)^2 / 16
        // with m = a^2 + 4, so the two radicands differ by a square in k.
        let r = |n: BigInt| BigRational::from_integer(n);
        for z in (3i64..=41).step_by(2) {
            let a = big(z * z - 2);
            let m: BigInt = &a * &a + 4;
            let lhs_num = (r(&a * &m), r(BigInt::from(2) * &a));
            let rhs_den = (r(BigInt::from(2) * &a * &m), r(BigInt::from(2) * &a * &a));
            let w = (r(&a - 2), r(big(-1)));
            let w2 = qmul(&w, &w, &m);
            let rhs = qmul(&w2, &rhs_den, &m);
            let sixteen = r(big(16));
            assert_eq!(
                (&lhs_num.0 * &sixteen, &lhs_num.1 * &sixteen),
                rhs,
                "z = {z}"
            );

            // Numeric spot check of ((a - 2 - sqrt(a^2 + 4))^2 / 2) against
            // a^2 - 2a + 4 + (2 - a) sqrt(a^2 + 4).
            let af = (z * z - 2) as f64;
            let s = (af * af + 4.0).sqrt();
            let left = (af - 2.0 - s).powi(2) / 2.0;
            let right = af * af - 2.0 * af + 4.0 + (2.0 - af) * s;
            assert!((left - right).abs() <= 1e-9 * right.abs().max(1.0));
        }
    }
}
