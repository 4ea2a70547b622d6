//! Quartic-specific classification: the biquadratic reducibility criterion,
//! the Kappe-Warren test for a cyclic Galois group, and real-rootedness.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{is_perfect_square, same_square_class, squarefree_kernel};
use crate::error::{Error, Result};
use crate::poly::{quartic_irreducible, IntQuartic};
use crate::sturm::SturmChain;

/// Reducibility of X^4 + rX^2 + s over Z, valid when r^2 - 4s is not a
/// perfect square.
///
/// Such a quartic splits only as (X^2 + pX + c)(X^2 - pX + c) with c^2 = s,
/// which forces p^2 = 2c - r. Both square roots c = +-sqrt(s) are tried.
pub fn dlw_reducible(r: &BigInt, s: &BigInt) -> Result<bool> {
    let disc = r * r - s * BigInt::from(4);
    if is_perfect_square(&disc).is_some() {
        return Err(Error::DlwPrecondition(disc));
    }
    let Some(c) = is_perfect_square(s) else {
        return Ok(false);
    };
    let two = BigInt::from(2);
    Ok([c.clone(), -c]
        .iter()
        .any(|c| is_perfect_square(&(&two * c - r)).is_some()))
}

/// Outcome of the Kappe-Warren test on an irreducible monic quartic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisReport {
    pub is_c4: bool,
    /// Distinct rational roots of the resolvent cubic. The resolvent is monic
    /// with integer coefficients, so they are integers.
    pub resolvent_rational_roots: Vec<BigInt>,
    /// The unique rational root, when there is exactly one.
    pub s: Option<BigInt>,
    /// Discriminant of the irreducible quadratic factor of the resolvent;
    /// the splitting field of the resolvent is E = Q(sqrt(disc_e)).
    pub disc_e: Option<BigInt>,
    pub kernel_e: Option<BigInt>,
    /// Discriminants of X^2 - sX + d and X^2 + aX + (b - s).
    pub factor_discriminants: Option<[BigInt; 2]>,
    /// Squarefree kernels of `factor_discriminants`; a zero discriminant is
    /// recorded as 1 (the factor has a rational double root).
    pub split_evidence: Option<[BigInt; 2]>,
}

/// Decides Gal(f) = C4 for an irreducible monic integer quartic.
///
/// The resolvent X^3 - bX^2 + (ac - 4d)X - (a^2 d - 4bd + c^2) must have
/// exactly one rational root s, and both quadratic factors of
/// (X^2 - sX + d)(X^2 + aX + (b - s)) must split in E. A quadratic with
/// discriminant D splits in Q(sqrt(k)) iff D is a square or D k is a square,
/// so no field arithmetic is needed.
pub fn kw_is_c4(f: &IntQuartic) -> Result<GaloisReport> {
    if !quartic_irreducible(f) {
        return Err(Error::Reducible);
    }
    let resolvent = f.resolvent_cubic();
    let mut roots = SturmChain::new(&resolvent).integer_roots();
    roots.sort();
    roots.dedup();

    let mut report = GaloisReport {
        is_c4: false,
        resolvent_rational_roots: roots.clone(),
        s: None,
        disc_e: None,
        kernel_e: None,
        factor_discriminants: None,
        split_evidence: None,
    };
    let [s] = roots.as_slice() else {
        return Ok(report);
    };

    // resolvent / (X - s) = X^2 + uX + v
    let u = &resolvent[2] + s;
    let v = &resolvent[1] + s * &u;
    let disc_e = &u * &u - &v * BigInt::from(4);
    // Exactly one rational root means the quadratic factor is irreducible.
    let kernel_e = squarefree_kernel(&disc_e)?;

    let (a, b, d) = (&f.a3, &f.a2, &f.a0);
    let d1 = s * s - d * BigInt::from(4);
    let d2 = a * a - (b - s) * BigInt::from(4);

    let split = |disc: &BigInt| -> Result<(bool, BigInt)> {
        if disc.is_zero() || is_perfect_square(disc).is_some() {
            Ok((true, BigInt::one()))
        } else if same_square_class(disc, &disc_e) {
            Ok((true, kernel_e.clone()))
        } else {
            Ok((false, squarefree_kernel(disc)?))
        }
    };
    let (ok1, k1) = split(&d1)?;
    let (ok2, k2) = split(&d2)?;

    report.is_c4 = ok1 && ok2;
    report.s = Some(s.clone());
    report.disc_e = Some(disc_e);
    report.kernel_e = Some(kernel_e);
    report.factor_discriminants = Some([d1, d2]);
    report.split_evidence = Some([k1, k2]);
    Ok(report)
}

/// True iff all four roots are real, by a Sturm count over the whole line.
pub fn all_roots_real(f: &IntQuartic) -> Result<bool> {
    if f.discriminant().is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    Ok(SturmChain::new(&f.coeffs()).count_real_roots() == 4)
}
