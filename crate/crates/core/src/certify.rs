//! Monogenicity certificates.
//!
//! A certificate records whether a quartic is irreducible with cyclic Galois
//! group, its discriminant, the discriminant of the field it generates, and
//! whether the two agree (so that the powers of a root form an integral
//! basis).
//!
//! The field discriminant comes from the conductor formula m^3 g^2 when the
//! squarefree hypotheses that pin down the conductor hold. Otherwise the
//! ring Z[theta] is tested for maximality prime by prime with Dedekind's
//! criterion: when it is maximal the field discriminant is the polynomial
//! discriminant, and when it is not the root does not generate a power
//! basis.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, factorize_with_hints, fundamental_discriminant, is_perfect_square};
use crate::conductor::{
    conductor_from_discriminant, family_canonical, field_discriminant, sw_conductor,
};
use crate::dedekind::non_maximal_primes;
use crate::error::{Error, Result};
use crate::gras::{
    choose_t, family_params, fz_presented, gras_polynomial, hasse_integral, verify_system,
    GrasParams,
};
use crate::poly::{quartic_irreducible, ExactPoly, IntQuartic};
use crate::quartic::kw_is_c4;

/// Why a certificate falls short of an unconditional verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    NotIrreducible,
    NotCyclic,
    /// The g-part of the conductor (z^2 - 2 for f_z) is not squarefree.
    GNotSquarefree {
        value: BigInt,
        factor: BigInt,
    },
    /// m (or m/4 when m is even) is not squarefree.
    MNotSquarefree {
        value: BigInt,
        factor: BigInt,
    },
    /// Exactly one squarefree hypothesis fails, so no verdict follows from them.
    OutsideTheorem,
    /// The conductor formula was not applicable.
    UnverifiedConductor,
    /// Z[theta] is not maximal at this prime.
    IndexDivisibleBy(BigInt),
    /// The polynomial discriminant differs from the field discriminant.
    DiscriminantMismatch,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::NotIrreducible => write!(f, "not-irreducible"),
            Reason::NotCyclic => write!(f, "not-c4"),
            Reason::GNotSquarefree { value, factor } => {
                write!(f, "g-not-squarefree: {factor}^2 divides {value}")
            }
            Reason::MNotSquarefree { value, factor } => {
                write!(f, "m-not-squarefree: {factor}^2 divides {value}")
            }
            Reason::OutsideTheorem => {
                write!(f, "outside-theorem: exactly one squarefree condition fails")
            }
            Reason::UnverifiedConductor => write!(f, "unverified-conductor"),
            Reason::IndexDivisibleBy(p) => write!(f, "index-divisible-by: {p}"),
            Reason::DiscriminantMismatch => write!(f, "discriminant-mismatch"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub z: Option<BigInt>,
    pub params: Option<GrasParams>,
    pub polynomial: IntQuartic,
    pub irreducible: bool,
    pub is_c4: bool,
    pub squarefree_a: Option<bool>,
    pub squarefree_m_part: Option<bool>,
    pub conductor: Option<BigInt>,
    pub disc_poly: BigInt,
    pub disc_field: Option<BigInt>,
    pub index_square: Option<BigInt>,
    pub monogenic: Option<bool>,
    pub failure_reasons: Vec<Reason>,
}

/// Flat JSON form of a certificate. Integers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub a: Option<String>,
    pub b: Option<String>,
    pub g: Option<String>,
    pub m: Option<String>,
    pub x: Option<String>,
    pub y: Option<String>,
    pub z: Option<String>,
    pub t: Option<String>,
    pub chi: Option<i8>,
    pub poly: String,
    pub irreducible: bool,
    pub is_c4: bool,
    pub conductor: Option<String>,
    pub disc_poly: String,
    pub disc_field: Option<String>,
    pub index_square: Option<String>,
    pub monogenic: Option<bool>,
    pub reasons: Vec<String>,
}

impl Certificate {
    pub fn record(&self) -> CertificateRecord {
        let s = |v: &BigInt| Some(v.to_string());
        let p = self.params.as_ref();
        CertificateRecord {
            a: p.and_then(|p| s(&p.a)),
            b: p.and_then(|p| s(&p.b)),
            g: p.and_then(|p| s(&p.g)),
            m: p.and_then(|p| s(&p.m)),
            x: p.and_then(|p| s(&p.x)),
            y: p.and_then(|p| s(&p.y)),
            z: p.map(|p| &p.z).or(self.z.as_ref()).map(ToString::to_string),
            t: p.and_then(|p| p.t.as_ref()).map(ToString::to_string),
            chi: p.map(|p| p.chi),
            poly: self.polynomial.to_string(),
            irreducible: self.irreducible,
            is_c4: self.is_c4,
            conductor: self.conductor.as_ref().map(ToString::to_string),
            disc_poly: self.disc_poly.to_string(),
            disc_field: self.disc_field.as_ref().map(ToString::to_string),
            index_square: self.index_square.as_ref().map(ToString::to_string),
            monogenic: self.monogenic,
            reasons: self
                .failure_reasons
                .iter()
                .map(ToString::to_string)
                .collect(),
        }
    }
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.record().serialize(serializer)
    }
}

fn square_witness(n: &BigInt) -> Result<Option<BigInt>> {
    Ok(factorize(n)?.square_witness().cloned())
}

fn family_flags(z: &BigInt) -> Result<(Option<BigInt>, Option<BigInt>, BigInt, BigInt)> {
    let a: BigInt = z * z - 2;
    let m: BigInt = &a * &a + 4;
    let m_part = if z.is_even() { &m / 4 } else { m };
    let wa = square_witness(&a)?;
    let wm = square_witness(&m_part)?;
    Ok((wa, wm, a, m_part))
}

/// Whether z^2 - 2 is squarefree, and whether m/4 (z even) or m (z odd) is,
/// with m = z^4 - 4z^2 + 8.
pub fn squarefree_conditions(z: &BigInt) -> Result<(bool, bool)> {
    if z.abs() < BigInt::from(2) {
        return Err(Error::SmallZ(z.clone()));
    }
    let (wa, wm, _, _) = family_flags(z)?;
    Ok((wa.is_none(), wm.is_none()))
}

/// Squarefree flags for a general tuple: the odd part of g must be
/// squarefree with v_2(g) <= 3, and m (odd) or m/4 (even) must be
/// squarefree.
fn params_flags(p: &GrasParams) -> Result<(Option<BigInt>, Option<BigInt>, BigInt, BigInt)> {
    let mut g_part = p.g.abs();
    let mut twos = 0;
    while g_part.is_even() && !g_part.is_zero() {
        g_part /= 2;
        twos += 1;
    }
    let wg = if twos > 3 {
        Some(BigInt::from(2))
    } else {
        square_witness(&g_part)?
    };
    let m_part = if p.m.is_even() { &p.m / 4 } else { p.m.clone() };
    let wm = if p.m.is_even() && !p.m.mod_floor(&BigInt::from(4)).is_zero() {
        Some(BigInt::from(2))
    } else {
        square_witness(&m_part)?
    };
    Ok((wg, wm, p.g.clone(), m_part))
}

struct FieldVerdict {
    conductor: Option<BigInt>,
    disc_field: Option<BigInt>,
    index_square: Option<BigInt>,
    monogenic: Option<bool>,
    reasons: Vec<Reason>,
}

/// Settles the field discriminant and the verdict. `formula` is the
/// conductor and discriminant from the squarefree-guarded formula, if
/// applicable; otherwise Dedekind's criterion decides.
fn settle(
    f: &IntQuartic,
    disc_poly: &BigInt,
    formula: Option<(BigInt, BigInt)>,
    hints: &[BigInt],
) -> Result<FieldVerdict> {
    let mut reasons = Vec::new();
    let (conductor, disc_field) = match formula {
        Some((cond, disc)) => (Some(cond), Some(disc)),
        None => {
            reasons.push(Reason::UnverifiedConductor);
            let fac = factorize_with_hints(disc_poly, hints)?;
            let bad = non_maximal_primes(&f.coeffs(), &fac);
            if bad.is_empty() {
                let d_k = fundamental_discriminant(disc_poly)?.abs();
                (
                    conductor_from_discriminant(disc_poly, &d_k),
                    Some(disc_poly.clone()),
                )
            } else {
                reasons.extend(bad.into_iter().map(Reason::IndexDivisibleBy));
                return Ok(FieldVerdict {
                    conductor: None,
                    disc_field: None,
                    index_square: None,
                    monogenic: Some(false),
                    reasons,
                });
            }
        }
    };
    let disc = disc_field.as_ref().expect("set above");
    let (q, r) = disc_poly.div_rem(disc);
    let index_square = (r.is_zero() && is_perfect_square(&q).is_some()).then_some(q);
    let monogenic = disc_poly == disc;
    if !monogenic {
        reasons.push(Reason::DiscriminantMismatch);
    }
    Ok(FieldVerdict {
        conductor,
        disc_field,
        index_square,
        monogenic: Some(monogenic),
        reasons,
    })
}

fn galois(f: &IntQuartic) -> (bool, bool) {
    let irreducible = quartic_irreducible(f);
    let is_c4 = irreducible && kw_is_c4(f).is_ok_and(|r| r.is_c4);
    (irreducible, is_c4)
}

/// Known fields for |z| <= 1: Q(zeta_5) (conductor 5, discriminant 125) and
/// Q(zeta_16 - zeta_16^-1) (conductor 16, discriminant 2048).
fn small_z_field(z: &BigInt) -> (BigInt, BigInt) {
    if z.is_zero() {
        (BigInt::from(16), BigInt::from(2048))
    } else {
        (BigInt::from(5), BigInt::from(125))
    }
}

/// Certificate for the f_z family member, presented integrally.
pub fn certify_z(z: &BigInt) -> Result<Certificate> {
    let poly = IntQuartic::try_from(&fz_presented(z))?;
    let (irreducible, is_c4) = galois(&poly);
    let disc_poly = poly.discriminant();
    let mut reasons = Vec::new();
    if !irreducible {
        reasons.push(Reason::NotIrreducible);
    } else if !is_c4 {
        reasons.push(Reason::NotCyclic);
    }

    if z.abs() < BigInt::from(2) {
        let (wa, wm, _, _) = family_flags(z)?;
        let (cond, disc) = small_z_field(z);
        let v = settle(&poly, &disc_poly, Some((cond, disc)), &[])?;
        reasons.extend(v.reasons);
        return Ok(Certificate {
            z: Some(z.clone()),
            params: None,
            polynomial: poly,
            irreducible,
            is_c4,
            squarefree_a: Some(wa.is_none()),
            squarefree_m_part: Some(wm.is_none()),
            conductor: v.conductor,
            disc_poly,
            disc_field: v.disc_field,
            index_square: v.index_square,
            monogenic: v.monogenic,
            failure_reasons: reasons,
        });
    }

    let params = family_params(z)?.with_t(choose_t(z));
    let (wa, wm, a, m_part) = family_flags(z)?;
    if let Some(factor) = &wa {
        reasons.push(Reason::GNotSquarefree {
            value: a.clone(),
            factor: factor.clone(),
        });
    }
    if let Some(factor) = &wm {
        reasons.push(Reason::MNotSquarefree {
            value: m_part.clone(),
            factor: factor.clone(),
        });
    }
    if wa.is_some() != wm.is_some() {
        reasons.push(Reason::OutsideTheorem);
    }
    let formula = if wa.is_none() && wm.is_none() {
        let canonical = family_canonical(z)?;
        Some((
            sw_conductor(&canonical)?,
            field_discriminant(&params.m, &params.g),
        ))
    } else {
        None
    };
    let hints = [params.m.clone(), params.g.clone()];
    let v = settle(&poly, &disc_poly, formula, &hints)?;
    reasons.extend(v.reasons);
    Ok(Certificate {
        z: Some(z.clone()),
        params: Some(params),
        polynomial: poly,
        irreducible,
        is_c4,
        squarefree_a: Some(wa.is_none()),
        squarefree_m_part: Some(wm.is_none()),
        conductor: v.conductor,
        disc_poly,
        disc_field: v.disc_field,
        index_square: v.index_square,
        monogenic: v.monogenic,
        failure_reasons: reasons,
    })
}

/// Certificate for an explicit parameter tuple with t set.
pub fn certify_params(p: &GrasParams) -> Result<Certificate> {
    if !verify_system(p) {
        return Err(Error::SystemFails);
    }
    let t = p.t()?.clone();
    if !hasse_integral(p)? {
        return Err(Error::NotHasseIntegral(t));
    }
    let exact = gras_polynomial(p)?;
    if !exact.is_integral() {
        return Err(Error::NonIntegralPolynomial);
    }
    let poly = IntQuartic::try_from(&exact)?;
    let (irreducible, is_c4) = galois(&poly);
    if !irreducible {
        return Err(Error::Reducible);
    }
    let mut reasons = Vec::new();
    if !is_c4 {
        reasons.push(Reason::NotCyclic);
    }
    let disc_poly = poly.discriminant();
    let (wg, wm, g, m_part) = params_flags(p)?;
    if let Some(factor) = &wg {
        reasons.push(Reason::GNotSquarefree {
            value: g,
            factor: factor.clone(),
        });
    }
    if let Some(factor) = &wm {
        reasons.push(Reason::MNotSquarefree {
            value: m_part,
            factor: factor.clone(),
        });
    }
    let formula = (wg.is_none() && wm.is_none() && is_c4)
        .then(|| (p.conductor(), field_discriminant(&p.m, &p.g)));
    let hints = [p.m.clone(), p.g.clone(), p.a.clone(), p.b.clone()];
    let v = settle(&poly, &disc_poly, formula, &hints)?;
    reasons.extend(v.reasons);
    Ok(Certificate {
        z: Some(p.z.clone()),
        params: Some(p.clone()),
        polynomial: poly,
        irreducible,
        is_c4,
        squarefree_a: Some(wg.is_none()),
        squarefree_m_part: Some(wm.is_none()),
        conductor: v.conductor,
        disc_poly,
        disc_field: v.disc_field,
        index_square: v.index_square,
        monogenic: v.monogenic,
        failure_reasons: reasons,
    })
}

/// Certificate for an arbitrary monic integer quartic, decided by Dedekind's
/// criterion at every prime whose square divides the discriminant.
pub fn certify_poly(p: &ExactPoly) -> Result<Certificate> {
    let poly = IntQuartic::try_from(p)?;
    let disc_poly = poly.discriminant();
    if disc_poly.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let (irreducible, is_c4) = galois(&poly);
    let mut reasons = Vec::new();
    if !irreducible {
        reasons.push(Reason::NotIrreducible);
        return Ok(Certificate {
            z: None,
            params: None,
            polynomial: poly,
            irreducible,
            is_c4,
            squarefree_a: None,
            squarefree_m_part: None,
            conductor: None,
            disc_poly,
            disc_field: None,
            index_square: None,
            monogenic: None,
            failure_reasons: reasons,
        });
    }
    if !is_c4 {
        reasons.push(Reason::NotCyclic);
    }
    let v = settle(&poly, &disc_poly, None, &[])?;
    reasons.extend(
        v.reasons
            .into_iter()
            .filter(|r| *r != Reason::UnverifiedConductor),
    );
    Ok(Certificate {
        z: None,
        params: None,
        polynomial: poly,
        irreducible,
        is_c4,
        squarefree_a: None,
        squarefree_m_part: None,
        conductor: if is_c4 { v.conductor } else { None },
        disc_poly,
        disc_field: v.disc_field,
        index_square: v.index_square,
        monogenic: v.monogenic,
        failure_reasons: reasons,
    })
}

impl Certificate {
    /// The index [O_K : Z[theta]], when the field discriminant is known.
    pub fn index(&self) -> Option<BigInt> {
        self.index_square.as_ref().and_then(is_perfect_square)
    }

    pub fn is_unconditional(&self) -> bool {
        self.failure_reasons.is_empty() && self.monogenic == Some(true)
    }
}
