//! Parameter tuples for Gras' construction of generators of cyclic quartic
//! fields, the quartic P(X) they determine, the explicit f_z family, and the
//! further families built from other choices of (a, b, g, x, y, z).
//!
//! A tuple (a, b, g, m, x, y, z, t, chi) describes
//!
//! ```text
//! theta = (t + z sqrt(m) + 2x psi + 2y sigma(psi)) / 4,
//! psi   = sqrt(chi g sqrt(m) (a + sqrt(m)) / 2),
//! ```
//!
//! where m = a^2 + b^2 and sigma generates the Galois group.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{frac, rat, ExactPoly, IntQuartic};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrasParams {
    pub a: BigInt,
    pub b: BigInt,
    pub g: BigInt,
    pub m: BigInt,
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
    pub t: Option<BigInt>,
    pub chi: i8,
}

impl GrasParams {
    /// Builds a tuple with m = a^2 + b^2 and t unset.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        g: impl Into<BigInt>,
        x: impl Into<BigInt>,
        y: impl Into<BigInt>,
        z: impl Into<BigInt>,
        chi: i8,
    ) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        let m = &a * &a + &b * &b;
        Self::with_m(a, b, g.into(), m, x.into(), y.into(), z.into(), chi)
    }

    /// Builds a tuple from all of its entries, rejecting m != a^2 + b^2,
    /// odd b, and chi outside {1, -1}.
    #[allow(clippy::too_many_arguments)]
    pub fn with_m(
        a: BigInt,
        b: BigInt,
        g: BigInt,
        m: BigInt,
        x: BigInt,
        y: BigInt,
        z: BigInt,
        chi: i8,
    ) -> Result<Self> {
        if m != &a * &a + &b * &b {
            return Err(Error::MalformedParams(format!(
                "m = {m} but a^2 + b^2 = {}",
                &a * &a + &b * &b
            )));
        }
        if b.is_odd() {
            return Err(Error::MalformedParams(format!("b = {b} is odd")));
        }
        if chi != 1 && chi != -1 {
            return Err(Error::MalformedParams(format!("chi = {chi} is not a sign")));
        }
        Ok(GrasParams {
            a,
            b,
            g,
            m,
            x,
            y,
            z,
            t: None,
            chi,
        })
    }

    pub fn with_t(mut self, t: impl Into<BigInt>) -> Self {
        self.t = Some(t.into());
        self
    }

    pub fn t(&self) -> Result<&BigInt> {
        self.t.as_ref().ok_or(Error::MissingT)
    }

    /// The conductor m g of the field, when the tuple comes from Gras' theorem.
    pub fn conductor(&self) -> BigInt {
        &self.m * &self.g
    }

    /// (a, b, g, m, x, y, z) as a tuple of references.
    pub fn key(&self) -> [&BigInt; 7] {
        [
            &self.a, &self.b, &self.g, &self.m, &self.x, &self.y, &self.z,
        ]
    }
}

fn check_big_z(z: &BigInt) -> Result<()> {
    if z.abs() < BigInt::from(2) {
        Err(Error::SmallZ(z.clone()))
    } else {
        Ok(())
    }
}

/// a = z^2 - 2, b = 2, g = a, m = z^4 - 4z^2 + 8, x = 1, y = 0, chi = 1.
pub fn family_params(z: &BigInt) -> Result<GrasParams> {
    check_big_z(z)?;
    let a: BigInt = z * z - 2;
    GrasParams::new(a.clone(), 2, a, 1, 0, z.clone(), 1)
}

/// t = z + 2 when z = 2 (mod 4), otherwise t = z.
pub fn choose_t(z: &BigInt) -> BigInt {
    if z.mod_floor(&BigInt::from(4)) == BigInt::from(2) {
        z + 2
    } else {
        z.clone()
    }
}

/// Common subexpressions of P(X): T = t^2 + m z^2 - 2(x^2 + y^2) m g and
/// U = t z - g (a (x^2 - y^2) - 2bxy).
fn gras_tu(p: &GrasParams, t: &BigInt) -> (BigInt, BigInt) {
    let GrasParams {
        a,
        b,
        g,
        m,
        x,
        y,
        z,
        ..
    } = p;
    let (x2, y2) = (x * x, y * y);
    let f = m * g;
    let tt = t * t + m * z * z - BigInt::from(2) * (&x2 + &y2) * f;
    let u = t * z - g * (a * (&x2 - &y2) - BigInt::from(2) * b * x * y);
    (tt, u)
}

/// The monic quartic X^4 - S1 X^3 + S2 X^2 - S3 X + S4 vanishing at theta:
///
/// ```text
///   S1 = t
///  8S2 = T + 2(t^2 - m z^2)
/// 16S3 = T t - 2 m z U
/// 256S4 = T^2 - 4 m U^2
/// ```
pub fn gras_polynomial(p: &GrasParams) -> Result<ExactPoly> {
    let t = p.t()?;
    let (tt, u) = gras_tu(p, t);
    let m = &p.m;
    let s2 = frac(&tt + BigInt::from(2) * (t * t - m * &p.z * &p.z), 8);
    let s3 = frac(&tt * t - BigInt::from(2) * m * &p.z * &u, 16);
    let s4 = frac(&tt * &tt - BigInt::from(4) * m * &u * &u, 256);
    Ok(ExactPoly::new(vec![s4, -s3, s2, rat(-t), rat(1)]))
}

/// f_z(X) evaluated from its closed-form coefficients.
pub fn fz_polynomial(z: &BigInt) -> ExactPoly {
    let p = |cs: &[i64]| -> BigInt {
        // cs holds coefficients of z^0, z^1, ...
        cs.iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * z + BigInt::from(c))
    };
    let c2 = frac(p(&[-32, 0, 37, 0, -16, 0, 3]), 8);
    let c1 = frac(p(&[0, 96, 0, -135, 0, 72, 0, -19, 0, 2]), 16);
    let c0 = frac(
        p(&[-512, 0, -64, 0, 719, 0, -576, 0, 214, 0, -40, 0, 3]),
        256,
    );
    ExactPoly::new(vec![-c0, -c1, -c2, rat(-z), rat(1)])
}

/// The integral presentation of f_z: f_z(X) itself unless z = 2 (mod 4),
/// in which case f_z(X - 1/2).
pub fn fz_presented(z: &BigInt) -> ExactPoly {
    let f = fz_polynomial(z);
    if z.mod_floor(&BigInt::from(4)) == BigInt::from(2) {
        f.shift(&frac(-1, 2))
    } else {
        f
    }
}

/// X^4 - (z^2 - 2)(z^4 - 4z^2 + 8) X^2 + (z^2 - 2)^2 (z^4 - 4z^2 + 8), the
/// minimal polynomial of psi for the f_z family.
pub fn psi_polynomial(z: &BigInt) -> Result<IntQuartic> {
    check_big_z(z)?;
    let a: BigInt = z * z - 2;
    let m: BigInt = &a * &a + 4;
    Ok(IntQuartic::new(0, -(&a * &m), 0, &a * &a * &m))
}

/// Hasse's congruence conditions for theta to be an algebraic integer.
///
/// m odd: t = z (mod 2), (t + z)/2 = gx (mod 2), (t - z)/2 = gy (mod 2).
/// m even: t = 0 (mod 4) and z = 0 (mod 2).
pub fn hasse_integral(p: &GrasParams) -> Result<bool> {
    let t = p.t()?;
    let z = &p.z;
    if p.m.is_odd() {
        if (t - z).is_odd() {
            return Ok(false);
        }
        let plus: BigInt = (t + z) / 2;
        let minus: BigInt = (t - z) / 2;
        Ok((plus - &p.g * &p.x).is_even() && (minus - &p.g * &p.y).is_even())
    } else {
        Ok(t.mod_floor(&BigInt::from(4)).is_zero() && z.is_even())
    }
}

/// b(x^2 - y^2) + 2axy, the left side of the first equation of the system.
pub fn first_equation_lhs(p: &GrasParams) -> BigInt {
    let GrasParams { a, b, x, y, .. } = p;
    b * (x * x - y * y) + BigInt::from(2) * a * x * y
}

/// m [z^2 - chi g (x^2 + y^2)]^2 - 4 g^2, the left side of the second equation.
pub fn second_equation_lhs(p: &GrasParams) -> BigInt {
    let GrasParams { g, m, x, y, z, .. } = p;
    let inner = z * z - BigInt::from(p.chi) * g * (x * x + y * y);
    m * &inner * &inner - BigInt::from(4) * g * g
}

/// Both equations b(x^2 - y^2) + 2axy = +-2 and
/// m [z^2 - chi g (x^2 + y^2)]^2 - 4g^2 = +-16.
pub fn verify_system(p: &GrasParams) -> bool {
    first_equation_lhs(p).abs() == BigInt::from(2)
        && second_equation_lhs(p).abs() == BigInt::from(16)
}

/// Result of scanning for t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TChoice {
    pub t: BigInt,
    /// Whether the chosen t also satisfies Hasse's congruences.
    pub hasse: bool,
}

/// Smallest |t| <= 2|z| + 4 (positive first on ties) with P(X) integral and
/// Hasse's congruences satisfied. When no t meets both, the smallest |t|
/// giving an integral P(X) is returned with `hasse` false.
pub fn scan_t(p: &GrasParams) -> Option<TChoice> {
    let bound = BigInt::from(2) * p.z.abs() + 4;
    let mut candidates = vec![BigInt::zero()];
    let mut k = BigInt::one();
    while k <= bound {
        candidates.push(k.clone());
        candidates.push(-k.clone());
        k += 1;
    }
    let integral = |t: &BigInt| {
        let q = p.clone().with_t(t.clone());
        gras_polynomial(&q).is_ok_and(|f| f.is_integral())
    };
    let hasse = |t: &BigInt| hasse_integral(&p.clone().with_t(t.clone())).unwrap_or(false);
    let both = candidates.iter().find(|t| hasse(t) && integral(t));
    match both {
        Some(t) => Some(TChoice {
            t: t.clone(),
            hasse: true,
        }),
        None => candidates
            .into_iter()
            .find(|t| integral(t))
            .map(|t| TChoice { t, hasse: false }),
    }
}

/// Integer square root of a nonnegative fixed-point value scaled by 10^digits.
fn fixed_sqrt(v: &BigInt, scale: &BigInt) -> BigInt {
    (v * scale).sqrt()
}

/// A rational approximation of theta accurate to about `digits` decimals.
fn theta_fixed(p: &GrasParams, digits: u32) -> Result<BigRational> {
    let t = p.t()?;
    let scale = BigInt::from(10).pow(digits);
    let chi = BigInt::from(p.chi);
    let sqrt_m = fixed_sqrt(&(&p.m * &scale), &scale);
    let a_s = &p.a * &scale;
    // Both radicands carry a factor scale^2.
    let rad1: BigInt = &chi * &p.g * &sqrt_m * (&a_s + &sqrt_m) / 2;
    let rad3: BigInt = -&chi * &p.g * &sqrt_m * (&a_s - &sqrt_m) / 2;
    if rad1.is_negative() || rad3.is_negative() {
        return Err(Error::NonRealPsi);
    }
    let psi = rad1.sqrt();
    let psi3 = rad3.sqrt();
    // psi sigma(psi) = -g b sqrt(m) / 2 fixes the sign of sigma(psi).
    let sigma_psi = if (&p.g * &p.b).is_positive() {
        -psi3
    } else {
        psi3
    };
    let num = t * &scale + &p.z * &sqrt_m + BigInt::from(2) * (&p.x * &psi + &p.y * &sigma_psi);
    Ok(BigRational::new(num, scale * 4))
}

fn working_digits(p: &GrasParams, precision: u32) -> Result<u32> {
    let f = gras_polynomial(p)?;
    let size = f
        .coeffs()
        .iter()
        .map(|c| c.numer().abs().to_string().len() + c.denom().to_string().len())
        .max()
        .unwrap_or(1);
    Ok(precision + 20 + 2 * size as u32)
}

/// theta as a rational approximation with at least `precision` correct
/// decimal digits; P(theta) is below 10^(6 - precision) in absolute value.
pub fn theta_numeric(p: &GrasParams, precision: u32) -> Result<BigRational> {
    theta_fixed(p, working_digits(p, precision)?)
}

/// |P(theta)| for the approximation returned by `theta_numeric`.
pub fn theta_residual(p: &GrasParams, precision: u32) -> Result<BigRational> {
    let theta = theta_numeric(p, precision)?;
    Ok(gras_polynomial(p)?.evaluate(&theta).abs())
}

/// a = z^2 + 2, b = 2, g = a, m = z^4 + 4z^2 + 8, x = 1, y = 0, chi = 1, with
/// t from `scan_t`.
pub fn further_family_a(z: &BigInt) -> Result<GrasParams> {
    if z.is_zero() {
        return Err(Error::ZeroInput("further_family_a"));
    }
    let a: BigInt = z * z + 2;
    let p = GrasParams::new(a.clone(), 2, a, 1, 0, z.clone(), 1)?;
    let choice = scan_t(&p).ok_or(Error::NonIntegralPolynomial)?;
    Ok(p.with_t(choice.t))
}

/// a = 1, x = y = 1, z = 4v + 2, t = z, g = 8v^2 + 8v + 4, b = g/2,
/// m = g^2/4 + 1.
pub fn further_family_b(v: &BigInt) -> Result<GrasParams> {
    let z: BigInt = BigInt::from(4) * v + 2;
    let g: BigInt = BigInt::from(8) * v * v + BigInt::from(8) * v + 4;
    let b: BigInt = &g / 2;
    Ok(GrasParams::new(1, b, g, 1, 1, z.clone(), 1)?.with_t(z))
}

/// The four x = 3, y = 4 families:
///
/// ```text
/// which 1, 2: z = 3125v +- 1020, a = (7z^2 - 1550)/15625,
///             b = (24z^2 - 850)/15625, g = z^2/25 - 2
/// which 3, 4: z = 3125v +- 1265, a = (7z^2 + 1550)/15625,
///             b = (24z^2 + 850)/15625, g = z^2/25 + 2
/// ```
///
/// Odd `which` takes the + sign in z. t comes from `scan_t`.
pub fn x3y4_family(which: u32, v: &BigInt) -> Result<GrasParams> {
    let (offset, sign) = match which {
        1 => (1020, -1),
        2 => (-1020, -1),
        3 => (1265, 1),
        4 => (-1265, 1),
        _ => return Err(Error::BadFamily(which)),
    };
    let z = BigInt::from(3125) * v + offset;
    let z2 = &z * &z;
    let exact = |num: BigInt, den: i64, what: &str| -> Result<BigInt> {
        let (q, r) = num.div_rem(&BigInt::from(den));
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::MalformedParams(format!(
                "{what} is not an integer at z = {z}"
            )))
        }
    };
    let a = exact(BigInt::from(7) * &z2 + 1550 * sign, 15625, "a")?;
    let b = exact(BigInt::from(24) * &z2 + 850 * sign, 15625, "b")?;
    let g = exact(&z2 + 50 * sign, 25, "g")?;
    let p = GrasParams::new(a, b, g, 3, 4, z, 1)?;
    if !verify_system(&p) {
        return Err(Error::SystemFails);
    }
    let choice = scan_t(&p).ok_or(Error::NonIntegralPolynomial)?;
    Ok(p.with_t(choice.t))
}
