//! Specializations of the generic parameter field.
//!
//! A [`Specialization`] sends the two parameters somewhere concrete:
//! - `Generic` keeps them formal (the identity map),
//! - `OneParam { r, s }` substitutes `p = t^r`, `q = t^s`, the collapse used
//!   by the one-parameter quotients (it realizes `q^r = p^s` exactly),
//! - `Numeric` evaluates at complex floating-point values,
//! - `Quotient` lands the parameters in `k[u]/(m)` for a monic modulus `m`,
//!   typically a cyclotomic polynomial, to probe root-of-unity behaviour.
//!
//! Specializing is a ring homomorphism wherever it is defined; it fails
//! exactly when a denominator dies or an image is not invertible, and the
//! error carries the offending value.

use super::gauss::GaussianRational;
use super::scalar::Scalar;
use super::tscalar::TScalar;
use super::unipoly::UniPoly;
use num::complex::Complex64;
use num::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("denominator vanishes under the specialization: {0}")]
    DenominatorVanishes(String),
    #[error("half-integer parameter power has no image in the quotient ring: {0}")]
    HalfPower(String),
    #[error("value is not invertible in the quotient ring: {0}")]
    NotInvertible(String),
    #[error("invalid quotient ring: {0}")]
    InvalidRing(String),
    #[error("invalid specialization parameters: {0}")]
    InvalidParams(String),
}

/// Residue-class ring `k[u]/(modulus)` with chosen images for the two
/// parameters. The modulus is monic of positive degree; the ring may have
/// zero divisors, so inversion can fail pointwise.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRing {
    modulus: UniPoly,
    p_image: UniPoly,
    q_image: UniPoly,
    label: String,
}

impl QuotientRing {
    pub fn new(modulus: UniPoly, p_image: UniPoly, q_image: UniPoly, label: String) -> Result<Self, SpecError> {
        if !modulus.is_polynomial() || modulus.max_exp().unwrap_or(0) < 1 {
            return Err(SpecError::InvalidRing("modulus must be a polynomial of degree at least 1".into()));
        }
        if !modulus.lc().is_one() {
            return Err(SpecError::InvalidRing("modulus must be monic".into()));
        }
        let mut ring = QuotientRing { modulus, p_image, q_image, label };
        ring.p_image = ring.reduce(&ring.p_image.clone());
        ring.q_image = ring.reduce(&ring.q_image.clone());
        Ok(ring)
    }

    /// `k[u]/(Φ_n)` with `p = u^ep` and `q = u^eq`; negative exponents use
    /// the inverse of `u`, which exists because cyclotomic moduli have unit
    /// constant term.
    pub fn cyclotomic(n: u32, ep: i64, eq: i64) -> Result<Self, SpecError> {
        if n == 0 {
            return Err(SpecError::InvalidRing("cyclotomic index must be positive".into()));
        }
        let label = format!("cyclotomic:{n}:{ep},{eq}");
        let mut ring = QuotientRing::new(
            cyclotomic_poly(n),
            UniPoly::one(),
            UniPoly::one(),
            label,
        )?;
        let u = ring.reduce(&UniPoly::monomial(1, GaussianRational::one()));
        ring.p_image = ring.pow(&u, ep)?;
        ring.q_image = ring.pow(&u, eq)?;
        Ok(ring)
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn p_image(&self) -> &UniPoly {
        &self.p_image
    }

    pub fn q_image(&self) -> &UniPoly {
        &self.q_image
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn reduce(&self, v: &UniPoly) -> UniPoly {
        debug_assert!(v.is_polynomial());
        let (_, r) = v.div_rem(&self.modulus);
        r
    }

    pub fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.add_ref(b)
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&a.mul_ref(b))
    }

    /// Inverse in the residue ring, when the Bezout gcd with the modulus is
    /// a unit.
    pub fn inv(&self, a: &UniPoly) -> Result<UniPoly, SpecError> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Err(SpecError::NotInvertible("0".into()));
        }
        let (g, u, _) = a.ext_gcd(&self.modulus);
        if !g.is_one() {
            return Err(SpecError::NotInvertible(a.display_with("u")));
        }
        Ok(self.reduce(&u))
    }

    pub fn pow(&self, a: &UniPoly, k: i64) -> Result<UniPoly, SpecError> {
        if k == 0 {
            return Ok(UniPoly::one());
        }
        let base = if k < 0 { self.inv(a)? } else { self.reduce(a) };
        let mut e = k.unsigned_abs();
        let mut acc = UniPoly::one();
        let mut sq = base;
        loop {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e == 0 {
                return Ok(acc);
            }
            sq = self.mul(&sq.clone(), &sq);
        }
    }
}

/// The n-th cyclotomic polynomial, by dividing `u^n - 1` by the lower ones.
pub fn cyclotomic_poly(n: u32) -> UniPoly {
    assert!(n > 0);
    let mut num = UniPoly::monomial(n as i64, GaussianRational::one());
    num.add_term(0, GaussianRational::from_int(-1));
    let mut out = num;
    for d in 1..n {
        if n.is_multiple_of(d) {
            out = out.divexact(&cyclotomic_poly(d)).expect("cyclotomic division is exact");
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub enum Specialization {
    Generic,
    OneParam { r: i64, s: i64 },
    Numeric { p: Complex64, q: Complex64 },
    Quotient(QuotientRing),
}

impl Specialization {
    /// One-parameter collapse `p = t^r`, `q = t^s` with coprime positive
    /// exponents; coprimality is what makes the degree-zero part of the
    /// collapsed algebra behave like a torus in a single variable.
    pub fn one_param(r: i64, s: i64) -> Result<Self, SpecError> {
        if r < 1 || s < 1 {
            return Err(SpecError::InvalidParams(format!("exponents must be positive, got {r},{s}")));
        }
        if gcd_i64(r, s) != 1 {
            return Err(SpecError::InvalidParams(format!("exponents must be coprime, got {r},{s}")));
        }
        Ok(Specialization::OneParam { r, s })
    }

    pub fn numeric(p: Complex64, q: Complex64) -> Result<Self, SpecError> {
        if p.norm() == 0.0 || q.norm() == 0.0 {
            return Err(SpecError::InvalidParams("parameters must be nonzero".into()));
        }
        Ok(Specialization::Numeric { p, q })
    }

    pub fn apply(&self, v: &Scalar) -> Result<SpecValue, SpecError> {
        match self {
            Specialization::Generic => Ok(SpecValue::Exact(v.clone())),
            Specialization::OneParam { r, s } => {
                let num = one_param_poly(v.numerator(), *r, *s);
                let den = one_param_poly(v.denominator(), *r, *s);
                if den.is_zero() {
                    return Err(SpecError::DenominatorVanishes(v.to_string()));
                }
                Ok(SpecValue::OneParam(TScalar::from_num_den(num, den).unwrap()))
            }
            Specialization::Numeric { p, q } => {
                let num = numeric_poly(v.numerator(), *p, *q);
                let den = numeric_poly(v.denominator(), *p, *q);
                if den.norm() == 0.0 {
                    return Err(SpecError::DenominatorVanishes(v.to_string()));
                }
                Ok(SpecValue::Numeric(num / den))
            }
            Specialization::Quotient(ring) => {
                let num = quotient_poly(v.numerator(), ring)?;
                let den = quotient_poly(v.denominator(), ring)?;
                let dinv = ring
                    .inv(&den)
                    .map_err(|_| SpecError::NotInvertible(den.display_with("u")))?;
                Ok(SpecValue::Quotient(ring.mul(&num, &dinv)))
            }
        }
    }

    /// True when the scalar maps to zero (used to test identities that only
    /// hold after specialization).
    pub fn kills(&self, v: &Scalar) -> Result<bool, SpecError> {
        Ok(self.apply(v)?.is_zero())
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn one_param_poly(v: &super::laurent::LaurentScalar, r: i64, s: i64) -> UniPoly {
    let mut out = UniPoly::zero();
    for ((ep, eq), c) in v.terms() {
        out.add_term(ep * r + eq * s, c.clone());
    }
    out
}

fn numeric_poly(v: &super::laurent::LaurentScalar, p: Complex64, q: Complex64) -> Complex64 {
    // Integer powers stay on powi; the principal square root enters only
    // for genuinely half-integral exponents.
    let half_power = |base: Complex64, doubled: i64| -> Complex64 {
        if doubled % 2 == 0 {
            base.powi((doubled / 2) as i32)
        } else {
            base.sqrt().powi(doubled as i32)
        }
    };
    let mut out = Complex64::new(0.0, 0.0);
    for ((ep, eq), c) in v.terms() {
        let (re, im) = c.to_f64_parts().expect("coefficient out of f64 range");
        out += Complex64::new(re, im) * half_power(p, *ep) * half_power(q, *eq);
    }
    out
}

fn quotient_poly(v: &super::laurent::LaurentScalar, ring: &QuotientRing) -> Result<UniPoly, SpecError> {
    let mut out = UniPoly::zero();
    for ((ep, eq), c) in v.terms() {
        if ep % 2 != 0 || eq % 2 != 0 {
            return Err(SpecError::HalfPower(format!("p^({ep}/2)*q^({eq}/2)")));
        }
        let pp = ring.pow(ring.p_image(), ep / 2)?;
        let qq = ring.pow(ring.q_image(), eq / 2)?;
        let term = ring.mul(&pp, &qq);
        out = ring.add(&out, &term.scale(c));
    }
    Ok(ring.reduce(&out))
}

/// The image of a scalar under a specialization.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecValue {
    Exact(Scalar),
    OneParam(TScalar),
    Numeric(Complex64),
    Quotient(UniPoly),
}

impl SpecValue {
    pub fn is_zero(&self) -> bool {
        match self {
            SpecValue::Exact(v) => v.is_zero(),
            SpecValue::OneParam(v) => v.is_zero(),
            SpecValue::Numeric(v) => v.norm() == 0.0,
            SpecValue::Quotient(v) => v.is_zero(),
        }
    }
}

pub(crate) fn fmt_complex(v: Complex64) -> String {
    if v.im == 0.0 {
        format!("{}", v.re)
    } else if v.im < 0.0 {
        format!("{} - {}*i", v.re, -v.im)
    } else {
        format!("{} + {}*i", v.re, v.im)
    }
}

impl fmt::Display for SpecValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecValue::Exact(v) => write!(f, "{v}"),
            SpecValue::OneParam(v) => write!(f, "{v}"),
            SpecValue::Numeric(v) => write!(f, "{}", fmt_complex(*v)),
            SpecValue::Quotient(v) => write!(f, "{}", v.display_with("u")),
        }
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialization::Generic => write!(f, "generic"),
            Specialization::OneParam { r, s } => write!(f, "oneparam:{r},{s}"),
            Specialization::Numeric { p, q } => {
                write!(f, "numeric:{},{}", fmt_complex(*p), fmt_complex(*q))
            }
            Specialization::Quotient(ring) => write!(f, "{}", ring.label()),
        }
    }
}

fn split_pair<'a>(body: &'a str, what: &str) -> Result<(&'a str, &'a str), String> {
    body.split_once(',')
        .ok_or_else(|| format!("{what} expects two comma-separated values, found {body:?}"))
}

impl std::str::FromStr for Specialization {
    type Err = String;

    /// Accepts `generic`, `oneparam:R,S`, `cyclotomic:N:EP,EQ`, and
    /// `numeric:P,Q` with real parameters.
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "generic" {
            return Ok(Specialization::Generic);
        }
        if let Some(body) = s.strip_prefix("oneparam:") {
            let (r, sx) = split_pair(body, "oneparam")?;
            let r: i64 = r.trim().parse().map_err(|e| format!("oneparam exponent {r:?}: {e}"))?;
            let sx: i64 = sx.trim().parse().map_err(|e| format!("oneparam exponent {sx:?}: {e}"))?;
            return Specialization::one_param(r, sx).map_err(|e| e.to_string());
        }
        if let Some(body) = s.strip_prefix("cyclotomic:") {
            let (n, images) = body
                .split_once(':')
                .ok_or_else(|| format!("cyclotomic expects N:EP,EQ, found {body:?}"))?;
            let n: u32 = n.trim().parse().map_err(|e| format!("cyclotomic index {n:?}: {e}"))?;
            let (ep, eq) = split_pair(images, "cyclotomic")?;
            let ep: i64 = ep.trim().parse().map_err(|e| format!("exponent {ep:?}: {e}"))?;
            let eq: i64 = eq.trim().parse().map_err(|e| format!("exponent {eq:?}: {e}"))?;
            let ring = QuotientRing::cyclotomic(n, ep, eq).map_err(|e| e.to_string())?;
            return Ok(Specialization::Quotient(ring));
        }
        if let Some(body) = s.strip_prefix("numeric:") {
            let (p, q) = split_pair(body, "numeric")?;
            let p: f64 = p.trim().parse().map_err(|e| format!("parameter {p:?}: {e}"))?;
            let q: f64 = q.trim().parse().map_err(|e| format!("parameter {q:?}: {e}"))?;
            return Specialization::numeric(Complex64::new(p, 0.0), Complex64::new(q, 0.0))
                .map_err(|e| e.to_string());
        }
        Err(format!(
            "unknown mode {s:?}; expected generic, oneparam:R,S, cyclotomic:N:EP,EQ, or numeric:P,Q"
        ))
    }
}
