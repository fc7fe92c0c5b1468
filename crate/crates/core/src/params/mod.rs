//! Exact coefficient arithmetic.
//!
//! - [`GaussianRational`]: arbitrary-precision elements of ℚ(i).
//! - [`LaurentScalar`] / [`UniPoly`]: sparse Laurent polynomials, bivariate
//!   in the two parameters and univariate for moduli and the one-parameter
//!   collapse.
//! - [`Scalar`] / [`TScalar`]: the rational-function coefficient fields, in
//!   `p^(1/2), q^(1/2)` and in `t^(1/2)` respectively.
//! - [`Specialization`]: homomorphisms onto concrete parameter choices.
//! - [`pq_number`] / [`pq_factorial`]: the quantum integers driving every
//!   reordering coefficient.

mod gauss;
mod laurent;
mod scalar;
mod special;
mod tscalar;
mod unipoly;

pub use gauss::GaussianRational;
pub use laurent::LaurentScalar;
pub use scalar::Scalar;
pub use special::{cyclotomic_poly, QuotientRing, SpecError, SpecValue, Specialization};
pub use tscalar::TScalar;
pub use unipoly::UniPoly;

use num::{One, Zero};
use std::ops::{Neg, Sub};

/// Field-like coefficients the algebra engines are generic over.
///
/// Implemented by [`Scalar`] (generic parameters) and [`TScalar`] (the
/// one-parameter collapse). The two display predicates let element printers
/// fold signs into separators and parenthesize compound coefficients.
pub trait Coefficient:
    Clone
    + PartialEq
    + std::fmt::Debug
    + std::fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn inv(&self) -> Option<Self>;
    fn from_int(n: i64) -> Self;
    fn is_single_negative(&self) -> bool;
    fn is_compound(&self) -> bool;
}

impl Coefficient for Scalar {
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self)
    }

    fn from_int(n: i64) -> Self {
        Scalar::from_int(n)
    }

    fn is_single_negative(&self) -> bool {
        Scalar::is_single_negative(self)
    }

    fn is_compound(&self) -> bool {
        Scalar::is_compound(self)
    }
}

impl Coefficient for TScalar {
    fn inv(&self) -> Option<Self> {
        TScalar::inv(self)
    }

    fn from_int(n: i64) -> Self {
        TScalar::from_int(n)
    }

    fn is_single_negative(&self) -> bool {
        TScalar::is_single_negative(self)
    }

    fn is_compound(&self) -> bool {
        TScalar::is_compound(self)
    }
}

/// The quantum integer `[n] = (q^n - p^{-n})/(q - p^{-1})`, defined for all
/// n ∈ ℤ; the fraction always reduces to a Laurent polynomial.
pub fn pq_number(n: i64) -> Scalar {
    let mut num = LaurentScalar::monomial(0, 2 * n, GaussianRational::one());
    num.add_term(-2 * n, 0, GaussianRational::from_int(-1));
    let mut den = LaurentScalar::monomial(0, 2, GaussianRational::one());
    den.add_term(-2, 0, GaussianRational::from_int(-1));
    Scalar::from_num_den(num, den).unwrap()
}

/// `[n]! = [1][2]···[n]`, with `[0]! = 1`.
pub fn pq_factorial(n: i64) -> Scalar {
    assert!(n >= 0, "factorial of a negative integer");
    let mut acc = Scalar::one();
    for k in 1..=n {
        acc = acc * pq_number(k);
    }
    acc
}

/// Renders `var^(num/den)` with den ∈ {1, 2}: integer exponents print bare
/// (`p`, `p^2`, `p^-1`), half-integers parenthesized (`p^(1/2)`, `p^(-3/2)`).
pub(crate) fn power_string(var: &str, num: i64, den: i64) -> String {
    debug_assert!(den == 1 || den == 2);
    if num % den == 0 {
        let e = num / den;
        if e == 1 {
            var.to_string()
        } else {
            format!("{var}^{e}")
        }
    } else {
        format!("{var}^({num}/2)")
    }
}

/// Joins (coefficient, monomial) pairs into a sum, folding signs into the
/// separators; an empty monomial string denotes the constant term.
pub(crate) fn fmt_terms(terms: impl Iterator<Item = (GaussianRational, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let (negative, mag) = if c.is_negative_like() { (true, c.neg_ref()) } else { (false, c) };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                if mag.is_compound() {
                    out.push_str(&format!("({mag})*"));
                } else {
                    out.push_str(&format!("{mag}*"));
                }
            }
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
