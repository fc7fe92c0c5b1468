//! Gaussian rationals: numbers `a + b*i` with arbitrary-precision rational
//! `a`, `b`. These are the bottom-level coefficients of every exact scalar in
//! the crate.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element of `Q(i)` with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        GaussianRational { re: BigRational::one(), im: BigRational::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        GaussianRational { re: BigRational::from_integer(n), im: BigRational::zero() }
    }

    /// Exact rational `n/d`. Panics if `d == 0`.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(n), BigInt::from(d)),
            im: BigRational::zero(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True when the number is real negative or purely imaginary with
    /// negative imaginary part. Used to pull a leading minus sign out of
    /// printed terms; mixed values never count as negative.
    pub fn is_negative_like(&self) -> bool {
        (self.im.is_zero() && self.re.is_negative())
            || (self.re.is_zero() && self.im.is_negative())
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn neg_ref(&self) -> Self {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn div_ref(&self, o: &Self) -> Option<Self> {
        o.inv().map(|v| self.mul_ref(&v))
    }

    /// Both parts converted to `f64`; `None` on overflow.
    pub fn to_f64_parts(&self) -> Option<(f64, f64)> {
        use num::ToPrimitive;
        Some((self.re.to_f64()?, self.im.to_f64()?))
    }

    /// True when printing this value inside a product needs parentheses.
    pub fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_str = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", self.im)
        };
        if self.re.is_zero() {
            write!(f, "{im_str}")
        } else if self.im.is_negative() {
            let pos = self.neg_ref();
            let pos_im = if pos.im.is_one() { "i".to_string() } else { format!("{}*i", pos.im) };
            write!(f, "{} - {}", self.re, pos_im)
        } else {
            write!(f, "{} + {}", self.re, im_str)
        }
    }
}
