//! Exact scalars for the one-parameter specialization: rational functions in
//! `t^(1/2)` over the Gaussian rationals.
//!
//! Same canonical-fraction design as [`super::Scalar`], but univariate, so
//! the gcd is a plain Euclidean one. Exponents are again doubled: the key `n`
//! stores the power of `t^(1/2)`.

use super::gauss::GaussianRational;
use super::unipoly::UniPoly;
use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TScalar {
    num: UniPoly,
    den: UniPoly,
}

impl TScalar {
    fn from_coprime(num: UniPoly, den: UniPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return TScalar { num: UniPoly::zero(), den: UniPoly::one() };
        }
        if den.is_monomial() {
            let (e, c) = {
                let (e, c) = den.terms().next().unwrap();
                (*e, c.clone())
            };
            let cinv = c.inv().unwrap();
            return TScalar { num: num.shift(-e).scale(&cinv), den: UniPoly::one() };
        }
        let me = den.min_exp().unwrap();
        let cinv = den.lc().inv().unwrap();
        TScalar { num: num.shift(-me).scale(&cinv), den: den.shift(-me).scale(&cinv) }
    }

    fn reduced(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "scalar with zero denominator");
        if num.is_zero() || den.is_monomial() {
            return TScalar::from_coprime(num, den);
        }
        let g = num.gcd(&den);
        if g.is_one() {
            TScalar::from_coprime(num, den)
        } else {
            TScalar::from_coprime(num.divexact(&g).unwrap(), den.divexact(&g).unwrap())
        }
    }

    pub fn from_num_den(num: UniPoly, den: UniPoly) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(TScalar::reduced(num, den))
        }
    }

    pub fn from_unipoly(num: UniPoly) -> Self {
        TScalar { num, den: UniPoly::one() }
    }

    pub fn from_gauss(c: GaussianRational) -> Self {
        TScalar::from_unipoly(UniPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        TScalar::from_gauss(GaussianRational::from_int(n))
    }

    pub fn i() -> Self {
        TScalar::from_gauss(GaussianRational::i())
    }

    /// Monomial with a doubled exponent: `half_pow(2)` is `t`, `half_pow(1)`
    /// is `t^(1/2)`.
    pub fn half_pow(n: i64) -> Self {
        TScalar::from_unipoly(UniPoly::monomial(n, GaussianRational::one()))
    }

    pub fn t() -> Self {
        TScalar::half_pow(2)
    }

    pub fn sqrt_t() -> Self {
        TScalar::half_pow(1)
    }

    pub fn t_pow(k: i64) -> Self {
        TScalar::half_pow(2 * k)
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_single_negative(&self) -> bool {
        self.den.is_one() && self.num.num_terms() == 1 && self.num.lc().is_negative_like()
    }

    pub fn is_compound(&self) -> bool {
        if !self.den.is_one() || self.num.num_terms() > 1 {
            return true;
        }
        self.num.lc().is_compound()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(TScalar::from_coprime(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return TScalar::one();
        }
        let (base, mut e) = if k < 0 {
            (self.inv().expect("negative power of zero"), k.unsigned_abs())
        } else {
            (self.clone(), k.unsigned_abs())
        };
        let mut acc = TScalar::one();
        let mut sq = base;
        loop {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e == 0 {
                return acc;
            }
            sq = sq.clone() * sq;
        }
    }
}

impl Zero for TScalar {
    fn zero() -> Self {
        TScalar { num: UniPoly::zero(), den: UniPoly::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for TScalar {
    fn one() -> Self {
        TScalar { num: UniPoly::one(), den: UniPoly::one() }
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Add for TScalar {
    type Output = TScalar;
    fn add(self, o: TScalar) -> TScalar {
        if self.den.is_one() && o.den.is_one() {
            return TScalar { num: self.num.add_ref(&o.num), den: UniPoly::one() };
        }
        if self.den == o.den {
            return TScalar::reduced(self.num.add_ref(&o.num), self.den);
        }
        let num = self.num.mul_ref(&o.den).add_ref(&o.num.mul_ref(&self.den));
        TScalar::reduced(num, self.den.mul_ref(&o.den))
    }
}

impl Sub for TScalar {
    type Output = TScalar;
    fn sub(self, o: TScalar) -> TScalar {
        self + (-o)
    }
}

impl Neg for TScalar {
    type Output = TScalar;
    fn neg(self) -> TScalar {
        TScalar { num: self.num.neg_ref(), den: self.den }
    }
}

impl Mul for TScalar {
    type Output = TScalar;
    fn mul(self, o: TScalar) -> TScalar {
        if self.num.is_zero() || o.num.is_zero() {
            return TScalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return TScalar { num: self.num.mul_ref(&o.num), den: UniPoly::one() };
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = if g1.is_one() { self.num } else { self.num.divexact(&g1).unwrap() };
        let d2 = if g1.is_one() { o.den } else { o.den.divexact(&g1).unwrap() };
        let n2 = if g2.is_one() { o.num } else { o.num.divexact(&g2).unwrap() };
        let d1 = if g2.is_one() { self.den } else { self.den.divexact(&g2).unwrap() };
        TScalar::from_coprime(n1.mul_ref(&n2), d1.mul_ref(&d2))
    }
}

impl Div for TScalar {
    type Output = TScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: TScalar) -> TScalar {
        self * o.inv().expect("scalar division by zero")
    }
}

fn fmt_half(v: &UniPoly) -> String {
    let mut terms: Vec<_> = v.terms().collect();
    terms.reverse();
    super::fmt_terms(terms.into_iter().map(|(e, c)| {
        let mono = if *e == 0 { String::new() } else { super::power_string("t", *e, 2) };
        (c.clone(), mono)
    }))
}

impl fmt::Display for TScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = fmt_half(&self.num);
        if self.den.is_one() {
            return write!(f, "{num}");
        }
        let num = if self.num.num_terms() > 1 { format!("({num})") } else { num };
        write!(f, "{num}/({})", fmt_half(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_inverse() {
        // (t^2 - 1)/(t - 1) = t + 1
        let num = TScalar::t_pow(2) - TScalar::one();
        let den = TScalar::t() - TScalar::one();
        let v = num.clone() / den.clone();
        assert_eq!(v, TScalar::t() + TScalar::one());
        assert_eq!(v.inv().unwrap() * v, TScalar::one());
        assert_eq!(TScalar::zero().inv(), None);
    }

    #[test]
    fn display_halved_exponents() {
        assert_eq!(TScalar::sqrt_t().to_string(), "t^(1/2)");
        assert_eq!(TScalar::half_pow(-1).to_string(), "t^(-1/2)");
        let v = TScalar::t_pow(3) + TScalar::t() + TScalar::t_pow(-1) + TScalar::t_pow(-3);
        assert_eq!(v.to_string(), "t^3 + t + t^-1 + t^-3");
        let f = (TScalar::t() - TScalar::one()).inv().unwrap();
        assert_eq!(f.to_string(), "1/(t - 1)");
        assert_eq!((-f).to_string(), "-1/(t - 1)");
    }

    #[test]
    fn pow_and_units() {
        let v = TScalar::sqrt_t() + TScalar::one();
        assert_eq!(v.pow(2), TScalar::t() + TScalar::from_int(2) * TScalar::sqrt_t() + TScalar::one());
        assert_eq!(v.pow(-2) * v.pow(2), TScalar::one());
    }
}
