//! The exact coefficient field: rational functions in `p^(1/2)` and
//! `q^(1/2)` over the Gaussian rationals.
//!
//! A value is a reduced fraction of [`LaurentScalar`]s. Canonical form:
//! - numerator and denominator share no non-unit factor,
//! - the denominator has minimal exponents `(0, 0)` and lex-leading
//!   coefficient 1 (so a denominator of 1 means the value is a Laurent
//!   polynomial),
//! - zero is `0/1`.
//!
//! Equality is therefore structural, which is what the identity checks rely
//! on: an identity holds exactly when the difference reduces to `0/1`.

use super::gauss::GaussianRational;
use super::laurent::LaurentScalar;
use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    num: LaurentScalar,
    den: LaurentScalar,
}

impl Scalar {
    fn from_coprime(num: LaurentScalar, den: LaurentScalar) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar { num: LaurentScalar::zero(), den: LaurentScalar::one() };
        }
        if den.is_monomial() {
            let ((dp, dq), dc) = {
                let (k, c) = den.leading().unwrap();
                (*k, c.clone())
            };
            let cinv = dc.inv().unwrap();
            return Scalar { num: num.shift(-dp, -dq).scale(&cinv), den: LaurentScalar::one() };
        }
        let (mp, mq) = den.min_exps().unwrap();
        let cinv = den.leading().unwrap().1.inv().unwrap();
        Scalar { num: num.shift(-mp, -mq).scale(&cinv), den: den.shift(-mp, -mq).scale(&cinv) }
    }

    fn reduced(num: LaurentScalar, den: LaurentScalar) -> Self {
        assert!(!den.is_zero(), "scalar with zero denominator");
        if num.is_zero() || den.is_monomial() {
            return Scalar::from_coprime(num, den);
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Scalar::from_coprime(num, den)
        } else {
            Scalar::from_coprime(num.divexact(&g).unwrap(), den.divexact(&g).unwrap())
        }
    }

    pub fn from_num_den(num: LaurentScalar, den: LaurentScalar) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Scalar::reduced(num, den))
        }
    }

    pub fn from_laurent(num: LaurentScalar) -> Self {
        Scalar { num, den: LaurentScalar::one() }
    }

    pub fn from_gauss(c: GaussianRational) -> Self {
        Scalar::from_laurent(LaurentScalar::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(GaussianRational::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_gauss(GaussianRational::from_ratio(num, den))
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussianRational::i())
    }

    /// Monomial with doubled exponents: `(np, nq)` are powers of the square
    /// roots, so `half_pow(2, 0)` is `p` and `half_pow(1, 0)` is `p^(1/2)`.
    pub fn half_pow(np: i64, nq: i64) -> Self {
        Scalar::from_laurent(LaurentScalar::monomial(np, nq, GaussianRational::one()))
    }

    pub fn p() -> Self {
        Scalar::half_pow(2, 0)
    }

    pub fn q() -> Self {
        Scalar::half_pow(0, 2)
    }

    pub fn sqrt_p() -> Self {
        Scalar::half_pow(1, 0)
    }

    pub fn sqrt_q() -> Self {
        Scalar::half_pow(0, 1)
    }

    pub fn p_pow(k: i64) -> Self {
        Scalar::half_pow(2 * k, 0)
    }

    pub fn q_pow(k: i64) -> Self {
        Scalar::half_pow(0, 2 * k)
    }

    pub fn numerator(&self) -> &LaurentScalar {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentScalar {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Single Laurent term whose Gaussian coefficient is negative-like; the
    /// element printers peel the sign off such coefficients.
    pub fn is_single_negative(&self) -> bool {
        self.den.is_one()
            && self.num.num_terms() == 1
            && self.num.leading().unwrap().1.is_negative_like()
    }

    /// True when a rendered product needs parentheses around this value.
    pub fn is_compound(&self) -> bool {
        if !self.den.is_one() || self.num.num_terms() > 1 {
            return true;
        }
        match self.num.leading() {
            Some((_, c)) => c.is_compound(),
            None => false,
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Scalar::from_coprime(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Scalar::one();
        }
        let (base, mut e) = if k < 0 {
            (self.inv().expect("negative power of zero"), k.unsigned_abs())
        } else {
            (self.clone(), k.unsigned_abs())
        };
        let mut acc = Scalar::one();
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

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar { num: LaurentScalar::zero(), den: LaurentScalar::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar { num: LaurentScalar::one(), den: LaurentScalar::one() }
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.add_ref(&o.num), den: LaurentScalar::one() };
        }
        if self.den == o.den {
            return Scalar::reduced(self.num.add_ref(&o.num), self.den);
        }
        let num = self.num.mul_ref(&o.den).add_ref(&o.num.mul_ref(&self.den));
        Scalar::reduced(num, self.den.mul_ref(&o.den))
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self + (-o)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg_ref(), den: self.den }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        if self.num.is_zero() || o.num.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul_ref(&o.num), den: LaurentScalar::one() };
        }
        // Cross-cancel before multiplying to keep the factors small.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = if g1.is_one() { self.num } else { self.num.divexact(&g1).unwrap() };
        let d2 = if g1.is_one() { o.den } else { o.den.divexact(&g1).unwrap() };
        let n2 = if g2.is_one() { o.num } else { o.num.divexact(&g2).unwrap() };
        let d1 = if g2.is_one() { self.den } else { self.den.divexact(&g2).unwrap() };
        Scalar::from_coprime(n1.mul_ref(&n2), d1.mul_ref(&d2))
    }
}

impl Div for Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Scalar) -> Scalar {
        self * o.inv().expect("scalar division by zero")
    }
}

fn fmt_bivariate(v: &LaurentScalar) -> String {
    super::fmt_terms(v.terms_desc().map(|((ep, eq), c)| {
        let mut factors = Vec::new();
        if *ep != 0 {
            factors.push(super::power_string("p", *ep, 2));
        }
        if *eq != 0 {
            factors.push(super::power_string("q", *eq, 2));
        }
        (c.clone(), factors.join("*"))
    }))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = fmt_bivariate(&self.num);
        if self.den.is_one() {
            return write!(f, "{num}");
        }
        let num = if self.num.num_terms() > 1 { format!("({num})") } else { num };
        write!(f, "{num}/({})", fmt_bivariate(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq_num(n: i64) -> Scalar {
        super::super::pq_number(n)
    }

    #[test]
    fn fraction_reduces_to_polynomial() {
        // (q^2 - p^-2)/(q - p^-1) = q + p^-1
        let two = pq_num(2);
        assert!(two.is_laurent());
        assert_eq!(two, Scalar::q() + Scalar::p_pow(-1));
    }

    #[test]
    fn negative_index_is_unit_times_positive() {
        // [-1] = -p/q and [-n] = -(p/q)^n [n]
        assert_eq!(pq_num(-1), -(Scalar::p() * Scalar::q_pow(-1)));
        let lhs = pq_num(-3);
        let rhs = -((Scalar::p() * Scalar::q_pow(-1)).pow(3) * pq_num(3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn recurrence_matches_fraction() {
        // [n+1] = p^-n + q [n] = q^n + p^-1 [n]
        for n in 0..8 {
            let lhs = pq_num(n + 1);
            assert_eq!(lhs, Scalar::p_pow(-n) + Scalar::q() * pq_num(n));
            assert_eq!(lhs, Scalar::q_pow(n) + Scalar::p_pow(-1) * pq_num(n));
        }
    }

    #[test]
    fn field_ops_roundtrip() {
        let a = Scalar::one() - Scalar::p() * Scalar::q();
        let b = a.inv().unwrap();
        assert!(a.clone() * b.clone() == Scalar::one());
        assert_eq!(b.inv().unwrap(), a);
        assert_eq!(Scalar::zero().inv(), None);
        let c = (Scalar::sqrt_p() + Scalar::sqrt_q()).pow(2);
        let expanded = Scalar::p() + Scalar::from_int(2) * Scalar::sqrt_p() * Scalar::sqrt_q() + Scalar::q();
        assert_eq!(c, expanded);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!((Scalar::q() + Scalar::p_pow(-1)).to_string(), "q + p^-1");
        assert_eq!(Scalar::sqrt_p().to_string(), "p^(1/2)");
        assert_eq!(Scalar::half_pow(-3, 0).to_string(), "p^(-3/2)");
        assert_eq!((Scalar::p() * Scalar::q()).to_string(), "p*q");
        assert_eq!((Scalar::q_pow(2) - Scalar::p_pow(-3)).to_string(), "q^2 - p^-3");
        let beta = (Scalar::one() - Scalar::p() * Scalar::q()).inv().unwrap();
        assert_eq!(beta.to_string(), "-1/(p*q - 1)");
        let frac = (Scalar::q() + Scalar::p_pow(-1))
            * (Scalar::p() * Scalar::q() - Scalar::one()).inv().unwrap();
        assert_eq!(frac.to_string(), "(q + p^-1)/(p*q - 1)");
        assert_eq!((-(Scalar::i() * Scalar::sqrt_p())).to_string(), "-i*p^(1/2)");
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let a = pq_num(2) * (Scalar::one() + Scalar::p()).inv().unwrap();
        let mut acc = Scalar::one();
        for _ in 0..5 {
            acc = acc * a.clone();
        }
        assert_eq!(a.pow(5), acc);
        assert_eq!(a.pow(-5), acc.inv().unwrap());
        assert_eq!(a.pow(0), Scalar::one());
    }
}
