//! Sparse univariate Laurent polynomials over the Gaussian rationals.
//!
//! The exponent is a plain `i64`; callers decide what the variable means
//! (the `q^(1/2)`-coefficient ring inside the bivariate gcd, the `t^(1/2)`
//! image of a one-parameter specialization, or the residue variable `u` of a
//! quotient ring). Zero coefficients are never stored.

use super::gauss::GaussianRational;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    terms: BTreeMap<i64, GaussianRational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        UniPoly::monomial(0, GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        UniPoly::monomial(0, c)
    }

    pub fn monomial(exp: i64, coeff: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        UniPoly { terms }
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i64, GaussianRational)>) -> Self {
        let mut out = UniPoly::zero();
        for (e, c) in pairs {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> GaussianRational {
        self.terms.get(&exp).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Leading coefficient at the maximal exponent; zero for the zero poly.
    pub fn lc(&self) -> GaussianRational {
        self.max_exp().map(|e| self.coeff(e)).unwrap_or_else(GaussianRational::zero)
    }

    pub fn add_term(&mut self, exp: i64, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(GaussianRational::zero);
        *entry = entry.add_ref(&coeff);
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.neg_ref());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        UniPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.neg_ref())).collect() }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        let mut out = UniPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly { terms: self.terms.iter().map(|(e, k)| (*e, k.mul_ref(c))).collect() }
    }

    /// Multiply by the monomial `x^d`.
    pub fn shift(&self, d: i64) -> Self {
        UniPoly { terms: self.terms.iter().map(|(e, c)| (e + d, c.clone())).collect() }
    }

    /// True when no negative exponents occur.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().map(|e| e >= 0).unwrap_or(true)
    }

    /// Polynomial long division over the field of coefficients. Both inputs
    /// must be genuine polynomials and `d` nonzero. Returns `(quot, rem)`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        assert!(self.is_polynomial() && d.is_polynomial(), "div_rem needs polynomial inputs");
        let dd = d.max_exp().unwrap();
        let dlc_inv = d.lc().inv().unwrap();
        let mut rem = self.clone();
        let mut quot = UniPoly::zero();
        while let Some(rd) = rem.max_exp() {
            if rd < dd {
                break;
            }
            let c = rem.lc().mul_ref(&dlc_inv);
            let e = rd - dd;
            quot.add_term(e, c.clone());
            let sub = d.scale(&c).shift(e);
            rem = rem.sub_ref(&sub);
        }
        (quot, rem)
    }

    /// Exact division for Laurent inputs: `Some(q)` with `self == q * d`, or
    /// `None` when `d` does not divide `self`.
    pub fn divexact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let sa = self.min_exp().unwrap();
        let sb = d.min_exp().unwrap();
        let a = self.shift(-sa);
        let b = d.shift(-sb);
        let (q, r) = a.div_rem(&b);
        if r.is_zero() {
            Some(q.shift(sa - sb))
        } else {
            None
        }
    }

    /// Gcd of two Laurent polynomials, canonicalized to a polynomial with
    /// nonzero constant term and leading coefficient 1 (unique up to the unit
    /// monomials of the Laurent ring).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.unit_normalized();
        let mut b = o.unit_normalized();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.unit_normalized()
    }

    /// Divide out the unit part: shift the minimal exponent to 0 and make the
    /// leading coefficient 1.
    pub fn unit_normalized(&self) -> Self {
        match self.min_exp() {
            None => UniPoly::zero(),
            Some(m) => {
                let shifted = self.shift(-m);
                let lc_inv = shifted.lc().inv().unwrap();
                shifted.scale(&lc_inv)
            }
        }
    }

    /// Extended Euclid on polynomials: returns `(g, u, v)` with
    /// `u*self + v*o == g` and `g` the monic gcd. Inputs must be polynomials.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut u0, mut u1) = (UniPoly::one(), UniPoly::zero());
        let (mut v0, mut v1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let nu = u0.sub_ref(&q.mul_ref(&u1));
            let nv = v0.sub_ref(&q.mul_ref(&v1));
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, nu);
            v0 = std::mem::replace(&mut v1, nv);
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let s = r0.lc().inv().unwrap();
        (r0.scale(&s), u0.scale(&s), v0.scale(&s))
    }

    /// Render with the given variable name, terms in descending exponent
    /// order. Exponents are taken at face value.
    pub fn display_with(&self, var: &str) -> String {
        crate::params::fmt_terms(
            self.terms.iter().rev().map(|(e, c)| {
                let mono =
                    if *e == 0 { String::new() } else { crate::params::power_string(var, *e, 1) };
                (c.clone(), mono)
            }),
        )
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("u"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pairs: &[(i64, i64)]) -> UniPoly {
        UniPoly::from_coeffs(pairs.iter().map(|&(e, c)| (e, GaussianRational::from_int(c))))
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = poly(&[(3, 1), (0, -1)]);
        let b = poly(&[(1, 1), (0, -1)]);
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, poly(&[(2, 1), (1, 1), (0, 1)]));
        assert_eq!(q.mul_ref(&b), a);
    }

    #[test]
    fn gcd_of_cyclotomic_style_pair() {
        // gcd(x^2 - 1, x^3 - 1) = x - 1.
        let a = poly(&[(2, 1), (0, -1)]);
        let b = poly(&[(3, 1), (0, -1)]);
        assert_eq!(a.gcd(&b), poly(&[(1, 1), (0, -1)]));
    }

    #[test]
    fn gcd_ignores_unit_monomials() {
        // x^-2 * (x - 1) and x^5 * (x - 1) have gcd x - 1.
        let a = poly(&[(-1, 1), (-2, -1)]);
        let b = poly(&[(6, 1), (5, -1)]);
        assert_eq!(a.gcd(&b), poly(&[(1, 1), (0, -1)]));
    }

    #[test]
    fn divexact_on_laurent_inputs() {
        let a = poly(&[(1, 1), (-1, -1)]);
        let b = poly(&[(0, 1), (-1, -1)]);
        let q = a.divexact(&b).unwrap();
        assert_eq!(q.mul_ref(&b), a);
        assert_eq!(a.divexact(&poly(&[(1, 1), (0, 1), (-1, 1)])), None);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = poly(&[(2, 1), (0, -1)]);
        let b = poly(&[(3, 1), (0, -1)]);
        let (g, u, v) = a.ext_gcd(&b);
        assert_eq!(g, poly(&[(1, 1), (0, -1)]));
        assert_eq!(u.mul_ref(&a).add_ref(&v.mul_ref(&b)), g);
    }

    #[test]
    fn display_descending() {
        let a = poly(&[(3, 1), (1, 1), (-1, 1), (-3, 1)]);
        assert_eq!(a.display_with("t"), "t^3 + t + t^-1 + t^-3");
    }
}
