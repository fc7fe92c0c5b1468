//! Sparse bivariate Laurent polynomials over the Gaussian rationals.
//!
//! Keys are exponent pairs `(ep, eq)`. [`crate::params::Scalar`] stores
//! doubled exponents here, so the two variables are really `p^(1/2)` and
//! `q^(1/2)`; this module does not care and treats exponents at face value.
//!
//! The gcd clears unit monomials and then runs a primitive polynomial
//! remainder sequence with the first variable as the main one, over
//! univariate polynomials in the second.

use super::gauss::GaussianRational;
use super::unipoly::UniPoly;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentScalar {
    terms: BTreeMap<(i64, i64), GaussianRational>,
}

/// View of a bivariate poly as a polynomial in the main variable with
/// univariate coefficients. Used by gcd and exact division.
type PolyMain = BTreeMap<i64, UniPoly>;

impl LaurentScalar {
    pub fn zero() -> Self {
        LaurentScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentScalar::monomial(0, 0, GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        LaurentScalar::monomial(0, 0, c)
    }

    pub fn monomial(ep: i64, eq: i64, coeff: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((ep, eq), coeff);
        }
        LaurentScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&(0, 0)).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &GaussianRational)> {
        self.terms.iter()
    }

    /// Terms from the lexicographically largest exponent pair down.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&(i64, i64), &GaussianRational)> {
        self.terms.iter().rev()
    }

    /// Leading term under the lexicographic order on `(ep, eq)`.
    pub fn leading(&self) -> Option<(&(i64, i64), &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, ep: i64, eq: i64, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((ep, eq)).or_insert_with(GaussianRational::zero);
        *entry = entry.add_ref(&coeff);
        if entry.is_zero() {
            self.terms.remove(&(ep, eq));
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((ep, eq), c) in &o.terms {
            out.add_term(*ep, *eq, c.clone());
        }
        out
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((ep, eq), c) in &o.terms {
            out.add_term(*ep, *eq, c.neg_ref());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        LaurentScalar { terms: self.terms.iter().map(|(k, c)| (*k, c.neg_ref())).collect() }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        let mut out = LaurentScalar::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                out.add_term(a1 + a2, b1 + b2, c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return LaurentScalar::zero();
        }
        LaurentScalar { terms: self.terms.iter().map(|(k, v)| (*k, v.mul_ref(c))).collect() }
    }

    /// Multiply by the unit monomial with exponents `(dp, dq)`.
    pub fn shift(&self, dp: i64, dq: i64) -> Self {
        LaurentScalar {
            terms: self.terms.iter().map(|((a, b), c)| ((a + dp, b + dq), c.clone())).collect(),
        }
    }

    /// Componentwise minimal exponents over all terms.
    pub fn min_exps(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            return None;
        }
        let mp = self.terms.keys().map(|&(a, _)| a).min().unwrap();
        let mq = self.terms.keys().map(|&(_, b)| b).min().unwrap();
        Some((mp, mq))
    }

    /// Divide out the unit part: shift minimal exponents to `(0, 0)` and make
    /// the lex-leading coefficient 1.
    pub fn unit_normalized(&self) -> Self {
        match self.min_exps() {
            None => LaurentScalar::zero(),
            Some((mp, mq)) => {
                let shifted = self.shift(-mp, -mq);
                let inv = shifted.leading().unwrap().1.inv().unwrap();
                shifted.scale(&inv)
            }
        }
    }

    fn to_main(&self) -> PolyMain {
        let mut out: PolyMain = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            out.entry(*a).or_insert_with(UniPoly::zero).add_term(*b, c.clone());
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    fn from_main(m: PolyMain) -> Self {
        let mut out = LaurentScalar::zero();
        for (a, poly) in m {
            for (b, c) in poly.terms() {
                out.add_term(a, *b, c.clone());
            }
        }
        out
    }

    /// Exact division: `Some(q)` with `self == q * d`, else `None`.
    pub fn divexact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentScalar::zero());
        }
        if d.is_monomial() {
            let ((dp, dq), dc) = d.leading().unwrap();
            let inv = dc.inv().unwrap();
            return Some(self.shift(-dp, -dq).scale(&inv));
        }
        let (np, nq) = self.min_exps().unwrap();
        let (dp, dq) = d.min_exps().unwrap();
        let f = self.shift(-np, -nq).to_main();
        let g = d.shift(-dp, -dq).to_main();
        let mut rem = f;
        let mut quot: PolyMain = BTreeMap::new();
        let gdeg = *g.keys().next_back().unwrap();
        let glc = g.get(&gdeg).unwrap();
        loop {
            let (rdeg, qc) = match rem.iter().next_back() {
                None => break,
                Some((&rdeg, _)) if rdeg < gdeg => return None,
                Some((&rdeg, rlc)) => (rdeg, rlc.divexact(glc)?),
            };
            let e = rdeg - gdeg;
            // rem -= qc * X^e * g
            for (ge, gc) in &g {
                let prod = qc.mul_ref(gc);
                let slot = rem.entry(ge + e).or_insert_with(UniPoly::zero);
                *slot = slot.sub_ref(&prod);
            }
            rem.retain(|_, v| !v.is_zero());
            let qslot = quot.entry(e).or_insert_with(UniPoly::zero);
            *qslot = qslot.add_ref(&qc);
        }
        if rem.is_empty() {
            Some(LaurentScalar::from_main(quot).shift(np - dp, nq - dq))
        } else {
            None
        }
    }

    /// Gcd up to unit monomials, canonicalized like [`Self::unit_normalized`].
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.unit_normalized();
        }
        if o.is_zero() {
            return self.unit_normalized();
        }
        if self.is_monomial() || o.is_monomial() {
            return LaurentScalar::one();
        }
        let a = self.unit_normalized().to_main();
        let b = o.unit_normalized().to_main();
        let ca = content(&a);
        let cb = content(&b);
        let gc = ca.gcd(&cb);
        let pa = divide_content(&a, &ca);
        let pb = divide_content(&b, &cb);
        let gp = primitive_prs(pa, pb);
        let combined = mul_main_by_unipoly(&gp, &gc);
        LaurentScalar::from_main(combined).unit_normalized()
    }
}

fn deg(f: &PolyMain) -> i64 {
    *f.keys().next_back().expect("degree of zero polynomial")
}

fn content(f: &PolyMain) -> UniPoly {
    let mut g = UniPoly::zero();
    for c in f.values() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_content(f: &PolyMain, c: &UniPoly) -> PolyMain {
    f.iter()
        .map(|(e, v)| (*e, v.divexact(c).expect("content must divide every coefficient")))
        .collect()
}

fn mul_main_by_unipoly(f: &PolyMain, c: &UniPoly) -> PolyMain {
    f.iter().map(|(e, v)| (*e, v.mul_ref(c))).collect()
}

/// One pseudo-remainder step: scales the dividend by powers of `lc(g)` so the
/// division stays inside the polynomial coefficient ring.
fn pseudo_rem(f: &PolyMain, g: &PolyMain) -> PolyMain {
    let gdeg = deg(g);
    let glc = g.get(&gdeg).unwrap().clone();
    let mut r = f.clone();
    while !r.is_empty() && deg(&r) >= gdeg {
        let rdeg = deg(&r);
        let rlc = r.get(&rdeg).unwrap().clone();
        let e = rdeg - gdeg;
        // r := lc(g)*r - lc(r)*X^e*g
        let mut next: PolyMain = BTreeMap::new();
        for (re, rc) in &r {
            next.insert(*re, rc.mul_ref(&glc));
        }
        for (ge, gc) in g {
            let slot = next.entry(ge + e).or_insert_with(UniPoly::zero);
            *slot = slot.sub_ref(&gc.mul_ref(&rlc));
        }
        next.retain(|_, v| !v.is_zero());
        r = next;
    }
    r
}

/// Primitive remainder sequence on content-free inputs; returns the gcd of
/// the primitive parts (1 when they are coprime in the main variable).
fn primitive_prs(mut f: PolyMain, mut g: PolyMain) -> PolyMain {
    if deg(&f) < deg(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if deg(&g) == 0 {
            // A primitive polynomial of main degree 0 is a unit here.
            let mut one = BTreeMap::new();
            one.insert(0, UniPoly::one());
            return one;
        }
        let r = pseudo_rem(&f, &g);
        if r.is_empty() {
            return g;
        }
        let c = content(&r);
        f = g;
        g = divide_content(&r, &c);
    }
}
