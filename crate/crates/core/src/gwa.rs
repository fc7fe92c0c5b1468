//! Generalized Weyl algebras over commutative (Laurent) polynomial bases.
//!
//! - [`BasePoly`]: exponent-vector polynomials over any coefficient field,
//!   with per-generator Laurent flags.
//! - [`BaseAuto`]: base-ring automorphism with an explicit inverse, checked
//!   to round-trip on every generator.
//! - [`GWAData`]: one automorphism and one defining element per component;
//!   multi-component data requires commuting automorphisms, each fixing the
//!   other components' defining elements.
//! - [`GWAElement`] and multiplication by the rules `x d = rho(d) x`,
//!   `y d = rho^-1(d) y`, `xy = rho(a)`, `yx = a`, componentwise.
//! - Constructions: the polynomial algebra as a GWA over k[c,z], the
//!   independent-parameter quotient over k[z^±1, w^±1], the dependent
//!   quotient family over k[u^±1] with z = u^r, w = u^s, and its tensor
//!   powers with the cross-commutator identities.

use crate::params::{Coefficient, Scalar, TScalar};
use std::collections::BTreeMap;

/// Declared base-ring generators with display names and Laurent flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseRing {
    names: Vec<String>,
    laurent: Vec<bool>,
}

impl BaseRing {
    pub fn new(names: &[&str], laurent: &[bool]) -> Self {
        assert_eq!(names.len(), laurent.len());
        BaseRing {
            names: names.iter().map(|s| s.to_string()).collect(),
            laurent: laurent.to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.laurent[i]
    }
}

/// Polynomial in the base generators: exponent vector to coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct BasePoly<C: Coefficient> {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, C>,
}

impl<C: Coefficient> BasePoly<C> {
    pub fn zero(nvars: usize) -> Self {
        BasePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut out = BasePoly::zero(nvars);
        out.add_term(vec![0; nvars], c);
        out
    }

    pub fn one(nvars: usize) -> Self {
        BasePoly::constant(nvars, C::one())
    }

    pub fn monomial(exp: Vec<i64>, c: C) -> Self {
        let mut out = BasePoly::zero(exp.len());
        out.add_term(exp, c);
        out
    }

    pub fn gen(nvars: usize, idx: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[idx] = 1;
        BasePoly::monomial(exp, C::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: C) {
        assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        BasePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return BasePoly::zero(self.nvars);
        }
        BasePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = BasePoly::zero(self.nvars);
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in other.terms.iter() {
                let exp: Vec<i64> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(exp, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = BasePoly::one(self.nvars);
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Inverse of a unit (a single monomial with invertible coefficient).
    pub fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().expect("nonempty");
        let cinv = c.inv()?;
        Some(BasePoly::monomial(e.iter().map(|k| -k).collect(), cinv))
    }

    /// Integer power, negative allowed for units.
    pub fn pow_int(&self, k: i64) -> Option<Self> {
        if k >= 0 {
            Some(self.pow(k as u32))
        } else {
            Some(self.inv()?.pow((-k) as u32))
        }
    }

    /// Check Laurent flags: polynomial generators may not go negative.
    pub fn respects(&self, ring: &BaseRing) -> bool {
        self.terms.keys().all(|e| {
            e.iter()
                .enumerate()
                .all(|(i, &k)| k >= 0 || ring.is_laurent(i))
        })
    }

    pub fn display_with(&self, ring: &BaseRing) -> String {
        crate::engine::fmt_coeff_terms(self.terms.iter().rev().map(|(e, c)| {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| crate::params::power_string(ring.name(i), k, 1))
                .collect();
            (c.clone(), mono.join("*"))
        }))
    }

    /// The negation when this is a single term whose coefficient carries a
    /// leading minus, letting display hoist the sign out of the term.
    fn single_negative(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().expect("one term");
        if c.is_single_negative() {
            Some(BasePoly::monomial(e.clone(), -c.clone()))
        } else {
            None
        }
    }
}

/// Base automorphism with explicit inverse, both given on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseAuto<C: Coefficient> {
    images: Vec<BasePoly<C>>,
    inv_images: Vec<BasePoly<C>>,
}

impl<C: Coefficient> BaseAuto<C> {
    pub fn new(images: Vec<BasePoly<C>>, inv_images: Vec<BasePoly<C>>) -> Self {
        assert_eq!(images.len(), inv_images.len());
        let n = images.len();
        let auto = BaseAuto { images, inv_images };
        for g in 0..n {
            let gen = BasePoly::gen(n, g);
            assert_eq!(
                auto.apply(&auto.apply_inv(&gen)),
                gen,
                "inverse images must undo the automorphism"
            );
            assert_eq!(
                auto.apply_inv(&auto.apply(&gen)),
                gen,
                "automorphism must undo its inverse images"
            );
        }
        auto
    }

    pub fn identity(nvars: usize) -> Self {
        let gens: Vec<_> = (0..nvars).map(|g| BasePoly::gen(nvars, g)).collect();
        BaseAuto { images: gens.clone(), inv_images: gens }
    }

    fn subst(images: &[BasePoly<C>], p: &BasePoly<C>) -> BasePoly<C> {
        let n = images.len();
        let mut out = BasePoly::zero(n);
        for (e, c) in p.terms() {
            let mut term = BasePoly::constant(n, c.clone());
            for (g, &k) in e.iter().enumerate() {
                if k != 0 {
                    let factor = images[g]
                        .pow_int(k)
                        .expect("negative power needs a unit image");
                    term = term.mul_ref(&factor);
                }
            }
            out = out.add_ref(&term);
        }
        out
    }

    pub fn apply(&self, p: &BasePoly<C>) -> BasePoly<C> {
        Self::subst(&self.images, p)
    }

    pub fn apply_inv(&self, p: &BasePoly<C>) -> BasePoly<C> {
        Self::subst(&self.inv_images, p)
    }

    /// Apply the k-th power (negative k uses the inverse).
    pub fn apply_power(&self, k: i64, p: &BasePoly<C>) -> BasePoly<C> {
        let mut out = p.clone();
        for _ in 0..k.unsigned_abs() {
            out = if k > 0 { self.apply(&out) } else { self.apply_inv(&out) };
        }
        out
    }

    /// Do two automorphisms commute on every generator?
    pub fn commutes_with(&self, other: &Self) -> bool {
        let n = self.images.len();
        (0..n).all(|g| {
            let gen = BasePoly::gen(n, g);
            self.apply(&other.apply(&gen)) == other.apply(&self.apply(&gen))
        })
    }
}

/// Element written Σ f_d X^d with f_d in the base and X^d the degree-vector
/// monomial (positive entries are x-powers, negative are y-powers).
#[derive(Clone, Debug, PartialEq)]
pub struct GWAElement<C: Coefficient> {
    terms: BTreeMap<Vec<i64>, BasePoly<C>>,
}

impl<C: Coefficient> GWAElement<C> {
    pub fn zero() -> Self {
        GWAElement { terms: BTreeMap::new() }
    }

    pub fn from_parts(deg: Vec<i64>, coeff: BasePoly<C>) -> Self {
        let mut out = GWAElement::zero();
        out.add_part(deg, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BasePoly<C>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, deg: &[i64]) -> Option<&BasePoly<C>> {
        self.terms.get(deg)
    }

    pub fn add_part(&mut self, deg: Vec<i64>, coeff: BasePoly<C>) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(deg) {
            Entry::Occupied(mut e) => {
                let sum = e.get().add_ref(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, f) in other.terms.iter() {
            out.add_part(d.clone(), f.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, f) in other.terms.iter() {
            out.add_part(d.clone(), f.neg_ref());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        GWAElement {
            terms: self.terms.iter().map(|(d, f)| (d.clone(), f.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return GWAElement::zero();
        }
        GWAElement {
            terms: self.terms.iter().map(|(d, f)| (d.clone(), f.scale(s))).collect(),
        }
    }
}

/// Components, automorphisms, and defining elements of one GWA.
#[derive(Clone, Debug)]
pub struct GWAData<C: Coefficient> {
    pub ring: BaseRing,
    rho: Vec<BaseAuto<C>>,
    a: Vec<BasePoly<C>>,
}

impl<C: Coefficient> GWAData<C> {
    pub fn new(ring: BaseRing, rho: Vec<BaseAuto<C>>, a: Vec<BasePoly<C>>) -> Self {
        assert_eq!(rho.len(), a.len(), "one defining element per component");
        assert!(!rho.is_empty());
        for poly in &a {
            assert!(poly.respects(&ring), "defining element breaks Laurent flags");
        }
        for i in 0..rho.len() {
            for j in 0..rho.len() {
                if i == j {
                    continue;
                }
                assert!(
                    rho[i].commutes_with(&rho[j]),
                    "component automorphisms must commute"
                );
                assert_eq!(
                    rho[i].apply(&a[j]),
                    a[j],
                    "each automorphism must fix the other defining elements"
                );
            }
        }
        GWAData { ring, rho, a }
    }

    pub fn components(&self) -> usize {
        self.rho.len()
    }

    pub fn nvars(&self) -> usize {
        self.ring.len()
    }

    pub fn rho(&self, i: usize) -> &BaseAuto<C> {
        &self.rho[i]
    }

    pub fn defining(&self, i: usize) -> &BasePoly<C> {
        &self.a[i]
    }

    pub fn one(&self) -> GWAElement<C> {
        GWAElement::from_parts(vec![0; self.components()], BasePoly::one(self.nvars()))
    }

    pub fn x(&self, i: usize) -> GWAElement<C> {
        let mut deg = vec![0; self.components()];
        deg[i] = 1;
        GWAElement::from_parts(deg, BasePoly::one(self.nvars()))
    }

    pub fn y(&self, i: usize) -> GWAElement<C> {
        let mut deg = vec![0; self.components()];
        deg[i] = -1;
        GWAElement::from_parts(deg, BasePoly::one(self.nvars()))
    }

    pub fn base(&self, p: BasePoly<C>) -> GWAElement<C> {
        GWAElement::from_parts(vec![0; self.components()], p)
    }

    /// Apply rho_1^{d_1} ... rho_n^{d_n}.
    fn sigma(&self, d: &[i64], p: &BasePoly<C>) -> BasePoly<C> {
        let mut out = p.clone();
        for (i, &k) in d.iter().enumerate() {
            if k != 0 {
                out = self.rho[i].apply_power(k, &out);
            }
        }
        out
    }

    /// X^{d1} X^{d2} = extra * X^{d1 + d2}, contracting opposite-sign
    /// powers through `xy = rho(a)` and `yx = a`.
    fn contract(&self, d1: &[i64], d2: &[i64]) -> (Vec<i64>, BasePoly<C>) {
        let mut deg = d1.to_vec();
        let mut extra = BasePoly::one(self.nvars());
        for i in 0..self.components() {
            let mut b = d2[i];
            while b > 0 {
                if deg[i] < 0 {
                    // y^m x = rho^{-(m-1)}(a) y^{m-1}
                    let m = -deg[i];
                    extra = extra.mul_ref(&self.rho[i].apply_power(-(m - 1), &self.a[i]));
                }
                deg[i] += 1;
                b -= 1;
            }
            while b < 0 {
                if deg[i] > 0 {
                    // x^k y = rho^k(a) x^{k-1}
                    let k = deg[i];
                    extra = extra.mul_ref(&self.rho[i].apply_power(k, &self.a[i]));
                }
                deg[i] -= 1;
                b += 1;
            }
        }
        (deg, extra)
    }

    pub fn mul(&self, u: &GWAElement<C>, v: &GWAElement<C>) -> GWAElement<C> {
        let mut out = GWAElement::zero();
        for (d1, f1) in u.terms() {
            for (d2, f2) in v.terms() {
                let moved = self.sigma(d1, f2);
                let (deg, extra) = self.contract(d1, d2);
                out.add_part(deg, f1.mul_ref(&moved).mul_ref(&extra));
            }
        }
        out
    }

    pub fn pow(&self, u: &GWAElement<C>, n: u32) -> GWAElement<C> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, u);
        }
        acc
    }

    pub fn commutator(&self, u: &GWAElement<C>, v: &GWAElement<C>) -> GWAElement<C> {
        self.mul(u, v).sub_ref(&self.mul(v, u))
    }

    pub fn display(&self, u: &GWAElement<C>) -> String {
        let many = self.components() > 1;
        let mut out = String::new();
        for (d, f) in u.terms() {
            let mono: Vec<String> = d
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    let letter = if k > 0 { "x" } else { "y" };
                    let name = if many {
                        format!("{letter}{}", i + 1)
                    } else {
                        letter.to_string()
                    };
                    crate::params::power_string(&name, k.abs(), 1)
                })
                .collect();
            let mono = mono.join("*");
            let (negative, coeff) = match f.single_negative() {
                Some(pos) => (true, pos.display_with(&self.ring)),
                None => (false, f.display_with(&self.ring)),
            };
            let part = if mono.is_empty() {
                coeff
            } else if coeff == "1" {
                mono
            } else if f.num_terms() > 1 {
                format!("({coeff})*{mono}")
            } else {
                format!("{coeff}*{mono}")
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&part);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// One named relation check with an optional failure witness.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

impl RelationCheck {
    fn from_gap<C: Coefficient>(
        name: &'static str,
        data: &GWAData<C>,
        gap: &GWAElement<C>,
    ) -> Self {
        RelationCheck {
            name,
            pass: gap.is_zero(),
            witness: if gap.is_zero() { None } else { Some(data.display(gap)) },
        }
    }
}

/// The polynomial algebra as a GWA over k[c, z] with rho(z) = pz,
/// rho(c) = q^-1 (c - z), and defining element c; the check list verifies
/// the three defining relations and that y x evaluates back to c.
pub fn hpq_as_gwa() -> (GWAData<Scalar>, Vec<RelationCheck>) {
    let ring = BaseRing::new(&["c", "z"], &[false, false]);
    let c = BasePoly::gen(2, 0);
    let z = BasePoly::gen(2, 1);
    let p = Scalar::p();
    let q = Scalar::q();
    let q_inv = q.inv().expect("q invertible");
    let p_inv = p.inv().expect("p invertible");
    // rho(c) = q^-1 (c - z), rho(z) = p z.
    let rho = BaseAuto::new(
        vec![
            c.sub_ref(&z).scale(&q_inv),
            z.scale(&p),
        ],
        // rho^-1(c) = q c + p^-1 z, rho^-1(z) = p^-1 z.
        vec![
            c.scale(&q).add_ref(&z.scale(&p_inv)),
            z.scale(&p_inv),
        ],
    );
    let data = GWAData::new(ring, vec![rho], vec![c.clone()]);

    let xe = data.x(0);
    let ye = data.y(0);
    let ze = data.base(z.clone());
    let mut checks = Vec::new();
    let zx = data
        .mul(&ze, &xe)
        .sub_ref(&data.mul(&xe, &ze).scale(&p_inv));
    checks.push(RelationCheck::from_gap("z-x-twist", &data, &zx));
    let zy = data.mul(&ze, &ye).sub_ref(&data.mul(&ye, &ze).scale(&p));
    checks.push(RelationCheck::from_gap("z-y-twist", &data, &zy));
    let yx = data
        .mul(&ye, &xe)
        .sub_ref(&data.mul(&xe, &ye).scale(&q))
        .sub_ref(&ze);
    checks.push(RelationCheck::from_gap("y-x-defining", &data, &yx));
    let back = data.mul(&ye, &xe).sub_ref(&data.base(c));
    checks.push(RelationCheck::from_gap("yx-evaluates-to-base", &data, &back));
    (data, checks)
}

/// The independent-parameter quotient as a GWA over k[z^±1, w^±1] with
/// rho(z) = pz, rho(w) = qw, a = (1-pq)^-1 (z - pq w^-1); the checks are
/// the six displayed relations.
pub fn apq_indep_gwa() -> (GWAData<Scalar>, Vec<RelationCheck>) {
    let ring = BaseRing::new(&["z", "w"], &[true, true]);
    let z = BasePoly::gen(2, 0);
    let w = BasePoly::gen(2, 1);
    let w_inv = w.inv().expect("unit");
    let p = Scalar::p();
    let q = Scalar::q();
    let p_inv = p.inv().expect("p invertible");
    let q_inv = q.inv().expect("q invertible");
    let pq = p.clone() * q.clone();
    let beta = (Scalar::from_int(1) - pq.clone()).inv().expect("pq != 1");
    let rho = BaseAuto::new(
        vec![z.scale(&p), w.scale(&q)],
        vec![z.scale(&p_inv), w.scale(&q_inv)],
    );
    let a = z.sub_ref(&w_inv.scale(&pq)).scale(&beta);
    let data = GWAData::new(ring, vec![rho], vec![a]);

    let xe = data.x(0);
    let ye = data.y(0);
    let ze = data.base(z);
    let we = data.base(w);
    let winv = data.base(w_inv);
    let mut checks = Vec::new();
    let gap = data
        .mul(&ze, &xe)
        .sub_ref(&data.mul(&xe, &ze).scale(&p_inv));
    checks.push(RelationCheck::from_gap("z-x-twist", &data, &gap));
    let gap = data.mul(&ze, &ye).sub_ref(&data.mul(&ye, &ze).scale(&p));
    checks.push(RelationCheck::from_gap("z-y-twist", &data, &gap));
    let gap = data
        .mul(&we, &xe)
        .sub_ref(&data.mul(&xe, &we).scale(&q_inv));
    checks.push(RelationCheck::from_gap("w-x-twist", &data, &gap));
    let gap = data.mul(&we, &ye).sub_ref(&data.mul(&ye, &we).scale(&q));
    checks.push(RelationCheck::from_gap("w-y-twist", &data, &gap));
    let gap = data
        .mul(&ye, &xe)
        .sub_ref(&data.mul(&xe, &ye).scale(&q))
        .sub_ref(&ze);
    checks.push(RelationCheck::from_gap("y-x-q-defining", &data, &gap));
    let gap = data
        .mul(&ye, &xe)
        .sub_ref(&data.mul(&xe, &ye).scale(&p_inv))
        .sub_ref(&winv);
    checks.push(RelationCheck::from_gap("y-x-p-inverse-unit", &data, &gap));
    (data, checks)
}

/// The dependent-parameter quotient family and its tensor powers over the
/// one-parameter field: each component is a GWA over k[u_i^±1] with
/// z_i = u_i^r, w_i = u_i^s, rho_i(u_i) = t u_i, and defining element
/// a_i = (1 - pq)^-1 (u_i^r - pq u_i^-s) where p = t^r, q = t^s.
#[derive(Clone, Debug)]
pub struct Aprs {
    pub data: GWAData<TScalar>,
    pub r: i64,
    pub s: i64,
}

impl Aprs {
    pub fn new(components: usize, r: i64, s: i64) -> Result<Self, String> {
        if components == 0 {
            return Err("need at least one component".to_string());
        }
        if r < 1 || s < 1 {
            return Err(format!("exponents must be positive, got ({r},{s})"));
        }
        if num::integer::gcd(r, s) != 1 {
            return Err(format!("exponents must be coprime, got ({r},{s})"));
        }
        let n = components;
        let names: Vec<String> = if n == 1 {
            vec!["u".to_string()]
        } else {
            (1..=n).map(|i| format!("u{i}")).collect()
        };
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let ring = BaseRing::new(&name_refs, &vec![true; n]);
        let t = TScalar::t();
        let t_inv = t.inv().expect("t invertible");
        let pq = TScalar::t_pow(r + s);
        let beta = (TScalar::from_int(1) - pq.clone()).inv().expect("pq != 1");
        let mut rho = Vec::new();
        let mut a = Vec::new();
        for i in 0..n {
            let mut images = Vec::new();
            let mut inv_images = Vec::new();
            for g in 0..n {
                let gen = BasePoly::gen(n, g);
                if g == i {
                    images.push(gen.scale(&t));
                    inv_images.push(gen.scale(&t_inv));
                } else {
                    images.push(gen.clone());
                    inv_images.push(gen);
                }
            }
            rho.push(BaseAuto::new(images, inv_images));
            let mut z_exp = vec![0; n];
            z_exp[i] = r;
            let mut w_inv_exp = vec![0; n];
            w_inv_exp[i] = -s;
            let ai = BasePoly::monomial(z_exp, TScalar::from_int(1))
                .sub_ref(&BasePoly::monomial(w_inv_exp, pq.clone()))
                .scale(&beta);
            a.push(ai);
        }
        Ok(Aprs { data: GWAData::new(ring, rho, a), r, s })
    }

    pub fn p(&self) -> TScalar {
        TScalar::t_pow(self.r)
    }

    pub fn q(&self) -> TScalar {
        TScalar::t_pow(self.s)
    }

    pub fn beta(&self) -> TScalar {
        (TScalar::from_int(1) - TScalar::t_pow(self.r + self.s))
            .inv()
            .expect("pq != 1")
    }

    pub fn x(&self, i: usize) -> GWAElement<TScalar> {
        self.data.x(i)
    }

    pub fn y(&self, i: usize) -> GWAElement<TScalar> {
        self.data.y(i)
    }

    fn u_power(&self, i: usize, k: i64) -> GWAElement<TScalar> {
        let mut exp = vec![0; self.data.nvars()];
        exp[i] = k;
        self.data.base(BasePoly::monomial(exp, TScalar::from_int(1)))
    }

    /// z_i = u_i^r.
    pub fn z(&self, i: usize) -> GWAElement<TScalar> {
        self.u_power(i, self.r)
    }

    /// w_i = u_i^s.
    pub fn w(&self, i: usize) -> GWAElement<TScalar> {
        self.u_power(i, self.s)
    }

    pub fn w_inv(&self, i: usize) -> GWAElement<TScalar> {
        self.u_power(i, -self.s)
    }

    pub fn z_inv(&self, i: usize) -> GWAElement<TScalar> {
        self.u_power(i, -self.r)
    }

    /// All single-component defining relations, checked in component `i`.
    pub fn relation_checks(&self, i: usize) -> Vec<RelationCheck> {
        let d = &self.data;
        let p = self.p();
        let q = self.q();
        let p_inv = p.inv().expect("unit");
        let q_inv = q.inv().expect("unit");
        let x = self.x(i);
        let y = self.y(i);
        let z = self.z(i);
        let w = self.w(i);
        let w_inv = self.w_inv(i);
        let mut checks = Vec::new();

        let gap = d.mul(&z, &x).sub_ref(&d.mul(&x, &z).scale(&p_inv));
        checks.push(RelationCheck::from_gap("z-x-twist", d, &gap));
        let gap = d.mul(&z, &y).sub_ref(&d.mul(&y, &z).scale(&p));
        checks.push(RelationCheck::from_gap("z-y-twist", d, &gap));
        let gap = d
            .mul(&y, &x)
            .sub_ref(&d.mul(&x, &y).scale(&q))
            .sub_ref(&z);
        checks.push(RelationCheck::from_gap("y-x-q-defining", d, &gap));
        // (yx - p^-1 xy)^r = z^-s.
        let base = d.mul(&y, &x).sub_ref(&d.mul(&x, &y).scale(&p_inv));
        let gap = d
            .pow(&base, self.r as u32)
            .sub_ref(&self.u_power(i, -self.r * self.s));
        checks.push(RelationCheck::from_gap("quommutator-power-is-z-inverse-power", d, &gap));
        // yx - p^-1 xy = w^-1.
        let gap = base.sub_ref(&w_inv);
        checks.push(RelationCheck::from_gap("quommutator-is-w-inverse", d, &gap));
        // xy = p (1-pq)^-1 (z - w^-1).
        let expect = z.sub_ref(&w_inv).scale(&(p.clone() * self.beta()));
        let gap = d.mul(&x, &y).sub_ref(&expect);
        checks.push(RelationCheck::from_gap("x-y-closed-form", d, &gap));
        let gap = d.mul(&w, &x).sub_ref(&d.mul(&x, &w).scale(&q_inv));
        checks.push(RelationCheck::from_gap("w-x-twist", d, &gap));
        let gap = d.mul(&w, &y).sub_ref(&d.mul(&y, &w).scale(&q));
        checks.push(RelationCheck::from_gap("w-y-twist", d, &gap));
        let gap = d.commutator(&w, &z);
        checks.push(RelationCheck::from_gap("w-z-commute", d, &gap));
        // (yx - p^-1 xy)^{r-1} z^s = w.
        let zs = self.u_power(i, self.r * self.s);
        let gap = d
            .mul(&d.pow(&base, (self.r - 1) as u32), &zs)
            .sub_ref(&w);
        checks.push(RelationCheck::from_gap("w-recovered-from-power", d, &gap));
        // (yx - p^-1 xy)^r z^s = 1: the quotient relation.
        let gap = d.mul(&d.pow(&base, self.r as u32), &zs).sub_ref(&d.one());
        checks.push(RelationCheck::from_gap("omega-maps-to-one", d, &gap));
        checks
    }

    /// [y_i x_j, y_j x_i].
    pub fn cross_commutator(&self, i: usize, j: usize) -> GWAElement<TScalar> {
        let d = &self.data;
        let u = d.mul(&self.y(i), &self.x(j));
        let v = d.mul(&self.y(j), &self.x(i));
        d.commutator(&u, &v)
    }

    /// delta_{ij} (z_j w_i^-1 - z_i w_j^-1): the literal right side.
    pub fn cross_rhs_literal(&self, i: usize, j: usize) -> GWAElement<TScalar> {
        if i != j {
            return GWAElement::zero();
        }
        let d = &self.data;
        d.mul(&self.z(j), &self.w_inv(i))
            .sub_ref(&d.mul(&self.z(i), &self.w_inv(j)))
    }

    /// p (1-pq)^-1 (z_j w_i^-1 - z_i w_j^-1): the uniform right side that
    /// the commutator actually equals for every i, j.
    pub fn cross_rhs_uniform(&self, i: usize, j: usize) -> GWAElement<TScalar> {
        let d = &self.data;
        d.mul(&self.z(j), &self.w_inv(i))
            .sub_ref(&d.mul(&self.z(i), &self.w_inv(j)))
            .scale(&(self.p() * self.beta()))
    }

    /// Gap of the literal identity (zero exactly on the diagonal).
    pub fn cross_gap_literal(&self, i: usize, j: usize) -> GWAElement<TScalar> {
        self.cross_commutator(i, j).sub_ref(&self.cross_rhs_literal(i, j))
    }

    /// Gap of the uniform identity (zero for all i, j).
    pub fn cross_gap_uniform(&self, i: usize, j: usize) -> GWAElement<TScalar> {
        self.cross_commutator(i, j).sub_ref(&self.cross_rhs_uniform(i, j))
    }

    /// Cross-component commutations: x_i, y_i each commute with x_j, y_j,
    /// z_j, w_j for i != j.
    pub fn cross_component_checks(&self, i: usize, j: usize) -> Vec<RelationCheck> {
        assert_ne!(i, j);
        let d = &self.data;
        let pairs: [(&'static str, GWAElement<TScalar>, GWAElement<TScalar>); 6] = [
            ("x-x-commute", self.x(i), self.x(j)),
            ("x-y-commute", self.x(i), self.y(j)),
            ("y-y-commute", self.y(i), self.y(j)),
            ("x-z-commute", self.x(i), self.z(j)),
            ("x-w-commute", self.x(i), self.w(j)),
            ("y-z-commute", self.y(i), self.z(j)),
        ];
        pairs
            .into_iter()
            .map(|(name, u, v)| {
                let gap = d.commutator(&u, &v);
                RelationCheck::from_gap(name, d, &gap)
            })
            .collect()
    }
}

/// Single-component construction with its full relation check list.
pub fn aprs_as_gwa(r: i64, s: i64) -> Result<(Aprs, Vec<RelationCheck>), String> {
    let alg = Aprs::new(1, r, s)?;
    let checks = alg.relation_checks(0);
    Ok((alg, checks))
}

/// n-component tensor power of the dependent-parameter quotient.
pub fn tensor_power(n: usize, r: i64, s: i64) -> Result<Aprs, String> {
    Aprs::new(n, r, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_products() {
        let (data, _) = hpq_as_gwa();
        let x = data.x(0);
        let y = data.y(0);
        let yx = data.mul(&y, &x);
        assert_eq!(yx, data.base(BasePoly::gen(2, 0)));
        let xy = data.mul(&x, &y);
        let expect = data.rho(0).apply(data.defining(0));
        assert_eq!(xy, data.base(expect));
    }

    #[test]
    fn associativity_on_mixed_triples() {
        let (data, _) = hpq_as_gwa();
        let x = data.x(0);
        let y = data.y(0);
        let z = data.base(BasePoly::gen(2, 1));
        let elems = [
            x.clone(),
            y.clone(),
            z.clone(),
            data.mul(&x, &y).add_ref(&z),
            data.mul(&y, &y),
        ];
        for u in &elems {
            for v in &elems {
                for w in &elems {
                    let left = data.mul(&data.mul(u, v), w);
                    let right = data.mul(u, &data.mul(v, w));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn hpq_construction_checks_pass() {
        let (_, checks) = hpq_as_gwa();
        for c in &checks {
            assert!(c.pass, "{} failed: {:?}", c.name, c.witness);
        }
    }

    #[test]
    fn independent_quotient_checks_pass() {
        let (_, checks) = apq_indep_gwa();
        assert_eq!(checks.len(), 6);
        for c in &checks {
            assert!(c.pass, "{} failed: {:?}", c.name, c.witness);
        }
    }

    #[test]
    fn dependent_quotient_families() {
        for (r, s) in [(1i64, 1i64), (1, 2), (2, 3)] {
            let (_, checks) = aprs_as_gwa(r, s).unwrap();
            for c in &checks {
                assert!(c.pass, "({r},{s}) {} failed: {:?}", c.name, c.witness);
            }
        }
        assert!(aprs_as_gwa(2, 4).is_err());
        assert!(aprs_as_gwa(0, 1).is_err());
    }

    #[test]
    fn dependent_defining_element_form() {
        let alg = Aprs::new(1, 1, 1).unwrap();
        // a = (1 - pq)^-1 (u - pq u^-1) with pq = t^2.
        let a = alg.data.defining(0);
        let beta = alg.beta();
        assert_eq!(a.coeff(&[1]), beta.clone());
        assert_eq!(a.coeff(&[-1]), -(beta * TScalar::t_pow(2)));
        // For r=1, s=2 the aqn5 witness is w = u^2, not z = u.
        let alg12 = Aprs::new(1, 1, 2).unwrap();
        let d = &alg12.data;
        let base = d
            .mul(&alg12.y(0), &alg12.x(0))
            .sub_ref(&d.mul(&alg12.x(0), &alg12.y(0)).scale(&alg12.p().inv().unwrap()));
        assert_eq!(base, alg12.w_inv(0));
        assert_eq!(alg12.w(0), alg12.u_power(0, 2));
    }

    #[test]
    fn tensor_cross_identities() {
        let alg = tensor_power(2, 1, 1).unwrap();
        // Diagonal: both forms vanish.
        assert!(alg.cross_gap_literal(0, 0).is_zero());
        assert!(alg.cross_gap_uniform(0, 0).is_zero());
        // Off-diagonal: the literal delta form fails, the uniform form holds.
        let lit = alg.cross_gap_literal(0, 1);
        assert!(!lit.is_zero());
        assert!(alg.cross_gap_uniform(0, 1).is_zero());
        assert!(alg.cross_gap_uniform(1, 0).is_zero());
        // The commutator itself equals p beta (z_2 w_1^-1 - z_1 w_2^-1).
        let comm = alg.cross_commutator(0, 1);
        let pbeta = alg.p() * alg.beta();
        let mut expect = GWAElement::zero();
        expect.add_part(
            vec![0, 0],
            BasePoly::monomial(vec![-1, 1], pbeta.clone())
                .sub_ref(&BasePoly::monomial(vec![1, -1], pbeta)),
        );
        assert_eq!(comm, expect);
    }

    #[test]
    fn tensor_components_commute() {
        for (r, s) in [(1i64, 1i64), (2, 3)] {
            let alg = tensor_power(2, r, s).unwrap();
            for c in alg.cross_component_checks(0, 1) {
                assert!(c.pass, "({r},{s}) {} failed", c.name);
            }
            for i in 0..2 {
                for c in alg.relation_checks(i) {
                    assert!(c.pass, "({r},{s}) comp {i} {} failed", c.name);
                }
            }
        }
    }

    #[test]
    fn laurent_flags_enforced() {
        let ring = BaseRing::new(&["c"], &[false]);
        let ok = BasePoly::<Scalar>::gen(1, 0);
        assert!(ok.respects(&ring));
        let bad = ok.inv().map(|p| p.respects(&ring));
        assert_eq!(bad, Some(false));
    }

    #[test]
    fn three_component_cross_checks() {
        let alg = tensor_power(3, 2, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(alg.cross_gap_uniform(i, j).is_zero(), "uniform ({i},{j})");
                if i == j {
                    assert!(alg.cross_gap_literal(i, j).is_zero());
                } else {
                    assert!(!alg.cross_gap_literal(i, j).is_zero());
                }
            }
        }
    }
}
