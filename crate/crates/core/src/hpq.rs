//! The quantum Heisenberg algebra on x, y, z in its PBW basis.
//!
//! - [`PBWElement`]: finite sums of `x^i y^j z^k` with nonnegative
//!   exponents and exact scalar coefficients.
//! - [`HpqRing`]: multiplication context; the defining relations are
//!   `zx = p^-1 xz`, `zy = p yz`, `yx = q xy + z`, with the parameters
//!   carried as scalars so that morphism targets such as `(p^-1, q^-1)`
//!   or `(q, p)` share the arithmetic.
//! - Named elements `theta` and `omega`, centrality and normality checks,
//!   reordering-identity verification, down-up relations, algebra
//!   morphisms, the graded twist product, and the root-of-unity
//!   centrality test.

use crate::engine::{self, Ring, TermMap};
use crate::freealg::parser::scalar_half_pow;
use crate::freealg::{FreeElement, Word};
use crate::params::{Scalar, SpecError, Specialization};
use num::{One, Zero};
use std::fmt;

/// An element Σ c_{ijk} x^i y^j z^k with all exponents nonnegative.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct PBWElement {
    pub(crate) terms: TermMap,
}

impl PBWElement {
    pub fn zero() -> Self {
        PBWElement { terms: TermMap::new() }
    }

    pub fn one() -> Self {
        PBWElement::monomial(0, 0, 0)
    }

    pub fn monomial(i: i64, j: i64, k: i64) -> Self {
        assert!(i >= 0 && j >= 0 && k >= 0, "exponents must be nonnegative");
        let mut terms = TermMap::new();
        terms.insert((i, j, k), Scalar::one());
        PBWElement { terms }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut terms = TermMap::new();
        engine::add_term(&mut terms, (0, 0, 0), c);
        PBWElement { terms }
    }

    pub fn x() -> Self {
        PBWElement::monomial(1, 0, 0)
    }

    pub fn y() -> Self {
        PBWElement::monomial(0, 1, 0)
    }

    pub fn z() -> Self {
        PBWElement::monomial(0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64, i64), &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: i64, j: i64, k: i64) -> Scalar {
        self.terms.get(&(i, j, k)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest total degree i + j + k appearing.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|(i, j, k)| i + j + k).max().unwrap_or(0)
    }

    pub fn add_ref(&self, other: &PBWElement) -> PBWElement {
        PBWElement { terms: engine::add_maps(&self.terms, &other.terms) }
    }

    pub fn sub_ref(&self, other: &PBWElement) -> PBWElement {
        PBWElement { terms: engine::sub_maps(&self.terms, &other.terms) }
    }

    pub fn neg_ref(&self) -> PBWElement {
        PBWElement { terms: engine::neg_map(&self.terms) }
    }

    pub fn scale(&self, s: &Scalar) -> PBWElement {
        PBWElement { terms: engine::scale_map(&self.terms, s) }
    }

    /// Reinterpret a free element whose words are already in the normal
    /// order x..x y..y z..z (alphabet ranks 0, 1, 2, no inverses).
    pub fn from_free_normal(e: &FreeElement) -> Option<PBWElement> {
        let mut terms = TermMap::new();
        for (w, c) in e.terms() {
            let (mut i, mut j, mut k) = (0i64, 0i64, 0i64);
            let mut stage = 0u8;
            for l in &w.0 {
                if l.inv {
                    return None;
                }
                if l.rank < stage {
                    return None;
                }
                stage = l.rank;
                match l.rank {
                    0 => i += 1,
                    1 => j += 1,
                    2 => k += 1,
                    _ => return None,
                }
            }
            engine::add_term(&mut terms, (i, j, k), c.clone());
        }
        Some(PBWElement { terms })
    }

    /// Expand into the free algebra on x, y, z (normal words).
    pub fn to_free(&self) -> FreeElement {
        let mut out = FreeElement::zero();
        for (&(i, j, k), c) in self.terms.iter() {
            let mut letters = Vec::with_capacity((i + j + k) as usize);
            for _ in 0..i {
                letters.push(crate::freealg::Letter::plain(0));
            }
            for _ in 0..j {
                letters.push(crate::freealg::Letter::plain(1));
            }
            for _ in 0..k {
                letters.push(crate::freealg::Letter::plain(2));
            }
            out.add_term(Word(letters), c.clone());
        }
        out
    }
}

impl fmt::Display for PBWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", engine::fmt_pbw(&self.terms))
    }
}

/// Which reordering identity to verify: moving y past a power of x, or a
/// power of y past x.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerSide {
    X,
    Y,
}

/// Multiplication context holding the algebra parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct HpqRing {
    pub(crate) ring: Ring,
}

impl HpqRing {
    /// Generic independent parameters p, q.
    pub fn standard() -> Self {
        HpqRing { ring: Ring::generic() }
    }

    /// Same relations with substituted parameter scalars.
    pub fn with_params(p: Scalar, q: Scalar) -> Self {
        HpqRing { ring: Ring::new(p, q) }
    }

    pub fn p(&self) -> &Scalar {
        &self.ring.p
    }

    pub fn q(&self) -> &Scalar {
        &self.ring.q
    }

    /// The quantum integer [n] in this ring's parameters.
    pub fn pq_num(&self, n: i64) -> Scalar {
        self.ring.pq_num(n)
    }

    pub fn mul(&self, f: &PBWElement, g: &PBWElement) -> PBWElement {
        PBWElement { terms: self.ring.mul(&f.terms, &g.terms) }
    }

    pub fn pow(&self, f: &PBWElement, n: u32) -> PBWElement {
        let mut acc = PBWElement::one();
        for _ in 0..n {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// fg - gf.
    pub fn commutator(&self, f: &PBWElement, g: &PBWElement) -> PBWElement {
        self.mul(f, g).sub_ref(&self.mul(g, f))
    }

    /// fg - λ gf.
    pub fn quommutator(&self, f: &PBWElement, g: &PBWElement, lambda: &Scalar) -> PBWElement {
        self.mul(f, g).sub_ref(&self.mul(g, f).scale(lambda))
    }

    /// θ = (1 - pq) yx - z, the normal element spanning the second
    /// height-one prime.
    pub fn theta(&self) -> PBWElement {
        let one_minus_pq =
            Scalar::one() - self.ring.p.clone() * self.ring.q.clone();
        self.mul(&PBWElement::y(), &PBWElement::x())
            .scale(&one_minus_pq)
            .sub_ref(&PBWElement::z())
    }

    /// Ω = (yx - p^-1 xy)^r z^s; requires gcd(r, s) = 1.
    pub fn omega(&self, r: u32, s: u32) -> PBWElement {
        assert!(r >= 1 && s >= 1, "omega needs positive exponents");
        assert_eq!(
            num::integer::gcd(r, s),
            1,
            "omega exponents must be coprime"
        );
        let p_inv = self.ring.p.inv().expect("p invertible");
        let base = self.quommutator(&PBWElement::y(), &PBWElement::x(), &p_inv);
        self.mul(&self.pow(&base, r), &PBWElement::monomial(0, 0, s as i64))
    }

    /// Does f commute with x, y, and z, optionally after specializing the
    /// commutator coefficients?
    pub fn is_central(
        &self,
        f: &PBWElement,
        spec: Option<&Specialization>,
    ) -> Result<bool, SpecError> {
        for g in [PBWElement::x(), PBWElement::y(), PBWElement::z()] {
            let c = self.commutator(f, &g);
            match spec {
                None => {
                    if !c.is_zero() {
                        return Ok(false);
                    }
                }
                Some(s) => {
                    for (_, coeff) in c.terms() {
                        if !s.kills(coeff)? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// Does f satisfy fx = tx·xf, fy = ty·yf, fz = tz·zf?
    pub fn check_normal(&self, f: &PBWElement, twist: &[Scalar; 3]) -> bool {
        let gens = [PBWElement::x(), PBWElement::y(), PBWElement::z()];
        gens.iter().zip(twist.iter()).all(|(g, t)| {
            self.mul(f, g)
                .sub_ref(&self.mul(g, f).scale(t))
                .is_zero()
        })
    }

    /// Closed form of `y x^n` (side X) or `y^n x` (side Y).
    pub fn reorder_closed_form(&self, n: i64, side: PowerSide) -> PBWElement {
        assert!(n >= 1);
        let qn = self.ring.q.pow(n);
        let num = self.pq_num(n);
        match side {
            // y x^n = q^n x^n y + [n] x^{n-1} z
            PowerSide::X => PBWElement::monomial(n, 1, 0)
                .scale(&qn)
                .add_ref(&PBWElement::monomial(n - 1, 0, 1).scale(&num)),
            // y^n x = q^n x y^n + [n] z y^{n-1} = q^n x y^n + [n] p^{n-1} y^{n-1} z
            PowerSide::Y => PBWElement::monomial(1, n, 0).scale(&qn).add_ref(
                &PBWElement::monomial(0, n - 1, 1)
                    .scale(&(num * self.ring.p.pow(n - 1))),
            ),
        }
    }

    /// Rebuild the same product one generator at a time and compare with
    /// the closed form.
    pub fn verify_reorder_identity(&self, n: i64, side: PowerSide) -> bool {
        assert!(n >= 1);
        let repeated = match side {
            PowerSide::X => {
                let mut acc = PBWElement::y();
                for _ in 0..n {
                    acc = self.mul(&acc, &PBWElement::x());
                }
                acc
            }
            PowerSide::Y => {
                let mut acc = PBWElement::x();
                for _ in 0..n {
                    acc = self.mul(&PBWElement::y(), &acc);
                }
                acc
            }
        };
        repeated == self.reorder_closed_form(n, side)
    }

    /// y x^2 - (c xyx - p^-1 q x^2 y): zero exactly when c = p^-1 + q.
    pub fn downup_gap(&self, middle_coeff: &Scalar) -> PBWElement {
        let x = PBWElement::x();
        let y = PBWElement::y();
        let p_inv_q = self.ring.p.inv().expect("p invertible") * self.ring.q.clone();
        let lhs = self.mul(&y, &self.mul(&x, &x));
        let xyx = self.mul(&x, &self.mul(&y, &x));
        let rhs = xyx
            .scale(middle_coeff)
            .sub_ref(&self.mul(&self.mul(&x, &x), &y).scale(&p_inv_q));
        lhs.sub_ref(&rhs)
    }

    /// Both degree-3 down-up relations:
    /// `yx^2 = (p^-1 + q) xyx - p^-1 q x^2 y` and
    /// `y^2 x = (p^-1 + q) yxy - p^-1 q x y^2`.
    pub fn verify_downup(&self) -> bool {
        let x = PBWElement::x();
        let y = PBWElement::y();
        let middle = self.ring.p.inv().expect("p invertible") + self.ring.q.clone();
        let p_inv_q = self.ring.p.inv().expect("p invertible") * self.ring.q.clone();
        if !self.downup_gap(&middle).is_zero() {
            return false;
        }
        let lhs = self.mul(&self.mul(&y, &y), &x);
        let yxy = self.mul(&y, &self.mul(&x, &y));
        let rhs = yxy
            .scale(&middle)
            .sub_ref(&self.mul(&x, &self.mul(&y, &y)).scale(&p_inv_q));
        lhs == rhs
    }

    /// Twist automorphism on one PBW monomial: τ(x) = p^(1/2) x,
    /// τ(y) = p^(-1/2) y, τ(z) = z, so τ^n scales x^i y^j z^k by
    /// p^(n(i-j)/2).
    fn twist_power(&self, n: i64, f: &PBWElement) -> PBWElement {
        let sqrt_p = scalar_half_pow(&self.ring.p, 1)
            .expect("parameter needs a formal square root for the twist");
        let mut terms = TermMap::new();
        for (&(i, j, k), c) in f.terms.iter() {
            let factor = sqrt_p.pow(n * (i - j));
            engine::add_term(&mut terms, (i, j, k), c.clone() * factor);
        }
        PBWElement { terms }
    }

    /// Graded twist product f ∗ g = Σ_n f_n τ^n(g), grading by
    /// deg x = deg y = 1, deg z = 2.
    pub fn zhang_twist_product(&self, f: &PBWElement, g: &PBWElement) -> PBWElement {
        let mut out = PBWElement::zero();
        let mut parts: std::collections::BTreeMap<i64, PBWElement> =
            std::collections::BTreeMap::new();
        for (&(i, j, k), c) in f.terms.iter() {
            let deg = i + j + 2 * k;
            let part = parts.entry(deg).or_insert_with(PBWElement::zero);
            engine::add_term(&mut part.terms, (i, j, k), c.clone());
        }
        for (deg, part) in parts {
            out = out.add_ref(&self.mul(&part, &self.twist_power(deg, g)));
        }
        out
    }

    /// After specializing, are z^n, x^{mn}, y^{mn} all central?
    pub fn root_of_unity_centrality(
        &self,
        n: u32,
        m: u32,
        spec: &Specialization,
    ) -> Result<bool, SpecError> {
        let mn = (m as i64) * (n as i64);
        for f in [
            PBWElement::monomial(0, 0, n as i64),
            PBWElement::monomial(mn, 0, 0),
            PBWElement::monomial(0, mn, 0),
        ] {
            if !self.is_central(&f, Some(spec))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// An algebra map determined by generator images over a target parameter
/// ring; scalars are fixed.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub source: HpqRing,
    pub target: HpqRing,
    pub x_image: PBWElement,
    pub y_image: PBWElement,
    pub z_image: PBWElement,
}

impl AlgebraMorphism {
    pub fn identity(ring: &HpqRing) -> Self {
        AlgebraMorphism {
            source: ring.clone(),
            target: ring.clone(),
            x_image: PBWElement::x(),
            y_image: PBWElement::y(),
            z_image: PBWElement::z(),
        }
    }

    /// x ↦ y, y ↦ x, z ↦ -q z into the algebra with inverted parameters.
    pub fn param_flip(source: &HpqRing) -> Self {
        let target = HpqRing::with_params(
            source.p().inv().expect("p invertible"),
            source.q().inv().expect("q invertible"),
        );
        AlgebraMorphism {
            source: source.clone(),
            target,
            x_image: PBWElement::y(),
            y_image: PBWElement::x(),
            z_image: PBWElement::z().scale(&-source.q().clone()),
        }
    }

    /// x ↦ i√p y, y ↦ i√p x, z ↦ -θ into the algebra with swapped
    /// parameters.
    pub fn param_swap(source: &HpqRing) -> Self {
        let target = HpqRing::with_params(source.q().clone(), source.p().clone());
        let sqrt_p = scalar_half_pow(source.p(), 1)
            .expect("parameter needs a formal square root");
        let c = Scalar::i() * sqrt_p;
        AlgebraMorphism {
            source: source.clone(),
            target: target.clone(),
            x_image: PBWElement::y().scale(&c),
            y_image: PBWElement::x().scale(&c),
            z_image: target.theta().neg_ref(),
        }
    }

    /// The involution of the equal-parameter algebra H_{q,q}:
    /// x ↦ √q y, y ↦ √q x, z ↦ θ.
    pub fn equal_param_involution() -> Self {
        let ring = HpqRing::with_params(Scalar::q(), Scalar::q());
        let sqrt_q = Scalar::sqrt_q();
        AlgebraMorphism {
            source: ring.clone(),
            target: ring.clone(),
            x_image: PBWElement::y().scale(&sqrt_q),
            y_image: PBWElement::x().scale(&sqrt_q),
            z_image: ring.theta(),
        }
    }

    /// Image of an arbitrary element, computed in the target.
    pub fn apply(&self, f: &PBWElement) -> PBWElement {
        let mut out = PBWElement::zero();
        for (&(i, j, k), c) in f.terms.iter() {
            let xi = self.target.pow(&self.x_image, i as u32);
            let yj = self.target.pow(&self.y_image, j as u32);
            let zk = self.target.pow(&self.z_image, k as u32);
            let prod = self.target.mul(&self.target.mul(&xi, &yj), &zk);
            out = out.add_ref(&prod.scale(c));
        }
        out
    }

    /// Do the three source relations map to zero in the target?
    pub fn verify(&self) -> bool {
        let t = &self.target;
        let p_src = self.source.p();
        let q_src = self.source.q();
        let zx = t.mul(&self.z_image, &self.x_image).sub_ref(
            &t.mul(&self.x_image, &self.z_image)
                .scale(&p_src.inv().expect("p invertible")),
        );
        let zy = t
            .mul(&self.z_image, &self.y_image)
            .sub_ref(&t.mul(&self.y_image, &self.z_image).scale(p_src));
        let yx = t
            .mul(&self.y_image, &self.x_image)
            .sub_ref(&t.mul(&self.x_image, &self.y_image).scale(q_src))
            .sub_ref(&self.z_image);
        zx.is_zero() && zy.is_zero() && yx.is_zero()
    }

    /// self ∘ inner; inner's target parameters must match self's source.
    pub fn compose(&self, inner: &AlgebraMorphism) -> AlgebraMorphism {
        assert_eq!(
            inner.target, self.source,
            "composition needs matching middle ring"
        );
        AlgebraMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            x_image: self.apply(&inner.x_image),
            y_image: self.apply(&inner.y_image),
            z_image: self.apply(&inner.z_image),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::pq_number;

    fn r() -> HpqRing {
        HpqRing::standard()
    }

    #[test]
    fn products_match_frozen_forms() {
        let h = r();
        let yx = h.mul(&PBWElement::y(), &PBWElement::x());
        assert_eq!(yx.to_string(), "q*x*y + z");
        let f = h.mul(&yx, &h.theta());
        assert_eq!(h.mul(&PBWElement::one(), &f), f);
        let yx3 = h.mul(&PBWElement::y(), &PBWElement::monomial(3, 0, 0));
        assert_eq!(yx3.coeff(3, 1, 0), Scalar::q().pow(3));
        assert_eq!(yx3.coeff(2, 0, 1), pq_number(3));
        // y^2 x = q^2 x y^2 + [2] zy with zy = p yz.
        let y2x = h.mul(&PBWElement::monomial(0, 2, 0), &PBWElement::x());
        assert_eq!(y2x.coeff(1, 2, 0), Scalar::q().pow(2));
        assert_eq!(y2x.coeff(0, 1, 1), pq_number(2) * Scalar::p());
    }

    #[test]
    fn reorder_identities_hold() {
        let h = r();
        for n in 1..=12 {
            assert!(h.verify_reorder_identity(n, PowerSide::X), "x side n={n}");
            assert!(h.verify_reorder_identity(n, PowerSide::Y), "y side n={n}");
        }
    }

    #[test]
    fn commutators_and_quommutators() {
        let h = r();
        let x = PBWElement::x();
        let y = PBWElement::y();
        assert!(h.commutator(&x, &x).is_zero());
        assert_eq!(h.quommutator(&y, &x, &Scalar::q()), PBWElement::z());
        // yx - p^-1 xy = z + (q - p^-1) xy.
        let g = h.quommutator(&y, &x, &Scalar::p().inv().unwrap());
        assert_eq!(g.coeff(0, 0, 1), Scalar::one());
        assert_eq!(g.coeff(1, 1, 0), Scalar::q() - Scalar::p().inv().unwrap());
    }

    #[test]
    fn theta_normal_form_and_quommutator_scaling() {
        let h = r();
        let theta = h.theta();
        // (1 - pq) yx - z = q(1 - pq) xy - pq z.
        let pq = Scalar::p() * Scalar::q();
        assert_eq!(theta.num_terms(), 2);
        assert_eq!(
            theta.coeff(1, 1, 0),
            Scalar::q() * (Scalar::one() - pq.clone())
        );
        assert_eq!(theta.coeff(0, 0, 1), -pq.clone());
        // θ = -pq (yx - p^-1 xy).
        let g = h.quommutator(
            &PBWElement::y(),
            &PBWElement::x(),
            &Scalar::p().inv().unwrap(),
        );
        assert_eq!(g.scale(&-pq), theta);
    }

    #[test]
    fn theta_collapses_when_pq_is_one() {
        use num::complex::Complex64;
        let spec =
            Specialization::numeric(Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.0))
                .unwrap();
        let theta = r().theta();
        assert!(spec.kills(&theta.coeff(1, 1, 0)).unwrap());
        let z_coeff = spec.apply(&theta.coeff(0, 0, 1)).unwrap();
        assert_eq!(z_coeff.to_string(), "-1");
    }

    #[test]
    fn omega_examples() {
        let h = r();
        let o11 = h.omega(1, 1);
        // (yx - p^-1 xy) z = z^2 + (q - p^-1) xyz.
        assert_eq!(o11.num_terms(), 2);
        assert_eq!(o11.coeff(0, 0, 2), Scalar::one());
        assert_eq!(o11.coeff(1, 1, 1), Scalar::q() - Scalar::p().inv().unwrap());
        // [Ω_{2,3}, x] = (q^2 p^-3 - 1) x Ω.
        let o23 = h.omega(2, 3);
        let c = h.commutator(&o23, &PBWElement::x());
        let unit = Scalar::q().pow(2) * Scalar::p().pow(-3) - Scalar::one();
        assert_eq!(c, h.mul(&PBWElement::x(), &o23).scale(&unit));
    }

    #[test]
    #[should_panic(expected = "coprime")]
    fn omega_rejects_common_factor() {
        r().omega(2, 4);
    }

    #[test]
    fn centrality_generic_and_dependent() {
        let h = r();
        assert!(!h.is_central(&PBWElement::z(), None).unwrap());
        assert!(!h.is_central(&h.omega(2, 3), None).unwrap());
        assert!(h.is_central(&PBWElement::one(), None).unwrap());
        for (rr, ss) in [(1u32, 1u32), (2, 3)] {
            let spec = Specialization::one_param(rr as i64, ss as i64).unwrap();
            assert!(
                h.is_central(&h.omega(rr, ss), Some(&spec)).unwrap(),
                "omega({rr},{ss}) central when q^r = p^s"
            );
        }
        // x^12 is not central without specialization.
        assert!(!h.is_central(&PBWElement::monomial(12, 0, 0), None).unwrap());
    }

    #[test]
    fn normality_checks() {
        let h = r();
        let theta = h.theta();
        let one = Scalar::one;
        assert!(h.check_normal(
            &theta,
            &[Scalar::q(), Scalar::q().inv().unwrap(), one()]
        ));
        assert!(h.check_normal(
            &PBWElement::z(),
            &[Scalar::p().inv().unwrap(), Scalar::p(), one()]
        ));
        let xy = PBWElement::x().add_ref(&PBWElement::y());
        assert!(!h.check_normal(
            &xy,
            &[Scalar::q(), Scalar::q().inv().unwrap(), one()]
        ));
        assert!(!h.check_normal(&xy, &[one(), one(), one()]));
    }

    #[test]
    fn downup_relations() {
        let h = r();
        assert!(h.verify_downup());
        let wrong = Scalar::p() + Scalar::q();
        let gap = h.downup_gap(&wrong);
        // Off by (p - p^-1) xyx.
        let xyx = h.mul(
            &PBWElement::x(),
            &h.mul(&PBWElement::y(), &PBWElement::x()),
        );
        let expected = xyx.scale(&(Scalar::p().inv().unwrap() - Scalar::p()));
        assert_eq!(gap, expected);
        assert!(!gap.is_zero());
        // Classical point p = q = 1 also satisfies the relations.
        let classical = HpqRing::with_params(Scalar::one(), Scalar::one());
        assert!(classical.verify_downup());
    }

    #[test]
    fn morphisms_verify() {
        let h = r();
        assert!(AlgebraMorphism::identity(&h).verify());
        let flip = AlgebraMorphism::param_flip(&h);
        assert!(flip.verify());
        let swap = AlgebraMorphism::param_swap(&h);
        assert!(swap.verify());
        let tau = AlgebraMorphism::equal_param_involution();
        assert!(tau.verify());
        // τ(θ) = pq z = q^2 z on the equal-parameter algebra.
        let theta = tau.source.theta();
        let expect = PBWElement::z().scale(&Scalar::q().pow(2));
        assert_eq!(tau.apply(&theta), expect);
    }

    #[test]
    fn flip_composes_to_identity() {
        let h = r();
        let flip = AlgebraMorphism::param_flip(&h);
        let flip_back = AlgebraMorphism::param_flip(&flip.target);
        let round = flip_back.compose(&flip);
        assert!(round.verify());
        assert_eq!(round.x_image, PBWElement::x());
        assert_eq!(round.y_image, PBWElement::y());
        assert_eq!(round.z_image, PBWElement::z());
    }

    #[test]
    fn twist_product_relations() {
        let h = r();
        let x = PBWElement::x();
        let y = PBWElement::y();
        let z = PBWElement::z();
        let zx = h
            .zhang_twist_product(&z, &x)
            .sub_ref(&h.zhang_twist_product(&x, &z));
        assert!(zx.is_zero());
        let zy = h
            .zhang_twist_product(&z, &y)
            .sub_ref(&h.zhang_twist_product(&y, &z));
        assert!(zy.is_zero());
        let pq = Scalar::p() * Scalar::q();
        let sqrt_p = Scalar::sqrt_p();
        let rel = h
            .zhang_twist_product(&y, &x)
            .sub_ref(&h.zhang_twist_product(&x, &y).scale(&pq))
            .sub_ref(&z.scale(&sqrt_p));
        assert!(rel.is_zero());
    }

    #[test]
    fn root_of_unity_centrality_cases() {
        let h = r();
        let spec = Specialization::Quotient(
            crate::params::QuotientRing::cyclotomic(12, 4, 3).unwrap(),
        );
        assert!(h.root_of_unity_centrality(3, 4, &spec).unwrap());
        // Equal parameters p = q = 1 leave yx = xy + z, so x is not
        // central and the inclusion fails at order one.
        let trivial = Specialization::Quotient(
            crate::params::QuotientRing::cyclotomic(1, 2, 2).unwrap(),
        );
        assert!(!h.root_of_unity_centrality(1, 1, &trivial).unwrap());
        // z alone is central there since p maps to 1.
        assert!(h.is_central(&PBWElement::z(), Some(&trivial)).unwrap());
    }
}
