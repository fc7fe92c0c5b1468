//! Cross-checks between independent computation paths.
//!
//! - Word rewriting vs PBW multiplication: every word of bounded length
//!   normalizes (letter rewriting) to the same element as multiplying the
//!   letter images in the ordered-basis engine.
//! - Localized arithmetic restricted to nonnegative exponents agrees with
//!   the polynomial engine.
//! - The quantum-plane GWA model multiplies monomial images exactly as the
//!   polynomial engine multiplies the monomials.

use heisenweyl_core::gwa::hpq_as_gwa;
use heisenweyl_core::hpq::{HpqRing, PBWElement};
use heisenweyl_core::localize::{LocalElement, LocalRing};
use heisenweyl_core::params::Scalar;
use heisenweyl_core::{check_overlaps, hpq_rules, FreeElement, GWAData, GWAElement, Word};

/// All words over {x, y, z} of exactly the given length, by rank digits.
fn words_of_length(len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * 3);
        for w in &out {
            for rank in 0u8..3 {
                next.push(w.concat(&Word::single(rank)));
            }
        }
        out = next;
    }
    out
}

#[test]
fn rewriting_and_pbw_multiplication_agree_on_short_words() {
    let rules = hpq_rules(&Scalar::p_pow(-1));
    assert!(check_overlaps(&rules).is_empty());
    let h = HpqRing::standard();
    let images = [PBWElement::x(), PBWElement::y(), PBWElement::z()];
    let mut checked = 0usize;
    for len in 0..=5usize {
        for w in words_of_length(len) {
            let normal = rules.normalize(&FreeElement::from_word(w.clone()));
            let via_rewriting = PBWElement::from_free_normal(&normal)
                .expect("normal form is basis-sorted");
            let mut via_engine = PBWElement::one();
            for letter in &w.0 {
                via_engine = h.mul(&via_engine, &images[letter.rank as usize]);
            }
            assert_eq!(
                via_rewriting,
                via_engine,
                "paths disagree on the word of ranks {:?}",
                w.0
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 364);
}

#[test]
fn localized_products_restrict_to_the_polynomial_engine() {
    let h = HpqRing::standard();
    let lr = LocalRing::standard();
    let span = 0..=2i64;
    for i1 in span.clone() {
        for j1 in span.clone() {
            for k1 in span.clone() {
                for i2 in span.clone() {
                    for j2 in span.clone() {
                        for k2 in span.clone() {
                            let a = PBWElement::monomial(i1, j1, k1);
                            let b = PBWElement::monomial(i2, j2, k2);
                            let direct = h.mul(&a, &b);
                            let localized = lr.mul(
                                &LocalElement::from_pbw(&a),
                                &LocalElement::from_pbw(&b),
                            );
                            assert_eq!(
                                localized.to_pbw(),
                                Some(direct),
                                "disagreement at ({i1},{j1},{k1}) * ({i2},{j2},{k2})"
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Image of a PBW element in the quantum-plane GWA model.
fn into_gwa(data: &GWAData<Scalar>, f: &PBWElement) -> GWAElement<Scalar> {
    let mut out = GWAElement::zero();
    for ((i, j, k), c) in f.terms() {
        let mut term = data.one();
        for _ in 0..*i {
            term = data.mul(&term, &data.x(0));
        }
        for _ in 0..*j {
            term = data.mul(&term, &data.y(0));
        }
        let z_image = data.base(heisenweyl_core::BasePoly::gen(2, 1));
        for _ in 0..*k {
            term = data.mul(&term, &z_image);
        }
        out = out.add_ref(&term.scale(c));
    }
    out
}

#[test]
fn gwa_model_multiplies_like_the_polynomial_engine() {
    let h = HpqRing::standard();
    let (data, checks) = hpq_as_gwa();
    assert!(checks.iter().all(|c| c.pass));
    let mut monomials = Vec::new();
    for i in 0..=3i64 {
        for j in 0..=3 {
            for k in 0..=3 {
                if i + j + k <= 3 {
                    monomials.push(PBWElement::monomial(i, j, k));
                }
            }
        }
    }
    for a in &monomials {
        for b in &monomials {
            let product = h.mul(a, b);
            let lhs = data.mul(&into_gwa(&data, a), &into_gwa(&data, b));
            let rhs = into_gwa(&data, &product);
            assert_eq!(
                lhs,
                rhs,
                "functor breaks at {a} * {b}",
            );
        }
    }
}
