//! Free-algebra terms over the scalar field, a quadratic rewriting engine,
//! and an overlap (confluence) checker.
//!
//! - [`Word`]: a monomial of the free algebra on a declared alphabet;
//!   letters may carry an inverse flag where the ambient ring permits.
//! - [`FreeElement`]: finite linear combination of words.
//! - [`RewriteSystem`]: rules with two-letter left sides whose right sides
//!   strictly precede them in the degree-lex order (z > y > x); this makes
//!   leftmost reduction terminate regardless of confluence.
//! - [`check_overlaps`]: reduces every overlap word `abc` both ways and
//!   reports the nonzero differences; an empty report means the rewriting
//!   system resolves all ambiguities.

pub mod parser;

use crate::params::Scalar;
use num::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// Generator alphabet with a fixed significance order (later = greater) and
/// per-letter invertibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<char>,
    invertible: Vec<bool>,
}

impl Alphabet {
    pub fn new(names: &[char], invertible: &[bool]) -> Self {
        assert_eq!(names.len(), invertible.len());
        assert!(names.len() <= u8::MAX as usize);
        Alphabet { names: names.to_vec(), invertible: invertible.to_vec() }
    }

    /// The three-generator alphabet x < y < z, no inverses.
    pub fn xyz() -> Self {
        Alphabet::new(&['x', 'y', 'z'], &[false, false, false])
    }

    /// x, y, z with x and z invertible (the localized algebra).
    pub fn xyz_localized() -> Self {
        Alphabet::new(&['x', 'y', 'z'], &[true, false, true])
    }

    /// x, y and invertible z, w (generalized Weyl presentations).
    pub fn xyzw() -> Self {
        Alphabet::new(&['x', 'y', 'z', 'w'], &[false, false, true, true])
    }

    pub fn rank(&self, name: char) -> Option<u8> {
        self.names.iter().position(|&c| c == name).map(|i| i as u8)
    }

    pub fn name(&self, rank: u8) -> char {
        self.names[rank as usize]
    }

    pub fn is_invertible(&self, rank: u8) -> bool {
        self.invertible[rank as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// One occurrence of a generator; `inv` marks a formal inverse.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Letter {
    pub rank: u8,
    pub inv: bool,
}

impl Letter {
    pub fn plain(rank: u8) -> Self {
        Letter { rank, inv: false }
    }
}

/// A free monomial. Ordered degree-lex: longer words are greater; equal
/// lengths compare letterwise with later alphabet entries greater.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(rank: u8) -> Self {
        Word(vec![Letter::plain(rank)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn has_inverses(&self) -> bool {
        self.0.iter().any(|l| l.inv)
    }

    /// Run-length rendering like `x^2*y*z^-1`; the empty word renders "1".
    pub fn display_with(&self, alphabet: &Alphabet) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut idx = 0;
        while idx < self.0.len() {
            let l = self.0[idx];
            let mut run = 1usize;
            while idx + run < self.0.len() && self.0[idx + run] == l {
                run += 1;
            }
            let exp = if l.inv { -(run as i64) } else { run as i64 };
            parts.push(crate::params::power_string(
                &alphabet.name(l.rank).to_string(),
                exp,
                1,
            ));
            idx += run;
        }
        parts.join("*")
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// A finite linear combination of free words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, Scalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        FreeElement::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Scalar::one());
        FreeElement { terms }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut out = FreeElement::zero();
        out.add_term(Word::empty(), c);
        out
    }

    pub fn generator(rank: u8) -> Self {
        FreeElement::from_word(Word::single(rank))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest word by degree-lex, if any.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    /// Length of the longest word appearing.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add_ref(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in other.terms.iter() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in other.terms.iter() {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> FreeElement {
        FreeElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> FreeElement {
        if c.is_zero() {
            return FreeElement::zero();
        }
        FreeElement {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_ref(&self, other: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w1, c1) in self.terms.iter() {
            for (w2, c2) in other.terms.iter() {
                out.add_term(w1.concat(w2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Nonnegative power by repeated multiplication.
    pub fn pow(&self, n: u32) -> FreeElement {
        let mut out = FreeElement::one();
        for _ in 0..n {
            out = out.mul_ref(self);
        }
        out
    }

    /// Terms from greatest word to least, the canonical print order.
    pub fn display_with(&self, alphabet: &Alphabet) -> String {
        crate::engine::fmt_coeff_terms(
            self.terms
                .iter()
                .rev()
                .map(|(w, c)| (c.clone(), w.display_with(alphabet))),
        )
    }
}

/// A quadratic rule `lhs -> rhs` with `lhs` a two-letter word and every word
/// of `rhs` strictly smaller in the degree-lex order.
#[derive(Clone, Debug)]
pub struct RewriteRule {
    pub lhs: (Letter, Letter),
    pub rhs: FreeElement,
}

impl RewriteRule {
    pub fn new(lhs: (Letter, Letter), rhs: FreeElement) -> Self {
        let lhs_word = Word(vec![lhs.0, lhs.1]);
        assert!(
            !lhs.0.inv && !lhs.1.inv,
            "rewrite left sides use plain letters"
        );
        for (w, _) in rhs.terms() {
            assert!(
                !w.has_inverses(),
                "rewrite right sides use plain letters"
            );
            assert!(
                *w < lhs_word,
                "rewrite right side must precede its left side"
            );
        }
        RewriteRule { lhs, rhs }
    }
}

/// A set of quadratic rules over one alphabet, keyed by left side.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    pub alphabet: Alphabet,
    rules: BTreeMap<(Letter, Letter), FreeElement>,
}

impl RewriteSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<RewriteRule>) -> Self {
        let mut map = BTreeMap::new();
        for r in rules {
            assert!((r.lhs.0.rank as usize) < alphabet.len());
            assert!((r.lhs.1.rank as usize) < alphabet.len());
            let prev = map.insert(r.lhs, r.rhs);
            assert!(prev.is_none(), "duplicate rule left side");
        }
        RewriteSystem { alphabet, rules: map }
    }

    pub fn rules(&self) -> impl Iterator<Item = (&(Letter, Letter), &FreeElement)> {
        self.rules.iter()
    }

    fn find_redex(&self, w: &Word) -> Option<(usize, &FreeElement)> {
        if w.len() < 2 {
            return None;
        }
        for i in 0..w.len() - 1 {
            if let Some(rhs) = self.rules.get(&(w.0[i], w.0[i + 1])) {
                return Some((i, rhs));
            }
        }
        None
    }

    /// Reduce every word until no rule applies, rewriting the leftmost
    /// matching pair first. Terminates because each step strictly lowers
    /// the degree-lex order; the result is linear in the input.
    pub fn normalize(&self, e: &FreeElement) -> FreeElement {
        for (w, _) in e.terms() {
            assert!(
                !w.has_inverses(),
                "rewriting is defined on plain words only"
            );
        }
        let mut done = FreeElement::zero();
        let mut work: Vec<(Word, Scalar)> =
            e.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        while let Some((w, c)) = work.pop() {
            match self.find_redex(&w) {
                None => done.add_term(w, c),
                Some((i, rhs)) => {
                    let prefix = &w.0[..i];
                    let suffix = &w.0[i + 2..];
                    for (rw, rc) in rhs.terms() {
                        let mut v = Vec::with_capacity(prefix.len() + rw.len() + suffix.len());
                        v.extend_from_slice(prefix);
                        v.extend_from_slice(&rw.0);
                        v.extend_from_slice(suffix);
                        work.push((Word(v), c.clone() * rc.clone()));
                    }
                }
            }
        }
        done
    }

    /// True when no rule's left side occurs in any word of `e`.
    pub fn is_normal(&self, e: &FreeElement) -> bool {
        e.terms().all(|(w, _)| self.find_redex(w).is_none())
    }
}

/// One unresolved (or resolved) overlap `abc`: reducing via `ab` first gives
/// `left`, via `bc` first gives `right`; `difference` is their gap after full
/// normalization.
#[derive(Clone, Debug)]
pub struct Overlap {
    pub word: Word,
    pub left: FreeElement,
    pub right: FreeElement,
    pub difference: FreeElement,
}

/// Resolve every three-letter overlap of rule left sides both ways and
/// return those whose normalized reductions disagree.
pub fn check_overlaps(system: &RewriteSystem) -> Vec<Overlap> {
    let mut out = Vec::new();
    for (&(a, b1), rhs1) in system.rules() {
        for (&(b2, c), rhs2) in system.rules() {
            if b1 != b2 {
                continue;
            }
            let word = Word(vec![a, b1, c]);
            let tail = FreeElement::generator(c.rank);
            let head = FreeElement::generator(a.rank);
            let left = system.normalize(&rhs1.mul_ref(&tail));
            let right = system.normalize(&head.mul_ref(rhs2));
            let difference = left.sub_ref(&right);
            if !difference.is_zero() {
                out.push(Overlap { word, left, right, difference });
            }
        }
    }
    out
}

/// The defining rules with the z-x coefficient left adjustable:
/// `yx -> q xy + z`, `zx -> p' xz`, `zy -> p yz`.
pub fn hpq_rules(p_prime: &Scalar) -> RewriteSystem {
    let alphabet = Alphabet::xyz();
    let x = Letter::plain(0);
    let y = Letter::plain(1);
    let z = Letter::plain(2);
    let mut yx_rhs = FreeElement::zero();
    yx_rhs.add_term(Word(vec![x, y]), Scalar::q());
    yx_rhs.add_term(Word(vec![z]), Scalar::one());
    let mut zx_rhs = FreeElement::zero();
    zx_rhs.add_term(Word(vec![x, z]), p_prime.clone());
    let mut zy_rhs = FreeElement::zero();
    zy_rhs.add_term(Word(vec![y, z]), Scalar::p());
    RewriteSystem::new(
        alphabet,
        vec![
            RewriteRule::new((y, x), yx_rhs),
            RewriteRule::new((z, x), zx_rhs),
            RewriteRule::new((z, y), zy_rhs),
        ],
    )
}

impl fmt::Display for Overlap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = Alphabet::xyz();
        write!(
            f,
            "{}: {} vs {}",
            self.word.display_with(&alphabet),
            self.left.display_with(&alphabet),
            self.right.display_with(&alphabet)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Letter {
        Letter::plain(0)
    }
    fn y() -> Letter {
        Letter::plain(1)
    }
    fn z() -> Letter {
        Letter::plain(2)
    }

    fn parse_free(src: &str) -> FreeElement {
        parser::parse_expression(src, &Alphabet::xyz()).unwrap()
    }

    #[test]
    fn word_order_is_degree_lex() {
        let xy = Word(vec![x(), y()]);
        let yx = Word(vec![y(), x()]);
        let zw = Word(vec![z()]);
        assert!(zw < xy, "shorter words come first");
        assert!(xy < yx, "ties break toward later letters");
        assert!(Word(vec![x(), z()]) > Word(vec![x(), y()]));
    }

    #[test]
    fn normalize_defining_relation() {
        let rules = hpq_rules(&Scalar::p().inv().unwrap());
        let yx = FreeElement::from_word(Word(vec![y(), x()]));
        let n = rules.normalize(&yx);
        assert_eq!(n.display_with(&rules.alphabet), "q*x*y + z");
        assert!(rules.is_normal(&n));
    }

    #[test]
    fn normalize_degree_three_example() {
        let rules = hpq_rules(&Scalar::p().inv().unwrap());
        let yxx = FreeElement::from_word(Word(vec![y(), x(), x()]));
        let n = rules.normalize(&yxx);
        assert_eq!(
            n.display_with(&rules.alphabet),
            "q^2*x^2*y + (q + p^-1)*x*z"
        );
    }

    #[test]
    fn normalize_is_idempotent_and_linear() {
        let rules = hpq_rules(&Scalar::p().inv().unwrap());
        let e = parse_free("y*x^2 + z*y*x - 3*x");
        let n = rules.normalize(&e);
        assert_eq!(rules.normalize(&n), n);
        let a = parse_free("y*x^2");
        let b = parse_free("z*y*x - 3*x");
        assert_eq!(
            rules.normalize(&a).add_ref(&rules.normalize(&b)),
            n
        );
        let scaled = rules.normalize(&e.scale(&Scalar::q()));
        assert_eq!(scaled, n.scale(&Scalar::q()));
    }

    #[test]
    fn overlaps_resolve_at_inverse_coefficient() {
        let rules = hpq_rules(&Scalar::p().inv().unwrap());
        let overlaps = check_overlaps(&rules);
        assert!(
            overlaps.is_empty(),
            "expected confluence, got {} unresolved",
            overlaps.len()
        );
    }

    #[test]
    fn overlap_gap_at_equal_coefficient() {
        let rules = hpq_rules(&Scalar::p());
        let overlaps = check_overlaps(&rules);
        assert_eq!(overlaps.len(), 1);
        let o = &overlaps[0];
        assert_eq!(o.word, Word(vec![z(), y(), x()]));
        // Reducing zyx two ways differs by (p p' - 1) z^2 with p' = p.
        let zz = Word(vec![z(), z()]);
        let mut expect = FreeElement::zero();
        expect.add_term(zz, Scalar::p() * Scalar::p() - Scalar::one());
        assert_eq!(o.difference, expect);
    }

    #[test]
    fn overlap_gap_general_coefficient() {
        // With an unrelated z-x coefficient the gap is (p p' - 1) z^2;
        // substituting p' = p^-1 collapses it, matching the clean case.
        let p_prime = Scalar::q() * Scalar::q();
        let rules = hpq_rules(&p_prime);
        let overlaps = check_overlaps(&rules);
        assert_eq!(overlaps.len(), 1);
        let o = &overlaps[0];
        let mut expect = FreeElement::zero();
        expect.add_term(
            Word(vec![z(), z()]),
            Scalar::p() * p_prime - Scalar::one(),
        );
        assert_eq!(o.difference, expect);
    }

    #[test]
    fn single_rule_system_has_no_overlaps() {
        let alphabet = Alphabet::new(&['x', 'y'], &[false, false]);
        let mut rhs = FreeElement::zero();
        rhs.add_term(Word(vec![Letter::plain(0), Letter::plain(1)]), Scalar::q());
        let rules = RewriteSystem::new(
            alphabet,
            vec![RewriteRule::new((Letter::plain(1), Letter::plain(0)), rhs)],
        );
        assert!(check_overlaps(&rules).is_empty());
    }

    #[test]
    fn free_multiplication_concatenates() {
        let a = parse_free("x + y");
        let b = parse_free("x - y");
        let prod = a.mul_ref(&b);
        // Free product keeps xy and yx apart: x^2 - xy + yx - y^2.
        assert_eq!(prod.num_terms(), 4);
        assert_eq!(prod.coeff(&Word(vec![x(), y()])), -Scalar::one());
        assert_eq!(prod.coeff(&Word(vec![y(), x()])), Scalar::one());
    }

    #[test]
    fn display_orders_terms_descending() {
        let e = parse_free("1 + x + z*y");
        assert_eq!(e.display_with(&Alphabet::xyz()), "z*y + x + 1");
    }
}
