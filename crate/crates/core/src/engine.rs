//! Shared reordering kernel for the PBW bases.
//!
//! Both the polynomial algebra (exponents in ℕ³) and its localization
//! (x- and z-exponents in ℤ) multiply through the same closed-form rules:
//!
//! - `z^c x^d = p^{-cd} x^d z^c` and `z^w y^e = p^{ew} y^e z^w`,
//! - `y x^d = q^d x^d y + [d] x^{d-1} z`, iterated to reorder `y^b x^d`,
//!
//! all valid for integer exponents, with `[d]` the quantum integer. The
//! ring carries its parameters as scalars so that morphism targets (for
//! example `p' = p^-1`) reuse the same kernel; quantum integers are
//! computed by the recurrence `[n+1] = p^{-n} + q[n]` rather than the
//! fraction so that nothing divides by a quantity a parameter choice could
//! kill.

use crate::params::{Coefficient, Scalar};
use num::{One, Zero};
use std::collections::BTreeMap;

/// PBW monomial exponents `(i, j, k)` for `x^i y^j z^k`.
pub(crate) type Key = (i64, i64, i64);
pub(crate) type TermMap = BTreeMap<Key, Scalar>;

/// Parameter context for one algebra; `p` and `q` are invertible scalars.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Ring {
    pub p: Scalar,
    pub q: Scalar,
}

impl Ring {
    pub fn new(p: Scalar, q: Scalar) -> Self {
        assert!(!p.is_zero() && !q.is_zero(), "parameters must be invertible");
        Ring { p, q }
    }

    pub fn generic() -> Self {
        Ring::new(Scalar::p(), Scalar::q())
    }

    /// `[n]` in this ring's parameters, for any n ∈ ℤ.
    pub fn pq_num(&self, n: i64) -> Scalar {
        if n == 0 {
            return Scalar::zero();
        }
        let mag = n.unsigned_abs() as i64;
        let pinv = self.p.inv().unwrap();
        let mut acc = Scalar::zero();
        let mut p_down = Scalar::one();
        for _ in 0..mag {
            // [k+1] = q[k] + p^{-k}
            acc = self.q.clone() * acc + p_down.clone();
            p_down = p_down * pinv.clone();
        }
        if n > 0 {
            acc
        } else {
            // [-n] = -(p/q)^n [n]
            let unit = (self.p.clone() * self.q.inv().unwrap()).pow(mag);
            -(unit * acc)
        }
    }

    /// Normal form of `y^b x^d` as (key, coefficient) pairs, keys of the
    /// shape `x^{d-t} y^{b-t} z^t`.
    fn reorder_y_x(&self, b: i64, d: i64) -> Vec<(Key, Scalar)> {
        debug_assert!(b >= 0);
        let mut terms: Vec<(Key, Scalar)> = vec![((d, 0, 0), Scalar::one())];
        for _ in 0..b {
            let mut next: TermMap = BTreeMap::new();
            for ((u, v, w), c) in &terms {
                // y · x^u y^v z^w = q^u x^u y^{v+1} z^w + [u] p^v x^{u-1} y^v z^{w+1}
                add_term(&mut next, (*u, v + 1, *w), self.q.pow(*u) * c.clone());
                let num = self.pq_num(*u);
                if !num.is_zero() {
                    add_term(&mut next, (u - 1, *v, w + 1), num * self.p.pow(*v) * c.clone());
                }
            }
            terms = next.into_iter().collect();
        }
        terms
    }

    /// Product of two PBW monomials, accumulated into `out` with an extra
    /// scalar factor.
    pub fn mono_mul(&self, (a, b, c): Key, (d, e, f): Key, scale: &Scalar, out: &mut TermMap) {
        let base = self.p.pow(-c * d + c * e) * scale.clone();
        for ((u, v, w), coef) in self.reorder_y_x(b, d) {
            let full = base.clone() * self.p.pow(e * w) * coef;
            add_term(out, (a + u, v + e, w + c + f), full);
        }
    }

    pub fn mul(&self, lhs: &TermMap, rhs: &TermMap) -> TermMap {
        let mut out = TermMap::new();
        for (k1, c1) in lhs {
            for (k2, c2) in rhs {
                let scale = c1.clone() * c2.clone();
                self.mono_mul(*k1, *k2, &scale, &mut out);
            }
        }
        out
    }
}

pub(crate) fn add_term(m: &mut TermMap, k: Key, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let entry = m.entry(k).or_insert_with(Scalar::zero);
    *entry = entry.clone() + c;
    if entry.is_zero() {
        m.remove(&k);
    }
}

pub(crate) fn add_maps(a: &TermMap, b: &TermMap) -> TermMap {
    let mut out = a.clone();
    for (k, c) in b {
        add_term(&mut out, *k, c.clone());
    }
    out
}

pub(crate) fn neg_map(a: &TermMap) -> TermMap {
    a.iter().map(|(k, c)| (*k, -c.clone())).collect()
}

pub(crate) fn sub_maps(a: &TermMap, b: &TermMap) -> TermMap {
    add_maps(a, &neg_map(b))
}

pub(crate) fn scale_map(a: &TermMap, s: &Scalar) -> TermMap {
    if s.is_zero() {
        return TermMap::new();
    }
    a.iter().map(|(k, c)| (*k, c.clone() * s.clone())).collect()
}

/// Monomial like `x^2*y*z^-1`; empty string for the constant monomial.
pub(crate) fn monomial_string(vars: &[(&str, i64)]) -> String {
    let mut parts = Vec::new();
    for (name, e) in vars {
        if *e != 0 {
            parts.push(crate::params::power_string(name, *e, 1));
        }
    }
    parts.join("*")
}

/// Renders a sum of (coefficient, monomial) pairs, folding single-term
/// negative coefficients into the separators and parenthesizing compound
/// ones; the iterator supplies terms in display order.
pub(crate) fn fmt_coeff_terms<C: Coefficient>(
    terms: impl Iterator<Item = (C, String)>,
) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let (negative, mag) = if c.is_single_negative() { (true, -c) } else { (false, c) };
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

/// Display order for PBW terms: total degree descending, then x-exponent
/// ascending, then y-exponent ascending.
pub(crate) fn display_order(terms: &TermMap) -> Vec<(Key, Scalar)> {
    let mut v: Vec<(Key, Scalar)> = terms.iter().map(|(k, c)| (*k, c.clone())).collect();
    v.sort_by(|((i1, j1, k1), _), ((i2, j2, k2), _)| {
        let d1 = i1 + j1 + k1;
        let d2 = i2 + j2 + k2;
        d2.cmp(&d1).then(i1.cmp(i2)).then(j1.cmp(j2))
    });
    v
}

pub(crate) fn fmt_pbw(terms: &TermMap) -> String {
    fmt_coeff_terms(display_order(terms).into_iter().map(|((i, j, k), c)| {
        (c, monomial_string(&[("x", i), ("y", j), ("z", k)]))
    }))
}
