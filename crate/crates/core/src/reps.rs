//! Representations of the quotient algebras.
//!
//! - [`FockSpace`] / [`FockVector`]: the exact polynomial representation of
//!   the tensor quotient over the one-parameter field, with x_i raising,
//!   y_i lowering by a quantum integer, and z_i, w_i acting diagonally.
//! - [`OscillatorMatrices`]: numeric truncated matrices with square-root
//!   quantum-integer entries, checked against the oscillator relations up
//!   to the truncation edge.
//! - [`BModule`] / [`ZModuleVector`]: the module with basis indexed by the
//!   integers over the subring generated by x^±1 and z^-1 y, its descent
//!   to the zero basis vector, and the bracket generators acting on it.

use crate::gwa::RelationCheck;
use crate::params::{pq_number, Scalar, TScalar};
use ndarray::Array2;
use num::complex::Complex64;
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// One generator symbol acting on the polynomial representation; the z and
/// w symbols carry an integer power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FockOp {
    X(usize),
    Y(usize),
    Z(usize, i64),
    W(usize, i64),
}

/// Linear combination of operator words; a word acts rightmost symbol
/// first, matching how a product of generators acts on the left.
pub type OperatorExpr = Vec<(TScalar, Vec<FockOp>)>;

/// Vector in the polynomial representation: monomial exponents to exact
/// one-parameter scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    terms: BTreeMap<Vec<u32>, TScalar>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector { terms: BTreeMap::new() }
    }

    pub fn vacuum(n: usize) -> Self {
        FockVector::monomial(vec![0; n])
    }

    pub fn monomial(m: Vec<u32>) -> Self {
        FockVector { terms: BTreeMap::from([(m, TScalar::one())]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &TScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> TScalar {
        self.terms.get(m).cloned().unwrap_or_else(TScalar::zero)
    }

    pub fn add_term(&mut self, m: Vec<u32>, c: TScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &TScalar) -> Self {
        if s.is_zero() {
            return FockVector::zero();
        }
        FockVector {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered = crate::engine::fmt_coeff_terms(self.terms.iter().rev().map(|(m, c)| {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| crate::params::power_string(&format!("xi{}", i + 1), e as i64, 1))
                .collect();
            (c.clone(), mono.join("*"))
        }));
        write!(f, "{rendered}")
    }
}

/// The polynomial representation of the n-fold tensor quotient at
/// exponents (r, s), over the exact one-parameter field.
#[derive(Clone, Debug)]
pub struct FockSpace {
    n: usize,
    r: i64,
    s: i64,
    z_sign_flipped: bool,
}

impl FockSpace {
    pub fn new(n: usize, r: i64, s: i64) -> Result<Self, String> {
        if n == 0 {
            return Err("need at least one component".to_string());
        }
        if r < 1 || s < 1 {
            return Err(format!("exponents must be positive, got ({r},{s})"));
        }
        if num::integer::gcd(r, s) != 1 {
            return Err(format!("exponents must be coprime, got ({r},{s})"));
        }
        Ok(FockSpace { n, r, s, z_sign_flipped: false })
    }

    /// Failure sentinel: same data but z_i acts with the opposite exponent
    /// sign, which breaks the defining relation.
    pub fn perturbed(n: usize, r: i64, s: i64) -> Result<Self, String> {
        let mut space = FockSpace::new(n, r, s)?;
        space.z_sign_flipped = true;
        Ok(space)
    }

    pub fn components(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> TScalar {
        TScalar::t_pow(self.r)
    }

    pub fn q(&self) -> TScalar {
        TScalar::t_pow(self.s)
    }

    pub fn beta(&self) -> TScalar {
        (TScalar::one() - TScalar::t_pow(self.r + self.s))
            .inv()
            .expect("pq != 1")
    }

    /// [m] in the one-parameter field, by the recurrence.
    pub fn num(&self, m: u32) -> TScalar {
        let q = self.q();
        let mut acc = TScalar::zero();
        let mut p_down = TScalar::one();
        let p_inv = TScalar::t_pow(-self.r);
        for _ in 0..m {
            acc = q.clone() * acc + p_down.clone();
            p_down = p_down * p_inv.clone();
        }
        acc
    }

    pub fn apply_op(&self, op: FockOp, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (m, c) in v.terms() {
            match op {
                FockOp::X(i) => {
                    assert!(i < self.n);
                    let mut m2 = m.clone();
                    m2[i] += 1;
                    out.add_term(m2, c.clone());
                }
                FockOp::Y(i) => {
                    assert!(i < self.n);
                    if m[i] == 0 {
                        continue;
                    }
                    let mut m2 = m.clone();
                    m2[i] -= 1;
                    out.add_term(m2, c.clone() * self.num(m[i]));
                }
                FockOp::Z(i, k) => {
                    assert!(i < self.n);
                    let sign = if self.z_sign_flipped { 1 } else { -1 };
                    let factor = TScalar::t_pow(sign * self.r * k * m[i] as i64);
                    out.add_term(m.clone(), c.clone() * factor);
                }
                FockOp::W(i, k) => {
                    assert!(i < self.n);
                    let factor = TScalar::t_pow(-self.s * k * m[i] as i64);
                    out.add_term(m.clone(), c.clone() * factor);
                }
            }
        }
        out
    }

    pub fn apply_word(&self, word: &[FockOp], v: &FockVector) -> FockVector {
        let mut out = v.clone();
        for op in word.iter().rev() {
            out = self.apply_op(*op, &out);
        }
        out
    }

    pub fn apply_expr(&self, expr: &OperatorExpr, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (c, word) in expr {
            out = out.add_ref(&self.apply_word(word, v).scale(c));
        }
        out
    }

    fn monomials_up_to(&self, degree: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.n];
        fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, idx: usize, left: u32) {
            if idx == cur.len() {
                out.push(cur.clone());
                return;
            }
            for e in 0..=left {
                cur[idx] = e;
                rec(out, cur, idx + 1, left - e);
            }
            cur[idx] = 0;
        }
        rec(&mut out, &mut cur, 0, degree);
        out
    }

    /// None if the expression annihilates every monomial of total degree
    /// at most `degree`; otherwise a description of the first failure.
    pub fn expr_failure(&self, expr: &OperatorExpr, degree: u32) -> Option<String> {
        for m in self.monomials_up_to(degree) {
            let image = self.apply_expr(expr, &FockVector::monomial(m.clone()));
            if !image.is_zero() {
                return Some(format!("on {} gives {}", FockVector::monomial(m), image));
            }
        }
        None
    }

    /// Every defining relation of the tensor quotient, applied as an
    /// operator to all monomials of total degree at most `degree`; the
    /// cross-component bracket is checked in its uniform form.
    pub fn relation_checks(&self, degree: u32) -> Vec<RelationCheck> {
        let mut failures: BTreeMap<&'static str, String> = BTreeMap::new();
        let mut names: Vec<&'static str> = Vec::new();
        let record = |names: &mut Vec<&'static str>,
                          failures: &mut BTreeMap<&'static str, String>,
                          name: &'static str,
                          comp: String,
                          fail: Option<String>| {
            if !names.contains(&name) {
                names.push(name);
            }
            if let Some(msg) = fail {
                failures.entry(name).or_insert(format!("{comp}: {msg}"));
            }
        };
        for i in 0..self.n {
            for (name, expr) in self.component_relations(i) {
                let fail = self.expr_failure(&expr, degree);
                record(&mut names, &mut failures, name, format!("component {}", i + 1), fail);
            }
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                for (name, expr) in self.cross_relations(i, j) {
                    let fail = self.expr_failure(&expr, degree);
                    record(
                        &mut names,
                        &mut failures,
                        name,
                        format!("components ({},{})", i + 1, j + 1),
                        fail,
                    );
                }
            }
        }
        names
            .into_iter()
            .map(|name| RelationCheck {
                name,
                pass: !failures.contains_key(name),
                witness: failures.get(name).cloned(),
            })
            .collect()
    }

    fn component_relations(&self, i: usize) -> Vec<(&'static str, OperatorExpr)> {
        let one = TScalar::one();
        let p = self.p();
        let q = self.q();
        let p_inv = p.inv().expect("unit");
        let q_inv = q.inv().expect("unit");
        let x = FockOp::X(i);
        let y = FockOp::Y(i);
        let z = FockOp::Z(i, 1);
        let w = FockOp::W(i, 1);
        let quom: OperatorExpr = vec![
            (one.clone(), vec![y, x]),
            (-p_inv.clone(), vec![x, y]),
        ];
        let power_times_zs = |k: u32| -> OperatorExpr {
            let mut acc: OperatorExpr = vec![(one.clone(), vec![])];
            for _ in 0..k {
                acc = expr_mul(&acc, &quom);
            }
            expr_mul(&acc, &vec![(one.clone(), vec![FockOp::Z(i, self.s)])])
        };
        vec![
            ("z-x-twist", vec![
                (one.clone(), vec![z, x]),
                (-p_inv.clone(), vec![x, z]),
            ]),
            ("z-y-twist", vec![
                (one.clone(), vec![z, y]),
                (-p.clone(), vec![y, z]),
            ]),
            ("y-x-q-defining", vec![
                (one.clone(), vec![y, x]),
                (-q.clone(), vec![x, y]),
                (-one.clone(), vec![z]),
            ]),
            ("y-x-p-inverse-unit", vec![
                (one.clone(), vec![y, x]),
                (-p_inv.clone(), vec![x, y]),
                (-one.clone(), vec![FockOp::W(i, -1)]),
            ]),
            ("w-x-twist", vec![
                (one.clone(), vec![w, x]),
                (-q_inv.clone(), vec![x, w]),
            ]),
            ("w-y-twist", vec![
                (one.clone(), vec![w, y]),
                (-q.clone(), vec![y, w]),
            ]),
            ("w-z-commute", vec![
                (one.clone(), vec![w, z]),
                (-one.clone(), vec![z, w]),
            ]),
            ("z-unit-cancels", vec![
                (one.clone(), vec![FockOp::Z(i, 1), FockOp::Z(i, -1)]),
                (-one.clone(), vec![]),
            ]),
            ("w-unit-cancels", vec![
                (one.clone(), vec![FockOp::W(i, 1), FockOp::W(i, -1)]),
                (-one.clone(), vec![]),
            ]),
            ("w-recovered-from-power", {
                let mut e = power_times_zs(self.r as u32 - 1);
                e.push((-one.clone(), vec![w]));
                e
            }),
            ("omega-acts-as-identity", {
                let mut e = power_times_zs(self.r as u32);
                e.push((-one.clone(), vec![]));
                e
            }),
        ]
    }

    fn cross_relations(&self, i: usize, j: usize) -> Vec<(&'static str, OperatorExpr)> {
        let one = TScalar::one();
        let commute = |a: FockOp, b: FockOp| -> OperatorExpr {
            vec![(one.clone(), vec![a, b]), (-one.clone(), vec![b, a])]
        };
        let mut out = vec![
            ("x-x-commute", commute(FockOp::X(i), FockOp::X(j))),
            ("x-y-commute", commute(FockOp::X(i), FockOp::Y(j))),
            ("y-y-commute", commute(FockOp::Y(i), FockOp::Y(j))),
            ("x-z-commute", commute(FockOp::X(i), FockOp::Z(j, 1))),
            ("x-w-commute", commute(FockOp::X(i), FockOp::W(j, 1))),
            ("y-z-commute", commute(FockOp::Y(i), FockOp::Z(j, 1))),
        ];
        out.push(("cross-bracket-uniform", self.cross_bracket_expr(i, j, false)));
        out
    }

    /// [y_i x_j, y_j x_i] minus its right side: the uniform form scales by
    /// p (1-pq)^-1, the literal form keeps only the diagonal term.
    fn cross_bracket_expr(&self, i: usize, j: usize, literal: bool) -> OperatorExpr {
        let one = TScalar::one();
        let mut expr: OperatorExpr = vec![
            (one.clone(), vec![FockOp::Y(i), FockOp::X(j), FockOp::Y(j), FockOp::X(i)]),
            (-one.clone(), vec![FockOp::Y(j), FockOp::X(i), FockOp::Y(i), FockOp::X(j)]),
        ];
        let scale = if literal {
            if i == j { TScalar::one() } else { TScalar::zero() }
        } else {
            self.p() * self.beta()
        };
        if !scale.is_zero() {
            expr.push((-scale.clone(), vec![FockOp::Z(j, 1), FockOp::W(i, -1)]));
            expr.push((scale, vec![FockOp::Z(i, 1), FockOp::W(j, -1)]));
        }
        expr
    }

    /// Does the bracket identity with the delta right side hold up to the
    /// degree bound?
    pub fn cross_identity_literal_holds(&self, i: usize, j: usize, degree: u32) -> bool {
        self.expr_failure(&self.cross_bracket_expr(i, j, true), degree).is_none()
    }

    /// Does the bracket identity with the uniform right side hold?
    pub fn cross_identity_uniform_holds(&self, i: usize, j: usize, degree: u32) -> bool {
        self.expr_failure(&self.cross_bracket_expr(i, j, false), degree).is_none()
    }

    /// Coefficient of the vacuum after applying y_1^{m_1} ... y_n^{m_n} to
    /// the monomial with exponents m; equals the product of quantum
    /// factorials and is never zero.
    pub fn descent(&self, m: &[u32]) -> TScalar {
        assert_eq!(m.len(), self.n);
        let mut v = FockVector::monomial(m.to_vec());
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                v = self.apply_op(FockOp::Y(i), &v);
            }
        }
        v.coeff(&vec![0; self.n])
    }
}

fn expr_mul(a: &OperatorExpr, b: &OperatorExpr) -> OperatorExpr {
    let mut out = Vec::new();
    for (c1, w1) in a {
        for (c2, w2) in b {
            let mut word = w1.clone();
            word.extend_from_slice(w2);
            out.push((c1.clone() * c2.clone(), word));
        }
    }
    out
}

/// Truncated numeric oscillator matrices with quantum-integer entries.
#[derive(Clone, Debug)]
pub struct OscillatorMatrices {
    dim: usize,
    p: f64,
    q: f64,
    pub a: Array2<Complex64>,
    pub a_plus: Array2<Complex64>,
    pub number_op: Array2<Complex64>,
}

/// a has superdiagonal sqrt([k]), a_plus the matching subdiagonal, and the
/// number operator is diagonal; requires dim >= 3 and positive parameters.
pub fn build_oscillator(dim: usize, p: f64, q: f64) -> Result<OscillatorMatrices, String> {
    if dim < 3 {
        return Err(format!("dimension must be at least 3, got {dim}"));
    }
    if p <= 0.0 || q <= 0.0 {
        return Err(format!("parameters must be positive reals, got ({p},{q})"));
    }
    // [k] by the recurrence [k+1] = q[k] + p^{-k}, which avoids the
    // fraction's removable singularity at q = p^{-1}.
    let mut nums = vec![0.0f64; dim + 1];
    for k in 0..dim {
        nums[k + 1] = q * nums[k] + p.powi(-(k as i32));
    }
    let mut a = Array2::<Complex64>::zeros((dim, dim));
    let mut a_plus = Array2::<Complex64>::zeros((dim, dim));
    let mut number_op = Array2::<Complex64>::zeros((dim, dim));
    for k in 0..dim - 1 {
        let root = nums[k + 1].sqrt();
        a[(k, k + 1)] = Complex64::new(root, 0.0);
        a_plus[(k + 1, k)] = Complex64::new(root, 0.0);
    }
    for k in 0..dim {
        number_op[(k, k)] = Complex64::new(k as f64, 0.0);
    }
    Ok(OscillatorMatrices { dim, p, q, a, a_plus, number_op })
}

impl OscillatorMatrices {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    fn diag_power(&self, base: f64, sign: f64) -> Array2<Complex64> {
        let mut out = Array2::<Complex64>::zeros((self.dim, self.dim));
        for k in 0..self.dim {
            out[(k, k)] = Complex64::new(base.powf(sign * k as f64), 0.0);
        }
        out
    }

    /// The diagonal p^{-N} matrix, written L in the power relation.
    pub fn l_matrix(&self) -> Array2<Complex64> {
        self.diag_power(self.p, -1.0)
    }

    /// Largest column residual of sum(c_i M_i) - rhs over basis columns
    /// 0..=last, normalized per column by the largest magnitude entering
    /// the sum so that cancellation is measured against the inputs.
    fn column_residual(
        parts: &[(Complex64, &Array2<Complex64>)],
        rhs: &Array2<Complex64>,
        last: usize,
    ) -> f64 {
        let dim = rhs.nrows();
        let mut worst = 0.0f64;
        for col in 0..=last {
            let mut diff = 0.0f64;
            for row in 0..dim {
                let mut acc = -rhs[(row, col)];
                for (c, m) in parts {
                    acc += *c * m[(row, col)];
                }
                diff += acc.norm_sqr();
            }
            let mut scale = {
                let mut rnorm = 0.0f64;
                for row in 0..dim {
                    rnorm += rhs[(row, col)].norm_sqr();
                }
                1.0f64.max(rnorm.sqrt())
            };
            for (c, m) in parts {
                let mut pnorm = 0.0f64;
                for row in 0..dim {
                    pnorm += (*c * m[(row, col)]).norm_sqr();
                }
                scale = scale.max(pnorm.sqrt());
            }
            worst = worst.max(diff.sqrt() / scale);
        }
        worst
    }

    /// Relative residuals of the four oscillator relations, measured on
    /// all basis columns except the last (the truncation edge).
    pub fn relation_residuals(&self) -> Vec<(&'static str, f64)> {
        let a = &self.a;
        let ap = &self.a_plus;
        let nop = &self.number_op;
        let aap = a.dot(ap);
        let apa = ap.dot(a);
        let nap = nop.dot(ap);
        let apn = ap.dot(nop);
        let na = nop.dot(a);
        let an = a.dot(nop);
        let neg_a = a.mapv(|v| -v);
        let last = self.dim - 2;
        let one = Complex64::new(1.0, 0.0);
        let q = Complex64::new(self.q, 0.0);
        let p_inv = Complex64::new(1.0 / self.p, 0.0);
        vec![
            (
                "lowering-raising-q-twist",
                Self::column_residual(&[(one, &aap), (-q, &apa)], &self.diag_power(self.p, -1.0), last),
            ),
            (
                "lowering-raising-p-twist",
                Self::column_residual(&[(one, &aap), (-p_inv, &apa)], &self.diag_power(self.q, 1.0), last),
            ),
            (
                "number-raises",
                Self::column_residual(&[(one, &nap), (-one, &apn)], ap, last),
            ),
            (
                "number-lowers",
                Self::column_residual(&[(one, &na), (-one, &an)], &neg_a, last),
            ),
        ]
    }

    /// Residual of (a a+ - p^-1 a+ a)^r = L^{-s} with L = p^{-N}, checked
    /// away from the truncation edge; meaningful when p = tau^r, q = tau^s.
    pub fn power_relation_residual(&self, r: u32, s: u32) -> f64 {
        let aap = self.a.dot(&self.a_plus);
        let apa = self.a_plus.dot(&self.a);
        let p_inv = Complex64::new(1.0 / self.p, 0.0);
        let base = &aap - &apa.mapv(|v| v * p_inv);
        let mut lhs = Array2::<Complex64>::eye(self.dim);
        for _ in 0..r {
            lhs = lhs.dot(&base);
        }
        let mut rhs = Array2::<Complex64>::eye(self.dim);
        let l_inv = self.diag_power(self.p, 1.0);
        for _ in 0..s {
            rhs = rhs.dot(&l_inv);
        }
        let last = self.dim - 1 - r as usize;
        let one = Complex64::new(1.0, 0.0);
        Self::column_residual(&[(one, &lhs)], &rhs, last)
    }

    /// Residuals of the diagonal twists L a+ = p^-1 a+ L and L a = p a L,
    /// exact even at the truncation edge.
    pub fn diagonal_twist_residuals(&self) -> Vec<(&'static str, f64)> {
        let l = self.l_matrix();
        let one = Complex64::new(1.0, 0.0);
        let p_inv = Complex64::new(1.0 / self.p, 0.0);
        let p = Complex64::new(self.p, 0.0);
        let last = self.dim - 1;
        let lap = l.dot(&self.a_plus);
        let apl_scaled = self.a_plus.dot(&l).mapv(|v| v * p_inv);
        let la = l.dot(&self.a);
        let al_scaled = self.a.dot(&l).mapv(|v| v * p);
        vec![
            (
                "l-raising-twist",
                Self::column_residual(&[(one, &lap)], &apl_scaled, last),
            ),
            (
                "l-lowering-twist",
                Self::column_residual(&[(one, &la)], &al_scaled, last),
            ),
        ]
    }
}

/// All relation residuals as pass/fail checks at the given tolerance.
pub fn verify_oscillator(mats: &OscillatorMatrices, tol: f64) -> Vec<RelationCheck> {
    mats.relation_residuals()
        .into_iter()
        .map(|(name, residual)| RelationCheck {
            name,
            pass: residual < tol,
            witness: if residual < tol {
                None
            } else {
                Some(format!("residual {residual:.3e} at tolerance {tol:.1e}"))
            },
        })
        .collect()
}

/// Vector in the integer-indexed module: basis index to coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct ZModuleVector {
    terms: BTreeMap<i64, Scalar>,
}

impl ZModuleVector {
    pub fn zero() -> Self {
        ZModuleVector { terms: BTreeMap::new() }
    }

    pub fn basis(k: i64) -> Self {
        ZModuleVector { terms: BTreeMap::from([(k, Scalar::one())]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn min_index(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, k: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
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
        for (&k, c) in other.terms.iter() {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in other.terms.iter() {
            out.add_term(k, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return ZModuleVector::zero();
        }
        ZModuleVector {
            terms: self.terms.iter().map(|(&k, c)| (k, c.clone() * s.clone())).collect(),
        }
    }
}

impl fmt::Display for ZModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered = crate::engine::fmt_coeff_terms(
            self.terms.iter().rev().map(|(&k, c)| (c.clone(), format!("v_{k}"))),
        );
        write!(f, "{rendered}")
    }
}

/// One operator symbol on the integer-indexed module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BOp {
    XPow(i64),
    W,
}

/// The module action over generic parameters: x^i shifts the index and
/// w = z^-1 y lowers it with coefficient p^{k-1} [k], uniformly in k.
#[derive(Clone, Debug, Default)]
pub struct BModule;

impl BModule {
    pub fn new() -> Self {
        BModule
    }

    pub fn x_pow(&self, i: i64, v: &ZModuleVector) -> ZModuleVector {
        ZModuleVector {
            terms: v.terms.iter().map(|(&k, c)| (k + i, c.clone())).collect(),
        }
    }

    /// The uniform lowering coefficient p^{k-1} [k]; it solves the
    /// recursion c_{k+1} - pq c_k = 1 with c_0 = 0 on all of the integers.
    pub fn w_coeff(&self, k: i64) -> Scalar {
        Scalar::p_pow(k - 1) * pq_number(k)
    }

    pub fn w(&self, v: &ZModuleVector) -> ZModuleVector {
        let mut out = ZModuleVector::zero();
        for (&k, c) in v.terms.iter() {
            out.add_term(k - 1, c.clone() * self.w_coeff(k));
        }
        out
    }

    pub fn apply_word(&self, word: &[BOp], v: &ZModuleVector) -> ZModuleVector {
        let mut out = v.clone();
        for op in word.iter().rev() {
            out = match op {
                BOp::XPow(i) => self.x_pow(*i, &out),
                BOp::W => self.w(&out),
            };
        }
        out
    }

    /// (w x - pq x w - 1) applied to v_k; zero for every k validates the
    /// action against the subring relation.
    pub fn annihilation_gap(&self, k: i64) -> ZModuleVector {
        let v = ZModuleVector::basis(k);
        let pq = Scalar::p() * Scalar::q();
        self.w(&self.x_pow(1, &v))
            .sub_ref(&self.x_pow(1, &self.w(&v)).scale(&pq))
            .sub_ref(&v)
    }

    pub fn verify_annihilation(&self, window: i64) -> bool {
        (-window..=window).all(|k| self.annihilation_gap(k).is_zero())
    }

    /// Same gap but with the lowering coefficient replaced on negative
    /// indices by -p^{k+1} q^-1 [-k]; fails at k = -1, which is why that
    /// displayed branch cannot be the module action.
    pub fn displayed_negative_branch_gap(&self, k: i64) -> ZModuleVector {
        let branch_coeff = |k: i64| -> Scalar {
            if k >= 1 {
                self.w_coeff(k)
            } else if k == 0 {
                Scalar::zero()
            } else {
                -(Scalar::p_pow(k + 1) * Scalar::q_pow(-1) * pq_number(-k))
            }
        };
        let apply = |v: &ZModuleVector| -> ZModuleVector {
            let mut out = ZModuleVector::zero();
            for (&k, c) in v.terms.iter() {
                out.add_term(k - 1, c.clone() * branch_coeff(k));
            }
            out
        };
        let v = ZModuleVector::basis(k);
        let pq = Scalar::p() * Scalar::q();
        apply(&self.x_pow(1, &v))
            .sub_ref(&self.x_pow(1, &apply(&v)).scale(&pq))
            .sub_ref(&v)
    }

    /// Shift the support into the naturals with a power of x, then lower
    /// with w until only the zero index remains; returns the number of w
    /// applications and the nonzero coefficient reached at v_0.
    pub fn descent(&self, v: &ZModuleVector) -> (usize, Scalar) {
        assert!(!v.is_zero(), "descent needs a nonzero vector");
        let shift = (-v.min_index().expect("nonzero")).max(0);
        let mut cur = self.x_pow(shift, v);
        let mut steps = 0;
        while cur.max_index().expect("stays nonzero") > 0 {
            cur = self.w(&cur);
            steps += 1;
        }
        let witness = cur.coeff(0);
        assert!(!witness.is_zero(), "descent reached zero");
        (steps, witness)
    }

    /// L_n acting as p^{n+1} x^{n+1} w, so L_n v_k = p^{n+k} [k] v_{k+n}.
    pub fn virasoro_apply(&self, n: i64, v: &ZModuleVector) -> ZModuleVector {
        self.x_pow(n + 1, &self.w(v)).scale(&Scalar::p_pow(n + 1))
    }

    /// Gap of the bracket relation applied to v_k.
    pub fn virasoro_action_gap(&self, n: i64, m: i64, k: i64) -> ZModuleVector {
        let v = ZModuleVector::basis(k);
        let lhs = self
            .virasoro_apply(n, &self.virasoro_apply(m, &v))
            .scale(&Scalar::p_pow(n - m))
            .sub_ref(&self.virasoro_apply(m, &self.virasoro_apply(n, &v)).scale(&Scalar::q_pow(m - n)));
        lhs.sub_ref(&self.virasoro_apply(n + m, &v).scale(&pq_number(m - n)))
    }

    pub fn verify_virasoro_action(&self, n: i64, m: i64, window: i64) -> bool {
        (-window..=window).all(|k| self.virasoro_action_gap(n, m, k).is_zero())
    }
}
