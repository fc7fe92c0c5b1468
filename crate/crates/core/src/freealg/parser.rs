//! Expression text parsing and generic evaluation.
//!
//! - Grammar: `expr := term (('+'|'-') term)*`, `term := factor (('*'|'/')
//!   factor)*` with juxtaposition as multiplication, `factor := primary
//!   ('^' exponent)?`, `primary := INT | letter | '(' expr ')' | quantum
//!   integer`.
//! - Quantum integers are written `[n]_{p,q}` (subscript optional) with an
//!   optional factorial mark `!`; exponents are integers or half-integers
//!   in parentheses, such as `^-1` or `^(1/2)`.
//! - Evaluation goes through [`ExprContext`], so one parse serves the scalar
//!   field, the free algebra, and every concrete ring downstream.

use super::{Alphabet, FreeElement, Letter, Word};
use crate::params::{pq_factorial, pq_number, Scalar};
use num::Zero;
use thiserror::Error;

/// Syntax failure with a byte offset into the source text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Failure while evaluating a well-formed expression in a context.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(char),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("no exact half power: {0}")]
    HalfPower(String),
    #[error("domain error: {0}")]
    Domain(String),
}

/// Either stage of expression processing can fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Parsed expression tree, independent of any target ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GAst {
    Int(i64),
    Sym(char),
    PqNum(i64),
    PqFact(i64),
    Neg(Box<GAst>),
    Add(Box<GAst>, Box<GAst>),
    Sub(Box<GAst>, Box<GAst>),
    Mul(Box<GAst>, Box<GAst>),
    Div(Box<GAst>, Box<GAst>),
    /// Base raised to `num/den` with `den` either 1 or 2.
    Pow(Box<GAst>, (i64, i64)),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Bang,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Underscore,
    LBrace,
    RBrace,
    Comma,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                let n: i64 = text.parse().map_err(|_| ParseError {
                    pos: start,
                    msg: format!("integer literal '{text}' out of range"),
                })?;
                out.push((start, Tok::Int(n)));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                out.push((i, Tok::Ident(b as char)));
                i += 1;
            }
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'!' => {
                out.push((i, Tok::Bang));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'[' => {
                out.push((i, Tok::LBracket));
                i += 1;
            }
            b']' => {
                out.push((i, Tok::RBracket));
                i += 1;
            }
            b'_' => {
                out.push((i, Tok::Underscore));
                i += 1;
            }
            b'{' => {
                out.push((i, Tok::LBrace));
                i += 1;
            }
            b'}' => {
                out.push((i, Tok::RBrace));
                i += 1;
            }
            b',' => {
                out.push((i, Tok::Comma));
                i += 1;
            }
            _ => {
                return Err(ParseError {
                    pos: i,
                    msg: format!("unexpected character '{}'", b as char),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.idx).map(|&(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|&(p, _)| p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.idx += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {what}")))
        }
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos(), msg: msg.to_string() }
    }

    fn parse_expr(&mut self) -> Result<GAst, ParseError> {
        let mut node = if self.peek() == Some(Tok::Minus) {
            self.bump();
            GAst::Neg(Box::new(self.parse_term()?))
        } else {
            self.parse_term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    node = GAst::Add(Box::new(node), Box::new(self.parse_term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    node = GAst::Sub(Box::new(node), Box::new(self.parse_term()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn parse_term(&mut self) -> Result<GAst, ParseError> {
        let mut node = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    node = GAst::Mul(Box::new(node), Box::new(self.parse_factor()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    node = GAst::Div(Box::new(node), Box::new(self.parse_factor()?));
                }
                // Juxtaposition: a following primary multiplies in.
                Some(Tok::Int(_))
                | Some(Tok::Ident(_))
                | Some(Tok::LParen)
                | Some(Tok::LBracket) => {
                    node = GAst::Mul(Box::new(node), Box::new(self.parse_factor()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<GAst, ParseError> {
        let base = self.parse_primary()?;
        if self.peek() == Some(Tok::Caret) {
            self.bump();
            let (num, den) = self.parse_exponent()?;
            Ok(GAst::Pow(Box::new(base), (num, den)))
        } else {
            Ok(base)
        }
    }

    fn parse_exponent(&mut self) -> Result<(i64, i64), ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                self.bump();
                Ok((n, 1))
            }
            Some(Tok::Minus) => {
                self.bump();
                match self.peek() {
                    Some(Tok::Int(n)) => {
                        self.bump();
                        Ok((-n, 1))
                    }
                    _ => Err(self.err("expected integer exponent after '-'")),
                }
            }
            Some(Tok::LParen) => {
                self.bump();
                let neg = if self.peek() == Some(Tok::Minus) {
                    self.bump();
                    true
                } else {
                    false
                };
                let num = match self.peek() {
                    Some(Tok::Int(n)) => {
                        self.bump();
                        n
                    }
                    _ => return Err(self.err("expected integer in exponent")),
                };
                let den = if self.peek() == Some(Tok::Slash) {
                    self.bump();
                    match self.peek() {
                        Some(Tok::Int(d)) => {
                            self.bump();
                            d
                        }
                        _ => return Err(self.err("expected exponent denominator")),
                    }
                } else {
                    1
                };
                if den != 1 && den != 2 {
                    return Err(self.err("exponent denominator must be 1 or 2"));
                }
                self.expect(Tok::RParen, "')' closing exponent")?;
                Ok((if neg { -num } else { num }, den))
            }
            _ => Err(self.err("expected exponent")),
        }
    }

    fn parse_primary(&mut self) -> Result<GAst, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                self.bump();
                Ok(GAst::Int(n))
            }
            Some(Tok::Ident(c)) => {
                self.bump();
                Ok(GAst::Sym(c))
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::LBracket) => self.parse_quantum_integer(),
            _ => Err(self.err("expected a number, symbol, or parenthesis")),
        }
    }

    fn parse_quantum_integer(&mut self) -> Result<GAst, ParseError> {
        self.expect(Tok::LBracket, "'['")?;
        let neg = if self.peek() == Some(Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let n = match self.peek() {
            Some(Tok::Int(n)) => {
                self.bump();
                if neg {
                    -n
                } else {
                    n
                }
            }
            _ => return Err(self.err("expected integer inside '[ ]'")),
        };
        self.expect(Tok::RBracket, "']'")?;
        if self.peek() == Some(Tok::Underscore) {
            self.bump();
            self.expect(Tok::LBrace, "'{' after '_'")?;
            match self.peek() {
                Some(Tok::Ident(_)) => {
                    self.bump();
                }
                _ => return Err(self.err("expected parameter letter in subscript")),
            }
            self.expect(Tok::Comma, "',' in subscript")?;
            match self.peek() {
                Some(Tok::Ident(_)) => {
                    self.bump();
                }
                _ => return Err(self.err("expected parameter letter in subscript")),
            }
            self.expect(Tok::RBrace, "'}' closing subscript")?;
        }
        if self.peek() == Some(Tok::Bang) {
            self.bump();
            Ok(GAst::PqFact(n))
        } else {
            Ok(GAst::PqNum(n))
        }
    }
}

/// Parse source text into an expression tree.
pub fn parse(src: &str) -> Result<GAst, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, idx: 0, end: src.len() };
    let ast = p.parse_expr()?;
    if p.idx != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(ast)
}

/// A ring in which parsed expressions can be evaluated.
pub trait ExprContext {
    type Value: Clone;

    fn int(&self, n: i64) -> Self::Value;
    fn sym(&self, name: char) -> Result<Self::Value, EvalError>;
    fn pq_num(&self, n: i64) -> Self::Value;
    fn pq_fact(&self, n: i64) -> Result<Self::Value, EvalError>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError>;
    fn pow(&self, a: &Self::Value, num: i64, den: i64) -> Result<Self::Value, EvalError>;
}

/// Evaluate an expression tree inside a context.
pub fn eval<C: ExprContext>(ast: &GAst, ctx: &C) -> Result<C::Value, EvalError> {
    match ast {
        GAst::Int(n) => Ok(ctx.int(*n)),
        GAst::Sym(c) => ctx.sym(*c),
        GAst::PqNum(n) => Ok(ctx.pq_num(*n)),
        GAst::PqFact(n) => ctx.pq_fact(*n),
        GAst::Neg(a) => Ok(ctx.neg(&eval(a, ctx)?)),
        GAst::Add(a, b) => Ok(ctx.add(&eval(a, ctx)?, &eval(b, ctx)?)),
        GAst::Sub(a, b) => Ok(ctx.sub(&eval(a, ctx)?, &eval(b, ctx)?)),
        GAst::Mul(a, b) => Ok(ctx.mul(&eval(a, ctx)?, &eval(b, ctx)?)),
        GAst::Div(a, b) => ctx.div(&eval(a, ctx)?, &eval(b, ctx)?),
        GAst::Pow(a, (num, den)) => ctx.pow(&eval(a, ctx)?, *num, *den),
    }
}

/// Integer power with a graceful error on negative powers of zero.
pub(crate) fn scalar_int_pow(a: &Scalar, k: i64) -> Result<Scalar, EvalError> {
    if k < 0 && a.is_zero() {
        return Err(EvalError::NotInvertible("zero base".to_string()));
    }
    Ok(a.pow(k))
}

/// Exact `a^(num/2)` for unit Laurent monomials in p, q.
pub(crate) fn scalar_half_pow(a: &Scalar, num: i64) -> Result<Scalar, EvalError> {
    if num % 2 == 0 {
        return scalar_int_pow(a, num / 2);
    }
    let fail = || EvalError::HalfPower(format!("{a}"));
    if !a.is_laurent() {
        return Err(fail());
    }
    let n = a.numerator();
    if n.num_terms() != 1 {
        return Err(fail());
    }
    let (&(dp, dq), c) = n.leading().expect("nonempty");
    if !c.is_one() {
        return Err(fail());
    }
    if (dp * num) % 2 != 0 || (dq * num) % 2 != 0 {
        return Err(fail());
    }
    Ok(Scalar::half_pow(dp * num / 2, dq * num / 2))
}

/// Evaluation into the scalar field itself; symbols p, q, i.
pub struct ScalarContext;

impl ExprContext for ScalarContext {
    type Value = Scalar;

    fn int(&self, n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn sym(&self, name: char) -> Result<Scalar, EvalError> {
        match name {
            'p' => Ok(Scalar::p()),
            'q' => Ok(Scalar::q()),
            'i' => Ok(Scalar::i()),
            _ => Err(EvalError::UnknownSymbol(name)),
        }
    }

    fn pq_num(&self, n: i64) -> Scalar {
        pq_number(n)
    }

    fn pq_fact(&self, n: i64) -> Result<Scalar, EvalError> {
        if n < 0 {
            return Err(EvalError::Domain(format!(
                "factorial of negative index {n}"
            )));
        }
        Ok(pq_factorial(n))
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.clone() + b.clone()
    }

    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.clone() - b.clone()
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        -a.clone()
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.clone() * b.clone()
    }

    fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, EvalError> {
        let binv = b
            .inv()
            .ok_or_else(|| EvalError::NotInvertible("division by zero".to_string()))?;
        Ok(a.clone() * binv)
    }

    fn pow(&self, a: &Scalar, num: i64, den: i64) -> Result<Scalar, EvalError> {
        if den == 1 {
            scalar_int_pow(a, num)
        } else {
            scalar_half_pow(a, num)
        }
    }
}

/// Evaluation into the free algebra on an alphabet; generator letters first,
/// then the scalar symbols p, q, i.
pub struct FreeContext {
    pub alphabet: Alphabet,
}

impl FreeContext {
    /// The single constant coefficient of `a`, if `a` is a constant.
    fn as_constant(a: &FreeElement) -> Option<Scalar> {
        if a.is_zero() {
            return Some(Scalar::zero());
        }
        if a.num_terms() != 1 {
            return None;
        }
        let (w, c) = a.terms().next().expect("nonempty");
        if w.is_empty() {
            Some(c.clone())
        } else {
            None
        }
    }

    fn invert(&self, a: &FreeElement) -> Result<FreeElement, EvalError> {
        if let Some(c) = Self::as_constant(a) {
            let inv = c
                .inv()
                .ok_or_else(|| EvalError::NotInvertible("zero".to_string()))?;
            return Ok(FreeElement::constant(inv));
        }
        if a.num_terms() != 1 {
            return Err(EvalError::NotInvertible(
                "only single terms can be inverted".to_string(),
            ));
        }
        let (w, c) = a.terms().next().expect("nonempty");
        for l in &w.0 {
            if !self.alphabet.is_invertible(l.rank) {
                return Err(EvalError::NotInvertible(format!(
                    "generator '{}' is not invertible here",
                    self.alphabet.name(l.rank)
                )));
            }
        }
        let inv_word = Word(
            w.0.iter()
                .rev()
                .map(|l| Letter { rank: l.rank, inv: !l.inv })
                .collect(),
        );
        let cinv = c
            .inv()
            .ok_or_else(|| EvalError::NotInvertible("zero coefficient".to_string()))?;
        let mut out = FreeElement::zero();
        out.add_term(inv_word, cinv);
        Ok(out)
    }
}

impl ExprContext for FreeContext {
    type Value = FreeElement;

    fn int(&self, n: i64) -> FreeElement {
        FreeElement::constant(Scalar::from_int(n))
    }

    fn sym(&self, name: char) -> Result<FreeElement, EvalError> {
        if let Some(rank) = self.alphabet.rank(name) {
            return Ok(FreeElement::generator(rank));
        }
        match name {
            'p' => Ok(FreeElement::constant(Scalar::p())),
            'q' => Ok(FreeElement::constant(Scalar::q())),
            'i' => Ok(FreeElement::constant(Scalar::i())),
            _ => Err(EvalError::UnknownSymbol(name)),
        }
    }

    fn pq_num(&self, n: i64) -> FreeElement {
        FreeElement::constant(pq_number(n))
    }

    fn pq_fact(&self, n: i64) -> Result<FreeElement, EvalError> {
        if n < 0 {
            return Err(EvalError::Domain(format!(
                "factorial of negative index {n}"
            )));
        }
        Ok(FreeElement::constant(pq_factorial(n)))
    }

    fn add(&self, a: &FreeElement, b: &FreeElement) -> FreeElement {
        a.add_ref(b)
    }

    fn sub(&self, a: &FreeElement, b: &FreeElement) -> FreeElement {
        a.sub_ref(b)
    }

    fn neg(&self, a: &FreeElement) -> FreeElement {
        a.neg_ref()
    }

    fn mul(&self, a: &FreeElement, b: &FreeElement) -> FreeElement {
        a.mul_ref(b)
    }

    fn div(&self, a: &FreeElement, b: &FreeElement) -> Result<FreeElement, EvalError> {
        let inv = self.invert(b)?;
        Ok(a.mul_ref(&inv))
    }

    fn pow(&self, a: &FreeElement, num: i64, den: i64) -> Result<FreeElement, EvalError> {
        if den == 2 {
            let c = Self::as_constant(a).ok_or_else(|| {
                EvalError::HalfPower("half powers apply to scalars only".to_string())
            })?;
            return Ok(FreeElement::constant(scalar_half_pow(&c, num)?));
        }
        if num >= 0 {
            Ok(a.pow(num as u32))
        } else {
            let inv = self.invert(a)?;
            Ok(inv.pow((-num) as u32))
        }
    }
}

/// Parse and evaluate text as a free-algebra element over `alphabet`.
pub fn parse_expression(src: &str, alphabet: &Alphabet) -> Result<FreeElement, ExprError> {
    let ast = parse(src)?;
    let ctx = FreeContext { alphabet: alphabet.clone() };
    Ok(eval(&ast, &ctx)?)
}

/// Parse and evaluate text as a scalar.
pub fn parse_scalar(src: &str) -> Result<Scalar, ExprError> {
    let ast = parse(src)?;
    Ok(eval(&ast, &ScalarContext)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;

    #[test]
    fn scalar_expressions_evaluate_exactly() {
        assert_eq!(parse_scalar("[4]_{p,q}").unwrap(), pq_number(4));
        assert_eq!(parse_scalar("[-3]_{p,q}").unwrap(), pq_number(-3));
        assert_eq!(parse_scalar("[3]_{p,q}!").unwrap(), pq_factorial(3));
        assert_eq!(parse_scalar("2^3").unwrap(), Scalar::from_int(8));
        assert_eq!(parse_scalar("i^2").unwrap(), Scalar::from_int(-1));
        assert_eq!(
            parse_scalar("(1 - p*q)^(-1)").unwrap(),
            (Scalar::one() - Scalar::p() * Scalar::q()).inv().unwrap()
        );
        assert_eq!(parse_scalar("p^(1/2)").unwrap(), Scalar::sqrt_p());
        assert_eq!(
            parse_scalar("p^(-3/2)").unwrap(),
            Scalar::half_pow(-3, 0)
        );
        assert_eq!(
            parse_scalar("q + p^-1").unwrap().to_string(),
            "q + p^-1"
        );
        assert_eq!(
            parse_scalar("-1/(p*q - 1)").unwrap().to_string(),
            "-1/(p*q - 1)"
        );
    }

    #[test]
    fn quantum_integer_subscript_is_optional() {
        assert_eq!(parse_scalar("[5]").unwrap(), pq_number(5));
    }

    #[test]
    fn juxtaposition_multiplies() {
        assert_eq!(
            parse_scalar("2p").unwrap(),
            Scalar::from_int(2) * Scalar::p()
        );
    }

    #[test]
    fn free_elements_build_words() {
        let alphabet = Alphabet::xyz();
        let e = parse_expression("q*x*y + z", &alphabet).unwrap();
        assert_eq!(e.num_terms(), 2);
        assert_eq!(e.display_with(&alphabet), "q*x*y + z");
        let sq = parse_expression("(x + y)^2", &alphabet).unwrap();
        assert_eq!(sq.num_terms(), 4);
        let pow = parse_expression("x^2*y", &alphabet).unwrap();
        let x = Letter::plain(0);
        let y = Letter::plain(1);
        assert_eq!(pow.coeff(&Word(vec![x, x, y])), Scalar::one());
    }

    #[test]
    fn inverses_require_invertible_generators() {
        let plain = Alphabet::xyz();
        let err = parse_expression("x^-1", &plain).unwrap_err();
        assert!(matches!(err, ExprError::Eval(EvalError::NotInvertible(_))));
        let localized = Alphabet::xyz_localized();
        let e = parse_expression("z^-1*y", &localized).unwrap();
        let z_inv = Letter { rank: 2, inv: true };
        let y = Letter::plain(1);
        assert_eq!(e.coeff(&Word(vec![z_inv, y])), Scalar::one());
        assert_eq!(e.display_with(&localized), "z^-1*y");
        let sq = parse_expression("(x*z)^-2", &localized).unwrap();
        assert_eq!(sq.num_terms(), 1);
        let (w, _) = sq.terms().next().unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.0.iter().all(|l| l.inv));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("y *").unwrap_err();
        assert_eq!(err.pos, 3);
        let err = parse("[3").unwrap_err();
        assert_eq!(err.pos, 2);
        let err = parse("x $ y").unwrap_err();
        assert_eq!(err.pos, 2);
        let err = parse("p^(1/3)").unwrap_err();
        assert!(err.msg.contains("denominator"));
    }

    #[test]
    fn unknown_generators_are_rejected() {
        let err = parse_expression("x + a", &Alphabet::xyz()).unwrap_err();
        assert!(matches!(
            err,
            ExprError::Eval(EvalError::UnknownSymbol('a'))
        ));
    }

    #[test]
    fn unary_minus_binds_whole_leading_term() {
        assert_eq!(
            parse_scalar("-p*q + 1").unwrap(),
            Scalar::one() - Scalar::p() * Scalar::q()
        );
    }
}
