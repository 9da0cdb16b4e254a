//! Parsing: presentation documents (JSON), coefficient expressions, element
//! expressions, order specifications, and small vector/matrix literals.
//!
//! Grammar for elements (and, without generators, for coefficients):
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' SINT)?
//! atom   := UINT | UINT '/' UINT | t<k> | x<i> | '(' expr ')'
//! ```
//!
//! Multiplication is the (noncommutative) ring product; parsing an element
//! already normalizes it. Division and negative powers require the divisor
//! to normalize to an invertible monomial (a unit constant, or a monomial in
//! the Laurent generators).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coeffs::{is_prime_u64, Automorphism, Derivation, FieldMode, Scalar};
use crate::elements::{monomial_inverse, Element};
use crate::exponents::{ExponentVector, MonomialOrder};
use crate::presentation::{LowerTerm, Presentation};

use super::FrontendError;

// ---- tokens ----

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, FrontendError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = BigInt::from_str_radix(&text[start..i], 10)
                    .expect("digits form a valid integer");
                out.push((start, Token::Int(n)));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
            }
            other => {
                return Err(FrontendError::Syntax {
                    position: i,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(out)
}

struct Tokens {
    toks: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Tokens {
    fn new(text: &str) -> Result<Self, FrontendError> {
        let toks = tokenize(text)?;
        Ok(Tokens {
            toks,
            pos: 0,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Token) -> Result<(), FrontendError> {
        let position = self.position();
        match self.next() {
            Some(t) if t == tok => Ok(()),
            other => Err(FrontendError::Syntax {
                position,
                message: format!("expected {tok:?}, found {other:?}"),
            }),
        }
    }

    fn finish(&self) -> Result<(), FrontendError> {
        if self.pos != self.toks.len() {
            return Err(FrontendError::Syntax {
                position: self.position(),
                message: "trailing input".to_string(),
            });
        }
        Ok(())
    }

    /// A signed integer literal, used after '^'.
    fn signed_int(&mut self) -> Result<BigInt, FrontendError> {
        let position = self.position();
        match self.next() {
            Some(Token::Int(n)) => Ok(n),
            Some(Token::Minus) => match self.next() {
                Some(Token::Int(n)) => Ok(-n),
                other => Err(FrontendError::Syntax {
                    position,
                    message: format!("expected integer after '-', found {other:?}"),
                }),
            },
            other => Err(FrontendError::Syntax {
                position,
                message: format!("expected integer exponent, found {other:?}"),
            }),
        }
    }
}

/// Identifier classification: parameter t<k> or generator x<i> (1-based).
fn classify_ident(name: &str) -> Option<(char, usize)> {
    let mut chars = name.chars();
    let head = chars.next()?;
    if head != 't' && head != 'x' {
        return None;
    }
    let rest: String = chars.collect();
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    rest.parse::<usize>().ok().map(|k| (head, k))
}

// ---- coefficient expressions ----

/// Parse a coefficient expression (no generators) in the given mode.
pub fn parse_coefficient<K: Scalar>(text: &str, mode: &FieldMode) -> Result<K, FrontendError> {
    let mut toks = Tokens::new(text)?;
    let v = coeff_expr(&mut toks, mode)?;
    toks.finish()?;
    Ok(v)
}

fn coeff_expr<K: Scalar>(toks: &mut Tokens, mode: &FieldMode) -> Result<K, FrontendError> {
    let mut negate = false;
    if toks.peek() == Some(&Token::Minus) {
        toks.next();
        negate = true;
    }
    let mut acc: K = coeff_term(toks, mode)?;
    if negate {
        acc = acc.neg();
    }
    loop {
        match toks.peek() {
            Some(Token::Plus) => {
                toks.next();
                let rhs = coeff_term(toks, mode)?;
                acc = acc.add(&rhs);
            }
            Some(Token::Minus) => {
                toks.next();
                let rhs = coeff_term(toks, mode)?;
                acc = acc.sub(&rhs);
            }
            _ => return Ok(acc),
        }
    }
}

fn coeff_term<K: Scalar>(toks: &mut Tokens, mode: &FieldMode) -> Result<K, FrontendError> {
    let mut acc: K = coeff_factor(toks, mode)?;
    loop {
        match toks.peek() {
            Some(Token::Star) => {
                toks.next();
                let rhs = coeff_factor(toks, mode)?;
                acc = acc.mul(&rhs);
            }
            Some(Token::Slash) => {
                toks.next();
                let rhs: K = coeff_factor(toks, mode)?;
                acc = acc.mul(&rhs.inverse()?);
            }
            _ => return Ok(acc),
        }
    }
}

fn coeff_factor<K: Scalar>(toks: &mut Tokens, mode: &FieldMode) -> Result<K, FrontendError> {
    let base: K = coeff_atom(toks, mode)?;
    if toks.peek() == Some(&Token::Caret) {
        toks.next();
        let k = toks.signed_int()?;
        return Ok(base.pow_int(&k)?);
    }
    Ok(base)
}

fn coeff_atom<K: Scalar>(toks: &mut Tokens, mode: &FieldMode) -> Result<K, FrontendError> {
    let position = toks.position();
    match toks.next() {
        Some(Token::Int(n)) => Ok(K::from_integer(mode, &n)?),
        Some(Token::Ident(name)) => match classify_ident(&name) {
            Some(('t', k)) if k >= 1 => Ok(K::parameter(mode, k - 1)?),
            _ => Err(FrontendError::Syntax {
                position,
                message: format!("unknown symbol '{name}' in a coefficient"),
            }),
        },
        Some(Token::LParen) => {
            let v = coeff_expr(toks, mode)?;
            toks.expect(Token::RParen)?;
            Ok(v)
        }
        other => Err(FrontendError::Syntax {
            position,
            message: format!("expected coefficient atom, found {other:?}"),
        }),
    }
}

// ---- element expressions ----

/// Parse an element expression; evaluation runs through the ring arithmetic,
/// so the result is in normal form.
pub fn parse_element<K: Scalar>(
    text: &str,
    p: &Arc<Presentation<K>>,
) -> Result<Element<K>, FrontendError> {
    let mut toks = Tokens::new(text)?;
    let v = elem_expr(&mut toks, p)?;
    toks.finish()?;
    Ok(v)
}

fn elem_expr<K: Scalar>(
    toks: &mut Tokens,
    p: &Arc<Presentation<K>>,
) -> Result<Element<K>, FrontendError> {
    let mut negate = false;
    if toks.peek() == Some(&Token::Minus) {
        toks.next();
        negate = true;
    }
    let mut acc = elem_term(toks, p)?;
    if negate {
        acc = acc.neg();
    }
    loop {
        match toks.peek() {
            Some(Token::Plus) => {
                toks.next();
                let rhs = elem_term(toks, p)?;
                acc = acc.checked_add(&rhs)?;
            }
            Some(Token::Minus) => {
                toks.next();
                let rhs = elem_term(toks, p)?;
                acc = acc.checked_sub(&rhs)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn elem_term<K: Scalar>(
    toks: &mut Tokens,
    p: &Arc<Presentation<K>>,
) -> Result<Element<K>, FrontendError> {
    let mut acc = elem_factor(toks, p)?;
    loop {
        match toks.peek() {
            Some(Token::Star) => {
                toks.next();
                let rhs = elem_factor(toks, p)?;
                acc = acc.checked_mul(&rhs)?;
            }
            Some(Token::Slash) => {
                toks.next();
                let position = toks.position();
                let rhs = elem_factor(toks, p)?;
                let inv = invert_element(&rhs, position)?;
                acc = acc.checked_mul(&inv)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn elem_factor<K: Scalar>(
    toks: &mut Tokens,
    p: &Arc<Presentation<K>>,
) -> Result<Element<K>, FrontendError> {
    let base = elem_atom(toks, p)?;
    if toks.peek() == Some(&Token::Caret) {
        toks.next();
        let position = toks.position();
        let k = toks.signed_int()?;
        return elem_power(&base, &k, position);
    }
    Ok(base)
}

fn elem_atom<K: Scalar>(
    toks: &mut Tokens,
    p: &Arc<Presentation<K>>,
) -> Result<Element<K>, FrontendError> {
    let position = toks.position();
    match toks.next() {
        Some(Token::Int(n)) => {
            let c = K::from_integer(p.mode(), &n)?;
            Ok(Element::constant(p, c))
        }
        Some(Token::Ident(name)) => match classify_ident(&name) {
            Some(('t', k)) if k >= 1 => {
                let c = K::parameter(p.mode(), k - 1)?;
                Ok(Element::constant(p, c))
            }
            Some(('x', i)) if i >= 1 => {
                if i > p.n() {
                    return Err(FrontendError::Syntax {
                        position,
                        message: format!("unknown generator x{i} (ring has n = {})", p.n()),
                    });
                }
                Ok(Element::generator(p, i - 1)?)
            }
            _ => Err(FrontendError::Syntax {
                position,
                message: format!("unknown symbol '{name}'"),
            }),
        },
        Some(Token::LParen) => {
            let v = elem_expr(toks, p)?;
            toks.expect(Token::RParen)?;
            Ok(v)
        }
        other => Err(FrontendError::Syntax {
            position,
            message: format!("expected an atom, found {other:?}"),
        }),
    }
}

fn elem_power<K: Scalar>(
    base: &Element<K>,
    k: &BigInt,
    position: usize,
) -> Result<Element<K>, FrontendError> {
    let mag = k
        .abs()
        .try_into()
        .map_err(|_| FrontendError::Syntax {
            position,
            message: "exponent too large".to_string(),
        })?;
    if k.is_negative() {
        let inv = invert_element(base, position)?;
        Ok(inv.pow(mag)?)
    } else {
        Ok(base.pow(mag)?)
    }
}

/// Invert an element that normalizes to an invertible monomial (or a unit
/// constant, which needs no coefficient transport).
fn invert_element<K: Scalar>(
    f: &Element<K>,
    position: usize,
) -> Result<Element<K>, FrontendError> {
    let p = f.presentation();
    let mut terms = f.support().iter();
    let (u, c) = terms.next().ok_or(FrontendError::Syntax {
        position,
        message: "division by zero".to_string(),
    })?;
    if terms.next().is_some() {
        return Err(FrontendError::Syntax {
            position,
            message: "divisor must be a single invertible monomial".to_string(),
        });
    }
    if u.is_zero() {
        return Ok(Element::constant(p, c.inverse()?));
    }
    let (mu, nu) = monomial_inverse(p.as_ref(), c, u)?;
    Ok(Element::monomial(p, mu, nu)?)
}

// ---- presentation documents ----

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "kind")]
pub enum FieldDoc {
    Q,
    Fp { p: u64 },
    Qt { params: Vec<String> },
    Z,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum SigmaDoc {
    Named(String),
    Scaling { scaling: Vec<String> },
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum DeltaDoc {
    Named(String),
    Partials { partials: Vec<String> },
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct OrderDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

/// The on-disk presentation schema.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PresentationDoc {
    pub n: usize,
    #[serde(default)]
    pub r: usize,
    pub field: FieldDoc,
    pub q: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<SigmaDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<DeltaDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_terms: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderDoc>,
}

impl PresentationDoc {
    pub fn from_json(text: &str) -> Result<Self, FrontendError> {
        serde_json::from_str(text).map_err(|e| FrontendError::Document {
            message: e.to_string(),
        })
    }

    pub fn field_mode(&self) -> Result<FieldMode, FrontendError> {
        match &self.field {
            FieldDoc::Q => Ok(FieldMode::Rational),
            FieldDoc::Z => Ok(FieldMode::Integer),
            FieldDoc::Fp { p } => {
                if !is_prime_u64(*p) {
                    return Err(FrontendError::Document {
                        message: format!("field modulus {p} is not prime"),
                    });
                }
                Ok(FieldMode::PrimeField { p: *p })
            }
            FieldDoc::Qt { params } => {
                for (k, name) in params.iter().enumerate() {
                    let expected = format!("t{}", k + 1);
                    if name != &expected {
                        return Err(FrontendError::Document {
                            message: format!(
                                "parameter names must be t1..tm in order; found '{name}' at position {}",
                                k + 1
                            ),
                        });
                    }
                }
                Ok(FieldMode::RationalFunctions {
                    params: params.len(),
                })
            }
        }
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational, FrontendError> {
    let mut toks = Tokens::new(text)?;
    let mut negate = false;
    if toks.peek() == Some(&Token::Minus) {
        toks.next();
        negate = true;
    }
    let position = toks.position();
    let num = match toks.next() {
        Some(Token::Int(n)) => n,
        other => {
            return Err(FrontendError::Syntax {
                position,
                message: format!("expected integer, found {other:?}"),
            })
        }
    };
    let mut value = BigRational::from(num);
    if toks.peek() == Some(&Token::Slash) {
        toks.next();
        let position = toks.position();
        match toks.next() {
            Some(Token::Int(d)) if !d.is_zero() => {
                value /= BigRational::from(d);
            }
            other => {
                return Err(FrontendError::Syntax {
                    position,
                    message: format!("expected nonzero denominator, found {other:?}"),
                })
            }
        }
    }
    toks.finish()?;
    Ok(if negate { -value } else { value })
}

/// Parse a degree-≤1 lower-term expression "d0 + d1*x1 + …" without ring
/// arithmetic (the presentation does not exist yet at this point).
fn parse_lower_term<K: Scalar>(
    text: &str,
    mode: &FieldMode,
    n: usize,
) -> Result<LowerTerm<K>, FrontendError> {
    let one = K::from_integer(mode, &BigInt::one())?;
    let mut constant = one.zero_like();
    let mut linear = vec![one.zero_like(); n];
    let mut toks = Tokens::new(text)?;
    let mut sign_negative = false;
    if toks.peek() == Some(&Token::Minus) {
        toks.next();
        sign_negative = true;
    }
    loop {
        // one product of coefficient atoms with at most one generator
        let mut coef = one.clone();
        let mut gen: Option<usize> = None;
        loop {
            let position = toks.position();
            match toks.next() {
                Some(Token::Int(v)) => coef = coef.mul(&K::from_integer(mode, &v)?),
                Some(Token::Ident(name)) => match classify_ident(&name) {
                    Some(('t', k)) if k >= 1 => {
                        coef = coef.mul(&K::parameter(mode, k - 1)?);
                    }
                    Some(('x', i)) if i >= 1 && i <= n => {
                        if gen.is_some() {
                            return Err(FrontendError::Document {
                                message: format!(
                                    "lower term '{text}' has degree > 1"
                                ),
                            });
                        }
                        gen = Some(i - 1);
                    }
                    _ => {
                        return Err(FrontendError::Syntax {
                            position,
                            message: format!("unknown symbol '{name}' in lower term"),
                        })
                    }
                },
                Some(Token::LParen) => {
                    let v: K = coeff_expr(&mut toks, mode)?;
                    toks.expect(Token::RParen)?;
                    coef = coef.mul(&v);
                }
                other => {
                    return Err(FrontendError::Syntax {
                        position,
                        message: format!("unexpected {other:?} in lower term"),
                    })
                }
            }
            match toks.peek() {
                Some(Token::Star) => {
                    toks.next();
                }
                Some(Token::Slash) => {
                    toks.next();
                    let rhs: K = coeff_factor(&mut toks, mode)?;
                    coef = coef.mul(&rhs.inverse()?);
                    match toks.peek() {
                        Some(Token::Star) => {
                            toks.next();
                        }
                        _ => break,
                    }
                }
                _ => break,
            }
        }
        if sign_negative {
            coef = coef.neg();
        }
        match gen {
            Some(i) => linear[i] = linear[i].add(&coef),
            None => constant = constant.add(&coef),
        }
        match toks.next() {
            Some(Token::Plus) => sign_negative = false,
            Some(Token::Minus) => sign_negative = true,
            None => break,
            Some(other) => {
                return Err(FrontendError::Syntax {
                    position: toks.position(),
                    message: format!("unexpected {other:?} in lower term"),
                })
            }
        }
    }
    Ok(LowerTerm { constant, linear })
}

/// Build and validate a typed presentation from a parsed document.
pub fn build_presentation<K: Scalar>(
    doc: &PresentationDoc,
) -> Result<Presentation<K>, FrontendError> {
    let mode = doc.field_mode()?;
    let n = doc.n;
    if doc.q.len() != n || doc.q.iter().any(|row| row.len() != n) {
        return Err(FrontendError::Document {
            message: format!("q must be an {n}x{n} matrix of coefficient strings"),
        });
    }
    let mut q = Vec::with_capacity(n);
    for row in &doc.q {
        let mut out = Vec::with_capacity(n);
        for entry in row {
            out.push(parse_coefficient::<K>(entry, &mode)?);
        }
        q.push(out);
    }
    let sigma = match &doc.sigma {
        None => vec![Automorphism::Identity; n],
        Some(docs) => {
            if docs.len() != n {
                return Err(FrontendError::Document {
                    message: format!("sigma must list {n} automorphisms"),
                });
            }
            let mut out = Vec::with_capacity(n);
            for d in docs {
                out.push(match d {
                    SigmaDoc::Named(name) => match name.as_str() {
                        "identity" => Automorphism::Identity,
                        "frobenius" => Automorphism::Frobenius,
                        other => {
                            return Err(FrontendError::Document {
                                message: format!("unknown automorphism '{other}'"),
                            })
                        }
                    },
                    SigmaDoc::Scaling { scaling } => {
                        let mut cs = Vec::with_capacity(scaling.len());
                        for s in scaling {
                            cs.push(parse_rational(s)?);
                        }
                        Automorphism::ParamScaling(cs)
                    }
                });
            }
            out
        }
    };
    let delta = match &doc.delta {
        None => (0..n).map(|_| Derivation::zero()).collect(),
        Some(docs) => {
            if docs.len() != n {
                return Err(FrontendError::Document {
                    message: format!("delta must list {n} derivations"),
                });
            }
            let mut out = Vec::with_capacity(n);
            for d in docs {
                out.push(match d {
                    DeltaDoc::Named(name) => match name.as_str() {
                        "zero" => Derivation::zero(),
                        other => {
                            return Err(FrontendError::Document {
                                message: format!("unknown derivation '{other}'"),
                            })
                        }
                    },
                    DeltaDoc::Partials { partials } => {
                        let mut cs = Vec::with_capacity(partials.len());
                        for s in partials {
                            cs.push(parse_coefficient::<K>(s, &mode)?);
                        }
                        Derivation::new(cs)
                    }
                });
            }
            out
        }
    };
    let mut lower_terms = BTreeMap::new();
    if let Some(map) = &doc.lower_terms {
        for (key, expr) in map {
            let parts: Vec<&str> = key.split(',').map(str::trim).collect();
            let bad_key = || FrontendError::Document {
                message: format!("lower term key '{key}' must be \"j,i\" with j > i (1-based)"),
            };
            if parts.len() != 2 {
                return Err(bad_key());
            }
            let j: usize = parts[0].parse().map_err(|_| bad_key())?;
            let i: usize = parts[1].parse().map_err(|_| bad_key())?;
            if j <= i || i == 0 || j > n {
                return Err(bad_key());
            }
            let lt = parse_lower_term::<K>(expr, &mode, n)?;
            lower_terms.insert((j - 1, i - 1), lt);
        }
    }
    Ok(Presentation::validate(
        mode,
        n,
        doc.r,
        q,
        sigma,
        delta,
        lower_terms,
    )?)
}

// ---- orders, vectors, matrices ----

/// Parse an order specification: "lex" (needs a dimension hint), "lexN", or
/// an inline JSON document {"kind":"lex"} / {"matrix":[["1","0"],…]}.
pub fn parse_order_spec(
    spec: &str,
    n_hint: Option<usize>,
) -> Result<MonomialOrder, FrontendError> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("lex") {
        if rest.is_empty() {
            let n = n_hint.ok_or_else(|| FrontendError::Document {
                message: "order 'lex' needs a presentation to fix the dimension".to_string(),
            })?;
            return Ok(MonomialOrder::lex(n));
        }
        if let Ok(n) = rest.parse::<usize>() {
            if n == 0 {
                return Err(FrontendError::Document {
                    message: "order dimension must be at least 1".to_string(),
                });
            }
            check_order_dim(n, n_hint)?;
            return Ok(MonomialOrder::lex(n));
        }
    }
    if spec.starts_with('{') {
        let doc: OrderDoc = serde_json::from_str(spec).map_err(|e| FrontendError::Document {
            message: format!("bad order document: {e}"),
        })?;
        return order_from_doc(&doc, n_hint);
    }
    Err(FrontendError::Document {
        message: format!("unrecognized order specification '{spec}'"),
    })
}

pub fn order_from_doc(
    doc: &OrderDoc,
    n_hint: Option<usize>,
) -> Result<MonomialOrder, FrontendError> {
    match (&doc.kind, &doc.matrix) {
        (Some(kind), None) if kind == "lex" => {
            let n = n_hint.ok_or_else(|| FrontendError::Document {
                message: "order kind 'lex' needs a dimension".to_string(),
            })?;
            Ok(MonomialOrder::lex(n))
        }
        (_, Some(rows)) => {
            let mut matrix = Vec::with_capacity(rows.len());
            for row in rows {
                let mut out = Vec::with_capacity(row.len());
                for entry in row {
                    out.push(parse_rational(entry)?);
                }
                matrix.push(out);
            }
            let ord = MonomialOrder::from_matrix(matrix)?;
            check_order_dim(ord.n(), n_hint)?;
            Ok(ord)
        }
        _ => Err(FrontendError::Document {
            message: "order document needs either kind=\"lex\" or a matrix".to_string(),
        }),
    }
}

fn check_order_dim(n: usize, n_hint: Option<usize>) -> Result<(), FrontendError> {
    if let Some(h) = n_hint {
        if h != n {
            return Err(FrontendError::Document {
                message: format!("order is on Z^{n} but the presentation has n = {h}"),
            });
        }
    }
    Ok(())
}

/// Parse "(a, b, …)" (or "a,b,…") into an exponent vector.
pub fn parse_exponent_vector(text: &str) -> Result<ExponentVector, FrontendError> {
    let inner = text
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')');
    let mut entries = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(FrontendError::Document {
                message: format!("bad exponent vector '{text}'"),
            });
        }
        let v = part
            .parse::<BigInt>()
            .map_err(|_| FrontendError::Document {
                message: format!("bad integer '{part}' in exponent vector"),
            })?;
        entries.push(v);
    }
    if entries.is_empty() {
        return Err(FrontendError::Document {
            message: format!("bad exponent vector '{text}'"),
        });
    }
    Ok(ExponentVector::new(entries))
}

/// Parse an integer matrix given as JSON (numbers or strings).
pub fn parse_integer_matrix(text: &str) -> Result<Vec<Vec<BigInt>>, FrontendError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| FrontendError::Document {
            message: format!("bad matrix: {e}"),
        })?;
    let rows = value.as_array().ok_or_else(|| FrontendError::Document {
        message: "matrix must be an array of rows".to_string(),
    })?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row.as_array().ok_or_else(|| FrontendError::Document {
            message: "matrix row must be an array".to_string(),
        })?;
        let mut r = Vec::with_capacity(cells.len());
        for cell in cells {
            let v = match cell {
                serde_json::Value::Number(n) => {
                    let i = n.as_i64().ok_or_else(|| FrontendError::Document {
                        message: format!("non-integer matrix entry {n}"),
                    })?;
                    BigInt::from(i)
                }
                serde_json::Value::String(s) => {
                    s.parse::<BigInt>().map_err(|_| FrontendError::Document {
                        message: format!("bad integer '{s}' in matrix"),
                    })?
                }
                other => {
                    return Err(FrontendError::Document {
                        message: format!("bad matrix entry {other}"),
                    })
                }
            };
            r.push(v);
        }
        out.push(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{Fp, RatFunc, Rational};
    use crate::frontend::print::print_element;
    use crate::presentation::{quantum_plane, quantum_torus, PresentationError};

    fn rat(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn plane_qt() -> Arc<Presentation<RatFunc>> {
        let mode = FieldMode::RationalFunctions { params: 1 };
        let t = RatFunc::parameter(&mode, 0).unwrap();
        quantum_plane(mode, t).unwrap().into_arc()
    }

    #[test]
    fn coefficient_literals() {
        let q: Rational = parse_coefficient("-7/3", &FieldMode::Rational).unwrap();
        assert_eq!(q, Rational::new(-7, 3));
        let f: Fp = parse_coefficient("12", &FieldMode::PrimeField { p: 7 }).unwrap();
        assert_eq!(f.value(), 5);
        let mode = FieldMode::RationalFunctions { params: 2 };
        let r: RatFunc = parse_coefficient("(t1 + 1)/(t2^2)", &mode).unwrap();
        assert_eq!(r.render(), "(t1 + 1)/(t2^2)");
    }

    #[test]
    fn element_cancellation_and_binomial() {
        let p = plane_qt();
        let zero = parse_element::<RatFunc>("x1 - x1", &p).unwrap();
        assert!(zero.is_zero());
        // commutative slice: q = 1
        let commutative = quantum_plane(FieldMode::Rational, rat(1)).unwrap().into_arc();
        let sq = parse_element::<Rational>("(1 + x1)^2", &commutative).unwrap();
        let expected = parse_element::<Rational>("1 + 2*x1 + x1^2", &commutative).unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn element_normalizes_during_parsing() {
        let p = plane_qt();
        let f = parse_element::<RatFunc>("x2*x1", &p).unwrap();
        let ord = MonomialOrder::lex(2);
        assert_eq!(print_element(&f, &ord).unwrap(), "t1*x1*x2");
    }

    #[test]
    fn parser_rejects_malformed_input() {
        let p = plane_qt();
        assert!(matches!(
            parse_element::<RatFunc>("x3", &p),
            Err(FrontendError::Syntax { .. })
        ));
        assert!(matches!(
            parse_element::<RatFunc>("x1^-1", &p),
            Err(FrontendError::Element(_))
        ));
        assert!(matches!(
            parse_element::<RatFunc>("x1 + ", &p),
            Err(FrontendError::Syntax { .. })
        ));
        assert!(matches!(
            parse_element::<RatFunc>("x1 $ x2", &p),
            Err(FrontendError::Syntax { .. })
        ));
        // division by a non-monomial is refused
        assert!(matches!(
            parse_element::<RatFunc>("x1/(1 + x1)", &p),
            Err(FrontendError::Syntax { .. })
        ));
    }

    #[test]
    fn torus_inverse_powers_parse() {
        let p = quantum_torus(FieldMode::Rational, 2, &[rat(2)]).unwrap().into_arc();
        let f = parse_element::<Rational>("x1^-2*x2", &p).unwrap();
        assert_eq!(f.term_count(), 1);
        let (e, _) = f.support().iter().next().unwrap();
        assert_eq!(e, &ExponentVector::from_i64(&[-2, 1]));
        // x1 * x1^-1 = 1
        let one = parse_element::<Rational>("x1*x1^-1", &p).unwrap();
        assert_eq!(one, Element::one(&p));
    }

    #[test]
    fn presentation_document_errors() {
        // q21 is not the inverse of q12
        let doc = PresentationDoc::from_json(
            r#"{"n":2,"r":0,"field":{"kind":"Qt","params":["t1"]},
                "q":[["1","t1"],["t1","1"]]}"#,
        )
        .unwrap();
        let err = build_presentation::<RatFunc>(&doc).unwrap_err();
        match err {
            FrontendError::Presentation(PresentationError::QMatrixInvalid { i, j, .. }) => {
                assert_eq!((i, j), (1, 2));
            }
            other => panic!("unexpected error {other:?}"),
        }
        // bad parameter names
        let doc = PresentationDoc::from_json(
            r#"{"n":1,"r":0,"field":{"kind":"Qt","params":["u"]},"q":[["1"]]}"#,
        )
        .unwrap();
        assert!(matches!(
            doc.field_mode(),
            Err(FrontendError::Document { .. })
        ));
        // non-prime modulus
        let doc = PresentationDoc::from_json(
            r#"{"n":1,"r":0,"field":{"kind":"Fp","p":6},"q":[["1"]]}"#,
        )
        .unwrap();
        assert!(matches!(
            doc.field_mode(),
            Err(FrontendError::Document { .. })
        ));
    }

    #[test]
    fn weyl_document_builds_with_derivation() {
        let doc = PresentationDoc::from_json(
            r#"{"n":1,"r":0,"field":{"kind":"Qt","params":["t1"]},
                "q":[["1"]],
                "delta":[{"partials":["1"]}]}"#,
        )
        .unwrap();
        let p = build_presentation::<RatFunc>(&doc).unwrap();
        assert!(!p.is_quasi_commutative());
        assert_eq!(p, crate::presentation::weyl_a1());
    }

    #[test]
    fn lower_term_documents() {
        let doc = PresentationDoc::from_json(
            r#"{"n":2,"r":0,"field":{"kind":"Q"},
                "q":[["1","2"],["1/2","1"]],
                "lower_terms":{"2,1":"1 + 2*x1 - x2"}}"#,
        )
        .unwrap();
        let p = build_presentation::<Rational>(&doc).unwrap();
        let lt = p.lower_term(1, 0).unwrap();
        assert_eq!(lt.constant, rat(1));
        assert_eq!(lt.linear[0], rat(2));
        assert_eq!(lt.linear[1], rat(-1));
        // degree > 1 is refused
        let doc = PresentationDoc::from_json(
            r#"{"n":2,"r":0,"field":{"kind":"Q"},
                "q":[["1","2"],["1/2","1"]],
                "lower_terms":{"2,1":"x1*x2"}}"#,
        )
        .unwrap();
        assert!(build_presentation::<Rational>(&doc).is_err());
    }

    #[test]
    fn order_specs() {
        assert_eq!(parse_order_spec("lex2", None).unwrap(), MonomialOrder::lex(2));
        assert_eq!(
            parse_order_spec("lex", Some(3)).unwrap(),
            MonomialOrder::lex(3)
        );
        let ord = parse_order_spec(r#"{"matrix":[["1","1"],["0","1"]]}"#, Some(2)).unwrap();
        assert_eq!(ord.kind(), crate::exponents::OrderKind::Unimodular);
        assert!(parse_order_spec(r#"{"matrix":[["2","3"]]}"#, None).is_err());
        assert!(parse_order_spec("lex2", Some(3)).is_err());
        assert!(parse_order_spec("degrevlex", Some(2)).is_err());
    }

    #[test]
    fn exponent_vectors_and_matrices() {
        assert_eq!(
            parse_exponent_vector("(3, 0)").unwrap(),
            ExponentVector::from_i64(&[3, 0])
        );
        assert_eq!(
            parse_exponent_vector("-1,2,5").unwrap(),
            ExponentVector::from_i64(&[-1, 2, 5])
        );
        assert!(parse_exponent_vector("()").is_err());
        let m = parse_integer_matrix(r#"[[2,0],["-1",1]]"#).unwrap();
        assert_eq!(m[1][0], BigInt::from(-1));
        assert!(parse_integer_matrix("[[1.5]]").is_err());
    }
}
