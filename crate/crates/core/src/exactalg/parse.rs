//! Text syntax for polynomials.
//!
//! Grammar (explicit `*` required, `^` for powers, integer or `a/b` rational
//! literals, `w` the quadratic generator when the field allows it):
//!
//! ```text
//! expr   := term { ('+' | '-') term }
//! term   := factor { '*' factor }
//! factor := primary [ '^' integer ]
//! primary := rational | ident | '(' expr ')' | '-' factor
//! ```
//!
//! The printer emits terms in descending graded-lex order and its output
//! reparses to the same polynomial.

use super::field::{FieldCtx, FieldElement};
use super::poly::{Expo, MultiPoly, VarSet};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digit run");
                toks.push((start, Tok::Num(n)));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => return err(i, format!("unexpected character {:?}", b as char)),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a VarSet,
    ctx: &'a FieldCtx,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let pos = self.here();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e: u32 = match n.try_into() {
                        Ok(e) => e,
                        Err(_) => return err(pos, "exponent out of range"),
                    };
                    Ok(base.pow(e))
                }
                _ => err(pos, "expected integer exponent after '^'"),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<MultiPoly, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Num(n)) => {
                // Optional '/denominator' directly after a literal.
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dpos = self.here();
                    match self.bump() {
                        Some(Tok::Num(d)) => {
                            if d.is_zero() {
                                return err(dpos, "zero denominator");
                            }
                            Ok(MultiPoly::constant(
                                self.vars,
                                FieldElement::from_rational(BigRational::new(n, d)),
                            ))
                        }
                        _ => err(dpos, "expected integer denominator after '/'"),
                    }
                } else {
                    Ok(MultiPoly::constant(self.vars, FieldElement::from_bigint(n)))
                }
            }
            Some(Tok::Ident(name)) => {
                if name == "w" {
                    match self.ctx {
                        FieldCtx::Rational => {
                            err(pos, "generator 'w' is not available over Q")
                        }
                        FieldCtx::Quadratic(d) => Ok(MultiPoly::constant(
                            self.vars,
                            FieldElement::sqrt_gen(*d),
                        )),
                    }
                } else if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    Ok(MultiPoly::var(self.vars, i))
                } else {
                    err(pos, format!("unknown variable '{name}'"))
                }
            }
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let cpos = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => err(cpos, "expected ')'"),
                }
            }
            Some(t) => err(pos, format!("unexpected token {t:?}")),
            None => err(pos, "unexpected end of input"),
        }
    }
}

/// Parse `text` as a polynomial in `vars` with coefficients admitted by `ctx`.
pub fn poly_parse(
    text: &str,
    vars: &VarSet,
    ctx: &FieldCtx,
) -> Result<MultiPoly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars,
        ctx,
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "trailing input after expression");
    }
    Ok(poly)
}

fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Coefficient rendered for use in front of a monomial. Returns
/// (is_negative, magnitude-string-or-None-for-unit).
fn coeff_str(c: &FieldElement) -> (bool, Option<String>) {
    if let Some(r) = c.as_rational() {
        let neg = r < &BigRational::zero();
        let mag = if neg { -r.clone() } else { r.clone() };
        if mag.is_one() {
            (neg, None)
        } else {
            (neg, Some(rational_str(&mag)))
        }
    } else if c.rational_part().is_zero() {
        // Pure w-multiple: b*w with the sign pulled out.
        let b = c.irrational_part();
        let neg = b < &BigRational::zero();
        let mag = if neg { -b.clone() } else { b.clone() };
        if mag.is_one() {
            (neg, Some("w".to_string()))
        } else {
            (neg, Some(format!("{}*w", rational_str(&mag))))
        }
    } else {
        // Mixed element: parenthesize, keep the sign inside.
        (false, Some(format!("({c})")))
    }
}

/// Canonical text form: terms in descending graded-lex order.
pub fn poly_print(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let vars = p.vars();
    let mut out = String::new();
    let terms: Vec<(&Expo, &FieldElement)> = p.terms().collect();
    for (i, (e, c)) in terms.iter().rev().enumerate() {
        let mono: Vec<String> = e
            .0
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(j, &k)| {
                if k == 1 {
                    vars[j].clone()
                } else {
                    format!("{}^{}", vars[j], k)
                }
            })
            .collect();
        let (neg, coeff) = coeff_str(c);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        match (coeff, mono.is_empty()) {
            (None, true) => out.push('1'),
            (None, false) => out.push_str(&mono.join("*")),
            (Some(cs), true) => out.push_str(&cs),
            (Some(cs), false) => {
                out.push_str(&cs);
                out.push('*');
                out.push_str(&mono.join("*"));
            }
        }
    }
    out
}
