//! Polynomial text syntax: `x^2*y - 3/2*z^3`, with optional `*`, parentheses
//! and integer or `a/b` coefficients.

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{Polynomial, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {col}: {msg}")]
pub struct ParseError {
    /// 1-based column of the offending character.
    pub col: usize,
    pub msg: String,
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

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(ParseError { col, msg: format!("unexpected character '{c}'") }),
        };
        out.push((t, col));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { col: self.col(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.mul(&acc, &f)?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = self.mul(&acc, &f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial, ParseError> {
        a.try_mul(b).map_err(|e| ParseError { col: self.col(), msg: e.to_string() })
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let n = match self.peek() {
                Some(Tok::Num(n)) => n.clone(),
                _ => return self.err("expected a non-negative integer exponent"),
            };
            let n: u32 = match u32::try_from(n) {
                Ok(v) if v <= crate::monomial::MAX_EXPONENT => v,
                _ => return self.err("exponent too large"),
            };
            self.pos += 1;
            // single-term bases raise exponents directly
            if base.len() == 1 {
                let (m, c) = &base.terms()[0];
                let exps: Option<Vec<u32>> = m.exps().iter().map(|&e| e.checked_mul(n)).collect();
                let exps = exps.ok_or_else(|| ParseError { col: self.col(), msg: "exponent overflow".into() })?;
                let m = crate::monomial::Monomial::from_exps(exps)
                    .map_err(|e| ParseError { col: self.col(), msg: e.to_string() })?;
                let cc = self.ring.field().pow(c, n);
                return Ok(Polynomial::monomial(self.ring, m, cc));
            }
            return base.pow(n).map_err(|e| ParseError { col: self.col(), msg: e.to_string() });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut den = BigInt::from(1);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            den = d;
                            self.pos += 1;
                        }
                        _ => return self.err("expected a denominator after '/'"),
                    }
                }
                let c = self
                    .ring
                    .field()
                    .from_fraction(&n, &den)
                    .map_err(|e| ParseError { col, msg: e.to_string() })?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                let i = match self.ring.var_index(&name) {
                    Some(i) => i,
                    None => return Err(ParseError { col, msg: format!("unknown variable '{name}'") }),
                };
                self.pos += 1;
                Ok(Polynomial::var(self.ring, i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse `text` as a polynomial of `ring`.
pub fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let end_col = text.chars().count() + 1;
    let mut p = Parser { ring, toks, pos: 0, end_col };
    if p.toks.is_empty() {
        return p.err("empty polynomial");
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
