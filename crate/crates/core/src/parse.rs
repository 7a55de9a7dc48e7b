//! Text parser for polynomials and operators.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := var | rational | '(' expr ')'
//! ```
//!
//! The parser is generic over the target ring so the same grammar reads
//! commutative polynomials and Weyl algebra operators.

use crate::context::VariableContext;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// Ring operations the parser needs.
pub(crate) trait ParseTarget: Sized + Clone {
    fn constant(&self, c: Rational) -> Self;
    fn variable(&self, name: &str) -> Option<Self>;
    fn add(a: Self, b: Self) -> Self;
    fn sub(a: Self, b: Self) -> Self;
    fn mul(a: Self, b: Self) -> Self;
    fn neg(a: Self) -> Self;
}

impl ParseTarget for MultiPoly {
    fn constant(&self, c: Rational) -> Self {
        MultiPoly::constant(self.context(), c)
    }
    fn variable(&self, name: &str) -> Option<Self> {
        self.context().index_of(name).map(|i| MultiPoly::var(self.context(), i))
    }
    fn add(a: Self, b: Self) -> Self {
        &a + &b
    }
    fn sub(a: Self, b: Self) -> Self {
        &a - &b
    }
    fn mul(a: Self, b: Self) -> Self {
        &a * &b
    }
    fn neg(a: Self) -> Self {
        -&a
    }
}

/// Parses `text` into a polynomial over `ctx`.
pub fn parse_poly(text: &str, ctx: &VariableContext) -> Result<MultiPoly> {
    parse_with(text, &MultiPoly::zero(ctx))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(chars[start..i].iter().collect())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{other}`") })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, T: ParseTarget> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    proto: &'a T,
}

pub(crate) fn parse_with<T: ParseTarget>(text: &str, proto: &T) -> Result<T> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.chars().count(), proto };
    if p.toks.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "empty expression".into() });
    }
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::Syntax { pos: p.here(), msg: "trailing input".into() });
    }
    Ok(v)
}

impl<T: ParseTarget> Parser<'_, T> {
    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<T> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                T::neg(self.term()?)
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
                    acc = T::add(acc, self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = T::sub(acc, self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<T> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = T::mul(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<T> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.here();
            match self.next() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .parse()
                        .map_err(|_| Error::Syntax { pos: at, msg: "exponent too large".into() })?;
                    let mut acc = self.proto.constant(Rational::one());
                    for _ in 0..e {
                        acc = T::mul(acc, base.clone());
                    }
                    Ok(acc)
                }
                _ => Err(Error::Syntax { pos: at, msg: "expected a non-negative integer exponent".into() }),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<T> {
        let at = self.here();
        match self.next() {
            Some(Tok::Ident(name)) => {
                self.proto.variable(&name).ok_or(Error::UnknownVariable(name))
            }
            Some(Tok::Int(n)) => {
                let mut text = n;
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let at2 = self.here();
                    match self.next() {
                        Some(Tok::Int(d)) => {
                            text = format!("{text}/{d}");
                        }
                        _ => return Err(Error::Syntax { pos: at2, msg: "expected a denominator".into() }),
                    }
                }
                let r: Rational =
                    text.parse().map_err(|e: String| Error::Syntax { pos: at, msg: e })?;
                Ok(self.proto.constant(r))
            }
            Some(Tok::LParen) => {
                let v = self.expr()?;
                let at2 = self.here();
                match self.next() {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(Error::Syntax { pos: at2, msg: "expected `)`".into() }),
                }
            }
            Some(t) => Err(Error::Syntax { pos: at, msg: format!("unexpected token {t:?}") }),
            None => Err(Error::Syntax { pos: at, msg: "unexpected end of input".into() }),
        }
    }
}
