//! Text format for polynomials.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```
//!
//! There is no implicit multiplication, so `xy` is a single identifier.
//! Error positions are 1-based character offsets.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Polynomial, Rational, RingContext};

#[derive(Debug, Clone, PartialEq)]
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

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Token::Int(digits.parse().expect("digits")), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Token::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            other => {
                return Err(Error::Syntax {
                    position: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, pos));
        i += 1;
    }
    Ok(out)
}

/// Identifiers in order of first appearance.
pub fn scan_identifiers(text: &str) -> Result<Vec<String>> {
    let mut names: Vec<String> = Vec::new();
    for (tok, _) in tokenize(text)? {
        if let Token::Ident(name) = tok {
            if !names.contains(&name) {
                names.push(name);
            }
        }
    }
    Ok(names)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
    ctx: &'a Arc<RingContext>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn unexpected(&self, expected: &str) -> Error {
        let message = match self.peek() {
            None => format!("unexpected end of input, expected {expected}"),
            Some(t) => format!("unexpected {}, expected {expected}", describe(t)),
        };
        Error::Syntax {
            position: self.position(),
            message,
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if let Some(Token::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            let position = self.position();
            match self.peek() {
                Some(Token::Int(e)) => {
                    let e: u32 = e.try_into().map_err(|_| Error::BadExponent {
                        position,
                        message: "exponent too large".into(),
                    })?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => {
                    return Err(Error::BadExponent {
                        position,
                        message: "exponent must be a non-negative integer literal".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let position = self.position();
        match self.peek().cloned() {
            Some(Token::Int(num)) => {
                self.pos += 1;
                let mut value = Rational::from_integer(num);
                if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    let den_pos = self.position();
                    match self.peek().cloned() {
                        Some(Token::Int(den)) => {
                            if den.is_zero() {
                                return Err(Error::Syntax {
                                    position: den_pos,
                                    message: "zero denominator".into(),
                                });
                            }
                            self.pos += 1;
                            value /= Rational::from_integer(den);
                        }
                        _ => return Err(self.unexpected("integer denominator")),
                    }
                }
                Ok(Polynomial::constant(self.ctx, value))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                match self.ctx.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ctx, i)),
                    None => Err(Error::UnknownIdentifier { name, position }),
                }
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.unexpected("`)`")),
                }
            }
            _ => Err(self.unexpected("number, variable or `(`")),
        }
    }
}

fn describe(t: &Token) -> String {
    match t {
        Token::Int(n) => format!("number `{n}`"),
        Token::Ident(s) => format!("identifier `{s}`"),
        Token::Plus => "`+`".into(),
        Token::Minus => "`-`".into(),
        Token::Star => "`*`".into(),
        Token::Slash => "`/`".into(),
        Token::Caret => "`^`".into(),
        Token::LParen => "`(`".into(),
        Token::RParen => "`)`".into(),
    }
}

/// Parses `text` as a polynomial over the variables of `ctx`.
pub fn parse_polynomial(text: &str, ctx: &Arc<RingContext>) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let end = text.chars().count() + 1;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
        ctx,
    };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.unexpected("operator or end of input"));
    }
    Ok(p)
}

fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text of `p`; `parse_polynomial(format_polynomial(p)) == p`.
pub fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = p.ctx().var_names();
    let mut out = String::new();
    for (k, (m, c)) in p.canonical_terms().into_iter().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        let factors: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{e}", names[i])
                }
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&format_rational(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&format_rational(&abs));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}
