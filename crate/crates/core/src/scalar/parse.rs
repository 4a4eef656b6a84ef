//! Parser for the textual form of [`Scalar`].
//!
//! Accepts everything `Display` produces (`q^2 + 1 + q^-2`, `(i)*q^3`,
//! `(q^2 + 1)/(-q + 1)`) plus ordinary arithmetic over `q`, `i` and integer
//! literals, with juxtaposition read as multiplication (`2/3i`).

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Q,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        match c {
            ' ' | '\t' | '\n' => {}
            '0'..='9' => {
                let start = k;
                while k + 1 < chars.len() && chars[k + 1].is_ascii_digit() {
                    k += 1;
                }
                let digits: String = chars[start..=k].iter().collect();
                out.push(Tok::Num(digits.parse().unwrap()));
            }
            'q' => out.push(Tok::Q),
            'i' => out.push(Tok::I),
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            other => return Err(Error::Parse(format!("unexpected character '{other}'"))),
        }
        k += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                Some(Tok::Num(_)) | Some(Tok::Q) | Some(Tok::I) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.bump() {
            Some(Tok::Num(n)) => i64::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?,
            other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        };
        let e = if negative { -e } else { e };
        if e < 0 && base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Scalar::from_rational(BigRational::from_integer(n))),
            Some(Tok::Q) => Ok(Scalar::q()),
            Some(Tok::I) => Ok(Scalar::i()),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(v),
                    other => Err(Error::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let toks = lex(s)?;
        if toks.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut p = Parser { toks, pos: 0 };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in '{s}'")));
        }
        Ok(v)
    }
}
