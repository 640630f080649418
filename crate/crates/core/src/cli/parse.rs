//! Input grammar.
//!
//! ```text
//! # comment
//! name  = cusp
//! omega = -3*x^2 dx + 2*y dy
//! curve = y^2 - x^3
//! ```
//!
//! Expressions are polynomials in `x, y, dx, dy` with Gaussian rational
//! coefficients (`3`, `-1/2`, `i`, `(2+3*i)/5`). Juxtaposition multiplies and
//! `**` is a synonym for `^`. A form must be linear in `dx, dy`.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::algebra::{BiPoly, FieldElement, GaussianRational};
use crate::error::{Error, Result};

/// Exponents of `x, y, dx, dy`.
type Mono = [u32; 4];

#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct Poly4(BTreeMap<Mono, GaussianRational>);

impl Poly4 {
    fn constant(c: GaussianRational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert([0; 4], c);
        }
        Poly4(m)
    }

    fn var(k: usize) -> Self {
        let mut e = [0; 4];
        e[k] = 1;
        Poly4(BTreeMap::from([(e, GaussianRational::one())]))
    }

    fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (e, c) in &o.0 {
            let s = m.get(e).map_or_else(|| c.clone(), |v| v + c);
            if s.is_zero() {
                m.remove(e);
            } else {
                m.insert(*e, s);
            }
        }
        Poly4(m)
    }

    fn neg(&self) -> Self {
        Poly4(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        let mut acc = Poly4::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                acc = acc.add(&Poly4(BTreeMap::from([(e, c1 * c2)])));
            }
        }
        acc
    }

    fn as_constant(&self) -> Option<GaussianRational> {
        match self.0.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.0.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    /// Part with the given `(dx, dy)` degrees, as a polynomial in `x, y`.
    fn slice(&self, ddx: u32, ddy: u32) -> BiPoly {
        BiPoly::from_terms(
            self.0.iter().filter(|(e, _)| e[2] == ddx && e[3] == ddy).map(|(e, c)| ((e[0], e[1]), FieldElement::from_gaussian(c.clone()))),
        )
    }

    fn differential_degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.keys().map(|e| e[2] + e[3])
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

const IDENTS: [&str; 5] = ["x", "y", "dx", "dy", "i"];

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(s: &str, line: usize, col0: usize) -> Result<Lexer> {
    let err = |col: usize, message: String| Error::Parse { line, column: col0 + col, message };
    let chars: Vec<char> = s.chars().collect();
    let mut toks = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let start = k;
        match c {
            ' ' | '\t' | '\r' => {
                k += 1;
                continue;
            }
            '0'..='9' => {
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let text: String = chars[start..k].iter().collect();
                toks.push((Tok::Num(text.parse().unwrap()), start));
                continue;
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                let word: String = chars[start..k].iter().collect();
                // split runs like `xy` or `xdy` into known identifiers
                let mut rest = word.as_str();
                let mut pos = start;
                while !rest.is_empty() {
                    let Some(id) = [2usize, 3, 0, 1, 4].into_iter().find(|&id| rest.starts_with(IDENTS[id])) else {
                        return Err(err(pos + 1, format!("unknown identifier `{word}`")));
                    };
                    toks.push((Tok::Ident(id), pos));
                    pos += IDENTS[id].len();
                    rest = &rest[IDENTS[id].len()..];
                }
                continue;
            }
            '+' => toks.push((Tok::Plus, k)),
            '-' => toks.push((Tok::Minus, k)),
            '*' if chars.get(k + 1) == Some(&'*') => {
                toks.push((Tok::Caret, k));
                k += 1;
            }
            '*' => toks.push((Tok::Star, k)),
            '/' => toks.push((Tok::Slash, k)),
            '^' => toks.push((Tok::Caret, k)),
            '(' => toks.push((Tok::LParen, k)),
            ')' => toks.push((Tok::RParen, k)),
            other => return Err(err(k + 1, format!("unexpected character `{other}`"))),
        }
        k += 1;
    }
    toks.push((Tok::End, chars.len()));
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    col0: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.col0 + self.toks[self.pos].1 + 1, message: message.into() }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly4> {
        let mut acc = match self.peek() {
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            Tok::Minus => {
                self.bump();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly4> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.power()?);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.pos;
                    let d = self.power()?;
                    let Some(c) = d.as_constant() else {
                        self.pos = at;
                        return Err(self.err("division by a non-constant"));
                    };
                    let Some(inv) = c.inv() else {
                        self.pos = at;
                        return Err(self.err("division by zero"));
                    };
                    acc = acc.mul(&Poly4::constant(inv));
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly4> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let Tok::Num(n) = self.peek().clone() else { return Err(self.err("expected a non-negative integer exponent")) };
        let e: u32 = u32::try_from(&n).ok().filter(|&e| e <= 1000).ok_or_else(|| self.err("exponent too large"))?;
        self.bump();
        let mut acc = Poly4::constant(GaussianRational::one());
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Poly4> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Poly4::constant(GaussianRational::from_rational(BigRational::from_integer(n))))
            }
            Tok::Ident(4) => {
                self.bump();
                Ok(Poly4::constant(GaussianRational::i()))
            }
            Tok::Ident(k) => {
                self.bump();
                Ok(Poly4::var(k))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            Tok::Minus => {
                self.bump();
                Ok(self.power()?.neg())
            }
            Tok::End => Err(self.err("unexpected end of expression")),
            t => Err(self.err(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses one expression; `line`/`col0` locate it for error messages.
pub(crate) fn parse_expression(s: &str, line: usize, col0: usize) -> Result<Poly4> {
    let lexer = lex(s, line, col0)?;
    let mut p = Parser { toks: lexer.toks, pos: 0, line, col0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// `a dx + b dy`, unsaturated.
pub(crate) fn form_coefficients(p: &Poly4, line: usize, col0: usize) -> Result<(BiPoly, BiPoly)> {
    if p.differential_degrees().any(|d| d != 1) {
        return Err(Error::Parse { line, column: col0 + 1, message: "every term must contain exactly one of dx, dy".into() });
    }
    Ok((p.slice(1, 0), p.slice(0, 1)))
}

pub(crate) fn curve_polynomial(p: &Poly4, line: usize, col0: usize) -> Result<BiPoly> {
    if p.differential_degrees().any(|d| d != 0) {
        return Err(Error::Parse { line, column: col0 + 1, message: "a curve cannot contain dx or dy".into() });
    }
    Ok(p.slice(0, 0))
}
