//! Text grammar for polynomials: signed sums of `c*x1^e1*...` terms with
//! rational coefficients `p/q`, explicit `*`, `^` binding tightest, and
//! parentheses. Negative exponents are allowed on single terms and flag the
//! result as Laurent.

use super::{Monomial, Poly};
use crate::rational::Rational;
use num::{BigInt, One, Zero};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at offset {pos}")]
    BadChar { ch: char, pos: usize },
    #[error("unknown variable {0:?}")]
    UnknownVar(String),
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected token at offset {0}")]
    Unexpected(usize),
    #[error("division by zero in literal")]
    ZeroDenominator,
    #[error("negative exponent applied to a multi-term expression")]
    NegativePowerOfSum,
    #[error("exponent out of range")]
    ExponentRange,
}

/// Variable names for parsing and display: `x1..xn` for the ambient block,
/// optionally followed by `u1..um` for a generator block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarNames {
    names: Vec<String>,
}

impl VarNames {
    pub fn x(n: usize) -> Self {
        VarNames { names: (1..=n).map(|i| format!("x{i}")).collect() }
    }

    pub fn u(m: usize) -> Self {
        VarNames { names: (1..=m).map(|i| format!("u{i}")).collect() }
    }

    /// `x1..xn` followed by `u1..um`.
    pub fn xu(n: usize, m: usize) -> Self {
        let mut names = VarNames::x(n).names;
        names.extend(VarNames::u(m).names);
        VarNames { names }
    }

    pub fn custom(names: Vec<String>) -> Self {
        VarNames { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> String {
        self.names.get(i).cloned().unwrap_or_else(|| format!("v{}", i + 1))
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, start)),
            '-' => out.push((Tok::Minus, start)),
            '*' => out.push((Tok::Star, start)),
            '^' => out.push((Tok::Caret, start)),
            '(' => out.push((Tok::LParen, start)),
            ')' => out.push((Tok::RParen, start)),
            '0'..='9' => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let num: String = chars[i..j].iter().collect();
                let mut val = Rational::from_integer(BigInt::from_str(&num).unwrap());
                // `p/q` literal
                let mut k = j;
                while k < chars.len() && chars[k] == ' ' {
                    k += 1;
                }
                if k < chars.len() && chars[k] == '/' {
                    let mut l = k + 1;
                    while l < chars.len() && chars[l] == ' ' {
                        l += 1;
                    }
                    let ds = l;
                    while l < chars.len() && chars[l].is_ascii_digit() {
                        l += 1;
                    }
                    if l == ds {
                        return Err(ParseError::Unexpected(ds));
                    }
                    let den: String = chars[ds..l].iter().collect();
                    let den = BigInt::from_str(&den).unwrap();
                    if den.is_zero() {
                        return Err(ParseError::ZeroDenominator);
                    }
                    val /= Rational::from_integer(den);
                    j = l;
                }
                out.push((Tok::Num(val), start));
                i = j;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                out.push((Tok::Ident(chars[i..j].iter().collect()), start));
                i = j;
                continue;
            }
            _ => return Err(ParseError::BadChar { ch: c, pos: start }),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a VarNames,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(usize::MAX)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let n = self.names.len();
        let mut acc = Poly::zero(n);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -Rational::one()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                Rational::one()
            }
            _ => Rational::one(),
        };
        loop {
            let t = self.term()?;
            acc = &acc + &t.scale(&sign);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = Rational::one();
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -Rational::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.primary()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let neg = if let Some(Tok::Minus) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            let at = self.offset();
            let e = match self.next() {
                Some(Tok::Num(r)) if r.is_integer() => r.to_integer(),
                Some(_) => return Err(ParseError::Unexpected(at)),
                None => return Err(ParseError::Eof),
            };
            let e: u32 = u32::try_from(e).map_err(|_| ParseError::ExponentRange)?;
            if neg {
                return invert_single_term(&base, e);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Poly, ParseError> {
        let n = self.names.len();
        let at = self.offset();
        match self.next() {
            Some(Tok::Num(r)) => Ok(Poly::constant(n, r)),
            Some(Tok::Ident(name)) => {
                let i = self.names.index(&name).ok_or(ParseError::UnknownVar(name))?;
                Ok(Poly::var(n, i))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    Some(_) => Err(ParseError::Unexpected(self.toks[self.pos - 1].1)),
                    None => Err(ParseError::Eof),
                }
            }
            // a leading sign inside a product, e.g. `2*-x1`
            Some(Tok::Minus) => Ok(-self.factor()?),
            Some(_) => Err(ParseError::Unexpected(at)),
            None => Err(ParseError::Eof),
        }
    }
}

fn invert_single_term(base: &Poly, e: u32) -> Result<Poly, ParseError> {
    if base.nterms() != 1 {
        return Err(ParseError::NegativePowerOfSum);
    }
    let (m, c) = base.terms().next().unwrap();
    let inv_m = Monomial::new(m.exps().iter().map(|x| -x).collect());
    let inv = Poly::term(inv_m, c.recip()).into_laurent();
    Ok(inv.pow(e))
}

impl Poly {
    /// Parses text in the crate's polynomial grammar over the given names.
    pub fn parse(s: &str, names: &VarNames) -> Result<Poly, ParseError> {
        let toks = lex(s)?;
        if toks.is_empty() {
            return Err(ParseError::Eof);
        }
        let mut p = Parser { toks, pos: 0, names };
        let out = p.expr()?;
        if p.pos < p.toks.len() {
            return Err(ParseError::Unexpected(p.toks[p.pos].1));
        }
        Ok(out)
    }
}
