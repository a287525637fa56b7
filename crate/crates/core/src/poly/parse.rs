use alloc::{string::String, sync::Arc, vec::Vec};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::coeff::{Coefficient, GaussRat};
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::radical::RadicalPolynomial;
use super::ring::PolyRing;
use crate::error::{bail, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt, bool),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = s[start..i].parse().expect("digits");
                let ident_char = |k: usize| k < b.len() && (b[k].is_ascii_alphanumeric() || b[k] == b'_');
                let imag = i < b.len() && b[i] == b'i' && !ident_char(i + 1);
                if imag {
                    i += 1;
                }
                out.push(Tok::Int(v, imag));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                out.push(Tok::Ident(String::from(&s[start..i])));
            }
            _ => bail!(Parse, "unexpected character {:?} at offset {}", c, i),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn constant(&self, c: Coefficient) -> RadicalPolynomial {
        RadicalPolynomial::term(self.ring, Monomial::one(self.ring.nvars()), c)
    }

    fn expr(&mut self) -> Result<RadicalPolynomial> {
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
                    let t = self.term()?;
                    acc = acc.checked_add(&t)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.checked_sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(..)) | Some(Tok::Ident(_)) | Some(Tok::LParen))
    }

    fn term(&mut self) -> Result<RadicalPolynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = acc.checked_mul(&f)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let f = self.power()?;
                    let inv = match f.as_monomial() {
                        Some((m, c)) if m.is_one() && c.is_rational() => c.value.inv(),
                        _ => None,
                    };
                    match inv {
                        Some(v) => acc = acc.scale(&Coefficient::rational(v)),
                        None => bail!(Parse, "division only by nonzero rational constants"),
                    }
                }
                _ if self.starts_atom() => {
                    let f = self.power()?;
                    acc = acc.checked_mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RadicalPolynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Int(e, false)) => {
                    let e: u32 = match u32::try_from(&e) {
                        Ok(e) => e,
                        Err(_) => bail!(Parse, "exponent {} too large", e),
                    };
                    return base.pow(e);
                }
                _ => bail!(Parse, "expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn number(&mut self, v: BigInt, imag: bool) -> Result<RadicalPolynomial> {
        let mut r = BigRational::from_integer(v);
        let mut imag = imag;
        // `a/b` literal binds tighter than term division so `3/4i` is `(3/4)i`
        if let (Some(Tok::Slash), Some(Tok::Int(d, di))) = (self.toks.get(self.pos), self.toks.get(self.pos + 1)) {
            if d.is_zero() {
                bail!(Parse, "division by zero");
            }
            r /= BigRational::from_integer(d.clone());
            imag |= *di;
            self.pos += 2;
        }
        let g = if imag { GaussRat::new(BigRational::zero(), r) } else { GaussRat::real(r) };
        Ok(self.constant(Coefficient::rational(g)))
    }

    fn atom(&mut self) -> Result<RadicalPolynomial> {
        match self.next() {
            Some(Tok::Int(v, imag)) => self.number(v, imag),
            Some(Tok::Ident(name)) if name == "sqrt" => {
                if self.next() != Some(Tok::LParen) {
                    bail!(Parse, "expected '(' after sqrt");
                }
                let inner = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    bail!(Parse, "expected ')' closing sqrt");
                }
                let r = if inner.is_zero() {
                    BigRational::zero()
                } else {
                    match inner.as_monomial() {
                        Some((m, c)) if m.is_one() && c.is_rational() && c.value.is_real() => c.value.re.clone(),
                        _ => bail!(Parse, "sqrt takes a rational constant"),
                    }
                };
                Ok(self.constant(Coefficient::sqrt(&r)?))
            }
            Some(Tok::Ident(name)) if name == "i" && self.ring.index_of("i").is_none() => {
                Ok(self.constant(Coefficient::rational(GaussRat::i())))
            }
            Some(Tok::Ident(name)) => match self.ring.index_of(&name) {
                Some(k) => {
                    Ok(RadicalPolynomial::term(self.ring, Monomial::var(self.ring.nvars(), k), Coefficient::one()))
                }
                None => bail!(Parse, "unknown variable {:?}", name),
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    bail!(Parse, "expected ')'");
                }
                Ok(e)
            }
            Some(t) => bail!(Parse, "unexpected token {:?}", t),
            None => bail!(Parse, "unexpected end of input"),
        }
    }
}

/// Parses the textual polynomial format, radicals allowed.
pub fn parse_radical(ring: &Arc<PolyRing>, s: &str) -> Result<RadicalPolynomial> {
    let toks = lex(s)?;
    if toks.is_empty() {
        bail!(Parse, "empty polynomial");
    }
    let mut p = Parser { toks, pos: 0, ring };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        bail!(Parse, "trailing input after position {}", p.pos);
    }
    Ok(e)
}

/// Parses a polynomial with Gaussian-rational coefficients.
pub fn parse_polynomial(ring: &Arc<PolyRing>, s: &str) -> Result<Polynomial> {
    let r = parse_radical(ring, s)?;
    if !r.is_rational() {
        bail!(UnsupportedCoefficient, "radical coefficient in {:?}", s);
    }
    r.to_polynomial()
}
