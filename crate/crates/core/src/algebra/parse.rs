use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::Ring;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((col, Tok::Num(s.parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((col, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => return Err(Error::parse(col, format!("unexpected character `{}`", other))),
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ring: &'a Ring,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_col)
    }

    fn exponent(&mut self) -> Result<u32> {
        let col = self.col();
        match self.toks.get(self.pos) {
            Some((_, Tok::Num(n))) => {
                let e = u32::try_from(n.clone()).map_err(|_| Error::parse(col, "exponent too large"))?;
                self.pos += 1;
                Ok(e)
            }
            _ => Err(Error::parse(col, "expected exponent")),
        }
    }

    /// One factor: a coefficient (`a` or `a/b`) or a variable power.
    fn factor(&mut self, coeff: &mut Rational, exps: &mut [u32]) -> Result<()> {
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Num(n))) => {
                self.pos += 1;
                let mut value = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let dcol = self.col();
                    match self.toks.get(self.pos).cloned() {
                        Some((_, Tok::Num(d))) if !d.is_zero() => {
                            self.pos += 1;
                            value /= Rational::from_integer(d);
                        }
                        Some((_, Tok::Num(_))) => return Err(Error::parse(dcol, "division by zero")),
                        _ => return Err(Error::parse(dcol, "expected denominator")),
                    }
                }
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    let e = self.exponent()?;
                    let mut p = Rational::one();
                    for _ in 0..e {
                        p *= &value;
                    }
                    value = p;
                }
                *coeff *= value;
                Ok(())
            }
            Some((_, Tok::Ident(name))) => {
                self.pos += 1;
                let idx = self
                    .ring
                    .var_index(&name)
                    .map_err(|_| Error::parse(col, format!("unknown variable `{}`", name)))?;
                let mut e = 1;
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    e = self.exponent()?;
                }
                exps[idx] += e;
                Ok(())
            }
            _ => Err(Error::parse(col, "expected coefficient or variable")),
        }
    }

    fn term(&mut self, sign: Rational) -> Result<(Monomial, Rational)> {
        let mut coeff = sign;
        let mut exps = vec![0u32; self.ring.nvars()];
        self.factor(&mut coeff, &mut exps)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    self.factor(&mut coeff, &mut exps)?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) => self.factor(&mut coeff, &mut exps)?,
                _ => break,
            }
        }
        Ok((Monomial::from_exponents(exps), coeff))
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut sign = Rational::one();
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = -sign;
            }
            Some(Tok::Plus) => self.pos += 1,
            None => return Err(Error::parse(self.col(), "empty polynomial")),
            _ => {}
        }
        terms.push(self.term(sign)?);
        while let Some(t) = self.peek() {
            let sign = match t {
                Tok::Plus => Rational::one(),
                Tok::Minus => -Rational::one(),
                _ => return Err(Error::parse(self.col(), "expected `+` or `-`")),
            };
            self.pos += 1;
            terms.push(self.term(sign)?);
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}

impl Polynomial {
    /// Parses the text grammar, e.g. `x0^3 + x1^3 - 3*x0*x1*x2` or `1/2*x0 x1`.
    pub fn parse(ring: &Ring, src: &str) -> Result<Polynomial> {
        let toks = lex(src)?;
        let mut p = Parser {
            toks,
            pos: 0,
            ring,
            end_col: src.chars().count() + 1,
        };
        p.polynomial()
    }
}
