//! Text grammar for polynomials in x1..x4 (aliases x, y, z, w) with rational coefficients.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*
//! power  := atom ['^' integer]
//! atom   := integer | variable | parameter | '(' expr ')'
//! ```
//! Division is only allowed by nonzero constants. Parameters are names bound by the caller.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};

pub const NVARS: usize = 4;

pub type Bindings = BTreeMap<String, BigRational>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    params: &'a Bindings,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

fn variable_index(name: &str) -> Option<usize> {
    match name {
        "x1" | "x" => Some(0),
        "x2" | "y" => Some(1),
        "x3" | "z" => Some(2),
        "x4" | "w" => Some(3),
        _ => None,
    }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly<Rationals>> {
        let mut acc = MultiPoly::zero(&Rationals, NVARS);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly<Rationals>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let p = self.power()?;
                    acc = acc.mul(&p);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let p = self.power()?;
                    let c = match p.constant_value() {
                        Some(c) if !c.is_zero() => c,
                        Some(_) => return err(at, "division by zero"),
                        None => return err(at, "division by a non-constant"),
                    };
                    acc = acc.scale(&Rationals.inv(&c).unwrap());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly<Rationals>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return err(start, "expected exponent");
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| Error::Parse {
                    pos: start,
                    msg: "exponent too large".into(),
                })?;
            if e > 64 {
                return err(start, "exponent too large");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly<Rationals>> {
        let at = match self.peek() {
            None => return err(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        let c = self.src[at];
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if self.peek() != Some(b')') {
                return err(self.pos, "expected ')'");
            }
            self.pos += 1;
            return Ok(e);
        }
        if c.is_ascii_digit() {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: BigInt = std::str::from_utf8(&self.src[at..self.pos])
                .unwrap()
                .parse()
                .unwrap();
            return Ok(MultiPoly::constant(
                &Rationals,
                NVARS,
                BigRational::from_integer(n),
            ));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[at..self.pos]).unwrap();
            if let Some(i) = variable_index(name) {
                return Ok(MultiPoly::var(&Rationals, NVARS, i));
            }
            if let Some(v) = self.params.get(name) {
                return Ok(MultiPoly::constant(&Rationals, NVARS, v.clone()));
            }
            return err(at, format!("unknown identifier {name:?}"));
        }
        err(at, format!("unexpected character {:?}", c as char))
    }
}

/// Parses a polynomial expression over ℚ in x1..x4.
pub fn parse_poly(text: &str, params: &Bindings) -> Result<MultiPoly<Rationals>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        params,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "unexpected trailing input");
    }
    Ok(e)
}

/// Parses a rational literal such as `-16/27`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let p = parse_poly(text, &Bindings::new())?;
    p.constant_value().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("{text:?} is not a constant"),
    })
}
