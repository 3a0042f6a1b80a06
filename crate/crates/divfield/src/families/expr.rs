//! Parser for polynomial displays in one variable, e.g. `27t^3(t^3+8)^3` or
//! `-(t^20 - 228t^15 + 1)/48`.

use crate::algebra_core::{Rational, UniPoly};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial {input:?} at byte {pos}: {msg}")]
pub struct ExprError {
    pub input: String,
    pub pos: usize,
    pub msg: &'static str,
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    var: u8,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &'static str) -> Result<T, ExprError> {
        Err(ExprError { input: self.src.to_string(), pos: self.pos, msg })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn small(&mut self) -> Result<u32, ExprError> {
        let n = self.integer()?;
        match u32::try_from(n) {
            Ok(e) if e <= 1000 => Ok(e),
            _ => self.err("exponent out of range"),
        }
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<UniPoly, ExprError> {
        let mut acc = UniPoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    // term := factor (['*'] factor | '/' integer)*
    fn term(&mut self) -> Result<UniPoly, ExprError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return self.err("division by zero");
                    }
                    acc = acc.scale(&Rational::new(1.into(), d));
                }
                Some(c) if c == b'(' || c == self.var || c.is_ascii_digit() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // factor := atom ['^' integer]
    fn factor(&mut self) -> Result<UniPoly, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.small()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<UniPoly, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c == self.var => {
                self.pos += 1;
                Ok(UniPoly::x())
            }
            Some(c) if c.is_ascii_digit() => Ok(UniPoly::constant(Rational::from_integer(self.integer()?))),
            _ => self.err("expected a number, the variable or '('"),
        }
    }
}

/// Parses a polynomial in the variable `var` with rational coefficients.
pub fn parse_poly(src: &str, var: char) -> Result<UniPoly, ExprError> {
    let mut p = Parser { src, bytes: src.as_bytes(), pos: 0, var: var as u8 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}
