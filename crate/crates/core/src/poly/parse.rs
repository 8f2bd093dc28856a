//! Recursive-descent parser for the polynomial expression grammar:
//!
//! ```text
//! expr     := sign? term (("+"|"-") term)*
//! term     := factor ("*" factor)*
//! factor   := atom ("^" nat)?
//! atom     := rational | var | "(" expr ")"
//! rational := int ("/" posint)?
//! var      := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is allowed between tokens. The optional leading sign lets the
//! serializer's output (which may start with `-`) parse back.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poly, PolyError, Rational, Vars};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
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

    fn err(&self, expected: &str) -> PolyError {
        PolyError::Syntax {
            position: self.pos,
            expected: expected.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.digits().ok_or_else(|| self.err("natural exponent"))?;
            let e: u32 = n.try_into().map_err(|_| self.err("exponent below 2^32"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().unwrap();
                let mut den = BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    den = self.digits().ok_or_else(|| self.err("positive integer denominator"))?;
                    if den.is_zero() {
                        return Err(PolyError::Syntax {
                            position: at,
                            expected: "positive integer denominator".into(),
                        });
                    }
                }
                Ok(Poly::constant(self.vars.clone(), Rational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Poly::var_named(self.vars, name).ok_or_else(|| PolyError::UnknownVariable {
                    name: name.to_string(),
                    position: start,
                })
            }
            _ => Err(self.err("number, variable or `(`")),
        }
    }
}

/// Parses `text` as a polynomial over `ring_vars`.
pub fn parse_poly(text: &str, ring_vars: &Vars) -> Result<Poly, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: ring_vars,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("operator or end of input"));
    }
    Ok(out)
}
