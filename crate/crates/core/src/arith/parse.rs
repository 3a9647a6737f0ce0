//! Recursive-descent reader for the textual polynomial grammar:
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := sign? atom ('^' posint)?
//! atom   := int ('/' int)? | ident | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::field::Field;
use super::poly::Poly;
use super::ring::{RingExt, RingRef};
use crate::error::{Error, Result};

pub fn parse_poly<F: Field>(text: &str, ring: &RingRef<F>) -> Result<Poly<F>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a, F: Field> {
    src: &'a [u8],
    pos: usize,
    ring: &'a RingRef<F>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly<F>> {
        if self.peek().is_none() {
            return Err(self.err("empty expression"));
        }
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly<F>> {
        if self.eat(b'-') {
            return Ok(-&self.factor()?);
        }
        if self.eat(b'+') {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| Error::Syntax {
                pos: start,
                msg: "exponent too large".into(),
            })?;
            if e == 0 {
                return Err(Error::Syntax {
                    pos: start,
                    msg: "exponents must be positive".into(),
                });
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Poly<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num = self.integer()?;
                let c = if self.eat(b'/') {
                    let den = self.integer()?;
                    F::from_fraction(&num, &den, &self.ring.field()).map_err(|e| Error::Syntax {
                        pos: start,
                        msg: format!("coefficient not representable: {e}"),
                    })?
                } else {
                    self.ring.coeff_big(&num)
                };
                Ok(super::poly::Poly::constant(self.ring.clone(), c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                self.ring.var(name)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
