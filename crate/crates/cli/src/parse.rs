//! Polynomial expressions in `x` with exact rational literals.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (['*'] unary)*        implicit product before x, digit or '('
//! unary  := ('+' | '-') unary | power
//! power  := atom ['^' digits]
//! atom   := digits ['/' digits] | 'x' | '(' expr ')'
//! ```

use commpoly_core::{Poly, Rational};
use num_bigint::BigInt;
use num_traits::Zero;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    max_degree: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn error<T>(&self, offset: usize, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> PResult<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error(start, "expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok((start, text))
    }

    fn expr(&mut self) -> PResult<Poly<Rational>> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Poly<Rational>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'x' | b'(' | b'0'..=b'9') => {}
                _ => return Ok(acc),
            }
            let start = self.pos;
            let rhs = self.unary()?;
            acc = self.checked_product(&acc, &rhs, start)?;
        }
    }

    fn unary(&mut self) -> PResult<Poly<Rational>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<Poly<Rational>> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let (at, text) = self.digits()?;
        let exp = match text.parse::<usize>() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return self.error(at, format!("exponent exceeds {MAX_EXPONENT}")),
        };
        let deg = base.degree().unwrap_or(0);
        if deg.saturating_mul(exp) > self.max_degree {
            return self.error(at, format!("degree exceeds {}", self.max_degree));
        }
        Ok(base.pow(exp as u32))
    }

    fn atom(&mut self) -> PResult<Poly<Rational>> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.error(open, "unclosed parenthesis");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'0'..=b'9') => {
                let (_, num) = self.digits()?;
                let num: BigInt = num.parse().expect("digits");
                let mut den = BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let (at, d) = self.digits()?;
                    den = d.parse().expect("digits");
                    if den.is_zero() {
                        return self.error(at, "zero denominator");
                    }
                }
                Ok(Poly::constant(Rational::new(num, den)))
            }
            Some(c) => self.error(self.pos, format!("unexpected {:?}", c as char)),
            None => self.error(self.pos, "unexpected end of input"),
        }
    }

    fn checked_product(
        &self,
        a: &Poly<Rational>,
        b: &Poly<Rational>,
        at: usize,
    ) -> PResult<Poly<Rational>> {
        let deg = a.degree().unwrap_or(0) + b.degree().unwrap_or(0);
        if deg > self.max_degree {
            return self.error(at, format!("degree exceeds {}", self.max_degree));
        }
        Ok(a * b)
    }
}

/// Parses with the result degree capped at `max_degree`.
pub fn parse_poly_with_limit(text: &str, max_degree: usize) -> Result<Poly<Rational>, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        max_degree,
    };
    if p.peek().is_none() {
        return p.error(0, "empty expression");
    }
    let poly = p.expr()?;
    if let Some(c) = p.peek() {
        return p.error(p.pos, format!("unexpected {:?}", c as char));
    }
    Ok(poly)
}

pub fn parse_poly(text: &str) -> Result<Poly<Rational>, ParseError> {
    parse_poly_with_limit(text, MAX_EXPONENT)
}
