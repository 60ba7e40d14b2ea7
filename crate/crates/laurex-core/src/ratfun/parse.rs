use alloc::string::String;
use alloc::string::ToString;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::hilbert::HilbertRational;
use super::laurent::LaurentPoly;

/// Parse failure with a byte position into the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.message)
    }
}

struct Cursor<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            input: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&alloc::format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a digit"));
        }
        let s = core::str::from_utf8(&self.input[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn parse_int(&mut self) -> Result<BigInt, ParseError> {
        let neg = self.eat(b'-');
        let n = self.parse_uint()?;
        Ok(if neg { -n } else { n })
    }

    /// One term: `[coefficient ['*']] ['t' ['^' int]]`, at least one part.
    fn parse_term(&mut self) -> Result<(i64, BigRational), ParseError> {
        let mut coeff: Option<BigRational> = None;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let n = self.parse_uint()?;
            let c = if self.eat(b'/') {
                let d = self.parse_uint()?;
                BigRational::new(n, d)
            } else {
                BigRational::from_integer(n)
            };
            coeff = Some(c);
            self.eat(b'*');
        }
        if self.eat(b't') {
            let exp = if self.eat(b'^') {
                let e = self.parse_int()?;
                i64::try_from(e).map_err(|_| self.error("exponent out of range"))?
            } else {
                1
            };
            Ok((exp, coeff.unwrap_or_else(BigRational::one)))
        } else {
            match coeff {
                Some(c) => Ok((0, c)),
                None => Err(self.error("expected a coefficient or 't'")),
            }
        }
    }

    fn parse_poly(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut p = LaurentPoly::zero();
        let mut sign = if self.eat(b'-') {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        loop {
            let (e, c) = self.parse_term()?;
            p.add_term(e, &(c * &sign));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = BigRational::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -BigRational::one();
                }
                _ => break,
            }
        }
        Ok(p)
    }

    /// `'(' poly ')' ['^' uint]`.
    fn parse_factor(&mut self) -> Result<LaurentPoly, ParseError> {
        self.expect(b'(')?;
        let p = self.parse_poly()?;
        self.expect(b')')?;
        if self.eat(b'^') {
            let e = self.parse_uint()?;
            let e = u32::try_from(e).map_err(|_| self.error("factor power out of range"))?;
            Ok(p.pow(e))
        } else {
            Ok(p)
        }
    }
}

impl LaurentPoly {
    /// Parses the term grammar used by [`core::fmt::Display`], e.g.
    /// `1-2t+t^2`, `t^-2`, `1/3*t^2`.
    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let mut c = Cursor::new(s);
        let p = c.parse_poly()?;
        c.skip_ws();
        if c.pos != c.input.len() {
            return Err(c.error("trailing input"));
        }
        Ok(p)
    }
}

impl HilbertRational {
    /// Parses `(numerator) / (factor)(factor)...` with optional `^k` powers
    /// on the factors; a bare polynomial (with or without parentheses) is
    /// also accepted.
    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let mut c = Cursor::new(s);
        let num = if c.peek() == Some(b'(') {
            c.parse_factor()?
        } else {
            c.parse_poly()?
        };
        let mut den = LaurentPoly::one();
        if c.eat(b'/') {
            loop {
                den = den.mul(&c.parse_factor()?);
                if c.peek() != Some(b'(') {
                    break;
                }
            }
        }
        c.skip_ws();
        if c.pos != c.input.len() {
            return Err(c.error("trailing input"));
        }
        HilbertRational::from_fraction(num, den).map_err(|_| ParseError {
            pos: 0,
            message: "denominator is zero".to_string(),
        })
    }
}
