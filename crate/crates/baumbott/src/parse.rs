//! Text syntax for polynomials.
//!
//! Variables are `z1..zN`, operators `+ - * ^`, literals are integers or
//! rationals (`3/2`), and `i` is the imaginary unit. Multiplication is
//! always explicit (`2*z1`, not `2z1`). Everything is parsed exactly;
//! errors carry the byte offset of the offending token.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::GaussianRational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Parse a polynomial in the variables `z1..z{nvars}`.
pub fn parse_polynomial(src: &str, nvars: usize) -> Result<Polynomial> {
    Parser::new(src, 'z', nvars).run()
}

/// Parse with a different variable prefix (`c1..`, `p1..`); used for
/// symmetric-polynomial input.
pub fn parse_with_prefix(src: &str, prefix: char, nvars: usize) -> Result<Polynomial> {
    Parser::new(src, prefix, nvars).run()
}

/// Largest index following the given variable prefix anywhere in `src`,
/// or 0 when the prefix never occurs.
pub fn max_var_index(src: &str, prefix: char) -> usize {
    let bytes = src.as_bytes();
    let mut best = 0usize;
    let mut k = 0;
    while k < bytes.len() {
        if bytes[k] as char == prefix && k + 1 < bytes.len() && bytes[k + 1].is_ascii_digit() {
            let mut j = k + 1;
            let mut v = 0usize;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                v = v.saturating_mul(10).saturating_add((bytes[j] - b'0') as usize);
                j += 1;
            }
            best = best.max(v);
            k = j;
        } else {
            k += 1;
        }
    }
    best
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    prefix: char,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, prefix: char, nvars: usize) -> Self {
        Parser { src: src.as_bytes(), pos: 0, prefix, nvars }
    }

    fn run(mut self) -> Result<Polynomial> {
        let p = self.expr()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }

    fn err(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.to_string() }
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

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Polynomial::constant(self.nvars, GaussianRational::i()))
            }
            Some(c) if c as char == self.prefix => {
                let start = self.pos;
                self.pos += 1;
                if !matches!(self.src.get(self.pos), Some(d) if d.is_ascii_digit()) {
                    self.pos = start;
                    return Err(self.err("expected variable index after prefix"));
                }
                let idx = self.uint()? as usize;
                if idx == 0 || idx > self.nvars {
                    self.pos = start;
                    return Err(self.err(&format!(
                        "variable index out of range 1..={}",
                        self.nvars
                    )));
                }
                Ok(Polynomial::var(self.nvars, idx - 1).unwrap())
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.bigint()?;
                let den = if self.src.get(self.pos) == Some(&b'/')
                    && matches!(self.src.get(self.pos + 1), Some(d) if d.is_ascii_digit())
                {
                    self.pos += 1;
                    self.bigint()?
                } else {
                    BigInt::one()
                };
                let q = GaussianRational::from_rational(BigRational::new(num, den));
                Ok(Polynomial::constant(self.nvars, q))
            }
            _ => Err(self.err("expected a factor (variable, literal, 'i', or '(')")),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.src.get(self.pos), Some(d) if d.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| self.err("integer too large"))
    }

    fn bigint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.src.get(self.pos), Some(d) if d.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(BigInt::parse_bytes(&self.src[start..self.pos], 10).unwrap())
    }
}
