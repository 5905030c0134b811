//! Text syntax for ring elements.
//!
//! ```text
//! element    = ["-"] term { ("+" | "-") term } ;
//! term       = [ uint "*" ] monomial ;
//! monomial   = { varfactor "*" } deriv ;
//! varfactor  = "x" uint [ "^" uint ] ;
//! deriv      = "d" uint ;
//! ```
//!
//! Whitespace may separate tokens. The single token `0` denotes zero.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::ring::{BasisElement, RingContext, RingElement};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a RingContext,
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

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => self.syntax(format!(
                "expected `{}`, found `{}`",
                byte as char, b as char
            )),
            None => self.syntax(format!("expected `{}`, found end of input", byte as char)),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax("expected an unsigned integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            message: format!("integer `{digits}` too large"),
        })
    }

    fn index(&mut self) -> Result<u32> {
        self.skip_ws();
        let pos = self.pos;
        let value = self.uint()?;
        let n = self.ctx.n();
        if value == 0 || value > n as u64 {
            return Err(Error::IndexOutOfRange {
                index: value,
                n,
                pos,
            });
        }
        Ok(value as u32)
    }

    fn element(&mut self) -> Result<RingElement> {
        let mut out = RingElement::zero();
        let mut sign = 1i64;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -1;
        }
        loop {
            let (coeff, e) = self.term()?;
            let coeff = coeff
                .checked_mul(sign)
                .ok_or(Error::Overflow("coefficient"))?;
            out.add_term(coeff, e)?;
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(b) => return self.syntax(format!("unexpected `{}`", b as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(i64, BasisElement)> {
        let mut coeff = 1i64;
        if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            let start = self.pos;
            let value = self.uint()?;
            coeff = i64::try_from(value).map_err(|_| Error::Syntax {
                pos: start,
                message: "coefficient too large".into(),
            })?;
            self.expect(b'*')?;
        }
        let start = self.pos;
        let mut partition = Partition::empty();
        loop {
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    let part = self.index()?;
                    let mut exp = 1u64;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        exp = self.uint()?;
                    }
                    let exp = u32::try_from(exp).map_err(|_| Error::Overflow("exponent"))?;
                    partition.add(part, exp)?;
                    self.expect(b'*')?;
                }
                Some(b'd') => {
                    self.pos += 1;
                    let k = self.index()?;
                    let text = String::from_utf8_lossy(&self.src[start..self.pos])
                        .trim()
                        .to_string();
                    if partition.max_part() >= k {
                        return Err(Error::PartExceedsDirection { monomial: text });
                    }
                    let e = BasisElement::new(self.ctx, partition, k)?;
                    return Ok((coeff, e));
                }
                Some(b) => {
                    return self.syntax(format!("expected `x` or `d`, found `{}`", b as char))
                }
                None => return self.syntax("expected `x` or `d`, found end of input"),
            }
        }
    }
}

/// Parses an element of the ring of rank `ctx.n()`.
pub fn parse_element(ctx: &RingContext, text: &str) -> Result<RingElement> {
    if text.trim() == "0" {
        return Ok(RingElement::zero());
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    };
    if p.peek().is_none() {
        return p.syntax("empty input");
    }
    p.element()
}

/// Canonical rendering; `parse_element` inverts it.
pub fn print_element(x: &RingElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in x.terms().enumerate() {
        match (idx, c < 0) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.unsigned_abs();
        if abs != 1 {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(&e.to_string());
    }
    out
}
