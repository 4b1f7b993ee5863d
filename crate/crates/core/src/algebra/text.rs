//! Textual multivector format: `c0 + c1 g0 + ... + c15 g0123`.
//!
//! The printer always emits all sixteen terms using the shortest decimal that
//! round-trips exactly. The parser is more lenient: terms may appear in any
//! order or be omitted, repeated blades accumulate, a bare blade name means a
//! unit coefficient, and `-` may separate terms.

use std::fmt;
use std::str::FromStr;

use super::blades::{BLADE_COUNT, BLADE_NAMES};
use super::multivector::Multivector;
use crate::error::Error;

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        write!(f, "{:?}", c[0])?;
        for i in 1..BLADE_COUNT {
            write!(f, " + {:?} {}", c[i], BLADE_NAMES[i])?;
        }
        Ok(())
    }
}

impl FromStr for Multivector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Parser { src: s.as_bytes(), pos: 0 }.parse()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} in {:?}", self.pos, String::from_utf8_lossy(self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Multivector, Error> {
        let mut out = Multivector::ZERO;
        let mut first = true;
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                if first {
                    return Err(self.err("empty multivector"));
                }
                return Ok(out);
            }
            let mut sign = 1.0;
            if !first {
                match self.peek() {
                    Some(b'+') => self.pos += 1,
                    Some(b'-') => {
                        sign = -1.0;
                        self.pos += 1
                    }
                    _ => return Err(self.err("expected '+' or '-'")),
                }
            }
            let (coeff, blade) = self.term()?;
            out[blade] += sign * coeff;
            first = false;
        }
    }

    fn term(&mut self) -> Result<(f64, usize), Error> {
        self.skip_ws();
        let mut sign = 1.0;
        while let Some(b @ (b'+' | b'-')) = self.peek() {
            if b == b'-' {
                sign = -sign;
            }
            self.pos += 1;
            self.skip_ws();
        }
        let coeff = self.number()?;
        self.skip_ws();
        if self.peek() == Some(b'*') {
            self.pos += 1;
            self.skip_ws();
        }
        let blade = if self.peek() == Some(b'g') { self.blade()? } else { 0 };
        match (coeff, blade) {
            (None, 0) => Err(self.err("expected a number or blade name")),
            (c, b) => Ok((sign * c.unwrap_or(1.0), b)),
        }
    }

    fn number(&mut self) -> Result<Option<f64>, Error> {
        let start = self.pos;
        for word in ["NaN", "inf"] {
            if self.src[self.pos..].starts_with(word.as_bytes()) {
                self.pos += word.len();
                return Ok(Some(word.parse().unwrap()));
            }
        }
        while matches!(self.peek(), Some(b'0'..=b'9' | b'.')) {
            self.pos += 1;
        }
        if self.pos > start && matches!(self.peek(), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            let digits = self.pos;
            while matches!(self.peek(), Some(b'0'..=b'9')) {
                self.pos += 1;
            }
            if self.pos == digits {
                self.pos = save;
            }
        }
        if self.pos == start {
            return Ok(None);
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<f64>().map(Some).map_err(|_| self.err("malformed number"))
    }

    fn blade(&mut self) -> Result<usize, Error> {
        let start = self.pos;
        self.pos += 1;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        BLADE_NAMES
            .iter()
            .skip(1)
            .position(|&n| n == name)
            .map(|i| i + 1)
            .ok_or_else(|| self.err(&format!("unknown blade {name:?}")))
    }
}
