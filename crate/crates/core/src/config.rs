//! Algebra spec strings.
//!
//! ```text
//! spec   := "classical:" d | "realsym:" m | "cherm:" m | "qherm:" m
//!         | "spin:" d | "oct3"
//!         | "sum(" spec ("," spec)* ")"
//!         | "tensor(" spec ";" n ")" | "tensor(" spec ("," spec)* ")"
//! ```

use crate::algebra::{Algebra, AlgebraDescriptor};
use crate::error::{EjaError, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(EjaError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an algebra name");
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).to_ascii_lowercase())
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a positive integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: usize = s.parse().map_err(|_| EjaError::Parse {
            pos: start,
            msg: "integer out of range".into(),
        })?;
        if v == 0 {
            self.pos = start;
            return self.err("size must be >= 1");
        }
        Ok(v)
    }

    fn list(&mut self) -> Result<Vec<Algebra>> {
        let mut items = vec![self.spec()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            items.push(self.spec()?);
        }
        Ok(items)
    }

    fn spec(&mut self) -> Result<Algebra> {
        let start = self.pos;
        let name = self.ident()?;
        let sized = |p: &mut Self| -> Result<usize> {
            p.expect(b':')?;
            p.number()
        };
        match name.as_str() {
            "classical" => AlgebraDescriptor::classical(sized(self)?),
            "realsym" => AlgebraDescriptor::real_sym(sized(self)?),
            "cherm" => AlgebraDescriptor::complex_herm(sized(self)?),
            "qherm" => AlgebraDescriptor::quat_herm(sized(self)?),
            "spin" => AlgebraDescriptor::spin(sized(self)?),
            "oct3" => AlgebraDescriptor::oct_herm3(),
            "sum" => {
                self.expect(b'(')?;
                let items = self.list()?;
                self.expect(b')')?;
                AlgebraDescriptor::direct_sum(items)
            }
            "tensor" => {
                self.expect(b'(')?;
                let first = self.spec()?;
                let factors = if self.peek() == Some(b';') {
                    self.pos += 1;
                    let n = self.number()?;
                    vec![first; n]
                } else {
                    let mut f = vec![first];
                    while self.peek() == Some(b',') {
                        self.pos += 1;
                        f.push(self.spec()?);
                    }
                    f
                };
                self.expect(b')')?;
                AlgebraDescriptor::tensor(factors)
            }
            other => {
                self.pos = start;
                self.err(format!("unknown algebra '{other}'"))
            }
        }
    }
}

pub fn parse_algebra(s: &str) -> Result<Algebra> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let alg = p.spec()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(alg)
}
