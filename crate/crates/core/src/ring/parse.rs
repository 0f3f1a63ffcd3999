//! Text syntax for polynomials.
//!
//! Grammar: sums and differences of products of powers, with parentheses.
//! Variables are `z`, `c<k>`, `x[i]`, `y[i]`, `u[k]`, `v[l]`.
//! `x3` is shorthand for `x[3]` (negative indices need brackets), and a bare
//! `x` or `y` means index 1.

use std::str::FromStr;

use super::{Integer, Poly, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial at byte {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParsePolyError> {
        Err(ParsePolyError {
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn expr(&mut self) -> Result<Poly, ParsePolyError> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc += &self.term()?;
            } else if self.eat(b'-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParsePolyError> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, ParsePolyError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let d = self.digits();
            match d.parse::<u32>() {
                Ok(e) => Ok(base.pow(e)),
                Err(_) => self.err("expected a nonnegative exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn index(&mut self, default: Option<i64>) -> Result<i64, ParsePolyError> {
        if self.src.get(self.pos) == Some(&b'[') {
            self.pos += 1;
            self.skip_ws();
            let neg = self.eat(b'-');
            self.skip_ws();
            let d = self.digits();
            let Ok(v) = d.parse::<i64>() else {
                return self.err("expected an integer index");
            };
            if !self.eat(b']') {
                return self.err("expected ']'");
            }
            return Ok(if neg { -v } else { v });
        }
        let d = self.digits();
        if d.is_empty() {
            match default {
                Some(v) => Ok(v),
                None => self.err("expected an index"),
            }
        } else {
            match d.parse::<i64>() {
                Ok(v) => Ok(v),
                Err(_) => self.err("index out of range"),
            }
        }
    }

    fn atom(&mut self) -> Result<Poly, ParsePolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                Ok(Poly::constant(d.parse::<Integer>().unwrap()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                let var = match c {
                    b'z' => Var::Z,
                    b'c' => {
                        let k = self.index(None)?;
                        if k < 1 {
                            return self.err("Chern class index must be positive");
                        }
                        Var::C(k as u32)
                    }
                    b'x' => Var::X(self.index(Some(1))? as i32),
                    b'y' => Var::Y(self.index(Some(1))? as i32),
                    b'u' => Var::U(self.unsigned_index()?),
                    b'v' => Var::V(self.unsigned_index()?),
                    _ => {
                        self.pos -= 1;
                        return self.err(format!("unknown variable '{}'", c as char));
                    }
                };
                Ok(Poly::var(var))
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn unsigned_index(&mut self) -> Result<u32, ParsePolyError> {
        let k = self.index(None)?;
        if k < 1 {
            return self.err("index must be positive");
        }
        Ok(k as u32)
    }
}

impl FromStr for Poly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_forms() {
        assert_eq!("x".parse::<Poly>().unwrap(), Poly::x(1));
        assert_eq!("x3".parse::<Poly>().unwrap(), Poly::x(3));
        assert_eq!("y[-2]".parse::<Poly>().unwrap(), Poly::y(-2));
        assert_eq!("c12".parse::<Poly>().unwrap(), Poly::c(12));
        assert_eq!("u[2]*v1".parse::<Poly>().unwrap(), &Poly::u(2) * &Poly::v(1));
    }

    #[test]
    fn rejects_garbage() {
        assert!("c0".parse::<Poly>().is_err());
        assert!("x +".parse::<Poly>().is_err());
        assert!("(x".parse::<Poly>().is_err());
        assert!("w".parse::<Poly>().is_err());
        assert!("x y".parse::<Poly>().is_err());
    }
}
