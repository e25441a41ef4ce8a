//! Text syntax for ring elements: `3*t1^2*t2^-1 - 1`, with optional
//! parentheses and a single top-level `/` for fractions.

use num_bigint::BigInt;

use super::frac::RingFrac;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: 1, col: self.pos + 1, msg: msg.into() })
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

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            std::str::from_utf8(&self.src[start..self.pos]).ok()
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        self.skip_ws();
        match self.digits() {
            Some(d) => match d.parse::<i64>() {
                Ok(v) => Ok(if neg { -v } else { v }),
                Err(_) => self.err("exponent out of range"),
            },
            None => self.err("expected integer exponent"),
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.nvars);
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                false
            } else if first {
                false
            } else {
                break;
            };
            first = false;
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                if self.eat(b'^') {
                    let k = self.signed_int()?;
                    if k < 0 {
                        if let Some(inv) = e.unit_inverse() {
                            return Ok(inv.pow((-k) as u32));
                        }
                        return self.err("negative power of a non-unit");
                    }
                    return Ok(e.pow(k as u32));
                }
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                let Some(d) = self.digits() else {
                    return self.err("expected variable index after 't'");
                };
                let i: usize = match d.parse() {
                    Ok(i) => i,
                    Err(_) => return self.err("variable index out of range"),
                };
                if i == 0 || i > self.nvars {
                    return self.err(format!("variable t{} outside t1..t{}", i, self.nvars));
                }
                let k = if self.eat(b'^') { self.signed_int()? } else { 1 };
                let mut e = vec![0; self.nvars];
                e[i - 1] = k;
                Ok(LaurentPoly::monomial(self.nvars, e, 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().expect("digit present");
                let v: BigInt = d.parse().expect("digits parse");
                Ok(LaurentPoly::constant(self.nvars, v))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a Laurent polynomial in variables `t1..tn`.
pub fn parse_poly(s: &str, nvars: usize) -> Result<LaurentPoly> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, nvars };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses `a` or `a/b` where `a`, `b` are polynomial expressions.
pub fn parse_frac(s: &str, nvars: usize) -> Result<RingFrac> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, nvars };
    let num = p.expr()?;
    let out = if p.eat(b'/') {
        let den = p.factor()?;
        RingFrac::new(num, den)?
    } else {
        RingFrac::from_poly(num)
    };
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

impl std::str::FromStr for LaurentPoly {
    type Err = Error;
    /// Infers the variable count from the largest index mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let mut n = 0;
        let b = s.as_bytes();
        for i in 0..b.len() {
            if b[i] == b't' {
                let d: String = b[i + 1..].iter().take_while(|c| c.is_ascii_digit()).map(|&c| c as char).collect();
                if let Ok(k) = d.parse::<usize>() {
                    n = n.max(k);
                }
            }
        }
        parse_poly(s, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["3*t1^2*t2^-1 - 1", "0", "-t2", "t1*t2 + 2*t1^-1 - 7", "-5*t1^3*t2^2"] {
            let p = parse_poly(s, 2).unwrap();
            assert_eq!(parse_poly(&p.to_string(), 2).unwrap(), p);
        }
        assert_eq!(parse_poly("3*t1^2*t2^-1 - 1", 2).unwrap().to_string(), "3*t1^2*t2^-1 - 1");
    }

    #[test]
    fn parenthesized_products() {
        let p = parse_poly("(t1 - 1)*(t1^-1 - 1)", 1).unwrap();
        assert_eq!(p, parse_poly("2 - t1 - t1^-1", 1).unwrap());
        assert_eq!(parse_poly("(t1 + 1)^2", 1).unwrap(), parse_poly("t1^2 + 2*t1 + 1", 1).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("t3", 2).is_err());
        assert!(parse_poly("3 +", 1).is_err());
        assert!(parse_poly("x", 1).is_err());
        assert!(parse_poly("t1 t1", 1).is_err());
    }
}
