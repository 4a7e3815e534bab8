//! Recursive-descent parser for ring descriptions.
//!
//! ```text
//! ring  := term ( "x" term )*          "x" surrounded by whitespace
//! term  := atom ( "[x]/(" poly ")" )*
//! atom  := "Z/" INT | "(" ring ")"
//! poly  := ["+"|"-"] mono ( ("+"|"-") mono )*
//! mono  := INT | INT ["*"] "x" ["^" INT] | "x" ["^" INT]
//! ```
//!
//! Whitespace is ignored inside polynomials. The printer in
//! [`RingSpec`]'s `Display` produces strings this parser reads back.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::ring::RingSpec;

/// Largest polynomial degree accepted before the size cap is consulted.
const MAX_DEGREE: u64 = 4096;

/// Parses with the default ring size cap.
pub fn parse_spec(input: &str) -> Result<RingSpec> {
    parse_spec_with_cap(input, Config::default().max_size)
}

pub fn parse_spec_with_cap(input: &str, cap: usize) -> Result<RingSpec> {
    let mut p = Parser { s: input.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty ring description"));
    }
    let spec = p.ring()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    spec.check_size(cap)?;
    Ok(spec)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) -> usize {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.pos - start
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.err(&format!("expected \"{lit}\"")))
        }
    }

    fn int(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        text.parse::<u64>().map_err(|_| Error::Parse {
            pos: start,
            msg: "integer out of range".into(),
        })
    }

    fn ring(&mut self) -> Result<RingSpec> {
        let mut factors = vec![self.term()?];
        loop {
            let save = self.pos;
            let before = self.skip_ws();
            if before > 0 && self.eat("x") {
                let after = self.skip_ws();
                if after > 0 {
                    factors.push(self.term()?);
                    continue;
                }
            }
            self.pos = save;
            break;
        }
        if factors.len() == 1 {
            Ok(factors.pop().expect("one factor"))
        } else {
            RingSpec::product(factors)
        }
    }

    fn term(&mut self) -> Result<RingSpec> {
        let mut base = self.atom()?;
        loop {
            let start = self.pos;
            if !self.eat("[x]/(") {
                return Ok(base);
            }
            let coeffs = self.poly(base.characteristic())?;
            self.skip_ws();
            self.expect(")")?;
            base = RingSpec::poly_quotient(base, &coeffs).map_err(|e| match e {
                Error::InvalidSpec(msg) => Error::Parse { pos: start, msg },
                other => other,
            })?;
        }
    }

    fn atom(&mut self) -> Result<RingSpec> {
        let start = self.pos;
        if self.eat("Z/") {
            let n = self.int()?;
            return RingSpec::zmod(n).map_err(|_| Error::Parse {
                pos: start,
                msg: format!("Z/{n}: modulus must be at least 2"),
            });
        }
        if self.eat("(") {
            self.skip_ws();
            let r = self.ring()?;
            self.skip_ws();
            self.expect(")")?;
            return Ok(r);
        }
        Err(self.err("expected \"Z/\" or \"(\""))
    }

    /// Coefficients lowest degree first, each reduced modulo `ch`.
    fn poly(&mut self, ch: u64) -> Result<Vec<i64>> {
        let mut coeffs: Vec<i64> = Vec::new();
        let mut first = true;
        loop {
            self.skip_ws();
            let sign: i128 = if self.eat("+") {
                1
            } else if self.eat("-") {
                -1
            } else if first {
                1
            } else {
                break;
            };
            first = false;
            self.skip_ws();
            let (c, deg) = self.monomial()?;
            if deg > MAX_DEGREE {
                return Err(self.err("polynomial degree too large"));
            }
            let deg = deg as usize;
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            let sum = coeffs[deg] as i128 + sign * (c % ch) as i128;
            coeffs[deg] = sum.rem_euclid(ch as i128) as i64;
        }
        if coeffs.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        Ok(coeffs)
    }

    fn monomial(&mut self) -> Result<(u64, u64)> {
        let coeff = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let c = self.int()?;
            self.skip_ws();
            if self.eat("*") {
                self.skip_ws();
                if self.peek() != Some(b'x') {
                    return Err(self.err("expected \"x\" after \"*\""));
                }
            } else if self.peek() != Some(b'x') {
                return Ok((c, 0));
            }
            c
        } else if self.peek() == Some(b'x') {
            1
        } else {
            return Err(self.err("expected a monomial"));
        };
        self.expect("x")?;
        self.skip_ws();
        if self.eat("^") {
            self.skip_ws();
            let k = self.int()?;
            Ok((coeff, k))
        } else {
            Ok((coeff, 1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse_spec("Z/4").unwrap(), RingSpec::Zmod(4));
        let gf4 = parse_spec("Z/2[x]/(x^2+x+1)").unwrap();
        assert_eq!(gf4, RingSpec::poly_quotient(RingSpec::Zmod(2), &[1, 1, 1]).unwrap());
        let mixed = parse_spec("Z/4 x Z/2[x]/(x^3)").unwrap();
        assert_eq!(
            mixed,
            RingSpec::Product(vec![
                RingSpec::Zmod(4),
                RingSpec::poly_quotient(RingSpec::Zmod(2), &[0, 0, 0, 1]).unwrap()
            ])
        );
    }

    #[test]
    fn polynomial_forms() {
        let a = parse_spec("Z/3[x]/( x^3 + 2 x^2 - 1 )").unwrap();
        let b = parse_spec("Z/3[x]/(1*x^3+2*x^2+2)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "Z/3[x]/(x^3+2*x^2+2)");
        let c = parse_spec("Z/5[x]/(x + x + 3x^2 - 2x^2 + 4)").unwrap();
        assert_eq!(c.to_string(), "Z/5[x]/(x^2+2*x+4)");
    }

    #[test]
    fn nesting_and_iterated_quotients() {
        let s = parse_spec("(Z/2 x Z/3) x Z/2[x]/(x^2)[x]/(x^2)").unwrap();
        assert_eq!(s.to_string(), "(Z/2 x Z/3) x Z/2[x]/(x^2)[x]/(x^2)");
        assert_eq!(s.size(), Some(6 * 16));
        let q = parse_spec("(Z/2 x Z/3)[x]/(x^2)").unwrap();
        assert_eq!(q.size(), Some(36));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_spec(""), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_spec("Z/1"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_spec("Z4"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_spec("Z/4xZ/2"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_spec("Z/4 x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec("Z/2[x]/(x^2"), Err(Error::Parse { pos: 11, .. })));
        assert_eq!(parse_spec("Z/4[x]/(2*x^2+1)"), Err(Error::NonMonicModulus));
        assert_eq!(parse_spec("Z/2[x]/(2*x^2+1)"), Err(Error::NonMonicModulus));
        assert!(matches!(parse_spec("Z/2[x]/(1)"), Err(Error::Parse { .. })));
        assert_eq!(
            parse_spec("Z/64 x Z/65"),
            Err(Error::SizeCapExceeded { size: 4160, cap: 4096 })
        );
        assert!(matches!(parse_spec("Z/99999999999999999999"), Err(Error::Parse { .. })));
    }
}
