//! Recursive-descent parser for the cochain grammar.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' int)?
//! atom    := number ('/' number)? | 'hbar' | 'alpha' | 'delta[' int ']'
//!          | 'bdelta[' int ']' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::cochain::{Cochain, Site};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown token '{token}' at position {pos}")]
    UnknownToken { pos: usize, token: String },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat(b'-');
        let pos = self.pos;
        let n = self.digits()?;
        let n: i64 = n.try_into().map_err(|_| ParseError::Syntax {
            pos,
            msg: "integer out of range".into(),
        })?;
        Ok(if neg { -n } else { n })
    }

    fn expr(&mut self) -> Result<Cochain, ParseError> {
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

    fn term(&mut self) -> Result<Cochain, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Cochain, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Cochain, ParseError> {
        let (base, unit) = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let pos = self.pos;
        let e = self.integer()?;
        if e >= 0 {
            return Ok(base.pow(e as u32));
        }
        match unit {
            Some(s) => {
                let inv = s.inverse().map_err(|_| ParseError::Syntax {
                    pos,
                    msg: "negative exponent of a non-unit".into(),
                })?;
                Ok(Cochain::constant(inv.pow(e.unsigned_abs() as u32)))
            }
            None => Err(ParseError::Syntax {
                pos,
                msg: "negative exponent of a non-unit".into(),
            }),
        }
    }

    /// Returns the atom and, when it is a scalar, the scalar itself.
    fn atom(&mut self) -> Result<(Cochain, Option<Scalar>), ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                let unit = if e.terms().all(|(m, _)| m.is_one()) {
                    Some(e.constant_term())
                } else {
                    None
                };
                Ok((e, unit))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let d = if self.eat(b'/') {
                    let pos = self.pos;
                    let d = self.digits()?;
                    if d == BigInt::from(0) {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: "zero denominator".into(),
                        });
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                let s = Scalar::from_rational(BigRational::new(n, d));
                Ok((Cochain::constant(s.clone()), Some(s)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match word {
                    "hbar" => Ok((Cochain::constant(Scalar::hbar()), Some(Scalar::hbar()))),
                    "alpha" => Ok((Cochain::constant(Scalar::alpha()), Some(Scalar::alpha()))),
                    "delta" | "bdelta" => {
                        self.expect(b'[')?;
                        let s: Site = self.integer()?;
                        self.expect(b']')?;
                        let c = if word == "delta" {
                            Cochain::field(s)
                        } else {
                            Cochain::antifield(s)
                        };
                        Ok((c, None))
                    }
                    _ => Err(ParseError::UnknownToken {
                        pos: start,
                        token: word.to_string(),
                    }),
                }
            }
            Some(c) => Err(ParseError::UnknownToken {
                pos: self.pos,
                token: (c as char).to_string(),
            }),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression into a canonical cochain.
pub fn parse_cochain(text: &str) -> Result<Cochain, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let c = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(c)
}

/// Parses an expression that must be a pure scalar.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    let c = parse_cochain(text)?;
    if c.terms().any(|(m, _)| !m.is_one()) {
        return Err(ParseError::Syntax {
            pos: 0,
            msg: "expected a scalar".into(),
        });
    }
    Ok(c.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_of_generators() {
        assert_eq!(
            parse_cochain("delta[0]*delta[1]").unwrap(),
            &Cochain::field(0) * &Cochain::field(1)
        );
    }

    #[test]
    fn grammar_example() {
        let c = parse_cochain("3*delta[0]*delta[1] - 2*hbar*bdelta[2]").unwrap();
        let expected = &(&Cochain::field(0) * &Cochain::field(1)).scale(&Scalar::from_int(3))
            - &Cochain::antifield(2).scale(&(&Scalar::hbar() * &Scalar::from_int(2)));
        assert_eq!(c, expected);
    }

    #[test]
    fn odd_square_vanishes() {
        assert!(parse_cochain("bdelta[1]*bdelta[1]").unwrap().is_zero());
    }

    #[test]
    fn round_trips() {
        for s in [
            "-2*hbar*bdelta[2] + 3*delta[0]*delta[1]",
            "(alpha + alpha^-1)*delta[0]",
            "bdelta[0]*delta[2]^2",
            "3/2*hbar*alpha^-1 + alpha - 2",
            "bdelta[-1]*bdelta[3] - delta[-4]",
        ] {
            let c = parse_cochain(s).unwrap();
            assert_eq!(parse_cochain(&c.to_string()).unwrap(), c, "{s}");
        }
        let c = parse_cochain("-2*hbar*bdelta[2] + 3*delta[0]*delta[1]").unwrap();
        assert_eq!(c.to_string(), "-2*hbar*bdelta[2] + 3*delta[0]*delta[1]");
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_cochain("delta[0] +"), Err(ParseError::Syntax { pos: 10, .. })));
        assert!(matches!(
            parse_cochain("2*gamma"),
            Err(ParseError::UnknownToken { pos: 2, .. })
        ));
        assert!(matches!(parse_cochain("delta[0]^-1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_cochain("1/0"), Err(ParseError::Syntax { .. })));
        assert!(parse_cochain("(delta[0]").is_err());
        assert!(parse_cochain("delta[0] delta[1]").is_err());
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("1/2").unwrap(), Scalar::from_ratio(1, 2));
        assert_eq!(parse_scalar("alpha^-2").unwrap(), Scalar::alpha_pow(-2));
        assert!(parse_scalar("delta[0]").is_err());
    }
}
