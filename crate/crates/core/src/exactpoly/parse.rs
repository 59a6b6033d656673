//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! ```
//!
//! Variables are `x0 x1 x2 y0 y1 y2 s t`; whitespace is insignificant.
//! Error offsets are 1-based character columns; end of input reports
//! `len + 1`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::multipoly::{MultiPoly, Rat, Vars};
use super::PolyError;

pub const GRAMMAR_VARS: [&str; 8] = ["x0", "x1", "x2", "y0", "y1", "y2", "s", "t"];

/// Parses `text` into a polynomial of the ring `vars`. Every variable used
/// must belong to the grammar and to `vars`.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<MultiPoly, PolyError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        vars,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> PolyError {
        PolyError::Parse {
            offset: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| PolyError::Parse {
                offset: start + 1,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let mut value = Rat::from_integer(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected denominator"));
                    }
                    let den: BigInt = d.parse().expect("digits");
                    if den.is_zero() {
                        return Err(PolyError::Parse {
                            offset: self.pos,
                            message: "zero denominator".into(),
                        });
                    }
                    value /= Rat::from_integer(den);
                }
                Ok(MultiPoly::constant(self.vars, value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if !GRAMMAR_VARS.contains(&name.as_str()) {
                    return Err(PolyError::Parse {
                        offset: start + 1,
                        message: format!("unknown variable '{name}'"),
                    });
                }
                match self.vars.index_of(&name) {
                    Some(i) => Ok(MultiPoly::var(self.vars, i)),
                    None => Err(PolyError::Parse {
                        offset: start + 1,
                        message: format!("variable '{name}' not allowed here"),
                    }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::multipoly::plane_vars;

    #[test]
    fn canonical_round_trip() {
        let v = plane_vars();
        let p = parse_poly("x2^2*(-1) + x1 ^ 2 + x0^2", &v).unwrap();
        assert_eq!(p.to_string(), "x0^2 + x1^2 - x2^2");
        let q = parse_poly(&p.to_string(), &v).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rationals_and_parentheses() {
        let v = plane_vars();
        let p = parse_poly("(x0 + 1/2*x1)^2 - 3/4 * x1^2", &v).unwrap();
        assert_eq!(p.to_string(), "x0^2 + x0*x1 - 1/2*x1^2");
    }

    #[test]
    fn error_offsets() {
        let v = plane_vars();
        assert_eq!(
            parse_poly("x0^2 +", &v),
            Err(PolyError::Parse {
                offset: 7,
                message: "unexpected end of input".into()
            })
        );
        assert!(matches!(parse_poly("x0 + z", &v), Err(PolyError::Parse { offset: 6, .. })));
        assert!(matches!(parse_poly("x0 + y1", &v), Err(PolyError::Parse { offset: 6, .. })));
        assert!(matches!(parse_poly("x0 x1", &v), Err(PolyError::Parse { offset: 4, .. })));
    }
}
