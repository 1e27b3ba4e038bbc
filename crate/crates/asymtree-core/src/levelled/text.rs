//! Textual form of rational-coefficient levelled numbers.
//!
//! Grammar, whitespace-insensitive:
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := coeff ['*' monomial] | monomial
//! monomial := 'u' ['^' exponent]
//! coeff, exponent := rational: `3`, `-2`, `1/2`, `0.5`
//! ```
//!
//! A bare coefficient is a `u^0` term, a bare `u` is `u^1`. Rendering
//! always writes `c*u^g` terms joined by ` + `, e.g.
//! `3*u^0 + -2*u^1/2`, and `0` for zero; the parser accepts exactly
//! what rendering produces.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use super::{Level, LevelledNumber};
use crate::rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for LevelledNumber<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (level, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*u^{}", rat::fmt(c), rat::fmt(level.exponent()))?;
        }
        Ok(())
    }
}

/// Parses the grammar above into a canonical levelled number.
///
/// ```
/// use asymtree_core::levelled::parse_levelled;
/// let x = parse_levelled("3*u^0 + -2*u^1/2").unwrap();
/// assert_eq!(x.to_string(), "3*u^0 + -2*u^1/2");
/// ```
pub fn parse_levelled(input: &str) -> Result<LevelledNumber<BigRational>, ParseError> {
    Parser {
        bytes: input.as_bytes(),
        pos: 0,
    }
    .parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<LevelledNumber<BigRational>, ParseError> {
        let mut terms: Vec<(Level, BigRational)> = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        loop {
            let (level, c) = self.term()?;
            terms.push((level, c));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                }
                Some(b'-') => {
                    // leave the sign in place for the next term
                }
                Some(_) => return self.err("expected `+`, `-`, or end of input"),
            }
            self.skip_ws();
            if self.peek().is_none() {
                return self.err("dangling separator");
            }
        }
        Ok(LevelledNumber::from_terms(terms))
    }

    fn term(&mut self) -> Result<(Level, BigRational), ParseError> {
        self.skip_ws();
        let mut negated = false;
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            negated = self.peek() == Some(b'-');
            self.pos += 1;
            self.skip_ws();
        }
        let (level, c) = match self.peek() {
            Some(b'u') => {
                self.pos += 1;
                let g = self.exponent()?;
                (Level::new(g), BigRational::one())
            }
            Some(b) if b == b'+' || b == b'-' || b == b'.' || b.is_ascii_digit() => {
                let c = self.rational()?;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek() != Some(b'u') {
                        return self.err("expected `u` after `*`");
                    }
                    self.pos += 1;
                    let g = self.exponent()?;
                    (Level::new(g), c)
                } else {
                    (Level::from_int(0), c)
                }
            }
            Some(_) => return self.err("expected a coefficient or `u`"),
            None => return self.err("expected a term"),
        };
        Ok((level, if negated { -c } else { c }))
    }

    fn exponent(&mut self) -> Result<BigRational, ParseError> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.rational()
        } else {
            Ok(rat::int(1))
        }
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut sign = "";
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            if self.peek() == Some(b'-') {
                sign = "-";
            }
            self.pos += 1;
            self.skip_ws();
        }
        let body_start = self.pos;
        let digits_start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        match self.peek() {
            Some(b'.') => {
                self.pos += 1;
                while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
            }
            Some(b'/') => {
                if self.pos == digits_start {
                    return self.err("missing numerator");
                }
                self.pos += 1;
                let denom_start = self.pos;
                while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                if self.pos == denom_start {
                    return self.err("missing denominator");
                }
            }
            _ => {}
        }
        let body = std::str::from_utf8(&self.bytes[body_start..self.pos]).expect("ascii slice");
        match rat::parse(&format!("{sign}{body}")) {
            Ok(r) => Ok(r),
            Err(e) => {
                self.pos = start;
                self.err(&e.reason)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    #[test]
    fn parses_zero() {
        assert!(parse_levelled("0").unwrap().is_zero());
        assert_eq!(parse_levelled("0").unwrap().to_string(), "0");
    }

    #[test]
    fn parses_mixed_sign_terms() {
        let x = parse_levelled("3*u^0 + -2*u^1/2").unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.coefficient_at(&Level::from_int(0)), ratio(3, 1));
        assert_eq!(x.coefficient_at(&Level::from_ratio(1, 2)), ratio(-2, 1));
    }

    #[test]
    fn parses_varied_forms() {
        assert_eq!(
            parse_levelled("u").unwrap(),
            LevelledNumber::term(ratio(1, 1), Level::from_int(1))
        );
        assert_eq!(
            parse_levelled("u^-1").unwrap(),
            LevelledNumber::term(ratio(1, 1), Level::from_int(-1))
        );
        assert_eq!(
            parse_levelled("5 - 2*u").unwrap(),
            parse_levelled("5 + -2*u^1").unwrap()
        );
        assert_eq!(
            parse_levelled("0.5*u^3/2").unwrap(),
            LevelledNumber::term(ratio(1, 2), Level::from_ratio(3, 2))
        );
        // duplicate levels merge, cancellations vanish
        assert!(parse_levelled("u - u").unwrap().is_zero());
    }

    #[test]
    fn display_roundtrips() {
        for s in ["3*u^0 + -2*u^1/2", "0", "1*u^-2 + 5*u^0 + 7/3*u^4"] {
            let x = parse_levelled(s).unwrap();
            assert_eq!(parse_levelled(&x.to_string()).unwrap(), x);
            assert_eq!(x.to_string(), s);
        }
    }

    #[test]
    fn errors_carry_position() {
        let e = parse_levelled("3*v^2").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_levelled("3 +").unwrap_err();
        assert_eq!(e.position, 3);
        let e = parse_levelled("").unwrap_err();
        assert_eq!(e.position, 0);
        assert!(parse_levelled("1/").is_err());
        assert!(parse_levelled("^2").is_err());
    }
}
