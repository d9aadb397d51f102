//! Parser for the textual series grammar.
//!
//! ```text
//! series := term (('+' | '-') term)*  |  '0'
//! term   := coef '*' 't' ['^' int]  |  't' ['^' int]  |  coef
//! coef   := uint  |  '(' poly ')'
//! poly   := mono (('+' | '-') mono)*
//! mono   := uint ['*' 'x' ['^' uint]]  |  'x' ['^' uint]
//! ```
//!
//! Whitespace is insignificant. `x` is only meaningful in extension fields.

use super::fq::{FieldSpec, FqElem};
use super::series::LaurentSeries;
use crate::error::{Error, Result};

/// Parses an exact series over `spec`.
pub fn parse_series(text: &str, spec: FieldSpec) -> Result<LaurentSeries> {
    let mut parser = Parser::new(text, spec);
    let series = parser.series()?;
    Ok(series)
}

/// Parses a polynomial in `x` (the `poly` production, without parentheses)
/// into integer coefficients, low degree first.
pub fn parse_x_poly(text: &str) -> Result<Vec<i64>> {
    // The field is only used for coefficient reduction in `coef`; polynomial
    // parsing keeps raw integers.
    let spec = FieldSpec::prime(2)?;
    let mut parser = Parser::new(text, spec);
    let poly = parser.poly()?;
    parser.expect_end()?;
    Ok(poly)
}

struct Parser<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    spec: FieldSpec,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, spec: FieldSpec) -> Self {
        let chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { text, chars, pos: 0, spec }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |&(i, _)| i)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.offset(), message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }

    fn uint(&mut self) -> Result<i64> {
        let start = self.pos;
        let mut value: i64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = match value.checked_mul(10).and_then(|v| v.checked_add(d as i64)) {
                Some(v) => v,
                None => return self.err("integer literal too large"),
            };
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        Ok(value)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let v = self.uint()?;
        Ok(if negative { -v } else { v })
    }

    fn series(&mut self) -> Result<LaurentSeries> {
        if self.chars.is_empty() {
            return self.err("empty input");
        }
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') { -1 } else { 1 };
        loop {
            let (exp, coef) = self.term()?;
            terms.push((exp, if sign < 0 { -coef } else { coef }));
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        self.expect_end()?;
        Ok(LaurentSeries::from_terms(self.spec, terms))
    }

    fn term(&mut self) -> Result<(i64, FqElem)> {
        let coef = if self.peek() == Some('t') {
            FqElem::one(self.spec)
        } else {
            let c = self.coef()?;
            if !self.eat('*') {
                return Ok((0, c));
            }
            if self.peek() != Some('t') {
                return self.err("expected `t` after `*`");
            }
            c
        };
        self.expect('t')?;
        let exp = if self.eat('^') { self.signed_int()? } else { 1 };
        Ok((exp, coef))
    }

    fn coef(&mut self) -> Result<FqElem> {
        if self.peek() == Some('(') {
            let open = self.offset();
            self.pos += 1;
            let poly = self.poly()?;
            let close = self.offset();
            self.expect(')')?;
            if self.spec.is_prime_field() && poly.iter().skip(1).any(|&c| c.rem_euclid(self.spec.p() as i64) != 0) {
                let raw = &self.text[open..=close];
                return Err(Error::BadCoefficient(raw.to_string()));
            }
            Ok(FqElem::from_poly(self.spec, &poly))
        } else if self.peek() == Some('x') {
            self.err("polynomial coefficients must be parenthesized")
        } else {
            let n = self.uint()?;
            Ok(FqElem::from_int(self.spec, n))
        }
    }

    fn poly(&mut self) -> Result<Vec<i64>> {
        let mut coeffs: Vec<i64> = Vec::new();
        let mut sign = if self.eat('-') { -1 } else { 1 };
        loop {
            let (deg, c) = self.mono()?;
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            coeffs[deg] += sign * c;
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(coeffs)
    }

    fn mono(&mut self) -> Result<(usize, i64)> {
        let c = if self.peek() == Some('x') {
            1
        } else {
            let c = self.uint()?;
            if !self.eat('*') {
                return Ok((0, c));
            }
            c
        };
        self.expect('x')?;
        let deg = if self.eat('^') { self.uint()? } else { 1 };
        if deg > 64 {
            return self.err("degree in x too large");
        }
        Ok((deg as usize, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_fields::series::Valuation;

    #[test]
    fn transcribes_prime_field_terms() {
        let s = FieldSpec::prime(2).unwrap();
        let a = parse_series("t^-4 + t^-3", s).unwrap();
        assert_eq!(a.valuation(), Valuation::Finite(-4));
        assert!(a.coeff(-4).is_one() && a.coeff(-3).is_one());
        assert_eq!(a.terms().count(), 2);
    }

    #[test]
    fn zero() {
        let s = FieldSpec::prime(3).unwrap();
        let z = parse_series("0", s).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.valuation(), Valuation::Infinite);
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn extension_field_coefficients() {
        let s = FieldSpec::new(2, &[1, 1, 1]).unwrap();
        let a = parse_series("(1+x)*t^-3 + 1", s).unwrap();
        assert_eq!(a.valuation(), Valuation::Finite(-3));
        assert_eq!(a.coeff(-3), FqElem::from_poly(s, &[1, 1]));
        assert!(a.coeff(-2).is_zero() && a.coeff(-1).is_zero());
        assert!(a.coeff(0).is_one());
        assert_eq!(a.to_string(), "(1+x)*t^-3 + 1");
    }

    #[test]
    fn whitespace_signs_and_reduction() {
        let s = FieldSpec::prime(3).unwrap();
        let a = parse_series(" 4 * t ^ - 2 - t^1 ", s).unwrap();
        assert_eq!(a.to_string(), "t^-2 + 2*t^1");
        let b = parse_series("t - t", s).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let s = FieldSpec::prime(2).unwrap();
        match parse_series("t^-4 + ", s) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 7),
            other => panic!("{other:?}"),
        }
        match parse_series("t^-4 $ t", s) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_series("", s).is_err());
        assert!(parse_series("3*", s).is_err());
        assert!(parse_series("x*t^2", s).is_err());
    }

    #[test]
    fn x_in_prime_field_is_rejected() {
        let s = FieldSpec::prime(2).unwrap();
        assert!(matches!(parse_series("(1+x)*t^-1", s), Err(Error::BadCoefficient(_))));
        // A polynomial that is constant is fine.
        assert!(parse_series("(1+2*x)*t^-1", s).is_ok());
    }

    #[test]
    fn x_polynomials() {
        assert_eq!(parse_x_poly("x^2+x+1").unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_x_poly("x^4 + 2*x^3 + 2").unwrap(), vec![2, 0, 0, 2, 1]);
        assert!(parse_x_poly("x^2 +").is_err());
    }
}
