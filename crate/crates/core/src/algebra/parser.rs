//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := factor ('*'? factor)*
//! factor:= coeff | atom
//! atom  := 'x' ('^' nat)? | '(' expr ')' ('^' nat)?
//! coeff := nat | nat '/' nat
//! ```
//!
//! Multiplication may be implicit (`2x`, `(1+x)(1-x)`). Exponents on
//! parenthesized groups are accepted as a convenience superset.

use num_traits::Zero;

use super::polynomial::Polynomial;
use super::rational::{Int, Rat};
use crate::error::{Error, Result};

pub fn poly_parse(text: &str) -> Result<Polynomial> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty input"));
    }
    let poly = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero();
        let mut sign = 1i64;
        self.skip_ws();
        if let Some(b) = self.peek() {
            if b == b'+' || b == b'-' {
                self.pos += 1;
                if b == b'-' {
                    sign = -1;
                }
            }
        }
        loop {
            let term = self.term()?;
            let term = if sign < 0 { -&term } else { term };
            acc = &acc + &term;
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                // implicit multiplication
                Some(b'x') | Some(b'(') => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(b) if b.is_ascii_digit() => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let e = self.optional_exponent()?;
                Ok(Polynomial::monomial(Rat::from_integer(Int::from(1)), e))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                let e = self.optional_exponent()?;
                if e == 1 {
                    Ok(inner)
                } else {
                    Ok(inner.pow(e as u32))
                }
            }
            Some(b) if b.is_ascii_digit() => {
                let num = self.natural()?;
                self.skip_ws();
                if self.peek() == Some(b'/') {
                    // fraction only when a digit follows; otherwise leave '/'
                    // to the caller (it will be a syntax error there).
                    let save = self.pos;
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                        let den = self.natural()?;
                        if den.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        return Ok(Polynomial::constant(Rat::new(num, den)));
                    }
                    self.pos = save;
                }
                Ok(Polynomial::constant(Rat::from_integer(num)))
            }
            _ => Err(self.err("expected coefficient, 'x', or '('")),
        }
    }

    fn optional_exponent(&mut self) -> Result<usize> {
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.natural()?;
            let e: usize = n
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            Ok(e)
        } else {
            Ok(1)
        }
    }

    fn natural(&mut self) -> Result<Int> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("digits are ascii");
        Ok(s.parse().expect("digits parse as integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Polynomial {
        Polynomial::from_integers(v)
    }

    #[test]
    fn paper_inputs() {
        assert_eq!(poly_parse("1+x-x^3-x^4").unwrap(), ints(&[1, 1, 0, -1, -1]));
        assert_eq!(
            poly_parse("(x^2+x+1)*(x^6-1)*(x^4-1)").unwrap(),
            ints(&[1, 1, 1, 0, -1, -1, -2, -1, -1, 0, 1, 1, 1])
        );
    }

    #[test]
    fn zero_and_constants() {
        assert!(poly_parse("0").unwrap().is_zero());
        assert_eq!(poly_parse("5").unwrap(), ints(&[5]));
        assert_eq!(poly_parse("-5").unwrap(), ints(&[-5]));
    }

    #[test]
    fn fractions_and_implicit_products() {
        assert_eq!(
            poly_parse("1/2*x").unwrap().coeff_strings(),
            vec!["0", "1/2"]
        );
        assert_eq!(poly_parse("2x^2").unwrap(), ints(&[0, 0, 2]));
        assert_eq!(poly_parse("(1+x)(1-x)").unwrap(), ints(&[1, 0, -1]));
        assert_eq!(poly_parse(" 1 + 3 * x ^ 2 ").unwrap(), ints(&[1, 0, 3]));
    }

    #[test]
    fn like_terms_combine() {
        assert_eq!(poly_parse("x+x-2*x").unwrap(), Polynomial::zero());
        assert_eq!(poly_parse("x^2+1+x^2").unwrap(), ints(&[1, 0, 2]));
    }

    #[test]
    fn syntax_errors_carry_position() {
        for (text, pos) in [("", 0), ("1+", 2), ("x^", 2), ("(1+x", 4), ("1+&x", 2)] {
            match poly_parse(text) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "input {text:?}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn print_parse_round_trip() {
        for coeffs in [
            vec![1i64, 1, 0, -1, -1],
            vec![0, 0, 7],
            vec![-3],
            vec![1, -2, 0, 0, 5],
        ] {
            let p = ints(&coeffs);
            assert_eq!(poly_parse(&p.to_text(false)).unwrap(), p);
            assert_eq!(poly_parse(&p.to_text(true)).unwrap(), p);
        }
    }
}
