//! Reader for the printed notation, e.g. `c_3^(1)/c_5^(1) + 2c_1^(2)^2`.

use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{LaurentPoly, Monomial, VarIndex};
use crate::error::{Error, Result};

const MAX_DIGITS: usize = 512;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {s:?}")))
        }
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            // ASCII digits only
            Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
        }
    }

    fn small(&mut self) -> Result<i32> {
        let d = self.digits().ok_or_else(|| self.error("expected integer"))?;
        d.parse::<i32>().map_err(|_| self.error("integer too large"))
    }

    /// `c_ROW^(COL)` with an optional `^EXP`.
    fn factor(&mut self) -> Result<(VarIndex, i64)> {
        self.expect("c_")?;
        let row = self.small()?;
        self.expect("^(")?;
        let col = self.small()?;
        self.expect(")")?;
        let exp = if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.small()?;
            if e == 0 {
                return Err(self.error("zero exponent"));
            }
            i64::from(e)
        } else {
            1
        };
        Ok((VarIndex::new(row, col), exp))
    }

    fn factors(&mut self, sign: i64, into: &mut Monomial) -> Result<usize> {
        let mut count = 0;
        while self.peek() == Some(b'c') {
            let (v, e) = self.factor()?;
            into.mul_var(v, sign * e);
            count += 1;
        }
        Ok(count)
    }

    fn term(&mut self) -> Result<(Monomial, BigUint)> {
        self.skip_ws();
        let coeff = match self.digits() {
            Some(d) if d.len() > MAX_DIGITS => return Err(self.error("coefficient too long")),
            Some(d) => Some(d.parse::<BigUint>().map_err(|_| self.error("bad coefficient"))?),
            None => None,
        };
        if coeff.as_ref().is_some_and(|c| c.is_zero()) {
            return Err(Error::NonPositiveCoefficient);
        }
        let mut mono = Monomial::one();
        let numer = self.factors(1, &mut mono)?;
        if coeff.is_none() && numer == 0 {
            return Err(self.error("expected term"));
        }
        self.skip_ws();
        if self.eat("/") {
            self.skip_ws();
            if self.factors(-1, &mut mono)? == 0 {
                return Err(self.error("expected denominator"));
            }
        }
        Ok((mono, coeff.unwrap_or_else(BigUint::one)))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor { src: s.as_bytes(), pos: 0 };
        let mut terms = vec![cur.term()?];
        loop {
            cur.skip_ws();
            if cur.peek().is_none() {
                break;
            }
            cur.expect("+")?;
            terms.push(cur.term()?);
        }
        LaurentPoly::new(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_terms() {
        let p: LaurentPoly = "c_2^(2)c_4^(1)/c_3^(2) + 1/c_4^(4) + c_5^(0)".parse().unwrap();
        assert_eq!(p.num_terms(), 3);
        let q: LaurentPoly = "2c_1^(1)^3/c_2^(1) + 7".parse().unwrap();
        let m = Monomial::from_exponents([(VarIndex::new(1, 1), 3), (VarIndex::new(2, 1), -1)]);
        assert_eq!(q.coefficient(&m), Some(&BigUint::from(2u32)));
        assert_eq!(q.coefficient(&Monomial::one()), Some(&BigUint::from(7u32)));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "+", "c_1", "c_1^(x)", "0", "0c_1^(1)", "c_1^(1) +", "1/", "c_1^(1)^0", "x_1^(1)"] {
            assert!(bad.parse::<LaurentPoly>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn cancellation_to_one() {
        let p: LaurentPoly = "c_1^(1)/c_1^(1)".parse().unwrap();
        assert_eq!(p, LaurentPoly::one());
    }
}
