//! Parser for the plain-text polynomial grammar
//!
//! ```text
//! poly   := sign? term (sign term)*
//! term   := factor ('*'? factor)*
//! factor := number ('/' number)? | name ('(' index ')')? ('^' exponent)?
//! ```
//!
//! Both `2*T(1)^2*T(3)` and the juxtaposed `2T(1)^2T(3)` are accepted.

use num_bigint::BigInt;
use num_traits::One;

use super::{Monomial, Polynomial, VarNames};
use crate::error::{Error, Result};
use crate::linalg::Rational;

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at column {} in `{}`",
            self.pos + 1,
            self.text.trim()
        ))
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(&self.text[start..self.pos])
    }
}

/// Parses a polynomial, resolving variable names through `names`.
pub fn parse_polynomial(text: &str, names: &dyn VarNames) -> Result<Polynomial> {
    let mut cur = Cursor { text, pos: 0 };
    let mut poly = Polynomial::zero();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            if first {
                return Err(cur.error("empty polynomial"));
            }
            break;
        }
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') {
            false
        } else if first {
            false
        } else {
            return Err(cur.error("expected `+` or `-`"));
        };
        let (m, c) = parse_term(&mut cur, names)?;
        poly.add_term(m, if negative { -c } else { c });
        first = false;
    }
    Ok(poly)
}

fn parse_term(cur: &mut Cursor<'_>, names: &dyn VarNames) -> Result<(Monomial, Rational)> {
    let mut coeff = Rational::one();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    let mut factors = 0;
    loop {
        cur.skip_ws();
        if factors > 0 {
            if cur.eat('*') {
                cur.skip_ws();
            } else if !cur
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                break;
            }
        }
        if let Some(num) = cur.digits() {
            let mut value = Rational::from_integer(num.parse::<BigInt>().unwrap());
            if cur.eat('/') {
                let den = cur.digits().ok_or_else(|| cur.error("expected denominator"))?;
                let den: BigInt = den.parse().unwrap();
                if den == BigInt::from(0) {
                    return Err(cur.error("zero denominator"));
                }
                value /= Rational::from_integer(den);
            }
            coeff *= value;
        } else if let Some(name) = cur.ident() {
            let index = if cur.eat('(') {
                let d = cur.digits().ok_or_else(|| cur.error("expected variable index"))?;
                if !cur.eat(')') {
                    return Err(cur.error("expected `)`"));
                }
                Some(d.parse::<u64>().map_err(|_| cur.error("index out of range"))?)
            } else {
                None
            };
            let var = names.resolve(name, index).ok_or_else(|| {
                let shown = match index {
                    Some(i) => format!("{name}({i})"),
                    None => name.to_string(),
                };
                cur.error(&format!("unknown variable `{shown}`"))
            })?;
            let exp = if cur.eat('^') {
                let d = cur.digits().ok_or_else(|| cur.error("expected exponent"))?;
                d.parse::<u32>().map_err(|_| cur.error("exponent out of range"))?
            } else {
                1
            };
            pairs.push((var as u32, exp));
        } else {
            return Err(cur.error("expected a number or a variable"));
        }
        factors += 1;
    }
    Ok((Monomial::from_pairs(pairs), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{IndexedVars, MatrixVars, Style};

    #[test]
    fn parses_session_notation() {
        let names = IndexedVars::new("T", 8);
        let p = parse_polynomial("T(1)*T(6) + T(2)*T(5) + T(3)*T(4) + T(7)*T(8)", &names).unwrap();
        assert_eq!(p.num_terms(), 4);
        let q = parse_polynomial("T(7)T(8)+T(3)*T(4)+T(2)T(5)+T(1)T(6)", &names).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn parses_compact_output() {
        let names = MatrixVars { n: 8 };
        let text = "-Y(1)Y(13)Y(24)Y(31)Y(34)Y(46)Y(52)Y(59)Z-1";
        let p = parse_polynomial(text, &names).unwrap();
        assert_eq!(p.display(&names, Style::Compact).to_string(), text);
    }

    #[test]
    fn coefficients_and_powers() {
        let names = IndexedVars::new("T", 2);
        let p = parse_polynomial("-3/4*T(1)^2 + 2 T(2) - 5", &names).unwrap();
        assert_eq!(p.display(&names, Style::Explicit).to_string(), "-3/4*T(1)^2 + 2*T(2) - 5");
    }

    #[test]
    fn reports_errors() {
        let names = IndexedVars::new("T", 2);
        assert!(parse_polynomial("T(3)", &names).is_err());
        assert!(parse_polynomial("T(1) +", &names).is_err());
        assert!(parse_polynomial("", &names).is_err());
        assert!(parse_polynomial("T(1) T(2) )", &names).is_err());
        assert!(parse_polynomial("1/0", &names).is_err());
    }
}
