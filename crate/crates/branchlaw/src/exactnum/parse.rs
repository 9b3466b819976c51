//! Recursive-descent parser for scalar literals.
//!
//! Grammar (whitespace ignored between tokens):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := signed (('*' | '/') signed)*
//! signed := '-' signed | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := integer | 'E' '(' integer ')' | 'Sqrt' '(' integer ')' | '(' expr ')'
//! ```
//!
//! `E(m)` is a primitive m-th root of unity, `Sqrt(n)` the positive square
//! root of a positive squarefree integer, `a/b` an exact rational.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::Cyclotomic;
use crate::error::{Error, Result};

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<Tok> {
        self.skip_ws();
        if self.pos >= self.bytes.len() {
            return Ok(Tok::End);
        }
        let b = self.bytes[self.pos];
        let single = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok(t);
        }
        if b.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = &self.src[start..self.pos];
            return Ok(Tok::Int(text.parse::<BigInt>().unwrap()));
        }
        if b.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
                self.pos += 1;
            }
            return Ok(Tok::Name(self.src[start..self.pos].to_string()));
        }
        Err(self.error(&format!("unexpected character {:?}", b as char)))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    current: Tok,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        let mut lexer = Lexer::new(src);
        let current = lexer.next()?;
        Ok(Parser { lexer, current })
    }

    fn advance(&mut self) -> Result<()> {
        self.current = self.lexer.next()?;
        Ok(())
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.current == t {
            self.advance()
        } else {
            Err(self
                .lexer
                .error(&format!("expected {t:?}, found {:?}", self.current)))
        }
    }

    fn expr(&mut self) -> Result<Cyclotomic> {
        let mut acc = self.term()?;
        loop {
            match self.current {
                Tok::Plus => {
                    self.advance()?;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.advance()?;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Cyclotomic> {
        let mut acc = self.signed()?;
        loop {
            match self.current {
                Tok::Star => {
                    self.advance()?;
                    acc = acc.mul(&self.signed()?);
                }
                Tok::Slash => {
                    self.advance()?;
                    let rhs = self.signed()?;
                    acc = acc.div(&rhs).map_err(|_| {
                        self.lexer.error("division by zero")
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed(&mut self) -> Result<Cyclotomic> {
        if self.current == Tok::Minus {
            self.advance()?;
            Ok(self.signed()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Cyclotomic> {
        let base = self.atom()?;
        if self.current != Tok::Caret {
            return Ok(base);
        }
        self.advance()?;
        let negative = if self.current == Tok::Minus {
            self.advance()?;
            true
        } else {
            false
        };
        let Tok::Int(e) = self.current.clone() else {
            return Err(self.lexer.error("exponent must be an integer"));
        };
        self.advance()?;
        let e = e
            .to_i64()
            .ok_or_else(|| self.lexer.error("exponent out of range"))?;
        let e = if negative { -e } else { e };
        base.powi(e)
            .map_err(|err| Error::Parse(format!("{err} in {:?}", self.lexer.src)))
    }

    fn int_argument(&mut self, what: &str) -> Result<u64> {
        self.expect(Tok::LParen)?;
        let Tok::Int(n) = self.current.clone() else {
            return Err(self.lexer.error(&format!("{what} takes an integer argument")));
        };
        self.advance()?;
        self.expect(Tok::RParen)?;
        n.to_u64()
            .ok_or_else(|| self.lexer.error(&format!("{what} argument out of range")))
    }

    fn atom(&mut self) -> Result<Cyclotomic> {
        match self.current.clone() {
            Tok::Int(n) => {
                self.advance()?;
                Ok(Cyclotomic::from_rational(super::Rational::from(n)))
            }
            Tok::Name(name) => match name.as_str() {
                "E" => {
                    self.advance()?;
                    let m = self.int_argument("E")?;
                    if m == 0 {
                        return Err(self.lexer.error("E(0) is undefined"));
                    }
                    Cyclotomic::zeta(m)
                }
                "Sqrt" => {
                    self.advance()?;
                    let n = self.int_argument("Sqrt")?;
                    Cyclotomic::sqrt_integer(n)
                        .map_err(|err| Error::Parse(format!("{err} in {:?}", self.lexer.src)))
                }
                other => Err(self.lexer.error(&format!("unknown name {other:?}"))),
            },
            Tok::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            ref t => Err(self.lexer.error(&format!("unexpected token {t:?}"))),
        }
    }
}

/// Parse one scalar literal into an exact cyclotomic value.
pub fn parse_scalar(src: &str) -> Result<Cyclotomic> {
    let mut p = Parser::new(src)?;
    let value = p.expr()?;
    if p.current != Tok::End {
        return Err(p
            .lexer
            .error(&format!("trailing input starting with {:?}", p.current)));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_scalar("42").unwrap().as_rational(), Some(rat_int(42)));
        assert_eq!(parse_scalar("-7/3").unwrap().as_rational(), Some(rat(-7, 3)));
        assert_eq!(parse_scalar("  1 / 2 ").unwrap().as_rational(), Some(rat(1, 2)));
    }

    #[test]
    fn parses_roots_and_powers() {
        let i = parse_scalar("E(4)").unwrap();
        assert_eq!(i.mul(&i).as_rational(), Some(rat_int(-1)));
        assert_eq!(parse_scalar("E(4)^2").unwrap().as_rational(), Some(rat_int(-1)));
        assert_eq!(parse_scalar("E(4)^-1").unwrap(), parse_scalar("-E(4)").unwrap());
        assert_eq!(
            parse_scalar("E(6)").unwrap(),
            parse_scalar("1+E(3)").unwrap(),
        );
    }

    #[test]
    fn parses_compound_expressions() {
        let v = parse_scalar("(1-E(4))*(1+E(4))").unwrap();
        assert_eq!(v.as_rational(), Some(rat_int(2)));
        let s = parse_scalar("Sqrt(15)/4").unwrap();
        assert_eq!(s.mul(&s).as_rational(), Some(rat(15, 16)));
        assert_eq!(
            parse_scalar("-Sqrt(5)").unwrap(),
            parse_scalar("E(5)^2+E(5)^3-E(5)-E(5)^4").unwrap(),
        );
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "1+", "E(0)", "E()", "Sqrt(12)", "2^^3", "foo", "1 2", "(1"] {
            assert!(parse_scalar(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("3/(1-1)").is_err());
    }
}
