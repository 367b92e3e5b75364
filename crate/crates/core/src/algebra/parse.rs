//! Recursive-descent parser for the operator expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := ['-'] factor ('*' factor)*
//! factor := atom ['^' int]
//! atom   := number ['/' number] ['i'] | 'i' | 'beta' | 'E' | 'O' | 'mu'
//!         | '[' expr ',' expr ']' | '{' expr ',' expr '}' | '(' expr ')'
//! ```
//!
//! Negative exponents are accepted only on `mu`.

use num_complex::Complex;

use thiserror::Error;

use super::expr::OperatorExpr;
use super::monomial::Letter;
use crate::scalar::ExactCoeff;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol `{symbol}` at byte {offset}")]
    UnknownSymbol { offset: usize, symbol: String },
}

pub fn parse<R: ExactCoeff>(text: &str) -> Result<OperatorExpr<R>, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax { offset: self.pos, message: message.to_string() }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{}`", b as char)))
        }
    }

    fn expr<R: ExactCoeff>(&mut self) -> Result<OperatorExpr<R>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<R: ExactCoeff>(&mut self) -> Result<OperatorExpr<R>, ParseError> {
        let negate = self.eat(b'-');
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.multiply(&self.factor()?);
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    fn factor<R: ExactCoeff>(&mut self) -> Result<OperatorExpr<R>, ParseError> {
        let (atom, is_mu) = self.atom()?;
        if !self.eat(b'^') {
            return Ok(atom);
        }
        self.skip_ws();
        let negative = self.eat(b'-');
        let start = self.pos;
        let digits = self.digits().ok_or_else(|| self.syntax("expected exponent"))?;
        let k: i32 = digits.parse().map_err(|_| ParseError::Syntax {
            offset: start,
            message: "exponent out of range".into(),
        })?;
        if is_mu {
            return Ok(OperatorExpr::mu(if negative { -k } else { k }));
        }
        if negative {
            return Err(ParseError::Syntax {
                offset: start,
                message: "negative exponent is only allowed on `mu`".into(),
            });
        }
        Ok(atom.pow(k as u32))
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    /// Returns the atom and whether it was `mu` (the only atom taking a
    /// signed exponent).
    fn atom<R: ExactCoeff>(&mut self) -> Result<(OperatorExpr<R>, bool), ParseError> {
        let Some(c) = self.peek() else {
            return Err(self.syntax("unexpected end of input"));
        };
        match c {
            b'0'..=b'9' => {
                let start = self.pos;
                let num = self.digits().unwrap_or_default();
                let mut den = "1".to_string();
                if self.eat(b'/') {
                    den = self.digits().ok_or_else(|| self.syntax("expected denominator"))?;
                }
                let r = R::from_fraction(&num, &den).ok_or(ParseError::Syntax {
                    offset: start,
                    message: "invalid rational literal".into(),
                })?;
                // `2i` juxtaposition
                self.skip_ws();
                let imag = self.src.get(self.pos) == Some(&b'i')
                    && !self
                        .src
                        .get(self.pos + 1)
                        .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_');
                if imag {
                    self.pos += 1;
                    return Ok((OperatorExpr::scalar(Complex::new(R::zero(), r)), false));
                }
                Ok((OperatorExpr::scalar(Complex::new(r, R::zero())), false))
            }
            b'[' | b'{' => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                if c == b'[' {
                    self.expect(b']')?;
                    Ok((a.commutator(&b), false))
                } else {
                    self.expect(b'}')?;
                    Ok((a.anticommutator(&b), false))
                }
            }
            b'(' => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b')')?;
                Ok((a, false))
            }
            c if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident();
                match name.as_str() {
                    "beta" => Ok((OperatorExpr::beta(), false)),
                    "E" => Ok((OperatorExpr::letter(Letter::E), false)),
                    "O" => Ok((OperatorExpr::letter(Letter::O), false)),
                    "mu" => Ok((OperatorExpr::mu(1), true)),
                    "i" => Ok((OperatorExpr::scalar(Complex::new(R::zero(), R::one())), false)),
                    _ => Err(ParseError::UnknownSymbol { offset: start, symbol: name }),
                }
            }
            _ => Err(self.syntax(&format!("unexpected character `{}`", c as char))),
        }
    }
}
