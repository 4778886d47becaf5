use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Parses a polynomial in `x`, `y` with rational coefficients.
///
/// Grammar: sums of terms, each term a product of an optional rational
/// coefficient and factors `x^k`, `y^k` or parenthesised sub-expressions.
/// Whitespace is ignored and the Unicode minus sign is accepted.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut parser = Parser::new(text);
    let p = parser.expr()?;
    parser.skip_ws();
    if let Some((pos, c)) = parser.peek() {
        return Err(Error::Syntax { pos, msg: format!("unexpected '{c}'") });
    }
    Ok(p)
}

/// Parses `n`, `-n` or `n/m`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let mut parser = Parser::new(text);
    parser.skip_ws();
    let negative = parser.eat('-');
    parser.skip_ws();
    let mut q = parser.fraction()?;
    parser.skip_ws();
    if let Some((pos, c)) = parser.peek() {
        return Err(Error::Syntax { pos, msg: format!("unexpected '{c}' in rational") });
    }
    if negative {
        q = -q;
    }
    Ok(q)
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .char_indices()
            .map(|(i, c)| (i, if c == '\u{2212}' { '-' } else { c }))
            .collect();
        Parser { chars, at: 0, end: text.len() }
    }

    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.at).copied()
    }

    fn pos(&self) -> usize {
        self.peek().map(|(p, _)| p).unwrap_or(self.end)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some((_, c)) if c.is_whitespace()) {
            self.at += 1;
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if matches!(self.peek(), Some((_, c)) if c == want) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        self.skip_ws();
        let mut acc = if self.eat('-') { -self.term()? } else { self.term()? };
        loop {
            if self.eat('+') {
                acc += &self.term()?;
            } else if self.eat('-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        self.skip_ws();
        let mut acc = if matches!(self.peek(), Some((_, c)) if c.is_ascii_digit()) {
            Poly::constant(self.fraction()?)
        } else {
            self.factor()?
        };
        while self.eat('*') {
            self.skip_ws();
            if matches!(self.peek(), Some((_, c)) if c.is_ascii_digit()) {
                acc = acc.scale(&self.fraction()?);
            } else {
                acc = &acc * &self.factor()?;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        self.skip_ws();
        let (pos, c) = self
            .peek()
            .ok_or(Error::Syntax { pos: self.end, msg: "unexpected end of input".into() })?;
        let base = match c {
            'x' => {
                self.at += 1;
                Poly::x()
            }
            'y' => {
                self.at += 1;
                Poly::y()
            }
            '(' => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Syntax { pos: self.pos(), msg: "expected ')'".into() });
                }
                inner
            }
            _ => return Err(Error::Syntax { pos, msg: format!("unexpected '{c}'") }),
        };
        if self.eat('^') {
            self.skip_ws();
            if matches!(self.peek(), Some((_, '-'))) {
                return Err(Error::NegativeExponent { pos: self.pos() });
            }
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| Error::Syntax {
                pos: self.pos(),
                msg: "exponent too large".into(),
            })?;
            return Ok(match c {
                'x' => Poly::monomial(e, 0),
                'y' => Poly::monomial(0, e),
                _ => base.pow(e),
            });
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.at;
        while matches!(self.peek(), Some((_, c)) if c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return Err(Error::Syntax { pos: self.pos(), msg: "expected digits".into() });
        }
        let digits: String = self.chars[start..self.at].iter().map(|(_, c)| *c).collect();
        Ok(digits.parse::<BigInt>().expect("ascii digits"))
    }

    fn fraction(&mut self) -> Result<Rational> {
        let num = self.uint()?;
        if self.eat('/') {
            let pos = self.pos();
            let den = self.uint()?;
            if den.is_zero() {
                return Err(Error::Syntax { pos, msg: "zero denominator".into() });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::new(num, BigInt::one()))
        }
    }
}
