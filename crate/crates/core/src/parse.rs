//! Text syntax for polynomials in `x` and `l`.
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := coef? ('*'? var)*
//! coef   := int ('/' int)?
//! var    := ('x' | 'l') ('^' int)?
//! ```
//!
//! Whitespace is ignored. The canonical rendering of [`BiPoly`] parses back
//! to the same polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{BiPoly, Monomial, Rational};

/// Malformed polynomial text; `column` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    X,
    L,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Int(n) => format!("number {n}"),
            Token::X => "'x'".into(),
            Token::L => "'l'".into(),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Slash => "'/'".into(),
            Token::Caret => "'^'".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let col = i + 1;
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n: BigInt = digits.parse().expect("ascii digits");
            out.push((Token::Int(n), col));
            continue;
        }
        let tok = match ch {
            'x' => Token::X,
            'l' => Token::L,
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            other => {
                return Err(ParseError {
                    column: col,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Token::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn column(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn expect_int(&mut self, what: &str) -> Result<BigInt, ParseError> {
        match self.peek() {
            Token::Int(_) => match self.bump() {
                Token::Int(n) => Ok(n),
                _ => unreachable!(),
            },
            other => self.error(format!("expected {what}, found {}", other.describe())),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if *self.peek() != Token::Caret {
            return Ok(1);
        }
        self.bump();
        let col = self.column();
        let n = self.expect_int("an exponent")?;
        u32::try_from(n).map_err(|_| ParseError {
            column: col,
            message: "exponent is too large".into(),
        })
    }

    fn poly(&mut self) -> Result<BiPoly, ParseError> {
        let mut out = BiPoly::zero();
        let mut negative = match self.peek() {
            Token::Minus => {
                self.bump();
                true
            }
            Token::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (mut coeff, mono) = self.term()?;
            if negative {
                coeff = -coeff;
            }
            out.add_term(mono, coeff);
            negative = match self.peek() {
                Token::Plus => false,
                Token::Minus => true,
                Token::End => return Ok(out),
                other => {
                    return self.error(format!("expected '+', '-' or end of input, found {}", other.describe()))
                }
            };
            self.bump();
        }
    }

    fn term(&mut self) -> Result<(Rational, Monomial), ParseError> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::ONE;
        let mut seen_any = false;
        if let Token::Int(_) = self.peek() {
            let numer = self.expect_int("a coefficient")?;
            let mut denom = BigInt::one();
            if *self.peek() == Token::Slash {
                self.bump();
                let col = self.column();
                denom = self.expect_int("a denominator")?;
                if denom.is_zero() {
                    return Err(ParseError {
                        column: col,
                        message: "zero denominator".into(),
                    });
                }
            }
            coeff = Rational::new(numer, denom);
            seen_any = true;
        }
        loop {
            let starred = *self.peek() == Token::Star;
            if starred {
                if !seen_any {
                    return self.error("'*' must follow a coefficient or variable");
                }
                self.bump();
            }
            match self.peek() {
                Token::X => {
                    self.bump();
                    mono.x += self.exponent()?;
                }
                Token::L => {
                    self.bump();
                    mono.lambda += self.exponent()?;
                }
                other if starred => {
                    return self.error(format!("expected 'x' or 'l' after '*', found {}", other.describe()))
                }
                other if !seen_any => {
                    return self.error(format!("expected a term, found {}", other.describe()))
                }
                _ => return Ok((coeff, mono)),
            }
            seen_any = true;
        }
    }
}

pub fn parse_poly(src: &str) -> Result<BiPoly, ParseError> {
    let tokens = tokenize(src)?;
    let mut parser = Parser { tokens, pos: 0 };
    parser.poly()
}

impl std::str::FromStr for BiPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}
