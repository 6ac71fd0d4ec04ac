//! Parser for the textual polynomial / rational-function grammar.
//!
//! Accepts exactly what `Display` produces: sparse `c*q^e` sums ordered by
//! exponent such as `1 - q^2 + 2*q^3`, and quotients `(num)/(den)`.

use super::poly::QPolynomial;
use super::ratfn::QRationalFunction;
use crate::{Error, Result};
use num_bigint::BigInt;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Q,
    Caret,
    Star,
    Plus,
    Minus,
    LParen,
    RParen,
    Slash,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn next(&mut self) -> Result<Tok> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        self.pos += 1;
        Ok(match c {
            b'q' => Tok::Q,
            b'^' => Tok::Caret,
            b'*' => Tok::Star,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'/' => Tok::Slash,
            b'0'..=b'9' => {
                let start = self.pos - 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Tok::Int(text.parse().unwrap())
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character '{}'",
                    other as char
                )))
            }
        })
    }

    fn peek(&mut self) -> Result<Tok> {
        let save = self.pos;
        let tok = self.next()?;
        self.pos = save;
        Ok(tok)
    }
}

fn parse_exponent(lex: &mut Lexer) -> Result<usize> {
    if lex.peek()? == Tok::Caret {
        lex.next()?;
        match lex.next()? {
            Tok::Int(e) => {
                let e: BigInt = e;
                e.try_into()
                    .map_err(|_| Error::Parse("exponent too large".into()))
            }
            other => Err(Error::Parse(format!("expected exponent, got {other:?}"))),
        }
    } else {
        Ok(1)
    }
}

/// One signed term: `INT`, `INT*q^E`, or `q^E`.
fn parse_term(lex: &mut Lexer, sign: i8) -> Result<(BigInt, usize)> {
    let (mut coeff, mut exp) = match lex.next()? {
        Tok::Int(n) => {
            if lex.peek()? == Tok::Star {
                lex.next()?;
                match lex.next()? {
                    Tok::Q => (n, parse_exponent(lex)?),
                    other => {
                        return Err(Error::Parse(format!("expected q after '*', got {other:?}")))
                    }
                }
            } else {
                (n, 0)
            }
        }
        Tok::Q => (BigInt::from(1), parse_exponent(lex)?),
        other => return Err(Error::Parse(format!("expected term, got {other:?}"))),
    };
    if sign < 0 {
        coeff = -coeff;
    }
    let _ = &mut exp;
    Ok((coeff, exp))
}

fn parse_poly_tokens(lex: &mut Lexer) -> Result<QPolynomial> {
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut sign: i8 = 1;
    match lex.peek()? {
        Tok::Minus => {
            lex.next()?;
            sign = -1;
        }
        Tok::Plus => {
            lex.next()?;
        }
        _ => {}
    }
    loop {
        let (c, e) = parse_term(lex, sign)?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigInt::from(0));
        }
        coeffs[e] += c;
        match lex.peek()? {
            Tok::Plus => {
                lex.next()?;
                sign = 1;
            }
            Tok::Minus => {
                lex.next()?;
                sign = -1;
            }
            _ => break,
        }
    }
    Ok(QPolynomial::from_coeffs(coeffs))
}

pub fn parse_polynomial(s: &str) -> Result<QPolynomial> {
    let mut lex = Lexer::new(s);
    let p = parse_poly_tokens(&mut lex)?;
    match lex.next()? {
        Tok::End => Ok(p),
        other => Err(Error::Parse(format!("trailing input: {other:?}"))),
    }
}

pub fn parse_rational_function(s: &str) -> Result<QRationalFunction> {
    let mut lex = Lexer::new(s);
    if lex.peek()? == Tok::LParen {
        // (num)/(den)
        lex.next()?;
        let num = parse_poly_tokens(&mut lex)?;
        if lex.next()? != Tok::RParen {
            return Err(Error::Parse("expected ')'".into()));
        }
        if lex.next()? != Tok::Slash {
            return Err(Error::Parse("expected '/'".into()));
        }
        if lex.next()? != Tok::LParen {
            return Err(Error::Parse("expected '('".into()));
        }
        let den = parse_poly_tokens(&mut lex)?;
        if lex.next()? != Tok::RParen {
            return Err(Error::Parse("expected ')'".into()));
        }
        if lex.next()? != Tok::End {
            return Err(Error::Parse("trailing input after rational".into()));
        }
        QRationalFunction::new(num, den)
    } else {
        let p = parse_polynomial(s)?;
        Ok(QRationalFunction::from_poly(p))
    }
}
