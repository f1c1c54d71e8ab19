use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{GradedPoly, Monomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnexpectedToken(String),
    ZeroDenominator,
    BadExponent,
    /// `eta^2`, `dt^3`, ...
    OddVariableSquared(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected token '{t}'"),
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator"),
            ParseErrorKind::BadExponent => write!(f, "exponent must be a non-negative integer"),
            ParseErrorKind::OddVariableSquared(v) => {
                write!(f, "odd variable '{v}' raised to a power above 1")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Int(u32),
    Var(&'static str),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(r) => write!(f, "{r}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Var(v) => write!(f, "{v}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            c if c.is_whitespace() => i += 1,
            '+' | '-' | '*' | '^' | '(' | ')' => {
                out.push((
                    start,
                    match c {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '^' => Tok::Caret,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    },
                ));
                i += 1;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = src[start..i].parse().expect("digits");
                let mut den = BigInt::from(1);
                let mut has_den = false;
                if i < bytes.len() && bytes[i] == b'/' {
                    let slash = i;
                    i += 1;
                    let ds = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if ds == i {
                        return Err(ParseError {
                            pos: slash,
                            kind: ParseErrorKind::UnexpectedChar('/'),
                        });
                    }
                    den = src[ds..i].parse().expect("digits");
                    if den.is_zero() {
                        return Err(ParseError {
                            pos: ds,
                            kind: ParseErrorKind::ZeroDenominator,
                        });
                    }
                    has_den = true;
                }
                let tok = match (has_den, u32::try_from(&num)) {
                    (false, Ok(n)) => Tok::Int(n),
                    _ => Tok::Num(Rational::new(num, den)),
                };
                out.push((start, tok));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let var = match &src[start..i] {
                    "x" => "x",
                    "eta" => "eta",
                    "t" => "t",
                    "dt" => "dt",
                    other => {
                        return Err(ParseError {
                            pos: start,
                            kind: ParseErrorKind::UnexpectedToken(other.to_string()),
                        })
                    }
                };
                out.push((start, Tok::Var(var)));
            }
            other => {
                return Err(ParseError {
                    pos: start,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            pos: self.offset(),
            kind,
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.to_string())),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<GradedPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GradedPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<GradedPoly, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<GradedPoly, ParseError> {
        let odd_var = match self.peek() {
            Some(Tok::Var(v @ ("eta" | "dt"))) => Some(*v),
            _ => None,
        };
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let exp = match self.peek() {
                Some(Tok::Int(n)) => *n,
                _ => return Err(self.err(ParseErrorKind::BadExponent)),
            };
            if let Some(v) = odd_var {
                if exp > 1 {
                    return Err(self.err(ParseErrorKind::OddVariableSquared(v.to_string())));
                }
            }
            self.pos += 1;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<GradedPoly, ParseError> {
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(GradedPoly::constant(Rational::from_integer(n.into())))
            }
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(GradedPoly::constant(r))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(GradedPoly::monomial(match v {
                    "x" => Monomial::x_pow(1),
                    "eta" => Monomial::new(0, true, 0, false),
                    "t" => Monomial::new(0, false, 1, false),
                    _ => Monomial::new(0, false, 0, true),
                }))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.unexpected()),
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses the polynomial grammar: rationals (`-3/2`), the variables `x`,
/// `eta`, `t`, `dt`, the operators `+ - * ^` and parentheses.
pub fn parse_poly(src: &str) -> Result<GradedPoly, ParseError> {
    let toks = lex(src)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let poly = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.unexpected());
    }
    Ok(poly)
}
