//! Text forms of soft numbers.
//!
//! The canonical literal is `<a>z0 + <b>`, e.g. `2z0 + 3` or
//! `-0.5z0 + 1e3`. Either term may be omitted (`3`, `2z0`) and the real
//! term may be subtracted (`2z0 - 3`). [`SoftNumber`]'s `Display` impl
//! always prints the full canonical form.
//!
//! Expressions extend literals with `+ - * /`, integer powers `^n`,
//! parentheses, and the calls `exp ln sin cos tan sqrt recip`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::number::{AnalyticFn, SoftError, SoftNumber};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {}: {message}", .position + 1)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Soft(#[from] SoftError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64, bool),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(v, _) => write!(f, "number {v}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                let mut integral = true;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    integral = false;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                // exponent only when digits follow, so `2e` stays an error
                // and `2z0` lexes as number + identifier
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        integral = false;
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let v: f64 = text
                    .parse()
                    .map_err(|_| ParseError::new(start, format!("malformed number '{text}'")))?;
                if !v.is_finite() {
                    return Err(ParseError::new(start, format!("number '{text}' overflows")));
                }
                out.push((start, Tok::Num(v, integral)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(start, format!("unexpected character '{ch}'")));
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Literal(SoftNumber),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(AnalyticFn, Box<Expr>),
}

impl Expr {
    pub fn eval(&self) -> Result<SoftNumber, SoftError> {
        Ok(match self {
            Expr::Literal(v) => *v,
            Expr::Neg(e) => -e.eval()?,
            Expr::Add(l, r) => l.eval()?.checked_add(r.eval()?)?,
            Expr::Sub(l, r) => l.eval()?.checked_sub(r.eval()?)?,
            Expr::Mul(l, r) => l.eval()?.checked_mul(r.eval()?)?,
            Expr::Div(l, r) => l.eval()?.checked_div(r.eval()?)?,
            Expr::Pow(base, n) => {
                let p = base.eval()?.checked_pow(n.unsigned_abs())?;
                if *n < 0 {
                    SoftNumber::ONE.checked_div(p)?
                } else {
                    p
                }
            }
            Expr::Call(f, arg) => f.lift(arg.eval()?)?,
        })
    }
}

impl FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut p = Parser::new(s)?;
        let e = p.expr()?;
        p.finish()?;
        Ok(e)
    }
}

/// Parses and evaluates an expression.
pub fn eval(src: &str) -> Result<SoftNumber, EvalError> {
    Ok(src.parse::<Expr>()?.eval()?)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            end: src.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::new(self.offset(), format!("expected {wanted}, found {t}")),
            None => ParseError::new(self.end, format!("expected {wanted}, found end of input")),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    fn is_soft_unit(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "z0")
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(v, true)) if v <= i32::MAX as f64 => {
                let n = v as i32;
                Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }))
            }
            Some(_) => Err(ParseError::new(at, "exponent must be an integer literal")),
            None => Err(ParseError::new(self.end, "expected exponent, found end of input")),
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(v, _)) => {
                self.pos += 1;
                let lit = if self.is_soft_unit() {
                    self.pos += 1;
                    SoftNumber::soft_zero(v)
                } else {
                    SoftNumber::from_real(v)
                };
                Ok(Expr::Literal(lit.expect("lexer yields finite numbers")))
            }
            Some(Tok::Ident(name)) if name == "z0" => {
                self.pos += 1;
                Ok(Expr::Literal(SoftNumber::SOFT_UNIT))
            }
            Some(Tok::Ident(name)) => {
                let f = AnalyticFn::from_name(&name)
                    .ok_or_else(|| ParseError::new(at, format!("unknown function '{name}'")))?;
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let arg = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Call(f, Box::new(arg)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => Err(self.unexpected("a number, 'z0', a function or '('")),
        }
    }

    fn signed_number(&mut self) -> Result<f64, ParseError> {
        let sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1.0
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1.0
            }
            _ => 1.0,
        };
        match self.peek() {
            Some(Tok::Num(v, _)) => {
                let v = *v;
                self.pos += 1;
                Ok(sign * v)
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    /// `[a z0] [(+|-) b]` with at least one of the two terms.
    fn literal(&mut self) -> Result<SoftNumber, ParseError> {
        let first = self.signed_number()?;
        if !self.is_soft_unit() {
            self.finish()?;
            return Ok(SoftNumber::from_real(first).expect("finite"));
        }
        self.pos += 1;
        let real = match self.peek() {
            None => 0.0,
            Some(Tok::Plus) => {
                self.pos += 1;
                self.signed_number()?
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                -self.signed_number()?
            }
            Some(_) => return Err(self.unexpected("'+', '-' or end of input")),
        };
        self.finish()?;
        Ok(SoftNumber::new(first, real).expect("finite"))
    }
}

impl FromStr for SoftNumber {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        Parser::new(s)?.literal()
    }
}
