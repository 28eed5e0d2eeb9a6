//! Expressions over integers, `q` and `x`.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := atom ("^" int)?
//! atom   := int | "q" | "x" | "(" expr ")" | "-" factor
//! ```
//!
//! Whitespace is ignored and there is no implicit multiplication. An
//! exponent may carry a sign (`q^-2`) or be parenthesized (`x^(3)`), but it
//! must be an integer literal.

use num_bigint::BigInt;
use qreduce::field::Rat;
use qreduce::xalg::xmono;
use qreduce::{QRat, XPoly, XRat};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("non-integer exponent at {pos}")]
    NonIntegerExponent { pos: usize },
    #[error("division by an expression equal to zero at {pos}")]
    DivisionByZeroExpression { pos: usize },
    #[error("expected an expression free of x")]
    DependsOnX,
    #[error("expected a polynomial in x")]
    NotPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Q,
    X,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Divisor position is kept for error reporting.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Q,
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        let tok = match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            b'q' => Tok::Q,
            b'x' => Tok::X,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let c = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::SyntaxError {
                    pos: i,
                    msg: format!("unexpected character {c:?}"),
                });
            }
        };
        out.push((tok, i));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let pos = self.pos();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let e = self.exponent()?;
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let pos = self.pos();
        let small = |n: BigInt| -> Result<i64, ParseError> {
            i64::try_from(n).map_err(|_| ParseError::SyntaxError {
                pos,
                msg: "exponent too large".into(),
            })
        };
        match self.bump() {
            Some(Tok::Int(n)) => small(n),
            Some(Tok::Minus) => match self.bump() {
                Some(Tok::Int(n)) => Ok(-small(n)?),
                _ => Err(ParseError::NonIntegerExponent { pos }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.at -= 1;
                    return self.err("expected ')'");
                }
                match inner {
                    Expr::Int(n) => small(n),
                    Expr::Neg(b) => match *b {
                        Expr::Int(n) => Ok(-small(n)?),
                        _ => Err(ParseError::NonIntegerExponent { pos }),
                    },
                    _ => Err(ParseError::NonIntegerExponent { pos }),
                }
            }
            _ => Err(ParseError::NonIntegerExponent { pos }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Q) => Ok(Expr::Q),
            Some(Tok::X) => Ok(Expr::X),
            Some(Tok::Minus) => Ok(Expr::Neg(Box::new(self.factor()?))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(e)
            }
            Some(_) => {
                self.at -= 1;
                self.err("expected a number, q, x or '('")
            }
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses text into an expression tree.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Exact value as a rational function of x over ℚ(q).
    pub fn eval(&self) -> Result<XRat, ParseError> {
        Ok(match self {
            Expr::Int(n) => XRat::from_qrat(QRat::from_rat(Rat::from_integer(n.clone()))),
            Expr::Q => XRat::from_qrat(QRat::q()),
            Expr::X => XRat::from_poly(xmono(QRat::one(), 1)),
            Expr::Neg(e) => e.eval()?.neg(),
            Expr::Add(a, b) => a.eval()?.add(&b.eval()?),
            Expr::Sub(a, b) => a.eval()?.sub(&b.eval()?),
            Expr::Mul(a, b) => a.eval()?.mul(&b.eval()?),
            Expr::Div(a, b, pos) => a
                .eval()?
                .div(&b.eval()?)
                .map_err(|_| ParseError::DivisionByZeroExpression { pos: *pos })?,
            Expr::Pow(b, e) => {
                let base = b.eval()?;
                let mut acc = XRat::one();
                for _ in 0..e.unsigned_abs() {
                    acc = acc.mul(&base);
                }
                if *e < 0 {
                    XRat::one()
                        .div(&acc)
                        .map_err(|_| ParseError::DivisionByZeroExpression { pos: 0 })?
                } else {
                    acc
                }
            }
        })
    }
}

pub fn parse_xrat(src: &str) -> Result<XRat, ParseError> {
    parse_expr(src)?.eval()
}

pub fn parse_xpoly(src: &str) -> Result<XPoly, ParseError> {
    parse_xrat(src)?
        .as_poly()
        .cloned()
        .ok_or(ParseError::NotPolynomial)
}

pub fn parse_qrat(src: &str) -> Result<QRat, ParseError> {
    let v = parse_xpoly(src).map_err(|e| match e {
        ParseError::NotPolynomial => ParseError::DependsOnX,
        e => e,
    })?;
    if !v.is_constant() {
        return Err(ParseError::DependsOnX);
    }
    Ok(v.coeff(0))
}
