//! Rational-function expressions in one variable `x`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' '-'? integer)?
//! atom    := integer | 'x' | '(' expr ')'
//! ```
//!
//! `^` binds tightest, then unary minus, then `* /`, then `+ -`; binary
//! operators associate to the left and whitespace is insignificant.

use std::fmt;

use mahlerkit::{RatFunc, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::X => f.write_str("'x'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

/// Deepest accepted nesting of parentheses and unary minus.
const MAX_DEPTH: usize = 256;

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    depth: usize,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let at = (line, col);
        let tok = match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
                continue;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    chars.next();
                    col += 1;
                }
                toks.push((Tok::Int(digits.parse().expect("digits")), at.0, at.1));
                continue;
            }
            'x' => Tok::X,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError {
                    line,
                    column: col,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        chars.next();
        col += 1;
        toks.push((tok, at.0, at.1));
    }
    toks.push((Tok::End, line, col));
    Ok(Lexer {
        toks,
        pos: 0,
        depth: 0,
    })
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let (_, line, column) = self.toks[self.pos];
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.next();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.next();
                    let err = self.error_here("division by zero");
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|_| err)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn nested<T>(
        &mut self,
        f: impl FnOnce(&mut Self) -> Result<T, ParseError>,
    ) -> Result<T, ParseError> {
        if self.depth >= MAX_DEPTH {
            return Err(self.error_here("expression nested too deeply"));
        }
        self.depth += 1;
        let r = f(self);
        self.depth -= 1;
        r
    }

    fn unary(&mut self) -> Result<RatFunc, ParseError> {
        if self.peek() == &Tok::Minus {
            self.next();
            return self.nested(|lx| lx.unary()).map(|r| -r);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if self.peek() != &Tok::Caret {
            return Ok(base);
        }
        self.next();
        let negative = if self.peek() == &Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let err = self.error_here("exponent must be an integer below 2^31");
        let Tok::Int(n) = self.next() else {
            return Err(err);
        };
        let e: i32 = i32::try_from(n).map_err(|_| err)?;
        let e = if negative { -e } else { e };
        let err = self.error_here("zero raised to a negative power");
        base.pow(e).map_err(|_| err)
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        let here = self.error_here("");
        match self.next() {
            Tok::Int(n) => Ok(RatFunc::constant(Rational::from_integer(n))),
            Tok::X => Ok(RatFunc::x()),
            Tok::LParen => {
                let inner = self.nested(|lx| lx.expr())?;
                if self.peek() != &Tok::RParen {
                    return Err(self.error_here(format!("expected ')', found {}", self.peek())));
                }
                self.next();
                Ok(inner)
            }
            other => Err(ParseError {
                message: format!("expected a number, 'x' or '(', found {other}"),
                ..here
            }),
        }
    }
}

/// Parses an expression in the grammar above into a reduced rational
/// function.
pub fn parse_ratfunc_expr(text: &str) -> Result<RatFunc, ParseError> {
    let mut lx = lex(text)?;
    let r = lx.expr()?;
    if lx.peek() != &Tok::End {
        return Err(lx.error_here(format!("unexpected {}", lx.peek())));
    }
    Ok(r)
}

/// Parses `"n"` or `"n/d"` with optional signs into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let r = parse_ratfunc_expr(text)?;
    let err = |m: &str| ParseError {
        line: 1,
        column: 1,
        message: m.to_string(),
    };
    if !r.is_polynomial() || r.num().degree().unwrap_or(0) > 0 {
        return Err(err("expected a rational number"));
    }
    Ok(r.num().coeff(0))
}

/// Canonical text of an exact rational, `"n"` or `"n/d"`.
pub fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else if c.is_zero() {
        "0".into()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}
