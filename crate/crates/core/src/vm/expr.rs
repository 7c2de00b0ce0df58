//! Expression language for enumerator programs.
//!
//! ```text
//! or   := and ("or" and)*
//! and  := cmp ("and" cmp)*
//! cmp  := sum (("==" | "!=" | "<" | "<=" | ">" | ">=") sum)?
//! sum  := term (("+" | "-") term)*
//! term := atom (("*" | "mod") atom)*
//! atom := natural | "i" | "(" or ")"
//! ```
//!
//! Values are `u64` naturals with checked arithmetic. Subtraction truncates
//! at zero.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ty {
    Nat,
    Bool,
}

impl Ty {
    fn name(self) -> &'static str {
        match self {
            Ty::Nat => "natural",
            Ty::Bool => "boolean",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Mod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Lit(u64),
    Input,
    Arith(ArithOp, Box<Expr>, Box<Expr>),
    Cmp(CmpOp, Box<Expr>, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

/// Why evaluation stopped. The caller attaches the expression text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    Overflow,
    DivisionByZero,
}

impl Expr {
    /// Parses `source` and checks that it has type `expected`. `field` names
    /// the program key being parsed, for diagnostics.
    pub fn parse(source: &str, expected: Ty, field: &'static str) -> Result<Expr> {
        let tokens = tokenize(source)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            field,
            end: source.len(),
        };
        let (expr, ty) = parser.or()?;
        if let Some(tok) = parser.peek() {
            return Err(Error::Syntax {
                offset: tok.offset,
                message: format!("unexpected {}", tok.kind),
            });
        }
        if ty != expected {
            return Err(Error::TypeMismatch {
                field,
                expected: expected.name(),
                found: ty.name(),
            });
        }
        Ok(expr)
    }

    pub fn eval_nat(&self, i: u64) -> Result<u64, Fault> {
        match self {
            Expr::Lit(v) => Ok(*v),
            Expr::Input => Ok(i),
            Expr::Arith(op, a, b) => {
                let (a, b) = (a.eval_nat(i)?, b.eval_nat(i)?);
                match op {
                    ArithOp::Add => a.checked_add(b).ok_or(Fault::Overflow),
                    ArithOp::Sub => Ok(a.saturating_sub(b)),
                    ArithOp::Mul => a.checked_mul(b).ok_or(Fault::Overflow),
                    ArithOp::Mod => a.checked_rem(b).ok_or(Fault::DivisionByZero),
                }
            }
            _ => unreachable!("type-checked: boolean expression in natural position"),
        }
    }

    pub fn eval_bool(&self, i: u64) -> Result<bool, Fault> {
        match self {
            Expr::Cmp(op, a, b) => {
                let (a, b) = (a.eval_nat(i)?, b.eval_nat(i)?);
                Ok(match op {
                    CmpOp::Eq => a == b,
                    CmpOp::Ne => a != b,
                    CmpOp::Lt => a < b,
                    CmpOp::Le => a <= b,
                    CmpOp::Gt => a > b,
                    CmpOp::Ge => a >= b,
                })
            }
            Expr::And(a, b) => Ok(a.eval_bool(i)? && b.eval_bool(i)?),
            Expr::Or(a, b) => Ok(a.eval_bool(i)? || b.eval_bool(i)?),
            _ => unreachable!("type-checked: natural expression in boolean position"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Mod,
    And,
    Or,
    Cmp(CmpOp),
    LParen,
    RParen,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Num(v) => write!(f, "number {v}"),
            Kind::Ident(s) => write!(f, "identifier `{s}`"),
            Kind::Plus => f.write_str("`+`"),
            Kind::Minus => f.write_str("`-`"),
            Kind::Star => f.write_str("`*`"),
            Kind::Mod => f.write_str("`mod`"),
            Kind::And => f.write_str("`and`"),
            Kind::Or => f.write_str("`or`"),
            Kind::Cmp(_) => f.write_str("comparison"),
            Kind::LParen => f.write_str("`(`"),
            Kind::RParen => f.write_str("`)`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    offset: usize,
}

fn tokenize(source: &str) -> Result<Vec<Token>> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let value = source[start..pos]
                .parse::<u64>()
                .map_err(|_| Error::Syntax {
                    offset: start,
                    message: "literal does not fit in 64 bits".into(),
                })?;
            tokens.push(Token {
                kind: Kind::Num(value),
                offset: start,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            let kind = match &source[start..pos] {
                "mod" => Kind::Mod,
                "and" => Kind::And,
                "or" => Kind::Or,
                word => Kind::Ident(word.to_string()),
            };
            tokens.push(Token {
                kind,
                offset: start,
            });
            continue;
        }
        let next = bytes.get(pos + 1).copied();
        let (kind, width) = match (c, next) {
            (b'=', Some(b'=')) => (Kind::Cmp(CmpOp::Eq), 2),
            (b'!', Some(b'=')) => (Kind::Cmp(CmpOp::Ne), 2),
            (b'<', Some(b'=')) => (Kind::Cmp(CmpOp::Le), 2),
            (b'>', Some(b'=')) => (Kind::Cmp(CmpOp::Ge), 2),
            (b'<', _) => (Kind::Cmp(CmpOp::Lt), 1),
            (b'>', _) => (Kind::Cmp(CmpOp::Gt), 1),
            (b'+', _) => (Kind::Plus, 1),
            (b'-', _) => (Kind::Minus, 1),
            (b'*', _) => (Kind::Star, 1),
            (b'(', _) => (Kind::LParen, 1),
            (b')', _) => (Kind::RParen, 1),
            _ => {
                let ch = source[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        pos += width;
        tokens.push(Token {
            kind,
            offset: start,
        });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    field: &'static str,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, kind: &Kind) -> bool {
        if self.peek().is_some_and(|t| &t.kind == kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&self, ty: Ty, got: Ty) -> Result<()> {
        if ty == got {
            Ok(())
        } else {
            Err(Error::TypeMismatch {
                field: self.field,
                expected: ty.name(),
                found: got.name(),
            })
        }
    }

    fn or(&mut self) -> Result<(Expr, Ty)> {
        let (mut lhs, mut ty) = self.and()?;
        while self.eat(&Kind::Or) {
            let (rhs, rty) = self.and()?;
            self.expect(Ty::Bool, ty)?;
            self.expect(Ty::Bool, rty)?;
            lhs = Expr::Or(Box::new(lhs), Box::new(rhs));
            ty = Ty::Bool;
        }
        Ok((lhs, ty))
    }

    fn and(&mut self) -> Result<(Expr, Ty)> {
        let (mut lhs, mut ty) = self.cmp()?;
        while self.eat(&Kind::And) {
            let (rhs, rty) = self.cmp()?;
            self.expect(Ty::Bool, ty)?;
            self.expect(Ty::Bool, rty)?;
            lhs = Expr::And(Box::new(lhs), Box::new(rhs));
            ty = Ty::Bool;
        }
        Ok((lhs, ty))
    }

    fn cmp(&mut self) -> Result<(Expr, Ty)> {
        let (lhs, ty) = self.sum()?;
        let op = match self.peek() {
            Some(Token {
                kind: Kind::Cmp(op),
                ..
            }) => *op,
            _ => return Ok((lhs, ty)),
        };
        self.pos += 1;
        let (rhs, rty) = self.sum()?;
        self.expect(Ty::Nat, ty)?;
        self.expect(Ty::Nat, rty)?;
        if let Some(Token {
            kind: Kind::Cmp(_),
            offset,
        }) = self.peek()
        {
            return Err(Error::Syntax {
                offset: *offset,
                message: "comparisons do not chain; use `and`".into(),
            });
        }
        Ok((Expr::Cmp(op, Box::new(lhs), Box::new(rhs)), Ty::Bool))
    }

    fn sum(&mut self) -> Result<(Expr, Ty)> {
        let (mut lhs, mut ty) = self.term()?;
        loop {
            let op = if self.eat(&Kind::Plus) {
                ArithOp::Add
            } else if self.eat(&Kind::Minus) {
                ArithOp::Sub
            } else {
                break;
            };
            let (rhs, rty) = self.term()?;
            self.expect(Ty::Nat, ty)?;
            self.expect(Ty::Nat, rty)?;
            lhs = Expr::Arith(op, Box::new(lhs), Box::new(rhs));
            ty = Ty::Nat;
        }
        Ok((lhs, ty))
    }

    fn term(&mut self) -> Result<(Expr, Ty)> {
        let (mut lhs, mut ty) = self.atom()?;
        loop {
            let op = if self.eat(&Kind::Star) {
                ArithOp::Mul
            } else if self.eat(&Kind::Mod) {
                ArithOp::Mod
            } else {
                break;
            };
            let (rhs, rty) = self.atom()?;
            self.expect(Ty::Nat, ty)?;
            self.expect(Ty::Nat, rty)?;
            lhs = Expr::Arith(op, Box::new(lhs), Box::new(rhs));
            ty = Ty::Nat;
        }
        Ok((lhs, ty))
    }

    fn atom(&mut self) -> Result<(Expr, Ty)> {
        let Some(tok) = self.peek().cloned() else {
            return Err(Error::Syntax {
                offset: self.end,
                message: "unexpected end of expression".into(),
            });
        };
        self.pos += 1;
        match tok.kind {
            Kind::Num(v) => Ok((Expr::Lit(v), Ty::Nat)),
            Kind::Ident(name) if name == "i" => Ok((Expr::Input, Ty::Nat)),
            Kind::Ident(name) => Err(Error::UnknownIdentifier {
                name,
                offset: tok.offset,
            }),
            Kind::LParen => {
                let inner = self.or()?;
                if !self.eat(&Kind::RParen) {
                    let offset = self.peek().map_or(self.end, |t| t.offset);
                    return Err(Error::Syntax {
                        offset,
                        message: "expected `)`".into(),
                    });
                }
                Ok(inner)
            }
            other => Err(Error::Syntax {
                offset: tok.offset,
                message: format!("unexpected {other}"),
            }),
        }
    }
}
