//! Expression grammar.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? INT)*
//! atom  := INT | IDENT | '(' expr ')'
//! ```
//!
//! `INT / INT` folds to a rational constant. Multiplication is never implicit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::expr::{Expr, SymbolKind};
use crate::poly::Symbol;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    /// Any other single character; only meaningful to callers that split lines.
    Other(char),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte offset of the first character.
    pub start: usize,
    /// Byte offset one past the last character.
    pub end: usize,
}

impl Token {
    fn ends_operand(&self) -> bool {
        matches!(
            self.kind,
            TokenKind::Int(_) | TokenKind::Ident(_) | TokenKind::RParen
        )
    }

    fn starts_operand(&self) -> bool {
        matches!(
            self.kind,
            TokenKind::Int(_) | TokenKind::Ident(_) | TokenKind::LParen
        )
    }
}

pub fn tokenize(text: &str) -> Vec<Token> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            TokenKind::Int(text[start..i].parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            TokenKind::Ident(text[start..i].to_string())
        } else {
            let ch = text[i..].chars().next().expect("in bounds");
            i += ch.len_utf8();
            match ch {
                '+' => TokenKind::Plus,
                '-' => TokenKind::Minus,
                '*' => TokenKind::Star,
                '/' => TokenKind::Slash,
                '^' => TokenKind::Caret,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                other => TokenKind::Other(other),
            }
        };
        out.push(Token {
            kind,
            start,
            end: i,
        });
    }
    out
}

/// Byte ranges of the expressions in a whitespace-juxtaposed list such as
/// `0 0 1` or `1/y - 2 x`. A new item starts wherever an operand would
/// otherwise be followed directly by another operand at parenthesis depth 0.
pub fn split_juxtaposed(text: &str) -> Vec<(usize, usize)> {
    let tokens = tokenize(text);
    let mut ranges = Vec::new();
    let mut depth = 0i32;
    let mut item_start: Option<usize> = None;
    let mut prev: Option<&Token> = None;
    for tok in &tokens {
        if depth == 0 {
            if let (Some(p), Some(s)) = (prev, item_start) {
                if p.ends_operand() && tok.starts_operand() {
                    ranges.push((s, p.end));
                    item_start = None;
                }
            }
        }
        if item_start.is_none() {
            item_start = Some(tok.start);
        }
        match tok.kind {
            TokenKind::LParen => depth += 1,
            TokenKind::RParen => depth -= 1,
            _ => {}
        }
        prev = Some(tok);
    }
    if let (Some(s), Some(p)) = (item_start, prev) {
        ranges.push((s, p.end));
    }
    ranges
}

/// Declared names, used to tag identifiers and reject unknown ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    pub coords: Vec<Symbol>,
    pub params: Vec<Symbol>,
}

impl SymbolTable {
    pub fn new<C, P>(coords: C, params: P) -> Self
    where
        C: IntoIterator,
        C::Item: AsRef<str>,
        P: IntoIterator,
        P::Item: AsRef<str>,
    {
        SymbolTable {
            coords: coords.into_iter().map(|s| Symbol::new(s.as_ref())).collect(),
            params: params.into_iter().map(|s| Symbol::new(s.as_ref())).collect(),
        }
    }

    pub fn kind_of(&self, name: &str) -> Option<SymbolKind> {
        if self.coords.iter().any(|c| c.name() == name) {
            Some(SymbolKind::Coordinate)
        } else if self.params.iter().any(|p| p.name() == name) {
            Some(SymbolKind::Parameter)
        } else {
            None
        }
    }

    /// Kind lookup for rendering; undeclared names render as parameters.
    pub fn classify(&self, s: &Symbol) -> SymbolKind {
        self.kind_of(s.name()).unwrap_or(SymbolKind::Parameter)
    }
}

pub fn parse_expr(text: &str, table: &SymbolTable) -> Result<Expr, Error> {
    let tokens = tokenize(text);
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        table,
        len: text.len(),
    };
    if tokens.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(Error::Syntax {
            pos: t.start,
            msg: match t.kind {
                TokenKind::Int(_) | TokenKind::Ident(_) | TokenKind::LParen => {
                    "expected an operator (multiplication must be explicit `*`)".into()
                }
                TokenKind::RParen => "unbalanced `)`".into(),
                _ => "unexpected token".into(),
            },
        });
    }
    Ok(e)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    table: &'a SymbolTable,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next_pos(&self) -> usize {
        self.peek().map(|t| t.start).unwrap_or(self.len)
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().is_some_and(|t| &t.kind == kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let first = self.term()?;
        let mut terms: Option<Vec<Expr>> = None;
        loop {
            let negate = if self.eat(&TokenKind::Plus) {
                false
            } else if self.eat(&TokenKind::Minus) {
                true
            } else {
                break;
            };
            let rhs = self.term()?;
            let rhs = if negate { Expr::Neg(Box::new(rhs)) } else { rhs };
            terms.get_or_insert_with(|| vec![first.clone()]).push(rhs);
        }
        Ok(match terms {
            Some(ts) => Expr::Sum(ts),
            None => first,
        })
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut acc = self.unary()?;
        // Whether `acc` is a product built by this chain (and so may be extended).
        let mut open_product = false;
        loop {
            if self.eat(&TokenKind::Star) {
                let rhs = self.unary()?;
                acc = match acc {
                    Expr::Product(mut fs) if open_product => {
                        fs.push(rhs);
                        Expr::Product(fs)
                    }
                    other => Expr::Product(vec![other, rhs]),
                };
                open_product = true;
            } else if self.eat(&TokenKind::Slash) {
                let rhs = self.unary()?;
                acc = match (acc, rhs) {
                    (Expr::Num(a), Expr::Num(b)) if b.is_integer() && !b.is_zero() => {
                        Expr::Num(a / b)
                    }
                    (a, b) => Expr::Quotient(Box::new(a), Box::new(b)),
                };
                open_product = false;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        if self.eat(&TokenKind::Minus) {
            let inner = self.unary()?;
            return Ok(match inner {
                Expr::Num(q) => Expr::Num(-q),
                other => Expr::Neg(Box::new(other)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Error> {
        let mut base = self.atom()?;
        while self.eat(&TokenKind::Caret) {
            let neg = self.eat(&TokenKind::Minus);
            let at = self.next_pos();
            let k = match self.peek().map(|t| t.kind.clone()) {
                Some(TokenKind::Int(n)) => {
                    self.pos += 1;
                    i32::try_from(n).map_err(|_| Error::Syntax {
                        pos: at,
                        msg: "exponent out of range".into(),
                    })?
                }
                _ => {
                    return Err(Error::Syntax {
                        pos: at,
                        msg: "exponent must be an integer literal".into(),
                    })
                }
            };
            base = Expr::Power(Box::new(base), if neg { -k } else { k });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        let at = self.next_pos();
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "unexpected end of expression".into(),
                })
            }
        };
        self.pos += 1;
        match tok.kind {
            TokenKind::Int(n) => Ok(Expr::Num(BigRational::from_integer(n))),
            TokenKind::Ident(name) => match self.table.kind_of(&name) {
                Some(SymbolKind::Coordinate) => Ok(Expr::Coord(Symbol::new(&name))),
                Some(SymbolKind::Parameter) => Ok(Expr::Param(Symbol::new(&name))),
                None => Err(Error::UnknownSymbol {
                    name,
                    pos: Some(tok.start),
                }),
            },
            TokenKind::LParen => {
                let inner = self.expr()?;
                if !self.eat(&TokenKind::RParen) {
                    return Err(Error::Syntax {
                        pos: self.next_pos(),
                        msg: "expected `)`".into(),
                    });
                }
                Ok(inner)
            }
            _ => Err(Error::Syntax {
                pos: tok.start,
                msg: "expected a number, symbol or `(`".into(),
            }),
        }
    }
}
