//! Recursive-descent parser.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | constant | variable | func '(' expr ')' | '(' expr ')'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)` while `2^-1` is accepted.

use super::{BinOp, Constant, Func, Node};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let (tok, at) = lx.next()?;
            let end = tok == Tok::End;
            out.push((tok, at));
            if end {
                return Ok(out);
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn next(&mut self) -> Result<(Tok, usize)> {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || c == b'.' {
            return self.number(start);
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                self.pos += 1;
            }
            return Ok((Tok::Ident(self.src[start..self.pos].to_string()), start));
        }
        match c {
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' | b',' => {
                self.pos += 1;
                Ok((Tok::Sym(c as char), start))
            }
            _ => Err(Error::Syntax {
                offset: start,
                message: format!(
                    "unexpected character `{}`",
                    self.src[start..].chars().next().unwrap_or('?')
                ),
            }),
        }
    }

    fn number(&mut self, start: usize) -> Result<(Tok, usize)> {
        let bytes = self.src.as_bytes();
        let digits = |lx: &mut Lexer| {
            let s = lx.pos;
            while matches!(lx.peek(), Some(c) if c.is_ascii_digit()) {
                lx.pos += 1;
            }
            lx.pos - s
        };
        let mut n = digits(self);
        if self.peek() == Some(b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            return Err(Error::Syntax {
                offset: start,
                message: "malformed number".into(),
            });
        }
        // exponent only when followed by digits, so `2e` stays `2` then `e`
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mut k = self.pos + 1;
            if matches!(bytes.get(k), Some(b'+' | b'-')) {
                k += 1;
            }
            if matches!(bytes.get(k), Some(c) if c.is_ascii_digit()) {
                self.pos = k;
                digits(self);
            }
        }
        let text = &self.src[start..self.pos];
        text.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(|v| (Tok::Num(v), start))
            .ok_or_else(|| Error::Syntax {
                offset: start,
                message: format!("malformed number `{text}`"),
            })
    }
}

pub(super) struct Parser<'p> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    param: &'p str,
}

impl<'p> Parser<'p> {
    pub(super) fn parse(text: &str, param: &'p str) -> Result<Node> {
        if text.trim().is_empty() {
            return Err(Error::Syntax {
                offset: 0,
                message: "empty expression".into(),
            });
        }
        let mut p = Parser {
            toks: Lexer::tokens(text)?,
            i: 0,
            param,
        };
        let node = p.expr()?;
        match p.peek() {
            Tok::End => Ok(node),
            Tok::Ident(_) | Tok::Num(_) | Tok::Sym('(') => Err(p.error(
                "missing operator (implicit multiplication is not supported)",
            )),
            other => {
                let msg = format!("unexpected token {other:?}");
                Err(p.error(&msg))
            }
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if t != Tok::End {
            self.i += 1;
        }
        t
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.offset(),
            message: message.to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.primary()?;
        if self.eat('^') {
            let exp = self.unary()?;
            return Ok(Node::Binary(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(v) => Ok(Node::Num(v)),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Tok::Ident(name) => self.identifier(name, at),
            Tok::End => Err(Error::Syntax {
                offset: at,
                message: "unexpected end of expression".into(),
            }),
            Tok::Sym(c) => Err(Error::Syntax {
                offset: at,
                message: format!("unexpected `{c}`"),
            }),
        }
    }

    fn identifier(&mut self, name: String, at: usize) -> Result<Node> {
        if let Some(func) = Func::from_name(&name) {
            let args = self.call_args(&name)?;
            return match <[Node; 1]>::try_from(args) {
                Ok([arg]) => Ok(Node::Call(func, Box::new(arg))),
                Err(args) => Err(Error::Arity {
                    name,
                    expected: 1,
                    found: args.len(),
                }),
            };
        }
        if name == self.param {
            return Ok(Node::Var);
        }
        match Constant::from_name(&name) {
            Some(c) => Ok(Node::Const(c)),
            None => Err(Error::UnknownIdentifier { name, offset: at }),
        }
    }

    fn call_args(&mut self, name: &str) -> Result<Vec<Node>> {
        if !self.eat('(') {
            return Err(Error::Arity {
                name: name.to_string(),
                expected: 1,
                found: 0,
            });
        }
        let mut args = Vec::new();
        if self.eat(')') {
            return Ok(args);
        }
        loop {
            args.push(self.expr()?);
            if self.eat(')') {
                return Ok(args);
            }
            if !self.eat(',') {
                return Err(self.error("expected `,` or `)`"));
            }
        }
    }
}
