//! Recursive-descent reader for polynomial expressions.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
//! `unary := ('+'|'-') unary | power`, `power := atom ('^' integer)?`,
//! `atom := integer | variable | '(' expr ')'`. Division is only allowed by a
//! nonzero constant.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{MPoly, VarSet};
use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Option<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(s.parse().ok()?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return None;
        }
    }
    Some(out)
}

struct Parser<'a> {
    vars: &'a Arc<VarSet>,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Option<MPoly> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Some(acc)
    }

    fn term(&mut self) -> Option<MPoly> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' {
                &acc * &rhs
            } else {
                let c = rhs.as_constant().filter(|c| !c.is_zero())?;
                acc.scale(&(Rational::from_integer(1.into()) / c))
            };
        }
        Some(acc)
    }

    fn unary(&mut self) -> Option<MPoly> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Some(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Option<MPoly> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    Some(base.pow(u32::try_from(n).ok()?))
                }
                _ => None,
            }
        } else {
            Some(base)
        }
    }

    fn atom(&mut self) -> Option<MPoly> {
        let tok = self.tokens.get(self.pos)?.clone();
        self.pos += 1;
        match tok {
            Token::Num(n) => Some(MPoly::constant(self.vars, Rational::from_integer(n))),
            Token::Ident(name) => MPoly::var(self.vars, &name).ok(),
            Token::Op('(') => {
                let inner = self.expr()?;
                (self.peek_op() == Some(')')).then(|| {
                    self.pos += 1;
                    inner
                })
            }
            Token::Op(_) => None,
        }
    }
}

pub(super) fn parse_mpoly(vars: &Arc<VarSet>, text: &str) -> Result<MPoly> {
    let bad = || Error::Parse {
        what: "polynomial",
        input: text.to_string(),
    };
    let tokens = tokenize(text).ok_or_else(bad)?;
    // Report unknown identifiers precisely.
    for t in &tokens {
        if let Token::Ident(name) = t {
            vars.index(name)?;
        }
    }
    let mut parser = Parser { vars, tokens, pos: 0 };
    let out = parser.expr().ok_or_else(bad)?;
    if parser.pos != parser.tokens.len() {
        return Err(bad());
    }
    Ok(out)
}
