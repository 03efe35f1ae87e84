//! Reader for the canonical polynomial text form.
//!
//! Accepts sums and products of rational numbers, ring variables and the
//! reserved parameter `t` (only over ℚ(t)), with `^` for non-negative integer
//! powers, parentheses, and division by expressions free of ring variables.

use super::multipoly::MultiPoly;
use crate::arith::{parse_rational, Field};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
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
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a, F> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a [String],
    _field: std::marker::PhantomData<F>,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<MultiPoly<F>> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly<F>> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let d = self.factor()?;
                let c = d
                    .as_constant()
                    .ok_or_else(|| Error::Parse("division by a non-constant polynomial".into()))?;
                acc = acc.scale(&c.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly<F>> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.parse().map_err(|_| Error::Parse(format!("bad exponent {n}")))?;
                    Ok(base.pow(e))
                }
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly<F>> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.nvars(), F::from_rational(parse_rational(&n)?)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.names.iter().position(|v| *v == name) {
                    Ok(MultiPoly::var(self.nvars(), i))
                } else if name == "t" {
                    let t = F::parameter().ok_or_else(|| {
                        Error::Parse("parameter t is not available over Q".into())
                    })?;
                    Ok(MultiPoly::constant(self.nvars(), t))
                } else {
                    Err(Error::Parse(format!("unknown variable {name:?}")))
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `text` as a polynomial in the variables `names`.
pub fn parse_poly<F: Field>(text: &str, names: &[String]) -> Result<MultiPoly<F>> {
    if names.iter().any(|n| n == "t") {
        return Err(Error::Parse("`t` is reserved for the family parameter".into()));
    }
    let mut p = Parser::<F> { tokens: tokenize(text)?, pos: 0, names, _field: std::marker::PhantomData };
    if p.tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {text:?}")));
    }
    Ok(e)
}
