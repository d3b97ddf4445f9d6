//! Recursive-descent parser for the infix expression syntax.
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | '+' unary | power
//! power   := primary ('^' unary)?          (right associative)
//! primary := number | ident | ident '(' sum ')' | '(' sum ')'
//! ```
//!
//! `I` is the imaginary unit, `pi` is π, `**` is accepted for `^`, `sqrt`,
//! `ln` and `atan` are aliases, and
//! decimal literals are read as exact rationals.

use thiserror::Error;

use super::{Expr, Func, Number};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Number),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            let text = &src[start..i];
            let n = Number::parse_decimal(text).ok_or_else(|| ParseError {
                position: start,
                message: format!("malformed number {text:?}"),
            })?;
            out.push((Tok::Num(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if c == '*' && bytes.get(i + 1) == Some(&b'*') {
            out.push((Tok::Op('^'), i));
            i += 2;
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(ParseError { position: i, message: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |t| t.1)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.here(), message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat('+') {
                terms.push(self.term()?);
            } else if self.eat('-') {
                terms.push(-self.term()?);
            } else {
                return Ok(Expr::add_all(terms));
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.unary()?];
        loop {
            if self.eat('*') {
                factors.push(self.unary()?);
            } else if self.eat('/') {
                factors.push(self.unary()?.recip());
            } else {
                return Ok(Expr::mul_all(factors));
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.eat('^') {
            let exp = self.unary()?;
            return Ok(Expr::pow(base, exp));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::num(n))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                let at = self.here();
                self.pos += 1;
                if self.eat('(') {
                    if name == "sqrt" {
                        let arg = self.sum()?;
                        if !self.eat(')') {
                            return self.err("expected ')' after function argument");
                        }
                        return Ok(Expr::pow(arg, Expr::rational(1, 2)));
                    }
                    let f = match Func::from_name(&name) {
                        Some(f) => f,
                        None => {
                            let alias = match name.as_str() {
                                "ln" | "log" => Some(Func::LnAbs),
                                "atan" => Some(Func::Arctan),
                                _ => None,
                            };
                            match alias {
                                Some(f) => f,
                                None => {
                                    return Err(ParseError {
                                        position: at,
                                        message: format!("unknown function {name:?}"),
                                    })
                                }
                            }
                        }
                    };
                    let arg = self.sum()?;
                    if !self.eat(')') {
                        return self.err("expected ')' after function argument");
                    }
                    return Ok(Expr::func(f, arg));
                }
                Ok(match name.as_str() {
                    "I" => Expr::i(),
                    "pi" => Expr::pi(),
                    _ => Expr::sym(&name),
                })
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected {c:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an infix expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, len: src.len() };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::sym;

    #[test]
    fn precedence() {
        let x = sym("x");
        assert_eq!(parse("2*x^2").unwrap(), 2 * x.powi(2));
        assert_eq!(parse("-x^2").unwrap(), -x.powi(2));
        assert_eq!(parse("2^3^2").unwrap(), Expr::int(512));
        assert_eq!(parse("x^-1").unwrap(), x.recip());
        assert_eq!(parse("x**2").unwrap(), x.powi(2));
        assert_eq!(parse("1/2/x").unwrap(), Expr::rational(1, 2) / &x);
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse("0.5*x").unwrap(), parse("x/2").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("x + foo(y)").unwrap_err();
        assert_eq!(e.position, 4);
        assert!(parse("(x + 1").is_err());
        assert!(parse("x $ y").unwrap_err().position == 2);
        assert!(parse("").is_err());
        assert!(parse("x y").is_err());
    }

    #[test]
    fn aliases() {
        assert_eq!(parse("ln(x)").unwrap(), parse("lnabs(x)").unwrap());
    }
}
