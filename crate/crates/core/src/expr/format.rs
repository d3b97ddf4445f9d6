//! Infix rendering that the parser reads back to the same tree.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Expr, Node, Number};

const ADD: u8 = 1;
const MUL: u8 = 2;
const ATOM: u8 = 4;

fn wrap(s: String, prec: u8, need: u8) -> String {
    if prec < need {
        format!("({s})")
    } else {
        s
    }
}

fn rational(r: &BigRational) -> (String, u8) {
    if r.is_integer() {
        let p = if r.is_negative() { MUL } else { ATOM };
        (r.numer().to_string(), p)
    } else {
        (format!("{}/{}", r.numer(), r.denom()), MUL)
    }
}

fn number(n: &Number) -> (String, u8) {
    if n.is_real() {
        return rational(n.re());
    }
    let s = n.to_string();
    if n.re().is_zero() {
        let p = if n.im().is_one() { ATOM } else { MUL };
        (s, p)
    } else {
        (s, ADD)
    }
}

pub(super) fn render(e: &Expr) -> (String, u8) {
    match e.node() {
        Node::Num(n) => number(n),
        Node::Pi => ("pi".into(), ATOM),
        Node::Sym(s) => (s.to_string(), ATOM),
        Node::Func(f, a) => (format!("{}({})", f.name(), render(a).0), ATOM),
        Node::Pow(b, x) => {
            if let Some(n) = x.as_num() {
                if n.is_negative_real() {
                    let den = pow_string(b, &Expr::num(n.neg()));
                    return (format!("1/{}", wrap(den.0, den.1, 3)), MUL);
                }
            }
            pow_string(b, x)
        }
        Node::Mul(ch) => product(ch),
        Node::Add(ch) => sum(ch),
    }
}

fn pow_string(b: &Expr, x: &Expr) -> (String, u8) {
    if x.is_one_literal() {
        return render(b);
    }
    let (bs, bp) = render(b);
    let (xs, xp) = render(x);
    (format!("{}^{}", wrap(bs, bp, ATOM), wrap(xs, xp, ATOM)), 3)
}

fn product(ch: &[Expr]) -> (String, u8) {
    let mut num: Vec<String> = Vec::new();
    let mut den: Vec<String> = Vec::new();
    let mut negative = false;
    let mut rest = ch;
    if let Some(c) = ch[0].as_num() {
        rest = &ch[1..];
        if c.is_real() {
            let r = c.re();
            negative = r.is_negative();
            let r = r.abs();
            if !r.numer().is_one() {
                num.push(r.numer().to_string());
            }
            if !r.denom().is_one() {
                den.push(r.denom().to_string());
            }
        } else {
            let (s, p) = number(c);
            if c.re().is_zero() && c.im().is_negative() {
                negative = true;
                let (s, p) = number(&c.neg());
                num.push(wrap(s, p, 3));
            } else {
                num.push(wrap(s, p, 3));
            }
        }
    }
    for f in rest {
        if let Node::Pow(b, x) = f.node() {
            if let Some(n) = x.as_num() {
                if n.is_negative_real() {
                    let (s, p) = pow_string(b, &Expr::num(n.neg()));
                    den.push(wrap(s, p, 3));
                    continue;
                }
            }
        }
        let (s, p) = render(f);
        num.push(wrap(s, p, 3));
    }
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if num.is_empty() {
        out.push('1');
    } else {
        out.push_str(&num.join("*"));
    }
    match den.len() {
        0 => {}
        1 => {
            out.push('/');
            out.push_str(&den[0]);
        }
        _ => {
            out.push_str("/(");
            out.push_str(&den.join("*"));
            out.push(')');
        }
    }
    (out, MUL)
}

fn sum(ch: &[Expr]) -> (String, u8) {
    let mut pieces: Vec<String> = Vec::new();
    let mut constant: Option<&Number> = None;
    for t in ch {
        match t.as_num() {
            Some(n) => constant = Some(n),
            None => pieces.push(render(t).0),
        }
    }
    if let Some(c) = constant {
        if !c.re().is_zero() {
            pieces.push(rational(c.re()).0);
        }
        if !c.im().is_zero() {
            pieces.push(number(&Number::new(BigRational::zero(), c.im().clone())).0);
        }
    }
    if let Some(k) = pieces.iter().position(|p| !p.starts_with('-')) {
        pieces[..=k].rotate_right(1);
    }
    let mut out = String::new();
    for (k, p) in pieces.into_iter().enumerate() {
        if k == 0 {
            out.push_str(&p);
        } else if let Some(stripped) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    (out, ADD)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self).0)
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::ex;

    #[test]
    fn readable_output() {
        assert_eq!(ex("x - t").to_string(), "x - t");
        assert_eq!(ex("-3*x/4").to_string(), "-3*x/4");
        assert_eq!(ex("1/(x + t)").to_string(), "1/(t + x)");
        assert_eq!(ex("x^(1/2)").to_string(), "x^(1/2)");
        assert_eq!(ex("2*cot(x - t)").to_string(), "2*cot(x - t)");
        assert_eq!(ex("u_x^2/u^2").to_string(), "u_x^2/u^2");
    }

    #[test]
    fn round_trip_awkward_cases() {
        for s in [
            "-I*x + y",
            "(1 + 2*I)*x",
            "x^(-1/2)",
            "(x + y)^(-2)*z",
            "1/2 - 3*I + x",
            "-(x + 1)^3",
            "exp(-x)*sin(2*t)^2",
            "pi*x/2",
            "2^(1/2)*x",
        ] {
            let e = ex(s);
            assert_eq!(ex(&e.to_string()), e, "{s} -> {e}");
        }
    }
}
