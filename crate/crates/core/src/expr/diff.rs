//! Symbolic differentiation.

use std::collections::HashMap;

use super::{canonical_symbol, Expr, Func, Node};

/// Partial derivative with respect to the symbol `var`; all other symbols
/// are treated as independent.
pub fn differentiate(e: &Expr, var: &str) -> Expr {
    let var = canonical_symbol(var);
    differentiate_with(e, &|s: &str| if s == var { Expr::one() } else { Expr::zero() })
}

/// Derivation of `e` given the derivative of every symbol it contains.
///
/// This covers total derivatives on a jet space (`u_x ↦ u_xx`), unknown
/// functions of several variables, and implicitly defined symbols.
pub fn differentiate_with(e: &Expr, dsym: &dyn Fn(&str) -> Expr) -> Expr {
    let mut memo = HashMap::new();
    go(e, dsym, &mut memo)
}

fn go(e: &Expr, dsym: &dyn Fn(&str) -> Expr, memo: &mut HashMap<Expr, Expr>) -> Expr {
    if let Some(d) = memo.get(e) {
        return d.clone();
    }
    let d = match e.node() {
        Node::Num(_) | Node::Pi => Expr::zero(),
        Node::Sym(s) => dsym(s),
        Node::Add(ch) => Expr::add_all(ch.iter().map(|c| go(c, dsym, memo)).collect::<Vec<_>>()),
        Node::Mul(ch) => {
            let mut terms = Vec::with_capacity(ch.len());
            for (i, f) in ch.iter().enumerate() {
                let df = go(f, dsym, memo);
                if df.is_zero_literal() {
                    continue;
                }
                let mut factors: Vec<Expr> = Vec::with_capacity(ch.len());
                factors.push(df);
                factors.extend(ch.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()));
                terms.push(Expr::mul_all(factors));
            }
            Expr::add_all(terms)
        }
        Node::Pow(b, x) => {
            let db = go(b, dsym, memo);
            let dx = go(x, dsym, memo);
            if dx.is_zero_literal() {
                if db.is_zero_literal() {
                    Expr::zero()
                } else {
                    Expr::mul_all([x.clone(), Expr::pow(b.clone(), x - 1), db])
                }
            } else {
                e * (dx * b.apply(Func::LnAbs) + x * db / b)
            }
        }
        Node::Func(f, a) => {
            let da = go(a, dsym, memo);
            if da.is_zero_literal() {
                Expr::zero()
            } else {
                let outer = match f {
                    Func::Exp => e.clone(),
                    Func::LnAbs => a.recip(),
                    Func::Sin => a.apply(Func::Cos),
                    Func::Cos => -a.apply(Func::Sin),
                    Func::Tan => 1 + e.sqr(),
                    Func::Cot => -(1 + e.sqr()),
                    Func::Sinh => a.apply(Func::Cosh),
                    Func::Cosh => a.apply(Func::Sinh),
                    Func::Tanh | Func::Coth => 1 - e.sqr(),
                    Func::Arctan => (1 + a.sqr()).recip(),
                    Func::Abs => e / a,
                };
                outer * da
            }
        }
    };
    memo.insert(e.clone(), d.clone());
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{ex, sym};

    #[test]
    fn elementary_rules() {
        assert_eq!(differentiate(&ex("x^3"), "x"), ex("3*x^2"));
        assert_eq!(differentiate(&ex("sin(2*x)"), "x"), ex("2*cos(2*x)"));
        assert_eq!(differentiate(&ex("lnabs(x)"), "x"), ex("1/x"));
        assert_eq!(differentiate(&ex("tan(x)"), "x"), ex("1 + tan(x)^2"));
        assert_eq!(differentiate(&ex("exp(t)*x"), "t"), ex("exp(t)*x"));
        assert_eq!(differentiate(&ex("arctan(x)"), "x"), ex("1/(1 + x^2)"));
    }

    #[test]
    fn total_derivative_on_jets() {
        // D_x of u*u_x, with u -> u_x, u_x -> u_xx
        let dx = |s: &str| match s {
            "u" => sym("u_x"),
            "u_x" => sym("u_xx"),
            "x" => Expr::one(),
            _ => Expr::zero(),
        };
        let d = differentiate_with(&ex("x*u*u_x"), &dx);
        assert_eq!(d, ex("u*u_x + x*u_x^2 + x*u*u_xx"));
    }
}
