//! Numeric evaluation in double-precision complex arithmetic.
//!
//! An expression is compiled once into a flat instruction list over its
//! shared subterms, then evaluated at any number of points. Evaluation near a
//! pole (a reciprocal, logarithm or tangent-type function whose denominator
//! is within [`POLE_DELTA`] of zero) is reported instead of returning a huge
//! or infinite value.

use std::collections::HashMap;

use num_complex::Complex64;
use thiserror::Error;

use super::{Expr, Func, Node};

pub const POLE_DELTA: f64 = 1e-8;

pub type Bindings = HashMap<String, Complex64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound symbol {0}")]
    Unbound(String),
    #[error("evaluation hit a pole of {0}")]
    Pole(String),
    #[error("non-finite value")]
    NonFinite,
    #[error("value {0} is not real")]
    NotReal(Complex64),
}

#[derive(Debug, Clone)]
enum Op {
    Const(Complex64),
    Var(usize),
    Add(Vec<usize>),
    Mul(Vec<usize>),
    PowInt(usize, i32),
    Pow(usize, usize),
    Func(Func, usize),
}

/// An expression prepared for repeated evaluation.
#[derive(Debug, Clone)]
pub struct Compiled {
    ops: Vec<Op>,
    vars: Vec<String>,
}

impl Compiled {
    pub fn new(e: &Expr) -> Compiled {
        let mut c = Compiled { ops: Vec::new(), vars: Vec::new() };
        let mut seen: HashMap<Expr, usize> = HashMap::new();
        let mut var_index: HashMap<String, usize> = HashMap::new();
        c.emit(e, &mut seen, &mut var_index);
        c
    }

    fn emit(&mut self, e: &Expr, seen: &mut HashMap<Expr, usize>, vars: &mut HashMap<String, usize>) -> usize {
        if let Some(&k) = seen.get(e) {
            return k;
        }
        let op = match e.node() {
            Node::Num(n) => Op::Const(n.to_complex()),
            Node::Pi => Op::Const(Complex64::new(std::f64::consts::PI, 0.0)),
            Node::Sym(s) => {
                let next = vars.len();
                let k = *vars.entry(s.to_string()).or_insert_with(|| {
                    self.vars.push(s.to_string());
                    next
                });
                Op::Var(k)
            }
            Node::Add(ch) => Op::Add(ch.iter().map(|c| self.emit(c, seen, vars)).collect()),
            Node::Mul(ch) => Op::Mul(ch.iter().map(|c| self.emit(c, seen, vars)).collect()),
            Node::Pow(b, x) => {
                let bi = self.emit(b, seen, vars);
                match x.as_i64() {
                    Some(n) if n.abs() <= i32::MAX as i64 => Op::PowInt(bi, n as i32),
                    _ => Op::Pow(bi, self.emit(x, seen, vars)),
                }
            }
            Node::Func(f, a) => Op::Func(*f, self.emit(a, seen, vars)),
        };
        self.ops.push(op);
        let k = self.ops.len() - 1;
        seen.insert(e.clone(), k);
        k
    }

    /// Symbol names in slot order.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Evaluates with values given in slot order.
    pub fn eval_slots(&self, vals: &[Complex64]) -> Result<Complex64, EvalError> {
        let mut reg: Vec<Complex64> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let v = match op {
                Op::Const(c) => *c,
                Op::Var(k) => vals[*k],
                Op::Add(ix) => ix.iter().map(|&i| reg[i]).sum(),
                Op::Mul(ix) => ix.iter().fold(Complex64::new(1.0, 0.0), |acc, &i| acc * reg[i]),
                Op::PowInt(b, n) => {
                    let b = reg[*b];
                    if *n < 0 && b.norm() < POLE_DELTA {
                        return Err(EvalError::Pole("a reciprocal".into()));
                    }
                    b.powi(*n)
                }
                Op::Pow(b, x) => {
                    let (b, x) = (reg[*b], reg[*x]);
                    if b.norm() < POLE_DELTA {
                        if x.re > 0.0 {
                            Complex64::new(0.0, 0.0)
                        } else {
                            return Err(EvalError::Pole("a power".into()));
                        }
                    } else if b.im == 0.0 && b.re > 0.0 && x.im == 0.0 {
                        Complex64::new(b.re.powf(x.re), 0.0)
                    } else {
                        b.powc(x)
                    }
                }
                Op::Func(f, a) => apply(*f, reg[*a])?,
            };
            reg.push(v);
        }
        let out = *reg.last().expect("non-empty program");
        if out.re.is_finite() && out.im.is_finite() {
            Ok(out)
        } else {
            Err(EvalError::NonFinite)
        }
    }

    pub fn eval(&self, bindings: &Bindings) -> Result<Complex64, EvalError> {
        let vals = self.slots(|name| bindings.get(name).copied())?;
        self.eval_slots(&vals)
    }

    pub fn eval_real(&self, bindings: &HashMap<String, f64>) -> Result<f64, EvalError> {
        let vals = self.slots(|name| bindings.get(name).map(|&v| Complex64::new(v, 0.0)))?;
        real_part(self.eval_slots(&vals)?)
    }

    fn slots(&self, lookup: impl Fn(&str) -> Option<Complex64>) -> Result<Vec<Complex64>, EvalError> {
        self.vars.iter().map(|v| lookup(v).ok_or_else(|| EvalError::Unbound(v.clone()))).collect()
    }
}

fn real_part(z: Complex64) -> Result<f64, EvalError> {
    if z.im.abs() <= 1e-9 * z.re.abs().max(1.0) {
        Ok(z.re)
    } else {
        Err(EvalError::NotReal(z))
    }
}

fn apply(f: Func, a: Complex64) -> Result<Complex64, EvalError> {
    let pole = |den: Complex64, name: &str| {
        if den.norm() < POLE_DELTA {
            Err(EvalError::Pole(name.to_string()))
        } else {
            Ok(())
        }
    };
    Ok(match f {
        Func::Exp => a.exp(),
        Func::LnAbs => {
            pole(a, "lnabs")?;
            Complex64::new(a.norm().ln(), 0.0)
        }
        Func::Sin => a.sin(),
        Func::Cos => a.cos(),
        Func::Tan => {
            let c = a.cos();
            pole(c, "tan")?;
            a.sin() / c
        }
        Func::Cot => {
            let s = a.sin();
            pole(s, "cot")?;
            a.cos() / s
        }
        Func::Sinh => a.sinh(),
        Func::Cosh => a.cosh(),
        Func::Tanh => {
            let c = a.cosh();
            pole(c, "tanh")?;
            a.sinh() / c
        }
        Func::Coth => {
            let s = a.sinh();
            pole(s, "coth")?;
            a.cosh() / s
        }
        Func::Arctan => {
            if a.im == 0.0 {
                Complex64::new(a.re.atan(), 0.0)
            } else {
                pole(Complex64::new(1.0, 0.0) + a * a, "arctan")?;
                a.atan()
            }
        }
        Func::Abs => Complex64::new(a.norm(), 0.0),
    })
}

/// Evaluates `e` at complex values of its symbols.
pub fn eval(e: &Expr, bindings: &Bindings) -> Result<Complex64, EvalError> {
    Compiled::new(e).eval(bindings)
}

/// Evaluates `e` at real values of its symbols; fails if the value is not real.
pub fn eval_real(e: &Expr, bindings: &HashMap<String, f64>) -> Result<f64, EvalError> {
    Compiled::new(e).eval_real(bindings)
}
