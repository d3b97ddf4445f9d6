//! Symbolic expressions over real/complex scalars.
//!
//! An [`Expr`] is an immutable, reference-counted tree. Every constructor
//! normalizes its result: sums and products are flattened, like terms and
//! like bases are merged, numeric parts are folded exactly, and children are
//! sorted under the derived total order of [`Node`]. Two expressions that
//! normalize to the same tree compare equal structurally.
//!
//! Jet variables are ordinary symbols whose name carries a derivative suffix,
//! e.g. `u_tx` for ∂²u/∂t∂x. The suffix is kept in canonical order (`t`
//! first, then `x`, then the remaining letters alphabetically).

mod diff;
mod eval;
mod format;
mod number;
mod parse;
pub mod ratfn;
mod zero;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use diff::{differentiate, differentiate_with};
pub use eval::{eval, eval_real, Bindings, Compiled, EvalError, POLE_DELTA};
pub use number::Number;
pub use parse::{parse, ParseError};
pub use zero::{is_zero, probe_points, Verdict, ZeroReport, ZeroTest, ZeroTestError, DEFAULT_SEED};

pub type Symbol = Arc<str>;

/// Elementary functions known to the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Exp,
    /// `ln|w|`.
    LnAbs,
    Sin,
    Cos,
    Tan,
    Cot,
    Sinh,
    Cosh,
    Tanh,
    Coth,
    Arctan,
    Abs,
}

impl Func {
    pub const ALL: [Func; 12] = [
        Func::Exp,
        Func::LnAbs,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Cot,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Coth,
        Func::Arctan,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::LnAbs => "lnabs",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Cot => "cot",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Coth => "coth",
            Func::Arctan => "arctan",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }

    /// Functions that are not holomorphic (or carry a branch cut), so that
    /// identities involving them may only be probed at real points.
    pub fn is_real_only(self) -> bool {
        matches!(self, Func::LnAbs | Func::Abs | Func::Arctan)
    }
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Num(Number),
    Pi,
    Sym(Symbol),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Expr, Expr),
    Func(Func, Expr),
}

struct Inner {
    node: Node,
    hash: u64,
}

#[derive(Clone)]
pub struct Expr(Arc<Inner>);

impl Expr {
    fn from_node(node: Node) -> Expr {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        node.hash(&mut h);
        Expr(Arc::new(Inner { node, hash: h.finish() }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn ptr_eq(&self, other: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    // ---- atoms -------------------------------------------------------

    pub fn num(n: Number) -> Expr {
        Expr::from_node(Node::Num(n))
    }

    pub fn int(n: i64) -> Expr {
        Expr::num(Number::int(n))
    }

    pub fn rational(n: i64, d: i64) -> Expr {
        Expr::num(Number::ratio(n, d))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn i() -> Expr {
        Expr::num(Number::i())
    }

    pub fn pi() -> Expr {
        Expr::from_node(Node::Pi)
    }

    pub fn sym(name: &str) -> Expr {
        Expr::from_node(Node::Sym(Arc::from(canonical_symbol(name).as_str())))
    }

    // ---- inspection --------------------------------------------------

    pub fn as_num(&self) -> Option<&Number> {
        match self.node() {
            Node::Num(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self.node() {
            Node::Sym(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_num().and_then(Number::as_i64)
    }

    pub fn is_zero_literal(&self) -> bool {
        self.as_num().is_some_and(Number::is_zero)
    }

    pub fn is_one_literal(&self) -> bool {
        self.as_num().is_some_and(Number::is_one)
    }

    pub fn children(&self) -> Vec<&Expr> {
        match self.node() {
            Node::Num(_) | Node::Pi | Node::Sym(_) => vec![],
            Node::Add(v) | Node::Mul(v) => v.iter().collect(),
            Node::Pow(b, e) => vec![b, e],
            Node::Func(_, a) => vec![a],
        }
    }

    pub fn free_symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<Symbol>) {
        match self.node() {
            Node::Sym(s) => {
                out.insert(s.clone());
            }
            _ => {
                for c in self.children() {
                    c.collect_symbols(out);
                }
            }
        }
    }

    pub fn contains_symbol(&self, name: &str) -> bool {
        match self.node() {
            Node::Sym(s) => &**s == name,
            _ => self.children().into_iter().any(|c| c.contains_symbol(name)),
        }
    }

    /// True when any node satisfies `pred`.
    pub fn any(&self, pred: &dyn Fn(&Expr) -> bool) -> bool {
        pred(self) || self.children().into_iter().any(|c| c.any(pred))
    }

    pub fn contains_func(&self, f: Func) -> bool {
        self.any(&|e| matches!(e.node(), Node::Func(g, _) if *g == f))
    }

    /// Node count of the tree (shared subtrees counted repeatedly).
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Expr::size).sum::<usize>()
    }

    // ---- normalizing constructors ------------------------------------

    pub fn add_all<I: IntoIterator<Item = Expr>>(terms: I) -> Expr {
        let mut constant = Number::zero();
        let mut collected: BTreeMap<Expr, Number> = BTreeMap::new();
        fn push(t: Expr, constant: &mut Number, collected: &mut BTreeMap<Expr, Number>) {
            match t.node() {
                Node::Add(ch) => {
                    for c in ch {
                        push(c.clone(), constant, collected);
                    }
                }
                Node::Num(n) => *constant = constant.add(n),
                _ => {
                    let (c, rest) = t.split_coeff();
                    let slot = collected.entry(rest).or_insert_with(Number::zero);
                    *slot = slot.add(&c);
                }
            }
        }
        for t in terms {
            push(t, &mut constant, &mut collected);
        }
        let mut out: Vec<Expr> = collected
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(rest, c)| Expr::with_coeff(c, rest))
            .collect();
        if !constant.is_zero() {
            out.push(Expr::num(constant));
        }
        match out.len() {
            0 => Expr::zero(),
            1 => out.pop().unwrap(),
            _ => {
                out.sort();
                Expr::from_node(Node::Add(out))
            }
        }
    }

    /// Splits `c·rest` into its numeric coefficient and the remaining factor.
    pub fn split_coeff(&self) -> (Number, Expr) {
        match self.node() {
            Node::Num(n) => (n.clone(), Expr::one()),
            Node::Mul(ch) => match ch[0].node() {
                Node::Num(n) => {
                    let rest = if ch.len() == 2 {
                        ch[1].clone()
                    } else {
                        Expr::from_node(Node::Mul(ch[1..].to_vec()))
                    };
                    (n.clone(), rest)
                }
                _ => (Number::one(), self.clone()),
            },
            _ => (Number::one(), self.clone()),
        }
    }

    /// `c·rest` for an already normalized, non-numeric `rest`.
    fn with_coeff(c: Number, rest: Expr) -> Expr {
        if c.is_one() {
            return rest;
        }
        if rest.is_one_literal() {
            return Expr::num(c);
        }
        let mut v = vec![Expr::num(c)];
        match rest.node() {
            Node::Mul(ch) => v.extend(ch.iter().cloned()),
            _ => v.push(rest),
        }
        Expr::from_node(Node::Mul(v))
    }

    pub fn mul_all<I: IntoIterator<Item = Expr>>(factors: I) -> Expr {
        let mut coeff = Number::one();
        let mut bases: BTreeMap<Expr, Vec<Expr>> = BTreeMap::new();
        fn push(f: Expr, coeff: &mut Number, bases: &mut BTreeMap<Expr, Vec<Expr>>) {
            match f.node() {
                Node::Mul(ch) => {
                    for c in ch {
                        push(c.clone(), coeff, bases);
                    }
                }
                Node::Num(n) => *coeff = coeff.mul(n),
                Node::Pow(b, e) => bases.entry(b.clone()).or_default().push(e.clone()),
                _ => bases.entry(f).or_default().push(Expr::one()),
            }
        }
        for f in factors {
            push(f, &mut coeff, &mut bases);
        }
        if coeff.is_zero() {
            return Expr::zero();
        }
        let mut out = Vec::with_capacity(bases.len());
        let mut renormalize = false;
        for (base, exps) in bases {
            let e = if exps.len() == 1 { exps.into_iter().next().unwrap() } else { Expr::add_all(exps) };
            let p = Expr::pow(base, e);
            match p.node() {
                Node::Num(n) => coeff = coeff.mul(n),
                Node::Mul(_) => {
                    renormalize = true;
                    out.push(p);
                }
                _ => out.push(p),
            }
        }
        if renormalize {
            out.push(Expr::num(coeff));
            return Expr::mul_all(out);
        }
        if coeff.is_zero() {
            return Expr::zero();
        }
        if out.is_empty() {
            return Expr::num(coeff);
        }
        if out.len() == 1 && !coeff.is_one() {
            // A number times a sum is distributed, so `-(x - t)` is `t - x`.
            if let Node::Add(terms) = out[0].node() {
                let c = Expr::num(coeff);
                return Expr::add_all(terms.iter().map(|t| Expr::mul_all([c.clone(), t.clone()])).collect::<Vec<_>>());
            }
        }
        if !coeff.is_one() {
            out.push(Expr::num(coeff));
        }
        if out.len() == 1 {
            return out.pop().unwrap();
        }
        out.sort();
        Expr::from_node(Node::Mul(out))
    }

    pub fn pow(base: Expr, exp: Expr) -> Expr {
        if exp.is_zero_literal() {
            return Expr::one();
        }
        if exp.is_one_literal() {
            return base;
        }
        if base.is_one_literal() {
            return Expr::one();
        }
        let int_exp = exp.as_i64();
        if let (Node::Num(b), Some(n)) = (base.node(), int_exp) {
            if let Some(v) = b.pow_i64(n) {
                return Expr::num(v);
            }
        }
        if let (Node::Num(b), Some(e)) = (base.node(), exp.as_num()) {
            if e.is_real() && !e.re().is_integer() && e.re().denom() == &2.into() {
                if let Some(root) = b.exact_sqrt() {
                    return Expr::pow(Expr::num(root), Expr::num(e.add(e)));
                }
            }
        }
        if let Node::Num(b) = base.node() {
            if b.is_zero() && exp.as_num().is_some_and(|e| e.is_real() && e.re() > &num_rational::BigRational::from_integer(0.into())) {
                return Expr::zero();
            }
            // every negative power of zero is the same pole
            if b.is_zero() && exp.as_num().is_some_and(|e| e.is_negative_real()) {
                return Expr::from_node(Node::Pow(base, Expr::int(-1)));
            }
        }
        if let Some(n) = int_exp {
            match base.node() {
                Node::Pow(b, e) => {
                    return Expr::pow(b.clone(), Expr::mul_all([e.clone(), Expr::int(n)]));
                }
                Node::Mul(ch) => {
                    return Expr::mul_all(ch.iter().map(|c| Expr::pow(c.clone(), Expr::int(n))));
                }
                _ => {}
            }
        }
        Expr::from_node(Node::Pow(base, exp))
    }

    pub fn func(f: Func, arg: Expr) -> Expr {
        if arg.is_zero_literal() {
            match f {
                Func::Exp | Func::Cos | Func::Cosh => return Expr::one(),
                Func::Sin | Func::Tan | Func::Sinh | Func::Tanh | Func::Arctan | Func::Abs => {
                    return Expr::zero()
                }
                _ => {}
            }
        }
        match (f, arg.node()) {
            (Func::LnAbs, Node::Num(n)) if n.is_one() => return Expr::zero(),
            (Func::Abs, Node::Num(n)) if n.is_real() => {
                return Expr::num(if n.is_negative_real() { n.neg() } else { n.clone() })
            }
            _ => {}
        }
        Expr::from_node(Node::Func(f, arg))
    }

    pub fn powi(&self, n: i64) -> Expr {
        Expr::pow(self.clone(), Expr::int(n))
    }

    pub fn recip(&self) -> Expr {
        self.powi(-1)
    }

    pub fn sqr(&self) -> Expr {
        self.powi(2)
    }

    pub fn apply(&self, f: Func) -> Expr {
        Expr::func(f, self.clone())
    }

    pub fn exp(&self) -> Expr {
        self.apply(Func::Exp)
    }

    // ---- structural rewriting ----------------------------------------

    /// Rebuilds the node from (possibly rewritten) children.
    pub fn rebuild(&self, kids: Vec<Expr>) -> Expr {
        match self.node() {
            Node::Num(_) | Node::Pi | Node::Sym(_) => self.clone(),
            Node::Add(_) => Expr::add_all(kids),
            Node::Mul(_) => Expr::mul_all(kids),
            Node::Pow(..) => {
                let mut it = kids.into_iter();
                let b = it.next().unwrap();
                let e = it.next().unwrap();
                Expr::pow(b, e)
            }
            Node::Func(f, _) => Expr::func(*f, kids.into_iter().next().unwrap()),
        }
    }

    /// Bottom-up rewrite with memoization over shared subtrees.
    pub fn transform(&self, f: &mut dyn FnMut(&Expr) -> Option<Expr>) -> Expr {
        let mut memo: HashMap<Expr, Expr> = HashMap::new();
        self.transform_memo(f, &mut memo)
    }

    fn transform_memo(
        &self,
        f: &mut dyn FnMut(&Expr) -> Option<Expr>,
        memo: &mut HashMap<Expr, Expr>,
    ) -> Expr {
        if let Some(r) = memo.get(self) {
            return r.clone();
        }
        let out = if let Some(r) = f(self) {
            r
        } else {
            let kids: Vec<Expr> = self.children().into_iter().map(|c| c.transform_memo(f, memo)).collect();
            if kids.is_empty() {
                self.clone()
            } else {
                self.rebuild(kids)
            }
        };
        memo.insert(self.clone(), out.clone());
        out
    }

    /// Simultaneous substitution of symbols.
    pub fn substitute(&self, bindings: &HashMap<String, Expr>) -> Expr {
        if bindings.is_empty() {
            return self.clone();
        }
        self.transform(&mut |e| match e.node() {
            Node::Sym(s) => Some(bindings.get(&**s).cloned().unwrap_or_else(|| e.clone())),
            _ => None,
        })
    }

    pub fn subs(&self, name: &str, value: &Expr) -> Expr {
        let mut m = HashMap::new();
        m.insert(canonical_symbol(name), value.clone());
        self.substitute(&m)
    }

    /// Distributes products over sums and expands positive integer powers of sums.
    pub fn expand(&self) -> Expr {
        self.expand_top()
    }

    fn expand_top(&self) -> Expr {
        match self.node() {
            Node::Add(ch) => Expr::add_all(ch.iter().map(Expr::expand_top)),
            Node::Mul(ch) => {
                let mut acc: Vec<Expr> = vec![Expr::one()];
                for f in ch {
                    let f = f.expand_top();
                    let terms: Vec<Expr> = match f.node() {
                        Node::Add(t) => t.clone(),
                        _ => vec![f.clone()],
                    };
                    let mut next = Vec::with_capacity(acc.len() * terms.len());
                    for a in &acc {
                        for t in &terms {
                            next.push(Expr::mul_all([a.clone(), t.clone()]));
                        }
                    }
                    acc = next;
                }
                Expr::add_all(acc)
            }
            Node::Pow(b, e) => {
                let b = b.expand_top();
                match (b.node(), e.as_i64()) {
                    (Node::Add(base_terms), Some(n)) if (2..=12).contains(&n) => {
                        let mut terms: Vec<Expr> = vec![Expr::one()];
                        for _ in 0..n {
                            let mut next = Vec::with_capacity(terms.len() * base_terms.len());
                            for a in &terms {
                                for t in base_terms {
                                    next.push(Expr::mul_all([a.clone(), t.clone()]));
                                }
                            }
                            let summed = Expr::add_all(next);
                            terms = match summed.node() {
                                Node::Add(t) => t.clone(),
                                _ => vec![summed],
                            };
                        }
                        Expr::add_all(terms)
                    }
                    _ => Expr::pow(b, e.expand_top()),
                }
            }
            Node::Func(f, a) => Expr::func(*f, a.expand_top()),
            _ => self.clone(),
        }
    }
}

impl Expr {
    /// Coefficients of the expanded `self` as a polynomial in the symbol
    /// `var`; `None` when `var` occurs other than through non-negative
    /// integer powers.
    pub fn coefficients(&self, var: &str) -> Option<BTreeMap<i64, Expr>> {
        let var = canonical_symbol(var);
        let e = self.expand();
        let terms: Vec<Expr> = match e.node() {
            Node::Add(t) => t.clone(),
            _ => vec![e.clone()],
        };
        let mut out: BTreeMap<i64, Vec<Expr>> = BTreeMap::new();
        for t in terms {
            let factors: Vec<Expr> = match t.node() {
                Node::Mul(f) => f.clone(),
                _ => vec![t.clone()],
            };
            let mut degree = 0;
            let mut rest = Vec::new();
            for f in factors {
                match f.node() {
                    Node::Sym(s) if **s == *var => degree += 1,
                    Node::Pow(b, x) if b.as_sym() == Some(var.as_str()) => match x.as_i64() {
                        Some(n) if n > 0 => degree += n,
                        _ => return None,
                    },
                    _ if f.contains_symbol(&var) => return None,
                    _ => rest.push(f),
                }
            }
            out.entry(degree).or_default().push(Expr::mul_all(rest));
        }
        Some(out.into_iter().map(|(k, v)| (k, Expr::add_all(v))).filter(|(_, v)| !v.is_zero_literal()).collect())
    }
}

/// Puts the derivative suffix of a jet-style symbol (`base_suffix`) in
/// canonical order: `t`, then `x`, then the other letters alphabetically.
pub fn canonical_symbol(name: &str) -> String {
    match name.split_once('_') {
        Some((base, suffix)) if !suffix.is_empty() && suffix.chars().all(|c| c.is_ascii_alphabetic()) => {
            let mut letters: Vec<char> = suffix.chars().collect();
            letters.sort_by_key(|&c| suffix_rank(c));
            format!("{base}_{}", letters.into_iter().collect::<String>())
        }
        _ => name.to_string(),
    }
}

fn suffix_rank(c: char) -> (u8, char) {
    match c {
        't' => (0, c),
        'x' => (1, c),
        _ => (2, c),
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.node == other.0.node)
    }
}

impl Eq for Expr {}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Expr) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Expr {
    fn cmp(&self, other: &Expr) -> std::cmp::Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return std::cmp::Ordering::Equal;
        }
        self.0.node.cmp(&other.0.node)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, rhs)
            }
        }
        impl std::ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), rhs.clone())
            }
        }
        impl std::ops::$tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, rhs.clone())
            }
        }
        impl std::ops::$tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), rhs)
            }
        }
        impl std::ops::$tr<i64> for Expr {
            type Output = Expr;
            fn $m(self, rhs: i64) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, Expr::int(rhs))
            }
        }
        impl std::ops::$tr<i64> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: i64) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), Expr::int(rhs))
            }
        }
        impl std::ops::$tr<Expr> for i64 {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(Expr::int(self), rhs)
            }
        }
        impl std::ops::$tr<&Expr> for i64 {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(Expr::int(self), rhs.clone())
            }
        }
    };
}

binop!(Add, add, |a, b| Expr::add_all([a, b]));
binop!(Sub, sub, |a, b| Expr::add_all([a, Expr::mul_all([Expr::int(-1), b])]));
binop!(Mul, mul, |a, b| Expr::mul_all([a, b]));
binop!(Div, div, |a, b| Expr::mul_all([a, Expr::pow(b, Expr::int(-1))]));

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::mul_all([Expr::int(-1), self])
    }
}

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::mul_all([Expr::int(-1), self.clone()])
    }
}

/// Shorthand for `Expr::sym`.
pub fn sym(name: &str) -> Expr {
    Expr::sym(name)
}

/// Parses a string that is known to be well-formed (catalog constants).
///
/// Panics on malformed input; use [`parse`] for untrusted text.
pub fn ex(text: &str) -> Expr {
    match parse(text) {
        Ok(e) => e,
        Err(err) => panic!("malformed built-in expression {text:?}: {err}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_powers_of_zero_coincide() {
        let p = Expr::zero().powi(-2);
        assert_eq!(p, Expr::zero().recip());
        assert_eq!(parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn like_terms_and_bases_merge() {
        let x = sym("x");
        let t = sym("t");
        assert_eq!(&x + &x, 2 * &x);
        assert_eq!(&x - &x, Expr::zero());
        assert_eq!(&x * &x, x.powi(2));
        assert_eq!(&x / &x, Expr::one());
        assert_eq!((&x * &t) / &t, x);
        assert_eq!(Expr::pow(x.powi(-1), Expr::int(-1)), x);
    }

    #[test]
    fn numeric_folding() {
        assert_eq!(Expr::int(2) * Expr::rational(1, 2), Expr::one());
        assert_eq!(Expr::i() * Expr::i(), Expr::int(-1));
        assert_eq!(Expr::int(4).powi(-1), Expr::rational(1, 4));
    }

    #[test]
    fn suffix_canonicalization() {
        assert_eq!(canonical_symbol("u_xt"), "u_tx");
        assert_eq!(canonical_symbol("xi_vx"), "xi_xv");
        assert_eq!(canonical_symbol("eta1"), "eta1");
        assert_eq!(sym("v_xt"), sym("v_tx"));
    }

    #[test]
    fn expansion() {
        let e = ex("(x + 1)^2 - x^2 - 2*x");
        assert_eq!(e.expand(), Expr::one());
        let f = ex("(u - 2*cot(x - t))*u");
        assert_eq!(f.expand(), ex("u^2 - 2*cot(x - t)*u"));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let e = ex("x + 2*t");
        let mut m = HashMap::new();
        m.insert("x".to_string(), sym("t"));
        m.insert("t".to_string(), sym("x"));
        assert_eq!(e.substitute(&m), ex("t + 2*x"));
    }

    #[test]
    fn polynomial_coefficients() {
        let c = ex("(a*y + 1)^2 + b").coefficients("y").unwrap();
        assert_eq!(c[&0], ex("1 + b"));
        assert_eq!(c[&1], ex("2*a"));
        assert_eq!(c[&2], ex("a^2"));
        assert!(ex("1/y + y").coefficients("y").is_none());
    }

    #[test]
    fn function_zero_values() {
        assert_eq!(ex("sin(0) + cos(0) + exp(0) + lnabs(1)"), Expr::int(2));
    }
}
