//! Jet-space calculus for second-order evolution equations in `(t, x)`:
//! total derivatives, characteristics, prolongations and the conditional
//! invariance residual.
//!
//! Jet variables of a dependent variable `u` are symbols `u`, `u_t`, `u_x`,
//! `u_tx`, `u_xx`, … Unknown coefficient functions (for determining systems)
//! are symbols such as `xi` with registered arguments; their partial
//! derivatives are the symbols `xi_x`, `xi_xv`, …

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::expr::{
    canonical_symbol, differentiate, differentiate_with, is_zero, sym, Expr, ZeroReport, ZeroTest, ZeroTestError,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("total derivative would need jet order {0}, above the limit {1}")]
    OrderOverflow(usize, usize),
    #[error("operator has vanishing t- and x-coefficients")]
    Degenerate,
    #[error("operator coefficients may not contain derivatives of {0}")]
    JetInCoefficients(String),
    #[error("equation right-hand side is not an admissible second-order evolution law: {0}")]
    BadEquation(String),
    #[error("unsupported operator form: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Zero(#[from] ZeroTestError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    T,
    X,
}

impl Dir {
    pub fn var(self) -> &'static str {
        match self {
            Dir::T => "t",
            Dir::X => "x",
        }
    }
}

/// Symbol name of `∂^{a+b} dep / ∂t^a ∂x^b`.
pub fn jet_name(dep: &str, a: usize, b: usize) -> String {
    if a + b == 0 {
        dep.to_string()
    } else {
        format!("{dep}_{}{}", "t".repeat(a), "x".repeat(b))
    }
}

pub fn jet(dep: &str, a: usize, b: usize) -> Expr {
    sym(&jet_name(dep, a, b))
}

/// Orders `(a, b)` if `name` is a jet variable of `dep`.
pub fn parse_jet(name: &str, dep: &str) -> Option<(usize, usize)> {
    if name == dep {
        return Some((0, 0));
    }
    let suffix = name.strip_prefix(dep)?.strip_prefix('_')?;
    if suffix.is_empty() || !suffix.chars().all(|c| c == 't' || c == 'x') {
        return None;
    }
    let a = suffix.chars().filter(|&c| c == 't').count();
    Some((a, suffix.len() - a))
}

/// Unknown coefficient functions and the variables they depend on.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Unknowns {
    funcs: Vec<(String, Vec<String>)>,
}

impl Unknowns {
    pub fn new() -> Unknowns {
        Unknowns::default()
    }

    pub fn with(mut self, name: &str, args: &[&str]) -> Unknowns {
        self.funcs.push((name.to_string(), args.iter().map(|s| s.to_string()).collect()));
        self
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.funcs.iter().map(|(n, _)| n.as_str())
    }

    pub fn args(&self, name: &str) -> Option<&[String]> {
        self.funcs.iter().find(|(n, _)| n == name).map(|(_, a)| a.as_slice())
    }

    /// `(base, suffix)` when `symbol` is an unknown or one of its derivatives.
    pub fn split<'a>(&self, symbol: &'a str) -> Option<(&'a str, &'a str)> {
        let (base, suffix) = match symbol.split_once('_') {
            Some((b, s)) => (b, s),
            None => (symbol, ""),
        };
        let args = self.args(base)?;
        if suffix.chars().all(|c| args.iter().any(|a| a.len() == 1 && a.starts_with(c))) {
            Some((base, suffix))
        } else {
            None
        }
    }

    /// `∂ symbol / ∂ var` for a symbol that is an unknown (derivative), or
    /// `None` if the symbol is not an unknown.
    pub fn partial_symbol(&self, symbol: &str, var: &str) -> Option<Expr> {
        let (base, suffix) = self.split(symbol)?;
        let args = self.args(base)?;
        if args.iter().any(|a| a == var) {
            Some(sym(&format!("{base}_{suffix}{var}")))
        } else {
            Some(Expr::zero())
        }
    }

    /// Partial derivative treating jet variables as independent.
    pub fn partial(&self, e: &Expr, var: &str) -> Expr {
        let var = canonical_symbol(var);
        differentiate_with(e, &|s: &str| {
            if s == var {
                Expr::one()
            } else {
                self.partial_symbol(s, &var).unwrap_or_else(Expr::zero)
            }
        })
    }
}

/// Total derivative `D_t` or `D_x` on the jet space of `dep`.
pub fn total_derivative(e: &Expr, dir: Dir, dep: &str, max_order: usize) -> Result<Expr, JetError> {
    total_derivative_with(e, dir, dep, max_order, &Unknowns::new())
}

pub fn total_derivative_with(
    e: &Expr,
    dir: Dir,
    dep: &str,
    max_order: usize,
    unknowns: &Unknowns,
) -> Result<Expr, JetError> {
    for s in e.free_symbols() {
        if let Some((a, b)) = parse_jet(&s, dep) {
            if a + b + 1 > max_order {
                return Err(JetError::OrderOverflow(a + b + 1, max_order));
            }
        }
    }
    let dep_dir = match dir {
        Dir::T => jet(dep, 1, 0),
        Dir::X => jet(dep, 0, 1),
    };
    let var = dir.var();
    Ok(differentiate_with(e, &|s: &str| {
        if s == var {
            return Expr::one();
        }
        if let Some((a, b)) = parse_jet(s, dep) {
            return match dir {
                Dir::T => jet(dep, a + 1, b),
                Dir::X => jet(dep, a, b + 1),
            };
        }
        if let Some((base, _)) = unknowns.split(s) {
            let direct = unknowns.partial_symbol(s, var).unwrap_or_else(Expr::zero);
            let through_dep = if unknowns.args(base).is_some_and(|a| a.iter().any(|v| v == dep)) {
                unknowns.partial_symbol(s, dep).unwrap_or_else(Expr::zero) * &dep_dir
            } else {
                Expr::zero()
            };
            return direct + through_dep;
        }
        Expr::zero()
    }))
}

/// `Q = τ∂_t + ξ∂_x + η∂_dep` with coefficients in `(t, x, dep)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionOperator {
    pub dep: String,
    pub tau: Expr,
    pub xi: Expr,
    pub eta: Expr,
}

impl ReductionOperator {
    pub fn new(dep: &str, tau: Expr, xi: Expr, eta: Expr) -> Result<ReductionOperator, JetError> {
        for c in [&tau, &xi, &eta] {
            if c.free_symbols().iter().any(|s| matches!(parse_jet(s, dep), Some((a, b)) if a + b > 0)) {
                return Err(JetError::JetInCoefficients(dep.to_string()));
            }
        }
        if tau.is_zero_literal() && xi.is_zero_literal() && eta.is_zero_literal() {
            return Err(JetError::Degenerate);
        }
        Ok(ReductionOperator { dep: dep.to_string(), tau, xi, eta })
    }

    /// Constructor for catalog literals; panics on jets in coefficients.
    pub fn parse(dep: &str, tau: &str, xi: &str, eta: &str) -> ReductionOperator {
        use crate::expr::ex;
        ReductionOperator::new(dep, ex(tau), ex(xi), ex(eta)).expect("well-formed catalog operator")
    }

    pub fn coefficients(&self) -> [&Expr; 3] {
        [&self.tau, &self.xi, &self.eta]
    }

    /// `λ·Q`.
    pub fn scaled(&self, lambda: &Expr) -> ReductionOperator {
        ReductionOperator {
            dep: self.dep.clone(),
            tau: lambda * &self.tau,
            xi: lambda * &self.xi,
            eta: lambda * &self.eta,
        }
    }

    /// Divides by τ, or by ξ when τ vanishes, giving τ = 1 or (τ, ξ) = (0, 1).
    pub fn normalized(&self) -> Result<ReductionOperator, JetError> {
        let tau_zero = self.tau.is_zero_literal() || is_zero(&self.tau)?.verdict.is_zero();
        if !tau_zero {
            let inv = self.tau.recip();
            let scaled = self.scaled(&inv);
            if !scaled.tau.is_one_literal() {
                return Err(JetError::Unsupported(format!("τ = {} did not normalize to 1", self.tau)));
            }
            return Ok(scaled);
        }
        if self.xi.is_zero_literal() || is_zero(&self.xi)?.verdict.is_zero() {
            return Err(JetError::Degenerate);
        }
        let scaled = self.scaled(&self.xi.recip());
        Ok(ReductionOperator { tau: Expr::zero(), xi: Expr::one(), ..scaled })
    }

    /// Applies `Q` to a function of `(t, x, dep)`.
    pub fn apply(&self, f: &Expr) -> Expr {
        &self.tau * differentiate(f, "t") + &self.xi * differentiate(f, "x") + &self.eta * differentiate(f, &self.dep)
    }
}

impl std::fmt::Display for ReductionOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (c, v) in [(&self.tau, "t"), (&self.xi, "x"), (&self.eta, self.dep.as_str())] {
            if c.is_zero_literal() {
                continue;
            }
            if c.is_one_literal() {
                parts.push(format!("d_{v}"));
            } else {
                parts.push(format!("({c})*d_{v}"));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        f.write_str(&parts.join(" + "))
    }
}

/// `u_t = F(t, x, u, u_x, u_xx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionEquation {
    pub dep: String,
    pub rhs: Expr,
    pub family: String,
}

impl EvolutionEquation {
    pub fn new(dep: &str, rhs: Expr, family: &str) -> Result<EvolutionEquation, JetError> {
        for s in rhs.free_symbols() {
            if let Some((a, b)) = parse_jet(&s, dep) {
                if a > 0 {
                    return Err(JetError::BadEquation(format!("contains t-derivative {s}")));
                }
                if b > 2 {
                    return Err(JetError::BadEquation(format!("order of {s} exceeds 2")));
                }
            }
        }
        Ok(EvolutionEquation { dep: dep.to_string(), rhs, family: family.to_string() })
    }

    /// `u_t − F`.
    pub fn lhs(&self) -> Expr {
        jet(&self.dep, 1, 0) - &self.rhs
    }
}

/// Characteristic `Q[u] = η − τu_t − ξu_x`.
pub fn characteristic(q: &ReductionOperator) -> Expr {
    &q.eta - &q.tau * jet(&q.dep, 1, 0) - &q.xi * jet(&q.dep, 0, 1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProlongedOperator {
    pub base: ReductionOperator,
    pub order: usize,
    /// `η^{αβ}` keyed by `(α, β)`, including `(0, 0)`.
    pub coeffs: BTreeMap<(usize, usize), Expr>,
}

impl ProlongedOperator {
    pub fn coeff(&self, a: usize, b: usize) -> Option<&Expr> {
        self.coeffs.get(&(a, b))
    }

    /// Applies the prolonged operator to a jet expression of order ≤ `order`.
    pub fn apply(&self, f: &Expr) -> Expr {
        let d = &self.base.dep;
        let mut terms = vec![&self.base.tau * differentiate(f, "t"), &self.base.xi * differentiate(f, "x")];
        for ((a, b), c) in &self.coeffs {
            terms.push(c * differentiate(f, &jet_name(d, *a, *b)));
        }
        Expr::add_all(terms)
    }
}

/// `r`-th prolongation: `η^{αβ} = D_t^α D_x^β Q[u] + τu_{α+1,β} + ξu_{α,β+1}`.
pub fn prolong(q: &ReductionOperator, r: usize) -> Result<ProlongedOperator, JetError> {
    prolong_with(q, r, &Unknowns::new())
}

pub fn prolong_with(q: &ReductionOperator, r: usize, unknowns: &Unknowns) -> Result<ProlongedOperator, JetError> {
    if !(1..=2).contains(&r) {
        return Err(JetError::Unsupported(format!("prolongation order {r}")));
    }
    let d = &q.dep;
    let qu = characteristic(q);
    let mut coeffs = BTreeMap::new();
    coeffs.insert((0, 0), q.eta.clone());
    let max = r + 1;
    for n in 1..=r {
        for a in 0..=n {
            let b = n - a;
            let mut e = qu.clone();
            for _ in 0..a {
                e = total_derivative_with(&e, Dir::T, d, max, unknowns)?;
            }
            for _ in 0..b {
                e = total_derivative_with(&e, Dir::X, d, max, unknowns)?;
            }
            let c = e + &q.tau * jet(d, a + 1, b) + &q.xi * jet(d, a, b + 1);
            coeffs.insert((a, b), c);
        }
    }
    Ok(ProlongedOperator { base: q.clone(), order: r, coeffs })
}

/// `Q_(2)(u_t − F)` restricted to the manifold of the equation and the
/// invariant surface condition, for `Q` normalized to `τ = 1` or
/// `(τ, ξ) = (0, 1)` (other operators are normalized first).
///
/// With `τ = 1` the residual is a function of `(t, x, u, u_x)`: `u_t` is
/// replaced from `Q[u] = 0` and `u_xx` from the equation. With `τ = 0` it is a
/// function of `(t, x, u)`: `u_x = η`, `u_xx = D_xη`, `u_t = F` and
/// `u_tx = D_tη`.
pub fn conditional_invariance_residual(l: &EvolutionEquation, q: &ReductionOperator) -> Result<Expr, JetError> {
    conditional_invariance_residual_with(l, q, &Unknowns::new())
}

pub fn conditional_invariance_residual_with(
    l: &EvolutionEquation,
    q: &ReductionOperator,
    unknowns: &Unknowns,
) -> Result<Expr, JetError> {
    if q.dep != l.dep {
        return Err(JetError::Unsupported(format!("operator acts on {} but equation is for {}", q.dep, l.dep)));
    }
    let q = q.normalized()?;
    let d = &l.dep;
    let pr = prolong_with(&q, 2, unknowns)?;
    let f = &l.rhs;
    let residual = Expr::add_all([
        pr.coeffs[&(1, 0)].clone(),
        -(unknowns.partial(f, "t")),
        -(&q.xi * unknowns.partial(f, "x")),
        -(&q.eta * differentiate(f, d)),
        -(&pr.coeffs[&(0, 1)] * differentiate(f, &jet_name(d, 0, 1))),
        -(&pr.coeffs[&(0, 2)] * differentiate(f, &jet_name(d, 0, 2))),
    ]);
    let rules = manifold_rules(l, &q, unknowns)?;
    Ok(eliminate(&residual, &rules))
}

fn manifold_rules(
    l: &EvolutionEquation,
    q: &ReductionOperator,
    unknowns: &Unknowns,
) -> Result<HashMap<String, Expr>, JetError> {
    let d = &l.dep;
    let (ut, ux, uxx, utx) = (jet_name(d, 1, 0), jet_name(d, 0, 1), jet_name(d, 0, 2), jet_name(d, 1, 1));
    let mut rules: HashMap<String, Expr> = HashMap::new();
    if q.tau.is_one_literal() {
        let ut_q = &q.eta - &q.xi * jet(d, 0, 1);
        rules.insert(ut.clone(), ut_q.clone());
        // F = F0 + F1·u_xx on the manifold equals η − ξu_x.
        let f1 = differentiate(&l.rhs, &uxx);
        if !differentiate(&f1, &uxx).is_zero_literal() {
            return Err(JetError::BadEquation("right-hand side is not affine in the second derivative".into()));
        }
        if f1.is_zero_literal() {
            return Err(JetError::BadEquation("right-hand side does not involve the second derivative".into()));
        }
        let f0 = l.rhs.subs(&uxx, &Expr::zero());
        let uxx_val = (&ut_q - f0) / f1;
        rules.insert(uxx.clone(), uxx_val);
        let utx_val = total_derivative_with(&ut_q, Dir::X, d, 3, unknowns)?;
        rules.insert(utx, utx_val);
    } else {
        rules.insert(ux.clone(), q.eta.clone());
        rules.insert(uxx.clone(), total_derivative_with(&q.eta, Dir::X, d, 3, unknowns)?);
        rules.insert(ut.clone(), l.rhs.clone());
        rules.insert(utx, total_derivative_with(&q.eta, Dir::T, d, 3, unknowns)?);
    }
    // Resolve the rules against each other so that one pass suffices in
    // practice; the pass bound below only guards termination.
    for _ in 0..4 {
        let snapshot = rules.clone();
        let mut changed = false;
        for v in rules.values_mut() {
            let nv = v.substitute(&snapshot);
            if nv != *v {
                *v = nv;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(rules)
}

fn eliminate(e: &Expr, rules: &HashMap<String, Expr>) -> Expr {
    let mut cur = e.clone();
    for _ in 0..4 {
        let next = cur.substitute(rules);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

/// `Q_(2)(u_t − F)` on the equation manifold alone (`u_t = F`,
/// `u_tx = D_xF`): zero exactly for Lie symmetries. Accepts operators with
/// `τ = ξ = 0`.
pub fn lie_invariance_residual(l: &EvolutionEquation, q: &ReductionOperator) -> Result<Expr, JetError> {
    if q.dep != l.dep {
        return Err(JetError::Unsupported(format!("operator acts on {} but equation is for {}", q.dep, l.dep)));
    }
    let d = &l.dep;
    let pr = prolong(q, 2)?;
    let f = &l.rhs;
    let residual = Expr::add_all([
        pr.coeffs[&(1, 0)].clone(),
        -differentiate(f, "t") * &q.tau,
        -(&q.xi * differentiate(f, "x")),
        -(&q.eta * differentiate(f, d)),
        -(&pr.coeffs[&(0, 1)] * differentiate(f, &jet_name(d, 0, 1))),
        -(&pr.coeffs[&(0, 2)] * differentiate(f, &jet_name(d, 0, 2))),
    ]);
    let mut rules = HashMap::new();
    rules.insert(jet_name(d, 1, 0), f.clone());
    rules.insert(jet_name(d, 1, 1), total_derivative(f, Dir::X, d, 3)?);
    Ok(eliminate(&residual, &rules))
}

/// Whether `Q` is a reduction operator of `L`: the zero verdict of the
/// conditional invariance residual.
pub fn is_reduction_operator(l: &EvolutionEquation, q: &ReductionOperator) -> Result<ZeroReport, JetError> {
    is_reduction_operator_with(l, q, &ZeroTest::default())
}

pub fn is_reduction_operator_with(
    l: &EvolutionEquation,
    q: &ReductionOperator,
    test: &ZeroTest,
) -> Result<ZeroReport, JetError> {
    let r = conditional_invariance_residual(l, q)?;
    Ok(test.check(&r)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{ex, Verdict};

    fn fast_diffusion() -> EvolutionEquation {
        EvolutionEquation::new("u", ex("u_xx/u - u_x^2/u^2"), "diffusion").unwrap()
    }

    fn potential() -> EvolutionEquation {
        EvolutionEquation::new("v", ex("v_xx/v_x"), "filtration").unwrap()
    }

    #[test]
    fn jet_names() {
        assert_eq!(jet_name("u", 1, 1), "u_tx");
        assert_eq!(parse_jet("u_tx", "u"), Some((1, 1)));
        assert_eq!(parse_jet("u_xt", "u"), Some((1, 1)));
        assert_eq!(parse_jet("ux", "u"), None);
        assert_eq!(parse_jet("v_x", "u"), None);
    }

    #[test]
    fn total_derivatives() {
        let unknowns = Unknowns::new().with("theta", &["t", "x", "v"]);
        let d = total_derivative_with(&sym("theta"), Dir::X, "v", 2, &unknowns).unwrap();
        assert_eq!(d, ex("theta_x + v_x*theta_v"));
        assert_eq!(total_derivative(&sym("v_x"), Dir::T, "v", 2).unwrap(), sym("v_tx"));
        assert_eq!(total_derivative(&ex("u*u_x"), Dir::X, "u", 3).unwrap(), ex("u_x^2 + u*u_xx"));
        assert!(matches!(
            total_derivative(&sym("u_xx"), Dir::X, "u", 2),
            Err(JetError::OrderOverflow(3, 2))
        ));
    }

    #[test]
    fn mixed_total_derivatives_commute() {
        let e = ex("x*u*u_x + sin(t*u)");
        let tx = total_derivative(&total_derivative(&e, Dir::T, "u", 3).unwrap(), Dir::X, "u", 3).unwrap();
        let xt = total_derivative(&total_derivative(&e, Dir::X, "u", 3).unwrap(), Dir::T, "u", 3).unwrap();
        assert_eq!((tx - xt).expand(), Expr::zero());
    }

    #[test]
    fn characteristics() {
        let q = ReductionOperator::parse("v", "1", "-1", "-2*cot(x - t)");
        assert_eq!(characteristic(&q), ex("-2*cot(x - t) - v_t + v_x"));
        let q = ReductionOperator::parse("u", "0", "1", "eta");
        assert_eq!(characteristic(&q), ex("eta - u_x"));
    }

    #[test]
    fn prolongation() {
        let q = ReductionOperator::parse("u", "0", "x", "-2*u");
        let p = prolong(&q, 2).unwrap();
        assert_eq!(p.coeff(0, 1).unwrap(), &ex("-3*u_x"));
        assert_eq!(p.coeff(0, 0).unwrap(), &ex("-2*u"));
        let p = prolong(&ReductionOperator::parse("u", "1", "0", "0"), 2).unwrap();
        assert!(p.coeffs.iter().all(|(_, c)| c.is_zero_literal()));
    }

    #[test]
    fn criterion_on_examples() {
        let yes = |l: &EvolutionEquation, q: ReductionOperator| is_reduction_operator(l, &q).unwrap().verdict.is_zero();
        assert!(yes(&potential(), ReductionOperator::parse("v", "1", "0", "0")));
        assert!(yes(&potential(), ReductionOperator::parse("v", "1", "-2*coth(x + v)", "-2*coth(x + v)")));
        assert!(!yes(&potential(), ReductionOperator::parse("v", "1", "0", "v")));
        assert!(yes(&fast_diffusion(), ReductionOperator::parse("u", "0", "1", "u^2 - 2*tanh(x - t)*u")));
        assert!(!yes(&fast_diffusion(), ReductionOperator::parse("u", "0", "1", "u^3")));
        assert!(yes(&fast_diffusion(), ReductionOperator::parse("u", "0", "x", "-2*u")));
        assert!(yes(&fast_diffusion(), ReductionOperator::parse("u", "t", "0", "u")));
    }

    #[test]
    fn lie_symmetry_residual_is_exactly_zero() {
        let r = conditional_invariance_residual(&potential(), &ReductionOperator::parse("v", "1", "0", "0")).unwrap();
        assert_eq!(r, Expr::zero());
        let v = is_reduction_operator(&potential(), &ReductionOperator::parse("v", "t", "0", "v")).unwrap();
        assert_eq!(v.verdict, Verdict::ProvedZero);
    }

    #[test]
    fn degenerate_operators_are_rejected() {
        assert_eq!(ReductionOperator::new("u", Expr::zero(), Expr::zero(), Expr::zero()), Err(JetError::Degenerate));
        let dv = ReductionOperator::new("u", Expr::zero(), Expr::zero(), sym("u")).unwrap();
        assert_eq!(dv.normalized(), Err(JetError::Degenerate));
        assert!(ReductionOperator::new("u", Expr::one(), sym("u_x"), Expr::zero()).is_err());
    }
}
