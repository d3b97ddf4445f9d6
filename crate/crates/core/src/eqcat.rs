//! Equation families and determining systems.
//!
//! The diffusion family is `u_t = (f(u)u_x)_x`, the filtration family is
//! `v_t = f(v_x)v_xx`; `f = u⁻¹` and `f = v_x⁻¹` give the fast diffusion
//! equation and its potential form.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::expr::{differentiate, ex, is_zero, ratfn, sym, Expr, Func, Node, Number, ZeroTestError};
use crate::jets::{conditional_invariance_residual_with, EvolutionEquation, JetError, ReductionOperator, Unknowns};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EqError {
    #[error("nonlinearity is identically zero")]
    ZeroNonlinearity,
    #[error("nonlinearity must depend on {0} only")]
    WrongVariable(String),
    #[error("nonlinearity is not a rational function of {0}")]
    NotRational(String),
    #[error("theta must not vanish identically")]
    ZeroTheta,
    #[error("degenerate equivalence transformation")]
    Degenerate,
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Zero(#[from] ZeroTestError),
    #[error("exact normalization failed: {0}")]
    Normalization(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Diffusion,
    Filtration,
}

impl Family {
    pub fn dep(self) -> &'static str {
        match self {
            Family::Diffusion => "u",
            Family::Filtration => "v",
        }
    }

    /// The argument of the nonlinearity: `u` or `v_x`.
    pub fn argument(self) -> &'static str {
        match self {
            Family::Diffusion => "u",
            Family::Filtration => "v_x",
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Family::Diffusion => "diffusion",
            Family::Filtration => "filtration",
        }
    }
}

/// Builds `u_t = f u_xx + f′ u_x²` (diffusion) or `v_t = f(v_x) v_xx` (filtration).
pub fn make_equation(family: Family, f: &Expr) -> Result<EvolutionEquation, EqError> {
    let arg = family.argument();
    if let Some(s) = f.free_symbols().into_iter().find(|s| &**s != arg) {
        return Err(EqError::WrongVariable(format!("{arg} (found {s})")));
    }
    if f.is_zero_literal() || is_zero(f)?.verdict.is_zero() {
        return Err(EqError::ZeroNonlinearity);
    }
    let rhs = match family {
        Family::Diffusion => f * sym("u_xx") + differentiate(f, "u") * sym("u_x").sqr(),
        Family::Filtration => f * sym("v_xx"),
    };
    Ok(EvolutionEquation::new(family.dep(), rhs, family.tag())?)
}

pub fn fast_diffusion() -> EvolutionEquation {
    make_equation(Family::Diffusion, &ex("1/u")).expect("valid equation")
}

pub fn potential_fast_diffusion() -> EvolutionEquation {
    make_equation(Family::Filtration, &ex("1/v_x")).expect("valid equation")
}

/// Fujita nonlinearity `1/(a v_x² + b v_x + c)`.
pub fn fujita(a: &Expr, b: &Expr, c: &Expr) -> Expr {
    let p = sym("v_x");
    (a * p.sqr() + b * &p + c).recip()
}

fn is_rational_in(f: &Expr, var: &str) -> bool {
    !f.any(&|e| match e.node() {
        Node::Func(..) => e.contains_symbol(var),
        Node::Pow(b, x) => x.as_i64().is_none() && (b.contains_symbol(var) || x.contains_symbol(var)),
        _ => false,
    })
}

/// Overdetermined system for unknown coefficient functions.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterminingSystem {
    pub unknowns: Unknowns,
    pub residuals: Vec<Expr>,
}

impl DeterminingSystem {
    /// Residuals with the unknowns (and their derivatives) replaced.
    pub fn substitute(&self, values: &BTreeMap<String, Expr>) -> Vec<Expr> {
        let map = expand_unknown_values(&self.unknowns, values, &self.residuals);
        self.residuals.iter().map(|r| r.substitute(&map)).collect()
    }

    /// Zero verdicts for all residuals at the given coefficient functions.
    pub fn satisfied_by(&self, values: &BTreeMap<String, Expr>) -> Result<bool, EqError> {
        for r in self.substitute(values) {
            if !is_zero(&r)?.verdict.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Binds every derivative symbol of each unknown occurring in `exprs` to the
/// corresponding derivative of the supplied value.
fn expand_unknown_values(
    unknowns: &Unknowns,
    values: &BTreeMap<String, Expr>,
    exprs: &[Expr],
) -> std::collections::HashMap<String, Expr> {
    let mut map = std::collections::HashMap::new();
    for e in exprs {
        for s in e.free_symbols() {
            if map.contains_key(&*s) {
                continue;
            }
            if let Some((base, suffix)) = unknowns.split(&s) {
                if let Some(v) = values.get(base) {
                    let mut d = v.clone();
                    for c in suffix.chars() {
                        d = differentiate(&d, &c.to_string());
                    }
                    map.insert(s.to_string(), d);
                }
            }
        }
    }
    map
}

fn tau1_unknowns() -> Unknowns {
    Unknowns::new().with("xi", &["t", "x", "v"]).with("theta", &["t", "x", "v"])
}

/// Determining equations for `Q = ∂_t + ξ(t,x,v)∂_x + θ(t,x,v)∂_v` and
/// `v_t = f(v_x)v_xx`: the conditional invariance residual with cleared
/// denominators, split by powers of `v_x`.
pub fn derive_determining_tau1(f: &Expr) -> Result<DeterminingSystem, EqError> {
    if !is_rational_in(f, "v_x") {
        return Err(EqError::NotRational("v_x".into()));
    }
    let l = make_equation(Family::Filtration, f)?;
    let unknowns = tau1_unknowns();
    let q = ReductionOperator::new("v", Expr::one(), sym("xi"), sym("theta"))?;
    let r = conditional_invariance_residual_with(&l, &q, &unknowns)?;
    let num = ratfn::numerator(&r).map_err(|e| EqError::Normalization(e.to_string()))?;
    let coeffs = num.coefficients("v_x").ok_or_else(|| EqError::NotRational("v_x".into()))?;
    let residuals = coeffs.into_values().rev().map(|c| primitive(&c)).collect();
    Ok(DeterminingSystem { unknowns, residuals })
}

/// Divides out the leading numeric content so residuals print compactly.
fn primitive(e: &Expr) -> Expr {
    let terms: Vec<Expr> = match e.node() {
        Node::Add(t) => t.clone(),
        _ => vec![e.clone()],
    };
    let last = terms.last().map(|t| t.split_coeff().0).unwrap_or_else(Number::one);
    match last.recip() {
        Some(inv) => Expr::num(inv) * e,
        None => e.clone(),
    }
}

/// The four determining equations for `f = v_x⁻¹`, written as residuals.
pub fn reference_tau1_system() -> DeterminingSystem {
    DeterminingSystem {
        unknowns: tau1_unknowns(),
        residuals: vec![
            ex("xi_vv - xi*xi_v"),
            ex("xi_t - (2*xi_xv - theta_vv - theta_v*xi + theta*xi_v - xi*xi_x)"),
            ex("theta_xx - theta*theta_x"),
            ex("theta_t - (2*theta_xv - xi_xx - xi_x*theta + xi*theta_x - theta*theta_v)"),
        ],
    }
}

fn eta_unknowns() -> Unknowns {
    Unknowns::new().with("eta1", &["t", "x"]).with("eta2", &["t", "x"])
}

/// The three equations for `η¹, η²` in `Q = ∂_x + (η¹u + η²)u ∂_u`.
pub fn reference_eta_system() -> DeterminingSystem {
    DeterminingSystem {
        unknowns: eta_unknowns(),
        residuals: vec![
            ex("eta2_xx - eta2*eta2_x"),
            ex("eta2_t - (eta2*eta1_x - eta1*eta2_x + eta1_xx)"),
            ex("eta1_t - eta1*eta1_x"),
        ],
    }
}

/// Restricts a `τ = 1` system to `v`-independent coefficients and renames
/// `ξ → −η¹`, `θ → η²`.
pub fn restrict_v_independent(sys: &DeterminingSystem) -> DeterminingSystem {
    let mut map = std::collections::HashMap::new();
    for r in &sys.residuals {
        for s in r.free_symbols() {
            if let Some((base, suffix)) = sys.unknowns.split(&s) {
                let value = if suffix.contains('v') {
                    Expr::zero()
                } else {
                    let name = |b: &str| if suffix.is_empty() { b.to_string() } else { format!("{b}_{suffix}") };
                    match base {
                        "xi" => -sym(&name("eta1")),
                        "theta" => sym(&name("eta2")),
                        _ => continue,
                    }
                };
                map.insert(s.to_string(), value);
            }
        }
    }
    let residuals = sys
        .residuals
        .iter()
        .map(|r| r.substitute(&map).expand())
        .filter(|r| !r.is_zero_literal())
        .collect();
    DeterminingSystem { unknowns: eta_unknowns(), residuals }
}

/// Rows of `residuals` over the basis of monomials they contain.
fn coefficient_rows(residuals: &[Expr]) -> (Vec<Expr>, Vec<Vec<Number>>) {
    let mut basis: BTreeMap<Expr, usize> = BTreeMap::new();
    let mut rows_sparse: Vec<Vec<(Expr, Number)>> = Vec::new();
    for r in residuals {
        let e = r.expand();
        let terms: Vec<Expr> = match e.node() {
            Node::Add(t) => t.clone(),
            _ if e.is_zero_literal() => vec![],
            _ => vec![e.clone()],
        };
        let mut row = Vec::new();
        for t in terms {
            let (c, m) = t.split_coeff();
            let n = basis.len();
            basis.entry(m.clone()).or_insert(n);
            row.push((m, c));
        }
        rows_sparse.push(row);
    }
    let width = basis.len();
    let rows = rows_sparse
        .into_iter()
        .map(|row| {
            let mut dense = vec![Number::zero(); width];
            for (m, c) in row {
                let k = basis[&m];
                dense[k] = dense[k].add(&c);
            }
            dense
        })
        .collect();
    let mut names: Vec<(usize, Expr)> = basis.into_iter().map(|(e, k)| (k, e)).collect();
    names.sort_by_key(|(k, _)| *k);
    (names.into_iter().map(|(_, e)| e).collect(), rows)
}

/// Rank over the Gaussian rationals.
pub fn rank(mut rows: Vec<Vec<Number>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].recip().expect("nonzero pivot");
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].mul(&inv);
                for j in col..width {
                    let v = rows[r][j].mul(&factor);
                    rows[i][j] = rows[i][j].sub(&v);
                }
            }
        }
        r += 1;
    }
    r
}

/// Two systems are equivalent when each residual of one is a
/// constant-coefficient linear combination of the other's residuals.
pub fn systems_equivalent(a: &DeterminingSystem, b: &DeterminingSystem) -> bool {
    let all: Vec<Expr> = a.residuals.iter().chain(&b.residuals).cloned().collect();
    let (_, rows) = coefficient_rows(&all);
    let (ra_rows, rb_rows) = rows.split_at(a.residuals.len());
    let ra = rank(ra_rows.to_vec());
    let rb = rank(rb_rows.to_vec());
    let rab = rank(rows.clone());
    ra == rab && rb == rab
}

/// `θθ_t − (θ_xx + 2θθ_xv + θ²θ_vv − θ⁻¹θ_x² − 2θ_xθ_v − θθ_v²)` for the
/// no-go operator `∂_x + θ∂_v` of the potential fast diffusion equation.
pub fn nogo_theta_residual(theta: &Expr) -> Result<Expr, EqError> {
    if theta.is_zero_literal() || is_zero(theta)?.verdict.is_zero() {
        return Err(EqError::ZeroTheta);
    }
    let d = |e: &Expr, v: &str| differentiate(e, v);
    let th = theta;
    let (tt, tx, tv) = (d(th, "t"), d(th, "x"), d(th, "v"));
    let (txx, txv, tvv) = (d(&tx, "x"), d(&tx, "v"), d(&tv, "v"));
    let rhs = Expr::add_all([
        txx,
        2 * th * txv,
        th.sqr() * tvv,
        -(tx.sqr() / th),
        -(2 * &tx * &tv),
        -(th * tv.sqr()),
    ]);
    Ok(th * tt - rhs)
}

/// Residuals for `Q = ∂_x + ((η¹u + η²)/f(u)) ∂_u` on `u_t = (f u_x)_x`
/// with `f = p/q`: the coefficients in `u` of
/// `(η¹u+η²)(η¹_x u+η²_x)(p′q − pq′) − ((η¹_t − 2η¹η¹_x)u + η²_t − 2η²η¹_x)pq + (η¹_xx u + η²_xx)p²`.
pub fn nogo_eta_system(f: &Expr, eta1: &Expr, eta2: &Expr) -> Result<Vec<Expr>, EqError> {
    if !is_rational_in(f, "u") {
        return Err(EqError::NotRational("u".into()));
    }
    for e in [eta1, eta2] {
        if e.contains_symbol("u") {
            return Err(EqError::WrongVariable("(t, x) in η¹, η²".into()));
        }
    }
    let (p, q) = ratfn::together(f).map_err(|e| EqError::Normalization(e.to_string()))?;
    let u = sym("u");
    let unknowns = eta_unknowns();
    let d = |e: &Expr, v: &str| unknowns.partial(e, v);
    let (e1x, e2x) = (d(eta1, "x"), d(eta2, "x"));
    let wronskian = d(&p, "u") * &q - &p * d(&q, "u");
    let poly = Expr::add_all([
        (eta1 * &u + eta2) * (&e1x * &u + &e2x) * wronskian,
        -(((d(eta1, "t") - 2 * eta1 * &e1x) * &u + d(eta2, "t") - 2 * eta2 * &e1x) * &p * &q),
        (d(&e1x, "x") * &u + d(&e2x, "x")) * p.sqr(),
    ]);
    let coeffs = poly.coefficients("u").ok_or_else(|| EqError::NotRational("u".into()))?;
    Ok(coeffs.into_values().rev().collect())
}

/// Element of the equivalence group of the filtration class:
/// `t̃ = ε₁t + ε₂`, `(x̃, ṽ) = M (x, v) + s`, `f̃ = ε₁⁻¹(ε₁′ + ε₂′v_x)² f`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceTransform {
    pub e1: Expr,
    pub e2: Expr,
    /// `[[ε₁′, ε₂′], [ε₁″, ε₂″]]`.
    pub m: [[Expr; 2]; 2],
    /// `[ε₃′, ε₃″]`.
    pub shift: [Expr; 2],
}

impl EquivalenceTransform {
    pub fn identity() -> Self {
        EquivalenceTransform::new(1, 0, [[1, 0], [0, 1]], [0, 0])
    }

    pub fn new(e1: i64, e2: i64, m: [[i64; 2]; 2], shift: [i64; 2]) -> Self {
        let m = m.map(|row| row.map(Expr::int));
        EquivalenceTransform { e1: Expr::int(e1), e2: Expr::int(e2), m, shift: shift.map(Expr::int) }
    }

    /// The hodograph element `x̃ = v`, `ṽ = x`.
    pub fn hodograph() -> Self {
        EquivalenceTransform::new(1, 0, [[0, 1], [1, 0]], [0, 0])
    }

    pub fn determinant(&self) -> Expr {
        &self.e1 * (&self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0])
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &EquivalenceTransform) -> EquivalenceTransform {
        let a = &self.m;
        let b = &other.m;
        let m = [
            [&a[0][0] * &b[0][0] + &a[0][1] * &b[1][0], &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1]],
            [&a[1][0] * &b[0][0] + &a[1][1] * &b[1][0], &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1]],
        ];
        let s = &other.shift;
        let shift = [
            &a[0][0] * &s[0] + &a[0][1] * &s[1] + &self.shift[0],
            &a[1][0] * &s[0] + &a[1][1] * &s[1] + &self.shift[1],
        ];
        EquivalenceTransform { e1: &self.e1 * &other.e1, e2: &self.e1 * &other.e2 + &self.e2, m, shift }
    }

    /// Transformed nonlinearity as a function of the new `v_x`.
    pub fn apply(&self, f: &Expr) -> Result<Expr, EqError> {
        if is_zero(&self.determinant())?.verdict.is_zero() {
            return Err(EqError::Degenerate);
        }
        let p = sym("v_x");
        let [[a1, a2], [b1, b2]] = &self.m;
        // ṽ_x̃ = (ε₁″ + ε₂″v_x)/(ε₁′ + ε₂′v_x), solved for v_x.
        let old_p = (a1 * &p - b1) / (b2 - a2 * &p);
        let factor = (a1 + a2 * &old_p).sqr() / &self.e1;
        let out = factor * f.subs("v_x", &old_p);
        Ok(simplify_rational(&out))
    }
}

/// Rebuilds a rational expression as a single quotient.
fn simplify_rational(e: &Expr) -> Expr {
    match ratfn::together(e) {
        Ok((n, d)) => n.expand() / d,
        Err(_) => e.clone(),
    }
}

/// Whether two nonlinearities agree identically.
pub fn same_nonlinearity(f: &Expr, g: &Expr) -> Result<bool, EqError> {
    Ok(is_zero(&(f - g))?.verdict.is_zero())
}

/// The ξ-family solving `ξ_vv = ξξ_v`: `φ`, `−2/(v+φ)`, `−2μcot(μ(v+φ))`,
/// `−2μtanh(μ(v+φ))`, `−2μcoth(μ(v+φ))`.
pub fn xi_family(phi: &Expr, mu: &Expr) -> Vec<Expr> {
    let w = sym("v") + phi;
    let mw = mu * &w;
    vec![
        phi.clone(),
        -2 * w.recip(),
        -2 * mu * mw.apply(Func::Cot),
        -2 * mu * mw.apply(Func::Tanh),
        -2 * mu * mw.apply(Func::Coth),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equation_constructors() {
        assert_eq!(fast_diffusion().rhs, ex("u_xx/u - u_x^2/u^2"));
        assert_eq!(potential_fast_diffusion().rhs, ex("v_xx/v_x"));
        assert!(make_equation(Family::Filtration, &ex("0")).is_err());
        assert!(make_equation(Family::Filtration, &ex("u")).is_err());
        let bluman_yan = make_equation(Family::Filtration, &ex("1/(v_x^2 + v_x)")).unwrap();
        assert_eq!(bluman_yan.rhs, ex("v_xx/(v_x^2 + v_x)"));
    }

    #[test]
    fn fast_potential_system_matches_reference() {
        let sys = derive_determining_tau1(&ex("1/v_x")).unwrap();
        assert_eq!(sys.residuals.len(), 4);
        assert!(systems_equivalent(&sys, &reference_tau1_system()));
        let restricted = restrict_v_independent(&sys);
        assert!(systems_equivalent(&restricted, &reference_eta_system()));
    }

    #[test]
    fn heat_system_keeps_translation() {
        let sys = derive_determining_tau1(&ex("1")).unwrap();
        let mut vals = BTreeMap::new();
        vals.insert("xi".to_string(), Expr::one());
        vals.insert("theta".to_string(), Expr::zero());
        assert!(sys.satisfied_by(&vals).unwrap());
        vals.insert("theta".to_string(), sym("x") * sym("t"));
        assert!(!sys.satisfied_by(&vals).unwrap());
    }

    #[test]
    fn non_rational_nonlinearity_is_rejected() {
        assert!(matches!(derive_determining_tau1(&ex("exp(v_x)")), Err(EqError::NotRational(_))));
    }

    #[test]
    fn nogo_theta() {
        assert!(is_zero(&nogo_theta_residual(&ex("exp(x)")).unwrap()).unwrap().verdict.is_zero());
        assert_eq!(nogo_theta_residual(&ex("1")).unwrap(), Expr::zero());
        assert_eq!(nogo_theta_residual(&ex("t")).unwrap(), ex("t"));
        assert!(nogo_theta_residual(&Expr::zero()).is_err());
    }

    #[test]
    fn nogo_theta_agrees_with_criterion() {
        use crate::jets::conditional_invariance_residual;
        let l = potential_fast_diffusion();
        for th in ["exp(x)", "t", "x*v + t^2", "sin(x - v)*t"] {
            let theta = ex(th);
            let q = ReductionOperator::new("v", Expr::zero(), Expr::one(), theta.clone()).unwrap();
            let r = conditional_invariance_residual(&l, &q).unwrap();
            let diff = &theta * r - nogo_theta_residual(&theta).unwrap();
            assert!(is_zero(&diff).unwrap().verdict.is_zero(), "{th}");
        }
    }

    #[test]
    fn nogo_eta() {
        let f = ex("1/u");
        let zero_all = |a: &str, b: &str| {
            nogo_eta_system(&f, &ex(a), &ex(b))
                .unwrap()
                .iter()
                .all(|r| is_zero(r).unwrap().verdict.is_zero())
        };
        assert!(zero_all("0", "0"));
        assert!(zero_all("1", "-2*cot(x - t)"));
        assert!(zero_all("1", "-2*tanh(x - t)"));
        assert!(!zero_all("2*cot(x - t)", "0"));
        assert!(!zero_all("0", "exp(x)"));
        // General-f form reproduces the three reference equations.
        let sys = DeterminingSystem {
            unknowns: eta_unknowns(),
            residuals: nogo_eta_system(&f, &sym("eta1"), &sym("eta2")).unwrap(),
        };
        assert!(systems_equivalent(&sys, &reference_eta_system()));
    }

    #[test]
    fn equivalence_group() {
        let f = ex("1/v_x");
        let hodo = EquivalenceTransform::hodograph().apply(&f).unwrap();
        assert!(same_nonlinearity(&hodo, &f).unwrap());
        let g = EquivalenceTransform::new(1, 0, [[1, 1], [0, 1]], [0, 0]);
        let reduced = g.apply(&ex("1/(v_x^2 + v_x)")).unwrap();
        assert!(same_nonlinearity(&reduced, &f).unwrap());
        assert!(same_nonlinearity(&EquivalenceTransform::identity().apply(&f).unwrap(), &f).unwrap());
        assert!(EquivalenceTransform::new(1, 0, [[1, 1], [1, 1]], [0, 0]).apply(&f).is_err());
    }

    #[test]
    fn equivalence_group_composes() {
        let g1 = EquivalenceTransform::new(2, 1, [[1, 2], [0, 1]], [1, 0]);
        let g2 = EquivalenceTransform::new(1, 3, [[3, 0], [1, -1]], [0, 2]);
        for f in [ex("1/v_x"), ex("1")] {
            let step = g2.apply(&g1.apply(&f).unwrap()).unwrap();
            let once = g2.compose(&g1).apply(&f).unwrap();
            assert!(same_nonlinearity(&step, &once).unwrap());
        }
    }

    #[test]
    fn xi_family_solves_its_ode() {
        for xi in xi_family(&ex("t + exp(x)"), &ex("3/2")) {
            let r = differentiate(&differentiate(&xi, "v"), "v") - &xi * differentiate(&xi, "v");
            assert!(is_zero(&r).unwrap().verdict.is_zero(), "{xi}");
        }
    }
}
