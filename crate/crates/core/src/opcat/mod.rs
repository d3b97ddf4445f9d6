//! Operator catalog: the Lie algebras `A1`, `A2`, the five families of
//! non-Lie reduction operators of `v_t = v_xx/v_x`, the no-go operators of
//! the fast diffusion equation, operator equivalence, and the conversion
//! from potential operators to no-go operators.

mod transform;

use std::fmt;

use thiserror::Error;

use crate::eqcat::{fast_diffusion, potential_fast_diffusion, EqError, Family};
use crate::expr::{differentiate, ex, sym, Expr, Func, ZeroReport, ZeroTest, ZeroTestError};
use crate::jets::{
    is_reduction_operator_with, lie_invariance_residual, EvolutionEquation, JetError, ReductionOperator,
};

pub use transform::{g2_sample_grid, push_forward, GroupElement, PointTransformation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpError {
    #[error("invalid selector: {0}")]
    InvalidSelector(String),
    #[error("unknown catalog key {0:?}")]
    UnknownKey(String),
    #[error("coefficients must not depend on v: {0}")]
    DependsOnV(String),
    #[error("operator must be of the form d_t + xi*d_x + theta*d_v")]
    NotEvolutionForm,
    #[error("inverse transformation is not available in closed form")]
    InverseUnavailable,
    #[error("degenerate transformation")]
    Degenerate,
    #[error("variable mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Zero(#[from] ZeroTestError),
    #[error(transparent)]
    Eq(#[from] EqError),
}

/// The profiles `f` with `f_ωω = f f_ω` used by the first two families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    Inverse,
    Cot,
    Tanh,
    Coth,
}

impl Profile {
    pub const ALL: [Profile; 4] = [Profile::Inverse, Profile::Cot, Profile::Tanh, Profile::Coth];

    pub fn name(self) -> &'static str {
        match self {
            Profile::Inverse => "inv",
            Profile::Cot => "cot",
            Profile::Tanh => "tanh",
            Profile::Coth => "coth",
        }
    }

    pub fn from_name(s: &str) -> Option<Profile> {
        Profile::ALL.into_iter().find(|p| p.name() == s)
    }

    /// `f(w)`: `−2/w`, `−2cot w`, `−2tanh w` or `−2coth w`.
    pub fn at(self, w: &Expr) -> Expr {
        match self {
            Profile::Inverse => -2 * w.recip(),
            Profile::Cot => -2 * w.apply(Func::Cot),
            Profile::Tanh => -2 * w.apply(Func::Tanh),
            Profile::Coth => -2 * w.apply(Func::Coth),
        }
    }
}

/// `φ` of the third family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phi {
    TPlusExp,
    TimesProfile(Profile),
}

impl Phi {
    pub fn expr(self) -> Expr {
        match self {
            Phi::TPlusExp => ex("t + exp(x)"),
            Phi::TimesProfile(f) => sym("t") * f.at(&sym("x")),
        }
    }
}

/// χ of the fourth family.
pub const CASE4_CHI: [(&str, &str); 2] = [("tan2t*tanhx", "tan(2*t)*tanh(x)"), ("coth2t*cotx", "coth(2*t)*cot(x)")];

/// χ of the fifth family.
pub const CASE5_CHI: [(&str, &str); 5] = [
    ("tanh2t*tanhx", "tanh(2*t)*tanh(x)"),
    ("tanh2t*cothx", "tanh(2*t)*coth(x)"),
    ("coth2t*cothx", "coth(2*t)*coth(x)"),
    ("(e2x*tanh2t+1)/(e2x-tanh2t)", "(exp(2*x)*tanh(2*t) + 1)/(exp(2*x) - tanh(2*t))"),
    ("(2-e2x-e4t)/(2+e2x+e4t)", "(2 - exp(2*x) - exp(4*t))/(2 + exp(2*x) + exp(4*t))"),
];

/// One instantiation of the classification list of non-Lie reduction
/// operators `∂_t + ξ∂_x + θ∂_v` of the potential fast diffusion equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorFamily {
    /// `∂_t + ε∂_x + f(x+εt)∂_v`.
    Case1 { eps: i64, f: Profile },
    /// `∂_t + f(x+v)(∂_x + ∂_v)`.
    Case2 { f: Profile },
    /// `ξ = −2/(v+φ)`, `θ = φ_t + φ_xξ`.
    Case3 { phi: Phi },
    /// `ξ = −2(1+χtan v)/(tan v−χ)`, `θ = −(χ_t+χ_xξ)/(1+χ²)`.
    Case4 { chi: usize },
    /// `ξ = −2(1−χtanh v)/(tanh v−χ)`, `θ = −(χ_t+χ_xξ)/(1−χ²)`.
    Case5 { chi: usize },
}

impl OperatorFamily {
    pub fn all() -> Vec<OperatorFamily> {
        let mut out = Vec::new();
        for eps in [0, 1] {
            for f in Profile::ALL {
                out.push(OperatorFamily::Case1 { eps, f });
            }
        }
        out.extend(Profile::ALL.map(|f| OperatorFamily::Case2 { f }));
        out.push(OperatorFamily::Case3 { phi: Phi::TPlusExp });
        out.extend(Profile::ALL.map(|f| OperatorFamily::Case3 { phi: Phi::TimesProfile(f) }));
        out.extend((0..CASE4_CHI.len()).map(|chi| OperatorFamily::Case4 { chi }));
        out.extend((0..CASE5_CHI.len()).map(|chi| OperatorFamily::Case5 { chi }));
        out
    }

    pub fn case(&self) -> u8 {
        match self {
            OperatorFamily::Case1 { .. } => 1,
            OperatorFamily::Case2 { .. } => 2,
            OperatorFamily::Case3 { .. } => 3,
            OperatorFamily::Case4 { .. } => 4,
            OperatorFamily::Case5 { .. } => 5,
        }
    }

    pub fn key(&self) -> String {
        match *self {
            OperatorFamily::Case1 { eps, f } => format!("thm1.case1.eps={eps}.f={}", f.name()),
            OperatorFamily::Case2 { f } => format!("thm1.case2.f={}", f.name()),
            OperatorFamily::Case3 { phi: Phi::TPlusExp } => "thm1.case3.phi=t+e^x".into(),
            OperatorFamily::Case3 { phi: Phi::TimesProfile(f) } => format!("thm1.case3.phi=t*f(x).f={}", f.name()),
            OperatorFamily::Case4 { chi } => format!("thm1.case4.chi={}", CASE4_CHI.get(chi).map_or("?", |c| c.0)),
            OperatorFamily::Case5 { chi } => format!("thm1.case5.chi={}", CASE5_CHI.get(chi).map_or("?", |c| c.0)),
        }
    }

    fn validate(&self) -> Result<(), OpError> {
        match *self {
            OperatorFamily::Case1 { eps, .. } if eps != 0 && eps != 1 => {
                Err(OpError::InvalidSelector(format!("case 1 needs eps in {{0, 1}}, got {eps}")))
            }
            OperatorFamily::Case4 { chi } if chi >= CASE4_CHI.len() => {
                Err(OpError::InvalidSelector(format!("case 4 has {} chi choices", CASE4_CHI.len())))
            }
            OperatorFamily::Case5 { chi } if chi >= CASE5_CHI.len() => {
                Err(OpError::InvalidSelector(format!("case 5 has {} chi choices", CASE5_CHI.len())))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for OperatorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

fn chi_operator(chi: &Expr, trig: Func, sign: i64) -> ReductionOperator {
    // sign = 1: tan/1+χ², sign = −1: tanh/1−χ².
    let tv = sym("v").apply(trig);
    let xi = -2 * (1 + sign * chi * &tv) / (&tv - chi);
    let theta = -(differentiate(chi, "t") + differentiate(chi, "x") * &xi) / (1 + sign * chi.sqr());
    ReductionOperator { dep: "v".into(), tau: Expr::one(), xi, eta: theta }
}

/// The operator of a family instance, with `τ = 1`.
pub fn theorem1_operator(family: &OperatorFamily) -> Result<ReductionOperator, OpError> {
    family.validate()?;
    let (t, x, v) = (sym("t"), sym("x"), sym("v"));
    let q = match *family {
        OperatorFamily::Case1 { eps, f } => {
            let theta = f.at(&(&x + eps * &t));
            ReductionOperator { dep: "v".into(), tau: Expr::one(), xi: Expr::int(eps), eta: theta }
        }
        OperatorFamily::Case2 { f } => {
            let c = f.at(&(&x + &v));
            ReductionOperator { dep: "v".into(), tau: Expr::one(), xi: c.clone(), eta: c }
        }
        OperatorFamily::Case3 { phi } => {
            let phi = phi.expr();
            let xi = -2 * (&v + &phi).recip();
            let theta = differentiate(&phi, "t") + differentiate(&phi, "x") * &xi;
            ReductionOperator { dep: "v".into(), tau: Expr::one(), xi, eta: theta }
        }
        OperatorFamily::Case4 { chi } => chi_operator(&ex(CASE4_CHI[chi].1), Func::Tan, 1),
        OperatorFamily::Case5 { chi } => chi_operator(&ex(CASE5_CHI[chi].1), Func::Tanh, -1),
    };
    Ok(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algebra {
    A1,
    A2,
}

impl Algebra {
    pub fn name(self) -> &'static str {
        match self {
            Algebra::A1 => "A1",
            Algebra::A2 => "A2",
        }
    }

    pub fn family(self) -> Family {
        match self {
            Algebra::A1 => Family::Diffusion,
            Algebra::A2 => Family::Filtration,
        }
    }
}

/// `A1 = ⟨∂_t, ∂_x, t∂_t+u∂_u, x∂_x−2u∂_u⟩`,
/// `A2 = ⟨∂_t, ∂_x, ∂_v, t∂_t+v∂_v, x∂_x−v∂_v⟩`.
pub fn lie_generators(algebra: Algebra) -> Vec<ReductionOperator> {
    let rows: &[(&str, &str, &str)] = match algebra {
        Algebra::A1 => &[("1", "0", "0"), ("0", "1", "0"), ("t", "0", "u"), ("0", "x", "-2*u")],
        Algebra::A2 => &[("1", "0", "0"), ("0", "1", "0"), ("0", "0", "1"), ("t", "0", "v"), ("0", "x", "-v")],
    };
    let dep = algebra.family().dep();
    rows.iter().map(|(a, b, c)| ReductionOperator::parse(dep, a, b, c)).collect()
}

/// The discrete symmetries: sign changes of `{t, u}` and `{x}` for `A1`;
/// of `{t, v}`, `{x, v}` and the hodograph map for `A2`.
pub fn discrete_generators(algebra: Algebra) -> Vec<PointTransformation> {
    let (t, x) = (sym("t"), sym("x"));
    match algebra {
        Algebra::A1 => {
            let u = sym("u");
            let a = [-&t, x.clone(), -&u];
            let b = [t.clone(), -&x, u.clone()];
            vec![PointTransformation::new("u", a.clone(), Some(a)), PointTransformation::new("u", b.clone(), Some(b))]
        }
        Algebra::A2 => {
            let v = sym("v");
            let a = [-&t, x.clone(), -&v];
            let b = [t.clone(), -&x, -&v];
            vec![
                PointTransformation::new("v", a.clone(), Some(a)),
                PointTransformation::new("v", b.clone(), Some(b)),
                PointTransformation::hodograph(),
            ]
        }
    }
}

/// Whether `q` is a constant-coefficient combination of the generators of
/// `algebra`, decided by least squares over random real sample points.
pub fn in_span(algebra: Algebra, q: &ReductionOperator, seed: u64) -> Result<bool, OpError> {
    use crate::expr::{eval_real, probe_points};
    use nalgebra::{DMatrix, DVector};
    use std::collections::HashMap;

    let gens = lie_generators(algebra);
    let dep = algebra.family().dep();
    let samples = probe_points(3, 12, true, seed);
    let mut a = DMatrix::<f64>::zeros(samples.len() * 3, gens.len());
    let mut b = DVector::<f64>::zeros(samples.len() * 3);
    let ev = |e: &Expr, env: &HashMap<String, f64>| eval_real(e, env).map_err(|_| OpError::Degenerate);
    for (i, pt) in samples.iter().enumerate() {
        let env: HashMap<String, f64> =
            ["t", "x", dep].iter().zip(pt).map(|(n, z)| (n.to_string(), z.re)).collect();
        for (k, c) in q.coefficients().into_iter().enumerate() {
            b[3 * i + k] = ev(c, &env)?;
            for (j, g) in gens.iter().enumerate() {
                a[(3 * i + k, j)] = ev(g.coefficients()[k], &env)?;
            }
        }
    }
    let svd = a.clone().svd(true, true);
    let c = svd.solve(&b, 1e-12).map_err(|_| OpError::Degenerate)?;
    let r = (&a * c - &b).amax();
    Ok(r <= 1e-9 * (1.0 + b.amax()))
}

/// Lie symmetry check: `Q_(2)(u_t − F)` vanishes on the equation manifold.
pub fn is_lie_symmetry(l: &EvolutionEquation, q: &ReductionOperator, test: &ZeroTest) -> Result<ZeroReport, OpError> {
    Ok(test.check(&lie_invariance_residual(l, q)?)?)
}

/// `∂_x + ((η¹u + η²)/f(u))∂_u`.
pub fn gandarias_ansatz_operator(eta1: &Expr, eta2: &Expr, f: &Expr) -> ReductionOperator {
    let u = sym("u");
    let eta = (eta1 * &u + eta2) / f;
    ReductionOperator { dep: "u".into(), tau: Expr::zero(), xi: Expr::one(), eta }
}

/// Maps `∂_t + ξ(t,x)∂_x + θ(t,x)∂_v` to `∂_x + ((−ξu + θ)/f(u))∂_u`.
pub fn potential_to_nogo(q: &ReductionOperator, f: &Expr) -> Result<ReductionOperator, OpError> {
    if q.dep != "v" {
        return Err(OpError::Mismatch(format!("expected an operator on v, got {}", q.dep)));
    }
    let q = q.normalized()?;
    if !q.tau.is_one_literal() {
        return Err(OpError::NotEvolutionForm);
    }
    for c in [&q.xi, &q.eta] {
        if c.contains_symbol("v") {
            return Err(OpError::DependsOnV(c.to_string()));
        }
    }
    Ok(gandarias_ansatz_operator(&-&q.xi, &q.eta, f))
}

/// Operators are equivalent when all 2×2 minors of their coefficient
/// matrix vanish.
pub fn operators_equivalent(
    q1: &ReductionOperator,
    q2: &ReductionOperator,
    test: &ZeroTest,
) -> Result<ZeroReport, OpError> {
    if q1.dep != q2.dep {
        return Err(OpError::Mismatch(format!("{} vs {}", q1.dep, q2.dep)));
    }
    let a = q1.coefficients();
    let b = q2.coefficients();
    let mut reports = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let minor = a[i] * b[j] - a[j] * b[i];
        let r = test.check(&minor)?;
        let stop = !r.verdict.is_zero();
        reports.push(r);
        if stop {
            break;
        }
    }
    Ok(ZeroReport::all(reports))
}

pub fn operators_equivalent_mod_group(
    g: &GroupElement,
    q1: &ReductionOperator,
    q2: &ReductionOperator,
    test: &ZeroTest,
) -> Result<ZeroReport, OpError> {
    let pushed = push_forward(&g.point_transformation(), q1)?;
    operators_equivalent(&pushed, q2, test)
}

/// First element of `candidates` mapping `q1` to an operator equivalent to
/// `q2`. A cheap probe screens each candidate before the full check.
pub fn search_equivalence(
    candidates: &[GroupElement],
    q1: &ReductionOperator,
    q2: &ReductionOperator,
    test: &ZeroTest,
) -> Result<Option<GroupElement>, OpError> {
    let screen = ZeroTest { probes: 4, ..*test };
    for g in candidates {
        let pushed = push_forward(&g.point_transformation(), q1)?;
        let a = pushed.coefficients();
        let b = q2.coefficients();
        let mut plausible = true;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let minor = a[i] * b[j] - a[j] * b[i];
            match screen.probe(&minor) {
                Ok((_, _, true)) | Err(_) => {}
                Ok((_, _, false)) => {
                    plausible = false;
                    break;
                }
            }
        }
        if plausible && operators_equivalent(&pushed, q2, test)?.verdict.is_zero() {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// Multiplier stability: `λQ` and `Q` get the same verdict.
pub fn multiplier_stable(
    l: &EvolutionEquation,
    q: &ReductionOperator,
    lambda: &Expr,
    test: &ZeroTest,
) -> Result<bool, OpError> {
    let a = is_reduction_operator_with(l, q, test)?.verdict.is_zero();
    let b = is_reduction_operator_with(l, &q.scaled(lambda), test)?.verdict.is_zero();
    Ok(a == b)
}

/// How a catalog operator is checked against its equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// Conditional invariance.
    Reduction,
    /// Lie invariance (the generators of `A1`, `A2`).
    Lie,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogOperator {
    pub key: String,
    pub operator: ReductionOperator,
    pub family: Family,
    pub check: Check,
}

impl CatalogOperator {
    pub fn equation(&self) -> EvolutionEquation {
        match self.family {
            Family::Diffusion => fast_diffusion(),
            Family::Filtration => potential_fast_diffusion(),
        }
    }

    pub fn verify(&self, test: &ZeroTest) -> Result<ZeroReport, OpError> {
        let l = self.equation();
        match self.check {
            Check::Reduction => Ok(is_reduction_operator_with(&l, &self.operator, test)?),
            Check::Lie => is_lie_symmetry(&l, &self.operator, test),
        }
    }
}

/// Selector names of the no-go operators of the fast diffusion equation.
pub const GANDARIAS: [(&str, &str, &str); 5] = [
    ("cot", "1", "-2*cot(x - t)"),
    ("coth", "1", "-2*coth(x - t)"),
    ("tanh", "1", "-2*tanh(x - t)"),
    ("complex1", "I", "-2*coth(x - I*t)"),
    ("complex2", "-I", "2*I*coth(t - I*x)"),
];

/// `∂_t − ∂_x + θ∂_v` with the three potential-level counterparts.
pub const POTENTIAL: [(&str, &str); 3] =
    [("cot", "-2*cot(x - t)"), ("coth", "-2*coth(x - t)"), ("tanh", "-2*tanh(x - t)")];

pub fn potential_operator(theta: &str) -> ReductionOperator {
    ReductionOperator::parse("v", "1", "-1", theta)
}

/// Every catalog operator, sorted by key.
pub fn operator_catalog() -> Vec<CatalogOperator> {
    let mut out = Vec::new();
    for fam in OperatorFamily::all() {
        out.push(CatalogOperator {
            key: fam.key(),
            operator: theorem1_operator(&fam).expect("catalog selectors are valid"),
            family: Family::Filtration,
            check: Check::Reduction,
        });
    }
    for alg in [Algebra::A1, Algebra::A2] {
        for (k, q) in lie_generators(alg).into_iter().enumerate() {
            out.push(CatalogOperator {
                key: format!("lie.{}.{}", alg.name(), k + 1),
                operator: q,
                family: alg.family(),
                check: Check::Lie,
            });
        }
    }
    let inv_u = ex("1/u");
    for (name, e1, e2) in GANDARIAS {
        out.push(CatalogOperator {
            key: format!("gandarias.{name}"),
            operator: gandarias_ansatz_operator(&ex(e1), &ex(e2), &inv_u),
            family: Family::Diffusion,
            check: Check::Reduction,
        });
    }
    for (name, theta) in POTENTIAL {
        out.push(CatalogOperator {
            key: format!("potential.{name}"),
            operator: potential_operator(theta),
            family: Family::Filtration,
            check: Check::Reduction,
        });
    }
    out.sort_by(|a, b| a.key.cmp(&b.key));
    out
}

pub fn lookup_operator(key: &str) -> Result<CatalogOperator, OpError> {
    operator_catalog().into_iter().find(|c| c.key == key).ok_or_else(|| OpError::UnknownKey(key.into()))
}
