//! Point transformations of `(t, x, dep)`, the groups acting on the fast
//! diffusion equation and its potential form, and push-forward of operators.

use std::collections::HashMap;

use crate::eqcat::EquivalenceTransform;
use crate::expr::{differentiate, is_zero, sym, Expr};
use crate::jets::ReductionOperator;

use super::OpError;

/// `(t̃, x̃, d̃) = (T, X, U)(t, x, d)` with an optional closed-form inverse
/// `(t, x, d)` written in the tilde variables (which reuse the names `t`,
/// `x`, `d`).
#[derive(Debug, Clone, PartialEq)]
pub struct PointTransformation {
    pub dep: String,
    pub forward: [Expr; 3],
    pub inverse: Option<[Expr; 3]>,
    pub jacobian: Expr,
}

fn vars(dep: &str) -> [&str; 3] {
    ["t", "x", dep]
}

fn substitution(dep: &str, values: &[Expr; 3]) -> HashMap<String, Expr> {
    vars(dep).iter().map(|v| v.to_string()).zip(values.iter().cloned()).collect()
}

impl PointTransformation {
    pub fn new(dep: &str, forward: [Expr; 3], inverse: Option<[Expr; 3]>) -> PointTransformation {
        let v = vars(dep);
        let j: Vec<Vec<Expr>> = forward.iter().map(|c| v.iter().map(|s| differentiate(c, s)).collect()).collect();
        let jacobian = &j[0][0] * (&j[1][1] * &j[2][2] - &j[1][2] * &j[2][1])
            - &j[0][1] * (&j[1][0] * &j[2][2] - &j[1][2] * &j[2][0])
            + &j[0][2] * (&j[1][0] * &j[2][1] - &j[1][1] * &j[2][0]);
        PointTransformation { dep: dep.to_string(), forward, inverse, jacobian }
    }

    pub fn identity(dep: &str) -> PointTransformation {
        let id = vars(dep).map(sym);
        PointTransformation::new(dep, id.clone(), Some(id))
    }

    /// `t̃ = t, x̃ = v, ṽ = x`.
    pub fn hodograph() -> PointTransformation {
        let m = [sym("t"), sym("v"), sym("x")];
        PointTransformation::new("v", m.clone(), Some(m))
    }

    pub fn is_nondegenerate(&self) -> Result<bool, OpError> {
        Ok(!is_zero(&self.jacobian)?.verdict.is_zero())
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &PointTransformation) -> Result<PointTransformation, OpError> {
        if self.dep != other.dep {
            return Err(OpError::Mismatch(format!("{} vs {}", self.dep, other.dep)));
        }
        let inner = substitution(&self.dep, &other.forward);
        let forward = self.forward.clone().map(|c| c.substitute(&inner));
        let inverse = match (&self.inverse, &other.inverse) {
            (Some(a), Some(b)) => {
                let outer = substitution(&self.dep, a);
                Some(b.clone().map(|c| c.substitute(&outer)))
            }
            _ => None,
        };
        Ok(PointTransformation::new(&self.dep, forward, inverse))
    }

    /// Image of the function `f(t, x, d)` under the map, in tilde variables.
    pub fn pull(&self, f: &Expr) -> Result<Expr, OpError> {
        let inv = self.inverse.as_ref().ok_or(OpError::InverseUnavailable)?;
        Ok(f.substitute(&substitution(&self.dep, inv)))
    }
}

/// `Q ↦ (QT)∂_t̃ + (QX)∂_x̃ + (QU)∂_ũ`, re-expressed in the tilde variables.
pub fn push_forward(g: &PointTransformation, q: &ReductionOperator) -> Result<ReductionOperator, OpError> {
    if g.dep != q.dep {
        return Err(OpError::Mismatch(format!("transformation on {} but operator on {}", g.dep, q.dep)));
    }
    let inv = g.inverse.as_ref().ok_or(OpError::InverseUnavailable)?;
    let back = substitution(&g.dep, inv);
    let [tau, xi, eta] = g.forward.clone().map(|c| q.apply(&c).substitute(&back));
    Ok(ReductionOperator::new(&q.dep, tau, xi, eta)?)
}

/// Element of `G1` (on `u`), `G2` (on `v`) or of the equivalence group of
/// the filtration class.
///
/// As point maps, `G1` is `t̃ = ε₃t+ε₁, x̃ = ε₄x+ε₂, ũ = ε₃ε₄⁻²u` and `G2`
/// is `t̃ = ε₃t+ε₁, x̃ = ε₄x+ε₂, ṽ = ε₃ε₄⁻¹v`, or on the hodograph branch
/// `x̃ = ε₃ε₄⁻¹v, ṽ = ε₄x+ε₂`.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupElement {
    G1 { eps: [Expr; 4] },
    G2 { eps: [Expr; 4], hodograph: bool },
    Equivalence(EquivalenceTransform),
}

impl GroupElement {
    pub fn g1(eps: [Expr; 4]) -> Result<GroupElement, OpError> {
        check_scales(&eps)?;
        Ok(GroupElement::G1 { eps })
    }

    pub fn g2(eps: [Expr; 4], hodograph: bool) -> Result<GroupElement, OpError> {
        check_scales(&eps)?;
        Ok(GroupElement::G2 { eps, hodograph })
    }

    pub fn equivalence(e: EquivalenceTransform) -> Result<GroupElement, OpError> {
        if is_zero(&e.determinant())?.verdict.is_zero() {
            return Err(OpError::Degenerate);
        }
        Ok(GroupElement::Equivalence(e))
    }

    pub fn tag(&self) -> &'static str {
        match self {
            GroupElement::G1 { .. } => "G1",
            GroupElement::G2 { .. } => "G2",
            GroupElement::Equivalence(_) => "G~",
        }
    }

    pub fn point_transformation(&self) -> PointTransformation {
        let (t, x) = (sym("t"), sym("x"));
        match self {
            GroupElement::G1 { eps: [e1, e2, e3, e4] } => {
                let u = sym("u");
                let k = e3 / e4.sqr();
                PointTransformation::new(
                    "u",
                    [e3 * &t + e1, e4 * &x + e2, &k * &u],
                    Some([(&t - e1) / e3, (&x - e2) / e4, &u / &k]),
                )
            }
            GroupElement::G2 { eps: [e1, e2, e3, e4], hodograph } => {
                let v = sym("v");
                let k = e3 / e4;
                if *hodograph {
                    PointTransformation::new(
                        "v",
                        [e3 * &t + e1, &k * &v, e4 * &x + e2],
                        Some([(&t - e1) / e3, (&v - e2) / e4, &x / &k]),
                    )
                } else {
                    PointTransformation::new(
                        "v",
                        [e3 * &t + e1, e4 * &x + e2, &k * &v],
                        Some([(&t - e1) / e3, (&x - e2) / e4, &v / &k]),
                    )
                }
            }
            GroupElement::Equivalence(e) => {
                let v = sym("v");
                let [[a, b], [c, d]] = &e.m;
                let det = a * d - b * c;
                let (xs, vs) = (&x - &e.shift[0], &v - &e.shift[1]);
                PointTransformation::new(
                    "v",
                    [&e.e1 * &t + &e.e2, a * &x + b * &v + &e.shift[0], c * &x + d * &v + &e.shift[1]],
                    Some([(&t - &e.e2) / &e.e1, (d * &xs - b * &vs) / &det, (a * &vs - c * &xs) / &det]),
                )
            }
        }
    }
}

fn check_scales(eps: &[Expr; 4]) -> Result<(), OpError> {
    if is_zero(&(&eps[2] * &eps[3]))?.verdict.is_zero() {
        return Err(OpError::Degenerate);
    }
    Ok(())
}

/// The sampled `G2` grid: `ε₁…ε₄ ∈ {−2, −1, −½, ½, 1, 2}` on both branches.
pub fn g2_sample_grid() -> Vec<GroupElement> {
    let values: Vec<Expr> =
        [(-2, 1), (-1, 1), (-1, 2), (1, 2), (1, 1), (2, 1)].iter().map(|&(n, d)| Expr::rational(n, d)).collect();
    let mut out = Vec::new();
    for hodograph in [false, true] {
        for a in &values {
            for b in &values {
                for c in &values {
                    for d in &values {
                        out.push(GroupElement::G2 { eps: [a.clone(), b.clone(), c.clone(), d.clone()], hodograph });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ex;

    fn op(tau: &str, xi: &str, eta: &str) -> ReductionOperator {
        ReductionOperator::parse("v", tau, xi, eta)
    }

    #[test]
    fn hodograph_swaps_x_and_v() {
        let h = PointTransformation::hodograph();
        assert_eq!(push_forward(&h, &op("0", "0", "1")).unwrap(), op("0", "1", "0"));
        assert_eq!(push_forward(&h, &op("1", "0", "0")).unwrap(), op("1", "0", "0"));
        assert_eq!(push_forward(&h, &op("1", "x", "v^2")).unwrap(), op("1", "x^2", "v"));
    }

    #[test]
    fn scaling_pushes_dt_to_multiple() {
        let g = GroupElement::g2([Expr::zero(), Expr::zero(), Expr::int(2), Expr::one()], false).unwrap();
        let q = push_forward(&g.point_transformation(), &op("1", "0", "0")).unwrap();
        assert_eq!(q, op("2", "0", "0"));
    }

    #[test]
    fn inverses_are_inverses() {
        for g in [
            GroupElement::g1([Expr::int(1), Expr::int(-2), Expr::rational(1, 2), Expr::int(3)]).unwrap(),
            GroupElement::g2([Expr::int(1), Expr::int(2), Expr::int(-1), Expr::rational(3, 2)], true).unwrap(),
            GroupElement::equivalence(EquivalenceTransform::new(2, 1, [[1, 2], [1, 3]], [1, -1])).unwrap(),
        ] {
            let p = g.point_transformation();
            let inv = p.inverse.clone().unwrap();
            let back = PointTransformation::new(&p.dep, inv.clone(), Some(p.forward.clone()));
            let id = p.compose(&back).unwrap();
            for (c, v) in id.forward.iter().zip(vars(&p.dep)) {
                assert_eq!(c.expand(), sym(v), "{}", g.tag());
            }
            assert!(p.is_nondegenerate().unwrap());
        }
    }

    #[test]
    fn degenerate_elements_are_rejected() {
        assert!(GroupElement::g1([Expr::zero(), Expr::zero(), Expr::zero(), Expr::one()]).is_err());
        assert!(GroupElement::equivalence(EquivalenceTransform::new(1, 0, [[1, 1], [1, 1]], [0, 0])).is_err());
    }

    #[test]
    fn jacobian_of_hodograph() {
        assert_eq!(PointTransformation::hodograph().jacobian, ex("-1"));
        assert_eq!(g2_sample_grid().len(), 2 * 6usize.pow(4));
    }
}
