//! Profiles defined by a first-order ODE `h′(w) = R(h, w)` along an
//! argument `w(t, x)`, integrated numerically from an anchor.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::expr::{differentiate, eval_real, ex, sym, Compiled, Expr};

use super::SolError;

/// Fixed RK4 step.
pub const STEP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    /// Symbol standing for the profile value in solution formulas.
    pub symbol: String,
    /// `w` as a function of `(t, x)`.
    pub argument: Expr,
    /// `R` in the symbols `symbol` and `w`.
    pub rhs: Expr,
    /// `(w₀, h(w₀))`.
    pub anchor: (f64, f64),
}

impl Profile {
    /// `h(ϑ) = ∫ dϑ/(ϑ − 1 + μe^{−ϑ})` along `ϑ = x/t`, with `h(ϑ₀) = 0`.
    /// `ϑ₀ = 1` for `μ = 1`; `ϑ₀ = 2` otherwise (the branch `ϑ > 1.2785…`
    /// for `μ = −1`).
    pub fn quadrature(mu: i64) -> Profile {
        let theta0 = if mu == 1 { 1.0 } else { 2.0 };
        Profile {
            symbol: "h".into(),
            argument: ex("x/t"),
            rhs: ex(&format!("1/(w - 1 + {mu}*exp(-w))")),
            anchor: (theta0, 0.0),
        }
    }

    /// `ϑ(ω)` with `ϑ′ = ϑ − 1 + μe^{−ϑ}`, `ω = x − ln|t|`, `ϑ(0) = ϑ₀`
    /// (same anchors as [`Profile::quadrature`], so the two are hodograph
    /// images of each other).
    pub fn implicit(mu: i64) -> Profile {
        let theta0 = if mu == 1 { 1.0 } else { 2.0 };
        Profile {
            symbol: "th".into(),
            argument: ex("x - ln(t)"),
            rhs: ex(&format!("th - 1 + {mu}*exp(-th)")),
            anchor: (0.0, theta0),
        }
    }

    /// `∂h/∂var = R(h, w(t,x))·∂w/∂var`.
    pub fn derivative(&self, var: &str) -> Expr {
        self.rhs.subs("w", &self.argument) * differentiate(&self.argument, var)
    }

    pub fn substitute(&self, map: &HashMap<String, Expr>) -> Profile {
        Profile { argument: self.argument.substitute(map), ..self.clone() }
    }

    /// `h(w)` by RK4 from the anchor with steps of at most [`STEP`].
    pub fn value(&self, w: f64) -> Result<f64, SolError> {
        let f = Compiled::new(&self.rhs);
        let slots: Vec<bool> = f.vars().iter().map(|v| v == "w").collect();
        if f.vars().iter().any(|v| v != "w" && v != &self.symbol) {
            return Err(SolError::InvalidParams(format!("profile right-hand side {}", self.rhs)));
        }
        let r = |h: f64, w: f64| -> Result<f64, SolError> {
            let vals: Vec<Complex64> = slots.iter().map(|&is_w| Complex64::new(if is_w { w } else { h }, 0.0)).collect();
            Ok(f.eval_slots(&vals)?.re)
        };
        let (w0, h0) = self.anchor;
        let n = ((w - w0).abs() / STEP).ceil().max(1.0) as usize;
        let dw = (w - w0) / n as f64;
        let mut h = h0;
        for k in 0..n {
            let wk = w0 + k as f64 * dw;
            let k1 = r(h, wk)?;
            let k2 = r(h + 0.5 * dw * k1, wk + 0.5 * dw)?;
            let k3 = r(h + 0.5 * dw * k2, wk + 0.5 * dw)?;
            let k4 = r(h + dw * k3, wk + dw)?;
            h += dw * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        }
        if !h.is_finite() {
            return Err(SolError::InvalidParams(format!("profile blew up before w = {w}")));
        }
        Ok(h)
    }

    pub fn value_at(&self, t: f64, x: f64) -> Result<f64, SolError> {
        let env: HashMap<String, f64> = [("t".to_string(), t), ("x".to_string(), x)].into();
        self.value(eval_real(&self.argument, &env)?)
    }

    pub fn symbol_expr(&self) -> Expr {
        sym(&self.symbol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_profile_matches_closed_form() {
        // μ = 0: ϑ′ = ϑ − 1, ϑ(0) = 2 gives ϑ = 1 + e^ω.
        let p = Profile::implicit(0);
        for w in [-1.5, -0.2, 0.0, 0.7, 1.6] {
            assert!((p.value(w).unwrap() - (1.0 + f64::exp(w))).abs() < 1e-11);
        }
        // μ = 0 quadrature: ∫ dϑ/(ϑ − 1) from 2 is ln(ϑ − 1).
        let q = Profile::quadrature(0);
        assert!((q.value(3.5).unwrap() - f64::ln(2.5)).abs() < 1e-11);
    }

    #[test]
    fn quadrature_inverts_implicit_profile() {
        for mu in [-1, 1] {
            let (q, p) = (Profile::quadrature(mu), Profile::implicit(mu));
            for theta in [1.5, 2.2, 3.0] {
                let w = q.value(theta).unwrap();
                assert!((p.value(w).unwrap() - theta).abs() < 1e-9, "mu={mu} theta={theta}");
            }
        }
    }
}
