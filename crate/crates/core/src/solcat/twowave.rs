//! Solutions `u = (α²/β)(−cot(αx+βt+γ) + cot(αx−βt+δ))` over the complex
//! field.

use crate::expr::{ex, is_zero, sym, Compiled, Expr, Func};

use super::{solution_catalog, Domain, ExactSolution, SolError};

#[derive(Debug, Clone, PartialEq)]
pub struct TwoWave {
    /// `(α, β, γ, δ)`.
    pub params: [Expr; 4],
    /// Difference of cotangents.
    pub waves: ExactSolution,
    /// `(α²/β)·2sin(2βt+γ−δ)/(cos(2βt+γ−δ) − cos(2αx+γ+δ))`.
    pub closed: Expr,
}

pub fn two_wave(alpha: &Expr, beta: &Expr, gamma: &Expr, delta: &Expr) -> Result<TwoWave, SolError> {
    if is_zero(&(alpha * beta))?.verdict.is_zero() {
        return Err(SolError::InvalidParams("alpha*beta must not vanish".into()));
    }
    let (t, x) = (sym("t"), sym("x"));
    let k = alpha.sqr() / beta;
    let a = alpha * &x + beta * &t + gamma;
    let b = alpha * &x - beta * &t + delta;
    let waves = &k * (b.apply(Func::Cot) - a.apply(Func::Cot));
    let phase = 2 * beta * &t + gamma - delta;
    let closed = &k * 2 * phase.apply(Func::Sin)
        / (phase.apply(Func::Cos) - (2 * alpha * &x + gamma + delta).apply(Func::Cos));
    Ok(TwoWave {
        params: [alpha.clone(), beta.clone(), gamma.clone(), delta.clone()],
        waves: ExactSolution::explicit("u", waves, Domain::new((0.1, 1.0), (-1.0, 1.0))),
        closed,
    })
}

/// The six tuples giving real solutions, up to `G1`.
pub fn real_tuple_table() -> Vec<[Expr; 4]> {
    [
        ["1", "1", "0", "0"],
        ["I", "I", "0", "0"],
        ["I", "I", "pi/2", "0"],
        ["I", "I", "pi/2", "pi/2"],
        ["I", "1", "0", "0"],
        ["1", "I", "0", "0"],
    ]
    .iter()
    .map(|row| row.map(ex))
    .collect()
}

/// Catalog solutions whose `u` agrees with `w` (to 1e−9, relative) on the
/// solution's own sample box.
pub fn catalog_matches(w: &TwoWave) -> Vec<String> {
    let cw = Compiled::new(&w.waves.expr);
    let mut hits = Vec::new();
    for s in solution_catalog() {
        let mut seen = 0;
        let agree = s.u.domain.sample(30, 1, &|_, _| true).into_iter().all(|(t, x)| {
            let (Ok(a), Ok(b)) = (w.waves.eval_expr(&cw, t, x), s.u.eval(t, x)) else { return true };
            seen += 1;
            (a - b).norm() <= 1e-9 * (1.0 + b.norm())
        });
        if agree && seen > 5 {
            hits.push(s.id());
        }
    }
    hits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqcat::fast_diffusion;
    use crate::solcat::{nonlie_solution, pde_residual};

    #[test]
    fn first_tuple_is_solution_1p() {
        let w = two_wave(&ex("1"), &ex("1"), &ex("0"), &ex("0")).unwrap();
        let p = nonlie_solution(1).unwrap();
        assert!(is_zero(&(&w.waves.expr - &p.u.expr)).unwrap().verdict.is_zero());
    }

    #[test]
    fn complex_speed_still_solves() {
        let w = two_wave(&ex("1"), &ex("2"), &ex("0"), &ex("0")).unwrap();
        assert!(pde_residual(&w.waves, &fast_diffusion()).unwrap().verdict.is_zero());
        let w = two_wave(&ex("1 + I/2"), &ex("2 - I"), &ex("1/3"), &ex("I")).unwrap();
        assert!(pde_residual(&w.waves, &fast_diffusion()).unwrap().verdict.is_zero());
    }

    #[test]
    fn table_entries_are_real() {
        let mut tuples = real_tuple_table();
        tuples.push(["2", "2", "0", "0"].map(ex));
        for p in tuples {
            let w = two_wave(&p[0], &p[1], &p[2], &p[3]).unwrap();
            let c = Compiled::new(&w.waves.expr);
            for (t, x) in w.waves.domain.sample(50, 3, &|t, x| w.waves.eval_expr(&c, t, x).is_ok()) {
                let z = w.waves.eval(t, x).unwrap();
                assert!(z.im.abs() <= 1e-12 * z.re.abs().max(1.0), "{p:?} at ({t}, {x}): {z}");
            }
        }
        assert!(two_wave(&ex("0"), &ex("1"), &ex("0"), &ex("0")).is_err());
    }

    #[test]
    fn tuples_match_the_non_lie_solutions_in_order() {
        for (i, p) in real_tuple_table().iter().enumerate() {
            let w = two_wave(&p[0], &p[1], &p[2], &p[3]).unwrap();
            assert_eq!(catalog_matches(&w), vec![format!("nonlie.{}p", i + 1)]);
        }
    }

    #[test]
    fn doubled_tuple_is_a_scaling() {
        use crate::opcat::GroupElement;
        use crate::solcat::{apply_group, nonlie_solution};
        let w = two_wave(&ex("2"), &ex("2"), &ex("0"), &ex("0")).unwrap();
        let g = GroupElement::g1([Expr::zero(), Expr::zero(), Expr::int(2), Expr::int(2)]).unwrap();
        let scaled = apply_group(&g, &nonlie_solution(1).unwrap()).unwrap();
        assert!(is_zero(&(&w.waves.expr - &scaled.u.expr)).unwrap().verdict.is_zero());
    }
}
