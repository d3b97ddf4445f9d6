use std::collections::HashMap;

use proptest::prelude::*;

use fdsym::eqcat::{fast_diffusion, potential_fast_diffusion};
use fdsym::expr::{differentiate, eval_real, ex, is_zero, parse, Expr, Func, ZeroTest};
use fdsym::fdsim::{simulate, Grid, Law, Scheme, SIGMA};
use fdsym::jets::is_reduction_operator_with;
use fdsym::opcat::{multiplier_stable, operator_catalog, Check, GroupElement};
use fdsym::reduce::{separation_check, Separation};
use fdsym::solcat::{
    apply_group, apply_hodograph, lookup_solutions, pde_residual, Domain, ExactSolution, PairSampler,
};

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(ex("t")),
        Just(ex("x")),
        Just(ex("u")),
        (-5i64..=5).prop_map(Expr::int),
        (-5i64..=5, 1i64..=4).prop_map(|(n, d)| Expr::rational(n, d)),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), -3i64..=3).prop_map(|(a, n)| a.powi(n)),
            inner.clone().prop_map(|a| a.apply(Func::Sin)),
            inner.clone().prop_map(|a| a.apply(Func::Exp)),
            inner.prop_map(|a| a.apply(Func::Tanh)),
        ]
    })
}

fn small() -> impl Strategy<Value = i64> {
    prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)]
}

fn at(t: f64, x: f64, u: f64) -> HashMap<String, f64> {
    [("t".to_string(), t), ("x".to_string(), x), ("u".to_string(), u)].into()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn printing_round_trips(e in expr()) {
        let back = parse(&e.to_string()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn product_rule(a in expr(), b in expr(), t in 0.1f64..1.0, x in 0.1f64..1.0) {
        let lhs = differentiate(&(&a * &b), "x");
        let rhs = differentiate(&a, "x") * &b + &a * differentiate(&b, "x");
        let p = at(t, x, 0.7);
        if let (Ok(l), Ok(r)) = (eval_real(&lhs, &p), eval_real(&rhs, &p)) {
            prop_assert!((l - r).abs() <= 1e-8 * (1.0 + l.abs() + r.abs()), "{l} vs {r}");
        }
    }

    #[test]
    fn derivative_matches_difference_quotient(e in expr(), t in 0.2f64..0.9, x in 0.2f64..0.9) {
        let d = differentiate(&e, "x");
        let h = 1e-6;
        let (Ok(a), Ok(b), Ok(c)) = (eval_real(&e, &at(t, x + h, 0.5)), eval_real(&e, &at(t, x - h, 0.5)), eval_real(&d, &at(t, x, 0.5))) else {
            return Ok(());
        };
        let q = (a - b) / (2.0 * h);
        prop_assume!(q.abs() < 1e4 && c.abs() < 1e4);
        prop_assert!((q - c).abs() <= 1e-4 * (1.0 + c.abs()), "{q} vs {c}");
    }

    #[test]
    fn g1_covariance(e1 in small(), e2 in small(), e3 in small(), e4 in small(), key in prop::sample::select(vec!["lie.2", "lie.5", "lie.6", "lie.7", "nonlie.1p", "nonlie.4p"])) {
        let g = GroupElement::g1([Expr::int(e1), Expr::int(e2), Expr::int(e3), Expr::int(e4)]).unwrap();
        let s = lookup_solutions(key).remove(0);
        let image = apply_group(&g, &s).unwrap();
        prop_assert!(pde_residual(&image.u, &fast_diffusion()).unwrap().verdict.is_zero());
        prop_assert!(pde_residual(&image.v, &potential_fast_diffusion()).unwrap().verdict.is_zero());
    }

    #[test]
    fn hodograph_involution(k in 1usize..8, key in prop::sample::select(vec!["lie.5", "lie.6", "nonlie.3p", "nonlie.4p"])) {
        let p = lookup_solutions(key).remove(0);
        let (t0, t1) = p.domain().t;
        let t = 0.5 * (t0 + t1);
        let twice = apply_hodograph(apply_hodograph(p.clone()).unwrap()).unwrap();
        let (a, b) = p.x_interval(t).unwrap();
        let x = a + (b - a) * k as f64 / 8.0;
        let (u, v) = p.uv(t, x).unwrap();
        prop_assert!((twice.u_at(t, x).unwrap() - u).abs() <= 1e-8 * (1.0 + u.abs()));
        prop_assert!((twice.v_at(t, x).unwrap() - v).abs() <= 1e-8 * (1.0 + v.abs()));
    }

    #[test]
    fn multipliers_keep_verdicts(i in 0usize..41, m in prop::sample::select(vec!["3", "1 + x^2", "exp(t)", "2 + sin(x)^2"])) {
        let cat: Vec<_> = operator_catalog().into_iter().filter(|c| c.check == Check::Reduction).collect();
        let c = &cat[i % cat.len()];
        let test = ZeroTest { probes: 16, ..ZeroTest::default() };
        prop_assert!(multiplier_stable(&c.equation(), &c.operator, &ex(m), &test).unwrap());
        if c.key.starts_with("thm1.") {
            prop_assert!(is_reduction_operator_with(&c.equation(), &c.operator, &test).unwrap().verdict.is_zero());
        }
    }

    #[test]
    fn traveling_sums_separate(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3) {
        let v = ex(&format!("{a}*(x + t)^3 + {b}*sin(x - t) + {c}*exp(x + t)"));
        prop_assert!(separation_check(&v, Separation::AdditiveTraveling, None).unwrap().verdict.is_zero());
        let w = ex(&format!("({a}^2 + 1)*exp(t)*cos(x)*({c}^2 + 2)"));
        prop_assert!(separation_check(&w, Separation::Multiplicative, None).unwrap().verdict.is_zero());
    }

    #[test]
    fn constants_are_preserved(num in 1i64..20, den in 1i64..5) {
        let c = ExactSolution::explicit("u", Expr::rational(num, den), Domain::new((0.0, 1.0), (0.0, 1.0)));
        let g = Grid::stable(Law::Diffusion, &c, (0.0, 1.0), 17, (0.0, 0.1), SIGMA).unwrap();
        prop_assert!(simulate(&fast_diffusion(), &c, &g, Scheme::Explicit).unwrap().max_err() <= 1e-13 * (num as f64));
    }
}

#[test]
fn zero_test_rejects_perturbation() {
    let e = ex("sin(x)^2 + cos(x)^2 - 1");
    assert!(is_zero(&e).unwrap().verdict.is_zero());
    assert!(!is_zero(&(e + ex("1/10^6"))).unwrap().verdict.is_zero());
}
