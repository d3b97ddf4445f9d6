//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::time::Instant;

use fdsym::eqcat::{
    derive_determining_tau1, fast_diffusion, potential_fast_diffusion, reference_eta_system, reference_tau1_system,
    restrict_v_independent, systems_equivalent,
};
use fdsym::expr::{ex, Compiled, Expr, ZeroTest};
use fdsym::fdsim::{convergence_study, simulate, Grid, Law, Scheme, SIGMA};
use fdsym::jets::{is_reduction_operator_with, ReductionOperator};
use fdsym::opcat::{
    g2_sample_grid, gandarias_ansatz_operator, multiplier_stable, operator_catalog, operators_equivalent,
    potential_operator, potential_to_nogo, push_forward, theorem1_operator, OperatorFamily, Profile, GANDARIAS,
    POTENTIAL,
};
use fdsym::reduce::{lookup_reduction, separation_catalog, separation_check, LEFTOVER_TOLERANCE};
use fdsym::solcat::{
    arrow_table, check_arrow, lie_solution, real_tuple_table, solution_catalog, two_wave, Domain, ExactSolution,
    ARROW_TOLERANCE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_operator_catalog() -> Outcome {
    let start = Instant::now();
    let l = potential_fast_diffusion();
    let test = ZeroTest { probes: 64, tolerance: 1e-9, ..ZeroTest::default() };
    let fams = OperatorFamily::all();
    let mut worst: f64 = 0.0;
    for fam in &fams {
        let q = theorem1_operator(fam).map_err(|e| format!("{fam}: {e}"))?;
        let r = is_reduction_operator_with(&l, &q, &test).map_err(|e| format!("{fam}: {e}"))?;
        ensure(r.verdict.is_zero(), format!("{fam}: {r:?}"))?;
        worst = worst.max(r.max_abs);
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, format!("took {secs:.1} s"))?;
    Ok(format!("{} instantiations, max probe {worst:.1e}, {secs:.2} s", fams.len()))
}

fn c2_determining_system() -> Outcome {
    let derived = derive_determining_tau1(&ex("1/v_x")).map_err(|e| e.to_string())?;
    ensure(systems_equivalent(&derived, &reference_tau1_system()), "tau = 1 system differs")?;
    let restricted = restrict_v_independent(&derived);
    ensure(systems_equivalent(&restricted, &reference_eta_system()), "eta system differs")?;
    Ok(format!("{} + {} equations match", derived.residuals.len(), restricted.residuals.len()))
}

fn c3_solution_catalog() -> Outcome {
    let cat = solution_catalog();
    let lie: std::collections::BTreeSet<_> = cat.iter().filter(|s| s.key.starts_with("lie.")).map(|s| &s.key).collect();
    let non: std::collections::BTreeSet<_> =
        cat.iter().filter(|s| s.key.starts_with("nonlie.")).map(|s| &s.key).collect();
    ensure(lie.len() == 8 && non.len() == 6, format!("{} Lie and {} non-Lie keys", lie.len(), non.len()))?;
    let mut worst: f64 = 0.0;
    for s in &cat {
        let r = s.verify().map_err(|e| format!("{}: {e}", s.id()))?;
        ensure(r.verdict.is_zero(), format!("{}: {r:?}", s.id()))?;
        worst = worst.max(r.max_abs);
    }
    Ok(format!("{} instances, max residual {worst:.1e}", cat.len()))
}

fn c4_two_wave() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    let mut tuples = 0;
    while tuples < 50 {
        let mut c = || {
            let (a, b): (i64, i64) = (rng.gen_range(-16..=16), rng.gen_range(-16..=16));
            Expr::rational(a, 8) + Expr::rational(b, 8) * Expr::i()
        };
        let p = [c(), c(), c(), c()];
        let Ok(w) = two_wave(&p[0], &p[1], &p[2], &p[3]) else { continue };
        let (cw, cc) = (Compiled::new(&w.waves.expr), Compiled::new(&w.closed));
        let pts = w.waves.domain.sample(20, tuples as u64, &|t, x| {
            w.waves.eval_expr(&cw, t, x).is_ok() && w.waves.eval_expr(&cc, t, x).is_ok()
        });
        if pts.is_empty() {
            continue;
        }
        for (t, x) in pts {
            let a = w.waves.eval_expr(&cw, t, x).unwrap();
            let b = w.waves.eval_expr(&cc, t, x).unwrap();
            let rel = (a - b).norm() / (1.0 + a.norm());
            ensure(rel <= 1e-10, format!("{p:?} at ({t}, {x}): {a} vs {b}"))?;
            worst = worst.max(rel);
        }
        tuples += 1;
    }
    let mut worst_im: f64 = 0.0;
    for p in real_tuple_table() {
        let w = two_wave(&p[0], &p[1], &p[2], &p[3]).map_err(|e| e.to_string())?;
        let c = Compiled::new(&w.waves.expr);
        let (t0, t1) = w.waves.domain.t;
        let (x0, x1) = w.waves.domain.x;
        for i in 0..20 {
            for j in 0..20 {
                let t = t0 + (t1 - t0) * (i as f64 + 0.5) / 20.0;
                let x = x0 + (x1 - x0) * (j as f64 + 0.5) / 20.0;
                let Ok(z) = w.waves.eval_expr(&c, t, x) else { continue };
                ensure(z.im.abs() <= 1e-12, format!("{p:?} at ({t}, {x}): {z}"))?;
                worst_im = worst_im.max(z.im.abs());
            }
        }
    }
    Ok(format!("50 complex tuples, max rel {worst:.1e}; 6 real tuples, max |Im u| {worst_im:.1e}"))
}

fn c5_arrows() -> Outcome {
    let table = arrow_table();
    let lie = table.iter().filter(|a| a.id.starts_with("arrow.lie.")).count();
    let non = table.iter().filter(|a| a.id.starts_with("arrow.nonlie.")).count();
    ensure(lie == 8 && non == 7, format!("{lie} + {non} arrows"))?;
    let mut worst: f64 = 0.0;
    for a in &table {
        let r = check_arrow(a).map_err(|e| format!("{}: {e}", a.id))?;
        ensure(r.max_u_error <= ARROW_TOLERANCE && r.v_spread <= ARROW_TOLERANCE, format!("{}: {r:?}", a.id))?;
        worst = worst.max(r.max_u_error.max(r.v_spread));
    }
    Ok(format!("15/15 arrows, max mismatch {worst:.1e}"))
}

fn c6_proposition() -> Outcome {
    let inv_u = ex("1/u");
    for ((name, theta), (gname, e1, e2)) in POTENTIAL.iter().zip(GANDARIAS.iter()) {
        ensure(name == gname, "tables out of order")?;
        let q = potential_to_nogo(&potential_operator(theta), &inv_u).map_err(|e| e.to_string())?;
        let g = gandarias_ansatz_operator(&ex(e1), &ex(e2), &inv_u);
        ensure(q.eta.expand() == g.eta.expand() && q.xi == g.xi && q.tau == g.tau, format!("{name}: {q} vs {g}"))?;
    }
    let test = ZeroTest::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut n = 0;
    while n < 5 {
        let mut k = || rng.gen_range(-3..=3);
        let xi = format!("{} + {}*x + {}*t", k(), k(), k());
        let theta = format!("{}*x^2 + {}*t*x + {}", k(), k(), k());
        let q = ReductionOperator::parse("v", "1", &xi, &theta);
        let a = is_reduction_operator_with(&potential_fast_diffusion(), &q, &test).map_err(|e| e.to_string())?;
        if a.verdict.is_zero() {
            continue;
        }
        let m = potential_to_nogo(&q, &inv_u).map_err(|e| e.to_string())?;
        let b = is_reduction_operator_with(&fast_diffusion(), &m, &test).map_err(|e| e.to_string())?;
        ensure(a.verdict.is_zero() == b.verdict.is_zero(), format!("({xi}, {theta}): {a:?} vs {b:?}"))?;
        n += 1;
    }
    Ok("3 operators map exactly; 5 random pairs agree".into())
}

fn c7_equivalence_laws() -> Outcome {
    let test = ZeroTest { probes: 32, ..ZeroTest::default() };
    let cat = operator_catalog();
    let pairs: Vec<_> = cat.iter().step_by(cat.len() / 10).take(10).collect();
    ensure(pairs.len() == 10, "fewer than 10 catalog pairs")?;
    for c in &pairs {
        let l = c.equation();
        for m in ["2", "1 + t^2", "exp(x)"] {
            let ok = multiplier_stable(&l, &c.operator, &ex(m), &test).map_err(|e| format!("{}: {e}", c.key))?;
            ensure(ok, format!("{} with multiplier {m}", c.key))?;
        }
    }
    let grid = g2_sample_grid();
    let picks: Vec<_> = (0..6).map(|k| grid[(k * 431 + 7) % grid.len()].clone()).collect();
    let q = theorem1_operator(&OperatorFamily::Case1 { eps: 0, f: Profile::Inverse }).map_err(|e| e.to_string())?;
    for g in &picks {
        for h in &picks {
            let (pg, ph) = (g.point_transformation(), h.point_transformation());
            let composed = pg.compose(&ph).map_err(|e| e.to_string())?;
            let once = push_forward(&composed, &q).map_err(|e| e.to_string())?;
            let twice = push_forward(&pg, &push_forward(&ph, &q).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let r = operators_equivalent(&once, &twice, &test).map_err(|e| e.to_string())?;
            ensure(r.verdict.is_zero(), format!("{g:?} ∘ {h:?}: {r:?}"))?;
        }
    }
    Ok("10 pairs × 3 multipliers stable; action law on 6 × 6 G2 elements".into())
}

fn c8_reduction() -> Outcome {
    let mut notes = Vec::new();
    for key in ["reduce.case1.eps=0.f=inv", "reduce.stationary"] {
        let r = lookup_reduction(key).map_err(|e| e.to_string())?;
        let (ode, wit) = r.verify().map_err(|e| format!("{key}: {e}"))?;
        ensure(ode.leftover_drift <= LEFTOVER_TOLERANCE, format!("{key}: drift {}", ode.leftover_drift))?;
        ensure(!wit.is_empty(), format!("{key}: no witness"))?;
        for (id, z) in &wit {
            ensure(z.verdict.is_zero(), format!("{key} with {id}: {z:?}"))?;
        }
        notes.push(format!("{key}: {} = 0", ode.residual));
    }
    Ok(notes.join("; "))
}

fn c9_numerics() -> Outcome {
    let start = Instant::now();
    let l = fast_diffusion();
    let mut orders = Vec::new();
    for (index, eps, t, levels) in [(4u8, 1i64, (1.0, 2.0), 4usize), (6, 0, (-2.0, -1.0), 4)] {
        let s = lie_solution(index, eps, 0).map_err(|e| e.to_string())?.u;
        let g = Grid::stable(Law::Diffusion, &s, (-1.0, 1.0), 11, t, SIGMA).map_err(|e| e.to_string())?;
        let r = convergence_study(&l, &s, &g, levels, Scheme::Explicit).map_err(|e| e.to_string())?;
        let p = r.observed_order().ok_or("no order")?;
        ensure((p - 2.0).abs() <= 0.3, format!("lie.{index}: order {p:.3}\n{}", r.to_csv()))?;
        orders.push(format!("lie.{index} order {p:.3}"));
    }
    let one = ExactSolution::explicit("u", ex("1"), Domain::new((0.0, 1.0), (0.0, 1.0)));
    let g = Grid::stable(Law::Diffusion, &one, (0.0, 1.0), 21, (0.0, 1.0), SIGMA).map_err(|e| e.to_string())?;
    let e = simulate(&l, &one, &g, Scheme::Explicit).map_err(|e| e.to_string())?.max_err();
    ensure(e <= 1e-13, format!("constant error {e:e}"))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, format!("took {secs:.1} s"))?;
    Ok(format!("{}; constant error {e:.1e}; {secs:.2} s", orders.join(", ")))
}

fn c10_separation() -> Outcome {
    let cat = separation_catalog();
    for (s, mode) in &cat {
        let r = separation_check(&s.v.expr, *mode, None).map_err(|e| e.to_string())?;
        ensure(r.verdict.is_zero(), format!("{} {mode:?}: {r:?}", s.id()))?;
    }
    let bad = separation_check(&ex("x + t^2"), fdsym::reduce::Separation::AdditiveTraveling, None)
        .map_err(|e| e.to_string())?;
    ensure(!bad.verdict.is_zero(), "x + t^2 separated")?;
    Ok(format!("{} v-forms separate", cat.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 operator catalog soundness", c1_operator_catalog),
        ("2 determining-system derivation", c2_determining_system),
        ("3 solution catalog soundness", c3_solution_catalog),
        ("4 two-wave identity and realness", c4_two_wave),
        ("5 hodograph arrow tables", c5_arrows),
        ("6 potential/no-go coherence", c6_proposition),
        ("7 equivalence laws", c7_equivalence_laws),
        ("8 reduction", c8_reduction),
        ("9 numerics", c9_numerics),
        ("10 separation structure", c10_separation),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{}/10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
