//! Finite-difference evolution of the fast diffusion equation, written as
//! `u_t = (ln u)_xx`, and of its potential form `v_t = v_xx/v_x`, with
//! Dirichlet data and error measurement taken from an exact solution.

use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::eqcat::{fast_diffusion, potential_fast_diffusion};
use crate::expr::Compiled;
use crate::jets::EvolutionEquation;
use crate::solcat::{ExactSolution, SolError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("grid rejected: {0}")]
    BadGrid(String),
    #[error("oracle undefined on the space-time box at t = {t}, x = {x}: {reason}")]
    Oracle { t: f64, x: f64, reason: String },
    #[error("u = {value} ≤ 0 at t = {t}, x = {x}")]
    Positivity { t: f64, x: f64, value: f64 },
    #[error("|v_x| below {guard} at t = {t}, x = {x}")]
    DegenerateSlope { t: f64, x: f64, guard: f64 },
    #[error("Newton iteration did not converge at t = {t} (residual {residual:e})")]
    Newton { t: f64, residual: f64 },
    #[error("only the fast diffusion equation and its potential form are supported")]
    Unsupported,
    #[error("a convergence study needs at least 3 levels, got {0}")]
    TooFewLevels(usize),
}

pub const SIGMA: f64 = 0.2;
pub const SLOPE_GUARD: f64 = 1e-10;
pub const NEWTON_TOLERANCE: f64 = 1e-12;
pub const NEWTON_ITERATIONS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    /// `u_t = (ln u)_xx`.
    Diffusion,
    /// `v_t = v_xx/v_x`.
    Filtration,
}

impl Law {
    pub fn of(l: &EvolutionEquation) -> Result<Law, SimError> {
        if *l == fast_diffusion() {
            Ok(Law::Diffusion)
        } else if *l == potential_fast_diffusion() {
            Ok(Law::Filtration)
        } else {
            Err(SimError::Unsupported)
        }
    }

    /// Discrete right-hand side at interior node `i`.
    fn rhs(self, w: &[f64], i: usize, h: f64) -> f64 {
        match self {
            Law::Diffusion => (w[i + 1].ln() - 2.0 * w[i].ln() + w[i - 1].ln()) / (h * h),
            Law::Filtration => {
                let d2 = (w[i + 1] - 2.0 * w[i] + w[i - 1]) / (h * h);
                let d1 = (w[i + 1] - w[i - 1]) / (2.0 * h);
                d2 / d1
            }
        }
    }

    /// `∂ rhs_i / ∂ w_{i-1}, w_i, w_{i+1}`.
    fn jacobian(self, w: &[f64], i: usize, h: f64) -> [f64; 3] {
        let h2 = h * h;
        match self {
            Law::Diffusion => [1.0 / (h2 * w[i - 1]), -2.0 / (h2 * w[i]), 1.0 / (h2 * w[i + 1])],
            Law::Filtration => {
                let d2 = (w[i + 1] - 2.0 * w[i] + w[i - 1]) / h2;
                let d1 = (w[i + 1] - w[i - 1]) / (2.0 * h);
                let g = d2 / (d1 * d1) / (2.0 * h);
                [1.0 / (h2 * d1) + g, -2.0 / (h2 * d1), 1.0 / (h2 * d1) - g]
            }
        }
    }

    fn admissible(self, w: &[f64], t: f64, x0: f64, h: f64) -> Result<(), SimError> {
        match self {
            Law::Diffusion => match w.iter().position(|&u| !(u > 0.0)) {
                Some(i) => Err(SimError::Positivity { t, x: x0 + i as f64 * h, value: w[i] }),
                None => Ok(()),
            },
            Law::Filtration => {
                for i in 1..w.len() - 1 {
                    if ((w[i + 1] - w[i - 1]) / (2.0 * h)).abs() < SLOPE_GUARD || !w[i].is_finite() {
                        return Err(SimError::DegenerateSlope { t, x: x0 + i as f64 * h, guard: SLOPE_GUARD });
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Explicit,
    /// Crank–Nicolson steps solved by Newton's method.
    ImplicitNewton,
}

/// Space-time box, node count and step. For the explicit scheme
/// `dt ≤ σh²` and, more precisely, `dt ≤ σh²/D` with `D` the largest local
/// diffusivity (`1/u` or `1/v_x`) of the oracle on the box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x: (f64, f64),
    pub n: usize,
    pub t: (f64, f64),
    pub dt: f64,
    pub sigma: f64,
}

impl Grid {
    pub fn new(x: (f64, f64), n: usize, t: (f64, f64), dt: f64, sigma: f64) -> Result<Grid, SimError> {
        if n < 8 {
            return Err(SimError::BadGrid(format!("N = {n} < 8")));
        }
        if !(x.1 > x.0) || !(t.1 > t.0) {
            return Err(SimError::BadGrid("empty interval".into()));
        }
        if !(dt > 0.0) {
            return Err(SimError::BadGrid(format!("dt = {dt}")));
        }
        let steps = ((t.1 - t.0) / dt).ceil().max(1.0);
        Ok(Grid { x, n, t, dt: (t.1 - t.0) / steps, sigma })
    }

    /// Explicit-stable grid: `dt = σh²/max(D, 1)`, `D` sampled from the
    /// oracle on a 41 × N lattice of the box.
    pub fn stable(law: Law, oracle: &ExactSolution, x: (f64, f64), n: usize, t: (f64, f64), sigma: f64) -> Result<Grid, SimError> {
        let h = (x.1 - x.0) / (n.max(2) - 1) as f64;
        let probe = Oracle::new(oracle, law);
        let mut d: f64 = 1.0;
        for k in 0..=40 {
            let tk = t.0 + (t.1 - t.0) * k as f64 / 40.0;
            let row = probe.row(tk, x.0, h, n)?;
            law.admissible(&row, tk, x.0, h)?;
            for i in 1..n - 1 {
                let local = match law {
                    Law::Diffusion => 1.0 / row[i],
                    Law::Filtration => 2.0 * h / (row[i + 1] - row[i - 1]).abs(),
                };
                d = d.max(local);
            }
        }
        Grid::new(x, n, t, sigma * h * h / d, sigma)
    }

    pub fn h(&self) -> f64 {
        (self.x.1 - self.x.0) / (self.n - 1) as f64
    }

    pub fn steps(&self) -> usize {
        ((self.t.1 - self.t.0) / self.dt).round() as usize
    }

    fn node(&self, i: usize) -> f64 {
        self.x.0 + i as f64 * self.h()
    }
}

/// Compiled oracle values of the simulated variable.
struct Oracle<'a> {
    s: &'a ExactSolution,
    value: Compiled,
    rate: Compiled,
}

impl<'a> Oracle<'a> {
    fn new(s: &'a ExactSolution, _law: Law) -> Oracle<'a> {
        let rate = s.derivative(&s.expr, "t");
        Oracle { s, value: Compiled::new(&s.expr), rate: Compiled::new(&rate) }
    }

    fn real(&self, c: &Compiled, t: f64, x: f64) -> Result<f64, SimError> {
        let fail = |reason: String| SimError::Oracle { t, x, reason };
        let z = self.s.eval_expr(c, t, x).map_err(|e: SolError| fail(e.to_string()))?;
        if z.im.abs() > 1e-9 * z.re.abs().max(1.0) || !z.re.is_finite() {
            return Err(fail(format!("value {z}")));
        }
        Ok(z.re)
    }

    fn at(&self, t: f64, x: f64) -> Result<f64, SimError> {
        self.real(&self.value, t, x)
    }

    fn row(&self, t: f64, x0: f64, h: f64, n: usize) -> Result<Vec<f64>, SimError> {
        (0..n).map(|i| self.at(t, x0 + i as f64 * h)).collect()
    }
}

/// Errors of one run against the oracle at the final time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelError {
    pub level: usize,
    pub h: f64,
    pub dt: f64,
    pub max_err: f64,
    pub l2_err: f64,
    /// `log₂` of the ratio to the previous level's max error.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub levels: Vec<LevelError>,
}

impl ErrorReport {
    pub fn max_err(&self) -> f64 {
        self.levels.last().map_or(0.0, |l| l.max_err)
    }

    pub fn l2_err(&self) -> f64 {
        self.levels.last().map_or(0.0, |l| l.l2_err)
    }

    pub fn orders(&self) -> Vec<f64> {
        self.levels.iter().filter_map(|l| l.order).collect()
    }

    /// Order between the two finest levels.
    pub fn observed_order(&self) -> Option<f64> {
        self.orders().last().copied()
    }

    /// Columns `level,h,dt,max_err,l2_err,order`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("level,h,dt,max_err,l2_err,order\n");
        for l in &self.levels {
            let order = l.order.map(|o| format!("{o:.6}")).unwrap_or_default();
            let _ = writeln!(s, "{},{:e},{:e},{:e},{:e},{}", l.level, l.h, l.dt, l.max_err, l.l2_err, order);
        }
        s
    }
}

/// Mass balance of a fast diffusion run: the change of `∫u dx` against the
/// boundary flux `[u⁻¹u_x]` accumulated by the scheme and by the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conservation {
    pub mass_change: f64,
    pub discrete_flux: f64,
    pub exact_flux: f64,
}

impl Conservation {
    /// Mismatch between mass change and discrete flux, relative to the flux.
    pub fn discrete_defect(&self) -> f64 {
        (self.mass_change - self.discrete_flux).abs() / self.discrete_flux.abs().max(1e-300)
    }

    pub fn exact_defect(&self) -> f64 {
        (self.mass_change - self.exact_flux).abs() / self.exact_flux.abs().max(1e-300)
    }
}

/// Final state, errors and (for fast diffusion) the mass balance.
#[derive(Debug, Clone, PartialEq)]
pub struct Run {
    pub grid: Grid,
    pub solution: Vec<f64>,
    pub error: LevelError,
    pub conservation: Option<Conservation>,
}

fn thomas(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &mut [f64]) {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = diag.to_vec();
    c[0] = sup[0] / d[0];
    rhs[0] /= d[0];
    for i in 1..n {
        d[i] -= sub[i] * c[i - 1];
        if i + 1 < n {
            c[i] = sup[i] / d[i];
        }
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / d[i];
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= c[i] * rhs[i + 1];
    }
}

/// One Crank–Nicolson step `w ← w + dt/2 (F(w) + F(w_new))` with boundary
/// values already set in `next`.
fn newton_step(law: Law, w: &[f64], next: &mut [f64], h: f64, dt: f64, t: f64) -> Result<(), SimError> {
    let n = w.len();
    let m = n - 2;
    let old: Vec<f64> = (1..n - 1).map(|i| w[i] + 0.5 * dt * law.rhs(w, i, h)).collect();
    next[1..n - 1].copy_from_slice(&w[1..n - 1]);
    let (mut sub, mut diag, mut sup, mut g) = (vec![0.0; m], vec![0.0; m], vec![0.0; m], vec![0.0; m]);
    let mut residual = f64::INFINITY;
    for _ in 0..NEWTON_ITERATIONS {
        law.admissible(next, t, 0.0, h)?;
        residual = 0.0;
        for k in 0..m {
            let i = k + 1;
            g[k] = next[i] - 0.5 * dt * law.rhs(next, i, h) - old[k];
            residual = residual.max(g[k].abs());
            let [a, b, c] = law.jacobian(next, i, h);
            sub[k] = -0.5 * dt * a;
            diag[k] = 1.0 - 0.5 * dt * b;
            sup[k] = -0.5 * dt * c;
        }
        if residual <= NEWTON_TOLERANCE {
            return Ok(());
        }
        thomas(&sub, &diag, &sup, &mut g);
        for k in 0..m {
            next[k + 1] -= g[k];
        }
    }
    Err(SimError::Newton { t, residual })
}

/// Evolves from the oracle at `t₀` to `t₁`.
pub fn run(law: Law, oracle: &ExactSolution, grid: &Grid, scheme: Scheme) -> Result<Run, SimError> {
    let o = Oracle::new(oracle, law);
    let (h, n, dt) = (grid.h(), grid.n, grid.dt);
    let mut w = o.row(grid.t.0, grid.x.0, h, n)?;
    law.admissible(&w, grid.t.0, grid.x.0, h)?;
    let mass = |w: &[f64]| h * (0.5 * w[0] + w[1..n - 1].iter().sum::<f64>() + 0.5 * w[n - 1]);
    let flux = |w: &[f64]| ((w[n - 1].ln() - w[n - 2].ln()) - (w[1].ln() - w[0].ln())) / h;
    let exact_flux = |t: f64| -> Result<f64, SimError> {
        let e = 1e-5 * h;
        let slope = |x: f64| -> Result<f64, SimError> { Ok((o.at(t, x + e)?.ln() - o.at(t, x - e)?.ln()) / (2.0 * e)) };
        Ok(slope(grid.x.1)? - slope(grid.x.0)?)
    };
    let start_mass = mass(&w);
    let (mut discrete_flux, mut exact) = (0.0, 0.0);
    let mut next = vec![0.0; n];
    let steps = grid.steps();
    for k in 0..steps {
        let t = grid.t.0 + k as f64 * dt;
        let t1 = if k + 1 == steps { grid.t.1 } else { t + dt };
        next[0] = o.at(t1, grid.x.0)?;
        next[n - 1] = o.at(t1, grid.x.1)?;
        match scheme {
            Scheme::Explicit => {
                for i in 1..n - 1 {
                    next[i] = w[i] + dt * law.rhs(&w, i, h);
                }
                if law == Law::Diffusion {
                    // Interior mass changes by the scheme's flux; the two
                    // boundary half-cells follow the Dirichlet data.
                    discrete_flux += dt * flux(&w);
                }
            }
            Scheme::ImplicitNewton => {
                newton_step(law, &w, &mut next, h, dt, t1)?;
                if law == Law::Diffusion {
                    discrete_flux += 0.5 * dt * (flux(&w) + flux(&next));
                }
            }
        }
        if law == Law::Diffusion {
            let mid = t + 0.5 * dt;
            exact += dt * (exact_flux(t)? + 4.0 * exact_flux(mid)? + exact_flux(t1)?) / 6.0;
            discrete_flux += 0.5 * h * ((next[0] - w[0]) + (next[n - 1] - w[n - 1]));
            exact += 0.5 * h * ((next[0] - w[0]) + (next[n - 1] - w[n - 1]));
        }
        law.admissible(&next, t1, grid.x.0, h)?;
        std::mem::swap(&mut w, &mut next);
    }
    let mut max_err: f64 = 0.0;
    let mut sq = 0.0;
    for (i, wi) in w.iter().enumerate() {
        let e = (wi - o.at(grid.t.1, grid.node(i))?).abs();
        max_err = max_err.max(e);
        sq += e * e * h;
    }
    let conservation = (law == Law::Diffusion).then(|| Conservation {
        mass_change: mass(&w) - start_mass,
        discrete_flux,
        exact_flux: exact,
    });
    Ok(Run {
        grid: *grid,
        solution: w,
        error: LevelError { level: 0, h, dt, max_err, l2_err: sq.sqrt(), order: None },
        conservation,
    })
}

/// Single run with the error table of one level.
pub fn simulate(l: &EvolutionEquation, oracle: &ExactSolution, grid: &Grid, scheme: Scheme) -> Result<ErrorReport, SimError> {
    let r = run(Law::of(l)?, oracle, grid, scheme)?;
    Ok(ErrorReport { levels: vec![r.error] })
}

/// Runs `levels` refinements of `base`, halving `h` each time; for the
/// explicit scheme the step is recomputed as `σh²/D`, otherwise `dt` is
/// halved with `h`.
pub fn convergence_study(
    l: &EvolutionEquation,
    oracle: &ExactSolution,
    base: &Grid,
    levels: usize,
    scheme: Scheme,
) -> Result<ErrorReport, SimError> {
    if levels < 3 {
        return Err(SimError::TooFewLevels(levels));
    }
    let law = Law::of(l)?;
    let grids: Vec<Grid> = (0..levels)
        .map(|k| {
            let n = (base.n - 1) * (1 << k) + 1;
            match scheme {
                Scheme::Explicit => Grid::stable(law, oracle, base.x, n, base.t, base.sigma),
                Scheme::ImplicitNewton => Grid::new(base.x, n, base.t, base.dt / (1 << k) as f64, base.sigma),
            }
        })
        .collect::<Result<_, _>>()?;
    let runs: Vec<LevelError> =
        grids.par_iter().map(|g| run(law, oracle, g, scheme).map(|r| r.error)).collect::<Result<_, _>>()?;
    let mut out: Vec<LevelError> = Vec::with_capacity(levels);
    for (k, mut e) in runs.into_iter().enumerate() {
        e.level = k;
        e.order = out.last().map(|p: &LevelError| (p.max_err / e.max_err).log2());
        out.push(e);
    }
    Ok(ErrorReport { levels: out })
}

/// Largest `|w_t − rhs_h(w)|` over interior nodes at time `t` with the
/// oracle inserted into the discrete operator.
pub fn truncation_error(l: &EvolutionEquation, oracle: &ExactSolution, x: (f64, f64), n: usize, t: f64) -> Result<f64, SimError> {
    let law = Law::of(l)?;
    let o = Oracle::new(oracle, law);
    let h = (x.1 - x.0) / (n - 1) as f64;
    let w = o.row(t, x.0, h, n)?;
    let mut worst: f64 = 0.0;
    for i in 1..n - 1 {
        let rate = o.real(&o.rate, t, x.0 + i as f64 * h)?;
        worst = worst.max((rate - law.rhs(&w, i, h)).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ex;
    use crate::solcat::{lie_solution, nonlie_solution, Domain};

    fn u_of(index: u8, eps: i64) -> ExactSolution {
        lie_solution(index, eps, 0).unwrap().u
    }

    fn base(law: Law, s: &ExactSolution, x: (f64, f64), n: usize, t: (f64, f64)) -> Grid {
        Grid::stable(law, s, x, n, t, SIGMA).unwrap()
    }

    #[test]
    fn constant_is_exact() {
        let one = ExactSolution::explicit("u", ex("1"), Domain::new((0.0, 1.0), (0.0, 1.0)));
        let g = base(Law::Diffusion, &one, (0.0, 1.0), 21, (0.0, 0.5));
        for scheme in [Scheme::Explicit, Scheme::ImplicitNewton] {
            assert!(simulate(&fast_diffusion(), &one, &g, scheme).unwrap().max_err() <= 1e-13);
        }
    }

    #[test]
    fn lie6_explicit_accuracy() {
        let s = u_of(6, 0);
        let g = base(Law::Diffusion, &s, (-1.0, 1.0), 201, (-2.0, -1.0));
        assert!(g.dt <= g.sigma * g.h() * g.h());
        let r = simulate(&fast_diffusion(), &s, &g, Scheme::Explicit).unwrap();
        assert!(r.max_err() <= 1e-3, "{r:?}");
    }

    #[test]
    fn second_order_on_lie4() {
        let s = u_of(4, 1);
        let g = base(Law::Diffusion, &s, (-1.0, 1.0), 11, (1.0, 2.0));
        let r = convergence_study(&fast_diffusion(), &s, &g, 4, Scheme::Explicit).unwrap();
        let p = r.observed_order().unwrap();
        assert!((p - 2.0).abs() <= 0.3, "{}", r.to_csv());
    }

    #[test]
    fn implicit_second_order() {
        let s = u_of(4, 1);
        let g = Grid::new((-1.0, 1.0), 11, (1.0, 2.0), 0.05, SIGMA).unwrap();
        let r = convergence_study(&fast_diffusion(), &s, &g, 4, Scheme::ImplicitNewton).unwrap();
        assert!((r.observed_order().unwrap() - 2.0).abs() <= 0.3, "{}", r.to_csv());
    }

    #[test]
    fn filtration_order_on_4p() {
        let s = nonlie_solution(4).unwrap().v;
        let g = base(Law::Filtration, &s, (-1.0, 1.0), 11, (-0.5, -0.1));
        let r = convergence_study(&potential_fast_diffusion(), &s, &g, 3, Scheme::Explicit).unwrap();
        assert!((r.observed_order().unwrap() - 2.0).abs() <= 0.3, "{}", r.to_csv());
    }

    #[test]
    fn exponential_stays_at_rounding() {
        let s = u_of(2, 0);
        let g = base(Law::Diffusion, &s, (-1.0, 1.0), 21, (0.0, 0.5));
        assert!(simulate(&fast_diffusion(), &s, &g, Scheme::Explicit).unwrap().max_err() <= 1e-12);
    }

    #[test]
    fn mass_balance() {
        let s = u_of(4, 1);
        let g = base(Law::Diffusion, &s, (-1.0, 1.0), 41, (1.0, 2.0));
        let c = run(Law::Diffusion, &s, &g, Scheme::Explicit).unwrap().conservation.unwrap();
        assert!(c.discrete_defect() <= 1e-10, "{c:?}");
        assert!(c.exact_defect() <= 1e-2, "{c:?}");
    }

    #[test]
    fn truncation_ratio() {
        let s = u_of(4, 1);
        let a = truncation_error(&fast_diffusion(), &s, (-1.0, 1.0), 21, 1.5).unwrap();
        let b = truncation_error(&fast_diffusion(), &s, (-1.0, 1.0), 41, 1.5).unwrap();
        assert!((3.4..=4.6).contains(&(a / b)), "{a} {b}");
    }

    #[test]
    fn sign_change_is_rejected() {
        let s = u_of(5, 0);
        let e = Grid::stable(Law::Diffusion, &s, (-1.0, 1.0), 21, (-1.0, 1.0), SIGMA).unwrap_err();
        assert!(matches!(e, SimError::Positivity { .. }), "{e}");
        assert!(Grid::new((0.0, 1.0), 4, (0.0, 1.0), 0.1, SIGMA).is_err());
    }

    #[test]
    fn pole_is_rejected() {
        let s = u_of(4, 0);
        let e = Grid::stable(Law::Diffusion, &s, (-1.0, 1.0), 21, (0.5, 1.0), SIGMA).unwrap_err();
        assert!(matches!(e, SimError::Oracle { .. } | SimError::Positivity { .. }), "{e}");
    }
}
