//! The potential hodograph map `t̃ = t, x̃ = v, ũ = u⁻¹, ṽ = x` on solution
//! pairs, and the tables of arrows it induces between catalog solutions.

use std::cell::RefCell;
use std::f64::consts::PI;

use crate::expr::Verdict;

use super::{lie_solution, nonlie_solution, Domain, SolError, SolutionPair};

/// Real-valued access to a pair `(u, v)` with `v_x = u`.
pub trait PairSampler {
    fn u_at(&self, t: f64, x: f64) -> Result<f64, SolError>;
    fn v_at(&self, t: f64, x: f64) -> Result<f64, SolError>;
    /// An `x`-interval at time `t` on which the pair is admissible and `v`
    /// is strictly monotone.
    fn x_interval(&self, t: f64) -> Result<(f64, f64), SolError>;
}

const SCAN: usize = 801;

impl PairSampler for SolutionPair {
    fn u_at(&self, t: f64, x: f64) -> Result<f64, SolError> {
        self.u.eval_real(t, x)
    }

    fn v_at(&self, t: f64, x: f64) -> Result<f64, SolError> {
        self.v.eval_real(t, x)
    }

    /// Longest run of scan points where the domain holds and `u` keeps one
    /// sign.
    fn x_interval(&self, t: f64) -> Result<(f64, f64), SolError> {
        let d = self.domain();
        let (a, b) = (d.x.0.min(d.x.1), d.x.0.max(d.x.1));
        let mut best: Option<(usize, usize)> = None;
        let mut run: Option<(usize, f64)> = None;
        let xs: Vec<f64> = (0..SCAN).map(|k| a + (b - a) * k as f64 / (SCAN - 1) as f64).collect();
        for (k, &x) in xs.iter().enumerate() {
            let ok = d.contains(t, x) && self.v_at(t, x).is_ok();
            let sign = if ok { self.u_at(t, x).ok().filter(|u| *u != 0.0).map(f64::signum) } else { None };
            match (sign, run) {
                (Some(s), Some((_, rs))) if s == rs => {}
                (Some(s), _) => {
                    if let Some((start, _)) = run {
                        best = longer(best, (start, k - 1));
                    }
                    run = Some((k, s));
                }
                (None, Some((start, _))) => {
                    best = longer(best, (start, k - 1));
                    run = None;
                }
                (None, None) => {}
            }
        }
        if let Some((start, _)) = run {
            best = longer(best, (start, SCAN - 1));
        }
        match best {
            Some((i, j)) if j > i => Ok((xs[i], xs[j])),
            _ => Err(SolError::NonMonotone),
        }
    }
}

fn longer(best: Option<(usize, usize)>, cand: (usize, usize)) -> Option<(usize, usize)> {
    match best {
        Some(b) if b.1 - b.0 >= cand.1 - cand.0 => Some(b),
        _ => Some(cand),
    }
}

/// Hodograph image of a pair, evaluated by inverting `v(t, ·)`.
#[derive(Debug, Clone)]
pub struct HodographImage<P: PairSampler> {
    pub source: P,
    // Source interval at the last requested time.
    cache: RefCell<Option<(f64, (f64, f64))>>,
}

/// Bracketing tolerance of the inversion.
pub const INVERSION_TOLERANCE: f64 = 1e-12;

impl<P: PairSampler> HodographImage<P> {
    /// The source point `x` with `v(t, x) = x̃`.
    fn source_interval(&self, t: f64) -> Result<(f64, f64), SolError> {
        if let Some((t0, i)) = *self.cache.borrow() {
            if t0 == t {
                return Ok(i);
            }
        }
        let i = self.source.x_interval(t)?;
        *self.cache.borrow_mut() = Some((t, i));
        Ok(i)
    }

    pub fn preimage(&self, t: f64, xt: f64) -> Result<f64, SolError> {
        let (mut a, mut b) = self.source_interval(t)?;
        let (mut fa, fb) = (self.source.v_at(t, a)? - xt, self.source.v_at(t, b)? - xt);
        if fa == 0.0 {
            return Ok(a);
        }
        if fb == 0.0 {
            return Ok(b);
        }
        if fa.signum() == fb.signum() {
            return Err(SolError::DomainMismatch(format!("x̃ = {xt} outside the image at t = {t}")));
        }
        while b - a > INVERSION_TOLERANCE * (1.0 + a.abs().max(b.abs())) {
            let m = 0.5 * (a + b);
            let fm = self.source.v_at(t, m)? - xt;
            if fm == 0.0 {
                return Ok(m);
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        Ok(0.5 * (a + b))
    }
}

impl<P: PairSampler> PairSampler for HodographImage<P> {
    fn u_at(&self, t: f64, x: f64) -> Result<f64, SolError> {
        Ok(1.0 / self.source.u_at(t, self.preimage(t, x)?)?)
    }

    fn v_at(&self, t: f64, x: f64) -> Result<f64, SolError> {
        self.preimage(t, x)
    }

    fn x_interval(&self, t: f64) -> Result<(f64, f64), SolError> {
        let (a, b) = self.source_interval(t)?;
        let (va, vb) = (self.source.v_at(t, a)?, self.source.v_at(t, b)?);
        let (lo, hi) = (va.min(vb), va.max(vb));
        let pad = 1e-9 * (hi - lo);
        Ok((lo + pad, hi - pad))
    }
}

/// Inversion is lazy, so a non-monotone `v` surfaces when sampling.
pub fn apply_hodograph<P: PairSampler>(source: P) -> Result<HodographImage<P>, SolError> {
    Ok(HodographImage { source, cache: RefCell::new(None) })
}

/// Stated substitution on the target: `t → t + tsh`, `x → a·(x + xsh)`,
/// `v → b·v + c`; so `v = (V(t+tsh, a(x+xsh)) − c)/b` and
/// `u = (a/b)·U(t+tsh, a(x+xsh))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetMap {
    pub tsh: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub xsh: f64,
}

impl TargetMap {
    pub const IDENTITY: TargetMap = TargetMap { tsh: 0.0, a: 1.0, b: 1.0, c: 0.0, xsh: 0.0 };
    const HALF: TargetMap = TargetMap { a: 0.5, b: 2.0, ..TargetMap::IDENTITY };
}

#[derive(Debug, Clone)]
pub struct Arrow {
    pub id: String,
    pub label: &'static str,
    pub source: SolutionPair,
    /// Target pair; only its domain inequalities are used, not its box.
    pub target: SolutionPair,
    pub map: TargetMap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArrowReport {
    pub id: String,
    pub verdict: Verdict,
    pub samples: usize,
    /// Largest relative mismatch of `ũ` against the target.
    pub max_u_error: f64,
    /// Spread of `ṽ − v_target`, which must be constant.
    pub v_spread: f64,
}

pub const ARROW_TOLERANCE: f64 = 1e-8;
const ARROW_SAMPLES: usize = 60;

fn lie(index: u8, eps: i64, mu: i64) -> SolutionPair {
    lie_solution(index, eps, mu).expect("catalog parameters")
}

fn nonlie(index: u8) -> SolutionPair {
    nonlie_solution(index).expect("catalog index")
}

fn restrict(p: SolutionPair, t: (f64, f64), x: (f64, f64), conds: &[&str]) -> SolutionPair {
    let mut d = Domain { t, x, positive: p.domain().positive.clone() };
    for c in conds {
        d = d.with(c);
    }
    p.with_domain(d)
}

/// The eight arrows between Lie solutions and the seven between the
/// non-Lie ones.
pub fn arrow_table() -> Vec<Arrow> {
    let id = TargetMap::IDENTITY;
    let half = TargetMap::HALF;
    let mut out = Vec::new();
    let mut push = |family: &str, label: &'static str, source: SolutionPair, target: SolutionPair, map| {
        let n = out.iter().filter(|a: &&Arrow| a.id.starts_with(&format!("arrow.{family}."))).count();
        out.push(Arrow { id: format!("arrow.{family}.{}", n + 1), label, source, target, map });
    };
    let unit = ((-1.0, 1.0), (-1.0, 1.0));
    push("lie", "⟳ 1)_{eps=0}", lie(1, 0, 0), lie(1, 0, 0), id);
    push("lie", "1)_{eps=1} <-> 1)_{eps=-1, x+t<0}", lie(1, 1, 0), lie(1, -1, 0), id);
    push(
        "lie",
        "⟳ 1)_{eps=-1, x+t>0}",
        restrict(lie(1, -1, 0).with_domain(Domain::new(unit.0, unit.1)), (-1.0, 1.0), (-1.0, 2.0), &["x + t - 1/20"]),
        restrict(lie(1, -1, 0).with_domain(Domain::new(unit.0, unit.1)), unit.0, unit.1, &["x + t"]),
        id,
    );
    push("lie", "2) <-> 3)_{mu=0, x>t}", lie(2, 0, 0), lie(3, 0, 0), id);
    push("lie", "⟳ 4)_{eps=0}", lie(4, 0, 0), lie(4, 0, 0), id);
    push("lie", "5) <-> 4)_{eps=4}", lie(5, 0, 0), lie(4, 4, 0), id);
    push("lie", "6) <-> 4)_{eps=-4, |x|<2|t|}", lie(6, 0, 0), restrict(lie(4, -4, 0), unit.0, unit.1, &["4*t^2 - x^2"]), id);
    push("lie", "7) <-> 4)_{eps=-4, |x|>2|t|}", lie(7, 0, 0), restrict(lie(4, -4, 0), unit.0, unit.1, &["x^2 - 4*t^2"]), id);

    let one_p = |x: (f64, f64), c: &str| restrict(nonlie(1), (0.1, 0.7), x, &[c]);
    push(
        "nonlie",
        "1')_{cos2t<cos2x} <-> 5')|_{t->t+pi/2, x->x/2, v->2v}",
        one_p((-1.5, 1.5), "cos(2*x) - cos(2*t)"),
        nonlie(5),
        TargetMap { tsh: PI / 2.0, ..half },
    );
    push(
        "nonlie",
        "1')_{cos2t>cos2x, x>0} <-> 5')|_{x->x/2, v->2v-pi}",
        one_p((0.02, 1.5), "cos(2*t) - cos(2*x)"),
        nonlie(5),
        TargetMap { c: -PI, ..half },
    );
    let two_p = |c: &str| restrict(nonlie(2), (0.1, 1.0), (-2.0, 2.0), &[c]);
    push("nonlie", "2')_{|x|<|t|} <-> 4')|_{x->x/2, v->2v}", two_p("t^2 - x^2"), nonlie(4), half);
    push("nonlie", "⟳ 2')_{|x|>|t|}|_{x->x/2, v->2v}", two_p("x^2 - t^2"), restrict(nonlie(2), unit.0, unit.1, &["x^2 - t^2"]), half);
    let three_p = |c: &str| restrict(nonlie(3), (0.1, 1.0), (-2.0, 2.0), &[c]);
    push("nonlie", "⟳ 3')_{x<t}|_{x->x/2, v->2v}", three_p("t - x"), restrict(nonlie(3), unit.0, unit.1, &["t - x"]), half);
    push(
        "nonlie",
        "3')_{x>t} <-> 3')_{x>t}|_{x->-x/2, v->-2v}",
        three_p("x - t"),
        restrict(nonlie(3), unit.0, unit.1, &["x - t"]),
        TargetMap { a: -0.5, b: -2.0, ..id },
    );
    push(
        "nonlie",
        "⟳ 6')|_{x->x/2, v->2v}",
        restrict(nonlie(6), (0.1, 1.0), (-1.45, -0.02), &[]),
        nonlie(6),
        TargetMap { xsh: PI, ..half },
    );
    out
}

pub fn lookup_arrow(id: &str) -> Result<Arrow, SolError> {
    arrow_table().into_iter().find(|a| a.id == id).ok_or_else(|| SolError::UnknownKey(id.into()))
}

/// Samples the source, maps the samples by the hodograph, and compares
/// with the target under its stated substitution.
pub fn check_arrow(arrow: &Arrow) -> Result<ArrowReport, SolError> {
    let src = &arrow.source;
    let tgt = &arrow.target;
    let m = arrow.map;
    let pts = src.domain().sample(ARROW_SAMPLES, 5, &|t, x| matches!(src.uv(t, x), Ok((u, _)) if u != 0.0));
    let mut max_u_error: f64 = 0.0;
    let mut dv: Vec<f64> = Vec::new();
    let mut vscale: f64 = 1.0;
    for (t, x) in pts {
        let (u, v) = src.uv(t, x)?;
        let (ut, xt, vt) = (1.0 / u, v, x);
        let (tt, xx) = (t + m.tsh, m.a * (xt + m.xsh));
        if !tgt.domain().positive.is_empty() && !tgt.domain().positive_hold(tt, xx) {
            continue;
        }
        let Ok((big_u, big_v)) = tgt.uv(tt, xx) else { continue };
        let u_target = m.a / m.b * big_u;
        let v_target = (big_v - m.c) / m.b;
        max_u_error = max_u_error.max((ut - u_target).abs() / (1.0 + ut.abs()));
        dv.push(vt - v_target);
        vscale = vscale.max(vt.abs());
    }
    if dv.is_empty() {
        return Err(SolError::DomainMismatch(arrow.id.clone()));
    }
    let lo = dv.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = dv.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let v_spread = (hi - lo) / vscale;
    let ok = max_u_error <= ARROW_TOLERANCE && v_spread <= ARROW_TOLERANCE;
    Ok(ArrowReport {
        id: arrow.id.clone(),
        verdict: if ok { Verdict::NumericallyZero } else { Verdict::NumericallyNonzero },
        samples: dv.len(),
        max_u_error,
        v_spread,
    })
}

impl Domain {
    /// The inequalities alone, ignoring the sampling box.
    pub fn positive_hold(&self, t: f64, x: f64) -> bool {
        let wide = Domain { t: (f64::MIN, f64::MAX), x: (f64::MIN, f64::MAX), positive: self.positive.clone() };
        wide.contains(t, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_arrows_hold() {
        let table = arrow_table();
        assert_eq!(table.len(), 15);
        for a in &table {
            let r = check_arrow(a).unwrap();
            assert!(r.verdict.is_zero(), "{} {}: {r:?}", a.id, a.label);
            assert!(r.samples >= 10, "{}: {r:?}", a.id);
        }
    }

    #[test]
    fn broken_arrow_is_rejected() {
        let mut a = lookup_arrow("arrow.lie.6").unwrap();
        a.target = lie(4, 1, 0);
        assert!(!check_arrow(&a).unwrap().verdict.is_zero());
    }

    #[test]
    fn hodograph_of_pair_2() {
        let h = apply_hodograph(lie(2, 0, 0)).unwrap();
        for (t, xt) in [(0.5, 1.9), (-0.3, 0.9), (0.0, 2.2)] {
            assert!((h.u_at(t, xt).unwrap() - 1.0 / (xt - t)).abs() < 1e-10);
        }
    }

    #[test]
    fn hodograph_is_an_involution() {
        for p in [lie(5, 0, 0), nonlie(4), lie(8, 0, 1)] {
            let twice = apply_hodograph(apply_hodograph(p.clone()).unwrap()).unwrap();
            let t = 0.5 * (p.domain().t.0 + p.domain().t.1);
            let (a, b) = p.x_interval(t).unwrap();
            for k in 1..6 {
                let x = a + (b - a) * k as f64 / 6.0;
                let (u, v) = p.uv(t, x).unwrap();
                assert!((twice.u_at(t, x).unwrap() - u).abs() <= 1e-8 * (1.0 + u.abs()), "{}", p.id());
                assert!((twice.v_at(t, x).unwrap() - v).abs() <= 1e-8 * (1.0 + v.abs()), "{}", p.id());
            }
        }
    }

    #[test]
    fn solution_3_maps_to_solution_8() {
        for mu in [-1, 1] {
            let three = lie(3, 0, mu);
            let eight = lie(8, 0, mu);
            let t = 1.0;
            let (a, b) = three.x_interval(t).unwrap();
            for k in 1..5 {
                let x = a + (b - a) * k as f64 / 5.0;
                let (u, v) = three.uv(t, x).unwrap();
                let (u8, v8) = eight.uv(t, v).unwrap();
                assert!((1.0 / u - u8).abs() < 1e-8 * (1.0 + u8.abs()), "mu={mu}");
                assert!((x - v8).abs() < 1e-8 * (1.0 + x.abs()), "mu={mu}");
            }
        }
    }
}
