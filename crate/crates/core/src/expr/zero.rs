//! Zero testing: exact normalization first, seeded random probing second.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::eval::Compiled;
use super::ratfn::{normal_zero, RatVerdict};
use super::{Expr, Node, Symbol};

pub const DEFAULT_SEED: u64 = 1729;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ProvedZero,
    ProvedNonzero,
    NumericallyZero,
    NumericallyNonzero,
}

impl Verdict {
    pub fn is_zero(self) -> bool {
        matches!(self, Verdict::ProvedZero | Verdict::NumericallyZero)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ProvedZero => "proved-zero",
            Verdict::ProvedNonzero => "proved-nonzero",
            Verdict::NumericallyZero => "numerically-zero",
            Verdict::NumericallyNonzero => "numerically-nonzero",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A verdict with the numeric evidence gathered for it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroReport {
    pub verdict: Verdict,
    /// Largest |value| seen over the probes (0 when no probe was needed).
    pub max_abs: f64,
    pub probes: usize,
}

impl ZeroReport {
    pub const PROVED_ZERO: ZeroReport = ZeroReport { verdict: Verdict::ProvedZero, max_abs: 0.0, probes: 0 };

    /// Joint report for "all of these vanish": the first nonzero report if
    /// there is one, otherwise the weakest zero verdict with pooled evidence.
    pub fn all(reports: impl IntoIterator<Item = ZeroReport>) -> ZeroReport {
        let mut out = ZeroReport::PROVED_ZERO;
        for r in reports {
            if !r.verdict.is_zero() {
                return r;
            }
            if r.verdict == Verdict::NumericallyZero {
                out.verdict = Verdict::NumericallyZero;
            }
            out.max_abs = out.max_abs.max(r.max_abs);
            out.probes += r.probes;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZeroTestError {
    #[error("no admissible probe point found (every draw hit a singularity)")]
    NoAdmissiblePoints,
}

/// Probe configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroTest {
    pub seed: u64,
    pub probes: usize,
    /// Bound on |value| relative to max(1, Σ|top-level terms|).
    pub tolerance: f64,
}

impl Default for ZeroTest {
    fn default() -> Self {
        ZeroTest { seed: DEFAULT_SEED, probes: 64, tolerance: 1e-9 }
    }
}

/// Whether probes must stay on the real axis: `ln|·|`, `|·|`, `arctan` and
/// fractional powers are not holomorphic (or carry branch cuts).
fn needs_real_probes(e: &Expr) -> bool {
    e.any(&|n| match n.node() {
        Node::Func(f, _) => f.is_real_only(),
        Node::Pow(_, x) => x.as_i64().is_none(),
        _ => false,
    })
}

/// Random probe bindings for `symbols`: complex points with real part in
/// [−1.5, 1.5] and imaginary part in [−0.75, 0.75], or real points in
/// [−1.5, 1.5].
pub fn probe_points(symbols: usize, count: usize, real: bool, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..symbols)
                .map(|_| {
                    let re = rng.gen_range(-1.5..1.5);
                    let im = if real { 0.0 } else { rng.gen_range(-0.75..0.75) };
                    Complex64::new(re, im)
                })
                .collect()
        })
        .collect()
}

impl ZeroTest {
    pub fn check(&self, e: &Expr) -> Result<ZeroReport, ZeroTestError> {
        if e.is_zero_literal() {
            return Ok(ZeroReport { verdict: Verdict::ProvedZero, max_abs: 0.0, probes: 0 });
        }
        if let Some(n) = e.as_num() {
            return Ok(ZeroReport { verdict: Verdict::ProvedNonzero, max_abs: n.to_complex().norm(), probes: 0 });
        }
        let exact = normal_zero(e).ok();
        if exact == Some(RatVerdict::Zero) {
            return Ok(ZeroReport { verdict: Verdict::ProvedZero, max_abs: 0.0, probes: 0 });
        }
        let (max_abs, probes, all_small) = self.probe(e)?;
        let verdict = match exact {
            Some(RatVerdict::Nonzero { certain: true }) => Verdict::ProvedNonzero,
            _ if all_small => Verdict::NumericallyZero,
            _ => Verdict::NumericallyNonzero,
        };
        Ok(ZeroReport { verdict, max_abs, probes })
    }

    /// Evaluates at `self.probes` admissible random points. Returns the
    /// largest |value|, the probe count, and whether every probe passed the
    /// relative tolerance.
    pub fn probe(&self, e: &Expr) -> Result<(f64, usize, bool), ZeroTestError> {
        let real = needs_real_probes(e);
        let syms: BTreeSet<Symbol> = e.free_symbols();
        let terms: Vec<Compiled> = match e.node() {
            Node::Add(ch) => ch.iter().map(Compiled::new).collect(),
            _ => vec![],
        };
        let whole = Compiled::new(e);
        let order: Vec<usize> = whole
            .vars()
            .iter()
            .map(|v| syms.iter().position(|s| &**s == v).unwrap())
            .collect();
        let term_orders: Vec<Vec<usize>> = terms
            .iter()
            .map(|c| c.vars().iter().map(|v| syms.iter().position(|s| &**s == v).unwrap()).collect())
            .collect();
        let mut seed = self.seed;
        let mut done = 0;
        let mut max_abs: f64 = 0.0;
        let mut all_small = true;
        let mut draws = 0;
        let limit = self.probes.max(1) * 32;
        while done < self.probes {
            let batch = probe_points(syms.len(), self.probes, real, seed);
            seed = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
            for pt in batch {
                draws += 1;
                if draws > limit {
                    break;
                }
                let vals: Vec<Complex64> = order.iter().map(|&k| pt[k]).collect();
                let Ok(v) = whole.eval_slots(&vals) else { continue };
                let mut scale = 1.0f64;
                let mut ok = true;
                let mut sum = 0.0;
                for (c, ord) in terms.iter().zip(&term_orders) {
                    let vals: Vec<Complex64> = ord.iter().map(|&k| pt[k]).collect();
                    match c.eval_slots(&vals) {
                        Ok(t) => sum += t.norm(),
                        Err(_) => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                scale = scale.max(sum);
                let a = v.norm();
                max_abs = max_abs.max(a);
                if a > self.tolerance * scale {
                    all_small = false;
                }
                done += 1;
                if done == self.probes {
                    break;
                }
            }
            if draws > limit {
                break;
            }
        }
        if done == 0 {
            return Err(ZeroTestError::NoAdmissiblePoints);
        }
        Ok((max_abs, done, all_small))
    }
}

/// Zero test with the default configuration.
pub fn is_zero(e: &Expr) -> Result<ZeroReport, ZeroTestError> {
    ZeroTest::default().check(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{differentiate, ex, sym};

    #[test]
    fn verdicts() {
        assert_eq!(is_zero(&ex("1")).unwrap().verdict, Verdict::ProvedNonzero);
        assert_eq!(is_zero(&ex("x - x")).unwrap().verdict, Verdict::ProvedZero);
        let two_wave = ex("cot(x - t) - cot(x + t) - 2*sin(2*t)/(cos(2*t) - cos(2*x))");
        assert!(is_zero(&two_wave).unwrap().verdict.is_zero());
        assert_eq!(is_zero(&ex("sin(x) - x")).unwrap().verdict, Verdict::ProvedNonzero);
    }

    #[test]
    fn profile_ode_for_tanh() {
        let f = ex("-2*tanh(w)");
        let f1 = differentiate(&f, "w");
        let f2 = differentiate(&f1, "w");
        assert!(is_zero(&(f2 - f * f1)).unwrap().verdict.is_zero());
    }

    #[test]
    fn numeric_fallback_for_opaque_atoms() {
        // ln|x^2| = 2 ln|x| is invisible to the normal form.
        let r = is_zero(&ex("lnabs(x^2) - 2*lnabs(x)")).unwrap();
        assert_eq!(r.verdict, Verdict::NumericallyZero);
        assert_eq!(r.probes, 64);
        let r = is_zero(&ex("lnabs(x^2) - lnabs(x)")).unwrap();
        assert_eq!(r.verdict, Verdict::NumericallyNonzero);
    }

    #[test]
    fn all_poles_is_an_error() {
        let e = Expr::pow(Expr::zero(), Expr::int(-1)) + sym("x");
        assert_eq!(is_zero(&e).unwrap_err(), ZeroTestError::NoAdmissiblePoints);
    }
}
