use std::collections::VecDeque;
use std::fmt;

use super::complex::Cx;
use super::context::PrecisionContext;
use super::levin;
use crate::error::{Error, Result};

/// How a series value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumMethod {
    Direct,
    Levin,
    GroupedLevin,
    Richardson,
    Finite,
}

impl fmt::Display for SumMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumMethod::Direct => "direct",
            SumMethod::Levin => "levin",
            SumMethod::GroupedLevin => "grouped-levin",
            SumMethod::Richardson => "richardson",
            SumMethod::Finite => "finite",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SeriesResult {
    pub value: Cx,
    pub err_estimate: f64,
    pub terms_used: usize,
    pub converged: bool,
    pub method: SumMethod,
}

impl SeriesResult {
    pub fn finite(value: Cx, terms_used: usize) -> Self {
        SeriesResult {
            value,
            err_estimate: 0.0,
            terms_used,
            converged: true,
            method: SumMethod::Finite,
        }
    }

    /// Combines two independently summed pieces of one series.
    pub fn join(self, other: SeriesResult) -> SeriesResult {
        let method = if self.method == SumMethod::Finite {
            other.method
        } else {
            self.method
        };
        SeriesResult {
            value: self.value + other.value,
            err_estimate: self.err_estimate + other.err_estimate,
            terms_used: self.terms_used + other.terms_used,
            converged: self.converged && other.converged,
            method,
        }
    }

    pub fn map_value(self, f: impl FnOnce(Cx) -> Cx) -> SeriesResult {
        SeriesResult {
            value: f(self.value),
            ..self
        }
    }
}

const WINDOW: usize = 8;
const SMALL_RUN: usize = 4;
const RATIO_CAP: f64 = 0.99;
/// Terms inspected before a slowly decaying series is handed to the accelerator.
const SLOW_PROBE: usize = 256;

/// Sums `term(n, bits)` for `n = start, start + 1, ...`.
///
/// `term` must depend only on its arguments: a slowly decaying series is
/// restarted from `start` under acceleration. Terms are requested at the
/// context precision. Summation stops once four
/// consecutive terms are below `tol / 8` and the geometric tail bound from the
/// last eight term ratios (capped at 0.99) is below `tol / 2`, where `tol` is
/// the context tolerance scaled by `max(1, |partial sum|)`. A series whose
/// terms, after a few hundred, decay too slowly to reach the tolerance within
/// sixteen times the terms already used is summed with [`sum_accelerated`]
/// instead.
pub fn sum_series<F>(mut term: F, start: i64, ctx: &PrecisionContext) -> Result<SeriesResult>
where
    F: FnMut(i64, u32) -> Result<Cx>,
{
    let bits = ctx.bits();
    let mut acc = Cx::zero(bits);
    let mut mags: VecDeque<f64> = VecDeque::with_capacity(WINDOW + 1);
    let mut small = 0usize;
    let log2_tol = ctx.target_tol().log2();
    let mut seen_nonzero = false;
    for i in 0..ctx.max_terms() {
        let n = start + i as i64;
        let t = term(n, bits)?.finite("series term")?;
        let m = t.log2_abs();
        seen_nonzero |= m.is_finite();
        acc += &t;
        mags.push_back(m);
        if mags.len() > WINDOW {
            mags.pop_front();
        }
        let scale = acc.log2_abs().max(0.0);
        let tol = log2_tol + scale;
        if m < tol - 3.0 && (seen_nonzero || i >= SLOW_PROBE) {
            small += 1;
        } else {
            small = 0;
        }
        let ratio = window_ratio(&mags);
        if small >= SMALL_RUN {
            let r = ratio.min(RATIO_CAP);
            let tail = m + r.log2() - (1.0 - r).log2();
            if tail < tol - 1.0
                || m == f64::NEG_INFINITY && mags.iter().all(|v| *v == f64::NEG_INFINITY)
            {
                return Ok(SeriesResult {
                    value: acc,
                    err_estimate: 2f64.powf(tail.max(-1000.0)),
                    terms_used: i + 1,
                    converged: true,
                    method: SumMethod::Direct,
                });
            }
        }
        if (i + 1) >= SLOW_PROBE && (i + 1).is_power_of_two() && too_slow(ratio, m, tol, i + 1) {
            return sum_accelerated(term, start, ctx);
        }
    }
    Err(Error::NonConvergence {
        terms: ctx.max_terms(),
        err_estimate: 2f64.powf(mags.back().copied().unwrap_or(0.0)),
    })
}

/// Whether the geometric estimate of the terms still needed, from the current
/// magnitude `m` (log2) down to `tol`, exceeds sixteen times the terms used.
fn too_slow(ratio: f64, m: f64, tol: f64, used: usize) -> bool {
    if ratio > RATIO_CAP {
        return true;
    }
    if !m.is_finite() || m < tol {
        return false;
    }
    let needed = (m - tol + 1.0) / -ratio.log2();
    needed > 16.0 * used as f64
}

/// Largest ratio `|t_{i+1}| / |t_i|` over the window.
fn window_ratio(mags: &VecDeque<f64>) -> f64 {
    if mags.len() < 2 {
        return 1.0;
    }
    let mut worst = f64::NEG_INFINITY;
    for (a, b) in mags.iter().zip(mags.iter().skip(1)) {
        if a.is_finite() && b.is_finite() {
            worst = worst.max(b - a);
        } else if a.is_finite() {
            continue;
        } else if b.is_finite() {
            return 1.0;
        }
    }
    if worst == f64::NEG_INFINITY {
        0.0
    } else {
        2f64.powf(worst)
    }
}

/// Sums a slowly or conditionally convergent series with the Levin
/// u-transform applied to its partial sums.
///
/// Terms are requested at an elevated working precision so that the
/// cancellation inside the transform does not eat into the target.
pub fn sum_accelerated<F>(mut term: F, start: i64, ctx: &PrecisionContext) -> Result<SeriesResult>
where
    F: FnMut(i64, u32) -> Result<Cx>,
{
    levin::accelerate(&mut term, start, 1, ctx).map(|mut r| {
        if r.method == SumMethod::GroupedLevin {
            r.method = SumMethod::Levin;
        }
        r
    })
}

/// Sums `term_mag(n) * x^n` for `n >= start` where `x` is a root of unity of
/// order `N > 1`, by summing blocks of `N` consecutive terms and accelerating
/// the block sums.
pub fn sum_grouped_unit_circle<F>(
    mut term_mag: F,
    x: super::RootOfUnity,
    start: i64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult>
where
    F: FnMut(i64, u32) -> Result<Cx>,
{
    if x.is_one() {
        return Err(Error::InvalidInput(
            "grouped summation needs a root of unity different from 1".into(),
        ));
    }
    let order = x.order() as i64;
    let mut powers: Option<(u32, Vec<Cx>)> = None;
    let mut group = |k: i64, bits: u32| -> Result<Cx> {
        if powers.as_ref().map(|(b, _)| *b) != Some(bits) {
            powers = Some((bits, x.power_table(bits)));
        }
        let table = &powers.as_ref().expect("filled above").1;
        let mut acc = Cx::zero(bits);
        for r in 0..order {
            let n = start + k * order + r;
            let t = term_mag(n, bits)?;
            acc += t * &table[n.rem_euclid(order) as usize];
        }
        Ok(acc)
    };
    levin::accelerate(&mut group, 0, order as usize, ctx)
}
