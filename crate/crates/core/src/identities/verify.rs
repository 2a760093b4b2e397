//! Residual checks for registry points.

use std::time::{Duration, Instant};

use rug::Float;

use super::cot::{cot_deriv_combo, MAX_COT_ORDER};
use super::params::{ExactComplex, Params};
use super::rhs::*;
use super::{IdentityId, ToleranceClass};
use crate::apery::{
    apery_zeta3_series, cb_series, cpas_lhs, fc_series, half_integer_lhs, param_cb_closed,
    param_cb_series, CpasParams, FussParams,
};
use crate::bell::constants;
use crate::error::{Error, Result};
use crate::numerics::{Cx, PrecisionContext};
use crate::polylog::{li, li_pair};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualMode {
    /// `|lhs - rhs|`, used when `|rhs| <= 1`.
    Absolute,
    /// `|lhs - rhs| / |rhs|`.
    Relative,
}

impl ResidualMode {
    pub fn name(self) -> &'static str {
        match self {
            ResidualMode::Absolute => "absolute",
            ResidualMode::Relative => "relative",
        }
    }
}

/// Outcome of checking one identity at one parameter point.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub params: Params,
    pub lhs: Option<Cx>,
    pub rhs: Option<Cx>,
    /// `None` when an evaluation failed.
    pub residual: Option<f64>,
    pub residual_mode: ResidualMode,
    pub tolerance: f64,
    pub class: ToleranceClass,
    pub terms_used: usize,
    pub elapsed: Duration,
    pub pass: bool,
    pub error: Option<String>,
}

struct Sides {
    lhs: Cx,
    rhs: Cx,
    terms: usize,
}

/// Offsets `b - a - 1/2` approached in the `b -> a + 1/2` limit.
const BHALF_OFFSETS: [f64; 5] = [1e-4, 1e-5, 1e-6, 1e-7, 1e-8];

/// `lim_{b -> a + 1/2}` of the `q = 1` shifted bilateral series, by
/// polynomial extrapolation to zero offset. Returns the value and the total
/// number of terms summed.
pub fn bhalf_limit_lhs(
    a: &Cx,
    x: crate::RootOfUnity,
    ctx: &PrecisionContext,
) -> Result<(Cx, usize)> {
    let bits = ctx.bits();
    let a = a.at(bits);
    let mut hs = Vec::new();
    let mut vals = Vec::new();
    let mut terms = 0;
    for eps in BHALF_OFFSETS {
        let h = Float::with_val(bits, eps);
        let b = &a + Cx::ratio(bits, 1, 2) - Cx::from_float(h.clone());
        let r = cpas_lhs(&CpasParams::shifted(1, a.clone(), b, x)?, ctx)?;
        terms += r.terms_used;
        hs.push(Cx::from_float(h));
        vals.push(r.value);
    }
    // Neville's scheme evaluated at h = 0
    let n = vals.len();
    for level in 1..n {
        for i in 0..n - level {
            let num = &hs[i + level] * &vals[i] - &hs[i] * &vals[i + 1];
            vals[i] = num / (&hs[i + level] - &hs[i]);
        }
    }
    Ok((vals.swap_remove(0), terms))
}

fn require_not_integer(name: &str, v: &ExactComplex) -> Result<()> {
    if v.is_real() && v.re.is_integer() {
        return Err(Error::InvalidInput(format!(
            "{name} = {v} must not be an integer"
        )));
    }
    Ok(())
}

fn require_q_x(params: &Params) -> Result<()> {
    let q = params.q()?;
    if q == 0 {
        return Err(Error::InvalidInput("q must be a positive integer".into()));
    }
    if q == 1 && params.x()?.is_one() {
        return Err(Error::InvalidInput(
            "(q,x)=(1,1) is excluded: the series diverges".into(),
        ));
    }
    Ok(())
}

fn require_x_not_one(params: &Params) -> Result<()> {
    if params.x()?.is_one() {
        return Err(Error::InvalidInput(
            "x = 1 is excluded for this identity".into(),
        ));
    }
    Ok(())
}

fn require_positive(name: &str, v: u32) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidInput(format!(
            "{name} must be a positive integer"
        )));
    }
    Ok(())
}

fn abs_sqr(z: &ExactComplex) -> rug::Rational {
    rug::Rational::from(z.re.square_ref()) + rug::Rational::from(z.im.square_ref())
}

fn require_disk(z: &ExactComplex, nonzero: bool) -> Result<()> {
    if abs_sqr(z) > 1 {
        return Err(Error::Domain(format!("|z| > 1 for z = {z}")));
    }
    if nonzero && abs_sqr(z) == 0 {
        return Err(Error::Domain("z = 0 makes a logarithm singular".into()));
    }
    Ok(())
}

fn require_real_interval(
    z: &ExactComplex,
    lo: i64,
    lo_den: i64,
    hi: i64,
    closed: bool,
) -> Result<()> {
    let lo = rug::Rational::from((lo, lo_den));
    let inside = z.is_real() && z.re > lo && (z.re < hi || (closed && z.re == hi));
    if !inside {
        return Err(Error::Domain(format!(
            "z = {z} is outside the allowed real interval"
        )));
    }
    Ok(())
}

/// Checks that `params` carries every field `id` needs and lies in its domain.
pub fn validate_params(id: IdentityId, params: &Params) -> Result<()> {
    use IdentityId::*;
    match id {
        Thm21 | Cor25 => {
            require_q_x(params)?;
            if id == Thm21 {
                require_not_integer("a", params.a()?)?;
            }
        }
        Cor23 | Cor24 => {
            require_not_integer("a", params.a()?)?;
            if id == Cor23 {
                require_x_not_one(params)?;
            } else {
                params.x()?;
            }
        }
        Cor25Q1 => require_x_not_one(params)?,
        Cor25Q2 => {
            params.x()?;
        }
        Thm26 => {
            let m = params.m()?;
            if m > MAX_COT_ORDER {
                return Err(Error::UnsupportedOrder {
                    order: m as usize,
                    max: MAX_COT_ORDER as usize,
                });
            }
            require_not_integer("a", params.a()?)?;
            require_x_not_one(params)?;
        }
        Thm41 => {
            require_q_x(params)?;
            let (a, b) = (params.a()?, params.b()?);
            let bits = 64;
            CpasParams::shifted(params.q()?, a.to_cx(bits), b.to_cx(bits), params.x()?)?;
            let twice = (b - a).re * rug::Rational::from(2);
            if (b - a).is_real() && twice.is_integer() && twice > 0 {
                return Err(Error::InvalidInput(format!(
                    "2(b - a) = {twice} is a positive integer"
                )));
            }
        }
        Thm41Bhalf => {
            require_not_integer("a", params.a()?)?;
            require_not_integer("a + 1/2", &(params.a()? + &ExactComplex::ratio(1, 2)))?;
            require_x_not_one(params)?;
        }
        Prop22 | Cor54 => {
            require_positive("p", params.p()?)?;
            require_disk(params.z()?, true)?;
        }
        Thm51 | Thm52 | Cor53 => {
            let m = params.m()?;
            require_positive("m", m)?;
            if id != Cor53 {
                require_positive("p", params.p()?)?;
            }
            let z = params.z()?;
            if abs_sqr(z) == 0 {
                return Err(Error::Domain("z = 0 makes a logarithm singular".into()));
            }
            if m == 1 && id != Thm51 {
                require_real_interval(z, -1, 2, 1, false)?;
            }
            let zc = z.to_cx(128);
            let arg = if id == Thm51 { zc } else { -zc };
            FussParams::new(m, params.p.unwrap_or(1), arg)?;
        }
        EqCase1 | EqCase2 | EqCase2_1 => require_disk(params.z()?, false)?,
        EqCase2_2 => require_disk(params.z()?, true)?,
        DilogA => require_real_interval(params.z()?, -1, 2, 1, false)?,
        DilogB => require_disk(params.z()?, false)?,
        Li21X => {
            let z = params.z()?;
            require_real_interval(z, -1, 1, 1, true)?;
            if z.re == 0 {
                return Err(Error::Domain("z = 0 makes a logarithm singular".into()));
            }
        }
        ParamCbX1 => {
            let a = params.a()?;
            if a.is_real() && a.re.is_integer() && a.re <= 0 {
                return Err(Error::InvalidInput(format!(
                    "a = {a} is a non-positive integer"
                )));
            }
        }
        Zeta3Apery | Li2Half => {}
    }
    Ok(())
}

/// Tolerances tried in turn for series evaluations, loosest last.
fn ladder(class_tol: f64, ctx: &PrecisionContext) -> Vec<PrecisionContext> {
    [class_tol * 1e-3, class_tol * 1e-1, class_tol]
        .into_iter()
        .map(|t| ctx.with_tolerance(t.max(ctx.target_tol())))
        .collect()
}

/// Runs `f` down the tolerance ladder, retrying only on non-convergence.
fn with_ladder<T>(
    ctxs: &[PrecisionContext],
    mut f: impl FnMut(&PrecisionContext) -> Result<T>,
) -> Result<T> {
    let mut last = None;
    for c in ctxs {
        match f(c) {
            Err(e @ Error::NonConvergence { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("non-empty ladder"))
}

fn evaluate(
    id: IdentityId,
    params: &Params,
    ctx: &PrecisionContext,
    class_tol: f64,
) -> Result<Sides> {
    use IdentityId::*;
    validate_params(id, params)?;
    let bits = ctx.bits();
    let ctxs = ladder(class_tol, ctx);
    let a = || params.a().map(|v| v.to_cx(bits));
    let z = || params.z().map(|v| v.to_cx(bits));
    let series =
        |f: &dyn Fn(&PrecisionContext) -> Result<crate::SeriesResult>| -> Result<(Cx, usize)> {
            let r = with_ladder(&ctxs, |c| f(c))?;
            Ok((r.value, r.terms_used))
        };
    let closed = |f: &dyn Fn(&PrecisionContext) -> Result<Cx>| with_ladder(&ctxs, |c| f(c));

    let ((lhs, terms), rhs) = match id {
        Thm21 | Cor23 | Cor24 => {
            let q = match id {
                Cor23 => 1,
                Cor24 => 2,
                _ => params.q()?,
            };
            let (a, x) = (a()?, params.x()?);
            let cp = CpasParams::new(q, a.clone(), x)?;
            let lhs = series(&|c| cpas_lhs(&cp, c))?;
            let rhs = match id {
                Cor23 => closed(&|c| rhs_cor23(&a, x, c))?,
                Cor24 => closed(&|c| rhs_cor24(&a, x, c))?,
                _ => closed(&|c| rhs_thm21(q, &a, x, c))?,
            };
            (lhs, rhs)
        }
        Cor25 | Cor25Q1 | Cor25Q2 => {
            let q = match id {
                Cor25Q1 => 1,
                Cor25Q2 => 2,
                _ => params.q()?,
            };
            let x = params.x()?;
            let lhs = series(&|c| half_integer_lhs(q, x, c))?;
            let rhs = match id {
                Cor25Q1 => closed(&|c| rhs_cor25_q1(x, c))?,
                Cor25Q2 => closed(&|c| rhs_cor25_q2(x, c))?,
                _ => closed(&|c| rhs_cor25(q, x, c))?,
            };
            (lhs, rhs)
        }
        Thm26 => {
            let (m, a, x) = (params.m()?, a()?, params.x()?);
            (
                (li_pair(m, &a, x, ctx)?, 0),
                cot_deriv_combo(m, &a, x, ctx)?,
            )
        }
        Thm41 => {
            let (q, a, x) = (params.q()?, a()?, params.x()?);
            let b = params.b()?.to_cx(bits);
            let cp = CpasParams::shifted(q, a.clone(), b.clone(), x)?;
            let lhs = series(&|c| cpas_lhs(&cp, c))?;
            (lhs, closed(&|c| rhs_thm41(q, &a, &b, x, c))?)
        }
        Thm41Bhalf => {
            let (a, x) = (a()?, params.x()?);
            let lhs = with_ladder(&ctxs, |c| bhalf_limit_lhs(&a, x, c))?;
            (lhs, closed(&|c| rhs_thm41_bhalf(&a, x, c))?)
        }
        Prop22 | Cor54 => {
            let (p, z) = (params.p()?, z()?);
            if id == Prop22 {
                (
                    series(&|c| cb_series(p as i32, &z, c))?,
                    closed(&|c| rhs_prop22(p, &z, c))?,
                )
            } else {
                (
                    series(&|c| cb_series(p as i32, &-&z, c))?,
                    closed(&|c| rhs_cor54(p, &z, c))?,
                )
            }
        }
        Thm51 | Thm52 | Cor53 => {
            let (m, z) = (params.m()?, z()?);
            let p = if id == Cor53 { 1 } else { params.p()? };
            let arg = if id == Thm51 { z.clone() } else { -&z };
            let fp = FussParams::new(m, p, arg)?;
            let lhs = series(&|c| fc_series(&fp, c))?;
            let rhs = match id {
                Thm51 => closed(&|c| rhs_thm51(m, p, &z, c))?,
                Thm52 => closed(&|c| rhs_thm52(m, p, &z, c))?,
                _ => closed(&|c| rhs_cor53(m, &z, c))?,
            };
            (lhs, rhs)
        }
        EqCase1 | EqCase2 => {
            let z = z()?;
            let p = if id == EqCase1 { 1 } else { 2 };
            let lhs = series(&|c| cb_series(p, &z, c))?;
            let rhs = if id == EqCase1 {
                closed(&|c| rhs_case1(&z, c))?
            } else {
                closed(&|c| rhs_case2(&z, c))?
            };
            (lhs, rhs)
        }
        EqCase2_1 | EqCase2_2 => {
            let z = z()?;
            let p = if id == EqCase2_1 { 1 } else { 2 };
            let lhs = series(&|c| cb_series(p, &-&z, c))?;
            let rhs = if id == EqCase2_1 {
                closed(&|c| rhs_case2_1(&z, c))?
            } else {
                closed(&|c| rhs_case2_2(&z, c))?
            };
            (lhs, rhs)
        }
        DilogA | DilogB => {
            let z = z()?;
            let lhs = if id == DilogA {
                closed(&|c| dilog_a(&z, c))?
            } else {
                closed(&|c| dilog_b(&z, c))?
            };
            ((lhs, 0), Cx::zero(bits))
        }
        Li21X => {
            let z = z()?;
            let (l, r) = with_ladder(&ctxs, |c| li21_x_sides(&z, c))?;
            ((l, 0), r)
        }
        Zeta3Apery => {
            let lhs = series(&|c| apery_zeta3_series(c))?;
            let k = constants(ctx)?;
            let zeta3 = k.zeta(3).ok_or(Error::NonFinite("zeta(3) cache"))?.clone();
            (lhs, zeta3 * 2i64 / 5i64)
        }
        ParamCbX1 => {
            let a = a()?;
            let one = Cx::one(bits);
            let lhs = series(&|c| param_cb_series(1, &a, &one, c))?;
            (lhs, param_cb_closed(&a, ctx)?)
        }
        Li2Half => (
            (li(2, &Cx::ratio(bits, 1, 2), ctx)?, 0),
            li2_half_closed(ctx)?,
        ),
    };
    Ok(Sides { lhs, rhs, terms })
}

/// Checks `id` at `params` against its class tolerance at the context's
/// target digits. Evaluation errors become failing reports.
pub fn verify(id: IdentityId, params: &Params, ctx: &PrecisionContext) -> IdentityReport {
    verify_with_tolerance(id, params, ctx, None)
}

/// As [`verify`], with `tolerance` replacing the class tolerance when given.
pub fn verify_with_tolerance(
    id: IdentityId,
    params: &Params,
    ctx: &PrecisionContext,
    tolerance: Option<f64>,
) -> IdentityReport {
    let class = id.class(params);
    let class_tol = class.tolerance(ctx.target_digits());
    let tolerance = tolerance.unwrap_or(class_tol);
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        evaluate(id, params, ctx, class_tol.min(tolerance))
    }))
    .unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err(Error::InvalidInput(format!("internal error: {msg}")))
    });
    let elapsed = start.elapsed();
    let mut report = IdentityReport {
        id,
        params: params.clone(),
        lhs: None,
        rhs: None,
        residual: None,
        residual_mode: ResidualMode::Absolute,
        tolerance,
        class,
        terms_used: 0,
        elapsed,
        pass: false,
        error: None,
    };
    match outcome {
        Ok(s) => {
            let diff = s.lhs.dist(&s.rhs);
            let scale = s.rhs.abs();
            let (residual, mode) = if scale <= 1 {
                (diff, ResidualMode::Absolute)
            } else {
                (diff / scale, ResidualMode::Relative)
            };
            let r = residual.to_f64();
            report.pass = r.is_finite() && r <= tolerance;
            report.residual = Some(r);
            report.residual_mode = mode;
            report.terms_used = s.terms;
            report.lhs = Some(s.lhs);
            report.rhs = Some(s.rhs);
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report
}
