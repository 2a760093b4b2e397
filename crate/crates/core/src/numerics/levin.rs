//! Levin u-transform with a Richardson fallback.

use rug::ops::Pow;
use rug::Float;

use super::complex::Cx;
use super::context::PrecisionContext;
use super::series::{SeriesResult, SumMethod};
use crate::error::{Error, Result};

/// Head lengths summed directly before the transform is applied to the tail.
const OFFSETS: [usize; 4] = [0, 12, 40, 120];
/// A run of this many exactly-zero terms ends a series with finite support.
const ZERO_RUN: usize = 64;

/// Extra working bits used for terms fed to the transform.
pub fn working_bits(ctx: &PrecisionContext) -> u32 {
    2 * ctx.bits() + 32
}

/// One Levin u estimate from `terms` (all nonzero) whose partial sums are
/// `partial`, with `beta` the index shift of the first term. Returns the
/// estimate and the number of bits lost to cancellation.
pub fn levin_u(terms: &[Cx], partial: &[Cx], beta: u64, bits: u32) -> Option<(Cx, f64)> {
    let k = terms.len().checked_sub(1)?;
    if k == 0 || partial.len() != terms.len() {
        return None;
    }
    let mut num = Cx::zero(bits);
    let mut den = Cx::zero(bits);
    let mut binom = Float::with_val(bits, 1);
    let mut peak = f64::NEG_INFINITY;
    let last = Float::with_val(bits, beta + k as u64);
    for j in 0..=k {
        let base = Float::with_val(bits, beta + j as u64);
        let mut w = Float::with_val(bits, &base / &last).pow((k - 1) as u32);
        w *= &binom;
        if j % 2 == 1 {
            w = -w;
        }
        let omega = &terms[j] * &Cx::from_float(base);
        let c = Cx::from_float(w) / omega;
        let contrib = &c * &partial[j];
        peak = peak.max(contrib.log2_abs()).max(c.log2_abs());
        num += contrib;
        den += c;
        binom *= (k - j) as u32;
        binom /= (j + 1) as u32;
    }
    if den.is_zero() {
        return None;
    }
    let lost = (peak - num.log2_abs().min(den.log2_abs())).max(0.0);
    let t = num / den;
    t.is_finite().then_some((t, lost))
}

struct TermCache<'a> {
    term: &'a mut dyn FnMut(i64, u32) -> Result<Cx>,
    start: i64,
    bits: u32,
    terms: Vec<Cx>,
    partial: Vec<Cx>,
    limit: usize,
}

impl TermCache<'_> {
    /// Ensures at least `n` raw terms are cached; `false` when over budget.
    fn fill(&mut self, n: usize) -> Result<bool> {
        while self.terms.len() < n {
            if self.terms.len() >= self.limit {
                return Ok(false);
            }
            let idx = self.start + self.terms.len() as i64;
            let t = (self.term)(idx, self.bits)?
                .finite("series term")?
                .at(self.bits);
            let s = match self.partial.last() {
                Some(p) => p + &t,
                None => t.clone(),
            };
            self.terms.push(t);
            self.partial.push(s);
        }
        Ok(true)
    }

    fn partial_before(&self, m: usize) -> Cx {
        if m == 0 {
            Cx::zero(self.bits)
        } else {
            self.partial[m - 1].clone()
        }
    }
}

struct Best {
    value: Cx,
    err: f64,
    terms: usize,
}

/// Adaptive Levin summation of `term(start), term(start + 1), ...`, where each
/// call to `term` stands for `per_call` terms of the underlying series (used
/// by grouped summation for reporting).
pub fn accelerate(
    term: &mut dyn FnMut(i64, u32) -> Result<Cx>,
    start: i64,
    per_call: usize,
    ctx: &PrecisionContext,
) -> Result<SeriesResult> {
    let wbits = working_bits(ctx);
    let method = if per_call > 1 {
        SumMethod::GroupedLevin
    } else {
        SumMethod::Levin
    };
    let limit = (ctx.max_terms() / per_call.max(1)).max(1);
    let mut cache = TermCache {
        term,
        start,
        bits: wbits,
        terms: Vec::new(),
        partial: Vec::new(),
        limit,
    };
    let tol = ctx.target_tol();
    let noise_floor = -(wbits as f64);
    let mut best: Option<Best> = None;

    for &offset in OFFSETS.iter() {
        if !cache.fill(offset)? {
            break;
        }
        let head = cache.partial_before(offset);
        let mut tail: Vec<Cx> = Vec::new();
        let mut tail_partial: Vec<Cx> = Vec::new();
        let mut raw = offset;
        let mut zero_run = 0usize;
        let mut prev: Option<(Cx, f64)> = None;
        let mut finished = false;

        for k in 1..=ctx.max_levin_order() {
            while tail.len() < k + 1 {
                if !cache.fill(raw + 1)? {
                    finished = true;
                    break;
                }
                let t = cache.terms[raw].clone();
                raw += 1;
                if t.is_zero() {
                    zero_run += 1;
                    if zero_run >= ZERO_RUN {
                        return Ok(SeriesResult {
                            value: cache.partial_before(raw).at(ctx.bits()),
                            err_estimate: 0.0,
                            terms_used: raw * per_call,
                            converged: true,
                            method: SumMethod::Finite,
                        });
                    }
                    continue;
                }
                zero_run = 0;
                let s = match tail_partial.last() {
                    Some(p) => p + &t,
                    None => t.clone(),
                };
                tail.push(t);
                tail_partial.push(s);
            }
            if finished {
                break;
            }
            let Some((est, lost)) = levin_u(&tail, &tail_partial, offset as u64 + 1, wbits) else {
                break;
            };
            let value = &head + &est;
            let scale = value.log2_abs().max(0.0);
            let rounding = 2f64.powf(lost + noise_floor + scale);
            if let Some((pv, perr)) = &prev {
                let diff = value.dist(pv).to_f64();
                let err = diff.max(rounding);
                let rel_tol = tol * 2f64.powf(scale);
                if best.as_ref().map_or(true, |b| err < b.err) {
                    best = Some(Best {
                        value: value.clone(),
                        err,
                        terms: raw * per_call,
                    });
                }
                if err <= rel_tol / 2.0 && *perr <= 16.0 * rel_tol {
                    return Ok(SeriesResult {
                        value: value.at(ctx.bits()),
                        err_estimate: err,
                        terms_used: raw * per_call,
                        converged: true,
                        method,
                    });
                }
                if rounding > rel_tol / 16.0 {
                    break;
                }
                prev = Some((value, err));
            } else {
                prev = Some((value, f64::INFINITY));
            }
        }
    }

    let rich = richardson(&mut cache, ctx)?;
    if let Some(r) = rich {
        let scale = r.value.log2_abs().max(0.0);
        if r.err <= ctx.target_tol() * 2f64.powf(scale) {
            return Ok(SeriesResult {
                value: r.value.at(ctx.bits()),
                err_estimate: r.err,
                terms_used: r.terms * per_call,
                converged: true,
                method: SumMethod::Richardson,
            });
        }
        if best.as_ref().map_or(true, |b| r.err < b.err) {
            best = Some(r);
        }
    }
    let best = best
        .map(|b| (b.terms, b.err))
        .unwrap_or((cache.terms.len() * per_call, f64::INFINITY));
    Err(Error::NonConvergence {
        terms: best.0,
        err_estimate: best.1,
    })
}

/// Richardson extrapolation of the partial sums at `n = 32 * 2^i`, assuming
/// an error expansion in powers `n^{-j/2}`.
fn richardson(cache: &mut TermCache<'_>, ctx: &PrecisionContext) -> Result<Option<Best>> {
    let mut sums: Vec<Cx> = Vec::new();
    let mut n = 32usize;
    while sums.len() < 12 && cache.fill(n)? {
        sums.push(cache.partial[n - 1].clone());
        n *= 2;
    }
    if sums.len() < 3 {
        return Ok(None);
    }
    let bits = working_bits(ctx);
    let mut table = sums;
    let mut err = f64::INFINITY;
    let mut j = 1u32;
    while table.len() > 1 {
        let f = Float::with_val(bits, 2).pow(Float::with_val(bits, j) / 2u32);
        let denom = Float::with_val(bits, &f - 1u32);
        let next: Vec<Cx> = table
            .windows(2)
            .map(|w| (&w[1] * &f - &w[0]) / &denom)
            .collect();
        let prev = table.last().expect("non-empty");
        err = next.last().expect("non-empty").dist(prev).to_f64();
        table = next;
        j += 1;
    }
    Ok(Some(Best {
        value: table.pop().expect("non-empty"),
        err,
        terms: cache.terms.len(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levin_alternating_eta_half() {
        let ctx = PrecisionContext::with_digits(40);
        let mut f = |n: i64, b: u32| {
            let s = if n % 2 == 0 { 1 } else { -1 };
            Ok(Cx::int(b, s) / Cx::int(b, n + 1).sqrt())
        };
        let r = accelerate(&mut f, 0, 1, &ctx).unwrap();
        // (1 - sqrt 2) zeta(1/2)
        let expect = Cx::from_f64(128, 0.6048986434216303702472, 0.0);
        assert!(r.value.dist(&expect) < 1e-15);
        assert!(r.err_estimate <= 1e-40);
    }

    #[test]
    fn levin_reports_nonconvergence() {
        let ctx = PrecisionContext::with_digits(30).with_max_terms(10);
        let mut f = |n: i64, b: u32| Ok(Cx::int(b, n + 1).recip());
        assert!(accelerate(&mut f, 0, 1, &ctx).is_err());
    }

    #[test]
    fn finite_support_is_detected() {
        let ctx = PrecisionContext::with_digits(30);
        let mut f = |n: i64, b: u32| {
            Ok(if n < 3 {
                Cx::int(b, n + 1)
            } else {
                Cx::zero(b)
            })
        };
        let r = accelerate(&mut f, 0, 1, &ctx).unwrap();
        assert_eq!(r.method, SumMethod::Finite);
        assert_eq!(r.value.re_f64(), 6.0);
    }
}
