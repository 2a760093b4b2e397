//! Complex log-gamma, polygamma and generalized binomial coefficients.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, RwLock};

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{Cx, PrecisionContext};

/// Highest derivative order served by [`polygamma`].
pub const MAX_POLYGAMMA_ORDER: usize = 12;

static BERNOULLI_EVEN: RwLock<Vec<Rational>> = RwLock::new(Vec::new());
static BERNOULLI_FLOATS: RwLock<Option<HashMap<u32, Arc<Vec<Float>>>>> = RwLock::new(None);

/// `B_{2k}` for `k = 0..count` from tangent numbers.
fn compute_even_bernoulli(count: usize) -> Vec<Rational> {
    let n = count.max(2);
    let mut t = vec![Integer::new(); n + 1];
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j - k) as u64);
            let b = Integer::from(&t[j] * (j - k + 2) as u64);
            t[j] = a + b;
        }
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::from(1));
    for k in 1..=n {
        let four_k = Integer::from(1) << (2 * k as u32);
        let den = Integer::from(&four_k * &four_k) - &four_k;
        let mut b = Rational::from((Integer::from(&t[k] * (2 * k as u64)), den));
        if k % 2 == 0 {
            b = -b;
        }
        out.push(b);
    }
    out.truncate(count.max(1));
    out
}

fn ensure_bernoulli(count: usize) {
    if BERNOULLI_EVEN.read().expect("bernoulli lock").len() >= count {
        return;
    }
    let mut guard = BERNOULLI_EVEN.write().expect("bernoulli lock");
    if guard.len() < count {
        let target = count.max(2 * guard.len()).max(64);
        *guard = compute_even_bernoulli(target);
    }
}

/// The Bernoulli number `B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> Rational {
    match n {
        0 => Rational::from(1),
        1 => Rational::from((-1, 2)),
        _ if n % 2 == 1 => Rational::new(),
        _ => {
            ensure_bernoulli(n / 2 + 1);
            BERNOULLI_EVEN.read().expect("bernoulli lock")[n / 2].clone()
        }
    }
}

/// `B_{2k}` as floats for `k = 0..count`, cached per precision.
pub(crate) fn bernoulli_even_floats(bits: u32, count: usize) -> Arc<Vec<Float>> {
    if let Some(map) = BERNOULLI_FLOATS.read().expect("bernoulli lock").as_ref() {
        if let Some(v) = map.get(&bits) {
            if v.len() >= count {
                return v.clone();
            }
        }
    }
    ensure_bernoulli(count);
    let exact = BERNOULLI_EVEN.read().expect("bernoulli lock");
    let len = count.max(exact.len().min(count * 2));
    let floats: Vec<Float> = exact[..len.min(exact.len())]
        .iter()
        .map(|b| Float::with_val(bits, b))
        .collect();
    drop(exact);
    let floats = Arc::new(floats);
    let mut guard = BERNOULLI_FLOATS.write().expect("bernoulli lock");
    guard
        .get_or_insert_with(HashMap::new)
        .insert(bits, floats.clone());
    floats
}

/// Radius beyond which the asymptotic expansions reach `bits` of accuracy.
pub(crate) fn asymptotic_radius(bits: u32) -> f64 {
    (0.11 * bits as f64).max(12.0)
}

fn pole_check(z: &Cx, what: &str) -> Result<()> {
    if z.is_nonpositive_integer() {
        return Err(Error::Pole(format!(
            "{what} at non-positive integer {}",
            z.re_f64()
        )));
    }
    Ok(())
}

fn work_bits(ctx: &PrecisionContext, z: &Cx) -> u32 {
    let mag = z.abs_f64().max(1.0).log2().ceil() as u32;
    ctx.bits() + 24 + mag
}

/// Principal-branch `log Gamma(z)` (continuous off the negative real axis,
/// with `Im = -k pi` on the interval `(-k, -k + 1)`).
pub fn log_gamma(z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    pole_check(z, "log_gamma")?;
    let bits = work_bits(ctx, z);
    let z = z.at(bits);
    let v = if z.re_f64() < 0.5 {
        log_gamma_reflected(&z, bits)?
    } else {
        log_gamma_right(&z, bits)
    };
    v.at(ctx.bits()).finite("log_gamma")
}

/// `log Gamma` for `Re z >= 1/2` by upward shift and Stirling's series.
fn log_gamma_right(z: &Cx, bits: u32) -> Cx {
    let radius = asymptotic_radius(bits);
    let re = z.re_f64();
    let shift = if z.abs_f64() >= radius {
        0
    } else {
        (radius - re).ceil().max(0.0) as i64
    };
    let mut w = z.clone();
    let mut prod = Cx::one(bits);
    let mut arg_sum = 0.0;
    for _ in 0..shift {
        arg_sum += f64_arg(&w);
        prod *= &w;
        w += 1i64;
    }
    let mut v = stirling(&w, bits);
    if shift > 0 {
        let l = prod.ln();
        let wind = ((arg_sum - l.im_f64()) / (2.0 * PI)).round();
        v -= l;
        if wind != 0.0 {
            v -= Cx::pi(bits).mul_i() * (2.0 * wind);
        }
    }
    v
}

fn f64_arg(z: &Cx) -> f64 {
    let im = z.im_f64();
    let im = if im == 0.0 { 0.0 } else { im };
    im.atan2(z.re_f64())
}

/// Bernoulli terms needed once the argument is past [`asymptotic_radius`].
pub(crate) fn asymptotic_terms(bits: u32) -> usize {
    (0.3 * bits as f64) as usize + 16
}

fn stirling(w: &Cx, bits: u32) -> Cx {
    let mut half_ln_2pi = Float::with_val(bits, Constant::Pi);
    half_ln_2pi *= 2;
    half_ln_2pi = half_ln_2pi.ln() / 2u32;
    let mut s = (w - Cx::ratio(bits, 1, 2)) * w.ln() - w + Cx::from_float(half_ln_2pi);
    let inv = w.recip();
    let inv2 = inv.sqr();
    let mut p = inv;
    let tol = s.log2_abs().max(0.0) - bits as f64;
    let b = bernoulli_even_floats(bits, asymptotic_terms(bits));
    let mut prev = f64::INFINITY;
    for k in 1..b.len() {
        let c = Float::with_val(bits, &b[k] / ((2 * k) * (2 * k - 1)) as u64);
        let term = &p * &Cx::from_float(c);
        let m = term.log2_abs();
        if m > prev {
            break;
        }
        s += term;
        if m < tol {
            break;
        }
        prev = m;
        p *= &inv2;
    }
    s
}

/// Rough `Im log Gamma(z)` in double precision for branch selection.
fn im_log_gamma_f64(re: f64, im: f64) -> f64 {
    let mut a = re;
    let mut arg_sum = 0.0;
    while a < 20.0 || (a * a + im * im) < 400.0 {
        arg_sum += im.atan2(a);
        a += 1.0;
    }
    // Stirling in double precision at w = a + i im.
    let r2 = a * a + im * im;
    let l = 0.5 * r2.ln();
    let th = im.atan2(a);
    let mut v = (a - 0.5) * th + im * l - im;
    // 1/(12w) - 1/(360 w^3)
    v += -im / (12.0 * r2);
    let (w3r, w3i) = {
        let (r, i) = (a * a - im * im, 2.0 * a * im);
        (r * a - i * im, r * im + i * a)
    };
    let m3 = w3r * w3r + w3i * w3i;
    v += w3i / (360.0 * m3);
    v - arg_sum
}

fn log_gamma_reflected(z: &Cx, bits: u32) -> Result<Cx> {
    let pi = Cx::pi(bits);
    let one_minus = Cx::one(bits) - z;
    let sin = (&pi * z).sin();
    let v = pi.ln() - sin.ln() - log_gamma_right(&one_minus, bits);
    let im = z.im_f64();
    let target = im_log_gamma_f64(z.re_f64(), if im == 0.0 { 0.0 } else { im });
    let wind = ((target - v.im_f64()) / (2.0 * PI)).round();
    Ok(if wind != 0.0 {
        v + pi.mul_i() * (2.0 * wind)
    } else {
        v
    })
}

pub fn gamma(z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let bits = ctx.bits();
    let l = log_gamma(z, &ctx.elevated(16))?;
    l.exp().at(bits).finite("gamma")
}

pub fn digamma(z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    polygamma(0, z, ctx)
}

/// `psi^(j)(z)`, the `j`-th derivative of the digamma function.
pub fn polygamma(j: usize, z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    if j > MAX_POLYGAMMA_ORDER {
        return Err(Error::UnsupportedOrder {
            order: j,
            max: MAX_POLYGAMMA_ORDER,
        });
    }
    pole_check(z, "polygamma")?;
    let bits = work_bits(ctx, z) + 4 * j as u32;
    let z = z.at(bits);
    let radius = asymptotic_radius(bits);
    let shift = if z.abs_f64() >= radius && z.re_f64() > 0.0 {
        0
    } else {
        (radius - z.re_f64()).ceil().max(0.0) as i64
    };
    let jf = factorial(j as u32);
    let mut w = z.clone();
    let mut recur = Cx::zero(bits);
    for _ in 0..shift {
        recur += w.powi(-(j as i64) - 1);
        w += 1i64;
    }
    let asym = polygamma_asymptotic(j, &w, bits);
    let sign: i64 = if j % 2 == 0 { 1 } else { -1 };
    let v = asym - recur * Cx::from_float(Float::with_val(bits, &jf)) * sign;
    v.at(ctx.bits()).finite("polygamma")
}

fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

fn polygamma_asymptotic(j: usize, w: &Cx, bits: u32) -> Cx {
    let inv = w.recip();
    let inv2 = inv.sqr();
    let b = bernoulli_even_floats(bits, asymptotic_terms(bits));
    // psi ~ ln w - 1/(2w) - sum B_2k / (2k w^2k)
    // psi^(j) ~ (-1)^(j+1) [(j-1)!/w^j + j!/(2 w^(j+1)) + sum B_2k (2k+j-1)!/((2k)! w^(2k+j))]
    let (mut s, mut p) = if j == 0 {
        (w.ln() - &inv / 2i64, inv2.clone())
    } else {
        let fj1 = Float::with_val(bits, factorial(j as u32 - 1));
        let fj = Float::with_val(bits, factorial(j as u32));
        let wj = inv.powi(j as i64);
        let head = &wj * &Cx::from_float(fj1) + &wj * &inv * &Cx::from_float(fj / 2u32);
        (head, &wj * &inv2)
    };
    let tol = s.log2_abs() - bits as f64;
    let mut prev = f64::INFINITY;
    for k in 1..b.len() {
        let c = if j == 0 {
            Float::with_val(bits, &b[k] / (2 * k) as u64)
        } else {
            let mut c = b[k].clone();
            for t in 1..j {
                c *= (2 * k + t) as u64;
            }
            c
        };
        let term = &p * &Cx::from_float(c);
        let m = term.log2_abs();
        if m > prev {
            break;
        }
        if j == 0 {
            s -= term;
        } else {
            s += term;
        }
        if m < tol {
            break;
        }
        prev = m;
        p *= &inv2;
    }
    if j > 0 && j % 2 == 0 {
        -s
    } else {
        s
    }
}

/// `Gamma(a + 1) / (Gamma(b + 1) Gamma(a - b + 1))`.
pub fn gen_binom(a: &Cx, b: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let c = a - b;
    for (v, name) in [(a, "a"), (b, "b"), (&c, "a - b")] {
        if let Some(n) = v.as_integer() {
            if n < 0 {
                return Err(Error::Domain(format!(
                    "binomial coefficient with {name} = {n}, a negative integer"
                )));
            }
        }
    }
    let wctx = ctx.elevated(16);
    let one = Cx::one(wctx.bits());
    let l = log_gamma(&(a + &one), &wctx)?
        - log_gamma(&(b + &one), &wctx)?
        - log_gamma(&(&c + &one), &wctx)?;
    l.exp().at(ctx.bits()).finite("gen_binom")
}

/// `1 / binom(2n + 2a, n + a) = Gamma(n + a + 1)^2 / Gamma(2n + 2a + 1)`.
///
/// Returns exactly zero when `a` is a half-integer and `2n + 2a <= 0`. For
/// integer `a` with `n + a <= -1` both gammas have poles and the value is
/// reported as a pole.
pub fn recip_central_binom(n: i64, a: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let bits = ctx.bits() + 16;
    let s = a + Cx::int(bits, n);
    let two_s = &s * 2i64;
    if let Some(m) = two_s.as_integer() {
        if m % 2 != 0 && m <= 0 {
            return Ok(Cx::zero(ctx.bits()));
        }
        if m % 2 == 0 && m / 2 <= -1 {
            return Err(Error::Pole(format!(
                "central binomial at n + a = {} (integer a)",
                m / 2
            )));
        }
    }
    let wctx = ctx.elevated(16);
    let one = Cx::one(bits);
    let l = log_gamma(&(&s + &one), &wctx)? * 2i64 - log_gamma(&(&two_s + &one), &wctx)?;
    l.exp().at(ctx.bits()).finite("recip_central_binom")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::with_digits(40)
    }

    fn close(a: &Cx, b: &Cx, tol: f64) -> bool {
        a.dist(b).to_f64() <= tol
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
        assert_eq!(bernoulli(7), 0);
        assert_eq!(bernoulli(30), Rational::from((8615841276005i64, 14322)));
    }

    #[test]
    fn log_gamma_examples() {
        let c = ctx();
        let b = c.bits();
        assert!(log_gamma(&Cx::one(b), &c).unwrap().abs_f64() < 1e-40);
        let l5 = log_gamma(&Cx::int(b, 5), &c).unwrap();
        assert!(close(&l5, &Cx::int(b, 24).ln(), 1e-39));
        let lh = log_gamma(&Cx::ratio(b, 1, 2), &c).unwrap();
        assert!(close(&lh, &(Cx::pi(b).ln() / 2i64), 1e-40));
        assert!(log_gamma(&Cx::int(b, -3), &c).is_err());
    }

    #[test]
    fn log_gamma_negative_axis_branch() {
        let c = ctx();
        let b = c.bits();
        // Gamma(-5/2) = -8 sqrt(pi) / 15
        let l = log_gamma(&Cx::ratio(b, -5, 2), &c).unwrap();
        let mag = (Cx::pi(b).sqrt() * 8i64 / 15i64).ln();
        assert!((l.re_f64() - mag.re_f64()).abs() < 1e-30);
        assert!((l.im_f64() + 3.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn log_gamma_continuity_across_shift() {
        let c = ctx();
        let b = c.bits();
        for (re, im) in [(-7.3, 2.1), (0.3, -40.0), (-0.4, 0.5), (3.2, 100.0)] {
            let z = Cx::from_f64(b, re, im);
            let l0 = log_gamma(&z, &c).unwrap();
            let l1 = log_gamma(&(&z + 1i64), &c).unwrap();
            // log Gamma(z + 1) = log Gamma(z) + log z on the principal branch
            assert!(close(&(l0 + z.ln()), &l1, 1e-30), "{re} {im}");
        }
    }

    #[test]
    fn polygamma_examples() {
        let c = ctx();
        let b = c.bits();
        let g = Cx::euler_gamma(b);
        assert!(close(&digamma(&Cx::one(b), &c).unwrap(), &-g, 1e-40));
        let z2 = Cx::pi(b).sqr() / 6i64;
        assert!(close(&polygamma(1, &Cx::one(b), &c).unwrap(), &z2, 1e-40));
        let z = Cx::ratio(b, 2, 3);
        let d = digamma(&(&z + 1i64), &c).unwrap() - digamma(&z, &c).unwrap();
        assert!(close(&d, &z.recip(), 1e-40));
        assert!(matches!(
            polygamma(13, &z, &c),
            Err(Error::UnsupportedOrder { order: 13, max: 12 })
        ));
    }

    #[test]
    fn polygamma_high_orders_at_one() {
        // psi^(j)(1) = (-1)^(j+1) j! zeta(j+1); zeta from a partial sum plus
        // the Euler-Maclaurin tail
        let c = ctx();
        let b = c.bits();
        let cut = 2000i64;
        for j in 1..=MAX_POLYGAMMA_ORDER {
            let v = polygamma(j, &Cx::one(b), &c).unwrap();
            let s = j as i64 + 1;
            let mut z = Cx::zero(b);
            for n in 1..cut {
                z += Cx::int(b, n).powi(-s);
            }
            let nn = Cx::int(b, cut);
            z += nn.powi(1 - s) / (s - 1) + nn.powi(-s) / 2i64 + nn.powi(-s - 1) * s / 12i64
                - nn.powi(-s - 3) * (s * (s + 1) * (s + 2)) / 720i64;
            let f = Cx::from_float(Float::with_val(b, factorial(j as u32)));
            let sign = if j % 2 == 1 { 1 } else { -1 };
            let expect = z * f * sign;
            assert!(
                v.dist(&expect).to_f64() / expect.abs_f64() < 1e-20,
                "order {j}"
            );
        }
    }

    #[test]
    fn binomials() {
        let c = ctx();
        let b = c.bits();
        let six = gen_binom(&Cx::int(b, 4), &Cx::int(b, 2), &c).unwrap();
        assert!(close(&six, &Cx::int(b, 6), 1e-38));
        let v = gen_binom(&Cx::one(b), &Cx::ratio(b, 1, 2), &c).unwrap();
        assert!(close(&v, &(Cx::int(b, 4) / Cx::pi(b)), 1e-40));
        let big = gen_binom(&Cx::int(b, 20), &Cx::int(b, 10), &c).unwrap();
        assert!(close(&big, &Cx::int(b, 184756), 1e-33));
        assert!(gen_binom(&Cx::int(b, 2), &Cx::int(b, -1), &c).is_err());
    }

    #[test]
    fn central_binomial_conventions() {
        let c = ctx();
        let b = c.bits();
        let half = Cx::ratio(b, 1, 2);
        assert!(recip_central_binom(-1, &half, &c).unwrap().is_zero());
        let v = recip_central_binom(2, &Cx::zero(b), &c).unwrap();
        assert!(close(&v, &Cx::ratio(b, 1, 6), 1e-40));
        let v = recip_central_binom(0, &half, &c).unwrap();
        assert!(close(&v, &(Cx::pi(b) / 4i64), 1e-40));
        assert!(matches!(
            recip_central_binom(-3, &Cx::one(b), &c),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn gamma_reflection_and_duplication() {
        let c = ctx();
        let b = c.bits();
        let pi = Cx::pi(b);
        for (re, im) in [(0.3, 0.0), (-1.7, 0.4), (2.25, -3.0), (0.5, 7.0)] {
            let z = Cx::from_f64(b, re, im);
            let g = gamma(&z, &c).unwrap() * gamma(&(Cx::one(b) - &z), &c).unwrap();
            let r = g * (&pi * &z).sin() / &pi;
            assert!(close(&r, &Cx::one(b), 1e-36), "reflection at {re} {im}");
        }
        for (re, im) in [(0.7, 0.0), (3.3, 1.2), (9.1, -0.5)] {
            let s = Cx::from_f64(b, re, im);
            let lhs = gamma(&s, &c).unwrap() * gamma(&(&s + Cx::ratio(b, 1, 2)), &c).unwrap();
            let two_s = &s * 2i64;
            let g2 = gamma(&two_s, &c).unwrap();
            let rhs = pi.sqrt() * Cx::int(b, 2).powc(&(Cx::one(b) - &two_s)) * &g2;
            assert!(lhs.dist(&rhs).to_f64() / g2.abs_f64() < 1e-36);
        }
    }
}
