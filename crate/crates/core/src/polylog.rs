//! Polylogarithms on the closed unit disk, cyclotomic Hurwitz zeta values and
//! the generalized digamma / extended trigonometric functions.

use std::fmt;

use rug::Float;

use crate::error::{Error, Result};
use crate::gamma::{
    asymptotic_radius, asymptotic_terms, bernoulli, bernoulli_even_floats, polygamma,
};
use crate::numerics::{sum_accelerated, sum_series, Cx, PrecisionContext, RootOfUnity};

/// Index vector `(k_1, ..., k_r)` of a multiple polylogarithm.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(ks: Vec<u32>) -> Result<Self> {
        if ks.is_empty() {
            return Err(Error::InvalidInput("composition must be non-empty".into()));
        }
        if ks.iter().any(|&k| k == 0) {
            return Err(Error::InvalidInput(format!(
                "composition entries must be positive, got {ks:?}"
            )));
        }
        Ok(Composition(ks))
    }

    /// `{1}_p`.
    pub fn ones(p: usize) -> Result<Self> {
        Composition::new(vec![1; p])
    }

    pub fn ks(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The word in the letters `0 = dt/t`, `1 = dt/(1-t)`: each `k` becomes
    /// `0^(k-1) 1`.
    fn word(&self) -> Vec<u8> {
        let mut w = Vec::with_capacity(self.weight() as usize);
        for &k in &self.0 {
            w.extend(std::iter::repeat(0).take(k as usize - 1));
            w.push(1);
        }
        w
    }

    /// Inverse of [`Composition::word`]; `None` unless the word ends in `1`.
    fn from_word(w: &[u8]) -> Option<Self> {
        if w.last() != Some(&1) {
            return None;
        }
        let mut ks = Vec::new();
        let mut run = 1;
        for &a in w {
            if a == 0 {
                run += 1;
            } else {
                ks.push(run);
                run = 1;
            }
        }
        Some(Composition(ks))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Argument of the cyclotomic Hurwitz value `sum_{n>=1} x^n / (n + b)^p`.
#[derive(Debug, Clone)]
pub struct HurwitzArg {
    pub p: u32,
    pub x: RootOfUnity,
    pub b: Cx,
}

impl HurwitzArg {
    pub fn new(p: u32, x: RootOfUnity, b: Cx) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidInput(
                "Hurwitz order p must be positive".into(),
            ));
        }
        if p == 1 && x.is_one() {
            return Err(Error::Domain("(p, x) = (1, 1) diverges".into()));
        }
        if let Some(n) = b.as_integer() {
            if n < 0 {
                return Err(Error::Domain(format!(
                    "shift b = {n} is a negative integer"
                )));
            }
        }
        Ok(HurwitzArg { p, x, b })
    }
}

fn guard_bits(ctx: &PrecisionContext) -> u32 {
    ctx.bits() + 24
}

/// Hurwitz zeta `sum_{n>=0} (n + w)^{-s}` for integer `s >= 2`, by
/// Euler-Maclaurin summation after shifting `w` past the asymptotic radius.
pub fn hurwitz_zeta(s: u32, w: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    if s < 2 {
        return Err(Error::Domain(format!("Hurwitz zeta needs s >= 2, got {s}")));
    }
    if w.is_nonpositive_integer() {
        return Err(Error::Pole(format!("Hurwitz zeta at w = {}", w.re_f64())));
    }
    let bits = guard_bits(ctx) + w.abs_f64().max(1.0).log2() as u32;
    let w = w.at(bits);
    let radius = asymptotic_radius(bits);
    let shift = (radius - w.re_f64()).ceil().max(0.0) as i64;
    let si = s as i64;
    let mut acc = Cx::zero(bits);
    let mut v = w.clone();
    for _ in 0..shift {
        acc += v.powi(-si);
        v += 1i64;
    }
    let inv = v.recip();
    let inv2 = inv.sqr();
    let lead = v.powi(1 - si) / (si - 1);
    let mut p = inv.powi(si);
    acc += lead;
    acc += &p / 2i64;
    p *= &inv;
    let b = bernoulli_even_floats(bits, asymptotic_terms(bits));
    let tol = acc.log2_abs() - bits as f64;
    // r_j = (s)_{2j-1} / (2j)!
    let mut r = Float::with_val(bits, s) / 2u32;
    let mut prev = f64::INFINITY;
    for j in 1..b.len() {
        let c = Float::with_val(bits, &b[j] * &r);
        let term = &p * &Cx::from_float(c);
        let m = term.log2_abs();
        if m > prev {
            break;
        }
        acc += term;
        if m < tol {
            break;
        }
        prev = m;
        p *= &inv2;
        let jj = j as u64;
        r *= (s as u64 + 2 * jj - 1) * (s as u64 + 2 * jj);
        r /= (2 * jj + 1) * (2 * jj + 2);
    }
    acc.at(ctx.bits()).finite("hurwitz_zeta")
}

/// Riemann zeta at an integer `k >= 2`.
pub fn zeta(k: u32, ctx: &PrecisionContext) -> Result<Cx> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "zeta({k}) is not a convergent value"
        )));
    }
    hurwitz_zeta(k, &Cx::one(guard_bits(ctx)), ctx)
}

/// `zeta(-m) = -B_{m+1} / (m + 1)` for `m >= 1`, and `zeta(0) = -1/2`.
fn zeta_nonpositive(m: u32, bits: u32) -> Cx {
    if m == 0 {
        return Cx::ratio(bits, -1, 2);
    }
    let b = bernoulli(m as usize + 1);
    Cx::from_float(Float::with_val(bits, -b / (m + 1)))
}

/// Slack allowed on `|z| <= 1` for arguments produced by rounding.
fn on_disk(z: &Cx, bits: u32) -> bool {
    let slack = 2f64.powi(-((bits / 2).min(900) as i32));
    z.abs_f64() <= 1.0 + slack
}

fn is_one(z: &Cx) -> bool {
    z.as_integer() == Some(1)
}

/// Classical polylogarithm `Li_k(z) = sum z^n / n^k` on the closed unit disk.
pub fn li(k: u32, z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    if k == 0 {
        return Err(Error::InvalidInput("polylog order must be positive".into()));
    }
    let bits = guard_bits(ctx);
    if !on_disk(z, bits) {
        return Err(Error::Domain(format!("|z| = {} > 1", z.abs_f64())));
    }
    if z.is_zero() {
        return Ok(Cx::zero(ctx.bits()));
    }
    if is_one(z) {
        if k == 1 {
            return Err(Error::Domain("Li_1(1) diverges".into()));
        }
        return zeta(k, ctx);
    }
    let z = z.at(bits);
    if k == 1 {
        return (-(Cx::one(bits) - &z).ln()).at(ctx.bits()).finite("li");
    }
    if z.abs_f64() <= 0.75 {
        let wctx = ctx.guarded();
        let ki = k as i64;
        let r = sum_series(
            |n, b| Ok(z.at(b).powi(n) * Cx::int(b, n).powi(-ki)),
            1,
            &wctx,
        )?;
        return Ok(r.value.at(ctx.bits()));
    }
    li_log_expansion(k, &z, ctx)
}

/// `Li_k(e^mu) = mu^{k-1}/(k-1)! (H_{k-1} - ln(-mu)) + sum_{j != k-1} zeta(k-j) mu^j / j!`,
/// valid for `|mu| < 2 pi`.
fn li_log_expansion(k: u32, z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let bits = guard_bits(ctx) + 8;
    let wctx = ctx.elevated(32);
    let mu = z.at(bits).ln();
    let mut harmonic = Cx::zero(bits);
    for j in 1..k {
        harmonic += Cx::ratio(bits, 1, j as i64);
    }
    let mut acc = Cx::zero(bits);
    let mut pow = Cx::one(bits); // mu^j / j!
    let tol = -(bits as f64);
    let mut small = 0;
    let mut j: u32 = 0;
    loop {
        if j == k - 1 {
            acc += &pow * &(&harmonic - (-&mu).ln());
        } else if j < k - 1 {
            acc += &pow * &zeta(k - j, &wctx)?;
        } else {
            let t = &pow * &zeta_nonpositive(j - k, bits);
            let m = t.log2_abs();
            acc += t;
            if m < tol + acc.log2_abs().max(0.0) || m == f64::NEG_INFINITY {
                small += 1;
            } else {
                small = 0;
            }
            if small >= 3 && pow.log2_abs() < tol {
                break;
            }
        }
        j += 1;
        pow = pow * &mu / (j as i64);
        if j > 8 * bits {
            return Err(Error::NonConvergence {
                terms: j as usize,
                err_estimate: 2f64.powf(pow.log2_abs()),
            });
        }
    }
    acc.at(ctx.bits()).finite("li")
}

/// `Li_k(x)` at a root of unity through the cyclotomic Hurwitz reduction.
pub fn li_root(k: u32, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    let arg = HurwitzArg::new(k, x, Cx::zero(guard_bits(ctx)))?;
    li_hurwitz(&arg, ctx)
}

/// `sum_{n>=1} x^n / (n + b)^p` for a root of unity `x`.
pub fn li_hurwitz(arg: &HurwitzArg, ctx: &PrecisionContext) -> Result<Cx> {
    let HurwitzArg { p, x, b } = arg;
    let bits = guard_bits(ctx);
    let wctx = ctx.elevated(24);
    let b = b.at(bits);
    if x.is_one() {
        return Ok(hurwitz_zeta(*p, &(&b + 1i64), &wctx)?.at(ctx.bits()));
    }
    let order = x.order() as i64;
    let table = x.power_table(bits);
    let mut acc = Cx::zero(bits);
    for r in 1..=order {
        let w = (&b + r) / order;
        let f = if *p == 1 {
            polygamma(0, &w, &wctx)?
        } else {
            hurwitz_zeta(*p, &w, &wctx)?
        };
        acc += f * &table[(r % order) as usize];
    }
    let v = if *p == 1 {
        -acc / order
    } else {
        acc * Cx::int(bits, order).powi(-(*p as i64))
    };
    v.at(ctx.bits()).finite("li_hurwitz")
}

/// The cyclotomic Hurwitz value `Li_p(x; c) = sum_{n>=1} x^n / (n + c - 1)^p`.
pub fn li_cyc(p: u32, x: RootOfUnity, c: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let arg = HurwitzArg::new(p, x, c - 1i64)?;
    li_hurwitz(&arg, ctx)
}

/// `Li_{m+1}(x; 1-a) - (-1)^m x Li_{m+1}(x^{-1}; a)`.
///
/// At `x = 1`, `m = 0` both series diverge; their difference is the
/// convergent `sum [1/(n-a) - 1/(n+a-1)] = -pi cot(pi a)`.
pub fn li_pair(m: u32, a: &Cx, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    if a.as_integer().is_some() {
        return Err(Error::Pole(format!(
            "li_pair at integer a = {}",
            a.re_f64()
        )));
    }
    let bits = guard_bits(ctx);
    let wctx = ctx.elevated(24);
    let a = a.at(bits);
    if x.is_one() && m == 0 {
        let pi = Cx::pi(bits);
        return Ok((-(&pi * (&pi * &a).cot())).at(ctx.bits()));
    }
    let one_minus = Cx::one(bits) - &a;
    let first = li_cyc(m + 1, x, &one_minus, &wctx)?;
    let second = li_cyc(m + 1, x.inverse(), &a, &wctx)? * x.embed(bits);
    let v = if m % 2 == 0 {
        first - second
    } else {
        first + second
    };
    Ok(v.at(ctx.bits()))
}

fn li_multi_domain(ks: &Composition, z: &Cx, bits: u32) -> Result<()> {
    if !on_disk(z, bits) {
        return Err(Error::Domain(format!(
            "multiple polylog argument |z| = {} lies outside the closed unit disk",
            z.abs_f64()
        )));
    }
    let k1 = ks.ks()[0];
    let boundary = z.abs_f64() > 1.0 - 1e-12;
    if k1 == 1 && boundary {
        return Err(Error::Domain(
            "multiple polylog with k_1 = 1 on the unit circle".into(),
        ));
    }
    Ok(())
}

/// Single-variable multiple polylogarithm
/// `sum_{n_1 > ... > n_r >= 1} z^{n_1} / (n_1^{k_1} ... n_r^{k_r})`.
pub fn li_multi(ks: &Composition, z: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let bits = guard_bits(ctx);
    li_multi_domain(ks, z, bits)?;
    if z.is_zero() {
        return Ok(Cx::zero(ctx.bits()));
    }
    if ks.depth() == 1 {
        return li(ks.ks()[0], z, ctx);
    }
    if is_one(z) {
        return mzv_holder(ks, ctx);
    }
    let z = z.at(bits);
    let wctx = ctx.guarded();
    if z.abs_f64() <= 0.9 {
        nested_sum(ks, &z, &wctx, false).map(|v| v.at(ctx.bits()))
    } else {
        nested_sum(ks, &z, &wctx, true).map(|v| v.at(ctx.bits()))
    }
}

/// Sums the nested series keeping the inner harmonic-type sums incrementally.
fn nested_sum(ks: &Composition, z: &Cx, ctx: &PrecisionContext, accelerate: bool) -> Result<Cx> {
    let k = ks.ks().to_vec();
    let r = k.len();
    let mut state: Option<(u32, i64, Vec<Cx>, Cx)> = None;
    let term = move |n: i64, bits: u32| -> Result<Cx> {
        let reset = match &state {
            Some((b, next, _, _)) => *b != bits || *next != n,
            None => true,
        };
        if reset {
            // acc[d] holds the depth-(d+1..r) sum over indices < next
            let mut acc = vec![Cx::zero(bits); r];
            acc[r - 1] = Cx::one(bits);
            let mut zp = Cx::one(bits);
            let zb = z.at(bits);
            for m in 1..n {
                advance(&mut acc, &k, m, bits);
                zp *= &zb;
            }
            state = Some((bits, n, acc, zp));
        }
        let (_, next, acc, zp) = state.as_mut().expect("initialized");
        *zp *= &z.at(bits);
        let t = &*zp * &acc[0] * &Cx::int(bits, n).powi(-(k[0] as i64));
        advance(acc, &k, n, bits);
        *next = n + 1;
        Ok(t)
    };
    let first = r as i64;
    let v = if accelerate {
        sum_accelerated(term, first, ctx)?
    } else {
        sum_series(term, first, ctx)?
    };
    Ok(v.value)
}

fn advance(acc: &mut [Cx], k: &[u32], m: i64, bits: u32) {
    let r = k.len();
    for d in 0..r - 1 {
        let add = &acc[d + 1] * &Cx::int(bits, m).powi(-(k[d + 1] as i64));
        acc[d] += add;
    }
}

/// Multiple zeta value by splitting the iterated integral at `1/2`.
fn mzv_holder(ks: &Composition, ctx: &PrecisionContext) -> Result<Cx> {
    if ks.ks()[0] < 2 {
        return Err(Error::Domain("multiple zeta value needs k_1 >= 2".into()));
    }
    let bits = guard_bits(ctx);
    let wctx = ctx.guarded();
    let half = Cx::ratio(bits, 1, 2);
    let w = ks.word();
    let eval = |word: &[u8]| -> Result<Cx> {
        if word.is_empty() {
            return Ok(Cx::one(bits));
        }
        let c = Composition::from_word(word).expect("split words end in 1");
        let r = nested_sum(&c, &half, &wctx, false)?;
        Ok(r)
    };
    let mut acc = Cx::zero(bits);
    for j in 0..=w.len() {
        let upper: Vec<u8> = w[..j].iter().rev().map(|a| 1 - a).collect();
        let lower = &w[j..];
        acc += eval(&upper)? * eval(lower)?;
    }
    Ok(acc.at(ctx.bits()))
}

/// `phi(s; x) = sum_{k>=0} x^k / (k + s)` for a root of unity `x != 1`.
pub fn gen_digamma(s: &Cx, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    if s.is_nonpositive_integer() {
        return Err(Error::Pole(format!("phi(s; x) at s = {}", s.re_f64())));
    }
    if x.is_one() {
        return Err(Error::Domain("phi(s; 1) diverges".into()));
    }
    let bits = guard_bits(ctx);
    let wctx = ctx.elevated(24);
    let s = s.at(bits);
    let order = x.order() as i64;
    let table = x.power_table(bits);
    let mut acc = Cx::zero(bits);
    for r in 0..order {
        let w = (&s + r) / order;
        acc += polygamma(0, &w, &wctx)? * &table[r as usize];
    }
    Ok((-acc / order).at(ctx.bits()))
}

/// `Phi(s; x) = phi(s; x) - phi(-s; 1/x) - 1/s`; at `x = 1` this is `pi cot(pi s)`.
pub fn ext_trig(s: &Cx, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    if s.as_integer().is_some() {
        return Err(Error::Pole(format!(
            "Phi(s; x) at integer s = {}",
            s.re_f64()
        )));
    }
    let bits = guard_bits(ctx);
    let s = s.at(bits);
    if x.is_one() {
        let pi = Cx::pi(bits);
        return Ok((&pi * (&pi * &s).cot()).at(ctx.bits()));
    }
    let wctx = ctx.elevated(24);
    let v = gen_digamma(&s, x, &wctx)? - gen_digamma(&-&s, x.inverse(), &wctx)? - s.recip();
    Ok(v.at(ctx.bits()))
}

/// Coefficient of `(s - n)^m` in the regular part of `x^n Phi(s; x)` at an
/// integer `n`: `(-1)^m Li_{m+1}(x) - Li_{m+1}(1/x)`.
pub fn ext_trig_laurent_coeff(m: u32, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    let a = li_root(m + 1, x, ctx)?;
    let b = li_root(m + 1, x.inverse(), ctx)?;
    Ok(if m % 2 == 0 { a - b } else { -a - b })
}

/// Coefficient of `(s + n)^m` in `x^{-n} Phi(s - a; x)` near `s = -n`:
/// `(-1)^m Li_{m+1}(x; 1-a) - x Li_{m+1}(1/x; a)`.
pub fn ext_trig_shift_coeff(m: u32, a: &Cx, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    let bits = guard_bits(ctx);
    let a = a.at(bits);
    let first = li_cyc(m + 1, x, &(Cx::one(bits) - &a), ctx)?;
    let second = li_cyc(m + 1, x.inverse(), &a, ctx)? * x.embed(bits);
    Ok(if m % 2 == 0 {
        first - second
    } else {
        -first - second
    })
}
