//! Right-hand sides of the registered identities.

use std::collections::HashMap;

use rug::Integer;

use crate::apery::{cb_series, cb_shifted_series, fc_g};
use crate::bell::{c_consts, c_params, constants, d_consts, d_params};
use crate::error::{Error, Result};
use crate::numerics::{Cx, PrecisionContext, RootOfUnity};
use crate::polylog::{li, li_multi, li_pair, Composition};

fn factorial(n: u32, bits: u32) -> Cx {
    Cx::from_float(rug::Float::with_val(
        bits,
        Integer::from(Integer::factorial(n)),
    ))
}

/// Coefficients `w_0..w_n` of `s^j` in `A(s)^2 B(2s) 4^s`, where
/// `A(s) = sum C_k s^k / k!` and `B(s) = sum D_k s^k / k!`.
fn convolution_weights(n: usize, c: &[Cx], d: &[Cx], bits: u32) -> Vec<Cx> {
    let ln2 = Cx::ln2(bits);
    let mut w = vec![Cx::zero(bits); n + 1];
    for k1 in 0..=n {
        for k2 in 0..=n - k1 {
            for k3 in 0..=n - k1 - k2 {
                let head = &c[k1] * &c[k2] * &d[k3] * Cx::int(bits, 2).powi(k3 as i64)
                    / (factorial(k1 as u32, bits)
                        * factorial(k2 as u32, bits)
                        * factorial(k3 as u32, bits));
                for k4 in 0..=n - k1 - k2 - k3 {
                    let t = &head * (&ln2 * 2i64).powi(k4 as i64) / factorial(k4 as u32, bits);
                    w[k1 + k2 + k3 + k4] += t;
                }
            }
        }
    }
    w
}

/// `sum_{k1+..+k5=q-1} C C D 2^{k3+k4} log^{k4}2 / (k1!k2!k3!k4!) (x Li_{k5+1}(1/x; a) - (-1)^{k5} Li_{k5+1}(x; 1-a))`,
/// the bracket being `-(-1)^{k5}` times the Hurwitz pair.
fn cpas_convolution(
    q: u32,
    c: &[Cx],
    d: &[Cx],
    a: &Cx,
    x: RootOfUnity,
    ctx: &PrecisionContext,
) -> Result<Cx> {
    let bits = ctx.bits();
    let n = q as usize - 1;
    let w = convolution_weights(n, c, d, bits);
    let mut acc = Cx::zero(bits);
    for k5 in 0..=n {
        acc -= &w[n - k5] * li_pair(k5 as u32, a, x, ctx)? * sign(k5 as u32);
    }
    Ok(acc)
}

/// The coupling factor `Li_1(x; 1-a) - x Li_1(1/x; a)`.
fn li1_pair(a: &Cx, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    li_pair(0, a, x, ctx)
}

fn sign(k: u32) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_q_x(q: u32, x: RootOfUnity) -> Result<()> {
    if q == 0 {
        return Err(Error::InvalidInput("q must be a positive integer".into()));
    }
    if q == 1 && x.is_one() {
        return Err(Error::InvalidInput("(q,x)=(1,1) is excluded".into()));
    }
    Ok(())
}

/// Right-hand side of the bilateral series identity: the convolution plus
/// `(-1)^q (Li_1(x;1-a) - x Li_1(1/x;a)) sum binom(2n,n) x^n / (n^{q-1} 4^n)`.
pub fn rhs_thm21(q: u32, a: &Cx, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    check_q_x(q, x)?;
    let wctx = ctx.guarded();
    let n = q as usize - 1;
    let c = c_consts(n, &wctx)?;
    let d = d_consts(n, &wctx)?;
    let conv = cpas_convolution(q, &c, &d, a, x, &wctx)?;
    let coupling =
        li1_pair(a, x, &wctx)? * cb_series(q as i32 - 2, &x.embed(wctx.bits()), &wctx)?.value;
    Ok((conv + coupling * sign(q)).at(ctx.bits()))
}

/// `(x Li_1(1/x; a) - Li_1(x; 1-a)) / sqrt(1 - x)`.
pub fn rhs_cor23(a: &Cx, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    if x.is_one() {
        return Err(Error::InvalidInput("x = 1 is excluded".into()));
    }
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let v = -li1_pair(a, x, &wctx)? / (Cx::one(bits) - x.embed(bits)).sqrt();
    Ok(v.at(ctx.bits()))
}

/// `Li_2(x;1-a) + x Li_2(1/x;a) - 2 (Li_1(x;1-a) - x Li_1(1/x;a)) log(1 + sqrt(1-x))`.
pub fn rhs_cor24(a: &Cx, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let l2 = li_pair(1, a, x, &wctx)?;
    let log = (Cx::one(bits) + (Cx::one(bits) - x.embed(bits)).sqrt()).ln();
    let v = l2 - li1_pair(a, x, &wctx)? * log * 2i64;
    Ok(v.at(ctx.bits()))
}

/// The `a = 1/2` specialization divided by `pi`.
pub fn rhs_cor25(q: u32, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let pi = constants(&wctx)?.pi.clone();
    let v = rhs_thm21(q, &Cx::ratio(bits, 1, 2), x, &wctx)? / pi;
    Ok(v.at(ctx.bits()))
}

/// `(1/pi) (x Li_1(1/x; 1/2) - Li_1(x; 1/2)) / sqrt(1 - x)`.
pub fn rhs_cor25_q1(x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let pi = constants(&wctx)?.pi.clone();
    let v = rhs_cor23(&Cx::ratio(bits, 1, 2), x, &wctx)? / pi;
    Ok(v.at(ctx.bits()))
}

/// `(Li_2(x;1/2) + x Li_2(1/x;1/2))/pi - (2/pi) (Li_1(x;1/2) - x Li_1(1/x;1/2)) log(1 + sqrt(1-x))`.
pub fn rhs_cor25_q2(x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let pi = constants(&wctx)?.pi.clone();
    let v = rhs_cor24(&Cx::ratio(bits, 1, 2), x, &wctx)? / pi;
    Ok(v.at(ctx.bits()))
}

/// Right-hand side of the shifted identity: the convolution with `C_k(a-b)`,
/// `D_k(2a-2b)` and Hurwitz shifts at `b`, times `4^{a-b}`, plus
/// `(-1)^q (Li_1(x;1-a) - x Li_1(1/x;a)) sum n binom(2n,n) x^n / ((n+a-b)^q 4^n)`.
pub fn rhs_thm41(q: u32, a: &Cx, b: &Cx, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    check_q_x(q, x)?;
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let (a, b) = (a.at(bits), b.at(bits));
    let n = q as usize - 1;
    let diff = &a - &b;
    let c = c_params(n, &diff, &wctx)?;
    let d = d_params(n, &(&diff * 2i64), &wctx)?;
    let scale = (&diff * Cx::int(bits, 4).ln()).exp();
    let conv = cpas_convolution(q, &c, &d, &b, x, &wctx)? * scale;
    let coupling =
        li1_pair(&a, x, &wctx)? * cb_shifted_series(q, &diff, &x.embed(bits), &wctx)?.value;
    Ok((conv + coupling * sign(q)).at(ctx.bits()))
}

/// The `q = 1`, `b -> a + 1/2` product
/// `(x Li_1(1/x;a) - Li_1(x;1-a))/pi * (Li_1(x;1/2) - x Li_1(1/x;1/2)) / sqrt(1 - 1/x)`.
pub fn rhs_thm41_bhalf(a: &Cx, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    if x.is_one() {
        return Err(Error::InvalidInput("x = 1 is excluded".into()));
    }
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let pi = constants(&wctx)?.pi.clone();
    let first = -li1_pair(a, x, &wctx)? / pi;
    let second = li1_pair(&Cx::ratio(bits, 1, 2), x, &wctx)?;
    let root = (Cx::one(bits) - x.inverse().embed(bits)).sqrt();
    Ok((first * second / root).at(ctx.bits()))
}

/// Memoized `Li_{k, {1}_r}(z)` at one argument.
struct MultiLi<'a> {
    z: &'a Cx,
    ctx: &'a PrecisionContext,
    cache: HashMap<(u32, usize), Cx>,
}

impl<'a> MultiLi<'a> {
    fn new(z: &'a Cx, ctx: &'a PrecisionContext) -> Self {
        MultiLi {
            z,
            ctx,
            cache: HashMap::new(),
        }
    }

    /// `Li_{k, {1}_ones}(z)`.
    fn get(&mut self, k: u32, ones: usize) -> Result<Cx> {
        if let Some(v) = self.cache.get(&(k, ones)) {
            return Ok(v.clone());
        }
        let mut ks = vec![k];
        ks.extend(std::iter::repeat(1).take(ones));
        let v = li_multi(&Composition::new(ks)?, self.z, self.ctx)?;
        self.cache.insert((k, ones), v.clone());
        Ok(v)
    }
}

/// `log|v|` for real `v` and the principal `log v` otherwise.
fn log_abs_or_principal(v: &Cx, real: bool) -> Cx {
    if real {
        Cx::from_float(v.abs()).ln()
    } else {
        v.ln()
    }
}

/// Shared shape of the double sums over `k < p` and `j + l <= k`:
/// `sum coeff(j, l, k) L1^{p-1-k} / (p-1-k)! * L2^{k-j-l} / (k-j-l)! * bracket(j, l)`.
fn double_sum<C, B>(p: u32, l1: &Cx, l2: &Cx, mut coeff: C, mut bracket: B) -> Result<Cx>
where
    C: FnMut(u32, u32, u32) -> Cx,
    B: FnMut(u32, u32) -> Result<Cx>,
{
    let bits = l1.bits();
    let mut acc = Cx::zero(bits);
    for k in 0..p {
        let outer = l1.powi((p - 1 - k) as i64) / factorial(p - 1 - k, bits);
        for j in 0..=k {
            for l in 0..=k - j {
                let inner = l2.powi((k - j - l) as i64) / factorial(k - j - l, bits);
                acc += coeff(j, l, k) * &outer * inner * bracket(j, l)?;
            }
        }
    }
    Ok(acc)
}

/// Right-hand side of the central binomial series identity at argument
/// `u = (1 - sqrt(1-x))/2`, with `|.|` inside the logarithms for real `x`.
pub fn rhs_prop22(p: u32, x: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    if p == 0 {
        return Err(Error::InvalidInput("p must be positive".into()));
    }
    if x.is_zero() {
        return Err(Error::Domain("x = 0 makes log(x/4) singular".into()));
    }
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let x = x.at(bits);
    let real = x.is_real();
    let u = (Cx::one(bits) - (Cx::one(bits) - &x).sqrt()) / 2i64;
    let l1 = log_abs_or_principal(&(&x / 4i64), real);
    let l2 = log_abs_or_principal(&u, real);
    let mut lis = MultiLi::new(&u, &wctx);
    let s = double_sum(
        p,
        &l1,
        &l2,
        |j, l, k| Cx::int(bits, sign(j + l + k) * (j as i64 + 1)),
        |j, l| Ok(lis.get(l + 1, j as usize + 1)? - lis.get(l + 2, j as usize)?),
    )?;
    Ok((s * -2i64).at(ctx.bits()))
}

/// `2 Li_2(u) - log^2((1 + sqrt(1-x))/2)`, `u = (1 - sqrt(1-x))/2`.
pub fn rhs_case1(x: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let s = (Cx::one(bits) - x.at(bits)).sqrt();
    let u = (Cx::one(bits) - &s) / 2i64;
    let lg = ((Cx::one(bits) + &s) / 2i64).ln();
    Ok((li(2, &u, &wctx)? * 2i64 - lg.sqr()).at(ctx.bits()))
}

/// `2 log(G) Li_2(u) - log^3(G)/3 + 2 Li_{2,1}(u) + 2 Li_3(u)` with
/// `G = (1 + sqrt(1-x))/2`, `u = (1 - sqrt(1-x))/2`.
pub fn rhs_case2(x: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let s = (Cx::one(bits) - x.at(bits)).sqrt();
    let u = (Cx::one(bits) - &s) / 2i64;
    let lg = ((Cx::one(bits) + &s) / 2i64).ln();
    let mut lis = MultiLi::new(&u, &wctx);
    let v = &lg * lis.get(2, 0)? * 2i64 - lg.powi(3) / 3i64
        + lis.get(2, 1)? * 2i64
        + lis.get(3, 0)? * 2i64;
    Ok(v.at(ctx.bits()))
}

/// `w = (sqrt(1+x) - 1)/(sqrt(1+x) + 1)` and `log(2/(1 + sqrt(1+x)))`.
fn landen_pieces(x: &Cx, bits: u32) -> (Cx, Cx) {
    let s = (Cx::one(bits) + x.at(bits)).sqrt();
    let w = (&s - 1i64) / (&s + 1i64);
    let l = (Cx::int(bits, 2) / (s + 1i64)).ln();
    (w, l)
}

/// `-2 Li_2(w) - 2 log^2(2/(1 + sqrt(1+x)))`, the value of
/// `sum binom(2n,n) (-x)^n / (n^2 4^n)`.
pub fn rhs_case2_1(x: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let (w, l) = landen_pieces(x, bits);
    Ok((li(2, &w, &wctx)? * -2i64 - l.sqr() * 2i64).at(ctx.bits()))
}

/// The value of `sum binom(2n,n) (-x)^n / (n^3 4^n)` in terms of `w`.
pub fn rhs_case2_2(x: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    if x.is_zero() {
        return Err(Error::Domain("x = 0 makes log(4/x) singular".into()));
    }
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let xw = x.at(bits);
    let real = xw.is_real();
    let (w, l) = landen_pieces(&xw, bits);
    let lead = log_abs_or_principal(&w, real) - log_abs_or_principal(&(&xw / 4i64), real);
    let mut lis = MultiLi::new(&w, &wctx);
    let li2 = lis.get(2, 0)?;
    let v = lead * (li2 + l.sqr()) * 2i64 - lis.get(3, 0)? * 2i64 + lis.get(2, 1)? * 4i64
        - l.powi(3) * 8i64 / 3i64;
    Ok(v.at(ctx.bits()))
}

/// Right-hand side of `sum binom(mn,n) x^n / n^{p+1}` with `u = 1 - 1/G_m(x)`.
pub fn rhs_thm51(m: u32, p: u32, x: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    if p == 0 {
        return Err(Error::InvalidInput("p must be positive".into()));
    }
    if x.is_zero() {
        return Err(Error::Domain("x = 0 makes log|x| singular".into()));
    }
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let x = x.at(bits);
    let real = x.is_real();
    let g = fc_g(m, &x, &wctx)?;
    let u = Cx::one(bits) - g.recip();
    let l1 = log_abs_or_principal(&x, real);
    let l2 = log_abs_or_principal(&u, real);
    let mm = m as i64 - 1;
    let mut lis = MultiLi::new(&u, &wctx);
    let s = double_sum(
        p,
        &l1,
        &l2,
        |j, l, k| Cx::int(bits, mm).powi(j as i64) * (sign(j + l + k) * (j as i64 + 1)),
        |j, l| {
            let first = if mm == 0 {
                Cx::zero(bits)
            } else {
                lis.get(l + 1, j as usize + 1)? * mm
            };
            Ok(first - lis.get(l + 2, j as usize)?)
        },
    )?;
    Ok((s * -(m as i64)).at(ctx.bits()))
}

/// Right-hand side of `sum binom(mn,n) (-x)^n / n^{p+1}` with `u = 1 - G_m(-x)`.
pub fn rhs_thm52(m: u32, p: u32, x: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    if p == 0 {
        return Err(Error::InvalidInput("p must be positive".into()));
    }
    if x.is_zero() {
        return Err(Error::Domain("x = 0 makes log|x| singular".into()));
    }
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let x = x.at(bits);
    let real = x.is_real();
    let g = fc_g(m, &-&x, &wctx)?;
    let u = Cx::one(bits) - g;
    let l1 = log_abs_or_principal(&x, real);
    let l2 = log_abs_or_principal(&u, real);
    let mi = m as i64;
    let mut lis = MultiLi::new(&u, &wctx);
    let s = double_sum(
        p,
        &l1,
        &l2,
        |j, l, k| Cx::int(bits, mi).powi(j as i64 + 1) * (sign(l + k) * (j as i64 + 1)),
        |j, l| Ok(lis.get(l + 2, j as usize)? + lis.get(l + 1, j as usize + 1)? * mi),
    )?;
    Ok((-s).at(ctx.bits()))
}

/// `-m Li_2(1 - G_m(-x)) - (m^2/2) log^2 G_m(-x)`.
pub fn rhs_cor53(m: u32, x: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let g = fc_g(m, &-x.at(bits), &wctx)?;
    let mi = m as i64;
    let v = li(2, &(Cx::one(bits) - &g), &wctx)? * -mi - g.ln().sqr() * (mi * mi) / 2i64;
    Ok(v.at(ctx.bits()))
}

/// Right-hand side of `sum binom(2n,n) (-x)^n / (n^{p+1} 4^n)` in terms of
/// `w = (sqrt(1+x) - 1)/(sqrt(1+x) + 1)`.
pub fn rhs_cor54(p: u32, x: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    if p == 0 {
        return Err(Error::InvalidInput("p must be positive".into()));
    }
    if x.is_zero() {
        return Err(Error::Domain("x = 0 makes log(x/4) singular".into()));
    }
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let x = x.at(bits);
    let real = x.is_real();
    let (w, _) = landen_pieces(&x, bits);
    let l1 = log_abs_or_principal(&(&x / 4i64), real);
    let l2 = log_abs_or_principal(&w, real);
    let mut lis = MultiLi::new(&w, &wctx);
    let s = double_sum(
        p,
        &l1,
        &l2,
        |j, l, k| Cx::int(bits, 2).powi(j as i64 + 1) * (sign(l + k) * (j as i64 + 1)),
        |j, l| Ok(lis.get(l + 2, j as usize)? + lis.get(l + 1, j as usize + 1)? * 2i64),
    )?;
    Ok((-s).at(ctx.bits()))
}

/// `2 Li_2(-x) + 2 Li_2(x/(1+x)) + log^2(1+x)`, zero for `x > -1/2`.
pub fn dilog_a(x: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let x = x.at(bits);
    let one_plus = Cx::one(bits) + &x;
    let v =
        li(2, &-&x, &wctx)? * 2i64 + li(2, &(&x / &one_plus), &wctx)? * 2i64 + one_plus.ln().sqr();
    Ok(v.at(ctx.bits()))
}

/// `2 Li_2((1 - s)/2) + 2 Li_2((s - 1)/(s + 1)) + log^2((1 + s)/2)` with
/// `s = sqrt(1-x)`; zero on `[-1, 1]`.
pub fn dilog_b(x: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let s = (Cx::one(bits) - x.at(bits)).sqrt();
    let eta = (Cx::one(bits) - &s) / 2i64;
    let xi = (&s - 1i64) / (&s + 1i64);
    let lg = ((Cx::one(bits) + &s) / 2i64).ln();
    let v = li(2, &eta, &wctx)? * 2i64 + li(2, &xi, &wctx)? * 2i64 + lg.sqr();
    Ok(v.at(ctx.bits()))
}

/// Both sides of the `Li_{2,1}` relation between `eta = (1 - s)/2` and
/// `xi = (s - 1)/(s + 1)`, `s = sqrt(1-x)`, for real nonzero `x` in `[-1, 1]`:
///
/// `2 Li_{2,1}(eta) - 4 Li_{2,1}(xi)` and
/// `2 log(4|xi|/|x|) (Li_2(xi) + L^2) - 2 Li_3(eta) - 2 Li_3(xi) + 3 L^3 - 2 L Li_2(eta)`
/// with `L = log((1 + s)/2)`.
pub fn li21_x_sides(x: &Cx, ctx: &PrecisionContext) -> Result<(Cx, Cx)> {
    if x.is_zero() {
        return Err(Error::Domain("x = 0 makes log(4/x) singular".into()));
    }
    let wctx = ctx.guarded();
    let bits = wctx.bits();
    let xw = x.at(bits);
    let real = xw.is_real();
    let s = (Cx::one(bits) - &xw).sqrt();
    let eta = (Cx::one(bits) - &s) / 2i64;
    let xi = (&s - 1i64) / (&s + 1i64);
    let lg = ((Cx::one(bits) + &s) / 2i64).ln();
    let mut at_eta = MultiLi::new(&eta, &wctx);
    let mut at_xi = MultiLi::new(&xi, &wctx);
    let lhs = at_eta.get(2, 1)? * 2i64 - at_xi.get(2, 1)? * 4i64;
    let lead = log_abs_or_principal(&xi, real) - log_abs_or_principal(&(&xw / 4i64), real);
    let rhs = lead * (at_xi.get(2, 0)? + lg.sqr()) * 2i64
        - at_eta.get(3, 0)? * 2i64
        - at_xi.get(3, 0)? * 2i64
        + lg.powi(3) * 3i64
        - &lg * at_eta.get(2, 0)? * 2i64;
    Ok((lhs.at(ctx.bits()), rhs.at(ctx.bits())))
}

/// `pi^2/12 - log^2(2)/2`.
pub fn li2_half_closed(ctx: &PrecisionContext) -> Result<Cx> {
    let k = constants(ctx)?;
    Ok(k.pi.sqr() / 12i64 - k.ln2.sqr() / 2i64)
}
