//! Complete Bell polynomials, multiple harmonic (star) sums and the constant
//! sequences built from them.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::gamma::{gamma, polygamma, MAX_POLYGAMMA_ORDER};
use crate::numerics::{Cx, PrecisionContext};
use crate::polylog::zeta;

/// Zeta values kept in the constant cache: `zeta(2..=CACHED_ZETA)`.
pub const CACHED_ZETA: u32 = 24;

/// Constants shared by every evaluation at one working precision.
#[derive(Debug)]
pub struct Constants {
    pub bits: u32,
    pub pi: Cx,
    pub ln2: Cx,
    pub euler_gamma: Cx,
    zetas: Vec<Cx>,
}

impl Constants {
    /// `zeta(k)` for `2 <= k <= CACHED_ZETA`.
    pub fn zeta(&self, k: u32) -> Option<&Cx> {
        if k < 2 {
            return None;
        }
        self.zetas.get(k as usize - 2)
    }
}

static CONSTANTS: RwLock<Option<HashMap<u32, Arc<Constants>>>> = RwLock::new(None);

/// The constant cache for the context precision, built on first use.
pub fn constants(ctx: &PrecisionContext) -> Result<Arc<Constants>> {
    let bits = ctx.bits();
    if let Some(map) = CONSTANTS.read().expect("constants lock").as_ref() {
        if let Some(c) = map.get(&bits) {
            return Ok(c.clone());
        }
    }
    let zetas = (2..=CACHED_ZETA)
        .map(|k| zeta(k, ctx))
        .collect::<Result<Vec<_>>>()?;
    let c = Arc::new(Constants {
        bits,
        pi: Cx::pi(bits),
        ln2: Cx::ln2(bits),
        euler_gamma: Cx::euler_gamma(bits),
        zetas,
    });
    let mut guard = CONSTANTS.write().expect("constants lock");
    let map = guard.get_or_insert_with(HashMap::new);
    Ok(map.entry(bits).or_insert(c).clone())
}

fn zeta_cached(k: u32, ctx: &PrecisionContext) -> Result<Cx> {
    let c = constants(ctx)?;
    match c.zeta(k) {
        Some(z) => Ok(z.clone()),
        None => zeta(k, ctx),
    }
}

fn binomial(n: u32, k: u32, bits: u32) -> Cx {
    Cx::from_float(Float::with_val(
        bits,
        Integer::from(Integer::binomial_u(n, k)),
    ))
}

/// `Y_0, ..., Y_n` for inputs `xs = (x_1, ..., x_n)` by the recurrence
/// `Y_n = sum_{j<n} C(n-1, j) x_{n-j} Y_j`.
pub fn bell_y_all(xs: &[Cx], bits: u32) -> Vec<Cx> {
    let n = xs.len();
    let mut y = Vec::with_capacity(n + 1);
    y.push(Cx::one(bits));
    for m in 1..=n {
        let mut acc = Cx::zero(bits);
        for j in 0..m {
            acc += binomial(m as u32 - 1, j as u32, bits) * &xs[m - j - 1] * &y[j];
        }
        y.push(acc);
    }
    y
}

/// The exponential complete Bell polynomial `Y_n(x_1, ..., x_n)`, `n = xs.len()`.
pub fn bell_y(xs: &[Cx], ctx: &PrecisionContext) -> Cx {
    let bits = xs
        .iter()
        .map(Cx::bits)
        .max()
        .unwrap_or(ctx.bits())
        .max(ctx.bits());
    bell_y_all(xs, bits).pop().expect("Y_0 is always present")
}

/// Strict and non-strict nested harmonic sums `zeta_n({1}_k)` and
/// `zeta*_n({1}_k)` for `n <= n_max`, `k <= k_max`.
#[derive(Debug, Clone)]
pub struct HarmonicTable {
    n_max: usize,
    k_max: usize,
    strict: Vec<Vec<Cx>>,
    star: Vec<Vec<Cx>>,
}

impl HarmonicTable {
    pub fn new(n_max: usize, k_max: usize, ctx: &PrecisionContext) -> Self {
        let bits = ctx.bits() + 16;
        let mut strict = vec![vec![Cx::zero(bits); k_max + 1]; n_max + 1];
        let mut star = vec![vec![Cx::zero(bits); k_max + 1]; n_max + 1];
        strict[0][0] = Cx::one(bits);
        star[0][0] = Cx::one(bits);
        for n in 1..=n_max {
            strict[n][0] = Cx::one(bits);
            star[n][0] = Cx::one(bits);
            let inv = Cx::ratio(bits, 1, n as i64);
            for k in 1..=k_max {
                strict[n][k] = &strict[n - 1][k] + &(&strict[n - 1][k - 1] * &inv);
                star[n][k] = &star[n - 1][k] + &(&star[n][k - 1] * &inv);
            }
        }
        HarmonicTable {
            n_max,
            k_max,
            strict,
            star,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// `zeta_n({1}_k)`; `None` outside the table.
    pub fn strict(&self, n: usize, k: usize) -> Option<&Cx> {
        self.strict.get(n)?.get(k)
    }

    /// `zeta*_n({1}_k)`; `None` outside the table.
    pub fn star(&self, n: usize, k: usize) -> Option<&Cx> {
        self.star.get(n)?.get(k)
    }
}

/// `zeta_n({1}_k) = sum_{n >= n_1 > ... > n_k >= 1} 1/(n_1 ... n_k)`.
pub fn mhs(n: usize, k: usize, ctx: &PrecisionContext) -> Cx {
    HarmonicTable::new(n, k, ctx).strict[n][k].at(ctx.bits())
}

/// `zeta*_n({1}_k) = sum_{n >= n_1 >= ... >= n_k >= 1} 1/(n_1 ... n_k)`.
pub fn mhs_star(n: usize, k: usize, ctx: &PrecisionContext) -> Cx {
    HarmonicTable::new(n, k, ctx).star[n][k].at(ctx.bits())
}

fn factorial_cx(n: u32, bits: u32) -> Cx {
    Cx::from_float(Float::with_val(bits, Integer::from(Integer::factorial(n))))
}

/// `C_0, ..., C_n`: `Y_m(0, 1! zeta(2), -2! zeta(3), ...)`, slot `k` holding
/// `(-1)^k (k-1)! zeta(k)`.
pub fn c_consts(n: usize, ctx: &PrecisionContext) -> Result<Vec<Cx>> {
    let bits = ctx.bits();
    let mut xs = Vec::with_capacity(n);
    for k in 1..=n as u32 {
        if k == 1 {
            xs.push(Cx::zero(bits));
            continue;
        }
        let v = zeta_cached(k, ctx)? * factorial_cx(k - 1, bits);
        xs.push(if k % 2 == 0 { v } else { -v });
    }
    Ok(bell_y_all(&xs, bits))
}

/// `D_0, ..., D_n`: slot `k` holds `(-1)^(k-1) (k-1)! zeta(k)`.
pub fn d_consts(n: usize, ctx: &PrecisionContext) -> Result<Vec<Cx>> {
    let bits = ctx.bits();
    let mut xs = Vec::with_capacity(n);
    for k in 1..=n as u32 {
        if k == 1 {
            xs.push(Cx::zero(bits));
            continue;
        }
        let v = zeta_cached(k, ctx)? * factorial_cx(k - 1, bits);
        xs.push(if k % 2 == 1 { v } else { -v });
    }
    Ok(bell_y_all(&xs, bits))
}

pub fn c_const(n: usize, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(c_consts(n, ctx)?.pop().expect("non-empty"))
}

pub fn d_const(n: usize, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(d_consts(n, ctx)?.pop().expect("non-empty"))
}

/// Slots `psi(x+1) + gamma, psi'(x+1), ..., psi^(n-1)(x+1)`.
fn digamma_slots(n: usize, x: &Cx, ctx: &PrecisionContext) -> Result<Vec<Cx>> {
    if n > MAX_POLYGAMMA_ORDER + 1 {
        return Err(Error::UnsupportedOrder {
            order: n,
            max: MAX_POLYGAMMA_ORDER + 1,
        });
    }
    let bits = ctx.bits();
    let x1 = x.at(bits) + 1i64;
    let mut xs = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = polygamma(j, &x1, ctx)?;
        if j == 0 {
            v += constants(ctx)?.euler_gamma.clone();
        }
        xs.push(v);
    }
    Ok(xs)
}

/// `C_0(x), ..., C_n(x)` with `C_m(x) = Gamma(x+1) Y_m(psi(x+1) + gamma, psi'(x+1), ...)`.
pub fn c_params(n: usize, x: &Cx, ctx: &PrecisionContext) -> Result<Vec<Cx>> {
    let bits = ctx.bits();
    let xs = digamma_slots(n, x, ctx)?;
    let g = gamma(&(x.at(bits) + 1i64), ctx)?;
    Ok(bell_y_all(&xs, bits).into_iter().map(|y| y * &g).collect())
}

/// `D_0(x), ..., D_n(x)` with
/// `D_m(x) = Y_m(-psi(x+1) - gamma, -psi'(x+1), ..., -psi^(m-1)(x+1)) / Gamma(x+1)`.
pub fn d_params(n: usize, x: &Cx, ctx: &PrecisionContext) -> Result<Vec<Cx>> {
    let bits = ctx.bits();
    let xs: Vec<Cx> = digamma_slots(n, x, ctx)?.into_iter().map(|v| -v).collect();
    let x1 = x.at(bits) + 1i64;
    if x1.is_nonpositive_integer() {
        // 1/Gamma vanishes at the poles
        return Ok(vec![Cx::zero(bits); n + 1]);
    }
    let g = gamma(&x1, ctx)?;
    Ok(bell_y_all(&xs, bits).into_iter().map(|y| y / &g).collect())
}

pub fn c_param(n: usize, x: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(c_params(n, x, ctx)?.pop().expect("non-empty"))
}

pub fn d_param(n: usize, x: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    Ok(d_params(n, x, ctx)?.pop().expect("non-empty"))
}

/// `A_k(n) = sum_{k1+k2=k} zeta*_n({1}_{k1}) C_{k2} / k2!`.
pub fn a_coeff(k: usize, n: usize, ctx: &PrecisionContext) -> Result<Cx> {
    let bits = ctx.bits();
    let table = HarmonicTable::new(n, k, ctx);
    let c = c_consts(k, ctx)?;
    let mut acc = Cx::zero(bits);
    for k2 in 0..=k {
        acc += table.star(n, k - k2).expect("in table") * &c[k2] / factorial_cx(k2 as u32, bits);
    }
    Ok(acc.at(bits))
}

/// `B_k(n) = sum_{k1+k2=k} (-1)^{k1} zeta_n({1}_{k1}) D_{k2} / k2!`.
pub fn b_coeff(k: usize, n: usize, ctx: &PrecisionContext) -> Result<Cx> {
    let bits = ctx.bits();
    let table = HarmonicTable::new(n, k, ctx);
    let d = d_consts(k, ctx)?;
    let mut acc = Cx::zero(bits);
    for k2 in 0..=k {
        let k1 = k - k2;
        let t = table.strict(n, k1).expect("in table") * &d[k2] / factorial_cx(k2 as u32, bits);
        if k1 % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    Ok(acc.at(bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::with_digits(50)
    }

    fn close(a: &Cx, b: &Cx, tol: f64) -> bool {
        a.dist(b).to_f64() <= tol
    }

    #[test]
    fn bell_small_cases() {
        let c = ctx();
        let b = c.bits();
        assert_eq!(bell_y(&[], &c).re_f64(), 1.0);
        let x1 = Cx::ratio(b, 3, 7);
        let x2 = Cx::from_f64(b, 0.25, -1.5);
        assert!(close(&bell_y(&[x1.clone()], &c), &x1, 0.0));
        assert!(close(
            &bell_y(&[x1.clone(), x2.clone()], &c),
            &(x1.sqr() + &x2),
            1e-60
        ));
    }

    #[test]
    fn harmonic_sums() {
        let c = ctx();
        let b = c.bits();
        assert!(close(&mhs(3, 1, &c), &Cx::ratio(b, 11, 6), 1e-60));
        assert!(close(&mhs(2, 2, &c), &Cx::ratio(b, 1, 2), 1e-60));
        assert!(close(&mhs_star(2, 2, &c), &Cx::ratio(b, 7, 4), 1e-60));
        let t = HarmonicTable::new(5, 7, &c);
        assert!(t.strict(3, 4).unwrap().is_zero());
        assert!(close(t.star(5, 1).unwrap(), t.strict(5, 1).unwrap(), 0.0));
    }

    #[test]
    fn star_sums_from_bell() {
        let c = ctx();
        let b = c.bits();
        let table = HarmonicTable::new(20, 6, &c);
        for n in 1..=20i64 {
            let xs: Vec<Cx> = (1..=6u32)
                .map(|k| {
                    let mut h = Cx::zero(b);
                    for m in 1..=n {
                        h += Cx::int(b, m).powi(-(k as i64));
                    }
                    h * factorial_cx(k - 1, b)
                })
                .collect();
            let ys = bell_y_all(&xs, b);
            for k in 0..=6usize {
                let v = &ys[k] / factorial_cx(k as u32, b);
                assert!(close(&v, table.star(n as usize, k).unwrap(), 1e-55));
            }
        }
    }

    #[test]
    fn c_and_d_constants() {
        let c = ctx();
        let z = |k| zeta(k, &c).unwrap();
        let cs = c_consts(4, &c).unwrap();
        let ds = d_consts(4, &c).unwrap();
        let b = c.bits();
        let ce = [
            Cx::one(b),
            Cx::zero(b),
            z(2),
            z(3) * -2i64,
            z(4) * 27i64 / 2i64,
        ];
        let de = [
            Cx::one(b),
            Cx::zero(b),
            -z(2),
            z(3) * 2i64,
            z(4) * 3i64 / 2i64,
        ];
        for k in 0..=4 {
            assert!(close(&cs[k], &ce[k], 1e-45), "C_{k}");
            assert!(close(&ds[k], &de[k], 1e-45), "D_{k}");
        }
    }

    #[test]
    fn c_and_d_are_reciprocal_series() {
        let c = ctx();
        let b = c.bits();
        let cs = c_consts(8, &c).unwrap();
        let ds = d_consts(8, &c).unwrap();
        for n in 0..=8usize {
            let mut acc = Cx::zero(b);
            for j in 0..=n {
                acc += binomial(n as u32, j as u32, b) * &cs[j] * &ds[n - j];
            }
            let expect = if n == 0 { Cx::one(b) } else { Cx::zero(b) };
            assert!(close(&acc, &expect, 1e-40), "order {n}");
        }
    }

    #[test]
    fn parametric_constants() {
        let c = ctx();
        let b = c.bits();
        let zero = Cx::zero(b);
        let cs = c_consts(6, &c).unwrap();
        let ds = d_consts(6, &c).unwrap();
        let cp = c_params(6, &zero, &c).unwrap();
        let dp = d_params(6, &zero, &c).unwrap();
        for k in 0..=6 {
            assert!(close(&cs[k], &cp[k], 1e-45));
            assert!(close(&ds[k], &dp[k], 1e-45));
        }
        let third = Cx::ratio(b, 1, 3);
        let g = gamma(&(&third + 1i64), &c).unwrap();
        assert!(close(&c_param(0, &third, &c).unwrap(), &g, 1e-48));
        for k in [4, 8, 12] {
            let x = Cx::int(b, -1) + Cx::from_f64(b, 10f64.powi(-k), 0.0);
            let d0 = d_param(0, &x, &c).unwrap();
            assert!(d0.abs_f64() < 2.0 * 10f64.powi(-k));
        }
    }

    #[test]
    fn expansion_coefficients() {
        let c = ctx();
        for n in [0usize, 1, 4, 9] {
            assert!(close(
                &a_coeff(0, n, &c).unwrap(),
                &Cx::one(c.bits()),
                1e-50
            ));
            assert!(close(
                &b_coeff(0, n, &c).unwrap(),
                &Cx::one(c.bits()),
                1e-50
            ));
            assert!(close(&a_coeff(1, n, &c).unwrap(), &mhs(n, 1, &c), 1e-50));
        }
    }
}
