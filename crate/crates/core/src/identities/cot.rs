//! Derivatives of `(i - cot(pi a)) x^a` in `a`.

use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::numerics::{Cx, PrecisionContext, RootOfUnity};

pub const MAX_COT_ORDER: u32 = 8;

/// Integer polynomials `P_n` with `d^n/da^n cot(pi a) = pi^n P_n(cot(pi a))`,
/// from `P_0 = c` and `P_{n+1} = -(1 + c^2) P_n'(c)`.
pub fn cot_polynomials(n_max: u32) -> Vec<Vec<Integer>> {
    let mut out = vec![vec![Integer::from(0), Integer::from(1)]];
    for _ in 0..n_max {
        let p = out.last().expect("non-empty");
        let deriv: Vec<Integer> = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| Integer::from(c * k as u32))
            .collect();
        let mut next = vec![Integer::new(); deriv.len() + 2];
        for (k, c) in deriv.iter().enumerate() {
            next[k] -= c;
            next[k + 2] -= c;
        }
        while next.len() > 1 && next.last().is_some_and(|c| *c == 0) {
            next.pop();
        }
        out.push(next);
    }
    out
}

fn eval_poly(p: &[Integer], c: &Cx) -> Cx {
    let bits = c.bits();
    let mut acc = Cx::zero(bits);
    for coeff in p.iter().rev() {
        acc = acc * c + Cx::from_float(Float::with_val(bits, coeff));
    }
    acc
}

/// `(pi/m!) d^m/da^m [(i - cot(pi a)) x^a]` with `x^a = e^{i theta a}` for
/// `x = e^{i theta}`, `theta` in `(0, 2 pi)`.
pub fn cot_deriv_combo(m: u32, a: &Cx, x: RootOfUnity, ctx: &PrecisionContext) -> Result<Cx> {
    if x.is_one() {
        return Err(Error::InvalidInput(
            "theta must lie in (0, 2 pi); x = 1 is excluded".into(),
        ));
    }
    let theta = Cx::from_float(x.angle(ctx.bits() + 32));
    cot_deriv_combo_angle(m, a, &theta, ctx)
}

/// As [`cot_deriv_combo`] for an explicit (possibly complex) angle `theta`.
pub fn cot_deriv_combo_angle(m: u32, a: &Cx, theta: &Cx, ctx: &PrecisionContext) -> Result<Cx> {
    if m > MAX_COT_ORDER {
        return Err(Error::UnsupportedOrder {
            order: m as usize,
            max: MAX_COT_ORDER as usize,
        });
    }
    if a.as_integer().is_some() {
        return Err(Error::Pole(format!(
            "cot(pi a) at integer a = {}",
            a.re_f64()
        )));
    }
    let bits = ctx.bits() + 32;
    let a = a.at(bits);
    let pi = Cx::pi(bits);
    let c = (&pi * &a).cot();
    let log_x = theta.at(bits).mul_i();
    let xa = (&log_x * &a).exp();
    let polys = cot_polynomials(m);

    // f = i - cot(pi a); f^(n) = -pi^n P_n(c) for n >= 1
    let f = |n: u32| -> Cx {
        if n == 0 {
            Cx::i(bits) - &c
        } else {
            -(pi.powi(n as i64) * eval_poly(&polys[n as usize], &c))
        }
    };
    let mut acc = Cx::zero(bits);
    let mut binom = Integer::from(1);
    for n in 0..=m {
        let g = log_x.powi((m - n) as i64) * &xa;
        acc += f(n) * g * Cx::from_float(Float::with_val(bits, &binom));
        binom *= m - n;
        binom /= n + 1;
    }
    let fact = Integer::from(Integer::factorial(m));
    let v = acc * &pi / Cx::from_float(Float::with_val(bits, &fact));
    Ok(v.at(ctx.bits()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polylog::li_pair;

    #[test]
    fn polynomials() {
        let p = cot_polynomials(3);
        let as_i64 = |v: &Vec<Integer>| v.iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(&p[1]), vec![-1, 0, -1]);
        assert_eq!(as_i64(&p[2]), vec![0, 2, 0, 2]);
        assert_eq!(as_i64(&p[3]), vec![-2, 0, -8, 0, -6]);
    }

    #[test]
    fn order_zero_and_one() {
        let ctx = PrecisionContext::with_digits(40);
        let bits = ctx.bits();
        let a = Cx::ratio(bits, 1, 4);
        let x = RootOfUnity::new(1, 6).unwrap();
        let pi = Cx::pi(bits);
        let xa = (Cx::from_float(x.angle(bits)).mul_i() * &a).exp();
        let c = (&pi * &a).cot();
        let m0 = &pi * &xa * (Cx::i(bits) - &c);
        assert!(cot_deriv_combo(0, &a, x, &ctx).unwrap().dist(&m0) < 1e-40);
        let csc2 = Cx::one(bits) + c.sqr();
        let logx = Cx::from_float(x.angle(bits)).mul_i();
        let m1 = pi.sqr() * csc2 * &xa + &pi * (Cx::i(bits) - &c) * &xa * logx;
        assert!(cot_deriv_combo(1, &a, x, &ctx).unwrap().dist(&m1) < 1e-39);
    }

    #[test]
    fn matches_li_pair() {
        let ctx = PrecisionContext::with_digits(40);
        let bits = ctx.bits();
        let a = Cx::from_f64(bits, 0.2, 0.1);
        let x = RootOfUnity::new(2, 5).unwrap();
        for m in 0..4 {
            let l = li_pair(m, &a, x, &ctx).unwrap();
            let r = cot_deriv_combo(m, &a, x, &ctx).unwrap();
            assert!(l.dist(&r) < 1e-38, "m = {m}: {l:?} vs {r:?}");
        }
    }

    #[test]
    fn finite_difference_in_a() {
        let ctx = PrecisionContext::with_digits(60);
        let bits = ctx.bits();
        let x = RootOfUnity::new(1, 6).unwrap();
        let a = Cx::ratio(bits, 1, 4);
        let h = Cx::from_f64(bits, 1e-8, 0.0);
        let central = |m: u32, h: &Cx| {
            let up = cot_deriv_combo(m, &(&a + h), x, &ctx).unwrap();
            let dn = cot_deriv_combo(m, &(&a - h), x, &ctx).unwrap();
            (up - dn) / (h * 2i64)
        };
        for m in 1..=4u32 {
            // one Richardson step removes the O(h^2) term
            let fd = (central(m, &(&h / 2i64)) * 4i64 - central(m, &h)) / 3i64;
            // d/da of the m-th expression is (m+1) times the (m+1)-th
            let next = cot_deriv_combo(m + 1, &a, x, &ctx).unwrap() * (m as i64 + 1);
            let rel = fd.dist(&next).to_f64() / next.abs_f64().max(1.0);
            assert!(rel < 1e-25, "m = {m}: {rel}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let ctx = PrecisionContext::with_digits(30);
        let bits = ctx.bits();
        let x = RootOfUnity::new(1, 3).unwrap();
        assert!(matches!(
            cot_deriv_combo(9, &Cx::ratio(bits, 1, 3), x, &ctx),
            Err(Error::UnsupportedOrder { .. })
        ));
        assert!(matches!(
            cot_deriv_combo(1, &Cx::int(bits, 2), x, &ctx),
            Err(Error::Pole(_))
        ));
        assert!(cot_deriv_combo(1, &Cx::ratio(bits, 1, 3), RootOfUnity::one(), &ctx).is_err());
    }
}
