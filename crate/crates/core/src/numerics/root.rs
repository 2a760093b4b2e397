use std::fmt;
use std::str::FromStr;

use rug::float::Constant;
use rug::Float;

use super::complex::Cx;
use crate::error::{Error, Result};

/// The root of unity `exp(2 pi i p / N)` held exactly as the reduced pair `(p, N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    numer: u64,
    order: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RootOfUnity {
    /// `exp(2 pi i p / n)` for any integer `p`; the pair is reduced so that
    /// `0 <= p < N` and `gcd(p, N) = 1`.
    pub fn new(p: i64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "root of unity needs a positive order".into(),
            ));
        }
        let p = p.rem_euclid(n as i64) as u64;
        if p == 0 {
            return Ok(RootOfUnity { numer: 0, order: 1 });
        }
        let g = gcd(p, n);
        Ok(RootOfUnity {
            numer: p / g,
            order: n / g,
        })
    }

    pub fn one() -> Self {
        RootOfUnity { numer: 0, order: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { numer: 1, order: 2 }
    }

    pub fn numer(&self) -> u64 {
        self.numer
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn inverse(&self) -> Self {
        RootOfUnity::new(-(self.numer as i64), self.order).expect("order is positive")
    }

    /// `self^k` for any integer exponent.
    pub fn pow(&self, k: i64) -> Self {
        let n = self.order as i128;
        let p = (self.numer as i128 * k as i128).rem_euclid(n);
        RootOfUnity::new(p as i64, self.order).expect("order is positive")
    }

    /// The angle `theta = 2 pi p / N` in `[0, 2 pi)`.
    pub fn angle(&self, bits: u32) -> Float {
        let mut t = Float::with_val(bits, Constant::Pi);
        t *= 2 * self.numer;
        t /= self.order;
        t
    }

    /// The complex value; exact for orders 1, 2 and 4.
    pub fn embed(&self, bits: u32) -> Cx {
        match (self.numer, self.order) {
            (0, 1) => Cx::one(bits),
            (1, 2) => Cx::int(bits, -1),
            (1, 4) => Cx::i(bits),
            (3, 4) => -Cx::i(bits),
            _ => {
                let t = self.angle(bits);
                let (s, c) = t.sin_cos(Float::new(bits));
                Cx::from_parts(c, s)
            }
        }
    }

    /// `[x^0, x^1, ..., x^(N-1)]` at the given precision.
    pub fn power_table(&self, bits: u32) -> Vec<Cx> {
        (0..self.order as i64)
            .map(|k| self.pow(k).embed(bits))
            .collect()
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.order)
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    /// Parses `"p/N"`, the angle `2 pi p / N`; floating angles are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let (p, n) = s.trim().split_once('/').ok_or_else(|| {
            Error::InvalidInput(format!(
                "root of unity must be written as p/N (angle 2*pi*p/N), got {s:?}"
            ))
        })?;
        let p: i64 = p.trim().parse().map_err(|_| {
            Error::InvalidInput(format!(
                "root of unity numerator must be an integer, got {p:?}"
            ))
        })?;
        let n: u64 = n.trim().parse().map_err(|_| {
            Error::InvalidInput(format!(
                "root of unity order must be a positive integer, got {n:?}"
            ))
        })?;
        RootOfUnity::new(p, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_parses() {
        let r: RootOfUnity = "2/6".parse().unwrap();
        assert_eq!((r.numer(), r.order()), (1, 3));
        let one: RootOfUnity = "1/1".parse().unwrap();
        assert!(one.is_one());
        assert_eq!(
            "-1/4".parse::<RootOfUnity>().unwrap(),
            RootOfUnity::new(3, 4).unwrap()
        );
        assert!("0.25".parse::<RootOfUnity>().is_err());
        assert!("1/0".parse::<RootOfUnity>().is_err());
    }

    #[test]
    fn modulus_one_and_nth_power() {
        for (p, n) in [(1, 3), (2, 5), (3, 7), (1, 6), (5, 12)] {
            let r = RootOfUnity::new(p, n).unwrap();
            let x = r.embed(256);
            let m = x.abs();
            assert!((m - 1.0f64).abs() < 1e-70);
            let xn = x.powi(n as i64);
            assert!(xn.dist(&Cx::one(256)) < 1e-70);
            assert!(r.pow(n as i64).is_one());
            let prod = &x * &r.inverse().embed(256);
            assert!(prod.dist(&Cx::one(256)) < 1e-70);
        }
    }
}
