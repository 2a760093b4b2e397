//! Arbitrary-precision complex scalar used by every evaluator.
//!
//! [`Cx`] wraps an MPC complex number. Binary operations produce a result at
//! the larger of the two operand precisions, so raising the precision of one
//! input (usually a constant built from a [`PrecisionContext`]) raises the
//! precision of the whole expression.
//!
//! [`PrecisionContext`]: crate::numerics::PrecisionContext

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Cx(Complex);

impl Cx {
    pub fn from_complex(c: Complex) -> Self {
        Cx(c)
    }

    pub fn zero(bits: u32) -> Self {
        Cx(Complex::new(bits))
    }

    pub fn one(bits: u32) -> Self {
        Cx(Complex::with_val(bits, 1))
    }

    pub fn i(bits: u32) -> Self {
        Cx(Complex::with_val(bits, (0, 1)))
    }

    pub fn int(bits: u32, n: i64) -> Self {
        Cx(Complex::with_val(bits, n))
    }

    pub fn from_f64(bits: u32, re: f64, im: f64) -> Self {
        Cx(Complex::with_val(bits, (re, im)))
    }

    /// The rational `num/den`, correctly rounded.
    pub fn ratio(bits: u32, num: i64, den: i64) -> Self {
        Cx(Complex::with_val(bits, Rational::from((num, den))))
    }

    pub fn from_rational(bits: u32, re: &Rational, im: &Rational) -> Self {
        Cx(Complex::with_val(bits, (re, im)))
    }

    pub fn from_float(re: Float) -> Self {
        let bits = re.prec();
        Cx(Complex::with_val(bits, (re, 0)))
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        let bits = re.prec().max(im.prec());
        Cx(Complex::with_val(bits, (re, im)))
    }

    pub fn pi(bits: u32) -> Self {
        Cx::from_float(Float::with_val(bits, Constant::Pi))
    }

    pub fn ln2(bits: u32) -> Self {
        Cx::from_float(Float::with_val(bits, Constant::Log2))
    }

    pub fn euler_gamma(bits: u32) -> Self {
        Cx::from_float(Float::with_val(bits, Constant::Euler))
    }

    pub fn bits(&self) -> u32 {
        let (r, i) = self.0.prec();
        r.max(i)
    }

    /// Same value rounded (or zero-extended) to `bits`.
    pub fn at(&self, bits: u32) -> Self {
        Cx(Complex::with_val(bits, &self.0))
    }

    pub fn inner(&self) -> &Complex {
        &self.0
    }

    pub fn into_inner(self) -> Complex {
        self.0
    }

    pub fn re(&self) -> &Float {
        self.0.real()
    }

    pub fn im(&self) -> &Float {
        self.0.imag()
    }

    pub fn re_f64(&self) -> f64 {
        self.0.real().to_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.0.imag().to_f64()
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.bits(), self.0.abs_ref())
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    /// `log2 |self|`, `-inf` at zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.abs().log2().to_f64()
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Float {
        Float::with_val(self.bits(), self.0.arg_ref())
    }

    pub fn is_zero(&self) -> bool {
        self.0.real().is_zero() && self.0.imag().is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.0.imag().is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.real().is_finite() && self.0.imag().is_finite()
    }

    /// Passes the value through unchanged when finite.
    pub fn finite(self, what: &'static str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(what))
        }
    }

    /// `Some(n)` when the value is exactly the integer `n`.
    pub fn as_integer(&self) -> Option<i64> {
        if !self.is_real() || !self.re().is_integer() {
            return None;
        }
        self.re().to_integer().and_then(|n| n.to_i64())
    }

    pub fn is_nonpositive_integer(&self) -> bool {
        matches!(self.as_integer(), Some(n) if n <= 0)
    }

    pub fn conj(&self) -> Self {
        Cx(Complex::with_val(self.bits(), self.0.conj_ref()))
    }

    pub fn recip(&self) -> Self {
        Cx(self.0.clone().recip())
    }

    pub fn sqr(&self) -> Self {
        Cx(self.0.clone().square())
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        Cx(self.0.clone().sqrt())
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        Cx(self.0.clone().ln())
    }

    pub fn exp(&self) -> Self {
        Cx(self.0.clone().exp())
    }

    pub fn sin(&self) -> Self {
        Cx(self.0.clone().sin())
    }

    pub fn cos(&self) -> Self {
        Cx(self.0.clone().cos())
    }

    pub fn cot(&self) -> Self {
        Cx(self.0.clone().tan().recip())
    }

    pub fn mul_i(&self) -> Self {
        Cx(self.0.clone().mul_i(false))
    }

    pub fn powi(&self, n: i64) -> Self {
        if n >= 0 {
            Cx(self.0.clone().pow(n as u64))
        } else {
            Cx(self.0.clone().pow(n.unsigned_abs()).recip())
        }
    }

    /// Principal power `exp(e * ln self)`.
    pub fn powc(&self, e: &Cx) -> Self {
        if self.is_zero() {
            return Cx::zero(self.bits());
        }
        (e * &self.ln()).exp()
    }

    /// Absolute distance `|self - other|`.
    pub fn dist(&self, other: &Cx) -> Float {
        (self - other).abs()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re_f64(), self.im_f64())
    }

    /// Decimal rendering with `digits` significant digits per component.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (
            float_to_decimal(self.re(), digits),
            float_to_decimal(self.im(), digits),
        )
    }
}

pub fn float_to_decimal(f: &Float, digits: usize) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    f.to_string_radix(10, Some(digits.max(2)))
}

/// Compares two reals given as `Float`s; NaN compares as equal.
pub fn cmp_float(a: &Float, b: &Float) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_decimal(25);
        write!(f, "({re}, {im})")
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.bits() as f64) * std::f64::consts::LOG10_2) as usize;
        let (re, im) = self.to_decimal(digits);
        write!(f, "{re} + {im}i")
    }
}

impl From<Float> for Cx {
    fn from(f: Float) -> Self {
        Cx::from_float(f)
    }
}

impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx(-self.0)
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx(-self.0.clone())
    }
}

macro_rules! cx_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Cx> for &Cx {
            type Output = Cx;
            fn $method(self, rhs: &Cx) -> Cx {
                let bits = self.bits().max(rhs.bits());
                Cx(Complex::with_val(bits, &self.0 $op &rhs.0))
            }
        }
        impl $tr<Cx> for &Cx {
            type Output = Cx;
            fn $method(self, rhs: Cx) -> Cx {
                self $op &rhs
            }
        }
        impl $tr<&Cx> for Cx {
            type Output = Cx;
            fn $method(self, rhs: &Cx) -> Cx {
                &self $op rhs
            }
        }
        impl $tr<Cx> for Cx {
            type Output = Cx;
            fn $method(self, rhs: Cx) -> Cx {
                &self $op &rhs
            }
        }
        impl $tr<&Float> for &Cx {
            type Output = Cx;
            fn $method(self, rhs: &Float) -> Cx {
                let bits = self.bits().max(rhs.prec());
                Cx(Complex::with_val(bits, &self.0 $op rhs))
            }
        }
        impl $tr<&Float> for Cx {
            type Output = Cx;
            fn $method(self, rhs: &Float) -> Cx {
                &self $op rhs
            }
        }
        impl $tr<i64> for &Cx {
            type Output = Cx;
            fn $method(self, rhs: i64) -> Cx {
                let bits = self.bits();
                Cx(Complex::with_val(bits, &self.0 $op rhs))
            }
        }
        impl $tr<i64> for Cx {
            type Output = Cx;
            fn $method(self, rhs: i64) -> Cx {
                &self $op rhs
            }
        }
        impl $tr<f64> for &Cx {
            type Output = Cx;
            fn $method(self, rhs: f64) -> Cx {
                let bits = self.bits();
                Cx(Complex::with_val(bits, &self.0 $op rhs))
            }
        }
        impl $tr<f64> for Cx {
            type Output = Cx;
            fn $method(self, rhs: f64) -> Cx {
                &self $op rhs
            }
        }
    };
}

cx_binop!(Add, add, +);
cx_binop!(Sub, sub, -);
cx_binop!(Mul, mul, *);
cx_binop!(Div, div, /);

macro_rules! cx_assign_impl {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Cx> for Cx {
            fn $method(&mut self, rhs: &Cx) {
                let bits = self.bits().max(rhs.bits());
                self.0 = Complex::with_val(bits, &self.0 $op &rhs.0);
            }
        }
        impl $tr<Cx> for Cx {
            fn $method(&mut self, rhs: Cx) {
                let bits = self.bits().max(rhs.bits());
                self.0 = Complex::with_val(bits, &self.0 $op &rhs.0);
            }
        }
        impl $tr<i64> for Cx {
            fn $method(&mut self, rhs: i64) {
                let bits = self.bits();
                self.0 = Complex::with_val(bits, &self.0 $op rhs);
            }
        }
    };
}

cx_assign_impl!(AddAssign, add_assign, +);
cx_assign_impl!(SubAssign, sub_assign, -);
cx_assign_impl!(MulAssign, mul_assign, *);
cx_assign_impl!(DivAssign, div_assign, /);

impl std::iter::Sum for Cx {
    fn sum<I: Iterator<Item = Cx>>(iter: I) -> Cx {
        let mut acc: Option<Cx> = None;
        for v in iter {
            acc = Some(match acc {
                None => v,
                Some(a) => a + v,
            });
        }
        acc.unwrap_or_else(|| Cx::zero(64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_follows_the_wider_operand() {
        let a = Cx::ratio(64, 1, 3);
        let b = Cx::one(256);
        assert_eq!((&a + &b).bits(), 256);
        assert_eq!((&a * 2i64).bits(), 64);
    }

    #[test]
    fn integer_detection() {
        assert_eq!(Cx::int(128, -3).as_integer(), Some(-3));
        assert!(Cx::int(128, 0).is_nonpositive_integer());
        assert!(!Cx::ratio(128, 1, 2).is_nonpositive_integer());
        assert_eq!(Cx::from_f64(128, 2.0, 1e-30).as_integer(), None);
    }

    #[test]
    fn principal_branches() {
        let m1 = Cx::int(128, -1);
        let s = m1.sqrt();
        assert!(s.re().is_zero() && s.im_f64() == 1.0);
        let l = m1.ln();
        assert!((l.im_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn powers() {
        let x = Cx::ratio(128, 3, 2);
        assert!((x.powi(-2).re_f64() - 4.0 / 9.0).abs() < 1e-16);
        let half = Cx::ratio(128, 1, 2);
        assert!((Cx::int(128, 9).powc(&half).re_f64() - 3.0).abs() < 1e-16);
    }
}
