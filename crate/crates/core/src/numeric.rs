//! Arbitrary-precision complex numbers on top of MPFR floats.
//!
//! A [`BigComplex`] carries its working precision in decimal digits.
//! Binary operations run at the smaller of the two operand precisions.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest precision a [`BigComplex`] may carry.
pub const MIN_DIGITS: u32 = 10;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Mantissa bits used for `digits` decimal digits.
pub fn bits_for(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + 16
}

/// Extra digits carried by infinite objects: max(10, digits/5).
pub fn guard_digits(digits: u32) -> u32 {
    (digits / 5).max(10)
}

/// Outcome of truncating an infinite product or series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TruncationReport {
    pub terms_used: usize,
    /// Absolute bound on the discarded tail (for products: on the log of the tail factor).
    pub tail_bound: f64,
}

#[derive(Clone, Debug)]
pub struct BigComplex {
    re: Float,
    im: Float,
    digits: u32,
}

impl BigComplex {
    pub fn from_floats(re: Float, im: Float, digits: u32) -> Self {
        let digits = digits.max(MIN_DIGITS);
        let p = bits_for(digits);
        BigComplex { re: Float::with_val(p, re), im: Float::with_val(p, im), digits }
    }

    pub fn zero(digits: u32) -> Self {
        let digits = digits.max(MIN_DIGITS);
        let p = bits_for(digits);
        BigComplex { re: Float::new(p), im: Float::new(p), digits }
    }

    pub fn one(digits: u32) -> Self {
        Self::from_i64(1, digits)
    }

    pub fn i(digits: u32) -> Self {
        let mut z = Self::zero(digits);
        z.im += 1;
        z
    }

    pub fn from_i64(v: i64, digits: u32) -> Self {
        let mut z = Self::zero(digits);
        z.re += v;
        z
    }

    pub fn from_f64(re: f64, im: f64, digits: u32) -> Self {
        let mut z = Self::zero(digits);
        z.re += re;
        z.im += im;
        z
    }

    pub fn from_rational(r: &Rational, digits: u32) -> Self {
        let mut z = Self::zero(digits);
        z.re = Float::with_val(z.prec(), r);
        z
    }

    /// e^{2πi r}; exact at multiples of 1/4.
    pub fn cis_turns(r: &Rational, digits: u32) -> Self {
        let frac = r.clone().rem_floor();
        let mut z = Self::zero(digits);
        let four = Rational::from(4) * &frac;
        if *four.denom() == 1 {
            match four.numer().to_u32().unwrap() {
                0 => z.re += 1,
                1 => z.im += 1,
                2 => z.re -= 1,
                _ => z.im -= 1,
            }
            return z;
        }
        let p = z.prec();
        let mut angle = Float::with_val(p + 16, Constant::Pi);
        angle *= 2;
        angle *= &frac;
        let (s, c) = angle.sin_cos(Float::new(p + 16));
        z.re = Float::with_val(p, c);
        z.im = Float::with_val(p, s);
        z
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn prec(&self) -> u32 {
        bits_for(self.digits)
    }

    /// Same value re-rounded to a different precision.
    pub fn with_digits(&self, digits: u32) -> Self {
        Self::from_floats(self.re.clone(), self.im.clone(), digits)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn norm_sqr(&self) -> Float {
        let mut n = Float::with_val(self.prec(), self.re.square_ref());
        n += Float::with_val(self.prec(), self.im.square_ref());
        n
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// Modulus as f64, saturating for exponents outside f64 range.
    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    /// log10 |z|, valid far outside the f64 exponent range; -inf for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let m = Float::with_val(64, self.re.hypot_ref(&self.im));
        let (mant, exp) = m.to_f64_exp();
        mant.log10() + exp as f64 * std::f64::consts::LOG10_2
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im), digits: self.digits }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        let p = self.prec();
        Ok(BigComplex {
            re: Float::with_val(p, &self.re / &n),
            im: Float::with_val(p, -Float::with_val(p, &self.im / &n)),
            digits: self.digits,
        })
    }

    pub fn checked_div(&self, other: &BigComplex) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / other)
    }

    /// Integer power by repeated squaring; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = BigComplex::one(self.digits);
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc *= &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn mul_real(&self, r: &Float) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re * r), im: Float::with_val(p, &self.im * r), digits: self.digits }
    }

    pub fn mul_i64(&self, r: i64) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re * r), im: Float::with_val(p, &self.im * r), digits: self.digits }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re * r), im: Float::with_val(p, &self.im * r), digits: self.digits }
    }

    /// Complex exponential.
    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p + 8, self.re.exp_ref());
        let (s, c) = Float::with_val(p + 8, &self.im).sin_cos(Float::new(p + 8));
        BigComplex { re: Float::with_val(p, &m * &c), im: Float::with_val(p, &m * &s), digits: self.digits }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        // sqrt((r + |re|)/2) on the dominant component avoids cancellation.
        let mut w = Float::with_val(p + 8, &r + Float::with_val(p, self.re.abs_ref()));
        w /= 2;
        w.sqrt_mut();
        let (re, im) = if self.re >= 0 {
            let im = Float::with_val(p, &self.im / Float::with_val(p + 8, &w * 2u32));
            (w, im)
        } else {
            let re = Float::with_val(p, Float::with_val(p, self.im.abs_ref()) / Float::with_val(p + 8, &w * 2u32));
            let im = if self.im < 0 { -w } else { w };
            (re, im)
        };
        BigComplex { re: Float::with_val(p, re), im: Float::with_val(p, im), digits: self.digits }
    }

    /// |self − other| ≤ 10^{-digits} · max(1, |other|).
    pub fn agrees_with(&self, other: &BigComplex, digits: u32) -> bool {
        let diff = (self - other).log10_abs();
        let scale = other.log10_abs().max(0.0);
        diff <= scale - digits as f64
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Decimal rendering of both components with `sig` significant digits.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        let sig = sig.max(1);
        let re = format_float(&self.re, sig);
        let im = format_float(&self.im, sig);
        if im.starts_with('-') {
            format!("{re} - {}i", &im[1..])
        } else {
            format!("{re} + {im}i")
        }
    }
}

/// Plain scientific rendering of a float: `d.ddd...e±x`, or `0`.
pub fn format_float(x: &Float, sig: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = x.to_string_radix(10, Some(sig));
    // rug renders as e.g. "-1.2345e-7"; keep it, but drop an "e0" suffix.
    s.strip_suffix("e0").map(str::to_string).unwrap_or(s)
}

/// 10^{-d} as f64 (0 below the f64 range).
pub fn pow10_neg(d: f64) -> f64 {
    10f64.powf(-d)
}

impl PartialEq for BigComplex {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(self.digits as usize))
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        let digits = self.digits.min(rhs.digits);
        let p = bits_for(digits);
        BigComplex { re: Float::with_val(p, &self.re + &rhs.re), im: Float::with_val(p, &self.im + &rhs.im), digits }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        let digits = self.digits.min(rhs.digits);
        let p = bits_for(digits);
        BigComplex { re: Float::with_val(p, &self.re - &rhs.re), im: Float::with_val(p, &self.im - &rhs.im), digits }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let digits = self.digits.min(rhs.digits);
        let p = bits_for(digits);
        let mut re = Float::with_val(p, &self.re * &rhs.re);
        re -= &self.im * &rhs.im;
        let mut im = Float::with_val(p, &self.re * &rhs.im);
        im += &self.im * &rhs.re;
        BigComplex { re, im, digits }
    }
}

impl<'a> Div<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        let digits = self.digits.min(rhs.digits);
        let p = bits_for(digits) + 8;
        let den = rhs.norm_sqr();
        let mut re = Float::with_val(p, &self.re * &rhs.re);
        re += &self.im * &rhs.im;
        let mut im = Float::with_val(p, &self.im * &rhs.re);
        im -= &self.re * &rhs.im;
        re /= &den;
        im /= &den;
        BigComplex::from_floats(re, im, digits)
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, -&self.re), im: Float::with_val(p, -&self.im), digits: self.digits }
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -self.re, im: -self.im, digits: self.digits }
    }
}

macro_rules! owned_binops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: &BigComplex) -> BigComplex { (&self).$m(rhs) }
        }
        impl<'a> $tr<BigComplex> for &'a BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex { self.$m(&rhs) }
        }
    )*};
}
owned_binops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&BigComplex> for BigComplex {
    fn add_assign(&mut self, rhs: &BigComplex) {
        if rhs.digits < self.digits {
            *self = &*self + rhs;
        } else {
            self.re += &rhs.re;
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&BigComplex> for BigComplex {
    fn sub_assign(&mut self, rhs: &BigComplex) {
        if rhs.digits < self.digits {
            *self = &*self - rhs;
        } else {
            self.re -= &rhs.re;
            self.im -= &rhs.im;
        }
    }
}

impl MulAssign<&BigComplex> for BigComplex {
    fn mul_assign(&mut self, rhs: &BigComplex) {
        *self = &*self * rhs;
    }
}

/// 1 − z.
pub fn one_minus(z: &BigComplex) -> BigComplex {
    let p = z.prec();
    let mut re = Float::with_val(p, 1);
    re -= &z.re;
    BigComplex { re, im: Float::with_val(p, -&z.im), digits: z.digits }
}

/// π at the precision of `digits`.
pub fn pi(digits: u32) -> Float {
    Float::with_val(bits_for(digits), Constant::Pi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(re, im, 40)
    }

    #[test]
    fn field_ops_match_f64() {
        let a = c(0.3, -1.25);
        let b = c(-2.0, 0.5);
        let (r, i) = (&a * &b).to_c64();
        assert!((r - (0.3 * -2.0 + 1.25 * 0.5)).abs() < 1e-15);
        assert!((i - (0.3 * 0.5 + 1.25 * 2.0)).abs() < 1e-15);
        let q = &(&a / &b) * &b;
        assert!(q.agrees_with(&a, 35));
    }

    #[test]
    fn cis_quarter_turns_are_exact() {
        let z = BigComplex::cis_turns(&Rational::from((3, 4)), 30);
        assert!(z.re().is_zero());
        assert_eq!(*z.im(), -1);
        let w = BigComplex::cis_turns(&Rational::from((-1, 2)), 30);
        assert_eq!(*w.re(), -1);
    }

    #[test]
    fn cis_sixth_turn() {
        let z = BigComplex::cis_turns(&Rational::from((1, 6)), 50);
        let half = c(0.5, 0.0);
        assert!((&BigComplex::from_floats(z.re().clone(), Float::new(200), 50) - &half).log10_abs() < -49.0);
        let three = &(&z.conj() * &z) - &BigComplex::one(50);
        assert!(three.log10_abs() < -49.0);
    }

    #[test]
    fn sqrt_is_principal() {
        for (re, im) in [(4.0, 0.0), (-4.0, 0.0), (-3.0, -4.0), (0.0, 2.0)] {
            let z = c(re, im);
            let s = z.sqrt();
            assert!((&s * &s).agrees_with(&z, 35));
            assert!(*s.re() >= 0);
        }
    }

    #[test]
    fn log10_abs_handles_huge_exponents() {
        let tiny = c(1e-300, 0.0).powi(5).unwrap();
        assert!((tiny.log10_abs() + 1500.0).abs() < 1e-6);
    }

    #[test]
    fn powi_negative() {
        let z = c(0.0, 2.0);
        let w = z.powi(-2).unwrap();
        assert!(w.agrees_with(&c(-0.25, 0.0), 35));
    }

    #[test]
    fn precision_is_min_of_operands() {
        let a = BigComplex::one(60);
        let b = BigComplex::one(20);
        assert_eq!((&a + &b).digits(), 20);
    }
}
