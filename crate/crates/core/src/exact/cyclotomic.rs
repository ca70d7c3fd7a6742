//! Elements of ℚ(ζ_n) in the power basis 1, ζ_n, …, ζ_n^{φ(n)−1}.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::{Float, Integer, Rational};

use super::{cyclotomic_polynomial, euler_phi, gcd, lcm, order_cap};
use crate::error::{Error, Result};
use crate::numeric::{bits_for, BigComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact element of ℚ(ζ_n), reduced modulo Φ_n.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    order: u32,
    coeffs: Vec<Rational>,
}

fn checked_order(n: u64) -> Result<u32> {
    let cap = order_cap();
    if n == 0 || n > cap as u64 {
        return Err(Error::OrderCapExceeded { order: n, cap });
    }
    Ok(n as u32)
}

/// Reduce an integer vector (coefficients of powers of ζ_n) to length φ(n).
fn reduce_integral(n: u32, mut v: Vec<Integer>) -> Vec<Integer> {
    let n_us = n as usize;
    if v.len() > n_us {
        let tail = v.split_off(n_us);
        for (i, c) in tail.into_iter().enumerate() {
            if c != 0 {
                v[i % n_us] += c;
            }
        }
    }
    let phi_poly = cyclotomic_polynomial(n);
    let phi_c = phi_poly.coeffs();
    let d = phi_c.len() - 1;
    for i in (d..v.len()).rev() {
        let c = std::mem::take(&mut v[i]);
        if c == 0 {
            continue;
        }
        for (j, pj) in phi_c[..d].iter().enumerate() {
            if *pj != 0 {
                v[i - d + j] -= &c * pj;
            }
        }
    }
    v.resize(d, Integer::new());
    v
}

fn to_rationals(nums: Vec<Integer>, den: &Integer) -> Vec<Rational> {
    nums.into_iter()
        .map(|c| if *den == 1 { Rational::from(c) } else { Rational::from((c, den.clone())) })
        .collect()
}

/// numer(c) · den / denom(c), where denom(c) divides den.
fn scaled_numer(c: &Rational, den: &Integer) -> Integer {
    if den == c.denom() {
        c.numer().clone()
    } else {
        c.numer() * Integer::from(den / c.denom())
    }
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| *c == 0) {
        v.pop();
    }
}

/// Quotient and remainder in ℚ[x]; `b` must be nonzero and trimmed.
fn div_rem_q(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead_inv = Rational::from(b[db].recip_ref());
    let mut q = vec![Rational::new(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i] == 0 {
            continue;
        }
        let c = Rational::from(&r[i] * &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            if *bj != 0 {
                r[i - db + j] -= Rational::from(&c * bj);
            }
        }
        q[i - db] = c;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn poly_mul_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if *y != 0 {
                out[i + j] += Rational::from(x * y);
            }
        }
    }
    out
}

fn poly_sub_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::new(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

impl CyclotomicNumber {
    pub fn zero(n: u32) -> Self {
        assert!(n >= 1);
        CyclotomicNumber { order: n, coeffs: vec![Rational::new(); euler_phi(n) as usize] }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(Rational::from(1), n)
    }

    pub fn from_i64(v: i64, n: u32) -> Self {
        Self::from_rational(Rational::from(v), n)
    }

    pub fn from_rational(r: Rational, n: u32) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = r;
        z
    }

    /// Σ c_i ζ_n^i for an arbitrary-length coefficient list, reduced.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Self {
        assert!(n >= 1);
        let mut den = Integer::from(1);
        for c in &coeffs {
            if *c.denom() != 1 {
                den.lcm_mut(c.denom());
            }
        }
        let nums: Vec<Integer> = coeffs
            .iter()
            .map(|c| scaled_numer(c, &den))
            .collect();
        let red = reduce_integral(n, nums);
        CyclotomicNumber { order: n, coeffs: to_rationals(red, &den) }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|c| *c == 0)
    }

    /// The value as a rational, when it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| *c == 0) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn integral(&self) -> (Vec<Integer>, Integer) {
        let mut den = Integer::from(1);
        for c in &self.coeffs {
            if *c.denom() != 1 {
                den.lcm_mut(c.denom());
            }
        }
        let nums = self
            .coeffs
            .iter()
            .map(|c| scaled_numer(c, &den))
            .collect();
        (nums, den)
    }

    /// The same value in ℚ(ζ_n), via ζ_m ↦ ζ_n^{n/m}.
    pub fn promote(&self, n: u32) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(self.order) {
            return Err(Error::OrderMismatch { from: self.order, to: n });
        }
        checked_order(n as u64)?;
        Ok(self.promote_unchecked(n))
    }

    fn promote_unchecked(&self, n: u32) -> Self {
        if n == self.order {
            return self.clone();
        }
        let s = (n / self.order) as usize;
        let (nums, den) = self.integral();
        let mut v = vec![Integer::new(); (nums.len().saturating_sub(1)) * s + 1];
        for (i, c) in nums.into_iter().enumerate() {
            v[i * s] = c;
        }
        CyclotomicNumber { order: n, coeffs: to_rationals(reduce_integral(n, v), &den) }
    }

    fn common(&self, other: &Self) -> Result<(Self, Self)> {
        if self.order == other.order {
            return Ok((self.clone(), other.clone()));
        }
        let n = checked_order(lcm(self.order as u64, other.order as u64))?;
        Ok((self.promote_unchecked(n), other.promote_unchecked(n)))
    }

    fn add_same(&self, other: &Self, negate: bool) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| if negate { Rational::from(a - b) } else { Rational::from(a + b) })
            .collect();
        CyclotomicNumber { order: self.order, coeffs }
    }

    fn mul_same(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order);
        }
        let (an, ad) = self.integral();
        let (bn, bd) = other.integral();
        let mut prod = vec![Integer::new(); an.len() + bn.len() - 1];
        for (i, a) in an.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in bn.iter().enumerate() {
                if *b != 0 {
                    prod[i + j] += a * b;
                }
            }
        }
        let den = ad * bd;
        CyclotomicNumber { order: self.order, coeffs: to_rationals(reduce_integral(self.order, prod), &den) }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common(other)?;
        Ok(a.add_same(&b, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common(other)?;
        Ok(a.add_same(&b, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common(other)?;
        Ok(a.mul_same(&b))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common(other)?;
        Ok(a.mul_same(&b.inv()?))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in ℚ[x]/Φ_n.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(r.recip(), self.order));
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.order).coeffs().iter().map(Rational::from).collect();
        let mut r0 = phi;
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1 = vec![Rational::from(1)];
        // Invariant: s_i · self ≡ r_i (mod Φ_n).
        while r1.len() > 1 {
            let (q, r) = div_rem_q(&r0, &r1);
            let s2 = poly_sub_q(&s0, &poly_mul_q(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                // Nontrivial gcd with an irreducible Φ_n cannot happen for nonzero input.
                return Err(Error::DivisionByZero);
            }
        }
        let c = r1[0].clone().recip();
        let scaled = s1.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_coeffs(self.order, scaled))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_same(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul_same(&sq);
            }
        }
        Ok(acc)
    }

    /// The field automorphism ζ_n ↦ ζ_n^s, gcd(s, n) = 1.
    pub fn galois(&self, s: i64) -> Self {
        let n = self.order as i64;
        assert_eq!(gcd(s.rem_euclid(n) as u64, n as u64), 1, "galois exponent must be a unit");
        let (nums, den) = self.integral();
        let mut v = vec![Integer::new(); self.order as usize];
        for (i, c) in nums.into_iter().enumerate() {
            let e = (i as i64 * s).rem_euclid(n) as usize;
            v[e] += c;
        }
        CyclotomicNumber { order: self.order, coeffs: to_rationals(reduce_integral(self.order, v), &den) }
    }

    /// Complex conjugate, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Σ c_i e^{2πi·i/n} with at least `digits` correct significant digits.
    pub fn embed_complex(&self, digits: u32) -> BigComplex {
        if self.is_zero() {
            return BigComplex::zero(digits);
        }
        let mut mag = Float::with_val(64, 0);
        for c in &self.coeffs {
            mag += Float::with_val(64, c).abs();
        }
        let mag_log = mag.to_f64().log10();
        let mut wp = digits + 10 + (self.coeffs.len() as f64).log10().ceil() as u32;
        loop {
            let p = bits_for(wp);
            let mut sum = BigComplex::zero(wp);
            for (i, c) in self.coeffs.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                let z = BigComplex::cis_turns(&Rational::from((i as i64, self.order as i64)), wp);
                sum += &z.mul_real(&Float::with_val(p, c));
            }
            let loss = (mag_log - sum.log10_abs()).max(0.0);
            if (digits as f64) + loss + 5.0 <= wp as f64 {
                return sum.with_digits(digits);
            }
            wp = digits + loss.ceil() as u32 + 15;
        }
    }
}

/// ζ_k^{h mod k} in ℚ(ζ_k).
pub fn root_of_unity(h: i64, k: u32) -> CyclotomicNumber {
    assert!(k >= 1);
    let e = h.rem_euclid(k as i64) as usize;
    let mut v = vec![Integer::new(); e + 1];
    v[e] = Integer::from(1);
    CyclotomicNumber { order: k, coeffs: to_rationals(reduce_integral(k, v), &Integer::from(1)) }
}

pub fn field_arithmetic(x: &CyclotomicNumber, y: &CyclotomicNumber, op: FieldOp) -> Result<CyclotomicNumber> {
    match op {
        FieldOp::Add => x.checked_add(y),
        FieldOp::Sub => x.checked_sub(y),
        FieldOp::Mul => x.checked_mul(y),
        FieldOp::Div => x.checked_div(y),
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let n = lcm(self.order as u64, other.order as u64) as u32;
        self.promote_unchecked(n).coeffs == other.promote_unchecked(n).coeffs
    }
}

impl Eq for CyclotomicNumber {}

/// Serialized losslessly as {order, coeffs: ["p/q", …]} in the power basis.
impl serde::Serialize for CyclotomicNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("CyclotomicNumber", 2)?;
        st.serialize_field("order", &self.order)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let mag = Rational::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag == 1) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if self.to_rational().is_none() {
            write!(f, " [z = e^(2 pi i/{})]", self.order)?;
        }
        Ok(())
    }
}

macro_rules! field_binops {
    ($($tr:ident $m:ident $checked:ident),*) => {$(
        impl<'a> $tr<&'a CyclotomicNumber> for &'a CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs).unwrap_or_else(|e| panic!("cyclotomic {}: {e}", stringify!($m)))
            }
        }
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &CyclotomicNumber) -> CyclotomicNumber { (&self).$m(rhs) }
        }
        impl<'a> $tr<CyclotomicNumber> for &'a CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber { self.$m(&rhs) }
        }
    )*};
}
field_binops!(Add add checked_add, Sub sub checked_sub, Mul mul checked_mul, Div div checked_div);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { order: self.order, coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect() }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}
