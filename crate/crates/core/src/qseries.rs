//! q-Pochhammer symbols, Jacobi triple products and Appell–Lerch sums.
//!
//! Finite objects work over any [`Scalar`] (exact cyclotomic or numeric);
//! infinite objects are numeric and either truncated with a certified tail
//! bound (products) or summed with cancellation-aware working precision
//! (bilateral series).

use crate::error::{Error, Result};
use crate::exact::CyclotomicNumber;
pub use crate::numeric::{BigComplex, TruncationReport};
use crate::numeric::{guard_digits, one_minus};

/// Working precision never grows beyond this many digits.
pub const MAX_WORKING_DIGITS: u32 = 40_000;

/// Hard cap on the number of terms or factors of any numeric expansion.
pub const MAX_TERMS: usize = 20_000_000;

/// |q| closer to 1 than this is refused by the product routines.
pub const DEFAULT_BOUNDARY_GAP: f64 = 1e-8;

/// Values the finite q-series routines can run over.
pub trait Scalar: Clone {
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn powi(&self, e: i64) -> Result<Self>;
}

impl Scalar for BigComplex {
    fn one_like(&self) -> Self {
        BigComplex::one(self.digits())
    }
    fn zero_like(&self) -> Self {
        BigComplex::zero(self.digits())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Result<Self> {
        self.checked_div(other)
    }
    fn is_zero(&self) -> bool {
        BigComplex::is_zero(self)
    }
    fn powi(&self, e: i64) -> Result<Self> {
        BigComplex::powi(self, e)
    }
}

// Mixed orders are promoted; exceeding the order cap panics here.
impl Scalar for CyclotomicNumber {
    fn one_like(&self) -> Self {
        CyclotomicNumber::one(self.order())
    }
    fn zero_like(&self) -> Self {
        CyclotomicNumber::zero(self.order())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Result<Self> {
        self.checked_div(other)
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
    fn powi(&self, e: i64) -> Result<Self> {
        self.pow(e)
    }
}

/// (a; q)_n = Π_{j<n} (1 − a q^j).
pub fn pochhammer<S: Scalar>(a: &S, q: &S, n: usize) -> S {
    let one = a.one_like();
    let mut acc = one.clone();
    let mut aq = a.clone();
    for j in 0..n {
        acc = acc.mul(&one.sub(&aq));
        if j + 1 < n {
            aq = aq.mul(q);
        }
    }
    acc
}

/// (a; q)_{−n} = 1/Π_{j=1}^{n}(1 − a q^{−j}) = (−1)^n q^{n(n+1)/2} / (a^n (q/a; q)_n).
pub fn pochhammer_negative<S: Scalar>(a: &S, q: &S, n: usize) -> Result<S> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let qa = q.div(a)?;
    let den = a.powi(n as i64)?.mul(&pochhammer(&qa, q, n));
    let num = q.powi((n * (n + 1) / 2) as i64)?;
    let v = num.div(&den)?;
    Ok(if n % 2 == 1 { a.zero_like().sub(&v) } else { v })
}

/// (x, q/x; q)_{k′} = (1 − x^{k′})(1 − x^{−k′}) for q a primitive k′-th root of unity.
pub fn periodic_pochhammer_closed_form(x: &CyclotomicNumber, kprime: u32) -> Result<CyclotomicNumber> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let xk = x.pow(kprime as i64)?;
    let one = CyclotomicNumber::one(x.order());
    Ok((&one - &xk) * (&one - &xk.inv()?))
}

fn check_q(q: &BigComplex) -> Result<f64> {
    let lq = q.log10_abs();
    if lq >= 0.0 {
        return Err(Error::Domain("|q| must be < 1".into()));
    }
    Ok(lq)
}

/// (a; q)_∞ with a certified multiplicative tail bound.
pub fn pochhammer_infinite(a: &BigComplex, q: &BigComplex, digits: u32) -> Result<(BigComplex, TruncationReport)> {
    pochhammer_infinite_capped(a, q, digits, DEFAULT_BOUNDARY_GAP)
}

/// As [`pochhammer_infinite`], refusing |q| > 1 − `boundary_gap`.
pub fn pochhammer_infinite_capped(
    a: &BigComplex,
    q: &BigComplex,
    digits: u32,
    boundary_gap: f64,
) -> Result<(BigComplex, TruncationReport)> {
    let lq = check_q(q)?;
    let qabs = 10f64.powf(lq);
    if qabs > 1.0 - boundary_gap {
        return Err(Error::Domain(format!("|q| = {qabs} too close to 1 for a truncated product")));
    }
    let guard = guard_digits(digits);
    let wp = digits + guard;
    if a.is_zero() {
        return Ok((BigComplex::one(digits), TruncationReport { terms_used: 0, tail_bound: 0.0 }));
    }
    let la = a.log10_abs();
    let lgap = (1.0 - qabs).log10();
    let target = -((digits + guard) as f64);
    let half = 0.5f64.log10();
    let aw = a.with_digits(wp);
    let qw = q.with_digits(wp);
    let mut acc = BigComplex::one(wp);
    let mut term = aw;
    let mut n = 0usize;
    loop {
        let lt = la + n as f64 * lq;
        if lt < half {
            let bound = 2f64.log10() + lt - lgap;
            if bound < target {
                let report = TruncationReport { terms_used: n, tail_bound: 10f64.powf(bound) };
                return Ok((acc.with_digits(digits), report));
            }
        }
        let f = one_minus(&term);
        if f.is_zero() {
            return Ok((BigComplex::zero(digits), TruncationReport { terms_used: n + 1, tail_bound: 0.0 }));
        }
        if f.log10_abs() < -(digits as f64) {
            return Err(Error::NearSingular(format!("factor {n} of an infinite product has modulus below 1e-{digits}")));
        }
        acc *= &f;
        term *= &qw;
        n += 1;
        if n > MAX_TERMS {
            return Err(Error::PrecisionExhausted { digits, what: "infinite product term cap".into() });
        }
    }
}

/// j(x, q) = (x, q/x, q; q)_∞ as a truncated product.
pub fn jacobi_triple(x: &BigComplex, q: &BigComplex, digits: u32) -> Result<BigComplex> {
    if x.is_zero() {
        return Err(Error::Domain("j(x, q) needs x ≠ 0".into()));
    }
    check_q(q)?;
    let d = digits + 5;
    let (p1, _) = pochhammer_infinite(x, q, d)?;
    let qx = q.checked_div(x)?;
    let (p2, _) = pochhammer_infinite(&qx, q, d)?;
    let (p3, _) = pochhammer_infinite(q, q, d)?;
    Ok((&(&p1 * &p2) * &p3).with_digits(digits))
}

/// (q; q)_∞ as a truncated product.
pub fn euler_product(q: &BigComplex, digits: u32) -> Result<BigComplex> {
    Ok(pochhammer_infinite(q, q, digits)?.0)
}

/// Running sum of a series that tracks the largest term, for cancellation control.
pub(crate) struct Accumulator {
    pub sum: BigComplex,
    pub max_log: f64,
    small_run: usize,
    wp: u32,
}

impl Accumulator {
    pub fn new(wp: u32) -> Self {
        Accumulator { sum: BigComplex::zero(wp), max_log: f64::NEG_INFINITY, small_run: 0, wp }
    }

    /// Add a term; returns true once `run` consecutive terms were negligible
    /// relative to the largest term seen so far.
    pub fn push(&mut self, term: &BigComplex, run: usize) -> bool {
        let lt = term.log10_abs();
        if lt > self.max_log {
            self.max_log = lt;
        }
        self.sum += term;
        if lt < self.max_log.max(0.0) - self.wp as f64 - 2.0 {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= run
    }

}

/// One pass of a numeric series at a given working precision: value and the
/// log10 of its largest term.
pub(crate) type Pass<'a> = dyn Fn(u32) -> Result<(BigComplex, f64)> + 'a;

/// Evaluate a series to `digits` relative digits, raising working precision
/// until the result is stable.
///
/// Each pass reports the largest term; the precision for the next pass is at
/// least double the previous one and covers the observed cancellation. Two
/// successive passes must agree to `digits` digits. A sum that stays below the
/// working precision at the cap is returned as an absolute approximation.
pub(crate) fn stabilized(digits: u32, what: &str, pass: &Pass<'_>) -> Result<BigComplex> {
    let guard = guard_digits(digits);
    let mut wp = digits + guard;
    let mut prev: Option<BigComplex> = None;
    loop {
        let (v, max_log) = pass(wp)?;
        let vl = v.log10_abs();
        let loss = if vl == f64::NEG_INFINITY { f64::INFINITY } else { (max_log - vl).max(0.0) };
        let needed = digits as f64 + guard as f64 + loss;
        if let Some(p) = &prev {
            if v.agrees_with(p, digits) && (wp as f64) >= needed {
                return Ok(v.with_digits(digits));
            }
        }
        let at_cap = wp >= MAX_WORKING_DIGITS;
        if at_cap {
            if loss.is_infinite() || vl < max_log - wp as f64 + 1.0 {
                // Indistinguishable from zero at the largest precision.
                return Ok(v.with_digits(digits));
            }
            return Err(Error::PrecisionExhausted { digits: wp, what: what.into() });
        }
        let next = if needed.is_finite() { (needed.ceil() as u32 + guard).max(wp + wp / 4) } else { 2 * wp };
        let next = if prev.is_none() { next.max(2 * wp) } else { next };
        prev = Some(v);
        wp = next.min(MAX_WORKING_DIGITS);
    }
}

/// Σ_{n∈ℤ} (−1)^n q^{n(n−1)/2} x^n, which equals j(x, q).
pub fn theta_series(x: &BigComplex, q: &BigComplex, digits: u32) -> Result<BigComplex> {
    if x.is_zero() {
        return Err(Error::Domain("theta series needs x ≠ 0".into()));
    }
    check_q(q)?;
    stabilized(digits, "theta series", &|wp| theta_pass(x, q, wp))
}

fn theta_pass(x: &BigComplex, q: &BigComplex, wp: u32) -> Result<(BigComplex, f64)> {
    let xw = x.with_digits(wp);
    let qw = q.with_digits(wp);
    let xinv = xw.recip()?;
    let mut acc = Accumulator::new(wp);
    acc.push(&BigComplex::one(wp), 3);
    // n ≥ 1: T_{n+1} = −T_n · x q^n.
    let mut t = BigComplex::one(wp);
    let mut qn = BigComplex::one(wp);
    for n in 0.. {
        t = -(&(&t * &xw) * &qn);
        qn *= &qw;
        if acc.push(&t, 3) {
            break;
        }
        if n > MAX_TERMS {
            return Err(Error::PrecisionExhausted { digits: wp, what: "theta series term cap".into() });
        }
    }
    // n ≤ −1: T_{−(m+1)} = −T_{−m} · q^{m+1}/x.
    let mut t = BigComplex::one(wp);
    let mut qm = qw.clone();
    for m in 0.. {
        t = -(&(&t * &xinv) * &qm);
        qm *= &qw;
        if acc.push(&t, 3) {
            break;
        }
        if m > MAX_TERMS {
            return Err(Error::PrecisionExhausted { digits: wp, what: "theta series term cap".into() });
        }
    }
    let max_log = acc.max_log;
    Ok((acc.sum, max_log))
}

/// (q; q)_∞ by Euler's pentagonal number series.
pub fn euler_series(q: &BigComplex, digits: u32) -> Result<BigComplex> {
    let q3 = &(q * q) * q;
    theta_series(q, &q3, digits)
}

/// Σ_{n∈ℤ} (−z)^n q^{n(n−1)/2} / (1 − x z q^{n−1}), the numerator of m(x, q, z).
pub fn appell_lerch_sum(x: &BigComplex, q: &BigComplex, z: &BigComplex, digits: u32) -> Result<BigComplex> {
    if z.is_zero() {
        return Err(Error::Domain("Appell–Lerch sum needs z ≠ 0".into()));
    }
    check_q(q)?;
    stabilized(digits, "Appell–Lerch sum", &|wp| al_pass(x, q, z, wp, digits))
}

fn al_pass(x: &BigComplex, q: &BigComplex, z: &BigComplex, wp: u32, digits: u32) -> Result<(BigComplex, f64)> {
    let qw = q.with_digits(wp);
    let qinv = qw.recip()?;
    let mz = -z.with_digits(wp);
    let mzinv = mz.recip()?;
    let xz = &x.with_digits(wp) * &z.with_digits(wp);
    let sing = -(digits as f64) / 2.0;
    let check = |d: &BigComplex, n: i64| -> Result<()> {
        if d.log10_abs() < sing {
            return Err(Error::NearSingular(format!("Appell–Lerch denominator at n = {n}")));
        }
        Ok(())
    };
    let mut acc = Accumulator::new(wp);
    // n = 0 term: 1 / (1 − xz q^{−1}).
    let p0 = &xz * &qinv;
    let d0 = one_minus(&p0);
    check(&d0, 0)?;
    acc.push(&d0.recip()?, 3);
    // n ≥ 1: numerator N_{n+1} = N_n · (−z) q^n, denominator power P_{n+1} = P_n q.
    let mut num = BigComplex::one(wp);
    let mut qn = BigComplex::one(wp);
    let mut p = p0.clone();
    for n in 1i64.. {
        num = &(&num * &mz) * &qn;
        qn *= &qw;
        p *= &qw;
        let d = one_minus(&p);
        check(&d, n)?;
        if acc.push(&(&num / &d), 3) {
            break;
        }
        if n as usize > MAX_TERMS {
            return Err(Error::PrecisionExhausted { digits: wp, what: "Appell–Lerch term cap".into() });
        }
    }
    // n ≤ −1: N_{−(m+1)} = N_{−m} · q^{m+1}/(−z), P_{n−1} = P_n / q.
    let mut num = BigComplex::one(wp);
    let mut qm = qw.clone();
    let mut p = p0;
    for m in 0i64.. {
        num = &(&num * &mzinv) * &qm;
        qm *= &qw;
        p *= &qinv;
        let d = one_minus(&p);
        check(&d, -m - 1)?;
        if acc.push(&(&num / &d), 3) {
            break;
        }
        if m as usize > MAX_TERMS {
            return Err(Error::PrecisionExhausted { digits: wp, what: "Appell–Lerch term cap".into() });
        }
    }
    let max_log = acc.max_log;
    Ok((acc.sum, max_log))
}

/// m(x, q, z) = (1/j(z, q)) Σ_{n∈ℤ} (−z)^n q^{n(n−1)/2} / (1 − x z q^{n−1}).
pub fn appell_lerch(x: &BigComplex, q: &BigComplex, z: &BigComplex, digits: u32) -> Result<BigComplex> {
    let g = guard_digits(digits);
    let jz = jacobi_triple(z, q, digits + g)?;
    if jz.log10_abs() < -(digits as f64) / 2.0 {
        return Err(Error::Domain("j(z, q) vanishes to working precision".into()));
    }
    let s = appell_lerch_sum(x, q, z, digits + g)?;
    Ok((&s / &jz).with_digits(digits))
}
