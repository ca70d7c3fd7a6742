//! Exact arithmetic: rationals, integer polynomials and cyclotomic fields ℚ(ζ_n).

mod cyclotomic;
mod poly;

use std::sync::atomic::{AtomicU32, Ordering};

pub use cyclotomic::{field_arithmetic, root_of_unity, CyclotomicNumber, FieldOp};
pub use poly::{cyclotomic_polynomial, IntPolynomial};
pub use rug::Rational;

static ORDER_CAP: AtomicU32 = AtomicU32::new(600);

/// Largest cyclotomic order any operation may create.
pub fn order_cap() -> u32 {
    ORDER_CAP.load(Ordering::Relaxed)
}

pub fn set_order_cap(cap: u32) {
    ORDER_CAP.store(cap.max(1), Ordering::Relaxed);
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Fractional part in [0, 1).
pub fn frac(r: &Rational) -> Rational {
    r.clone().rem_floor()
}
