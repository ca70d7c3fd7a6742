//! Integer polynomials and cyclotomic polynomials.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Integer;

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::new(Vec::new());
        }
        let mut out = vec![Integer::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        let d = divisor.degree().expect("division by the zero polynomial");
        assert!(divisor.coeffs[d] == 1, "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntPolynomial::new(Vec::new()), self.clone());
        }
        let mut quot = vec![Integer::new(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c == 0 {
                continue;
            }
            for j in 0..d {
                rem[i - d + j] -= &c * &divisor.coeffs[j];
            }
            quot[i - d] = c;
        }
        rem.truncate(d);
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    /// Evaluate at an integer point.
    pub fn eval(&self, x: &Integer) -> Integer {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let mag = Integer::from(c.abs_ref());
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
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<IntPolynomial>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<IntPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Φ_n, obtained by dividing x^n − 1 by Φ_d for every proper divisor d of n.
pub fn cyclotomic_polynomial(n: u32) -> Arc<IntPolynomial> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut num = vec![Integer::new(); n as usize + 1];
    num[0] = Integer::from(-1);
    num[n as usize] = Integer::from(1);
    let mut poly = IntPolynomial::new(num);
    for d in super::divisors(n) {
        if d == n {
            continue;
        }
        let (q, r) = poly.div_rem_monic(&cyclotomic_polynomial(d));
        assert!(r.is_zero(), "x^{n} - 1 not divisible by Phi_{d}");
        poly = q;
    }
    let poly = Arc::new(poly);
    cache().lock().unwrap().insert(n, Arc::clone(&poly));
    poly
}
