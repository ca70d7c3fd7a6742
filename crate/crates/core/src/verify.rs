//! Numeric and exact certification: radial convergence, identity residuals,
//! the fifth-order corollary and the sixth-root conjecture.

#![allow(non_snake_case)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::Rational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{gcd, root_of_unity, CyclotomicNumber};
use crate::mocktheta::{
    affine_transport, g3_eval, g_tilde_eval, g_tilde_tail_eval, kang_rhs, lost_notebook_sides, mtc73_rhs,
    tailid2_rhs, tailid_rhs, TransportKind,
};
use crate::numeric::{guard_digits, BigComplex};
use crate::qseries::{appell_lerch, euler_product, jacobi_triple, pochhammer, theta_series};
use crate::radial::{
    companion_value, cusp_data, lim0_quotient, radial_limit, CaseLabel, ModularCompanion, RadialPoint,
    SpecializationParams,
};

/// Largest working precision the radial harness will try.
pub const MAX_RADIAL_DIGITS: u32 = 3200;

/// Decreasing t values along the ray q = ζ_k^h e^{−t}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialSchedule {
    pub t_values: Vec<f64>,
    pub digits: u32,
}

impl RadialSchedule {
    /// t_i = t_start · 2^{−i}, i = 0..steps.
    pub fn geometric(t_start: f64, steps: usize, digits: u32) -> Result<Self> {
        if !(t_start > 0.0) || steps == 0 {
            return Err(Error::InvalidParams("schedule needs t_start > 0 and at least one step".into()));
        }
        let s = RadialSchedule { t_values: (0..steps).map(|i| t_start / f64::powi(2.0, i as i32)).collect(), digits };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.t_values.is_empty() || self.t_values.iter().any(|t| !(*t > 0.0)) {
            return Err(Error::InvalidParams("t values must be positive".into()));
        }
        if self.t_values.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidParams("t values must be strictly decreasing".into()));
        }
        Ok(())
    }
}

impl Default for RadialSchedule {
    fn default() -> Self {
        RadialSchedule::geometric(0.2, 9, 50).unwrap()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RadialPointReport {
    pub t: f64,
    pub residual: f64,
    /// Precision the point was finally evaluated at.
    pub digits: u32,
    /// log10 |F|, the size of the cancellation against the companion.
    pub log10_f: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub params: SpecializationParams,
    pub h: u32,
    pub k: u32,
    pub label: CaseLabel,
    pub points: Vec<RadialPointReport>,
    /// Last four residuals strictly decreasing.
    pub monotone_tail: bool,
    pub final_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl ConvergenceReport {
    pub fn residuals(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|p| (p.t, p.residual)).collect()
    }
}

fn monotone_tail(res: &[f64]) -> bool {
    let tail = &res[res.len().saturating_sub(4)..];
    tail.windows(2).all(|w| w[1] < w[0])
}

/// |F − M − Q| along the schedule, F = g₃(ζ_b^a q^A, q^B).
pub fn radial_check(
    params: &SpecializationParams,
    h: i64,
    k: u32,
    schedule: &RadialSchedule,
    tolerance: f64,
) -> Result<ConvergenceReport> {
    radial_check_with(params, h, k, schedule, tolerance, None)
}

/// [`radial_check`] with an explicit companion in place of the one the
/// classification selects.
pub fn radial_check_with(
    params: &SpecializationParams,
    h: i64,
    k: u32,
    schedule: &RadialSchedule,
    tolerance: f64,
    companion: Option<ModularCompanion>,
) -> Result<ConvergenceReport> {
    schedule.validate()?;
    let res = radial_limit(params, h, k, schedule.digits)?;
    let Some(exact) = res.exact.clone() else {
        let trace = res.reduction_trace.map(|t| t.notes).unwrap_or_default();
        return Err(Error::Unsupported { label: res.label.name().into(), trace });
    };
    let companion = companion.unwrap_or(res.companion.clone());
    let points = schedule
        .t_values
        .par_iter()
        .map(|&t| radial_point(params, &res.cusp.h, &res.cusp.k, &exact, &companion, t, schedule.digits))
        .collect::<Result<Vec<_>>>()?;
    let residuals: Vec<f64> = points.iter().map(|p| p.residual).collect();
    let mono = monotone_tail(&residuals);
    let final_residual = *residuals.last().unwrap();
    Ok(ConvergenceReport {
        params: *params,
        h: res.cusp.h,
        k: res.cusp.k,
        label: res.label,
        points,
        monotone_tail: mono,
        final_residual,
        tolerance,
        passed: mono && final_residual < tolerance,
    })
}

fn radial_point(
    params: &SpecializationParams,
    h: &u32,
    k: &u32,
    exact: &CyclotomicNumber,
    companion: &ModularCompanion,
    t: f64,
    digits: u32,
) -> Result<RadialPointReport> {
    let mut digits = digits;
    loop {
        match radial_point_at(params, *h, *k, exact, companion, t, digits) {
            Ok(r) => return Ok(r),
            Err(Error::NearSingular(_)) if digits < MAX_RADIAL_DIGITS => digits *= 2,
            Err(Error::NearSingular(what)) => {
                return Err(Error::PrecisionExhausted { digits, what });
            }
            Err(e) => return Err(e),
        }
    }
}

fn radial_point_at(
    params: &SpecializationParams,
    h: u32,
    k: u32,
    exact: &CyclotomicNumber,
    companion: &ModularCompanion,
    t: f64,
    digits: u32,
) -> Result<RadialPointReport> {
    // A cheap pass sizes F, so that the cancellation F − M keeps `digits`.
    let probe = RadialPoint::new(h, k, t, 30);
    let (x0, p0) = probe.specialization(params);
    let f0 = g3_eval(&x0, &p0, 20)?;
    let size = f0.log10_abs().max(0.0).ceil() as u32;
    let wd = digits + size;
    let pt = RadialPoint::new(h, k, t, wd + guard_digits(wd));
    let (x, p) = pt.specialization(params);
    let f = g3_eval(&x, &p, wd)?;
    let m = companion_value(companion, t, wd)?;
    let q = exact.embed_complex(wd);
    let r = &(&f - &m) - &q;
    Ok(RadialPointReport { t, residual: r.abs_f64(), digits: wd, log10_f: f.log10_abs() })
}

/// Identities checked by [`identity_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IdentityId {
    Kang,
    Shift,
    P1,
    Tailid,
    Tailid2,
    LostNotebook,
    JtpSeries,
    L2,
    Feq,
    Inv,
    Mtc73,
    Lim0,
}

impl IdentityId {
    pub const ALL: [IdentityId; 12] = [
        IdentityId::Kang,
        IdentityId::Shift,
        IdentityId::P1,
        IdentityId::Tailid,
        IdentityId::Tailid2,
        IdentityId::LostNotebook,
        IdentityId::JtpSeries,
        IdentityId::L2,
        IdentityId::Feq,
        IdentityId::Inv,
        IdentityId::Mtc73,
        IdentityId::Lim0,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityId::Kang => "kang",
            IdentityId::Shift => "shift",
            IdentityId::P1 => "p1",
            IdentityId::Tailid => "tailid",
            IdentityId::Tailid2 => "tailid2",
            IdentityId::LostNotebook => "lost_notebook",
            IdentityId::JtpSeries => "jtp_series",
            IdentityId::L2 => "l2",
            IdentityId::Feq => "feq",
            IdentityId::Inv => "inv",
            IdentityId::Mtc73 => "mtc73",
            IdentityId::Lim0 => "lim0",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        IdentityId::ALL.iter().copied().find(|i| i.name() == s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity_id: IdentityId,
    pub sample_points: usize,
    pub digits: u32,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Description of the sample with the largest residual.
    pub worst_sample: String,
}

/// Default residual tolerance at a given precision.
pub fn identity_tolerance(id: IdentityId, digits: u32) -> f64 {
    match id {
        IdentityId::Lim0 => 1e-2,
        _ => 10f64.powi(-(digits as i32 - 12)),
    }
}

/// A complex sample in f64, converted exactly to BigComplex.
#[derive(Clone, Copy, Debug)]
struct C(f64, f64);

impl C {
    fn polar(r: f64, turns: f64) -> C {
        let a = std::f64::consts::TAU * turns;
        C(r * a.cos(), r * a.sin())
    }
    fn abs(self) -> f64 {
        self.0.hypot(self.1)
    }
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: C) -> C {
        let d = o.0 * o.0 + o.1 * o.1;
        C((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
    fn big(self, digits: u32) -> BigComplex {
        BigComplex::from_f64(self.0, self.1, digits)
    }
}

/// Relative distance from z to the nearest q^n, n ∈ ℤ.
fn gap_to_q_powers(z: C, q: C) -> f64 {
    let lq = q.abs().ln();
    let n0 = (z.abs().ln() / lq).round() as i32;
    let mut best = f64::INFINITY;
    for n in n0 - 2..=n0 + 2 {
        let mut qn = C(1.0, 0.0);
        let base = if n >= 0 { q } else { C(1.0, 0.0).div(q) };
        for _ in 0..n.unsigned_abs() {
            qn = qn.mul(base);
        }
        let d = C(z.0 - qn.0, z.1 - qn.1).abs() / qn.abs();
        best = best.min(d);
    }
    best
}

const GAP: f64 = 1e-2;

struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    fn new(seed: u64, id: IdentityId, index: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((id as u64 + 1) << 40));
        rng.set_stream(index as u64);
        Sampler { rng }
    }

    fn q(&mut self) -> C {
        C::polar(self.rng.gen_range(0.05..0.8), self.rng.gen_range(0.0..1.0))
    }

    /// A point of modulus in [lo, hi] at relative distance ≥ GAP from q^ℤ
    /// for each of the listed multiples.
    fn away(&mut self, q: C, lo: f64, hi: f64, scales: &[C]) -> C {
        loop {
            let z = C::polar(self.rng.gen_range(lo..hi), self.rng.gen_range(0.0..1.0));
            if scales.iter().all(|s| gap_to_q_powers(z.mul(*s), q) > GAP) {
                return z;
            }
        }
    }
}

fn rel_residual(lhs: &BigComplex, rhs: &BigComplex) -> f64 {
    let d = (lhs - rhs).abs_f64();
    d / rhs.abs_f64().max(1.0)
}

/// Sample admissible points, evaluate both sides of the identity and report
/// the largest relative residual |lhs − rhs| / max(1, |rhs|).
pub fn identity_check(id: IdentityId, samples: usize, seed: u64, digits: u32) -> Result<IdentityReport> {
    if samples == 0 {
        return Err(Error::InvalidParams("samples must be at least 1".into()));
    }
    let tolerance = identity_tolerance(id, digits);
    let results = if id == IdentityId::Lim0 {
        lim0_samples(samples, seed)?
    } else {
        (0..samples)
            .into_par_iter()
            .map(|i| identity_sample(id, &mut Sampler::new(seed, id, i), i, digits))
            .collect::<Result<Vec<_>>>()?
    };
    let (worst_sample, max_residual) = results
        .into_iter()
        .fold((String::new(), 0.0f64), |acc, (s, r)| if r > acc.1 || acc.0.is_empty() { (s, r) } else { acc });
    Ok(IdentityReport {
        identity_id: id,
        sample_points: samples,
        digits,
        max_residual,
        tolerance,
        passed: max_residual < tolerance,
        worst_sample,
    })
}

fn identity_sample(id: IdentityId, s: &mut Sampler, index: usize, digits: u32) -> Result<(String, f64)> {
    let one = C(1.0, 0.0);
    let d = digits + guard_digits(digits);
    let q = s.q();
    let qb = q.big(d);
    let (desc, lhs, rhs) = match id {
        IdentityId::Kang => {
            let w = C::polar(1.0, 1.0 / 3.0);
            let x = s.away(q, 0.3, 1.5, &[one, w, w.mul(w)]);
            let xb = x.big(d);
            let wb = BigComplex::cis_turns(&Rational::from((1, 3)), d);
            let mut lhs = g3_eval(&xb, &qb, d)?;
            lhs += &g3_eval(&(&wb * &xb), &qb, d)?;
            lhs += &g3_eval(&(&(&wb * &wb) * &xb), &qb, d)?;
            (format!("x={x:?} q={q:?}"), lhs, kang_rhs(&xb, &qb, d)?)
        }
        IdentityId::Shift => {
            let x = s.away(q, 0.3, 1.5, &[one]);
            let z = s.away(q, 0.3, 1.5, &[one, x]);
            let w = loop {
                let w = s.away(q, 0.3, 1.5, &[one, x]);
                if gap_to_q_powers(z.div(w), q) > GAP && gap_to_q_powers(x.mul(z).mul(w), q) > GAP {
                    break w;
                }
            };
            let (xb, zb, wb) = (x.big(d), z.big(d), w.big(d));
            let lhs = &appell_lerch(&xb, &qb, &zb, d)? - &appell_lerch(&xb, &qb, &wb, d)?;
            let e3 = euler_product(&qb, d)?.powi(3)?;
            let num = &(&(&wb * &e3) * &jacobi_triple(&(&zb / &wb), &qb, d)?)
                * &jacobi_triple(&(&(&xb * &zb) * &wb), &qb, d)?;
            let den = &(&jacobi_triple(&zb, &qb, d)? * &jacobi_triple(&wb, &qb, d)?)
                * &(&jacobi_triple(&(&xb * &zb), &qb, d)? * &jacobi_triple(&(&xb * &wb), &qb, d)?);
            (format!("x={x:?} z={z:?} w={w:?} q={q:?}"), lhs, &num / &den)
        }
        IdentityId::P1 => {
            let x = s.away(q, 0.3, 1.5, &[one]);
            let xb = x.big(d);
            let lhs = &g_tilde_eval(&xb, &qb, d)? + &g_tilde_tail_eval(&xb, &qb, d)?;
            let j = jacobi_triple(&xb, &qb, d)?;
            let e = euler_product(&qb, d)?;
            let m = appell_lerch(&xb.powi(-2)?, &qb, &xb, d)?;
            (format!("x={x:?} q={q:?}"), lhs, -(&(&j / &(&xb * &e)) * &m))
        }
        IdentityId::Tailid => {
            let x = s.away(q, 0.3, 1.5, &[one]);
            let z = s.away(q, 0.3, 1.5, &[one, C(1.0, 0.0).div(x.mul(x)), C(1.0, 0.0).div(x)]);
            let (xb, zb) = (x.big(d), z.big(d));
            (format!("x={x:?} z={z:?} q={q:?}"), g3_eval(&xb, &qb, d)?, tailid_rhs(&xb, &qb, &zb, d)?)
        }
        IdentityId::Tailid2 => {
            let sign = if s.rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let r = q.abs().sqrt();
            let a = q.1.atan2(q.0) / 2.0;
            let sq = C(sign * r * a.cos(), sign * r * a.sin());
            let x = s.away(q, 0.3, 1.5, &[one, sq]);
            let xb = x.big(d);
            let sb = qb.sqrt().mul_i64(sign as i64);
            (format!("x={x:?} q={q:?} branch={sign}"), g3_eval(&xb, &qb, d)?, tailid2_rhs(&xb, &qb, &sb, d)?)
        }
        IdentityId::LostNotebook => {
            let a = s.away(q, 0.5, 2.0, &[C(-1.0, 0.0)]);
            let b = s.away(q, 0.5, 2.0, &[C(-1.0, 0.0)]);
            let (l, r) = lost_notebook_sides(&a.big(d), &b.big(d), &qb, d)?;
            (format!("a={a:?} b={b:?} q={q:?}"), l, r)
        }
        IdentityId::JtpSeries => {
            if index == 0 {
                // x = q: both sides vanish.
                (format!("x=q q={q:?}"), theta_series(&qb, &qb, d)?, jacobi_triple(&qb, &qb, d)?)
            } else {
                let x = s.away(q, 0.3, 1.5, &[one]);
                let xb = x.big(d);
                (format!("x={x:?} q={q:?}"), theta_series(&xb, &qb, d)?, jacobi_triple(&xb, &qb, d)?)
            }
        }
        IdentityId::L2 => {
            let x = s.away(q, 0.3, 1.5, &[one]);
            let xb = x.big(d);
            let xinv = xb.recip()?;
            let rhs = -(&xinv * &(&BigComplex::one(d) + &(&xinv * &g_tilde_eval(&xb, &qb, d)?)));
            (format!("x={x:?} q={q:?}"), g3_eval(&xb, &qb, d)?, rhs)
        }
        IdentityId::Feq => {
            let x = s.away(q, 0.3, 1.5, &[one]);
            let xb = x.big(d);
            let lhs = g3_eval(&(&xb * &qb), &qb, d)?;
            let rhs = -(&(&(&xb.powi(3)? * &g3_eval(&xb, &qb, d)?) + &(&xb * &xb)) + &xb);
            (format!("x={x:?} q={q:?}"), lhs, rhs)
        }
        IdentityId::Inv => {
            let x = s.away(q, 0.3, 1.5, &[one]);
            let xb = x.big(d);
            let (rel, nx) = affine_transport(&xb, &qb, TransportKind::Invert)?;
            (format!("x={x:?} q={q:?}"), g3_eval(&xb, &qb, d)?, rel.apply(&g3_eval(&nx, &qb, d)?))
        }
        IdentityId::Mtc73 => {
            // |x⁶| ∈ [0.05, 0.8].
            let r = s.rng.gen_range(0.05f64..0.8).powf(1.0 / 6.0);
            let x = C::polar(r, s.rng.gen_range(0.0..1.0));
            let xb = x.big(d);
            let lhs = g3_eval(&xb, &xb.powi(6)?, d)?;
            (format!("x={x:?}"), lhs, mtc73_rhs(&xb, d)?)
        }
        IdentityId::Lim0 => unreachable!("lim0 samples radial tuples"),
    };
    Ok((desc, rel_residual(&lhs, &rhs)))
}

/// All (params, h, k) with b ≤ b_max, A ≤ A_max, 1 ≤ B ≤ B_max,
/// k ≤ k_max and the given label, in a fixed order.
pub fn tuples_with_label(
    label: CaseLabel,
    b_max: u32,
    A_max: u32,
    B_max: u32,
    k_max: u32,
) -> Vec<(SpecializationParams, u32, u32)> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        for b in 1..=b_max {
            for a in 0..b {
                for A in 0..=A_max {
                    for B in 1..=B_max {
                        let Ok(p) = SpecializationParams::new(a, b, A, B) else { continue };
                        for h in (1..=k).filter(|h| gcd(*h as u64, k as u64) == 1) {
                            if cusp_data(&p, h as i64, k).map(|c| c.label == label).unwrap_or(false) {
                                out.push((p, h, k));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Pole-case tuples with b ≤ 6, A ≤ 3, B ≤ 4, k ≤ 12.
pub fn pole_tuples() -> Vec<(SpecializationParams, u32, u32)> {
    tuples_with_label(CaseLabel::Pole, 6, 3, 4, 12)
}

/// The Appell–Lerch quotient of a pole cusp along the default schedule.
pub fn lim0_decay(params: &SpecializationParams, h: u32, k: u32, schedule: &RadialSchedule) -> Result<Vec<(f64, f64)>> {
    let cusp = cusp_data(params, h as i64, k)?;
    schedule
        .t_values
        .par_iter()
        .map(|&t| Ok((t, lim0_quotient(params, &cusp, t, 30)?.abs_f64())))
        .collect()
}

fn lim0_samples(samples: usize, seed: u64) -> Result<Vec<(String, f64)>> {
    let all = pole_tuples();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((IdentityId::Lim0 as u64 + 1) << 40));
    let picks: Vec<_> = (0..samples).map(|_| all[rng.gen_range(0..all.len())]).collect();
    let sched = RadialSchedule::default();
    picks
        .par_iter()
        .map(|(p, h, k)| {
            let vals = lim0_decay(p, *h, *k, &sched)?;
            let v: Vec<f64> = vals.iter().map(|x| x.1).collect();
            let last = *v.last().unwrap();
            // A tail that fails to decrease counts as a failure.
            let r = if monotone_tail(&v) || last == 0.0 { last } else { f64::INFINITY };
            Ok((format!("{p} at {h}/{k}"), r))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryItem {
    pub k: u32,
    pub h: u32,
    pub passed: bool,
    pub lhs: CyclotomicNumber,
    pub rhs: CyclotomicNumber,
}

/// Both sides of the fifth-order corollary at ζ = ζ_k^h:
/// 2 − 2ζ⁻² Σ_{n=1}^{k/2} (ζ⁸; ζ¹⁰)_{n−1} (ζ²; ζ¹⁰)_n ζ^{10n}
/// and −2 Σ_{n=0}^{k−1} ζ^{(n+1)(n+2)/2} (−ζ; ζ)_n.
pub fn corollary_sides(h: u32, k: u32) -> Result<(CyclotomicNumber, CyclotomicNumber)> {
    let z = root_of_unity(h as i64, k);
    let two = CyclotomicNumber::from_i64(2, k);
    let z10 = z.pow(10)?;
    let mut s = CyclotomicNumber::zero(k);
    for n in 1..=(k / 2) as usize {
        let t = &pochhammer(&z.pow(8)?, &z10, n - 1) * &pochhammer(&z.pow(2)?, &z10, n);
        s = s + t * z10.pow(n as i64)?;
    }
    let lhs = &two - &(&(&two * &z.pow(-2)?) * &s);
    let mut r = CyclotomicNumber::zero(k);
    let mz = -&z;
    for n in 0..k as usize {
        let e = ((n + 1) * (n + 2) / 2) as i64;
        r = r + z.pow(e)? * pochhammer(&mz, &z, n);
    }
    let rhs = -(&two * &r);
    Ok((lhs, rhs))
}

/// Exact check of the corollary for all k ≤ k_max with (k, 10) = 2 and every
/// primitive k-th root.
pub fn corollary_check(k_max: u32) -> Result<Vec<CorollaryItem>> {
    if k_max < 2 {
        return Err(Error::InvalidParams("k_max must be at least 2".into()));
    }
    let pairs: Vec<(u32, u32)> = (2..=k_max)
        .filter(|k| gcd(*k as u64, 10) == 2)
        .flat_map(|k| (1..=k).filter(move |h| gcd(*h as u64, k as u64) == 1).map(move |h| (k, h)))
        .collect();
    pairs
        .par_iter()
        .map(|&(k, h)| {
            let (lhs, rhs) = corollary_sides(h, k)?;
            Ok(CorollaryItem { k, h, passed: lhs == rhs, lhs, rhs })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum ConjectureStatus {
    Equal,
    /// Both hypotheses hold and the sides differ.
    Counterexample,
    HypothesisViolated(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureItem {
    pub k: u32,
    /// q = ζ_{3k}^h.
    pub h: u32,
    /// x = q^m when enumerated from ⟨q⟩.
    pub m: Option<u32>,
    pub x: CyclotomicNumber,
    pub status: ConjectureStatus,
    pub lhs: Option<CyclotomicNumber>,
    pub rhs: Option<CyclotomicNumber>,
}

/// Hypotheses of the conjecture for roots of unity x, q with q of order 3k:
/// (x, q/x; q)_∞ = 0 and x^{3k} not a primitive sixth root of unity.
pub fn conjecture_hypotheses(x: &CyclotomicNumber, q: &CyclotomicNumber, k: u32) -> Result<()> {
    let n = 3 * k as usize;
    // The products are 3k-periodic, so they vanish iff a factor in one period does.
    let qx = q.checked_div(x)?;
    if !(pochhammer(x, q, n) * pochhammer(&qx, q, n)).is_zero() {
        return Err(Error::HypothesisViolated("(x, q/x; q)_inf does not vanish".into()));
    }
    let y = x.pow(3 * k as i64)?;
    if !y.pow(6)?.is_one() {
        return Err(Error::HypothesisViolated("x^{3k} is not a root of unity of order dividing 6".into()));
    }
    if !y.pow(2)?.is_one() && !y.pow(3)?.is_one() {
        return Err(Error::HypothesisViolated("x^{3k} is a primitive sixth root of unity".into()));
    }
    Ok(())
}

/// The two finite sums of the conjecture.
pub fn conjecture_sides(x: &CyclotomicNumber, q: &CyclotomicNumber, k: u32) -> Result<(CyclotomicNumber, CyclotomicNumber)> {
    let n = x.order().max(q.order());
    let x = x.promote(crate::exact::lcm(x.order() as u64, n as u64) as u32)?;
    let q = q.promote(x.order())?;
    let n = x.order();
    let one = CyclotomicNumber::one(n);
    let k = k as i64;
    let x3k = x.pow(3 * k)?;
    let pref = one.checked_div(&(&(&one - &x3k) + &x3k.pow(2)?))?;
    let qk = q.pow(k)?;
    let q2k = q.pow(2 * k)?;
    let inner = &(&q * &(&one + &(&x3k * &qk))) + &(&x * &(&one + &(&x3k * &q2k)));
    let mut s = CyclotomicNumber::zero(n);
    for j in 1..=k {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let t = &(&x.pow(3 * j - 2)? * &q.pow(-((3 * j + 1) * j / 2))?) * &inner;
        s = s + t * CyclotomicNumber::from_i64(sign, n);
    }
    let lhs = &pref * &s;
    let xinv = x.inv()?;
    let qx = &q * &xinv;
    let mut r = CyclotomicNumber::zero(n);
    for j in 1..=(3 * k) as usize {
        r = r + &(&pochhammer(&qx, &q, j - 1) * &pochhammer(&x, &q, j)) * &q.pow(j as i64)?;
    }
    let rhs = &(-&xinv) + &(&(&xinv * &xinv) * &r);
    Ok((lhs, rhs))
}

/// Check the conjecture at one (x, q), reporting the hypothesis status.
pub fn conjecture_item(k: u32, h: u32, m: Option<u32>, x: &CyclotomicNumber) -> Result<ConjectureItem> {
    let q = root_of_unity(h as i64, 3 * k);
    let mut item = ConjectureItem { k, h, m, x: x.clone(), status: ConjectureStatus::Equal, lhs: None, rhs: None };
    let x = x.promote(crate::exact::lcm(x.order() as u64, 3 * k as u64) as u32)?;
    if let Err(Error::HypothesisViolated(why)) = conjecture_hypotheses(&x, &q.promote(x.order())?, k) {
        item.status = ConjectureStatus::HypothesisViolated(why);
        return Ok(item);
    }
    let (lhs, rhs) = conjecture_sides(&x, &q, k)?;
    if lhs != rhs {
        item.status = ConjectureStatus::Counterexample;
    }
    item.lhs = Some(lhs);
    item.rhs = Some(rhs);
    Ok(item)
}

/// Every k ≤ k_max, q primitive of order 3k and x = q^m, m = 0..3k−1.
pub fn conjecture_check(k_max: u32) -> Result<Vec<ConjectureItem>> {
    if k_max < 1 {
        return Err(Error::InvalidParams("k_max must be at least 1".into()));
    }
    let triples: Vec<(u32, u32, u32)> = (1..=k_max)
        .flat_map(|k| {
            (1..=3 * k)
                .filter(move |h| gcd(*h as u64, 3 * k as u64) == 1)
                .flat_map(move |h| (0..3 * k).map(move |m| (k, h, m)))
        })
        .collect();
    triples
        .par_iter()
        .map(|&(k, h, m)| conjecture_item(k, h, Some(m), &root_of_unity((h * m) as i64, 3 * k)))
        .collect()
}
