//! Cusp classification and radial limits of g₃(ζ_b^a q^A, q^B).
//!
//! At the cusp q = ζ_k^h the specialization has x₀ = ζ_b^a ζ_k^{hA} and
//! q₀ = ζ_k^{hB}, a primitive k′-th root of unity with k′ = k/(k,B). The
//! fractional invariant μ = {k′(a/b + Ah/k)} decides the case:
//!
//! * μ = 0: some summands have poles; subtract the pole companion and sum a
//!   finite tail.
//! * μ ∈ (1/6, 5/6): the series converges absolutely at the cusp.
//! * μ ∈ {1/6, 5/6}: the edge case, reduced by the functional equation to
//!   x₀ = ζ_{6k′}.
//! * otherwise, if 3 ∤ k′: Kang's identity moves the problem to the two
//!   convergent shifts ζ₃^ℓ x₀.

#![allow(non_snake_case)]

use std::fmt;

use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{frac, gcd, lcm, order_cap, root_of_unity, CyclotomicNumber};
use crate::mocktheta::{affine_transport, mtc73_eta_partial_exact, tailid2_bilateral, AffineRelation, TransportKind};
use crate::numeric::{bits_for, guard_digits, BigComplex};
use crate::qseries::{euler_series, periodic_pochhammer_closed_form, pochhammer, theta_series};

/// The tuple (a, b, A, B) of g₃(ζ_b^a q^A, q^B).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpecializationParams {
    pub a: u32,
    pub b: u32,
    pub A: u32,
    pub B: u32,
}

impl SpecializationParams {
    pub fn new(a: u32, b: u32, A: u32, B: u32) -> Result<Self> {
        let p = SpecializationParams { a, b, A, B };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.b == 0 || self.B == 0 {
            return Err(Error::InvalidParams("b and B must be positive".into()));
        }
        if self.a >= self.b || gcd(self.a as u64, self.b as u64) != 1 {
            return Err(Error::InvalidParams(format!("need 0 <= a < b with gcd(a, b) = 1, got a = {}, b = {}", self.a, self.b)));
        }
        if self.b == 1 && self.A.is_multiple_of(self.B) {
            return Err(Error::InvalidParams("B must not divide A when b = 1".into()));
        }
        Ok(())
    }

    /// a/b + A h/k as an element of ℚ/ℤ: the angle of x₀ in turns.
    pub fn x_turns(&self, h: u32, k: u32) -> Rational {
        frac(&(Rational::from((self.a, self.b)) + Rational::from((self.A as u64 * h as u64, k as u64))))
    }
}

impl fmt::Display for SpecializationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, A={}, B={})", self.a, self.b, self.A, self.B)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseLabel {
    Pole,
    Convergent,
    KangShift,
    EdgeSixthClosed,
    EdgeSixthUnsupported,
    DivergentThreeUnsupported,
}

impl CaseLabel {
    pub fn is_supported(&self) -> bool {
        !matches!(self, CaseLabel::EdgeSixthUnsupported | CaseLabel::DivergentThreeUnsupported)
    }

    pub fn name(&self) -> &'static str {
        match self {
            CaseLabel::Pole => "Pole",
            CaseLabel::Convergent => "Convergent",
            CaseLabel::KangShift => "KangShift",
            CaseLabel::EdgeSixthClosed => "EdgeSixthClosed",
            CaseLabel::EdgeSixthUnsupported => "EdgeSixthUnsupported",
            CaseLabel::DivergentThreeUnsupported => "DivergentThreeUnsupported",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Reduced cusp h/k with its period data and case label.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspData {
    pub h: u32,
    pub k: u32,
    pub kprime: u32,
    pub Bprime: u32,
    /// μ = {k′(a/b + Ah/k)}.
    pub mu: Rational,
    /// Pole-set membership by the divisibility definition:
    /// b | k and (k, B) | (ak/b + Ah).
    pub in_q: bool,
    pub label: CaseLabel,
}

/// Normalize h to 0 < h ≤ k.
pub fn normalize_cusp(h: i64, k: u32) -> Result<(u32, u32)> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be positive".into()));
    }
    let hn = h.rem_euclid(k as i64) as u32;
    let hn = if hn == 0 { k } else { hn };
    if gcd(hn as u64, k as u64) != 1 {
        return Err(Error::InvalidParams(format!("gcd(h, k) must be 1, got h = {h}, k = {k}")));
    }
    Ok((hn, k))
}

pub fn cusp_data(params: &SpecializationParams, h: i64, k: u32) -> Result<CuspData> {
    params.validate()?;
    let (h, k) = normalize_cusp(h, k)?;
    let g = gcd(k as u64, params.B as u64) as u32;
    let kprime = k / g;
    let Bprime = params.B / g;
    let mu = frac(&(params.x_turns(h, k) * kprime));
    let in_q = params_in_q(params, h, k);
    if in_q != (mu == 0) {
        return Err(Error::Domain(format!("pole tests disagree for {params} at {h}/{k}")));
    }
    let mut cusp = CuspData { h, k, kprime, Bprime, mu, in_q, label: CaseLabel::Pole };
    cusp.label = classify(params, &cusp);
    Ok(cusp)
}

/// b | k and (k, B) | (ak/b + Ah).
pub fn params_in_q(params: &SpecializationParams, h: u32, k: u32) -> bool {
    if !k.is_multiple_of(params.b) {
        return false;
    }
    let g = gcd(k as u64, params.B as u64);
    let v = params.a as u64 * (k / params.b) as u64 + params.A as u64 * h as u64;
    v.is_multiple_of(g)
}

pub fn classify(_params: &SpecializationParams, cusp: &CuspData) -> CaseLabel {
    let sixth = Rational::from((1, 6));
    let five_sixths = Rational::from((5, 6));
    if cusp.mu == 0 {
        CaseLabel::Pole
    } else if cusp.mu > sixth && cusp.mu < five_sixths {
        CaseLabel::Convergent
    } else if cusp.mu == sixth || cusp.mu == five_sixths {
        // q₀ = ζ_{k′}^{hB′}; the reduction only moves x, so this test reads
        // the same before and after it.
        if cusp.kprime == 1 || (cusp.h as u64 * cusp.Bprime as u64) % cusp.kprime as u64 == 1 {
            CaseLabel::EdgeSixthClosed
        } else {
            CaseLabel::EdgeSixthUnsupported
        }
    } else if !cusp.kprime.is_multiple_of(3) {
        CaseLabel::KangShift
    } else {
        CaseLabel::DivergentThreeUnsupported
    }
}

fn expect_label(cusp: &CuspData, ok: &[CaseLabel]) -> Result<()> {
    if ok.contains(&cusp.label) {
        Ok(())
    } else {
        Err(Error::CaseMismatch {
            expected: ok.iter().map(|l| l.name()).collect::<Vec<_>>().join("|"),
            found: cusp.label.name().into(),
        })
    }
}

fn field_order(n: u64) -> Result<u32> {
    let cap = order_cap();
    if n > cap as u64 {
        return Err(Error::OrderCapExceeded { order: n, cap });
    }
    Ok(n as u32)
}

/// Roots of unity of one field ℚ(ζ_n), addressed by exponent.
struct Roots {
    n: u32,
}

impl Roots {
    fn exp_of(&self, turns: &Rational) -> i64 {
        let e = Rational::from(turns * self.n);
        debug_assert!(*e.denom() == 1, "turns not in (1/n)Z");
        e.numer().to_i64().unwrap().rem_euclid(self.n as i64)
    }

    fn z(&self, e: i64) -> CyclotomicNumber {
        root_of_unity(e, self.n)
    }

    fn one_minus(&self, e: i64) -> CyclotomicNumber {
        &CyclotomicNumber::one(self.n) - &self.z(e)
    }
}

/// Exponents of x₀ and q₀ in ℚ(ζ_n).
fn cusp_roots(params: &SpecializationParams, cusp: &CuspData, extra: u64) -> Result<(Roots, i64, i64)> {
    let n = field_order(lcm(lcm(params.b as u64, cusp.k as u64), extra))?;
    let r = Roots { n };
    let ex = r.exp_of(&params.x_turns(cusp.h, cusp.k));
    let eq = r.exp_of(&frac(&Rational::from((params.B as u64 * cusp.h as u64, cusp.k as u64))));
    Ok((r, ex, eq))
}

/// Σ_{j=1}^{k′} q^{j(j−1)} / (x, q/x; q)_j / (1 − 1/D), D = (1 − x^{k′})(1 − x^{−k′}).
///
/// With R_j = Π_{i=j}^{k′−1} (1 − x q^i)(1 − q^{i+1}/x) we have 1/(x, q/x; q)_j = R_j/D,
/// so the value is Σ_j q^{j(j−1)} R_j / (D − 1) and needs one field division.
fn convergent_sum(r: &Roots, ex: i64, eq: i64, kprime: u32) -> Result<CyclotomicNumber> {
    let d = periodic_pochhammer_closed_form(&r.z(ex), kprime)?;
    let one = CyclotomicNumber::one(r.n);
    let dm1 = &d - &one;
    if d.is_zero() || dm1.is_zero() {
        return Err(Error::Domain("periodic factor D is 0 or 1".into()));
    }
    let kp = kprime as i64;
    let mut rj = one;
    let mut sum = CyclotomicNumber::zero(r.n);
    for j in (1..=kp).rev() {
        sum = &sum + &(&r.z(eq * j * (j - 1)) * &rj);
        rj = &rj * &(&r.one_minus(ex + eq * (j - 1)) * &r.one_minus(eq * j - ex));
    }
    sum.checked_div(&dm1)
}

/// The same value summed term by term with one division per term.
pub fn convergent_sum_literal(x: &CyclotomicNumber, q: &CyclotomicNumber, kprime: u32) -> Result<CyclotomicNumber> {
    let d = periodic_pochhammer_closed_form(x, kprime)?;
    let one = CyclotomicNumber::one(d.order());
    let pref = one.checked_div(&(&one - &one.checked_div(&d)?))?;
    let qx = q.checked_div(x)?;
    let mut sum = CyclotomicNumber::zero(d.order());
    for j in 1..=kprime as usize {
        let den = pochhammer(x, q, j) * pochhammer(&qx, q, j);
        sum = sum + q.pow((j * (j - 1)) as i64)?.checked_div(&den)?;
    }
    Ok(pref * sum)
}

fn result_order(params: &SpecializationParams, cusp: &CuspData) -> u64 {
    lcm(lcm(lcm(6, params.b as u64), cusp.k as u64), 6 * cusp.kprime as u64)
}

/// Promote to ℚ(ζ_N), N = lcm(6, b, k, 6k′), when N is within the order cap.
fn to_result_field(v: CyclotomicNumber, params: &SpecializationParams, cusp: &CuspData) -> CyclotomicNumber {
    let n = result_order(params, cusp);
    if n <= order_cap() as u64 {
        v.promote(n as u32).unwrap_or(v)
    } else {
        v
    }
}

/// −x₀⁻¹ + x₀⁻² Σ_{n=1}^{k′} (q₀/x₀; q₀)_{n−1} (x₀; q₀)_n q₀^n.
pub fn limit_pole(params: &SpecializationParams, cusp: &CuspData) -> Result<CyclotomicNumber> {
    expect_label(cusp, &[CaseLabel::Pole])?;
    let (r, ex, eq) = cusp_roots(params, cusp, 1)?;
    // U_1 = (1 − x) q, U_n = U_{n−1} (1 − q^{n−1}/x)(1 − x q^{n−1}) q.
    let mut u = &r.one_minus(ex) * &r.z(eq);
    let mut sum = u.clone();
    for n in 2..=cusp.kprime as i64 {
        let f = &r.one_minus(eq * (n - 1) - ex) * &r.one_minus(ex + eq * (n - 1));
        u = &(&u * &f) * &r.z(eq);
        if u.is_zero() {
            break;
        }
        sum = &sum + &u;
    }
    let v = &(-r.z(-ex)) + &(&r.z(-2 * ex) * &sum);
    Ok(to_result_field(v, params, cusp))
}

/// Smallest n₀ ≥ 0 with x₀ q₀^{n₀} = 1, found by exact field comparison.
pub fn pole_index(params: &SpecializationParams, cusp: &CuspData) -> Result<Option<u32>> {
    let (r, ex, eq) = cusp_roots(params, cusp, 1)?;
    for n0 in 0..cusp.kprime as i64 {
        if r.one_minus(ex + eq * n0).is_zero() {
            return Ok(Some(n0 as u32));
        }
    }
    Ok(None)
}

pub fn limit_convergent(params: &SpecializationParams, cusp: &CuspData) -> Result<CyclotomicNumber> {
    expect_label(cusp, &[CaseLabel::Convergent])?;
    let (r, ex, eq) = cusp_roots(params, cusp, 1)?;
    let v = convergent_sum(&r, ex, eq, cusp.kprime)?;
    Ok(to_result_field(v, params, cusp))
}

/// −Σ_{ℓ=1,2} (convergent limit at ζ₃^ℓ x₀).
pub fn limit_kang(params: &SpecializationParams, cusp: &CuspData) -> Result<CyclotomicNumber> {
    expect_label(cusp, &[CaseLabel::KangShift])?;
    let (r, ex, eq) = cusp_roots(params, cusp, 3)?;
    let third = r.n as i64 / 3;
    let mut v = CyclotomicNumber::zero(r.n);
    for l in 1..=2 {
        v = &v - &convergent_sum(&r, ex + l * third, eq, cusp.kprime)?;
    }
    Ok(to_result_field(v, params, cusp))
}

/// Steps of the edge-case reduction to x = ζ_{6k′}.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    /// x₀ = ζ_{6k′}^{sign} ζ_{k′}^{ell}.
    pub sign: i8,
    pub ell: i64,
    /// Number of functional-equation shifts x ↦ x q₀.
    pub shifts: u32,
    pub inverted: bool,
    /// One relation per step, in order of application.
    pub steps: Vec<AffineRelation<CyclotomicNumber>>,
    /// g₃ at the start = composed.scale · g₃ at ζ_{6k′} + composed.offset.
    pub composed: AffineRelation<CyclotomicNumber>,
    /// hB′ mod k′ before and after the reduction.
    pub hb_before: u32,
    pub hb_after: u32,
    pub notes: Vec<String>,
}

pub fn edge_reduction(params: &SpecializationParams, cusp: &CuspData) -> Result<ReductionTrace> {
    expect_label(cusp, &[CaseLabel::EdgeSixthClosed, CaseLabel::EdgeSixthUnsupported])?;
    let kp = cusp.kprime as i64;
    let (r, ex, eq) = cusp_roots(params, cusp, 6 * cusp.kprime as u64)?;
    let sign: i8 = if cusp.mu == (1, 6) { 1 } else { -1 };
    let n = r.n as i64;
    let unit = n / (6 * kp);
    // x₀ = ζ_n^{ex} = ζ_{6k′}^{sign} ζ_{k′}^{ell}
    let rest = ex - sign as i64 * unit;
    let step = n / kp;
    if rest.rem_euclid(step) != 0 {
        return Err(Error::Domain("edge point is not of the form zeta_{6k'}^{+-1} zeta_{k'}^l".into()));
    }
    let ell = (rest / step).rem_euclid(kp);
    let hb = ((cusp.h as u64 * cusp.Bprime as u64) % cusp.kprime as u64) as i64;
    // q₀ = ζ_{k′}^{hB′}; need hB′ s ≡ −ℓ (mod k′).
    let shifts = if kp == 1 { 0 } else { ((-ell).rem_euclid(kp) * mod_inverse(hb, kp)).rem_euclid(kp) };
    let q = r.z(eq);
    let mut x = r.z(ex);
    let mut steps = Vec::new();
    let mut composed = AffineRelation::identity(&x);
    let mut notes = vec![format!(
        "x0 = zeta_{}^{} * zeta_{}^{}",
        6 * kp,
        sign,
        kp,
        ell
    )];
    for _ in 0..shifts {
        let (rel, nx) = affine_transport(&x, &q, TransportKind::ShiftFeq)?;
        composed = composed.then(&rel);
        steps.push(rel);
        x = nx;
    }
    notes.push(format!("{shifts} functional-equation shift(s) x -> x q0"));
    if sign < 0 {
        let (rel, nx) = affine_transport(&x, &q, TransportKind::Invert)?;
        composed = composed.then(&rel);
        steps.push(rel);
        x = nx;
        notes.push("inversion x -> 1/x".into());
    }
    if x != r.z(unit) {
        return Err(Error::Domain("edge reduction did not reach zeta_{6k'}".into()));
    }
    let hb_after = hb as u32;
    notes.push(format!("hB' mod k' = {hb} before reduction, {hb_after} at the reduced point"));
    Ok(ReductionTrace { sign, ell, shifts: shifts as u32, inverted: sign < 0, steps, composed, hb_before: hb as u32, hb_after, notes })
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    let (mut t, mut nt, mut r, mut nr) = (0i64, 1i64, m, a.rem_euclid(m));
    while nr != 0 {
        let qt = r / nr;
        (t, nt) = (nt, t - qt * nt);
        (r, nr) = (nr, r - qt * nr);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(m)
}

/// Closed value at x = ζ_{6k′}, q = ζ_{k′}:
/// −1/(2x) + (x/2)·(limit of g₃(x³, x⁶)) + (eta term, exactly zero here).
pub fn edge_closed_value(kprime: u32) -> Result<CyclotomicNumber> {
    let n = field_order(6 * kprime as u64)?;
    let r = Roots { n };
    let x = r.z(1);
    let eta = mtc73_eta_partial_exact(&x, n as usize)?;
    if !eta.is_zero() {
        return Err(Error::Domain("eta quotient does not vanish at zeta_{6k'}".into()));
    }
    let conv = convergent_sum(&r, 3, 6, kprime)?;
    let half = CyclotomicNumber::from_rational(Rational::from((1, 2)), n);
    Ok(&(-(&half * &x.inv()?)) + &(&(&half * &x) * &conv))
}

pub fn limit_edge(params: &SpecializationParams, cusp: &CuspData, digits: u32) -> Result<RadialLimitResult> {
    let trace = edge_reduction(params, cusp)?;
    if cusp.label != CaseLabel::EdgeSixthClosed {
        return Err(Error::Unsupported { label: cusp.label.name().into(), trace: trace.notes });
    }
    let base = edge_closed_value(cusp.kprime)?;
    let v = trace.composed.apply(&base);
    let exact = to_result_field(v, params, cusp);
    let numeric = exact.embed_complex(digits);
    Ok(RadialLimitResult {
        params: *params,
        cusp: cusp.clone(),
        label: cusp.label,
        exact: Some(exact),
        numeric: Some(numeric),
        companion: ModularCompanion::for_case(params, cusp),
        reduction_trace: Some(trace),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CompanionForm {
    Zero,
    PoleForm,
    KangForm,
}

/// The modular form subtracted before taking the radial limit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModularCompanion {
    pub form: CompanionForm,
    pub params: SpecializationParams,
    pub h: u32,
    pub k: u32,
    /// ±1: which square root q^{B/2} enters the pole form.
    pub branch: i8,
}

impl ModularCompanion {
    pub fn for_case(params: &SpecializationParams, cusp: &CuspData) -> Self {
        let form = match cusp.label {
            CaseLabel::Pole => CompanionForm::PoleForm,
            CaseLabel::KangShift => CompanionForm::KangForm,
            _ => CompanionForm::Zero,
        };
        let branch = if form == CompanionForm::PoleForm { pole_branch(cusp) } else { 1 };
        ModularCompanion { form, params: *params, h: cusp.h, k: cusp.k, branch }
    }

    pub fn with_branch(&self, branch: i8) -> Self {
        ModularCompanion { branch, ..self.clone() }
    }
}

/// Square root of q^B for the pole form: the principal radial branch unless
/// it sends ζ_b^a q₀^{A+B/2} into ⟨q₀⟩, where j(·, q₀^B) degenerates. That
/// happens exactly when hB′ is even; then k′ is odd and the other branch is
/// safe.
pub fn pole_branch(cusp: &CuspData) -> i8 {
    if (cusp.h as u64 * cusp.Bprime as u64) % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Points on the ray q = e^{2πih/k − t}.
pub struct RadialPoint {
    pub h: u32,
    pub k: u32,
    pub t: Float,
    pub digits: u32,
}

impl RadialPoint {
    pub fn new(h: u32, k: u32, t: f64, digits: u32) -> Self {
        RadialPoint { h, k, t: Float::with_val(bits_for(digits) + 16, t), digits }
    }

    /// ζ^{turns} · q^{beta}: modulus e^{−βt}, angle turns + βh/k.
    pub fn power(&self, turns: &Rational, beta: &Rational) -> BigComplex {
        let ang = frac(&(turns.clone() + (beta * Rational::from((self.h, self.k)))));
        let p = bits_for(self.digits) + 16;
        let m = Float::with_val(p, -Float::with_val(p, &self.t * beta)).exp();
        BigComplex::cis_turns(&ang, self.digits).mul_real(&m)
    }

    /// (X, P) = (ζ_b^a q^A, q^B).
    pub fn specialization(&self, params: &SpecializationParams) -> (BigComplex, BigComplex) {
        let x = self.power(&Rational::from((params.a, params.b)), &Rational::from(params.A));
        let p = self.power(&Rational::new(), &Rational::from(params.B));
        (x, p)
    }

    /// branch · q^{B/2}.
    pub fn half_power(&self, params: &SpecializationParams, branch: i8) -> BigComplex {
        let turns = if branch < 0 { Rational::from((1, 2)) } else { Rational::new() };
        self.power(&turns, &Rational::from((params.B, 2)))
    }
}

/// Value of the companion at q = e^{2πih/k − t}.
pub fn companion_value(companion: &ModularCompanion, t: f64, digits: u32) -> Result<BigComplex> {
    let d = digits + guard_digits(digits);
    let pt = RadialPoint::new(companion.h, companion.k, t, d + 10);
    let (x, p) = pt.specialization(&companion.params);
    let v = match companion.form {
        CompanionForm::Zero => return Ok(BigComplex::zero(digits)),
        CompanionForm::PoleForm => {
            // (P;P)² j(S,P)² / (X j(XS,P)² j(X,P)), S = ±q^{B/2}.
            let s = pt.half_power(&companion.params, companion.branch);
            let e = euler_series(&p, d)?;
            let js = theta_series(&s, &p, d)?;
            let jxs = theta_series(&(&x * &s), &p, d)?;
            let jx = theta_series(&x, &p, d)?;
            let den = &(&x * &(&jxs * &jxs)) * &jx;
            if den.is_zero() {
                return Err(Error::NearSingular("pole companion denominator vanishes".into()));
            }
            &(&(&e * &e) * &(&js * &js)) / &den
        }
        CompanionForm::KangForm => {
            // 3 (P³;P³)³ / ((P;P) j(X³, P³)).
            let p3 = &(&p * &p) * &p;
            let x3 = &(&x * &x) * &x;
            let e3 = euler_series(&p3, d)?;
            let e1 = euler_series(&p, d)?;
            let j = theta_series(&x3, &p3, d)?;
            let den = &e1 * &j;
            if den.is_zero() {
                return Err(Error::NearSingular("Kang companion denominator vanishes".into()));
            }
            &e3.powi(3)?.mul_i64(3) / &den
        }
    };
    Ok(v.with_digits(digits))
}

/// The Appell–Lerch quotient that carries the pole case's remainder:
/// j(X,P) / ((P;P)_∞ j(XS,P)) · Σ_{n∈ℤ} (−X)^n S^{n²} / (1 − X⁻¹ S^{2n−1}),
/// with X = ζ_b^a q^A, P = q^B and S the pole-form square root of P.
pub fn lim0_quotient(params: &SpecializationParams, cusp: &CuspData, t: f64, digits: u32) -> Result<BigComplex> {
    expect_label(cusp, &[CaseLabel::Pole])?;
    let d = digits + guard_digits(digits);
    let pt = RadialPoint::new(cusp.h, cusp.k, t, d + 10);
    let (x, p) = pt.specialization(params);
    let s = pt.half_power(params, pole_branch(cusp));
    let jx = theta_series(&x, &p, d)?;
    let e = euler_series(&p, d)?;
    let jxs = theta_series(&(&x * &s), &p, d)?;
    let sum = tailid2_bilateral(&x, &s, d)?;
    Ok((&(&jx * &sum) / &(&e * &jxs)).with_digits(digits))
}

/// Classified cusp with its exact limit (when supported) and companion.
#[derive(Clone, Debug)]
pub struct RadialLimitResult {
    pub params: SpecializationParams,
    pub cusp: CuspData,
    pub label: CaseLabel,
    pub exact: Option<CyclotomicNumber>,
    pub numeric: Option<BigComplex>,
    pub companion: ModularCompanion,
    pub reduction_trace: Option<ReductionTrace>,
}

pub fn radial_limit(params: &SpecializationParams, h: i64, k: u32, digits: u32) -> Result<RadialLimitResult> {
    let cusp = cusp_data(params, h, k)?;
    let companion = ModularCompanion::for_case(params, &cusp);
    let exact = match cusp.label {
        CaseLabel::Pole => Some(limit_pole(params, &cusp)?),
        CaseLabel::Convergent => Some(limit_convergent(params, &cusp)?),
        CaseLabel::KangShift => Some(limit_kang(params, &cusp)?),
        CaseLabel::EdgeSixthClosed => return limit_edge(params, &cusp, digits),
        CaseLabel::EdgeSixthUnsupported => {
            let trace = edge_reduction(params, &cusp)?;
            return Ok(RadialLimitResult {
                params: *params,
                label: cusp.label,
                cusp,
                exact: None,
                numeric: None,
                companion,
                reduction_trace: Some(trace),
            });
        }
        CaseLabel::DivergentThreeUnsupported => None,
    };
    let numeric = exact.as_ref().map(|e| e.embed_complex(digits));
    Ok(RadialLimitResult { params: *params, label: cusp.label, cusp, exact, numeric, companion, reduction_trace: None })
}
