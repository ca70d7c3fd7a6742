//! Acceptance criteria 1–10. Each test prints one PASS/FAIL line with its
//! evidence; run with `--nocapture` to see the lines of passing tests too.

#![allow(non_snake_case)]

use std::time::Instant;

use mockradial::exact::{gcd, root_of_unity, CyclotomicNumber, FieldOp, Rational};
use mockradial::radial::{
    cusp_data, limit_convergent, params_in_q, pole_index, radial_limit, CaseLabel, SpecializationParams,
};
use mockradial::verify::{
    conjecture_check, corollary_check, identity_check, radial_check, tuples_with_label, ConjectureStatus,
    ConvergenceReport, IdentityId, RadialSchedule,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_251_016;

fn report(n: u32, name: &str, passed: bool, detail: &str, started: Instant) {
    println!(
        "criterion {n:>2} [{}] {name}: {detail} ({:.1}s)",
        if passed { "PASS" } else { "FAIL" },
        started.elapsed().as_secs_f64()
    );
}

/// Independent numeric oracle: partial sums of Σ q^{n(n−1)} / (x, q/x; q)_n in
/// f64, over whole periods of k′ terms until a period contributes < 1e-15.
fn direct_series(x_turns: f64, q_turns: f64, kprime: u32) -> (f64, f64) {
    let cis = |t: f64| {
        let a = std::f64::consts::TAU * t;
        (a.cos(), a.sin())
    };
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let div = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    let mut sum = (0.0, 0.0);
    let mut den = (1.0, 0.0);
    let mut n: u64 = 0;
    loop {
        let mut block = 0.0f64;
        for _ in 0..kprime {
            n += 1;
            // factor (1 − x q^{n−1})(1 − q^n / x)
            let f1 = cis(x_turns + q_turns * (n - 1) as f64);
            let f2 = cis(q_turns * n as f64 - x_turns);
            den = mul(den, mul((1.0 - f1.0, -f1.1), (1.0 - f2.0, -f2.1)));
            let num = cis(q_turns * ((n * (n - 1)) % (1 << 40)) as f64);
            let t = div(num, den);
            sum = (sum.0 + t.0, sum.1 + t.1);
            block = block.max(t.0.hypot(t.1));
        }
        if block < 1e-15 || n > 10_000_000 {
            return sum;
        }
    }
}

#[test]
fn criterion_01_convergent_oracle() {
    let start = Instant::now();
    let mut count = 0;
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for b in 1..=8u32 {
        for a in 0..b {
            for A in 0..=3u32 {
                for B in 1..=6u32 {
                    let Ok(p) = SpecializationParams::new(a, b, A, B) else { continue };
                    for k in 1..=10u32 {
                        for h in (1..=k).filter(|h| gcd(*h as u64, k as u64) == 1) {
                            let c = cusp_data(&p, h as i64, k).unwrap();
                            if c.label != CaseLabel::Convergent {
                                continue;
                            }
                            count += 1;
                            let (re, im) = limit_convergent(&p, &c).unwrap().embed_complex(20).to_c64();
                            let xt = a as f64 / b as f64 + (A * h) as f64 / k as f64;
                            let qt = (B * h) as f64 / k as f64;
                            let (ore, oim) = direct_series(xt.fract(), qt.fract(), c.kprime);
                            let err = (re - ore).hypot(im - oim);
                            worst = worst.max(err);
                            if err >= 1e-8 {
                                failures.push(format!("{p} at {h}/{k}: {err:e}"));
                            }
                        }
                    }
                }
            }
        }
    }
    // lim_{q→1} g₃(−1, q) = Σ_{n≥1} 4^{−n} = 1/3.
    let geometric: Rational = (1..=60u32).map(|n| Rational::from((1, rug::Integer::from(rug::Integer::u_pow_u(4, n))))).sum();
    let spot = radial_limit(&SpecializationParams::new(1, 2, 0, 1).unwrap(), 1, 1, 30).unwrap();
    let spot_value = spot.exact.unwrap().to_rational().unwrap();
    let spot_ok = (Rational::from(&spot_value - &geometric)).abs() < (1, 1u64 << 60);
    let passed = failures.is_empty() && spot_ok && count > 0;
    report(
        1,
        "convergent limits vs direct series",
        passed,
        &format!("{count} convergent tuples, worst |diff| {worst:.2e}, {} over 1e-8; lim g3(-1,q) = {spot_value}", failures.len()),
        start,
    );
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    assert!(passed);
}

fn radial_sample(label: CaseLabel, b_max: u32, k_max: u32, count: usize) -> Vec<(SpecializationParams, u32, u32)> {
    let mut all = tuples_with_label(label, b_max, 3, 4, k_max);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    all.shuffle(&mut rng);
    all.truncate(count);
    all
}

fn radial_criterion(n: u32, name: &str, tuples: &[(SpecializationParams, u32, u32)], need: usize) {
    let start = Instant::now();
    let sched = RadialSchedule::default();
    let mut passed_count = 0;
    let mut lines = Vec::new();
    for (p, h, k) in tuples {
        let r: ConvergenceReport = radial_check(p, *h as i64, *k, &sched, 1e-3).unwrap();
        if r.passed {
            passed_count += 1;
        }
        let res: Vec<f64> = r.points.iter().map(|q| q.residual).collect();
        let m = res.len();
        let last = r.points.last().unwrap();
        lines.push(format!(
            "{p} at {h}/{k}: final {:.3e}, residual/t {:.3}, last ratio {:.3}, monotone {}, {}",
            r.final_residual,
            r.final_residual / last.t,
            res[m - 2] / res[m - 1],
            r.monotone_tail,
            if r.passed { "pass" } else { "fail" }
        ));
    }
    let passed = passed_count >= need && passed_count == tuples.len();
    report(
        n,
        name,
        passed,
        &format!("{passed_count}/{} sampled tuples under 1e-3 with monotone tail (need {need})", tuples.len()),
        start,
    );
    for l in &lines {
        println!("    {l}");
    }
    assert!(passed);
}

#[test]
fn criterion_02_pole_radial() {
    let tuples = radial_sample(CaseLabel::Pole, 6, 12, 20);
    radial_criterion(2, "pole-case radial convergence", &tuples, 20);
}

#[test]
fn criterion_03_kang_radial() {
    let tuples = radial_sample(CaseLabel::KangShift, 8, 10, 10);
    radial_criterion(3, "Kang-case radial convergence", &tuples, 10);
}

#[test]
fn criterion_04_edge_radial() {
    let first = (SpecializationParams::new(1, 6, 0, 1).unwrap(), 1, 1);
    let mut tuples = vec![first];
    tuples.extend(radial_sample(CaseLabel::EdgeSixthClosed, 12, 6, 5).into_iter().filter(|t| *t != first).take(4));
    radial_criterion(4, "edge-case radial convergence", &tuples, 5);
}

#[test]
fn criterion_05_identity_suite() {
    let start = Instant::now();
    let mut all = true;
    let mut lines = Vec::new();
    for id in IdentityId::ALL.into_iter().filter(|i| *i != IdentityId::Lim0) {
        let r = identity_check(id, 25, SEED, 40).unwrap();
        let tol = match id {
            IdentityId::Feq | IdentityId::Inv | IdentityId::L2 => 1e-28,
            _ => 1e-25,
        };
        let ok = r.max_residual < tol;
        all &= ok;
        lines.push(format!("{:14} max residual {:.3e} (< {tol:.0e}: {ok})", id.name(), r.max_residual));
    }
    report(5, "identity suite, 25 samples at 40 digits", all, "11 identities", start);
    for l in &lines {
        println!("    {l}");
    }
    assert!(all);
}

#[test]
fn criterion_06_lim0_decay() {
    let start = Instant::now();
    let r = identity_check(IdentityId::Lim0, 10, SEED, 30).unwrap();
    let ok = r.max_residual < 1e-2;
    report(
        6,
        "Appell-Lerch quotient decay at pole cusps",
        ok,
        &format!("10 pole tuples, largest final value {:.3e} ({})", r.max_residual, r.worst_sample),
        start,
    );
    assert!(ok);
}

#[test]
fn criterion_07_corollary() {
    let start = Instant::now();
    let items = corollary_check(30).unwrap();
    let bad: Vec<_> = items.iter().filter(|i| !i.passed).map(|i| (i.k, i.h)).collect();
    let ks: std::collections::BTreeSet<u32> = items.iter().map(|i| i.k).collect();
    let expected: std::collections::BTreeSet<u32> = (2..=30).filter(|k| gcd(*k as u64, 10) == 2).collect();
    let ok = bad.is_empty() && ks == expected;
    report(7, "fifth-order corollary, exact", ok, &format!("k in {ks:?}, {} roots, failures {bad:?}", items.len()), start);
    assert!(ok);
}

#[test]
fn criterion_08_conjecture() {
    let start = Instant::now();
    let items = conjecture_check(8).unwrap();
    let admissible: Vec<_> = items.iter().filter(|i| !matches!(i.status, ConjectureStatus::HypothesisViolated(_))).collect();
    let counter: Vec<_> = admissible.iter().filter(|i| i.status == ConjectureStatus::Counterexample).collect();
    let ok = counter.is_empty() && !admissible.is_empty();
    let by_k: Vec<String> = (1..=8)
        .map(|k| {
            let n = admissible.iter().filter(|i| i.k == k).count();
            let c = counter.iter().filter(|i| i.k == k).count();
            format!("k={k}: {c}/{n}")
        })
        .collect();
    report(
        8,
        "sixth-root conjecture, exact",
        ok,
        &format!("{} counterexamples among {} admissible items; {}", counter.len(), admissible.len(), by_k.join(", ")),
        start,
    );
    for c in counter.iter().take(3) {
        println!(
            "    counterexample k={} q=zeta_{}^{} x=q^{}: lhs {} rhs {}",
            c.k,
            3 * c.k,
            c.h,
            c.m.unwrap_or(0),
            c.lhs.as_ref().unwrap(),
            c.rhs.as_ref().unwrap()
        );
    }
    assert!(ok);
}

fn random_element(rng: &mut ChaCha8Rng, n: u32) -> CyclotomicNumber {
    // Sparse combination of roots of unity with small rational coefficients.
    let mut v = CyclotomicNumber::zero(n);
    for _ in 0..rng.gen_range(1..=4) {
        let c = Rational::from((rng.gen_range(-9i64..=9), rng.gen_range(1i64..=5)));
        v = v + CyclotomicNumber::from_rational(c, n) * root_of_unity(rng.gen_range(0..n as i64), n);
    }
    v
}

#[test]
fn criterion_09_exact_arithmetic() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let digits = 40;
    let tol = 10f64.powi(2 - digits as i32);
    let mut failures = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=60u32);
        let x = random_element(&mut rng, n);
        let y = random_element(&mut rng, n);
        let z = random_element(&mut rng, n);
        let one = CyclotomicNumber::one(n);
        let mut ok = &(&x + &y) + &z == &x + &(&y + &z)
            && &(&x * &y) * &z == &x * &(&y * &z)
            && &x * &(&y + &z) == &(&x * &y) + &(&x * &z)
            && &x * &y == &y * &x
            && &x + &(-&x) == CyclotomicNumber::zero(n)
            && &x * &one == x;
        if !x.is_zero() {
            ok &= &x * &x.inv().unwrap() == one;
            ok &= mockradial::exact::field_arithmetic(&y, &x, FieldOp::Div).unwrap() * &x == y;
        }
        let (ex, ey) = (x.embed_complex(digits), y.embed_complex(digits));
        let sum = (&x + &y).embed_complex(digits);
        let prod = (&x * &y).embed_complex(digits);
        let scale = |a: f64| a.max(1.0);
        ok &= (&sum - &(&ex + &ey)).abs_f64() <= tol * scale(sum.abs_f64());
        ok &= (&prod - &(&ex * &ey)).abs_f64() <= tol * scale(prod.abs_f64());
        ok &= (&x.conj().embed_complex(digits) - &ex.conj()).abs_f64() <= tol * scale(ex.abs_f64());
        if !ok {
            failures += 1;
        }
    }
    let passed = failures == 0;
    report(9, "cyclotomic field axioms and embedding", passed, &format!("1000 samples, orders <= 60, {failures} failures"), start);
    assert!(passed);
}

#[test]
fn criterion_10_classification() {
    let start = Instant::now();
    let mut tuples = 0u64;
    let mut poles = 0u64;
    let mut disagreements = 0u64;
    let mut truncation_failures = 0u64;
    for b in 1..=10u32 {
        for a in (0..b).filter(|a| gcd(*a as u64, b as u64) == 1) {
            for A in 0..=4u32 {
                for B in 1..=8u32 {
                    let Ok(p) = SpecializationParams::new(a, b, A, B) else { continue };
                    for k in 1..=30u32 {
                        for h in (1..=k).filter(|h| gcd(*h as u64, k as u64) == 1) {
                            tuples += 1;
                            // μ-based test, from the exact rational μ.
                            let kprime = k / gcd(k as u64, B as u64) as u32;
                            let mu = Rational::from((a, b)) + Rational::from((A * h, k));
                            let mu = (mu * kprime);
                            let mu_zero = *mu.denom() == 1;
                            let divisible = params_in_q(&p, h, k);
                            if mu_zero != divisible {
                                disagreements += 1;
                                continue;
                            }
                            if !mu_zero {
                                continue;
                            }
                            poles += 1;
                            // x q^{n₀} = 1 for some n₀ < k′, so (x; q)_n = 0 for n > k′.
                            let c = cusp_data(&p, h as i64, k).unwrap();
                            match pole_index(&p, &c).unwrap() {
                                Some(n0) if n0 < c.kprime => {}
                                _ => truncation_failures += 1,
                            }
                        }
                    }
                }
            }
        }
    }
    let passed = disagreements == 0 && truncation_failures == 0;
    report(
        10,
        "classification consistency",
        passed,
        &format!("{tuples} tuples, {poles} poles, {disagreements} disagreements, {truncation_failures} truncation failures"),
        start,
    );
    assert!(passed);
}
