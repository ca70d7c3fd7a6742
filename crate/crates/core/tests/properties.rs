//! Property tests for the exact field, the q-series building blocks and the
//! cusp classification.

#![allow(non_snake_case)]

use mockradial::exact::{gcd, root_of_unity, CyclotomicNumber, Rational};
use mockradial::mocktheta::{affine_transport, AffineRelation, TransportKind};
use mockradial::qseries::{periodic_pochhammer_closed_form, pochhammer, pochhammer_negative};
use mockradial::radial::{
    classify, cusp_data, edge_reduction, limit_pole, params_in_q, CaseLabel, SpecializationParams,
};
use proptest::prelude::*;

/// A sparse element: up to four terms c·ζ_n^e with small rational c.
fn element(n: u32) -> impl Strategy<Value = CyclotomicNumber> {
    prop::collection::vec((-9i64..=9, 1i64..=6, 0..n as i64), 1..=4).prop_map(move |terms| {
        terms.into_iter().fold(CyclotomicNumber::zero(n), |acc, (p, q, e)| {
            acc + CyclotomicNumber::from_rational(Rational::from((p, q)), n) * root_of_unity(e, n)
        })
    })
}

fn triple() -> impl Strategy<Value = (CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
    (1u32..=60).prop_flat_map(|n| (element(n), element(n), element(n)))
}

fn params() -> impl Strategy<Value = SpecializationParams> {
    (1u32..=10, 0u32..10, 0u32..=4, 1u32..=8)
        .prop_filter_map("invalid params", |(b, a, A, B)| SpecializationParams::new(a % b, b, A, B).ok())
}

fn cusp() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=30, 1u32..=30).prop_filter_map("gcd(h, k) != 1", |(k, h)| {
        let h = (h - 1) % k + 1;
        (gcd(h as u64, k as u64) == 1).then_some((h, k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms((x, y, z) in triple()) {
        let n = x.order();
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
            prop_assert_eq!(&y.checked_div(&x).unwrap() * &x, y.clone());
        }
        prop_assert_eq!(&x * &CyclotomicNumber::one(n), x);
    }

    #[test]
    fn embedding_is_a_homomorphism((x, y, _z) in triple()) {
        let d = 40;
        let tol = 1e-38;
        let (ex, ey) = (x.embed_complex(d), y.embed_complex(d));
        let s = (&x + &y).embed_complex(d);
        let p = (&x * &y).embed_complex(d);
        prop_assert!((&s - &(&ex + &ey)).abs_f64() <= tol * s.abs_f64().max(1.0));
        prop_assert!((&p - &(&ex * &ey)).abs_f64() <= tol * p.abs_f64().max(1.0));
        if !x.is_zero() {
            let i = x.inv().unwrap().embed_complex(d);
            let one = &i * &ex;
            prop_assert!((one.abs_f64() - 1.0).abs() <= 1e-30);
        }
    }

    #[test]
    fn galois_action_is_a_field_automorphism((x, y, _z) in triple(), s in 1i64..60) {
        let n = x.order() as i64;
        prop_assume!(gcd(s as u64, n as u64) == 1);
        prop_assert_eq!((&x * &y).galois(s), &x.galois(s) * &y.galois(s));
        prop_assert_eq!((&x + &y).galois(s), &x.galois(s) + &y.galois(s));
        prop_assert_eq!(x.conj(), x.galois(-1));
        let c = x.conj().embed_complex(30);
        prop_assert!((&c - &x.embed_complex(30).conj()).abs_f64() < 1e-28 * c.abs_f64().max(1.0));
    }

    #[test]
    fn promotion_preserves_values((x, y, _z) in triple(), m in 1u32..=4) {
        let n = x.order() * m;
        prop_assume!(n <= 120);
        let (px, py) = (x.promote(n).unwrap(), y.promote(n).unwrap());
        prop_assert_eq!(&px * &py, (&x * &y).promote(n).unwrap());
        prop_assert_eq!(px, x);
    }

    #[test]
    fn transport_relations_compose(e in 0i64..36, f in 1i64..36, steps in 1usize..6) {
        // x, q on the unit circle of ℚ(ζ₃₆), away from x = 0.
        let mut x = root_of_unity(e, 36);
        let q = root_of_unity(f, 36);
        let mut rels: Vec<AffineRelation<CyclotomicNumber>> = Vec::new();
        for i in 0..steps {
            let kind = if i % 2 == 0 { TransportKind::ShiftFeq } else { TransportKind::Invert };
            let (r, nx) = affine_transport(&x, &q, kind).unwrap();
            rels.push(r);
            x = nx;
        }
        let left = rels.iter().fold(AffineRelation::identity(&q), |acc, r| acc.then(r));
        let right = rels.iter().rev().fold(AffineRelation::identity(&q), |acc, r| r.then(&acc));
        prop_assert_eq!(&left, &right);
        prop_assert!(left.then(&left.inverse().unwrap()).is_identity());
        prop_assert!(left.inverse().unwrap().then(&left).is_identity());
    }

    #[test]
    fn negative_index_pochhammer_inverts_the_shift(p in 2i64..9, q in 2i64..9, n in 0usize..7) {
        // (a; q)_{−n} (a q^{−n}; q)_n = 1.
        let a = CyclotomicNumber::from_rational(Rational::from((p, 3)), 1);
        let qq = CyclotomicNumber::from_rational(Rational::from((1, q)), 1);
        let neg = pochhammer_negative(&a, &qq, n).unwrap();
        let shifted = &a * &qq.pow(-(n as i64)).unwrap();
        prop_assert!((&neg * &pochhammer(&shifted, &qq, n)).is_one());
    }

    #[test]
    fn classification_is_total_and_consistent(p in params(), (h, k) in cusp()) {
        let c = cusp_data(&p, h as i64, k).unwrap();
        prop_assert_eq!(c.mu == 0, params_in_q(&p, h, k));
        prop_assert_eq!(c.kprime * gcd(k as u64, p.B as u64) as u32, k);
        prop_assert_eq!(c.Bprime * gcd(k as u64, p.B as u64) as u32, p.B);
        prop_assert_eq!(classify(&p, &c), c.label);
        let sixth = Rational::from((1, 6));
        let five = Rational::from((5, 6));
        let expected = match () {
            _ if c.mu == 0 => vec![CaseLabel::Pole],
            _ if c.mu > sixth && c.mu < five => vec![CaseLabel::Convergent],
            _ if c.mu == sixth || c.mu == five => vec![CaseLabel::EdgeSixthClosed, CaseLabel::EdgeSixthUnsupported],
            _ if !c.kprime.is_multiple_of(3) => vec![CaseLabel::KangShift],
            _ => vec![CaseLabel::DivergentThreeUnsupported],
        };
        prop_assert!(expected.contains(&c.label));
    }

    #[test]
    fn pole_summands_vanish_past_kprime(p in params(), k in 1u32..=24) {
        for h in (1..=k).filter(|&h| gcd(h as u64, k as u64) == 1) {
            let c = cusp_data(&p, h as i64, k).unwrap();
            if c.label != CaseLabel::Pole {
                continue;
            }
            let n = mockradial::exact::lcm(p.b as u64, k as u64) as u32;
            let ex = Rational::from(&p.x_turns(h, k) * n);
            let x = root_of_unity(ex.numer().to_i64().unwrap(), n);
            let q = root_of_unity((p.B * h) as i64 * (n / k) as i64, n);
            prop_assert!(pochhammer(&x, &q, c.kprime as usize + 1).is_zero());
            prop_assert!(pochhammer(&x, &q, c.kprime as usize).is_zero());
        }
    }

    #[test]
    fn periodic_factor_matches_literal_product(p in params(), (h, k) in cusp()) {
        let c = cusp_data(&p, h as i64, k).unwrap();
        prop_assume!(c.label == CaseLabel::Convergent);
        let n = mockradial::exact::lcm(p.b as u64, k as u64) as u32;
        let ex = Rational::from(&p.x_turns(h, k) * n);
        let x = root_of_unity(ex.numer().to_i64().unwrap(), n);
        let q = root_of_unity((p.B * h) as i64 * (n / k) as i64, n);
        let kp = c.kprime as usize;
        let literal = pochhammer(&x, &q, kp) * pochhammer(&q.checked_div(&x).unwrap(), &q, kp);
        let closed = periodic_pochhammer_closed_form(&x, c.kprime).unwrap();
        prop_assert_eq!(&literal, &closed);
        // 2 − 2 cos(2π μ) from the embedding.
        let mu = c.mu.to_f64();
        let d = closed.embed_complex(20).to_c64();
        prop_assert!((d.0 - (2.0 - 2.0 * (std::f64::consts::TAU * mu).cos())).abs() < 1e-12);
        prop_assert!(d.1.abs() < 1e-12);
    }

    #[test]
    fn pole_limits_conjugate(p in params(), (h, k) in cusp()) {
        let c = cusp_data(&p, h as i64, k).unwrap();
        prop_assume!(c.label == CaseLabel::Pole);
        let pm = SpecializationParams::new((p.b - p.a) % p.b, p.b, p.A, p.B).unwrap();
        let cm = cusp_data(&pm, -(h as i64), k).unwrap();
        prop_assert_eq!(limit_pole(&pm, &cm).unwrap(), limit_pole(&p, &c).unwrap().conj());
    }

    #[test]
    fn edge_reduction_reaches_the_sixth_root(p in params(), k in 1u32..=36) {
        for h in (1..=k).filter(|&h| gcd(h as u64, k as u64) == 1) {
            let c = cusp_data(&p, h as i64, k).unwrap();
            if !matches!(c.label, CaseLabel::EdgeSixthClosed | CaseLabel::EdgeSixthUnsupported) {
                continue;
            }
            let t = edge_reduction(&p, &c).unwrap();
            prop_assert_eq!(t.steps.len() as u32, t.shifts + t.inverted as u32);
            prop_assert!(t.shifts < c.kprime.max(1));
            prop_assert_eq!(t.hb_before, t.hb_after);
            prop_assert!(t.composed.then(&t.composed.inverse().unwrap()).is_identity());
        }
    }
}
