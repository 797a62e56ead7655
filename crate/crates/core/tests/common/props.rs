//! Invariants shared by the property suite and the acceptance run.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use svoa_core::bounds::{self, FeasibilityOptions};
use svoa_core::modchar;
use svoa_core::qseries::{lagrange_coefficient, rebase};
use svoa_core::svoa::even_odd_split;
use svoa_core::{HalfInt, PrecisionPolicy, QSeries, Scalar, Var};

type Check = std::result::Result<(), TestCaseError>;

const HALF_Q: i64 = 24;

/// Half-integral exponents from `lead/2`, 12 powers of `q^{1/2}` deep.
pub fn series() -> impl Strategy<Value = QSeries> {
    (-4i64..4, prop::collection::vec(-20i64..20, 12))
        .prop_map(|(lead, coeffs)| QSeries::from_int_coeffs(lead * HALF_Q, HALF_Q, (lead + 12) * HALF_Q, &coeffs))
}

pub fn unit_series() -> impl Strategy<Value = QSeries> {
    (series(), prop_oneof![Just(-1i64), Just(1), Just(2), Just(-3)]).prop_map(|(s, lead)| {
        let t = s.min_tick().min(s.prec_tick() - HALF_Q);
        let s = s.filter_ticks(|x| x > t);
        s.add_monomial(&Scalar::from_int(lead), t)
    })
}

pub fn half_int() -> impl Strategy<Value = HalfInt> {
    (1i64..=96).prop_map(HalfInt::from_twice)
}

pub fn ring_axioms(a: &QSeries, b: &QSeries, c: &QSeries) -> Check {
    prop_assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    prop_assert_eq!(a.add(b), b.add(a));
    prop_assert!(a.sub(a).is_zero());
    prop_assert!(a.mul(b).mul(c).agrees_with(&a.mul(&b.mul(c))));
    prop_assert!(a.mul(b).agrees_with(&b.mul(a)));
    prop_assert!(a.mul(&b.add(c)).agrees_with(&a.mul(b).add(&a.mul(c))));
    Ok(())
}

pub fn invert_round_trip(a: &QSeries) -> Check {
    let one = a.mul(&a.invert().unwrap());
    prop_assert!(one.agrees_with(&QSeries::one(one.prec_tick())));
    Ok(())
}

pub fn powers(a: &QSeries, n: i64) -> Check {
    let mut p = QSeries::one(a.prec_tick() - a.min_tick());
    for _ in 0..n {
        p = p.mul(a);
    }
    prop_assert!(a.pow(n).unwrap().agrees_with(&p));
    prop_assert!(a.pow(-n).unwrap().mul(&p).agrees_with(&QSeries::one(1)));
    Ok(())
}

pub fn leibniz(a: &QSeries, b: &QSeries) -> Check {
    let lhs = a.mul(b).derivative(Var::Q);
    let rhs = a.derivative(Var::Q).mul(b).add(&a.mul(&b.derivative(Var::Q)));
    prop_assert!(lhs.agrees_with(&rhs));
    Ok(())
}

pub fn reversion_input() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, i64)> {
    (
        prop::collection::vec(-9i64..9, 16),
        prop::collection::vec(-5i64..5, 14),
        prop_oneof![Just(1i64), Just(-1), Just(2)],
    )
}

pub fn rebase_matches_lagrange(f: &[i64], tail: &[i64], lead: i64) -> Check {
    let prec = 16 * HALF_Q;
    let f = QSeries::from_int_coeffs(0, HALF_Q, prec, f);
    let mut phi = vec![0, lead];
    phi.extend_from_slice(tail);
    let phi = QSeries::from_int_coeffs(0, HALF_Q, prec, &phi);
    let alphas = rebase(&f, &phi, 12).unwrap();
    for r in 1..=12 {
        prop_assert_eq!(
            &alphas[r],
            &lagrange_coefficient(&f, &phi, r, Var::P).unwrap(),
            "r = {}",
            r
        );
    }
    Ok(())
}

pub fn even_odd(c: HalfInt, coeffs: &[i64]) -> Check {
    let t0 = modchar::vacuum_tick(c);
    let chi = QSeries::from_int_coeffs(t0, HALF_Q, t0 + coeffs.len() as i64 * HALF_Q, coeffs);
    let (even, odd) = even_odd_split(&chi, c);
    prop_assert_eq!(even.add(&odd), chi);
    prop_assert!(even.iter().all(|(t, x)| x.is_zero() || (t - t0) % 48 == 0));
    prop_assert!(odd.iter().all(|(t, x)| x.is_zero() || (t - t0) % 48 != 0));
    Ok(())
}

pub fn physical_rational(c: HalfInt) -> Check {
    let prec = PrecisionPolicy::whole_powers(3).unwrap();
    prop_assert!(modchar::virasoro_vacuum(c, prec).is_plain());
    prop_assert!(modchar::n1_vacuum(c, prec).is_plain());
    let hyp =
        bounds::min_weight_hypothesis(c, HalfInt::from_twice(1), &Default::default(), &Default::default()).unwrap();
    prop_assert!(hyp.character.base().is_plain());
    prop_assert!(hyp.character.parts().iter().all(|(_, s)| s.is_plain()));
    prop_assert!(hyp.shadow.base().is_plain());
    prop_assert!(hyp.shadow.parts().iter().all(|(_, s)| s.is_plain()));
    let (chi, shadow) = bounds::extremal_n1(c, prec).unwrap();
    prop_assert!(chi.is_plain() && shadow.is_plain());
    Ok(())
}

/// `η = q^{1/24} Σ (−1)^k q^{k(3k−1)/2}` through `q^n`.
pub fn euler_pentagonal(n: i64) -> bool {
    let eta = modchar::eta(1, PrecisionPolicy::whole_powers(n).unwrap()).unwrap();
    let mut want = vec![0i64; n as usize + 1];
    for k in -n..=n {
        let e = k * (3 * k - 1) / 2;
        if (0..=n).contains(&e) {
            want[e as usize] += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    want.iter()
        .enumerate()
        .all(|(e, w)| eta.coefficient_at_tick(2 + 48 * e as i64).unwrap() == Scalar::from_int(*w))
}

pub fn j_routes_agree(n: i64) -> bool {
    let prec = PrecisionPolicy::whole_powers(n).unwrap();
    modchar::j_invariant(false, prec) == modchar::j_from_hauptmodul(prec)
}

pub fn sweep_monotone(opts: &FeasibilityOptions) -> bool {
    let h = HalfInt::from_twice;
    bounds::table(h(1), h(96), h(1), opts)
        .unwrap()
        .iter()
        .all(|r| r.is_monotone())
}

/// Runs every randomized invariant with a fixed seed; returns the failures.
pub fn run_all(cases: u32) -> Vec<String> {
    let mut failures = Vec::new();
    let mut run = |name: &str, f: &mut dyn FnMut(&mut TestRunner) -> Result<(), String>| {
        let mut runner = TestRunner::new_with_rng(
            Config {
                cases,
                failure_persistence: None,
                ..Config::default()
            },
            proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
        );
        if let Err(e) = f(&mut runner) {
            failures.push(format!("{name}: {e}"));
        }
    };
    run("ring axioms", &mut |r| {
        r.run(&(series(), series(), series()), |(a, b, c)| ring_axioms(&a, &b, &c))
            .map_err(|e| e.to_string())
    });
    run("invert round-trip", &mut |r| {
        r.run(&unit_series(), |a| invert_round_trip(&a))
            .map_err(|e| e.to_string())
    });
    run("powers", &mut |r| {
        r.run(&(unit_series(), 0i64..4), |(a, n)| powers(&a, n))
            .map_err(|e| e.to_string())
    });
    run("Leibniz rule", &mut |r| {
        r.run(&(series(), series()), |(a, b)| leibniz(&a, &b))
            .map_err(|e| e.to_string())
    });
    run("rebase vs Lagrange", &mut |r| {
        r.run(&reversion_input(), |(f, t, l)| rebase_matches_lagrange(&f, &t, l))
            .map_err(|e| e.to_string())
    });
    run("even/odd recombination", &mut |r| {
        r.run(&(half_int(), prop::collection::vec(-9i64..9, 20)), |(c, v)| {
            even_odd(c, &v)
        })
        .map_err(|e| e.to_string())
    });
    run("zero sqrt2 part", &mut |r| {
        r.run(&half_int(), physical_rational).map_err(|e| e.to_string())
    });
    if !euler_pentagonal(60) {
        failures.push("Euler pentagonal identity".into());
    }
    if !j_routes_agree(10) {
        failures.push("j Eisenstein vs hauptmodul".into());
    }
    if !sweep_monotone(&FeasibilityOptions::default()) {
        failures.push("feasibility monotonicity".into());
    }
    failures
}
