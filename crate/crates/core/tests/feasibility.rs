mod common;

use common::{h, ints};
use num_bigint::BigInt;
use svoa_core::bounds::{self, Extra, FeasibilityOptions};
use svoa_core::feasibility::{Status, Step};
use svoa_core::modchar;
use svoa_core::svoa::shadow_tick;
use svoa_core::Scalar;

fn opts() -> FeasibilityOptions {
    FeasibilityOptions::default()
}

#[test]
fn worked_example_fixes_four_coefficients() {
    let c = h("33.5");
    let hyp = bounds::min_weight_hypothesis(c, h("3/2"), &Extra::default(), &opts()).unwrap();
    assert_eq!(hyp.spec.a, ints(&[1, -67, 670, -201]));
    assert_eq!(hyp.problem.vars, vec![4]);

    let t0 = modchar::vacuum_tick(c);
    let c4 = hyp.character.coefficient_at_tick(t0 + 96).unwrap();
    assert_eq!(c4.to_string(), "56816 + a4");
    let b0 = hyp.shadow.coefficient_at_tick(shadow_tick(c, 4)).unwrap();
    assert_eq!(b0.coefficient(4), Scalar::from_ratio(1, 32768));
}

#[test]
fn worked_example_certificate() {
    let r = bounds::test_min_weight_exceeds(h("33.5"), h("3/2"), &opts()).unwrap();
    assert_eq!(r.status, Status::Infeasible);
    let cert = r.certificate.unwrap();
    cert.replay().unwrap();
    let lines = cert.narrate();
    assert_eq!(
        lines,
        vec![
            "a4 >= 0 from B0 >= 0",
            "a4 <= 28389 from B1 >= 0",
            "B0 integral forces a4 = 0 mod 32768",
            "a4 in {0}",
            "[a4=0] B1 integral: 201/8 - 29/32768*a4 = 201/8 violates integral",
        ]
    );
}

#[test]
fn tampered_certificates_do_not_replay() {
    let r = bounds::test_min_weight_exceeds(h("33.5"), h("3/2"), &opts()).unwrap();
    let cert = r.certificate.unwrap();

    // widen the branch
    let mut bad = cert.clone();
    for s in &mut bad.steps {
        if let Step::Branch { values, .. } = s {
            values.push(BigInt::from(32768));
        }
    }
    assert!(bad.replay().is_err());

    // drop the congruence: the branch no longer follows
    let mut bad = cert.clone();
    bad.steps.retain(|s| !matches!(s, Step::Congruence { .. }));
    assert!(bad.replay().is_err());

    // wrong upper bound
    let mut bad = cert;
    for s in &mut bad.steps {
        if let Step::Bound { bound, .. } = s {
            *bound += num_rational::BigRational::from_integer(1.into());
        }
    }
    assert!(bad.replay().is_err());
}

#[test]
fn weight_two_at_33_and_a_half_fails_at_the_first_shadow_coefficient() {
    let r = bounds::test_min_weight_exceeds(h("33.5"), h("2"), &opts()).unwrap();
    assert_eq!(r.status, Status::Infeasible);
    let cert = r.certificate.unwrap();
    cert.replay().unwrap();
    assert_eq!(
        cert.narrate(),
        vec!["B0 >= 0: -56815/32768 = -56815/32768 violates >= 0"]
    );
}

#[test]
fn witnesses_satisfy_every_constraint() {
    for (c, mu) in [("33.5", "1"), ("23.5", "1"), ("48", "5/2"), ("24", "3/2")] {
        let hyp = bounds::min_weight_hypothesis(h(c), h(mu), &Extra::default(), &opts()).unwrap();
        let r = bounds::test_min_weight_exceeds(h(c), h(mu), &opts()).unwrap();
        assert_eq!(r.status, Status::Feasible, "c = {c}, mu = {mu}");
        let w = r.witness.unwrap();
        for con in &hyp.problem.constraints {
            let v = con.form.eval(&w).unwrap();
            assert!(
                con.holds_for(v.as_rational().unwrap()),
                "{} fails at c = {c}",
                con.label
            );
        }
    }
}

#[test]
fn baby_monster_character_at_23_and_a_half() {
    let c = h("23.5");
    let r = bounds::test_min_weight_exceeds(c, h("1"), &opts()).unwrap();
    let hyp = bounds::min_weight_hypothesis(c, h("1"), &Extra::default(), &opts()).unwrap();
    let chi = hyp.character.evaluate(&r.witness.unwrap()).unwrap();
    let t0 = modchar::vacuum_tick(c);
    assert_eq!(chi.coefficient_at_tick(t0 + 72).unwrap(), Scalar::from_int(4371));
}

#[test]
fn extremal_weight_at_48_is_three() {
    let r = bounds::test_min_weight_exceeds(h("48"), h("3"), &opts()).unwrap();
    assert_eq!(r.status, Status::Infeasible);
    r.certificate.unwrap().replay().unwrap();

    // the extremal VOA itself: a_6 = 2^24
    let r = bounds::test_min_weight_exceeds(h("48"), h("5/2"), &opts()).unwrap();
    assert_eq!(r.status, Status::Feasible);
    assert_eq!(r.witness.unwrap()[&6], BigInt::from(1) << 24);
}

#[test]
fn maxodd_certificates_replay() {
    for c in ["24", "48", "72", "96"] {
        let r = bounds::verify_maxodd(h(c), &opts()).unwrap();
        assert_eq!(r.status, Status::Infeasible, "c = {c}");
        r.certificate.unwrap().replay().unwrap();
    }
    assert!(bounds::verify_maxodd(h("25"), &opts()).is_err());
}

#[test]
fn maxodd_at_24_fails_on_the_shadow_ground_state() {
    let r = bounds::verify_maxodd(h("24"), &opts()).unwrap();
    assert_eq!(r.certificate.unwrap().narrate(), vec!["B0 = 0: 1 = 1 violates = 0"]);
}

#[test]
fn noneighbour_finds_exactly_two_families() {
    let r = bounds::noneighbour_check(&opts()).unwrap();
    assert_eq!(r.result.status, Status::Feasible);
    let a: Vec<Vec<i64>> = r
        .families
        .iter()
        .map(|f| f.a.iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect();
    assert_eq!(
        a,
        vec![
            vec![1, -96, 2352, -10496, 25, -4096, 0],
            vec![1, -96, 2352, -10496, 25, 0, 0]
        ]
    );
}

#[test]
fn tiny_enumeration_cap_is_inconclusive() {
    let o = FeasibilityOptions { enum_cap: 0, ..opts() };
    let r = bounds::test_min_weight_exceeds(h("33.5"), h("1"), &o).unwrap();
    assert_eq!(r.status, Status::Inconclusive);
    assert!(r.note.is_some());
}

#[test]
fn certificate_json_carries_the_narrative() {
    let r = bounds::test_min_weight_exceeds(h("33.5"), h("3/2"), &opts()).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["status"], "Infeasible");
    let narrative = v["certificate"]["narrative"].as_array().unwrap();
    assert_eq!(narrative.len(), 5);
}
