mod common;

use common::{h, published_upper};
use num_rational::BigRational;
use svoa_core::bounds::{self, Annotation, FeasibilityOptions, CLASSIFICATION_DEPENDENT};
use svoa_core::feasibility::Status;
use svoa_core::{HalfInt, PrecisionPolicy, Scalar};

fn q(s: &str) -> BigRational {
    svoa_core::scalar::parse_rational(s).unwrap()
}

// Partition counts by brute-force recursion, independent of the library's product loops.
fn count_parts(n: usize, min_part: usize, step: usize, distinct: bool) -> i128 {
    if n == 0 {
        return 1;
    }
    let mut total = 0;
    let mut p = min_part;
    while p <= n {
        let next = if distinct { p + step } else { p };
        total += count_parts(n - p, next, step, distinct);
        p += step;
    }
    total
}

/// Coefficients of `2c·B·A' − B'·A` for `c = num/den`, scaled by `den`.
fn lemma_oracle(num: i128, den: i128, len: usize) -> Vec<i128> {
    let a: Vec<i128> = (0..=len).map(|n| count_parts(n, 1, 2, true)).collect();
    let b: Vec<i128> = (0..=len).map(|n| count_parts(n, 4, 2, false)).collect();
    (0..len)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let j = n - i;
                    // B_i·(j+1)A_{j+1} and (i+1)B_{i+1}·A_j
                    2 * num * b[i] * (j as i128 + 1) * a[j + 1] - den * (i as i128 + 1) * b[i + 1] * a[j]
                })
                .sum()
        })
        .collect()
}

#[test]
fn lemma_coefficients_match_a_direct_count() {
    let len = 60;
    for (c, num, den) in [("1/2", 1, 2), ("1.01", 101, 100), ("2", 2, 1), ("24", 24, 1)] {
        let oracle = lemma_oracle(num, den, len);
        let r = bounds::verify_coeffpos(&q(c), len).unwrap();
        let zeros: Vec<usize> = (0..len).filter(|&n| oracle[n] == 0).collect();
        let first_negative = (0..len).find(|&n| oracle[n] < 0);
        assert_eq!(r.zeros, zeros, "c = {c}");
        assert_eq!(r.first_negative, first_negative, "c = {c}");
    }
}

#[test]
fn lemma_p1_coefficient_vanishes_for_every_c() {
    for c in ["1/2", "1.01", "2", "24", "48", "1000"] {
        let r = bounds::verify_coeffpos(&q(c), 200).unwrap();
        assert!(r.zeros.contains(&1), "c = {c}");
        assert!(!r.all_positive());
    }
}

#[test]
fn lemma_positivity_through_3000() {
    let (ba, ab) = bounds::lemma_parts(3000);
    for c in ["1.01", "2", "24", "48"] {
        let r = bounds::coeffpos_from_parts(&q(c), &ba, &ab);
        assert!(r.positive_apart_from_p1(), "c = {c}: {}", r.verdict());
        assert_eq!(r.verdict(), "all positive except the coefficient of p^1, which is zero");
    }
    let r = bounds::coeffpos_from_parts(&q("1/2"), &ba, &ab);
    assert_eq!(r.first_negative, Some(10));
}

#[test]
fn coeffpos_rejects_bad_input() {
    assert!(bounds::verify_coeffpos(&q("0"), 10).is_err());
    assert!(bounds::verify_coeffpos(&q("-1"), 10).is_err());
    assert!(bounds::verify_coeffpos(&q("1"), 0).is_err());
}

#[test]
fn newbound_exponents() {
    for (c, e) in [("32", 31), ("33.5", 28), ("36", 23), ("40", 15), ("48", 47)] {
        let c = h(c);
        let m = c.floor_div(24) + 1;
        // 24·2m − 2c − 1
        assert_eq!(48 * m - c.twice() - 1, e);
        let r = bounds::verify_newbound(c).unwrap();
        assert_eq!(r.exponent, e);
        assert_eq!(r.m as i64, m);
    }
}

#[test]
fn newbound_contradiction_holds() {
    for c in ["32", "33.5", "36", "40", "48"] {
        let r = bounds::verify_newbound(h(c)).unwrap();
        assert!(r.routes_agree(), "c = {c}");
        assert!(r.a2m_negative(), "c = {c}: a_2m = {}", r.a2m_rebase);
        assert!(r.betas_positive_where_used(), "c = {c}");
        assert!(r.beta_rr_matches_formula(), "c = {c}");
        assert!(r.holds());
    }
}

#[test]
fn newbound_beta_at_40() {
    let r = bounds::verify_newbound(h("40")).unwrap();
    assert_eq!(r.r, 1);
    assert_eq!(r.beta00, Scalar::from_int(1 << 20));
    assert_eq!(r.beta_rr, Scalar::from_int(256));
    assert_eq!(r.betas[1].rebase, Scalar::from_int(256));
    // entries beyond r never enter the identity
    assert!(r.betas.iter().filter(|b| b.n > r.r).all(|b| b.rebase.is_zero()));
}

#[test]
fn newbound_agrees_with_feasibility() {
    // a_{2m} < 0 means μ(V) > m is impossible outright
    let opts = FeasibilityOptions::default();
    for c in ["32", "33.5", "36", "40"] {
        let c = h(c);
        let mu = HalfInt::from_int(c.floor_div(24) + 1);
        let r = bounds::test_min_weight_exceeds(c, mu, &opts).unwrap();
        assert_eq!(r.status, Status::Infeasible, "c = {c}");
    }
}

#[test]
fn n1_exponents_and_signs() {
    for c in ["12", "24", "36", "48", "72"] {
        let c = h(c);
        let r = bounds::verify_n1_bound(c).unwrap();
        assert_eq!(r.exponent, 23 - c.twice() + 24 * c.floor_div(12));
        assert!(r.exponent_ok());
        assert!(r.routes_agree(), "c = {c}");
        assert!(r.holds(), "c = {c}");
    }
}

#[test]
fn n1_at_23_and_a_half() {
    let c = h("23.5");
    let (chi, _) = bounds::extremal_n1(c, PrecisionPolicy::whole_powers(3).unwrap()).unwrap();
    let t0 = svoa_core::modchar::vacuum_tick(c);
    assert_eq!(chi.coefficient_at_tick(t0 + 72).unwrap(), Scalar::from_int(4371));

    // the N=1 vacuum contributes exactly one state at weight 3/2
    let vac = svoa_core::modchar::n1_vacuum(c, PrecisionPolicy::whole_powers(3).unwrap());
    assert_eq!(vac.coefficient_at_tick(t0 + 72).unwrap(), Scalar::from_int(1));

    let r = bounds::verify_n1_bound(c).unwrap();
    assert!(r.is_exceptional());
    // A_{k+1} sits at q^1 and vanishes; the first surviving term is at q^{3/2}
    assert!(r.formula.is_zero() && r.stripped.is_zero());
    assert_eq!(r.first_nonzero, Some((h("3/2"), Scalar::from_int(4370))));
}

#[test]
fn n1_shadow_leading_coefficients() {
    for (c, lead) in [("48", 1), ("72", 1), ("96", -213)] {
        let r = bounds::verify_n1_bound(h(c)).unwrap();
        assert_eq!(r.shadow_leading, Scalar::from_int(lead), "c = {c}");
    }
}

#[test]
fn table_sweep_against_the_published_bounds() {
    let opts = FeasibilityOptions::default();
    let rows = bounds::table(h("1/2"), h("48"), h("1/2"), &opts).unwrap();
    assert_eq!(rows.len(), 96);
    let mut off = Vec::new();
    for r in &rows {
        assert!(r.is_monotone(), "c = {}", r.c);
        let got = r.analytic_mu_max.unwrap();
        let want = published_upper(r.c);
        match r.annotation {
            Annotation::ClassificationDependent => {
                assert_eq!(got, h("1"), "c = {}", r.c);
                assert_eq!(want, h("1/2"), "c = {}", r.c);
            }
            Annotation::None if got != want => off.push((r.c, got, want)),
            Annotation::None => {}
        }
    }
    // the single disagreement, where 3/2 is already refuted by hand
    assert_eq!(off, vec![(h("35.5"), h("3/2"), h("2"))]);
}

#[test]
fn classification_dependent_rows_are_annotated() {
    let opts = FeasibilityOptions::default();
    for &c in &CLASSIFICATION_DEPENDENT {
        let r = bounds::analytic_mu_max(c, &opts).unwrap();
        assert_eq!(r.annotation.to_string(), "classification_dependent");
    }
    let r = bounds::analytic_mu_max(h("24"), &opts).unwrap();
    assert_eq!(r.annotation.to_string(), "");
}

#[test]
fn general_bound_values() {
    assert_eq!(bounds::general_bound(h("23.5")), h("3/2"));
    assert_eq!(bounds::general_bound(h("23")), h("1"));
    assert_eq!(bounds::general_bound(h("24")), h("2"));
    assert_eq!(bounds::general_bound(h("48")), h("3"));
}
