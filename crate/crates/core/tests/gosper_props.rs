mod common;

use common::*;
use proptest::prelude::*;
use qreduce::gosper::{
    dispersion_set, dispersion_set_by_resultant, gosper_representation, gosper_solve, is_summable, satisfies_gosper_equation,
    structure_conditions, GosperRep,
};
use qreduce::reduction::{rational_reduce, telescoper, QuotientPair};
use qreduce::xalg::{xgcd, xmono, XShift};
use qreduce::{LPoly, Poly, XPoly, XRat};

/// `(a, b, ℓ)` where a and b share `s(x) ↔ s(Q^h x)` for a planted h, most of
/// the time.
fn dispersive_pair() -> impl Strategy<Value = (XPoly, XPoly, u32)> {
    (
        xpoly_unit_tc(2),
        xpoly_unit_tc(2),
        prop::collection::vec((xpoly_unit_tc(1), 0i64..=6), 0..=2),
        step(),
    )
        .prop_filter_map("nonconstant", |(u, v, planted, l)| {
            let (mut a, mut b) = (u, v);
            for (s, h) in planted {
                a = a.mul(&s.xshift(h, l));
                b = b.mul(&s);
            }
            (!a.is_constant() && !b.is_constant()).then_some((a, b, l))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dispersion_matches_direct_gcds((a, b, l) in dispersive_pair()) {
        let set = dispersion_set(&a, &b, l).unwrap();
        // oracle: gcd at every shift in a window that covers the planted ones
        let brute: Vec<usize> = (0..=12)
            .filter(|&h| !xgcd(&a, &b.xshift(h as i64, l)).unwrap().is_constant())
            .collect();
        let in_window: Vec<usize> = set.iter().copied().filter(|&h| h <= 12).collect();
        prop_assert_eq!(in_window, brute);
        for &h in set.iter().filter(|&&h| h > 12) {
            prop_assert!(!xgcd(&a, &b.xshift(h as i64, l)).unwrap().is_constant());
        }
    }

    #[test]
    fn valuation_and_resultant_pruning_agree(
        (a, b, l) in dispersive_pair().prop_filter("small", |(a, b, _)| {
            a.degree().unwrap() * b.degree().unwrap() <= 9
        }),
    ) {
        prop_assert_eq!(dispersion_set(&a, &b, l).unwrap(), dispersion_set_by_resultant(&a, &b, l).unwrap());
    }

    #[test]
    fn representation_invariant((a, b, l) in dispersive_pair()) {
        let rep = gosper_representation(&a, &b, l).unwrap();
        prop_assert!(dispersion_set(&rep.a, &rep.b, l).unwrap().is_empty());
        let rebuilt = XRat::new(rep.a.mul(&rep.c.xshift(1, l)), rep.b.mul(&rep.c)).unwrap();
        prop_assert_eq!(rebuilt, XRat::new(a, b).unwrap());
    }
}

/// A Laurent polynomial with valuation in [−3, 3] and degree span ≤ 3.
fn laurent() -> impl Strategy<Value = LPoly> {
    (-3i64..=3, prop::collection::vec(coeff(), 1..=4))
        .prop_map(|(v, cs)| LPoly::new(Poly::new(cs), v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solver_round_trip(
        a0 in xpoly_upto(2).prop_filter("nonzero", |p| !p.is_zero()),
        b0 in xpoly_upto(2).prop_filter("nonzero", |p| !p.is_zero()),
        g in laurent(),
        l in step(),
    ) {
        // a = x^s·a0, b = x^s·b0 make c a polynomial even for negative valuations
        let s = (-g.valuation()).max(0) as usize;
        let (a, b) = (a0.shift_up(s), b0.shift_up(s));
        let c = g.xshift(1, l).mul_poly(&a).sub(&g.mul_poly(&b.xshift(-1, l)));
        let c = c.to_poly().expect("c is a polynomial by construction");
        let rep = GosperRep { a, b, c, step: l };
        let sol = gosper_solve(&rep);
        prop_assert!(sol.is_some(), "constructed instance must be solvable");
        prop_assert!(satisfies_gosper_equation(&rep, &sol.unwrap()));
    }
}

/// `B` of degree 1–2 with a nonzero constant term, and `A` of degree ≤ 3.
fn multiple() -> impl Strategy<Value = (XPoly, XPoly)> {
    (xpoly_upto(3), (1usize..=2).prop_flat_map(xpoly_exact))
        .prop_filter_map("B(0) ≠ 0, A ≠ 0", |(big_a, mut big_b)| {
            if big_b.coeff(0).is_zero() {
                big_b = big_b.add(&XPoly::one());
            }
            (!big_a.is_zero() && !big_b.coeff(0).is_zero()).then_some((big_a, big_b))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn poles_obstruct_summability(pair in generic_pair(2), (big_a, big_b) in multiple()) {
        // work with A/B in lowest terms
        let r = XRat::new(big_a, big_b).unwrap();
        let (big_a, big_b) = (r.num().clone(), r.den().clone());
        prop_assume!(!pair.a.is_zero() && !pair.b.is_zero());
        let rep = gosper_representation(&pair.a, &pair.b, pair.step).unwrap();
        let report = structure_conditions(&big_a, &big_b, &rep).unwrap();
        let outcome = is_summable(&pair, &r).unwrap();
        if report.conditions_hold() && !report.b_divides_a {
            prop_assert!(outcome.is_none());
        }
        if let Some(rho) = outcome {
            prop_assert_eq!(telescoper(&pair, &rho).unwrap(), r);
            if report.conditions_hold() {
                prop_assert!(report.b_divides_a);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rational_reduction_is_confirmed_by_gosper(
        (pair, spec) in factored_instance(1),
        p in xpoly_upto(3).prop_filter("nonzero", |p| !p.is_zero()),
    ) {
        let Ok(out) = rational_reduce(&pair, &spec, &p) else {
            // degenerate shift pairs are rejected by design
            return Ok(());
        };
        let r = XRat::from_poly(p).sub(&XRat::new(out.remainder, out.denominator).unwrap());
        prop_assume!(!r.is_zero());
        let rho = is_summable(&pair, &r).unwrap();
        prop_assert!(rho.is_some());
        prop_assert_eq!(telescoper(&pair, &rho.unwrap()).unwrap(), r);
    }
}

#[test]
fn corpus_derivations_are_confirmed_by_gosper() {
    for (base, spec) in derivation_specs() {
        let d = qreduce::identity::generate(&base, &spec, "derived").unwrap();
        let r = d.base.multiplier.sub(&d.output.multiplier);
        let rho = is_summable(&base.term.pair, &r).unwrap().expect("summable");
        assert_eq!(telescoper(&base.term.pair, &rho).unwrap(), r);
        // the two certificates differ by a solution of the homogeneous equation
        let diff = rho.sub(&d.certificate);
        assert!(telescoper(&base.term.pair, &diff).unwrap().is_zero());
    }
}

#[test]
fn structure_condition_examples() {
    let pair = cubic_pair();
    let rep = gosper_representation(&pair.a, &pair.b, 1).unwrap();
    // B divides b itself: fails at h = 0
    let report = structure_conditions(&XPoly::one(), &om(qp(3), 2), &rep).unwrap();
    assert!(!report.coprime_with_b);
    // B = 1 + x against a trivial representation
    let trivial = GosperRep {
        a: XPoly::one(),
        b: XPoly::one(),
        c: XPoly::one(),
        step: 1,
    };
    let b_lin = xp(&[(c(1), 0), (c(1), 1)]);
    let a_quad = b_lin.mul(&om(c(1), 1));
    let report = structure_conditions(&a_quad, &b_lin, &trivial).unwrap();
    assert!(report.conditions_hold() && report.b_divides_a);
    // 1/(1 − x) against the geometric term q^k: conditions hold, not summable
    let geometric = QuotientPair::new(xmono(q(), 0), XPoly::one(), 1).unwrap();
    let r = XRat::new(XPoly::one(), om(c(1), 1)).unwrap();
    let rep = gosper_representation(&geometric.a, &geometric.b, 1).unwrap();
    let report = structure_conditions(&XPoly::one(), &om(c(1), 1), &rep).unwrap();
    assert!(report.conditions_hold() && !report.b_divides_a);
    assert_eq!(is_summable(&geometric, &r).unwrap(), None);
}
