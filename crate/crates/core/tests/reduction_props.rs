mod common;

use common::*;
use proptest::prelude::*;
use qreduce::reduction::{
    basis_poly, degree_bound, is_degenerate, rational_reduce, reduce_poly, reduce_poly_with,
    residual_exponents, shift_pair, shift_product, telescoper, QuotientPair, ShiftPairSpec,
};
use qreduce::xalg::{xmono, XShift};
use qreduce::{Poly, QRat, XPoly, XRat};

/// Pair plus a generator g; degenerate pairs get `deg g = m0` half the time.
fn pair_and_generator() -> impl Strategy<Value = (QuotientPair, XPoly, Option<usize>)> {
    prop_oneof![
        (generic_pair(5), xpoly_upto(4)).prop_map(|(p, g)| (p, g, None)),
        degenerate_pair(5).prop_flat_map(|(p, m0)| {
            prop_oneof![xpoly_exact(m0), xpoly_upto(4)]
                .prop_map(move |g| (p.clone(), g, Some(m0)))
        }),
    ]
}

/// Checks `p = Σ c_i·p_i + p̃` and that p̃ lives on the residual set.
fn assert_exact(pair: &QuotientPair, p: &XPoly, gens: &dyn Fn(usize) -> XPoly) {
    let out = reduce_poly_with(pair, p, gens).unwrap();
    let mut rebuilt = out.remainder.clone();
    for (&i, ci) in &out.coeffs {
        rebuilt = rebuilt.add(&basis_poly(pair, i, Some(&gens(i))).unwrap().scale(ci));
    }
    assert_eq!(&rebuilt, p);
    let support = residual_exponents(pair).unwrap();
    for (i, ci) in out.remainder.coeffs().iter().enumerate() {
        assert!(ci.is_zero() || support.contains(&i), "x^{i} outside residual set");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn degree_law((pair, g, planted) in pair_and_generator()) {
        let d = degree_bound(&pair).unwrap();
        let m = g.degree().unwrap();
        let m0 = is_degenerate(&pair).m0;
        if let Some(m0_planted) = planted {
            prop_assert_eq!(m0, Some(m0_planted));
        }
        let p = basis_poly(&pair, m, Some(&g)).unwrap();
        if m0 == Some(m) {
            prop_assert!(p.degree().is_none_or(|k| k < d + m));
        } else {
            prop_assert_eq!(p.degree(), Some(d + m));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn remainder_is_independent_of_generators(
        pair in generic_pair(3),
        p in xpoly_upto(6),
        lower in prop::collection::vec(prop::collection::vec(coeff(), 0..=6), 7),
    ) {
        // monic generator of degree i with random lower coefficients
        let gens = |i: usize| {
            let mut cs: Vec<QRat> = lower[i].iter().take(i).cloned().collect();
            cs.resize(i, QRat::zero());
            cs.push(QRat::one());
            Poly::new(cs)
        };
        let plain = reduce_poly(&pair, &p).unwrap();
        let other = reduce_poly_with(&pair, &p, gens).unwrap();
        prop_assert_eq!(plain.remainder, other.remainder);
    }

    #[test]
    fn reduction_is_exact(
        case in prop_oneof![
            generic_pair(3).prop_map(|p| (p, None)),
            degenerate_pair(3).prop_map(|(p, m)| (p, Some(m))),
        ],
        p in xpoly_upto(7),
    ) {
        let (pair, _) = case;
        assert_exact(&pair, &p, &|i| xmono(QRat::one(), i));
        let out = reduce_poly(&pair, &p).unwrap();
        // the certificate telescopes the difference
        let lhs = XRat::from_poly(p.sub(&out.remainder));
        prop_assert_eq!(telescoper(&pair, &out.certificate).unwrap(), lhs);
        // membership: p ∈ S_{a,b} reduces to zero
        let member = basis_poly(&pair, 1, None).unwrap().add(&basis_poly(&pair, 0, None).unwrap());
        if is_degenerate(&pair).m0.is_none() {
            prop_assert!(reduce_poly(&pair, &member).unwrap().remainder.is_zero());
        }
    }

    #[test]
    fn shift_product_composes(
        f in xpoly_upto(2),
        m in 0i64..=3,
        n in 0i64..=3,
        l in step(),
    ) {
        let joint = shift_product(&f, m + n, l);
        let split = shift_product(&f, m, l).mul(&shift_product(&f, n, l).xshift(m, l));
        prop_assert_eq!(joint, split);
        // negative orders are the backward shift of the forward product
        prop_assert_eq!(shift_product(&f, -n, l), shift_product(&f, n, l).xshift(-n, l));
        let deg = f.degree().unwrap() as i64;
        prop_assert_eq!(shift_product(&f, -n, l).degree(), Some((n * deg) as usize));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shift_pair_degeneracy_criterion((pair, spec) in factored_instance(3)) {
        let shifted = shift_pair(&pair, &spec).unwrap();
        let (da, db) = (pair.a.degree().unwrap(), pair.b.degree().unwrap());
        prop_assert_eq!(shifted.a.degree(), Some(da));
        prop_assert_eq!(shifted.b.degree(), Some(db));

        // oracle: lc b / lc a = q^j with ℓ | j and j/ℓ + n1·deg a1 + n2·deg b1 ≥ d
        let l = pair.step as i64;
        let ratio = pair.b.lc().unwrap().div(pair.a.lc().unwrap()).unwrap();
        let weight = (spec.n1 as usize * spec.a1.degree().unwrap()
            + spec.n2 as usize * spec.b1.degree().unwrap()) as i64;
        let expected = da == db
            && match ratio.power_of_q().unwrap() {
                Some(j) => j % l == 0 && j / l + weight >= da as i64,
                None => false,
            };
        prop_assert_eq!(is_degenerate(&shifted).m0.is_some(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn rational_remainder_degree_bound(
        (pair, spec) in factored_instance(2),
        p in xpoly_upto(3),
    ) {
        let shifted = shift_pair(&pair, &spec).unwrap();
        prop_assume!(is_degenerate(&pair).m0.is_none() && is_degenerate(&shifted).m0.is_none());
        let out = rational_reduce(&pair, &spec, &p).unwrap();
        let d = degree_bound(&pair).unwrap();
        prop_assert!(out.remainder.degree().is_none_or(|k| k < d));

        // exact telescoping identity, checked by cross-multiplication
        let lhs = XRat::from_poly(p.clone()).sub(&XRat::new(out.remainder.clone(), out.denominator.clone()).unwrap());
        let t = telescoper(&pair, &out.certificate).unwrap();
        prop_assert_eq!(lhs.num().mul(t.den()), t.num().mul(lhs.den()));
    }
}

#[test]
fn shift_pair_examples() {
    // ℓ = 2: A = x(q−x)²(q+x)(1−qx), B = q²(1−q⁴x²)³
    let pair = inv_pi_256_pair();
    let a1 = om(q(), 1).mul(&om(qp(2), 2)).scale(&(c(1) / (one_minus_q() * one_minus_q())));
    let spec = ShiftPairSpec {
        a1,
        b1: XPoly::one(),
        n1: 1,
        n2: 0,
    };
    let s = shift_pair(&pair, &spec).unwrap();
    let q_minus_x = xp(&[(q(), 0), (c(-1), 1)]);
    let q_plus_x = xp(&[(q(), 0), (c(1), 1)]);
    let big_a = x().mul(&q_minus_x.pow(2)).mul(&q_plus_x).mul(&om(q(), 1));
    let big_b = om(qp(4), 2).pow(3).scale(&qp(2));
    // the pair is determined up to a common scalar
    let ratio = s.a.lc().unwrap().div(big_a.lc().unwrap()).unwrap();
    assert_eq!(s.a, big_a.scale(&ratio));
    assert_eq!(s.b, big_b.scale(&ratio));
    assert_eq!(shift_pair(&pair, &ShiftPairSpec::trivial()).unwrap(), pair);
}
