#![allow(dead_code)]

use proptest::prelude::*;
use qreduce::field::rat;
use qreduce::identity::{PochFactor, PochTerm, SeriesIdentity, TermSpec};
use qreduce::reduction::{QuotientPair, ShiftPairSpec};
use qreduce::xalg::xmono;
use qreduce::{Poly, QRat, XPoly, XRat};

pub fn q() -> QRat {
    QRat::q()
}

pub fn qp(m: i64) -> QRat {
    QRat::q_pow(m)
}

pub fn c(n: i64) -> QRat {
    QRat::from_int(n)
}

/// Integer polynomial in q with the given ascending coefficients.
pub fn qpoly(cs: &[i64]) -> QRat {
    QRat::from_poly(Poly::new(cs.iter().map(|&n| rat(n)).collect()))
}

pub fn xp(terms: &[(QRat, usize)]) -> XPoly {
    terms
        .iter()
        .fold(XPoly::zero(), |acc, (cf, n)| acc.add(&xmono(cf.clone(), *n)))
}

pub fn x() -> XPoly {
    xmono(QRat::one(), 1)
}

/// `1 − cf·x^n`
pub fn om(cf: QRat, n: usize) -> XPoly {
    xp(&[(c(1), 0), (-cf, n)])
}

pub fn one_minus_q() -> QRat {
    c(1) - q()
}

pub fn over(p: XPoly, den: XPoly) -> XRat {
    XRat::new(p, den).unwrap()
}

// ---- the series used throughout the tests ----

pub fn cubic_pair() -> QuotientPair {
    let a = xp(&[(q(), 1)]).mul(&om(q(), 1).pow(3)).mul(&om(-q(), 1));
    QuotientPair::new(a, om(qp(3), 2).pow(3), 1).unwrap()
}

pub fn alternating_pair() -> QuotientPair {
    let a = xp(&[(-q(), 1)]).mul(&om(q(), 1).pow(3));
    QuotientPair::new(a, om(qp(2), 1).pow(3), 2).unwrap()
}

pub fn inv_pi_256_pair() -> QuotientPair {
    let a = xp(&[(q(), 1)]).mul(&om(q(), 1).pow(2)).mul(&om(qp(2), 2));
    QuotientPair::new(a, om(qp(4), 2).pow(3), 2).unwrap()
}

fn poch(base: QRat, modulus: u32, exponent: i32) -> PochFactor {
    PochFactor {
        base,
        modulus,
        exponent,
    }
}

/// `Σ q^{k(k+1)/2}[3k+2]·(q;q)_k³(−q;q)_k/(q³;q²)_k³ = (1−q)²(q²;q²)⁴/(q;q²)⁴`
pub fn cubic_identity() -> SeriesIdentity {
    SeriesIdentity {
        name: "pi2-over-2".into(),
        term: TermSpec::new(cubic_pair(), c(1)).unwrap(),
        multiplier: XRat::from_poly(om(qp(2), 3).scale(&(c(1) / one_minus_q()))),
        rhs: vec![PochTerm {
            prefactor: one_minus_q() * one_minus_q(),
            factors: vec![poch(qp(2), 2, 4), poch(q(), 2, -4)],
        }],
    }
}

pub fn alternating_rhs(sign: i64) -> Vec<PochTerm> {
    vec![PochTerm {
        prefactor: c(sign),
        factors: vec![poch(q(), 2, 1), poch(qp(3), 2, 1), poch(qp(2), 2, -2)],
    }]
}

/// `Σ (−1)^k q^{k²}[4k+1]·(q;q²)_k³/(q²;q²)_k³ = (q;q²)(q³;q²)/(q²;q²)²`
pub fn alternating_identity() -> SeriesIdentity {
    SeriesIdentity {
        name: "inv-pi-alternating".into(),
        term: TermSpec::new(alternating_pair(), c(1)).unwrap(),
        multiplier: XRat::from_poly(om(q(), 2).scale(&(c(1) / one_minus_q()))),
        rhs: alternating_rhs(1),
    }
}

pub fn inv_pi_256_rhs(prefactor: QRat) -> Vec<PochTerm> {
    vec![PochTerm {
        prefactor,
        factors: vec![poch(qp(2), 4, 1), poch(qp(6), 4, 1), poch(qp(4), 4, -2)],
    }]
}

/// `Σ q^{k²}[6k+1]·(q;q²)_k²(q²;q⁴)_k/(q⁴;q⁴)_k³ = (1+q)(q²;q⁴)(q⁶;q⁴)/(q⁴;q⁴)²`
pub fn inv_pi_256_identity() -> SeriesIdentity {
    SeriesIdentity {
        name: "inv-pi-256".into(),
        term: TermSpec::new(inv_pi_256_pair(), c(1)).unwrap(),
        multiplier: XRat::from_poly(om(q(), 3).scale(&(c(1) / one_minus_q()))),
        rhs: inv_pi_256_rhs(c(1) + q()),
    }
}

/// Shift-pair choices used to derive new identities, with the base each
/// applies to.
pub fn derivation_specs() -> Vec<(SeriesIdentity, ShiftPairSpec)> {
    let omq = || XPoly::one().scale(&(c(1) / one_minus_q()));
    let spec = |a1: XPoly, b1: XPoly, n1, n2| ShiftPairSpec { a1, b1, n1, n2 };
    let qa1 = om(q(), 1).scale(&(q() / one_minus_q()));
    let b1 = om(qp(2), 1).scale(&(c(1) / one_minus_q()));
    let cubic_b1 = om(qp(3), 2).scale(&(c(1) / one_minus_q()));
    let ram_a1 = om(q(), 1).mul(&om(qp(2), 2)).mul(&omq()).mul(&omq());
    vec![
        (cubic_identity(), spec(XPoly::one(), cubic_b1.pow(2), 0, 1)),
        (cubic_identity(), spec(XPoly::one(), cubic_b1, 0, 2)),
        (alternating_identity(), spec(qa1.clone(), b1.clone(), 1, 1)),
        (alternating_identity(), spec(qa1.pow(2), XPoly::one(), 1, 0)),
        (alternating_identity(), spec(qa1.pow(3), XPoly::one(), 1, 0)),
        (alternating_identity(), spec(XPoly::one(), b1.pow(2), 0, 1)),
        (inv_pi_256_identity(), spec(ram_a1.clone(), XPoly::one(), 1, 0)),
        (
            inv_pi_256_identity(),
            spec(ram_a1.mul(&om(q(), 1)).mul(&omq()), XPoly::one(), 1, 0),
        ),
    ]
}

// ---- strategies ----

/// A polynomial in q with up to three coefficients in [−3, 3].
pub fn coeff() -> impl Strategy<Value = QRat> {
    prop::collection::vec(-3i64..=3, 1..=3).prop_map(|v| qpoly(&v))
}

pub fn nonzero_coeff() -> impl Strategy<Value = QRat> {
    coeff().prop_filter("nonzero", |c| !c.is_zero())
}

/// `±q^e` or `2q^e`: leading coefficients whose ratios are often q-powers.
pub fn unit_coeff() -> impl Strategy<Value = QRat> {
    (prop_oneof![Just(1i64), Just(-1), Just(2)], 0i64..=3).prop_map(|(s, e)| c(s) * qp(e))
}

/// An x-polynomial of degree exactly `deg`.
pub fn xpoly_exact(deg: usize) -> impl Strategy<Value = XPoly> {
    (prop::collection::vec(coeff(), deg), nonzero_coeff()).prop_map(|(mut cs, lc)| {
        cs.push(lc);
        Poly::new(cs)
    })
}

/// An x-polynomial of degree exactly `deg` with leading coefficient `lc`.
pub fn xpoly_with_lc(deg: usize, lc: QRat) -> impl Strategy<Value = XPoly> {
    prop::collection::vec(coeff(), deg).prop_map(move |mut cs| {
        cs.push(lc.clone());
        Poly::new(cs)
    })
}

pub fn xpoly_upto(max: usize) -> impl Strategy<Value = XPoly> {
    (0..=max).prop_flat_map(xpoly_exact)
}

/// Nonzero polynomial with nonzero constant term, so no pair built from
/// such factors has a common root at x = 0.
pub fn xpoly_unit_tc(max: usize) -> impl Strategy<Value = XPoly> {
    (0..=max).prop_flat_map(|d| {
        (xpoly_exact(d), nonzero_coeff()).prop_map(|(p, t)| {
            let mut cs = p.into_coeffs();
            cs[0] = t;
            Poly::new(cs)
        })
    })
}

pub fn step() -> impl Strategy<Value = u32> {
    1u32..=2
}

/// A non-degenerate pair: unequal degrees.
pub fn generic_pair(max: usize) -> impl Strategy<Value = QuotientPair> {
    (0..=max, 0..=max, step())
        .prop_filter("unequal degrees", |(da, db, _)| da != db)
        .prop_flat_map(|(da, db, l)| {
            (xpoly_exact(da), xpoly_exact(db))
                .prop_map(move |(a, b)| QuotientPair::new(a, b, l).unwrap())
        })
}

/// A degenerate pair with the given `m0`: `deg a = deg b = d` and
/// `lc b = lc a·Q^{d+m0}`.
pub fn degenerate_pair(max: usize) -> impl Strategy<Value = (QuotientPair, usize)> {
    (0..=max, 0usize..=3, step(), nonzero_coeff()).prop_flat_map(|(d, m0, l, lc)| {
        let lcb = lc.clone() * qp((l as usize * (d + m0)) as i64);
        (xpoly_with_lc(d, lc), xpoly_with_lc(d, lcb))
            .prop_map(move |(a, b)| (QuotientPair::new(a, b, l).unwrap(), m0))
    })
}

/// `(pair, spec)` with `a = ã·a1`, `b = b̃·b1` and shift orders up to
/// `max_order`; leading coefficients are chosen so that `lc b / lc a` is
/// often a power of q.
pub fn factored_instance(
    max_order: u32,
) -> impl Strategy<Value = (QuotientPair, ShiftPairSpec)> {
    let factor = |max: usize| {
        (0..=max, unit_coeff()).prop_flat_map(|(d, lc)| xpoly_with_lc(d, lc))
    };
    let orders = 0..=max_order;
    (factor(2), factor(2), factor(2), factor(2), orders.clone(), orders, step()).prop_map(
        |(at, a1, bt, b1, n1, n2, l)| {
            let pair = QuotientPair::new(at.mul(&a1), bt.mul(&b1), l).unwrap();
            (pair, ShiftPairSpec { a1, b1, n1, n2 })
        },
    )
}
