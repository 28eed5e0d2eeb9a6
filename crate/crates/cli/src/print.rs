//! Canonical text for exact values; always re-parses to the same value.
//!
//! Powers ascend. A q-polynomial prints as `2 - 3/2*q + q^4`; an element of
//! ℚ(q) with nontrivial denominator as `(num)/(den)` with the monic
//! denominator. In x-polynomials compound coefficients are parenthesized:
//! `(q - q^5)*x^2`.

use num_traits::{One, Signed, Zero};
use qreduce::field::Rat;
use qreduce::{QPoly, QRat, XPoly, XRat};

/// `var^i` with the exponent omitted for 1.
fn power(var: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{i}"),
    }
}

/// One signed term `c·var^i` as (is_negative, body).
fn term(c: &Rat, var: &str, i: usize) -> (bool, String) {
    let mag = c.abs();
    let p = power(var, i);
    let body = if p.is_empty() {
        mag.to_string()
    } else if mag.is_one() {
        p
    } else {
        format!("{mag}*{p}")
    };
    (c.is_negative(), body)
}

/// Joins signed terms: `a - b + c`, leading sign attached as `-a`.
fn join(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (neg, body) in terms {
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

pub fn print_qpoly(p: &QPoly) -> String {
    join(
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| term(c, "q", i)),
    )
}

pub fn print_qrat(c: &QRat) -> String {
    if c.is_polynomial() {
        print_qpoly(c.num())
    } else {
        format!("({})/({})", print_qpoly(c.num()), print_qpoly(c.den()))
    }
}

/// A coefficient that is a single signed monomial in q, as (negative, body).
fn simple_coeff(c: &QRat) -> Option<(bool, String)> {
    if !c.is_polynomial() {
        return None;
    }
    let p = c.num();
    let o = p.order()?;
    (p.degree()? == o).then(|| term(&p.coeffs()[o], "q", o))
}

pub fn print_xpoly(p: &XPoly) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let xp = power("x", i);
        if xp.is_empty() {
            terms.push(match simple_coeff(c) {
                Some(t) => t,
                None => (false, print_qrat(c)),
            });
            continue;
        }
        terms.push(match simple_coeff(c) {
            Some((neg, body)) if body == "1" => (neg, xp),
            Some((neg, body)) => (neg, format!("{body}*{xp}")),
            None => (false, format!("({})*{xp}", print_qrat(c))),
        });
    }
    // a compound constant term leads without parentheses; later compound
    // terms are parenthesized, so the joined text always re-parses
    join(terms)
}

pub fn print_xrat(r: &XRat) -> String {
    if r.is_polynomial() {
        print_xpoly(r.num())
    } else {
        format!("({})/({})", print_xpoly(r.num()), print_xpoly(r.den()))
    }
}
