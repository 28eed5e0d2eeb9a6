//! q-difference spaces, the q-polynomial reduction, shift products, shift
//! pairs and the q-rational reduction.
//!
//! Everything is parameterized by the step ℓ: the term's shift quotient is
//! `a(x)/b(x)` at `x = q^{ℓk}`, so the relevant shift is `x ↦ Q·x` with
//! `Q = q^ℓ`.

use std::collections::{BTreeMap, BTreeSet};

use crate::field::{qpoly_gcd, QPoly, QRat};
use crate::xalg::{xdiv_exact, xmono, XPoly, XRat, XShift};
use crate::{Error, Result};

/// Shift quotient `t_{k+1}/t_k = a(q^{ℓk})/b(q^{ℓk})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPair {
    pub a: XPoly,
    pub b: XPoly,
    pub step: u32,
}

impl QuotientPair {
    pub fn new(a: XPoly, b: XPoly, step: u32) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if step == 0 {
            return Err(Error::DomainError("step must be positive".into()));
        }
        Ok(QuotientPair { a, b, step })
    }

    fn check(&self) -> Result<()> {
        if self.a.is_zero() || self.b.is_zero() {
            Err(Error::ZeroPolynomial)
        } else {
            Ok(())
        }
    }

    /// `b(x/Q)`
    pub fn b_back(&self) -> XPoly {
        self.b.xshift(-1, self.step)
    }
}

/// `m0` is present exactly when the pair is degenerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degeneracy {
    pub m0: Option<usize>,
}

/// Factors `a1 | a`, `b1 | b` together with their shift orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftPairSpec {
    pub a1: XPoly,
    pub b1: XPoly,
    pub n1: u32,
    pub n2: u32,
}

impl ShiftPairSpec {
    /// The spec that leaves the pair unchanged.
    pub fn trivial() -> Self {
        ShiftPairSpec {
            a1: XPoly::one(),
            b1: XPoly::one(),
            n1: 0,
            n2: 0,
        }
    }
}

/// Result of a (q-polynomial or q-rational) reduction.
///
/// For `reduce_poly`: `p = Σ c_i p_i + remainder` and
/// `p − remainder = ρ(Qx)·a/b − ρ` with `ρ = b(x/Q)·g`, `denominator = 1`.
///
/// For `rational_reduce`: `p − remainder/D = ρ(Qx)·a/b − ρ` with
/// `D = denominator` and `ρ = B(x/Q)·g/D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub coeffs: BTreeMap<usize, QRat>,
    pub remainder: XPoly,
    pub generator: XPoly,
    pub residual_set: BTreeSet<usize>,
    pub certificate: XRat,
    pub denominator: XPoly,
    /// The pair the polynomial reduction actually ran against.
    pub reduced_pair: QuotientPair,
    /// The polynomial that was reduced (`p·D` for the rational reduction).
    pub reduced_input: XPoly,
}

/// `d = max(deg a, deg b)`.
pub fn degree_bound(pair: &QuotientPair) -> Result<usize> {
    pair.check()?;
    Ok(pair.a.degree().unwrap().max(pair.b.degree().unwrap()))
}

/// The integer `m` with `lc b(x/Q) / lc a = Q^m` when `deg a = deg b`.
/// Negative `m` is reported too; callers decide whether it matters.
pub fn lc_ratio_exponent(pair: &QuotientPair) -> Option<i64> {
    let (da, db) = (pair.a.degree()?, pair.b.degree()?);
    if da != db {
        return None;
    }
    let ratio = pair.b_back().lc()?.div(pair.a.lc()?).ok()?;
    q_step_exponent(&ratio, pair.step)
}

/// `m` with `c = q^{ℓm}`, if any.
pub(crate) fn q_step_exponent(c: &QRat, step: u32) -> Option<i64> {
    let e = c.power_of_q().ok()??;
    (e % step as i64 == 0).then(|| e / step as i64)
}

pub fn is_degenerate(pair: &QuotientPair) -> Degeneracy {
    let m0 = lc_ratio_exponent(pair).and_then(|m| usize::try_from(m).ok());
    Degeneracy { m0 }
}

/// `{0, …, d−1}`, plus `d + m0` for a degenerate pair.
pub fn residual_exponents(pair: &QuotientPair) -> Result<BTreeSet<usize>> {
    let d = degree_bound(pair)?;
    let mut set: BTreeSet<usize> = (0..d).collect();
    if let Some(m0) = is_degenerate(pair).m0 {
        set.insert(d + m0);
    }
    Ok(set)
}

/// `p_i = a(x)·g(Qx) − b(x/Q)·g(x)`, with `g = x^i` unless given.
pub fn basis_poly(pair: &QuotientPair, i: usize, g: Option<&XPoly>) -> Result<XPoly> {
    pair.check()?;
    let mono;
    let g = match g {
        Some(g) => {
            if g.degree() != Some(i) {
                return Err(Error::DegreeMismatch {
                    expected: i,
                    found: g.degree(),
                });
            }
            g
        }
        None => {
            mono = xmono(QRat::one(), i);
            &mono
        }
    };
    Ok(difference(pair, g))
}

/// `a(x)·g(Qx) − b(x/Q)·g(x)` for any polynomial g.
pub fn difference(pair: &QuotientPair, g: &XPoly) -> XPoly {
    pair.a
        .mul(&g.xshift(1, pair.step))
        .sub(&pair.b_back().mul(g))
}

/// The q-polynomial reduction of `p` modulo the difference space of `pair`,
/// using monomial generators.
pub fn reduce_poly(pair: &QuotientPair, p: &XPoly) -> Result<ReductionOutput> {
    reduce_poly_with(pair, p, |i| xmono(QRat::one(), i))
}

/// As [`reduce_poly`], with caller-chosen generators; `generator(i)` must
/// have degree exactly i.
pub fn reduce_poly_with(
    pair: &QuotientPair,
    p: &XPoly,
    generator: impl Fn(usize) -> XPoly,
) -> Result<ReductionOutput> {
    let d = degree_bound(pair)?;
    let m0 = is_degenerate(pair).m0;
    let mut rest = p.clone();
    let mut extracted = XPoly::zero();
    let mut coeffs = BTreeMap::new();
    let mut g = XPoly::zero();
    let top = p.degree().unwrap_or(0);
    for n in (d..=top).rev() {
        let c = rest.coeff(n);
        if c.is_zero() {
            continue;
        }
        let i = n - d;
        if m0 == Some(i) {
            let term = xmono(c, n);
            rest = rest.sub(&term);
            extracted = extracted.add(&term);
            continue;
        }
        let gi = generator(i);
        let pi = basis_poly(pair, i, Some(&gi))?;
        debug_assert_eq!(pi.degree(), Some(n), "degree law");
        let ci = c.div(pi.lc().expect("nonzero basis polynomial"))?;
        rest = rest.sub(&pi.scale(&ci));
        g = g.add(&gi.scale(&ci));
        coeffs.insert(i, ci);
    }
    let remainder = rest.add(&extracted);

    // exactness: p − p̃ must equal the difference image of g
    if p.sub(&remainder) != difference(pair, &g) {
        return Err(Error::CertificateInvalid(
            "reduction does not reconstruct its input".into(),
        ));
    }
    let certificate = XRat::from_poly(pair.b_back().mul(&g));
    Ok(ReductionOutput {
        coeffs,
        remainder,
        generator: g,
        residual_set: residual_exponents(pair)?,
        certificate,
        denominator: XPoly::one(),
        reduced_pair: pair.clone(),
        reduced_input: p.clone(),
    })
}

/// A nonzero summable multiplier of degree ≤ d+1: `p_0` if nonzero, else `p_1`,
/// with its certificate `ρ = b(x/Q)·g`.
pub fn summable_multiplier(pair: &QuotientPair) -> Result<(XPoly, XRat)> {
    for i in 0..2 {
        let r = basis_poly(pair, i, None)?;
        if !r.is_zero() {
            let rho = pair.b_back().mul(&xmono(QRat::one(), i));
            return Ok((r, XRat::from_poly(rho)));
        }
    }
    unreachable!("p_0 and p_1 cannot both vanish for a·b ≠ 0")
}

/// `SP_n(f)`: `∏_{i=0}^{n−1} f(Q^i x)` for n > 0, `1` for n = 0 and
/// `∏_{i=n}^{−1} f(Q^i x)` for n < 0.
pub fn shift_product(f: &XPoly, n: i64, step: u32) -> XPoly {
    let range = if n >= 0 { 0..n } else { n..0 };
    range.fold(XPoly::one(), |acc, i| acc.mul(&f.xshift(i, step)))
}

/// The shift pair `(A, B)` of order `(n1, n2)`.
///
/// Both polynomials are multiplied by the lcm of all coefficient
/// denominators and divided by the gcd of the resulting numerators, so the
/// output has coefficients in ℚ[q] without common q-content.
pub fn shift_pair(pair: &QuotientPair, spec: &ShiftPairSpec) -> Result<QuotientPair> {
    pair.check()?;
    let l = pair.step;
    let a0 = xdiv_exact(&pair.a, &spec.a1).ok_or(Error::NotAFactor("a1"))?;
    let b0 = xdiv_exact(&pair.b, &spec.b1).ok_or(Error::NotAFactor("b1"))?;
    let a = a0.mul(&spec.a1.xshift(-(spec.n1 as i64), l));
    let b = b0.mul(&spec.b1.xshift(spec.n2 as i64, l));
    let (a, b) = clear_common_content(&a, &b);
    QuotientPair::new(a, b, l)
}

fn clear_common_content(a: &XPoly, b: &XPoly) -> (XPoly, XPoly) {
    let all = a.coeffs().iter().chain(b.coeffs()).filter(|c| !c.is_zero());
    let mut den = QPoly::one();
    for c in all.clone() {
        let g = qpoly_gcd(&den, c.den());
        den = den.mul(&c.den().divmod(&g).0);
    }
    // numerators after clearing, as elements of ℚ[q]
    let cleared = |p: &XPoly| p.scale(&QRat::from_poly(den.clone()));
    let (a, b) = (cleared(a), cleared(b));
    let mut content = QPoly::zero();
    for c in a.coeffs().iter().chain(b.coeffs()) {
        content = qpoly_gcd(&content, c.num());
    }
    let inv = QRat::from_poly(content).inv().expect("nonzero content");
    (a.scale(&inv), b.scale(&inv))
}

/// The q-rational reduction: reduces `p·D` against the shift pair and returns
/// the remainder `p̃` so that `p − p̃/D` is summable with certificate
/// `ρ = B(x/Q)·g/D`.
pub fn rational_reduce(
    pair: &QuotientPair,
    spec: &ShiftPairSpec,
    p: &XPoly,
) -> Result<ReductionOutput> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let l = pair.step;
    let shifted = shift_pair(pair, spec)?;
    let den = shift_product(&spec.a1, -(spec.n1 as i64), l)
        .mul(&shift_product(&spec.b1, spec.n2 as i64, l));
    let mut out = reduce_poly(&shifted, &p.mul(&den))?;
    let rho_num = shifted.b_back().mul(&out.generator);

    // p − p̃/D = ρ(Qx)·a/b − ρ with ρ = N/D, cleared of D(x)·D(Qx)·b(x)
    let den_next = den.xshift(1, l);
    let lhs = p.mul(&den).sub(&out.remainder).mul(&den_next).mul(&pair.b);
    let rhs = rho_num
        .xshift(1, l)
        .mul(&pair.a)
        .mul(&den)
        .sub(&rho_num.mul(&den_next).mul(&pair.b));
    if lhs != rhs {
        return Err(Error::CertificateInvalid(
            "q-rational reduction identity fails".into(),
        ));
    }
    out.certificate = XRat::new(rho_num, den.clone())?;
    out.denominator = den;
    Ok(out)
}

/// `ρ(Qx)·a(x)/b(x) − ρ(x)`: the multiplier whose summand is `Δ_k(ρ(q^{ℓk})t_k)`.
pub fn telescoper(pair: &QuotientPair, rho: &XRat) -> Result<XRat> {
    let ab = XRat::new(pair.a.clone(), pair.b.clone())?;
    Ok(rho.xshift(1, pair.step).mul(&ab).sub(rho))
}
