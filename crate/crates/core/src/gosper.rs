//! q-Gosper representation, dispersion, the q-Gosper equation over Laurent
//! polynomials, summability decisions and the structure conditions for
//! summable rational multiples.

use num_rational::Rational64;

use crate::field::{qpoly_gcd, QPoly, QRat};
use crate::linalg::solve;
use crate::reduction::{q_step_exponent, telescoper, QuotientPair};
use crate::xalg::{xgcd, xresultant, LPoly, XPoly, XRat, XShift};
use crate::{Error, Result};

/// `t_{k+1}/t_k = (a/b)·(c(Qx)/c(x))` at `x = q^{ℓk}`, with
/// `gcd(a(x), b(Q^h x)) = 1` for every `h ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GosperRep {
    pub a: XPoly,
    pub b: XPoly,
    pub c: XPoly,
    pub step: u32,
}

/// Whether `x` divides the polynomial.
fn has_zero_root(f: &XPoly) -> bool {
    f.order().is_some_and(|o| o > 0)
}

/// All `h ≥ 0` with `gcd(a(x), b(Q^h x)) ≠ 1`, ascending.
///
/// If `a(α) = 0 = b(Q^h α)`, the q-adic valuations of the two roots differ by
/// exactly `ℓh`, both at `q → 0` and at `q → ∞`. Root valuations are the
/// Newton-polygon slopes, so the candidates form a short list; each one is
/// confirmed by a direct gcd.
pub fn dispersion_set(a: &XPoly, b: &XPoly, step: u32) -> Result<Vec<usize>> {
    check_dispersion_inputs(a, b)?;
    if a.is_constant() || b.is_constant() {
        return Ok(Vec::new());
    }
    let at_zero = shift_candidates(
        &root_valuations(a, valuation_at_zero),
        &root_valuations(b, valuation_at_zero),
        step,
    );
    let at_infinity = shift_candidates(
        &root_valuations(b, valuation_at_infinity),
        &root_valuations(a, valuation_at_infinity),
        step,
    );
    let mut out = Vec::new();
    for h in at_zero.into_iter().filter(|h| at_infinity.contains(h)) {
        if !xgcd(a, &b.xshift(h as i64, step))?.is_constant() {
            out.push(h);
        }
    }
    Ok(out)
}

/// The same set computed from the resultant `R(y) = Res_x(a(x), b(yx))`:
/// the q-degree span of R bounds any root `y = q^{ℓh}`, and every `h` up
/// to that bound with `R(q^{ℓh}) = 0` is confirmed by a gcd. Much slower than
/// [`dispersion_set`] once the degrees grow; kept as a reference.
pub fn dispersion_set_by_resultant(a: &XPoly, b: &XPoly, step: u32) -> Result<Vec<usize>> {
    check_dispersion_inputs(a, b)?;
    if a.is_constant() || b.is_constant() {
        return Ok(Vec::new());
    }
    let r = xresultant(a, b)?;
    if r.is_zero() {
        // cannot happen without a common root at 0, which was excluded
        return Err(Error::CertificateInvalid("resultant vanished identically".into()));
    }
    let bound = shift_bound(r.coeffs(), step);
    let mut out = Vec::new();
    for h in 0..=bound {
        let y = QRat::q_pow(h as i64 * step as i64);
        if !r.eval(&y).is_zero() {
            continue;
        }
        if !xgcd(a, &b.xshift(h as i64, step))?.is_constant() {
            out.push(h);
        }
    }
    Ok(out)
}

fn check_dispersion_inputs(a: &XPoly, b: &XPoly) -> Result<()> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    if has_zero_root(a) && has_zero_root(b) && !a.is_constant() && !b.is_constant() {
        return Err(Error::CommonZeroRoot);
    }
    Ok(())
}

/// Order of vanishing at `q = 0`.
fn valuation_at_zero(c: &QRat) -> i64 {
    c.num().order().unwrap_or(0) as i64 - c.den().order().unwrap_or(0) as i64
}

/// Order of vanishing at `q = ∞`.
fn valuation_at_infinity(c: &QRat) -> i64 {
    c.den().degree().unwrap_or(0) as i64 - c.num().degree().unwrap_or(0) as i64
}

/// Distinct valuations of the nonzero roots of f: minus the slopes of the
/// lower convex hull of the points `(i, v(f_i))`.
fn root_valuations(f: &XPoly, v: fn(&QRat) -> i64) -> Vec<Rational64> {
    let points: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, v(c)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop `a` unless o → a → p turns counter-clockwise
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out: Vec<Rational64> = hull
        .windows(2)
        .map(|w| Rational64::new(w[0].1 - w[1].1, w[1].0 - w[0].0))
        .collect();
    out.dedup();
    out
}

/// Nonnegative integers `h` with `ℓh = to − from` for some pair of valuations.
fn shift_candidates(from: &[Rational64], to: &[Rational64], step: u32) -> Vec<usize> {
    let mut out: Vec<usize> = from
        .iter()
        .flat_map(|f| to.iter().map(move |t| (t - f) / Rational64::from(step as i64)))
        .filter(|h| h.is_integer() && *h.numer() >= 0)
        .map(|h| *h.numer() as usize)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Largest `h` for which `Σ r_j·q^{ℓhj}` can vanish: past it, the top
/// q-power of the highest term cannot cancel.
fn shift_bound(coeffs: &[QRat], step: u32) -> usize {
    let nonzero: Vec<&QRat> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.len() < 2 {
        return 0;
    }
    let mut den = QPoly::one();
    for c in &nonzero {
        let g = qpoly_gcd(&den, c.den());
        den = den.mul(&c.den().divmod(&g).0);
    }
    let mut hi = 0usize;
    let mut lo = usize::MAX;
    for c in &nonzero {
        let n = c.num().mul(&den.divmod(c.den()).0);
        hi = hi.max(n.degree().unwrap_or(0));
        lo = lo.min(n.order().unwrap_or(0));
    }
    (hi - lo).div_ceil(step as usize)
}

/// The q-Gosper representation of the term with shift quotient `a/b`.
///
/// A common power of x in `a` and `b` is cancelled first; it would otherwise
/// make every shift share the root 0.
pub fn gosper_representation(a: &XPoly, b: &XPoly, step: u32) -> Result<GosperRep> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let common = a.order().unwrap().min(b.order().unwrap());
    let mut a = a.shift_down(common);
    let mut b = b.shift_down(common);
    let mut c = XPoly::one();
    while let Some(&h) = dispersion_set(&a, &b, step)?.last() {
        let h = h as i64;
        let s = xgcd(&a, &b.xshift(h, step))?;
        a = a.divmod(&s).0;
        b = b.divmod(&s.xshift(-h, step)).0;
        for i in 1..=h {
            c = c.mul(&s.xshift(-i, step));
        }
    }
    Ok(GosperRep { a, b, c, step })
}

/// Solves `a(x)g(Qx) − b(x/Q)g(x) = c(x)` for a Laurent polynomial g.
///
/// Returns one solution (any member of the affine solution set) or `None`.
pub fn gosper_solve(rep: &GosperRep) -> Option<LPoly> {
    let l = rep.step;
    let a = &rep.a;
    let bb = rep.b.xshift(-1, l);
    let c = &rep.c;
    if c.is_zero() {
        return Some(LPoly::zero());
    }
    let (da, db) = (a.degree()? as i64, bb.degree()? as i64);
    let (va, vb) = (a.order()? as i64, bb.order()? as i64);
    let (dc, vc) = (c.degree()? as i64, c.order()? as i64);
    let d = da.max(db);
    let v = va.min(vb);

    let mut upper = dc - d;
    if da == db {
        if let Some(m) = bb.lc()?.div(a.lc()?).ok().and_then(|r| q_step_exponent(&r, l)) {
            upper = upper.max(m);
        }
    }
    let mut lower = vc - v;
    if va == vb {
        if let Some(m) = bb.tc()?.div(a.tc()?).ok().and_then(|r| q_step_exponent(&r, l)) {
            lower = lower.min(m);
        }
    }
    if upper < lower {
        return None;
    }

    // column i ↦ image of x^i: Σ_j (a_j Q^i − bb_j) x^{i+j}
    let ncols = (upper - lower + 1) as usize;
    let row_lo = lower + v;
    let row_hi = upper + d;
    let nrows = (row_hi - row_lo + 1) as usize;
    let mut rows = vec![vec![QRat::zero(); ncols]; nrows];
    for (col, i) in (lower..=upper).enumerate() {
        let qi = QRat::q_pow(i * l as i64);
        for j in 0..=d as usize {
            let entry = a.coeff(j).mul(&qi).sub(&bb.coeff(j));
            if entry.is_zero() {
                continue;
            }
            let e = i + j as i64 - row_lo;
            rows[e as usize][col] = entry;
        }
    }
    let rhs: Vec<QRat> = (row_lo..=row_hi)
        .map(|e| if e < 0 { QRat::zero() } else { c.coeff(e as usize) })
        .collect();
    let sol = solve(&rows, &rhs, ncols)?;
    let g = LPoly::from_coeffs(lower, sol);
    debug_assert!(satisfies_gosper_equation(rep, &g));
    Some(g)
}

/// Exact substitution check of the q-Gosper equation.
pub fn satisfies_gosper_equation(rep: &GosperRep, g: &LPoly) -> bool {
    let bb = rep.b.xshift(-1, rep.step);
    let lhs = g
        .xshift(1, rep.step)
        .mul_poly(&rep.a)
        .sub(&g.mul_poly(&bb));
    lhs == LPoly::from_poly(rep.c.clone())
}

/// Decides whether `r(q^{ℓk})·t_k` is summable. On success returns ρ with
/// `r(x) = ρ(Qx)·a(x)/b(x) − ρ(x)`, so that `r·t_k = Δ_k(ρ·t_k)`.
pub fn is_summable(pair: &QuotientPair, r: &XRat) -> Result<Option<XRat>> {
    if r.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    let l = pair.step;
    let (num, den) = (r.num(), r.den());
    // shift quotient of r·t: a·num(Qx)·den / (b·den(Qx)·num)
    let rep = gosper_representation(&pair.a.mul(den), &pair.b.mul(&den.xshift(1, l)), l)?;
    let rep = GosperRep {
        c: rep.c.mul(num),
        ..rep
    };
    let Some(g) = gosper_solve(&rep) else {
        return Ok(None);
    };
    let bb = rep.b.xshift(-1, l);
    let rho = g
        .mul_poly(&bb)
        .to_xrat()
        .mul(&XRat::new(XPoly::one(), rep.c.clone())?)
        .mul(r);
    if telescoper(pair, &rho)? != *r {
        return Err(Error::CertificateInvalid(
            "Gosper certificate does not telescope".into(),
        ));
    }
    Ok(Some(rho))
}

/// Outcome of checking the hypotheses on `B` for a multiple `A/B` of a term
/// with representation `(a, b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureReport {
    /// `gcd(B(x), B(Q^{h+1}x)) = 1` for all h ≥ 0
    pub b_shift_coprime: bool,
    /// `gcd(B(x), a(Q^{−(1+h)}x)) = 1` for all h ≥ 0
    pub coprime_with_a: bool,
    /// `gcd(B(x), b(Q^h x)) = 1` for all h ≥ 0
    pub coprime_with_b: bool,
    /// `gcd(B, c) = 1`
    pub coprime_with_c: bool,
    pub b_divides_a: bool,
}

impl StructureReport {
    pub fn conditions_hold(&self) -> bool {
        self.b_shift_coprime && self.coprime_with_a && self.coprime_with_b && self.coprime_with_c
    }
}

/// Whether `gcd(f(x), g(Q^h x)) ≠ 1` for some `h ≥ min_h`.
fn shares_shift(f: &XPoly, g: &XPoly, step: u32, min_h: usize) -> Result<bool> {
    if has_zero_root(f) && has_zero_root(g) {
        return Ok(true);
    }
    Ok(dispersion_set(f, g, step)?.iter().any(|&h| h >= min_h))
}

pub fn structure_conditions(big_a: &XPoly, big_b: &XPoly, rep: &GosperRep) -> Result<StructureReport> {
    if big_a.is_zero() || big_b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let l = rep.step;
    Ok(StructureReport {
        b_shift_coprime: !shares_shift(big_b, big_b, l, 1)?,
        // gcd(B(x), a(Q^{-j}x)) ≠ 1  ⇔  gcd(a(x), B(Q^j x)) ≠ 1
        coprime_with_a: !shares_shift(&rep.a, big_b, l, 1)?,
        coprime_with_b: !shares_shift(big_b, &rep.b, l, 0)?,
        coprime_with_c: xgcd(big_b, &rep.c)?.is_constant(),
        b_divides_a: big_a.divmod(big_b).1.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xalg::xmono;

    fn q() -> QRat {
        QRat::q()
    }
    fn qp(m: i64) -> QRat {
        QRat::q_pow(m)
    }
    fn c(n: i64) -> QRat {
        QRat::from_int(n)
    }
    fn xp(terms: &[(QRat, usize)]) -> XPoly {
        terms
            .iter()
            .fold(XPoly::zero(), |acc, (cf, n)| acc.add(&xmono(cf.clone(), *n)))
    }
    fn om(cf: QRat, n: usize) -> XPoly {
        xp(&[(c(1), 0), (-cf, n)])
    }
    fn x_pow(n: usize) -> XPoly {
        xmono(QRat::one(), n)
    }
    fn k(cf: QRat) -> XPoly {
        xp(&[(cf, 0)])
    }

    fn cubic() -> QuotientPair {
        let a = xp(&[(q(), 1)]).mul(&om(q(), 1).pow(3)).mul(&om(-q(), 1));
        QuotientPair::new(a, om(qp(3), 2).pow(3), 1).unwrap()
    }

    #[test]
    fn dispersion_examples() {
        assert_eq!(dispersion_set(&om(qp(2), 1), &om(q(), 1), 1).unwrap(), vec![1]);
        assert!(dispersion_set(&x_pow(1), &om(c(-1), 1), 1).unwrap().is_empty());
        let p = cubic();
        assert!(dispersion_set(&p.a, &p.b, 1).unwrap().is_empty());
        assert!(dispersion_set_by_resultant(&p.a, &p.b, 1).unwrap().is_empty());
        // (1 − q²x)(1 + q⁵x) against (1 − qx)(1 + x): shifts 1 and 5
        let a = om(qp(2), 1).mul(&om(-qp(5), 1));
        let b = om(q(), 1).mul(&om(c(-1), 1));
        assert_eq!(dispersion_set(&a, &b, 1).unwrap(), vec![1, 5]);
        assert_eq!(dispersion_set_by_resultant(&a, &b, 1).unwrap(), vec![1, 5]);
        assert!(dispersion_set(&a, &b, 2).unwrap().is_empty());
        assert_eq!(
            dispersion_set(&x_pow(1), &x_pow(2), 1),
            Err(Error::CommonZeroRoot)
        );
    }

    #[test]
    fn representation_examples() {
        let rep = gosper_representation(&k(q()), &XPoly::one(), 1).unwrap();
        assert_eq!((rep.a, rep.b, rep.c), (k(q()), XPoly::one(), XPoly::one()));

        let rep = gosper_representation(&om(qp(2), 1), &om(q(), 1), 1).unwrap();
        assert!(rep.a.is_constant() && rep.b.is_constant());
        let ratio = XRat::new(rep.a.mul(&rep.c.xshift(1, 1)), rep.b.mul(&rep.c)).unwrap();
        assert_eq!(ratio, XRat::new(om(qp(2), 1), om(q(), 1)).unwrap());

        let p = cubic();
        let rep = gosper_representation(&p.a, &p.b, 1).unwrap();
        assert_eq!((rep.a, rep.b, rep.c), (p.a, p.b, XPoly::one()));
    }

    #[test]
    fn solver_examples() {
        let rep = GosperRep {
            a: k(q()),
            b: XPoly::one(),
            c: XPoly::one(),
            step: 1,
        };
        let g = gosper_solve(&rep).unwrap();
        assert_eq!(g, LPoly::from_poly(k(c(1) / (q() - c(1)))));

        let rep = GosperRep {
            a: XPoly::one(),
            b: XPoly::one(),
            c: XPoly::one(),
            step: 1,
        };
        assert!(gosper_solve(&rep).is_none());

        // c = a·(qx) − x with a = 1 − qx
        let a = om(q(), 1);
        let cc = a.mul(&xp(&[(q(), 1)])).sub(&x_pow(1));
        let rep = GosperRep {
            a,
            b: XPoly::one(),
            c: cc,
            step: 1,
        };
        let g = gosper_solve(&rep).unwrap();
        assert!(satisfies_gosper_equation(&rep, &g));
    }

    #[test]
    fn summability_examples() {
        let p = QuotientPair::new(k(q()), XPoly::one(), 1).unwrap();
        let rho = is_summable(&p, &XRat::from_poly(k(q() - c(1)))).unwrap();
        assert_eq!(rho, Some(XRat::one()));
        let r = XRat::new(XPoly::one(), om(c(1), 1)).unwrap();
        assert_eq!(is_summable(&p, &r).unwrap(), None);
        assert_eq!(is_summable(&p, &XRat::zero()), Err(Error::ZeroMultiplier));
    }

    #[test]
    fn structure_examples() {
        let p = cubic();
        let rep = gosper_representation(&p.a, &p.b, 1).unwrap();
        let rpt = structure_conditions(&x_pow(2), &XPoly::one(), &rep).unwrap();
        assert!(rpt.conditions_hold() && rpt.b_divides_a);

        let rpt = structure_conditions(&XPoly::one(), &om(qp(3), 2), &rep).unwrap();
        assert!(!rpt.coprime_with_b);

        let generic = GosperRep {
            a: om(qp(5), 1),
            b: om(qp(7), 1),
            c: XPoly::one(),
            step: 1,
        };
        let bb = om(c(-1), 1);
        let aa = bb.mul(&om(c(1), 1));
        let rpt = structure_conditions(&aa, &bb, &generic).unwrap();
        assert!(rpt.conditions_hold() && rpt.b_divides_a);
    }

    #[test]
    fn step_two_solver_uses_q_squared() {
        // a = q², b = 1, ℓ = 2: q²·g − g = 1 with g constant
        let rep = GosperRep {
            a: k(qp(2)),
            b: XPoly::one(),
            c: XPoly::one(),
            step: 2,
        };
        let g = gosper_solve(&rep).unwrap();
        assert!(satisfies_gosper_equation(&rep, &g));
        // a = q + x, b = 1, c = 1/q: only g = x^{-1} (plus kernel) works
        let rep = GosperRep {
            a: xp(&[(q(), 0), (c(1), 1)]),
            b: XPoly::one(),
            c: k(qp(-1)),
            step: 1,
        };
        let g = gosper_solve(&rep).unwrap();
        assert_eq!(g.valuation(), -1);
        assert!(satisfies_gosper_equation(&rep, &g));
    }
}
