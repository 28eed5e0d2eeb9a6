//! Polynomials, Laurent polynomials and rational functions in `x` over ℚ(q).
//!
//! `x` stands for `q^{ℓk}`, so the q-shift `k ↦ k + n` becomes the
//! substitution `x ↦ q^{ℓn}x` ([`XShift`]).

use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{modp, primitive_coeffs, qpoly_div_exact, primitive_qpolys, QPoly, QRat};
use crate::linalg::bareiss_det;
use crate::poly::Poly;
use crate::ring::{Domain, Field, Ring};
use crate::{Error, Result};

/// Polynomial in x with coefficients in ℚ(q).
pub type XPoly = Poly<QRat>;

/// Polynomial in the auxiliary resultant variable y over ℚ(q).
pub type YPoly = Poly<QRat>;

/// Builds an x-polynomial from coefficients listed by ascending power.
pub fn xpoly(coeffs: Vec<QRat>) -> XPoly {
    Poly::new(coeffs)
}

/// The constant x-polynomial `c`.
pub fn xconst(c: QRat) -> XPoly {
    Poly::constant(c)
}

/// `c·x^n`
pub fn xmono(c: QRat, n: usize) -> XPoly {
    Poly::monomial(c, n)
}

/// The substitution `x ↦ q^{step·n}·x`.
pub trait XShift: Sized {
    fn xshift(&self, n: i64, step: u32) -> Self;
}

impl XShift for XPoly {
    fn xshift(&self, n: i64, step: u32) -> Self {
        if n == 0 {
            return self.clone();
        }
        self.scale_var(&QRat::q_pow(n * step as i64))
    }
}

/// Euclidean division over ℚ(q): `f = quot·g + rem` with `deg rem < deg g`.
pub fn xdivmod(f: &XPoly, g: &XPoly) -> Result<(XPoly, XPoly)> {
    if g.is_zero() {
        return Err(Error::DivisorZero);
    }
    Ok(f.divmod(g))
}

/// Monic gcd over ℚ(q).
pub fn xgcd(f: &XPoly, g: &XPoly) -> Result<XPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    Ok(gcd(f, g))
}

/// Points `q = s` (mod p) used for the coprimality screen.
const SCREEN_POINTS: [u64; 3] = [3, 7_919, 1_000_003];

/// Monic gcd, `gcd(0, 0) = 0`.
///
/// Euclid over ℚ(q) makes the coefficient fractions explode, so coprime
/// inputs are detected through images at `q = s` over 𝔽_p, and anything
/// else goes through the primitive remainder sequence over ℚ[q][x].
pub(crate) fn gcd(f: &XPoly, g: &XPoly) -> XPoly {
    if f.is_zero() || g.is_zero() || f.is_constant() || g.is_constant() {
        return f.gcd(g);
    }
    if SCREEN_POINTS.iter().any(|&s| coprime_image(f, g, s)) {
        return XPoly::one();
    }
    prs_gcd(f, g)
}

/// Images at `q = s` over 𝔽_p with the leading coefficient surviving; a
/// coprime pair of images proves coprimality over ℚ(q).
fn coprime_image(f: &XPoly, g: &XPoly, s: u64) -> bool {
    let image = |p: &XPoly| -> Option<Vec<u64>> {
        let v = p
            .coeffs()
            .iter()
            .map(|c| modp::eval_qrat(c, s))
            .collect::<Option<Vec<_>>>()?;
        (*v.last()? != 0).then_some(v)
    };
    match (image(f), image(g)) {
        (Some(x), Some(y)) => modp::gcd_is_one(x, y),
        _ => false,
    }
}

/// Subresultant remainder sequence over ℚ[q][x]: every division is exact, so
/// no contents are needed until the last nonzero remainder.
fn prs_gcd(f: &XPoly, g: &XPoly) -> XPoly {
    let mut a: Poly<QPoly> = Poly::new(primitive_coeffs(f.coeffs()));
    let mut b: Poly<QPoly> = Poly::new(primitive_coeffs(g.coeffs()));
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    let (mut lead, mut h) = (QPoly::one(), QPoly::one());
    loop {
        let delta = (a.degree().unwrap() - b.degree().unwrap()) as u32;
        let r = pseudo_remainder(&a, &b);
        match r.degree() {
            None => {
                let b = primitive_qpolys(b.into_coeffs());
                return Poly::new(b.into_iter().map(QRat::from_poly).collect()).monic();
            }
            Some(0) => return XPoly::one(),
            Some(_) => {}
        }
        let divisor = lead.times(&h.pow_u(delta));
        a = b;
        b = r.map(|c| qpoly_div_exact(c, &divisor).expect("subresultant division is exact"));
        lead = a.lc().expect("nonzero").clone();
        if delta > 0 {
            h = qpoly_div_exact(&lead.pow_u(delta), &h.pow_u(delta - 1))
                .expect("subresultant division is exact");
        }
    }
}

/// Exact quotient `f/g`, or `None` if `g` does not divide `f`.
pub fn xdiv_exact(f: &XPoly, g: &XPoly) -> Option<XPoly> {
    f.div_exact_poly(g)
}

/// Value at `x = q^{step·j}`.
pub fn eval_poly_at_qpower(f: &XPoly, j: i64, step: u32) -> QRat {
    f.eval(&QRat::q_pow(j * step as i64))
}

/// `Res_x(f(x), g(y·x))` as a polynomial in y.
///
/// It vanishes at `y = q^h` exactly when `f(x)` and `g(q^h x)` share a root.
/// Small inputs use the Sylvester determinant, larger ones the subresultant
/// chain.
pub fn xresultant(f: &XPoly, g: &XPoly) -> Result<YPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (ff, gg) = lift_for_resultant(f, g);
    let small = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0)) <= 4;
    Ok(if small {
        sylvester_resultant(&ff, &gg)
    } else {
        subresultant(&ff, &gg)
    })
}

/// Same value as [`xresultant`], always through the Sylvester determinant.
pub fn xresultant_sylvester(f: &XPoly, g: &XPoly) -> Result<YPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (ff, gg) = lift_for_resultant(f, g);
    Ok(sylvester_resultant(&ff, &gg))
}

/// Same value as [`xresultant`], always through the subresultant chain.
pub fn xresultant_subresultant(f: &XPoly, g: &XPoly) -> Result<YPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (ff, gg) = lift_for_resultant(f, g);
    Ok(subresultant(&ff, &gg))
}

fn lift_for_resultant(f: &XPoly, g: &XPoly) -> (Poly<YPoly>, Poly<YPoly>) {
    let ff = f.map(|c| YPoly::constant(c.clone()));
    let gg = Poly::new(
        g.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| YPoly::monomial(c.clone(), i))
            .collect(),
    );
    (ff, gg)
}

/// Resultant by Bareiss elimination on the Sylvester matrix.
pub fn sylvester_resultant<D: Domain>(f: &Poly<D>, g: &Poly<D>) -> D {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return D::zero(),
    };
    if m == 0 && n == 0 {
        return D::one();
    }
    let size = m + n;
    let mut mat = vec![vec![D::zero(); size]; size];
    // rows hold coefficients from the highest power down
    for i in 0..n {
        for j in 0..=m {
            mat[i][i + j] = f.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            mat[n + i][i + j] = g.coeff(n - j);
        }
    }
    bareiss_det(mat)
}

fn pseudo_remainder<D: Domain>(a: &Poly<D>, b: &Poly<D>) -> Poly<D> {
    let db = b.degree().expect("nonzero divisor");
    let lcb = b.lc().expect("nonzero").clone();
    let mut r = a.clone();
    let mut e = a.degree().map_or(0, |da| (da + 1).saturating_sub(db));
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let t = Poly::monomial(r.lc().expect("nonzero").clone(), dr - db);
        r = r.scale(&lcb).sub(&t.mul(b));
        e -= 1;
    }
    r.scale(&lcb.pow_u(e as u32))
}

/// Resultant by the subresultant polynomial remainder sequence.
pub fn subresultant<D: Domain>(f: &Poly<D>, g: &Poly<D>) -> D {
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign_neg = false;
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return D::zero();
    };
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
    }
    if b.degree() == Some(0) {
        let r = b.coeff(0).pow_u(a.degree().unwrap() as u32);
        return if sign_neg { r.negated() } else { r };
    }
    let mut g_ = D::one();
    let mut h = D::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = pseudo_remainder(&a, &b);
        a = b;
        let divisor = g_.times(&h.pow_u(delta as u32));
        b = Poly::new(
            r.coeffs()
                .iter()
                .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
                .collect(),
        );
        g_ = a.lc().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            g_.pow_u(delta as u32)
                .div_exact(&h.pow_u(delta as u32 - 1))
                .expect("subresultant division is exact")
        };
        match b.degree() {
            None => return D::zero(),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let da = a.degree().unwrap() as u32;
    let lb = b.coeff(0);
    // h^{1-da}·lb^{da}
    let r = if da == 0 {
        h
    } else {
        lb.pow_u(da)
            .div_exact(&h.pow_u(da - 1))
            .expect("subresultant division is exact")
    };
    if sign_neg {
        r.negated()
    } else {
        r
    }
}

/// Laurent polynomial `x^valuation · poly` over ℚ(q).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LPoly {
    poly: XPoly,
    valuation: i64,
}

impl LPoly {
    /// Normalises so that `poly` has a nonzero constant term.
    pub fn new(poly: XPoly, valuation: i64) -> Self {
        match poly.order() {
            None => LPoly::zero(),
            Some(o) => LPoly {
                poly: poly.shift_down(o),
                valuation: valuation + o as i64,
            },
        }
    }

    pub fn zero() -> Self {
        LPoly {
            poly: XPoly::zero(),
            valuation: 0,
        }
    }

    pub fn from_poly(p: XPoly) -> Self {
        Self::new(p, 0)
    }

    /// Builds `Σ coeffs[i]·x^{low+i}`.
    pub fn from_coeffs(low: i64, coeffs: Vec<QRat>) -> Self {
        Self::new(Poly::new(coeffs), low)
    }

    pub fn poly(&self) -> &XPoly {
        &self.poly
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Highest exponent present.
    pub fn top(&self) -> Option<i64> {
        self.poly.degree().map(|d| d as i64 + self.valuation)
    }

    /// Coefficient of `x^i`.
    pub fn coeff(&self, i: i64) -> QRat {
        if i < self.valuation {
            QRat::zero()
        } else {
            self.poly.coeff((i - self.valuation) as usize)
        }
    }

    fn aligned(&self, rhs: &Self) -> (XPoly, XPoly, i64) {
        let v = self.valuation.min(rhs.valuation);
        (
            self.poly.shift_up((self.valuation - v) as usize),
            rhs.poly.shift_up((rhs.valuation - v) as usize),
            v,
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, v) = self.aligned(rhs);
        LPoly::new(a.add(&b), v)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        LPoly {
            poly: self.poly.neg(),
            valuation: self.valuation,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        LPoly::new(self.poly.mul(&rhs.poly), self.valuation + rhs.valuation)
    }

    pub fn mul_poly(&self, rhs: &XPoly) -> Self {
        LPoly::new(self.poly.mul(rhs), self.valuation)
    }

    /// As a rational function: negative valuation moves into the denominator.
    pub fn to_xrat(&self) -> XRat {
        if self.valuation >= 0 {
            XRat::from_poly(self.poly.shift_up(self.valuation as usize))
        } else {
            XRat::new(
                self.poly.clone(),
                xmono(QRat::one(), (-self.valuation) as usize),
            )
            .expect("nonzero denominator")
        }
    }

    /// `Some(p)` when no negative powers are present.
    pub fn to_poly(&self) -> Option<XPoly> {
        (self.valuation >= 0 || self.is_zero())
            .then(|| self.poly.shift_up(self.valuation.max(0) as usize))
    }
}

impl XShift for LPoly {
    fn xshift(&self, n: i64, step: u32) -> Self {
        // x^v ↦ q^{step·n·v} x^v
        let factor = QRat::q_pow(n * step as i64 * self.valuation);
        LPoly {
            poly: self.poly.xshift(n, step).scale(&factor),
            valuation: self.valuation,
        }
    }
}

fn cancel_common(f: &XPoly, g: &XPoly) -> (XPoly, XPoly) {
    if f.is_constant() || g.is_constant() {
        return (f.clone(), g.clone());
    }
    let h = gcd(f, g);
    if h.is_constant() {
        (f.clone(), g.clone())
    } else {
        (f.divmod(&h).0, g.divmod(&h).0)
    }
}

/// Rational function in x over ℚ(q): coprime, monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct XRat {
    num: XPoly,
    den: XPoly,
}

impl XRat {
    pub fn new(num: XPoly, den: XPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: XPoly, den: XPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.divmod(&g).0, den.divmod(&g).0)
            }
        };
        let lc = den.lc().expect("nonzero").clone();
        if lc.is_one() {
            XRat { num, den }
        } else {
            let inv = lc.inverse();
            XRat {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        XRat {
            num: XPoly::zero(),
            den: XPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(XPoly::one())
    }

    pub fn from_poly(p: XPoly) -> Self {
        XRat {
            num: p,
            den: XPoly::one(),
        }
    }

    pub fn from_qrat(c: QRat) -> Self {
        Self::from_poly(xconst(c))
    }

    pub fn num(&self) -> &XPoly {
        &self.num
    }

    pub fn den(&self) -> &XPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&XPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let l1 = self.den.divmod(&g).0;
        let l2 = rhs.den.divmod(&g).0;
        let num = self.num.mul(&l2).add(&rhs.num.mul(&l1));
        Self::normalized(num, l1.mul(&rhs.den))
    }

    pub fn neg(&self) -> Self {
        XRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // both operands are reduced, so only the cross pairs can cancel
        let (n1, d2) = cancel_common(&self.num, &rhs.den);
        let (n2, d1) = cancel_common(&rhs.num, &self.den);
        let (num, den) = (n1.mul(&n2), d1.mul(&d2));
        let lc = den.lc().expect("nonzero").inverse();
        XRat {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(
            self.num.mul(&rhs.den),
            self.den.mul(&rhs.num),
        ))
    }

    pub fn scale(&self, c: &QRat) -> Self {
        XRat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Value at `x = q^{step·j}`.
    pub fn eval_at_qpower(&self, j: i64, step: u32) -> Result<QRat> {
        let d = eval_poly_at_qpower(&self.den, j, step);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(j));
        }
        eval_poly_at_qpower(&self.num, j, step).div(&d)
    }
}

impl XShift for XRat {
    fn xshift(&self, n: i64, step: u32) -> Self {
        Self::normalized(self.num.xshift(n, step), self.den.xshift(n, step))
    }
}

impl From<XPoly> for XRat {
    fn from(p: XPoly) -> Self {
        XRat::from_poly(p)
    }
}

macro_rules! xrat_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&XRat> for &XRat {
            type Output = XRat;
            fn $m(self, rhs: &XRat) -> XRat {
                XRat::$f(self, rhs)
            }
        }
    };
}

xrat_binop!(Add, add, add);
xrat_binop!(Sub, sub, sub);
xrat_binop!(Mul, mul, mul);

impl Neg for &XRat {
    type Output = XRat;
    fn neg(self) -> XRat {
        XRat::neg(self)
    }
}
