//! Exact arithmetic in ℚ and in the rational function field ℚ(q).
//!
//! `q` is a transcendental indeterminate here; it is never replaced by a
//! number. Numeric substitution lives in [`crate::numeval`].

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::Poly;
use crate::ring::{Domain, Field, Ring};
use crate::{Error, Result};

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

/// Polynomial in q with rational coefficients.
pub type QPoly = Poly<Rat>;

impl Ring for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        // integer convolution over a common denominator, one reduction per output
        let (ia, da) = integer_parts(a);
        let (ib, db) = integer_parts(b);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in ia.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in ib.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let d = da * db;
        out.into_iter().map(|n| Rat::new(n, d.clone())).collect()
    }
}

/// Splits rational coefficients into integers over their common denominator.
fn integer_parts(cs: &[Rat]) -> (Vec<BigInt>, BigInt) {
    use num_integer::Integer;
    let d = cs
        .iter()
        .fold(BigInt::one(), |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) });
    let ints = cs
        .iter()
        .map(|c| {
            if c.denom() == &d {
                c.numer().clone()
            } else {
                c.numer() * (&d / c.denom())
            }
        })
        .collect();
    (ints, d)
}

/// Monic gcd in ℚ[q]. Coprime inputs (the common case) are detected by a
/// gcd modulo a 61-bit prime before falling back to Euclid over ℚ.
pub fn qpoly_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() || b.is_zero() {
        return a.gcd(b);
    }
    if a.is_constant() || b.is_constant() {
        return QPoly::one();
    }
    let (oa, ob) = (a.order().unwrap_or(0), b.order().unwrap_or(0));
    let is_mono = |p: &QPoly| p.order() == p.degree();
    if is_mono(a) || is_mono(b) {
        return QPoly::monomial(rat(1), oa.min(ob));
    }
    if modp::coprime(a, b) {
        return QPoly::one();
    }
    prs_gcd(a, b)
}

/// Divides out the integer content.
fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    use num_integer::Integer;
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut v {
            *c /= &g;
        }
    }
    v
}

/// Monic gcd through the primitive pseudo-remainder sequence over ℤ[q];
/// Euclid over ℚ lets coefficient sizes explode.
fn prs_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut x = primitive(integer_parts(a.coeffs()).0);
    let mut y = primitive(integer_parts(b.coeffs()).0);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let dy = y.len() - 1;
        let ly = y[dy].clone();
        while x.len() >= y.len() {
            let lx = x.last().expect("nonempty").clone();
            let shift = x.len() - 1 - dy;
            for c in x.iter_mut() {
                *c *= &ly;
            }
            for (j, yj) in y.iter().enumerate() {
                x[shift + j] -= &lx * yj;
            }
            while x.last().is_some_and(|c| c.is_zero()) {
                x.pop();
            }
        }
        if x.is_empty() {
            let lc = y[dy].clone();
            return Poly::new(y.into_iter().map(|c| Rat::new(c, lc.clone())).collect());
        }
        x = primitive(x);
        std::mem::swap(&mut x, &mut y);
    }
    QPoly::one()
}

/// Exact quotient `a/b` in ℚ[q], computed over a common integer scale so no
/// rational normalization happens inside the long division.
pub(crate) fn qpoly_div_exact(a: &QPoly, b: &QPoly) -> Option<QPoly> {
    use num_integer::Integer;
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(QPoly::zero());
    }
    let (mut r, da) = integer_parts(a.coeffs());
    let (y, db) = integer_parts(b.coeffs());
    let n = y.len() - 1;
    if r.len() <= n {
        return None;
    }
    let ly = &y[n];
    let mut quot = vec![<Rat as Zero>::zero(); r.len() - n];
    for i in (0..quot.len()).rev() {
        let top = std::mem::take(&mut r[i + n]);
        if top.is_zero() {
            continue;
        }
        let (qi, rem) = top.div_rem(ly);
        if !rem.is_zero() {
            // quotient leaves ℤ[q]; use the rational division
            return a.div_exact_poly(b);
        }
        for (j, yj) in y.iter().enumerate().take(n) {
            r[i + j] -= &qi * yj;
        }
        quot[i] = Rat::from_integer(qi);
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    // a = da⁻¹·A, b = db⁻¹·B, so a/b = (db/da)·A/B
    let scale = Rat::new(db, da);
    Some(Poly::new(quot.into_iter().map(|c| c * &scale).collect()))
}

/// Coefficients of `c·f` in ℚ[q] for a nonzero scalar c, with the q-content
/// and integer content divided out.
pub(crate) fn primitive_coeffs(f: &[QRat]) -> Vec<QPoly> {
    let mut den = QPoly::one();
    for c in f.iter().filter(|c| !c.is_zero()) {
        let g = qpoly_gcd(&den, c.den());
        den = den.mul(&c.den().divmod(&g).0);
    }
    let cleared: Vec<QPoly> = f
        .iter()
        .map(|c| c.num().mul(&den.divmod(c.den()).0))
        .collect();
    primitive_qpolys(cleared)
}

/// Divides a list of q-polynomials by their common q-content and makes the
/// rational coefficients coprime integers.
pub(crate) fn primitive_qpolys(cs: Vec<QPoly>) -> Vec<QPoly> {
    let content = cs.iter().fold(QPoly::zero(), |g, c| qpoly_gcd(&g, c));
    if content.is_zero() {
        return cs;
    }
    let cs: Vec<QPoly> = if content.is_one() {
        cs
    } else {
        cs.iter().map(|c| c.divmod(&content).0).collect()
    };
    let flat: Vec<Rat> = cs.iter().flat_map(|c| c.coeffs().iter().cloned()).collect();
    let (ints, _) = integer_parts(&flat);
    let ints = primitive(ints);
    let mut it = ints.into_iter();
    cs.iter()
        .map(|c| Poly::new(c.coeffs().iter().map(|_| Rat::from_integer(it.next().unwrap())).collect()))
        .collect()
}

pub(crate) mod modp {
    use super::{QPoly, QRat, Rat};
    use num_bigint::BigInt;
    use num_traits::{ToPrimitive, Zero};

    const P: u64 = (1 << 61) - 1;

    fn mulm(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn powm(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, a);
            }
            a = mulm(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64) -> u64 {
        powm(a, P - 2)
    }

    fn reduce(n: &BigInt) -> u64 {
        let m: BigInt = ((n % P) + P) % P;
        m.to_u64().expect("residue fits")
    }

    fn image(p: &QPoly) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(p.coeffs().len());
        for c in p.coeffs() {
            let c: &Rat = c;
            if c.is_zero() {
                out.push(0);
                continue;
            }
            let d = reduce(c.denom());
            if d == 0 {
                return None;
            }
            out.push(mulm(reduce(c.numer()), inv(d)));
        }
        // leading coefficient must survive reduction so degrees are preserved
        (*out.last()? != 0).then_some(out)
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    /// Value of `c` at `q = s`, `None` at a pole.
    pub fn eval_qrat(c: &QRat, s: u64) -> Option<u64> {
        let at = |p: &QPoly| -> Option<u64> {
            let mut acc = 0;
            for c in p.coeffs().iter().rev() {
                let c: &Rat = c;
                let d = reduce(c.denom());
                if d == 0 {
                    return None;
                }
                acc = (mulm(acc, s) + mulm(reduce(c.numer()), inv(d))) % P;
            }
            Some(acc)
        };
        let d = at(c.den())?;
        if d == 0 {
            return None;
        }
        Some(mulm(at(c.num())?, inv(d)))
    }

    /// `true` guarantees the polynomials are coprime over ℚ; `false` is inconclusive.
    pub fn coprime(a: &QPoly, b: &QPoly) -> bool {
        let (Some(x), Some(y)) = (image(a), image(b)) else {
            return false;
        };
        gcd_is_one(x, y)
    }

    /// Whether two polynomials over 𝔽_p (ascending, nonzero) are coprime.
    pub fn gcd_is_one(mut x: Vec<u64>, mut y: Vec<u64>) -> bool {
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            if y.len() == 1 {
                return true;
            }
            let il = inv(*y.last().unwrap());
            let dy = y.len() - 1;
            while x.len() >= y.len() {
                let c = mulm(*x.last().unwrap(), il);
                let shift = x.len() - 1 - dy;
                for (j, &yj) in y.iter().enumerate() {
                    let t = mulm(c, yj);
                    x[shift + j] = (x[shift + j] + P - t) % P;
                }
                trim(&mut x);
            }
            std::mem::swap(&mut x, &mut y);
        }
        false
    }
}

impl Field for Rat {
    fn inverse(&self) -> Self {
        self.recip()
    }
}

impl Domain for Rat {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!Zero::is_zero(rhs)).then(|| self / rhs)
    }
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Element of ℚ(q) in canonical form: `num/den` coprime, `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: QPoly,
    den: QPoly,
}

impl std::fmt::Debug for QRat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |p: &QPoly| {
            if p.is_zero() {
                return "0".to_string();
            }
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !Zero::is_zero(*c))
                .map(|(i, c)| format!("{c}q^{i}"))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        if self.den.is_one() {
            write!(f, "({})", show(&self.num))
        } else {
            write!(f, "({})/({})", show(&self.num), show(&self.den))
        }
    }
}

impl QRat {
    /// Builds `num/den` and normalizes it.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: QPoly, den: QPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.coeffs()[0].recip();
            return QRat {
                num: num.scale(&inv),
                den: QPoly::one(),
            };
        }
        let g = qpoly_gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.divmod(&g).0, den.divmod(&g).0)
        };
        let lc = den.lc().expect("nonzero").clone();
        if One::is_one(&lc) {
            QRat { num, den }
        } else {
            let inv = lc.recip();
            QRat {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        QRat {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rat(rat(1))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat(n))
    }

    pub fn from_rat(c: Rat) -> Self {
        QRat {
            num: QPoly::constant(c),
            den: QPoly::one(),
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        QRat {
            num: p,
            den: QPoly::one(),
        }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::from_poly(QPoly::var())
    }

    /// `q^m` for any integer `m`.
    pub fn q_pow(m: i64) -> Self {
        let mono = QPoly::monomial(rat(1), m.unsigned_abs() as usize);
        if m >= 0 {
            Self::from_poly(mono)
        } else {
            QRat {
                num: QPoly::one(),
                den: mono,
            }
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the value lies in ℚ (no q-dependence).
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.coeff(0))
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
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::normalized(num, self.den.mul(&rhs.den))
    }

    pub fn neg(&self) -> Self {
        QRat {
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
        if self.den.is_one() && rhs.den.is_one() {
            return QRat {
                num: self.num.mul(&rhs.num),
                den: QPoly::one(),
            };
        }
        // cross-cancel first to keep the operands small
        let g1 = qpoly_gcd(&self.num, &rhs.den);
        let g2 = qpoly_gcd(&rhs.num, &self.den);
        let (a, d) = cancel(&self.num, &rhs.den, &g1);
        let (c, b) = cancel(&rhs.num, &self.den, &g2);
        Self::normalized(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(QRat {
            num: base.num.pow(e.unsigned_abs() as u32),
            den: base.den.pow(e.unsigned_abs() as u32),
        })
    }

    /// `Some(m)` exactly when the value equals `q^m`.
    pub fn power_of_q(&self) -> Result<Option<i64>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mono = |p: &QPoly| -> Option<(usize, Rat)> {
            let o = p.order()?;
            (o == p.degree()?).then(|| (o, p.coeffs()[o].clone()))
        };
        Ok(match (mono(&self.num), mono(&self.den)) {
            (Some((a, ca)), Some((b, _))) if One::is_one(&ca) => Some(a as i64 - b as i64),
            _ => None,
        })
    }

    /// `(deg num, ord num, deg den, ord den)` in q.
    pub fn q_degree_span(&self) -> Result<(usize, usize, usize, usize)> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let dn = |p: &QPoly| (p.degree().unwrap_or(0), p.order().unwrap_or(0));
        let (a, b) = dn(&self.num);
        let (c, d) = dn(&self.den);
        Ok((a, b, c, d))
    }
}

fn cancel(a: &QPoly, b: &QPoly, g: &QPoly) -> (QPoly, QPoly) {
    if g.is_constant() {
        (a.clone(), b.clone())
    } else {
        (a.divmod(g).0, b.divmod(g).0)
    }
}

impl Ring for QRat {
    fn zero() -> Self {
        QRat::zero()
    }
    fn one() -> Self {
        QRat::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn is_one(&self) -> bool {
        QRat::is_one(self)
    }
}

impl Field for QRat {
    fn inverse(&self) -> Self {
        self.inv().expect("inverse of zero in Q(q)")
    }
}

impl Domain for QRat {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        QRat::div(self, rhs).ok()
    }
}

macro_rules! qrat_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&QRat> for &QRat {
            type Output = QRat;
            fn $m(self, rhs: &QRat) -> QRat {
                $body(self, rhs)
            }
        }
        impl $tr<QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat {
                $body(&self, &rhs)
            }
        }
    };
}

qrat_binop!(Add, add, |a: &QRat, b: &QRat| QRat::add(a, b));
qrat_binop!(Sub, sub, |a: &QRat, b: &QRat| QRat::sub(a, b));
qrat_binop!(Mul, mul, |a: &QRat, b: &QRat| QRat::mul(a, b));
qrat_binop!(Div, div, |a: &QRat, b: &QRat| QRat::div(a, b)
    .expect("division by zero in Q(q)"));

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat::neg(self)
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat::neg(&self)
    }
}

/// `(1 - q^n)/(1 - q)` evaluated symbolically, for any integer `n`.
pub fn q_int(n: i64) -> QRat {
    let one = QRat::one();
    (&one - &QRat::q_pow(n)) / (&one - &QRat::q())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QRat {
        QRat::q()
    }

    fn one() -> QRat {
        QRat::one()
    }

    #[test]
    fn prs_gcd_matches_euclid() {
        let p = |cs: &[i64]| QPoly::new(cs.iter().map(|&c| rat(c)).collect());
        let common = p(&[3, -1, 2]);
        let cases = [
            (p(&[1, 1]).mul(&common), p(&[-2, 0, 5]).mul(&common)),
            (p(&[1, -1]).pow(3), p(&[1, -1]).pow(2).mul(&p(&[1, 1]))),
            (p(&[2, 7, 1, 9]), p(&[1, 4])),
            (common.scale(&ratio(3, 7)), common.mul(&p(&[0, 0, 1]))),
        ];
        for (a, b) in cases {
            assert_eq!(prs_gcd(&a, &b), a.gcd(&b));
            assert_eq!(qpoly_gcd(&a, &b), a.gcd(&b));
        }
    }

    #[test]
    fn integer_exact_division() {
        let p = |cs: &[i64]| QPoly::new(cs.iter().map(|&c| rat(c)).collect());
        let a = p(&[3, -1, 2]).scale(&ratio(5, 3));
        let b = p(&[2, 0, 7]).scale(&ratio(1, 4));
        assert_eq!(qpoly_div_exact(&a.mul(&b), &b), Some(a.clone()));
        // quotient with fractional coefficients
        assert_eq!(qpoly_div_exact(&p(&[1, 1]), &p(&[2, 2])), Some(p(&[1]).scale(&ratio(1, 2))));
        assert_eq!(qpoly_div_exact(&a.add(&p(&[1])), &b), None);
        assert_eq!(qpoly_div_exact(&p(&[1]), &p(&[0, 1])), None);
    }

    #[test]
    fn add_q_and_one() {
        let s = &q() + &one();
        assert_eq!(s.num().coeffs(), &[rat(1), rat(1)]);
        assert!(s.den().is_one());
    }

    #[test]
    fn factor_cancellation() {
        let num = &one() - &q().pow(2).unwrap();
        let den = &one() - &q();
        assert_eq!(&num / &den, &one() + &q());
    }

    #[test]
    fn inverse_moves_sign_into_numerator() {
        let f = (&one() - &q()).pow(3).unwrap();
        let inv = f.inv().unwrap();
        // (1-q)^3 = -(q-1)^3, so 1/(1-q)^3 = -1/(q-1)^3
        assert_eq!(inv.num().coeffs(), &[rat(-1)]);
        assert_eq!(inv.den().coeffs(), &[rat(-1), rat(3), rat(-3), rat(1)]);
        assert_eq!(&inv * &f, one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(QRat::div(&one(), &QRat::zero()), Err(Error::DivisionByZero));
        assert_eq!(QRat::zero().inv(), Err(Error::DivisionByZero));
        assert!(QRat::new(QPoly::one(), QPoly::zero()).is_err());
    }

    #[test]
    fn power_of_q_examples() {
        assert_eq!(QRat::q_pow(3).power_of_q().unwrap(), Some(3));
        assert_eq!(one().power_of_q().unwrap(), Some(0));
        let two_q = &QRat::from_int(2) * &q();
        assert_eq!(two_q.power_of_q().unwrap(), None);
        assert_eq!(QRat::zero().power_of_q(), Err(Error::ZeroInput));
        assert_eq!((&one() + &q()).power_of_q().unwrap(), None);
    }

    #[test]
    fn power_of_q_full_range() {
        for m in -20..=20 {
            assert_eq!(QRat::q_pow(m).power_of_q().unwrap(), Some(m));
            for c in [ratio(1, 2), rat(-1), rat(3), ratio(-7, 5)] {
                let v = &QRat::from_rat(c) * &QRat::q_pow(m);
                assert_eq!(v.power_of_q().unwrap(), None);
            }
        }
    }

    #[test]
    fn q_degree_span_examples() {
        let f = &QRat::q_pow(2) + &QRat::q_pow(5);
        assert_eq!(f.q_degree_span().unwrap(), (5, 2, 0, 0));
        let g = (&one() - &q()).inv().unwrap();
        assert_eq!(g.q_degree_span().unwrap(), (0, 0, 1, 0));
        let h = &q() - &QRat::q_pow(3);
        assert_eq!(h.q_degree_span().unwrap(), (3, 1, 0, 0));
        assert_eq!(QRat::zero().q_degree_span(), Err(Error::ZeroInput));
    }

    #[test]
    fn negative_powers_normalise() {
        let v = &QRat::q_pow(-2) * &QRat::q_pow(5);
        assert_eq!(v, QRat::q_pow(3));
        assert_eq!(q_int(0), QRat::zero());
        assert_eq!(q_int(2), &one() + &q());
        // [-1]_q = -1/q
        assert_eq!(q_int(-1), -QRat::q_pow(-1));
    }
}
