//! High-precision numeric checks: both sides of a series identity at a
//! concrete `q0 ∈ (0, 1)`, infinite q-Pochhammer products with a truncation
//! bound, telescoping partial sums, and classical (q → 1) series.
//!
//! Step ratios of the term recurrence are formed as exact rationals (so
//! poles are detected exactly) and rounded once before entering the product.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::field::{QRat, Rat};
use crate::identity::{Derivation, PochTerm, SeriesIdentity};
use crate::xalg::{XPoly, XRat};
use crate::{Error, Poly, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: usize = 256;

/// Arbitrary-precision binary float carrying its working precision.
#[derive(Clone, Debug)]
pub struct BigFloat {
    value: astro_float::BigFloat,
    precision: usize,
}

impl BigFloat {
    fn wrap(value: astro_float::BigFloat, precision: usize) -> Self {
        BigFloat { value, precision }
    }

    pub fn zero(precision: usize) -> Self {
        Self::from_i64(0, precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::from_i64(1, precision)
    }

    pub fn from_i64(n: i64, precision: usize) -> Self {
        let precision = precision.max(64);
        Self::wrap(astro_float::BigFloat::from_i64(n, precision), precision)
    }

    pub fn from_bigint(n: &BigInt, precision: usize) -> Self {
        let precision = precision.max(64);
        let (sign, words) = n.to_u64_digits();
        if words.is_empty() {
            return Self::zero(precision);
        }
        let s = if sign == num_bigint::Sign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        };
        let e = (64 * words.len()) as astro_float::Exponent;
        let mut v = astro_float::BigFloat::from_words(&words, s, e);
        // round to working precision only when it shortens the mantissa
        if words.len() * 64 > precision {
            v.set_precision(precision, RM).expect("valid precision");
        }
        Self::wrap(v, precision)
    }

    pub fn from_rat(r: &Rat, precision: usize) -> Self {
        let n = Self::from_bigint(r.numer(), precision);
        if r.denom().is_one() {
            return n;
        }
        n.div(&Self::from_bigint(r.denom(), precision))
    }

    pub fn pi(precision: usize) -> Self {
        let precision = precision.max(64);
        let mut cc = Consts::new().expect("constants cache");
        Self::wrap(cc.pi(precision, RM), precision)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    fn p(&self, rhs: &Self) -> usize {
        self.precision.max(rhs.precision)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.p(rhs);
        Self::wrap(self.value.add(&rhs.value, p, RM), p)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.p(rhs);
        Self::wrap(self.value.sub(&rhs.value, p, RM), p)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.p(rhs);
        Self::wrap(self.value.mul(&rhs.value, p, RM), p)
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.p(rhs);
        Self::wrap(self.value.div(&rhs.value, p, RM), p)
    }

    pub fn powi(&self, n: usize) -> Self {
        Self::wrap(self.value.powi(n, self.precision, RM), self.precision)
    }

    pub fn neg(&self) -> Self {
        Self::wrap(self.value.neg(), self.precision)
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.precision)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `2^e`
    pub fn pow2(e: i32, precision: usize) -> Self {
        let mut v = astro_float::BigFloat::from_i64(1, precision.max(64));
        if let Some(x) = v.exponent() {
            v.set_exponent(x + e);
        }
        Self::wrap(v, precision.max(64))
    }

    /// `10^-n`
    pub fn ten_pow_neg(n: usize, precision: usize) -> Self {
        let ten = Self::from_i64(10, precision);
        Self::one(precision).div(&ten.powi(n))
    }

    /// Nearest `f64`; underflows to zero for magnitudes below ~1e-308.
    pub fn to_f64(&self) -> f64 {
        let Some((words, _, sign, e, _)) = self.value.as_raw_parts() else {
            return f64::NAN;
        };
        let Some(&top) = words.last() else {
            return 0.0;
        };
        if top == 0 {
            return 0.0;
        }
        let frac = top as f64 / 2f64.powi(64);
        let mag = if e < -1100 { 0.0 } else { frac * 2f64.powi(e) };
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// Base-2 exponent: `|self| ∈ [2^{e−1}, 2^e)`; `None` for zero.
    pub fn exponent(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            self.value.exponent()
        }
    }

    pub fn lt(&self, rhs: &Self) -> bool {
        self.partial_cmp(rhs) == Some(Ordering::Less)
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.value.cmp(&other.value) == Some(0)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut cc = Consts::new().map_err(|_| fmt::Error)?;
        let s = self
            .value
            .format(astro_float::Radix::Dec, RM, &mut cc)
            .map_err(|_| fmt::Error)?;
        f.write_str(&s)
    }
}

/// A truncated infinite product and a bound on the truncation error.
#[derive(Clone, Debug)]
pub struct PochValue {
    pub value: BigFloat,
    pub tail_estimate: BigFloat,
    pub factors_used: usize,
}

/// `(base; ratio)_∞ = ∏_{i≥0} (1 − base·ratio^i)`.
///
/// Multiplication stops at the first `n` with `|base·ratio^n| < 2^{−precision}`.
/// The omitted factors change the product by a relative amount of at most
/// `2u/((1−|ratio|)(1−u))` with `u = |base·ratio^n|`, which is folded into
/// `tail_estimate` as an absolute bound.
pub fn poch_inf(base: &BigFloat, ratio: &BigFloat, precision: usize) -> Result<PochValue> {
    let one = BigFloat::one(precision);
    if !ratio.abs().lt(&one) {
        return Err(Error::DomainError("|ratio| must be below 1".into()));
    }
    if !base.abs().lt(&one) {
        return Err(Error::DomainError("|base| must be below 1".into()));
    }
    let eps = BigFloat::pow2(-(precision as i32), precision);
    let mut value = one.clone();
    let mut u = base.clone();
    let mut n = 0;
    while !u.abs().lt(&eps) {
        value = value.mul(&one.sub(&u));
        u = u.mul(ratio);
        n += 1;
        if n > 1_000_000 {
            return Err(Error::DomainError("product does not converge".into()));
        }
    }
    let ua = u.abs();
    let two = BigFloat::from_i64(2, precision);
    let rel = two
        .mul(&ua)
        .div(&one.sub(&ratio.abs()).mul(&one.sub(&ua)));
    Ok(PochValue {
        tail_estimate: value.abs().mul(&rel),
        value,
        factors_used: n,
    })
}

/// Outcome of evaluating both sides of an identity.
#[derive(Clone, Debug)]
pub struct EvalReport {
    pub lhs: BigFloat,
    pub rhs: BigFloat,
    pub absdiff: BigFloat,
    pub terms_used: usize,
    pub tail_estimate: BigFloat,
}

/// Value of `c` at `q = v`; `None` when the denominator vanishes there.
fn substitute(c: &QRat, v: &Rat) -> Option<Rat> {
    let d = c.den().eval(v);
    if d.is_zero() {
        return None;
    }
    Some(c.num().eval(v) / d)
}

/// x-polynomial with q replaced by `q0`.
fn specialize_poly(p: &XPoly, q0: &Rat) -> Result<Poly<Rat>> {
    let cs = p
        .coeffs()
        .iter()
        .map(|c| substitute(c, q0).ok_or_else(|| pole_in_q(q0)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(cs))
}

fn pole_in_q(q0: &Rat) -> Error {
    Error::DomainError(format!("coefficient has a pole at q = {q0}"))
}

fn eval_qrat(c: &QRat, q0: &Rat) -> Result<Rat> {
    substitute(c, q0).ok_or_else(|| pole_in_q(q0))
}

/// Rational function of x specialized at `q = q0`.
struct Specialized {
    num: Poly<Rat>,
    den: Poly<Rat>,
}

impl Specialized {
    fn new(r: &XRat, q0: &Rat) -> Result<Self> {
        Ok(Specialized {
            num: specialize_poly(r.num(), q0)?,
            den: specialize_poly(r.den(), q0)?,
        })
    }

    fn eval(&self, x: &Rat, k: usize) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtIndex(k as u64));
        }
        Ok(self.num.eval(x) / d)
    }
}

/// Terms `t_0..=t_n` of a q-hypergeometric sequence at `q = q0`, together
/// with the exact evaluation points `x_k = q0^{ℓk}`.
///
/// Each step ratio `a(x_k)/b(x_k)` is formed exactly (so a vanishing `b` is
/// detected exactly) and then rounded; exact `t_k` would grow like `k²` bits.
fn term_values(
    identity_term: &crate::identity::TermSpec,
    q0: &Rat,
    n: usize,
    precision: usize,
) -> Result<(Vec<Rat>, Vec<BigFloat>)> {
    let pair = &identity_term.pair;
    let a = specialize_poly(&pair.a, q0)?;
    let b = specialize_poly(&pair.b, q0)?;
    let big_q = num_traits::pow(q0.clone(), pair.step as usize);
    let mut xs = Vec::with_capacity(n + 1);
    let mut ts = Vec::with_capacity(n + 1);
    let mut x = Rat::one();
    let mut t = BigFloat::from_rat(&eval_qrat(&identity_term.t0, q0)?, precision);
    for k in 0..=n {
        xs.push(x.clone());
        ts.push(t.clone());
        if k == n {
            break;
        }
        let bk = b.eval(&x);
        if bk.is_zero() {
            return Err(Error::PoleAtIndex(k as u64));
        }
        t = t.mul(&BigFloat::from_rat(&(a.eval(&x) / bk), precision));
        x = &x * &big_q;
    }
    Ok((xs, ts))
}

/// Value of a right-hand side at `q = q0`, and the summed truncation bounds.
pub fn eval_rhs(rhs: &[PochTerm], q0: &Rat, precision: usize) -> Result<(BigFloat, BigFloat)> {
    let mut total = BigFloat::zero(precision);
    let mut tail = BigFloat::zero(precision);
    for term in rhs {
        let mut v = BigFloat::from_rat(&eval_qrat(&term.prefactor, q0)?, precision);
        let mut rel = BigFloat::zero(precision);
        for f in &term.factors {
            let base = BigFloat::from_rat(&eval_qrat(&f.base, q0)?, precision);
            let ratio = BigFloat::from_rat(&num_traits::pow(q0.clone(), f.modulus as usize), precision);
            let pv = poch_inf(&base, &ratio, precision)?;
            if pv.value.is_zero() && f.exponent < 0 {
                return Err(Error::DomainError("Pochhammer product vanishes".into()));
            }
            let e = f.exponent.unsigned_abs() as usize;
            let powered = pv.value.powi(e);
            v = if f.exponent >= 0 {
                v.mul(&powered)
            } else {
                v.div(&powered)
            };
            // relative errors add (to first order) with multiplicity |e|
            let r = pv.tail_estimate.div(&pv.value.abs());
            rel = rel.add(&r.mul(&BigFloat::from_i64(e as i64, precision)));
        }
        tail = tail.add(&v.abs().mul(&rel));
        total = total.add(&v);
    }
    Ok((total, tail))
}

/// Evaluates `Σ_{k=0}^{nterms} multiplier(q0^{ℓk})·t_k` and the right-hand side.
pub fn eval_series(
    identity: &SeriesIdentity,
    q0: &Rat,
    nterms: usize,
    precision: usize,
) -> Result<EvalReport> {
    check_q0(q0)?;
    let mult = Specialized::new(&identity.multiplier, q0)?;
    let (xs, ts) = term_values(&identity.term, q0, nterms, precision)?;
    let mut lhs = BigFloat::zero(precision);
    let mut last = BigFloat::zero(precision);
    let mut prev = BigFloat::zero(precision);
    for (k, (x, t)) in xs.iter().zip(&ts).enumerate() {
        let s = BigFloat::from_rat(&mult.eval(x, k)?, precision).mul(t);
        lhs = lhs.add(&s);
        prev = std::mem::replace(&mut last, s);
    }
    let (rhs, rhs_tail) = eval_rhs(&identity.rhs, q0, precision)?;
    let absdiff = lhs.sub(&rhs).abs();
    Ok(EvalReport {
        lhs,
        rhs,
        absdiff,
        terms_used: nterms + 1,
        tail_estimate: series_tail(&last, &prev).add(&rhs_tail),
    })
}

/// Geometric estimate of the omitted tail from the last two summands.
fn series_tail(last: &BigFloat, prev: &BigFloat) -> BigFloat {
    let p = last.precision();
    let (l, pr) = (last.abs(), prev.abs());
    if pr.is_zero() || !l.lt(&pr) {
        return l;
    }
    let r = l.div(&pr);
    l.mul(&r).div(&BigFloat::one(p).sub(&r))
}

fn check_q0(q0: &Rat) -> Result<()> {
    if q0.is_positive() && q0 < &Rat::one() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("q0 = {q0} is outside (0, 1)")))
    }
}

/// Partial-sum check of a derivation.
#[derive(Clone, Debug)]
pub struct TelescopeReport {
    /// `|Σ_{k=0}^{N}(base − derived)·t_k − (T_{N+1} − T_0)|`
    pub residual: BigFloat,
    /// `|T_{N+1}|`
    pub last_boundary: BigFloat,
}

/// Checks that the partial sums of `base − derived` telescope to
/// `T_{N+1} − T_0` with `T_k = ρ(q0^{ℓk})·t_k`.
pub fn check_telescoping(
    derivation: &Derivation,
    q0: &Rat,
    n: usize,
    precision: usize,
) -> Result<TelescopeReport> {
    check_q0(q0)?;
    let term = &derivation.base.term;
    let base = Specialized::new(&derivation.base.multiplier, q0)?;
    let derived = Specialized::new(&derivation.output.multiplier, q0)?;
    let rho = Specialized::new(&derivation.certificate, q0)?;
    let (xs, ts) = term_values(term, q0, n + 1, precision)?;
    let mut sum = BigFloat::zero(precision);
    for k in 0..=n {
        let diff = base.eval(&xs[k], k)? - derived.eval(&xs[k], k)?;
        sum = sum.add(&BigFloat::from_rat(&diff, precision).mul(&ts[k]));
    }
    let t_first = BigFloat::from_rat(&rho.eval(&xs[0], 0)?, precision).mul(&ts[0]);
    let t_next = BigFloat::from_rat(&rho.eval(&xs[n + 1], n + 1)?, precision).mul(&ts[n + 1]);
    Ok(TelescopeReport {
        residual: sum.sub(&t_next.sub(&t_first)).abs(),
        last_boundary: t_next.abs(),
    })
}

/// How partial sums of a classical series are turned into a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summation {
    /// The plain partial sum `S_N`.
    Partial,
    /// Repeated pairwise averaging of the last `depth + 1` partial sums.
    /// Alternating series whose terms decay slowly (like `k^{-1/2}`) need
    /// this to reach useful accuracy at moderate N.
    Averaged { depth: usize },
}

/// `Σ_{k=0}^{N} multiplier(k)·t_k` with `t_{k+1} = ratio(k)·t_k`.
///
/// `ratio` and `multiplier` are rational functions of k, represented as
/// [`QRat`] with the indeterminate read as k.
pub fn eval_classical(
    ratio: &QRat,
    multiplier: &QRat,
    t0: &Rat,
    n: usize,
    precision: usize,
    summation: Summation,
) -> Result<BigFloat> {
    let mut t = t0.clone();
    let mut partial = Vec::with_capacity(n + 1);
    let mut acc = BigFloat::zero(precision);
    for k in 0..=n {
        let kk = Rat::from_integer(BigInt::from(k));
        let m = substitute(multiplier, &kk).ok_or(Error::PoleAtIndex(k as u64))?;
        acc = acc.add(&BigFloat::from_rat(&(m * &t), precision));
        partial.push(acc.clone());
        if k < n {
            t *= substitute(ratio, &kk).ok_or(Error::PoleAtIndex(k as u64))?;
        }
    }
    Ok(match summation {
        Summation::Partial => acc,
        Summation::Averaged { depth } => {
            let depth = depth.min(n);
            let half = BigFloat::one(precision).div(&BigFloat::from_i64(2, precision));
            let mut row: Vec<BigFloat> = partial[n - depth..].to_vec();
            while row.len() > 1 {
                row = row
                    .windows(2)
                    .map(|w| w[0].add(&w[1]).mul(&half))
                    .collect();
            }
            row.pop().expect("at least one partial sum")
        }
    })
}
