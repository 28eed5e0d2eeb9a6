//! Dense univariate polynomials over an arbitrary coefficient ring.
//!
//! The same container serves as ℚ[q] (coefficients in ℚ), as the x-polynomials
//! over ℚ(q), and as the auxiliary y-polynomials used in resultants.

use crate::ring::{Domain, Field, Ring};

/// Dense polynomial, `coeffs[i]` is the coefficient of the i-th power.
/// The coefficient list never ends in a zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c · var^n`
    pub fn monomial(c: C, n: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); n + 1];
        coeffs[n] = c;
        Poly { coeffs }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power carrying a nonzero coefficient, `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficient of `var^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn lc(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Trailing coefficient (the lowest nonzero one).
    pub fn tc(&self) -> Option<&C> {
        self.order().map(|i| &self.coeffs[i])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(Ring::negated).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.minus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.negated(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::new(C::convolve(&self.coeffs, &rhs.coeffs))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `var^n`.
    pub fn shift_up(&self, n: usize) -> Self {
        if self.is_zero() || n == 0 {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `var^n`, which must divide the polynomial.
    pub fn shift_down(&self, n: usize) -> Self {
        debug_assert!(self.order().is_none_or(|o| o >= n));
        Poly {
            coeffs: self.coeffs.iter().skip(n).cloned().collect(),
        }
    }

    /// `p(s·var)`: coefficient i is multiplied by `s^i`.
    pub fn scale_var(&self, s: &C) -> Self {
        let mut factor = C::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.times(&factor));
            factor = factor.times(s);
        }
        Self::new(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.times(at).plus(c))
    }

    /// Apply a ring map to every coefficient.
    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Field> Poly<C> {
    /// Euclidean division; `rhs` must be nonzero.
    pub fn divmod(&self, rhs: &Self) -> (Self, Self) {
        let dr = rhs.degree().expect("division by the zero polynomial");
        let inv_lc = rhs.coeffs[dr].inverse();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dr {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![C::zero(); rem.len() - dr];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dr].times(&inv_lc);
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[k + j] = rem[k + j].minus(&c.times(b));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dr);
        (Self::new(quot), Self::new(rem))
    }

    /// Leading coefficient scaled to one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inverse()),
        }
    }

    /// Monic gcd via Euclidean remainders. `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), rhs.monic());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Self::one();
            }
            let (_, r) = a.divmod(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Exact quotient, `None` if `rhs` does not divide `self`.
    pub fn div_exact_poly(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.divmod(rhs);
        r.is_zero().then_some(q)
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
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
}

impl<C: Field> Domain for Poly<C> {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div_exact_poly(rhs)
    }
}
