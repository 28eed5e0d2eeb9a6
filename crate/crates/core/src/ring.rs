//! Minimal algebraic traits shared by every coefficient type in the crate.
//!
//! Method names avoid the `std::ops` names so that generic code never has to
//! spell out higher-ranked operator bounds.

use std::fmt::Debug;

/// A commutative ring with identity.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Coefficient convolution used by polynomial multiplication. Both slices
    /// are nonempty. Coefficient types with a cheaper route override this.
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = out[i + j].plus(&x.times(y));
                }
            }
        }
        out
    }

    fn pow_u(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// A field. `inverse` must only be called on nonzero elements.
pub trait Field: Ring {
    fn inverse(&self) -> Self;

    fn over(&self, rhs: &Self) -> Self {
        self.times(&rhs.inverse())
    }
}

/// An integral domain with a test for exact divisibility.
pub trait Domain: Ring {
    /// Returns `self / rhs` when the quotient exists in the ring.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}
