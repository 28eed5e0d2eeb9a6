//! Exact q-polynomial and q-rational reduction for q-hypergeometric terms.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`]: exact arithmetic in ℚ and ℚ(q)
//! - [`xalg`]: polynomials, Laurent polynomials and rational functions in x over ℚ(q)
//! - [`reduction`]: q-difference spaces, the q-polynomial reduction, shift pairs and
//!   the q-rational reduction
//! - [`gosper`]: q-Gosper representation, dispersion and the q-Gosper equation
//! - [`identity`]: series identities, telescoping certificates and identity generation
//! - [`numeval`]: high-precision numeric evaluation of series and q-Pochhammer products
//!
//! A q-hypergeometric term `t_k` is described by its shift quotient
//! `t_{k+1}/t_k = a(q^{ℓk})/b(q^{ℓk})` with polynomials `a`, `b` in `x = q^{ℓk}`.

pub mod field;
pub mod gosper;
pub mod identity;
pub mod linalg;
pub mod numeval;
pub mod poly;
pub mod reduction;
pub mod ring;
pub mod xalg;

pub use field::{QPoly, QRat, Rat};
pub use poly::Poly;
pub use xalg::{LPoly, XPoly, XRat};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("both polynomials are zero")]
    BothZero,
    #[error("divisor is the zero polynomial")]
    DivisorZero,
    #[error("pole at x = q^({0})")]
    PoleAtPoint(i64),
    #[error("zero polynomial in quotient pair")]
    ZeroPolynomial,
    #[error("generator has degree {found:?}, expected {expected}")]
    DegreeMismatch { expected: usize, found: Option<usize> },
    #[error("{0} is not a factor of the shift quotient")]
    NotAFactor(&'static str),
    #[error("multiplier must be nonzero")]
    ZeroMultiplier,
    #[error("certificate failed verification: {0}")]
    CertificateInvalid(String),
    #[error("numeric domain error: {0}")]
    DomainError(String),
    #[error("pole at summation index {0}")]
    PoleAtIndex(u64),
    #[error("both polynomials vanish at x = 0; every q-shift shares that root")]
    CommonZeroRoot,
    #[error("expected a polynomial, found a rational function or Laurent polynomial")]
    NotPolynomial,
}

pub type Result<T> = std::result::Result<T, Error>;
