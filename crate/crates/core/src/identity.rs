//! Series identities, telescoping certificates and the generation pipeline
//! that turns a base identity plus a shift-pair choice into a new identity.

use crate::field::QRat;
use crate::reduction::{rational_reduce, telescoper, QuotientPair, ShiftPairSpec};
use crate::xalg::{XPoly, XRat};
use crate::{Error, Result};

/// A q-hypergeometric term: `t_0` and the shift quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermSpec {
    pub pair: QuotientPair,
    pub t0: QRat,
}

impl TermSpec {
    pub fn new(pair: QuotientPair, t0: QRat) -> Result<Self> {
        if t0.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(TermSpec { pair, t0 })
    }
}

/// `(base; q^modulus)_∞^exponent`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PochFactor {
    pub base: QRat,
    pub modulus: u32,
    pub exponent: i32,
}

/// `prefactor · ∏ factors`; an empty factor list is a plain constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PochTerm {
    pub prefactor: QRat,
    pub factors: Vec<PochFactor>,
}

impl PochTerm {
    pub fn constant(c: QRat) -> Self {
        PochTerm {
            prefactor: c,
            factors: Vec::new(),
        }
    }
}

/// `Σ_{k≥0} multiplier(q^{ℓk})·t_k = Σ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesIdentity {
    pub name: String,
    pub term: TermSpec,
    pub multiplier: XRat,
    pub rhs: Vec<PochTerm>,
}

/// A derived identity together with the evidence connecting it to its base.
///
/// `certificate` is ρ with `base.multiplier − output.multiplier =
/// ρ(Qx)·a/b − ρ`; summing over k, and assuming `ρ(q^{ℓk})·t_k → 0`, gives
/// `output.rhs = base.rhs + boundary` where `boundary = ρ(1)·t_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub base: SeriesIdentity,
    pub spec: ShiftPairSpec,
    pub output: SeriesIdentity,
    pub certificate: XRat,
    pub boundary: QRat,
}

impl Derivation {
    /// Re-checks the certificate, the boundary value and the right-hand side
    /// bookkeeping.
    pub fn verify(&self) -> bool {
        let pair = &self.base.term.pair;
        if self.output.term != self.base.term {
            return false;
        }
        if !verify_certificate(&self.base.multiplier, &self.output.multiplier, pair, &self.certificate) {
            return false;
        }
        match boundary_term(&self.certificate, &self.base.term) {
            Ok(t0) if t0 == self.boundary => {}
            _ => return false,
        }
        self.output.rhs == derived_rhs(&self.base.rhs, &self.boundary)
    }
}

/// Checks `ρ(Qx)·a/b − ρ = lhs − derived` by cross-multiplication.
pub fn verify_certificate(lhs: &XRat, derived: &XRat, pair: &QuotientPair, rho: &XRat) -> bool {
    let Ok(t) = telescoper(pair, rho) else {
        return false;
    };
    let diff = lhs.sub(derived);
    t.num().mul(diff.den()) == diff.num().mul(t.den())
}

/// `T_0 = ρ(1)·t_0`.
pub fn boundary_term(rho: &XRat, term: &TermSpec) -> Result<QRat> {
    Ok(rho.eval_at_qpower(0, term.pair.step)?.mul(&term.t0))
}

/// The base right-hand side with the boundary constant appended (omitted
/// when it is zero).
pub fn derived_rhs(base: &[PochTerm], boundary: &QRat) -> Vec<PochTerm> {
    let mut rhs = base.to_vec();
    if !boundary.is_zero() {
        rhs.push(PochTerm::constant(boundary.clone()));
    }
    rhs
}

/// Runs the q-rational reduction on the base multiplier and packages the
/// resulting identity with its verified certificate.
pub fn generate(base: &SeriesIdentity, spec: &ShiftPairSpec, name: &str) -> Result<Derivation> {
    let p: &XPoly = base.multiplier.as_poly().ok_or(Error::NotPolynomial)?;
    let pair = &base.term.pair;
    let red = rational_reduce(pair, spec, p)?;
    let multiplier = XRat::new(red.remainder.clone(), red.denominator.clone())?;
    let certificate = red.certificate;
    if !verify_certificate(&base.multiplier, &multiplier, pair, &certificate) {
        return Err(Error::CertificateInvalid(format!("generated identity {name}")));
    }
    let boundary = boundary_term(&certificate, &base.term)?;
    let output = SeriesIdentity {
        name: name.to_string(),
        term: base.term.clone(),
        multiplier,
        rhs: derived_rhs(&base.rhs, &boundary),
    };
    Ok(Derivation {
        base: base.clone(),
        spec: spec.clone(),
        output,
        certificate,
        boundary,
    })
}
