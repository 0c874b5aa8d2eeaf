//! Exact arithmetic in ℚ(t) with `t = q^{1/48}`.
//!
//! Every fractional power of `q` that the vertex formulas produce has a
//! denominator dividing 48, so exponents are stored as integers `e48`
//! meaning `q^{e48/48}`.

mod gcd;
mod laurent;
pub mod matrix;
mod qrat;

use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use thiserror::Error;

pub use laurent::LaurentPoly;
pub use qrat::QRat;

#[cfg(test)]
pub(crate) use laurent::int;

/// Exponent lattice scale: `q^{e/48}` is `t^e`.
pub const LATTICE: i64 = 48;
/// `q^{1/2}` in lattice units.
pub const HALF: i64 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("exponent {0} is not a multiple of 1/48")]
    NonLatticeExponent(Rational64),
    #[error("value is not a rational function of q^(1/2)")]
    NonHalfLattice,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the requested specialization")]
    DenominatorVanishes,
    #[error("invalid specialization u0 = {0} (must be nonzero and not ±1)")]
    InvalidSpecialization(BigRational),
    #[error("parse error: {0}")]
    Parse(String),
}

/// How scalars are interpreted: symbolically in ℚ(q^{1/48}), or with
/// `u = q^{1/2}` specialised to a rational number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarMode {
    Symbolic,
    NumericHalf(BigRational),
}

impl ScalarMode {
    pub fn numeric_half(u0: BigRational) -> Result<Self, QError> {
        if u0.is_zero() || u0.is_one() || (-u0.clone()).is_one() {
            return Err(QError::InvalidSpecialization(u0));
        }
        Ok(ScalarMode::NumericHalf(u0))
    }

    /// `q^e` under this mode's lattice restrictions.
    pub fn qpow(&self, e: Rational64) -> Result<QRat, QError> {
        let x = qpow(e)?;
        match self {
            ScalarMode::NumericHalf(_) if !half_lattice_check(&x) => Err(QError::NonHalfLattice),
            _ => Ok(x),
        }
    }
}

/// `q^e` for rational `e` with `48 e` integral.
pub fn qpow(e: Rational64) -> Result<QRat, QError> {
    let scaled = e * Rational64::from_integer(LATTICE);
    if !scaled.is_integer() {
        return Err(QError::NonLatticeExponent(e));
    }
    Ok(QRat::q48(scaled.to_integer()))
}

pub fn qpow_e48(e48: i64) -> QRat {
    QRat::q48(e48)
}

/// Quantum integer `[n] = q^{n/2} - q^{-n/2}`; `[0] = 0`.
pub fn bracket(n: u32) -> QRat {
    let e = HALF * n as i64;
    QRat::from_laurent(LaurentPoly::from_terms([
        (e, BigRational::one()),
        (-e, -BigRational::one()),
    ]))
}

/// Quantum factorial `[n]! = [1][2]…[n]`, with `[0]! = 1`.
pub fn qfact(n: u32) -> QRat {
    (1..=n).map(bracket).product()
}

/// True iff every exponent of `x` is a multiple of 24, i.e. `x ∈ ℚ(q^{1/2})`.
pub fn half_lattice_check(x: &QRat) -> bool {
    x.on_lattice(HALF)
}

/// Exact value of `x` at `q^{1/2} = u0`.
pub fn eval_numeric(x: &QRat, u0: &BigRational) -> Result<BigRational, QError> {
    if !half_lattice_check(x) {
        return Err(QError::NonHalfLattice);
    }
    let eval = |p: &LaurentPoly| {
        LaurentPoly::from_terms(p.terms().iter().map(|(e, c)| (e / HALF, c.clone()))).eval(u0)
    };
    let d = eval(x.den());
    if d.is_zero() {
        return Err(QError::DenominatorVanishes);
    }
    Ok(eval(x.num()) / d)
}
