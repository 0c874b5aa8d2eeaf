use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gcd::{exact_div_int, gcd_primitive, primitive_part};
use super::laurent::{int, LaurentPoly};
use super::QError;

/// Element of ℚ(t), `t = q^{1/48}`, kept in canonical form.
///
/// Canonical form: `den` is an ordinary polynomial with nonzero constant
/// term and leading coefficient 1, and `num`/`den` are coprime. Zero is
/// `0/1`. Because the form is unique, derived `Eq`/`Hash` are field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QRat {
    pub fn zero() -> Self {
        QRat {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        QRat {
            num: LaurentPoly::constant(c),
            den: LaurentPoly::one(),
        }
    }

    /// `c · t^{e48}` i.e. `c · q^{e48/48}`.
    pub fn monomial(e48: i64, c: BigRational) -> Self {
        QRat {
            num: LaurentPoly::monomial(e48, c),
            den: LaurentPoly::one(),
        }
    }

    /// `q^{e48/48}`.
    pub fn q48(e48: i64) -> Self {
        Self::monomial(e48, BigRational::one())
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        QRat {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(canonicalize(num, den))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn checked_div(&self, rhs: &QRat) -> Result<QRat, QError> {
        if rhs.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(canonicalize(
            self.num.mul(&rhs.den),
            self.den.mul(&rhs.num),
        ))
    }

    pub fn recip(&self) -> Result<QRat, QError> {
        QRat::one().checked_div(self)
    }

    pub fn pow(&self, n: u32) -> QRat {
        let mut acc = QRat::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by `q^{e48/48}` without touching the denominator.
    pub fn mul_q48(&self, e48: i64) -> QRat {
        QRat {
            num: self.num.shift(e48),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> QRat {
        if c.is_zero() {
            return QRat::zero();
        }
        QRat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Every exponent (numerator and denominator) is a multiple of `step`.
    pub fn on_lattice(&self, step: i64) -> bool {
        self.num
            .terms()
            .iter()
            .chain(self.den.terms())
            .all(|(e, _)| e % step == 0)
    }
}

/// Canonical representative of `num / den` (den nonzero).
fn canonicalize(num: LaurentPoly, den: LaurentPoly) -> QRat {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return QRat::zero();
    }
    let a = num.min_exp().unwrap();
    let b = den.min_exp().unwrap();
    let n0 = num.shift(-a);
    let d0 = den.shift(-b);
    let shift = a - b;

    if let Some((_, c)) = d0.as_monomial() {
        return QRat {
            num: n0.shift(shift).scale(&c.recip()),
            den: LaurentPoly::one(),
        };
    }
    if n0.as_monomial().is_some() {
        return finish(n0, d0, shift);
    }

    let g = num_integer::gcd(n0.exponent_gcd(), d0.exponent_gcd());
    let nc = n0.compress(g);
    let dc = d0.compress(g);
    let (ncont, nprim) = primitive_part(&nc.to_dense());
    let (dcont, dprim) = primitive_part(&dc.to_dense());
    let common = gcd_primitive(&nprim, &dprim);
    if common.len() == 1 {
        return finish(n0, d0, shift);
    }
    let nq = exact_div_int(&nprim, &common).expect("gcd divides numerator");
    let dq = exact_div_int(&dprim, &common).expect("gcd divides denominator");
    let to_poly = |v: Vec<BigInt>, scale: &BigRational| {
        LaurentPoly::from_dense(
            v.into_iter()
                .map(|c| BigRational::from_integer(c) * scale)
                .collect(),
        )
        .expand(g)
    };
    finish(to_poly(nq, &ncont), to_poly(dq, &dcont), shift)
}

/// Makes the (coprime, constant-term-nonzero) denominator monic.
fn finish(num: LaurentPoly, den: LaurentPoly, shift: i64) -> QRat {
    let lc = den.leading_coeff().expect("nonzero den").clone();
    if lc.is_one() {
        return QRat {
            num: num.shift(shift),
            den,
        };
    }
    let inv = lc.recip();
    QRat {
        num: num.shift(shift).scale(&inv),
        den: den.scale(&inv),
    }
}

impl<'a> Add<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return QRat::from_laurent(self.num.add(&rhs.num));
            }
            return canonicalize(self.num.add(&rhs.num), self.den.clone());
        }
        canonicalize(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Sub<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRat::from_laurent(self.num.mul(&rhs.num));
        }
        if let Some((e, c)) = self.num.as_monomial() {
            if self.den.is_one() {
                return rhs.mul_q48(e).scale(c);
            }
        }
        if let Some((e, c)) = rhs.num.as_monomial() {
            if rhs.den.is_one() {
                return self.mul_q48(e).scale(c);
            }
        }
        canonicalize(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl<'a> Div<&'a QRat> for &'a QRat {
    type Output = QRat;
    /// Panics on division by zero, like integer division; use
    /// [`QRat::checked_div`] to get an error instead.
    fn div(self, rhs: &QRat) -> QRat {
        self.checked_div(rhs).expect("QRat division by zero")
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: &QRat) -> QRat {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<QRat> for &'a QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl std::iter::Sum for QRat {
    fn sum<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for QRat {
    fn product<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::one(), |a, b| a * b)
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QRatJson {
    num: Vec<(i64, String)>,
    den: Vec<(i64, String)>,
}

fn terms_to_json(p: &LaurentPoly) -> Vec<(i64, String)> {
    p.terms().iter().map(|(e, c)| (*e, c.to_string())).collect()
}

fn terms_from_json(v: Vec<(i64, String)>) -> Result<LaurentPoly, QError> {
    let mut out = Vec::with_capacity(v.len());
    for (e, s) in v {
        let c: BigRational = s
            .parse()
            .map_err(|_| QError::Parse(format!("bad coefficient {s:?}")))?;
        out.push((e, c));
    }
    Ok(LaurentPoly::from_terms(out))
}

impl Serialize for QRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QRatJson {
            num: terms_to_json(&self.num),
            den: terms_to_json(&self.den),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = QRatJson::deserialize(d)?;
        let num = terms_from_json(raw.num).map_err(D::Error::custom)?;
        let den = terms_from_json(raw.den).map_err(D::Error::custom)?;
        QRat::new(num, den).map_err(D::Error::custom)
    }
}
