//! Exact coefficient domains: rationals, parameter polynomials, ideals of
//! the parameter ring and fractions read modulo a prime ideal.

mod factor;
mod fraction;
mod ideal;
mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use factor::{factor_univariate, Factorization};
pub use fraction::{fraction_arith, ParamFraction};
pub use ideal::{commutative_gb, ParamIdeal};
pub use poly::{grevlex, PMono, ParamPoly};

use crate::error::Result;

/// Exact rationals; `Display` renders `num/den` in lowest terms.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// A commutative ring in which numerators and denominators live.
pub trait RingElem: Clone + PartialEq + fmt::Debug {
    fn one() -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `self | other`.
    fn divides(&self, other: &Self) -> bool;
}

impl RingElem for BigInt {
    fn one() -> Self {
        One::one()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.mod_floor(&self.abs()).is_zero()
    }
}

impl RingElem for ParamPoly {
    fn one() -> Self {
        ParamPoly::one()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn divides(&self, other: &Self) -> bool {
        ParamPoly::divides(self, other)
    }
}

/// Coefficient field of an operator.
///
/// `Rat` is the ground field `ℚ`; `ParamFraction` is `Frac(ℚ[y])`, whose
/// elements are read modulo a prime `Q` through [`Coeff::vanishes_mod`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Ring: RingElem;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rat) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Numerator lies in `q` (structural zero when `q = (0)`).
    fn vanishes_mod(&self, q: &ParamIdeal) -> bool;
    fn numer(&self) -> Self::Ring;
    fn denom(&self) -> Self::Ring;
    /// Numerator as a parameter polynomial.
    fn numer_poly(&self) -> ParamPoly;
    fn denom_poly(&self) -> ParamPoly;
    fn specialize(&self, at: &[Rat]) -> Result<Rat>;
    fn render(&self, params: &[String]) -> String;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Coeff for Rat {
    type Ring = BigInt;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rat) -> Self {
        self * r
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn vanishes_mod(&self, q: &ParamIdeal) -> bool {
        Zero::is_zero(self) || q.is_unit_ideal()
    }
    fn numer(&self) -> BigInt {
        self.numer().clone()
    }
    fn denom(&self) -> BigInt {
        self.denom().clone()
    }
    fn numer_poly(&self) -> ParamPoly {
        ParamPoly::constant(self.clone())
    }
    fn denom_poly(&self) -> ParamPoly {
        ParamPoly::one()
    }
    fn specialize(&self, _at: &[Rat]) -> Result<Rat> {
        Ok(self.clone())
    }
    fn render(&self, _params: &[String]) -> String {
        self.to_string()
    }
}

impl Coeff for ParamFraction {
    type Ring = ParamPoly;

    fn zero() -> Self {
        ParamFraction::zero()
    }
    fn one() -> Self {
        ParamFraction::one()
    }
    fn from_rat(r: Rat) -> Self {
        ParamFraction::from_rat(r)
    }
    fn is_zero(&self) -> bool {
        ParamFraction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        ParamFraction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ParamFraction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ParamFraction::mul(self, o)
    }
    fn neg(&self) -> Self {
        ParamFraction::neg(self)
    }
    fn scale(&self, r: &Rat) -> Self {
        ParamFraction::scale(self, r)
    }
    fn inv(&self) -> Option<Self> {
        ParamFraction::inv(self)
    }
    fn vanishes_mod(&self, q: &ParamIdeal) -> bool {
        self.is_zero_mod(q)
    }
    fn numer(&self) -> ParamPoly {
        self.num().clone()
    }
    fn denom(&self) -> ParamPoly {
        self.den().clone()
    }
    fn numer_poly(&self) -> ParamPoly {
        self.num().clone()
    }
    fn denom_poly(&self) -> ParamPoly {
        self.den().clone()
    }
    fn specialize(&self, at: &[Rat]) -> Result<Rat> {
        self.eval(at)
    }
    fn render(&self, params: &[String]) -> String {
        self.fmt_with(params)
    }
}
