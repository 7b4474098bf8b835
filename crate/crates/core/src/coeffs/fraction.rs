//! Fractions of parameter polynomials, read in `Frac(ℚ[y]/Q)`.

use std::fmt;

use num_traits::{One, Zero};

use super::{ParamIdeal, ParamPoly, Rat};
use crate::error::{Error, Result};

/// `num / den` with `den ≠ 0`.
///
/// Fractions are not reduced to lowest terms in general: only rational
/// content, common monomial factors, exact divisibility, and univariate
/// gcds are cancelled. Equality (`==`) is equality in `Frac(ℚ[y])`;
/// equality modulo a prime `Q` is [`ParamFraction::eq_mod`].
#[derive(Clone)]
pub struct ParamFraction {
    num: ParamPoly,
    den: ParamPoly,
}

impl ParamFraction {
    pub fn zero() -> Self {
        Self {
            num: ParamPoly::zero(),
            den: ParamPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(ParamPoly::one())
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        Self {
            num: p,
            den: ParamPoly::one(),
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::from_poly(ParamPoly::constant(r))
    }

    /// Builds `num/den`, checking `den ∉ Q`.
    pub fn new(num: ParamPoly, den: ParamPoly, q: &ParamIdeal) -> Result<Self> {
        if q.contains(&den) {
            return Err(Error::DivisionByZeroModQ);
        }
        Ok(Self::raw(num, den))
    }

    /// Builds `num/den` over `Frac(ℚ[y])`; panics on a zero denominator.
    pub fn raw(num: ParamPoly, den: ParamPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = Self { num, den };
        f.normalize();
        f
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_zero_mod(&self, q: &ParamIdeal) -> bool {
        q.contains(&self.num)
    }

    pub fn eq_mod(&self, other: &Self, q: &ParamIdeal) -> bool {
        q.contains(&(&(&self.num * &other.den) - &(&other.num * &self.den)))
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = ParamPoly::one();
            return;
        }
        let mc = {
            let a = self.num.monomial_content();
            let b = self.den.monomial_content();
            let len = a.len().min(b.len());
            (0..len).map(|i| a[i].min(b[i])).collect::<Vec<u32>>()
        };
        if mc.iter().any(|&k| k > 0) {
            self.num = self.num.div_monomial(&mc);
            self.den = self.den.div_monomial(&mc);
        }
        if self.den.as_constant().is_none() {
            if let Some(g) = self.num.univariate_gcd(&self.den) {
                if g.as_constant().is_none() {
                    self.num = self.num.exact_div(&g).expect("gcd divides");
                    self.den = self.den.exact_div(&g).expect("gcd divides");
                }
            } else if let Some(q) = self.num.exact_div(&self.den) {
                self.num = q;
                self.den = ParamPoly::one();
            }
        }
        let lc = self.den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::raw(&self.num + &o.num, self.den.clone());
        }
        Self::raw(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::raw(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }

    /// Inverse in `Frac(ℚ[y])`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::raw(self.den.clone(), self.num.clone()))
        }
    }

    /// Division in `Frac(ℚ[y]/Q)`.
    pub fn div_mod(&self, o: &Self, q: &ParamIdeal) -> Result<Self> {
        if o.is_zero_mod(q) {
            return Err(Error::DivisionByZeroModQ);
        }
        Ok(self.mul(&o.inv().expect("nonzero")))
    }

    /// Exact value at a parameter point.
    pub fn eval(&self, at: &[Rat]) -> Result<Rat> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(self.num.eval(at) / d)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let n = self.num.fmt_with(names);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.fmt_with(names);
        let n = if self.num.num_terms() > 1 { format!("({})", n) } else { n };
        let d = if self.den.num_terms() > 1 || d.contains('*') || d.contains('/') {
            format!("({})", d)
        } else {
            d
        };
        format!("{}/{}", n, d)
    }
}

impl PartialEq for ParamFraction {
    fn eq(&self, o: &Self) -> bool {
        (&self.num * &o.den) == (&o.num * &self.den)
    }
}

impl fmt::Display for ParamFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

impl fmt::Debug for ParamFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

/// Applies `op` (`+ - * /`) in `Frac(ℚ[y]/Q)`.
pub fn fraction_arith(
    a: &ParamFraction,
    b: &ParamFraction,
    op: char,
    q: &ParamIdeal,
) -> Result<ParamFraction> {
    match op {
        '+' => Ok(a.add(b)),
        '-' => Ok(a.sub(b)),
        '*' => Ok(a.mul(b)),
        '/' => a.div_mod(b, q),
        _ => Err(Error::Usage(format!("unknown operator {}", op))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_examples() {
        let q0 = ParamIdeal::zero();
        let one = ParamFraction::one();
        assert_eq!(one.add(&ParamFraction::zero()), one);
        let y = ParamFraction::from_poly(ParamPoly::var(0));
        let inv = fraction_arith(&one, &y, '/', &q0).unwrap();
        assert!(y.mul(&inv).eq_mod(&one, &q0));

        let y1 = ParamPoly::var(0);
        let y2 = ParamPoly::var(1);
        let q = ParamIdeal::new(vec![&y2 - &(&y1 * &y1)], true);
        let d = ParamFraction::from_poly(y2).sub(&ParamFraction::from_poly(&y1 * &y1));
        assert!(d.is_zero_mod(&q));
        assert!(!d.is_zero());
    }

    #[test]
    fn division_by_member_fails() {
        let y = ParamPoly::var(0);
        let q = ParamIdeal::new(vec![y.clone()], true);
        let a = ParamFraction::one();
        let b = ParamFraction::from_poly(y);
        assert_eq!(a.div_mod(&b, &q), Err(Error::DivisionByZeroModQ));
        assert!(ParamFraction::new(ParamPoly::one(), ParamPoly::var(0), &q).is_err());
    }

    #[test]
    fn cancellation() {
        let y = ParamPoly::var(0);
        let f = ParamFraction::raw(&y * &y, y.clone());
        assert_eq!(f.den(), &ParamPoly::one());
        let g = ParamFraction::raw(
            &(&y * &y) - &ParamPoly::one(),
            &y - &ParamPoly::one(),
        );
        assert_eq!(g.num(), &(&y + &ParamPoly::one()));
    }
}
