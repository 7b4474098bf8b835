//! Ideals of the parameter ring with a reduced grevlex Gröbner basis.

use std::fmt;

use super::poly::{divides_mono, lcm_mono, quot_mono, ParamPoly};
use crate::error::{Error, Result};

/// An ideal `Q ⊂ ℚ[y]`, stored with its reduced grevlex Gröbner basis.
///
/// Primality is asserted by the caller through `claimed_prime`; products of
/// non-members landing in the ideal are reported as [`Error::NotPrime`].
#[derive(Clone, PartialEq, Eq)]
pub struct ParamIdeal {
    generators: Vec<ParamPoly>,
    gb: Vec<ParamPoly>,
    claimed_prime: bool,
}

impl ParamIdeal {
    /// The zero ideal, which is prime.
    pub fn zero() -> Self {
        Self {
            generators: Vec::new(),
            gb: Vec::new(),
            claimed_prime: true,
        }
    }

    pub fn new(generators: Vec<ParamPoly>, claimed_prime: bool) -> Self {
        let gb = commutative_gb(&generators);
        Self {
            generators,
            gb,
            claimed_prime,
        }
    }

    pub fn generators(&self) -> &[ParamPoly] {
        &self.generators
    }

    pub fn gb(&self) -> &[ParamPoly] {
        &self.gb
    }

    pub fn claimed_prime(&self) -> bool {
        self.claimed_prime
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gb.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gb.iter().any(|g| g.as_constant().is_some())
    }

    pub fn normal_form(&self, p: &ParamPoly) -> ParamPoly {
        if self.gb.is_empty() {
            return p.clone();
        }
        p.div_rem(&self.gb).1
    }

    pub fn contains(&self, p: &ParamPoly) -> bool {
        p.is_zero() || (!self.gb.is_empty() && self.normal_form(p).is_zero())
    }

    /// Ideal `self + ⟨extra⟩`.
    pub fn extend(&self, extra: &ParamPoly, claimed_prime: bool) -> Self {
        let mut gens = self.generators.clone();
        gens.push(extra.clone());
        Self::new(gens, claimed_prime)
    }

    /// Multiplies two non-members, failing if the product is a member.
    pub fn mul_outside(&self, a: &ParamPoly, b: &ParamPoly) -> Result<ParamPoly> {
        let p = a * b;
        if self.contains(&p) && !self.contains(a) && !self.contains(b) {
            return Err(Error::NotPrime(format!("({}) * ({}) lies in Q", a, b)));
        }
        Ok(p)
    }
}

impl fmt::Debug for ParamIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamIdeal{:?}", self.gb)
    }
}

fn s_poly(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    let (ea, ca) = a.leading().unwrap();
    let (eb, cb) = b.leading().unwrap();
    let l = lcm_mono(ea, eb);
    let fa = a.times_term(&quot_mono(&l, ea), &ca.recip());
    let fb = b.times_term(&quot_mono(&l, eb), &cb.recip());
    &fa - &fb
}

/// Reduced grevlex Gröbner basis of the ideal generated by `gens`.
pub fn commutative_gb(gens: &[ParamPoly]) -> Vec<ParamPoly> {
    let mut basis: Vec<ParamPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    if basis.iter().any(|g| g.as_constant().is_some()) {
        return vec![ParamPoly::one()];
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (ei, _) = basis[i].leading().unwrap();
        let (ej, _) = basis[j].leading().unwrap();
        // coprime leading monomials reduce to zero
        let coprime = ei
            .iter()
            .zip(ej.iter())
            .all(|(a, b)| *a == 0 || *b == 0);
        if coprime {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j]);
        let (_, r) = s.div_rem(&basis);
        if r.is_zero() {
            continue;
        }
        if r.as_constant().is_some() {
            return vec![ParamPoly::one()];
        }
        let k = basis.len();
        basis.push(r.monic());
        for i in 0..k {
            pairs.push((i, k));
        }
    }
    interreduce(basis)
}

fn interreduce(mut basis: Vec<ParamPoly>) -> Vec<ParamPoly> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<ParamPoly> = Vec::new();
    basis.sort_by(|a, b| super::poly::grevlex(a.leading().unwrap().0, b.leading().unwrap().0));
    for g in basis {
        let lg = g.leading().unwrap().0.clone();
        if keep
            .iter()
            .any(|h| divides_mono(h.leading().unwrap().0, &lg))
        {
            continue;
        }
        keep.push(g);
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<ParamPoly> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (_, r) = keep[i].div_rem(&others);
        out.push(r.monic());
    }
    out.sort_by(|a, b| super::poly::grevlex(a.leading().unwrap().0, b.leading().unwrap().0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let y1 = ParamPoly::var(0);
        let q = ParamIdeal::new(vec![y1.clone()], true);
        assert!(q.contains(&ParamPoly::zero()));
        assert!(q.contains(&y1));
        let q2 = ParamIdeal::new(vec![&(&y1 * &y1) - &y1], false);
        assert!(!q2.contains(&(&y1 + &ParamPoly::one())));
    }

    #[test]
    fn linear_elimination() {
        let y1 = ParamPoly::var(0);
        let y2 = ParamPoly::var(1);
        let gb = commutative_gb(&[y1.clone(), &y1 + &y2]);
        assert_eq!(gb.len(), 2);
        assert!(gb.contains(&y1) && gb.contains(&y2));
        assert_eq!(commutative_gb(&gb), gb);
    }

    #[test]
    fn principal_square() {
        let y1 = ParamPoly::var(0);
        let q = ParamIdeal::new(vec![&y1 * &y1], false);
        assert_eq!(q.gb(), &[&y1 * &y1][..]);
        assert!(!q.contains(&y1));
        assert!(ParamIdeal::new(vec![], true).is_zero_ideal());
    }

    #[test]
    fn lazy_primality() {
        let y1 = ParamPoly::var(0);
        let q = ParamIdeal::new(vec![&y1 * &y1], true);
        assert!(matches!(q.mul_outside(&y1, &y1), Err(Error::NotPrime(_))));
    }
}
