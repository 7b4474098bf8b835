//! Polynomials in the parameters `y1..ym` with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rat;

/// Exponent vector of a parameter monomial, trailing zeros stripped so that
/// the representation does not depend on the number of parameters.
pub type PMono = Vec<u32>;

fn trim(mut e: PMono) -> PMono {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn mono_mul(a: &[u32], b: &[u32]) -> PMono {
    let len = a.len().max(b.len());
    let e = (0..len)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(e)
}

fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, &x)| x <= b.get(i).copied().unwrap_or(0))
}

fn mono_div(b: &[u32], a: &[u32]) -> PMono {
    let e = (0..b.len())
        .map(|i| b[i] - a.get(i).copied().unwrap_or(0))
        .collect();
    trim(e)
}

fn mono_lcm(a: &[u32], b: &[u32]) -> PMono {
    let len = a.len().max(b.len());
    let e = (0..len)
        .map(|i| a.get(i).copied().unwrap_or(0).max(b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(e)
}

fn mono_gcd(a: &[u32], b: &[u32]) -> PMono {
    let len = a.len().min(b.len());
    trim((0..len).map(|i| a[i].min(b[i])).collect())
}

fn mono_deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// Graded reverse lexicographic comparison of parameter monomials.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    match mono_deg(a).cmp(&mono_deg(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    let len = a.len().max(b.len());
    for i in (0..len).rev() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

/// A polynomial in `ℚ[y1..ym]`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<PMono, Rat>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
    }

    /// The parameter `y_{i+1}` (zero-based index).
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, Rat::one())
    }

    pub fn monomial(e: PMono, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(e), c);
        }
        Self { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (PMono, Rat)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(trim(e), c);
        }
        p
    }

    fn add_term(&mut self, e: PMono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` if the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Number of parameter slots actually used.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| mono_deg(e)).max().unwrap_or(0)
    }

    /// Leading monomial and coefficient in grevlex.
    pub fn leading(&self) -> Option<(&PMono, &Rat)> {
        self.terms.iter().max_by(|a, b| grevlex(a.0, b.0))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    fn mul_term(&self, e: &[u32], c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(f, v)| (mono_mul(e, f), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a rational point; missing coordinates count as zero.
    pub fn eval(&self, at: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let y = at.get(i).cloned().unwrap_or_else(Rat::zero);
                t *= num_traits::pow(y, k as usize);
            }
            acc += t;
        }
        acc
    }

    /// Rational content normalization: leading grevlex coefficient made 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    /// Greatest common monomial divisor of all terms.
    pub fn monomial_content(&self) -> PMono {
        let mut it = self.terms.keys();
        match it.next() {
            None => Vec::new(),
            Some(first) => it.fold(first.clone(), |g, e| mono_gcd(&g, e)),
        }
    }

    pub fn div_monomial(&self, m: &[u32]) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (mono_div(e, m), c.clone()))
                .collect(),
        }
    }

    /// Multivariate division by a list of divisors in grevlex; returns the
    /// quotients and the remainder.
    pub fn div_rem(&self, divisors: &[ParamPoly]) -> (Vec<ParamPoly>, ParamPoly) {
        let mut quots = vec![ParamPoly::zero(); divisors.len()];
        let mut rem = ParamPoly::zero();
        let mut p = self.clone();
        let leads: Vec<_> = divisors
            .iter()
            .map(|d| d.leading().map(|(e, c)| (e.clone(), c.clone())))
            .collect();
        while let Some((e, c)) = p.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let hit = leads.iter().enumerate().find_map(|(i, l)| match l {
                Some((le, lc)) if mono_divides(le, &e) => Some((i, le, lc)),
                _ => None,
            });
            match hit {
                Some((i, le, lc)) => {
                    let f = mono_div(&e, le);
                    let k = &c / lc;
                    quots[i].add_term(f.clone(), k.clone());
                    p = &p - &divisors[i].mul_term(&f, &k);
                }
                None => {
                    p.terms.remove(&e);
                    rem.add_term(e, c);
                }
            }
        }
        (quots, rem)
    }

    /// Exact quotient `self / d` when `d` divides `self` in `ℚ[y]`.
    pub fn exact_div(&self, d: &ParamPoly) -> Option<ParamPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(std::slice::from_ref(d));
        if r.is_zero() {
            q.into_iter().next()
        } else {
            None
        }
    }

    pub fn divides(&self, other: &ParamPoly) -> bool {
        other.exact_div(self).is_some()
    }

    /// If every term only involves the single variable `i`, returns it.
    /// Constants report `None`.
    pub fn single_var(&self) -> Option<usize> {
        let mut var = None;
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    match var {
                        None => var = Some(i),
                        Some(j) if j == i => {}
                        _ => return None,
                    }
                }
            }
        }
        var
    }

    /// Dense coefficient vector in variable `i` (low degree first); only valid
    /// when no other variable occurs.
    pub fn to_dense(&self, i: usize) -> Vec<Rat> {
        let deg = self
            .terms
            .keys()
            .map(|e| e.get(i).copied().unwrap_or(0))
            .max()
            .unwrap_or(0) as usize;
        let mut v = vec![Rat::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (e, c) in &self.terms {
            v[e.get(i).copied().unwrap_or(0) as usize] = c.clone();
        }
        v
    }

    pub fn from_dense(i: usize, coeffs: &[Rat]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; i + 1];
            e[i] = k as u32;
            (e, c.clone())
        }))
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(e, c)| {
            let k = e.get(i).copied().unwrap_or(0);
            if k == 0 {
                return None;
            }
            let mut f = e.clone();
            f[i] -= 1;
            Some((f, c * Rat::from_integer(k.into())))
        }))
    }

    /// Renders with the given parameter names (`y1..` when names run out).
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&PMono> = self.terms.keys().collect();
        keys.sort_by(|a, b| grevlex(b, a));
        let mut out = String::new();
        for (idx, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_pmono(e, names);
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", a, mono));
            }
        }
        out
    }
}

pub(crate) fn fmt_pmono(e: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let name = names
            .get(i)
            .cloned()
            .unwrap_or_else(|| format!("y{}", i + 1));
        if k == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{}^{}", name, k));
        }
    }
    parts.join("*")
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({})", self)
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, o: &ParamPoly) -> ParamPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, o: &ParamPoly) -> ParamPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, o: &ParamPoly) -> ParamPoly {
        let mut r = ParamPoly::zero();
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                r.add_term(mono_mul(e, f), c * d);
            }
        }
        r
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

/// Univariate helpers on dense coefficient vectors over ℚ.
pub(crate) mod dense {
    use super::Rat;
    use num_traits::{One, Zero};

    pub fn trim(v: &mut Vec<Rat>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        divmod(a, b).1
    }

    pub fn divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        assert!(!b.is_empty(), "division by zero polynomial");
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![Rat::zero(); r.len() - b.len() + 1];
        let lb = b.last().unwrap().clone();
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let k = r.last().unwrap() / &lb;
            for (i, c) in b.iter().enumerate() {
                r[shift + i] -= &k * c;
            }
            q[shift] = k;
            r.pop();
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn monic(mut v: Vec<Rat>) -> Vec<Rat> {
        trim(&mut v);
        if let Some(l) = v.last().cloned() {
            for c in v.iter_mut() {
                *c /= &l;
            }
        }
        v
    }

    pub fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        if x.is_empty() {
            return vec![Rat::one()];
        }
        monic(x)
    }

    pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] += x * y;
            }
        }
        trim(&mut r);
        r
    }

    pub fn eval(a: &[Rat], x: &Rat) -> Rat {
        a.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(a: &[Rat]) -> Vec<Rat> {
        let mut r: Vec<Rat> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rat::from_integer((k as i64).into()))
            .collect();
        trim(&mut r);
        r
    }
}

impl ParamPoly {
    /// Univariate gcd when both polynomials live in the same single variable.
    pub(crate) fn univariate_gcd(&self, other: &ParamPoly) -> Option<ParamPoly> {
        let vi = self.single_var()?;
        match other.single_var() {
            Some(vj) if vj == vi => {}
            None if other.as_constant().is_some() => {}
            _ => return None,
        }
        let g = dense::gcd(&self.to_dense(vi), &other.to_dense(vi));
        Some(ParamPoly::from_dense(vi, &g))
    }
}

pub(crate) fn lcm_mono(a: &[u32], b: &[u32]) -> PMono {
    mono_lcm(a, b)
}

pub(crate) fn divides_mono(a: &[u32], b: &[u32]) -> bool {
    mono_divides(a, b)
}

pub(crate) fn quot_mono(b: &[u32], a: &[u32]) -> PMono {
    mono_div(b, a)
}

impl ParamPoly {
    pub(crate) fn times_term(&self, e: &[u32], c: &Rat) -> Self {
        self.mul_term(e, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rat {
        Rat::new(a.into(), b.into())
    }

    #[test]
    fn eval_examples() {
        let y1 = ParamPoly::var(0);
        let y2 = ParamPoly::var(1);
        assert_eq!((&y1 * &y1).eval(&[r(3, 1)]), r(9, 1));
        assert_eq!((&y1 - &y2).eval(&[r(5, 7), r(5, 7)]), r(0, 1));
        let p = &(&y1 * &y2) + &ParamPoly::constant(r(1, 2));
        assert_eq!(p.eval(&[r(2, 1), r(1, 3)]), r(7, 6));
    }

    #[test]
    fn grevlex_basics() {
        assert_eq!(grevlex(&[2], &[1, 1]), Ordering::Greater);
        assert_eq!(grevlex(&[1, 1], &[0, 2]), Ordering::Greater);
        assert_eq!(grevlex(&[0, 3], &[1]), Ordering::Greater);
    }

    #[test]
    fn exact_division() {
        let y = ParamPoly::var(0);
        let p = &(&y * &y) - &ParamPoly::one();
        let d = &y - &ParamPoly::one();
        assert_eq!(p.exact_div(&d).unwrap(), &y + &ParamPoly::one());
        assert!(p.exact_div(&y).is_none());
    }

    #[test]
    fn univariate_gcd() {
        let y = ParamPoly::var(0);
        let a = &(&y * &y) - &ParamPoly::one();
        let b = &(&y * &y) + &(&y.scale(&r(-2, 1)) + &ParamPoly::one());
        assert_eq!(a.univariate_gcd(&b).unwrap(), &y - &ParamPoly::one());
    }
}
