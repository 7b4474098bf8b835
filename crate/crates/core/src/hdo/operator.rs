//! Operators of the homogenized ring `D̂_n⟨z⟩` with x-degree truncation.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use super::{Exponent, OrderSpec};
use crate::coeffs::{Coeff, ParamFraction, ParamIdeal, Rat};
use crate::error::{Error, Result};

/// A finite sum of terms `c x^α ∂^β z^k`, kept in normal order (all `x`
/// left of all `∂`).
///
/// With `cap = Some(N)` the operator is known exactly on `|α| ≤ N` and
/// carries nothing beyond; `tainted` records that some term was discarded.
#[derive(Clone, PartialEq)]
pub struct HOperator<C> {
    n: usize,
    terms: BTreeMap<Exponent, C>,
    cap: Option<u32>,
    tainted: bool,
}

/// Leading exponent, coefficient and monomial.
#[derive(Clone, PartialEq)]
pub struct LeadingData<C> {
    pub exp: Exponent,
    pub lc: C,
    pub lm: HOperator<C>,
}

fn falling(a: u32, j: u32) -> u64 {
    (0..j).map(|t| (a - t) as u64).product()
}

fn binom(b: u32, j: u32) -> u64 {
    let mut r: u64 = 1;
    for t in 0..j {
        r = r * (b - t) as u64 / (t + 1) as u64;
    }
    r
}

impl<C: Coeff> HOperator<C> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
            cap: None,
            tainted: false,
        }
    }

    pub fn constant(n: usize, c: C) -> Self {
        Self::monomial(Exponent::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, C::one())
    }

    pub fn monomial(e: Exponent, c: C) -> Self {
        let mut p = Self::zero(e.n());
        p.add_term(e, c);
        p
    }

    pub fn from_terms(n: usize, it: impl IntoIterator<Item = (Exponent, C)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn tainted(&self) -> bool {
        self.tainted
    }

    pub(crate) fn set_tainted(&mut self, t: bool) {
        self.tainted = t;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> Option<&C> {
        self.terms.get(e)
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        if let Some(cap) = self.cap {
            if e.x_degree() > cap {
                self.tainted = true;
                return;
            }
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub(crate) fn remove_term(&mut self, e: &Exponent) -> Option<C> {
        self.terms.remove(e)
    }

    /// Drops every term with `|α| > cap` and lowers the known window.
    pub fn truncate(&self, cap: u32) -> Self {
        let cap = self.cap.map_or(cap, |c| c.min(cap));
        let mut out = Self {
            n: self.n,
            terms: BTreeMap::new(),
            cap: Some(cap),
            tainted: self.tainted,
        };
        for (e, c) in &self.terms {
            if e.x_degree() <= cap {
                out.terms.insert(e.clone(), c.clone());
            } else {
                out.tainted = true;
            }
        }
        out
    }

    /// Same terms with no cap metadata (treat as an exact polynomial).
    pub fn uncapped(&self) -> Self {
        Self {
            n: self.n,
            terms: self.terms.clone(),
            cap: None,
            tainted: false,
        }
    }

    fn joined_cap(a: Option<u32>, b: Option<u32>) -> Option<u32> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.cap = Self::joined_cap(self.cap, o.cap);
        r.tainted |= o.tainted;
        if r.cap != self.cap {
            r = r.truncate(r.cap.unwrap());
        }
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            cap: self.cap,
            tainted: self.tainted,
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            let mut z = Self::zero(self.n);
            z.cap = self.cap;
            z.tainted = self.tainted;
            return z;
        }
        let mut r = self.clone();
        r.terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.mul(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        r
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> HOperator<D> {
        let mut out = HOperator::<D>::zero(self.n);
        out.cap = self.cap;
        out.tainted = self.tainted;
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn max_d_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.d_degree()).max().unwrap_or(0)
    }

    pub fn max_hom_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.hom_degree()).max().unwrap_or(0)
    }

    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.x_degree()).max().unwrap_or(0)
    }

    /// Common `|β| + k` when every term has the same one.
    pub fn hom_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.hom_degree());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_z_free(&self) -> bool {
        self.terms.keys().all(|e| e.k == 0)
    }

    fn product_into(&self, o: &Self, homogenized: bool) -> Self {
        let n = self.n;
        let cap_q = o.cap.map(|c| c.saturating_sub(self.max_d_degree()));
        let mut r = Self::zero(n);
        r.cap = Self::joined_cap(self.cap, cap_q);
        r.tainted = self.tainted || o.tainted;
        if let (Some(c), Some(q)) = (o.cap, o.cap.map(|_| self.max_d_degree())) {
            if c < q {
                r.tainted = true;
            }
        }
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let base = ca.mul(cb);
                if base.is_zero() {
                    continue;
                }
                // ∂^b1 x^a2 = Σ_j C(b1,j) a2!/(a2-j)! x^(a2-j) ∂^(b1-j) z^|j|
                let limits: Vec<u32> = (0..n).map(|i| ea.beta[i].min(eb.alpha[i])).collect();
                let mut j = vec![0u32; n];
                loop {
                    let mut e = Exponent::zero(n);
                    let mut mult: u64 = 1;
                    let mut jsum = 0;
                    for i in 0..n {
                        e.alpha[i] = ea.alpha[i] + eb.alpha[i] - j[i];
                        e.beta[i] = ea.beta[i] + eb.beta[i] - j[i];
                        mult *= binom(ea.beta[i], j[i]) * falling(eb.alpha[i], j[i]);
                        jsum += j[i];
                    }
                    e.k = ea.k + eb.k + if homogenized { jsum } else { 0 };
                    let c = if mult == 1 {
                        base.clone()
                    } else {
                        base.scale(&Rat::from_integer(mult.into()))
                    };
                    r.add_term(e, c);
                    // next multi-index
                    let mut pos = 0;
                    while pos < n {
                        if j[pos] < limits[pos] {
                            j[pos] += 1;
                            break;
                        }
                        j[pos] = 0;
                        pos += 1;
                    }
                    if pos == n {
                        break;
                    }
                }
            }
        }
        r
    }

    /// Product in `D̂_n⟨z⟩`, using `[∂_i, x_i] = z`.
    pub fn mul(&self, o: &Self) -> Self {
        self.product_into(o, true)
    }

    /// Product in the non-homogenized ring (`z = 1`).
    pub fn mul_dehomogenized(&self, o: &Self) -> Self {
        self.product_into(o, false)
    }

    /// Product in the ring selected by `ord.homogenized`.
    pub fn mul_in(&self, o: &Self, ord: &OrderSpec) -> Self {
        self.product_into(o, ord.homogenized)
    }

    /// `h(P) = Σ c x^α ∂^β z^{d−|β|}` with `d` the `∂`-degree of `P`.
    pub fn homogenize(&self) -> Result<Self> {
        if !self.is_z_free() {
            return Err(Error::Usage("homogenize expects a z-free operator".into()));
        }
        let d = self.max_d_degree();
        let mut r = self.clone();
        r.terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = e.clone();
                f.k = d - e.d_degree();
                (f, c.clone())
            })
            .collect();
        Ok(r)
    }

    /// Substitutes `z = 1`.
    pub fn dehomogenize(&self) -> Self {
        let mut r = Self::zero(self.n);
        r.cap = self.cap;
        r.tainted = self.tainted;
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.k = 0;
            r.add_term(f, c.clone());
        }
        r
    }

    /// Terms ordered from largest to smallest.
    pub fn sorted_terms(&self, ord: &OrderSpec) -> Vec<(&Exponent, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.compare(b.0, a.0));
        v
    }

    pub fn leading(&self, ord: &OrderSpec) -> Result<LeadingData<C>> {
        let (e, c) = self
            .terms
            .iter()
            .max_by(|a, b| ord.compare(a.0, b.0))
            .ok_or(Error::ZeroOperator)?;
        Ok(LeadingData {
            exp: e.clone(),
            lc: c.clone(),
            lm: Self::monomial(e.clone(), c.clone()),
        })
    }

    /// Leading data among the terms whose coefficient numerator is not in `q`.
    pub fn leading_mod(&self, ord: &OrderSpec, q: &ParamIdeal) -> Result<LeadingData<C>> {
        if self.terms.is_empty() {
            return Err(Error::ZeroOperator);
        }
        let (e, c) = self
            .terms
            .iter()
            .filter(|(_, c)| !c.vanishes_mod(q))
            .max_by(|a, b| ord.compare(a.0, b.0))
            .ok_or(Error::AllCoefficientsInQ)?;
        Ok(LeadingData {
            exp: e.clone(),
            lc: c.clone(),
            lm: Self::monomial(e.clone(), c.clone()),
        })
    }

    /// Every coefficient has its numerator in `q`.
    pub fn vanishes_mod(&self, q: &ParamIdeal) -> bool {
        self.terms.values().all(|c| c.vanishes_mod(q))
    }

    /// Terms whose coefficients do not vanish modulo `q`.
    pub fn prune_mod(&self, q: &ParamIdeal) -> Self {
        let mut r = self.clone();
        r.terms.retain(|_, c| !c.vanishes_mod(q));
        r
    }

    /// Coefficientwise evaluation at a parameter point.
    pub fn specialize(&self, at: &[Rat]) -> Result<HOperator<Rat>> {
        let mut out = HOperator::<Rat>::zero(self.n);
        out.cap = self.cap;
        out.tainted = self.tainted;
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.specialize(at)?);
        }
        Ok(out)
    }

    /// Equality of the known windows of two operators.
    pub fn eq_terms(&self, o: &Self) -> bool {
        self.terms == o.terms
    }

    pub fn render(&self, vars: &[String], params: &[String], ord: Option<&OrderSpec>) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let items: Vec<(&Exponent, &C)> = match ord {
            Some(o) => self.sorted_terms(o),
            None => self.terms.iter().rev().collect(),
        };
        let mut out = String::new();
        for (i, (e, c)) in items.into_iter().enumerate() {
            let (neg, body) = render_term(e, c, vars, params);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl HOperator<ParamFraction> {
    pub fn from_rat_op(p: &HOperator<Rat>) -> Self {
        p.map_coeffs(|c| ParamFraction::from_rat(c.clone()))
    }
}

/// Monomial text `x1^2*x2*dx1*z` for an exponent.
pub fn render_monomial(e: &Exponent, vars: &[String]) -> String {
    let name = |i: usize| vars.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
    let mut parts = Vec::new();
    let mut push = |s: String, k: u32| {
        if k == 1 {
            parts.push(s);
        } else if k > 1 {
            parts.push(format!("{}^{}", s, k));
        }
    };
    for i in 0..e.n() {
        push(name(i), e.alpha[i]);
    }
    for i in 0..e.n() {
        push(format!("d{}", name(i)), e.beta[i]);
    }
    push("z".to_string(), e.k);
    parts.join("*")
}

fn render_term<C: Coeff>(e: &Exponent, c: &C, vars: &[String], params: &[String]) -> (bool, String) {
    let num = c.numer_poly();
    let den = c.denom_poly();
    let mono = render_monomial(e, vars);
    let (neg, num_abs) = match num.as_constant() {
        Some(k) if k.is_negative() => (true, (-&num).fmt_with(params)),
        Some(_) => (false, num.fmt_with(params)),
        None if num.num_terms() == 1 && num.leading_coeff().is_negative() => {
            (true, (-&num).fmt_with(params))
        }
        None => (false, num.fmt_with(params)),
    };
    let multi = num.num_terms() > 1;
    let mut body = if mono.is_empty() {
        if multi {
            format!("({})", num_abs)
        } else {
            num_abs
        }
    } else if num_abs == "1" {
        mono
    } else if multi {
        format!("({})*{}", num_abs, mono)
    } else {
        format!("{}*{}", num_abs, mono)
    };
    if !den.is_one() {
        let d = den.fmt_with(params);
        if den.num_terms() > 1 || d.contains('*') || d.contains('/') {
            body = format!("{}/({})", body, d);
        } else {
            body = format!("{}/{}", body, d);
        }
    }
    (neg, body)
}

impl<C: Coeff> fmt::Debug for HOperator<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[], &[], None))?;
        if let Some(c) = self.cap {
            write!(f, " [cap {}{}]", c, if self.tainted { ", tainted" } else { "" })?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LeadingData<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LeadingData {{ exp: {:?}, lc: {:?} }}", self.exp, self.lc)
    }
}
