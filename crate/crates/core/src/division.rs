//! Formal division in `D̂_n⟨z⟩` and division modulo a prime `Q`.

use crate::coeffs::{Coeff, ParamIdeal, ParamPoly, RingElem};
use crate::error::{Error, Result};
use crate::hdo::{Exponent, HOperator, OrderSpec};

/// Slack added to the largest x-degree when dividing uncapped operators.
pub const DEFAULT_DIVISION_SLACK: u32 = 8;

/// `P = Σ q_j g_j + R + T`.
#[derive(Clone, Debug)]
pub struct DivisionResult<C: Coeff> {
    pub quotients: Vec<HOperator<C>>,
    pub remainder: HOperator<C>,
    /// Coefficients in `⟨Q⟩`; zero for field division.
    pub t_part: HOperator<C>,
    /// Number of reduction steps taken with each divisor (the `d_j`).
    pub denom_certificate: Vec<u32>,
    /// Leading exponents the Δ-partition was built from.
    pub divisor_exps: Vec<Exponent>,
    /// Leading coefficients actually inverted.
    pub divisor_lcs: Vec<C>,
    pub tainted: bool,
    /// Window `|α| ≤ cap` on which the reconstruction identity is exact.
    pub cap: Option<u32>,
}

/// Classifier for `Δ_1 ∪ … ∪ Δ_r ∪ Δ̄`.
#[derive(Clone, Debug)]
pub struct Partition {
    exps: Vec<Exponent>,
}

impl Partition {
    /// Least `j` with `e ∈ exp_j + ℕ^{2n+1}`, or `None` for `Δ̄`.
    pub fn classify(&self, e: &Exponent) -> Option<usize> {
        self.exps.iter().position(|d| d.divides(e))
    }

    pub fn exps(&self) -> &[Exponent] {
        &self.exps
    }
}

pub fn partition(divisor_exps: &[Exponent]) -> Partition {
    Partition {
        exps: divisor_exps.to_vec(),
    }
}

fn max_term<C: Coeff>(p: &HOperator<C>, ord: &OrderSpec) -> Option<(Exponent, C)> {
    p.terms()
        .max_by(|a, b| ord.compare(a.0, b.0))
        .map(|(e, c)| (e.clone(), c.clone()))
}

fn effective_cap<C: Coeff>(p: &HOperator<C>, divisors: &[HOperator<C>]) -> HOperator<C> {
    if p.cap().is_some() || divisors.iter().any(|g| g.cap().is_some()) {
        return p.clone();
    }
    let m = divisors
        .iter()
        .map(|g| g.max_x_degree())
        .chain(std::iter::once(p.max_x_degree()))
        .max()
        .unwrap_or(0);
    p.truncate(m + DEFAULT_DIVISION_SLACK)
}

/// Division by divisors with given leading exponents and coefficients,
/// always reducing the current largest term.
fn divide_core<C: Coeff>(
    p: &HOperator<C>,
    divisors: &[HOperator<C>],
    exps: &[Exponent],
    lcs: &[C],
    ord: &OrderSpec,
) -> DivisionResult<C> {
    let n = p.n();
    let part = partition(exps);
    let inv: Vec<C> = lcs.iter().map(|c| c.inv().expect("nonzero lc")).collect();
    let mut quotients = vec![HOperator::<C>::zero(n); divisors.len()];
    let mut steps = vec![0u32; divisors.len()];
    let mut remainder = HOperator::<C>::zero(n);
    let mut work = effective_cap(p, divisors);
    while let Some((e, c)) = max_term(&work, ord) {
        match part.classify(&e) {
            Some(j) => {
                let m = exps[j].complement_in(&e);
                let k = c.mul(&inv[j]);
                let mono = HOperator::monomial(m, k);
                quotients[j] = quotients[j].add(&mono);
                steps[j] += 1;
                let prod = mono.mul_in(&divisors[j], ord);
                work = work.sub(&prod);
                debug_assert!(work.coeff(&e).is_none());
            }
            None => {
                work.remove_term(&e);
                remainder.add_term(e, c);
            }
        }
    }
    let cap = work.cap();
    let tainted = work.tainted();
    let remainder = match cap {
        Some(c) => remainder.truncate(c),
        None => remainder,
    };
    let quotients = quotients
        .into_iter()
        .map(|q| match cap {
            Some(c) => q.truncate(c),
            None => q,
        })
        .collect();
    DivisionResult {
        quotients,
        remainder,
        t_part: HOperator::zero(n),
        denom_certificate: steps,
        divisor_exps: exps.to_vec(),
        divisor_lcs: lcs.to_vec(),
        tainted,
        cap,
    }
}

/// Division over the coefficient field (`Q = (0)`).
pub fn divide<C: Coeff>(
    p: &HOperator<C>,
    divisors: &[HOperator<C>],
    ord: &OrderSpec,
) -> Result<DivisionResult<C>> {
    let mut exps = Vec::with_capacity(divisors.len());
    let mut lcs = Vec::with_capacity(divisors.len());
    for g in divisors {
        let l = g.leading(ord).map_err(|_| Error::ZeroDivisor)?;
        exps.push(l.exp);
        lcs.push(l.lc);
    }
    Ok(divide_core(p, divisors, &exps, &lcs, ord))
}

/// Division modulo `Q`: each divisor is split as `g = g⁽¹⁾ − g⁽²⁾` where
/// `g⁽²⁾` collects the terms above `exp^modQ(g)` (coefficients in `Q`);
/// `P` is divided by the `g⁽¹⁾` and `T = Σ q_j g_j⁽²⁾`.
pub fn divide_mod_q<C: Coeff>(
    p: &HOperator<C>,
    divisors: &[HOperator<C>],
    ord: &OrderSpec,
    q: &ParamIdeal,
    h: &ParamPoly,
) -> Result<DivisionResult<C>> {
    let n = p.n();
    let mut heads = Vec::with_capacity(divisors.len());
    let mut tails = Vec::with_capacity(divisors.len());
    let mut exps = Vec::with_capacity(divisors.len());
    let mut lcs = Vec::with_capacity(divisors.len());
    for (j, g) in divisors.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let l = g.leading_mod(ord, q).map_err(|_| Error::DivisorInQ(j))?;
        if !l.lc.numer_poly().divides(h) {
            return Err(Error::LcDoesNotDivideH(j));
        }
        let mut above = HOperator::<C>::zero(n);
        for (e, c) in g.terms() {
            if ord.compare(e, &l.exp).is_gt() {
                above.add_term(e.clone(), c.clone());
            }
        }
        heads.push(g.sub(&above));
        tails.push(above.neg());
        exps.push(l.exp);
        lcs.push(l.lc);
    }
    let mut res = divide_core(p, &heads, &exps, &lcs, ord);
    let mut t = HOperator::<C>::zero(n);
    for (qj, g2) in res.quotients.iter().zip(&tails) {
        if !qj.is_zero() && !g2.is_zero() {
            t = t.add(&qj.mul_in(g2, ord));
        }
    }
    if let Some(c) = res.cap {
        t = t.truncate(c);
    }
    res.tainted |= t.tainted();
    res.t_part = t;
    Ok(res)
}

/// Checks the denominator form `c / Π lc(g_j)^{d_j}` of quotient and
/// remainder coefficients, allowing the denominators already present in the
/// inputs.
pub fn denominator_certificate<C: Coeff>(
    res: &DivisionResult<C>,
    p: &HOperator<C>,
    divisors: &[HOperator<C>],
) -> bool {
    let mut input_dens: Vec<C::Ring> = Vec::new();
    let push_den = |d: C::Ring, v: &mut Vec<C::Ring>| {
        if !v.contains(&d) {
            v.push(d);
        }
    };
    for (_, c) in p.terms() {
        push_den(c.denom(), &mut input_dens);
    }
    let mut bound = input_dens
        .iter()
        .fold(<C::Ring as RingElem>::one(), |acc, d| acc.mul(d));
    for (j, g) in divisors.iter().enumerate() {
        let mut per_step = res.divisor_lcs[j].numer();
        let mut dens: Vec<C::Ring> = Vec::new();
        for (_, c) in g.terms() {
            push_den(c.denom(), &mut dens);
        }
        for d in &dens {
            per_step = per_step.mul(d);
        }
        for _ in 0..res.denom_certificate[j] {
            bound = bound.mul(&per_step);
        }
    }
    let ok = |op: &HOperator<C>| op.terms().all(|(_, c)| c.denom().divides(&bound));
    ok(&res.remainder) && res.quotients.iter().all(ok)
}

/// `P − Σ q_j g_j − R − T` restricted to the certified window; zero when the
/// division identity holds.
pub fn reconstruction_defect<C: Coeff>(
    res: &DivisionResult<C>,
    p: &HOperator<C>,
    divisors: &[HOperator<C>],
    ord: &OrderSpec,
) -> HOperator<C> {
    let mut acc = p.clone();
    for (qj, g) in res.quotients.iter().zip(divisors) {
        acc = acc.sub(&qj.mul_in(g, ord));
    }
    acc = acc.sub(&res.remainder).sub(&res.t_part);
    match res.cap {
        Some(c) => acc.truncate(c),
        None => acc,
    }
}

/// Support conditions: `Supp(q_j) + exp_j ⊆ Δ_j` and `Supp(R) ⊆ Δ̄`.
pub fn support_conditions_hold<C: Coeff>(res: &DivisionResult<C>) -> bool {
    let part = partition(&res.divisor_exps);
    let quot_ok = res.quotients.iter().enumerate().all(|(j, q)| {
        q.support()
            .all(|e| part.classify(&e.add(&res.divisor_exps[j])) == Some(j))
    });
    quot_ok && res.remainder.support().all(|e| part.classify(e).is_none())
}
