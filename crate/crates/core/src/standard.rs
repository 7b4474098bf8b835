//! Standard bases: S-pair completion, reduction, and generic standard bases
//! over `C[h⁻¹]` read modulo a prime `Q`.

use crate::coeffs::{Coeff, ParamFraction, ParamIdeal, ParamPoly};
use crate::division::{divide_mod_q, DivisionResult};
use crate::error::{Error, Result};
use crate::hdo::{Exponent, HOperator, OrderSpec};
use crate::polyhedra::newton;

/// Extra x-degree carried internally on top of the requested cap.
pub const GUARD_SLACK: u32 = 4;
/// Completion attempts, doubling the guard each time.
pub const GUARD_RETRIES: usize = 3;

#[derive(Clone, Debug)]
pub struct StandardBasis<C: Coeff> {
    pub elements: Vec<HOperator<C>>,
    pub ord: OrderSpec,
    /// Minimal generators of the staircase `Exp(J)`.
    pub corners: Vec<Exponent>,
    pub reduced: bool,
    /// Requested cap; elements are exact on `|α| ≤ cap`.
    pub cap: u32,
    /// Cap at which the staircase was seen to be stable, if checked.
    pub cap_certified: Option<u32>,
    /// The precision window could not be reached.
    pub tainted: bool,
    /// Product of the leading-coefficient numerators and denominators met.
    pub h: ParamPoly,
}

/// A generic standard basis `(G, h)` on `V(Q)`.
#[derive(Clone, Debug)]
pub struct GenSBCertificate {
    pub basis: Vec<HOperator<ParamFraction>>,
    pub h: ParamPoly,
    pub q: ParamIdeal,
    pub ord: OrderSpec,
    /// Minimal generators of `Exp^modQ(J)`.
    pub corners: Vec<Exponent>,
    pub reduced: bool,
    pub cap: u32,
    pub cap_certified: Option<u32>,
    pub tainted: bool,
}

/// Knobs shared by the completion entry points.
#[derive(Clone, Debug)]
pub struct CompletionOptions {
    pub cap: u32,
    /// Internal extra precision; derived from the input when `None`.
    pub guard: Option<u32>,
    /// Recompute at `cap + 1` and require the same staircase.
    pub certify: bool,
}

impl CompletionOptions {
    pub fn new(cap: u32) -> Self {
        Self {
            cap,
            guard: None,
            certify: true,
        }
    }

    pub fn uncertified(cap: u32) -> Self {
        Self {
            certify: false,
            ..Self::new(cap)
        }
    }
}

/// Minimal elements of a set of exponents under componentwise `≤`,
/// sorted.
pub fn minimal_corners(exps: &[Exponent]) -> Vec<Exponent> {
    let mut out: Vec<Exponent> = Vec::new();
    for (i, e) in exps.iter().enumerate() {
        let covered = exps
            .iter()
            .enumerate()
            .any(|(j, f)| f.divides(e) && (f != e || j < i));
        if !covered {
            out.push(e.clone());
        }
    }
    out.sort();
    out
}

/// Completion state over `Frac(C/Q)`; `Q = (0)` gives plain completion.
struct Engine<'a, C: Coeff> {
    ord: &'a OrderSpec,
    q: &'a ParamIdeal,
    /// Distinct monic factors whose product is `h`.
    h_factors: Vec<ParamPoly>,
    h: ParamPoly,
    _marker: std::marker::PhantomData<C>,
}

impl<'a, C: Coeff> Engine<'a, C> {
    fn new(ord: &'a OrderSpec, q: &'a ParamIdeal) -> Self {
        Self {
            ord,
            q,
            h_factors: Vec::new(),
            h: ParamPoly::one(),
            _marker: std::marker::PhantomData,
        }
    }

    fn absorb(&mut self, p: &ParamPoly) -> Result<()> {
        if p.as_constant().is_some() {
            return Ok(());
        }
        let m = p.monic();
        if self.h_factors.contains(&m) || m.divides(&self.h) {
            return Ok(());
        }
        if self.q.contains(&m) {
            return Err(Error::DivisionByZeroModQ);
        }
        self.h = self.q.mul_outside(&self.h, &m)?;
        self.h_factors.push(m);
        Ok(())
    }

    fn absorb_denominators(&mut self, g: &HOperator<C>) -> Result<()> {
        for (_, c) in g.terms() {
            let d = c.denom_poly();
            self.absorb(&d)?;
        }
        Ok(())
    }

    fn lead(&self, g: &HOperator<C>) -> Result<Exponent> {
        Ok(g.leading_mod(self.ord, self.q)?.exp)
    }

    fn divide(&mut self, p: &HOperator<C>, basis: &[HOperator<C>]) -> Result<DivisionResult<C>> {
        for g in basis {
            let lc = g.leading_mod(self.ord, self.q)?.lc;
            self.absorb(&lc.numer_poly())?;
        }
        divide_mod_q(p, basis, self.ord, self.q, &self.h)
    }

    /// `p − Σ q_j g_j`, which lies in the ideal; `None` when it vanishes
    /// modulo `Q`.
    fn reduce_member(
        &mut self,
        p: &HOperator<C>,
        basis: &[HOperator<C>],
    ) -> Result<Option<HOperator<C>>> {
        let res = self.divide(p, basis)?;
        if res.remainder.vanishes_mod(self.q) {
            return Ok(None);
        }
        Ok(Some(res.remainder.add(&res.t_part)))
    }

    fn s_pair(&self, a: &HOperator<C>, b: &HOperator<C>) -> Result<HOperator<C>> {
        let la = a.leading_mod(self.ord, self.q)?;
        let lb = b.leading_mod(self.ord, self.q)?;
        let l = la.exp.lcm(&lb.exp);
        let ma = HOperator::monomial(la.exp.complement_in(&l), la.lc.inv().expect("lc ≠ 0"));
        let mb = HOperator::monomial(lb.exp.complement_in(&l), lb.lc.inv().expect("lc ≠ 0"));
        Ok(ma.mul_in(a, self.ord).sub(&mb.mul_in(b, self.ord)))
    }

    fn complete(&mut self, gens: &[HOperator<C>]) -> Result<Vec<HOperator<C>>> {
        let mut basis: Vec<HOperator<C>> = Vec::new();
        let mut exps: Vec<Exponent> = Vec::new();
        for g in gens {
            self.absorb_denominators(g)?;
        }
        let mut pending: Vec<HOperator<C>> = gens
            .iter()
            .filter(|g| !g.vanishes_mod(self.q))
            .cloned()
            .collect();
        if pending.is_empty() {
            return Err(Error::AllCoefficientsInQ);
        }
        // reduce generators in increasing order so small elements come first
        pending.sort_by(|a, b| {
            let ea = a.leading_mod(self.ord, self.q).map(|l| l.exp).ok();
            let eb = b.leading_mod(self.ord, self.q).map(|l| l.exp).ok();
            match (ea, eb) {
                (Some(x), Some(y)) => self.ord.compare(&x, &y),
                _ => std::cmp::Ordering::Equal,
            }
        });
        let mut pairs: Vec<(usize, usize, Exponent)> = Vec::new();
        let mut queue = pending.into_iter();
        loop {
            let next = if let Some(g) = queue.next() {
                Some(g)
            } else if !pairs.is_empty() {
                // smallest lcm first
                let mut best = 0;
                for k in 1..pairs.len() {
                    if self.ord.compare(&pairs[k].2, &pairs[best].2).is_lt() {
                        best = k;
                    }
                }
                let (i, j, _) = pairs.swap_remove(best);
                Some(self.s_pair(&basis[i], &basis[j])?)
            } else {
                None
            };
            let Some(p) = next else { break };
            if p.vanishes_mod(self.q) {
                continue;
            }
            let r = if basis.is_empty() {
                Some(p)
            } else {
                self.reduce_member(&p, &basis)?
            };
            let Some(r) = r else { continue };
            let e = self.lead(&r)?;
            let lc = r.leading_mod(self.ord, self.q)?.lc;
            self.absorb(&lc.numer_poly())?;
            self.absorb_denominators(&r)?;
            let idx = basis.len();
            for (i, f) in exps.iter().enumerate() {
                pairs.push((i, idx, f.lcm(&e)));
            }
            basis.push(r);
            exps.push(e);
        }
        Ok(basis)
    }

    /// Minimal, `lc^modQ = 1`, tail-reduced.
    fn reduce(&mut self, basis: &[HOperator<C>]) -> Result<Vec<HOperator<C>>> {
        let exps: Vec<Exponent> = basis.iter().map(|g| self.lead(g)).collect::<Result<_>>()?;
        let keep = minimal_corners(&exps);
        let mut minimal: Vec<HOperator<C>> = Vec::new();
        let mut used = Vec::new();
        for (g, e) in basis.iter().zip(&exps) {
            if keep.contains(e) && !used.contains(e) {
                used.push(e.clone());
                let lc = g.leading_mod(self.ord, self.q)?.lc;
                self.absorb(&lc.numer_poly())?;
                minimal.push(g.scale(&lc.inv().expect("lc ≠ 0")));
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for g in &minimal {
            let l = g.leading_mod(self.ord, self.q)?;
            let mut lm = l.lm.clone();
            if let Some(c) = g.cap() {
                lm = lm.truncate(c);
            }
            let tail = g.sub(&lm);
            let res = self.divide(&tail, &minimal)?;
            let mut r = res.remainder;
            r.set_tainted(r.tainted() || g.tainted());
            out.push(lm.add(&r));
        }
        out.sort_by(|a, b| {
            let ea = a.leading_mod(self.ord, self.q).unwrap().exp;
            let eb = b.leading_mod(self.ord, self.q).unwrap().exp;
            self.ord.compare(&ea, &eb)
        });
        Ok(out)
    }
}

struct Run<C: Coeff> {
    elements: Vec<HOperator<C>>,
    corners: Vec<Exponent>,
    h: ParamPoly,
    tainted: bool,
}

fn default_guard<C: Coeff>(gens: &[HOperator<C>]) -> u32 {
    gens.iter().map(|g| g.max_hom_degree()).max().unwrap_or(0) + GUARD_SLACK
}

/// Precision for generators that a completion at `cap`, and its `cap + 1`
/// rerun, will take as input: those runs see them untruncated inside their
/// guard band.
pub fn source_cap<C: Coeff>(gens: &[HOperator<C>], cap: u32, guard: Option<u32>) -> u32 {
    cap + 1 + guard.unwrap_or_else(|| default_guard(gens))
}

fn run_once<C: Coeff>(
    gens: &[HOperator<C>],
    ord: &OrderSpec,
    q: &ParamIdeal,
    cap: u32,
    guard: Option<u32>,
    reduce: bool,
) -> Result<Run<C>> {
    let mut guard = guard.unwrap_or_else(|| default_guard(gens));
    let mut last = None;
    for _ in 0..GUARD_RETRIES {
        let inner = cap + guard;
        let truncated: Vec<HOperator<C>> = gens.iter().map(|g| g.truncate(inner)).collect();
        for (g, t) in gens.iter().zip(&truncated) {
            if !g.vanishes_mod(q) && t.vanishes_mod(q) {
                return Err(Error::CapTooSmall(cap));
            }
        }
        let mut engine = Engine::new(ord, q);
        let mut elems = engine.complete(&truncated)?;
        if reduce {
            elems = engine.reduce(&elems)?;
        }
        let short = elems.iter().any(|g| g.cap().is_some_and(|c| c < cap));
        let elements: Vec<HOperator<C>> = elems.iter().map(|g| g.truncate(cap)).collect();
        if elements.iter().any(|g| g.vanishes_mod(q)) {
            return Err(Error::CapTooSmall(cap));
        }
        let exps: Vec<Exponent> = elements
            .iter()
            .map(|g| g.leading_mod(ord, q).map(|l| l.exp))
            .collect::<Result<_>>()?;
        let run = Run {
            corners: minimal_corners(&exps),
            elements,
            h: engine.h.clone(),
            tainted: short,
        };
        if !short {
            return Ok(run);
        }
        last = Some(run);
        guard *= 2;
    }
    Ok(last.expect("at least one attempt"))
}

fn certified_run<C: Coeff>(
    gens: &[HOperator<C>],
    ord: &OrderSpec,
    q: &ParamIdeal,
    opts: &CompletionOptions,
    reduce: bool,
) -> Result<(Run<C>, Option<u32>)> {
    if gens.iter().all(|g| g.is_zero()) {
        return Err(Error::ZeroOperator);
    }
    let run = run_once(gens, ord, q, opts.cap, opts.guard, reduce)?;
    if !opts.certify {
        return Ok((run, None));
    }
    let next = run_once(gens, ord, q, opts.cap + 1, opts.guard, reduce)?;
    if next.corners != run.corners {
        return Err(Error::CapTooSmall(opts.cap));
    }
    if reduce {
        for (a, b) in run.elements.iter().zip(&next.elements) {
            let va = newton(&a.prune_mod(q))?;
            let vb = newton(&b.prune_mod(q))?;
            if va != vb {
                return Err(Error::CapTooSmall(opts.cap));
            }
        }
    }
    Ok((run, Some(opts.cap)))
}

/// S-pair completion of the left ideal generated by `gens`.
pub fn complete<C: Coeff>(
    gens: &[HOperator<C>],
    ord: &OrderSpec,
    opts: &CompletionOptions,
) -> Result<StandardBasis<C>> {
    let q = ParamIdeal::zero();
    let (run, certified) = certified_run(gens, ord, &q, opts, false)?;
    Ok(StandardBasis {
        elements: run.elements,
        ord: ord.clone(),
        corners: run.corners,
        reduced: false,
        cap: opts.cap,
        cap_certified: certified,
        tainted: run.tainted,
        h: run.h,
    })
}

/// Completion followed by reduction, done at the internal precision.
pub fn reduced_basis<C: Coeff>(
    gens: &[HOperator<C>],
    ord: &OrderSpec,
    opts: &CompletionOptions,
) -> Result<StandardBasis<C>> {
    let q = ParamIdeal::zero();
    let (run, certified) = certified_run(gens, ord, &q, opts, true)?;
    Ok(StandardBasis {
        elements: run.elements,
        ord: ord.clone(),
        corners: run.corners,
        reduced: true,
        cap: opts.cap,
        cap_certified: certified,
        tainted: run.tainted,
        h: run.h,
    })
}

/// Minimalizes, normalizes and tail-reduces a standard basis at its own
/// precision.
pub fn reduce<C: Coeff>(g: &StandardBasis<C>) -> Result<StandardBasis<C>> {
    let q = ParamIdeal::zero();
    let mut engine = Engine::new(&g.ord, &q);
    let elements = engine.reduce(&g.elements)?;
    let tainted = g.tainted || elements.iter().any(|e| e.cap().is_some_and(|c| c < g.cap));
    let exps: Vec<Exponent> = elements
        .iter()
        .map(|e| e.leading(&g.ord).map(|l| l.exp))
        .collect::<Result<_>>()?;
    Ok(StandardBasis {
        elements,
        ord: g.ord.clone(),
        corners: minimal_corners(&exps),
        reduced: true,
        cap: g.cap,
        cap_certified: g.cap_certified,
        tainted,
        h: engine.h.clone(),
    })
}

impl<C: Coeff> StandardBasis<C> {
    /// Remainder of `p` on division by the basis, over the known window.
    pub fn remainder(&self, p: &HOperator<C>) -> Result<HOperator<C>> {
        let res = crate::division::divide(&p.truncate(self.cap), &self.elements, &self.ord)?;
        Ok(res.remainder)
    }

    /// `true` when `p` reduces to zero on `|α| ≤ cap`.
    pub fn reduces_to_zero(&self, p: &HOperator<C>) -> Result<bool> {
        Ok(self.remainder(p)?.is_zero())
    }

    pub fn is_reduced_form(&self) -> bool {
        let exps: Vec<Exponent> = self
            .elements
            .iter()
            .filter_map(|g| g.leading(&self.ord).ok().map(|l| l.exp))
            .collect();
        if minimal_corners(&exps).len() != exps.len() {
            return false;
        }
        self.elements.iter().zip(&exps).all(|(g, e)| {
            g.coeff(e).is_some_and(|c| c.is_one())
                && g.support().all(|f| f == e || !exps.iter().any(|c| c.divides(f)))
        })
    }
}

fn certificate(
    gens: &[HOperator<ParamFraction>],
    ord: &OrderSpec,
    q: &ParamIdeal,
    opts: &CompletionOptions,
    reduce: bool,
) -> Result<GenSBCertificate> {
    let (run, certified) = certified_run(gens, ord, q, opts, reduce)?;
    Ok(GenSBCertificate {
        basis: run.elements,
        h: run.h,
        q: q.clone(),
        ord: ord.clone(),
        corners: run.corners,
        reduced: reduce,
        cap: opts.cap,
        cap_certified: certified,
        tainted: run.tainted,
    })
}

/// A generic standard basis of the ideal on `V(Q)`.
pub fn generic_sb(
    gens: &[HOperator<ParamFraction>],
    ord: &OrderSpec,
    q: &ParamIdeal,
    opts: &CompletionOptions,
) -> Result<GenSBCertificate> {
    certificate(gens, ord, q, opts, false)
}

/// The reduced generic standard basis on `V(Q)`: minimal, `lc^modQ = 1`,
/// and `G = {lm^modQ(g_j) + r_j}` with `r_j` the remainder modulo `Q`.
pub fn reduced_generic_sb(
    gens: &[HOperator<ParamFraction>],
    ord: &OrderSpec,
    q: &ParamIdeal,
    opts: &CompletionOptions,
) -> Result<GenSBCertificate> {
    certificate(gens, ord, q, opts, true)
}

/// Same cardinality and `exp^modQ` set, and matched elements differ by an
/// operator with all coefficient numerators in `Q`.
pub fn uniqueness_check(c1: &GenSBCertificate, c2: &GenSBCertificate) -> bool {
    if c1.basis.len() != c2.basis.len() || c1.corners != c2.corners {
        return false;
    }
    let lead = |g: &HOperator<ParamFraction>, c: &GenSBCertificate| {
        g.leading_mod(&c.ord, &c.q).ok().map(|l| l.exp)
    };
    c1.basis.iter().all(|g| {
        let e = lead(g, c1);
        c2.basis
            .iter()
            .find(|g2| lead(g2, c2) == e)
            .is_some_and(|g2| g.sub(g2).vanishes_mod(&c1.q))
    })
}

impl GenSBCertificate {
    /// `den | h^deg(den)` for every coefficient denominator.
    pub fn denominators_divide_h_power(&self) -> bool {
        self.basis.iter().all(|g| {
            g.terms().all(|(_, c)| {
                let d = c.den();
                if d.as_constant().is_some() {
                    return true;
                }
                d.divides(&self.h.pow(d.total_degree()))
            })
        })
    }

    /// Numerator of every `lc^modQ` divides `h`, and `h ∉ Q`.
    pub fn lc_condition(&self) -> bool {
        !self.q.contains(&self.h)
            && self.basis.iter().all(|g| {
                g.leading_mod(&self.ord, &self.q)
                    .is_ok_and(|l| l.lc.num().divides(&self.h))
            })
    }

    /// The basis read modulo `Q`: terms with coefficients in `Q` dropped.
    pub fn to_basis(&self) -> StandardBasis<ParamFraction> {
        StandardBasis {
            elements: self.basis.iter().map(|g| g.prune_mod(&self.q)).collect(),
            ord: self.ord.clone(),
            corners: self.corners.clone(),
            reduced: self.reduced,
            cap: self.cap,
            cap_certified: self.cap_certified,
            tainted: self.tainted,
            h: self.h.clone(),
        }
    }

    /// Specializes the basis at a point of `V(Q) ∖ V(h)`.
    pub fn specialize(&self, at: &[crate::coeffs::Rat]) -> Result<Vec<HOperator<crate::coeffs::Rat>>> {
        self.basis.iter().map(|g| g.specialize(at)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{int, Rat};
    use crate::hdo::BaseOrder;

    fn op(n: usize, terms: &[(Vec<u32>, Vec<u32>, u32, i64)]) -> HOperator<Rat> {
        HOperator::from_terms(
            n,
            terms
                .iter()
                .map(|(a, b, k, c)| (Exponent::new(a.clone(), b.clone(), *k), int(*c))),
        )
    }

    #[test]
    fn monomial_ideal() {
        let ord = OrderSpec::homogenized(1);
        let g = op(1, &[(vec![0], vec![1], 0, 1)]);
        let sb = complete(&[g.clone()], &ord, &CompletionOptions::new(4)).unwrap();
        assert_eq!(sb.elements.len(), 1);
        assert_eq!(sb.corners, vec![Exponent::d(1, 0)]);
        assert_eq!(sb.cap_certified, Some(4));
    }

    #[test]
    fn two_generators_cover_ideal() {
        let ord = OrderSpec::homogenized(1);
        let a = op(1, &[(vec![1], vec![1], 0, 1), (vec![0], vec![0], 1, 1)]);
        let b = op(1, &[(vec![0], vec![2], 0, 1)]);
        let sb = complete(&[a.clone(), b.clone()], &ord, &CompletionOptions::new(6)).unwrap();
        assert!(!sb.tainted);
        let mults = [
            op(1, &[(vec![1], vec![0], 0, 1)]),
            op(1, &[(vec![0], vec![1], 0, 2)]),
            op(1, &[(vec![2], vec![1], 0, 1), (vec![0], vec![0], 1, 3)]),
        ];
        for m1 in &mults {
            for m2 in &mults {
                let p = m1.mul(&a).add(&m2.mul(&b));
                assert!(sb.reduces_to_zero(&p).unwrap());
            }
        }
    }

    #[test]
    fn reduce_tail() {
        // {∂, ∂ + x z} → {∂, x z}
        let ord = OrderSpec::homogenized(1);
        let d = op(1, &[(vec![0], vec![1], 0, 1)]);
        let e = op(1, &[(vec![0], vec![1], 0, 1), (vec![1], vec![0], 1, 1)]);
        let sb = StandardBasis {
            elements: vec![d.clone(), e],
            ord: ord.clone(),
            corners: vec![],
            reduced: false,
            cap: 4,
            cap_certified: None,
            tainted: false,
            h: ParamPoly::one(),
        };
        let red = reduce(&sb).unwrap();
        assert_eq!(red.elements.len(), 1);
        let full = reduced_basis(
            &[d.clone(), op(1, &[(vec![1], vec![0], 1, 1)])],
            &ord,
            &CompletionOptions::new(4),
        )
        .unwrap();
        // x z ∂ − ∂ x z = −z², so z² joins the staircase
        assert_eq!(
            full.corners,
            vec![
                Exponent::new(vec![0], vec![0], 2),
                Exponent::new(vec![0], vec![1], 0),
                Exponent::new(vec![1], vec![0], 1)
            ]
        );
        assert!(full.is_reduced_form());
        let again = reduce(&full).unwrap();
        assert_eq!(again.elements, full.elements);
    }

    fn series_ideal() -> (Vec<HOperator<ParamFraction>>, OrderSpec) {
        let ord = OrderSpec::new(BaseOrder::AntiGradedLex { priority: vec![1, 0] }, vec![], true);
        let y = ParamFraction::from_poly(ParamPoly::var(0));
        let one = ParamFraction::one();
        let f = HOperator::from_terms(
            2,
            [
                (Exponent::x(2, 1), y),
                (Exponent::new(vec![1, 1], vec![0, 0], 0), one.neg()),
                (Exponent::x(2, 0), one),
            ],
        );
        (vec![f], ord)
    }

    #[test]
    fn series_reduced_generic() {
        let (gens, ord) = series_ideal();
        for k in [3u32, 4, 5] {
            let c = reduced_generic_sb(&gens, &ord, &ParamIdeal::zero(), &CompletionOptions::new(k))
                .unwrap();
            assert_eq!(c.basis.len(), 1);
            assert_eq!(c.h.monic(), ParamPoly::var(0));
            let yinv = ParamFraction::raw(ParamPoly::one(), ParamPoly::var(0));
            let mut expect = HOperator::monomial(Exponent::x(2, 1), ParamFraction::one());
            let mut coef = yinv.clone();
            for i in 1..=k {
                expect.add_term(Exponent::new(vec![i, 0], vec![0, 0], 0), coef.clone());
                coef = coef.mul(&yinv);
            }
            assert_eq!(c.basis[0].uncapped(), expect);
            assert_eq!(c.corners, vec![Exponent::x(2, 1)]);
            assert!(c.lc_condition());
            assert!(c.denominators_divide_h_power());
            assert!(!c.tainted);
        }
    }

    #[test]
    fn mod_q_unit_lc() {
        // ∂² − y x z² over Q = ⟨y⟩
        let ord = OrderSpec::homogenized(1);
        let y = ParamFraction::from_poly(ParamPoly::var(0));
        let g = HOperator::from_terms(
            1,
            [
                (Exponent::new(vec![0], vec![2], 0), ParamFraction::one()),
                (Exponent::new(vec![1], vec![0], 2), y.neg()),
            ],
        );
        let q = ParamIdeal::new(vec![ParamPoly::var(0)], true);
        let c = generic_sb(&[g.clone()], &ord, &q, &CompletionOptions::new(4)).unwrap();
        assert_eq!(c.basis.len(), 1);
        assert_eq!(c.corners, vec![Exponent::new(vec![0], vec![2], 0)]);
        assert!(c.h.as_constant().is_some());
        assert_eq!(c.basis[0].uncapped(), g);
    }

    #[test]
    fn uniqueness_examples() {
        let (gens, ord) = series_ideal();
        let q = ParamIdeal::zero();
        let c = reduced_generic_sb(&gens, &ord, &q, &CompletionOptions::new(3)).unwrap();
        assert!(uniqueness_check(&c, &c));
        let scaled = vec![gens[0].scale(&ParamFraction::from_poly(
            &ParamPoly::var(0) + &ParamPoly::one(),
        ))];
        let c2 = reduced_generic_sb(&scaled, &ord, &q, &CompletionOptions::new(3)).unwrap();
        assert!(uniqueness_check(&c, &c2));

        let ord2 = OrderSpec::homogenized(2);
        let d1 = HOperator::monomial(Exponent::d(2, 0), ParamFraction::one());
        let d2 = HOperator::monomial(Exponent::d(2, 1), ParamFraction::one());
        let a = reduced_generic_sb(&[d1], &ord2, &q, &CompletionOptions::new(3)).unwrap();
        let b = reduced_generic_sb(&[d2], &ord2, &q, &CompletionOptions::new(3)).unwrap();
        assert!(!uniqueness_check(&a, &b));
    }
}
