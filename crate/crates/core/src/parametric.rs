//! Constancy certificates for fans of parametric ideals and the
//! stratification of parameter space they induce.

use rayon::prelude::*;

use crate::coeffs::{factor_univariate, ParamFraction, ParamIdeal, ParamPoly, Rat};
use crate::error::{Error, Result};
use crate::fan::{
    enumerate_fan, enumerate_with, fans_equal, homogenized_generators, weight_order, CellData, FanCell,
    FanOptions, GroebnerFan,
};
use crate::hdo::{BaseOrder, HOperator, OrderSpec};
use crate::polyhedra::{newton, RelOpenCone};
use crate::sample::param_grid;
use crate::standard::{complete, generic_sb, reduced_generic_sb, source_cap, GenSBCertificate, StandardBasis};

/// Default recursion depth of [`comprehensive_fan`].
pub const DEFAULT_MAX_DEPTH: usize = 4;

/// `V(q) ∖ V(h)`.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub q: ParamIdeal,
    pub h: ParamPoly,
    pub description: String,
    /// False when `q` was not proven prime.
    pub verified: bool,
    pub depth: usize,
}

impl Stratum {
    /// `y0 ∈ V(q)` and `h(y0) ≠ 0`.
    pub fn contains(&self, y0: &[Rat]) -> bool {
        let zero = |p: &ParamPoly| p.eval(y0) == Rat::from_integer(0.into());
        self.q.generators().iter().all(zero) && !zero(&self.h)
    }
}

#[derive(Clone, Debug)]
pub struct ConstantFanCertificate {
    pub q: ParamIdeal,
    /// `h′ · h″ · h_1 ⋯ h_s` with repeated pieces dropped.
    pub h: ParamPoly,
    /// The distinct monic pieces whose product is `h`.
    pub pieces: Vec<ParamPoly>,
    pub h_prime: ParamPoly,
    pub fan: GroebnerFan<ParamFraction>,
    pub per_cone: Vec<GenSBCertificate>,
}

/// A cell of the common refinement: one cell index per stratum fan.
#[derive(Clone, Debug)]
pub struct RefinementCell {
    pub cone: RelOpenCone,
    pub cells: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ComprehensiveFan {
    pub strata: Vec<(Stratum, GroebnerFan<ParamFraction>)>,
    pub refinement: Vec<RefinementCell>,
}

fn push_piece(pieces: &mut Vec<ParamPoly>, p: &ParamPoly) {
    if p.as_constant().is_some() {
        return;
    }
    let m = p.monic();
    if !pieces.contains(&m) {
        pieces.push(m);
    }
}

fn product(pieces: &[ParamPoly]) -> ParamPoly {
    pieces.iter().fold(ParamPoly::one(), |acc, p| &acc * p)
}

/// `h` times the numerators of the coefficients of `(g)_Q` at its Newton
/// vertices, made monic.
pub fn newton_stability_multiplier(
    g: &HOperator<ParamFraction>,
    q: &ParamIdeal,
    h: &ParamPoly,
) -> Result<ParamPoly> {
    if g.vanishes_mod(q) {
        return Err(Error::AllCoefficientsInQ);
    }
    let pruned = g.prune_mod(q);
    let verts = newton(&pruned)?.vertices;
    let mut out = h.clone();
    for (e, c) in pruned.terms() {
        if verts.contains(&e.point()) {
            out = q.mul_outside(&out, c.num())?;
        }
    }
    Ok(out.monic())
}

/// A `≺_t` generic standard basis of the un-homogenized ideal and its `h′`.
pub fn homogenization_commutes(
    gens: &[HOperator<ParamFraction>],
    q: &ParamIdeal,
    base: &BaseOrder,
    cap: u32,
) -> Result<(ParamPoly, GenSBCertificate)> {
    let n = gens.first().ok_or(Error::ZeroOperator)?.n();
    let ord = OrderSpec::total_degree(base.clone(), n);
    let cert = generic_sb(gens, &ord, q, &FanOptions::new(cap).completion())?;
    Ok((cert.h.clone(), cert))
}

/// Generators of `h(I)` over `C[h′⁻¹]` together with `h′`.
fn homogenized_parametric(
    gens: &[HOperator<ParamFraction>],
    q: &ParamIdeal,
    base: &BaseOrder,
    cap: u32,
    guard: Option<u32>,
) -> Result<(ParamPoly, Vec<HOperator<ParamFraction>>)> {
    if gens.iter().any(|g| !g.is_z_free()) {
        return Ok((ParamPoly::one(), gens.to_vec()));
    }
    let (h_prime, cert) = homogenization_commutes(gens, q, base, source_cap(gens, cap, guard))?;
    let hgens = cert
        .basis
        .iter()
        .map(|g| g.prune_mod(q).homogenize())
        .collect::<Result<Vec<_>>>()?;
    Ok((h_prime, hgens))
}

fn cell_certificate(cell: &FanCell<ParamFraction>, q: &ParamIdeal) -> GenSBCertificate {
    let b = &cell.basis;
    GenSBCertificate {
        basis: b.elements.clone(),
        h: b.h.clone(),
        q: q.clone(),
        ord: b.ord.clone(),
        corners: b.corners.clone(),
        reduced: b.reduced,
        cap: b.cap,
        cap_certified: b.cap_certified,
        tainted: b.tainted,
    }
}

/// The fan of `(I)_Q` over `Frac(C/Q)` with a polynomial `h ∉ Q` such that
/// the fan of the specialized ideal is the same at every point of
/// `V(Q) ∖ V(h)`.
pub fn constant_fan_certificate(
    gens: &[HOperator<ParamFraction>],
    q: &ParamIdeal,
    base: &BaseOrder,
    opts: &FanOptions,
) -> Result<ConstantFanCertificate> {
    let (h_prime, hgens) = homogenized_parametric(gens, q, base, opts.cap, opts.guard)?;
    let n = hgens.first().ok_or(Error::ZeroOperator)?.n();
    let copts = opts.completion();
    let fan = enumerate_with(n, opts, |w| {
        w.check_admissible()?;
        let cert = reduced_generic_sb(&hgens, &weight_order(base, w), q, &copts)?;
        let basis = cert.to_basis();
        let newton = basis.elements.iter().map(newton).collect::<Result<Vec<_>>>()?;
        Ok(CellData { basis, newton })
    })?;
    let mut pieces = Vec::new();
    push_piece(&mut pieces, &h_prime);
    for cell in &fan.cells {
        push_piece(&mut pieces, &cell.basis.h);
        for g in &cell.basis.elements {
            push_piece(&mut pieces, &newton_stability_multiplier(g, q, &cell.basis.h)?);
        }
    }
    let h = product(&pieces);
    if q.contains(&h) {
        return Err(Error::NotPrime(format!("certificate polynomial {} lies in Q", h)));
    }
    let per_cone = fan.cells.iter().map(|c| cell_certificate(c, q)).collect();
    Ok(ConstantFanCertificate {
        q: q.clone(),
        h,
        pieces,
        h_prime,
        fan,
        per_cone,
    })
}

/// Coefficientwise evaluation at `y0`.
pub fn specialize_ideal(gens: &[HOperator<ParamFraction>], y0: &[Rat]) -> Result<Vec<HOperator<Rat>>> {
    gens.iter().map(|g| g.specialize(y0)).collect()
}

/// Evaluates every cell basis of a parametric fan at `y0`.
pub fn specialize_fan(fan: &GroebnerFan<ParamFraction>, y0: &[Rat]) -> Result<GroebnerFan<Rat>> {
    let cells = fan
        .cells
        .iter()
        .map(|c| {
            let b = &c.basis;
            Ok(FanCell {
                cone: c.cone.clone(),
                witness: c.witness.clone(),
                grading: c.grading.clone(),
                basis: StandardBasis {
                    elements: specialize_ideal(&b.elements, y0)?,
                    ord: b.ord.clone(),
                    corners: b.corners.clone(),
                    reduced: b.reduced,
                    cap: b.cap,
                    cap_certified: b.cap_certified,
                    tainted: b.tainted,
                    h: ParamPoly::one(),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroebnerFan {
        n: fan.n,
        cells,
        cap: fan.cap,
        cap_certified: fan.cap_certified,
    })
}

/// The independently enumerated fan of the ideal specialized at `y0`
/// equals the certified fan specialized at `y0`.
pub fn fan_matches_at(
    gens: &[HOperator<ParamFraction>],
    fan: &GroebnerFan<ParamFraction>,
    y0: &[Rat],
    base: &BaseOrder,
    opts: &FanOptions,
) -> Result<bool> {
    let direct = enumerate_fan(&specialize_ideal(gens, y0)?, base, opts)?;
    Ok(fans_equal(&direct, &specialize_fan(fan, y0)?))
}

/// Outcome of comparing fans at a point of `V(h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExceptionalCheck {
    /// Some cell or basis differs from the certified fan.
    Differs,
    /// The certificate makes no claim here and the comparison could not
    /// tell the fans apart, or could not be carried out.
    Inapplicable(String),
}

pub fn exceptional_check(
    gens: &[HOperator<ParamFraction>],
    fan: &GroebnerFan<ParamFraction>,
    y0: &[Rat],
    base: &BaseOrder,
    opts: &FanOptions,
) -> ExceptionalCheck {
    let direct = match specialize_ideal(gens, y0).and_then(|g| enumerate_fan(&g, base, opts)) {
        Ok(f) => f,
        Err(e) => return ExceptionalCheck::Inapplicable(e.to_string()),
    };
    let same_cones = direct.cells.len() == fan.cells.len()
        && direct
            .cells
            .iter()
            .all(|a| fan.cells.iter().any(|b| a.cone.same_cone(&b.cone)));
    if !same_cones {
        return ExceptionalCheck::Differs;
    }
    match specialize_fan(fan, y0) {
        Ok(s) if !fans_equal(&direct, &s) => ExceptionalCheck::Differs,
        Ok(_) => ExceptionalCheck::Inapplicable("fans coincide at this point".into()),
        Err(e) => ExceptionalCheck::Inapplicable(e.to_string()),
    }
}

/// Newton polyhedra of all certificate elements are unchanged at `y0`.
pub fn newton_stable_at(cert: &ConstantFanCertificate, y0: &[Rat]) -> Result<bool> {
    for c in &cert.per_cone {
        for g in &c.basis {
            let generic = newton(&g.prune_mod(&cert.q))?;
            let special = g.specialize(y0)?;
            if special.is_zero() || newton(&special)? != generic {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Staircase of `h(I|y0)` against the staircase of `h(I)|y0`, both for `≺^h`.
pub fn homogenization_check(
    gens: &[HOperator<ParamFraction>],
    q: &ParamIdeal,
    y0: &[Rat],
    base: &BaseOrder,
    cap: u32,
) -> Result<bool> {
    let (_, hgens) = homogenized_parametric(gens, q, base, cap, None)?;
    let opts = FanOptions::new(cap).completion();
    let ord = OrderSpec::new(base.clone(), vec![], true);
    let left = homogenized_generators(&specialize_ideal(gens, y0)?, base, &opts)?;
    let left = complete(&left, &ord, &opts)?;
    let right = complete(&specialize_ideal(&hgens, y0)?, &ord, &opts)?;
    Ok(left.corners == right.corners)
}

/// The first `count` grid points of `ℚ^m` lying in `V(q) ∖ V(h)`.
pub fn sample_points(m: usize, q: &ParamIdeal, h: &ParamPoly, count: usize) -> Vec<Vec<Rat>> {
    let stratum = Stratum {
        q: q.clone(),
        h: h.clone(),
        description: String::new(),
        verified: true,
        depth: 0,
    };
    let mut budget = 64 * count.max(1);
    loop {
        let pts: Vec<Vec<Rat>> = param_grid(m, budget)
            .into_iter()
            .filter(|y| stratum.contains(y))
            .take(count)
            .collect();
        if pts.len() == count || budget > 1 << 16 {
            return pts;
        }
        budget *= 4;
    }
}

fn describe(q: &ParamIdeal, h: &ParamPoly, params: &[String]) -> String {
    let q_part = if q.is_zero_ideal() {
        "ℚ^m".to_string()
    } else {
        let g: Vec<String> = q.generators().iter().map(|p| p.fmt_with(params)).collect();
        format!("V({})", g.join(", "))
    };
    if h.as_constant().is_some() {
        q_part
    } else {
        format!("{} ∖ V({})", q_part, h.fmt_with(params))
    }
}

/// Factors of `h` to branch on below `q`.
fn branches(h: &ParamPoly, q: &ParamIdeal, m: usize, pieces: &[ParamPoly]) -> (Vec<ParamPoly>, bool) {
    let (cands, certified) = if m <= 1 {
        let f = factor_univariate(h);
        (f.factors, f.certified)
    } else {
        (pieces.to_vec(), false)
    };
    let keep = cands
        .into_iter()
        .filter(|p| !q.contains(p) && !q.extend(p, false).is_unit_ideal())
        .collect();
    (keep, certified)
}

/// Strata of parameter space on which the fan is constant, built by
/// recursing on the zero sets of the certificate polynomials.
pub fn comprehensive_fan(
    gens: &[HOperator<ParamFraction>],
    m: usize,
    params: &[String],
    base: &BaseOrder,
    opts: &FanOptions,
    max_depth: usize,
) -> Result<ComprehensiveFan> {
    let mut strata = Vec::new();
    let mut stack = vec![(ParamIdeal::zero(), 0usize, true)];
    while let Some((q, depth, verified)) = stack.pop() {
        let cert = constant_fan_certificate(gens, &q, base, opts)?;
        let (children, certified) = branches(&cert.h, &q, m, &cert.pieces);
        if !children.is_empty() && depth >= max_depth {
            return Err(Error::DepthExceeded(max_depth));
        }
        for p in children.into_iter().rev() {
            let ok = verified && certified && (q.is_zero_ideal() || m <= 1);
            stack.push((q.extend(&p, ok), depth + 1, ok));
        }
        strata.push((
            Stratum {
                description: describe(&q, &cert.h, params),
                q,
                h: cert.h,
                verified,
                depth,
            },
            cert.fan,
        ));
    }
    let refinement = common_refinement(&strata.iter().map(|(_, f)| f).collect::<Vec<_>>());
    Ok(ComprehensiveFan { strata, refinement })
}

/// Nonempty intersections of one cell from each fan.
pub fn common_refinement(fans: &[&GroebnerFan<ParamFraction>]) -> Vec<RefinementCell> {
    let mut acc: Vec<RefinementCell> = match fans.first() {
        Some(f) => f
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| RefinementCell {
                cone: c.cone.clone(),
                cells: vec![i],
            })
            .collect(),
        None => return Vec::new(),
    };
    for f in &fans[1..] {
        acc = acc
            .par_iter()
            .flat_map_iter(|r| {
                f.cells.iter().enumerate().filter_map(move |(j, c)| {
                    let cone = r.cone.intersect(&c.cone);
                    (!cone.is_empty()).then(|| RefinementCell {
                        cone,
                        cells: r.cells.iter().copied().chain([j]).collect(),
                    })
                })
            })
            .collect();
    }
    acc
}

impl ComprehensiveFan {
    /// Indices of the strata containing `y0`.
    pub fn strata_of(&self, y0: &[Rat]) -> Vec<usize> {
        (0..self.strata.len())
            .filter(|&i| self.strata[i].0.contains(y0))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{int, rat};
    use crate::hdo::Exponent;

    fn y() -> ParamPoly {
        ParamPoly::var(0)
    }

    fn pf(p: ParamPoly) -> ParamFraction {
        ParamFraction::from_poly(p)
    }

    /// `∂² − y x`.
    fn airy() -> Vec<HOperator<ParamFraction>> {
        vec![HOperator::from_terms(
            1,
            [
                (Exponent::new(vec![0], vec![2], 0), ParamFraction::one()),
                (Exponent::new(vec![1], vec![0], 0), pf(-&y())),
            ],
        )]
    }

    /// `y x2 − x1 x2 + x1`.
    fn series_example() -> Vec<HOperator<ParamFraction>> {
        vec![HOperator::from_terms(
            2,
            [
                (Exponent::new(vec![0, 1], vec![0, 0], 0), pf(y())),
                (Exponent::new(vec![1, 1], vec![0, 0], 0), pf(ParamPoly::from_int(-1))),
                (Exponent::new(vec![1, 0], vec![0, 0], 0), ParamFraction::one()),
            ],
        )]
    }

    #[test]
    fn multiplier_examples() {
        let q = ParamIdeal::zero();
        let g = HOperator::from_terms(
            1,
            [
                (Exponent::new(vec![0], vec![2], 0), pf(y())),
                (Exponent::new(vec![1], vec![0], 2), ParamFraction::one()),
            ],
        );
        assert_eq!(newton_stability_multiplier(&g, &q, &y()).unwrap(), y().pow(2));
        let unit = HOperator::from_terms(
            1,
            [(Exponent::new(vec![0], vec![1], 0), ParamFraction::one())],
        );
        assert_eq!(newton_stability_multiplier(&unit, &q, &ParamPoly::one()).unwrap(), ParamPoly::one());
        let qy = ParamIdeal::new(vec![y()], true);
        let in_q = HOperator::from_terms(1, [(Exponent::new(vec![0], vec![1], 0), pf(y()))]);
        assert_eq!(newton_stability_multiplier(&in_q, &qy, &ParamPoly::one()), Err(Error::AllCoefficientsInQ));
    }

    #[test]
    fn h_prime_examples() {
        let base2 = BaseOrder::AntiGradedLex { priority: vec![1, 0] };
        let (h, _) = homogenization_commutes(&series_example(), &ParamIdeal::zero(), &base2, 5).unwrap();
        assert_eq!(h, y());
        let base1 = BaseOrder::antigraded_lex(1);
        let (h, _) = homogenization_commutes(&airy(), &ParamIdeal::zero(), &base1, 5).unwrap();
        assert!(h.is_one());
        for y0 in [int(0), int(1), int(5)] {
            assert!(homogenization_check(&airy(), &ParamIdeal::zero(), &[y0], &base1, 5).unwrap());
        }
    }

    #[test]
    fn specialize_examples() {
        let s = specialize_ideal(&series_example(), &[int(1)]).unwrap();
        let expect = HOperator::from_terms(
            2,
            [
                (Exponent::new(vec![0, 1], vec![0, 0], 0), int(1)),
                (Exponent::new(vec![1, 1], vec![0, 0], 0), int(-1)),
                (Exponent::new(vec![1, 0], vec![0, 0], 0), int(1)),
            ],
        );
        assert!(s[0].eq_terms(&expect));
        let inv = HOperator::from_terms(
            1,
            [(Exponent::zero(1), ParamFraction::raw(ParamPoly::one(), y()))],
        );
        assert_eq!(specialize_ideal(&[inv], &[int(0)]), Err(Error::DenominatorVanishes));
    }

    #[test]
    fn airy_certificate() {
        let base = BaseOrder::antigraded_lex(1);
        let opts = FanOptions::new(4);
        let cert = constant_fan_certificate(&airy(), &ParamIdeal::zero(), &base, &opts).unwrap();
        assert_eq!(cert.pieces, vec![y()]);
        for y0 in [int(1), int(-2), rat(1, 3)] {
            assert!(fan_matches_at(&airy(), &cert.fan, &[y0.clone()], &base, &opts).unwrap());
            assert!(newton_stable_at(&cert, &[y0]).unwrap());
        }
    }

    #[test]
    fn airy_strata() {
        let base = BaseOrder::antigraded_lex(1);
        let cf = comprehensive_fan(&airy(), 1, &["y".into()], &base, &FanOptions::new(4), 3).unwrap();
        assert_eq!(cf.strata.len(), 2);
        assert!(cf.strata.iter().all(|(s, _)| s.verified));
        for y0 in param_grid(1, 20) {
            assert_eq!(cf.strata_of(&y0).len(), 1);
        }
        assert!(!cf.refinement.is_empty());
    }

    #[test]
    fn series_certificate() {
        let base = BaseOrder::AntiGradedLex { priority: vec![1, 0] };
        let opts = FanOptions::new(4);
        let gens = series_example();
        let cert = constant_fan_certificate(&gens, &ParamIdeal::zero(), &base, &opts).unwrap();
        assert_eq!(cert.pieces, vec![y()]);
        assert!(fan_matches_at(&gens, &cert.fan, &[int(2)], &base, &opts).unwrap());
        assert_eq!(
            exceptional_check(&gens, &cert.fan, &[int(0)], &base, &opts),
            ExceptionalCheck::Differs
        );
    }
}
