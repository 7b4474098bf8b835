//! Gröbner fans of `h(I)`: the cells `C_w`, traversal across facets, and a
//! sampling oracle.

use rayon::prelude::*;

use crate::coeffs::{Coeff, Rat};
use crate::error::{Error, Result};
use crate::hdo::{BaseOrder, HOperator, OrderSpec, Weight};
use crate::polyhedra::{minkowski_sum, newton, normal_cone, NewtonPolyhedron, RelOpenCone};
use crate::sample::weight_grid;
use crate::standard::{reduced_basis, source_cap, CompletionOptions, StandardBasis};

/// Default cell budget for [`enumerate_fan`].
pub const DEFAULT_MAX_CELLS: usize = 10_000;
/// Halvings of the crossing step before a facet is given up.
const CROSSING_HALVINGS: usize = 12;

#[derive(Clone, Debug)]
pub struct FanCell<C: Coeff> {
    pub cone: RelOpenCone,
    pub basis: StandardBasis<C>,
    pub witness: Weight,
    /// Indices with `u_i + v_i = 0` on the cell.
    pub grading: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GroebnerFan<C: Coeff> {
    pub n: usize,
    pub cells: Vec<FanCell<C>>,
    pub cap: u32,
    /// Every cell basis passed the cap check.
    pub cap_certified: bool,
}

#[derive(Clone, Debug)]
pub struct FanOptions {
    pub cap: u32,
    pub max_cells: usize,
    pub certify: bool,
    pub seed: Option<Weight>,
    pub guard: Option<u32>,
}

impl FanOptions {
    pub fn new(cap: u32) -> Self {
        Self {
            cap,
            max_cells: DEFAULT_MAX_CELLS,
            certify: true,
            seed: None,
            guard: None,
        }
    }

    pub fn completion(&self) -> CompletionOptions {
        CompletionOptions {
            cap: self.cap,
            guard: self.guard,
            certify: self.certify,
        }
    }
}

/// `≺_w^h`: (∂,z)-degree, then `w`, then the base order.
pub fn weight_order(base: &BaseOrder, w: &Weight) -> OrderSpec {
    OrderSpec::new(base.clone(), vec![w.clone()], true)
}

/// Generators of `h(I)`: used as given when some generator involves `z`,
/// otherwise the homogenized elements of a `≺_t` standard basis of `I`.
pub fn homogenized_generators<C: Coeff>(
    gens: &[HOperator<C>],
    base: &BaseOrder,
    opts: &CompletionOptions,
) -> Result<Vec<HOperator<C>>> {
    if gens.iter().any(|g| !g.is_z_free()) {
        return Ok(gens.to_vec());
    }
    let n = gens.first().ok_or(Error::ZeroOperator)?.n();
    let ord = OrderSpec::total_degree(base.clone(), n);
    let source = CompletionOptions {
        cap: source_cap(gens, opts.cap, opts.guard),
        ..opts.clone()
    };
    let sb = reduced_basis(gens, &ord, &source)?;
    sb.elements.iter().map(|g| g.homogenize()).collect()
}

/// What a traversal needs at a weight: the reduced basis and the Newton
/// polyhedra whose Minkowski sum cuts out the cell.
pub struct CellData<C: Coeff> {
    pub basis: StandardBasis<C>,
    pub newton: Vec<NewtonPolyhedron>,
}

pub fn cell_data<C: Coeff>(
    hgens: &[HOperator<C>],
    w: &Weight,
    base: &BaseOrder,
    opts: &CompletionOptions,
) -> Result<CellData<C>> {
    w.check_admissible()?;
    let basis = reduced_basis(hgens, &weight_order(base, w), opts)?;
    let newton = basis.elements.iter().map(newton).collect::<Result<Vec<_>>>()?;
    Ok(CellData { basis, newton })
}

fn cone_of(newtons: &[NewtonPolyhedron], n: usize, w: &Weight) -> Result<RelOpenCone> {
    let sum = if newtons.is_empty() {
        NewtonPolyhedron::from_points(n, &[vec![0; 2 * n + 1]])
    } else {
        minkowski_sum(newtons)
    };
    normal_cone(&sum, w)
}

/// The cell `C_w` of `h(I)` and its reduced standard basis.
pub fn cell_at<C: Coeff>(
    hgens: &[HOperator<C>],
    w: &Weight,
    base: &BaseOrder,
    opts: &CompletionOptions,
) -> Result<(RelOpenCone, StandardBasis<C>)> {
    let data = cell_data(hgens, w, base, opts)?;
    let cone = cone_of(&data.newton, w.n(), w)?;
    Ok((cone, data.basis))
}

/// Weights with every pattern of `u_i + v_i = 0`.
fn grading_seeds(n: usize, seed: &Weight) -> Vec<Weight> {
    let mut out = Vec::new();
    for mask in 0..(1usize << n) {
        let mut w = seed.clone();
        for i in 0..n {
            if mask >> i & 1 == 1 {
                w.v[i] = -w.u[i].clone();
            }
        }
        out.push(w);
    }
    out
}

pub fn default_seed(n: usize) -> Weight {
    Weight::from_ints(&vec![-1; n], &vec![2; n])
}

fn locate<C: Coeff>(cells: &[FanCell<C>], w: &[Rat]) -> Option<usize> {
    cells.iter().position(|c| c.cone.contains_point(w))
}

/// A weight to visit; crossings remember the facet point they should land
/// next to.
#[derive(Clone, Debug)]
struct Probe {
    w: Weight,
    cross: Option<Crossing>,
}

#[derive(Clone, Debug)]
struct Crossing {
    p: Vec<Rat>,
    dir: Vec<Rat>,
    eps: Rat,
    left: usize,
}

impl Probe {
    fn plain(w: Weight) -> Self {
        Self { w, cross: None }
    }

    /// The same crossing with half the step, if the landing cell does not
    /// touch the facet point.
    fn retry<C: Coeff>(&self, cell: &FanCell<C>) -> Option<Probe> {
        let c = self.cross.as_ref()?;
        if c.left == 0 || cell.cone.closure_contains(&c.p) {
            return None;
        }
        let eps = &c.eps / Rat::from_integer(2.into());
        Some(crossing_probe(&c.p, &c.dir, eps, c.left - 1))
    }
}

fn crossing_probe(p: &[Rat], dir: &[Rat], eps: Rat, left: usize) -> Probe {
    let q: Vec<Rat> = p.iter().zip(dir).map(|(pi, di)| pi + &eps * di).collect();
    Probe {
        w: Weight::from_flat(&q),
        cross: Some(Crossing {
            p: p.to_vec(),
            dir: dir.to_vec(),
            eps,
            left,
        }),
    }
}

/// Traversal shared by plain and parametric fans. `data_at` computes the
/// reduced basis and Newton polyhedra at a weight.
pub fn enumerate_with<C, F>(n: usize, opts: &FanOptions, data_at: F) -> Result<GroebnerFan<C>>
where
    C: Coeff,
    F: Fn(&Weight) -> Result<CellData<C>> + Sync,
{
    let seed = opts.seed.clone().unwrap_or_else(|| default_seed(n));
    seed.check_admissible()?;
    let mut cells: Vec<FanCell<C>> = Vec::new();
    let mut queue: Vec<Probe> = grading_seeds(n, &seed).into_iter().map(Probe::plain).collect();
    let make = |w: &Weight| -> Result<FanCell<C>> {
        let data = data_at(w)?;
        let cone = cone_of(&data.newton, n, w)?;
        Ok(FanCell {
            cone,
            grading: w.grading_signature(),
            basis: data.basis,
            witness: w.clone(),
        })
    };
    while !queue.is_empty() {
        let mut next: Vec<Probe> = Vec::new();
        let mut todo: Vec<Probe> = Vec::new();
        for probe in std::mem::take(&mut queue) {
            if !probe.w.is_admissible() {
                continue;
            }
            match locate(&cells, &probe.w.flat()) {
                Some(i) => next.extend(probe.retry(&cells[i])),
                None => {
                    if !todo.iter().any(|t| t.w == probe.w) {
                        todo.push(probe);
                    }
                }
            }
        }
        let computed: Vec<Result<FanCell<C>>> = todo.par_iter().map(|p| make(&p.w)).collect();
        let mut fresh = Vec::new();
        for (probe, cell) in todo.iter().zip(computed) {
            let cell = cell?;
            if let Some(i) = locate(&cells, &probe.w.flat()) {
                next.extend(probe.retry(&cells[i]));
                continue;
            }
            if !cell.cone.contains_point(&probe.w.flat()) {
                return Err(Error::EmptyCone);
            }
            next.extend(probe.retry(&cell));
            cells.push(cell);
            fresh.push(cells.len() - 1);
            if cells.len() > opts.max_cells {
                return Err(Error::NonConvergentTraversal(opts.max_cells));
            }
        }
        let found: Vec<Vec<Probe>> = fresh
            .par_iter()
            .map(|&i| frontier(&cells[i]))
            .collect::<Result<Vec<_>>>()?;
        next.extend(found.into_iter().flatten());
        queue = next;
    }
    let cap_certified = cells.iter().all(|c| c.basis.cap_certified.is_some() && !c.basis.tainted);
    cells.sort_by_key(|c| std::cmp::Reverse(c.cone.dimension()));
    Ok(GroebnerFan {
        n,
        cells,
        cap: opts.cap,
        cap_certified,
    })
}

/// Shrinks the step from `p` along `dir` until the probe is admissible.
fn step_probe(p: &[Rat], dir: &[Rat]) -> Option<Probe> {
    let mut eps = Rat::from_integer(1.into());
    for left in (0..CROSSING_HALVINGS).rev() {
        let probe = crossing_probe(p, dir, eps.clone(), left);
        if probe.w.is_admissible() {
            return Some(probe);
        }
        eps /= Rat::from_integer(2.into());
    }
    None
}

/// Probes from a cell: a relative interior point of each closure facet and
/// a crossing just beyond it along the line from the cell witness through
/// the facet point, plus steps off the span of a lower-dimensional cell
/// along the normals of its equalities. A step that leaves `W` for good is
/// dropped.
fn frontier<C: Coeff>(cell: &FanCell<C>) -> Result<Vec<Probe>> {
    let mut out = Vec::new();
    let c = cell.cone.interior_point()?;
    for (_, facet) in cell.cone.closure_facets() {
        let p = facet.interior_point()?;
        out.push(Probe::plain(Weight::from_flat(&p)));
        let dir: Vec<Rat> = p.iter().zip(&c).map(|(pi, ci)| pi - ci).collect();
        out.extend(step_probe(&p, &dir));
    }
    for f in cell.cone.implicit_equalities() {
        let neg: Vec<Rat> = f.iter().map(|x| -x).collect();
        out.extend(step_probe(&c, &f));
        out.extend(step_probe(&c, &neg));
    }
    Ok(out)
}

/// Gröbner fan of the ideal generated by `gens` (see
/// [`homogenized_generators`]).
pub fn enumerate_fan<C: Coeff>(
    gens: &[HOperator<C>],
    base: &BaseOrder,
    opts: &FanOptions,
) -> Result<GroebnerFan<C>> {
    let copts = opts.completion();
    let hgens = homogenized_generators(gens, base, &copts)?;
    let n = hgens.first().ok_or(Error::ZeroOperator)?.n();
    enumerate_with(n, opts, |w| cell_data(&hgens, w, base, &copts))
}

impl<C: Coeff> GroebnerFan<C> {
    /// Index of the cell containing `w`.
    pub fn cell_of(&self, w: &Weight) -> Option<usize> {
        locate(&self.cells, &w.flat())
    }

    pub fn max_dimension(&self) -> usize {
        self.cells.iter().map(|c| c.cone.dimension()).max().unwrap_or(0)
    }
}

/// Coefficientwise equality of two bases, element by element.
pub fn same_elements<C: Coeff>(a: &[HOperator<C>], b: &[HOperator<C>]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.eq_terms(y))
}

/// Cellwise equality: equal cones carrying equal bases.
pub fn fans_equal<C: Coeff>(a: &GroebnerFan<C>, b: &GroebnerFan<C>) -> bool {
    a.cells.len() == b.cells.len()
        && a.cells.iter().all(|ca| {
            b.cells.iter().any(|cb| {
                ca.cone.same_cone(&cb.cone) && same_elements(&ca.basis.elements, &cb.basis.elements)
            })
        })
}

/// Sample weights grouped by reduced basis and grading signature.
#[derive(Clone, Debug)]
pub struct OracleGroup<C: Coeff> {
    pub basis: Vec<HOperator<C>>,
    pub grading: Vec<usize>,
    pub members: Vec<Weight>,
}

pub fn oracle_fan<C: Coeff>(
    gens: &[HOperator<C>],
    base: &BaseOrder,
    cap: u32,
    samples: usize,
) -> Result<Vec<OracleGroup<C>>> {
    let copts = CompletionOptions::uncertified(cap);
    let hgens = homogenized_generators(gens, base, &copts)?;
    let n = hgens.first().ok_or(Error::ZeroOperator)?.n();
    let weights = weight_grid(n, samples);
    let bases: Vec<Vec<HOperator<C>>> = weights
        .par_iter()
        .map(|w| reduced_basis(&hgens, &weight_order(base, w), &copts).map(|b| b.elements))
        .collect::<Result<_>>()?;
    let mut groups: Vec<OracleGroup<C>> = Vec::new();
    for (w, b) in weights.into_iter().zip(bases) {
        let sig = w.grading_signature();
        match groups
            .iter_mut()
            .find(|g| g.grading == sig && same_elements(&g.basis, &b))
        {
            Some(g) => g.members.push(w),
            None => groups.push(OracleGroup {
                basis: b,
                grading: sig,
                members: vec![w],
            }),
        }
    }
    Ok(groups)
}

/// Terms of maximal `w`-weight.
pub fn initial_form<C: Coeff>(g: &HOperator<C>, w: &Weight) -> HOperator<C> {
    let best = g.support().map(|e| w.dot(e)).max();
    let mut out = HOperator::zero(g.n());
    if let Some(m) = best {
        for (e, c) in g.terms() {
            if w.dot(e) == m {
                out = out.add(&HOperator::monomial(e.clone(), c.clone()));
            }
        }
    }
    out
}

/// Initial forms of the `≺_w^h` reduced basis: generators of `gr^w(h(I))`.
pub fn graded_ideal<C: Coeff>(
    gens: &[HOperator<C>],
    w: &Weight,
    base: &BaseOrder,
    cap: u32,
) -> Result<Vec<HOperator<C>>> {
    let copts = CompletionOptions::uncertified(cap);
    let hgens = homogenized_generators(gens, base, &copts)?;
    let sb = reduced_basis(&hgens, &weight_order(base, w), &copts)?;
    Ok(sb.elements.iter().map(|g| initial_form(g, w)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::int;
    use crate::hdo::Exponent;
    use crate::polyhedra::w_stratum;

    fn op(n: usize, terms: &[(Vec<u32>, Vec<u32>, u32, i64)]) -> HOperator<Rat> {
        HOperator::from_terms(
            n,
            terms
                .iter()
                .map(|(a, b, k, c)| (Exponent::new(a.clone(), b.clone(), *k), int(*c))),
        )
    }

    fn base1() -> BaseOrder {
        BaseOrder::antigraded_lex(1)
    }

    #[test]
    fn cell_of_monomial_ideal() {
        let d = op(1, &[(vec![0], vec![1], 0, 1)]);
        let w = Weight::from_ints(&[-1], &[2]);
        let (cone, sb) = cell_at(&[d.clone()], &w, &base1(), &CompletionOptions::new(4)).unwrap();
        assert_eq!(sb.elements, vec![d.truncate(4)]);
        assert!(cone.same_cone(&w_stratum(&w).unwrap()));
        let w = Weight::from_ints(&[-1], &[1]);
        let (cone, _) = cell_at(&[d], &w, &base1(), &CompletionOptions::new(4)).unwrap();
        assert_eq!(cone.dimension(), 1);
        assert!(cone.contains_point(&[int(-2), int(2)]));
    }

    #[test]
    fn unit_ideal_fan_is_w_strata() {
        let one = op(1, &[(vec![0], vec![0], 0, 1)]);
        let fan = enumerate_fan(&[one], &base1(), &FanOptions::new(3)).unwrap();
        // interior, u+v=0, u=0, and the origin
        assert_eq!(fan.cells.len(), 4);
    }

    #[test]
    fn airy_fan() {
        let g = op(1, &[(vec![0], vec![2], 0, 1), (vec![1], vec![0], 2, 1)]);
        let fan = enumerate_fan(&[g.clone()], &base1(), &FanOptions::new(4)).unwrap();
        let interior = fan.cell_of(&Weight::from_ints(&[-1], &[3])).unwrap();
        assert_eq!(fan.cells[interior].basis.elements[0].uncapped(), g);
        let groups = oracle_fan(&[g], &base1(), 4, 60).unwrap();
        for grp in &groups {
            for w in &grp.members {
                let i = fan.cell_of(w).expect("sample covered");
                assert!(same_elements(&fan.cells[i].basis.elements, &grp.basis));
            }
        }
    }

    #[test]
    fn initial_forms() {
        let g = op(1, &[(vec![0], vec![2], 0, 1), (vec![1], vec![0], 2, 1)]);
        let w = Weight::from_ints(&[-1], &[2]);
        assert_eq!(initial_form(&g, &w), op(1, &[(vec![0], vec![2], 0, 1)]));
        assert_eq!(initial_form(&g, &Weight::zero(1)), g);
    }
}
