//! Generators and checks shared by the property suite and the acceptance
//! runner.

#![allow(dead_code)]

use std::cmp::Ordering;

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

use dfan::coeffs::{ParamFraction, ParamIdeal, ParamPoly, Rat};
use dfan::division::{
    denominator_certificate, divide, divide_mod_q, reconstruction_defect, support_conditions_hold, DivisionResult,
};
use dfan::hdo::{BaseOrder, Exponent, HOperator, OrderSpec, Weight};
use dfan::polyhedra::{weight_dot, WStarRays};

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Draws one value from `s`.
pub fn draw<S: Strategy>(s: &S, runner: &mut TestRunner) -> S::Value {
    s.new_tree(runner).expect("strategy").current()
}

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-5i64..=5, 1i64..=3)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| rat(n, d))
}

pub fn exponent(n: usize, max: u32, z: bool) -> impl Strategy<Value = Exponent> {
    let kmax: u32 = if z { 1 } else { 0 };
    (
        proptest::collection::vec(0..=max, n),
        proptest::collection::vec(0..=max, n),
        0..=kmax,
    )
        .prop_map(|(a, b, k)| Exponent::new(a, b, k))
}

pub fn rat_op(n: usize, terms: usize, z: bool) -> impl Strategy<Value = HOperator<Rat>> {
    rat_op_deg(n, 2, terms, z)
}

/// Like [`rat_op`] with every exponent entry at most `max`.
pub fn rat_op_deg(n: usize, max: u32, terms: usize, z: bool) -> impl Strategy<Value = HOperator<Rat>> {
    proptest::collection::vec((exponent(n, max, z), small_rat()), 1..=terms)
        .prop_map(move |ts| HOperator::from_terms(n, ts))
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Coefficients `a + b·y` with `a, b` small rationals or zero.
pub fn param_op(n: usize, terms: usize) -> impl Strategy<Value = HOperator<ParamFraction>> {
    let coeff = (small_rat(), small_rat(), 0u8..3).prop_map(|(a, b, kind)| {
        let y = ParamPoly::var(0);
        let p = match kind {
            0 => ParamPoly::constant(a),
            1 => y.scale(&b),
            _ => &ParamPoly::constant(a) + &y.scale(&b),
        };
        ParamFraction::from_poly(p)
    });
    proptest::collection::vec((exponent(n, 2, false), coeff), 1..=terms)
        .prop_map(move |ts| HOperator::from_terms(n, ts))
        .prop_filter("nonzero", |p| !p.is_zero())
}

pub fn admissible_weight(n: usize) -> impl Strategy<Value = Weight> {
    (
        proptest::collection::vec(0i64..=4, n),
        proptest::collection::vec(0i64..=4, n),
    )
        .prop_map(|(a, b)| {
            let u: Vec<i64> = a.iter().map(|x| -x).collect();
            let v: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            Weight::from_ints(&u, &v)
        })
}

pub fn any_weight(n: usize) -> impl Strategy<Value = Weight> {
    (
        proptest::collection::vec(-4i64..=4, n),
        proptest::collection::vec(-4i64..=4, n),
    )
        .prop_map(|(u, v)| Weight::from_ints(&u, &v))
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-4i64..=4, 2 * n + 1)
}

/// Univariate fractions with denominators off `y = 0` and `y² + 1 = 0`.
pub fn fraction() -> impl Strategy<Value = ParamFraction> {
    let poly = proptest::collection::vec(-3i64..=3, 1..=3)
        .prop_map(|cs| ParamPoly::from_dense(0, &cs.iter().map(|&c| rat(c, 1)).collect::<Vec<_>>()));
    (poly, 1i64..=3, 0i64..=2).prop_map(|(num, c, shift)| {
        // c + shift·y never vanishes at y = 0 and is coprime to y² + 1
        let den = ParamPoly::from_dense(0, &[rat(c, 1), rat(shift, 1)]);
        ParamFraction::raw(num, den)
    })
}

pub fn homogenized_order(n: usize, w: &Weight) -> OrderSpec {
    OrderSpec::new(BaseOrder::antigraded_lex(n), vec![w.clone()], true)
}

/// `exp(PQ) = exp(P) + exp(Q)`.
pub fn exp_additive(p: &HOperator<Rat>, q: &HOperator<Rat>, ord: &OrderSpec) -> bool {
    let pq = p.mul_in(q, ord);
    match (p.leading(ord), q.leading(ord), pq.leading(ord)) {
        (Ok(a), Ok(b), Ok(c)) => c.exp == a.exp.add(&b.exp),
        _ => false,
    }
}

fn w_order(p: &HOperator<Rat>, w: &Weight) -> Option<Rat> {
    p.support().map(|e| w.dot(e)).max()
}

/// `ord_w(PQ) = ord_w(P) + ord_w(Q)` for `w ∈ W`.
pub fn grading_additive(p: &HOperator<Rat>, q: &HOperator<Rat>, w: &Weight) -> bool {
    let pq = p.mul(q);
    match (w_order(p, w), w_order(q, w), w_order(&pq, w)) {
        (Some(a), Some(b), Some(c)) => c == a + b,
        _ => false,
    }
}

/// Totality, antisymmetry, transitivity, translation invariance and the
/// local/graded normalizations `x_i ≺ 1 ≺ x_i ∂_i`.
pub fn order_axioms(a: &Exponent, b: &Exponent, c: &Exponent, ord: &OrderSpec) -> bool {
    let n = a.n();
    let ab = ord.compare(a, b);
    let bc = ord.compare(b, c);
    let ac = ord.compare(a, c);
    let total = (ab == Ordering::Equal) == (a == b);
    let anti = ord.compare(b, a) == ab.reverse();
    let trans = !(ab.is_lt() && bc.is_lt()) || ac.is_lt();
    let shift = ord.compare(&a.add(c), &b.add(c)) == ab;
    let one = Exponent::zero(n);
    let norm = (0..n).all(|i| {
        let xi = Exponent::x(n, i);
        let xd = xi.add(&Exponent::d(n, i));
        ord.compare(&xi, &one).is_lt() && ord.compare(&xd, &one).is_gt()
    });
    total && anti && trans && shift && norm
}

/// `w ∈ W` iff `⟨w, r⟩ ≤ 0` on the rays of `W*`, and `⟨w, d⟩ ≤ 0` for
/// `w ∈ W`, `d ∈ W*`.
pub fn duality_holds(w: &Weight, d: &[i64]) -> bool {
    let n = w.n();
    let rays = WStarRays::new(n);
    let zero = Rat::from_integer(0.into());
    let by_rays = rays.rays().iter().all(|r| weight_dot(w, r) <= zero);
    if by_rays != w.is_admissible() {
        return false;
    }
    !(w.is_admissible() && rays.contains(d)) || weight_dot(w, d) <= zero
}

/// Field axioms of `Frac(C/Q)` read through `eq_mod`.
pub fn field_axioms(a: &ParamFraction, b: &ParamFraction, c: &ParamFraction, q: &ParamIdeal) -> bool {
    let eq = |x: &ParamFraction, y: &ParamFraction| x.eq_mod(y, q);
    let assoc = eq(&a.add(b).add(c), &a.add(&b.add(c))) && eq(&a.mul(b).mul(c), &a.mul(&b.mul(c)));
    let comm = eq(&a.add(b), &b.add(a)) && eq(&a.mul(b), &b.mul(a));
    let dist = eq(&a.mul(&b.add(c)), &a.mul(b).add(&a.mul(c)));
    let ident = eq(&a.add(&ParamFraction::zero()), a) && eq(&a.mul(&ParamFraction::one()), a);
    let neg = a.add(&a.neg()).is_zero_mod(q);
    let inv = a.is_zero_mod(q) || b.div_mod(a, q).is_ok_and(|x| eq(&x.mul(a), b));
    assoc && comm && dist && ident && neg && inv
}

/// What one division instance satisfies.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct DivisionReport {
    pub reconstruction: bool,
    pub support: bool,
    pub deterministic: bool,
    pub idempotent: bool,
    pub denominators: bool,
}

impl DivisionReport {
    pub fn all(&self) -> bool {
        self.reconstruction && self.support && self.deterministic && self.idempotent && self.denominators
    }
}

fn same_result<C: dfan::coeffs::Coeff>(a: &DivisionResult<C>, b: &DivisionResult<C>) -> bool {
    a.remainder.eq_terms(&b.remainder)
        && a.t_part.eq_terms(&b.t_part)
        && a.quotients.len() == b.quotients.len()
        && a.quotients.iter().zip(&b.quotients).all(|(x, y)| x.eq_terms(y))
}

pub fn check_division(p: &HOperator<Rat>, divisors: &[HOperator<Rat>], ord: &OrderSpec) -> DivisionReport {
    let (Ok(res), Ok(again)) = (divide(p, divisors, ord), divide(p, divisors, ord)) else {
        return DivisionReport::default();
    };
    let idem = divide(&res.remainder, divisors, ord)
        .is_ok_and(|r| r.remainder.eq_terms(&res.remainder) && r.quotients.iter().all(|q| q.is_zero()));
    DivisionReport {
        reconstruction: reconstruction_defect(&res, p, divisors, ord).is_zero(),
        support: support_conditions_hold(&res),
        deterministic: same_result(&res, &again),
        idempotent: idem,
        denominators: denominator_certificate(&res, p, divisors),
    }
}

/// Division modulo `Q` with `h` the product of the `lc^modQ` numerators.
pub fn check_division_mod_q(
    p: &HOperator<ParamFraction>,
    divisors: &[HOperator<ParamFraction>],
    ord: &OrderSpec,
    q: &ParamIdeal,
) -> DivisionReport {
    let mut h = ParamPoly::one();
    for g in divisors {
        match g.leading_mod(ord, q) {
            Ok(l) => h = &h * l.lc.num(),
            Err(_) => return DivisionReport::default(),
        }
    }
    let run = || divide_mod_q(p, divisors, ord, q, &h);
    let (Ok(res), Ok(again)) = (run(), run()) else {
        return DivisionReport::default();
    };
    let idem = divide_mod_q(&res.remainder, divisors, ord, q, &h)
        .is_ok_and(|r| r.remainder.eq_terms(&res.remainder) && r.quotients.iter().all(|x| x.is_zero()));
    DivisionReport {
        reconstruction: reconstruction_defect(&res, p, divisors, ord).is_zero(),
        support: support_conditions_hold(&res),
        deterministic: same_result(&res, &again),
        idempotent: idem,
        denominators: denominator_certificate(&res, p, divisors),
    }
}
