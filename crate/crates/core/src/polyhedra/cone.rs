//! Relatively open polyhedral cones, decided by exact Fourier–Motzkin
//! elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeffs::Rat;
use crate::error::{Error, Result};

/// A homogeneous linear form `x ↦ Σ a_i x_i`.
pub type Form = Vec<Rat>;

pub fn dot(a: &[Rat], x: &[Rat]) -> Rat {
    a.iter().zip(x).fold(Rat::zero(), |acc, (c, v)| acc + c * v)
}

/// Positive multiple with coprime integer entries.
pub fn primitive(f: &[Rat]) -> Form {
    let l = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .iter()
        .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return f.to_vec();
    }
    ints.into_iter().map(|c| Rat::from_integer(c / &g)).collect()
}

fn is_zero_form(f: &[Rat]) -> bool {
    f.iter().all(|c| c.is_zero())
}

#[derive(Clone, Debug, PartialEq)]
struct Ineq {
    form: Form,
    strict: bool,
}

/// Bounds on one eliminated variable in terms of the later ones.
struct Level {
    var: usize,
    /// `x_var ≥ (or >) l(x)` from inequalities with positive coefficient.
    lower: Vec<Ineq>,
    upper: Vec<Ineq>,
}

/// Substitution `x_var = Σ c_j x_j` from an equality.
struct Pivot {
    var: usize,
    expr: Form,
}

fn push_unique(list: &mut Vec<Ineq>, form: Form, strict: bool) -> bool {
    if is_zero_form(&form) {
        // 0 ≥ 0 holds; 0 > 0 never does
        return !strict;
    }
    let form = primitive(&form);
    if let Some(i) = list.iter_mut().find(|i| i.form == form) {
        i.strict |= strict;
    } else {
        list.push(Ineq { form, strict });
    }
    true
}

/// Solves equalities by Gaussian elimination, returning substitutions and
/// the inequalities rewritten in the free variables; `None` if the
/// inequalities become contradictory.
fn eliminate_equalities(
    dim: usize,
    eqs: &[Form],
    ineqs: Vec<Ineq>,
) -> Option<(Vec<Pivot>, Vec<Ineq>)> {
    let mut rows: Vec<Form> = eqs.iter().filter(|e| !is_zero_form(e)).cloned().collect();
    let mut pivots: Vec<Pivot> = Vec::new();
    while let Some(row) = rows.pop() {
        let Some(var) = (0..dim).find(|&j| !row[j].is_zero()) else {
            continue;
        };
        // x_var = −Σ_{j≠var} row_j/row_var x_j
        let inv = row[var].recip();
        let mut expr: Form = row.iter().map(|c| -(c * &inv)).collect();
        expr[var] = Rat::zero();
        let subst = |f: &mut Form| {
            if !f[var].is_zero() {
                let c = f[var].clone();
                f[var] = Rat::zero();
                for j in 0..dim {
                    if !expr[j].is_zero() {
                        f[j] += &c * &expr[j];
                    }
                }
            }
        };
        for r in rows.iter_mut() {
            subst(r);
        }
        for p in pivots.iter_mut() {
            subst(&mut p.expr);
        }
        pivots.push(Pivot { var, expr: expr.clone() });
    }
    let mut out = Vec::new();
    for mut i in ineqs {
        for p in &pivots {
            if !i.form[p.var].is_zero() {
                let c = i.form[p.var].clone();
                i.form[p.var] = Rat::zero();
                for j in 0..dim {
                    if !p.expr[j].is_zero() {
                        i.form[j] += &c * &p.expr[j];
                    }
                }
            }
        }
        if !push_unique(&mut out, i.form, i.strict) {
            return None;
        }
    }
    Some((pivots, out))
}

/// Fourier–Motzkin with strictness tracking. Returns the elimination
/// levels for back-substitution, or `None` when infeasible.
fn fourier_motzkin(dim: usize, mut ineqs: Vec<Ineq>, skip: &[usize]) -> Option<Vec<Level>> {
    let mut levels = Vec::new();
    let mut remaining: Vec<usize> = (0..dim).filter(|v| !skip.contains(v)).collect();
    while !remaining.is_empty() {
        // cheapest variable first
        let (pos_in_remaining, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let p = ineqs.iter().filter(|i| i.form[v].is_positive()).count();
                let n = ineqs.iter().filter(|i| i.form[v].is_negative()).count();
                p * n
            })
            .unwrap();
        remaining.remove(pos_in_remaining);
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut rest = Vec::new();
        for i in ineqs {
            if i.form[var].is_positive() {
                lower.push(i);
            } else if i.form[var].is_negative() {
                upper.push(i);
            } else {
                rest.push(i);
            }
        }
        for l in &lower {
            for u in &upper {
                let a = &l.form[var];
                let b = -&u.form[var];
                let form: Form = l
                    .form
                    .iter()
                    .zip(&u.form)
                    .map(|(x, y)| x * &b + y * a)
                    .collect();
                if !push_unique(&mut rest, form, l.strict || u.strict) {
                    return None;
                }
            }
        }
        levels.push(Level { var, lower, upper });
        ineqs = rest;
    }
    if ineqs.iter().any(|i| i.strict && is_zero_form(&i.form)) {
        return None;
    }
    Some(levels)
}

/// Picks values for eliminated variables in reverse order.
fn back_substitute(dim: usize, levels: &[Level], pivots: &[Pivot]) -> Vec<Rat> {
    let mut x = vec![Rat::zero(); dim];
    for level in levels.iter().rev() {
        let v = level.var;
        // a x_v + r(x) ≥ 0 with a > 0 gives x_v ≥ −r/a
        let bound = |i: &Ineq| -> Rat {
            let a = i.form[v].clone();
            let mut r = Rat::zero();
            for j in 0..dim {
                if j != v {
                    r += &i.form[j] * &x[j];
                }
            }
            -r / a
        };
        let lo = level.lower.iter().map(bound).max();
        let hi = level.upper.iter().map(bound).min();
        x[v] = match (lo, hi) {
            (None, None) => Rat::zero(),
            (Some(l), None) => l + Rat::one(),
            (None, Some(h)) => h - Rat::one(),
            (Some(l), Some(h)) => (l + h) / Rat::from_integer(2.into()),
        };
    }
    // pivot expressions only involve free variables
    for p in pivots {
        x[p.var] = dot(&p.expr, &x);
    }
    x
}

/// A point satisfying `eqs = 0`, `strict > 0`, `weak ≥ 0`, if any.
pub fn find_point(dim: usize, eqs: &[Form], strict: &[Form], weak: &[Form]) -> Option<Vec<Rat>> {
    let mut ineqs = Vec::new();
    for f in strict {
        if !push_unique(&mut ineqs, f.clone(), true) {
            return None;
        }
    }
    for f in weak {
        push_unique(&mut ineqs, f.clone(), false);
    }
    let (pivots, ineqs) = eliminate_equalities(dim, eqs, ineqs)?;
    let skip: Vec<usize> = pivots.iter().map(|p| p.var).collect();
    let levels = fourier_motzkin(dim, ineqs, &skip)?;
    let x = back_substitute(dim, &levels, &pivots);
    debug_assert!(eqs.iter().all(|e| dot(e, &x).is_zero()));
    debug_assert!(strict.iter().all(|f| dot(f, &x).is_positive()));
    debug_assert!(weak.iter().all(|f| !dot(f, &x).is_negative()));
    Some(x)
}

pub fn is_feasible(dim: usize, eqs: &[Form], strict: &[Form], weak: &[Form]) -> bool {
    find_point(dim, eqs, strict, weak).is_some()
}

fn neg(f: &[Rat]) -> Form {
    f.iter().map(|c| -c).collect()
}

/// `{x : eqs = 0, strict > 0, weak ≥ 0}` with a stored witness when
/// nonempty.
#[derive(Clone, Debug)]
pub struct RelOpenCone {
    pub dim: usize,
    pub equalities: Vec<Form>,
    pub strict: Vec<Form>,
    pub weak: Vec<Form>,
    witness: Option<Vec<Rat>>,
}

impl RelOpenCone {
    pub fn new(dim: usize, equalities: Vec<Form>, strict: Vec<Form>, weak: Vec<Form>) -> Self {
        let dedup = |v: Vec<Form>| {
            let mut out: Vec<Form> = Vec::new();
            for f in v {
                if is_zero_form(&f) {
                    out.push(f);
                    continue;
                }
                let p = primitive(&f);
                if !out.contains(&p) {
                    out.push(p);
                }
            }
            out
        };
        let equalities: Vec<Form> = dedup(equalities)
            .into_iter()
            .filter(|f| !is_zero_form(f))
            .collect();
        let strict = dedup(strict);
        let weak: Vec<Form> = dedup(weak).into_iter().filter(|f| !is_zero_form(f)).collect();
        let witness = find_point(dim, &equalities, &strict, &weak);
        Self {
            dim,
            equalities,
            strict,
            weak,
            witness,
        }
    }

    /// The whole space.
    pub fn full(dim: usize) -> Self {
        Self::new(dim, vec![], vec![], vec![])
    }

    pub fn is_empty(&self) -> bool {
        self.witness.is_none()
    }

    pub fn interior_point(&self) -> Result<Vec<Rat>> {
        self.witness.clone().ok_or(Error::EmptyCone)
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        self.equalities.iter().all(|f| dot(f, x).is_zero())
            && self.strict.iter().all(|f| dot(f, x).is_positive())
            && self.weak.iter().all(|f| !dot(f, x).is_negative())
    }

    /// Membership in the closure (strict constraints relaxed).
    pub fn closure_contains(&self, x: &[Rat]) -> bool {
        self.equalities.iter().all(|f| dot(f, x).is_zero())
            && self
                .strict
                .iter()
                .chain(&self.weak)
                .all(|f| !dot(f, x).is_negative())
    }

    pub fn intersect(&self, o: &Self) -> Self {
        let cat = |a: &Vec<Form>, b: &Vec<Form>| a.iter().chain(b).cloned().collect::<Vec<_>>();
        Self::new(
            self.dim,
            cat(&self.equalities, &o.equalities),
            cat(&self.strict, &o.strict),
            cat(&self.weak, &o.weak),
        )
    }

    /// `self ⊆ o`, tested by showing each violation of `o` is infeasible.
    pub fn is_subset_of(&self, o: &Self) -> bool {
        if self.is_empty() {
            return true;
        }
        if o.is_empty() {
            return false;
        }
        let base_strict = &self.strict;
        let test = |extra_eq: Option<&Form>, extra_strict: Option<Form>, extra_weak: Option<Form>| {
            let mut eqs = self.equalities.clone();
            eqs.extend(extra_eq.cloned());
            let mut st = base_strict.clone();
            st.extend(extra_strict);
            let mut wk = self.weak.clone();
            wk.extend(extra_weak);
            is_feasible(self.dim, &eqs, &st, &wk)
        };
        for f in &o.equalities {
            if test(None, Some(f.clone()), None) || test(None, Some(neg(f)), None) {
                return false;
            }
        }
        for f in &o.strict {
            if test(None, None, Some(neg(f))) {
                return false;
            }
        }
        for f in &o.weak {
            if test(None, Some(neg(f)), None) {
                return false;
            }
        }
        true
    }

    pub fn same_cone(&self, o: &Self) -> bool {
        self.is_subset_of(o) && o.is_subset_of(self)
    }

    /// Constraint forms that vanish on the whole closure.
    pub fn implicit_equalities(&self) -> Vec<Form> {
        let mut eqs = self.equalities.clone();
        for f in self.strict.iter().chain(&self.weak) {
            if !is_feasible(self.dim, &self.equalities, std::slice::from_ref(f), &self.closure_ineqs()) {
                eqs.push(f.clone());
            }
        }
        eqs
    }

    fn closure_ineqs(&self) -> Vec<Form> {
        self.strict.iter().chain(&self.weak).cloned().collect()
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        self.dim - rank(&self.implicit_equalities(), self.dim)
    }

    /// Facets of the closure, each with the relatively open facet cone.
    pub fn closure_facets(&self) -> Vec<(Form, RelOpenCone)> {
        if self.is_empty() {
            return Vec::new();
        }
        let implicit = self.implicit_equalities();
        let d = self.dim - rank(&implicit, self.dim);
        let ineqs = self.closure_ineqs();
        let mut out: Vec<(Form, RelOpenCone)> = Vec::new();
        for f in &ineqs {
            if implicit.contains(f) {
                continue;
            }
            let mut eqs = implicit.clone();
            eqs.push(f.clone());
            // implicit equalities of the face
            let mut face_eqs = eqs.clone();
            let mut face_strict = Vec::new();
            for g in &ineqs {
                if face_eqs.contains(g) {
                    continue;
                }
                if is_feasible(self.dim, &eqs, std::slice::from_ref(g), &ineqs) {
                    face_strict.push(g.clone());
                } else {
                    face_eqs.push(g.clone());
                }
            }
            if self.dim - rank(&face_eqs, self.dim) + 1 != d {
                continue;
            }
            let cone = RelOpenCone::new(self.dim, face_eqs, face_strict, vec![]);
            if cone.is_empty() || out.iter().any(|(_, c)| c.same_cone(&cone)) {
                continue;
            }
            out.push((f.clone(), cone));
        }
        out
    }

    pub fn witness(&self) -> Option<&[Rat]> {
        self.witness.as_deref()
    }
}

/// Rank of a list of forms.
pub fn rank(forms: &[Form], dim: usize) -> usize {
    let mut rows: Vec<Form> = forms.to_vec();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let k = &rows[i][col] * &inv;
                for j in 0..dim {
                    let t = &k * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::int;

    fn f(v: &[i64]) -> Form {
        v.iter().map(|&c| int(c)).collect()
    }

    /// `W` for n = 1 in coordinates (u, v): −u ≥ 0, u + v ≥ 0.
    fn w_closed() -> Vec<Form> {
        vec![f(&[-1, 0]), f(&[1, 1])]
    }

    #[test]
    fn interior_of_w() {
        let c = RelOpenCone::new(2, vec![], w_closed(), vec![]);
        let p = c.interior_point().unwrap();
        assert!(p[0].is_negative());
        assert!((&p[0] + &p[1]).is_positive());
        assert_eq!(c.dimension(), 2);
    }

    #[test]
    fn boundary_ray() {
        let c = RelOpenCone::new(2, vec![f(&[1, 1])], vec![f(&[-1, 0])], vec![]);
        let p = c.interior_point().unwrap();
        assert!(c.contains_point(&p));
        assert!(c.contains_point(&[int(-1), int(1)]));
        assert_eq!(c.dimension(), 1);
    }

    #[test]
    fn empty_cone() {
        let c = RelOpenCone::new(2, vec![], vec![f(&[1, 0])], w_closed());
        assert!(c.is_empty());
        assert_eq!(c.interior_point(), Err(Error::EmptyCone));
    }

    #[test]
    fn same_cone_and_facets() {
        let a = RelOpenCone::new(2, vec![], w_closed(), vec![]);
        // redundant description of the same open cone
        let b = RelOpenCone::new(2, vec![], vec![f(&[-1, 0]), f(&[1, 1]), f(&[0, 1])], vec![]);
        assert!(a.same_cone(&b));
        let facets = a.closure_facets();
        assert_eq!(facets.len(), 2);
        for (_, c) in &facets {
            assert_eq!(c.dimension(), 1);
        }
        let half = RelOpenCone::new(2, vec![], vec![f(&[-1, 0])], vec![]);
        assert!(a.is_subset_of(&half));
        assert!(!half.is_subset_of(&a));
    }

    #[test]
    fn strict_chain_is_infeasible() {
        // x > y, y > x
        assert!(!is_feasible(2, &[], &[f(&[1, -1]), f(&[-1, 1])], &[]));
        // x ≥ y, y ≥ x, x > 0
        let p = find_point(2, &[], &[f(&[1, 0])], &[f(&[1, -1]), f(&[-1, 1])]).unwrap();
        assert_eq!(p[0], p[1]);
    }
}
