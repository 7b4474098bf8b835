//! Newton polyhedra `conv(E(g)) + W*`, their faces and normal cones inside
//! the admissible cone `W`.

mod cone;

pub use cone::{dot, find_point, is_feasible, primitive, rank, Form, RelOpenCone};

use num_traits::Zero;

use crate::coeffs::{self, Rat};
use crate::error::{Error, Result};
use crate::hdo::{HOperator, Weight};

/// A point `(α, β, k)` of `ℤ^{2n+1}`.
pub type Point = Vec<i64>;

/// Generators of `W*`: `e_i` (+1 at `x_i`) and `e′_i` (−1 at `x_i` and `∂_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WStarRays {
    pub n: usize,
}

impl WStarRays {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn rays(&self) -> Vec<Point> {
        let n = self.n;
        let mut out = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut e = vec![0; 2 * n + 1];
            e[i] = 1;
            out.push(e);
        }
        for i in 0..n {
            let mut e = vec![0; 2 * n + 1];
            e[i] = -1;
            e[n + i] = -1;
            out.push(e);
        }
        out
    }

    /// `d ∈ W*`: `d_z = 0`, `d_β ≤ 0` and `d_α ≥ d_β`.
    pub fn contains(&self, d: &[i64]) -> bool {
        let n = self.n;
        d[2 * n] == 0 && (0..n).all(|i| d[n + i] <= 0 && d[i] >= d[n + i])
    }
}

/// `conv(vertices) + W*` with an irredundant vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    pub n: usize,
    pub vertices: Vec<Point>,
}

fn sub(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn to_rat(p: &[i64]) -> Vec<Rat> {
    p.iter().map(|&c| Rat::from_integer(c.into())).collect()
}

/// Keeps the points that are vertices of `conv(points) + W*`.
fn irredundant(n: usize, points: &[Point]) -> Vec<Point> {
    let rays = WStarRays::new(n);
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    let pre: Vec<Point> = pts
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            !pts
                .iter()
                .enumerate()
                .any(|(j, q)| j != *i && rays.contains(&sub(p, q)))
        })
        .map(|(_, p)| p.clone())
        .collect();
    if pre.len() <= 1 {
        return pre;
    }
    // p is a vertex iff some c with u < 0 < u + v separates it strictly
    let dim = 2 * n + 1;
    let mut base: Vec<Form> = Vec::new();
    for i in 0..n {
        let mut f = vec![Rat::zero(); dim];
        f[i] = Rat::from_integer((-1).into());
        base.push(f);
        let mut g = vec![Rat::zero(); dim];
        g[i] = Rat::from_integer(1.into());
        g[n + i] = Rat::from_integer(1.into());
        base.push(g);
    }
    pre.iter()
        .filter(|p| {
            let mut strict = base.clone();
            for q in &pre {
                if q != *p {
                    strict.push(to_rat(&sub(p, q)));
                }
            }
            is_feasible(dim, &[], &strict, &[])
        })
        .cloned()
        .collect()
}

/// Newton polyhedron of an operator.
pub fn newton<C: coeffs::Coeff>(g: &HOperator<C>) -> Result<NewtonPolyhedron> {
    if g.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let pts: Vec<Point> = g.support().map(|e| e.point()).collect();
    Ok(NewtonPolyhedron {
        n: g.n(),
        vertices: irredundant(g.n(), &pts),
    })
}

impl NewtonPolyhedron {
    pub fn from_points(n: usize, points: &[Point]) -> Self {
        Self {
            n,
            vertices: irredundant(n, points),
        }
    }

    pub fn rays(&self) -> WStarRays {
        WStarRays::new(self.n)
    }

    /// Largest value of `⟨w, ·⟩`; bounded since `⟨w, r⟩ ≤ 0` on `W*`.
    pub fn support_value(&self, w: &Weight) -> Rat {
        self.vertices
            .iter()
            .map(|p| weight_dot(w, p))
            .max()
            .unwrap_or_else(Rat::zero)
    }
}

pub fn minkowski_sum(polys: &[NewtonPolyhedron]) -> NewtonPolyhedron {
    let n = polys[0].n;
    let mut acc: Vec<Point> = vec![vec![0; 2 * n + 1]];
    for p in polys {
        let mut next = Vec::with_capacity(acc.len() * p.vertices.len());
        for a in &acc {
            for b in &p.vertices {
                next.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        acc = irredundant(n, &next);
    }
    NewtonPolyhedron { n, vertices: acc }
}

/// `⟨w, p⟩` with the z-slot weighted 0.
pub fn weight_dot(w: &Weight, p: &[i64]) -> Rat {
    let n = w.n();
    let mut acc = Rat::zero();
    for i in 0..n {
        acc += &w.u[i] * Rat::from_integer(p[i].into());
        acc += &w.v[i] * Rat::from_integer(p[n + i].into());
    }
    acc
}

/// The face maximizing `⟨w, ·⟩`: its vertices and the rays it contains.
pub fn face_of(p: &NewtonPolyhedron, w: &Weight) -> Result<(Vec<Point>, Vec<Point>)> {
    w.check_admissible()?;
    let m = p.support_value(w);
    let verts = p
        .vertices
        .iter()
        .filter(|v| weight_dot(w, v) == m)
        .cloned()
        .collect();
    let rays = p
        .rays()
        .rays()
        .into_iter()
        .filter(|r| weight_dot(w, r).is_zero())
        .collect();
    Ok((verts, rays))
}

/// Forms on the weight space `(u, v)` for a point of `ℤ^{2n+1}`.
fn point_form(n: usize, p: &[i64]) -> Form {
    (0..2 * n).map(|i| Rat::from_integer(p[i].into())).collect()
}

/// The relatively open stratum of `W` containing `w`.
pub fn w_stratum(w: &Weight) -> Result<RelOpenCone> {
    w.check_admissible()?;
    let n = w.n();
    let mut eqs = Vec::new();
    let mut strict = Vec::new();
    for (r, f) in WStarRays::new(n).rays().iter().map(|r| (r, point_form(n, r))) {
        // ⟨w, r⟩ ≤ 0 on W; −f > 0 off the face
        if weight_dot(w, r).is_zero() {
            eqs.push(f);
        } else {
            strict.push(f.iter().map(|c| -c).collect());
        }
    }
    Ok(RelOpenCone::new(2 * n, eqs, strict, vec![]))
}

/// Closed `W` as a cone with only weak constraints.
pub fn w_closed(n: usize) -> RelOpenCone {
    let weak = WStarRays::new(n)
        .rays()
        .iter()
        .map(|r| point_form(n, r).iter().map(|c| -c).collect())
        .collect();
    RelOpenCone::new(2 * n, vec![], vec![], weak)
}

/// `{w′ ∈ W : face_{w′}(P) = face_w(P)}`.
pub fn normal_cone(p: &NewtonPolyhedron, w: &Weight) -> Result<RelOpenCone> {
    let (face, _) = face_of(p, w)?;
    let n = p.n;
    let stratum = w_stratum(w)?;
    let mut eqs = stratum.equalities.clone();
    let mut strict = stratum.strict.clone();
    let p0 = &face[0];
    for q in &face[1..] {
        eqs.push(point_form(n, &sub(q, p0)));
    }
    for q in &p.vertices {
        if !face.contains(q) {
            strict.push(point_form(n, &sub(p0, q)));
        }
    }
    Ok(RelOpenCone::new(2 * n, eqs, strict, vec![]))
}

/// Flat `(u, v)` coordinates as a weight.
pub fn weight_of(x: &[Rat]) -> Weight {
    Weight::from_flat(x)
}
