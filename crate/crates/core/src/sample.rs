//! Deterministic rational sample points ordered by height.

use num_integer::Integer;

use crate::coeffs::Rat;
use crate::hdo::Weight;

/// `0, 1, 2, 1/2, 3, 1/3, 3/2, 2/3, …`: reduced `p/q ≥ 0` by `max(p, q)`.
pub fn nonneg_rationals(count: usize) -> Vec<Rat> {
    let mut out = vec![Rat::from_integer(0.into())];
    let mut h: i64 = 1;
    while out.len() < count {
        out.push(Rat::from_integer(h.into()));
        if h > 1 {
            out.push(Rat::new(1.into(), h.into()));
        }
        for k in 2..h {
            if h.gcd(&k) == 1 {
                out.push(Rat::new(h.into(), k.into()));
                out.push(Rat::new(k.into(), h.into()));
            }
        }
        h += 1;
    }
    out.truncate(count);
    out
}

/// `0, 1, −1, 2, −2, 1/2, −1/2, …`.
pub fn signed_rationals(count: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(count);
    for r in nonneg_rationals(count) {
        if out.len() >= count {
            break;
        }
        if r == Rat::from_integer(0.into()) {
            out.push(r);
        } else {
            out.push(r.clone());
            if out.len() < count {
                out.push(-r);
            }
        }
    }
    out
}

/// Tuples of indices in `0..` ordered by their maximum, then
/// lexicographically.
fn index_tuples(len: usize, count: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len == 0 {
        return vec![vec![]];
    }
    let mut m = 0;
    while out.len() < count {
        let mut t = vec![0usize; len];
        loop {
            if t.iter().max() == Some(&m) {
                out.push(t.clone());
                if out.len() == count {
                    return out;
                }
            }
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if t[pos] < m {
                    t[pos] += 1;
                    for s in &mut t[pos + 1..] {
                        *s = 0;
                    }
                    pos = usize::MAX;
                    break;
                }
            }
            if pos != usize::MAX {
                break;
            }
        }
        m += 1;
    }
    out
}

fn table_len(tuples: &[Vec<usize>]) -> usize {
    tuples.iter().flatten().max().map_or(1, |&i| i + 1)
}

/// The first `count` weights `u_i = −a_i`, `v_i = a_i + b_i` with
/// `a_i, b_i` running over height-ordered nonnegative rationals.
pub fn weight_grid(n: usize, count: usize) -> Vec<Weight> {
    let tuples = index_tuples(2 * n, count);
    let vals = nonneg_rationals(table_len(&tuples));
    tuples
        .into_iter()
        .map(|t| {
            let a: Vec<Rat> = t[..n].iter().map(|&i| vals[i].clone()).collect();
            let b: Vec<Rat> = t[n..].iter().map(|&i| vals[i].clone()).collect();
            let u = a.iter().map(|x| -x).collect();
            let v = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            Weight::new(u, v)
        })
        .collect()
}

/// The first `count` points of `ℚ^m` from signed height-ordered rationals.
pub fn param_grid(m: usize, count: usize) -> Vec<Vec<Rat>> {
    let tuples = index_tuples(m, count);
    let vals = signed_rationals(table_len(&tuples));
    tuples
        .into_iter()
        .map(|t| t.iter().map(|&i| vals[i].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{int, rat};

    #[test]
    fn height_order() {
        assert_eq!(
            nonneg_rationals(8),
            vec![int(0), int(1), int(2), rat(1, 2), int(3), rat(1, 3), rat(3, 2), rat(2, 3)]
        );
        assert_eq!(signed_rationals(5), vec![int(0), int(1), int(-1), int(2), int(-2)]);
        let line = param_grid(1, 200);
        assert_eq!(line.len(), 200);
        assert_eq!(line[3], vec![int(2)]);
    }

    #[test]
    fn grid_is_admissible_and_distinct() {
        let g = weight_grid(2, 300);
        assert_eq!(g.len(), 300);
        assert!(g.iter().all(|w| w.is_admissible()));
        for i in 0..g.len() {
            for j in 0..i {
                assert_ne!(g[i], g[j]);
            }
        }
    }
}
