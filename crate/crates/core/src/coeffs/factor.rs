//! Distinct irreducible factors of univariate parameter polynomials over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::dense;
use super::{ParamPoly, Rat};

/// Largest degree handled by the Kronecker search.
const DEGREE_BUDGET: usize = 12;
/// Values above this magnitude are not factored into divisors.
const VALUE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    /// Distinct monic non-constant factors.
    pub factors: Vec<ParamPoly>,
    /// True when every factor is proven irreducible over ℚ.
    pub certified: bool,
}

/// Factors `p` into distinct irreducible factors when `p` involves at most
/// one parameter. Multivariate input is returned whole and uncertified.
pub fn factor_univariate(p: &ParamPoly) -> Factorization {
    if p.as_constant().is_some() {
        return Factorization {
            factors: Vec::new(),
            certified: true,
        };
    }
    let var = match p.single_var() {
        Some(v) => v,
        None => {
            return Factorization {
                factors: vec![p.monic()],
                certified: false,
            }
        }
    };
    let f = p.to_dense(var);
    let g = dense::gcd(&f, &dense::derivative(&f));
    let sqfree = dense::monic(dense::divmod(&f, &g).0);

    let mut factors = Vec::new();
    let mut certified = true;
    let mut rest = sqfree;
    for root in rational_roots(&rest) {
        let lin = vec![-root, Rat::one()];
        rest = dense::divmod(&rest, &lin).0;
        factors.push(lin);
    }
    let mut pending = vec![rest];
    while let Some(q) = pending.pop() {
        let d = q.len().saturating_sub(1);
        if d == 0 {
            continue;
        }
        if d <= 3 {
            // no rational roots left, so degree ≤ 3 is irreducible
            factors.push(dense::monic(q));
            continue;
        }
        if d > DEGREE_BUDGET {
            certified = false;
            factors.push(dense::monic(q));
            continue;
        }
        match kronecker_split(&q) {
            Split::Found(a) => {
                let b = dense::divmod(&q, &a).0;
                pending.push(dense::monic(a));
                pending.push(dense::monic(b));
            }
            Split::Irreducible => factors.push(dense::monic(q)),
            Split::GaveUp => {
                certified = false;
                factors.push(dense::monic(q));
            }
        }
    }
    let mut factors: Vec<ParamPoly> = factors
        .into_iter()
        .map(|c| ParamPoly::from_dense(var, &c))
        .collect();
    factors.sort_by(|a, b| super::grevlex(a.leading().unwrap().0, b.leading().unwrap().0));
    Factorization { factors, certified }
}

/// Integer primitive version of a rational coefficient vector.
fn primitive(f: &[Rat]) -> Vec<BigInt> {
    let l = f
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v: Vec<BigInt> = f.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > VALUE_BUDGET {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(BigInt::from(i));
            if i * i != n {
                out.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    Some(out)
}

fn rational_roots(f: &[Rat]) -> Vec<Rat> {
    let v = primitive(f);
    let mut roots = Vec::new();
    if v.is_empty() {
        return roots;
    }
    if v[0].is_zero() {
        roots.push(Rat::zero());
    }
    let low = v.iter().find(|c| !c.is_zero()).unwrap().clone();
    let high = v.last().unwrap().clone();
    let (ps, qs) = match (divisors(&low), divisors(&high)) {
        (Some(p), Some(q)) => (p, q),
        _ => return roots,
    };
    for p in &ps {
        for q in &qs {
            for s in [1i64, -1] {
                let r = Rat::new(p * BigInt::from(s), q.clone());
                if !roots.contains(&r) && dense::eval(f, &r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

enum Split {
    Found(Vec<Rat>),
    Irreducible,
    GaveUp,
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[Rat], ys: &[Rat]) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::new();
    for i in 0..xs.len() {
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for j in 0..xs.len() {
            if i != j {
                basis = dense::mul(&basis, &[-xs[j].clone(), Rat::one()]);
                denom *= &xs[i] - &xs[j];
            }
        }
        let k = &ys[i] / denom;
        if out.len() < basis.len() {
            out.resize(basis.len(), Rat::zero());
        }
        for (t, b) in basis.iter().enumerate() {
            out[t] += &k * b;
        }
    }
    dense::trim(&mut out);
    out
}

fn kronecker_split(f: &[Rat]) -> Split {
    let d = f.len() - 1;
    let fi: Vec<Rat> = primitive(f).into_iter().map(Rat::from_integer).collect();
    for k in 2..=d / 2 {
        let xs: Vec<Rat> = (0..=k as i64).map(|i| Rat::from_integer(i.into())).collect();
        let mut divs = Vec::new();
        for x in &xs {
            let v = dense::eval(&fi, x);
            match divisors(&v.to_integer()) {
                Some(ds) => divs.push(ds),
                None => return Split::GaveUp,
            }
        }
        let total: usize = divs.iter().map(|d| d.len() * 2).product();
        if total > 2_000_000 {
            return Split::GaveUp;
        }
        let mut idx = vec![0usize; xs.len()];
        loop {
            let ys: Vec<Rat> = idx
                .iter()
                .enumerate()
                .map(|(i, &j)| {
                    let dv = &divs[i][j / 2];
                    let s = if i == 0 || j % 2 == 0 { 1 } else { -1 };
                    Rat::from_integer(dv * BigInt::from(s))
                })
                .collect();
            let g = interpolate(&xs, &ys);
            if g.len() == k + 1 && g.iter().all(|c| c.is_integer()) {
                let (_, r) = dense::divmod(&fi, &g);
                if r.is_empty() {
                    return Split::Found(g);
                }
            }
            // advance the mixed-radix counter; slot 0 only takes positive signs
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                let radix = if pos == 0 { divs[0].len() * 2 } else { divs[pos].len() * 2 };
                idx[pos] += if pos == 0 { 2 } else { 1 };
                if idx[pos] < radix {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    Split::Irreducible
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> ParamPoly {
        let v: Vec<Rat> = c.iter().map(|&x| Rat::from_integer(x.into())).collect();
        ParamPoly::from_dense(0, &v)
    }

    #[test]
    fn linear_and_repeated() {
        // y^3 - y^2 = y^2 (y - 1)
        let f = factor_univariate(&poly(&[0, 0, -1, 1]));
        assert!(f.certified);
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.contains(&ParamPoly::var(0)));
        assert!(f.factors.contains(&poly(&[-1, 1])));
    }

    #[test]
    fn quartic_product_of_quadratics() {
        // (y^2 + 1)(y^2 + 2)
        let f = factor_univariate(&poly(&[2, 0, 3, 0, 1]));
        assert!(f.certified);
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.contains(&poly(&[1, 0, 1])));
        assert!(f.factors.contains(&poly(&[2, 0, 1])));
    }

    #[test]
    fn irreducible_quartic() {
        let f = factor_univariate(&poly(&[1, 0, 0, 0, 1]));
        assert!(f.certified);
        assert_eq!(f.factors, vec![poly(&[1, 0, 0, 0, 1])]);
    }

    #[test]
    fn constant_has_no_factors() {
        assert!(factor_univariate(&poly(&[5])).factors.is_empty());
    }
}
