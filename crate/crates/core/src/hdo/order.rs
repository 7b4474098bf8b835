//! Admissible weights and monomial orders on `ℕ^{2n+1}`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Exponent;
use crate::coeffs::Rat;
use crate::error::{Error, Result};

/// Weight vector `w = (u, v)` on `(x, ∂)`; `z` always has weight 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub u: Vec<Rat>,
    pub v: Vec<Rat>,
}

impl Weight {
    pub fn new(u: Vec<Rat>, v: Vec<Rat>) -> Self {
        assert_eq!(u.len(), v.len());
        Self { u, v }
    }

    pub fn from_ints(u: &[i64], v: &[i64]) -> Self {
        Self::new(
            u.iter().map(|&a| Rat::from_integer(a.into())).collect(),
            v.iter().map(|&a| Rat::from_integer(a.into())).collect(),
        )
    }

    /// Flat coordinates `(u_1..u_n, v_1..v_n)`.
    pub fn from_flat(c: &[Rat]) -> Self {
        let n = c.len() / 2;
        Self::new(c[..n].to_vec(), c[n..].to_vec())
    }

    pub fn flat(&self) -> Vec<Rat> {
        self.u.iter().chain(&self.v).cloned().collect()
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Rat::zero(); n], vec![Rat::zero(); n])
    }

    /// `u_i ≤ 0` and `u_i + v_i ≥ 0` for every `i`.
    pub fn is_admissible(&self) -> bool {
        self.u
            .iter()
            .zip(&self.v)
            .all(|(u, v)| !u.is_positive() && !(u + v).is_negative())
    }

    pub fn check_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::NotAdmissible(self.to_string()))
        }
    }

    /// Indices with `u_i + v_i = 0`: where the graded ring stays non-commutative.
    pub fn grading_signature(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| (&self.u[i] + &self.v[i]).is_zero())
            .collect()
    }

    /// `⟨w, (α, β)⟩`.
    pub fn dot(&self, e: &Exponent) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.n() {
            acc += &self.u[i] * Rat::from_integer(e.alpha[i].into());
            acc += &self.v[i] * Rat::from_integer(e.beta[i].into());
        }
        acc
    }

    /// Positive integer multiple with coprime entries.
    fn integral(&self) -> Vec<BigInt> {
        let flat = self.flat();
        let l = flat.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = flat
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            ints
        } else {
            ints.into_iter().map(|c| c / &g).collect()
        }
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let u: Vec<String> = self.u.iter().map(|c| c.to_string()).collect();
        let v: Vec<String> = self.v.iter().map(|c| c.to_string()).collect();
        write!(f, "({};{})", u.join(","), v.join(","))
    }
}

/// Built-in admissible orders on `ℕ^{2n}`.
///
/// `AntiGradedLex` compares the `∂`-degree `|β|` first (larger wins), then the
/// `x`-degree `|α|` (smaller wins), then `α` and `β` lexicographically along
/// `priority` (most significant variable first, larger exponent wins). This
/// gives `x_i ≺ 1` and `x_i ξ_i ≻ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseOrder {
    AntiGradedLex { priority: Vec<usize> },
}

impl BaseOrder {
    pub fn antigraded_lex(n: usize) -> Self {
        BaseOrder::AntiGradedLex {
            priority: (0..n).collect(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BaseOrder::AntiGradedLex { .. } => "antigraded_lex",
        }
    }

    pub fn priority(&self) -> &[usize] {
        match self {
            BaseOrder::AntiGradedLex { priority } => priority,
        }
    }

    fn compare(&self, a: &Exponent, b: &Exponent) -> Ordering {
        match self {
            BaseOrder::AntiGradedLex { priority } => a
                .d_degree()
                .cmp(&b.d_degree())
                .then_with(|| b.x_degree().cmp(&a.x_degree()))
                .then_with(|| {
                    for &i in priority {
                        match a.alpha[i].cmp(&b.alpha[i]) {
                            Ordering::Equal => {}
                            o => return o,
                        }
                    }
                    for &i in priority {
                        match a.beta[i].cmp(&b.beta[i]) {
                            Ordering::Equal => {}
                            o => return o,
                        }
                    }
                    Ordering::Equal
                }),
        }
    }
}

/// A total order on exponents: weights (outermost first) refined by a base
/// order, optionally preceded by the `(∂, z)`-degree (the `≺^h` order).
#[derive(Clone, Debug)]
pub struct OrderSpec {
    pub base: BaseOrder,
    pub weights: Vec<Weight>,
    pub homogenized: bool,
    int_weights: Vec<Vec<BigInt>>,
}

impl PartialEq for OrderSpec {
    fn eq(&self, o: &Self) -> bool {
        self.base == o.base && self.weights == o.weights && self.homogenized == o.homogenized
    }
}

impl OrderSpec {
    pub fn new(base: BaseOrder, weights: Vec<Weight>, homogenized: bool) -> Self {
        let int_weights = weights.iter().map(|w| w.integral()).collect();
        Self {
            base,
            weights,
            homogenized,
            int_weights,
        }
    }

    /// `≺^h` for the default anti-graded base order.
    pub fn homogenized(n: usize) -> Self {
        Self::new(BaseOrder::antigraded_lex(n), Vec::new(), true)
    }

    /// The total-degree order `≺_t`, with `t = (0..0, 1..1)`, on the
    /// non-homogenized ring.
    pub fn total_degree(base: BaseOrder, n: usize) -> Self {
        let t = Weight::from_ints(&vec![0; n], &vec![1; n]);
        Self::new(base, vec![t], false)
    }

    /// `≺_w`: `w` first, then the current chain.
    pub fn refined_by(&self, w: &Weight) -> Self {
        let mut weights = vec![w.clone()];
        weights.extend(self.weights.iter().cloned());
        Self::new(self.base.clone(), weights, self.homogenized)
    }

    pub fn with_homogenized(&self, homogenized: bool) -> Self {
        Self::new(self.base.clone(), self.weights.clone(), homogenized)
    }

    pub fn leading_weight(&self) -> Option<&Weight> {
        self.weights.first()
    }

    pub fn compare(&self, a: &Exponent, b: &Exponent) -> Ordering {
        if self.homogenized {
            match a.hom_degree().cmp(&b.hom_degree()) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        for w in &self.int_weights {
            let n = a.n();
            let mut acc = BigInt::zero();
            for i in 0..n {
                let da = a.alpha[i] as i64 - b.alpha[i] as i64;
                let db = a.beta[i] as i64 - b.beta[i] as i64;
                if da != 0 {
                    acc += &w[i] * da;
                }
                if db != 0 {
                    acc += &w[n + i] * db;
                }
            }
            match acc.sign() {
                num_bigint::Sign::Plus => return Ordering::Greater,
                num_bigint::Sign::Minus => return Ordering::Less,
                num_bigint::Sign::NoSign => {}
            }
        }
        self.base
            .compare(a, b)
            // equal (α, β): larger z-power first
            .then_with(|| a.k.cmp(&b.k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(Weight::from_ints(&[-1], &[2]).is_admissible());
        assert!(Weight::from_ints(&[0], &[0]).is_admissible());
        assert!(!Weight::from_ints(&[1], &[0]).is_admissible());
        assert!(!Weight::from_ints(&[-2], &[1]).is_admissible());
        assert_eq!(Weight::from_ints(&[-1, -1], &[1, 2]).grading_signature(), vec![0]);
    }

    #[test]
    fn compare_examples() {
        let ord = OrderSpec::homogenized(1);
        // ∂ vs z: same degree, ∂ wins
        assert_eq!(ord.compare(&Exponent::d(1, 0), &Exponent::z(1)), Ordering::Greater);
        // x ≺ 1
        let base = OrderSpec::new(BaseOrder::antigraded_lex(1), vec![], false);
        assert_eq!(base.compare(&Exponent::x(1, 0), &Exponent::zero(1)), Ordering::Less);
        let xd = Exponent::x(1, 0).add(&Exponent::d(1, 0));
        assert_eq!(base.compare(&xd, &Exponent::zero(1)), Ordering::Greater);
        let e = Exponent::new(vec![2], vec![1], 3);
        assert_eq!(ord.compare(&e, &e), Ordering::Equal);
    }

    #[test]
    fn priority_lex() {
        let ord = OrderSpec::new(
            BaseOrder::AntiGradedLex {
                priority: vec![1, 0],
            },
            vec![],
            true,
        );
        assert_eq!(ord.compare(&Exponent::x(2, 1), &Exponent::x(2, 0)), Ordering::Greater);
    }
}
