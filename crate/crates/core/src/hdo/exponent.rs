use std::fmt;

/// Exponent `(α, β, k)` of the monomial `x^α ∂^β z^k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub k: u32,
}

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Self {
            alpha: vec![0; n],
            beta: vec![0; n],
            k: 0,
        }
    }

    pub fn new(alpha: Vec<u32>, beta: Vec<u32>, k: u32) -> Self {
        assert_eq!(alpha.len(), beta.len(), "alpha and beta must have the same length");
        Self { alpha, beta, k }
    }

    /// `x_i` (zero-based).
    pub fn x(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.alpha[i] = 1;
        e
    }

    /// `∂_i` (zero-based).
    pub fn d(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.beta[i] = 1;
        e
    }

    pub fn z(n: usize) -> Self {
        let mut e = Self::zero(n);
        e.k = 1;
        e
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn x_degree(&self) -> u32 {
        self.alpha.iter().sum()
    }

    pub fn d_degree(&self) -> u32 {
        self.beta.iter().sum()
    }

    /// Total `(∂, z)`-degree `|β| + k`.
    pub fn hom_degree(&self) -> u32 {
        self.d_degree() + self.k
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            alpha: self.alpha.iter().zip(&o.alpha).map(|(a, b)| a + b).collect(),
            beta: self.beta.iter().zip(&o.beta).map(|(a, b)| a + b).collect(),
            k: self.k + o.k,
        }
    }

    /// `self ∈ o + ℕ^{2n+1}` read the other way: `self ≤ o` componentwise.
    pub fn divides(&self, o: &Self) -> bool {
        self.k <= o.k
            && self.alpha.iter().zip(&o.alpha).all(|(a, b)| a <= b)
            && self.beta.iter().zip(&o.beta).all(|(a, b)| a <= b)
    }

    /// `o − self`, assuming `self.divides(o)`.
    pub fn complement_in(&self, o: &Self) -> Self {
        Self {
            alpha: self.alpha.iter().zip(&o.alpha).map(|(a, b)| b - a).collect(),
            beta: self.beta.iter().zip(&o.beta).map(|(a, b)| b - a).collect(),
            k: o.k - self.k,
        }
    }

    pub fn lcm(&self, o: &Self) -> Self {
        Self {
            alpha: self.alpha.iter().zip(&o.alpha).map(|(a, b)| *a.max(b)).collect(),
            beta: self.beta.iter().zip(&o.beta).map(|(a, b)| *a.max(b)).collect(),
            k: self.k.max(o.k),
        }
    }

    /// Coordinates `(α, β, k)` as a point of `ℤ^{2n+1}`.
    pub fn point(&self) -> Vec<i64> {
        self.alpha
            .iter()
            .chain(&self.beta)
            .map(|&a| a as i64)
            .chain(std::iter::once(self.k as i64))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.k == 0 && self.alpha.iter().all(|&a| a == 0) && self.beta.iter().all(|&a| a == 0)
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?},{})", self.alpha, self.beta, self.k)
    }
}
