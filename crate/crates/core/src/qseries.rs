use num_traits::Zero;

use crate::arith::Rational;

/// Truncated q-expansion a₀ + a₁q + … + a_N q^N with exact rational
/// coefficients, tagged with the level Γ₀(N) whose Hecke operators act on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
    level: u64,
}

impl QSeries {
    pub fn new(coeffs: Vec<Rational>, level: u64) -> Self {
        assert!(!coeffs.is_empty(), "a q-series carries at least a₀");
        Self { coeffs, level }
    }

    pub fn zero(precision: usize, level: u64) -> Self {
        Self::new(vec![Rational::zero(); precision + 1], level)
    }

    /// Largest n with a valid coefficient a_n.
    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn with_level(mut self, level: u64) -> Self {
        self.level = level;
        self
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// a_{n/p}, reading non-integral indices as 0.
    pub(crate) fn coeff_div(&self, n: usize, p: usize) -> Option<&Rational> {
        n.is_multiple_of(p).then(|| &self.coeffs[n / p])
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect(), self.level)
    }

    pub fn truncated(&self, precision: usize) -> Self {
        let n = precision.min(self.precision());
        Self::new(self.coeffs[..=n].to_vec(), self.level)
    }

    /// Coefficient-wise equality on the common precision.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        let n = self.precision().min(other.precision());
        self.coeffs[..=n] == other.coeffs[..=n]
    }
}
