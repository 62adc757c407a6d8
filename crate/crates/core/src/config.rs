//! Validated quotient configurations.

use alloc::vec::Vec;
use core::fmt;

use crate::arith::{is_prime, residue};
use crate::error::{Error, Result};

/// A prime `p`, a dimension `n` and weights `0 <= k_0 < .. < k_{n+1} <= p-1`.
///
/// Distinct weights mod `p` are exactly the condition for the diagonal action
/// of `Z/p` on the Fermat hypersurface of degree `p` in `P^{n+1}` to be free,
/// so a value of this type certifies a smooth quotient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientConfig {
    p: u32,
    n: u32,
    weights: Vec<u32>,
}

/// Sign of the canonical character `±Σ_t k_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignConvention {
    Plus,
    Minus,
}

impl SignConvention {
    pub const BOTH: [SignConvention; 2] = [SignConvention::Plus, SignConvention::Minus];

    pub fn as_i64(self) -> i64 {
        match self {
            SignConvention::Plus => 1,
            SignConvention::Minus => -1,
        }
    }

    pub fn from_i64(s: i64) -> Option<Self> {
        match s {
            1 => Some(SignConvention::Plus),
            -1 => Some(SignConvention::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignConvention::Plus => "+1",
            SignConvention::Minus => "-1",
        })
    }
}

/// Validates raw inputs into a [`QuotientConfig`].
pub fn validate_config(p: i64, n: i64, weights: &[i64]) -> Result<QuotientConfig> {
    if p < 0 || p > u32::MAX as i64 || !is_prime(p as u64) {
        return Err(Error::NotPrime(p));
    }
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if p < n + 2 {
        return Err(Error::PTooSmall { p, bound: n + 2 });
    }
    let expected = (n + 2) as usize;
    if weights.len() != expected {
        return Err(Error::WrongWeightCount {
            expected,
            found: weights.len(),
        });
    }
    if let Some(&weight) = weights.iter().find(|&&w| w < 0 || w >= p) {
        return Err(Error::WeightOutOfRange { weight, p });
    }
    if let Some(i) = weights.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::WeightsNotStrictlyIncreasing(i + 1));
    }
    Ok(QuotientConfig {
        p: p as u32,
        n: n as u32,
        weights: weights.iter().map(|&w| w as u32).collect(),
    })
}

impl QuotientConfig {
    pub fn new(p: u32, n: u32, weights: &[u32]) -> Result<Self> {
        let raw: Vec<i64> = weights.iter().map(|&w| w as i64).collect();
        validate_config(p as i64, n as i64, &raw)
    }

    /// `n = p - 2`, weights `(0, 1, .., p-1)`.
    pub fn fundamental(p: u32) -> Result<Self> {
        let weights: Vec<u32> = (0..p).collect();
        Self::new(p, p.saturating_sub(2), &weights)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    pub fn is_fundamental(&self) -> bool {
        self.n + 2 == self.p && self.weights.iter().copied().eq(0..self.p)
    }

    /// `Σ_t k_t mod p`.
    pub fn weight_sum(&self) -> u32 {
        residue(self.weights.iter().map(|&w| w as i64).sum(), self.p)
    }

    /// The residues missing from the weight tuple, i.e. the coordinate
    /// hyperplanes of the fundamental model cut out to reach this quotient.
    pub fn complement(&self) -> Vec<u32> {
        (0..self.p).filter(|r| !self.weights.contains(r)).collect()
    }

    /// Number of hyperplanes cut, `p - n - 2`.
    pub fn codimension(&self) -> u32 {
        self.p - self.n - 2
    }

    /// Degree of the canonical bundle, `p - n - 2` (zero in the fundamental case).
    pub fn canonical_degree(&self) -> u32 {
        self.codimension()
    }

    /// The same projective action with `k_0` shifted to zero.
    pub fn shift_normalized(&self) -> Self {
        let k0 = self.weights[0];
        QuotientConfig {
            p: self.p,
            n: self.n,
            weights: self.weights.iter().map(|&w| w - k0).collect(),
        }
    }

    /// The same variety with every weight replaced by `k_t + shift mod p`,
    /// re-sorted. Returns the permutation `old index -> new index` as well.
    pub fn shifted(&self, shift: u32) -> (Self, Vec<usize>) {
        let moved: Vec<u32> = self
            .weights
            .iter()
            .map(|&w| ((w as u64 + shift as u64) % self.p as u64) as u32)
            .collect();
        let mut order: Vec<usize> = (0..moved.len()).collect();
        order.sort_by_key(|&i| moved[i]);
        let mut perm = alloc::vec![0; moved.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        let weights = order.iter().map(|&i| moved[i]).collect();
        (
            QuotientConfig {
                p: self.p,
                n: self.n,
                weights,
            },
            perm,
        )
    }
}

impl fmt::Display for QuotientConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} n={} weights=(", self.p, self.n)?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_p5() {
        let c = validate_config(5, 3, &[0, 1, 2, 3, 4]).unwrap();
        assert!(c.is_fundamental());
        assert_eq!(c.weight_sum(), 0);
        assert!(c.complement().is_empty());
        assert_eq!(c, QuotientConfig::fundamental(5).unwrap());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(
            validate_config(6, 4, &[0, 1, 2, 3, 4, 5]),
            Err(Error::NotPrime(6))
        );
    }

    #[test]
    fn rejects_duplicate_weight() {
        assert_eq!(
            validate_config(7, 2, &[0, 1, 3, 3]),
            Err(Error::WeightsNotStrictlyIncreasing(3))
        );
    }

    #[test]
    fn error_paths() {
        assert_eq!(
            validate_config(7, 1, &[0, 1, 2]),
            Err(Error::DimensionTooSmall(1))
        );
        assert_eq!(
            validate_config(7, 2, &[0, 1, 2]),
            Err(Error::WrongWeightCount {
                expected: 4,
                found: 3
            })
        );
        assert_eq!(
            validate_config(7, 2, &[0, 1, 2, 7]),
            Err(Error::WeightOutOfRange { weight: 7, p: 7 })
        );
        assert_eq!(
            validate_config(7, 2, &[-1, 1, 2, 3]),
            Err(Error::WeightOutOfRange { weight: -1, p: 7 })
        );
        assert_eq!(
            validate_config(5, 4, &[0, 1, 2, 3, 4, 5]),
            Err(Error::PTooSmall { p: 5, bound: 6 })
        );
        assert!(validate_config(1, 2, &[0, 0, 0, 0]).is_err());
    }

    #[test]
    fn general_config_bookkeeping() {
        let c = validate_config(7, 2, &[0, 1, 3, 5]).unwrap();
        assert!(!c.is_fundamental());
        assert_eq!(c.weight_sum(), 2);
        assert_eq!(c.complement(), [2, 4, 6]);
        assert_eq!(c.codimension(), 3);
        let (s, perm) = c.shifted(3);
        assert_eq!(s.weights(), [1, 3, 4, 6]);
        assert_eq!(perm, [1, 2, 3, 0]);
    }
}
