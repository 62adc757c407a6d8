//! Search for weight tuples satisfying the base-point congruence, with every
//! hit re-verified by direct computation.

use alloc::vec::Vec;

use crate::arith::binomial;
use crate::baselocus::{theorem2_base_check, SupportSet, Theorem2BaseReport};
use crate::config::{QuotientConfig, SignConvention};
use crate::divisor::{to_system, DivisorClass};
use crate::error::{Error, Result};
use crate::jets::{all_pair_reports, theorem2_separation_check, ClaimedPointSeparation};
use crate::sections::{enumerate_basis, DEFAULT_ENUMERATION_CAP};
use crate::Pair;

/// Default cap on the number of tuples a search may examine.
pub const DEFAULT_SEARCH_CAP: u64 = 1_000_000;

/// Strictly increasing `len`-tuples from `[0, p)` in lexicographic order.
pub fn increasing_tuples(len: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let mut state: Option<Vec<u32>> = (len as u64 <= p as u64).then(|| (0..len as u32).collect());
    core::iter::from_fn(move || {
        let current = state.take()?;
        let mut next = current.clone();
        // bump the rightmost entry that still has room
        let mut i = len;
        while i > 0 {
            i -= 1;
            if next[i] < p - (len - i) as u32 {
                next[i] += 1;
                for t in i + 1..len {
                    next[t] = next[t - 1] + 1;
                }
                state = Some(next);
                break;
            }
        }
        Some(current)
    })
}

/// Weight tuples `(0, k_1, .., k_{n+1})`, lexicographic.
pub fn normalized_tuples(n: u32, p: u32) -> impl Iterator<Item = Vec<u32>> {
    increasing_tuples(n as usize + 2, p).take_while(|w| w[0] == 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleVerification {
    pub config: QuotientConfig,
    pub sum_form_condition: bool,
    pub complement_form_condition: bool,
    /// Pairs at which the congruence claims a base point.
    pub claimed_pairs: Vec<Pair>,
    pub base_pairs: Vec<Pair>,
    /// Base supports with three or more indices.
    pub larger_base_supports: Vec<SupportSet>,
    /// Tangent separation for `K + (n+1)D'` at each two-point base support.
    pub separation: Vec<ClaimedPointSeparation>,
    /// Every `x_{a,b}` where `K + (n+1)D'` fails to separate tangents.
    pub tangent_failures: Vec<Pair>,
}

impl TupleVerification {
    pub fn weights(&self) -> &[u32] {
        self.config.weights()
    }

    /// Every claimed pair is a computed base support.
    pub fn claimed_pairs_are_base(&self) -> bool {
        !self.claimed_pairs.is_empty()
            && self
                .claimed_pairs
                .iter()
                .all(|p| self.base_pairs.contains(p))
    }

    /// Some claimed base point also has an empty jet column.
    pub fn tangent_failure_at_base_point(&self) -> bool {
        self.separation.iter().any(|s| {
            self.claimed_pairs.contains(&s.report.point.pair()) && !s.report.zero_columns.is_empty()
        })
    }

    /// Every claimed pair contains the `k_0` variable, so the `k_0`
    /// direction is not a tangent direction at any claimed point.
    pub fn only_through_k0(&self) -> bool {
        self.claimed_pairs.iter().all(|&(a, _)| a == 0)
    }

    pub fn verified(&self) -> bool {
        self.claimed_pairs_are_base() && self.tangent_failure_at_base_point()
    }
}

pub fn verify_tuple(config: &QuotientConfig, sign: SignConvention) -> Result<TupleVerification> {
    let base: Theorem2BaseReport = theorem2_base_check(config, sign)?;
    let separation = theorem2_separation_check(config, sign)?;
    let next = to_system(config, &DivisorClass::adjoint(config.n() + 1), sign)?;
    let basis = enumerate_basis(&next, DEFAULT_ENUMERATION_CAP)?;
    let tangent_failures = all_pair_reports(&basis)?
        .into_iter()
        .filter(|r| !r.separates_tangents())
        .map(|r| r.point.pair())
        .collect();
    Ok(TupleVerification {
        config: config.clone(),
        sum_form_condition: !base.sum_form_pairs.is_empty(),
        complement_form_condition: !base.complement_form_pairs.is_empty(),
        claimed_pairs: base.claimed_pairs(),
        base_pairs: base.locus.pair_base_points.clone(),
        larger_base_supports: base
            .locus
            .base_supports
            .iter()
            .filter(|s| s.len() > 2)
            .cloned()
            .collect(),
        separation,
        tangent_failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: u32,
    pub p: u32,
    pub sign: SignConvention,
    /// `p = n + 2`: only the fundamental tuple exists and no search is run.
    pub fundamental: bool,
    pub examined: u64,
    /// Tuples with `k_0 = 0` satisfying the congruence, each re-verified.
    pub tuples: Vec<TupleVerification>,
}

impl SearchResult {
    pub fn all_verified(&self) -> bool {
        self.tuples.iter().all(TupleVerification::verified)
    }
}

/// Examines every tuple `(0, k_1, .., k_{n+1})` and re-verifies each one
/// satisfying either stated congruence.
pub fn search(n: u32, p: u32, sign: SignConvention, cap: u64) -> Result<SearchResult> {
    // validates p, n and p >= n + 2
    let first: Vec<u32> = (0..n + 2).collect();
    QuotientConfig::new(p, n, &first)?;
    if p == n + 2 {
        return Ok(SearchResult {
            n,
            p,
            sign,
            fundamental: true,
            examined: 0,
            tuples: Vec::new(),
        });
    }
    let count = binomial(p as u64 - 1, n as u64 + 1).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::SearchTooLarge { count, cap });
    }
    let mut tuples = Vec::new();
    let mut examined = 0;
    for weights in normalized_tuples(n, p) {
        examined += 1;
        let config = QuotientConfig::new(p, n, &weights)?;
        let base = theorem2_base_check(&config, sign)?;
        if !base.condition_holds() {
            continue;
        }
        tuples.push(verify_tuple(&config, sign)?);
    }
    Ok(SearchResult {
        n,
        p,
        sign,
        fundamental: false,
        examined,
        tuples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn tuple_enumeration() {
        let all: Vec<_> = increasing_tuples(3, 4).collect();
        assert_eq!(
            all,
            [vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
        assert_eq!(normalized_tuples(2, 7).count(), 20);
        assert_eq!(normalized_tuples(2, 5).count(), 4);
        assert_eq!(increasing_tuples(5, 4).count(), 0);
    }

    #[test]
    fn fundamental_notice() {
        let r = search(3, 5, SignConvention::Minus, DEFAULT_SEARCH_CAP).unwrap();
        assert!(r.fundamental);
        assert!(r.tuples.is_empty());
    }

    #[test]
    fn cap_guard() {
        assert_eq!(
            search(2, 7, SignConvention::Minus, 19),
            Err(Error::SearchTooLarge { count: 20, cap: 19 })
        );
    }

    #[test]
    fn search_n3_p7() {
        let r = search(3, 7, SignConvention::Minus, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(r.examined, 15);
        assert_eq!(r.tuples.len(), 15);
        assert!(r.all_verified());
    }

    #[test]
    fn n2_hits_only_through_k0() {
        let r = search(2, 7, SignConvention::Minus, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(r.tuples.len(), 12);
        for t in &r.tuples {
            assert!(t.claimed_pairs_are_base());
            assert!(t.only_through_k0());
            assert!(!t.tangent_failure_at_base_point());
        }
    }
}
