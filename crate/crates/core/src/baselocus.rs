//! Base loci of linearized systems, computed on coordinate supports.
//!
//! A monomial is nonzero at a point exactly when its support lies inside the
//! point's support, so whether a point is a base point depends only on which
//! coordinates vanish there. Every support with at least two indices is
//! realized by points of the Fermat hypersurface, and no support of size one
//! is, so the base locus is the finite list of supports `T`, `|T| >= 2`,
//! carrying no invariant monomial.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::arith::residue;
use crate::config::{QuotientConfig, SignConvention};
use crate::divisor::{to_system, DivisorClass, LinearizedSystem};
use crate::error::{Error, Result};
use crate::sections::exists_supported_unchecked;
use crate::Pair;

/// Largest variable count [`base_supports`] will scan.
pub const MAX_SCAN_VARS: usize = 24;

/// Sorted set of at least two variable indices. Orders by size, then
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportSet(Vec<usize>);

impl SupportSet {
    pub fn new(mut indices: Vec<usize>) -> Option<Self> {
        indices.sort_unstable();
        indices.dedup();
        (indices.len() >= 2).then_some(SupportSet(indices))
    }

    fn from_mask(mask: u32) -> Self {
        SupportSet((0..32).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_pair(&self) -> Option<Pair> {
        match self.0[..] {
            [a, b] => Some((a, b)),
            _ => None,
        }
    }
}

impl Ord for SupportSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for SupportSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// All supports `T`, `|T| >= 2`, on which every section vanishes, sorted.
///
/// Supports are visited in increasing bitmask order, so every proper subset
/// is decided first; a support with a non-base subset is non-base without
/// running the existence DP.
pub fn base_supports(system: &LinearizedSystem) -> Result<Vec<SupportSet>> {
    let v = system.num_vars();
    if v > MAX_SCAN_VARS {
        return Err(Error::TooManyVariables {
            count: v,
            max: MAX_SCAN_VARS,
        });
    }
    let total = 1usize << v;
    let mut non_base = vec![0u64; total.div_ceil(64)];
    let get = |bits: &[u64], m: usize| bits[m / 64] >> (m % 64) & 1 == 1;
    if system.degree() == 0 && system.character() == 0 {
        // the constant section vanishes nowhere
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for mask in 1..total {
        let mut covered = false;
        let mut rest = mask;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            if get(&non_base, mask ^ low) {
                covered = true;
                break;
            }
            rest ^= low;
        }
        if !covered {
            let indices = (0..v).filter(|i| mask >> i & 1 == 1);
            covered = exists_supported_unchecked(system, indices);
        }
        if covered {
            non_base[mask / 64] |= 1 << (mask % 64);
        } else if mask.count_ones() >= 2 {
            out.push(SupportSet::from_mask(mask as u32));
        }
    }
    out.sort();
    Ok(out)
}

/// Pairs `{i, j}` with `k_i + k_j ≡ -c`, for a system of degree `p - 2`.
///
/// The weights of `ξ_a^e ξ_b^{p-2-e}`, `e = 0..p-2`, are `(k_a - k_b) e - 2 k_b`:
/// `p - 1` distinct residues, missing only the one at `e = p - 1`, which is
/// `-(k_a + k_b)`. So `{a, b}` is a base support iff `c ≡ -(k_a + k_b)`.
pub fn predicted_pairs(system: &LinearizedSystem) -> Result<Vec<Pair>> {
    let p = system.p();
    if system.degree() + 2 != p {
        return Err(Error::WrongDegree {
            expected: p - 2,
            found: system.degree(),
        });
    }
    let target = residue(-(system.character() as i64), p);
    Ok(pairs_summing_to(system.weights(), target, p))
}

/// Pairs `i < j` with `w_i + w_j ≡ target mod p`.
pub fn pairs_summing_to(weights: &[u32], target: u32, p: u32) -> Vec<Pair> {
    let mut out = Vec::new();
    for i in 0..weights.len() {
        for j in i + 1..weights.len() {
            if (weights[i] as u64 + weights[j] as u64) % p as u64 == target as u64 {
                out.push((i, j));
            }
        }
    }
    out
}

/// Computed base locus of an adjoint-degree system against the closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseLocusReport {
    pub system: LinearizedSystem,
    pub base_supports: Vec<SupportSet>,
    pub pair_base_points: Vec<Pair>,
    pub predicted_pairs: Vec<Pair>,
    /// The base supports are exactly the predicted pairs.
    pub exact_match: bool,
}

impl BaseLocusReport {
    /// Requires `system.degree() == p - 2`.
    pub fn compute(system: &LinearizedSystem) -> Result<Self> {
        let predicted_pairs = predicted_pairs(system)?;
        let base_supports = base_supports(system)?;
        let pair_base_points: Vec<Pair> = base_supports
            .iter()
            .filter_map(SupportSet::as_pair)
            .collect();
        let exact_match =
            pair_base_points.len() == base_supports.len() && pair_base_points == predicted_pairs;
        Ok(BaseLocusReport {
            system: system.clone(),
            base_supports,
            pair_base_points,
            predicted_pairs,
            exact_match,
        })
    }
}

/// Base locus of `K + (p-2)D + jN` on the fundamental quotient.
pub fn theorem1_check(p: u32, j: i64) -> Result<BaseLocusReport> {
    if !crate::arith::is_prime(p as u64) {
        return Err(Error::NotPrime(p as i64));
    }
    let config = QuotientConfig::fundamental(p)?;
    let class = DivisorClass::adjoint(p - 2).with_twist(j);
    // K_M has character 0 here, so either sign gives the same system.
    let system = to_system(&config, &class, SignConvention::Minus)?;
    BaseLocusReport::compute(&system)
}

/// Base locus of `K + n D_{k_0}` on a general quotient, next to the two
/// stated forms of the base-point congruence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem2BaseReport {
    pub config: QuotientConfig,
    pub sign: SignConvention,
    pub locus: BaseLocusReport,
    /// Number of hyperplanes `s = p - n - 2` cut from the fundamental model.
    pub codimension: u32,
    /// `k = Σ_{i ∉ weights} i mod p`.
    pub complement_sum: u32,
    /// Pairs with `k_i + k_j ≡ 2k_0 + Σ_t k_t`.
    pub sum_form_pairs: Vec<Pair>,
    /// Pairs with `k_i + k_j ≡ 2k_0 - k`.
    pub complement_form_pairs: Vec<Pair>,
    pub sum_form_matches: bool,
    pub complement_form_matches: bool,
}

impl Theorem2BaseReport {
    /// Whether the stated congruence holds for some pair.
    pub fn condition_holds(&self) -> bool {
        !self.sum_form_pairs.is_empty() || !self.complement_form_pairs.is_empty()
    }

    /// Pairs at which the stated congruence places a base point.
    pub fn claimed_pairs(&self) -> Vec<Pair> {
        let mut out = self.sum_form_pairs.clone();
        out.extend(self.complement_form_pairs.iter().copied());
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub fn theorem2_base_check(
    config: &QuotientConfig,
    sign: SignConvention,
) -> Result<Theorem2BaseReport> {
    let p = config.p();
    let system = to_system(config, &DivisorClass::adjoint(config.n()), sign)?;
    let locus = BaseLocusReport::compute(&system)?;
    let k0 = config.weights()[0] as i64;
    let complement_sum = residue(config.complement().iter().map(|&i| i as i64).sum(), p);
    let sum_form_target = residue(2 * k0 + config.weight_sum() as i64, p);
    let complement_form_target = residue(2 * k0 - complement_sum as i64, p);
    let sum_form_pairs = pairs_summing_to(config.weights(), sum_form_target, p);
    let complement_form_pairs = pairs_summing_to(config.weights(), complement_form_target, p);
    Ok(Theorem2BaseReport {
        config: config.clone(),
        sign,
        codimension: config.codimension(),
        complement_sum,
        sum_form_matches: sum_form_pairs == locus.pair_base_points,
        complement_form_matches: complement_form_pairs == locus.pair_base_points,
        sum_form_pairs,
        complement_form_pairs,
        locus,
    })
}
