//! Arithmetic kernels behind the triviality of the canonical sheaf in the
//! fundamental case, and the evidence-based choice of the canonical
//! character's sign.

use alloc::vec::Vec;

use crate::arith::{is_prime, residue};
use crate::baselocus::{base_supports, SupportSet};
use crate::config::{QuotientConfig, SignConvention};
use crate::divisor::{to_system, DivisorClass, LinearizedSystem};
use crate::error::{Error, Result};
use crate::search::{increasing_tuples, normalized_tuples};

/// Outcome of the exhaustive sign-identity loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaTally {
    pub triples: u64,
    /// Triples where `δ(i<j) + δ(k<i<j or j<i<k) ≢ δ(i<k) mod 2`.
    pub parity_failures: u64,
    /// Triples where the sum disagrees with the four-case table
    /// (1 if `j<i<k`; 1 if `i<k`, `i<j`; 2 if `k<i<j`; 0 if `k<i`, `j<i`).
    pub table_failures: u64,
}

fn delta(c: bool) -> u32 {
    c as u32
}

pub fn delta_identity_tally(bound: u32) -> DeltaTally {
    let mut tally = DeltaTally {
        triples: 0,
        parity_failures: 0,
        table_failures: 0,
    };
    for i in 0..bound {
        for j in (0..bound).filter(|&j| j != i) {
            for k in (0..bound).filter(|&k| k != i && k != j) {
                tally.triples += 1;
                let sum = delta(i < j) + delta((k < i && i < j) || (j < i && i < k));
                if sum % 2 != delta(i < k) {
                    tally.parity_failures += 1;
                }
                let table = if i < k {
                    1
                } else if i < j {
                    2
                } else {
                    0
                };
                if sum != table {
                    tally.table_failures += 1;
                }
            }
        }
    }
    tally
}

/// Whether the sign identity holds on every pairwise-distinct triple in
/// `[0, bound)`.
pub fn delta_identity_check(bound: u32) -> bool {
    let t = delta_identity_tally(bound);
    t.parity_failures == 0 && t.table_failures == 0
}

/// Whether `Σ_{k≠i} (k - i) ≡ 0 mod p` for every `i` in `[0, p)`.
///
/// The sum is `p(p-1)/2 - p·i`, so this holds exactly for odd `p`.
pub fn invariance_exponent_check(p: u32) -> bool {
    (0..p as i64).all(|i| {
        let sum: i64 = (0..p as i64).filter(|&k| k != i).map(|k| k - i).sum();
        sum.rem_euclid(p as i64) == 0
    })
}

/// `2k_0 - k ≡ 2k_0 + Σ_t k_t`, with `k` the sum of the missing residues.
pub fn congruence_variants_agree(config: &QuotientConfig) -> bool {
    let p = config.p();
    let k: i64 = config.complement().iter().map(|&i| i as i64).sum();
    let k0 = config.weights()[0] as i64;
    residue(2 * k0 - k, p) == residue(2 * k0 + config.weight_sum() as i64, p)
}

/// Readings of the twist `j'` of the restricted adjoint class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwistCandidate {
    /// `Σ_{i∈S} i + t k_0`
    SumPlusTK0,
    /// `Σ_{i∈S} i - t k_0`
    SumMinusTK0,
    /// `Σ_{i∈S} (i - k_0)`
    SumOfDifferences,
}

impl TwistCandidate {
    pub const ALL: [TwistCandidate; 3] = [
        TwistCandidate::SumPlusTK0,
        TwistCandidate::SumMinusTK0,
        TwistCandidate::SumOfDifferences,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TwistCandidate::SumPlusTK0 => "sum_S + t*k0",
            TwistCandidate::SumMinusTK0 => "sum_S - t*k0",
            TwistCandidate::SumOfDifferences => "sum_S (i - k0)",
        }
    }

    fn value(self, config: &QuotientConfig, t: u32) -> i64 {
        let k: i64 = config.complement().iter().map(|&i| i as i64).sum();
        let k0 = config.weights()[0] as i64;
        match self {
            TwistCandidate::SumPlusTK0 => k + t as i64 * k0,
            TwistCandidate::SumMinusTK0 => k - t as i64 * k0,
            TwistCandidate::SumOfDifferences => k - config.codimension() as i64 * k0,
        }
    }
}

/// One sample of the sign resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvidenceRow {
    pub weights: Vec<u32>,
    pub plus_agrees: bool,
    pub minus_agrees: bool,
    /// `N' = D'_1 - D'_0` has the character of `N` restricted from the
    /// fundamental quotient.
    pub twist_restricts: bool,
}

impl EvidenceRow {
    pub fn discriminating(&self) -> bool {
        self.plus_agrees != self.minus_agrees
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConventionResolution {
    pub n: u32,
    pub p: u32,
    pub resolved_sign: SignConvention,
    pub evidence: Vec<EvidenceRow>,
    /// Which readings of `j'` reproduce the direct computation on every sample.
    pub twist_candidates: Vec<(TwistCandidate, bool)>,
    /// `congruence_variants_agree` on every sample.
    pub congruences_agree: bool,
}

impl ConventionResolution {
    pub fn discriminating_rows(&self) -> usize {
        self.evidence.iter().filter(|r| r.discriminating()).count()
    }
}

/// Congruence-satisfying tuples used as samples, in lexicographic order.
pub const CANDIDATE_SAMPLE: usize = 256;
/// Samples beyond the congruence candidates, taken in lexicographic order.
pub const FALLBACK_SAMPLE: usize = 256;

/// Decides the sign of the canonical character by computing the base
/// locus of `K_{M'} + n D'` two ways and keeping the sign on which they agree:
///
/// * directly in the `n + 2` variables, through [`to_system`] with each sign;
/// * on the fundamental quotient, where `K_M` has character 0 for either
///   sign, as `K_M + Σ_{i∈S} D_i + n D_{k_0}` restricted to `ξ_i = 0, i ∈ S`.
pub fn resolve_sign_convention(n: u32, p: u32) -> Result<ConventionResolution> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as i64));
    }
    if n < 2 {
        return Err(Error::DimensionTooSmall(n as i64));
    }
    if p <= n + 2 {
        return Err(Error::RestrictionTrivial { n, p });
    }
    let fundamental = QuotientConfig::fundamental(p)?;
    let mut samples: Vec<Vec<u32>> = normalized_tuples(n, p)
        .filter(|w| {
            let cfg = QuotientConfig::new(p, n, w).expect("enumerated tuples are valid");
            let target = residue(2 * w[0] as i64 + cfg.weight_sum() as i64, p);
            !crate::baselocus::pairs_summing_to(w, target, p).is_empty()
        })
        .take(CANDIDATE_SAMPLE)
        .collect();
    for w in increasing_tuples(n as usize + 2, p).take(FALLBACK_SAMPLE) {
        if !samples.contains(&w) {
            samples.push(w);
        }
    }

    let mut evidence = Vec::with_capacity(samples.len());
    let mut direct = Vec::with_capacity(samples.len());
    let mut congruences_agree = true;
    for weights in &samples {
        let config = QuotientConfig::new(p, n, weights)?;
        congruences_agree &= congruence_variants_agree(&config);
        let adjoint = DivisorClass::adjoint(n);
        let plus = base_supports(&to_system(&config, &adjoint, SignConvention::Plus)?)?;
        let minus = base_supports(&to_system(&config, &adjoint, SignConvention::Minus)?)?;
        let restricted = restricted_base_supports(&fundamental, &config, n)?;

        let twist_model = to_system(
            &config,
            &DivisorClass::new().with_twist(1),
            SignConvention::Plus,
        )?;
        let twist_restricted = to_system(
            &fundamental,
            &DivisorClass::new().with_twist(1),
            SignConvention::Plus,
        )?;
        evidence.push(EvidenceRow {
            weights: weights.clone(),
            plus_agrees: plus == restricted,
            minus_agrees: minus == restricted,
            twist_restricts: twist_model.character() == twist_restricted.character(),
        });
        direct.push((config, plus, minus));
    }

    if evidence.iter().any(|r| !r.plus_agrees && !r.minus_agrees) {
        return Err(Error::ConflictingEvidence { n, p });
    }
    let mut votes = evidence.iter().filter(|r| r.discriminating()).map(|r| {
        if r.plus_agrees {
            SignConvention::Plus
        } else {
            SignConvention::Minus
        }
    });
    let resolved_sign = votes.next().ok_or(Error::Inconclusive { n, p })?;
    if votes.any(|s| s != resolved_sign) {
        return Err(Error::ConflictingEvidence { n, p });
    }

    let mut twist_candidates = Vec::new();
    for cand in TwistCandidate::ALL {
        let mut survived = true;
        for (config, plus, minus) in &direct {
            let expected = match resolved_sign {
                SignConvention::Plus => plus,
                SignConvention::Minus => minus,
            };
            let sys = LinearizedSystem::on_config(config, p - 2, cand.value(config, n));
            if &base_supports(&sys)? != expected {
                survived = false;
                break;
            }
        }
        twist_candidates.push((cand, survived));
    }

    Ok(ConventionResolution {
        n,
        p,
        resolved_sign,
        evidence,
        twist_candidates,
        congruences_agree,
    })
}

/// Base supports of `(K_M + Σ_{i∈S} D_i + t D_{k_0})|_{M'}` computed on the
/// fundamental quotient, reported in the variable indices of `config`.
fn restricted_base_supports(
    fundamental: &QuotientConfig,
    config: &QuotientConfig,
    t: u32,
) -> Result<Vec<SupportSet>> {
    let mut class = DivisorClass::new()
        .with_canonical(true)
        .with_coordinate(config.weights()[0] as usize, t);
    for i in config.complement() {
        class = class.with_coordinate(i as usize, 1);
    }
    let ambient = to_system(fundamental, &class, SignConvention::Plus)?;
    // Setting ξ_i = 0 for i ∈ S keeps exactly the variables of weight k_t.
    let restricted = LinearizedSystem::new(
        fundamental.p(),
        config.weights().to_vec(),
        ambient.degree(),
        ambient.character() as i64,
    )?;
    base_supports(&restricted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_examples() {
        // (0,1,2): 1 + 0 = 1 = δ(0<2); (2,3,1): 1 + 1 = 2 ≡ 0 = δ(2<1)
        assert_eq!(
            delta(0 < 1) + delta((2 < 0 && 0 < 1) || (1 < 0 && 0 < 2)),
            1
        );
        assert_eq!(
            delta(2 < 3) + delta((1 < 2 && 2 < 3) || (3 < 2 && 2 < 1)),
            2
        );
        let t = delta_identity_tally(30);
        assert_eq!(t.triples, 24360);
        assert!(delta_identity_check(30));
        assert!(delta_identity_check(3));
    }

    #[test]
    fn invariance_exponent() {
        assert!(invariance_exponent_check(5));
        assert!(invariance_exponent_check(7));
        assert!(!invariance_exponent_check(2));
        assert!(!invariance_exponent_check(4));
    }

    #[test]
    fn resolves_to_minus_for_small_cases() {
        for (n, p) in [(2, 5), (2, 7), (3, 7)] {
            let r = resolve_sign_convention(n, p).unwrap();
            assert_eq!(r.resolved_sign, SignConvention::Minus, "n={n} p={p}");
            assert!(r.congruences_agree);
            assert!(r.discriminating_rows() > 0);
            let survivors: Vec<_> = r
                .twist_candidates
                .iter()
                .filter(|c| c.1)
                .map(|c| c.0)
                .collect();
            assert!(survivors.contains(&TwistCandidate::SumPlusTK0));
        }
    }

    #[test]
    fn resolution_preconditions() {
        assert_eq!(
            resolve_sign_convention(3, 5).unwrap_err(),
            Error::RestrictionTrivial { n: 3, p: 5 }
        );
        assert_eq!(
            resolve_sign_convention(2, 9).unwrap_err(),
            Error::NotPrime(9)
        );
    }

    #[test]
    fn fundamental_sample_is_sign_blind() {
        let cfg = QuotientConfig::fundamental(7).unwrap();
        let a = to_system(&cfg, &DivisorClass::adjoint(5), SignConvention::Plus).unwrap();
        let b = to_system(&cfg, &DivisorClass::adjoint(5), SignConvention::Minus).unwrap();
        assert_eq!(a, b);
    }
}
