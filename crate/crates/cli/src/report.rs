//! Stable JSON document shapes. Field order is the serialization order;
//! every array is emitted sorted.

use fermat_adjoint_core::jets::ClaimedPointSeparation;
use fermat_adjoint_core::lemmas::{ConventionResolution, DeltaTally};
use fermat_adjoint_core::search::TupleVerification;
use fermat_adjoint_core::{
    BaseLocusReport, LinearizedSystem, Pair, PredictedDirection, SeparationReport, SupportSet,
    Theorem2BaseReport,
};
use serde::Serialize;

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Default, Serialize)]
pub struct Input {
    pub p: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
    pub sign: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SignResolution {
    /// `fixed` or `auto`.
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolved_on: Option<[u32; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminating: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: Input,
    pub sign_convention: i64,
    pub sign_resolution: SignResolution,
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemDoc {
    pub p: u32,
    pub weights: Vec<u32>,
    pub degree: u32,
    pub character: u32,
}

impl From<&LinearizedSystem> for SystemDoc {
    fn from(s: &LinearizedSystem) -> Self {
        SystemDoc {
            p: s.p(),
            weights: s.weights().to_vec(),
            degree: s.degree(),
            character: s.character(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparationDoc {
    pub pair: [usize; 2],
    pub rank: usize,
    pub full_rank: usize,
    pub deficiency: usize,
    pub zero_columns: Vec<usize>,
    pub value_spanned: bool,
    /// `direction`, `degenerate`, `absent` or `not_applicable`.
    pub predicted_status: &'static str,
    pub predicted_direction: Option<usize>,
}

impl From<&SeparationReport> for SeparationDoc {
    fn from(r: &SeparationReport) -> Self {
        let (status, dir) = match r.predicted_direction {
            PredictedDirection::Direction(c) => ("direction", Some(c)),
            PredictedDirection::Degenerate(c) => ("degenerate", Some(c)),
            PredictedDirection::Absent => ("absent", None),
            PredictedDirection::NotApplicable => ("not_applicable", None),
        };
        let (a, b) = r.point.pair();
        SeparationDoc {
            pair: [a, b],
            rank: r.rank,
            full_rank: r.full_rank,
            deficiency: r.deficiency,
            zero_columns: r.zero_columns.clone(),
            value_spanned: r.value_spanned,
            predicted_status: status,
            predicted_direction: dir,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimedSeparationDoc {
    #[serde(flatten)]
    pub separation: SeparationDoc,
    pub k0_unseparated: bool,
}

impl From<&ClaimedPointSeparation> for ClaimedSeparationDoc {
    fn from(c: &ClaimedPointSeparation) -> Self {
        ClaimedSeparationDoc {
            separation: (&c.report).into(),
            k0_unseparated: c.k0_unseparated,
        }
    }
}

pub fn supports(list: &[SupportSet]) -> Vec<Vec<usize>> {
    list.iter().map(|s| s.indices().to_vec()).collect()
}

pub fn pairs(list: &[Pair]) -> Vec<[usize; 2]> {
    list.iter().map(|&(a, b)| [a, b]).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateDoc {
    #[serde(flatten)]
    pub header: Header,
    pub valid: bool,
    pub fundamental: bool,
    pub num_vars: usize,
    pub codimension: u32,
    pub complement: Vec<u32>,
    pub weight_sum: u32,
    pub normalized_weights: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisDoc {
    #[serde(flatten)]
    pub header: Header,
    pub system: SystemDoc,
    pub count: usize,
    pub monomials: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountDoc {
    #[serde(flatten)]
    pub header: Header,
    pub degree: u32,
    /// `[c, count]`; every residue when no character was given.
    pub counts: Vec<(u32, String)>,
    pub total: String,
    pub raw_monomials: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BaseLocusDoc {
    #[serde(flatten)]
    pub header: Header,
    pub system: SystemDoc,
    pub base_supports: Vec<Vec<usize>>,
    /// Present only for systems of degree `p - 2`.
    pub predicted_pairs: Option<Vec<[usize; 2]>>,
    pub exact_match: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct JetsDoc {
    #[serde(flatten)]
    pub header: Header,
    pub system: SystemDoc,
    pub basis_size: usize,
    pub separation: Vec<SeparationDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Doc {
    #[serde(flatten)]
    pub header: Header,
    pub system: SystemDoc,
    pub base_supports: Vec<Vec<usize>>,
    pub predicted_pairs: Vec<[usize; 2]>,
    pub exact_match: bool,
    pub base_point_count: usize,
    pub expected_base_point_count: usize,
    pub separation_system: SystemDoc,
    pub separation: Vec<SeparationDoc>,
    pub verified: bool,
}

impl Theorem1Doc {
    pub fn new(
        header: Header,
        locus: &BaseLocusReport,
        separation_system: &LinearizedSystem,
        separation: &[SeparationReport],
    ) -> Self {
        let p = locus.system.p() as usize;
        let tangent_claim = separation.iter().all(|r| {
            r.value_spanned
                && match r.predicted_direction {
                    PredictedDirection::Direction(c) => r.zero_columns == [c] && r.deficiency == 1,
                    _ => true,
                }
        });
        let count = locus.pair_base_points.len();
        Theorem1Doc {
            header,
            system: (&locus.system).into(),
            base_supports: supports(&locus.base_supports),
            predicted_pairs: pairs(&locus.predicted_pairs),
            exact_match: locus.exact_match,
            base_point_count: count,
            expected_base_point_count: (p - 1) / 2,
            separation_system: separation_system.into(),
            separation: separation.iter().map(Into::into).collect(),
            verified: locus.exact_match && count == (p - 1) / 2 && tangent_claim,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Congruences {
    pub sum_form_pairs: Vec<[usize; 2]>,
    pub complement_form_pairs: Vec<[usize; 2]>,
    pub sum_form_matches: bool,
    pub complement_form_matches: bool,
}

impl From<&Theorem2BaseReport> for Congruences {
    fn from(r: &Theorem2BaseReport) -> Self {
        Congruences {
            sum_form_pairs: pairs(&r.sum_form_pairs),
            complement_form_pairs: pairs(&r.complement_form_pairs),
            sum_form_matches: r.sum_form_matches,
            complement_form_matches: r.complement_form_matches,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Doc {
    #[serde(flatten)]
    pub header: Header,
    pub fundamental: bool,
    pub codimension: u32,
    pub complement_sum: u32,
    pub system: SystemDoc,
    pub base_supports: Vec<Vec<usize>>,
    pub predicted_pairs: Vec<[usize; 2]>,
    pub exact_match: bool,
    pub congruences: Congruences,
    pub condition_satisfied: bool,
    pub separation_system: SystemDoc,
    pub separation: Vec<ClaimedSeparationDoc>,
    pub tangent_failures: Vec<[usize; 2]>,
    /// `verified`, `claim_failed` or `condition_not_satisfied`.
    pub verdict: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct TupleDoc {
    pub weights: Vec<u32>,
    pub sum_form_condition: bool,
    pub complement_form_condition: bool,
    pub claimed_pairs: Vec<[usize; 2]>,
    pub base_pairs: Vec<[usize; 2]>,
    pub larger_base_supports: Vec<Vec<usize>>,
    pub separation: Vec<ClaimedSeparationDoc>,
    pub tangent_failures: Vec<[usize; 2]>,
    pub only_through_k0: bool,
    pub verified: bool,
}

impl From<&TupleVerification> for TupleDoc {
    fn from(t: &TupleVerification) -> Self {
        TupleDoc {
            weights: t.weights().to_vec(),
            sum_form_condition: t.sum_form_condition,
            complement_form_condition: t.complement_form_condition,
            claimed_pairs: pairs(&t.claimed_pairs),
            base_pairs: pairs(&t.base_pairs),
            larger_base_supports: supports(&t.larger_base_supports),
            separation: t.separation.iter().map(Into::into).collect(),
            tangent_failures: pairs(&t.tangent_failures),
            only_through_k0: t.only_through_k0(),
            verified: t.verified(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchDoc {
    #[serde(flatten)]
    pub header: Header,
    pub fundamental: bool,
    pub examined: u64,
    pub tuple_count: usize,
    pub verified_count: usize,
    pub tuples: Vec<TupleDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaDoc {
    pub bound: u32,
    pub triples: u64,
    pub parity_failures: u64,
    pub table_failures: u64,
    pub passed: bool,
}

impl DeltaDoc {
    pub fn new(bound: u32, t: DeltaTally) -> Self {
        DeltaDoc {
            bound,
            triples: t.triples,
            parity_failures: t.parity_failures,
            table_failures: t.table_failures,
            passed: t.parity_failures == 0 && t.table_failures == 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceDoc {
    pub max_prime: u32,
    pub odd_primes_checked: usize,
    pub odd_primes_passed: bool,
    /// The identity needs `p(p-1)/2 ≡ 0`, i.e. odd `p`; reported, not gated on.
    pub p2_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolutionDoc {
    pub n: u32,
    pub p: u32,
    /// Resolved sign, or null with `error` set.
    pub resolved_sign: Option<i64>,
    pub samples: usize,
    pub discriminating: usize,
    pub twist_candidates: Vec<(String, bool)>,
    pub twist_restricts: usize,
    pub congruences_agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl From<&ConventionResolution> for ResolutionDoc {
    fn from(r: &ConventionResolution) -> Self {
        ResolutionDoc {
            n: r.n,
            p: r.p,
            resolved_sign: Some(r.resolved_sign.as_i64()),
            samples: r.evidence.len(),
            discriminating: r.discriminating_rows(),
            twist_candidates: r
                .twist_candidates
                .iter()
                .map(|(c, s)| (c.label().to_string(), *s))
                .collect(),
            twist_restricts: r.evidence.iter().filter(|e| e.twist_restricts).count(),
            congruences_agree: r.congruences_agree,
            error: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmasDoc {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: LemmaInput,
    pub delta_identity: DeltaDoc,
    pub invariance_exponent: InvarianceDoc,
    pub sign_resolutions: Vec<ResolutionDoc>,
    pub consistent_sign: Option<i64>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaInput {
    pub bound: u32,
    pub max_prime: u32,
}
