//! Adjoint linear systems on free cyclic quotients of Fermat hypersurfaces.
//!
//! A quotient is described by a prime `p`, a dimension `n` and a strictly
//! increasing weight tuple `(k_0, .., k_{n+1})`; the cyclic group of order `p`
//! acts on the Fermat hypersurface `ξ_0^p + .. + ξ_{n+1}^p = 0` by
//! `ξ_t ↦ ρ^{k_t} ξ_t`. Line bundles on the quotient are handled through their
//! `(degree, character)` pair, and their sections through the invariant
//! monomials of that degree and weight. Everything here is exact and finite:
//! base loci are computed on coordinate supports, tangent separation through
//! integer 1-jet matrices.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod baselocus;
pub mod config;
pub mod divisor;
mod error;
pub mod jets;
pub mod lemmas;
pub mod matrix;
pub mod search;
pub mod sections;

pub use baselocus::{
    base_supports, predicted_pairs, theorem1_check, theorem2_base_check, BaseLocusReport,
    SupportSet, Theorem2BaseReport,
};
pub use config::{validate_config, QuotientConfig, SignConvention};
pub use divisor::{normalize_class, to_system, DivisorClass, LinearizedSystem};
pub use error::{Error, Result};
pub use jets::{
    jet_matrix, separation_report, spanned_at, theorem2_separation_check, Chart, CoordinatePoint,
    JetMatrix, PredictedDirection, SeparationReport,
};
pub use lemmas::{
    delta_identity_check, invariance_exponent_check, resolve_sign_convention, ConventionResolution,
};
pub use matrix::IntegerMatrix;
pub use search::{search, SearchResult, TupleVerification};
pub use sections::{count_basis, enumerate_basis, exists_supported, Monomial, SectionBasis};

/// An unordered pair of variable indices, stored with `.0 < .1`.
pub type Pair = (usize, usize);
