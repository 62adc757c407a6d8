//! 1-jets of invariant sections at the points `x_{a,b}`.
//!
//! `x_{a,b}` has `ξ_a = 1`, `ξ_b = -1` and every other coordinate zero; it lies
//! on the Fermat hypersurface because `p` is odd. In the chart `ξ_a = 1` with
//! `Z_t = ξ_t / ξ_a`, the gradient of `1 + Σ Z_t^p` at the point is supported
//! on `Z_b` alone, so the tangent space is spanned by `∂/∂Z_c`, `c ∉ {a, b}`.
//! The jet matrix has one row per basis monomial and columns
//! `[value, ∂/∂Z_c for each such c]`; the system separates tangents at the
//! point iff this matrix has full column rank `1 + n`.

use alloc::vec::Vec;

use crate::arith::residue;
use crate::baselocus::theorem2_base_check;
use crate::config::{QuotientConfig, SignConvention};
use crate::divisor::{to_system, DivisorClass};
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::sections::{enumerate_basis, Monomial, SectionBasis, DEFAULT_ENUMERATION_CAP};
use crate::Pair;

/// The point `ξ_a = 1, ξ_b = -1`, all other coordinates zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordinatePoint {
    a: usize,
    b: usize,
}

impl CoordinatePoint {
    pub fn new(a: usize, b: usize, num_vars: usize) -> Result<Self> {
        if a == b || a >= num_vars || b >= num_vars {
            return Err(Error::InvalidPoint { a, b });
        }
        Ok(CoordinatePoint { a, b })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// The pair `{a, b}`, smaller index first.
    pub fn pair(&self) -> Pair {
        (self.a.min(self.b), self.a.max(self.b))
    }
}

/// Which nonzero coordinate is scaled to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    /// `ξ_a = 1`, the point has `Z_b = -1`.
    First,
    /// `ξ_b = 1`, the point has `W_a = -1`.
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetMatrix {
    pub point: CoordinatePoint,
    pub chart: Chart,
    /// Variable index of derivative column `1 + i`.
    pub directions: Vec<usize>,
    pub matrix: IntegerMatrix,
}

impl JetMatrix {
    pub fn value_column_is_zero(&self) -> bool {
        self.matrix.column_is_zero(0)
    }

    /// Variables whose derivative column vanishes identically.
    pub fn zero_directions(&self) -> Vec<usize> {
        self.directions
            .iter()
            .enumerate()
            .filter(|(i, _)| self.matrix.column_is_zero(1 + i))
            .map(|(_, &c)| c)
            .collect()
    }
}

/// Writes the jet of `m` into `row`. `unit` is the coordinate set to 1,
/// `minus` the one equal to -1 at the point.
fn jet_row(m: &Monomial, unit: usize, minus: usize, directions: &[usize], row: &mut [i64]) {
    let sign = if m.exponent(minus).is_multiple_of(2) {
        1
    } else {
        -1
    };
    let mut outside = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|&(i, &e)| e > 0 && i != unit && i != minus);
    match (outside.next(), outside.next()) {
        (None, _) => row[0] = sign,
        (Some((c, 1)), None) => {
            let col = directions
                .iter()
                .position(|&d| d == c)
                .expect("direction column");
            row[1 + col] = sign;
        }
        _ => {}
    }
}

pub fn jet_matrix_in_chart(
    basis: &SectionBasis,
    point: CoordinatePoint,
    chart: Chart,
) -> Result<JetMatrix> {
    let v = basis.system().num_vars();
    if point.a >= v || point.b >= v {
        return Err(Error::InvalidPoint {
            a: point.a,
            b: point.b,
        });
    }
    let (unit, minus) = match chart {
        Chart::First => (point.a, point.b),
        Chart::Second => (point.b, point.a),
    };
    let directions: Vec<usize> = (0..v).filter(|&c| c != point.a && c != point.b).collect();
    let mut matrix = IntegerMatrix::zeros(basis.len(), 1 + directions.len());
    for (i, m) in basis.monomials().iter().enumerate() {
        jet_row(m, unit, minus, &directions, matrix.row_mut(i));
    }
    Ok(JetMatrix {
        point,
        chart,
        directions,
        matrix,
    })
}

/// Jet matrix in the chart `ξ_a = 1`.
pub fn jet_matrix(basis: &SectionBasis, point: CoordinatePoint) -> Result<JetMatrix> {
    jet_matrix_in_chart(basis, point, Chart::First)
}

/// Whether some section is nonzero at `point`.
pub fn spanned_at(basis: &SectionBasis, point: CoordinatePoint) -> Result<bool> {
    Ok(!jet_matrix(basis, point)?.value_column_is_zero())
}

/// The tangent direction the closed form says is missed at `x_{a,b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PredictedDirection {
    /// Only systems of degree `p - 1` have a closed-form prediction.
    NotApplicable,
    /// No variable carries the excluded weight.
    Absent,
    /// The excluded weight belongs to `a` or `b`, which is not a tangent direction.
    Degenerate(usize),
    Direction(usize),
}

impl PredictedDirection {
    pub fn direction(self) -> Option<usize> {
        match self {
            PredictedDirection::Direction(c) => Some(c),
            _ => None,
        }
    }
}

/// For degree `p - 1`: the monomials `ξ_c ξ_a^i ξ_b^{p-2-i}`, `i = 0..p-2`,
/// have weights `k_c - 2k_b + (k_a - k_b) i`, missing only the residue at
/// `i = p - 1`. Column `c` is therefore empty iff `k_c ≡ χ + k_a + k_b`.
pub fn predicted_direction(basis: &SectionBasis, point: CoordinatePoint) -> PredictedDirection {
    let sys = basis.system();
    let p = sys.p();
    if sys.degree() + 1 != p {
        return PredictedDirection::NotApplicable;
    }
    let target = residue(
        sys.character() as i64 + sys.weight(point.a) as i64 + sys.weight(point.b) as i64,
        p,
    );
    match sys.weights().iter().position(|&w| w == target) {
        None => PredictedDirection::Absent,
        Some(c) if c == point.a || c == point.b => PredictedDirection::Degenerate(c),
        Some(c) => PredictedDirection::Direction(c),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    pub point: CoordinatePoint,
    pub rank: usize,
    /// `1 + n`: value plus tangent directions.
    pub full_rank: usize,
    pub deficiency: usize,
    pub zero_columns: Vec<usize>,
    pub value_spanned: bool,
    pub predicted_direction: PredictedDirection,
}

impl SeparationReport {
    pub fn separates_tangents(&self) -> bool {
        self.deficiency == 0
    }
}

pub fn separation_report(basis: &SectionBasis, point: CoordinatePoint) -> Result<SeparationReport> {
    let jets = jet_matrix(basis, point)?;
    let rank = jets.matrix.rank_fraction_free()?;
    let full_rank = jets.matrix.cols();
    Ok(SeparationReport {
        point,
        rank,
        full_rank,
        deficiency: full_rank - rank,
        zero_columns: jets.zero_directions(),
        value_spanned: !jets.value_column_is_zero(),
        predicted_direction: predicted_direction(basis, point),
    })
}

/// Separation reports at every `x_{a,b}`, `a < b`, in lexicographic order.
pub fn all_pair_reports(basis: &SectionBasis) -> Result<Vec<SeparationReport>> {
    let v = basis.system().num_vars();
    let mut out = Vec::with_capacity(v * v.saturating_sub(1) / 2);
    for a in 0..v {
        for b in a + 1..v {
            out.push(separation_report(basis, CoordinatePoint::new(a, b, v)?)?);
        }
    }
    Ok(out)
}

/// Tangent separation at a base point of `K + n D_{k_0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimedPointSeparation {
    pub report: SeparationReport,
    /// The `k_0` variable's column is empty.
    pub k0_unseparated: bool,
}

/// Runs [`separation_report`] for `K + (n+1) D_{k_0}` at every two-point
/// base support of `K + n D_{k_0}`.
pub fn theorem2_separation_check(
    config: &QuotientConfig,
    sign: SignConvention,
) -> Result<Vec<ClaimedPointSeparation>> {
    let base = theorem2_base_check(config, sign)?;
    if base.locus.pair_base_points.is_empty() {
        return Ok(Vec::new());
    }
    let system = to_system(config, &DivisorClass::adjoint(config.n() + 1), sign)?;
    let basis = enumerate_basis(&system, DEFAULT_ENUMERATION_CAP)?;
    base.locus
        .pair_base_points
        .iter()
        .map(|&(a, b)| {
            let report = separation_report(&basis, CoordinatePoint::new(a, b, config.num_vars())?)?;
            let k0_unseparated = report.zero_columns.contains(&0);
            Ok(ClaimedPointSeparation {
                report,
                k0_unseparated,
            })
        })
        .collect()
}
