//! The span criterion for strong local indistinguishability.
//!
//! For a party α and every ordered pair i ≠ j of states, the pair operator
//! A_ij = Tr_{α̂}(|Ψ_i⟩⟨Ψ_j|) is traceless, and a first-measurement Kraus
//! operator K preserves orthogonality of the set iff Tr(K†K · A_ij) = 0 for
//! every pair. Stacking the vectorized pair operators together with the
//! vectorized identity into the span matrix M, the party is restricted to
//! trivial (unitary-like) measurements exactly when M has full column rank
//! d_α². The rank decision is numerical (SVD with a gray zone); the
//! determinant of M†M is reported only as a signed log-magnitude diagnostic
//! because it scales with high homogeneity degree.
//!
//! When the span is *not* full, the complement of the row space is closed
//! under the adjoint (A_ji = A_ij†), so it contains a traceless Hermitian
//! direction H. [`measurement_witness`] extracts one and turns "not blocked"
//! into an executable certificate: K†K = I + εH stays positive for small ε
//! and preserves every inner product.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigen, numerical_rank, partial_trace_keep, svd_right_vectors, CMatrix, RankResult,
};
use crate::stateset::{StateSet, DEFAULT_VALIDATION_TOL};

/// One pairwise partial-trace operator A_ij for a fixed party.
#[derive(Debug, Clone)]
pub struct PairOperator {
    pub party: usize,
    pub i: usize,
    pub j: usize,
    pub matrix: CMatrix,
}

/// Per-party span verdict with singular-value diagnostics.
#[derive(Debug, Clone)]
pub struct SpanReport {
    pub party: usize,
    /// N(N−1) ordered pairs.
    pub pair_count: usize,
    /// pair_count + 1 (the identity row).
    pub span_matrix_rows: usize,
    pub rank: usize,
    /// rank == d_α².
    pub full: bool,
    /// log|det(M†M)|, −∞ when the determinant vanishes identically
    /// (fewer rows than columns or an exactly zero singular value).
    pub log_abs_det: f64,
    pub ambiguous: bool,
    /// Relative tolerance the rank decision used.
    pub tolerance: f64,
    /// Smallest singular value counted toward the rank (0.0 if rank = 0).
    pub min_sv_accepted: f64,
    /// Largest singular value rejected by the threshold (0.0 if none).
    pub max_sv_rejected: f64,
}

/// Aggregated verdict over all parties.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub per_party: Vec<SpanReport>,
    /// True iff every party's span is full: no party can make a nontrivial
    /// first measurement. When false the set may or may not be locally
    /// distinguishable — this criterion is one-directional.
    pub strongly_indistinguishable: bool,
    pub any_ambiguous: bool,
}

/// A traceless Hermitian direction certifying a nontrivial
/// orthogonality-preserving first measurement.
#[derive(Debug, Clone)]
pub struct MeasurementWitness {
    pub party: usize,
    /// Hermitian, traceless, unit Frobenius norm, orthogonal to every A_ij.
    pub h: CMatrix,
    /// Largest ε keeping I + εH positive semidefinite (∞ if H is PSD).
    pub epsilon_max: f64,
}

/// All ordered pair operators (i ≠ j, lexicographic) for one party.
pub fn pair_operators(set: &StateSet, party: usize) -> Result<Vec<PairOperator>> {
    if party >= set.dims().n_parties() {
        return Err(Error::InvalidParty {
            party,
            n_parties: set.dims().n_parties(),
        });
    }
    let n = set.n_states();
    let mut out = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let outer = CMatrix::outer(set.state(i), set.state(j));
            let matrix = partial_trace_keep(&outer, set.dims(), party)?;
            out.push(PairOperator { party, i, j, matrix });
        }
    }
    Ok(out)
}

/// Stack row-major vectorizations of the operators into a matrix (one row
/// per operator, no identity row appended).
pub fn vectorize_operators(ops: &[PairOperator], party_dim: usize) -> Result<CMatrix> {
    if ops.is_empty() {
        return Err(Error::InvalidInput("no operators to vectorize".into()));
    }
    let party = ops[0].party;
    let cols = party_dim * party_dim;
    let mut entries = Vec::with_capacity(ops.len() * cols);
    for op in ops {
        if op.party != party {
            return Err(Error::InvalidInput(
                "operators from mixed parties cannot share a span matrix".into(),
            ));
        }
        if op.matrix.rows() != party_dim || op.matrix.cols() != party_dim {
            return Err(Error::ShapeError(format!(
                "operator ({}, {}) is {}x{}, expected {}x{}",
                op.i,
                op.j,
                op.matrix.rows(),
                op.matrix.cols(),
                party_dim,
                party_dim
            )));
        }
        entries.extend_from_slice(op.matrix.entries());
    }
    CMatrix::new(ops.len(), cols, entries)
}

/// The span matrix M: one row per pair operator (pairs sorted
/// lexicographically by (i, j)) and the vectorized identity as the last row.
pub fn span_matrix(ops: &[PairOperator], party_dim: usize) -> Result<CMatrix> {
    let mut sorted: Vec<&PairOperator> = ops.iter().collect();
    sorted.sort_by_key(|op| (op.i, op.j));
    let owned: Vec<PairOperator> = sorted.into_iter().cloned().collect();
    let stacked = vectorize_operators(&owned, party_dim)?;
    let cols = party_dim * party_dim;
    let mut entries = stacked.entries().to_vec();
    entries.extend(CMatrix::identity(party_dim).entries().iter().copied());
    CMatrix::new(owned.len() + 1, cols, entries)
}

fn log_abs_det_gram(sv: &[f64], rows: usize, cols: usize) -> f64 {
    // det(M†M) = Π σ_k² over all `cols` singular values; with fewer rows
    // than columns the Gram matrix is singular outright.
    if rows < cols || sv.len() < cols {
        return f64::NEG_INFINITY;
    }
    let mut acc = 0.0;
    for &s in &sv[..cols] {
        if s == 0.0 {
            return f64::NEG_INFINITY;
        }
        acc += 2.0 * s.ln();
    }
    acc
}

fn report_from_rank(
    party: usize,
    pair_count: usize,
    rows: usize,
    party_dim: usize,
    tol: f64,
    rr: &RankResult,
) -> SpanReport {
    SpanReport {
        party,
        pair_count,
        span_matrix_rows: rows,
        rank: rr.rank,
        full: rr.rank == party_dim * party_dim,
        log_abs_det: log_abs_det_gram(&rr.singular_values, rows, party_dim * party_dim),
        ambiguous: rr.ambiguous,
        tolerance: tol,
        min_sv_accepted: rr.min_accepted(),
        max_sv_rejected: rr.max_rejected(),
    }
}

/// Span analysis for a single party.
pub fn analyze_party(set: &StateSet, party: usize, tol: f64) -> Result<SpanReport> {
    set.ensure_valid(DEFAULT_VALIDATION_TOL)?;
    analyze_party_unchecked(set, party, tol)
}

/// Same as [`analyze_party`] but without re-validating the set; used by
/// [`analyze`] which validates once for all parties.
fn analyze_party_unchecked(set: &StateSet, party: usize, tol: f64) -> Result<SpanReport> {
    let ops = pair_operators(set, party)?;
    let d = set.dims().dim(party);
    let m = span_matrix(&ops, d)?;
    let rr = numerical_rank(&m, tol)?;
    Ok(report_from_rank(party, ops.len(), m.rows(), d, tol, &rr))
}

/// Span analysis for every party.
pub fn analyze(set: &StateSet, tol: f64) -> Result<Verdict> {
    set.ensure_valid(DEFAULT_VALIDATION_TOL)?;
    let mut per_party = Vec::with_capacity(set.dims().n_parties());
    for party in 0..set.dims().n_parties() {
        per_party.push(analyze_party_unchecked(set, party, tol)?);
    }
    let strongly_indistinguishable = per_party.iter().all(|r| r.full);
    let any_ambiguous = per_party.iter().any(|r| r.ambiguous);
    Ok(Verdict {
        per_party,
        strongly_indistinguishable,
        any_ambiguous,
    })
}

/// Whether the counting bound even allows a full span: N(N−1) ≥ d²−1.
/// For N ≤ d this is false — the span test can never block such a set.
pub fn counting_blocked_possible(n_states: usize, d: usize) -> bool {
    n_states * (n_states - 1) >= d * d - 1
}

/// Rank of a vectorized subset of pair operators (no identity row).
pub fn numerical_rank_of_retained(
    ops: &[PairOperator],
    party_dim: usize,
    tol: f64,
) -> Result<usize> {
    let m = vectorize_operators(ops, party_dim)?;
    Ok(numerical_rank(&m, tol)?.rank)
}

/// Extract a traceless Hermitian direction orthogonal to every pair
/// operator of `party`. Errors with [`Error::WitnessUnavailable`] when the
/// party's span is full.
pub fn measurement_witness(set: &StateSet, party: usize, tol: f64) -> Result<MeasurementWitness> {
    set.ensure_valid(DEFAULT_VALIDATION_TOL)?;
    let ops = pair_operators(set, party)?;
    let d = set.dims().dim(party);
    let m = span_matrix(&ops, d)?;
    let rr = numerical_rank(&m, tol)?;
    if rr.rank == d * d {
        return Err(Error::WitnessUnavailable { party });
    }
    let (values, vectors) = svd_right_vectors(&m)?;
    // Right singular vector of the smallest singular value spans the least
    // excited direction of the row space; with rank < d² it is numerically
    // a null vector of M.
    let h_vec = vectors
        .last()
        .ok_or_else(|| Error::NumericalError("SVD returned no right vectors".into()))?;
    debug_assert_eq!(values.len(), d * d);
    // Row r of M stores vec(A_r); (M h)_r = Σ_{l,m} A_r[l,m] h_(l,m), which
    // equals Tr(A_r · H) for H = unvec(h)ᵀ.
    let raw = CMatrix::unvec_rowmajor(d, h_vec)?.transpose();
    let herm = raw
        .add(&raw.adjoint())?
        .scaled(Complex64::new(0.5, 0.0));
    let anti = raw
        .sub(&raw.adjoint())?
        .scaled(Complex64::new(0.0, -0.5));
    let pick = if herm.frobenius_norm() >= anti.frobenius_norm() {
        herm
    } else {
        anti
    };
    let norm = pick.frobenius_norm();
    if norm < 1e-8 {
        return Err(Error::NumericalError(
            "null direction collapsed under Hermitization".into(),
        ));
    }
    let h = pick.scaled(Complex64::new(1.0 / norm, 0.0));
    // Contract check: the witness must be orthogonal to every pair operator.
    let worst = ops
        .iter()
        .map(|op| h.matmul(&op.matrix).unwrap().trace().norm())
        .fold(0.0, f64::max);
    if worst >= 1e-8 {
        return Err(Error::NumericalError(format!(
            "witness residual {:.3e} exceeds 1e-8",
            worst
        )));
    }
    let (eigs, _) = hermitian_eigen(&h)?;
    let min_eig = eigs.last().copied().unwrap_or(0.0);
    let epsilon_max = if min_eig >= 0.0 { f64::INFINITY } else { 1.0 / min_eig.abs() };
    Ok(MeasurementWitness { party, h, epsilon_max })
}
