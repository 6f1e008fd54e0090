//! Data model for sets of orthogonal multipartite states: validation,
//! JSON interchange, mixed-state reduction, and party coarse-graining.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix, CVector, DimList};

/// Default tolerance for normalization/orthogonality validation. Input
/// hygiene and spectral rank decisions have different sensitivities, so this
/// is a separate knob from [`crate::linalg::DEFAULT_RANK_TOL`].
pub const DEFAULT_VALIDATION_TOL: f64 = 1e-10;

/// A set of N pure states on a tensor product of local spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSet {
    dims: DimList,
    states: Vec<CVector>,
    labels: Option<Vec<String>>,
}

/// One violated invariant reported by [`StateSet::validate`] or
/// [`MixedSet::validate`]. Violations are data, not errors.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Normalization { state: usize, residual: f64 },
    Orthogonality { i: usize, j: usize, residual: f64 },
    Hermiticity { state: usize, residual: f64 },
    Positivity { state: usize, residual: f64 },
    UnitTrace { state: usize, residual: f64 },
    SupportOverlap { i: usize, j: usize, residual: f64 },
}

impl Violation {
    pub fn residual(&self) -> f64 {
        match self {
            Violation::Normalization { residual, .. }
            | Violation::Orthogonality { residual, .. }
            | Violation::Hermiticity { residual, .. }
            | Violation::Positivity { residual, .. }
            | Violation::UnitTrace { residual, .. }
            | Violation::SupportOverlap { residual, .. } => *residual,
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Normalization { state, residual } => {
                write!(f, "state {} deviates from unit norm by {:.3e}", state, residual)
            }
            Violation::Orthogonality { i, j, residual } => {
                write!(f, "states {} and {} overlap with |⟨i|j⟩| = {:.3e}", i, j, residual)
            }
            Violation::Hermiticity { state, residual } => {
                write!(f, "density matrix {} deviates from Hermitian by {:.3e}", state, residual)
            }
            Violation::Positivity { state, residual } => {
                write!(f, "density matrix {} has eigenvalue below -{:.3e}", state, residual)
            }
            Violation::UnitTrace { state, residual } => {
                write!(f, "density matrix {} deviates from unit trace by {:.3e}", state, residual)
            }
            Violation::SupportOverlap { i, j, residual } => {
                write!(f, "supports of {} and {} overlap with Tr(ρᵢρⱼ) = {:.3e}", i, j, residual)
            }
        }
    }
}

impl StateSet {
    /// Structural construction: at least two states, every state the right
    /// length. Normalization/orthogonality are checked by [`validate`],
    /// which reports violations as data.
    ///
    /// [`validate`]: Self::validate
    pub fn new(dims: DimList, states: Vec<CVector>, labels: Option<Vec<String>>) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::InvalidInput(
                "a StateSet needs at least two states".into(),
            ));
        }
        let side = dims.total();
        for (j, s) in states.iter().enumerate() {
            if s.len() != side {
                return Err(Error::ShapeError(format!(
                    "state {} has length {}, expected {}",
                    j,
                    s.len(),
                    side
                )));
            }
        }
        if let Some(ref l) = labels {
            if l.len() != states.len() {
                return Err(Error::InvalidInput(
                    "label count does not match state count".into(),
                ));
            }
        }
        Ok(Self { dims, states, labels })
    }

    pub fn dims(&self) -> &DimList {
        &self.dims
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, j: usize) -> &CVector {
        &self.states[j]
    }

    pub fn states(&self) -> &[CVector] {
        &self.states
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Check normalization and pairwise orthogonality at tolerance `tol`.
    /// Returns an empty list iff all invariants hold; each entry names the
    /// offending state or pair and the residual magnitude.
    pub fn validate(&self, tol: f64) -> Vec<Violation> {
        let mut out = Vec::new();
        for (j, s) in self.states.iter().enumerate() {
            let residual = (s.norm() - 1.0).abs();
            if residual >= tol {
                out.push(Violation::Normalization { state: j, residual });
            }
        }
        for i in 0..self.states.len() {
            for j in (i + 1)..self.states.len() {
                let residual = self.states[i].inner(&self.states[j]).norm();
                if residual >= tol {
                    out.push(Violation::Orthogonality { i, j, residual });
                }
            }
        }
        out
    }

    /// Error out (InvalidInput) unless the set validates at `tol`.
    pub fn ensure_valid(&self, tol: f64) -> Result<()> {
        let violations = self.validate(tol);
        if violations.is_empty() {
            Ok(())
        } else {
            let detail: Vec<String> = violations.iter().take(4).map(|v| v.to_string()).collect();
            Err(Error::InvalidInput(format!(
                "state set fails validation at {:.1e}: {}",
                tol,
                detail.join("; ")
            )))
        }
    }

    /// Reinterpret contiguous groups of parties as single parties.
    ///
    /// With the big-endian flattening convention this is pure re-indexing:
    /// the amplitude list is returned unchanged, only `dims` shrinks to one
    /// product dimension per group.
    pub fn coarse_grain(&self, partition: &[Vec<usize>]) -> Result<StateSet> {
        let n = self.dims.n_parties();
        for group in partition {
            if group.is_empty() {
                return Err(Error::InvalidPartition("empty group".into()));
            }
            for w in group.windows(2) {
                if w[1] != w[0] + 1 {
                    return Err(Error::UnsupportedPartition(format!(
                        "group {:?} is not contiguous under the global party ordering",
                        group
                    )));
                }
            }
        }
        let mut sorted: Vec<&Vec<usize>> = partition.iter().collect();
        sorted.sort_by_key(|g| g[0]);
        let flat: Vec<usize> = sorted.iter().flat_map(|g| g.iter().copied()).collect();
        let expected: Vec<usize> = (0..n).collect();
        if flat != expected {
            return Err(Error::InvalidPartition(format!(
                "groups must cover every party exactly once; got {:?} for {} parties",
                partition, n
            )));
        }
        let new_dims: Vec<usize> = sorted
            .iter()
            .map(|g| g.iter().map(|&p| self.dims.dim(p)).product())
            .collect();
        StateSet::new(DimList::new(new_dims)?, self.states.clone(), self.labels.clone())
    }
}

/// A set of N mixed states with mutually orthogonal supports.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedSet {
    dims: DimList,
    density_matrices: Vec<CMatrix>,
}

impl MixedSet {
    pub fn new(dims: DimList, density_matrices: Vec<CMatrix>) -> Result<Self> {
        if density_matrices.len() < 2 {
            return Err(Error::InvalidInput(
                "a MixedSet needs at least two density matrices".into(),
            ));
        }
        let side = dims.total();
        for (j, m) in density_matrices.iter().enumerate() {
            if m.rows() != side || m.cols() != side {
                return Err(Error::ShapeError(format!(
                    "density matrix {} is {}x{}, expected {}x{}",
                    j,
                    m.rows(),
                    m.cols(),
                    side,
                    side
                )));
            }
        }
        Ok(Self { dims, density_matrices })
    }

    pub fn dims(&self) -> &DimList {
        &self.dims
    }

    pub fn n_states(&self) -> usize {
        self.density_matrices.len()
    }

    pub fn density_matrix(&self, j: usize) -> &CMatrix {
        &self.density_matrices[j]
    }

    /// Check the mixed-set invariants: Hermiticity (1e−12), positivity
    /// (eigenvalues ≥ −1e−12), unit trace (1e−10), and orthogonal supports
    /// (Tr(ρᵢρⱼ) < 1e−10).
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (j, rho) in self.density_matrices.iter().enumerate() {
            let mut herm = 0.0f64;
            for r in 0..rho.rows() {
                for c in 0..rho.cols() {
                    herm = herm.max((rho.get(r, c) - rho.get(c, r).conj()).norm());
                }
            }
            if herm >= 1e-12 {
                out.push(Violation::Hermiticity { state: j, residual: herm });
                continue; // eigenvalues of a non-Hermitian matrix are meaningless here
            }
            let trace_res = (rho.trace().re - 1.0).abs().max(rho.trace().im.abs());
            if trace_res >= 1e-10 {
                out.push(Violation::UnitTrace { state: j, residual: trace_res });
            }
            if let Ok((vals, _)) = hermitian_eigen(rho) {
                if let Some(&min) = vals.last() {
                    if min < -1e-12 {
                        out.push(Violation::Positivity { state: j, residual: -min });
                    }
                }
            }
        }
        for i in 0..self.density_matrices.len() {
            for j in (i + 1)..self.density_matrices.len() {
                let prod = self.density_matrices[i]
                    .matmul(&self.density_matrices[j])
                    .expect("squares of equal side");
                let overlap = prod.trace().norm();
                if overlap >= 1e-10 {
                    out.push(Violation::SupportOverlap { i, j, residual: overlap });
                }
            }
        }
        out
    }

    /// Reduce to pure states by selecting, for each ρ_j, the eigenvector of
    /// the largest eigenvalue.
    ///
    /// Degenerate top eigenspaces are resolved deterministically: the chosen
    /// vector is the normalized projection onto the top eigenspace of the
    /// standard basis vector with the heaviest projection (smallest index on
    /// ties). This is independent of the eigensolver's basis choice inside a
    /// degenerate eigenspace and fixes the global phase (the pivot entry is
    /// real positive).
    pub fn eigen_select(&self) -> Result<StateSet> {
        let violations = self.validate();
        if !violations.is_empty() {
            let detail: Vec<String> = violations.iter().take(4).map(|v| v.to_string()).collect();
            return Err(Error::InvalidInput(format!(
                "mixed set fails validation: {}",
                detail.join("; ")
            )));
        }
        let side = self.dims.total();
        let mut picked = Vec::with_capacity(self.density_matrices.len());
        for rho in &self.density_matrices {
            let (vals, vecs) = hermitian_eigen(rho)?;
            let lambda_max = vals[0];
            let tie_tol = 1e-10 * lambda_max.abs().max(1.0);
            let top: Vec<&CVector> = vals
                .iter()
                .zip(&vecs)
                .filter(|(l, _)| **l >= lambda_max - tie_tol)
                .map(|(_, v)| v)
                .collect();
            // Projection weight of each basis vector onto the top eigenspace.
            let weights: Vec<f64> = (0..side)
                .map(|k| top.iter().map(|v| v[k].norm_sqr()).sum())
                .collect();
            let wmax = weights.iter().cloned().fold(0.0, f64::max);
            let pivot = weights
                .iter()
                .position(|&w| w >= wmax - 1e-9)
                .expect("top eigenspace is nonempty");
            let mut proj = CVector::zeros(side);
            for v in &top {
                let c = v[pivot].conj();
                for k in 0..side {
                    proj.as_mut_slice()[k] += v[k] * c;
                }
            }
            picked.push(proj.normalized()?);
        }
        let set = StateSet::new(self.dims.clone(), picked, None)?;
        let residuals = set.validate(1e-8);
        if !residuals.is_empty() {
            let detail: Vec<String> = residuals.iter().take(4).map(|v| v.to_string()).collect();
            return Err(Error::ReductionError(format!(
                "selected eigenvectors are not orthonormal at 1e-8: {}",
                detail.join("; ")
            )));
        }
        Ok(set)
    }
}

/// Dimension counting for the orthogonality-constraint manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ManifoldInfo {
    /// N · Π d_α complex amplitude parameters.
    pub ambient_complex_dim: i64,
    /// ½·N(N−1) orthogonality constraints.
    pub constraint_count: i64,
    /// η = ambient − constraints.
    pub manifold_dim: i64,
}

/// Count amplitude parameters and orthogonality constraints for N states on
/// `dims` (Π d_α takes the place of d^n for non-uniform dimension lists).
pub fn manifold_info(n_states: usize, dims: &DimList) -> ManifoldInfo {
    let ambient = (n_states as i64) * (dims.total() as i64);
    let constraints = (n_states as i64) * (n_states as i64 - 1) / 2;
    ManifoldInfo {
        ambient_complex_dim: ambient,
        constraint_count: constraints,
        manifold_dim: ambient - constraints,
    }
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateSetDoc {
    dims: Vec<usize>,
    states: Vec<StateDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MixedSetDoc {
    dims: Vec<usize>,
    density_matrices: Vec<Vec<[f64; 2]>>,
}

/// Either kind of state-set document.
pub enum StateInput {
    Pure(StateSet),
    Mixed(MixedSet),
}

impl StateSet {
    pub fn to_json(&self) -> String {
        let doc = StateSetDoc {
            dims: self.dims.dims().to_vec(),
            states: self
                .states
                .iter()
                .enumerate()
                .map(|(j, s)| StateDoc {
                    label: self.labels.as_ref().map(|l| l[j].clone()),
                    amplitudes: s.as_slice().iter().map(|z| [z.re, z.im]).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: StateSetDoc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("bad state-set JSON: {}", e)))?;
        state_set_from_doc(doc)
    }
}

fn state_set_from_doc(doc: StateSetDoc) -> Result<StateSet> {
    let dims = DimList::new(doc.dims)?;
    let side = dims.total();
    let mut states = Vec::with_capacity(doc.states.len());
    let mut labels = Vec::with_capacity(doc.states.len());
    let mut any_label = false;
    for (j, s) in doc.states.into_iter().enumerate() {
        if s.amplitudes.len() != side {
            return Err(Error::InvalidInput(format!(
                "state {} has {} amplitudes, expected {}",
                j,
                s.amplitudes.len(),
                side
            )));
        }
        states.push(CVector::new(
            s.amplitudes
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )?);
        any_label |= s.label.is_some();
        labels.push(s.label.unwrap_or_else(|| format!("psi{}", j)));
    }
    StateSet::new(dims, states, if any_label { Some(labels) } else { None })
}

impl MixedSet {
    pub fn to_json(&self) -> String {
        let doc = MixedSetDoc {
            dims: self.dims.dims().to_vec(),
            density_matrices: self
                .density_matrices
                .iter()
                .map(|m| m.entries().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MixedSetDoc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("bad mixed-set JSON: {}", e)))?;
        let dims = DimList::new(doc.dims)?;
        let side = dims.total();
        let mut mats = Vec::with_capacity(doc.density_matrices.len());
        for (j, flat) in doc.density_matrices.into_iter().enumerate() {
            if flat.len() != side * side {
                return Err(Error::InvalidInput(format!(
                    "density matrix {} has {} entries, expected {}",
                    j,
                    flat.len(),
                    side * side
                )));
            }
            mats.push(CMatrix::new(
                side,
                side,
                flat.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
            )?);
        }
        MixedSet::new(dims, mats)
    }
}

/// Parse a JSON document holding either a pure state set (`"states"`) or a
/// mixed one (`"density_matrices"`). Unknown top-level keys are rejected.
pub fn parse_state_input(text: &str) -> Result<StateInput> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("bad JSON: {}", e)))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::InvalidInput("top-level JSON value must be an object".into()))?;
    if obj.contains_key("states") {
        Ok(StateInput::Pure(StateSet::from_json(text)?))
    } else if obj.contains_key("density_matrices") {
        Ok(StateInput::Mixed(MixedSet::from_json(text)?))
    } else {
        Err(Error::InvalidInput(
            "expected a \"states\" or \"density_matrices\" key".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::haar_orthonormal_columns;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dims(d: &[usize]) -> DimList {
        DimList::new(d.to_vec()).unwrap()
    }

    fn basis_set(d: &[usize], kets: &[usize]) -> StateSet {
        let dl = dims(d);
        let total = dl.total();
        StateSet::new(
            dl,
            kets.iter().map(|&k| CVector::basis(total, k)).collect(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn validate_computational_basis() {
        let set = basis_set(&[2, 2], &[0, 1, 2]);
        assert!(set.validate(1e-10).is_empty());
    }

    #[test]
    fn validate_flags_overlap() {
        let dl = dims(&[2, 2]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v00 = CVector::basis(4, 0);
        let bell = CVector::new(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap();
        let set = StateSet::new(dl, vec![v00, bell], None).unwrap();
        let violations = set.validate(1e-10);
        assert_eq!(violations.len(), 1);
        match &violations[0] {
            Violation::Orthogonality { i, j, residual } => {
                assert_eq!((*i, *j), (0, 1));
                assert!((residual - s).abs() < 1e-12);
            }
            other => panic!("unexpected violation {:?}", other),
        }
    }

    #[test]
    fn validate_accepts_haar_frames() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let frame = haar_orthonormal_columns(4, 3, &mut rng).unwrap();
        let set = StateSet::new(dims(&[2, 2]), frame, None).unwrap();
        assert!(set.validate(1e-10).is_empty());
    }

    #[test]
    fn validate_residuals_scale_linearly() {
        // First-order check: perturbing one state by ε·w moves the pair
        // residual by ε·|⟨Ψ_i|w⟩| to first order.
        let set = basis_set(&[2, 2], &[0, 1]);
        let w = CVector::basis(4, 0); // overlaps state 0 exactly
        let eps = 1e-6;
        let mut states = set.states().to_vec();
        let mut perturbed = states[1].clone();
        for (k, entry) in perturbed.as_mut_slice().iter_mut().enumerate() {
            *entry += c(eps, 0.0) * w[k];
        }
        states[1] = perturbed;
        let perturbed_set = StateSet::new(set.dims().clone(), states, None).unwrap();
        let violations = perturbed_set.validate(1e-9);
        let orth: Vec<&Violation> = violations
            .iter()
            .filter(|v| matches!(v, Violation::Orthogonality { .. }))
            .collect();
        assert_eq!(orth.len(), 1);
        let predicted = eps * 1.0; // |⟨Ψ_0|w⟩| = 1
        assert!((orth[0].residual() - predicted).abs() < 1e-3 * predicted);
    }

    #[test]
    fn manifold_dim_examples() {
        let info = manifold_info(3, &dims(&[2, 2]));
        assert_eq!(info.ambient_complex_dim, 12);
        assert_eq!(info.constraint_count, 3);
        assert_eq!(info.manifold_dim, 9);

        let info = manifold_info(2, &dims(&[2]));
        assert_eq!(info.manifold_dim, 3);

        let info = manifold_info(4, &dims(&[3, 3]));
        assert_eq!(info.ambient_complex_dim, 36);
        assert_eq!(info.constraint_count, 6);
        assert_eq!(info.manifold_dim, 30);
    }

    #[test]
    fn coarse_grain_reindexes_only() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let frame = haar_orthonormal_columns(16, 3, &mut rng).unwrap();
        let set = StateSet::new(dims(&[2, 2, 2, 2]), frame, None).unwrap();
        let grouped = set
            .coarse_grain(&[vec![0, 1], vec![2, 3]])
            .unwrap();
        assert_eq!(grouped.dims().dims(), &[4, 4]);
        for j in 0..3 {
            assert_eq!(grouped.state(j), set.state(j));
        }
        assert_eq!(
            grouped.validate(1e-10).len(),
            set.validate(1e-10).len()
        );
    }

    #[test]
    fn coarse_grain_identity_partition() {
        let set = basis_set(&[2, 3], &[0, 1]);
        let same = set.coarse_grain(&[vec![0], vec![1]]).unwrap();
        assert_eq!(same.dims().dims(), &[2, 3]);
        assert_eq!(same.state(0), set.state(0));
    }

    #[test]
    fn coarse_grain_rejects_bad_partitions() {
        let set = basis_set(&[2, 2, 2], &[0, 1]);
        assert!(matches!(
            set.coarse_grain(&[vec![0, 2], vec![1]]),
            Err(Error::UnsupportedPartition(_))
        ));
        assert!(matches!(
            set.coarse_grain(&[vec![0, 1]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            set.coarse_grain(&[vec![0, 1], vec![1, 2]]),
            Err(Error::InvalidPartition(_))
        ));
    }

    fn pure_density(v: &CVector) -> CMatrix {
        CMatrix::outer(v, v)
    }

    #[test]
    fn eigen_select_diagonal_tie_break() {
        let dl = dims(&[2, 2]);
        let rho1 = pure_density(&CVector::basis(4, 0));
        // ½|01⟩⟨01| + ½|10⟩⟨10|: degenerate top eigenspace.
        let rho2 = pure_density(&CVector::basis(4, 1))
            .scaled(c(0.5, 0.0))
            .add(&pure_density(&CVector::basis(4, 2)).scaled(c(0.5, 0.0)))
            .unwrap();
        let mixed = MixedSet::new(dl, vec![rho1, rho2]).unwrap();
        let set = mixed.eigen_select().unwrap();
        assert!((set.state(0).inner(&CVector::basis(4, 0)).norm() - 1.0).abs() < 1e-12);
        assert!((set.state(1).inner(&CVector::basis(4, 1)).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_select_pure_inputs_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let frame = haar_orthonormal_columns(4, 3, &mut rng).unwrap();
        let original = StateSet::new(dims(&[2, 2]), frame.clone(), None).unwrap();
        let mixed = MixedSet::new(
            dims(&[2, 2]),
            frame.iter().map(pure_density).collect(),
        )
        .unwrap();
        let reduced = mixed.eigen_select().unwrap();
        for j in 0..3 {
            // idempotent up to global phase
            let overlap = reduced.state(j).inner(original.state(j)).norm();
            assert!((overlap - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn eigen_select_haar_support_mixtures() {
        // Fixture whose supports are disjoint subsets of a Haar frame.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let frame = haar_orthonormal_columns(8, 6, &mut rng).unwrap();
        let groups: Vec<&[CVector]> = vec![&frame[0..2], &frame[2..4], &frame[4..6]];
        let weights = [0.7, 0.3];
        let mats: Vec<CMatrix> = groups
            .iter()
            .map(|g| {
                let mut m = CMatrix::zeros(8, 8);
                for (w, v) in weights.iter().zip(g.iter()) {
                    m = m.add(&pure_density(v).scaled(c(*w, 0.0))).unwrap();
                }
                m
            })
            .collect();
        let mixed = MixedSet::new(dims(&[2, 2, 2]), mats).unwrap();
        assert!(mixed.validate().is_empty());
        let set = mixed.eigen_select().unwrap();
        assert!(set.validate(1e-8).is_empty());
        // largest-weight eigenvector of each group is the first frame vector
        for (j, g) in groups.iter().enumerate() {
            let overlap = set.state(j).inner(&g[0]).norm();
            assert!((overlap - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn eigen_select_rejects_overlapping_supports() {
        let dl = dims(&[2, 2]);
        let rho = pure_density(&CVector::basis(4, 0));
        let mixed = MixedSet::new(dl, vec![rho.clone(), rho]).unwrap();
        assert!(mixed.eigen_select().is_err());
    }

    #[test]
    fn json_roundtrip_and_unknown_keys() {
        let set = basis_set(&[2, 2], &[0, 1, 2]);
        let text = set.to_json();
        let back = StateSet::from_json(&text).unwrap();
        assert_eq!(back.dims().dims(), &[2, 2]);
        assert_eq!(back.n_states(), 3);
        for j in 0..3 {
            assert_eq!(back.state(j), set.state(j));
        }

        let bad = r#"{"dims":[2,2],"states":[],"extra":1}"#;
        assert!(StateSet::from_json(bad).is_err());

        let wrong_len = r#"{"dims":[2,2],"states":[{"amplitudes":[[1.0,0.0]]},{"amplitudes":[[1.0,0.0]]}]}"#;
        assert!(StateSet::from_json(wrong_len).is_err());
    }

    #[test]
    fn parse_state_input_dispatches() {
        let pure = basis_set(&[2, 2], &[0, 1]).to_json();
        assert!(matches!(
            parse_state_input(&pure).unwrap(),
            StateInput::Pure(_)
        ));
        let mixed = MixedSet::new(
            dims(&[2, 2]),
            vec![
                pure_density(&CVector::basis(4, 0)),
                pure_density(&CVector::basis(4, 1)),
            ],
        )
        .unwrap()
        .to_json();
        assert!(matches!(
            parse_state_input(&mixed).unwrap(),
            StateInput::Mixed(_)
        ));
        assert!(parse_state_input(r#"{"dims":[2]}"#).is_err());
    }
}
