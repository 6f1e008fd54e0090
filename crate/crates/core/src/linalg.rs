//! Dense complex vector/matrix kernel: tensor-index bookkeeping, partial
//! trace, numerical rank, and Haar-random orthonormal sampling.
//!
//! Matrices are stored row-major. The tensor-product basis is flattened
//! big-endian: party 0 is the most significant index. Singular value and
//! Hermitian eigendecompositions are delegated to `nalgebra`; everything
//! else is implemented directly on the row-major storage.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Default relative tolerance for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Complex state vector on a tensor-product space.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    entries: Vec<Complex64>,
}

impl CVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("CVector must be non-empty".into()));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput(
                "CVector entries must be finite".into(),
            ));
        }
        Ok(Self { entries })
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            entries: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    /// Basis vector |k⟩ in a `len`-dimensional space.
    pub fn basis(len: usize, k: usize) -> Self {
        let mut v = Self::zeros(len);
        v.entries[k] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.entries
    }

    /// Conjugate-linear inner product ⟨self|other⟩ = Σ conj(self_k)·other_k.
    pub fn inner(&self, other: &Self) -> Complex64 {
        debug_assert_eq!(self.len(), other.len());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::NumericalError("cannot normalize zero vector".into()));
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    /// self ← self - c·other
    pub fn sub_scaled(&mut self, c: Complex64, other: &Self) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a -= c * b;
        }
    }
}

impl std::ops::Index<usize> for CVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.entries[i]
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeError(format!(
                "entry count {} does not match {}x{}",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for k in 0..dim {
            m.entries[k * dim + k] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    /// Outer product |ket⟩⟨bra|.
    pub fn outer(ket: &CVector, bra: &CVector) -> Self {
        Self::from_fn(ket.len(), bra.len(), |r, c| ket[r] * bra[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|k| self.get(k, k)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeError("matrix addition shape mismatch".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeError("matrix subtraction shape mismatch".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeError(format!(
                "matmul shape mismatch: {}x{} · {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &CVector) -> Result<CVector> {
        if self.cols != v.len() {
            return Err(Error::ShapeError("matvec shape mismatch".into()));
        }
        let mut out = CVector::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..self.cols {
                acc += self.get(r, c) * v[c];
            }
            out.as_mut_slice()[r] = acc;
        }
        Ok(out)
    }

    /// Row-major vectorization: row r of the matrix occupies entries
    /// r·cols..(r+1)·cols of the result.
    pub fn vec_rowmajor(&self) -> CVector {
        CVector {
            entries: self.entries.clone(),
        }
    }

    /// Inverse of [`vec_rowmajor`](Self::vec_rowmajor) for square matrices.
    pub fn unvec_rowmajor(dim: usize, v: &CVector) -> Result<Self> {
        if v.len() != dim * dim {
            return Err(Error::ShapeError("unvec length mismatch".into()));
        }
        Self::new(dim, dim, v.as_slice().to_vec())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in r..self.cols {
                if (self.get(r, c) - self.get(c, r).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    fn to_dmatrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c))
    }
}

/// Ordered list of local dimensions, one per party.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimList {
    dims: Vec<usize>,
}

impl DimList {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidInput("DimList must name at least one party".into()));
        }
        if dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidInput("every local dimension must be >= 2".into()));
        }
        Ok(Self { dims })
    }

    pub fn n_parties(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, party: usize) -> usize {
        self.dims[party]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total Hilbert-space dimension Π d_α.
    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// Π_{β>party} d_β — the flat-index stride of one step of `party`'s index.
    pub fn stride(&self, party: usize) -> usize {
        self.dims[party + 1..].iter().product()
    }
}

/// Result of a numerical rank decision.
#[derive(Debug, Clone)]
pub struct RankResult {
    pub rank: usize,
    /// Singular values sorted descending.
    pub singular_values: Vec<f64>,
    /// Absolute threshold actually applied (tol · σ_max · max(rows, cols)).
    pub tolerance_used: f64,
    /// True when any singular value falls within a decade of the threshold.
    pub ambiguous: bool,
}

impl RankResult {
    /// Smallest singular value counted toward the rank (0.0 when rank = 0).
    pub fn min_accepted(&self) -> f64 {
        if self.rank == 0 {
            0.0
        } else {
            self.singular_values[self.rank - 1]
        }
    }

    /// Largest singular value rejected by the threshold (0.0 when none).
    pub fn max_rejected(&self) -> f64 {
        self.singular_values.get(self.rank).copied().unwrap_or(0.0)
    }
}

/// Flatten per-party basis indices into the big-endian composite index.
pub fn tensor_index(component_indices: &[usize], dims: &DimList) -> Result<usize> {
    if component_indices.len() != dims.n_parties() {
        return Err(Error::InvalidIndex(format!(
            "expected {} component indices, got {}",
            dims.n_parties(),
            component_indices.len()
        )));
    }
    let mut flat = 0usize;
    for (party, &m) in component_indices.iter().enumerate() {
        let d = dims.dim(party);
        if m >= d {
            return Err(Error::InvalidIndex(format!(
                "component {} out of range for party {} (dim {})",
                m, party, d
            )));
        }
        flat = flat * d + m;
    }
    Ok(flat)
}

/// Inverse of [`tensor_index`]: recover per-party components.
pub fn tensor_components(flat: usize, dims: &DimList) -> Result<Vec<usize>> {
    if flat >= dims.total() {
        return Err(Error::InvalidIndex(format!(
            "flat index {} out of range for total dimension {}",
            flat,
            dims.total()
        )));
    }
    let mut out = vec![0usize; dims.n_parties()];
    let mut rem = flat;
    for party in (0..dims.n_parties()).rev() {
        let d = dims.dim(party);
        out[party] = rem % d;
        rem /= d;
    }
    Ok(out)
}

/// Trace out every party except `keep`.
///
/// The input must be square with side Π d_α; the result is d_keep × d_keep
/// and satisfies Tr(result) = Tr(input) up to rounding.
pub fn partial_trace_keep(m: &CMatrix, dims: &DimList, keep: usize) -> Result<CMatrix> {
    let side = dims.total();
    if m.rows() != side || m.cols() != side {
        return Err(Error::ShapeError(format!(
            "matrix is {}x{}, expected {}x{} for dims {:?}",
            m.rows(),
            m.cols(),
            side,
            side,
            dims.dims()
        )));
    }
    if keep >= dims.n_parties() {
        return Err(Error::ShapeError(format!(
            "keep index {} out of range for {} parties",
            keep,
            dims.n_parties()
        )));
    }
    let dk = dims.dim(keep);
    let stride = dims.stride(keep);
    let mut out = CMatrix::zeros(dk, dk);
    for f in 0..side {
        if (f / stride) % dk != 0 {
            continue;
        }
        for l in 0..dk {
            let row = f + l * stride;
            for c in 0..dk {
                let col = f + c * stride;
                let v = out.get(l, c) + m.get(row, col);
                out.set(l, c, v);
            }
        }
    }
    Ok(out)
}

/// Apply `op` to one party of a state vector: (I ⊗ … ⊗ op_party ⊗ … ⊗ I)|ψ⟩.
pub fn apply_local_operator(
    state: &CVector,
    dims: &DimList,
    party: usize,
    op: &CMatrix,
) -> Result<CVector> {
    let side = dims.total();
    if state.len() != side {
        return Err(Error::ShapeError("state length does not match dims".into()));
    }
    if party >= dims.n_parties() {
        return Err(Error::InvalidParty {
            party,
            n_parties: dims.n_parties(),
        });
    }
    let dp = dims.dim(party);
    if op.rows() != dp || op.cols() != dp {
        return Err(Error::ShapeError(format!(
            "operator is {}x{}, party {} has dimension {}",
            op.rows(),
            op.cols(),
            party,
            dp
        )));
    }
    let stride = dims.stride(party);
    let mut out = CVector::zeros(side);
    for f in 0..side {
        if (f / stride) % dp != 0 {
            continue;
        }
        for a_out in 0..dp {
            let mut acc = Complex64::new(0.0, 0.0);
            for a_in in 0..dp {
                acc += op.get(a_out, a_in) * state[f + a_in * stride];
            }
            out.as_mut_slice()[f + a_out * stride] = acc;
        }
    }
    Ok(out)
}

/// Singular values of `m`, sorted descending.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    let svd = m
        .to_dmatrix()
        .try_svd(false, false, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::NumericalError("SVD did not converge".into()))?;
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(sv)
}

/// Singular values plus right singular vectors (columns of V), both ordered
/// by descending singular value. When `m` has fewer rows than columns it is
/// padded with zero rows so that V is square and spans the full column space,
/// null directions included.
pub fn svd_right_vectors(m: &CMatrix) -> Result<(Vec<f64>, Vec<CVector>)> {
    let padded = if m.rows() < m.cols() {
        let mut p = CMatrix::zeros(m.cols(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                p.set(r, c, m.get(r, c));
            }
        }
        p
    } else {
        m.clone()
    };
    let svd = padded
        .to_dmatrix()
        .try_svd(false, true, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::NumericalError("SVD did not converge".into()))?;
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::NumericalError("SVD did not return right vectors".into()))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap()
    });
    let values: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    // Right singular vector k is the conjugate of row k of V^H.
    let vectors: Vec<CVector> = order
        .iter()
        .map(|&k| {
            CVector::new((0..v_t.ncols()).map(|c| v_t[(k, c)].conj()).collect()).expect("nonempty")
        })
        .collect();
    Ok((values, vectors))
}

/// Numerical rank with gray-zone detection.
///
/// rank = #{σ_k > τ} with τ = tol · σ_max · max(rows, cols); a singular value
/// within [τ/10, 10τ] marks the decision ambiguous.
pub fn numerical_rank(m: &CMatrix, tol: f64) -> Result<RankResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("rank tolerance must be positive".into()));
    }
    if !m.is_finite() {
        return Err(Error::InvalidInput("matrix entries must be finite".into()));
    }
    let sv = singular_values(m)?;
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    if sigma_max == 0.0 {
        // Zero matrix: rank 0 by convention, no gray zone to speak of.
        return Ok(RankResult {
            rank: 0,
            singular_values: sv,
            tolerance_used: tol,
            ambiguous: false,
        });
    }
    let tau = tol * sigma_max * (m.rows().max(m.cols()) as f64);
    let rank = sv.iter().filter(|&&s| s > tau).count();
    let ambiguous = sv.iter().any(|&s| s >= tau / 10.0 && s <= 10.0 * tau);
    Ok(RankResult {
        rank,
        singular_values: sv,
        tolerance_used: tau,
        ambiguous,
    })
}

/// Eigendecomposition of a Hermitian matrix: (eigenvalues, eigenvectors),
/// sorted by descending eigenvalue.
pub fn hermitian_eigen(m: &CMatrix) -> Result<(Vec<f64>, Vec<CVector>)> {
    if m.rows() != m.cols() {
        return Err(Error::ShapeError("hermitian_eigen requires a square matrix".into()));
    }
    if !m.is_hermitian(1e-10 * m.max_abs().max(1.0)) {
        return Err(Error::InvalidInput("matrix is not Hermitian".into()));
    }
    let se = nalgebra::linalg::SymmetricEigen::new(m.to_dmatrix());
    let mut order: Vec<usize> = (0..se.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].partial_cmp(&se.eigenvalues[a]).unwrap());
    let values: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let vectors: Vec<CVector> = order
        .iter()
        .map(|&k| {
            CVector::new(se.eigenvectors.column(k).iter().copied().collect()).expect("nonempty")
        })
        .collect();
    Ok((values, vectors))
}

/// Hermitian square root of a positive semidefinite matrix.
///
/// Eigenvalues slightly below zero (rounding) are clamped.
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let (vals, vecs) = hermitian_eigen(m)?;
    let dim = m.rows();
    let mut out = CMatrix::zeros(dim, dim);
    for (lambda, v) in vals.iter().zip(&vecs) {
        if *lambda < -1e-10 * vals[0].abs().max(1.0) {
            return Err(Error::InvalidInput(
                "psd_sqrt requires a positive semidefinite matrix".into(),
            ));
        }
        let s = lambda.max(0.0).sqrt();
        for r in 0..dim {
            for c in 0..dim {
                let add = Complex64::new(s, 0.0) * v[r] * v[c].conj();
                let cur = out.get(r, c) + add;
                out.set(r, c, cur);
            }
        }
    }
    Ok(out)
}

/// One standard complex Gaussian sample (independent N(0,1) real and
/// imaginary parts) via Box–Muller on the raw uniform stream. Implemented
/// directly so the sampled values depend only on the RNG stream, not on a
/// distribution crate's internals.
fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let u1: f64 = rng.random();
    let u2: f64 = rng.random();
    let r = (-2.0 * (1.0 - u1).ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    Complex64::new(r * theta.cos(), r * theta.sin())
}

/// Draw `cols` Haar-distributed orthonormal vectors of length `rows`.
///
/// A complex Gaussian matrix is orthonormalized column by column (modified
/// Gram–Schmidt, two passes). Gram–Schmidt commutes with left multiplication
/// by a unitary and the Gaussian ensemble is unitarily invariant, so the
/// resulting frame is Haar on the Stiefel manifold.
pub fn haar_orthonormal_columns<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    rng: &mut R,
) -> Result<Vec<CVector>> {
    if cols > rows {
        return Err(Error::ShapeError(format!(
            "cannot draw {} orthonormal vectors in dimension {}",
            cols, rows
        )));
    }
    let mut frame: Vec<CVector> = Vec::with_capacity(cols);
    while frame.len() < cols {
        let mut v = CVector::new((0..rows).map(|_| complex_gaussian(rng)).collect())?;
        for _ in 0..2 {
            for q in &frame {
                let c = q.inner(&v);
                v.sub_scaled(c, q);
            }
        }
        let n = v.norm();
        // A Gaussian draw lands in the span of the previous columns with
        // probability zero; resample deterministically if rounding says otherwise.
        if n < 1e-8 * (rows as f64).sqrt() {
            continue;
        }
        frame.push(v.scaled(Complex64::new(1.0 / n, 0.0)));
    }
    Ok(frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dims(d: &[usize]) -> DimList {
        DimList::new(d.to_vec()).unwrap()
    }

    #[test]
    fn tensor_index_conventions() {
        let d22 = dims(&[2, 2]);
        assert_eq!(tensor_index(&[0, 0], &d22).unwrap(), 0);
        assert_eq!(tensor_index(&[1, 0], &d22).unwrap(), 2);
        let d33 = dims(&[3, 3]);
        assert_eq!(tensor_index(&[2, 1], &d33).unwrap(), 7);
        assert!(matches!(
            tensor_index(&[3, 0], &d33),
            Err(Error::InvalidIndex(_))
        ));
        assert!(matches!(
            tensor_index(&[0], &d33),
            Err(Error::InvalidIndex(_))
        ));
    }

    #[test]
    fn tensor_index_roundtrip() {
        let d = dims(&[2, 3, 2]);
        for flat in 0..d.total() {
            let comps = tensor_components(flat, &d).unwrap();
            assert_eq!(tensor_index(&comps, &d).unwrap(), flat);
        }
        assert!(tensor_components(12, &d).is_err());
    }

    /// Independent contraction oracle: Tr_rest(|a⟩⟨b|) on party `keep` via
    /// Tr_B(|ab⟩⟨cd|) = |a⟩⟨c|·δ_bd applied index by index.
    fn naive_pair_trace(a: &CVector, b: &CVector, d: &DimList, keep: usize) -> CMatrix {
        let dk = d.dim(keep);
        let mut out = CMatrix::zeros(dk, dk);
        for r in 0..d.total() {
            for ccol in 0..d.total() {
                let ri = tensor_components(r, d).unwrap();
                let ci = tensor_components(ccol, d).unwrap();
                let rest_match = (0..d.n_parties()).all(|p| p == keep || ri[p] == ci[p]);
                if rest_match {
                    let v = out.get(ri[keep], ci[keep]) + a[r] * b[ccol].conj();
                    out.set(ri[keep], ci[keep], v);
                }
            }
        }
        out
    }

    #[test]
    fn partial_trace_zero_case() {
        let d = dims(&[2, 2]);
        let v00 = CVector::basis(4, 0);
        let v01 = CVector::basis(4, 1);
        let m = CMatrix::outer(&v00, &v01);
        let t = partial_trace_keep(&m, &d, 0).unwrap();
        assert!(t.max_abs() < 1e-15);
    }

    #[test]
    fn partial_trace_bell_cross_term() {
        let d = dims(&[2, 2]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phip = CVector::new(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap();
        let phim = CVector::new(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-s, 0.0)]).unwrap();
        let m = CMatrix::outer(&phip, &phim);
        let t = partial_trace_keep(&m, &d, 0).unwrap();
        // Frozen from the naive contraction oracle: ½·diag(1, −1).
        let oracle = naive_pair_trace(&phip, &phim, &d, 0);
        assert!(t.sub(&oracle).unwrap().max_abs() < 1e-15);
        assert!((t.get(0, 0) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((t.get(1, 1) - c(-0.5, 0.0)).norm() < 1e-15);
        assert!(t.get(0, 1).norm() < 1e-15);
        assert!(t.get(1, 0).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_identity_case() {
        let d = dims(&[2, 2]);
        let m = CMatrix::identity(4).scaled(c(0.25, 0.0));
        let t = partial_trace_keep(&m, &d, 0).unwrap();
        let expect = CMatrix::identity(2).scaled(c(0.5, 0.0));
        assert!(t.sub(&expect).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn partial_trace_matches_oracle_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dset in [vec![2, 2], vec![2, 3], vec![2, 2, 2]] {
            let d = dims(&dset);
            let n = d.total();
            let a = CVector::new((0..n).map(|_| complex_gaussian(&mut rng)).collect()).unwrap();
            let b = CVector::new((0..n).map(|_| complex_gaussian(&mut rng)).collect()).unwrap();
            let m = CMatrix::outer(&a, &b);
            for keep in 0..d.n_parties() {
                let t = partial_trace_keep(&m, &d, keep).unwrap();
                let oracle = naive_pair_trace(&a, &b, &d, keep);
                assert!(t.sub(&oracle).unwrap().max_abs() < 1e-12);
                // trace preservation
                assert!((t.trace() - m.trace()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn partial_trace_shape_errors() {
        let d = dims(&[2, 2]);
        let m = CMatrix::zeros(3, 3);
        assert!(matches!(
            partial_trace_keep(&m, &d, 0),
            Err(Error::ShapeError(_))
        ));
        let m = CMatrix::zeros(4, 4);
        assert!(matches!(
            partial_trace_keep(&m, &d, 2),
            Err(Error::ShapeError(_))
        ));
    }

    #[test]
    fn rank_zero_matrix() {
        let r = numerical_rank(&CMatrix::zeros(3, 5), 1e-8).unwrap();
        assert_eq!(r.rank, 0);
        assert!(!r.ambiguous);
    }

    #[test]
    fn rank_identity() {
        for d in [2, 3, 5] {
            let r = numerical_rank(&CMatrix::identity(d), 1e-8).unwrap();
            assert_eq!(r.rank, d);
            assert!(!r.ambiguous);
        }
    }

    #[test]
    fn rank_pauli_rows() {
        // Rows vec(Z/2), vec(X/2), vec(−iY/2), vec(I). The Gram matrix of
        // these rows is diag(1/2, 1/2, 1/2, 2) with determinant 1/4 ≠ 0
        // (exhaustive Gram-determinant oracle), so the rank must be 4.
        let rows: Vec<Vec<Complex64>> = vec![
            vec![c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)],
            vec![c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ];
        // Oracle: exact 4x4 Gram determinant over the rationals (here the
        // rows are real so plain f64 arithmetic is exact).
        let mut gram = [[0.0f64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                gram[i][j] = rows[i]
                    .iter()
                    .zip(&rows[j])
                    .map(|(a, b)| (a.conj() * b).re)
                    .sum();
            }
        }
        let det = det4(&gram);
        assert!((det - 0.25).abs() < 1e-15);
        let m = CMatrix::new(4, 4, rows.into_iter().flatten().collect()).unwrap();
        let r = numerical_rank(&m, 1e-8).unwrap();
        assert_eq!(r.rank, 4);
        assert!(!r.ambiguous);
    }

    fn det4(m: &[[f64; 4]; 4]) -> f64 {
        let mut det = 0.0;
        for (j, sign) in [(0, 1.0), (1, -1.0), (2, 1.0), (3, -1.0)] {
            let mut minor = [[0.0f64; 3]; 3];
            for r in 1..4 {
                let mut cc = 0;
                for ccol in 0..4 {
                    if ccol == j {
                        continue;
                    }
                    minor[r - 1][cc] = m[r][ccol];
                    cc += 1;
                }
            }
            let d3 = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1])
                - minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0])
                + minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
            det += sign * m[0][j] * d3;
        }
        det
    }

    #[test]
    fn rank_detects_deficiency_without_ambiguity() {
        // Two copies of the same row: rank 1, far from the gray zone.
        let m = CMatrix::new(
            2,
            2,
            vec![c(1.0, 2.0), c(-0.5, 0.25), c(1.0, 2.0), c(-0.5, 0.25)],
        )
        .unwrap();
        let r = numerical_rank(&m, 1e-8).unwrap();
        assert_eq!(r.rank, 1);
        assert!(!r.ambiguous);
    }

    #[test]
    fn haar_columns_orthonormal_and_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let frame = haar_orthonormal_columns(4, 3, &mut rng).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let g = frame[i].inner(&frame[j]);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g - c(expect, 0.0)).norm() < 1e-12);
            }
        }
        let mut rng2 = ChaCha8Rng::seed_from_u64(42);
        let frame2 = haar_orthonormal_columns(4, 3, &mut rng2).unwrap();
        assert_eq!(frame, frame2, "identical seed must give identical vectors");

        assert!(matches!(
            haar_orthonormal_columns(3, 4, &mut rng),
            Err(Error::ShapeError(_))
        ));
    }

    #[test]
    fn haar_square_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let frame = haar_orthonormal_columns(4, 4, &mut rng).unwrap();
        let u = CMatrix::from_fn(4, 4, |r, cidx| frame[cidx][r]);
        let g = u.adjoint().matmul(&u).unwrap();
        assert!(g.sub(&CMatrix::identity(4)).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn haar_first_amplitude_statistics() {
        // Monte Carlo oracle: E|v_0|² = 1/rows by sphere symmetry; 3σ band
        // from the binomial approximation as the acceptance band.
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        let trials = 10_000;
        let rows = 4;
        let mut sum = 0.0;
        for _ in 0..trials {
            let v = &haar_orthonormal_columns(rows, 1, &mut rng).unwrap()[0];
            sum += v[0].norm_sqr();
        }
        let mean = sum / trials as f64;
        let p = 1.0 / rows as f64;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!(
            (mean - p).abs() < 3.0 * sigma,
            "mean {} outside band around {}",
            mean,
            p
        );
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = CMatrix::from_fn(4, 4, |_, _| complex_gaussian(&mut rng));
        let h = a.add(&a.adjoint()).unwrap().scaled(c(0.5, 0.0));
        let (vals, vecs) = hermitian_eigen(&h).unwrap();
        let mut recon = CMatrix::zeros(4, 4);
        for (l, v) in vals.iter().zip(&vecs) {
            for r in 0..4 {
                for ccol in 0..4 {
                    let add = c(*l, 0.0) * v[r] * v[ccol].conj();
                    let cur = recon.get(r, ccol) + add;
                    recon.set(r, ccol, cur);
                }
            }
        }
        assert!(h.sub(&recon).unwrap().max_abs() < 1e-12);
        assert!(vals.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = CMatrix::from_fn(3, 3, |_, _| complex_gaussian(&mut rng));
        let p = a.matmul(&a.adjoint()).unwrap();
        let s = psd_sqrt(&p).unwrap();
        assert!(s.matmul(&s).unwrap().sub(&p).unwrap().max_abs() < 1e-10);
    }

    #[test]
    fn apply_local_operator_matches_dense_kron() {
        let d = dims(&[2, 3]);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let state =
            CVector::new((0..6).map(|_| complex_gaussian(&mut rng)).collect()).unwrap();
        let op = CMatrix::from_fn(3, 3, |_, _| complex_gaussian(&mut rng));
        let out = apply_local_operator(&state, &d, 1, &op).unwrap();
        // dense oracle: (I₂ ⊗ op)
        let mut dense = CMatrix::zeros(6, 6);
        for blk in 0..2 {
            for r in 0..3 {
                for ccol in 0..3 {
                    dense.set(blk * 3 + r, blk * 3 + ccol, op.get(r, ccol));
                }
            }
        }
        let expect = dense.matvec(&state).unwrap();
        for k in 0..6 {
            assert!((out[k] - expect[k]).norm() < 1e-12);
        }
    }
}
