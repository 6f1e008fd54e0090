//! Exact symbolic form of the span-criterion determinant det(M†M).
//!
//! Instances are gated to (d, n, N) = (2, 2, 3): the determinant already has
//! total degree 4·d² = 16 in 2·N·d^n = 24 formal variables there, and the
//! next size up explodes combinatorially. Oversize requests are refused
//! rather than allowed to exhaust memory.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::elimination::poly::{FormalVar, GaussRational, SparsePoly};
use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// The desk-scale instance gate shared by this module.
pub const GATED_INSTANCE: (usize, usize, usize) = (2, 2, 3);

pub(crate) fn check_instance_gate(d: usize, n: usize, n_states: usize, party: usize) -> Result<()> {
    if (d, n, n_states) != GATED_INSTANCE {
        return Err(Error::InstanceTooLarge(format!(
            "symbolic pipeline supports (d, n, N) = {:?} only; got ({}, {}, {})",
            GATED_INSTANCE, d, n, n_states
        )));
    }
    if party >= n {
        return Err(Error::InvalidParty { party, n_parties: n });
    }
    Ok(())
}

/// Symbolic pair operator entries for `party`:
/// A_ij[l, m] = Σ_rest a_{i,(l,rest)} · a*_{j,(m,rest)} with the same
/// big-endian flattening the numeric kernel uses.
fn symbolic_pair_operator(
    d: usize,
    n: usize,
    party: usize,
    i: usize,
    j: usize,
) -> Vec<Vec<SparsePoly>> {
    let total = d.pow(n as u32);
    let stride = d.pow((n - 1 - party) as u32);
    let mut rows = vec![vec![SparsePoly::zero(); d]; d];
    for f in 0..total {
        if (f / stride) % d != 0 {
            continue;
        }
        for (l, row) in rows.iter_mut().enumerate() {
            let ket = SparsePoly::var(FormalVar::plain(i as u8, (f + l * stride) as u8));
            for (m, entry) in row.iter_mut().enumerate() {
                let bra = SparsePoly::var(FormalVar::conj(j as u8, (f + m * stride) as u8));
                *entry = entry.add(&ket.mul(&bra));
            }
        }
    }
    rows
}

/// The rows of the span matrix M as polynomial vectors: one per ordered
/// pair (lexicographic), then the vectorized identity.
fn symbolic_span_rows(d: usize, n: usize, n_states: usize, party: usize) -> Vec<Vec<SparsePoly>> {
    let cols = d * d;
    let mut rows = Vec::new();
    for i in 0..n_states {
        for j in 0..n_states {
            if i == j {
                continue;
            }
            let op = symbolic_pair_operator(d, n, party, i, j);
            let mut row = Vec::with_capacity(cols);
            for l in 0..d {
                for m in 0..d {
                    row.push(op[l][m].clone());
                }
            }
            rows.push(row);
        }
    }
    let mut id_row = Vec::with_capacity(cols);
    for l in 0..d {
        for m in 0..d {
            id_row.push(if l == m {
                SparsePoly::one()
            } else {
                SparsePoly::zero()
            });
        }
    }
    rows.push(id_row);
    rows
}

/// Determinant of a square polynomial matrix by cofactor expansion with a
/// column-subset memo (fine for the gated 4×4 instance).
fn poly_det(mat: &[Vec<SparsePoly>]) -> SparsePoly {
    let n = mat.len();
    debug_assert!(n <= 16, "subset memo uses a u32 bitmask");
    let full: u32 = (1 << n) - 1;
    let mut memo: HashMap<u32, SparsePoly> = HashMap::new();
    memo.insert(0, SparsePoly::one());
    fn go(mat: &[Vec<SparsePoly>], mask: u32, memo: &mut HashMap<u32, SparsePoly>) -> SparsePoly {
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let n = mat.len();
        let row = n - mask.count_ones() as usize;
        let mut acc = SparsePoly::zero();
        let mut sign = 1i64;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let entry = &mat[row][c];
            if !entry.is_zero() {
                let sub = go(mat, mask & !(1 << c), memo);
                let term = entry.mul(&sub);
                acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            sign = -sign;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    go(mat, full, &mut memo)
}

/// det(M†M) as an exact polynomial in the 2·N·d^n formal variables.
pub fn symbolic_span_det(d: usize, n: usize, n_states: usize, party: usize) -> Result<SparsePoly> {
    check_instance_gate(d, n, n_states, party)?;
    let rows = symbolic_span_rows(d, n, n_states, party);
    let cols = d * d;
    // Gram entries G[c1][c2] = Σ_r conj(row_r[c1])·row_r[c2]
    let mut gram = vec![vec![SparsePoly::zero(); cols]; cols];
    for row in &rows {
        let conj_row: Vec<SparsePoly> = row.iter().map(|p| p.formal_conj()).collect();
        for c1 in 0..cols {
            if conj_row[c1].is_zero() {
                continue;
            }
            for c2 in 0..cols {
                if row[c2].is_zero() {
                    continue;
                }
                gram[c1][c2] = gram[c1][c2].add(&conj_row[c1].mul(&row[c2]));
            }
        }
    }
    Ok(poly_det(&gram))
}

/// Assignment mapping each formal variable to the amplitudes of `set`
/// (conjugated variables get the complex conjugate).
pub fn state_assignment(set: &StateSet) -> HashMap<FormalVar, Complex64> {
    let mut out = HashMap::new();
    for (j, state) in set.states().iter().enumerate() {
        for (k, &amp) in state.as_slice().iter().enumerate() {
            out.insert(FormalVar::plain(j as u8, k as u8), amp);
            out.insert(FormalVar::conj(j as u8, k as u8), amp.conj());
        }
    }
    out
}

/// Exact assignment from rational state vectors, conjugate pairs tied.
pub fn rational_assignment(vectors: &[Vec<GaussRational>]) -> HashMap<FormalVar, GaussRational> {
    let mut out = HashMap::new();
    for (j, v) in vectors.iter().enumerate() {
        for (k, val) in v.iter().enumerate() {
            out.insert(FormalVar::plain(j as u8, k as u8), val.clone());
            out.insert(FormalVar::conj(j as u8, k as u8), val.conj());
        }
    }
    out
}
