//! Generators for named state families: the structured counter-example
//! family that is blocked for every party, generalized Bell sets for
//! cross-checks, and version-pinned stored fixtures.

use num_complex::Complex64;

use crate::analyzer::{analyze, numerical_rank_of_retained, pair_operators, Verdict};
use crate::error::{Error, Result};
use crate::linalg::{tensor_index, CVector, DimList};
use crate::stateset::StateSet;

/// Parameters for the counter-example family: N = d+1 states on n parties
/// of local dimension d, built from the primitive d-th root of unity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CohenFamilyParams {
    d: usize,
    n: usize,
    omega: Complex64,
}

impl CohenFamilyParams {
    /// Requires d ≥ 2 and n ≥ 3. For n = 2 the Ψ_1–Ψ_d inner product of the
    /// construction evaluates to d(2n−8) ≠ 0, so generation is refused
    /// rather than emitting a non-orthogonal set; n = 1 is not multipartite.
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::UnsupportedFamilyParams(format!(
                "local dimension must be at least 2, got {}",
                d
            )));
        }
        if n < 3 {
            return Err(Error::UnsupportedFamilyParams(format!(
                "the family is only mutually orthogonal for n >= 3 parties \
                 (at n = 2 the inner product of states 1 and {} is d(2n-8) != 0); got n = {}",
                d, n
            )));
        }
        let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / d as f64);
        Ok(Self { d, n, omega })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Primitive d-th root of unity e^{2πi/d}.
    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    fn omega_pow(&self, k: usize) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * (k % self.d) as f64 / self.d as f64)
    }
}

/// Certificate that d²−1 retained pair operators are linearly independent
/// after excluding a fixed list of d+1 of them.
#[derive(Debug, Clone)]
pub struct ExclusionCertificate {
    /// The d+1 excluded ordered pairs: (0,d), (1,d), and (i,0) for i=1..d−1.
    pub excluded_pairs: Vec<(usize, usize)>,
    /// Rank of the d²−1 retained vectorized operators.
    pub retained_rank: usize,
    /// retained_rank == d²−1.
    pub independent: bool,
}

/// Build the counter-example family: N = d+1 mutually orthogonal states on
/// dims = [d; n], normalized. The set is symmetric under any permutation of
/// the parties.
pub fn cohen_family(params: &CohenFamilyParams) -> Result<StateSet> {
    let d = params.d;
    let n = params.n;
    let dims = DimList::new(vec![d; n])?;
    let total = dims.total();

    let uniform = |m: usize| -> usize {
        tensor_index(&vec![m; n], &dims).expect("uniform index in range")
    };
    // |x⟩_β ⊗ |y⟩^{⊗(n−1)}: component x at party β, y elsewhere.
    let embed = |beta: usize, x: usize, y: usize| -> usize {
        let mut comps = vec![y; n];
        comps[beta] = x;
        tensor_index(&comps, &dims).expect("embedded index in range")
    };

    let mut states = Vec::with_capacity(d + 1);
    let mut labels = Vec::with_capacity(d + 1);

    // Ψ_0 = Σ_m |m⟩^{⊗n}
    let mut psi0 = CVector::zeros(total);
    for m in 0..d {
        psi0.as_mut_slice()[uniform(m)] += Complex64::new(1.0, 0.0);
    }
    states.push(psi0.normalized()?);
    labels.push("psi0".to_string());

    // Ψ_j = Σ_m ω^{jm}|m⟩^{⊗n} + Σ_β (|0⟩_β|j⟩^{⊗n−1} + |j⟩_β|0⟩^{⊗n−1}), j = 1..d−1
    for j in 1..d {
        let mut psi = CVector::zeros(total);
        for m in 0..d {
            psi.as_mut_slice()[uniform(m)] += params.omega_pow(j * m);
        }
        for beta in 0..n {
            psi.as_mut_slice()[embed(beta, 0, j)] += Complex64::new(1.0, 0.0);
            psi.as_mut_slice()[embed(beta, j, 0)] += Complex64::new(1.0, 0.0);
        }
        states.push(psi.normalized()?);
        labels.push(format!("psi{}", j));
    }

    // Ψ_d = 2n Σ_m ω^m|m⟩^{⊗n} − d Σ_β (|0⟩_β|1⟩^{⊗n−1} + |1⟩_β|0⟩^{⊗n−1})
    let mut psid = CVector::zeros(total);
    for m in 0..d {
        psid.as_mut_slice()[uniform(m)] += Complex64::new(2.0 * n as f64, 0.0) * params.omega_pow(m);
    }
    for beta in 0..n {
        psid.as_mut_slice()[embed(beta, 0, 1)] -= Complex64::new(d as f64, 0.0);
        psid.as_mut_slice()[embed(beta, 1, 0)] -= Complex64::new(d as f64, 0.0);
    }
    states.push(psid.normalized()?);
    labels.push(format!("psi{}", d));

    let set = StateSet::new(dims, states, Some(labels))?;
    set.ensure_valid(1e-10)?;
    Ok(set)
}

/// Run the span analysis on the generated family. The family is symmetric
/// under interchange of parties, so all per-party ranks agree.
pub fn verify_family_blocked(params: &CohenFamilyParams, tol: f64) -> Result<Verdict> {
    analyze(&cohen_family(params)?, tol)
}

/// Numerical realization of the linear-independence statement behind the
/// family: drop the d+1 pairs (0,d), (1,d), (i,0) for i=1..d−1 from party
/// 0's d(d+1) operators and certify that the remaining d²−1 have full rank.
pub fn exclusion_certificate(
    params: &CohenFamilyParams,
    tol: f64,
) -> Result<ExclusionCertificate> {
    let d = params.d;
    let set = cohen_family(params)?;
    let ops = pair_operators(&set, 0)?;
    let mut excluded: Vec<(usize, usize)> = vec![(0, d), (1, d)];
    for i in 1..d {
        excluded.push((i, 0));
    }
    debug_assert_eq!(excluded.len(), d + 1);
    let retained: Vec<_> = ops
        .iter()
        .filter(|op| !excluded.contains(&(op.i, op.j)))
        .cloned()
        .collect();
    debug_assert_eq!(retained.len(), d * d - 1);
    let retained_rank = numerical_rank_of_retained(&retained, d, tol)?;
    Ok(ExclusionCertificate {
        excluded_pairs: excluded,
        retained_rank,
        independent: retained_rank == d * d - 1,
    })
}

/// The first `count` generalized Bell states (1/√d)·Σ_m ω^{am}|m⟩|m⊕b⟩ on a
/// d⊗d system, in b-major enumeration order (b varies slowest).
pub fn generalized_bell_set(d: usize, count: usize) -> Result<StateSet> {
    if d < 2 {
        return Err(Error::InvalidInput("local dimension must be at least 2".into()));
    }
    if count < 2 || count > d * d {
        return Err(Error::InvalidInput(format!(
            "count must lie in 2..=d² = {}, got {}",
            d * d,
            count
        )));
    }
    let dims = DimList::new(vec![d, d])?;
    let amp = 1.0 / (d as f64).sqrt();
    let mut states = Vec::with_capacity(count);
    let mut labels = Vec::with_capacity(count);
    for idx in 0..count {
        let b = idx / d;
        let a = idx % d;
        let mut v = CVector::zeros(d * d);
        for m in 0..d {
            let phase =
                Complex64::from_polar(amp, std::f64::consts::TAU * ((a * m) % d) as f64 / d as f64);
            v.as_mut_slice()[m * d + (m + b) % d] = phase;
        }
        states.push(v);
        labels.push(format!("bell_a{}_b{}", a, b));
    }
    StateSet::new(dims, states, Some(labels))
}

/// Named, version-pinned fixtures in the state-set JSON schema. The names
/// are stable API.
pub fn fixture_store(name: &str) -> Result<StateSet> {
    let text = match name {
        "bell3" => include_str!("../fixtures/bell3.json"),
        "product_basis_2x2" => include_str!("../fixtures/product_basis_2x2.json"),
        "haar_2x2_N3_seed42" => include_str!("../fixtures/haar_2x2_N3_seed42.json"),
        _ => {
            return Err(Error::NotFound(format!(
                "unknown fixture \"{}\" (known: {})",
                name,
                fixture_names().join(", ")
            )))
        }
    };
    StateSet::from_json(text)
}

/// Names accepted by [`fixture_store`].
pub fn fixture_names() -> Vec<&'static str> {
    vec!["bell3", "product_basis_2x2", "haar_2x2_N3_seed42"]
}
