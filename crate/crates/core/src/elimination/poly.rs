//! Sparse multivariate polynomials over exact Gaussian rationals in the
//! formal amplitude variables a_{jk} and their formal conjugates.
//!
//! A variable and its formal conjugate are independent indeterminates: the
//! conjugate of a polynomial conjugates every coefficient and swaps the
//! conjugation flag on every variable, nothing else.

use std::collections::{BTreeSet, HashMap};
use std::hash::{BuildHasherDefault, Hasher};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// One formal amplitude variable a_{jk} (or its formal conjugate).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalVar {
    pub state: u8,
    pub component: u8,
    pub conjugated: bool,
}

impl FormalVar {
    pub fn plain(state: u8, component: u8) -> Self {
        Self { state, component, conjugated: false }
    }

    pub fn conj(state: u8, component: u8) -> Self {
        Self { state, component, conjugated: true }
    }

    /// The same slot with the conjugation flag flipped.
    pub fn conjugate(self) -> Self {
        Self { conjugated: !self.conjugated, ..self }
    }
}

impl std::fmt::Display for FormalVar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "a{}{}_{}",
            if self.conjugated { "*" } else { "" },
            self.state,
            self.component
        )
    }
}

/// Exponent multi-index: sorted (variable, power) pairs, powers ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: SmallVec<[(FormalVar, u8); 16]>,
}

impl Monomial {
    pub fn one() -> Self {
        Self { factors: SmallVec::new() }
    }

    pub fn var(v: FormalVar) -> Self {
        Self { factors: smallvec::smallvec![(v, 1)] }
    }

    pub fn from_pairs(mut pairs: Vec<(FormalVar, u8)>) -> Self {
        pairs.retain(|&(_, p)| p > 0);
        pairs.sort_by_key(|&(v, _)| v);
        Self { factors: SmallVec::from_vec(pairs) }
    }

    pub fn factors(&self) -> &[(FormalVar, u8)] {
        &self.factors
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|&(_, p)| p as u32).sum()
    }

    pub fn degree_of(&self, v: FormalVar) -> u8 {
        self.factors
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, p)| p)
            .unwrap_or(0)
    }

    /// Merge exponents of two monomials.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out: SmallVec<[(FormalVar, u8); 16]> = SmallVec::new();
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1.checked_add(b[j].1).expect("exponent overflow")));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self { factors: out }
    }

    /// Remove the given variables entirely, returning (their powers, rest).
    fn split_vars(&self, x: FormalVar, y: FormalVar) -> (u8, u8, Monomial) {
        let mut px = 0;
        let mut py = 0;
        let mut rest: SmallVec<[(FormalVar, u8); 16]> = SmallVec::new();
        for &(v, p) in &self.factors {
            if v == x {
                px = p;
            } else if v == y {
                py = p;
            } else {
                rest.push((v, p));
            }
        }
        (px, py, Monomial { factors: rest })
    }

    fn conjugate(&self) -> Self {
        let mut pairs: Vec<(FormalVar, u8)> = self
            .factors
            .iter()
            .map(|&(v, p)| (v.conjugate(), p))
            .collect();
        pairs.sort_by_key(|&(v, _)| v);
        Self { factors: SmallVec::from_vec(pairs) }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Canonical term order: graded, then lexicographic on the sorted
    /// (variable, power) pairs. Used for serialization and display.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.factors.as_slice().cmp(other.factors.as_slice()))
    }
}

/// Exact complex rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self { re: BigRational::one(), im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self { re: BigRational::from_integer(n.into()), im: BigRational::zero() }
    }

    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn neg(&self) -> Self {
        Self { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// FNV-1a; monomial keys are short byte strings, so this beats SipHash by a
/// wide margin in the determinant expansion.
#[derive(Default)]
pub struct FnvHasher(u64);

impl Hasher for FnvHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        let mut h = if self.0 == 0 { 0xcbf29ce484222325 } else { self.0 };
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        self.0 = h;
    }
}

type FnvBuild = BuildHasherDefault<FnvHasher>;
type TermMap = HashMap<Monomial, GaussRational, FnvBuild>;

/// Sparse multivariate polynomial: exponent multi-index → coefficient.
/// Zero coefficients are never stored.
#[derive(Debug, Clone)]
pub struct SparsePoly {
    terms: TermMap,
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms
            .iter()
            .all(|(m, c)| other.terms.get(m).is_some_and(|d| d == c))
    }
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self { terms: TermMap::default() }
    }

    pub fn constant(c: GaussRational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn var(v: FormalVar) -> Self {
        let mut p = Self::zero();
        p.terms.insert(Monomial::var(v), GaussRational::one());
        p
    }

    pub fn from_terms(terms: Vec<(Monomial, GaussRational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    /// Terms in the canonical order (graded lex ascending).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &GaussRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: FormalVar) -> u32 {
        self.terms
            .keys()
            .map(|m| m.degree_of(v) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<FormalVar> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for &(v, _) in m.factors() {
                out.insert(v);
            }
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self::zero();
        out.terms.reserve(big.terms.len());
        for (ms, cs) in &small.terms {
            for (mb, cb) in &big.terms {
                out.add_term(ms.mul(mb), cs.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal conjugation: conjugate coefficients, flip every variable's
    /// conjugation flag.
    pub fn formal_conj(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.conjugate(), c.conj()))
                .collect(),
        }
    }

    /// Group terms by their powers (s, t) of `x` and `xc`, stripping both
    /// variables from the returned coefficient polynomials.
    pub fn decompose_by(&self, x: FormalVar, xc: FormalVar) -> HashMap<(u8, u8), SparsePoly> {
        let mut out: HashMap<(u8, u8), SparsePoly> = HashMap::new();
        for (m, c) in &self.terms {
            let (s, t, rest) = m.split_vars(x, xc);
            out.entry((s, t))
                .or_insert_with(SparsePoly::zero)
                .add_term(rest, c.clone());
        }
        out
    }

    /// The coefficient polynomial of v^power (other powers of v excluded,
    /// v itself stripped).
    pub fn coefficient_of_power(&self, v: FormalVar, power: u8) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            if m.degree_of(v) == power {
                let (_, _, rest) = m.split_vars(v, v);
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Evaluate in complex floating point. Every variable present must be
    /// assigned.
    pub fn eval_complex(&self, assign: &HashMap<FormalVar, Complex64>) -> Result<Complex64> {
        let (value, _) = self.eval_complex_with_scale(assign)?;
        Ok(value)
    }

    /// Evaluate and also return the cancellation scale Σ_terms |coeff·Π x^e|,
    /// the natural yardstick for "this value is numerically zero".
    pub fn eval_complex_with_scale(
        &self,
        assign: &HashMap<FormalVar, Complex64>,
    ) -> Result<(Complex64, f64)> {
        let mut value = Complex64::new(0.0, 0.0);
        let mut scale = 0.0f64;
        for (m, c) in &self.terms {
            let mut term = c.to_complex();
            for &(v, p) in m.factors() {
                let x = assign.get(&v).ok_or_else(|| {
                    Error::InvalidInput(format!("no assignment for variable {}", v))
                })?;
                term *= x.powi(p as i32);
            }
            value += term;
            scale += term.norm();
        }
        Ok((value, scale))
    }

    /// Evaluate in exact Gaussian-rational arithmetic.
    pub fn eval_exact(&self, assign: &HashMap<FormalVar, GaussRational>) -> Result<GaussRational> {
        let mut value = GaussRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, p) in m.factors() {
                let x = assign.get(&v).ok_or_else(|| {
                    Error::InvalidInput(format!("no assignment for variable {}", v))
                })?;
                for _ in 0..p {
                    term = term.mul(x);
                }
            }
            value = value.add(&term);
        }
        Ok(value)
    }

    /// Canonical JSON: term list sorted by the canonical monomial order,
    /// each term `{exponents: [[state, component, conj, power], ...],
    /// coeff: [num_re, den_re, num_im, den_im]}` with the rational parts as
    /// decimal strings (they outgrow any fixed-width integer).
    pub fn to_canonical_json(&self) -> String {
        let doc: Vec<TermDoc> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| TermDoc {
                exponents: m
                    .factors()
                    .iter()
                    .map(|&(v, p)| {
                        [
                            v.state.to_string(),
                            v.component.to_string(),
                            (v.conjugated as u8).to_string(),
                            p.to_string(),
                        ]
                    })
                    .collect(),
                coeff: [
                    c.re.numer().to_string(),
                    c.re.denom().to_string(),
                    c.im.numer().to_string(),
                    c.im.denom().to_string(),
                ],
            })
            .collect();
        serde_json::to_string(&doc).expect("serializable")
    }

    pub fn from_canonical_json(text: &str) -> Result<Self> {
        let doc: Vec<TermDoc> = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("bad polynomial JSON: {}", e)))?;
        let mut out = Self::zero();
        for term in doc {
            let mut pairs = Vec::with_capacity(term.exponents.len());
            for e in &term.exponents {
                let state: u8 = parse_num(&e[0])?;
                let component: u8 = parse_num(&e[1])?;
                let conj: u8 = parse_num(&e[2])?;
                let power: u8 = parse_num(&e[3])?;
                pairs.push((
                    FormalVar { state, component, conjugated: conj != 0 },
                    power,
                ));
            }
            let coeff = GaussRational {
                re: BigRational::new(parse_big(&term.coeff[0])?, parse_big(&term.coeff[1])?),
                im: BigRational::new(parse_big(&term.coeff[2])?, parse_big(&term.coeff[3])?),
            };
            out.add_term(Monomial::from_pairs(pairs), coeff);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    exponents: Vec<[String; 4]>,
    coeff: [String; 4],
}

fn parse_num(s: &str) -> Result<u8> {
    s.parse::<u8>()
        .map_err(|_| Error::InvalidInput(format!("bad exponent field {:?}", s)))
}

fn parse_big(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|_| Error::InvalidInput(format!("bad coefficient field {:?}", s)))
}

impl std::fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| {
                let coeff = if c.im.is_zero() {
                    c.re.to_string()
                } else if c.re.is_zero() {
                    format!("{}i", c.im)
                } else {
                    format!("({}{}{}i)", c.re, if c.im.is_negative() { "" } else { "+" }, c.im)
                };
                let vars: Vec<String> = m
                    .factors()
                    .iter()
                    .map(|&(v, p)| {
                        if p == 1 {
                            v.to_string()
                        } else {
                            format!("{}^{}", v, p)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    coeff
                } else if coeff == "1" {
                    vars.join("·")
                } else {
                    format!("{}·{}", coeff, vars.join("·"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Randomized polynomial-identity check: evaluate both sides at `trials`
/// random Gaussian-rational points (every formal variable independent, the
/// conjugate pairs included) and compare exactly. Probabilistic in the
/// Schwartz–Zippel sense: agreement at all points makes inequality
/// vanishingly unlikely but is not a proof.
pub fn pit_check<R: Rng + ?Sized>(
    lhs: &SparsePoly,
    rhs: &SparsePoly,
    trials: u32,
    rng: &mut R,
) -> bool {
    let mut vars = lhs.vars();
    vars.extend(rhs.vars());
    for _ in 0..trials {
        let assign: HashMap<FormalVar, GaussRational> = vars
            .iter()
            .map(|&v| {
                (
                    v,
                    GaussRational::from_parts(
                        rng.random_range(-9..=9),
                        rng.random_range(1..=4),
                        rng.random_range(-9..=9),
                        rng.random_range(1..=4),
                    ),
                )
            })
            .collect();
        let l = lhs.eval_exact(&assign).expect("all vars assigned");
        let r = rhs.eval_exact(&assign).expect("all vars assigned");
        if l != r {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x() -> FormalVar {
        FormalVar::plain(0, 0)
    }

    fn y() -> FormalVar {
        FormalVar::plain(0, 1)
    }

    fn z() -> FormalVar {
        FormalVar::conj(1, 0)
    }

    fn int(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    #[test]
    fn term_collection_drops_zeros() {
        let p = SparsePoly::var(x()).add(&SparsePoly::var(x()).neg());
        assert!(p.is_zero());
        let q = SparsePoly::var(x()).add(&SparsePoly::var(y()));
        assert_eq!(q.num_terms(), 2);
    }

    #[test]
    fn mul_expands() {
        // (x + 2)(x − 2) = x² − 4
        let p = SparsePoly::var(x()).add(&SparsePoly::constant(int(2)));
        let q = SparsePoly::var(x()).sub(&SparsePoly::constant(int(2)));
        let prod = p.mul(&q);
        assert_eq!(prod.num_terms(), 2);
        assert_eq!(prod.degree_in(x()), 2);
        let expect = SparsePoly::var(x())
            .mul(&SparsePoly::var(x()))
            .sub(&SparsePoly::constant(int(4)));
        assert_eq!(prod, expect);
    }

    #[test]
    fn formal_conj_is_involutive_and_swaps_flags() {
        let p = SparsePoly::var(x())
            .mul(&SparsePoly::var(z()))
            .scale(&GaussRational::from_parts(1, 2, 3, 1));
        let c = p.formal_conj();
        assert_ne!(p, c);
        assert_eq!(p, c.formal_conj());
        assert!(c.vars().contains(&x().conjugate()));
        assert!(c.vars().contains(&z().conjugate()));
    }

    #[test]
    fn decompose_reassembles() {
        // p = 3·x²·z + x·xc·y + 5·y, pivot pair (x, xc = conj x)
        let xc = x().conjugate();
        let p = SparsePoly::from_terms(vec![
            (Monomial::from_pairs(vec![(x(), 2), (z(), 1)]), int(3)),
            (Monomial::from_pairs(vec![(x(), 1), (xc, 1), (y(), 1)]), int(1)),
            (Monomial::from_pairs(vec![(y(), 1)]), int(5)),
        ]);
        let groups = p.decompose_by(x(), xc);
        assert_eq!(groups.len(), 3);
        // reassemble Σ μ_{s,t}·x^s·xc^t
        let mut back = SparsePoly::zero();
        for ((s, t), mu) in &groups {
            let xs = SparsePoly::var(x()).pow(*s as u32);
            let xct = SparsePoly::var(xc).pow(*t as u32);
            back = back.add(&mu.mul(&xs).mul(&xct));
        }
        assert_eq!(back, p);
    }

    #[test]
    fn eval_exact_and_complex_agree() {
        let p = SparsePoly::var(x())
            .mul(&SparsePoly::var(y()))
            .add(&SparsePoly::constant(GaussRational::from_parts(1, 4, -2, 3)));
        let mut exact = HashMap::new();
        exact.insert(x(), GaussRational::from_parts(1, 2, 1, 1));
        exact.insert(y(), GaussRational::from_parts(-3, 1, 0, 1));
        let mut approx = HashMap::new();
        for (k, v) in &exact {
            approx.insert(*k, v.to_complex());
        }
        let ev = p.eval_exact(&exact).unwrap().to_complex();
        let fv = p.eval_complex(&approx).unwrap();
        assert!((ev - fv).norm() < 1e-12);
    }

    #[test]
    fn eval_missing_var_errors() {
        let p = SparsePoly::var(x());
        assert!(p.eval_complex(&HashMap::new()).is_err());
    }

    #[test]
    fn pit_trivial_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = SparsePoly::var(x()).mul(&SparsePoly::var(y()));
        assert!(pit_check(&p, &p, 5, &mut rng));
        let q = p.add(&SparsePoly::one());
        assert!(!pit_check(&p, &q, 10, &mut rng));
    }

    #[test]
    fn pit_factored_vs_expanded() {
        // Random degree-6 sparse polynomial built as a product of three
        // quadratics; expanded form must agree with the factored evaluation.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let vars = [x(), y(), z()];
        let factor = |rng: &mut ChaCha8Rng| {
            let mut p = SparsePoly::constant(int(rng.random_range(-3..=3)));
            for v in vars {
                p = p.add(
                    &SparsePoly::var(v)
                        .scale(&int(rng.random_range(-3..=3))),
                );
            }
            p.add(&SparsePoly::var(vars[rng.random_range(0..3)]).pow(2))
        };
        let f1 = factor(&mut rng);
        let f2 = factor(&mut rng);
        let f3 = factor(&mut rng);
        let expanded = f1.mul(&f2).mul(&f3);
        // factored "rhs" evaluated through a lazily multiplied clone
        let refactored = f3.mul(&f1).mul(&f2);
        assert!(pit_check(&expanded, &refactored, 8, &mut rng));
    }

    #[test]
    fn canonical_json_roundtrip() {
        let p = SparsePoly::from_terms(vec![
            (Monomial::from_pairs(vec![(x(), 2), (z(), 1)]), GaussRational::from_parts(3, 7, -1, 2)),
            (Monomial::one(), int(-5)),
            (Monomial::from_pairs(vec![(y(), 1)]), GaussRational::from_parts(0, 1, 2, 9)),
        ]);
        let text = p.to_canonical_json();
        let back = SparsePoly::from_canonical_json(&text).unwrap();
        assert_eq!(p, back);
        // canonical: serializing again gives the identical string
        assert_eq!(text, back.to_canonical_json());
    }

    #[test]
    fn display_smoke() {
        let p = SparsePoly::var(x()).add(&SparsePoly::one());
        let s = format!("{}", p);
        assert!(s.contains("a0_0"));
    }
}
