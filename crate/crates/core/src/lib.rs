//! Decides whether a set of mutually orthogonal multipartite states is
//! *strongly locally indistinguishable*: whether any party can start a
//! discrimination protocol with a measurement that is not proportional to a
//! unitary while keeping the set orthogonal.
//!
//! The decision works on the pairwise partial-trace operators of the set.
//! For party α and states i ≠ j, the operator A_ij = Tr_{α̂}(|Ψ_i⟩⟨Ψ_j|) is
//! traceless; a first-measurement Kraus operator K preserves orthogonality
//! iff K†K is Hilbert–Schmidt-orthogonal to every A_ij. When the A_ij
//! together with the identity span all of party α's operator space, only
//! trivial (unitary-like) measurements survive. The [`analyzer`] module
//! implements that span test numerically, [`families`] generates named state
//! families (including a structured counter-example family that is blocked
//! for every party), and [`elimination`] reproduces the variable-elimination
//! construction behind the measure-zero statement in exact arithmetic at
//! desk scale.

pub mod analyzer;
pub mod elimination;
pub mod error;
pub mod families;
pub mod linalg;
pub mod stateset;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, DimList, RankResult, DEFAULT_RANK_TOL};
pub use stateset::{ManifoldInfo, MixedSet, StateSet, DEFAULT_VALIDATION_TOL};
