//! Exact-arithmetic variable elimination for the span determinant at desk
//! scale, with randomized polynomial-identity validation.

pub mod poly;
pub mod symdet;

pub use poly::{pit_check, FormalVar, GaussRational, Monomial, SparsePoly};
pub use symdet::{rational_assignment, state_assignment, symbolic_span_det};
