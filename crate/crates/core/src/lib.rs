//! Exact linear algebra over restricted partitions and polynomial volume
//! growth of zero-entropy automorphisms.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`], [`matrix`], [`multipoly`]: exact arithmetic, sparse
//!   matrices with deterministic rank/nullspace, sparse multivariate
//!   polynomials.
//! * [`partitions`]: enumeration, ordering and counting of restricted
//!   partitions `P(k, d, n)`.
//! * [`incidence`]: the weighted incidence matrices `A_{k,d,n}`, their block
//!   decompositions and truncations, and the rank/nullity verifications.
//! * [`symfun`]: normalized monomial symmetric functions, the derivation
//!   correspondence and Vandermonde-type coefficient vectors.
//! * [`dynamics`]: intersection models (the abelian surrogate `E^g`), the
//!   log-monodromy pipeline, `Δₙᵈ` and `plov`.

pub mod dynamics;
pub mod error;
pub mod incidence;
pub mod matrix;
pub mod multipoly;
pub mod partitions;
pub mod rational;
pub mod symfun;
mod zint;

pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use multipoly::SparseMultiPoly;
pub use partitions::{Partition, PartitionSet};
pub use rational::Rational;
