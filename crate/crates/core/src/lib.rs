//! Exact computations with rational Cherednik algebras of finite Coxeter
//! groups: Dunkl operators on standard modules, radicals and characters of
//! simple lowest-weight modules, closed-form character series, Hecke algebra
//! Specht modules at roots of unity, and a small quiver algebra.
//!
//! The numerical core is generic over the scalar field (see
//! [`exact::Field`]); the aliases below name the instances used in practice.

pub mod chars;
pub mod cherednik;
pub mod coxeter;
pub mod exact;
pub mod hecke;
pub mod polyspace;
pub mod quiver;

pub use num_rational::BigRational;

/// Exact rational scalar.
pub type Q = BigRational;
/// Word-sized prime field used for certified rank lower bounds.
pub type Zp = exact::Fp;
/// Dense matrix over the rationals.
pub type QMatrix = exact::Matrix<Q>;
/// Dense matrix over the prime field.
pub type ZpMatrix = exact::Matrix<Zp>;
/// Standard module over the rationals.
pub type QStandardModule<'g> = cherednik::StandardModule<'g, Q>;
/// Sparse polynomial with rational coefficients.
pub type QPoly = polyspace::SparsePoly<Q>;

pub use coxeter::{CParameter, CoxeterRealization, CoxeterType, WRep};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] exact::ExactError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource bound exceeded: {0}")]
    Bound(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
