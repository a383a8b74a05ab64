//! Finite-dimensional commutative local algebras over Z/p and finite-length
//! modules over them.
//!
//! Complete local rings are modeled at desk scale by truncated algebras:
//! every statement verified here is a finite-level shadow of its power-series
//! counterpart, traded for exactness and total testability. The module
//! provides Frobenius transforms, endomorphism algebras, idempotent search
//! and certification, derivation spaces, Kodaira-Spencer kernels, and the
//! Artin-Schreier/Hensel idempotent construction.

mod algebra;
mod derivation;
mod idempotent;
mod module;

pub use algebra::FiniteAlgebra;
pub use derivation::{
    derivations, ks_kernel, skew_derivation_solve, AlgebraDerivation, KodairaSpencerKernel,
};
pub use idempotent::{
    artin_schreier_idempotent, f_decomposable_upto, find_idempotent, idempotent_search,
    ArtinSchreierIdempotent, IdempotentClass, IdempotentSearch,
};
pub use module::{endomorphism_algebra, Endomorphism, FiniteModule};
