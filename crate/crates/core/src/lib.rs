//! Positive-characteristic commutative algebra at desk scale.
//!
//! The crate works over prime fields Z/p and provides:
//!
//! - exact sparse Laurent-polynomial arithmetic ([`poly`]);
//! - integer support lattices in Hermite normal form ([`lattice`]);
//! - λ-homogeneity and pseudo-gradedness certificates ([`grading`]);
//! - generalized-binomial Hasse-Schmidt families and verification engines
//!   for their identities ([`hasse_schmidt`]);
//! - binomial/toric ideals and their rank arithmetic ([`toric`]);
//! - finite-length modules over truncated local algebras: Frobenius
//!   transforms, endomorphism algebras, idempotent search, Kodaira-Spencer
//!   kernels, and Artin-Schreier idempotent extraction ([`modfin`]).
//!
//! All values are immutable after construction and every operation is a
//! pure function, so everything is `Send + Sync`.

pub mod error;
pub mod fp;
pub mod grading;
pub mod hasse_schmidt;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod modfin;
pub mod poly;
pub mod sample;
pub mod toric;

pub use error::{Error, Result};

#[cfg(test)]
mod concurrency_tests {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_are_shareable_across_threads() {
        assert_send_sync::<crate::poly::LaurentPoly>();
        assert_send_sync::<crate::poly::TruncatedSeries>();
        assert_send_sync::<crate::lattice::IntegerLattice>();
        assert_send_sync::<crate::grading::LinearForm>();
        assert_send_sync::<crate::hasse_schmidt::HSFamily>();
        assert_send_sync::<crate::toric::BinomialIdeal>();
        assert_send_sync::<crate::modfin::FiniteAlgebra>();
        assert_send_sync::<crate::modfin::FiniteModule>();
        assert_send_sync::<crate::modfin::Endomorphism>();
    }
}
