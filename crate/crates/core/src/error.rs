//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Input errors raised by the library.
///
/// Every operation that takes user-controlled data validates it and reports
/// failures through this enum instead of panicking.
#[derive(Debug, Error)]
pub enum Error {
    /// Two values live over different prime moduli.
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    /// Two values live in ambient spaces of different rank.
    #[error("ambient rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    /// A numeric argument is outside its allowed range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A structured input (matrix, algebra, JSON object) is malformed.
    #[error("malformed input: {0}")]
    MalformedInput(String),

    /// The Artin-Schreier residue equation u^p - u = c has no solution in Z/p.
    ///
    /// Over Z/p this happens exactly when c != 0; over an algebraically
    /// closed residue field it could not. The obstruction is surfaced
    /// rather than silently absorbed.
    #[error("no Artin-Schreier residue solution: scalar part {0} is nonzero mod {1}")]
    NoResidueSolution(u64, u64),
}

pub type Result<T> = std::result::Result<T, Error>;
