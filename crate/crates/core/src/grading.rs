//! Linear forms on exponent vectors, λ-homogeneity, and pseudo-gradedness
//! certificates.
//!
//! A nonzero integer linear form λ grades monomials by λ(a) = Σ l_i a_i.
//! An element is λ-homogeneous when λ is constant on its support, and an
//! ideal generated by such elements is a λ-ideal. When the support lattice
//! of an ideal has rank below the variable count, an orthogonal form exists
//! and certifies the quotient pseudo-graded.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{lattice_of_ideal, IntegerLattice};
use crate::poly::{ExponentVec, LaurentPoly};

/// A nonzero integer linear form on Z^r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidArgument("linear form must be nonzero".into()));
        }
        Ok(LinearForm { coeffs })
    }

    /// Converts a big-integer vector (e.g. an orthogonal form from the
    /// lattice module) into a machine-integer linear form.
    pub fn from_bigints(v: &[BigInt]) -> Result<Self> {
        let coeffs: Vec<i64> = v
            .iter()
            .map(|x| {
                i64::try_from(x).map_err(|_| {
                    Error::InvalidArgument("linear form entry exceeds 64-bit range".into())
                })
            })
            .collect::<Result<_>>()?;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The weight λ(a) = Σ l_i a_i of an exponent vector.
    pub fn weight(&self, a: &[i64]) -> Result<i64> {
        if a.len() != self.coeffs.len() {
            return Err(Error::RankMismatch(a.len(), self.coeffs.len()));
        }
        let acc: i128 = self
            .coeffs
            .iter()
            .zip(a)
            .map(|(&l, &x)| l as i128 * x as i128)
            .sum();
        i64::try_from(acc).map_err(|_| Error::InvalidArgument("weight exceeds 64-bit range".into()))
    }
}

/// Witness that λ is constant on a support: the common weight and one
/// support element realizing it. The zero polynomial is homogeneous of
/// weight 0 with no anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneityWitness {
    pub weight: i64,
    pub anchor: Option<ExponentVec>,
}

/// Tests whether λ is constant on the support of f.
///
/// Returns the witness if so (f = 0 and monomials always qualify), `None`
/// when two support elements have different weights.
pub fn is_lambda_homogeneous(
    lambda: &LinearForm,
    f: &LaurentPoly,
) -> Result<Option<HomogeneityWitness>> {
    if f.num_vars() != lambda.len() {
        return Err(Error::RankMismatch(f.num_vars(), lambda.len()));
    }
    let mut witness: Option<HomogeneityWitness> = None;
    for (exp, _) in f.terms() {
        let w = lambda.weight(exp)?;
        match &witness {
            None => {
                witness = Some(HomogeneityWitness {
                    weight: w,
                    anchor: Some(exp.clone()),
                })
            }
            Some(prev) if prev.weight != w => return Ok(None),
            Some(_) => {}
        }
    }
    Ok(Some(witness.unwrap_or(HomogeneityWitness {
        weight: 0,
        anchor: None,
    })))
}

/// True iff every generator is λ-homogeneous (weights may differ between
/// generators).
pub fn verify_lambda_ideal(lambda: &LinearForm, gens: &[LaurentPoly]) -> Result<bool> {
    for g in gens {
        if is_lambda_homogeneous(lambda, g)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A pseudo-gradedness certificate: a linear form making every generator
/// homogeneous, with the per-generator weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoGradedCertificate {
    pub lambda: LinearForm,
    /// weight of each generator under lambda, in input order
    pub weights: Vec<i64>,
    /// set when the generator list was empty: the zero ideal is every λ's
    /// ideal, so the canonical certificate is vacuous
    pub zero_ideal: bool,
}

/// Searches for a pseudo-gradedness certificate for the ideal generated by
/// `gens` in r variables.
///
/// When the support lattice has rank < r, the canonical orthogonal form is
/// returned and is guaranteed to make every generator homogeneous. When the
/// rank equals r the criterion is inconclusive and `None` is returned; this
/// does not assert that no pseudo-grading exists.
pub fn pseudo_graded_certificate(
    r: usize,
    gens: &[LaurentPoly],
) -> Result<Option<PseudoGradedCertificate>> {
    if r == 0 {
        return Err(Error::InvalidArgument(
            "ambient variable count must be positive".into(),
        ));
    }
    if gens.is_empty() {
        let mut coeffs = vec![0i64; r];
        coeffs[0] = 1;
        return Ok(Some(PseudoGradedCertificate {
            lambda: LinearForm::new(coeffs)?,
            weights: vec![],
            zero_ideal: true,
        }));
    }
    let lattice = lattice_of_ideal(r, gens)?;
    certificate_from_lattice(&lattice, gens)
}

/// Certificate from an already-computed support lattice (shared with the
/// binomial/toric module, where the lattice aggregates several sources).
pub fn certificate_from_lattice(
    lattice: &IntegerLattice,
    gens: &[LaurentPoly],
) -> Result<Option<PseudoGradedCertificate>> {
    let Some(form) = lattice.orthogonal_form() else {
        return Ok(None);
    };
    let lambda = LinearForm::from_bigints(&form)?;
    let mut weights = Vec::with_capacity(gens.len());
    for g in gens {
        let witness = is_lambda_homogeneous(&lambda, g)?.ok_or_else(|| {
            Error::InvalidArgument(
                "generator support is not contained in the supplied lattice's cosets".into(),
            )
        })?;
        weights.push(witness.weight);
    }
    Ok(Some(PseudoGradedCertificate {
        lambda,
        weights,
        zero_ideal: false,
    }))
}
