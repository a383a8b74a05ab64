//! JSON wire formats for polynomials, ideals, lattices, and modules.
//!
//! Emitted JSON is canonical: polynomial terms in lexicographic exponent
//! order, struct fields in declaration order, so re-reading and re-emitting
//! a value reproduces it byte for byte.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp;
use crate::lattice::IntegerLattice;
use crate::linalg::FpMat;
use crate::modfin::{FiniteAlgebra, FiniteModule};
use crate::poly::LaurentPoly;

/// One polynomial term: coefficient in `[0, p)` and exponent vector.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub c: u64,
    pub e: Vec<i64>,
}

/// `{"p": ..., "vars": [...], "terms": [...]}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub p: u64,
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly(f: &LaurentPoly, vars: Option<Vec<String>>) -> Self {
        let vars = vars.unwrap_or_else(|| default_vars(f.num_vars()));
        let terms = f
            .terms()
            .map(|(e, c)| TermJson { c, e: e.clone() })
            .collect();
        PolyJson {
            p: f.p(),
            vars,
            terms,
        }
    }

    pub fn to_poly(&self) -> Result<LaurentPoly> {
        fp::check_prime(self.p)?;
        let r = self.vars.len();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.c == 0 {
                return Err(Error::MalformedInput(
                    "terms with c = 0 are rejected".into(),
                ));
            }
            if t.c >= self.p {
                return Err(Error::MalformedInput(format!(
                    "coefficient {} not reduced mod {}",
                    t.c, self.p
                )));
            }
            if t.e.len() != r {
                return Err(Error::MalformedInput(format!(
                    "exponent list of length {} does not match {} variables",
                    t.e.len(),
                    r
                )));
            }
            if t.e.iter().any(|&x| x.unsigned_abs() >= (1 << 31)) {
                return Err(Error::MalformedInput(
                    "exponent entries must satisfy |e| < 2^31".into(),
                ));
            }
            terms.push((t.e.clone(), t.c as i64));
        }
        LaurentPoly::from_terms(self.p, r, terms)
    }
}

/// `{"p": ..., "vars": [...], "gens": [[term, ...], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct IdealJson {
    pub p: u64,
    pub vars: Vec<String>,
    pub gens: Vec<Vec<TermJson>>,
}

impl IdealJson {
    pub fn from_gens(p: u64, gens: &[LaurentPoly], vars: Option<Vec<String>>) -> Result<Self> {
        let r = gens.first().map_or(0, LaurentPoly::num_vars);
        let vars = vars.unwrap_or_else(|| default_vars(r));
        let gens = gens
            .iter()
            .map(|g| {
                g.terms()
                    .map(|(e, c)| TermJson { c, e: e.clone() })
                    .collect()
            })
            .collect();
        Ok(IdealJson { p, vars, gens })
    }

    pub fn to_gens(&self) -> Result<(usize, Vec<LaurentPoly>)> {
        fp::check_prime(self.p)?;
        let r = self.vars.len();
        let mut out = Vec::with_capacity(self.gens.len());
        for gen in &self.gens {
            let poly = PolyJson {
                p: self.p,
                vars: self.vars.clone(),
                terms: gen.clone(),
            };
            out.push(poly.to_poly()?);
        }
        Ok((r, out))
    }
}

/// Lattice input `{"r": ..., "rows": [[...]]}`; output re-emits the rows
/// with the computed rank and HNF basis attached.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LatticeJson {
    pub r: usize,
    pub rows: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hnf: Option<Vec<Vec<i64>>>,
}

impl LatticeJson {
    pub fn input(r: usize, rows: Vec<Vec<i64>>) -> Self {
        LatticeJson {
            r,
            rows,
            rank: None,
            hnf: None,
        }
    }

    pub fn to_lattice(&self) -> Result<IntegerLattice> {
        IntegerLattice::from_i64_rows(self.r, &self.rows)
    }

    /// Re-emits the input rows together with rank and HNF basis.
    pub fn with_result(&self, lattice: &IntegerLattice) -> Result<Self> {
        Ok(LatticeJson {
            r: self.r,
            rows: self.rows.clone(),
            rank: Some(lattice.rank()),
            hnf: Some(lattice.basis_i64()?),
        })
    }
}

/// Algebra structure constants: `structure[i][j]` is the coordinate vector
/// of e_i * e_j. Matrices are row-major with entries in `[0, p)`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraJson {
    pub dim: usize,
    pub structure: Vec<Vec<Vec<u64>>>,
    pub unit: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// `{"p": ..., "algebra": {...}, "dim": m, "actions": [matrix, ...]}` with
/// an optional operator matrix `f` for the Artin-Schreier command.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleJson {
    pub p: u64,
    pub algebra: AlgebraJson,
    pub dim: usize,
    pub actions: Vec<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Vec<u64>>>,
}

impl ModuleJson {
    pub fn from_module(module: &FiniteModule) -> Self {
        let algebra = module.algebra();
        ModuleJson {
            p: module.p(),
            algebra: AlgebraJson {
                dim: algebra.dim(),
                structure: algebra.structure().to_vec(),
                unit: algebra.unit_index(),
                labels: Some(algebra.labels().to_vec()),
            },
            dim: module.dim(),
            actions: module.actions().iter().map(FpMat::rows_vec).collect(),
            f: None,
        }
    }

    pub fn to_module(&self) -> Result<FiniteModule> {
        fp::check_prime(self.p)?;
        let labels = self
            .algebra
            .labels
            .clone()
            .unwrap_or_else(|| (0..self.algebra.dim).map(|i| format!("e{i}")).collect());
        if labels.len() != self.algebra.dim {
            return Err(Error::MalformedInput(
                "label count does not match algebra dimension".into(),
            ));
        }
        let algebra = FiniteAlgebra::new(
            self.p,
            labels,
            self.algebra.structure.clone(),
            self.algebra.unit,
        )?;
        let actions = self
            .actions
            .iter()
            .map(|m| matrix_from_json(self.p, m))
            .collect::<Result<Vec<_>>>()?;
        for a in &actions {
            if a.nrows() != self.dim {
                return Err(Error::MalformedInput(
                    "action matrix size does not match module dimension".into(),
                ));
            }
        }
        FiniteModule::new(Arc::new(algebra), actions)
    }

    /// The optional operator matrix, validated against the module dimension.
    pub fn operator(&self) -> Result<Option<FpMat>> {
        self.f
            .as_ref()
            .map(|rows| {
                let m = matrix_from_json(self.p, rows)?;
                if m.nrows() != self.dim || m.ncols() != self.dim {
                    return Err(Error::MalformedInput(
                        "operator matrix size does not match module dimension".into(),
                    ));
                }
                Ok(m)
            })
            .transpose()
    }
}

pub fn matrix_from_json(p: u64, rows: &[Vec<u64>]) -> Result<FpMat> {
    FpMat::from_canonical_rows(p, rows)
}

pub fn matrix_to_json(m: &FpMat) -> Vec<Vec<u64>> {
    m.rows_vec()
}

fn default_vars(r: usize) -> Vec<String> {
    (0..r).map(|i| format!("x{i}")).collect()
}
