//! Finite-length modules: action matrices, Frobenius transforms, direct
//! sums, and endomorphism algebras.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{lmul_matrix, rmul_matrix, vstack, FpMat};

use super::FiniteAlgebra;

/// A module over a [`FiniteAlgebra`]: a Z/p-space of dimension m with one
/// m×m action matrix per algebra basis element, forming a unital
/// representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModule {
    algebra: Arc<FiniteAlgebra>,
    dim: usize,
    actions: Vec<FpMat>,
}

impl FiniteModule {
    /// Validates that the actions form a unital representation: the unit
    /// acts as the identity and X_i X_j realizes the structure constants.
    pub fn new(algebra: Arc<FiniteAlgebra>, actions: Vec<FpMat>) -> Result<Self> {
        let n = algebra.dim();
        if actions.len() != n {
            return Err(Error::MalformedInput(format!(
                "expected {n} action matrices, got {}",
                actions.len()
            )));
        }
        let dim = actions.first().map_or(0, FpMat::nrows);
        for a in &actions {
            if a.nrows() != dim || a.ncols() != dim {
                return Err(Error::MalformedInput(
                    "action matrices must be square of equal size".into(),
                ));
            }
            if a.p() != algebra.p() {
                return Err(Error::ModulusMismatch(a.p(), algebra.p()));
            }
        }
        let module = FiniteModule {
            algebra,
            dim,
            actions,
        };
        if module.actions[module.algebra.unit_index()] != FpMat::identity(module.p(), dim) {
            return Err(Error::MalformedInput(
                "unit must act as the identity".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                let product = module.actions[i].mul(&module.actions[j]);
                let expected = module.apply_element(&module.algebra.structure()[i][j]);
                if product != expected {
                    return Err(Error::MalformedInput(format!(
                        "actions do not respect the product of basis elements {i} and {j}"
                    )));
                }
            }
        }
        Ok(module)
    }

    /// The algebra as a module over itself, via left multiplication.
    pub fn regular(algebra: Arc<FiniteAlgebra>) -> Self {
        let actions = (0..algebra.dim())
            .map(|i| algebra.mult_matrix(&algebra.basis_element(i)))
            .collect();
        FiniteModule {
            dim: algebra.dim(),
            algebra,
            actions,
        }
    }

    /// The residue field k = A/m as a module, for algebras whose non-unit
    /// basis elements span the maximal ideal.
    pub fn residue_field(algebra: Arc<FiniteAlgebra>) -> Result<Self> {
        let p = algebra.p();
        let unit = algebra.unit_index();
        let actions = (0..algebra.dim())
            .map(|i| {
                if i == unit {
                    FpMat::identity(p, 1)
                } else {
                    FpMat::zeros(p, 1, 1)
                }
            })
            .collect();
        Self::new(algebra, actions)
    }

    /// Block-diagonal direct sum; both summands must live over the same
    /// algebra.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::MalformedInput(
                "direct sum requires the same base algebra".into(),
            ));
        }
        let p = self.p();
        let m = self.dim + other.dim;
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut block = FpMat::zeros(p, m, m);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        block.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        block.set(self.dim + i, self.dim + j, b.get(i, j));
                    }
                }
                block
            })
            .collect();
        Ok(FiniteModule {
            algebra: self.algebra.clone(),
            dim: m,
            actions,
        })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> Arc<FiniteAlgebra> {
        self.algebra.clone()
    }

    pub fn p(&self) -> u64 {
        self.algebra.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[FpMat] {
        &self.actions
    }

    pub fn action(&self, i: usize) -> &FpMat {
        &self.actions[i]
    }

    /// The action matrix of an arbitrary algebra element.
    pub fn apply_element(&self, coords: &[u64]) -> FpMat {
        let mut acc = FpMat::zeros(self.p(), self.dim, self.dim);
        for (k, &c) in coords.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.actions[k].scalar_mul(c));
            }
        }
        acc
    }

    /// Whether a matrix commutes with every action, i.e. is module-linear.
    pub fn is_endomorphism(&self, mat: &FpMat) -> bool {
        mat.nrows() == self.dim
            && mat.ncols() == self.dim
            && self.actions.iter().all(|x| mat.commutes_with(x))
    }

    /// The Frobenius transform: same underlying space, with the basis
    /// element e acting as e^p did. Scalars in Z/p are fixed by Frobenius,
    /// so the dimension over Z/p is unchanged.
    pub fn frobenius_transform(&self) -> Self {
        let actions = (0..self.algebra.dim())
            .map(|i| self.apply_element(&self.algebra.frobenius_of_basis(i)))
            .collect();
        FiniteModule {
            algebra: self.algebra.clone(),
            dim: self.dim,
            actions,
        }
    }

    pub fn iterated_frobenius(&self, n: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.frobenius_transform();
        }
        out
    }
}

/// A module endomorphism: a matrix commuting with every action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    matrix: FpMat,
}

impl Endomorphism {
    pub fn new(module: &FiniteModule, matrix: FpMat) -> Result<Self> {
        if !module.is_endomorphism(&matrix) {
            return Err(Error::InvalidArgument(
                "matrix does not commute with the module actions".into(),
            ));
        }
        Ok(Endomorphism { matrix })
    }

    pub fn matrix(&self) -> &FpMat {
        &self.matrix
    }

    pub fn is_idempotent(&self) -> bool {
        self.matrix.mul(&self.matrix) == self.matrix
    }

    pub fn is_trivial(&self) -> bool {
        let m = self.matrix.nrows();
        self.matrix.is_zero() || self.matrix == FpMat::identity(self.matrix.p(), m)
    }
}

/// Basis of the endomorphism algebra End(M): the commutant of the action
/// matrices, solved as one linear system over Z/p.
pub fn endomorphism_algebra(module: &FiniteModule) -> Vec<Endomorphism> {
    let p = module.p();
    let m = module.dim();
    if m == 0 {
        return vec![];
    }
    let blocks: Vec<FpMat> = module
        .actions()
        .iter()
        .map(|x| rmul_matrix(x).sub(&lmul_matrix(x)))
        .collect();
    let system = vstack(p, &blocks);
    system
        .kernel_basis()
        .into_iter()
        .map(|flat| Endomorphism {
            matrix: FpMat::unflatten(p, m, m, flat),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers(p: u64) -> Arc<FiniteAlgebra> {
        Arc::new(FiniteAlgebra::truncated(p, 1, 2, &[]).unwrap())
    }

    #[test]
    fn regular_module_is_valid() {
        let a = dual_numbers(2);
        let m = FiniteModule::regular(a.clone());
        let revalidated = FiniteModule::new(a, m.actions().to_vec());
        assert!(revalidated.is_ok());
    }

    #[test]
    fn frobenius_kills_nilpotents() {
        // over Z/2[x]/(x^2), the transform sends the x-action to the
        // x^2-action, which is zero
        let m = FiniteModule::regular(dual_numbers(2));
        let f = m.frobenius_transform();
        assert!(f.action(1).is_zero());
        assert_eq!(f.dim(), m.dim());
    }

    #[test]
    fn frobenius_fixes_residue_field() {
        let m = FiniteModule::residue_field(dual_numbers(3)).unwrap();
        assert_eq!(m.frobenius_transform(), m);
    }

    #[test]
    fn frobenius_preserves_dimension() {
        let a = Arc::new(FiniteAlgebra::truncated(3, 2, 3, &[vec![1, 1]]).unwrap());
        let mut m = FiniteModule::regular(a);
        for _ in 0..3 {
            let next = m.frobenius_transform();
            assert_eq!(next.dim(), m.dim());
            m = next;
        }
    }

    #[test]
    fn endomorphisms_of_free_rank_one() {
        // End of the regular module is the algebra itself: dimension 2
        let m = FiniteModule::regular(dual_numbers(5));
        let endos = endomorphism_algebra(&m);
        assert_eq!(endos.len(), 2);
        for e in &endos {
            assert!(m.is_endomorphism(e.matrix()));
        }
    }

    #[test]
    fn endomorphisms_of_plane() {
        // k^2 with zero actions: the full 2x2 matrix algebra
        let a = dual_numbers(3);
        let k = FiniteModule::residue_field(a).unwrap();
        let plane = k.direct_sum(&k).unwrap();
        assert_eq!(endomorphism_algebra(&plane).len(), 4);
        assert_eq!(endomorphism_algebra(&k).len(), 1);
    }

    #[test]
    fn direct_sum_needs_shared_algebra() {
        let m1 = FiniteModule::regular(dual_numbers(2));
        let other = Arc::new(FiniteAlgebra::truncated(2, 1, 3, &[]).unwrap());
        let m2 = FiniteModule::regular(other);
        assert!(m1.direct_sum(&m2).is_err());
    }

    #[test]
    fn invalid_actions_rejected() {
        let a = dual_numbers(2);
        // x acting as identity violates x^2 = 0
        let bad = vec![FpMat::identity(2, 2), FpMat::identity(2, 2)];
        assert!(FiniteModule::new(a, bad).is_err());
    }
}
