//! Derivations of a finite algebra, skew derivations on modules, and
//! Kodaira-Spencer kernels.
//!
//! A derivation is a linear D with D(ab) = aD(b) + D(a)b and D(1) = 0. A
//! D-skew derivation on a module M is a linear f with f(ax) = af(x) + D(a)x,
//! i.e. [f, X_a] = X_D(a) on action matrices. The Kodaira-Spencer kernel of
//! M collects the derivations admitting such an f; it is computed from one
//! joint linear system in (f, D) and intersects over direct summands.

use crate::error::{Error, Result};
use crate::fp;
use crate::linalg::{lmul_matrix, rmul_matrix, row_space_basis, vstack, FpMat};

use super::{FiniteAlgebra, FiniteModule};

/// A derivation of the algebra, as a matrix on basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDerivation {
    matrix: FpMat,
}

impl AlgebraDerivation {
    /// Validates the Leibniz rule on all basis pairs and D(1) = 0.
    pub fn new(algebra: &FiniteAlgebra, matrix: FpMat) -> Result<Self> {
        let n = algebra.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::MalformedInput(
                "derivation matrix must be square of the algebra dimension".into(),
            ));
        }
        if !is_derivation(algebra, &matrix) {
            return Err(Error::InvalidArgument(
                "matrix does not satisfy the Leibniz rule".into(),
            ));
        }
        Ok(AlgebraDerivation { matrix })
    }

    pub fn matrix(&self) -> &FpMat {
        &self.matrix
    }

    /// Image of a basis element, as an algebra element.
    pub fn apply_basis(&self, i: usize) -> Vec<u64> {
        (0..self.matrix.nrows())
            .map(|a| self.matrix.get(a, i))
            .collect()
    }
}

/// Leibniz check used by the constructor and by tests on matrix powers.
pub(crate) fn is_derivation(algebra: &FiniteAlgebra, d: &FpMat) -> bool {
    let n = algebra.dim();
    let unit = algebra.unit_index();
    if (0..n).any(|a| d.get(a, unit) != 0) {
        return false;
    }
    let col = |j: usize| -> Vec<u64> { (0..n).map(|a| d.get(a, j)).collect() };
    for i in 0..n {
        for j in 0..n {
            // D(e_i e_j) expanded through linearity of D
            let mut lhs = vec![0u64; n];
            for (k, &c) in algebra.structure()[i][j].iter().enumerate() {
                if c != 0 {
                    for (a, &dk) in col(k).iter().enumerate() {
                        lhs[a] = fp::add_mod(lhs[a], fp::mul_mod(c, dk, algebra.p()), algebra.p());
                    }
                }
            }
            let rhs_left = algebra.mul_elements(&algebra.basis_element(i), &col(j));
            let rhs_right = algebra.mul_elements(&col(i), &algebra.basis_element(j));
            let rhs: Vec<u64> = rhs_left
                .iter()
                .zip(&rhs_right)
                .map(|(&a, &b)| fp::add_mod(a, b, algebra.p()))
                .collect();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Basis of the derivation space Der(A), from the Leibniz linear system
/// with D(1) = 0.
pub fn derivations(algebra: &FiniteAlgebra) -> Vec<AlgebraDerivation> {
    let n = algebra.dim();
    let p = algebra.p();
    // unknowns: D[a][b] at flat index a*n + b
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for i in 0..n {
        for j in 0..=i {
            let xi = algebra.mult_matrix(&algebra.basis_element(i));
            let xj = algebra.mult_matrix(&algebra.basis_element(j));
            let v = &algebra.structure()[i][j];
            for a in 0..n {
                let mut row = vec![0u64; n * n];
                for b in 0..n {
                    row[a * n + b] = fp::add_mod(row[a * n + b], v[b], p);
                    let idx = b * n + j;
                    row[idx] = fp::sub_mod(row[idx], xi.get(a, b), p);
                    let idx = b * n + i;
                    row[idx] = fp::sub_mod(row[idx], xj.get(a, b), p);
                }
                rows.push(row);
            }
        }
    }
    let unit = algebra.unit_index();
    for a in 0..n {
        let mut row = vec![0u64; n * n];
        row[a * n + unit] = 1;
        rows.push(row);
    }
    let system = FpMat::from_canonical_rows(p, &rows).expect("rows share length");
    system
        .kernel_basis()
        .into_iter()
        .map(|flat| AlgebraDerivation {
            matrix: FpMat::unflatten(p, n, n, flat),
        })
        .collect()
}

/// The action matrix of D(e_i) on a module, for each basis element.
fn skew_targets(module: &FiniteModule, d: &FpMat) -> Vec<FpMat> {
    let n = module.algebra().dim();
    (0..n)
        .map(|i| {
            let coords: Vec<u64> = (0..n).map(|a| d.get(a, i)).collect();
            module.apply_element(&coords)
        })
        .collect()
}

/// A linear f on M with [f, X_a] = X_D(a) for every algebra basis element,
/// or `None` when the affine system is inconsistent. The solution returned
/// is the canonical one with free variables set to zero.
pub fn skew_derivation_solve(module: &FiniteModule, d: &AlgebraDerivation) -> Option<FpMat> {
    let p = module.p();
    let m = module.dim();
    let blocks: Vec<FpMat> = module
        .actions()
        .iter()
        .map(|x| rmul_matrix(x).sub(&lmul_matrix(x)))
        .collect();
    let system = vstack(p, &blocks);
    let mut rhs = Vec::with_capacity(system.nrows());
    for target in skew_targets(module, d.matrix()) {
        rhs.extend(target.flatten());
    }
    system
        .solve(&rhs)
        .map(|flat| FpMat::unflatten(p, m, m, flat))
}

/// The Kodaira-Spencer kernel of a module: the derivations D for which a
/// D-skew derivation exists on M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KodairaSpencerKernel {
    /// canonical coordinates with respect to `derivations(A)`
    pub coords: Vec<Vec<u64>>,
    /// the corresponding derivations
    pub basis: Vec<AlgebraDerivation>,
}

impl KodairaSpencerKernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Computes the Kodaira-Spencer kernel from one joint linear system in
/// (f, D): unknowns are the entries of f plus coordinates on a derivation
/// basis, equations are [f, X_(e_i)] = X_D(e_i) for all i. The solution
/// space is then projected onto the derivation coordinates.
pub fn ks_kernel(module: &FiniteModule) -> KodairaSpencerKernel {
    let algebra = module.algebra();
    let p = module.p();
    let n = algebra.dim();
    let m = module.dim();
    let der_basis = derivations(algebra);
    let t = der_basis.len();
    // column layout: m*m entries of f, then t derivation coordinates
    let commutators: Vec<FpMat> = module
        .actions()
        .iter()
        .map(|x| rmul_matrix(x).sub(&lmul_matrix(x)))
        .collect();
    let targets_per_derivation: Vec<Vec<FpMat>> = der_basis
        .iter()
        .map(|d| skew_targets(module, d.matrix()))
        .collect();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for i in 0..n {
        for entry in 0..m * m {
            let mut row = vec![0u64; m * m + t];
            for c in 0..m * m {
                row[c] = commutators[i].get(entry, c);
            }
            for (j, targets) in targets_per_derivation.iter().enumerate() {
                row[m * m + j] = fp::neg_mod(targets[i].flatten()[entry], p);
            }
            rows.push(row);
        }
    }
    let coords = if rows.is_empty() {
        // zero module: every derivation lifts
        (0..t)
            .map(|j| {
                let mut v = vec![0u64; t];
                v[j] = 1;
                v
            })
            .collect()
    } else {
        let system = FpMat::from_canonical_rows(p, &rows).expect("rows share length");
        let projected: Vec<Vec<u64>> = system
            .kernel_basis()
            .into_iter()
            .map(|sol| sol[m * m..].to_vec())
            .collect();
        row_space_basis(p, &projected)
    };
    let basis = coords
        .iter()
        .map(|coeffs| {
            let mut mat = FpMat::zeros(p, n, n);
            for (j, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    mat = mat.add(&der_basis[j].matrix().scalar_mul(c));
                }
            }
            AlgebraDerivation { matrix: mat }
        })
        .collect();
    KodairaSpencerKernel { coords, basis }
}
