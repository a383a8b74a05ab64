//! Dense matrices and subspaces over Z/p.
//!
//! Everything here is exact arithmetic on small matrices: reduced row
//! echelon form, kernels, linear solving, and canonical subspace bases.
//! Subspaces of (Z/p)^n are represented by their reduced row-echelon basis,
//! which is unique, so subspace equality is vector equality.

use crate::error::{Error, Result};
use crate::fp;

/// A dense matrix over Z/p, row-major, entries canonical in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    p: u64,
    nrows: usize,
    ncols: usize,
    data: Vec<u64>,
}

impl FpMat {
    pub fn zeros(p: u64, nrows: usize, ncols: usize) -> Self {
        FpMat {
            p,
            nrows,
            ncols,
            data: vec![0; nrows * ncols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn scalar(p: u64, n: usize, c: u64) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, c % p);
        }
        m
    }

    /// Builds from rows of signed integers, reducing mod p.
    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(p, nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::MalformedInput("ragged matrix rows".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, fp::reduce_signed(x, p));
            }
        }
        Ok(m)
    }

    pub fn from_canonical_rows(p: u64, rows: &[Vec<u64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(p, nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::MalformedInput("ragged matrix rows".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                if x >= p {
                    return Err(Error::MalformedInput(format!(
                        "matrix entry {x} not reduced mod {p}"
                    )));
                }
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<u64>> {
        (0..self.nrows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major flattening; the coordinate order used by the linear-system
    /// builders below.
    pub fn flatten(&self) -> Vec<u64> {
        self.data.clone()
    }

    pub fn unflatten(p: u64, nrows: usize, ncols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), nrows * ncols);
        FpMat {
            p,
            nrows,
            ncols,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Some(c) when the matrix is c times the identity.
    pub fn as_scalar(&self) -> Option<u64> {
        if self.nrows != self.ncols || self.nrows == 0 {
            return None;
        }
        let c = self.get(0, 0);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let want = if i == j { c } else { 0 };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| fp::add_mod(a, b, self.p))
            .collect();
        FpMat {
            p: self.p,
            nrows: self.nrows,
            ncols: self.ncols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| fp::sub_mod(a, b, self.p))
            .collect();
        FpMat {
            p: self.p,
            nrows: self.nrows,
            ncols: self.ncols,
            data,
        }
    }

    pub fn scalar_mul(&self, c: u64) -> Self {
        let c = c % self.p;
        let data = self
            .data
            .iter()
            .map(|&a| fp::mul_mod(a, c, self.p))
            .collect();
        FpMat {
            p: self.p,
            nrows: self.nrows,
            ncols: self.ncols,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows);
        let mut out = Self::zeros(self.p, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.ncols {
                    let v = fp::add_mod(
                        out.get(i, j),
                        fp::mul_mod(a, other.get(k, j), self.p),
                        self.p,
                    );
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.ncols {
                    acc = fp::add_mod(acc, fp::mul_mod(self.get(i, j), v[j], self.p), self.p);
                }
                acc
            })
            .collect()
    }

    /// Matrix power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.nrows, self.ncols);
        let mut acc = Self::identity(self.p, self.nrows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.p, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Reduced row echelon form together with the pivot column of each
    /// nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.ncols {
            if row == m.nrows {
                break;
            }
            let Some(pr) = (row..m.nrows).find(|&i| m.get(i, col) != 0) else {
                continue;
            };
            for j in 0..m.ncols {
                let tmp = m.get(row, j);
                m.set(row, j, m.get(pr, j));
                m.set(pr, j, tmp);
            }
            let inv = fp::inv_mod(m.get(row, col), p).expect("pivot nonzero");
            for j in 0..m.ncols {
                m.set(row, j, fp::mul_mod(m.get(row, j), inv, p));
            }
            for i in 0..m.nrows {
                if i != row && m.get(i, col) != 0 {
                    let factor = m.get(i, col);
                    for j in 0..m.ncols {
                        let v = fp::sub_mod(m.get(i, j), fp::mul_mod(factor, m.get(row, j), p), p);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : Ax = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in (0..self.ncols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![0u64; self.ncols];
            v[free] = 1;
            for (row_idx, &pc) in pivots.iter().enumerate() {
                v[pc] = fp::neg_mod(r.get(row_idx, free), p);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `Ax = b` (free variables set to zero), or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.nrows);
        let mut aug = FpMat::zeros(self.p, self.nrows, self.ncols + 1);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.ncols, b[i] % self.p);
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.ncols) {
            return None;
        }
        let mut x = vec![0u64; self.ncols];
        for (row_idx, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row_idx, self.ncols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut aug = FpMat::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = FpMat::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// Matrix of the linear map F -> X·F on row-major-flattened m×m matrices.
pub fn lmul_matrix(x: &FpMat) -> FpMat {
    let m = x.nrows();
    let p = x.p();
    let mut out = FpMat::zeros(p, m * m, m * m);
    for i in 0..m {
        for j in 0..m {
            for a in 0..m {
                // coefficient of F[a][j] in (X F)[i][j] is X[i][a]
                out.set(i * m + j, a * m + j, x.get(i, a));
            }
        }
    }
    out
}

/// Matrix of the linear map F -> F·X on row-major-flattened m×m matrices.
pub fn rmul_matrix(x: &FpMat) -> FpMat {
    let m = x.nrows();
    let p = x.p();
    let mut out = FpMat::zeros(p, m * m, m * m);
    for i in 0..m {
        for j in 0..m {
            for b in 0..m {
                // coefficient of F[i][b] in (F X)[i][j] is X[b][j]
                out.set(i * m + j, i * m + b, x.get(b, j));
            }
        }
    }
    out
}

/// Stacks matrices vertically.
pub fn vstack(p: u64, blocks: &[FpMat]) -> FpMat {
    let ncols = blocks.first().map_or(0, |b| b.ncols());
    let nrows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = FpMat::zeros(p, nrows, ncols);
    let mut at = 0;
    for b in blocks {
        assert_eq!(b.ncols(), ncols);
        for i in 0..b.nrows() {
            for j in 0..ncols {
                out.set(at + i, j, b.get(i, j));
            }
        }
        at += b.nrows();
    }
    out
}

/// Canonical basis (reduced row echelon, zero rows dropped) of the span of
/// the given vectors.
pub fn row_space_basis(p: u64, vectors: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if vectors.is_empty() {
        return vec![];
    }
    let m = FpMat::from_canonical_rows(p, vectors).expect("canonical vectors");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(p: u64, basis: &[Vec<u64>], v: &[u64]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut rows: Vec<Vec<u64>> = basis.to_vec();
    let before = row_space_basis(p, &rows).len();
    rows.push(v.to_vec());
    let after = row_space_basis(p, &rows).len();
    before == after
}

/// Canonical basis of the intersection of two spans.
pub fn subspace_intersection(p: u64, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let n = a[0].len();
    // columns: coefficients on a-basis then b-basis; rows: ambient coords
    let ka = a.len();
    let kb = b.len();
    let mut m = FpMat::zeros(p, n, ka + kb);
    for (j, v) in a.iter().enumerate() {
        for i in 0..n {
            m.set(i, j, v[i]);
        }
    }
    for (j, v) in b.iter().enumerate() {
        for i in 0..n {
            m.set(i, ka + j, fp::neg_mod(v[i], p));
        }
    }
    let kernel = m.kernel_basis();
    let vectors: Vec<Vec<u64>> = kernel
        .iter()
        .map(|coeffs| {
            let mut v = vec![0u64; n];
            for (j, basis_vec) in a.iter().enumerate() {
                for i in 0..n {
                    v[i] = fp::add_mod(v[i], fp::mul_mod(coeffs[j], basis_vec[i], p), p);
                }
            }
            v
        })
        .collect();
    row_space_basis(p, &vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let m = FpMat::from_rows(5, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        // rref rows are canonical
        assert_eq!(r.row(0), &[1, 0, 1]);
        assert_eq!(r.row(1), &[0, 1, 1]);
    }

    #[test]
    fn kernel_and_solve() {
        let m = FpMat::from_rows(7, &[vec![1, 2, 3], vec![0, 1, 1]]).unwrap();
        for k in m.kernel_basis() {
            assert!(m.mul_vec(&k).iter().all(|&x| x == 0));
        }
        assert_eq!(m.kernel_basis().len(), 1);

        let b = vec![1, 2];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);

        // inconsistent system
        let sing = FpMat::from_rows(7, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert!(sing.solve(&[1, 3]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = FpMat::from_rows(5, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMat::identity(5, 2));
        assert_eq!(inv.mul(&m), FpMat::identity(5, 2));

        let sing = FpMat::from_rows(5, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn power_and_scalar_detection() {
        let n = FpMat::from_rows(3, &[vec![0, 1], vec![0, 0]]).unwrap();
        assert!(n.pow(2).is_zero());
        assert_eq!(FpMat::identity(3, 2).pow(10), FpMat::identity(3, 2));
        assert_eq!(FpMat::scalar(3, 2, 2).as_scalar(), Some(2));
        assert_eq!(n.as_scalar(), None);
    }

    #[test]
    fn kronecker_style_maps() {
        let p = 5;
        let x = FpMat::from_rows(p, &[vec![1, 2], vec![3, 4]]).unwrap();
        let f = FpMat::from_rows(p, &[vec![2, 0], vec![1, 1]]).unwrap();
        let lf = lmul_matrix(&x).mul_vec(&f.flatten());
        assert_eq!(lf, x.mul(&f).flatten());
        let rf = rmul_matrix(&x).mul_vec(&f.flatten());
        assert_eq!(rf, f.mul(&x).flatten());
    }

    #[test]
    fn subspace_operations() {
        let p = 5;
        let a = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let b = vec![vec![0, 1, 0], vec![0, 0, 1]];
        let inter = subspace_intersection(p, &a, &b);
        assert_eq!(inter, vec![vec![0, 1, 0]]);

        assert!(in_span(p, &a, &[2, 3, 0]));
        assert!(!in_span(p, &a, &[0, 0, 1]));
        assert!(in_span(p, &a, &[0, 0, 0]));

        // span is order-independent in canonical form
        let c1 = row_space_basis(p, &[vec![1, 1, 0], vec![0, 1, 1]]);
        let c2 = row_space_basis(p, &[vec![0, 1, 1], vec![1, 2, 1]]);
        assert_eq!(c1, c2);
    }
}
