//! Integer linear algebra over Z^r: Hermite normal form, subgroup rank,
//! orthogonal complements, and support lattices of Laurent polynomials.
//!
//! The HNF convention is row-style with positive pivots and entries above
//! each pivot reduced into `[0, pivot)`, so a lattice has exactly one basis
//! and lattice equality is structural equality. Intermediate values are
//! arbitrary-precision; coefficient growth during elimination is real even
//! for small inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Row operations applied in lockstep to a matrix and an optional transform.
struct RowOps {
    rows: Vec<Vec<BigInt>>,
    transform: Option<Vec<Vec<BigInt>>>,
}

impl RowOps {
    fn swap(&mut self, i: usize, j: usize) {
        if i != j {
            self.rows.swap(i, j);
            if let Some(t) = &mut self.transform {
                t.swap(i, j);
            }
        }
    }

    fn negate(&mut self, i: usize) {
        for x in &mut self.rows[i] {
            *x = -std::mem::take(x);
        }
        if let Some(t) = &mut self.transform {
            for x in &mut t[i] {
                *x = -std::mem::take(x);
            }
        }
    }

    /// rows[i] -= q * rows[j]
    fn sub_mul(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let (a, b) = index_two(&mut self.rows, i, j);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x -= q * y;
        }
        if let Some(t) = &mut self.transform {
            let (a, b) = index_two(t, i, j);
            for (x, y) in a.iter_mut().zip(b.iter()) {
                *x -= q * y;
            }
        }
    }
}

fn index_two<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    assert_ne!(i, j);
    if i < j {
        let (lo, hi) = v.split_at_mut(j);
        (&mut lo[i], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(i);
        (&mut hi[0], &mut lo[j])
    }
}

/// In-place row HNF; returns the rank. On exit `rows[..rank]` is the
/// canonical basis and `rows[rank..]` are zero. When a transform matrix is
/// supplied it receives the same unimodular row operations.
fn hermite_normal_form(
    rows: Vec<Vec<BigInt>>,
    transform: Option<Vec<Vec<BigInt>>>,
) -> (Vec<Vec<BigInt>>, Option<Vec<Vec<BigInt>>>, usize) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let nrows = rows.len();
    let mut ops = RowOps { rows, transform };
    let mut pivot = 0;
    for col in 0..ncols {
        if pivot == nrows {
            break;
        }
        // gcd elimination below the pivot position
        loop {
            let mut min_idx: Option<usize> = None;
            for i in pivot..nrows {
                if !ops.rows[i][col].is_zero()
                    && min_idx.map_or(true, |j| ops.rows[i][col].abs() < ops.rows[j][col].abs())
                {
                    min_idx = Some(i);
                }
            }
            let Some(mi) = min_idx else { break };
            ops.swap(pivot, mi);
            let mut survivors = false;
            for i in pivot + 1..nrows {
                if !ops.rows[i][col].is_zero() {
                    let q = &ops.rows[i][col] / &ops.rows[pivot][col];
                    ops.sub_mul(i, pivot, &q);
                    if !ops.rows[i][col].is_zero() {
                        survivors = true;
                    }
                }
            }
            if !survivors {
                break;
            }
        }
        if !ops.rows[pivot][col].is_zero() {
            if ops.rows[pivot][col].is_negative() {
                ops.negate(pivot);
            }
            let pivot_val = ops.rows[pivot][col].clone();
            for i in 0..pivot {
                let q = ops.rows[i][col].div_floor(&pivot_val);
                ops.sub_mul(i, pivot, &q);
            }
            pivot += 1;
        }
    }
    (ops.rows, ops.transform, pivot)
}

/// A subgroup of Z^r held in canonical Hermite-normal-form basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    r: usize,
    basis: Vec<Vec<BigInt>>,
}

impl IntegerLattice {
    /// The zero subgroup of Z^r.
    pub fn zero(r: usize) -> Self {
        IntegerLattice { r, basis: vec![] }
    }

    /// All of Z^r.
    pub fn full(r: usize) -> Self {
        let basis = (0..r)
            .map(|i| {
                let mut row = vec![BigInt::zero(); r];
                row[i] = BigInt::from(1);
                row
            })
            .collect();
        IntegerLattice { r, basis }
    }

    /// Canonicalizes a generating set: the HNF of the rows. Ragged rows are
    /// rejected.
    pub fn from_generators(r: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        for row in &rows {
            if row.len() != r {
                return Err(Error::MalformedInput(format!(
                    "generator of length {} in ambient Z^{}",
                    row.len(),
                    r
                )));
            }
        }
        let (rows, _, rank) = hermite_normal_form(rows, None);
        Ok(IntegerLattice {
            r,
            basis: rows[..rank].to_vec(),
        })
    }

    pub fn from_i64_rows(r: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_generators(
            r,
            rows.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn ambient_rank(&self) -> usize {
        self.r
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis rows as machine integers; errors if an entry does not fit.
    pub fn basis_i64(&self) -> Result<Vec<Vec<i64>>> {
        self.basis
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        i64::try_from(x).map_err(|_| {
                            Error::InvalidArgument(
                                "lattice entry exceeds 64-bit integer range".into(),
                            )
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Membership by reduction against the echelon basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.r {
            return false;
        }
        let mut v = v.to_vec();
        for row in &self.basis {
            let col = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("basis rows are nonzero");
            if !v[col].is_zero() {
                let (q, rem) = v[col].div_rem(&row[col]);
                if !rem.is_zero() {
                    return false;
                }
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x -= &q * y;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains(&v)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.r == other.r && self.basis.iter().all(|row| other.contains(row))
    }

    /// Sum of subgroups: the HNF of the concatenated bases.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.r != other.r {
            return Err(Error::RankMismatch(self.r, other.r));
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::from_generators(self.r, rows)
    }

    /// The sublattice of all vectors orthogonal to every basis row.
    ///
    /// Computed from the unimodular transform of the HNF of the transposed
    /// basis: rows of the transform that map to zero rows span the kernel.
    /// The result is always saturated.
    pub fn orthogonal_complement(&self) -> Self {
        let k = self.basis.len();
        let m: Vec<Vec<BigInt>> = (0..self.r)
            .map(|i| (0..k).map(|j| self.basis[j][i].clone()).collect())
            .collect();
        let identity = IntegerLattice::full(self.r).basis;
        let (h, u, rank) = hermite_normal_form(m, Some(identity));
        debug_assert!(h[rank..].iter().all(|row| row.iter().all(Zero::is_zero)));
        let gens = u.expect("transform requested")[rank..].to_vec();
        Self::from_generators(self.r, gens).expect("kernel rows have ambient length")
    }

    /// A canonical nonzero primitive vector orthogonal to the lattice, or
    /// `None` when the lattice has full rank.
    ///
    /// Tie-breaking: first row of the HNF-canonical kernel basis, divided by
    /// the gcd of its entries, sign fixed so the first nonzero entry is
    /// positive.
    pub fn orthogonal_form(&self) -> Option<Vec<BigInt>> {
        if self.rank() == self.r {
            return None;
        }
        let complement = self.orthogonal_complement();
        let row = complement.basis.first()?.clone();
        Some(make_primitive(row))
    }

    /// Whether Z^r / L is torsion-free, tested by comparing L with its
    /// double orthogonal complement (the saturation).
    pub fn is_saturated(&self) -> bool {
        let saturation = self.orthogonal_complement().orthogonal_complement();
        *self == saturation
    }
}

/// Divides by the gcd of the entries and makes the first nonzero entry
/// positive. The zero vector is returned unchanged.
fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v;
    }
    for x in &mut v {
        *x = &*x / &g;
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut v {
                *x = -std::mem::take(x);
            }
        }
    }
    v
}

/// The support lattice of a polynomial: the subgroup generated by all
/// differences of support elements. Zero for monomials and for f = 0.
///
/// Differences are taken against the lexicographically least support element;
/// this generates the same subgroup as all pairwise differences.
pub fn lattice_of_poly(f: &LaurentPoly) -> IntegerLattice {
    let supp = f.support();
    let r = f.num_vars();
    let Some((anchor, rest)) = supp.split_first() else {
        return IntegerLattice::zero(r);
    };
    let gens: Vec<Vec<BigInt>> = rest
        .iter()
        .map(|a| {
            a.iter()
                .zip(anchor)
                .map(|(x, y)| BigInt::from(*x) - BigInt::from(*y))
                .collect()
        })
        .collect();
    IntegerLattice::from_generators(r, gens).expect("support vectors share length")
}

/// The lattice of an ideal: the sum of the generator lattices. An empty
/// generator list gives the zero lattice.
pub fn lattice_of_ideal(r: usize, gens: &[LaurentPoly]) -> Result<IntegerLattice> {
    let mut acc = IntegerLattice::zero(r);
    for g in gens {
        if g.num_vars() != r {
            return Err(Error::RankMismatch(g.num_vars(), r));
        }
        acc = acc.sum(&lattice_of_poly(g))?;
    }
    Ok(acc)
}

/// Whether f is a pseudo-m-nomial: rank of its support lattice is < m.
/// Every honest m-nomial passes, since m points have at most m-1 independent
/// differences.
pub fn pseudo_m_nomial_check(f: &LaurentPoly, m: usize) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "pseudo-m-nomial bound must be positive".into(),
        ));
    }
    Ok(lattice_of_poly(f).rank() < m)
}
