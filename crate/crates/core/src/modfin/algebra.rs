//! Finite-dimensional commutative algebras given by structure constants.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fp;
use crate::linalg::FpMat;

/// A commutative associative unital algebra over Z/p with a distinguished
/// basis. `structure[i][j]` holds the coordinates of e_i * e_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    p: u64,
    dim: usize,
    labels: Vec<String>,
    structure: Vec<Vec<Vec<u64>>>,
    unit: usize,
    /// exponent vectors of the basis, kept by the monomial constructors
    monomials: Option<Vec<Vec<u64>>>,
}

impl FiniteAlgebra {
    /// Validates commutativity, associativity on all basis triples, and the
    /// unit law before accepting the structure constants.
    pub fn new(
        p: u64,
        labels: Vec<String>,
        structure: Vec<Vec<Vec<u64>>>,
        unit: usize,
    ) -> Result<Self> {
        fp::check_prime(p)?;
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::MalformedInput("algebra must be nonzero".into()));
        }
        if unit >= dim {
            return Err(Error::MalformedInput(format!(
                "unit index {unit} out of range for dimension {dim}"
            )));
        }
        if structure.len() != dim
            || structure
                .iter()
                .any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(Error::MalformedInput(
                "structure constants must form a dim×dim×dim array".into(),
            ));
        }
        for row in &structure {
            for v in row {
                for &c in v {
                    if c >= p {
                        return Err(Error::MalformedInput(format!(
                            "structure constant {c} not reduced mod {p}"
                        )));
                    }
                }
            }
        }
        let alg = FiniteAlgebra {
            p,
            dim,
            labels,
            structure,
            unit,
            monomials: None,
        };
        for i in 0..dim {
            for j in 0..dim {
                if alg.structure[i][j] != alg.structure[j][i] {
                    return Err(Error::MalformedInput(format!(
                        "structure constants not commutative at ({i},{j})"
                    )));
                }
            }
            if alg.structure[alg.unit][i] != alg.basis_element(i) {
                return Err(Error::MalformedInput(format!(
                    "unit does not act as identity on basis element {i}"
                )));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let left = alg.mul_elements(&alg.structure[i][j], &alg.basis_element(k));
                    let right = alg.mul_elements(&alg.basis_element(i), &alg.structure[j][k]);
                    if left != right {
                        return Err(Error::MalformedInput(format!(
                            "structure constants not associative at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// The truncated algebra Z/p[x_1..x_r] / (m^order + monomial relations).
    ///
    /// Basis: monomials of total degree < order not divisible by any
    /// relation monomial, ordered by (degree, lex). Products that leave the
    /// basis truncate to zero.
    pub fn truncated(p: u64, r: usize, order: u32, relations: &[Vec<i64>]) -> Result<Self> {
        fp::check_prime(p)?;
        if order == 0 {
            return Err(Error::InvalidArgument(
                "truncation order must be positive".into(),
            ));
        }
        if r == 0 {
            return Err(Error::InvalidArgument(
                "variable count must be positive".into(),
            ));
        }
        let mut rels: Vec<Vec<u64>> = Vec::new();
        for rel in relations {
            if rel.len() != r {
                return Err(Error::RankMismatch(rel.len(), r));
            }
            if rel.iter().any(|&x| x < 0) {
                return Err(Error::MalformedInput(
                    "relation monomials must have nonnegative exponents".into(),
                ));
            }
            rels.push(rel.iter().map(|&x| x as u64).collect());
        }
        let divisible = |mono: &[u64]| {
            rels.iter()
                .any(|rel| rel.iter().zip(mono).all(|(a, b)| a <= b))
        };
        let mut monomials: Vec<Vec<u64>> = Vec::new();
        let mut frontier = vec![vec![0u64; r]];
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(vec![0u64; r]);
        while let Some(mono) = frontier.pop() {
            for i in 0..r {
                let mut next = mono.clone();
                next[i] += 1;
                if next.iter().sum::<u64>() < order as u64
                    && !divisible(&next)
                    && seen.insert(next.clone())
                {
                    frontier.push(next);
                }
            }
        }
        // the origin is excluded only if a relation divides it (degenerate)
        if divisible(&vec![0u64; r]) {
            return Err(Error::MalformedInput(
                "a relation divides the unit monomial".into(),
            ));
        }
        monomials.extend(seen);
        monomials.sort_by_key(|m| (m.iter().sum::<u64>(), m.clone()));
        Self::from_monomial_semigroup(p, monomials, order as u64, Some(divisible))
    }

    /// The truncated semigroup algebra on the given generators in N^u:
    /// basis is the semigroup elements of total degree < degree_bound, and
    /// products that reach the bound truncate to zero.
    pub fn truncated_semigroup(p: u64, generators: &[Vec<i64>], degree_bound: u32) -> Result<Self> {
        fp::check_prime(p)?;
        let u = generators
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidArgument("at least one generator required".into()))?;
        let mut gens: Vec<Vec<u64>> = Vec::new();
        for g in generators {
            if g.len() != u {
                return Err(Error::RankMismatch(g.len(), u));
            }
            if g.iter().any(|&x| x < 0) {
                return Err(Error::MalformedInput(
                    "semigroup generators must be nonnegative".into(),
                ));
            }
            gens.push(g.iter().map(|&x| x as u64).collect());
        }
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(vec![0u64; u]);
        let mut frontier = vec![vec![0u64; u]];
        while let Some(el) = frontier.pop() {
            for g in &gens {
                let next: Vec<u64> = el.iter().zip(g).map(|(a, b)| a + b).collect();
                if next.iter().sum::<u64>() < degree_bound as u64 && seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        let mut elements: Vec<Vec<u64>> = seen.into_iter().collect();
        elements.sort_by_key(|m| (m.iter().sum::<u64>(), m.clone()));
        Self::from_monomial_semigroup(p, elements, degree_bound as u64, None::<fn(&[u64]) -> bool>)
    }

    /// Shared construction: basis indexed by exponent vectors, product given
    /// by exponent addition with truncation to zero outside the basis.
    fn from_monomial_semigroup<F>(
        p: u64,
        monomials: Vec<Vec<u64>>,
        degree_bound: u64,
        excluded: Option<F>,
    ) -> Result<Self>
    where
        F: Fn(&[u64]) -> bool,
    {
        let dim = monomials.len();
        let index: HashMap<Vec<u64>, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut structure = vec![vec![vec![0u64; dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let sum: Vec<u64> = monomials[i]
                    .iter()
                    .zip(&monomials[j])
                    .map(|(a, b)| a + b)
                    .collect();
                let total: u64 = sum.iter().sum();
                let dead = total >= degree_bound || excluded.as_ref().is_some_and(|f| f(&sum));
                if !dead {
                    let k = *index
                        .get(&sum)
                        .expect("closed under addition below the bound");
                    structure[i][j][k] = 1;
                }
            }
        }
        let unit = *index
            .get(&vec![0u64; monomials[0].len()])
            .expect("origin is always a basis element");
        let labels = monomials.iter().map(|m| monomial_label(m)).collect();
        let mut alg = Self::new(p, labels, structure, unit)?;
        alg.monomials = Some(monomials);
        Ok(alg)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure(&self) -> &[Vec<Vec<u64>>] {
        &self.structure
    }

    /// Exponent vectors of the basis, when the algebra was built from
    /// monomials.
    pub fn monomials(&self) -> Option<&[Vec<u64>]> {
        self.monomials.as_deref()
    }

    pub fn basis_element(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.dim];
        v[i] = 1;
        v
    }

    pub fn unit_element(&self) -> Vec<u64> {
        self.basis_element(self.unit)
    }

    pub fn mul_elements(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let scale = fp::mul_mod(xi, yj, self.p);
                for (k, &c) in self.structure[i][j].iter().enumerate() {
                    out[k] = fp::add_mod(out[k], fp::mul_mod(scale, c, self.p), self.p);
                }
            }
        }
        out
    }

    pub fn pow_element(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.unit_element();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_elements(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_elements(&base, &base);
            }
        }
        acc
    }

    /// The matrix of left multiplication by an element, acting on coordinate
    /// columns.
    pub fn mult_matrix(&self, x: &[u64]) -> FpMat {
        let mut m = FpMat::zeros(self.p, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul_elements(x, &self.basis_element(j));
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// p-th power of the i-th basis element, as an element.
    pub fn frobenius_of_basis(&self, i: usize) -> Vec<u64> {
        self.pow_element(&self.basis_element(i), self.p)
    }

    /// Checks that the non-unit basis elements span a nilpotent ideal of
    /// codimension one, so the algebra is local with residue field Z/p.
    /// Meaningful for bases adapted to the maximal ideal, as produced by the
    /// monomial constructors.
    pub fn is_local(&self) -> bool {
        for i in 0..self.dim {
            if i == self.unit {
                continue;
            }
            let power = self.pow_element(&self.basis_element(i), self.dim as u64);
            if power.iter().any(|&c| c != 0) {
                return false;
            }
            for j in 0..self.dim {
                if j == self.unit {
                    continue;
                }
                if self.structure[i][j][self.unit] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// The Euler operator: multiplication of each basis monomial by its
    /// total degree. Only available on monomial-constructed algebras; it is
    /// always a derivation there because products add degrees or die.
    pub fn euler_derivation(&self) -> Option<FpMat> {
        let monomials = self.monomials.as_ref()?;
        let mut m = FpMat::zeros(self.p, self.dim, self.dim);
        for (i, mono) in monomials.iter().enumerate() {
            let deg: u64 = mono.iter().sum();
            m.set(i, i, deg % self.p);
        }
        Some(m)
    }
}

fn monomial_label(mono: &[u64]) -> String {
    if mono.iter().all(|&e| e == 0) {
        return "1".to_string();
    }
    mono.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{i}")
            } else {
                format!("x{i}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}
