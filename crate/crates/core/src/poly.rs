//! Sparse Laurent polynomials over Z/p.
//!
//! A `LaurentPoly` is a finite map from integer exponent vectors in Z^r to
//! nonzero coefficients in Z/p. Terms are kept in a `BTreeMap`, so iteration
//! (and serialization) is always in lexicographic exponent order.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fp;

/// Exponent vector in Z^r. Entries may be negative (Laurent monomials).
pub type ExponentVec = Vec<i64>;

/// A Laurent polynomial with coefficients in Z/p.
///
/// Invariants: no stored coefficient is zero, every coefficient lies in
/// `[1, p)`, and every exponent vector has length `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    p: u64,
    r: usize,
    terms: BTreeMap<ExponentVec, u64>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero(p: u64, r: usize) -> Self {
        LaurentPoly {
            p,
            r,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `c`.
    pub fn constant(p: u64, r: usize, c: i64) -> Self {
        let mut f = Self::zero(p, r);
        f.add_term(vec![0; r], fp::reduce_signed(c, p));
        f
    }

    pub fn one(p: u64, r: usize) -> Self {
        Self::constant(p, r, 1)
    }

    /// The single term `c * x^exp`.
    pub fn monomial(p: u64, r: usize, exp: ExponentVec, c: i64) -> Result<Self> {
        if exp.len() != r {
            return Err(Error::RankMismatch(exp.len(), r));
        }
        let mut f = Self::zero(p, r);
        f.add_term(exp, fp::reduce_signed(c, p));
        Ok(f)
    }

    /// The variable `x_i`.
    pub fn var(p: u64, r: usize, i: usize) -> Result<Self> {
        if i >= r {
            return Err(Error::InvalidArgument(format!(
                "variable index {i} out of range for {r} variables"
            )));
        }
        let mut exp = vec![0i64; r];
        exp[i] = 1;
        Self::monomial(p, r, exp, 1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// duplicates and pruning zeros.
    pub fn from_terms<I>(p: u64, r: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVec, i64)>,
    {
        let mut f = Self::zero(p, r);
        for (exp, c) in terms {
            if exp.len() != r {
                return Err(Error::RankMismatch(exp.len(), r));
            }
            f.add_term(exp, fp::reduce_signed(c, p));
        }
        Ok(f)
    }

    fn add_term(&mut self, exp: ExponentVec, c: u64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = fp::add_mod(*o.get(), c, self.p);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn num_vars(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVec, u64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    /// Coefficient of `x^exp`, zero if absent.
    pub fn coeff(&self, exp: &[i64]) -> u64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    /// The support: exponent vectors with nonzero coefficient.
    pub fn support(&self) -> Vec<ExponentVec> {
        self.terms.keys().cloned().collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.r != other.r {
            return Err(Error::RankMismatch(self.r, other.r));
        }
        Ok(())
    }

    /// Termwise sum; cancelling coefficients are pruned.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (exp, &c) in &other.terms {
            out.add_term(exp.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| (e.clone(), fp::neg_mod(c, self.p)))
            .collect();
        LaurentPoly {
            p: self.p,
            r: self.r,
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Convolution product: exponents add in Z^r, coefficients multiply mod p.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.p, self.r);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let exp: ExponentVec = ea
                    .iter()
                    .zip(eb)
                    .map(|(a, b)| {
                        a.checked_add(*b)
                            .expect("exponent overflow in multiplication")
                    })
                    .collect();
                out.add_term(exp, fp::mul_mod(ca, cb, self.p));
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: i64) -> Self {
        let c = fp::reduce_signed(c, self.p);
        if c == 0 {
            return Self::zero(self.p, self.r);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, &v)| (e.clone(), fp::mul_mod(v, c, self.p)))
            .collect();
        LaurentPoly {
            p: self.p,
            r: self.r,
            terms,
        }
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.p, self.r);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// The Frobenius power `f^(p^e)`.
    ///
    /// Coefficients in Z/p are fixed by Frobenius, so this is the term map
    /// `u x^a -> u x^(p^e * a)`.
    pub fn frob_power(&self, e: u32) -> Self {
        let q = (self.p as i64)
            .checked_pow(e)
            .expect("p^e overflows exponent arithmetic");
        let terms = self
            .terms
            .iter()
            .map(|(exp, &c)| {
                let scaled: ExponentVec = exp
                    .iter()
                    .map(|a| a.checked_mul(q).expect("exponent overflow in frobenius"))
                    .collect();
                (scaled, c)
            })
            .collect();
        LaurentPoly {
            p: self.p,
            r: self.r,
            terms,
        }
    }

    /// Formal partial derivative with respect to `x_i`.
    ///
    /// Laurent terms differentiate the usual way: `d/dx (x^a) = a x^(a-1)`,
    /// with the coefficient `a` read mod p.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.r {
            return Err(Error::InvalidArgument(format!(
                "variable index {i} out of range for {} variables",
                self.r
            )));
        }
        let mut out = Self::zero(self.p, self.r);
        for (exp, &c) in &self.terms {
            let a = fp::reduce_signed(exp[i], self.p);
            if a == 0 {
                continue;
            }
            let mut e = exp.clone();
            e[i] -= 1;
            out.add_term(e, fp::mul_mod(c, a, self.p));
        }
        Ok(out)
    }

    /// First exponent where two polynomials disagree, with both coefficients.
    /// Used to report counterexamples from identity checks.
    pub fn first_diff(&self, other: &Self) -> Option<TermDiff> {
        let mut exps: Vec<&ExponentVec> = self.terms.keys().chain(other.terms.keys()).collect();
        exps.sort();
        exps.dedup();
        for exp in exps {
            let lhs = self.coeff(exp);
            let rhs = other.coeff(exp);
            if lhs != rhs {
                return Some(TermDiff {
                    exponent: exp.clone(),
                    lhs,
                    rhs,
                });
            }
        }
        None
    }
}

/// A single differing term between two polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDiff {
    pub exponent: ExponentVec,
    pub lhs: u64,
    pub rhs: u64,
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_const = exp.iter().all(|&a| a == 0);
            if c != 1 || is_const {
                write!(f, "{c}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut printed = false;
            for (i, &a) in exp.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if printed {
                    write!(f, "*")?;
                }
                printed = true;
                if a == 1 {
                    write!(f, "x{i}")?;
                } else {
                    write!(f, "x{i}^{a}")?;
                }
            }
        }
        Ok(())
    }
}

/// A truncated power series `c_0 + c_1 t + ... + c_(N-1) t^(N-1)` whose
/// coefficients are Laurent polynomials. Arithmetic drops everything at
/// order `t^N` and beyond.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    p: u64,
    r: usize,
    coeffs: Vec<LaurentPoly>,
}

impl TruncatedSeries {
    /// Series with the given coefficients; `coeffs.len()` is the truncation order.
    pub fn new(p: u64, r: usize, coeffs: Vec<LaurentPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "truncation order must be positive".into(),
            ));
        }
        for c in &coeffs {
            if c.p() != p {
                return Err(Error::ModulusMismatch(c.p(), p));
            }
            if c.num_vars() != r {
                return Err(Error::RankMismatch(c.num_vars(), r));
            }
        }
        Ok(TruncatedSeries { p, r, coeffs })
    }

    pub fn zero(p: u64, r: usize, order: usize) -> Result<Self> {
        Self::new(p, r, vec![LaurentPoly::zero(p, r); order.max(1)])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, l: usize) -> &LaurentPoly {
        &self.coeffs[l]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.r != other.r {
            return Err(Error::RankMismatch(self.r, other.r));
        }
        let order = self.order().min(other.order());
        let mut coeffs = vec![LaurentPoly::zero(self.p, self.r); order];
        for i in 0..order {
            for j in 0..order - i {
                let prod = self.coeffs[i].mul(&other.coeffs[j])?;
                coeffs[i + j] = coeffs[i + j].add(&prod)?;
            }
        }
        Self::new(self.p, self.r, coeffs)
    }
}
