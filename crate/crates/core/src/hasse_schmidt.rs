//! Generalized binomial coefficients and the Hasse-Schmidt family attached
//! to a linear form.
//!
//! For a nonzero integer linear form λ on Z^r the maps
//!
//! ```text
//! H_n(Σ u_a x^a) = Σ u_a C(λ(a), n) x^a
//! ```
//!
//! form a Hasse-Schmidt derivation on the Laurent ring over Z/p: H_0 is the
//! identity, H_1 is the derivation Δ_λ = Σ l_i x_i ∂_i, and the higher
//! Leibniz rule H_n(fg) = Σ H_i(f) H_(n-i)(g) reduces to the Chu-Vandermonde
//! identity since λ(a+b) = λ(a) + λ(b). The binomial coefficient C(z, n) is
//! extended to negative upper argument z through the negation rule
//! C(-m, d) = (-1)^d C(m+d-1, d).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fp;
use crate::fp::PrimeField;
use crate::grading::{is_lambda_homogeneous, LinearForm};
use crate::poly::{ExponentVec, LaurentPoly, TruncatedSeries};

/// Exact generalized binomial coefficient C(z, d) for any integer z.
///
/// For z >= 0 this is the standard coefficient (zero when d > z); for z < 0
/// the negation rule gives (-1)^d C(-z+d-1, d).
pub fn gen_binomial(z: i64, d: u64) -> BigInt {
    if z >= 0 {
        if d > z as u64 {
            return BigInt::zero();
        }
        binomial_nonneg(BigInt::from(z), d)
    } else {
        let upper = -BigInt::from(z) + BigInt::from(d) - BigInt::one();
        let b = binomial_nonneg(upper, d);
        if d % 2 == 1 {
            -b
        } else {
            b
        }
    }
}

/// C(n, d) for n >= d >= 0 by the falling-factorial product; each partial
/// product is divisible by the running factorial.
fn binomial_nonneg(n: BigInt, d: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..d {
        acc = acc * (&n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// C(z, d) mod p via Lucas's theorem, extended to z < 0 through the
/// negation rule. Agrees with exact evaluation followed by reduction.
pub fn gen_binomial_mod_p(z: i64, d: u64, p: u64) -> PrimeField {
    let value = if z >= 0 {
        lucas(z as u64, d, p)
    } else {
        // C(z,d) = (-1)^d C(-z+d-1, d); the shifted upper argument is
        // nonnegative and fits in u64 even for z = i64::MIN.
        let upper = z.unsigned_abs() + d - 1;
        let v = lucas(upper, d, p);
        if d % 2 == 1 {
            fp::neg_mod(v, p)
        } else {
            v
        }
    };
    PrimeField::from_canonical(p, value)
}

/// Lucas: C(n, k) mod p is the product of the digitwise C(n_i, k_i) base p.
fn lucas(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = fp::mul_mod(acc, binomial_digit(nd, kd, p), p);
        n /= p;
        k /= p;
    }
    acc
}

/// C(n, k) mod p for digits n, k < p.
fn binomial_digit(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = fp::mul_mod(num, (n - i) % p, p);
        den = fp::mul_mod(den, (i + 1) % p, p);
    }
    fp::mul_mod(
        num,
        fp::inv_mod(den, p).expect("denominator digits below p"),
        p,
    )
}

/// The Hasse-Schmidt family (1, Δ_λ, H_2, ...) determined by a linear form
/// over Z/p in r variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSFamily {
    lambda: LinearForm,
    p: u64,
    r: usize,
}

impl HSFamily {
    pub fn new(lambda: LinearForm, p: u64) -> Result<Self> {
        fp::check_prime(p)?;
        let r = lambda.len();
        Ok(HSFamily { lambda, p, r })
    }

    pub fn lambda(&self) -> &LinearForm {
        &self.lambda
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn num_vars(&self) -> usize {
        self.r
    }

    fn check_poly(&self, f: &LaurentPoly) -> Result<()> {
        if f.p() != self.p {
            return Err(Error::ModulusMismatch(f.p(), self.p));
        }
        if f.num_vars() != self.r {
            return Err(Error::RankMismatch(f.num_vars(), self.r));
        }
        Ok(())
    }

    /// H_n: multiply the coefficient of x^a by C(λ(a), n) mod p.
    pub fn apply(&self, n: u64, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_poly(f)?;
        let mut terms = Vec::new();
        for (exp, c) in f.terms() {
            let w = self.lambda.weight(exp)?;
            let factor = gen_binomial_mod_p(w, n, self.p);
            let v = fp::mul_mod(c, factor.value(), self.p);
            terms.push((exp.clone(), v as i64));
        }
        LaurentPoly::from_terms(self.p, self.r, terms)
    }

    /// The left and right sides of the higher Leibniz rule at order n:
    /// H_n(fg) and Σ H_i(f) H_(n-i)(g).
    pub fn leibniz_sides(
        &self,
        n: u64,
        f: &LaurentPoly,
        g: &LaurentPoly,
    ) -> Result<(LaurentPoly, LaurentPoly)> {
        self.check_poly(f)?;
        self.check_poly(g)?;
        let lhs = self.apply(n, &f.mul(g)?)?;
        let mut rhs = LaurentPoly::zero(self.p, self.r);
        for i in 0..=n {
            let term = self.apply(i, f)?.mul(&self.apply(n - i, g)?)?;
            rhs = rhs.add(&term)?;
        }
        Ok((lhs, rhs))
    }

    /// Checks H_n(fg) = Σ H_i(f) H_(n-i)(g) exactly.
    pub fn verify_leibniz(&self, n: u64, f: &LaurentPoly, g: &LaurentPoly) -> Result<bool> {
        let (lhs, rhs) = self.leibniz_sides(n, f, g)?;
        Ok(lhs == rhs)
    }

    /// Checks Δ_λ^p = Δ_λ on every monomial in the window, by literal
    /// p-fold application of the derivation.
    pub fn verify_f_invariance(&self, window: &[ExponentVec]) -> Result<bool> {
        for exp in window {
            let mono = LaurentPoly::monomial(self.p, self.r, exp.clone(), 1)?;
            let mut iterated = mono.clone();
            for _ in 0..self.p {
                iterated = delta_lambda(&self.lambda, &iterated)?;
            }
            let once = delta_lambda(&self.lambda, &mono)?;
            if iterated != once {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The automorphism Φ = Σ H_l t^l applied to f, truncated at t^N.
    /// Its constant coefficient is f itself, so Φ is the identity mod t.
    pub fn phi_automorphism(&self, f: &LaurentPoly, order: usize) -> Result<TruncatedSeries> {
        if order == 0 {
            return Err(Error::InvalidArgument(
                "truncation order must be positive".into(),
            ));
        }
        self.check_poly(f)?;
        let coeffs: Vec<LaurentPoly> = (0..order)
            .map(|l| self.apply(l as u64, f))
            .collect::<Result<_>>()?;
        TruncatedSeries::new(self.p, self.r, coeffs)
    }

    /// Both sides of the Frobenius interchange identity
    /// H_p(a^p b) = a^p H_p(b) + Δ_λ(a)^p b.
    pub fn hsfrob_sides(
        &self,
        a: &LaurentPoly,
        b: &LaurentPoly,
    ) -> Result<(LaurentPoly, LaurentPoly)> {
        self.check_poly(a)?;
        self.check_poly(b)?;
        let a_p = a.frob_power(1);
        let lhs = self.apply(self.p, &a_p.mul(b)?)?;
        let first = a_p.mul(&self.apply(self.p, b)?)?;
        let second = delta_lambda(&self.lambda, a)?.frob_power(1).mul(b)?;
        Ok((lhs, first.add(&second)?))
    }

    /// Checks H_p(a^p b) = a^p H_p(b) + Δ_λ(a)^p b exactly.
    pub fn verify_hsfrob_identity(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<bool> {
        let (lhs, rhs) = self.hsfrob_sides(a, b)?;
        Ok(lhs == rhs)
    }

    /// For λ-homogeneous f of weight w, checks H_n(f) = C(w, n) f.
    /// Non-homogeneous input is an error, distinct from a failed identity.
    pub fn verify_eigen_action(&self, n: u64, f: &LaurentPoly) -> Result<bool> {
        self.check_poly(f)?;
        let witness = is_lambda_homogeneous(&self.lambda, f)?.ok_or_else(|| {
            Error::InvalidArgument("eigen action requires a λ-homogeneous input".into())
        })?;
        let scalar = gen_binomial_mod_p(witness.weight, n, self.p);
        let lhs = self.apply(n, f)?;
        let rhs = f.scalar_mul(scalar.value() as i64);
        Ok(lhs == rhs)
    }
}

/// The derivation Δ_λ = Σ l_i x_i ∂_i, evaluated through its monomial
/// eigenvalue form Δ_λ(x^a) = λ(a) x^a.
pub fn delta_lambda(lambda: &LinearForm, f: &LaurentPoly) -> Result<LaurentPoly> {
    if f.num_vars() != lambda.len() {
        return Err(Error::RankMismatch(f.num_vars(), lambda.len()));
    }
    let p = f.p();
    let mut terms = Vec::new();
    for (exp, c) in f.terms() {
        let w = fp::reduce_signed(lambda.weight(exp)?, p);
        terms.push((exp.clone(), fp::mul_mod(c, w, p) as i64));
    }
    LaurentPoly::from_terms(p, f.num_vars(), terms)
}

/// Δ_λ computed the long way, as the operator Σ l_i x_i ∂_i with formal
/// partial derivatives. Used as the independent route in tests against
/// [`delta_lambda`].
pub fn delta_lambda_operator(lambda: &LinearForm, f: &LaurentPoly) -> Result<LaurentPoly> {
    if f.num_vars() != lambda.len() {
        return Err(Error::RankMismatch(f.num_vars(), lambda.len()));
    }
    let p = f.p();
    let r = f.num_vars();
    let mut acc = LaurentPoly::zero(p, r);
    for (i, &l) in lambda.coeffs().iter().enumerate() {
        let xi = LaurentPoly::var(p, r, i)?;
        let term = xi.mul(&f.partial_derivative(i)?)?.scalar_mul(l);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Exact-arithmetic reduction used as the oracle for the Lucas fast path.
pub fn gen_binomial_then_reduce(z: i64, d: u64, p: u64) -> u64 {
    let b = gen_binomial(z, d);
    let m = b.mod_floor(&BigInt::from(p));
    u64::try_from(m).expect("residue fits")
}
