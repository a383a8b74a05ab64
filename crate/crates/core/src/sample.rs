//! Seeded random generation for verification sweeps.
//!
//! Trials derive independent ChaCha streams from (seed, trial index), so
//! sweeps are reproducible and could be evaluated in any order.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::grading::LinearForm;
use crate::lattice::IntegerLattice;
use crate::poly::{ExponentVec, LaurentPoly};

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic per-trial generator.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(trial)))
}

/// A sparse Laurent polynomial with up to `max_terms` terms and exponent
/// entries in `[-max_deg, max_deg]`.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    p: u64,
    r: usize,
    max_deg: i64,
    max_terms: usize,
) -> LaurentPoly {
    let nterms = rng.gen_range(0..=max_terms);
    let terms: Vec<(ExponentVec, i64)> = (0..nterms)
        .map(|_| {
            let exp: ExponentVec = (0..r).map(|_| rng.gen_range(-max_deg..=max_deg)).collect();
            let c = rng.gen_range(0..p) as i64;
            (exp, c)
        })
        .collect();
    LaurentPoly::from_terms(p, r, terms).expect("generated terms share length")
}

/// Like [`random_poly`] but guaranteed nonzero.
pub fn random_nonzero_poly(
    rng: &mut ChaCha8Rng,
    p: u64,
    r: usize,
    max_deg: i64,
    max_terms: usize,
) -> LaurentPoly {
    loop {
        let f = random_poly(rng, p, r, max_deg, max_terms.max(1));
        if !f.is_zero() {
            return f;
        }
    }
}

/// A nonzero linear form with entries in `[-bound, bound]`.
pub fn random_linear_form(rng: &mut ChaCha8Rng, r: usize, bound: i64) -> LinearForm {
    loop {
        let coeffs: Vec<i64> = (0..r).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(form) = LinearForm::new(coeffs) {
            return form;
        }
    }
}

/// A random λ-homogeneous polynomial: support inside one coset of the
/// kernel of λ, built from a random anchor plus small kernel-lattice steps.
pub fn random_homogeneous_poly(
    rng: &mut ChaCha8Rng,
    lambda: &LinearForm,
    p: u64,
    max_deg: i64,
    max_terms: usize,
) -> LaurentPoly {
    let r = lambda.len();
    let kernel = IntegerLattice::from_i64_rows(r, &[lambda.coeffs().to_vec()])
        .expect("linear form rows")
        .orthogonal_complement();
    let kernel_rows = kernel.basis_i64().expect("small entries");
    let anchor: ExponentVec = (0..r).map(|_| rng.gen_range(-max_deg..=max_deg)).collect();
    let nterms = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<(ExponentVec, i64)> = (0..nterms)
        .map(|_| {
            let mut exp = anchor.clone();
            for row in &kernel_rows {
                let c = rng.gen_range(-2..=2i64);
                for (x, &k) in exp.iter_mut().zip(row) {
                    *x += c * k;
                }
            }
            let coeff = rng.gen_range(0..p) as i64;
            (exp, coeff)
        })
        .collect();
    LaurentPoly::from_terms(p, r, terms).expect("terms share length")
}

/// All exponent vectors with entries in `[-bound, bound]`.
pub fn exponent_window(r: usize, bound: i64) -> Vec<ExponentVec> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        let mut next = Vec::new();
        for prefix in &out {
            for v in -bound..=bound {
                let mut e = prefix.clone();
                e.push(v);
                next.push(e);
            }
        }
        out = next;
    }
    out
}
