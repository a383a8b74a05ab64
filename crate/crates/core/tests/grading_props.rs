//! Certificate soundness and homogeneity closure properties.

use charp::grading::{is_lambda_homogeneous, pseudo_graded_certificate, verify_lambda_ideal};
use charp::hasse_schmidt::delta_lambda;
use charp::sample::{random_homogeneous_poly, random_linear_form, random_nonzero_poly, trial_rng};
use rand::Rng;

#[test]
fn certificate_soundness_on_random_generators() {
    // whenever a certificate is produced, every generator is homogeneous
    let mut produced = 0;
    for trial in 0..200u64 {
        let mut rng = trial_rng(21, trial);
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let r = rng.gen_range(2..=4usize);
        let ngens = rng.gen_range(1..=3usize);
        // binomial/trinomial generators keep the rank low enough for
        // certificates to appear regularly
        let gens: Vec<_> = (0..ngens)
            .map(|_| {
                let terms = rng.gen_range(2..=3usize);
                random_nonzero_poly(&mut rng, p, r, 3, terms)
            })
            .collect();
        if let Some(cert) = pseudo_graded_certificate(r, &gens).unwrap() {
            produced += 1;
            assert!(
                verify_lambda_ideal(&cert.lambda, &gens).unwrap(),
                "unsound certificate on trial {trial}"
            );
            assert_eq!(cert.weights.len(), gens.len());
            for (g, &w) in gens.iter().zip(&cert.weights) {
                let witness = is_lambda_homogeneous(&cert.lambda, g).unwrap().unwrap();
                assert_eq!(witness.weight, w);
            }
        }
    }
    assert!(produced > 20, "too few certificates produced: {produced}");
}

#[test]
fn product_of_homogeneous_is_homogeneous_with_weight_sum() {
    for trial in 0..200u64 {
        let mut rng = trial_rng(22, trial);
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let r = rng.gen_range(2..=3usize);
        let lambda = random_linear_form(&mut rng, r, 3);
        let f = random_homogeneous_poly(&mut rng, &lambda, p, 3, 3);
        let g = random_homogeneous_poly(&mut rng, &lambda, p, 3, 3);
        let wf = is_lambda_homogeneous(&lambda, &f).unwrap().unwrap();
        let wg = is_lambda_homogeneous(&lambda, &g).unwrap().unwrap();
        let product = f.mul(&g).unwrap();
        let wp = is_lambda_homogeneous(&lambda, &product)
            .unwrap()
            .expect("product of homogeneous elements is homogeneous");
        if !product.is_zero() && !f.is_zero() && !g.is_zero() {
            assert_eq!(wp.weight, wf.weight + wg.weight, "trial {trial}");
        }
    }
}

#[test]
fn delta_scales_homogeneous_elements_by_weight() {
    for trial in 0..200u64 {
        let mut rng = trial_rng(23, trial);
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let r = rng.gen_range(2..=3usize);
        let lambda = random_linear_form(&mut rng, r, 3);
        let f = random_homogeneous_poly(&mut rng, &lambda, p, 3, 3);
        let witness = is_lambda_homogeneous(&lambda, &f).unwrap().unwrap();
        assert_eq!(
            delta_lambda(&lambda, &f).unwrap(),
            f.scalar_mul(witness.weight.rem_euclid(p as i64)),
            "trial {trial}"
        );
    }
}
