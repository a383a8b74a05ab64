//! Toric invariants: the dimension formula against a parametrization-rank
//! oracle, and soundness of quotient certificates.

use charp::grading::verify_lambda_ideal;
use charp::lattice::IntegerLattice;
use charp::sample::{random_nonzero_poly, trial_rng};
use charp::toric::{quotient_pseudo_graded, toric_dimension, BinomialIdeal};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].clone();
        for j in 0..ncols {
            let v = &m[rank][j] / &inv;
            m[rank][j] = v;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in 0..ncols {
                    let v = &m[i][j] - &factor * &m[rank][j];
                    m[i][j] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn dimension_matches_parametrization_rank() {
    // for x_i -> t^(c_i), the quotient by the kernel lattice ideal has
    // dimension equal to the rational rank of the exponent matrix
    for trial in 0..100u64 {
        let mut rng = trial_rng(41, trial);
        let r = rng.gen_range(1..=4usize);
        let u = rng.gen_range(1..=3usize);
        let c_rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..u).map(|_| rng.gen_range(0..=4i64)).collect())
            .collect();
        let columns: Vec<Vec<i64>> = (0..u)
            .map(|j| c_rows.iter().map(|row| row[j]).collect())
            .collect();
        let kernel = IntegerLattice::from_i64_rows(r, &columns)
            .unwrap()
            .orthogonal_complement();
        let ideal = BinomialIdeal::from_lattice(&kernel).unwrap();
        assert_eq!(
            toric_dimension(ideal.lattice()),
            rational_rank(&c_rows),
            "trial {trial}: {c_rows:?}"
        );
    }
}

#[test]
fn quadrinomial_hypersurface_in_toric_quotient() {
    // a four-dimensional binomial quotient: J = (x0 x1 - x2 x3) in five
    // variables, rank 1, so dim = 4; a quadrinomial hypersurface has rank
    // at most 3, the combined lattice stays below rank 5, and the quotient
    // certificate grades both the binomial and the quadrinomial
    let p = 5;
    let toric = IntegerLattice::from_i64_rows(5, &[vec![1, 1, -1, -1, 0]]).unwrap();
    assert!(toric.is_saturated());
    let j = BinomialIdeal::from_lattice(&toric).unwrap();
    assert_eq!(toric_dimension(j.lattice()), 4);
    let quad = charp::poly::LaurentPoly::from_terms(
        p,
        5,
        vec![
            (vec![1, 0, 0, 0, 0], 1),
            (vec![0, 1, 0, 0, 0], 1),
            (vec![0, 0, 1, 0, 0], 2),
            (vec![0, 0, 0, 0, 1], 3),
        ],
    )
    .unwrap();
    assert_eq!(charp::lattice::lattice_of_poly(&quad).rank(), 3);
    let cert = quotient_pseudo_graded(&j, &[quad.clone()])
        .unwrap()
        .expect("rank at most 4 < 5 certifies");
    let mut gens = j.to_polys(p).unwrap();
    gens.push(quad);
    assert!(verify_lambda_ideal(&cert.lambda, &gens).unwrap());
    assert_eq!(cert.weights.len(), 2);
}

#[test]
fn quotient_certificates_are_sound() {
    for trial in 0..100u64 {
        let mut rng = trial_rng(42, trial);
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let r = rng.gen_range(2..=4usize);
        // a random low-rank binomial lattice
        let nrows = rng.gen_range(0..r.min(2));
        let rows: Vec<Vec<i64>> = (0..nrows)
            .map(|_| (0..r).map(|_| rng.gen_range(-3..=3i64)).collect())
            .collect();
        let j =
            BinomialIdeal::from_lattice(&IntegerLattice::from_i64_rows(r, &rows).unwrap()).unwrap();
        let i_gens: Vec<_> = (0..rng.gen_range(0..=2usize))
            .map(|_| random_nonzero_poly(&mut rng, p, r, 2, 2))
            .collect();
        if let Some(cert) = quotient_pseudo_graded(&j, &i_gens).unwrap() {
            if !cert.zero_ideal {
                assert!(verify_lambda_ideal(&cert.lambda, &i_gens).unwrap());
                let binomials = j.to_polys(p).unwrap();
                assert!(verify_lambda_ideal(&cert.lambda, &binomials).unwrap());
            }
        }
    }
}
