//! Binomial ideals attached to integer lattices and the rank arithmetic for
//! pseudo-gradedness of quotients of semigroup rings.
//!
//! A lattice vector v splits as v = v⁺ - v⁻ into a binomial x^(v⁺) - x^(v⁻);
//! an ideal generated by binomials has quotient dimension r - rk(I). For a
//! map sending each source variable to a pseudo-m-nomial f_i = z^(a_i) g_i,
//! the support lattice of the extended ideal is contained in
//! σ(Θ) + Λ(f_1) + ... + Λ(f_r), which bounds its rank by
//! rk(Θ) + r(m-1) and yields grading certificates when that stays below the
//! quotient dimension.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grading::{certificate_from_lattice, LinearForm, PseudoGradedCertificate};
use crate::lattice::{lattice_of_ideal, lattice_of_poly, IntegerLattice};
use crate::poly::LaurentPoly;

/// A binomial generator x^plus - x^minus with nonnegative exponent vectors
/// of disjoint support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialGen {
    pub plus: Vec<i64>,
    pub minus: Vec<i64>,
}

impl BinomialGen {
    /// The lattice vector plus - minus.
    pub fn difference(&self) -> Vec<i64> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(a, b)| a - b)
            .collect()
    }

    /// Materializes the binomial as a polynomial over Z/p.
    pub fn to_poly(&self, p: u64) -> Result<LaurentPoly> {
        let r = self.plus.len();
        LaurentPoly::from_terms(p, r, vec![(self.plus.clone(), 1), (self.minus.clone(), -1)])
    }
}

/// An ideal generated by binomials, together with its support lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialIdeal {
    r: usize,
    gens: Vec<BinomialGen>,
    lattice: IntegerLattice,
}

impl BinomialIdeal {
    /// One binomial per HNF basis vector: v = v⁺ - v⁻. The stored lattice is
    /// the input lattice itself.
    pub fn from_lattice(lattice: &IntegerLattice) -> Result<Self> {
        let r = lattice.ambient_rank();
        let rows = lattice.basis_i64()?;
        let gens = rows
            .iter()
            .map(|v| BinomialGen {
                plus: v.iter().map(|&x| x.max(0)).collect(),
                minus: v.iter().map(|&x| (-x).max(0)).collect(),
            })
            .collect();
        Ok(BinomialIdeal {
            r,
            gens,
            lattice: lattice.clone(),
        })
    }

    /// Builds from explicit exponent pairs; validates sign and disjointness
    /// and recomputes the lattice from the differences.
    pub fn from_pairs(r: usize, pairs: Vec<BinomialGen>) -> Result<Self> {
        for g in &pairs {
            if g.plus.len() != r || g.minus.len() != r {
                return Err(Error::RankMismatch(g.plus.len().max(g.minus.len()), r));
            }
            for (a, b) in g.plus.iter().zip(&g.minus) {
                if *a < 0 || *b < 0 {
                    return Err(Error::MalformedInput(
                        "binomial exponents must be nonnegative".into(),
                    ));
                }
                if *a != 0 && *b != 0 {
                    return Err(Error::MalformedInput(
                        "binomial exponent pair must have disjoint support".into(),
                    ));
                }
            }
        }
        let diffs: Vec<Vec<i64>> = pairs.iter().map(|g| g.difference()).collect();
        let lattice = IntegerLattice::from_i64_rows(r, &diffs)?;
        Ok(BinomialIdeal {
            r,
            gens: pairs,
            lattice,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.r
    }

    pub fn gens(&self) -> &[BinomialGen] {
        &self.gens
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn to_polys(&self, p: u64) -> Result<Vec<LaurentPoly>> {
        self.gens.iter().map(|g| g.to_poly(p)).collect()
    }
}

/// Dimension of the quotient by a binomial ideal with the given support
/// lattice: r - rk.
pub fn toric_dimension(lattice: &IntegerLattice) -> usize {
    lattice.ambient_rank() - lattice.rank()
}

/// Certificate for the quotient of a binomial ideal J by a further ideal I:
/// an orthogonal form for Λ(J) + Λ(I) when that sum is not of full rank.
///
/// The returned weights list the binomial generators of J first, then the
/// generators of I, in order. Both families are guaranteed λ-homogeneous.
pub fn quotient_pseudo_graded(
    j: &BinomialIdeal,
    i_gens: &[LaurentPoly],
) -> Result<Option<PseudoGradedCertificate>> {
    let r = j.r;
    for g in i_gens {
        if g.num_vars() != r {
            return Err(Error::RankMismatch(g.num_vars(), r));
        }
    }
    if j.gens.is_empty() && i_gens.is_empty() {
        let mut coeffs = vec![0i64; r];
        coeffs[0] = 1;
        return Ok(Some(PseudoGradedCertificate {
            lambda: LinearForm::new(coeffs)?,
            weights: vec![],
            zero_ideal: true,
        }));
    }
    let combined = j.lattice.sum(&lattice_of_ideal(r, i_gens)?)?;
    let Some(form) = combined.orthogonal_form() else {
        return Ok(None);
    };
    let lambda = LinearForm::from_bigints(&form)?;
    let mut weights = Vec::new();
    for g in &j.gens {
        let w_plus = lambda.weight(&g.plus)?;
        let w_minus = lambda.weight(&g.minus)?;
        debug_assert_eq!(w_plus, w_minus, "form is orthogonal to the difference");
        weights.push(w_plus);
    }
    let poly_part =
        certificate_from_lattice(&combined, i_gens)?.expect("orthogonal form already found");
    weights.extend(poly_part.weights);
    Ok(Some(PseudoGradedCertificate {
        lambda,
        weights,
        zero_ideal: false,
    }))
}

/// The data of a pseudo-m-nomial map into s variables: each source variable
/// goes to f_i = z^(a_i) g_i with anchor a_i and factor lattice Λ_i = Λ(f_i)
/// of rank at most m-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMapData {
    s: usize,
    anchors: Vec<Vec<i64>>,
    factor_lattices: Vec<IntegerLattice>,
    m: usize,
}

impl MonomialMapData {
    pub fn new(
        s: usize,
        anchors: Vec<Vec<i64>>,
        factor_lattices: Vec<IntegerLattice>,
        m: usize,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "pseudo-nomial bound must be positive".into(),
            ));
        }
        if anchors.len() != factor_lattices.len() {
            return Err(Error::MalformedInput(
                "one anchor and one factor lattice per source variable".into(),
            ));
        }
        for a in &anchors {
            if a.len() != s {
                return Err(Error::RankMismatch(a.len(), s));
            }
        }
        for l in &factor_lattices {
            if l.ambient_rank() != s {
                return Err(Error::RankMismatch(l.ambient_rank(), s));
            }
            if l.rank() > m - 1 {
                return Err(Error::InvalidArgument(format!(
                    "factor lattice rank {} exceeds pseudo-{}-nomial bound {}",
                    l.rank(),
                    m,
                    m - 1
                )));
            }
        }
        Ok(MonomialMapData {
            s,
            anchors,
            factor_lattices,
            m,
        })
    }

    /// Derives the map data from the defining polynomials: anchor is the
    /// lexicographically least support element, factor lattice is Λ(f_i).
    pub fn from_polys(polys: &[LaurentPoly], m: usize) -> Result<Self> {
        let s = polys
            .first()
            .map(LaurentPoly::num_vars)
            .ok_or_else(|| Error::InvalidArgument("map needs at least one polynomial".into()))?;
        let mut anchors = Vec::new();
        let mut factor_lattices = Vec::new();
        for f in polys {
            if f.num_vars() != s {
                return Err(Error::RankMismatch(f.num_vars(), s));
            }
            let supp = f.support();
            let anchor = supp
                .first()
                .cloned()
                .ok_or_else(|| Error::InvalidArgument("map polynomial must be nonzero".into()))?;
            anchors.push(anchor);
            factor_lattices.push(lattice_of_poly(f));
        }
        Self::new(s, anchors, factor_lattices, m)
    }

    pub fn source_vars(&self) -> usize {
        self.anchors.len()
    }

    pub fn target_vars(&self) -> usize {
        self.s
    }

    pub fn bound(&self) -> usize {
        self.m
    }

    pub fn factor_lattices(&self) -> &[IntegerLattice] {
        &self.factor_lattices
    }

    /// The image σ(Θ) of a lattice under b -> b_1 a_1 + ... + b_r a_r.
    pub fn sigma_image(&self, theta: &IntegerLattice) -> Result<IntegerLattice> {
        let r = self.anchors.len();
        if theta.ambient_rank() != r {
            return Err(Error::RankMismatch(theta.ambient_rank(), r));
        }
        let rows: Vec<Vec<BigInt>> = theta
            .basis()
            .iter()
            .map(|b| {
                let mut img = vec![BigInt::zero(); self.s];
                for (bi, anchor) in b.iter().zip(&self.anchors) {
                    for (x, &a) in img.iter_mut().zip(anchor) {
                        *x += bi * BigInt::from(a);
                    }
                }
                img
            })
            .collect();
        IntegerLattice::from_generators(self.s, rows)
    }
}

/// The guaranteed superset σ(Θ) + Λ_1 + ... + Λ_r of the support lattice of
/// the extended ideal, together with its rank. The rank never exceeds
/// rk(Θ) + r(m-1).
pub fn pushforward_rank_bound(
    map: &MonomialMapData,
    theta: &IntegerLattice,
) -> Result<(IntegerLattice, usize)> {
    let mut acc = map.sigma_image(theta)?;
    for l in &map.factor_lattices {
        acc = acc.sum(l)?;
    }
    let rank = acc.rank();
    Ok((acc, rank))
}

/// Applicability report for the pseudo-gradedness criterion of quotients of
/// a d-dimensional semigroup ring by an extended ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryReport {
    /// dimension d = s - toric_rank of the ambient quotient
    pub d: usize,
    pub source_vars: usize,
    pub bound_m: usize,
    /// the coarse hypothesis r(m-1) < d
    pub hypothesis_r_m1_lt_d: bool,
    /// rk(σΘ) + Σ rk(Λ_i), the refined arithmetic bound
    pub refined_bound: usize,
    /// refined_bound < d
    pub refined_holds: bool,
    /// exact rank of σ(Θ) + Λ_1 + ... + Λ_r
    pub pushforward_rank: usize,
    /// orthogonal form of the pushforward lattice, present whenever either
    /// hypothesis holds (the lattice then cannot be of full rank)
    pub lambda: Option<LinearForm>,
}

/// Evaluates the rank hypotheses of the pseudo-gradedness criterion and, when
/// one holds, emits a grading certificate for the pushforward lattice.
///
/// The report never claims more than hypothesis satisfaction: dimension
/// conclusions about the actual quotient require the caller's toric input
/// assumptions.
pub fn corollary_applicability(
    toric_rank: usize,
    s: usize,
    map: &MonomialMapData,
    theta: &IntegerLattice,
) -> Result<CorollaryReport> {
    if map.target_vars() != s {
        return Err(Error::RankMismatch(map.target_vars(), s));
    }
    if toric_rank > s {
        return Err(Error::InvalidArgument(format!(
            "toric rank {toric_rank} exceeds variable count {s}"
        )));
    }
    let d = s - toric_rank;
    let r = map.source_vars();
    let m = map.bound();
    let hypothesis = r * (m - 1) < d;
    let sigma = map.sigma_image(theta)?;
    let refined_bound = sigma.rank()
        + map
            .factor_lattices()
            .iter()
            .map(IntegerLattice::rank)
            .sum::<usize>();
    let refined_holds = refined_bound < d;
    let (pushforward, pushforward_rank) = pushforward_rank_bound(map, theta)?;
    let lambda = if hypothesis || refined_holds {
        pushforward
            .orthogonal_form()
            .map(|form| LinearForm::from_bigints(&form))
            .transpose()?
    } else {
        None
    };
    Ok(CorollaryReport {
        d,
        source_vars: r,
        bound_m: m,
        hypothesis_r_m1_lt_d: hypothesis,
        refined_bound,
        refined_holds,
        pushforward_rank,
        lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::verify_lambda_ideal;

    fn lat(r: usize, rows: &[&[i64]]) -> IntegerLattice {
        IntegerLattice::from_i64_rows(r, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn binomial_from_sign_split() {
        let l = lat(3, &[&[1, 1, -2]]);
        let j = BinomialIdeal::from_lattice(&l).unwrap();
        assert_eq!(j.gens().len(), 1);
        assert_eq!(j.gens()[0].plus, vec![1, 1, 0]);
        assert_eq!(j.gens()[0].minus, vec![0, 0, 2]);
        assert_eq!(j.lattice(), &l);

        let zero = BinomialIdeal::from_lattice(&IntegerLattice::zero(3)).unwrap();
        assert!(zero.gens().is_empty());

        let two = BinomialIdeal::from_lattice(&lat(3, &[&[1, -1, 0], &[0, 1, -1]])).unwrap();
        let polys = two.to_polys(5).unwrap();
        assert_eq!(polys.len(), 2);
        // x1 - x2 and x2 - x3 up to the HNF's choice of basis
        for poly in &polys {
            assert_eq!(poly.num_terms(), 2);
        }
    }

    #[test]
    fn from_pairs_validation() {
        let ok = BinomialIdeal::from_pairs(
            2,
            vec![BinomialGen {
                plus: vec![1, 0],
                minus: vec![0, 1],
            }],
        );
        assert!(ok.is_ok());
        let overlap = BinomialIdeal::from_pairs(
            2,
            vec![BinomialGen {
                plus: vec![1, 1],
                minus: vec![0, 1],
            }],
        );
        assert!(overlap.is_err());
        let negative = BinomialIdeal::from_pairs(
            2,
            vec![BinomialGen {
                plus: vec![1, 0],
                minus: vec![0, -1],
            }],
        );
        assert!(negative.is_err());
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(toric_dimension(&lat(3, &[&[1, -2, 2]])), 2);
        assert_eq!(toric_dimension(&IntegerLattice::zero(3)), 3);
        assert_eq!(toric_dimension(&IntegerLattice::full(4)), 0);
    }

    #[test]
    fn quotient_certificate() {
        // J from (1,1,-2), I generated by the trinomial: combined lattice
        // has rank 2 < 3, so a certificate exists
        let j = BinomialIdeal::from_lattice(&lat(3, &[&[1, 1, -2]])).unwrap();
        let trinomial = LaurentPoly::from_terms(
            5,
            3,
            vec![(vec![2, 0, 4], 1), (vec![1, 2, 2], 1), (vec![0, 4, 0], 1)],
        )
        .unwrap();
        let cert = quotient_pseudo_graded(&j, &[trinomial.clone()])
            .unwrap()
            .unwrap();
        assert!(!cert.zero_ideal);
        assert!(verify_lambda_ideal(&cert.lambda, &[trinomial]).unwrap());
        let mut gens = j.to_polys(5).unwrap();
        gens.push(LaurentPoly::zero(5, 3));
        assert!(verify_lambda_ideal(&cert.lambda, &gens).unwrap());
        assert_eq!(cert.weights.len(), 2);

        // full-rank combination: no certificate
        let j2 = BinomialIdeal::from_lattice(&lat(2, &[&[1, -1]])).unwrap();
        let affine = LaurentPoly::from_terms(5, 2, vec![(vec![2, 0], 1), (vec![0, 1], 1)]).unwrap();
        assert!(quotient_pseudo_graded(&j2, &[affine]).unwrap().is_none());

        // doubly-empty input is flagged as the zero ideal
        let empty = BinomialIdeal::from_lattice(&IntegerLattice::zero(2)).unwrap();
        let cert = quotient_pseudo_graded(&empty, &[]).unwrap().unwrap();
        assert!(cert.zero_ideal);
    }

    #[test]
    fn sigma_image_and_pushforward() {
        // one source variable mapping to a trinomial in Z^3
        let f = LaurentPoly::from_terms(
            5,
            3,
            vec![(vec![2, 0, 4], 1), (vec![1, 2, 2], 1), (vec![0, 4, 0], 1)],
        )
        .unwrap();
        let map = MonomialMapData::from_polys(&[f.clone()], 3).unwrap();
        assert_eq!(map.source_vars(), 1);
        assert_eq!(map.target_vars(), 3);

        let theta = IntegerLattice::full(1);
        let sigma = map.sigma_image(&theta).unwrap();
        // anchor is the lex-least support element (0,4,0)
        assert!(sigma.contains_i64(&[0, 4, 0]));
        assert_eq!(sigma.rank(), 1);

        let (bound_lattice, rank) = pushforward_rank_bound(&map, &theta).unwrap();
        let r_times_m_minus_1 = map.source_vars() * (map.bound() - 1);
        assert!(rank <= theta.rank() + r_times_m_minus_1);
        assert!(lattice_of_poly(&f).is_subset_of(&bound_lattice));

        // zero Θ and monomial map: zero lattice
        let mono = LaurentPoly::monomial(5, 2, vec![1, 2], 1).unwrap();
        let mmap = MonomialMapData::from_polys(&[mono], 1).unwrap();
        let (l, rk) = pushforward_rank_bound(&mmap, &IntegerLattice::zero(1)).unwrap();
        assert_eq!(rk, 0);
        assert_eq!(l.rank(), 0);
    }

    #[test]
    fn pushforward_contains_expanded_images() {
        // h = x^2 + 2 x^3 maps through x -> f; the image lattice must land
        // inside sigma(Λ(h)) + Λ(f)
        let p = 5;
        let f = LaurentPoly::from_terms(
            p,
            2,
            vec![(vec![0, 1], 1), (vec![1, 0], 2), (vec![2, 2], 1)],
        )
        .unwrap();
        let map = MonomialMapData::from_polys(&[f.clone()], 3).unwrap();
        let theta = lat(1, &[&[1]]);
        let (bound_lattice, _) = pushforward_rank_bound(&map, &theta).unwrap();
        let image = f.pow(2).add(&f.pow(3).scalar_mul(2)).unwrap();
        assert!(lattice_of_poly(&image).is_subset_of(&bound_lattice));
    }

    #[test]
    fn corollary_cases() {
        // d=4, one quadrinomial (r=1, m=4) in s=5 variables
        let quad = LaurentPoly::from_terms(
            5,
            5,
            vec![
                (vec![0, 0, 0, 0, 0], 1),
                (vec![1, 0, 0, 0, 0], 1),
                (vec![0, 1, 0, 0, 0], 1),
                (vec![0, 0, 1, 0, 0], 1),
            ],
        )
        .unwrap();
        let map = MonomialMapData::from_polys(&[quad], 4).unwrap();
        let report = corollary_applicability(1, 5, &map, &IntegerLattice::zero(1)).unwrap();
        assert_eq!(report.d, 4);
        assert!(report.hypothesis_r_m1_lt_d);
        assert!(report.refined_holds);
        assert!(report.lambda.is_some());

        // boundary d=3, m=4 fails the hypothesis
        let report3 = corollary_applicability(2, 5, &map, &IntegerLattice::zero(1)).unwrap();
        assert_eq!(report3.d, 3);
        assert!(!report3.hypothesis_r_m1_lt_d);
    }
}
