//! Implementations of the CLI commands. Each returns a verdict, a
//! certificates object, and a list of counterexamples.

use charp::grading::{pseudo_graded_certificate, LinearForm};
use charp::hasse_schmidt::HSFamily;
use charp::io::{matrix_to_json, IdealJson, LatticeJson, ModuleJson, PolyJson};
use charp::lattice::{lattice_of_ideal, IntegerLattice};
use charp::modfin::{
    artin_schreier_idempotent, endomorphism_algebra, f_decomposable_upto, idempotent_search,
    ks_kernel, IdempotentClass,
};
use charp::poly::LaurentPoly;
use charp::sample::{exponent_window, random_homogeneous_poly, random_poly, trial_rng};
use charp::toric::{corollary_applicability, toric_dimension, BinomialIdeal, MonomialMapData};
use rand::Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::inputs;
use crate::report::Verdict;
use crate::CliError;

pub const DEFAULT_TRIALS: u64 = 200;
pub const DEFAULT_MAX_DEG: i64 = 4;
pub const DEFAULT_PRIMES: [u64; 3] = [2, 3, 5];

type CmdResult = Result<(Verdict, Value, Vec<Value>), CliError>;

pub fn cmd_lattice(bytes: &[u8]) -> CmdResult {
    // raw lattice rows are canonicalized as-is; polynomials and ideals go
    // through their support lattices
    let value: Value =
        serde_json::from_slice(bytes).map_err(|e| CliError(format!("invalid JSON: {e}")))?;
    if value.get("rows").is_some() {
        let (json, lattice) = inputs::parse_lattice(bytes)?;
        let out = json.with_result(&lattice)?;
        let certificates =
            serde_json::to_value(out).map_err(|e| CliError(format!("serialization: {e}")))?;
        return Ok((Verdict::Pass, certificates, vec![]));
    }
    let (_, r, _, gens) = inputs::parse_ideal_like(bytes)?;
    let lattice = lattice_of_ideal(r, &gens)?;
    let out = LatticeJson::input(r, vec![]).with_result(&lattice)?;
    let certificates = json!({
        "r": r,
        "rank": out.rank,
        "hnf": out.hnf,
    });
    Ok((Verdict::Pass, certificates, vec![]))
}

pub fn cmd_pseudo_graded(bytes: &[u8]) -> CmdResult {
    let (_, r, _, gens) = inputs::parse_ideal_like(bytes)?;
    match pseudo_graded_certificate(r, &gens)? {
        Some(cert) => {
            let weights: Vec<Value> = cert
                .weights
                .iter()
                .enumerate()
                .map(|(i, w)| json!({"gen": i, "weight": w}))
                .collect();
            let mut certificates = json!({
                "pseudo_graded": true,
                "lambda": cert.lambda.coeffs(),
                "weights": weights,
            });
            if cert.zero_ideal {
                certificates["warning"] =
                    json!("empty generator list: the zero ideal is every lambda's ideal");
            }
            Ok((Verdict::Pass, certificates, vec![]))
        }
        None => {
            let certificates = json!({
                "pseudo_graded": "unknown",
                "lambda": Value::Null,
                "weights": [],
            });
            Ok((Verdict::Unknown, certificates, vec![]))
        }
    }
}

#[derive(Debug, Clone)]
pub struct HsParams {
    pub lambda: Vec<i64>,
    pub p: Option<u64>,
    pub vars: Option<usize>,
    pub order: Option<u64>,
    pub trials: Option<u64>,
    pub max_deg: Option<i64>,
}

impl HsParams {
    fn lambda(&self) -> Result<LinearForm, CliError> {
        self.validate()?;
        let form = LinearForm::new(self.lambda.clone())?;
        if let Some(v) = self.vars {
            if v != form.len() {
                return Err(CliError(format!(
                    "--vars {} does not match lambda of length {}",
                    v,
                    form.len()
                )));
            }
        }
        Ok(form)
    }

    fn primes(&self) -> Vec<u64> {
        match self.p {
            Some(p) => vec![p],
            None => DEFAULT_PRIMES.to_vec(),
        }
    }

    fn trials(&self) -> u64 {
        self.trials.unwrap_or(DEFAULT_TRIALS)
    }

    fn max_deg(&self) -> i64 {
        self.max_deg.unwrap_or(DEFAULT_MAX_DEG)
    }

    fn validate(&self) -> Result<(), CliError> {
        let d = self.max_deg();
        if !(0..=1_000_000).contains(&d) {
            return Err(CliError(format!("--max-deg {d} out of range [0, 10^6]")));
        }
        Ok(())
    }
}

fn poly_string(f: &LaurentPoly) -> String {
    format!("{f}")
}

fn failure_record(inputs: Value, lhs: &LaurentPoly, rhs: &LaurentPoly) -> Value {
    let diff = lhs.first_diff(rhs);
    json!({
        "inputs": inputs,
        "lhs_term": diff.as_ref().map(|d| json!({"e": d.exponent, "c": d.lhs})),
        "rhs_term": diff.as_ref().map(|d| json!({"e": d.exponent, "c": d.rhs})),
    })
}

fn sweep_report(identity: &str, trials: u64, failures: Vec<Value>) -> (Verdict, Value, Vec<Value>) {
    let verdict = if failures.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let certificates = json!({
        "identity": identity,
        "trials": trials,
        "failures": failures.clone(),
    });
    (verdict, certificates, failures)
}

pub fn cmd_hs_apply(params: &HsParams, bytes: &[u8]) -> CmdResult {
    let (poly_json, f) = inputs::parse_poly(bytes)?;
    let lambda = params.lambda()?;
    if lambda.len() != f.num_vars() {
        return Err(CliError(format!(
            "lambda has {} entries but the polynomial has {} variables",
            lambda.len(),
            f.num_vars()
        )));
    }
    let n = params.order.unwrap_or(1);
    let family = HSFamily::new(lambda, f.p())?;
    let image = family.apply(n, &f)?;
    let certificates = json!({
        "identity": "apply",
        "order": n,
        "result": PolyJson::from_poly(&image, Some(poly_json.vars.clone())),
        "display": poly_string(&image),
    });
    Ok((Verdict::Pass, certificates, vec![]))
}

pub fn cmd_hs_leibniz(params: &HsParams, seed: u64) -> CmdResult {
    let lambda = params.lambda()?;
    let r = lambda.len();
    let mut failures = Vec::new();
    let mut total = 0;
    for p in params.primes() {
        let family = HSFamily::new(lambda.clone(), p)?;
        for trial in 0..params.trials() {
            let mut rng = trial_rng(seed ^ p, trial);
            let f = random_poly(&mut rng, p, r, params.max_deg(), 4);
            let g = random_poly(&mut rng, p, r, params.max_deg(), 4);
            let n = rng.gen_range(0..=6u64);
            let (lhs, rhs) = family.leibniz_sides(n, &f, &g)?;
            total += 1;
            if lhs != rhs {
                failures.push(failure_record(
                    json!({"p": p, "n": n, "f": poly_string(&f), "g": poly_string(&g)}),
                    &lhs,
                    &rhs,
                ));
            }
        }
    }
    Ok(sweep_report("leibniz", total, failures))
}

pub fn cmd_hs_finv(params: &HsParams) -> CmdResult {
    let lambda = params.lambda()?;
    let r = lambda.len();
    let bound = params.max_deg();
    let window_size = (2 * bound as u128 + 1).pow(r as u32);
    if window_size > 200_000 {
        return Err(CliError(format!(
            "monomial window of {window_size} elements is too large; lower --max-deg"
        )));
    }
    let window = exponent_window(r, bound);
    let mut failures = Vec::new();
    let mut total = 0;
    for p in params.primes() {
        let family = HSFamily::new(lambda.clone(), p)?;
        total += window.len() as u64;
        if !family.verify_f_invariance(&window)? {
            // locate the first offending monomial for the report
            for exp in &window {
                let mono = LaurentPoly::monomial(p, r, exp.clone(), 1)?;
                let mut iterated = mono.clone();
                for _ in 0..p {
                    iterated = charp::hasse_schmidt::delta_lambda(&lambda, &iterated)?;
                }
                let once = charp::hasse_schmidt::delta_lambda(&lambda, &mono)?;
                if iterated != once {
                    failures.push(failure_record(
                        json!({"p": p, "monomial": exp}),
                        &iterated,
                        &once,
                    ));
                    break;
                }
            }
        }
    }
    Ok(sweep_report("f-invariance", total, failures))
}

pub fn cmd_hs_phi(params: &HsParams, seed: u64) -> CmdResult {
    let lambda = params.lambda()?;
    let r = lambda.len();
    let order = params.order.unwrap_or(8).max(1) as usize;
    let mut failures = Vec::new();
    let mut total = 0;
    for p in params.primes() {
        let family = HSFamily::new(lambda.clone(), p)?;
        for trial in 0..params.trials() {
            let mut rng = trial_rng(seed ^ p.rotate_left(17), trial);
            let f = random_poly(&mut rng, p, r, params.max_deg(), 3);
            let g = random_poly(&mut rng, p, r, params.max_deg(), 3);
            let phi_f = family.phi_automorphism(&f, order)?;
            let phi_g = family.phi_automorphism(&g, order)?;
            let product = phi_f.mul(&phi_g)?;
            let expected = family.phi_automorphism(&f.mul(&g)?, order)?;
            total += 1;
            if product != expected || phi_f.coeff(0) != &f {
                let level = (0..order)
                    .find(|&l| product.coeff(l) != expected.coeff(l))
                    .unwrap_or(0);
                failures.push(failure_record(
                    json!({"p": p, "t_order": level, "f": poly_string(&f), "g": poly_string(&g)}),
                    product.coeff(level),
                    expected.coeff(level),
                ));
            }
        }
    }
    Ok(sweep_report("phi-multiplicative", total, failures))
}

pub fn cmd_hs_hsfrob(params: &HsParams, seed: u64) -> CmdResult {
    let lambda = params.lambda()?;
    let r = lambda.len();
    let mut failures = Vec::new();
    let mut total = 0;
    for p in params.primes() {
        let family = HSFamily::new(lambda.clone(), p)?;
        for trial in 0..params.trials() {
            let mut rng = trial_rng(seed ^ p.rotate_left(31), trial);
            let a = random_poly(&mut rng, p, r, params.max_deg(), 3);
            let b = random_poly(&mut rng, p, r, params.max_deg(), 3);
            let (lhs, rhs) = family.hsfrob_sides(&a, &b)?;
            total += 1;
            if lhs != rhs {
                failures.push(failure_record(
                    json!({"p": p, "a": poly_string(&a), "b": poly_string(&b)}),
                    &lhs,
                    &rhs,
                ));
            }
        }
    }
    Ok(sweep_report("hsfrob", total, failures))
}

pub fn cmd_hs_eigen(params: &HsParams, seed: u64) -> CmdResult {
    let lambda = params.lambda()?;
    let max_n = params.order.unwrap_or(8);
    let mut failures = Vec::new();
    let mut total = 0;
    for p in params.primes() {
        let family = HSFamily::new(lambda.clone(), p)?;
        for trial in 0..params.trials() {
            let mut rng = trial_rng(seed ^ p.rotate_left(43), trial);
            let f = random_homogeneous_poly(&mut rng, &lambda, p, params.max_deg(), 3);
            let n = rng.gen_range(0..=max_n);
            total += 1;
            if !family.verify_eigen_action(n, &f)? {
                let lhs = family.apply(n, &f)?;
                failures.push(failure_record(
                    json!({"p": p, "n": n, "f": poly_string(&f)}),
                    &lhs,
                    &f,
                ));
            }
        }
    }
    Ok(sweep_report("eigen-action", total, failures))
}

pub fn cmd_toric_from_lattice(bytes: &[u8]) -> CmdResult {
    let (_, lattice) = inputs::parse_lattice(bytes)?;
    let ideal = BinomialIdeal::from_lattice(&lattice)?;
    let binomials: Vec<Value> = ideal
        .gens()
        .iter()
        .map(|g| json!({"plus": g.plus, "minus": g.minus}))
        .collect();
    let certificates = json!({
        "r": ideal.num_vars(),
        "rank": lattice.rank(),
        "dimension": toric_dimension(&lattice),
        "binomials": binomials,
        "saturated": lattice.is_saturated(),
    });
    Ok((Verdict::Pass, certificates, vec![]))
}

#[derive(Debug, Deserialize)]
struct ParametrizationInput {
    parametrization: Vec<Vec<i64>>,
}

/// The kernel lattice of a monomial parametrization x_i -> t^(c_i):
/// all integer vectors orthogonal to every coordinate column of the
/// exponent matrix.
fn kernel_of_parametrization(rows: &[Vec<i64>]) -> Result<IntegerLattice, CliError> {
    let r = rows.len();
    let u = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != u) {
        return Err(CliError("parametrization rows must share a length".into()));
    }
    let columns: Vec<Vec<i64>> = (0..u)
        .map(|j| rows.iter().map(|row| row[j]).collect())
        .collect();
    let span = IntegerLattice::from_i64_rows(r, &columns)?;
    Ok(span.orthogonal_complement())
}

pub fn cmd_toric_dimension(bytes: &[u8]) -> CmdResult {
    let value: serde_json::Value =
        serde_json::from_slice(bytes).map_err(|e| CliError(format!("invalid JSON: {e}")))?;
    let lattice = if value.get("parametrization").is_some() {
        let input: ParametrizationInput = serde_json::from_value(value)
            .map_err(|e| CliError(format!("invalid parametrization: {e}")))?;
        if input.parametrization.is_empty() {
            return Err(CliError("parametrization needs at least one row".into()));
        }
        kernel_of_parametrization(&input.parametrization)?
    } else {
        inputs::parse_lattice(bytes)?.1
    };
    let certificates = json!({
        "r": lattice.ambient_rank(),
        "rank": lattice.rank(),
        "dimension": toric_dimension(&lattice),
    });
    Ok((Verdict::Pass, certificates, vec![]))
}

#[derive(Debug, Deserialize)]
struct CorollaryInput {
    s: usize,
    toric_rank: usize,
    m: usize,
    map_polys: Option<IdealJson>,
    anchors: Option<Vec<Vec<i64>>>,
    factor_lattices: Option<Vec<LatticeJson>>,
    theta: Option<LatticeJson>,
}

pub fn cmd_toric_corollary(bytes: &[u8]) -> CmdResult {
    let input: CorollaryInput =
        serde_json::from_slice(bytes).map_err(|e| CliError(format!("invalid input: {e}")))?;
    let map = if let Some(ideal) = &input.map_polys {
        let (r, polys) = ideal.to_gens()?;
        if r != input.s {
            return Err(CliError(format!(
                "map polynomials live in {} variables, expected s = {}",
                r, input.s
            )));
        }
        MonomialMapData::from_polys(&polys, input.m)?
    } else {
        let anchors = input
            .anchors
            .clone()
            .ok_or_else(|| CliError("need map_polys or anchors + factor_lattices".into()))?;
        let lattices = input
            .factor_lattices
            .as_ref()
            .ok_or_else(|| CliError("need factor_lattices alongside anchors".into()))?
            .iter()
            .map(|l| l.to_lattice())
            .collect::<Result<Vec<_>, _>>()?;
        MonomialMapData::new(input.s, anchors, lattices, input.m)?
    };
    let theta = match &input.theta {
        Some(l) => l.to_lattice()?,
        None => IntegerLattice::zero(map.source_vars()),
    };
    let report = corollary_applicability(input.toric_rank, input.s, &map, &theta)?;
    let applicable = report.hypothesis_r_m1_lt_d || report.refined_holds;
    let certificates = json!({
        "d": report.d,
        "hypothesis_r(m-1)<d": report.hypothesis_r_m1_lt_d,
        "refined_bound": report.refined_bound,
        "refined_holds": report.refined_holds,
        "pushforward_rank": report.pushforward_rank,
        "lambda": report.lambda.as_ref().map(|l| l.coeffs().to_vec()),
        "applicable": applicable,
    });
    let verdict = if applicable && report.lambda.is_some() {
        Verdict::Pass
    } else {
        Verdict::Unknown
    };
    Ok((verdict, certificates, vec![]))
}

pub fn cmd_module_endos(bytes: &[u8]) -> CmdResult {
    let module = inputs::parse_module(bytes)?.to_module()?;
    let endos = endomorphism_algebra(&module);
    let certificates = json!({
        "dim": endos.len(),
        "basis": endos.iter().map(|e| matrix_to_json(e.matrix())).collect::<Vec<_>>(),
    });
    Ok((Verdict::Pass, certificates, vec![]))
}

pub fn cmd_module_idempotent(bytes: &[u8], seed: u64) -> CmdResult {
    let module = inputs::parse_module(bytes)?.to_module()?;
    let search = idempotent_search(&module, seed);
    let found = search.idempotent.is_some();
    let certificates = json!({
        "found": found,
        "idempotent": search.idempotent.as_ref().map(|e| matrix_to_json(e.matrix())),
        "certified_absent": search.certified_absent,
        "endo_dim": search.endo_dim,
    });
    let verdict = if found {
        Verdict::Pass
    } else {
        Verdict::Unknown
    };
    Ok((verdict, certificates, vec![]))
}

pub fn cmd_module_frobenius(bytes: &[u8]) -> CmdResult {
    let module = inputs::parse_module(bytes)?.to_module()?;
    let transformed = module.frobenius_transform();
    let certificates = serde_json::to_value(ModuleJson::from_module(&transformed))
        .map_err(|e| CliError(format!("serialization failed: {e}")))?;
    Ok((Verdict::Pass, certificates, vec![]))
}

pub fn cmd_module_ks(bytes: &[u8]) -> CmdResult {
    let module = inputs::parse_module(bytes)?.to_module()?;
    let kernel = ks_kernel(&module);
    let certificates = json!({
        "dim": kernel.dim(),
        "basis": kernel.basis.iter().map(|d| matrix_to_json(d.matrix())).collect::<Vec<_>>(),
        "coords": kernel.coords,
    });
    Ok((Verdict::Pass, certificates, vec![]))
}

pub fn cmd_module_artin_schreier(bytes: &[u8]) -> CmdResult {
    let json_module = inputs::parse_module(bytes)?;
    let module = json_module.to_module()?;
    let f = json_module
        .operator()?
        .ok_or_else(|| CliError("artin-schreier requires an operator matrix \"f\"".into()))?;
    let out = artin_schreier_idempotent(&module, &f)?;
    let frob = module.frobenius_transform();
    let class = match out.class {
        IdempotentClass::Zero => "zero",
        IdempotentClass::One => "one",
        IdempotentClass::Nontrivial => "nontrivial",
    };
    let certificates = json!({
        "idempotent": matrix_to_json(&out.matrix),
        "tau": matrix_to_json(&out.tau),
        "class": class,
        "endomorphism_of_transform": frob.is_endomorphism(&out.matrix),
    });
    let verdict = if out.class == IdempotentClass::Nontrivial {
        Verdict::Pass
    } else {
        Verdict::Unknown
    };
    Ok((verdict, certificates, vec![]))
}

pub fn cmd_module_fdecomp(bytes: &[u8], seed: u64, bound: u32) -> CmdResult {
    let module = inputs::parse_module(bytes)?.to_module()?;
    match f_decomposable_upto(&module, bound, seed) {
        Some((level, witness)) => {
            let certificates = json!({
                "level": level,
                "idempotent": matrix_to_json(witness.matrix()),
                "bound": bound,
            });
            Ok((Verdict::Pass, certificates, vec![]))
        }
        None => {
            let certificates = json!({
                "level": Value::Null,
                "idempotent": Value::Null,
                "bound": bound,
            });
            Ok((Verdict::Unknown, certificates, vec![]))
        }
    }
}
