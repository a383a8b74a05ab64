//! Input plumbing: stdin-or-file reading and the flexible JSON shapes the
//! commands accept.

use std::io::Read;
use std::path::PathBuf;

use charp::io::{IdealJson, LatticeJson, ModuleJson, PolyJson};
use charp::lattice::IntegerLattice;
use charp::poly::LaurentPoly;

use crate::CliError;

pub fn read_input(path: &Option<PathBuf>) -> Result<Vec<u8>, CliError> {
    match path {
        Some(p) => std::fs::read(p).map_err(|e| CliError(format!("cannot read {p:?}: {e}"))),
        None => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| CliError(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

/// A polynomial or an ideal; single polynomials are treated as one-generator
/// ideals.
pub fn parse_ideal_like(
    bytes: &[u8],
) -> Result<(u64, usize, Vec<String>, Vec<LaurentPoly>), CliError> {
    let value: serde_json::Value =
        serde_json::from_slice(bytes).map_err(|e| CliError(format!("invalid JSON: {e}")))?;
    if value.get("gens").is_some() {
        let ideal: IdealJson =
            serde_json::from_value(value).map_err(|e| CliError(format!("invalid ideal: {e}")))?;
        let (r, gens) = ideal.to_gens().map_err(CliError::from)?;
        Ok((ideal.p, r, ideal.vars, gens))
    } else if value.get("terms").is_some() {
        let poly: PolyJson = serde_json::from_value(value)
            .map_err(|e| CliError(format!("invalid polynomial: {e}")))?;
        let f = poly.to_poly().map_err(CliError::from)?;
        Ok((poly.p, poly.vars.len(), poly.vars, vec![f]))
    } else {
        Err(CliError(
            "expected a polynomial ({\"terms\": ...}) or ideal ({\"gens\": ...})".into(),
        ))
    }
}

pub fn parse_poly(bytes: &[u8]) -> Result<(PolyJson, LaurentPoly), CliError> {
    let poly: PolyJson =
        serde_json::from_slice(bytes).map_err(|e| CliError(format!("invalid polynomial: {e}")))?;
    let f = poly.to_poly().map_err(CliError::from)?;
    Ok((poly, f))
}

pub fn parse_lattice(bytes: &[u8]) -> Result<(LatticeJson, IntegerLattice), CliError> {
    let value: serde_json::Value =
        serde_json::from_slice(bytes).map_err(|e| CliError(format!("invalid JSON: {e}")))?;
    // accept either a bare lattice object or {"r":..., "lattice": {...}}
    let lattice_value = value.get("lattice").cloned().unwrap_or(value);
    let json: LatticeJson = serde_json::from_value(lattice_value)
        .map_err(|e| CliError(format!("invalid lattice: {e}")))?;
    let lattice = json.to_lattice().map_err(CliError::from)?;
    Ok((json, lattice))
}

pub fn parse_module(bytes: &[u8]) -> Result<ModuleJson, CliError> {
    serde_json::from_slice(bytes).map_err(|e| CliError(format!("invalid module: {e}")))
}
