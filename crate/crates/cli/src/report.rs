//! Machine-readable run reports.
//!
//! Every command prints one JSON report to stdout and a short human summary
//! to stderr. Reports are deterministic for a fixed input and seed, except
//! for the elapsed-time field.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub verdict: Verdict,
    pub certificates: serde_json::Value,
    pub counterexamples: Vec<serde_json::Value>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl Verdict {
    /// 0 = pass / witness found, 1 = verified-false / unknown / no witness.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail | Verdict::Unknown => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Unknown => "unknown",
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}
