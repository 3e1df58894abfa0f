use rayon::prelude::*;
use serde::Serialize;

use super::{MultiplicativeFunction, Registry};
use crate::arith::Factorizer;
use crate::error::Result;

/// `(f, g, h)` read as `f * g = h`.
pub const PROOF_IDENTITIES: [(&str, &str, &str); 12] = [
    ("n_s0", "lambda", "n_s0plus"),
    ("nu_inf", "lambda", "nu_inf_plus"),
    ("nu2", "lambda", "nu2plus"),
    ("nu3", "lambda", "nu3plus"),
    ("n_s0", "mu", "n_s0star"),
    ("nu_inf", "mu", "nu_inf_star"),
    ("nu2", "mu", "nu2star"),
    ("nu3", "mu", "nu3star"),
    ("u", "lambda", "uplus"),
    ("u", "mu", "ustar"),
    ("n2_s1", "lambda", "n2_s1plus"),
    ("n2_s1", "mu", "n2_s1star"),
];

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub identity: String,
    pub checked: u64,
    /// Levels where the two sides differ, first few.
    pub failures: Vec<u64>,
    pub failure_count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub max_n: u64,
    pub results: Vec<IdentityResult>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.results.iter().all(|r| r.failure_count == 0)
    }
}

/// Check `f * g = h` pointwise for `n <= max_n`.
pub fn verify_identity(f: &MultiplicativeFunction, g: &MultiplicativeFunction, h: &MultiplicativeFunction, max_n: u64) -> Result<IdentityResult> {
    let conv = f.convolve(g);
    let fz = Factorizer::shared();
    let bad: Vec<u64> = (1..=max_n)
        .into_par_iter()
        .map(|n| Ok((conv.eval_factored(&fz.factorize(n)?) != h.eval_factored(&fz.factorize(n)?)).then_some(n)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(IdentityResult {
        identity: format!("{} * {} = {}", f.name(), g.name(), h.name()),
        checked: max_n,
        failure_count: bad.len() as u64,
        failures: bad.into_iter().take(20).collect(),
    })
}

/// All twelve identities linking the full-space functions to their newform
/// and representation-count variants.
pub fn verify_convolution_identities(reg: &Registry, max_n: u64) -> Result<IdentityReport> {
    let results = PROOF_IDENTITIES
        .iter()
        .map(|&(f, g, h)| verify_identity(reg.get(f)?, reg.get(g)?, reg.get(h)?, max_n))
        .collect::<Result<_>>()?;
    Ok(IdentityReport { max_n, results })
}
