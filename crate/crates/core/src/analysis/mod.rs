//! Enumerations, verifications and average-order checks.
//!
//! Scans factor each level with the shared sieve and split level ranges
//! across the rayon pool; every reduction is order independent.

mod average;
mod bennett;
mod certificate;
mod enumerate;
mod lemmas;

pub use average::{average_ratio, rho_floor_scan, AverageCheck, AverageTarget, RhoFloor};
pub use bennett::{
    bennett_residual_levels, verify_bennett_residual, verify_power_of_two, verify_sharp_bound, PowerOfTwoFailure,
    PowerOfTwoReport, ResidualReport, SharpBoundReport,
};
pub use certificate::{
    certified_cutoff, certified_cutoff_with, omega_constant, omega_exponent, BranchCertificate, CurveKind,
    CurveParams, SearchCertificate,
};
pub use enumerate::{enumerate_small_dim, missing_values, value_coverage, Coverage, EnumerationResult, MissingValues};
pub use lemmas::{lemma_suite, LemmaCheck, LemmaSuiteReport};

use rayon::prelude::*;

use crate::arith::Factorizer;
use crate::dimension::{weight_coeffs, DimensionEngine, Family};
use crate::error::Result;

/// `dim(family, N, k)` for `N = 1..=x`, index 0 holding `N = 1`.
pub fn scan_values(family: Family, k: i64, x: u64) -> Result<Vec<u64>> {
    let w = weight_coeffs(k)?;
    let engine = DimensionEngine::standard();
    let fz = Factorizer::shared();
    (1..=x)
        .into_par_iter()
        .map(|n| Ok(engine.dimension_factored(family, &fz.factorize(n)?, &w)?.value))
        .collect()
}
