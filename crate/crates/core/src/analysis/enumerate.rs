use serde::Serialize;

use super::certificate::{certified_cutoff, SearchCertificate};
use super::scan_values;
use crate::dimension::Family;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationResult {
    pub family: Family,
    pub k: u32,
    pub bound: u64,
    pub cutoff: u64,
    /// False when the scan stopped short of a proven cutoff.
    pub certified: bool,
    pub certificate: Option<SearchCertificate>,
    /// `(N, dim)` with `dim <= bound`, sorted by `N`.
    pub levels: Vec<(u64, u64)>,
}

impl EnumerationResult {
    /// Levels with dimension exactly `v`.
    pub fn fiber(&self, v: u64) -> Vec<u64> {
        self.levels.iter().filter(|&&(_, d)| d == v).map(|&(n, _)| n).collect()
    }
}

/// Every level with `dim(family, N, k) <= bound`.
///
/// Without `cutoff` the scan runs to the certified cutoff. A user cutoff
/// below the certified one (or with no certificate at all) is honoured and
/// the result is marked uncertified.
pub fn enumerate_small_dim(family: Family, k: i64, bound: u64, cutoff: Option<u64>) -> Result<EnumerationResult> {
    let cert = certified_cutoff(family, k, bound);
    let (x, certified, certificate) = match (cutoff, cert) {
        (None, Ok(c)) => (c.cutoff, true, Some(c)),
        (None, Err(e)) => {
            return Err(Error::Precondition(format!(
                "no certified cutoff for {family} at weight {k} ({e}); pass an explicit cutoff"
            )))
        }
        (Some(x), Ok(c)) => (x, x >= c.cutoff, Some(c)),
        (Some(x), Err(_)) => (x, false, None),
    };
    let values = scan_values(family, k, x)?;
    let levels = values
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d <= bound)
        .map(|(i, &d)| (i as u64 + 1, d))
        .collect();
    Ok(EnumerationResult {
        family,
        k: k as u32,
        bound,
        cutoff: x,
        certified,
        certificate,
        levels,
    })
}

/// Multiplicity of each value `0..=max_value` over levels `N <= limit`.
#[derive(Clone, Debug, Serialize)]
pub struct Coverage {
    pub family: Family,
    pub k: u32,
    pub limit: u64,
    pub max_value: u64,
    pub counts: Vec<u64>,
}

impl Coverage {
    /// Number of values in `0..=max_value` that occur.
    pub fn attained(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// `(count, value)` with the smallest count, first such value.
    pub fn min_multiplicity(&self) -> (u64, u64) {
        let (v, c) = self.counts.iter().enumerate().min_by_key(|&(v, c)| (*c, v)).expect("nonempty");
        (*c, v as u64)
    }

    pub fn max_multiplicity(&self) -> (u64, u64) {
        let (v, c) = self
            .counts
            .iter()
            .enumerate()
            .max_by_key(|&(v, c)| (*c, std::cmp::Reverse(v)))
            .expect("nonempty");
        (*c, v as u64)
    }

    /// Smallest value that does not occur.
    pub fn first_gap(&self) -> Option<u64> {
        self.counts.iter().position(|&c| c == 0).map(|v| v as u64)
    }
}

pub fn value_coverage(family: Family, k: i64, limit: u64, max_value: u64) -> Result<Coverage> {
    if limit == 0 {
        return Err(Error::Domain("coverage needs a positive level limit".into()));
    }
    let mut counts = vec![0u64; max_value as usize + 1];
    for v in scan_values(family, k, limit)? {
        if v <= max_value {
            counts[v as usize] += 1;
        }
    }
    Ok(Coverage { family, k: k as u32, limit, max_value, counts })
}

#[derive(Clone, Debug, Serialize)]
pub struct MissingValues {
    pub family: Family,
    pub k: u32,
    pub max_value: u64,
    pub cutoff: u64,
    /// Cutoff beyond which every dimension exceeds `max_value`, if proven.
    pub required_cutoff: Option<u64>,
    pub missing: Vec<u64>,
    pub attained: usize,
}

/// Values in `0..=max_value` not taken by `dim(family, N, k)`.
///
/// A nonempty answer is only a theorem when the scan reaches the certified
/// cutoff; short of that it is refused. An empty answer needs no
/// certificate.
pub fn missing_values(family: Family, k: i64, max_value: u64, cutoff: u64) -> Result<MissingValues> {
    let cov = value_coverage(family, k, cutoff, max_value)?;
    let required_cutoff = certified_cutoff(family, k, max_value).ok().map(|c| c.cutoff);
    let missing: Vec<u64> = cov
        .counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c == 0)
        .map(|(v, _)| v as u64)
        .collect();
    if !missing.is_empty() {
        match required_cutoff {
            Some(r) if cutoff >= r => {}
            Some(r) => {
                return Err(Error::Precondition(format!(
                    "cutoff {cutoff} is too small to certify missing values up to {max_value}; need {r}"
                )))
            }
            None => {
                return Err(Error::Precondition(format!(
                    "no certified cutoff for {family} at weight {k}; missing values cannot be certified"
                )))
            }
        }
    }
    Ok(MissingValues {
        family,
        k: k as u32,
        max_value,
        cutoff,
        required_cutoff,
        attained: cov.attained(),
        missing,
    })
}
