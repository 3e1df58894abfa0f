//! Newform and representation counts by recursion over divisors.
//!
//! `g(N) = Σ_{d|N} τ(N/d) g⁺(d)` is solved for `g⁺(N)` level by level, and
//! `g*(N) = Σ_{d|N} g⁺(d)`. Only the full-space formulas and `τ` are used,
//! so this is independent of the closed forms for `g⁺` and `g*`.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Factorization, Factorizer};
use crate::dimension::{weight_coeffs, DimensionEngine, Family, Group, WeightCoefficients};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleEntry {
    pub g_plus: u64,
    pub g_star: u64,
}

/// Solved levels for one group and weight.
#[derive(Clone, Debug)]
pub struct OracleTable {
    pub group: Group,
    pub k: u32,
    coeffs: WeightCoefficients,
    entries: Vec<Option<OracleEntry>>,
}

/// Divisors `d` of `n` with `τ(n/d)`, in increasing order of `d`.
pub fn divisors_with_cotau(n: &Factorization) -> Vec<(u64, u64)> {
    let mut out = vec![(1u64, 1u64)];
    for &(p, e) in n.factors() {
        let len = out.len();
        let mut pk = 1u64;
        // extend each existing divisor by p^j; cotau picks up (e - j + 1)
        let base: Vec<(u64, u64)> = out.drain(..len).collect();
        for j in 0..=e {
            for &(d, t) in &base {
                out.push((d * pk, t * (e - j + 1) as u64));
            }
            pk *= p;
        }
    }
    out.sort_unstable();
    out
}

impl OracleTable {
    pub fn new(group: Group, k: i64) -> Result<Self> {
        let coeffs = weight_coeffs(k)?;
        Ok(OracleTable { group, k: coeffs.k, coeffs, entries: vec![None] })
    }

    pub fn get(&self, n: u64) -> Option<OracleEntry> {
        self.entries.get(n as usize).copied().flatten()
    }

    /// Largest `X` with every level up to `X` solved.
    pub fn limit(&self) -> u64 {
        self.entries[1..].iter().take_while(|e| e.is_some()).count() as u64
    }

    fn full_dimension(&self, n: &Factorization) -> Result<i64> {
        let v = DimensionEngine::standard().dimension_factored(self.group.full(), n, &self.coeffs)?;
        i64::try_from(v.value).map_err(|_| Error::Internal("dimension exceeds i64".into()))
    }

    /// Solve level `n`; every proper divisor must already be present.
    pub fn solve(&mut self, n: &Factorization) -> Result<OracleEntry> {
        let level = n.value();
        if let Some(e) = self.get(level) {
            return Ok(e);
        }
        let divs = divisors_with_cotau(n);
        let overflow = || Error::Internal(format!("oracle overflow at level {level}"));
        let mut rest: i64 = 0;
        let mut star: i64 = 0;
        for &(d, t) in &divs[..divs.len() - 1] {
            let e = self.get(d).ok_or_else(|| {
                Error::Sequencing(format!("level {level} needs divisor {d} solved first"))
            })?;
            let gp = e.g_plus as i64;
            rest = rest.checked_add(gp.checked_mul(t as i64).ok_or_else(overflow)?).ok_or_else(overflow)?;
            star = star.checked_add(gp).ok_or_else(overflow)?;
        }
        let g_plus = self.full_dimension(n)?.checked_sub(rest).ok_or_else(overflow)?;
        if g_plus < 0 {
            return Err(Error::Internal(format!(
                "oracle gives negative newform dimension {g_plus} at level {level}, weight {}",
                self.k
            )));
        }
        let entry = OracleEntry { g_plus: g_plus as u64, g_star: (star + g_plus) as u64 };
        let idx = level as usize;
        if self.entries.len() <= idx {
            self.entries.resize(idx + 1, None);
        }
        self.entries[idx] = Some(entry);
        Ok(entry)
    }

    /// Solve every level up to `x` in increasing order.
    pub fn fill(&mut self, x: u64) -> Result<()> {
        let fz = Factorizer::shared();
        for n in 1..=x {
            self.solve(&fz.factorize(n)?)?;
        }
        Ok(())
    }

    pub fn filled(group: Group, k: i64, x: u64) -> Result<Self> {
        let mut t = OracleTable::new(group, k)?;
        t.fill(x)?;
        Ok(t)
    }
}

fn check_family(table: &OracleTable, n: u64, k: i64) -> Result<()> {
    if table.k as i64 != k {
        return Err(Error::Usage(format!("table has weight {}, asked for {k}", table.k)));
    }
    if n == 0 {
        return Err(Error::Domain("level must be positive".into()));
    }
    Ok(())
}

pub fn recursive_newform_dim(n: u64, k: i64, table: &mut OracleTable) -> Result<u64> {
    check_family(table, n, k)?;
    Ok(table.solve(&crate::arith::factorize(n)?)?.g_plus)
}

pub fn recursive_star_dim(n: u64, k: i64, table: &mut OracleTable) -> Result<u64> {
    check_family(table, n, k)?;
    Ok(table.solve(&crate::arith::factorize(n)?)?.g_star)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub family: Family,
    #[serde(rename = "N")]
    pub n: u64,
    pub k: u32,
    /// Closed-form value as an exact rational.
    pub formula: String,
    pub oracle: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub group: Group,
    pub limit: u64,
    pub weights: Vec<u32>,
    /// Number of (family, N, k) comparisons.
    pub checked: u64,
    /// Closed forms that were not nonnegative integers.
    pub integrality_failures: u64,
    /// Sorted by level, then weight, then family.
    pub mismatches: Vec<Mismatch>,
}

impl ConsistencyReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.integrality_failures == 0
    }
}

/// Compare the closed forms for `g⁺` and `g*` with the oracle at every
/// `N ≤ x` and `k` in `weights`.
pub fn consistency_scan(group: Group, x: u64, weights: &[i64]) -> Result<ConsistencyReport> {
    consistency_scan_with(DimensionEngine::standard(), group, x, weights)
}

/// As [`consistency_scan`], with the closed forms taken from `engine`.
pub fn consistency_scan_with(
    engine: &DimensionEngine,
    group: Group,
    x: u64,
    weights: &[i64],
) -> Result<ConsistencyReport> {
    let coeffs: Vec<WeightCoefficients> = weights.iter().map(|&k| weight_coeffs(k)).collect::<Result<_>>()?;
    let fz = Factorizer::shared();
    let families = [group.newform(), group.star()];
    // k-independent parts of the closed forms, one entry per level
    let terms: Vec<_> = (1..=x)
        .into_par_iter()
        .map(|n| {
            let f = fz.factorize(n)?;
            Ok((engine.level_terms(families[0], &f), engine.level_terms(families[1], &f)))
        })
        .collect::<Result<_>>()?;

    let per_weight: Vec<(Vec<Mismatch>, u64)> = coeffs
        .par_iter()
        .map(|w| -> Result<(Vec<Mismatch>, u64)> {
            let mut table = OracleTable::new(group, w.k as i64)?;
            let mut mism = Vec::new();
            let mut bad = 0u64;
            for n in 1..=x {
                let entry = table.solve(&fz.factorize(n)?)?;
                let (tp, ts) = &terms[n as usize - 1];
                for (fam, t, want) in [(families[0], tp, entry.g_plus), (families[1], ts, entry.g_star)] {
                    let raw = t.combine(w);
                    if !raw.is_integer() || raw.is_negative() {
                        bad += 1;
                    }
                    if raw != crate::rational::ExactRational::from(want) {
                        mism.push(Mismatch { family: fam, n, k: w.k, formula: raw.to_string(), oracle: want });
                    }
                }
            }
            Ok((mism, bad))
        })
        .collect::<Result<_>>()?;

    let mut mismatches = Vec::new();
    let mut integrality_failures = 0;
    for (m, b) in per_weight {
        mismatches.extend(m);
        integrality_failures += b;
    }
    mismatches.sort_by_key(|m| (m.n, m.k, m.family));
    Ok(ConsistencyReport {
        group,
        limit: x,
        weights: coeffs.iter().map(|w| w.k).collect(),
        checked: 2 * x * coeffs.len() as u64,
        integrality_failures,
        mismatches,
    })
}
