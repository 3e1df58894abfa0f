//! Empirical average orders against their predicted main terms.
//!
//! Dimension sums are exact integers. A sum of ρ values has a denominator
//! near the lcm of all dimensions, so it is accumulated in fixed point
//! instead: each term is `floor(g⁺ 2^64 / g)`, exact as an integer, and the
//! truncation loses less than `x · 2^-64` in total.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Factorizer;
use crate::constants::{Constants, PI, ZETA3};
use crate::dimension::{weight_coeffs, DimensionEngine, Family, RhoFamily};
use crate::error::{Error, Result};
use crate::rational::ExactRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AverageTarget {
    Dim(Family),
    Rho(RhoFamily),
}

impl fmt::Display for AverageTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AverageTarget::Dim(x) => f.write_str(x.name()),
            AverageTarget::Rho(r) => f.write_str(r.name()),
        }
    }
}

impl FromStr for AverageTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse::<Family>()
            .map(AverageTarget::Dim)
            .or_else(|_| s.parse::<RhoFamily>().map(AverageTarget::Rho))
            .map_err(|_| Error::Usage(format!("unknown average target '{s}'")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AverageCheck {
    pub target: String,
    pub k: u32,
    pub limit: u64,
    /// Exact for dimensions; a decimal with `sum_radius` for ρ.
    pub empirical_sum: String,
    pub sum_radius: f64,
    /// Average-order constant `c` in `c N`, `c N²` or `c`.
    pub constant: f64,
    pub predicted: f64,
    pub ratio: f64,
}

/// Average-order constant for each target at weight `k`.
fn average_constant(target: AverageTarget, k: u32) -> f64 {
    let km1 = k as f64 - 1.0;
    let pi = PI.value;
    let z3 = ZETA3.value;
    match target {
        AverageTarget::Dim(Family::G0) => 5.0 * km1 / (4.0 * pi * pi),
        AverageTarget::Dim(Family::G0Star) => 15.0 * km1 / (2.0 * pi.powi(4)),
        AverageTarget::Dim(Family::G0Plus) => 45.0 * km1 / pi.powi(6),
        AverageTarget::Dim(Family::G1) => km1 / (24.0 * z3),
        AverageTarget::Dim(Family::G1Star) => km1 / (24.0 * z3 * z3),
        AverageTarget::Dim(Family::G1Plus) => km1 / (24.0 * z3.powi(3)),
        AverageTarget::Rho(RhoFamily::Rho0) => Constants::shared().B0.value,
        AverageTarget::Rho(RhoFamily::Rho1) => Constants::shared().B1.value,
    }
}

const FIXED_SHIFT: u32 = 64;

/// Compare `Σ_{N<=x} target(N,k)` with the integral of the average order.
pub fn average_ratio(target: AverageTarget, k: i64, x: u64) -> Result<AverageCheck> {
    if x < 1000 {
        return Err(Error::Precondition(format!("average checks need x >= 1000, got {x}")));
    }
    let w = weight_coeffs(k)?;
    let engine = DimensionEngine::standard();
    let fz = Factorizer::shared();
    let c = average_constant(target, w.k);
    let xf = x as f64;
    match target {
        AverageTarget::Dim(family) => {
            let sum: u128 = (1..=x)
                .into_par_iter()
                .map(|n| Ok(engine.dimension_factored(family, &fz.factorize(n)?, &w)?.value as u128))
                .try_reduce(|| 0, |a, b| Ok(a + b))?;
            let predicted = match family.group() {
                crate::dimension::Group::Gamma0 => c * xf * xf / 2.0,
                crate::dimension::Group::Gamma1 => c * xf * xf * xf / 3.0,
            };
            Ok(AverageCheck {
                target: target.to_string(),
                k: w.k,
                limit: x,
                empirical_sum: sum.to_string(),
                sum_radius: 0.0,
                constant: c,
                predicted,
                ratio: sum as f64 / predicted,
            })
        }
        AverageTarget::Rho(which) => {
            let g = which.group();
            let (full, new) = (g.full(), g.newform());
            let fixed: u128 = (1..=x)
                .into_par_iter()
                .map(|n| {
                    let f = fz.factorize(n)?;
                    let d = engine.dimension_factored(full, &f, &w)?.value as u128;
                    if d == 0 {
                        return Ok(1u128 << FIXED_SHIFT);
                    }
                    let p = engine.dimension_factored(new, &f, &w)?.value as u128;
                    Ok((p << FIXED_SHIFT) / d)
                })
                .try_reduce(|| 0, |a, b| Ok(a + b))?;
            let sum = (fixed >> FIXED_SHIFT) as f64 + (fixed & ((1u128 << FIXED_SHIFT) - 1)) as f64 / 2f64.powi(64);
            let predicted = c * xf;
            Ok(AverageCheck {
                target: target.to_string(),
                k: w.k,
                limit: x,
                empirical_sum: format!("{sum:.12}"),
                sum_radius: xf * 2f64.powi(-(FIXED_SHIFT as i32)) + sum * f64::EPSILON,
                constant: c,
                predicted,
                ratio: sum / predicted,
            })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoFloor {
    pub k: u32,
    pub lo: u64,
    pub hi: u64,
    #[serde(serialize_with = "crate::serialize_display")]
    pub min: ExactRational,
    pub argmin: u64,
}

/// Exact minimum of `ρ₁(N,k)` over `lo <= N <= hi`, smallest argmin.
pub fn rho_floor_scan(k: i64, lo: u64, hi: u64) -> Result<RhoFloor> {
    if lo < 1 || lo > hi {
        return Err(Error::Domain(format!("empty level range {lo}..{hi}")));
    }
    let w = weight_coeffs(k)?;
    let engine = DimensionEngine::standard();
    let fz = Factorizer::shared();
    // (numerator, denominator, N); compared by cross multiplication
    let best = (lo..=hi)
        .into_par_iter()
        .map(|n| {
            let f = fz.factorize(n)?;
            let d = engine.dimension_factored(Family::G1, &f, &w)?.value as u128;
            if d == 0 {
                return Ok((1u128, 1u128, n));
            }
            Ok((engine.dimension_factored(Family::G1Plus, &f, &w)?.value as u128, d, n))
        })
        .try_reduce(
            || (1u128, 1u128, u64::MAX),
            |a, b| {
                let (l, r) = (a.0 * b.1, b.0 * a.1);
                Ok(if l < r || (l == r && a.2 < b.2) { a } else { b })
            },
        )?;
    Ok(RhoFloor {
        k: w.k,
        lo,
        hi,
        min: ExactRational::from_big_ratio(best.0.into(), best.1.into()),
        argmin: best.2,
    })
}
