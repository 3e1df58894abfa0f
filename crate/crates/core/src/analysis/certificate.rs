//! Certified cutoffs: explicit lower-bound curves for weight-2 dimensions.
//!
//! For `g0plus` a non-square level satisfies
//! `g⁺(N,2) > A N log2 / (12 log 2N) - (7/12) C N^θ - 1` and a square level
//! `N = M²` satisfies
//! `g⁺(M²,2) > A M² log2 / (12 log 2M) - M/2 - (7/12) C M^θ - 1`, with `A`
//! any lower bound for `A₀⁺`, `C = 2^{4 - log16/log11}` and
//! `θ = log2/log11`. For `g0` and `N > 36`,
//! `g(N,2) > (N - 6√N)/12 - (7/12) C N^θ`.
//! Each curve is checked to be increasing past its turning point on a
//! geometric grid, then bisected for the first argument where it reaches `B`.

use serde::Serialize;

use crate::constants::Constants;
use crate::dimension::Family;
use crate::error::{Error, Result};

pub fn omega_constant() -> f64 {
    2f64.powf(4.0 - 16f64.ln() / 11f64.ln())
}

pub fn omega_exponent() -> f64 {
    2f64.ln() / 11f64.ln()
}

/// Safety margin on curve values: the curve must clear `B` by this much.
const CURVE_MARGIN: f64 = 1e-6;
/// Grid used for the monotonicity check of each curve.
const GRID_RATIO: f64 = 1.01;
const GRID_END: f64 = 1e18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    /// `g0plus`, non-square `N`.
    PlusNonSquare,
    /// `g0plus`, `N = M²`, argument `M`.
    PlusSquare,
    /// `g0`, every `N > 36`.
    FullSpace,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CurveParams {
    pub a0plus_lower: f64,
    pub omega_constant: f64,
    pub theta: f64,
}

impl CurveParams {
    pub fn standard() -> Self {
        CurveParams {
            a0plus_lower: Constants::shared().A0plus.lower(),
            omega_constant: omega_constant(),
            theta: omega_exponent(),
        }
    }
}

impl CurveKind {
    pub fn eval(self, p: &CurveParams, t: f64) -> f64 {
        let l2 = 2f64.ln();
        let omega = 7.0 / 12.0 * p.omega_constant * t.powf(p.theta);
        match self {
            CurveKind::PlusNonSquare => p.a0plus_lower * t * l2 / (12.0 * (2.0 * t).ln()) - omega - 1.0,
            CurveKind::PlusSquare => {
                p.a0plus_lower * t * t * l2 / (12.0 * (2.0 * t).ln()) - t / 2.0 - omega - 1.0
            }
            CurveKind::FullSpace => (t - 6.0 * t.sqrt()) / 12.0 - omega,
        }
    }

    pub fn derivative(self, p: &CurveParams, t: f64) -> f64 {
        let l2 = 2f64.ln();
        let lg = (2.0 * t).ln();
        let omega = 7.0 / 12.0 * p.omega_constant * p.theta * t.powf(p.theta - 1.0);
        match self {
            CurveKind::PlusNonSquare => p.a0plus_lower * l2 / 12.0 * (lg - 1.0) / (lg * lg) - omega,
            CurveKind::PlusSquare => p.a0plus_lower * l2 / 12.0 * t * (2.0 * lg - 1.0) / (lg * lg) - 0.5 - omega,
            CurveKind::FullSpace => (1.0 - 3.0 / t.sqrt()) / 12.0 - omega,
        }
    }

    /// Where the curve and its hypotheses are known to be increasing.
    pub fn turning_point(self) -> u64 {
        match self {
            CurveKind::PlusNonSquare => 9_000,
            CurveKind::PlusSquare => 170,
            CurveKind::FullSpace => 100,
        }
    }
}

/// One certified branch: the curve exceeds `bound` for every argument
/// `t >= threshold`.
#[derive(Clone, Debug, Serialize)]
pub struct BranchCertificate {
    pub curve: CurveKind,
    pub turning_point: u64,
    pub threshold: u64,
    pub value_at_threshold: f64,
    /// Largest level not covered by this branch.
    pub level_cutoff: u64,
    pub grid_ratio: f64,
    pub grid_end: f64,
    pub grid_points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchCertificate {
    pub family: Family,
    pub k: u32,
    pub bound: u64,
    /// `dim > bound` for every `N > cutoff`.
    pub cutoff: u64,
    pub params: CurveParams,
    pub branches: Vec<BranchCertificate>,
}

fn grid_is_increasing(kind: CurveKind, p: &CurveParams, start: f64) -> Result<usize> {
    let mut t = start;
    let mut points = 0;
    let mut prev = kind.eval(p, t);
    while t < GRID_END {
        let d = kind.derivative(p, t);
        let v = kind.eval(p, t);
        if d <= 0.0 || v < prev {
            return Err(Error::Internal(format!("{kind:?} curve is not increasing near {t}")));
        }
        prev = v;
        points += 1;
        t *= GRID_RATIO;
    }
    Ok(points)
}

fn certify_branch(kind: CurveKind, p: &CurveParams, bound: u64) -> Result<BranchCertificate> {
    let turning = kind.turning_point();
    let points = grid_is_increasing(kind, p, turning as f64)?;
    let target = bound as f64 + CURVE_MARGIN;
    let ok = |t: u64| kind.eval(p, t as f64) >= target;
    // first t >= turning with curve(t) >= target
    let lo = turning;
    let threshold = if ok(lo) {
        lo
    } else {
        let mut hi = lo.max(1) * 2;
        while !ok(hi) {
            hi = hi.checked_mul(2).ok_or_else(|| Error::Resource("curve never reaches the bound".into()))?;
        }
        let (mut a, mut b) = (lo, hi);
        while b - a > 1 {
            let m = a + (b - a) / 2;
            if ok(m) {
                b = m;
            } else {
                a = m;
            }
        }
        b
    };
    // levels above the cutoff lie beyond the threshold
    let level_cutoff = match kind {
        CurveKind::PlusSquare => (threshold - 1) * (threshold - 1),
        _ => threshold - 1,
    };
    Ok(BranchCertificate {
        curve: kind,
        turning_point: turning,
        threshold,
        value_at_threshold: kind.eval(p, threshold as f64),
        level_cutoff,
        grid_ratio: GRID_RATIO,
        grid_end: GRID_END,
        grid_points: points,
    })
}

/// A proven cutoff for `dim(family, N, k) <= bound`.
///
/// Available at weight 2 for `g0plus`, for `g0star` (through `g* >= g⁺`)
/// and for `g0`.
pub fn certified_cutoff(family: Family, k: i64, bound: u64) -> Result<SearchCertificate> {
    certified_cutoff_with(family, k, bound, CurveParams::standard())
}

pub fn certified_cutoff_with(family: Family, k: i64, bound: u64, params: CurveParams) -> Result<SearchCertificate> {
    if k != 2 {
        return Err(Error::Precondition(format!("no certified curve at weight {k}; only k = 2")));
    }
    let kinds: &[CurveKind] = match family {
        Family::G0Plus | Family::G0Star => &[CurveKind::PlusNonSquare, CurveKind::PlusSquare],
        Family::G0 => &[CurveKind::FullSpace],
        _ => return Err(Error::Precondition(format!("no certified curve for {family}"))),
    };
    let branches = kinds
        .iter()
        .map(|&kind| certify_branch(kind, &params, bound))
        .collect::<Result<Vec<_>>>()?;
    let cutoff = branches.iter().map(|b| b.level_cutoff).max().unwrap_or(0);
    Ok(SearchCertificate { family, k: 2, bound, cutoff, params, branches })
}

impl SearchCertificate {
    /// Re-evaluate each branch at its threshold and spot-check the grid.
    pub fn verify(&self) -> bool {
        self.branches.iter().all(|b| {
            b.curve.eval(&self.params, b.threshold as f64) > self.bound as f64
                && grid_is_increasing(b.curve, &self.params, b.turning_point as f64).is_ok()
        })
    }
}
