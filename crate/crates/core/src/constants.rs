use once_cell::sync::Lazy;
use serde::Serialize;

use crate::dirichlet::{euler_product_constant, CertifiedValue, LocalFactor};
use crate::error::Result;

/// Primes up to this bound enter the default Euler products.
pub const DEFAULT_EULER_CUTOFF: u64 = 10_000_000;

/// Classical constants as correctly rounded doubles; the radius covers the
/// rounding.
const fn classical(value: f64) -> CertifiedValue {
    CertifiedValue { value, radius: 1e-15 }
}

pub const EULER_GAMMA: CertifiedValue = classical(0.577_215_664_901_532_9);
pub const ZETA2: CertifiedValue = classical(1.644_934_066_848_226_4);
pub const ZETA3: CertifiedValue = classical(1.202_056_903_159_594_3);
pub const ZETA4: CertifiedValue = classical(1.082_323_233_711_138_2);
pub const PI: CertifiedValue = classical(std::f64::consts::PI);

#[derive(Clone, Debug, Serialize)]
#[allow(non_snake_case)]
pub struct Constants {
    pub cutoff: u64,
    pub A0plus: CertifiedValue,
    pub A1star: CertifiedValue,
    pub A1plus: CertifiedValue,
    pub B0: CertifiedValue,
    pub B1: CertifiedValue,
    pub gammaEuler: CertifiedValue,
    pub zeta2: CertifiedValue,
    pub zeta3: CertifiedValue,
    pub zeta4: CertifiedValue,
    pub pi: CertifiedValue,
}

static SHARED: Lazy<Constants> =
    Lazy::new(|| Constants::compute(DEFAULT_EULER_CUTOFF).expect("default Euler products converge"));

impl Constants {
    pub fn compute(cutoff: u64) -> Result<Self> {
        Ok(Constants {
            cutoff,
            A0plus: euler_product_constant(&LocalFactor::a0_plus(), cutoff)?,
            A1star: euler_product_constant(&LocalFactor::a1_star(), cutoff)?,
            A1plus: euler_product_constant(&LocalFactor::a1_plus(), cutoff)?,
            B0: euler_product_constant(&LocalFactor::b0(), cutoff)?,
            B1: euler_product_constant(&LocalFactor::b1(), cutoff)?,
            gammaEuler: EULER_GAMMA,
            zeta2: ZETA2,
            zeta3: ZETA3,
            zeta4: ZETA4,
            pi: PI,
        })
    }

    /// Computed once at the default cutoff.
    pub fn shared() -> &'static Constants {
        &SHARED
    }

    /// Name/value pairs in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, CertifiedValue)> {
        vec![
            ("A0plus", self.A0plus),
            ("A1star", self.A1star),
            ("A1plus", self.A1plus),
            ("B0", self.B0),
            ("B1", self.B1),
            ("gammaEuler", self.gammaEuler),
            ("zeta2", self.zeta2),
            ("zeta3", self.zeta3),
            ("zeta4", self.zeta4),
            ("pi", self.pi),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_constants_are_consistent() {
        let pi = PI.value;
        assert!((ZETA2.value - pi * pi / 6.0).abs() < 1e-15);
        assert!((ZETA4.value - pi.powi(4) / 90.0).abs() < 1e-15);
    }

    #[test]
    fn small_cutoff_radius_still_covers_default() {
        let coarse = Constants::compute(10_000).unwrap();
        let fine = Constants::shared();
        for ((name, c), (_, f)) in coarse.entries().into_iter().zip(fine.entries()) {
            assert!((c.value - f.value).abs() <= c.radius + f.radius, "{name}");
        }
        assert!(fine.A0plus.radius < 1e-7);
    }
}
