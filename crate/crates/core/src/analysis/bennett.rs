use rayon::prelude::*;
use serde::Serialize;

use super::scan_values;
use crate::arith::{factorize, ArithmeticFunction, Factorization, Factorizer};
use crate::dimension::{weight_coeffs, DimensionEngine, Family};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct SharpBoundReport {
    pub max_n: u64,
    /// `(N, g⁺(N,2))` with `12 g⁺ > N + 1`.
    pub violations: Vec<(u64, u64)>,
    /// Levels with `12 g⁺ = N + 1`.
    pub equality_set: Vec<u64>,
    /// `{35} ∪ {p ≡ 11 mod 12}` up to `max_n`.
    pub expected_equality_set: Vec<u64>,
}

impl SharpBoundReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.equality_set == self.expected_equality_set
    }
}

/// `g⁺(N,2) <= (N+1)/12` for `N <= max_n`, with the equality cases.
pub fn verify_sharp_bound(max_n: u64) -> Result<SharpBoundReport> {
    let values = scan_values(Family::G0Plus, 2, max_n)?;
    let mut violations = Vec::new();
    let mut equality_set = Vec::new();
    for (i, &g) in values.iter().enumerate() {
        let n = i as u64 + 1;
        match (12 * g).cmp(&(n + 1)) {
            std::cmp::Ordering::Greater => violations.push((n, g)),
            std::cmp::Ordering::Equal => equality_set.push(n),
            _ => {}
        }
    }
    let fz = Factorizer::shared();
    let mut expected_equality_set: Vec<u64> = (1..=max_n)
        .filter(|&n| n == 35 || (n % 12 == 11 && fz.factorize(n).map(|f| f.factors() == [(n, 1)]).unwrap_or(false)))
        .collect();
    expected_equality_set.sort_unstable();
    Ok(SharpBoundReport { max_n, violations, equality_set, expected_equality_set })
}

/// `2^a 3^b 5^c p^d` with `7 <= p <= 41`, all exponents at most 5 and at
/// least three of them positive: the levels left over after the lemma
/// classes in the proof of the sharp bound.
pub fn bennett_residual_levels() -> Vec<Factorization> {
    let primes = [7u64, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &p in &primes {
        for a in 0..=5u32 {
            for b in 0..=5u32 {
                for c in 0..=5u32 {
                    for d in 0..=5u32 {
                        let e = [a, b, c, d];
                        if e.iter().filter(|&&x| x > 0).count() < 3 {
                            continue;
                        }
                        let pairs: Vec<(u64, u32)> =
                            [2, 3, 5, p].iter().zip(e).filter(|&(_, x)| x > 0).map(|(&q, x)| (q, x)).collect();
                        let f = Factorization::from_pairs(&pairs).expect("primes");
                        if seen.insert(f.value()) {
                            out.push(f);
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|f| f.value());
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub levels: usize,
    /// Levels with `g⁺(N,2) > N/12 - 3/2`.
    pub failures: Vec<u64>,
}

/// `g⁺(N,2) <= N/12 - 3/2` on the residual levels.
pub fn verify_bennett_residual() -> Result<ResidualReport> {
    let levels = bennett_residual_levels();
    let w = weight_coeffs(2)?;
    let engine = DimensionEngine::standard();
    let failures = levels
        .par_iter()
        .map(|f| {
            let g = engine.dimension_factored(Family::G0Plus, f, &w)?.value as u128;
            // 12 g <= N - 18
            Ok((12 * g + 18 > f.value() as u128).then(|| f.value()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(ResidualReport { levels: levels.len(), failures })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerOfTwoFailure {
    #[serde(rename = "N")]
    pub n: u64,
    /// `None` for the `2N` inequality.
    pub alpha: Option<u32>,
    pub k: u32,
    pub value: u64,
    pub expected: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerOfTwoReport {
    pub max_odd_n: u64,
    pub alphas: Vec<u32>,
    pub weights: Vec<u32>,
    pub checked: u64,
    pub failures: Vec<PowerOfTwoFailure>,
}

/// `g⁺(2^α N, k) = (k-1) 2^{α-5} φ(N)` for `α >= 4` and
/// `g⁺(2N, k) <= (k-1) φ(N)`, over odd squarefree `3 <= N <= max_odd_n`.
pub fn verify_power_of_two(max_odd_n: u64, alphas: &[u32], weights: &[i64]) -> Result<PowerOfTwoReport> {
    if let Some(a) = alphas.iter().find(|&&a| a < 4) {
        return Err(Error::Precondition(format!("the identity needs alpha >= 4, got {a}")));
    }
    let coeffs = weights.iter().map(|&k| weight_coeffs(k)).collect::<Result<Vec<_>>>()?;
    let engine = DimensionEngine::standard();
    let odd: Vec<Factorization> = (3..=max_odd_n)
        .step_by(2)
        .map(factorize)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|f| f.is_squarefree())
        .collect();
    let results: Vec<(u64, Vec<PowerOfTwoFailure>)> = odd
        .par_iter()
        .map(|f| -> Result<_> {
            let n = f.value();
            let phi = ArithmeticFunction::Phi.eval_factored(f) as u64;
            let mut checked = 0;
            let mut fails = Vec::new();
            for w in &coeffs {
                let km1 = w.k as u64 - 1;
                for &alpha in alphas {
                    let mut pairs = vec![(2u64, alpha)];
                    pairs.extend_from_slice(f.factors());
                    let level = Factorization::from_pairs(&pairs)?;
                    let value = engine.dimension_factored(Family::G0Plus, &level, w)?.value;
                    // (k-1) 2^{α-5} φ(N) with φ(N) even
                    let expected = km1 * (phi << (alpha - 4)) / 2;
                    checked += 1;
                    if value != expected {
                        fails.push(PowerOfTwoFailure { n, alpha: Some(alpha), k: w.k, value, expected });
                    }
                }
                let mut pairs = vec![(2u64, 1)];
                pairs.extend_from_slice(f.factors());
                let value = engine.dimension_factored(Family::G0Plus, &Factorization::from_pairs(&pairs)?, w)?.value;
                checked += 1;
                if value > km1 * phi {
                    fails.push(PowerOfTwoFailure { n, alpha: None, k: w.k, value, expected: km1 * phi });
                }
            }
            Ok((checked, fails))
        })
        .collect::<Result<_>>()?;
    let mut checked = 0;
    let mut failures = Vec::new();
    for (c, f) in results {
        checked += c;
        failures.extend(f);
    }
    Ok(PowerOfTwoReport {
        max_odd_n,
        alphas: alphas.to_vec(),
        weights: coeffs.iter().map(|w| w.k).collect(),
        checked,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharp_bound_small() {
        let r = verify_sharp_bound(34).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.equality_set, vec![11, 23]);
        let r = verify_sharp_bound(100).unwrap();
        for n in [11, 23, 35, 47, 59, 71] {
            assert!(r.equality_set.contains(&n));
        }
        assert!(r.holds());
    }

    #[test]
    fn residual_family_size() {
        assert_eq!(bennett_residual_levels().len(), 10_125);
    }

    #[test]
    fn power_of_two_examples() {
        let d = |n| crate::dimension::dimension(Family::G0Plus, n, 2).unwrap().value;
        assert_eq!(d(96), 2);
        assert_eq!(d(48), 1);
        assert_eq!(d(6), 0);
        let r = verify_power_of_two(99, &[4, 5, 6], &[2, 4]).unwrap();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        assert!(verify_power_of_two(9, &[3], &[2]).is_err());
    }
}
