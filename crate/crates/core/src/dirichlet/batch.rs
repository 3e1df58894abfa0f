use serde::Serialize;

use super::MultiplicativeFunction;
use crate::arith::Factorizer;
use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Memory cap for batch tables.
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

/// Rough per-entry footprint of a table of exact rationals.
const BYTES_PER_ENTRY: u64 = 64;

/// `f(1), …, f(x)` in one pass over a smallest-prime-factor sieve: each
/// entry is `f(n / p^e) · f(p^e)` with `p` the smallest prime of `n`.
/// Index 0 of the result holds `f(1)`.
pub fn sieve_batch_eval(f: &MultiplicativeFunction, x: u64) -> Result<Vec<ExactRational>> {
    sieve_batch_eval_with_budget(f, x, DEFAULT_MEMORY_BUDGET)
}

pub fn sieve_batch_eval_with_budget(
    f: &MultiplicativeFunction,
    x: u64,
    budget_bytes: u64,
) -> Result<Vec<ExactRational>> {
    if x == 0 {
        return Err(Error::Domain("batch evaluation needs x >= 1".into()));
    }
    // value table plus the two u32 work arrays
    let need = x.saturating_mul(BYTES_PER_ENTRY + 8);
    if need > budget_bytes {
        return Err(Error::Resource(format!(
            "a table of {x} values needs about {need} bytes, budget is {budget_bytes}"
        )));
    }
    let shared;
    let local;
    let fz = if x <= Factorizer::shared().limit() {
        shared = Factorizer::shared();
        shared
    } else {
        local = Factorizer::new(x);
        &local
    };
    let n_max = x as usize;
    // values[n] with values[0] unused
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(ExactRational::zero());
    values.push(ExactRational::one());
    // largest power of the smallest prime dividing n, and its exponent
    let mut pk = vec![0u32; n_max + 1];
    let mut ex = vec![0u8; n_max + 1];
    for n in 2..=n_max {
        let p = fz.smallest_prime_factor(n as u64).expect("within sieve") as usize;
        let m = n / p;
        if m.is_multiple_of(p) {
            pk[n] = pk[m] * p as u32;
            ex[n] = ex[m] + 1;
        } else {
            pk[n] = p as u32;
            ex[n] = 1;
        }
        let rest = n / pk[n] as usize;
        let v = &values[rest] * f.at_prime_power(p as u64, ex[n] as u32);
        values.push(v);
    }
    values.remove(0);
    Ok(values)
}

/// Exact partial sum `Σ_{n≤x} n^β f(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummatoryReport {
    pub function: String,
    pub limit: u64,
    pub weight: Option<u32>,
    #[serde(serialize_with = "crate::serialize_display")]
    pub sum: ExactRational,
}

pub fn summatory(f: &MultiplicativeFunction, x: u64, weight: Option<u32>) -> Result<SummatoryReport> {
    let values = sieve_batch_eval(f, x)?;
    let beta = weight.unwrap_or(0);
    let sum = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if beta == 0 {
                v.clone()
            } else {
                ExactRational::from(i as u64 + 1).pow(beta) * v
            }
        })
        .sum();
    Ok(SummatoryReport {
        function: f.name().to_string(),
        limit: x,
        weight,
        sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::registry_lookup;

    #[test]
    fn mu_to_ten() {
        let mu = registry_lookup("mu").unwrap();
        let got = sieve_batch_eval(&mu, 10).unwrap();
        let oracle: Vec<_> = (1..=10).map(|n| mu.eval(n).unwrap()).collect();
        assert_eq!(got, oracle);
        let expected: Vec<ExactRational> =
            [1, -1, -1, 0, -1, 1, -1, 0, 0, 1].iter().map(|&v| ExactRational::from(v as i64)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn s0_to_four() {
        let got = sieve_batch_eval(&registry_lookup("s0").unwrap(), 4).unwrap();
        let expected = vec![
            ExactRational::one(),
            ExactRational::new(3, 2),
            ExactRational::new(4, 3),
            ExactRational::new(3, 2),
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn single_entry() {
        for name in ["nu2plus", "u", "lambda"] {
            let f = registry_lookup(name).unwrap();
            assert_eq!(sieve_batch_eval(&f, 1).unwrap(), vec![ExactRational::one()]);
        }
    }

    #[test]
    fn matches_pointwise_eval() {
        for name in ["nu_inf_plus", "s1plus", "uplus", "nu3star", "n_s0plus"] {
            let f = registry_lookup(name).unwrap();
            let batch = sieve_batch_eval(&f, 3000).unwrap();
            for (i, v) in batch.iter().enumerate() {
                assert_eq!(*v, f.eval(i as u64 + 1).unwrap(), "{name}({})", i + 1);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = registry_lookup("mu").unwrap();
        assert!(matches!(
            sieve_batch_eval_with_budget(&f, 1_000_000, 1 << 20),
            Err(Error::Resource(_))
        ));
        assert!(matches!(sieve_batch_eval(&f, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn summatory_is_reproducible() {
        let f = registry_lookup("n_s0").unwrap();
        let a = summatory(&f, 1000, None).unwrap();
        let b = summatory(&f, 1000, None).unwrap();
        assert_eq!(a, b);
        let brute: ExactRational = (1..=1000).map(|n| f.eval(n).unwrap()).sum();
        assert_eq!(a.sum, brute);
        let w = summatory(&registry_lookup("one").unwrap(), 10, Some(2)).unwrap();
        assert_eq!(w.sum, ExactRational::from(385i64));
    }
}
