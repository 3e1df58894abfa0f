//! Integer arithmetic: factorization, divisors, the classical arithmetic
//! functions and the two quadratic characters the dimension formulas use.

use std::fmt;
use std::str::FromStr;

use once_cell::sync::Lazy;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default limit of the shared smallest-prime-factor table.
pub const DEFAULT_SIEVE_LIMIT: u64 = 10_000_000;

/// Canonical prime-power decomposition `n = ∏ p^e`, primes strictly
/// increasing. The factorization of 1 is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization::default()
    }

    /// Builds a factorization from `(prime, exponent)` pairs. The pairs are
    /// sorted and merged; primality of each base is checked by trial
    /// division.
    pub fn from_pairs(pairs: &[(u64, u32)]) -> Result<Self> {
        let mut factors: Vec<(u64, u32)> = Vec::with_capacity(pairs.len());
        let mut sorted = pairs.to_vec();
        sorted.sort_unstable();
        for (p, e) in sorted {
            if e == 0 {
                continue;
            }
            if !is_prime(p) {
                return Err(Error::Domain(format!("{p} is not prime")));
            }
            match factors.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => factors.push((p, e)),
            }
        }
        let f = Factorization { factors };
        f.checked_value()?;
        Ok(f)
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn checked_value(&self) -> Result<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            p.checked_pow(e)
                .and_then(|pe| acc.checked_mul(pe))
                .ok_or_else(|| Error::Domain("factorization value exceeds u64".into()))
        })
    }

    /// The recomposed integer. Factorizations are only ever built for values
    /// that fit in a `u64`.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn is_square(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e % 2 == 0)
    }

    /// Exponent of `p` (0 when `p` does not divide).
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }

    /// Factorization of `self / p^e`, or `None` if `p^e` does not divide.
    pub fn divide_prime_power(&self, p: u64, e: u32) -> Option<Factorization> {
        if e == 0 {
            return Some(self.clone());
        }
        let have = self.exponent(p);
        if have < e {
            return None;
        }
        let factors = self
            .factors
            .iter()
            .filter_map(|&(q, f)| {
                if q != p {
                    Some((q, f))
                } else if f > e {
                    Some((q, f - e))
                } else {
                    None
                }
            })
            .collect();
        Some(Factorization { factors })
    }

    /// Factorization of `self / d` for a small divisor `d` given by its own
    /// factorization, or `None` if `d` does not divide.
    pub fn divide(&self, d: &Factorization) -> Option<Factorization> {
        d.factors
            .iter()
            .try_fold(self.clone(), |acc, &(p, e)| acc.divide_prime_power(p, e))
    }

    pub fn square(&self) -> Factorization {
        Factorization {
            factors: self.factors.iter().map(|&(p, e)| (p, 2 * e)).collect(),
        }
    }

    /// All divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest-prime-factor table up to a fixed limit, with trial division
/// beyond it.
pub struct Factorizer {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl Factorizer {
    /// Linear sieve over `[0, limit]`.
    pub fn new(limit: u64) -> Self {
        let limit = limit.clamp(2, u32::MAX as u64 - 1) as usize;
        let mut spf = vec![0u32; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        Factorizer { spf, primes }
    }

    /// The process-wide table of size [`DEFAULT_SIEVE_LIMIT`].
    pub fn shared() -> &'static Factorizer {
        static SHARED: Lazy<Factorizer> = Lazy::new(|| Factorizer::new(DEFAULT_SIEVE_LIMIT));
        &SHARED
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Smallest prime factor of `n` for `2 <= n <= limit`.
    pub fn smallest_prime_factor(&self, n: u64) -> Option<u64> {
        (n >= 2 && n <= self.limit()).then(|| self.spf[n as usize] as u64)
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::Domain("cannot factorize 0".into()));
        }
        let mut factors = Vec::new();
        let mut m = n;
        if m > self.limit() {
            for &p in &self.primes {
                let p = p as u64;
                if p > m / p {
                    break;
                }
                if m.is_multiple_of(p) {
                    let mut e = 0;
                    while m.is_multiple_of(p) {
                        m /= p;
                        e += 1;
                    }
                    factors.push((p, e));
                    if m <= self.limit() {
                        break;
                    }
                }
            }
            if m > self.limit() {
                // Plain trial division past the end of the prime table.
                let mut d = self.primes.last().map_or(3, |&p| p as u64 + 2) | 1;
                while d <= m / d {
                    if m.is_multiple_of(d) {
                        let mut e = 0;
                        while m.is_multiple_of(d) {
                            m /= d;
                            e += 1;
                        }
                        factors.push((d, e));
                    }
                    d += 2;
                }
                if m > 1 {
                    factors.push((m, 1));
                    m = 1;
                }
            }
        }
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        Ok(Factorization { factors })
    }
}

/// Factorization via the shared table.
pub fn factorize(n: u64) -> Result<Factorization> {
    Factorizer::shared().factorize(n)
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

/// The classical arithmetic functions exposed by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithmeticFunction {
    Phi,
    Mu,
    Tau,
    Omega,
    Delta,
    One,
    Id,
}

impl FromStr for ArithmeticFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "phi" => Self::Phi,
            "mu" => Self::Mu,
            "tau" => Self::Tau,
            "omega" => Self::Omega,
            "delta" => Self::Delta,
            "one" => Self::One,
            "id" => Self::Id,
            _ => return Err(Error::Usage(format!("unknown arithmetic function '{s}'"))),
        })
    }
}

impl ArithmeticFunction {
    pub fn eval_factored(self, f: &Factorization) -> i128 {
        let fs = f.factors();
        match self {
            Self::Phi => fs
                .iter()
                .map(|&(p, e)| ((p - 1) as i128) * (p as i128).pow(e - 1))
                .product(),
            Self::Mu => {
                if f.is_squarefree() {
                    if fs.len().is_multiple_of(2) {
                        1
                    } else {
                        -1
                    }
                } else {
                    0
                }
            }
            Self::Tau => fs.iter().map(|&(_, e)| e as i128 + 1).product(),
            Self::Omega => fs.len() as i128,
            Self::Delta => f.is_one() as i128,
            Self::One => 1,
            Self::Id => f.value() as i128,
        }
    }

    pub fn eval(self, n: u64) -> Result<i128> {
        Ok(self.eval_factored(&factorize(n)?))
    }
}

/// Shorthand for [`ArithmeticFunction`] lookup by name.
pub fn arithmetic_function(name: &str, n: u64) -> Result<i128> {
    name.parse::<ArithmeticFunction>()?.eval(n)
}

/// The nonprincipal characters modulo 4 and 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Character {
    ChiMinus4,
    ChiMinus3,
}

impl FromStr for Character {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chi_minus4" => Ok(Self::ChiMinus4),
            "chi_minus3" => Ok(Self::ChiMinus3),
            _ => Err(Error::Usage(format!("unknown character '{s}'"))),
        }
    }
}

impl Character {
    pub fn eval(self, n: u64) -> i64 {
        match self {
            Self::ChiMinus4 => match n % 4 {
                1 => 1,
                3 => -1,
                _ => 0,
            },
            Self::ChiMinus3 => match n % 3 {
                1 => 1,
                2 => -1,
                _ => 0,
            },
        }
    }
}

pub fn character(name: &str, n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Domain("characters are evaluated at n >= 1".into()));
    }
    Ok(name.parse::<Character>()?.eval(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().is_one());
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(132000).unwrap().factors(), trial_factor(132000).as_slice());
        assert_eq!(factorize(132000).unwrap().factors(), &[(2, 5), (3, 1), (5, 3), (11, 1)]);
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
    }

    #[test]
    fn factorize_beyond_sieve() {
        let fz = Factorizer::new(1000);
        for n in [1_000_003u64, 999_983 * 991, 2u64.pow(40) * 3, 1_000_000_007 * 13] {
            assert_eq!(fz.factorize(n).unwrap().factors(), trial_factor(n).as_slice(), "n = {n}");
        }
        // largest prime below 2^32 squared
        let p = 4_294_967_291u64;
        assert_eq!(fz.factorize(p).unwrap().factors(), &[(p, 1)]);
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(22).unwrap(), vec![1, 2, 11, 22]);
        let brute = (1..=36u64).filter(|d| 36 % d == 0).count();
        assert_eq!(brute, 9);
        assert_eq!(divisors(36).unwrap().len(), brute);
    }

    #[test]
    fn arithmetic_function_examples() {
        let brute_phi = (1..=35u64).filter(|&a| gcd(a, 35) == 1).count() as i128;
        assert_eq!(brute_phi, 24);
        assert_eq!(arithmetic_function("phi", 35).unwrap(), brute_phi);
        assert_eq!(arithmetic_function("mu", 30).unwrap(), -1);
        assert_eq!(arithmetic_function("delta", 1).unwrap(), 1);
        assert_eq!(arithmetic_function("delta", 7).unwrap(), 0);
        assert_eq!(arithmetic_function("id", 7).unwrap(), 7);
        assert_eq!(arithmetic_function("one", 7).unwrap(), 1);
        assert!(matches!(arithmetic_function("sigma", 7), Err(Error::Usage(_))));
        assert!(matches!(arithmetic_function("phi", 0), Err(Error::Domain(_))));
    }

    #[test]
    fn character_examples() {
        assert_eq!(character("chi_minus4", 11).unwrap(), -1);
        assert_eq!(character("chi_minus3", 2).unwrap(), -1);
        assert_eq!(character("chi_minus4", 2).unwrap(), 0);
        assert!(matches!(character("kronecker", 2), Err(Error::Usage(_))));
    }

    #[test]
    fn arithmetic_invariants_to_1e5() {
        let fz = Factorizer::shared();
        for n in 1..=100_000u64 {
            let f = fz.factorize(n).unwrap();
            assert_eq!(f.value(), n);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            let divs = f.divisors();
            assert_eq!(divs.len() as i128, ArithmeticFunction::Tau.eval_factored(&f));
            let mut phi_sum = 0i128;
            let mut mu_sum = 0i128;
            for &d in &divs {
                let fd = fz.factorize(d).unwrap();
                phi_sum += ArithmeticFunction::Phi.eval_factored(&fd);
                mu_sum += ArithmeticFunction::Mu.eval_factored(&fd);
            }
            assert_eq!(phi_sum, n as i128);
            assert_eq!(mu_sum, ArithmeticFunction::Delta.eval_factored(&f));
        }
    }

    #[test]
    fn characters_are_periodic_and_completely_multiplicative() {
        for c in [Character::ChiMinus4, Character::ChiMinus3] {
            let period = if c == Character::ChiMinus4 { 4 } else { 3 };
            for n in 1..=10_000u64 {
                assert_eq!(c.eval(n), c.eval(n + period));
            }
            for m in 1..=100u64 {
                for n in 1..=100u64 {
                    assert_eq!(c.eval(m * n), c.eval(m) * c.eval(n));
                }
            }
        }
    }

    #[test]
    fn factorization_helpers() {
        let f = factorize(360).unwrap();
        assert_eq!(f.divide_prime_power(2, 2).unwrap().value(), 90);
        assert!(f.divide_prime_power(5, 2).is_none());
        assert_eq!(f.divide(&factorize(12).unwrap()).unwrap().value(), 30);
        assert_eq!(f.square().value(), 360 * 360);
        assert_eq!(f.to_string(), "2^3*3^2*5");
        assert_eq!(Factorization::from_pairs(&[(3, 1), (2, 2), (3, 1)]).unwrap().value(), 36);
        assert!(Factorization::from_pairs(&[(4, 1)]).is_err());
    }
}
