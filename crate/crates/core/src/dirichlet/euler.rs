//! Euler products over primes with a certified error radius.
//!
//! A local factor is a rational function of `x = 1/p` with integer
//! coefficients. The product converges absolutely exactly when
//! `num - den` has no constant or linear term, and then
//! `|log f(p)| <= C/p^2` for an explicit `C`; the tail over `p > P` is
//! bounded with `Σ_{p>P} p^-2 <= 1/(3P) + 2/P^2` (primes above 3 are prime
//! to 6). Floating-point evaluation error is bounded term by term.

use serde::Serialize;

use super::MultiplicativeFunction;
use crate::arith::Factorizer;
use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// A value with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CertifiedValue {
    pub value: f64,
    pub radius: f64,
}

impl CertifiedValue {
    pub fn lower(&self) -> f64 {
        self.value - self.radius
    }

    pub fn upper(&self) -> f64 {
        self.value + self.radius
    }

    pub fn contains(&self, x: f64) -> bool {
        (x - self.value).abs() <= self.radius
    }

    /// Decimal places covered by the radius.
    pub fn certified_decimals(&self) -> usize {
        if self.radius <= 0.0 {
            return 15;
        }
        (-(2.0 * self.radius).log10()).floor().clamp(0.0, 15.0) as usize
    }

    /// `value` to the certified number of decimals.
    pub fn display(&self) -> String {
        format!("{:.*}", self.certified_decimals(), self.value)
    }
}

/// `num(1/p) / den(1/p)`, coefficients in increasing powers of `x = 1/p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFactor {
    pub num: Vec<i64>,
    pub den: Vec<i64>,
}

fn horner(c: &[i64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a as f64)
}

fn abs_horner(c: &[i64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + (a as f64).abs())
}

fn exact_poly(c: &[i64], p: u64) -> ExactRational {
    let x = ExactRational::new(1, p as i64);
    c.iter()
        .rev()
        .fold(ExactRational::zero(), |acc, &a| acc * &x + ExactRational::from(a))
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl LocalFactor {
    pub fn new(num: Vec<i64>, den: Vec<i64>) -> Result<Self> {
        if num.is_empty() || den.is_empty() || den[0] == 0 {
            return Err(Error::Domain("local factor needs a nonzero constant denominator term".into()));
        }
        Ok(LocalFactor { num, den })
    }

    /// `∏_p (1 - 1/(p^2 - p))`
    pub fn a0_plus() -> Self {
        LocalFactor { num: vec![1, -1, -1], den: vec![1, -1] }
    }

    /// `∏_p (1 - 2/p^2)`
    pub fn a1_star() -> Self {
        LocalFactor { num: vec![1, 0, -2], den: vec![1] }
    }

    /// `∏_p (1 - 3/p^2)`
    pub fn a1_plus() -> Self {
        LocalFactor { num: vec![1, 0, -3], den: vec![1] }
    }

    /// `∏_p (1 - 1/p)(1 + 1/p)^-1 (1 + 2/p - 1/p^4 - 1/p^5)`
    pub fn b0() -> Self {
        LocalFactor { num: poly_mul(&[1, -1], &[1, 2, 0, 0, -1, -1]), den: vec![1, 1] }
    }

    /// `∏_p (1 + 1/p)^-1 (1 + 1/p - 2/p^3 - 2/p^4 - 2/p^5 + 1/p^6 + 1/p^7 + 1/p^8)`
    pub fn b1() -> Self {
        LocalFactor { num: vec![1, 1, 0, -2, -2, -2, 1, 1, 1], den: vec![1, 1] }
    }

    /// `∏_p (1 - 1/p^2) = 6/π^2`
    pub fn inverse_zeta2() -> Self {
        LocalFactor { num: vec![1, 0, -1], den: vec![1] }
    }

    /// `num - den`, i.e. the numerator of `f - 1`.
    fn excess(&self) -> Vec<i64> {
        let n = self.num.len().max(self.den.len());
        (0..n)
            .map(|i| self.num.get(i).copied().unwrap_or(0) - self.den.get(i).copied().unwrap_or(0))
            .collect()
    }

    pub fn exact_at(&self, p: u64) -> ExactRational {
        exact_poly(&self.num, p) / exact_poly(&self.den, p)
    }

    pub fn at(&self, p: u64) -> f64 {
        let x = 1.0 / p as f64;
        horner(&self.num, x) / horner(&self.den, x)
    }
}

const EPS: f64 = f64::EPSILON;

/// `∏_{p ≤ P} f(p)` extended to the full product with a rigorous radius.
pub fn euler_product_constant(factor: &LocalFactor, cutoff: u64) -> Result<CertifiedValue> {
    let shared = Factorizer::shared();
    if cutoff <= shared.limit() {
        euler_product_with(factor, cutoff, shared.primes())
    } else {
        euler_product_with(factor, cutoff, Factorizer::new(cutoff).primes())
    }
}

fn euler_product_with(factor: &LocalFactor, cutoff: u64, primes: &[u32]) -> Result<CertifiedValue> {
    if cutoff < 3 {
        return Err(Error::Domain("Euler product cutoff must be at least 3".into()));
    }
    let mut excess = factor.excess();
    let mut den = factor.den.clone();
    if den[0] < 0 {
        excess.iter_mut().for_each(|c| *c = -*c);
        den.iter_mut().for_each(|c| *c = -*c);
    }
    if excess.first().copied().unwrap_or(0) != 0 || excess.get(1).copied().unwrap_or(0) != 0 {
        return Err(Error::Domain(
            "local factor is not 1 + O(1/p^2); the Euler product diverges or needs a convergence factor".into(),
        ));
    }

    // Tail constant C with |log f(p)| <= C / p^2 for every p > cutoff.
    let x0 = 1.0 / (cutoff as f64 + 1.0);
    let k: f64 = excess[2..]
        .iter()
        .enumerate()
        .map(|(j, c)| (*c as f64).abs() * x0.powi(j as i32))
        .sum();
    let m = den[0] as f64 - den[1..].iter().enumerate().map(|(j, c)| (*c as f64).abs() * x0.powi(j as i32 + 1)).sum::<f64>();
    if m <= 0.0 {
        return Err(Error::Domain("denominator of the local factor may vanish beyond the cutoff".into()));
    }
    let t0 = x0 * x0 * k / m;
    if t0 >= 0.5 {
        return Err(Error::Domain("cutoff too small for the tail estimate".into()));
    }
    // slack for rounding in the bound itself
    let c = k / (m * (1.0 - t0)) * (1.0 + 1e-12);
    let p_f = cutoff as f64;
    let tail = c * (1.0 / (3.0 * p_f) + 2.0 / (p_f * p_f));

    // Kahan summation of log f(p), with a per-term error bound.
    let deg = excess.len().max(den.len()) as f64;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut term_err = 0.0f64;
    for &p in primes.iter().take_while(|&&p| p as u64 <= cutoff) {
        let p = p as u64;
        let (t, t_err) = if p < 1000 {
            // exact below 1000 where cancellation can be large
            let t = (exact_poly(&excess, p) / exact_poly(&den, p)).to_f64();
            (t, t.abs() * EPS)
        } else {
            let x = 1.0 / p as f64;
            let d = horner(&den, x);
            let t = horner(&excess, x) / d;
            let bound = (2.0 * deg + 4.0) * EPS * (abs_horner(&excess, x) / d.abs() + t.abs() * abs_horner(&den, x) / d.abs());
            (t, bound)
        };
        if t <= -1.0 {
            return Err(Error::Domain(format!("local factor vanishes or is negative at p = {p}")));
        }
        let l = t.ln_1p();
        term_err += t_err / (1.0 - t_err - t.abs().min(0.999_999)) + 2.0 * EPS * l.abs();
        abs_sum += l.abs();
        let y = l - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    let rounding = term_err + 4.0 * EPS * abs_sum + 1e3 * EPS * EPS * primes.len() as f64;
    let r = tail + rounding;
    let value = sum.exp();
    let radius = value * r.exp_m1() + 4.0 * EPS * value;
    Ok(CertifiedValue { value, radius })
}

/// `(1 - 1/p) Σ_{α=0}^{terms} h(p^α) p^-α`, the local factor of the mean
/// value of `h`, truncated after `terms` powers.
pub fn mean_value_local_factor(h: &MultiplicativeFunction, p: u64, terms: u32) -> ExactRational {
    let x = ExactRational::new(1, p as i64);
    let series: ExactRational = (0..=terms)
        .map(|a| h.at_prime_power(p, a) * x.pow(a))
        .sum();
    (ExactRational::one() - x) * series
}
