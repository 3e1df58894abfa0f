//! The explicit inequalities behind the bounds, as finite scans.
//!
//! Each check is an exact comparison of rationals or integers except the
//! totient bound `φ(N) log₂(2N) >= N`, which is exact when `2N` is a power
//! of two (the equality case) and a float comparison with a wide margin
//! otherwise.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{ArithmeticFunction, Factorization, Factorizer};
use crate::constants::Constants;
use crate::dimension::{weight_coeffs, DimensionEngine, Family, WeightCoefficients};
use crate::dirichlet::{MultiplicativeFunction, Registry};
use crate::error::Result;
use crate::rational::ExactRational;

/// Violations kept per check.
const KEEP: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub statement: &'static str,
    /// Levels in the hypothesis class.
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<u64>,
}

impl LemmaCheck {
    pub fn holds(&self) -> bool {
        self.violation_count == 0 && self.checked > 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaSuiteReport {
    pub max_n: u64,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaSuiteReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(LemmaCheck::holds)
    }

    pub fn get(&self, name: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Funcs {
    n_s0plus: MultiplicativeFunction,
    nu_inf_plus: MultiplicativeFunction,
    nu2plus: MultiplicativeFunction,
    nu3plus: MultiplicativeFunction,
    s0: MultiplicativeFunction,
    nu_inf: MultiplicativeFunction,
    nu2: MultiplicativeFunction,
    nu3: MultiplicativeFunction,
    u: MultiplicativeFunction,
    uplus: MultiplicativeFunction,
    s0star: MultiplicativeFunction,
    nu_inf_star: MultiplicativeFunction,
    nu2star: MultiplicativeFunction,
    nu3star: MultiplicativeFunction,
}

impl Funcs {
    fn new() -> Result<Self> {
        let r = Registry::standard();
        let g = |n: &str| r.get(n).cloned();
        Ok(Funcs {
            n_s0plus: g("n_s0plus")?,
            nu_inf_plus: g("nu_inf_plus")?,
            nu2plus: g("nu2plus")?,
            nu3plus: g("nu3plus")?,
            s0: g("s0")?,
            nu_inf: g("nu_inf")?,
            nu2: g("nu2")?,
            nu3: g("nu3")?,
            u: g("u")?,
            uplus: g("uplus")?,
            s0star: g("s0star")?,
            nu_inf_star: g("nu_inf_star")?,
            nu2star: g("nu2star")?,
            nu3star: g("nu3star")?,
        })
    }
}

struct Ctx<'a> {
    n: u64,
    f: &'a Factorization,
    fx: &'a Funcs,
    g_plus: u64,
    phi: i128,
    omega: u32,
    a0_upper: &'a ExactRational,
    inv_zeta2_upper: &'a ExactRational,
}

fn q(x: i128) -> ExactRational {
    ExactRational::from_big_ratio(x.into(), 1.into())
}

fn two_pow(e: u32) -> ExactRational {
    ExactRational::from(1i64 << e)
}

type Check = fn(&Ctx) -> Option<bool>;

fn checks() -> Vec<(&'static str, &'static str, Check)> {
    vec![
        ("prime-level-bound", "g0+(p,2) <= (p+1)/12, equality iff p = 11 mod 12", |c| {
            if c.f.factors().len() != 1 || c.f.factors()[0].1 != 1 {
                return None;
            }
            let twelve = 12 * c.g_plus;
            Some(twelve <= c.n + 1 && ((twelve == c.n + 1) == (c.n % 12 == 11)))
        }),
        ("newform-term-bounds", "N s0+ <= phi, |nu2+|, |nu3+| <= 2^omega, 0 <= nu_inf+ <= sqrt N", |c| {
            let w = two_pow(c.omega);
            let ninf = c.fx.nu_inf_plus.eval_factored(c.f);
            Some(
                c.fx.n_s0plus.eval_factored(c.f) <= q(c.phi)
                    && c.fx.nu2plus.eval_factored(c.f).abs() <= w
                    && c.fx.nu3plus.eval_factored(c.f).abs() <= w
                    && !ninf.is_negative()
                    && &ninf * &ninf <= ExactRational::from(c.n),
            )
        }),
        ("newform-upper-bound", "g0+(N,2) <= phi/12 + (7/12) 2^omega + 1", |c| {
            let rhs = q(c.phi) * ExactRational::new(1, 12) + ExactRational::new(7, 12) * two_pow(c.omega)
                + ExactRational::one();
            Some(ExactRational::from(c.g_plus) <= rhs)
        }),
        ("two-prime-bound", "composite N with omega <= 2: g0+ <= (N+1)/12, equality iff N = 35", |c| {
            let composite = c.f.factors().iter().map(|&(_, e)| e).sum::<u32>() >= 2;
            if !composite || c.omega > 2 {
                return None;
            }
            let twelve = 12 * c.g_plus;
            Some(twelve <= c.n + 1 && ((twelve == c.n + 1) == (c.n == 35)))
        }),
        ("sixth-power-bound", "p^6 | N: g0+ <= (N-6)/12", |c| {
            if !c.f.factors().iter().any(|&(_, e)| e >= 6) {
                return None;
            }
            Some(12 * c.g_plus + 6 <= c.n)
        }),
        ("large-primes-bound", "omega >= 3 with two primes > 5: g0+ <= (N-9)/12", |c| {
            if c.omega < 3 || c.f.factors().iter().filter(|&&(p, _)| p > 5).count() < 2 {
                return None;
            }
            Some(12 * c.g_plus + 9 <= c.n)
        }),
        ("mixed-prime-bound", "(N,6) > 1 with a prime > 41: g0+ <= N/12", |c| {
            let shares = c.n % 2 == 0 || c.n % 3 == 0;
            if !shares || c.f.largest_prime().unwrap_or(1) <= 41 {
                return None;
            }
            Some(12 * c.g_plus <= c.n)
        }),
        ("s0plus-lower", "N s0+(N) > A0+ phi(N)", |c| {
            Some(c.fx.n_s0plus.eval_factored(c.f) > c.a0_upper * q(c.phi))
        }),
        ("omega-power-bound", "2^omega <= 2^(4 - log16/log11) N^(log2/log11)", |c| {
            // equivalent to 16 * 11^(omega-4) <= N
            let lhs = ExactRational::from(16i64) * ExactRational::from(11i64).pow(c.omega)
                / ExactRational::from(11i64).pow(4);
            Some(lhs <= ExactRational::from(c.n))
        }),
        ("phi-lower", "phi(N) >= N log2 / log 2N for N >= 2", |c| {
            if c.n < 2 {
                return None;
            }
            let two_n = 2 * c.n;
            if two_n.is_power_of_two() {
                let m = two_n.trailing_zeros() as i128;
                return Some(c.phi * m >= c.n as i128);
            }
            let lhs = c.phi as f64 * (two_n as f64).log2();
            Some(lhs >= c.n as f64 * (1.0 + 1e-12))
        }),
        ("cusp-count-bounds", "u+(N) <= u(N) <= N tau(N)", |c| {
            let u = c.fx.u.eval_factored(c.f);
            let tau = ArithmeticFunction::Tau.eval_factored(c.f);
            Some(c.fx.uplus.eval_factored(c.f) <= u && u <= q(c.n as i128 * tau))
        }),
        ("full-space-term-bounds", "0 <= nu2, nu3 <= 2^omega and 0 <= nu_inf <= sqrt(N) s0(N)", |c| {
            let w = two_pow(c.omega);
            let zero = ExactRational::zero();
            let (n2, n3, ni) = (
                c.fx.nu2.eval_factored(c.f),
                c.fx.nu3.eval_factored(c.f),
                c.fx.nu_inf.eval_factored(c.f),
            );
            let s0 = c.fx.s0.eval_factored(c.f);
            Some(
                n2 >= zero
                    && n2 <= w
                    && n3 >= zero
                    && n3 <= w
                    && ni >= zero
                    && &ni * &ni <= ExactRational::from(c.n) * &s0 * &s0,
            )
        }),
        ("star-bounds", "6/pi^2 < s0* <= 1 and |nu2*|, |nu3*| <= 1", |c| {
            let s = c.fx.s0star.eval_factored(c.f);
            let one = ExactRational::one();
            Some(
                &s > c.inv_zeta2_upper
                    && s <= one
                    && c.fx.nu2star.eval_factored(c.f).abs() <= one
                    && c.fx.nu3star.eval_factored(c.f).abs() <= one,
            )
        }),
        // fails at 2 || N (already at N = 2: nu_inf*(2) = 1 > 1/sqrt 2)
        ("star-cusp-bound", "0 <= nu_inf* <= phi/sqrt N for N odd or 4 | N", |c| {
            if c.n % 4 == 2 {
                return None;
            }
            let ni = c.fx.nu_inf_star.eval_factored(c.f);
            Some(!ni.is_negative() && &ni * &ni * ExactRational::from(c.n) <= q(c.phi) * q(c.phi))
        }),
        ("s0-lower", "s0(N) >= 1", |c| Some(c.fx.s0.eval_factored(c.f) >= ExactRational::one())),
    ]
}

/// Every inequality on its hypothesis class within `1..=max_n`.
pub fn lemma_suite(max_n: u64) -> Result<LemmaSuiteReport> {
    let fx = Funcs::new()?;
    let fz = Factorizer::shared();
    let engine = DimensionEngine::standard();
    let w: WeightCoefficients = weight_coeffs(2)?;
    let consts = Constants::shared();
    let a0_upper = ExactRational::from_f64(consts.A0plus.upper()).expect("finite");
    let inv_zeta2_upper = ExactRational::from_f64(6.0 / (std::f64::consts::PI * std::f64::consts::PI) + 1e-12)
        .expect("finite");
    let list = checks();
    let m = list.len();

    const CHUNK: u64 = 4096;
    // per chunk: checked and violation counts, kept violations
    type Partial = (Vec<u64>, Vec<u64>, Vec<Vec<u64>>);
    let partial: Vec<Partial> = (0..max_n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| -> Result<_> {
            let chunk = c * CHUNK + 1..=((c + 1) * CHUNK).min(max_n);
            let mut checked = vec![0u64; m];
            let mut count = vec![0u64; m];
            let mut bad: Vec<Vec<u64>> = vec![Vec::new(); m];
            for n in chunk {
                let f = fz.factorize(n)?;
                let ctx = Ctx {
                    n,
                    f: &f,
                    fx: &fx,
                    g_plus: engine.dimension_factored(Family::G0Plus, &f, &w)?.value,
                    phi: ArithmeticFunction::Phi.eval_factored(&f),
                    omega: f.omega(),
                    a0_upper: &a0_upper,
                    inv_zeta2_upper: &inv_zeta2_upper,
                };
                for (i, (_, _, check)) in list.iter().enumerate() {
                    if let Some(ok) = check(&ctx) {
                        checked[i] += 1;
                        if !ok {
                            count[i] += 1;
                            if bad[i].len() < KEEP {
                                bad[i].push(n);
                            }
                        }
                    }
                }
            }
            Ok((checked, count, bad))
        })
        .collect::<Result<_>>()?;

    let mut out: Vec<LemmaCheck> = list
        .iter()
        .map(|&(name, statement, _)| LemmaCheck { name, statement, checked: 0, violation_count: 0, violations: vec![] })
        .collect();
    for (checked, count, bad) in partial {
        for i in 0..m {
            out[i].checked += checked[i];
            out[i].violation_count += count[i];
            out[i].violations.extend(&bad[i]);
        }
    }
    for c in &mut out {
        c.violations.sort_unstable();
        c.violations.truncate(KEEP);
    }
    Ok(LemmaSuiteReport { max_n, checks: out })
}
