//! The named multiplicative functions of the dimension formulas.
//!
//! Every rule is the prime-power table of its definition, exceptional small
//! primes included. Suffix conventions: `plus` is the newform variant
//! (convolution with λ), `star` the representation-count variant
//! (convolution with μ); `n_` and `n2_` prefixes scale by `N` and `N²`.

use std::collections::BTreeMap;

use once_cell::sync::Lazy;

use super::MultiplicativeFunction;
use crate::error::{Error, Result};
use crate::rational::ExactRational;

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d)
}

fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(n)
}

/// `p^e` for a possibly negative exponent.
fn ppow(p: u64, e: i64) -> ExactRational {
    let base = ExactRational::from(p);
    if e >= 0 {
        base.pow(e as u32)
    } else {
        base.pow((-e) as u32).recip()
    }
}

/// `1 - c/p^e`
fn one_minus(c: i64, p: u64, e: u32) -> ExactRational {
    ExactRational::one() - int(c) * ppow(p, -(e as i64))
}

fn standard_functions() -> Vec<MultiplicativeFunction> {
    use MultiplicativeFunction as M;
    let mut v = vec![
        M::new("one", |_, _| int(1)),
        M::new("delta", |_, _| int(0)),
        M::new("id", |p, a| ppow(p, a as i64)),
        M::new("mu", |_, a| if a == 1 { int(-1) } else { int(0) }),
        M::new("tau", |_, a| int(a as i64 + 1)),
        M::new("phi", |p, a| ppow(p, a as i64 - 1) * int(p as i64 - 1)),
        M::new("two_pow_omega", |_, _| int(2)),
        M::new("lambda", |_, a| match a {
            1 => int(-2),
            2 => int(1),
            _ => int(0),
        }),
        // Gamma_0 family
        M::new("s0", |p, _| q(p as i64 + 1, p as i64)),
        M::new("s0plus", |p, a| match a {
            1 => one_minus(1, p, 1),
            2 => one_minus(1, p, 1) - ppow(p, -2),
            _ => one_minus(1, p, 1) * one_minus(1, p, 2),
        }),
        M::new("s0star", |p, a| match a {
            1 => int(1),
            _ => one_minus(1, p, 2),
        }),
        M::new("nu_inf", |p, a| {
            let a = a as i64;
            if a % 2 == 1 {
                int(2) * ppow(p, (a - 1) / 2)
            } else {
                ppow(p, a / 2) + ppow(p, a / 2 - 1)
            }
        }),
        M::new("nu_inf_plus", |p, a| {
            let a = a as i64;
            if a % 2 == 1 {
                int(0)
            } else if a == 2 {
                int(p as i64 - 2)
            } else {
                ppow(p, a / 2 - 2) * int(p as i64 - 1).pow(2)
            }
        }),
        M::new("nu_inf_star", |p, a| {
            if a == 1 {
                int(1)
            } else {
                ppow(p, (a / 2) as i64 - 1) * int(p as i64 - 1)
            }
        }),
        M::new("nu2", |p, a| {
            int(match p % 4 {
                _ if p == 2 => (a == 1) as i64,
                1 => 2,
                _ => 0,
            })
        }),
        M::new("nu2plus", |p, a| {
            int(if p == 2 {
                match a {
                    1 | 2 => -1,
                    3 => 1,
                    _ => 0,
                }
            } else if p % 4 == 1 {
                if a == 2 {
                    -1
                } else {
                    0
                }
            } else {
                match a {
                    1 => -2,
                    2 => 1,
                    _ => 0,
                }
            })
        }),
        M::new("nu2star", |p, a| {
            int(if p == 2 {
                if a == 2 {
                    -1
                } else {
                    0
                }
            } else if a >= 2 {
                0
            } else if p % 4 == 1 {
                1
            } else {
                -1
            })
        }),
        M::new("nu3", |p, a| {
            int(match p % 3 {
                _ if p == 3 => (a == 1) as i64,
                1 => 2,
                _ => 0,
            })
        }),
        M::new("nu3plus", |p, a| {
            int(if p == 3 {
                match a {
                    1 | 2 => -1,
                    3 => 1,
                    _ => 0,
                }
            } else if p % 3 == 1 {
                if a == 2 {
                    -1
                } else {
                    0
                }
            } else {
                match a {
                    1 => -2,
                    2 => 1,
                    _ => 0,
                }
            })
        }),
        M::new("nu3star", |p, a| {
            int(if p == 3 {
                if a == 2 {
                    -1
                } else {
                    0
                }
            } else if a >= 2 {
                0
            } else if p % 3 == 1 {
                1
            } else {
                -1
            })
        }),
        // Gamma_1 family
        M::new("s1", |p, _| one_minus(1, p, 2)),
        M::new("s1plus", |p, a| match a {
            1 => one_minus(3, p, 2),
            2 => one_minus(3, p, 2) + int(3) * ppow(p, -4),
            _ => one_minus(1, p, 2).pow(3),
        }),
        M::new("s1star", |p, a| match a {
            1 => one_minus(2, p, 2),
            _ => one_minus(1, p, 2).pow(2),
        }),
        M::new("u", |p, a| {
            let (pi, ai) = (p as i64, a as i64);
            ppow(p, ai - 2) * int(pi - 1) * int((ai + 1) * pi - ai + 1)
        }),
        M::new("uplus", |p, a| {
            let (pi, ai) = (p as i64, a as i64);
            match a {
                1 => int(2 * pi - 4),
                2 => int(3 * pi * pi - 8 * pi + 6),
                _ => ppow(p, ai - 4) * int(pi - 1).pow(3) * int((ai + 1) * pi - ai + 3),
            }
        }),
        M::new("ustar", |p, a| {
            let (pi, ai) = (p as i64, a as i64);
            match a {
                // u(p) - u(1); the printed table has 2p - 4 here, which breaks
                // u * mu = u* at every prime.
                1 => int(2 * pi - 3),
                _ => ppow(p, ai - 3) * int(pi - 1).pow(2) * int((ai + 1) * pi - ai + 2),
            }
        }),
    ];
    let scaled: Vec<MultiplicativeFunction> = [
        ("s0", 1, "n_s0"),
        ("s0plus", 1, "n_s0plus"),
        ("s0star", 1, "n_s0star"),
        ("s1", 2, "n2_s1"),
        ("s1plus", 2, "n2_s1plus"),
        ("s1star", 2, "n2_s1star"),
    ]
    .iter()
    .map(|&(base, power, name)| {
        let f = v.iter().find(|f| f.name() == base).expect("base registered");
        f.scaled_by_power(power, name)
    })
    .collect();
    v.extend(scaled);
    v
}

/// Name → function table.
#[derive(Clone, Debug)]
pub struct Registry {
    functions: BTreeMap<String, MultiplicativeFunction>,
}

static STANDARD: Lazy<Registry> = Lazy::new(|| Registry {
    functions: standard_functions()
        .into_iter()
        .map(|f| (f.name().to_string(), f))
        .collect(),
});

impl Registry {
    pub fn standard() -> &'static Registry {
        &STANDARD
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.functions.keys().map(String::as_str)
    }

    pub fn get(&self, name: &str) -> Result<&MultiplicativeFunction> {
        self.functions
            .get(name)
            .ok_or_else(|| Error::Usage(format!("unknown multiplicative function '{name}'")))
    }

    /// A copy of this registry with `name` replaced by `f`.
    pub fn with_override(&self, name: &str, f: MultiplicativeFunction) -> Result<Registry> {
        self.get(name)?;
        let mut functions = self.functions.clone();
        functions.insert(name.to_string(), f.renamed(name.to_string()));
        Ok(Registry { functions })
    }
}

/// Looks up a standard function by name.
pub fn registry_lookup(name: &str) -> Result<MultiplicativeFunction> {
    Registry::standard().get(name).cloned()
}
