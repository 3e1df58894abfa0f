//! The six closed-form dimension functions.
//!
//! Every formula is a fixed linear combination of multiplicative functions
//! of `N` with coefficients depending only on `k`. [`LevelTerms`] holds the
//! multiplicative part for one level so a scan over many weights factors
//! and evaluates once per level.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use once_cell::sync::Lazy;
use serde::Serialize;

use crate::arith::{factorize, Character, Factorization};
use crate::dirichlet::{MultiplicativeFunction, Registry};
use crate::error::{Error, Result};
use crate::rational::ExactRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    G0,
    G0Plus,
    G0Star,
    G1,
    G1Plus,
    G1Star,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::G0,
        Family::G0Plus,
        Family::G0Star,
        Family::G1,
        Family::G1Plus,
        Family::G1Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::G0 => "g0",
            Family::G0Plus => "g0plus",
            Family::G0Star => "g0star",
            Family::G1 => "g1",
            Family::G1Plus => "g1plus",
            Family::G1Star => "g1star",
        }
    }

    pub fn group(self) -> Group {
        match self {
            Family::G0 | Family::G0Plus | Family::G0Star => Group::Gamma0,
            _ => Group::Gamma1,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown family '{s}' (expected g0, g0plus, g0star, g1, g1plus, g1star)")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Gamma0,
    Gamma1,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Gamma0 => "gamma0",
            Group::Gamma1 => "gamma1",
        }
    }

    /// The full cusp-space family.
    pub fn full(self) -> Family {
        match self {
            Group::Gamma0 => Family::G0,
            Group::Gamma1 => Family::G1,
        }
    }

    pub fn newform(self) -> Family {
        match self {
            Group::Gamma0 => Family::G0Plus,
            Group::Gamma1 => Family::G1Plus,
        }
    }

    pub fn star(self) -> Family {
        match self {
            Group::Gamma0 => Family::G0Star,
            Group::Gamma1 => Family::G1Star,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma0" => Ok(Group::Gamma0),
            "gamma1" => Ok(Group::Gamma1),
            _ => Err(Error::Usage(format!("unknown group '{s}' (expected gamma0 or gamma1)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoFamily {
    Rho0,
    Rho1,
}

impl RhoFamily {
    pub fn name(self) -> &'static str {
        match self {
            RhoFamily::Rho0 => "rho0",
            RhoFamily::Rho1 => "rho1",
        }
    }

    pub fn group(self) -> Group {
        match self {
            RhoFamily::Rho0 => Group::Gamma0,
            RhoFamily::Rho1 => Group::Gamma1,
        }
    }
}

impl FromStr for RhoFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho0" => Ok(RhoFamily::Rho0),
            "rho1" => Ok(RhoFamily::Rho1),
            _ => Err(Error::Usage(format!("unknown ratio '{s}' (expected rho0 or rho1)"))),
        }
    }
}

/// `c2, c3, b1..b4` at weight `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightCoefficients {
    pub k: u32,
    #[serde(serialize_with = "crate::serialize_display")]
    pub c2: ExactRational,
    #[serde(serialize_with = "crate::serialize_display")]
    pub c3: ExactRational,
    #[serde(serialize_with = "crate::serialize_display")]
    pub b1: ExactRational,
    #[serde(serialize_with = "crate::serialize_display")]
    pub b2: ExactRational,
    #[serde(serialize_with = "crate::serialize_display")]
    pub b3: ExactRational,
    #[serde(serialize_with = "crate::serialize_display")]
    pub b4: ExactRational,
}

fn c2(k: i64) -> ExactRational {
    ExactRational::new(1, 4) + ExactRational::from(k.div_euclid(4)) - ExactRational::new(k, 4)
}

fn c3(k: i64) -> ExactRational {
    ExactRational::new(1, 3) + ExactRational::from(k.div_euclid(3)) - ExactRational::new(k, 3)
}

fn check_weight(k: i64) -> Result<u32> {
    if k < 2 {
        return Err(Error::UnsupportedWeight(k));
    }
    u32::try_from(k).map_err(|_| Error::UnsupportedWeight(k))
}

pub fn weight_coeffs(k: i64) -> Result<WeightCoefficients> {
    let kk = check_weight(k)?;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let (c2k, c3k) = (c2(k), c3(k));
    let b1 = ExactRational::new(sign * (k - 7), 24) + if k % 2 == 0 { &c2k + &c3k } else { ExactRational::zero() };
    let b2 = (ExactRational::from(sign * floor_i64(&(ExactRational::new(k, 4) - ExactRational::one()))) + &c2k)
        * ExactRational::new(1, 2);
    Ok(WeightCoefficients {
        k: kk,
        b3: c3k.clone(),
        b4: -c2(2 * k),
        c2: c2k,
        c3: c3k,
        b1,
        b2,
    })
}

fn floor_i64(x: &ExactRational) -> i64 {
    use num_traits::ToPrimitive;
    x.floor().to_i64().expect("weight-sized floor")
}

impl WeightCoefficients {
    fn b(&self, i: usize) -> &ExactRational {
        match i {
            1 => &self.b1,
            2 => &self.b2,
            3 => &self.b3,
            _ => &self.b4,
        }
    }
}

/// A checked dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DimensionValue {
    pub family: Family,
    #[serde(rename = "N")]
    pub n: u64,
    pub k: u32,
    pub value: u64,
}

/// The multiplicative part of one family's formula at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelTerms {
    pub family: Family,
    pub n: u64,
    /// `N s_0(N)` or `N^2 s_1(N)` variant.
    pub main: ExactRational,
    /// `ν∞` or `u` variant.
    pub cusps: ExactRational,
    pub nu2: ExactRational,
    pub nu3: ExactRational,
    /// coefficient of `δ(k/2)`: 1, `μ(N)` or `δ(N)`.
    pub special: ExactRational,
    /// `δ/λ/μ(N/i)` for `i = 1..4` dividing `N`, else 0.
    pub small: [ExactRational; 4],
}

impl LevelTerms {
    /// The raw formula value at weight `k`, before any integrality check.
    /// Odd `k` in the Γ₀ family gives 0.
    pub fn combine(&self, w: &WeightCoefficients) -> ExactRational {
        let k = w.k as i64;
        let two = w.k == 2;
        match self.family.group() {
            Group::Gamma0 => {
                if k % 2 == 1 {
                    return ExactRational::zero();
                }
                let mut v = ExactRational::new(k - 1, 12) * &self.main - ExactRational::new(1, 2) * &self.cusps
                    + &w.c2 * &self.nu2
                    + &w.c3 * &self.nu3;
                if two {
                    v += &self.special;
                }
                v
            }
            Group::Gamma1 => {
                let mut v = ExactRational::new(k - 1, 24) * &self.main - ExactRational::new(1, 4) * &self.cusps;
                if two {
                    v += &self.special;
                }
                for i in 1..=4 {
                    if !self.small[i - 1].is_zero() {
                        v += w.b(i) * &self.small[i - 1];
                    }
                }
                v
            }
        }
    }
}

struct FamilyFunctions {
    main: MultiplicativeFunction,
    cusps: MultiplicativeFunction,
    nu2: Option<MultiplicativeFunction>,
    nu3: Option<MultiplicativeFunction>,
    special: MultiplicativeFunction,
    small: Option<MultiplicativeFunction>,
}

/// Evaluates the formulas from the functions of a [`Registry`].
pub struct DimensionEngine {
    families: Vec<FamilyFunctions>,
}

static STANDARD: Lazy<DimensionEngine> =
    Lazy::new(|| DimensionEngine::new(Registry::standard()).expect("standard registry is complete"));

impl DimensionEngine {
    pub fn new(reg: &Registry) -> Result<Self> {
        let get = |name: &str| reg.get(name).cloned();
        let g0 = |main: &str, cusps: &str, nu2: &str, nu3: &str, special: &str| -> Result<FamilyFunctions> {
            Ok(FamilyFunctions {
                main: get(main)?,
                cusps: get(cusps)?,
                nu2: Some(get(nu2)?),
                nu3: Some(get(nu3)?),
                special: get(special)?,
                small: None,
            })
        };
        let g1 = |main: &str, cusps: &str, special: &str, small: &str| -> Result<FamilyFunctions> {
            Ok(FamilyFunctions {
                main: get(main)?,
                cusps: get(cusps)?,
                nu2: None,
                nu3: None,
                special: get(special)?,
                small: Some(get(small)?),
            })
        };
        Ok(DimensionEngine {
            families: vec![
                g0("n_s0", "nu_inf", "nu2", "nu3", "one")?,
                g0("n_s0plus", "nu_inf_plus", "nu2plus", "nu3plus", "mu")?,
                g0("n_s0star", "nu_inf_star", "nu2star", "nu3star", "delta")?,
                g1("n2_s1", "u", "one", "delta")?,
                g1("n2_s1plus", "uplus", "mu", "lambda")?,
                g1("n2_s1star", "ustar", "delta", "mu")?,
            ],
        })
    }

    /// Engine over the standard registry.
    pub fn standard() -> &'static DimensionEngine {
        &STANDARD
    }

    pub fn level_terms(&self, family: Family, n: &Factorization) -> LevelTerms {
        let fs = &self.families[family.index()];
        let zero = ExactRational::zero;
        let mut small = [zero(), zero(), zero(), zero()];
        if let Some(f) = &fs.small {
            for i in 1..=4u64 {
                let d = match i {
                    1 => Some(n.clone()),
                    4 => n.divide_prime_power(2, 2),
                    _ => n.divide_prime_power(i, 1),
                };
                if let Some(d) = d {
                    small[i as usize - 1] = f.eval_factored(&d);
                }
            }
        }
        LevelTerms {
            family,
            n: n.value(),
            main: fs.main.eval_factored(n),
            cusps: fs.cusps.eval_factored(n),
            nu2: fs.nu2.as_ref().map_or_else(zero, |f| f.eval_factored(n)),
            nu3: fs.nu3.as_ref().map_or_else(zero, |f| f.eval_factored(n)),
            special: fs.special.eval_factored(n),
            small,
        }
    }

    /// Formula value without the integrality and sign checks.
    pub fn formula_value(&self, family: Family, n: u64, k: i64) -> Result<ExactRational> {
        let w = weight_coeffs(k)?;
        Ok(self.level_terms(family, &factorize(n)?).combine(&w))
    }

    pub fn dimension(&self, family: Family, n: u64, k: i64) -> Result<DimensionValue> {
        let w = weight_coeffs(k)?;
        self.dimension_factored(family, &factorize(n)?, &w)
    }

    pub fn dimension_factored(&self, family: Family, n: &Factorization, w: &WeightCoefficients) -> Result<DimensionValue> {
        if family.group() == Group::Gamma0 && w.k % 2 == 1 {
            return Ok(DimensionValue { family, n: n.value(), k: w.k, value: 0 });
        }
        let raw = self.level_terms(family, n).combine(w);
        checked_dimension(family, n.value(), w.k, &raw)
    }
}

static CHECKED: AtomicU64 = AtomicU64::new(0);

/// Number of formula outputs that have passed the integrality and sign
/// check in this process.
pub fn checked_evaluations() -> u64 {
    CHECKED.load(Ordering::Relaxed)
}

/// The postcondition every formula must meet.
pub fn checked_dimension(family: Family, n: u64, k: u32, raw: &ExactRational) -> Result<DimensionValue> {
    CHECKED.fetch_add(1, Ordering::Relaxed);
    if !raw.is_integer() || raw.is_negative() {
        return Err(Error::Internal(format!(
            "{family}({n}, {k}) evaluated to {raw}, not a nonnegative integer"
        )));
    }
    let value = raw
        .to_i64()
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::Internal(format!("{family}({n}, {k}) = {raw} out of range")))?;
    Ok(DimensionValue { family, n, k, value })
}

pub fn dimension(family: Family, n: u64, k: i64) -> Result<DimensionValue> {
    DimensionEngine::standard().dimension(family, n, k)
}

/// `(k-1)N/12 - 1/2 + c2(k)χ₋₄(N) + c3(k)χ₋₃(N)` for squarefree `N`.
pub fn gekeler_squarefree(n: u64, k: i64) -> Result<u64> {
    let f = factorize(n)?;
    if !f.is_squarefree() {
        return Err(Error::Precondition(format!("{n} is not squarefree")));
    }
    if k < 2 || k % 2 == 1 {
        return Err(Error::Precondition(format!("weight {k} is not an even integer >= 2")));
    }
    if k == 2 && n == 1 {
        return Err(Error::Precondition("(k, N) = (2, 1) is excluded".into()));
    }
    let w = weight_coeffs(k)?;
    let raw = ExactRational::new(k - 1, 12) * ExactRational::from(n) - ExactRational::new(1, 2)
        + &w.c2 * ExactRational::from(Character::ChiMinus4.eval(n))
        + &w.c3 * ExactRational::from(Character::ChiMinus3.eval(n));
    Ok(checked_dimension(Family::G0Star, n, w.k, &raw)?.value)
}

/// `g⁺/g`, or 1 when `g = 0`.
pub fn rho(which: RhoFamily, n: u64, k: i64) -> Result<ExactRational> {
    let g = which.group();
    let full = dimension(g.full(), n, k)?.value;
    if full == 0 {
        return Ok(ExactRational::one());
    }
    let new = dimension(g.newform(), n, k)?.value;
    Ok(ExactRational::new(new as i64, full as i64))
}

/// Genus of `X_0(N)` or `X_1(N)`.
pub fn genus(group: Group, n: u64) -> Result<u64> {
    Ok(dimension(group.full(), n, 2)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    fn dim(f: Family, n: u64, k: i64) -> u64 {
        dimension(f, n, k).unwrap().value
    }

    #[test]
    fn weight_coefficient_examples() {
        let w = weight_coeffs(2).unwrap();
        assert_eq!((w.c2.clone(), w.c3.clone()), (q(-1, 4), q(-1, 3)));
        assert_eq!(w.b1, q(-19, 24));
        let w = weight_coeffs(12).unwrap();
        assert_eq!((w.c2, w.c3), (q(1, 4), q(1, 3)));
        assert!(matches!(weight_coeffs(1), Err(Error::UnsupportedWeight(1))));
        assert!(matches!(weight_coeffs(0), Err(Error::UnsupportedWeight(0))));
    }

    #[test]
    fn weight_coefficient_bounds_and_periods() {
        let half = q(1, 2);
        for k in 2..200 {
            let w = weight_coeffs(k).unwrap();
            assert!(w.c2.abs() <= half && w.c3.abs() <= half);
            assert_eq!(w.c2, weight_coeffs(k + 4).unwrap().c2);
            assert_eq!(w.c3, weight_coeffs(k + 3).unwrap().c3);
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim(Family::G0, 11, 2), 1);
        assert_eq!(dim(Family::G0Plus, 35, 2), 3);
        assert_eq!(dim(Family::G0Plus, 22, 2), 0);
        assert_eq!(dim(Family::G0Star, 2, 2), 0);
        assert_eq!(dim(Family::G1, 11, 2), 1);
        assert_eq!(dim(Family::G1Plus, 11, 2), 1);
        assert_eq!(dim(Family::G1, 4, 3), 0);
        assert_eq!(dim(Family::G0, 1, 12), 1);
        assert!(matches!(dimension(Family::G1, 5, 1), Err(Error::UnsupportedWeight(1))));
    }

    #[test]
    fn odd_weight_gamma0_is_zero() {
        for n in 1..200 {
            for k in [3, 5, 11] {
                for f in [Family::G0, Family::G0Plus, Family::G0Star] {
                    assert_eq!(dim(f, n, k), 0);
                }
            }
        }
    }

    #[test]
    fn gamma1_small_levels() {
        for k in 2..20i64 {
            // g1(4, k) = floor((k-3)/2) + δ(k/2)
            let expected = (k - 3).div_euclid(2) + (k == 2) as i64;
            assert_eq!(dim(Family::G1, 4, k) as i64, expected.max(0), "k = {k}");
            if k % 2 == 1 {
                assert_eq!(dim(Family::G1, 1, k), 0);
                assert_eq!(dim(Family::G1, 2, k), 0);
            } else {
                for n in 1..=4 {
                    assert_eq!(dim(Family::G1, n, k), dim(Family::G0, n, k), "N = {n}, k = {k}");
                }
            }
        }
    }

    #[test]
    fn gekeler_examples() {
        assert_eq!(gekeler_squarefree(11, 2).unwrap(), 1);
        assert_eq!(gekeler_squarefree(2, 2).unwrap(), 0);
        assert_eq!(gekeler_squarefree(35, 2).unwrap(), 3);
        assert!(matches!(gekeler_squarefree(12, 2), Err(Error::Precondition(_))));
        assert!(matches!(gekeler_squarefree(1, 2), Err(Error::Precondition(_))));
        assert!(matches!(gekeler_squarefree(5, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn gekeler_matches_star_formula() {
        for n in 1..3000u64 {
            if !factorize(n).unwrap().is_squarefree() {
                continue;
            }
            for k in (2..=24).step_by(2) {
                if (n, k) == (1, 2) {
                    continue;
                }
                assert_eq!(gekeler_squarefree(n, k).unwrap(), dim(Family::G0Star, n, k), "N = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn squarefree_dependence_mod_12() {
        // g0*(N,k) - (k-1)N/12 depends only on N mod 12 for squarefree N > 1
        for k in (2..=12).step_by(2) {
            let mut seen: std::collections::HashMap<u64, ExactRational> = Default::default();
            for n in 2..2000u64 {
                if !factorize(n).unwrap().is_squarefree() {
                    continue;
                }
                let v = ExactRational::from(dim(Family::G0Star, n, k)) - q(k - 1, 12) * ExactRational::from(n);
                let prev = seen.entry(n % 12).or_insert_with(|| v.clone());
                assert_eq!(*prev, v, "N = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn prime_levels_mod_12() {
        let mut by_class: std::collections::HashMap<u64, ExactRational> = Default::default();
        for p in crate::arith::Factorizer::shared().primes().iter().take_while(|&&p| p < 20_000) {
            let p = *p as u64;
            let diff = ExactRational::from(dim(Family::G0Plus, p, 2)) - q(p as i64 + 1, 12);
            if p > 3 {
                let prev = by_class.entry(p % 12).or_insert_with(|| diff.clone());
                assert_eq!(*prev, diff);
            }
            assert_eq!(diff.is_zero(), p % 12 == 11, "p = {p}");
        }
    }

    #[test]
    fn rho_and_genus() {
        assert_eq!(rho(RhoFamily::Rho0, 1, 2).unwrap(), ExactRational::one());
        assert_eq!(rho(RhoFamily::Rho0, 35, 2).unwrap(), ExactRational::one());
        assert_eq!(rho(RhoFamily::Rho0, 22, 2).unwrap(), ExactRational::zero());
        assert_eq!(rho(RhoFamily::Rho1, 1, 2).unwrap(), ExactRational::one());
        assert_eq!(genus(Group::Gamma0, 1).unwrap(), 0);
        assert_eq!(genus(Group::Gamma0, 11).unwrap(), 1);
        assert_eq!(genus(Group::Gamma1, 11).unwrap(), 1);
    }

    #[test]
    fn ordering_between_families() {
        for n in 1..3000 {
            for k in 2..=8 {
                let (a, b, c) = (dim(Family::G1Plus, n, k), dim(Family::G1Star, n, k), dim(Family::G1, n, k));
                assert!(a <= b && b <= c, "gamma1 N = {n}, k = {k}");
                let (a, b, c) = (dim(Family::G0Plus, n, k), dim(Family::G0Star, n, k), dim(Family::G0, n, k));
                assert!(a <= b && b <= c, "gamma0 N = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!(matches!("g2".parse::<Family>(), Err(Error::Usage(_))));
        assert_eq!("gamma1".parse::<Group>().unwrap(), Group::Gamma1);
    }
}
