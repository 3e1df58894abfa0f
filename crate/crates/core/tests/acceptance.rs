//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use cuspdim::analysis::{
    average_ratio, certified_cutoff, enumerate_small_dim, lemma_suite, missing_values, rho_floor_scan,
    value_coverage, verify_bennett_residual, verify_power_of_two, verify_sharp_bound, AverageTarget,
};
use cuspdim::dimension::checked_evaluations;
use cuspdim::dirichlet::verify_convolution_identities;
use cuspdim::{consistency_scan, Constants, Error, Family, Group, Registry, RhoFamily};

const CONSTANT_TOLERANCE: f64 = 5e-7;
const DIM_AVERAGE_TOLERANCE: f64 = 0.01;
const RHO_AVERAGE_TOLERANCE: f64 = 0.03;
const RHO_FLOOR: f64 = 0.2;

const FIBER_100: [u64; 40] = [
    1213, 1331, 2169, 2583, 2662, 2745, 3208, 3232, 3465, 3608, 4040, 4302, 4338, 4772, 4804, 4848, 5084, 5092,
    5166, 5252, 5324, 5490, 5572, 5904, 6336, 6820, 6930, 7056, 7188, 7212, 7920, 8052, 8484, 8652, 8676, 8940,
    9060, 10332, 10980, 13860,
];

const MISSING_G0: [u64; 29] = [
    150, 180, 210, 286, 304, 312, 336, 338, 348, 350, 480, 536, 570, 598, 606, 620, 666, 678, 706, 730, 756, 780,
    798, 850, 876, 896, 906, 916, 970,
];

struct Gate {
    failed: usize,
    internal: Vec<String>,
}

impl Gate {
    /// Run one criterion. `Err` counts as a failure; an `Internal` error is
    /// also recorded for the integrality criterion.
    fn run(&mut self, name: &str, f: impl FnOnce() -> cuspdim::Result<(bool, String)>) {
        let start = Instant::now();
        let (ok, detail) = match f() {
            Ok(x) => x,
            Err(e) => {
                if matches!(e, Error::Internal(_)) {
                    self.internal.push(format!("{name}: {e}"));
                }
                (false, format!("error: {e}"))
            }
        };
        if !ok {
            self.failed += 1;
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} {name} ({:.1}s) {detail}", start.elapsed().as_secs_f64());
    }
}

fn main() -> ExitCode {
    let mut gate = Gate { failed: 0, internal: Vec::new() };

    gate.run("1 oracle equivalence", || {
        let even: Vec<i64> = (2..=24).step_by(2).collect();
        let all: Vec<i64> = (2..=13).collect();
        let r0 = consistency_scan(Group::Gamma0, 20_000, &even)?;
        let r1 = consistency_scan(Group::Gamma1, 5_000, &all)?;
        let detail = format!(
            "gamma0 checked={} mismatches={}; gamma1 checked={} mismatches={}",
            r0.checked,
            r0.mismatches.len(),
            r1.checked,
            r1.mismatches.len()
        );
        Ok((r0.is_clean() && r1.is_clean(), detail))
    });

    gate.run("2 convolution identities", || {
        let r = verify_convolution_identities(Registry::standard(), 10_000)?;
        let bad: Vec<&str> = r.results.iter().filter(|x| x.failure_count > 0).map(|x| x.identity.as_str()).collect();
        Ok((r.holds() && r.results.len() == 12, format!("{} identities to N=10000, failing {bad:?}", r.results.len())))
    });

    gate.run("3 small-dimension enumeration", || {
        let e = enumerate_small_dim(Family::G0Plus, 2, 100, None)?;
        let fiber = e.fiber(100);
        let cov = value_coverage(Family::G0Plus, 2, 132_000, 100)?;
        let wide = value_coverage(Family::G0Plus, 2, 132_000, 9_999)?;
        let (min, max) = (cov.min_multiplicity(), cov.max_multiplicity());
        let ok = e.certified
            && e.cutoff <= 132_000
            && e.levels.len() == 2965
            && fiber == FIBER_100
            && min == (13, 86)
            && max == (68, 96)
            && wide.attained() == 9566;
        Ok((
            ok,
            format!(
                "cutoff={} levels={} fiber100={} min={min:?} max={max:?} attained<10000={} first_gap={:?}",
                e.cutoff,
                e.levels.len(),
                fiber.len(),
                wide.attained(),
                wide.first_gap()
            ),
        ))
    });

    gate.run("4 missing values of g0", || {
        let m = missing_values(Family::G0, 2, 1000, 13_500)?;
        let ok = m.missing == MISSING_G0 && m.required_cutoff.is_some_and(|r| r <= 13_500);
        Ok((ok, format!("{} missing, first {:?}, required cutoff {:?}", m.missing.len(), m.missing.first(), m.required_cutoff)))
    });

    gate.run("5 sharp bound and power-of-two identity", || {
        let s = verify_sharp_bound(100_000)?;
        let res = verify_bennett_residual()?;
        let p = verify_power_of_two(999, &[4, 5, 6, 7, 8], &[2, 4, 6])?;
        let ok = s.holds() && res.failures.is_empty() && p.failures.is_empty();
        Ok((
            ok,
            format!(
                "violations={} equality={} residual={}/{} power-of-two checked={} failures={}",
                s.violations.len(),
                s.equality_set.len(),
                res.failures.len(),
                res.levels,
                p.checked,
                p.failures.len()
            ),
        ))
    });

    gate.run("6 lemma suite", || {
        let r = lemma_suite(100_000)?;
        let bad: Vec<String> =
            r.checks.iter().filter(|c| !c.holds()).map(|c| format!("{}({})", c.name, c.violation_count)).collect();
        Ok((r.holds(), format!("{} checks to N=100000, failing {bad:?}", r.checks.len())))
    });

    gate.run("7 Euler product constants", || {
        let c = Constants::shared();
        let expected = [
            (&c.A0plus, 0.373956),
            (&c.A1star, 0.322634),
            (&c.A1plus, 0.125487),
            (&c.B0, 0.444301),
            (&c.B1, 0.652036),
        ];
        let mut ok = true;
        let mut parts = Vec::new();
        for (v, e) in expected {
            let err = (v.value - e).abs();
            ok &= err + v.radius <= CONSTANT_TOLERANCE;
            parts.push(format!("{:.9}±{:.1e}", v.value, v.radius));
        }
        Ok((ok, parts.join(" ")))
    });

    gate.run("8 average orders", || {
        let mut ok = true;
        let mut parts = Vec::new();
        for f in Family::ALL {
            let r = average_ratio(AverageTarget::Dim(f), 2, 100_000)?;
            ok &= (r.ratio - 1.0).abs() <= DIM_AVERAGE_TOLERANCE;
            parts.push(format!("{}={:.5}", f.name(), r.ratio));
        }
        for rf in [RhoFamily::Rho0, RhoFamily::Rho1] {
            let r = average_ratio(AverageTarget::Rho(rf), 2, 1_000_000)?;
            ok &= (r.ratio - 1.0).abs() <= RHO_AVERAGE_TOLERANCE;
            parts.push(format!("{}={:.5}", rf.name(), r.ratio));
        }
        Ok((ok, parts.join(" ")))
    });

    gate.run("9 rho1 floor", || {
        let r = rho_floor_scan(2, 1_000, 100_000)?;
        Ok((r.min.to_f64() > RHO_FLOOR, format!("min={:.6} at N={}", r.min.to_f64(), r.argmin)))
    });

    // the g0 certificate backing criterion 4 must itself verify
    gate.run("certificates verify", || {
        let a = certified_cutoff(Family::G0Plus, 2, 100)?;
        let b = certified_cutoff(Family::G0, 2, 1000)?;
        Ok((a.verify() && b.verify(), format!("g0plus B=100 cutoff={} g0 B=1000 cutoff={}", a.cutoff, b.cutoff)))
    });

    let evaluations = checked_evaluations();
    let internal = std::mem::take(&mut gate.internal);
    gate.run("10 integrality and nonnegativity", || {
        Ok((internal.is_empty() && evaluations > 0, format!("{evaluations} checked evaluations, {} internal errors {internal:?}", internal.len())))
    });

    if gate.failed == 0 {
        println!("all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{} criteria failed", gate.failed);
        ExitCode::FAILURE
    }
}
