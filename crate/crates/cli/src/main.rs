mod output;
mod ranges;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use cuspdim::analysis::{
    average_ratio, enumerate_small_dim, lemma_suite, missing_values, value_coverage, verify_bennett_residual,
    verify_power_of_two, verify_sharp_bound, AverageTarget,
};
use cuspdim::constants::DEFAULT_EULER_CUTOFF;
use cuspdim::dirichlet::verify_convolution_identities;
use cuspdim::{consistency_scan, rho, Constants, DimensionEngine, Error, Family, Group, Registry};

use output::{write_records, Format, OutputRecord};
use ranges::{parse_levels, parse_weights};

#[derive(Parser)]
#[command(name = "cuspdim", version, about = "Dimensions of cusp forms and newforms on Gamma0(N) and Gamma1(N)")]
struct Cli {
    /// Cap on worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Suppress the timing footer on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    /// Write a JSON report of the full result to this path.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of one space.
    Dim {
        /// g0, g0plus, g0star, g1, g1plus or g1star.
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        level: u64,
        #[arg(long, default_value_t = 2)]
        weight: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dimensions (or ρ ratios) over a level range and a weight set.
    Table {
        /// Comma-separated families; rho0 and rho1 print exact fractions.
        #[arg(long, value_delimiter = ',', default_value = "g0,g0plus,g0star", value_parser = parse_target)]
        family: Vec<AverageTarget>,
        /// Level range lo..hi, inclusive.
        #[arg(long)]
        levels: String,
        /// Weight range start:end[:step].
        #[arg(long, default_value = "2")]
        weights: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// All levels whose dimension is at most a bound.
    Enumerate {
        #[arg(long, value_parser = parse_family, default_value = "g0plus")]
        family: Family,
        #[arg(long, default_value_t = 2)]
        weight: i64,
        #[arg(long)]
        max_dim: u64,
        /// Scan limit; defaults to the certified cutoff where one exists.
        #[arg(long)]
        cutoff: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run a verification scan. Exits 1 if anything fails.
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        /// Group for the oracle check.
        #[arg(long, value_parser = parse_group, default_value = "gamma0")]
        group: Group,
        /// Family for missing-values.
        #[arg(long, value_parser = parse_family, default_value = "g0")]
        family: Family,
        /// Largest level scanned (cutoff for missing-values, largest odd N for power-of-two).
        /// Defaults: oracle 20000 (gamma0) or 5000 (gamma1), convolution-identities 10000,
        /// bennett-bound and lemma-suite 100000, power-of-two 999, missing-values 13500.
        #[arg(long)]
        max_level: Option<u64>,
        /// Weights start:end[:step]. Defaults: oracle 2:24:2 (gamma0) or 2:13 (gamma1), power-of-two 2:6:2.
        #[arg(long)]
        weights: Option<String>,
        /// Exponents of 2 for power-of-two.
        #[arg(long, default_value = "4:8")]
        alphas: String,
        /// Largest value for missing-values.
        #[arg(long, default_value_t = 1000)]
        max_dim: u64,
    },
    /// Empirical average against the predicted main term.
    Average {
        /// A dimension family or rho0/rho1.
        #[arg(long, value_parser = parse_target)]
        target: AverageTarget,
        #[arg(long, default_value_t = 2)]
        weight: i64,
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
    },
    /// Euler-product constants with certified radii.
    Constants {
        /// Primes up to this bound enter the partial product.
        #[arg(long, default_value_t = DEFAULT_EULER_CUTOFF)]
        cutoff: u64,
    },
    /// How often each value is attained as a dimension.
    Coverage {
        #[arg(long, value_parser = parse_family, default_value = "g0plus")]
        family: Family,
        #[arg(long, default_value_t = 2)]
        weight: i64,
        #[arg(long, default_value_t = 132_000)]
        limit: u64,
        #[arg(long, default_value_t = 100)]
        max_value: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Oracle,
    ConvolutionIdentities,
    BennettBound,
    PowerOfTwo,
    LemmaSuite,
    MissingValues,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_group(s: &str) -> Result<Group, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_target(s: &str) -> Result<AverageTarget, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Outcome of a command: whether every check passed, plus an optional
/// JSON report.
struct Outcome {
    ok: bool,
    report: Option<serde_json::Value>,
}

impl Outcome {
    fn done() -> Self {
        Outcome { ok: true, report: None }
    }

    fn with<T: Serialize>(ok: bool, report: &T) -> cuspdim::Result<Self> {
        let v = serde_json::to_value(report).map_err(|e| Error::Internal(e.to_string()))?;
        Ok(Outcome { ok, report: Some(v) })
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Resource(format!("write failed: {e}"))
}

fn run(cmd: Command, out: &mut dyn Write) -> cuspdim::Result<Outcome> {
    match cmd {
        Command::Dim { family, level, weight, format } => {
            let d = cuspdim::dimension(family, level, weight)?;
            if format == Format::Text {
                writeln!(out, "{}", d.value).map_err(io)?;
            } else {
                write_records(out, format, &[OutputRecord::new(family.name(), level, d.k, d.value)]).map_err(io)?;
            }
            Outcome::with(true, &d)
        }
        Command::Table { family, levels, weights, format } => {
            let (lo, hi) = parse_levels(&levels)?;
            let weights = parse_weights(&weights)?;
            let engine = DimensionEngine::standard();
            let mut keys = Vec::new();
            for &n in &(lo..=hi).collect::<Vec<_>>() {
                for &k in &weights {
                    for &t in &family {
                        keys.push((t, n, k));
                    }
                }
            }
            let records = keys
                .par_iter()
                .map(|&(t, n, k)| {
                    let value = match t {
                        AverageTarget::Dim(f) => engine.dimension(f, n, k)?.value.to_string(),
                        AverageTarget::Rho(r) => rho(r, n, k)?.to_string(),
                    };
                    Ok(OutputRecord::new(t.to_string(), n, k as u32, value))
                })
                .collect::<cuspdim::Result<Vec<_>>>()?;
            write_records(out, format, &records).map_err(io)?;
            Ok(Outcome::done())
        }
        Command::Enumerate { family, weight, max_dim, cutoff, format } => {
            let e = enumerate_small_dim(family, weight, max_dim, cutoff)?;
            let records: Vec<OutputRecord> =
                e.levels.iter().map(|&(n, d)| OutputRecord::new(family.name(), n, e.k, d)).collect();
            write_records(out, format, &records).map_err(io)?;
            let status = if e.certified { "certified" } else { "NOT certified" };
            eprintln!("{} levels with {family} <= {max_dim} up to N = {} ({status})", e.levels.len(), e.cutoff);
            Outcome::with(true, &e)
        }
        Command::Verify { check, group, family, max_level, weights, alphas, max_dim } => {
            verify(check, group, family, max_level, weights.as_deref(), &alphas, max_dim, out)
        }
        Command::Average { target, weight, limit } => {
            let r = average_ratio(target, weight, limit)?;
            writeln!(
                out,
                "{} k={} x={}: sum={} predicted={:.6} ratio={:.6}",
                r.target, r.k, r.limit, r.empirical_sum, r.predicted, r.ratio
            )
            .map_err(io)?;
            Outcome::with(true, &r)
        }
        Command::Constants { cutoff } => {
            let computed;
            let c = if cutoff == DEFAULT_EULER_CUTOFF {
                Constants::shared()
            } else {
                computed = Constants::compute(cutoff)?;
                &computed
            };
            for (name, v) in c.entries() {
                writeln!(out, "{name} {} radius={:.1e} decimals={}", v.display(), v.radius, v.certified_decimals())
                    .map_err(io)?;
            }
            Outcome::with(true, c)
        }
        Command::Coverage { family, weight, limit, max_value } => {
            let c = value_coverage(family, weight, limit, max_value)?;
            let (min_c, min_v) = c.min_multiplicity();
            let (max_c, max_v) = c.max_multiplicity();
            writeln!(out, "{family} k={} N<={limit} values 0..={max_value}", c.k).map_err(io)?;
            writeln!(out, "attained {} of {}", c.attained(), max_value + 1).map_err(io)?;
            writeln!(out, "min multiplicity {min_c} at {min_v}").map_err(io)?;
            writeln!(out, "max multiplicity {max_c} at {max_v}").map_err(io)?;
            match c.first_gap() {
                Some(g) => writeln!(out, "first unattained value {g}"),
                None => writeln!(out, "every value attained"),
            }
            .map_err(io)?;
            Outcome::with(true, &c)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    check: Check,
    group: Group,
    family: Family,
    max_level: Option<u64>,
    weights: Option<&str>,
    alphas: &str,
    max_dim: u64,
    out: &mut dyn Write,
) -> cuspdim::Result<Outcome> {
    let weights = weights.map(parse_weights).transpose()?;
    match check {
        Check::Oracle => {
            let (x, ws) = match group {
                Group::Gamma0 => (20_000, (2..=24).step_by(2).collect()),
                Group::Gamma1 => (5_000, (2..=13).collect()),
            };
            let r = consistency_scan(group, max_level.unwrap_or(x), &weights.unwrap_or(ws))?;
            writeln!(out, "{} N<={} weights {:?}: {} comparisons", group, r.limit, r.weights, r.checked).map_err(io)?;
            writeln!(out, "{} mismatches, {} integrality failures", r.mismatches.len(), r.integrality_failures)
                .map_err(io)?;
            for m in r.mismatches.iter().take(10) {
                writeln!(out, "  {} N={} k={}: formula {} oracle {}", m.family, m.n, m.k, m.formula, m.oracle)
                    .map_err(io)?;
            }
            Outcome::with(r.is_clean(), &r)
        }
        Check::ConvolutionIdentities => {
            let r = verify_convolution_identities(Registry::standard(), max_level.unwrap_or(10_000))?;
            for x in &r.results {
                writeln!(out, "{}: {} failures", x.identity, x.failure_count).map_err(io)?;
            }
            writeln!(out, "{} identities checked to N={}", r.results.len(), r.max_n).map_err(io)?;
            Outcome::with(r.holds(), &r)
        }
        Check::BennettBound => {
            let s = verify_sharp_bound(max_level.unwrap_or(100_000))?;
            let res = verify_bennett_residual()?;
            writeln!(out, "12 g0plus(N,2) <= N+1 for N<={}: {} violations", s.max_n, s.violations.len()).map_err(io)?;
            let eq = if s.equality_set == s.expected_equality_set { "matches" } else { "DIFFERS FROM" };
            writeln!(out, "equality at {} levels, {eq} {{35}} and primes 11 mod 12", s.equality_set.len())
                .map_err(io)?;
            writeln!(out, "residual levels: {} checked, {} failures", res.levels, res.failures.len()).map_err(io)?;
            let ok = s.holds() && res.failures.is_empty();
            Outcome::with(ok, &serde_json::json!({ "sharp_bound": s, "residual": res }))
        }
        Check::PowerOfTwo => {
            let alphas: Vec<u32> = parse_weights(alphas)?.into_iter().map(|a| a as u32).collect();
            let ws = weights.unwrap_or_else(|| vec![2, 4, 6]);
            let r = verify_power_of_two(max_level.unwrap_or(999), &alphas, &ws)?;
            writeln!(
                out,
                "odd squarefree N<={} alphas {:?} weights {:?}: {} checks, {} failures",
                r.max_odd_n,
                r.alphas,
                r.weights,
                r.checked,
                r.failures.len()
            )
            .map_err(io)?;
            Outcome::with(r.failures.is_empty(), &r)
        }
        Check::LemmaSuite => {
            let r = lemma_suite(max_level.unwrap_or(100_000))?;
            for c in &r.checks {
                let tag = if c.holds() { "ok" } else { "FAIL" };
                writeln!(out, "{tag} {} ({} levels, {} violations): {}", c.name, c.checked, c.violation_count, c.statement)
                    .map_err(io)?;
            }
            Outcome::with(r.holds(), &r)
        }
        Check::MissingValues => {
            let m = missing_values(family, 2, max_dim, max_level.unwrap_or(13_500))?;
            writeln!(out, "{} values in 0..={} missing for {family} up to N={}", m.missing.len(), m.max_value, m.cutoff)
                .map_err(io)?;
            let list: Vec<String> = m.missing.iter().map(u64::to_string).collect();
            writeln!(out, "{}", list.join(",")).map_err(io)?;
            Outcome::with(true, &m)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Domain(_) | Error::UnsupportedWeight(_) | Error::Precondition(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot set thread count: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let _ = out.flush();
    let code = match result {
        Ok(outcome) => {
            if let (Some(path), Some(report)) = (&cli.report, &outcome.report) {
                let text = serde_json::to_string_pretty(report).expect("report serializes");
                if let Err(e) = std::fs::write(path, text + "\n") {
                    eprintln!("error: cannot write report {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            if outcome.ok {
                0
            } else {
                eprintln!("verification failed");
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    if !cli.quiet {
        eprintln!("elapsed {:.2}s", start.elapsed().as_secs_f64());
    }
    ExitCode::from(code)
}
