//! Command-line front end. Every command writes one canonical JSON report
//! to stdout and a short summary to stderr.

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ncpoisson_core::ainfty::{check_ainfty, check_assumption};
use ncpoisson_core::graded::{format_scalar, int, Scalar, Word};
use ncpoisson_core::hochschild::{cyclic_average, is_cyclic_functional, quillen_check_all, verify_bicomplex};
use ncpoisson_core::homology::hc_dims;
use ncpoisson_core::io::{
    double_functional_to_json, functional_to_json, parse_functional, parse_spec, to_canonical_string,
};
use ncpoisson_core::poisson::{bracket, double_bracket, verify_double_poisson};
use ncpoisson_core::{Category, SignConvention, ValidationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

pub const JOBS_ENV: &str = "NCPOISSON_JOBS";

#[derive(Parser, Debug)]
#[command(name = "ncpoisson", version, about = "Exact checks for finite A-infinity categories")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads; NCPOISSON_JOBS takes precedence.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Reject unknown fields in input files (default).
    #[arg(long, global = true, overrides_with = "no_strict")]
    strict: bool,

    /// Ignore unknown fields in input files.
    #[arg(long = "no-strict", global = true)]
    no_strict: bool,

    /// Seed for randomized mutation corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural, A-infinity and cyclic-invariance checks.
    Validate {
        spec: PathBuf,
        /// Also reject this many single-entry mutants of the eps table.
        #[arg(long, default_value_t = 0)]
        mutants: usize,
    },
    /// Bicomplex identities and Ker/Coker comparison of 1 - T.
    Bicomplex(Weighted),
    /// The five double Poisson identities on delta functionals.
    Poisson {
        #[command(flatten)]
        common: Weighted,
        #[arg(long, value_enum, default_value_t = Convention::Shifted)]
        sign_convention: Convention,
    },
    /// Double bracket, bracket and cyclic average of two functionals.
    Bracket {
        spec: PathBuf,
        #[arg(long = "f")]
        f: PathBuf,
        #[arg(long = "g")]
        g: PathBuf,
    },
    /// Truncated cyclic homology and cohomology dimensions.
    Hc {
        #[command(flatten)]
        common: Weighted,
        /// Inclusive range of shifted degrees, e.g. `-2..6`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_degrees, default_value = "0..4")]
        degrees: RangeInclusive<i64>,
    },
}

#[derive(Args, Debug)]
struct Weighted {
    spec: PathBuf,
    #[arg(long, default_value_t = 4)]
    max_weight: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Convention {
    Shifted,
    Unshifted,
    ConstantPlus,
}

impl From<Convention> for SignConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Shifted => SignConvention::Shifted,
            Convention::Unshifted => SignConvention::Unshifted,
            Convention::ConstantPlus => SignConvention::ConstantPlus,
        }
    }
}

fn parse_degrees(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad lower bound `{a}`"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad upper bound `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

/// Exit code and the two output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(passed: bool, report: Value, summary: String) -> Self {
        Outcome {
            code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
            stdout: to_canonical_string(&report),
            stderr: summary,
        }
    }

    fn failure(code: i32, message: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Thread count from `--jobs`, overridden by the environment.
pub fn effective_jobs(flag: Option<usize>, env: Option<&str>) -> Option<usize> {
    env.and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .or(flag)
}

/// Runs one command line (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::failure(code, text)
            };
        }
    };
    let env = std::env::var(JOBS_ENV).ok();
    match effective_jobs(cli.jobs, env.as_deref()) {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Outcome::failure(EXIT_USAGE, format!("cannot start {n} workers: {e}\n")),
        },
        None => execute(&cli),
    }
}

fn load(path: &Path, strict: bool) -> Result<Category, Outcome> {
    parse_spec(path, strict).map_err(|e| Outcome::failure(EXIT_PARSE, format!("{}: {e}\n", path.display())))
}

fn execute(cli: &Cli) -> Outcome {
    let strict = !cli.no_strict;
    let result = match &cli.command {
        Command::Validate { spec, mutants } => {
            load(spec, strict).map(|cat| validate(&cat, *mutants, cli.seed))
        }
        Command::Bicomplex(w) => load(&w.spec, strict).map(|cat| bicomplex(&cat, w.max_weight)),
        Command::Poisson {
            common,
            sign_convention,
        } => load(&common.spec, strict).map(|cat| {
            poisson(&cat.with_sign_convention((*sign_convention).into()), common.max_weight)
        }),
        Command::Bracket { spec, f, g } => load(spec, strict).and_then(|cat| brackets(&cat, f, g, strict)),
        Command::Hc { common, degrees } => {
            load(&common.spec, strict).map(|cat| hc(&cat, common.max_weight, degrees.clone()))
        }
    };
    result.unwrap_or_else(|o| o)
}

fn summary_lines(title: &str, report: &ValidationReport) -> String {
    let mut s = format!("{title}: {}\n", if report.passed() { "PASS" } else { "FAIL" });
    for c in &report.checks {
        s.push_str(&format!(
            "  {:<50} {} ({} checked, {} violations)\n",
            c.name,
            if c.passed() { "ok" } else { "FAILED" },
            c.checked,
            c.violation_count
        ));
    }
    s
}

fn validation_report(cat: &Category) -> ValidationReport {
    let mut report = check_ainfty(cat);
    report.extend(check_assumption(cat));
    report
}

/// Single-entry changes of the eps table: every stored entry rescaled,
/// negated or removed, and every empty slot `m̄_k(w) ∋ q` with matching
/// endpoints filled in, for `k <= min(2, K)`.
pub fn mutation_candidates(cat: &Category) -> Vec<(usize, Word, Scalar)> {
    let mut out = Vec::new();
    for (w, outs) in cat.eps_entries() {
        for (q, c) in outs.iter() {
            let half = c / int(2);
            for v in [c * int(2), -c.clone(), int(0), c * int(3), half, c * int(-2)] {
                out.push((*q, w.clone(), v));
            }
        }
    }
    for weight in 1..=cat.max_arity().min(2) {
        for w in cat.words_of_weight(weight) {
            for q in 0..cat.morphism_count() {
                let ends = Some(cat.source(q)) == cat.word_source(&w)
                    && Some(cat.target(q)) == cat.word_target(&w);
                if ends && cat.eps_value(q, &w) == int(0) {
                    out.push((q, w.clone(), int(1)));
                }
            }
        }
    }
    out
}

fn validate(cat: &Category, mutants: usize, seed: u64) -> Outcome {
    let report = validation_report(cat);
    let mut summary = summary_lines(&format!("validate {}", cat.name()), &report);
    let mut out = json!({
        "command": "validate",
        "category": cat.name(),
        "report": report.to_json(),
    });
    let mut passed = report.passed();
    if mutants > 0 {
        let mut candidates = mutation_candidates(cat);
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let chosen: Vec<_> = candidates.into_iter().take(mutants).collect();
        let results: Vec<Value> = chosen
            .iter()
            .map(|(q, w, v)| {
                let entry = json!({
                    "out": cat.morphism(*q).id,
                    "word": cat.word_ids(w),
                    "from": format_scalar(&cat.eps_value(*q, w)),
                    "to": format_scalar(v),
                });
                match cat.with_eps(*q, w.clone(), v.clone()) {
                    Ok(m) => {
                        let r = validation_report(&m);
                        json!({ "entry": entry, "rejected": !r.passed(), "failing": r.failing() })
                    }
                    Err(e) => json!({ "entry": entry, "rejected": true, "failing": [e.to_string()] }),
                }
            })
            .collect();
        let rejected = results.iter().filter(|r| r["rejected"] == json!(true)).count();
        summary.push_str(&format!(
            "mutants: {rejected} of {} rejected (seed {seed})\n",
            results.len()
        ));
        passed &= rejected == results.len();
        out["mutants"] = json!({
            "seed": seed,
            "requested": mutants,
            "generated": results.len(),
            "rejected": rejected,
            "results": results,
        });
    }
    out["passed"] = json!(passed);
    Outcome::report(passed, out, summary)
}

fn bicomplex(cat: &Category, max_weight: usize) -> Outcome {
    let mut report = verify_bicomplex(cat, max_weight);
    report.extend(quillen_check_all(cat, max_weight));
    let summary = summary_lines(
        &format!("bicomplex {} (weight <= {max_weight})", cat.name()),
        &report,
    );
    let out = json!({
        "command": "bicomplex",
        "category": cat.name(),
        "max_weight": max_weight,
        "passed": report.passed(),
        "report": report.to_json(),
    });
    Outcome::report(report.passed(), out, summary)
}

fn convention_name(c: SignConvention) -> &'static str {
    match c {
        SignConvention::Shifted => "shifted",
        SignConvention::Unshifted => "unshifted",
        SignConvention::ConstantPlus => "constant-plus",
    }
}

fn poisson(cat: &Category, max_weight: usize) -> Outcome {
    let report = verify_double_poisson(cat, max_weight);
    let summary = summary_lines(
        &format!("poisson {} (weight <= {max_weight})", cat.name()),
        &report.to_validation_report(),
    );
    let out = json!({
        "command": "poisson",
        "category": cat.name(),
        "bracket_degree": cat.bracket_degree(),
        "sign_convention": convention_name(cat.sign_convention()),
        "passed": report.passed(),
        "report": report.to_json(),
    });
    Outcome::report(report.passed(), out, summary)
}

fn brackets(cat: &Category, f: &Path, g: &Path, strict: bool) -> Result<Outcome, Outcome> {
    let read = |p: &Path| {
        parse_functional(cat, p, strict)
            .map_err(|e| Outcome::failure(EXIT_PARSE, format!("{}: {e}\n", p.display())))
    };
    let (f, g) = (read(f)?, read(g)?);
    let dbl = double_bracket(cat, &f, &g);
    let single = bracket(cat, &f, &g);
    let averaged = cyclic_average(cat, &single);
    let cyclic = is_cyclic_functional(cat, &f) && is_cyclic_functional(cat, &g);
    let summary = format!(
        "bracket {}: {} double-bracket terms, {} bracket terms, {} averaged terms{}\n",
        cat.name(),
        dbl.len(),
        single.len(),
        averaged.len(),
        if cyclic { "" } else { " (inputs not cyclic)" }
    );
    let out = json!({
        "command": "bracket",
        "category": cat.name(),
        "inputs_cyclic": cyclic,
        "double_bracket": double_functional_to_json(cat, &dbl),
        "bracket": functional_to_json(cat, &single),
        "cyclic_average": functional_to_json(cat, &averaged),
    });
    Ok(Outcome::report(true, out, summary))
}

fn hc(cat: &Category, max_weight: usize, degrees: RangeInclusive<i64>) -> Outcome {
    let table = hc_dims(cat, max_weight, degrees);
    let mut summary = format!(
        "hc {} (truncated, weight <= {max_weight})\n  degree  HC_n  HC^n\n",
        cat.name()
    );
    for (n, (h, c)) in &table.rows {
        summary.push_str(&format!("  {n:>6}  {h:>4}  {c:>4}\n"));
    }
    let passed = table.mismatches().is_empty();
    let out = json!({
        "command": "hc",
        "category": cat.name(),
        "passed": passed,
        "table": table.to_json(),
    });
    Outcome::report(passed, out, summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("-2..6"), Ok(-2..=6));
        assert_eq!(parse_degrees("3..3"), Ok(3..=3));
        assert!(parse_degrees("4..1").is_err());
        assert!(parse_degrees("x").is_err());
    }

    #[test]
    fn environment_overrides_flag() {
        assert_eq!(effective_jobs(Some(8), Some("1")), Some(1));
        assert_eq!(effective_jobs(Some(8), None), Some(8));
        assert_eq!(effective_jobs(None, Some("junk")), None);
        assert_eq!(effective_jobs(Some(2), Some("0")), Some(2));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["ncpoisson", "frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run(["ncpoisson", "hc"]).code, EXIT_USAGE);
    }

    #[test]
    fn missing_file_is_a_parse_error() {
        assert_eq!(run(["ncpoisson", "validate", "/nonexistent.spec"]).code, EXIT_PARSE);
    }
}
