//! Command-line front end.
//!
//! Exit codes: 0 success, 1 an identity check failed, 2 usage or input error.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::BiPoly;
use crate::campaign::{run_campaign, CampaignConfig, Identity};
use crate::error::Error;
use crate::leibniz::{apply_expansion, leibniz_terms};
use crate::multifactor::{multi_delta, FactorList};
use crate::numeric::{verify_two_factor, GridSpec, NumericFn, DEFAULT_TOL};
use crate::operators::delta_pow;
use crate::parse::parse_poly;
use crate::random::PolySampler;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        CommandOutcome {
            exit_code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dqcalc",
    version,
    about = "Exact and numeric checks of Leibniz rules for the difference quotient"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TheoremArg {
    #[value(name = "1.1")]
    TwoFactor,
    #[value(name = "1.3")]
    MultiFactor,
    Inversion,
    Egf,
}

impl From<TheoremArg> for Identity {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::TwoFactor => Identity::TwoFactor,
            TheoremArg::MultiFactor => Identity::MultiFactor,
            TheoremArg::Inversion => Identity::Inversion,
            TheoremArg::Egf => Identity::Egf,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the terms of the two-factor expansion of order r.
    Expand {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        json: bool,
    },
    /// Apply the two-factor expansion to f and g and compare with iterated δ.
    Apply {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the n-factor alternating sum and compare with iterated δ.
    Multi {
        #[arg(long)]
        r: u32,
        /// Comma-separated polynomials.
        #[arg(long)]
        factors: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a seeded randomized exact campaign.
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        r: u32,
        /// Number of factors (default 3; theorem 1.1 always uses 2).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Floating-point check of the two-factor rule on a grid.
    Numeric {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        r: u32,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long)]
        step: f64,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
}

/// Runs one invocation; `args` excludes the program name.
pub fn run_command<I, S>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("dqcalc".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome::usage(text)
            } else {
                CommandOutcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Expand { r, json } => expand(r, json),
        Command::Apply { r, f, g, json } => apply(r, &f, &g, json),
        Command::Multi { r, factors, json } => multi(r, &factors, json),
        Command::Verify {
            theorem,
            r,
            n,
            trials,
            seed,
        } => verify(theorem.into(), r, n, trials, seed),
        Command::Numeric {
            f,
            g,
            r,
            lambda,
            x0,
            step,
            count,
            tol,
            json,
        } => numeric(&f, &g, r, lambda, x0, step, count, tol, json),
    }
}

fn require_positive(command: &str, r: u32) -> Result<(), CommandOutcome> {
    if r == 0 {
        Err(CommandOutcome::usage(format!(
            "error: {command} requires a positive integer r (got --r 0)"
        )))
    } else {
        Ok(())
    }
}

fn parse_arg(name: &str, src: &str) -> Result<BiPoly, CommandOutcome> {
    parse_poly(src).map_err(|e| CommandOutcome::usage(format!("error: --{name} {src:?}: {e}")))
}

fn verdict(equal: bool) -> &'static str {
    if equal {
        "EQUAL"
    } else {
        "DIFFER"
    }
}

fn exit_for(equal: bool) -> i32 {
    if equal {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn expand(r: u32, json: bool) -> CommandOutcome {
    if let Err(out) = require_positive("expand", r) {
        return out;
    }
    let e = leibniz_terms(r).expect("r checked positive");
    if json {
        let mut out = String::new();
        for t in &e.terms {
            writeln!(out, "{}", serde_json::to_string(t).expect("plain fields")).unwrap();
        }
        CommandOutcome::ok(out)
    } else {
        CommandOutcome::ok(e.to_string())
    }
}

fn apply(r: u32, f: &str, g: &str, json: bool) -> CommandOutcome {
    if let Err(out) = require_positive("apply", r) {
        return out;
    }
    let (f, g) = match (parse_arg("f", f), parse_arg("g", g)) {
        (Ok(f), Ok(g)) => (f, g),
        (Err(e), _) | (_, Err(e)) => return e,
    };
    let lhs = apply_expansion(&leibniz_terms(r).expect("r checked positive"), &f, &g);
    let rhs = delta_pow(&(&f * &g), r);
    let equal = lhs == rhs;
    let stdout = if json {
        let v = json!({
            "r": r,
            "f": f.to_string(),
            "g": g.to_string(),
            "expansion": lhs.to_string(),
            "delta_pow": rhs.to_string(),
            "verdict": verdict(equal),
        });
        format!("{v}\n")
    } else {
        format!("expansion: {lhs}\ndelta_pow: {rhs}\n{}\n", verdict(equal))
    };
    CommandOutcome {
        exit_code: exit_for(equal),
        stdout,
        stderr: String::new(),
    }
}

fn multi(r: u32, factors: &str, json: bool) -> CommandOutcome {
    if let Err(out) = require_positive("multi", r) {
        return out;
    }
    let mut polys = Vec::new();
    for src in factors.split(',') {
        match parse_arg("factors", src) {
            Ok(p) => polys.push(p),
            Err(e) => return e,
        }
    }
    let fs = match FactorList::new(polys) {
        Ok(fs) => fs,
        Err(e) => return CommandOutcome::usage(format!("error: {e}")),
    };
    let lhs = match multi_delta(&fs, r) {
        Ok(p) => p,
        Err(e) => {
            return CommandOutcome {
                exit_code: EXIT_FAILED,
                stdout: String::new(),
                stderr: format!("{e}\n"),
            }
        }
    };
    let rhs = delta_pow(&fs.product(), r);
    let equal = lhs == rhs;
    let stdout = if json {
        let names: Vec<String> = fs.factors().iter().map(ToString::to_string).collect();
        let v = json!({
            "r": r,
            "factors": names,
            "multi_delta": lhs.to_string(),
            "delta_pow": rhs.to_string(),
            "verdict": verdict(equal),
        });
        format!("{v}\n")
    } else {
        format!("multi_delta: {lhs}\ndelta_pow: {rhs}\n{}\n", verdict(equal))
    };
    CommandOutcome {
        exit_code: exit_for(equal),
        stdout,
        stderr: String::new(),
    }
}

fn verify(identity: Identity, r: u32, n: Option<usize>, trials: u32, seed: u64) -> CommandOutcome {
    if matches!(identity, Identity::TwoFactor | Identity::MultiFactor) {
        if let Err(out) = require_positive("verify", r) {
            return out;
        }
    }
    if identity == Identity::TwoFactor && n.is_some_and(|n| n != 2) {
        return CommandOutcome::usage("error: theorem 1.1 is the two-factor rule; --n must be 2");
    }
    let config = CampaignConfig {
        identity,
        r,
        n: n.unwrap_or(3),
        trials,
        seed,
        sampler: PolySampler::default(),
    };
    let summary = match run_campaign(&config) {
        Ok(s) => s,
        Err(e) => return CommandOutcome::usage(format!("error: {e}")),
    };
    let mut out = String::new();
    for fail in &summary.failures {
        let inputs: Vec<String> = fail.factors.iter().map(|p| format!("[{p}]")).collect();
        writeln!(
            out,
            "FAIL theorem={} seed={} trial={} r={} n={} inputs={} ({})",
            identity,
            seed,
            fail.trial,
            r,
            summary.config.n,
            inputs.join(" "),
            fail.detail
        )
        .unwrap();
    }
    writeln!(
        out,
        "verify theorem={} r={} n={} trials={} seed={} passed={} failed={}",
        identity,
        r,
        summary.config.n,
        trials,
        seed,
        summary.passed,
        summary.failures.len()
    )
    .unwrap();
    CommandOutcome {
        exit_code: exit_for(summary.ok()),
        stdout: out,
        stderr: String::new(),
    }
}

#[allow(clippy::too_many_arguments)]
fn numeric(
    f: &str,
    g: &str,
    r: u32,
    lambda: f64,
    x0: f64,
    step: f64,
    count: usize,
    tol: f64,
    json: bool,
) -> CommandOutcome {
    if let Err(out) = require_positive("numeric", r) {
        return out;
    }
    let result = (|| -> Result<_, Error> {
        let f: NumericFn = f.parse()?;
        let g: NumericFn = g.parse()?;
        let grid = GridSpec::new(x0, step, count, lambda)?;
        verify_two_factor(&f, &g, r, &grid, tol)
    })();
    let report = match result {
        Ok(rep) => rep,
        Err(e) => return CommandOutcome::usage(format!("error: {e}")),
    };
    let stdout = if json {
        format!("{}\n", report.to_json())
    } else {
        format!(
            "max_abs_err: {:e}\nmax_rel_err: {:e}\ncancellation_ratio: {:e}\ntrials: {}\n{}\n",
            report.max_abs_err,
            report.max_rel_err,
            report.cancellation_ratio,
            report.trials,
            if report.pass { "PASS" } else { "FAIL" }
        )
    };
    CommandOutcome {
        exit_code: exit_for(report.pass),
        stdout,
        stderr: String::new(),
    }
}
