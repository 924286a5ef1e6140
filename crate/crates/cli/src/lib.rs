//! Command-line front end: parses arguments, runs one library operation
//! and renders the result as JSON (or CSV for `coherent-curve`).

use std::fs;
use std::path::{Path, PathBuf};

use bellbound::bell::{CERTIFY_SLACK, ENUMERATION_GUARD};
use bellbound::coherent::{CoherentFamily, FockTruncation, DEFAULT_TAIL_TOL};
use bellbound::qstate::DEFAULT_TRUNCATION_TOL;
use bellbound::schema::{FunctionalSpec, SchmidtJson, SourceOperatorJson, StateSpec};
use bellbound::source_op::size_guard;
use bellbound::{
    bound_curve, bound_report, build_source_1xs, build_source_sx1, certify, corollary1_bound,
    lhv_extrema, proposition1_bound, reduced_eigenvalues, schmidt_decompose, seesaw_maximize,
    verify_dilation, BellFunctional, Dim, Error, Family, SourceOperator,
};
use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_NOT_CERTIFIED: i32 = 4;

/// Significant digits kept in every emitted number.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "bellbound",
    version,
    about = "Bounds on Bell violation by pure bipartite states"
)]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schmidt decomposition of a state.
    Schmidt {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION_TOL)]
        tol: f64,
    },
    /// All violation bounds for a state and settings counts.
    Bound {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        s1: usize,
        #[arg(long)]
        s2: usize,
        /// Also report the projective-measurement bound (needs d1 = d2, s1 = s2).
        #[arg(long)]
        projective: bool,
    },
    /// Source operator for one site measured once and the other `s` times.
    #[command(group(ArgGroup::new("settings").required(true).args(["s1", "s2"])))]
    SourceOp {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, conflicts_with = "s2")]
        s1: Option<usize>,
        #[arg(long)]
        s2: Option<usize>,
        /// Check the dilation property on random observables.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the dense operator as JSON to this path.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Reduced eigenvalues and bound for an entangled coherent state.
    Coherent {
        #[arg(long)]
        family: u8,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
        tol: f64,
    },
    /// Bound as a function of alpha, as CSV.
    CoherentCurve {
        #[arg(long)]
        family: u8,
        #[arg(long, default_value_t = 0.01)]
        alpha_min: f64,
        #[arg(long, default_value_t = 3.0)]
        alpha_max: f64,
        #[arg(long, default_value_t = 300)]
        steps: usize,
    },
    /// Classical extrema of a functional.
    Lhv {
        /// Path to a functional JSON file, or a builtin name (`chsh`).
        #[arg(long)]
        functional: String,
    },
    /// Violation ratio of a state against a functional.
    #[command(group(ArgGroup::new("source").required(true).args(["seesaw", "value"])))]
    Violate {
        #[arg(long)]
        functional: String,
        #[arg(long)]
        input: PathBuf,
        /// Search for a large quantum value by see-saw.
        #[arg(long)]
        seesaw: bool,
        /// Certify this quantum value instead of searching.
        #[arg(long, allow_negative_numbers = true)]
        value: Option<f64>,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        #[arg(long, default_value_t = 500)]
        iters: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit status plus whatever should reach stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Report {
    text: String,
    code: i32,
}

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n
                .as_f64()
                .map(round_sig)
                .and_then(serde_json::Number::from_f64)
            {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

fn render<S: Serialize>(report: &S) -> String {
    let mut v = serde_json::to_value(report).expect("reports serialize");
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {what} {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Io(format!("cannot parse {what} {}: {e}", path.display())))
}

fn load_state(path: &Path) -> Result<StateSpec, Failure> {
    read_json(path, "state")
}

fn load_functional(arg: &str) -> Result<BellFunctional, Failure> {
    let path = Path::new(arg);
    let spec = if path.exists() {
        read_json(path, "functional")?
    } else {
        FunctionalSpec::Named(arg.to_string())
    };
    Ok(spec.to_functional()?)
}

/// Physical dimensions: coherent states live in infinite-dimensional modes.
fn physical_dims(spec: &StateSpec, d1: usize, d2: usize) -> (Dim, Dim) {
    match spec {
        StateSpec::Coherent { .. } => (Dim::INFINITE, Dim::INFINITE),
        _ => (Dim::Finite(d1), Dim::Finite(d2)),
    }
}

fn ok(text: String) -> Result<Report, Failure> {
    Ok(Report {
        text,
        code: EXIT_OK,
    })
}

fn dispatch(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Schmidt { input, tol } => {
            let spec = load_state(input)?;
            let sd = match spec {
                StateSpec::Schmidt { .. } => spec.to_schmidt::<f64>()?,
                _ => schmidt_decompose(&spec.to_state()?, *tol)?,
            };
            ok(render(&SchmidtJson::from(&sd)))
        }
        Command::Bound {
            input,
            s1,
            s2,
            projective,
        } => {
            let spec = load_state(input)?;
            let sd = spec.to_schmidt::<f64>()?;
            let dims = physical_dims(&spec, sd.d1(), sd.d2());
            let report = bound_report(&sd, *s1, *s2, Some(dims), *projective)?;
            ok(render(&json!({
                "bounds": report,
                "schmidt_rank": sd.rank(),
                "truncation_tol": DEFAULT_TRUNCATION_TOL,
            })))
        }
        Command::SourceOp {
            input,
            s1,
            s2,
            check,
            samples,
            seed,
            export,
        } => {
            let spec = load_state(input)?;
            let state = spec.to_state()?;
            let sd = schmidt_decompose(&state, DEFAULT_TRUNCATION_TOL)?;
            let op: SourceOperator = match (s1, s2) {
                (Some(s), None) => build_source_sx1(&sd, *s)?,
                (None, Some(s)) => build_source_1xs(&sd, *s)?,
                _ => unreachable!("clap enforces exactly one of --s1/--s2"),
            };
            let tn = op.trace_norm()?;
            let bound = corollary1_bound(&sd);
            let residual = if *check {
                Some(verify_dilation(&op, &state, *samples, *seed)?)
            } else {
                None
            };
            if let Some(path) = export {
                let body = render(&SourceOperatorJson::from(&op));
                fs::write(path, body)
                    .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
            }
            ok(render(&json!({
                "s1": op.s1(),
                "s2": op.s2(),
                "d1": op.d1(),
                "d2": op.d2(),
                "trace_norm": tn,
                "corollary1_bound": bound,
                "bound_slack": bound - tn,
                "dilation_residual": residual,
                "samples": if *check { Some(*samples) } else { None },
                "seed": seed,
                "truncation_tol": DEFAULT_TRUNCATION_TOL,
                "max_dim": size_guard(),
            })))
        }
        Command::Coherent { family, alpha, tol } => {
            let fam = CoherentFamily::new(Family::try_from(*family)?, *alpha)?;
            let (plus, minus) = reduced_eigenvalues(&fam);
            let trunc = FockTruncation::auto(*alpha, *tol)?;
            let sd = schmidt_decompose(
                &bellbound::coherent::fock_state(&fam, &trunc)?,
                DEFAULT_TRUNCATION_TOL,
            )?;
            let mut fock = sd.lambdas();
            fock.resize(2, 0.0);
            ok(render(&json!({
                "family": family,
                "alpha": alpha,
                "overlap": fam.overlap(),
                "eigenvalues": [plus, minus],
                "bound": proposition1_bound(&fam),
                "fock_eigenvalues": &fock[..2],
                "fock_bound": corollary1_bound(&sd),
                "fock_cutoff": trunc.cutoff(),
                "fock_tail": trunc.tail_bound(),
                "tail_tol": tol,
            })))
        }
        Command::CoherentCurve {
            family,
            alpha_min,
            alpha_max,
            steps,
        } => {
            let curve = bound_curve(Family::try_from(*family)?, *alpha_min, *alpha_max, *steps)?;
            let mut text = String::from("alpha,bound\n");
            for (a, b) in curve {
                text.push_str(&format!("{},{}\n", round_sig(a), round_sig(b)));
            }
            ok(text)
        }
        Command::Lhv { functional } => {
            let f = load_functional(functional)?;
            let e = lhv_extrema(&f)?;
            ok(render(&json!({
                "b_sup": e.b_sup,
                "b_inf": e.b_inf,
                "b_lhv": e.b_lhv,
                "argmax_strategy": e.argmax_strategy,
                "argmin_strategy": e.argmin_strategy,
                "enumeration_limit": ENUMERATION_GUARD,
            })))
        }
        Command::Violate {
            functional,
            input,
            seesaw,
            value,
            restarts,
            iters,
            tol,
            seed,
        } => {
            let f = load_functional(functional)?;
            let state = load_state(input)?.to_state()?;
            let mut search = Value::Null;
            let v = if *seesaw {
                let r = seesaw_maximize(&f, &state, *restarts, *iters, *tol, *seed)?;
                search = json!({
                    "restarts": restarts,
                    "max_iters": iters,
                    "tol": tol,
                    "seed": seed,
                    "best_restart": r.restart,
                    "iterations": r.history.len(),
                });
                r.value
            } else {
                value.expect("clap requires --seesaw or --value")
            };
            let report = certify(&f, &state, v)?;
            let code = if report.certified {
                EXIT_OK
            } else {
                EXIT_NOT_CERTIFIED
            };
            let text = render(&json!({
                "report": report,
                "seesaw": search,
                "certify_slack": CERTIFY_SLACK,
            }));
            Ok(Report { text, code })
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::Validation(_)
        | Error::Argument(_)
        | Error::Degeneracy(_)
        | Error::Unsupported(_) => EXIT_VALIDATION,
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(Failure::Lib(e)) => {
            return Outcome {
                code: exit_code(&e),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
        Err(Failure::Io(m)) => {
            return Outcome {
                code: EXIT_VALIDATION,
                stdout: String::new(),
                stderr: format!("error: {m}\n"),
            }
        }
    };
    match &cli.output {
        Some(path) => match fs::write(path, &report.text) {
            Ok(()) => Outcome {
                code: report.code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: EXIT_VALIDATION,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome {
            code: report.code,
            stdout: report.text,
            stderr: String::new(),
        },
    }
}
