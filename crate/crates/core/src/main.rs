use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use stokit::construction::{construct_defective_example, construct_defective_scaled};
use stokit::convergence::{classify_convergence, predict_limit, simulate_power, LimitPrediction, SimulationTrace};
use stokit::decomposition::{decompose, stationary_distribution};
use stokit::io::{env_backend, parse_vector, read_matrix, render, render_vector, AnyMatrix};
use stokit::report;
use stokit::scalar::parse_rational;
use stokit::spectral::spectral_report;
use stokit::validation::validate_stochastic;
use stokit::{AnalysisConfig, Backend, Error, Matrix, ProbabilityVector, Result, Scalar, StochasticMatrix, Vector};

/// Analysis and construction of column-stochastic (Markov) matrices.
///
/// Matrix files are JSON (`{"rows": [["1/3", ...], ...]}`) or CSV, with
/// `rows[i][j] = a_ij` and columns summing to 1. Reports go to stdout as JSON.
#[derive(Parser)]
#[command(name = "stokit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a human-readable summary to stderr.
    #[arg(long, global = true)]
    verbose: bool,
    /// Input rows sum to 1 instead of columns; the matrix is transposed on load.
    #[arg(long, global = true)]
    row_stochastic: bool,
    /// Force the scalar backend (rational or float) regardless of the file.
    #[arg(long, global = true)]
    precision: Option<Backend>,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct Input {
    /// Matrix file (JSON or CSV).
    matrix: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check nonnegativity and unit column sums. Exits 1 if invalid.
    Validate(Input),
    /// Spectrum, stationary distribution, diagonalizability and convergence class.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Random probability vectors for the S5-closure check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Eigenvalues, characteristic polynomial, Gershgorin discs and the exact
    /// diagonalizability certificate.
    Spectrum(Input),
    /// Stationary distribution and the fixed space of the matrix.
    Stationary(Input),
    /// Split a vector as `β + kξ` with `β` summing to zero and ξ stationary.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Vector literal (`[...]` or comma separated) or a file holding one.
        vector: String,
    },
    /// Convergence class of `Mᵐx`, plus the predicted limit for `--start`.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        start: Option<String>,
    },
    /// Iterate `x ← Mx` until it settles, oscillates or runs out of steps.
    Simulate {
        #[command(flatten)]
        input: Input,
        /// `uniform`, a vector literal, or a file holding one.
        #[arg(long, default_value = "uniform")]
        start: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
        /// Write every iterate as CSV (`step,x1..xn,delta`).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Build a defective Markov matrix with a certificate.
    Construct {
        /// The 3×3 worked example with spectrum {1, 0, 0} (the default).
        #[arg(long, alias = "paper", conflicts_with = "lambda")]
        example: bool,
        /// Spectrum {1, λ, λ} with a 2×2 Jordan block, e.g. `1/4`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
}

struct Outcome {
    report: Value,
    summary: String,
    code: u8,
}

impl Outcome {
    fn ok(report: Value, summary: String) -> Self {
        Outcome { report, summary, code: 0 }
    }
}

fn load(input: &Input, cli: &Cli) -> Result<AnyMatrix> {
    let m = read_matrix(&input.matrix, env_backend()?)?;
    let m = if cli.row_stochastic { m.transpose() } else { m };
    Ok(match (cli.precision, m) {
        (Some(Backend::Float), AnyMatrix::Rational(r)) => AnyMatrix::Float(r.to_f64()),
        (Some(Backend::Rational), AnyMatrix::Float(f)) => {
            AnyMatrix::Rational(f.to_rational().ok_or_else(|| Error::Parse("non-finite entry".into()))?)
        }
        (_, m) => m,
    })
}

fn vector_text(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        Ok(std::fs::read_to_string(path)?)
    } else {
        Ok(arg.to_owned())
    }
}

fn start_vector<T: Scalar>(arg: &str, n: usize) -> Result<Vector<T>> {
    if arg == "uniform" {
        return Ok(Vector::uniform(n));
    }
    let v: Vector<T> = parse_vector(&vector_text(arg)?)?;
    v.check_len(n)?;
    Ok(v)
}

fn stochastic<T: Scalar>(m: Matrix<T>, cfg: &AnalysisConfig) -> Result<StochasticMatrix<T>> {
    StochasticMatrix::new(m, cfg)
}

fn write_trace<T: Scalar>(path: &Path, trace: &SimulationTrace<T>, n: usize) -> Result<()> {
    let io_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    let mut w = csv::Writer::from_path(path).map_err(io_err)?;
    let mut header = vec!["step".to_owned()];
    header.extend((1..=n).map(|i| format!("x{i}")));
    header.push("delta".to_owned());
    w.write_record(&header).map_err(io_err)?;
    for step in &trace.iterates {
        let mut record = vec![step.step.to_string()];
        record.extend(render_vector(&step.state));
        record.push(step.delta.map(|d| format!("{d:?}")).unwrap_or_default());
        w.write_record(&record).map_err(io_err)?;
    }
    w.flush()?;
    Ok(())
}

fn run_on<T: Scalar>(m: Matrix<T>, cli: &Cli, cfg: &AnalysisConfig) -> Result<Outcome> {
    match &cli.command {
        Command::Validate(_) => {
            let r = validate_stochastic(&m, cfg);
            let summary = if r.valid {
                format!("valid {}×{} Markov matrix", m.n(), m.n())
            } else {
                format!("invalid: {} bad entries, {} bad columns", r.bad_entries.len(), r.bad_columns.len())
            };
            let code = if r.valid { 0 } else { 1 };
            Ok(Outcome { report: serde_json::to_value(&r).expect("plain data serializes"), summary, code })
        }
        Command::Analyze { samples, .. } => {
            let r = validate_stochastic(&m, cfg);
            if !r.valid {
                let report = json!({ "valid": false, "validation": r });
                return Ok(Outcome { report, summary: "invalid matrix".into(), code: 1 });
            }
            let m = stochastic(m, cfg)?;
            let report = report::analyze_json(&m, *samples, cli.seed, cfg)?;
            let summary = format!(
                "class {}, diagonalizable {}, stationary {}",
                report["class"], report["diagonalizable"], report["stationary"]
            );
            Ok(Outcome::ok(report, summary))
        }
        Command::Spectrum(_) => {
            let s = spectral_report(&m, cfg)?;
            let summary = format!("p(λ) = {}, {:?}", s.char_poly, s.diagonalizable);
            Ok(Outcome::ok(report::spectral_json(&s), summary))
        }
        Command::Stationary(_) => {
            let m = stochastic(m, cfg)?;
            let s = stationary_distribution(&m, cfg)?;
            let summary = format!("ξ = {}, fixed space dimension {}", s.stationary().vector(), s.nullspace_dimension);
            Ok(Outcome::ok(report::stationary_json(&s), summary))
        }
        Command::Decompose { vector, .. } => {
            let m = stochastic(m, cfg)?;
            let alpha: Vector<T> = parse_vector(&vector_text(vector)?)?;
            alpha.check_len(m.n())?;
            let s = stationary_distribution(&m, cfg)?;
            let d = decompose(&alpha, s.stationary().vector(), cfg)?;
            let summary = format!("k = {}, β = {}", render(&d.k), d.beta);
            Ok(Outcome::ok(report::decomposition_json(&d), summary))
        }
        Command::Classify { start, .. } => {
            let m = stochastic(m, cfg)?;
            let c = classify_convergence(&m, cfg)?;
            let mut out = report::classification_json(&c);
            if let Some(start) = start {
                let x0 = ProbabilityVector::new(start_vector::<T>(start, m.n())?, cfg.tol)?;
                out["limit"] = match predict_limit(&m, &x0, cfg)? {
                    LimitPrediction::Limit(v) => json!(render_vector(&v)),
                    LimitPrediction::NoLimit(_) => Value::Null,
                };
            }
            let summary = format!("{}", c.class.name());
            Ok(Outcome::ok(out, summary))
        }
        Command::Simulate { start, tol, max_iter, trace, .. } => {
            let m = stochastic(m, cfg)?;
            let x0 = start_vector::<T>(start, m.n())?;
            let t = simulate_power(&m, &x0, *tol, *max_iter, cfg)?;
            if let Some(path) = trace {
                write_trace(path, &t, m.n())?;
            }
            let report = report::simulation_json(&t);
            let summary = format!("{} after {} steps", t.verdict.name(), report["iterations"]);
            Ok(Outcome::ok(report, summary))
        }
        Command::Construct { .. } => unreachable!("construct takes no matrix"),
    }
}

fn construct(example: bool, lambda: Option<&str>) -> Result<Outcome> {
    let c = match (example, lambda) {
        (true, _) | (false, None) => construct_defective_example()?,
        (false, Some(text)) => construct_defective_scaled(&parse_rational(text)?)?,
    };
    let summary = format!("{}; scale {}", c.certificate.describe(), render(&c.scale));
    Ok(Outcome::ok(report::construction_json(&c), summary))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = AnalysisConfig::default();
    let input = match &cli.command {
        Command::Construct { example, lambda } => return construct(*example, lambda.as_deref()),
        Command::Validate(input) | Command::Spectrum(input) | Command::Stationary(input) => input,
        Command::Analyze { input, .. }
        | Command::Decompose { input, .. }
        | Command::Classify { input, .. }
        | Command::Simulate { input, .. } => input,
    };
    match load(input, cli)? {
        AnyMatrix::Rational(m) => run_on(m, cli, &cfg),
        AnyMatrix::Float(m) => run_on(m, cli, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.report).expect("JSON values serialize");
            if let Err(e) = writeln!(std::io::stdout().lock(), "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("stokit: {e}");
                    return ExitCode::from(2);
                }
            }
            if cli.verbose {
                eprintln!("{}", outcome.summary);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("stokit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
