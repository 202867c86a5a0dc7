//! Command-line front end.
//!
//! Every command reads JSON matrix files or channel specs (`-` for stdin)
//! and writes a JSON document to stdout. Exit codes: 0 success, 2 unreadable
//! input or invalid channel spec, 3 dimension or precondition failure,
//! 4 Kraus extraction from a map that is not completely positive, 1 anything
//! else.

pub mod format;
pub mod spec;

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::channel::{
    compose_channels, cp_verdict, jamiolkowski_state, kraus_decomposition, partial_trace,
    partial_transpose, ppt_min_eigenvalue, superop_from_kraus, trace_preservation_deviation,
    ChannelRep, Superoperator, Which,
};
use crate::error::Error;
use crate::linalg::{eig_hermitian, ComplexMatrix};
use crate::reorder::{reshuffle, reshuffle_alt, DimPair};
use crate::schmidt::{schmidt_number, schmidt_operator, schmidt_vector, SchmidtResult};
use format::{matrix_value, number, numbers, object, parse_matrix, render};
use spec::ChannelSpec;

#[derive(Debug, Parser)]
#[command(
    name = "qi-reorder",
    version,
    about = "Reshuffling, Schmidt decompositions and quantum channel tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Split {
    /// Factor dimensions of the bipartite split.
    #[arg(long, num_args = 2, value_names = ["M", "N"], required = true)]
    dims: Vec<usize>,
}

impl Split {
    fn pair(&self) -> DimPair {
        DimPair::new(self.dims[0], self.dims[1])
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reshuffle a square matrix on C^M ⊗ C^N.
    Reshuffle {
        input: String,
        #[command(flatten)]
        split: Split,
        #[arg(long, value_enum, default_value_t = Variant::Standard)]
        variant: Variant,
    },
    /// Schmidt decomposition of a vector or an operator.
    Schmidt {
        input: String,
        #[command(flatten)]
        split: Split,
        #[arg(long, value_enum, default_value_t = Mode::Vector)]
        mode: Mode,
        /// Relative cutoff for counting Schmidt coefficients.
        #[arg(long, default_value_t = crate::schmidt::DEFAULT_TOL)]
        tol: f64,
    },
    /// Representations and verdicts for a channel spec.
    Channel {
        spec: String,
        #[arg(long, value_enum)]
        action: Action,
        /// Print only the main payload instead of the full report.
        #[arg(long)]
        plain: bool,
        #[arg(long, default_value_t = crate::channel::VERDICT_TOL)]
        tol: f64,
    },
    /// Superoperator of the tensor product of two channels.
    Compose { spec_a: String, spec_b: String },
    /// Positive-partial-transpose test.
    Ppt {
        input: String,
        #[command(flatten)]
        split: Split,
        #[arg(long, default_value_t = crate::channel::VERDICT_TOL)]
        tol: f64,
    },
    /// Transpose one factor of a bipartite matrix.
    PartialTranspose {
        input: String,
        #[command(flatten)]
        split: Split,
        #[arg(long, value_enum, default_value_t = Factor::First)]
        which: Factor,
    },
    /// Trace out one factor of a bipartite matrix.
    PartialTrace {
        input: String,
        #[command(flatten)]
        split: Split,
        /// Factor that is traced out.
        #[arg(long, value_enum, default_value_t = Factor::Second)]
        which: Factor,
    },
    /// Apply a channel (spec or superoperator matrix file) to a matrix.
    Apply { channel: String, input: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Variant {
    Standard,
    Alternative,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Vector,
    Operator,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Action {
    Superop,
    Choi,
    Kraus,
    Jamiolkowski,
    CheckCp,
    CheckTp,
    CheckUnital,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Factor {
    First,
    Second,
}

impl From<Factor> for Which {
    fn from(f: Factor) -> Self {
        match f {
            Factor::First => Which::First,
            Factor::Second => Which::Second,
        }
    }
}

/// A failed command and its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoConvergence { .. } => 1,
            _ => 3,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

/// Entry point of the binary.
pub fn main() -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut input = Input { stdin, used: false };
    match execute(cli.command, &mut input) {
        Ok(value) => match stdout.write_all(render(&value).as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                1
            }
        },
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

struct Input<'a> {
    stdin: &'a mut dyn Read,
    used: bool,
}

impl Input<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            if self.used {
                return Err(Failure::input("stdin can be used for only one input"));
            }
            self.used = true;
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
            return Ok(text);
        }
        std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {path}: {e}")))
    }

    fn matrix(&mut self, path: &str) -> Result<ComplexMatrix, Failure> {
        parse_matrix(&self.read(path)?).map_err(|e| Failure::input(format!("{path}: {e}")))
    }

    fn channel(&mut self, path: &str) -> Result<ChannelRep, Failure> {
        let spec = ChannelSpec::parse(&self.read(path)?)
            .map_err(|e| Failure::input(format!("{path}: {e}")))?;
        spec.build()
            .map_err(|e| Failure::input(format!("{path}: {e}")))
    }

    /// A channel spec, or a bare matrix file read as a square superoperator.
    fn channel_or_superop(&mut self, path: &str) -> Result<ChannelRep, Failure> {
        let text = self.read(path)?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Failure::input(format!("{path}: invalid JSON: {e}")))?;
        if value.get("kind").is_some() {
            let spec =
                ChannelSpec::parse(&text).map_err(|e| Failure::input(format!("{path}: {e}")))?;
            return spec
                .build()
                .map_err(|e| Failure::input(format!("{path}: {e}")));
        }
        let m = parse_matrix(&text).map_err(|e| Failure::input(format!("{path}: {e}")))?;
        Ok(ChannelRep::Superoperator(Superoperator::from_square(m)?))
    }
}

fn execute(command: Command, input: &mut Input) -> Outcome {
    match command {
        Command::Reshuffle {
            input: path,
            split,
            variant,
        } => {
            let a = input.matrix(&path)?;
            let out = match variant {
                Variant::Standard => reshuffle(&a, split.pair())?,
                Variant::Alternative => reshuffle_alt(&a, split.pair())?,
            };
            Ok(matrix_value(&out))
        }
        Command::Schmidt {
            input: path,
            split,
            mode,
            tol,
        } => {
            let a = input.matrix(&path)?;
            cmd_schmidt(&a, split.pair(), mode, tol)
        }
        Command::Channel {
            spec,
            action,
            plain,
            tol,
        } => {
            let rep = input.channel(&spec)?;
            cmd_channel(&rep, action, plain, tol)
        }
        Command::Compose { spec_a, spec_b } => {
            let phi = input.channel(&spec_a)?;
            let psi = input.channel(&spec_b)?;
            Ok(matrix_value(compose_channels(&phi, &psi)?.matrix()))
        }
        Command::Ppt {
            input: path,
            split,
            tol,
        } => {
            let rho = input.matrix(&path)?;
            cmd_ppt(&rho, split.pair(), tol)
        }
        Command::PartialTranspose {
            input: path,
            split,
            which,
        } => {
            let rho = input.matrix(&path)?;
            Ok(matrix_value(&partial_transpose(
                &rho,
                split.pair(),
                which.into(),
            )?))
        }
        Command::PartialTrace {
            input: path,
            split,
            which,
        } => {
            let rho = input.matrix(&path)?;
            Ok(matrix_value(&partial_trace(
                &rho,
                split.pair(),
                which.into(),
            )?))
        }
        Command::Apply {
            channel,
            input: path,
        } => {
            let rep = input.channel_or_superop(&channel)?;
            let rho = input.matrix(&path)?;
            Ok(matrix_value(&rep.apply(&rho)?))
        }
    }
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol >= 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Precondition {
            op: "tolerance",
            detail: format!("--tol {tol} must be finite and non-negative"),
        }
        .into())
    }
}

fn cmd_schmidt(a: &ComplexMatrix, dims: DimPair, mode: Mode, tol: f64) -> Outcome {
    check_tol(tol)?;
    let (mode_name, result): (&str, SchmidtResult) = match mode {
        Mode::Vector => ("vector", schmidt_vector(a, dims)?),
        Mode::Operator => ("operator", schmidt_operator(a, dims)?),
    };
    let count = match mode {
        Mode::Vector => schmidt_number(a, dims, tol)?,
        Mode::Operator => {
            let largest = result.coefficients[0];
            result
                .coefficients
                .iter()
                .filter(|&&s| s > tol * largest)
                .count()
        }
    };
    let residual = result.reconstruct().max_abs_diff(a);
    let mut fields = vec![
        ("mode", json!(mode_name)),
        ("dims", json!([dims.m, dims.n])),
        ("coefficients", numbers(&result.coefficients)),
        ("schmidt_number", json!(count)),
    ];
    if let Mode::Vector = mode {
        fields.push(("separable", json!(count == 1)));
    }
    fields.push(("residual", number(residual)));
    fields.push((
        "left_factors",
        json!(result
            .left_factors
            .iter()
            .map(matrix_value)
            .collect::<Vec<_>>()),
    ));
    fields.push((
        "right_factors",
        json!(result
            .right_factors
            .iter()
            .map(matrix_value)
            .collect::<Vec<_>>()),
    ));
    Ok(object(fields))
}

fn cmd_channel(rep: &ChannelRep, action: Action, plain: bool, tol: f64) -> Outcome {
    check_tol(tol)?;
    let (dim_in, dim_out) = rep.dims();
    let matrix_report = |name: &str, m: &ComplexMatrix| {
        if plain {
            matrix_value(m)
        } else {
            object(vec![
                ("action", json!(name)),
                ("dim_in", json!(dim_in)),
                ("dim_out", json!(dim_out)),
                ("matrix", matrix_value(m)),
            ])
        }
    };
    match action {
        Action::Superop => Ok(matrix_report("superop", rep.to_superoperator()?.matrix())),
        Action::Choi => Ok(matrix_report("choi", rep.to_dynamical()?.matrix())),
        Action::Jamiolkowski => Ok(matrix_report(
            "jamiolkowski",
            &jamiolkowski_state(&rep.to_dynamical()?)?,
        )),
        Action::Kraus => {
            let d = rep.to_dynamical()?;
            let dec = kraus_decomposition(&d).map_err(|e| match e {
                Error::NotCompletelyPositive { .. } => Failure {
                    code: 4,
                    message: e.to_string(),
                },
                other => other.into(),
            })?;
            let operators: Vec<Value> = dec.kraus.operators().iter().map(matrix_value).collect();
            if plain {
                return Ok(Value::Array(operators));
            }
            let residual = superop_from_kraus(&dec.kraus)
                .matrix()
                .max_abs_diff(rep.to_superoperator()?.matrix());
            Ok(object(vec![
                ("action", json!("kraus")),
                ("dim_in", json!(dim_in)),
                ("dim_out", json!(dim_out)),
                ("singular_values", numbers(&dec.singular_values)),
                ("operators", Value::Array(operators)),
                ("residual", number(residual)),
            ]))
        }
        Action::CheckCp => {
            let v = cp_verdict(rep, tol)?;
            verdict_report(
                "check-cp",
                plain,
                v.completely_positive,
                vec![
                    ("witness_eigenvalue", number(v.min_eigenvalue)),
                    ("hermiticity_deviation", number(v.hermiticity_deviation)),
                ],
                tol,
            )
        }
        Action::CheckTp => {
            let deviation = trace_preservation_deviation(rep)?;
            // Tr_out D − 𝟙 vanishes exactly for trace-preserving maps
            let d = rep.to_dynamical()?;
            let reduced = partial_trace(d.matrix(), DimPair::new(dim_out, dim_in), Which::First)?;
            let witness = extremal_eigenvalue(&reduced.try_sub(&ComplexMatrix::identity(dim_in))?)?;
            verdict_report(
                "check-tp",
                plain,
                deviation <= tol,
                vec![
                    ("witness_eigenvalue", number(witness)),
                    ("deviation", number(deviation)),
                ],
                tol,
            )
        }
        Action::CheckUnital => {
            let deviation = crate::channel::unital_deviation(rep)?;
            let image = rep.apply(&ComplexMatrix::identity(dim_in))?;
            let witness = extremal_eigenvalue(&image.try_sub(&ComplexMatrix::identity(dim_out))?)?;
            verdict_report(
                "check-unital",
                plain,
                deviation <= tol,
                vec![
                    ("witness_eigenvalue", number(witness)),
                    ("deviation", number(deviation)),
                ],
                tol,
            )
        }
    }
}

fn verdict_report(
    action: &str,
    plain: bool,
    verdict: bool,
    extra: Vec<(&str, Value)>,
    tol: f64,
) -> Outcome {
    if plain {
        return Ok(json!(verdict));
    }
    let mut fields = vec![("action", json!(action)), ("verdict", json!(verdict))];
    fields.extend(extra);
    fields.push(("tol", number(tol)));
    Ok(object(fields))
}

/// Eigenvalue of largest modulus of the Hermitian part.
fn extremal_eigenvalue(a: &ComplexMatrix) -> Result<f64, Failure> {
    let eig = eig_hermitian(&a.hermitian_part())?;
    let (hi, lo) = (eig.max_value(), eig.min_value());
    Ok(if lo.abs() > hi.abs() { lo } else { hi })
}

fn cmd_ppt(rho: &ComplexMatrix, dims: DimPair, tol: f64) -> Outcome {
    check_tol(tol)?;
    let min_eigenvalue = ppt_min_eigenvalue(rho, dims, tol)?;
    let ppt = min_eigenvalue >= -tol;
    let verdict = match (ppt, dims == DimPair::new(2, 2)) {
        (false, _) => "entangled",
        (true, true) => "separable",
        (true, false) => "undetermined",
    };
    Ok(object(vec![
        ("dims", json!([dims.m, dims.n])),
        ("ppt", json!(ppt)),
        ("min_eigenvalue", number(min_eigenvalue)),
        ("verdict", json!(verdict)),
        ("tol", number(tol)),
    ]))
}
