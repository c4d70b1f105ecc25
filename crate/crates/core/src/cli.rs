//! Command-line front end. [`run`] parses arguments, writes the artifact to
//! `--out` (or stdout) and returns the process exit code.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::diffmat::{parity_diff_matrix, poly_diff_matrix, trig_diff_matrix};
use crate::error::Error;
use crate::json::{
    document, node_set_to_json, operator_to_json, rotation_to_json, spectrum_to_csv, spectrum_to_json, to_text,
};
use crate::lsquared::{assemble_l2, assemble_l2_parity, labeled_spectrum, DEFAULT_LABEL_TOLERANCE};
use crate::nodes::{
    equidistant_nodes, equidistant_open_nodes, solve_theta_nodes, NodeKind, NodeSet, DEFAULT_THETA_TOLERANCE,
};
use crate::rotations::{build_rotation_generator, lz_eigensystem};
use crate::verify::{report_to_json, run_all};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "angulon", version, about = "Differentiation matrices, rotation generators and L² spectra")]
pub struct Cli {
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a node set.
    Nodes(NodesArgs),
    /// Emit a differentiation matrix.
    Diffmat(DiffmatArgs),
    /// Emit Δ, A, L_z and the L_z eigensystem.
    Lz(LzArgs),
    /// Assemble L² and emit its labelled spectrum.
    L2(L2Args),
    /// Run every acceptance check and emit the report.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct NodesArgs {
    /// θ-nodes of the symmetrizable L² assembly.
    #[arg(long, value_name = "N")]
    pub solve_theta: Option<usize>,
    /// Periodic nodes −π + 2πj/N.
    #[arg(long, value_name = "N")]
    pub equidistant: Option<usize>,
    /// Open nodes jπ/(N+1).
    #[arg(long, value_name = "N")]
    pub equidistant_open: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    Poly,
    Trig,
    Parity,
}

#[derive(Debug, Args)]
pub struct DiffmatArgs {
    #[arg(long, value_enum)]
    pub kind: MatrixKind,
    /// Node count for the default nodes of the chosen kind.
    #[arg(long, value_name = "N", required_unless_present = "points", conflicts_with = "points")]
    pub n: Option<usize>,
    /// Explicit nodes, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub points: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct LzArgs {
    #[arg(long, value_name = "N")]
    pub n: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub output: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Eq30,
    Eq35,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ThetaMode {
    Solved,
    EquidistantOpen,
    List,
}

#[derive(Debug, Args)]
pub struct L2Args {
    #[arg(long, value_enum, default_value = "eq30")]
    pub variant: VariantArg,
    /// Number of θ-nodes (odd).
    #[arg(long, value_name = "N")]
    pub n_theta: Option<usize>,
    /// Number of φ-nodes (odd).
    #[arg(long, value_name = "M")]
    pub m_phi: usize,
    #[arg(long, value_enum, default_value = "solved")]
    pub theta: ThetaMode,
    /// θ-nodes for `--theta list`, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub theta_points: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "json")]
    pub output: OutputFormat,
    /// Relative tolerance for labelling eigenvalues as n(n+1).
    #[arg(long, default_value_t = DEFAULT_LABEL_TOLERANCE)]
    pub tolerance: f64,
    /// Convergence tolerance of the θ-node solver.
    #[arg(long, default_value_t = DEFAULT_THETA_TOLERANCE)]
    pub theta_tolerance: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub output: OutputFormat,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Usage(format!("{}: {e}", e.kind()))
        } else {
            Failure::Compute(e)
        }
    }
}

struct Artifact {
    text: String,
    verified: bool,
}

fn single_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Runs the CLI. Diagnostics go to `stderr`, one line each.
pub fn run<I, A>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(stderr, "angulon: usage: {}", single_line(first.trim_start_matches("error: ")));
            return EXIT_USAGE;
        }
    };
    let mut warnings = Vec::new();
    let result = dispatch(&cli.command, &mut warnings);
    for w in warnings {
        let _ = writeln!(stderr, "angulon: warning: {}", single_line(&w));
    }
    let artifact = match result {
        Ok(a) => a,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(stderr, "angulon: usage: {}", single_line(&m));
            return EXIT_USAGE;
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(stderr, "angulon: error: {}: {}", e.kind(), single_line(&e.to_string()));
            return EXIT_VERIFY_FAILED;
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &artifact.text).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(artifact.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(m) = written {
        let _ = writeln!(stderr, "angulon: error: io: {}", single_line(&m));
        return EXIT_USAGE;
    }
    if artifact.verified {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn ok(text: String) -> Result<Artifact, Failure> {
    Ok(Artifact { text, verified: true })
}

fn dispatch(command: &Command, warnings: &mut Vec<String>) -> Result<Artifact, Failure> {
    match command {
        Command::Nodes(args) => {
            let nodes = if let Some(n) = args.solve_theta {
                solve_theta_nodes::<f64>(n, DEFAULT_THETA_TOLERANCE)?
            } else if let Some(n) = args.equidistant {
                equidistant_nodes(n)?
            } else if let Some(n) = args.equidistant_open {
                equidistant_open_nodes(n)?
            } else {
                return Err(Failure::Usage("one node generator is required".into()));
            };
            ok(to_text(&document("nodes", node_set_to_json(&nodes))))
        }
        Command::Diffmat(args) => {
            let nodes = match (&args.points, args.n) {
                (Some(p), _) => {
                    let kind = match args.kind {
                        MatrixKind::Trig => NodeKind::Periodic,
                        MatrixKind::Parity => NodeKind::Open,
                        MatrixKind::Poly => NodeKind::General,
                    };
                    NodeSet::new(p.clone(), kind)?
                }
                (None, Some(n)) => match args.kind {
                    MatrixKind::Trig => equidistant_nodes(n)?,
                    MatrixKind::Parity => equidistant_open_nodes(n)?,
                    MatrixKind::Poly => {
                        let step = if n > 1 { 2.0 / (n - 1) as f64 } else { 0.0 };
                        NodeSet::general((0..n).map(|j| -1.0 + step * j as f64).collect())?
                    }
                },
                (None, None) => return Err(Failure::Usage("--n or --points is required".into())),
            };
            let op = match args.kind {
                MatrixKind::Poly => poly_diff_matrix(&nodes)?,
                MatrixKind::Trig => trig_diff_matrix(&nodes)?,
                MatrixKind::Parity => parity_diff_matrix(&nodes)?,
            };
            ok(to_text(&document("diffmat", operator_to_json(&op))))
        }
        Command::Lz(args) => {
            if args.output != OutputFormat::Json {
                return Err(Failure::Usage("lz supports --output json only".into()));
            }
            let gen = build_rotation_generator::<f64>(args.n)?;
            let eig = lz_eigensystem::<f64>(args.n)?;
            ok(to_text(&document("lz", rotation_to_json(&gen, &eig))))
        }
        Command::L2(args) => l2(args, warnings),
        Command::Verify(args) => {
            let reports = run_all();
            for r in &reports {
                if !r.passed {
                    warnings.push(r.line());
                }
            }
            let verified = reports.iter().all(|r| r.passed);
            let text = match args.output {
                OutputFormat::Json => to_text(&document("verify", report_to_json(&reports))),
                OutputFormat::Csv => {
                    let mut s = String::from("id,name,passed,measured,tolerance\n");
                    for r in &reports {
                        s.push_str(&format!("{},{},{},{:.16e},{:e}\n", r.id, r.name, r.passed, r.measured, r.tolerance));
                    }
                    s
                }
            };
            Ok(Artifact { text, verified })
        }
    }
}

fn l2(args: &L2Args, warnings: &mut Vec<String>) -> Result<Artifact, Failure> {
    if !(args.tolerance > 0.0) || !(args.theta_tolerance > 0.0) {
        return Err(Failure::Usage("tolerances must be positive".into()));
    }
    let theta = match (args.theta, &args.theta_points) {
        (ThetaMode::List, Some(points)) => {
            if args.n_theta.is_some_and(|n| n != points.len()) {
                return Err(Failure::Usage(format!(
                    "--n-theta {} disagrees with {} listed θ-nodes",
                    args.n_theta.unwrap_or(0),
                    points.len()
                )));
            }
            NodeSet::new(points.clone(), NodeKind::Open)?
        }
        (ThetaMode::List, None) => return Err(Failure::Usage("--theta list needs --theta-points".into())),
        (_, Some(_)) => return Err(Failure::Usage("--theta-points requires --theta list".into())),
        (mode, None) => {
            let n = args
                .n_theta
                .ok_or_else(|| Failure::Usage("--n-theta is required".into()))?;
            match mode {
                ThetaMode::Solved => solve_theta_nodes(n, args.theta_tolerance)?,
                _ => equidistant_open_nodes(n)?,
            }
        }
    };
    let op = match args.variant {
        VariantArg::Eq30 => assemble_l2(&theta, args.m_phi)?,
        VariantArg::Eq35 => assemble_l2_parity(&theta, args.m_phi)?,
    };
    warnings.extend(op.warnings.iter().cloned());
    let spec = labeled_spectrum(&op, args.tolerance)?;
    if spec.max_imag > 1e-8 {
        warnings.push(format!("largest imaginary part {:.3e} exceeds 1e-8", spec.max_imag));
    }
    let text = match args.output {
        OutputFormat::Json => {
            let mut body = spectrum_to_json(&op, &spec);
            body["tolerance"] = json!(args.tolerance);
            to_text(&document("l2", body))
        }
        OutputFormat::Csv => spectrum_to_csv(&spec),
    };
    ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("angulon").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn theta_single_node() {
        let (code, out, _) = run_str(&["nodes", "--solve-theta", "1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], "angulon/1");
        assert!((v["points"][0].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn usage_errors_exit_two_with_one_line() {
        for args in [
            &["nodes"][..],
            &["nodes", "--solve-theta", "1", "--equidistant", "3"],
            &["l2", "--n-theta", "4", "--m-phi", "5"],
            &["l2", "--n-theta", "3", "--m-phi", "3", "--theta-points", "1,2,3"],
            &["bogus"],
            &["l2", "--n-theta", "3", "--m-phi", "3", "--tolerance", "-1"],
        ] {
            let (code, out, err) = run_str(args);
            assert_eq!(code, EXIT_USAGE, "{args:?}: {err}");
            assert!(out.is_empty());
            assert_eq!(err.lines().count(), 1, "{err}");
            assert!(err.starts_with("angulon: usage: "));
        }
    }

    #[test]
    fn spin_exclusion_is_named() {
        let (_, _, err) = run_str(&["l2", "--n-theta", "4", "--m-phi", "5"]);
        assert!(err.contains("invalid-argument") && err.contains("spin"));
    }

    #[test]
    fn small_m_warns_on_stderr() {
        let (code, _, err) = run_str(&["l2", "--n-theta", "5", "--m-phi", "3", "--output", "csv"]);
        assert_eq!(code, 0);
        assert!(err.starts_with("angulon: warning: "));
    }

    #[test]
    fn explicit_theta_list() {
        let (code, out, _) = run_str(&["l2", "--m-phi", "3", "--theta", "list", "--theta-points", "0.5,1.5,2.5"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["symmetrized"], false);
        assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 9);
    }

    #[test]
    fn diffmat_kinds() {
        for kind in ["poly", "trig", "parity"] {
            let (code, out, err) = run_str(&["diffmat", "--kind", kind, "--n", "3"]);
            assert_eq!(code, 0, "{err}");
            let v: serde_json::Value = serde_json::from_str(&out).unwrap();
            assert_eq!(v["entries"].as_array().unwrap().len(), 3);
        }
        let (code, out, _) = run_str(&["diffmat", "--kind", "poly", "--points", "-1,0.5,2"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"polynomial\""));
        let (code, _, err) = run_str(&["diffmat", "--kind", "poly", "--points", "0,0"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("degenerate-nodes"));
    }
}
