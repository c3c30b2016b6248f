//! `iwcode` — importance-weighted source coding from the command line.
//!
//! Exit codes: 0 on success, 1 for input or validation errors, 2 for
//! internal invariant violations.

mod source;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use iwcode::codec::{canonical_code, huffman_weighted, integer_lengths};
use iwcode::experiments::{
    counterexample_report, grid_with_step, sweep_bounds_fig2, sweep_lengths_fig1,
    write_counterexample_csv, write_fig1_csv, write_fig2_csv, FIG1_DEFAULT_OMEGAS,
    FIG2_DEFAULT_OMEGAS,
};
use iwcode::measures::{
    iw_bounds, iw_measure, mim_bounds, shannon_bounds, shannon_entropy, uisc_bounds,
    weighted_avg_hw, weighted_expected_length,
};
use iwcode::sequence::{sequence_bounds_iid, verify_lemma1_with_cap, DEFAULT_SEQ_CAP};
use iwcode::{BoundsReport, CodeBase, CodeSpec, Error, ImportanceCoefficient, Lemma1Report};

use source::SourceArgs;

const SEQ_CAP_ENV: &str = "IWCODE_SEQ_CAP";

#[derive(Debug)]
pub enum CliError {
    /// Bad input: malformed files, invalid flag values, violated
    /// invariants of user data. Exit code 1.
    Input(String),
    /// An operation failed on data the tool itself validated. Exit
    /// code 2; not expected in normal use.
    Internal(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

fn input(err: impl std::fmt::Display) -> CliError {
    CliError::Input(err.to_string())
}

fn internal(err: impl std::fmt::Display) -> CliError {
    CliError::Internal(err.to_string())
}

#[derive(Parser)]
#[command(
    name = "iwcode",
    version,
    about = "Importance-weighted source coding: bounds, codes, and figure sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy measures and Shannon/UISC/I-W/MIM bound pairs as JSON
    Bounds(SourceArgs),

    /// Construct a prefix code and report its weighted expected length
    Code {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = SchemeArg::Huffman)]
        scheme: SchemeArg,
    },

    /// Encode a file of symbol indices into a digit string
    Encode {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = SchemeArg::Huffman)]
        scheme: SchemeArg,
        /// Newline- or comma-separated symbol indices
        data: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Decode a digit string back into symbol indices
    Decode {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = SchemeArg::Huffman)]
        scheme: SchemeArg,
        /// File holding the digit string
        data: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Reproduce a figure sweep as CSV
    Sweep {
        #[arg(long, value_enum)]
        figure: FigureArg,
        /// Importance coefficient; omitted, sweeps the figure's default set
        #[arg(long, allow_negative_numbers = true)]
        omega: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        grid_step: f64,
        /// Code alphabet size (default 2)
        #[arg(long)]
        base: Option<u32>,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Shorthand for `sweep --figure counterexample`
    Counterexample {
        #[arg(long, default_value_t = 0.01)]
        grid_step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Sequence (supersymbol) bounds with brute-force verification
    Sequence {
        #[command(flatten)]
        source: SourceArgs,
        /// Block length
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    /// Ceiling of the ideal lengths, canonical codewords
    Ceiling,
    /// Exact weighted-Huffman optimum
    Huffman,
}

impl SchemeArg {
    fn name(self) -> &'static str {
        match self {
            SchemeArg::Ceiling => "ceiling",
            SchemeArg::Huffman => "huffman",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureArg {
    Fig1,
    Fig2,
    Counterexample,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(message)) => {
            eprintln!("internal error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Bounds(source) => cmd_bounds(&source),
        Command::Code { source, scheme } => cmd_code(&source, scheme),
        Command::Encode {
            source,
            scheme,
            data,
            out,
        } => cmd_encode(&source, scheme, &data, out.as_deref()),
        Command::Decode {
            source,
            scheme,
            data,
            out,
        } => cmd_decode(&source, scheme, &data, out.as_deref()),
        Command::Sweep {
            figure,
            omega,
            grid_step,
            base,
            out,
        } => cmd_sweep(figure, omega, grid_step, base, out.as_deref()),
        Command::Counterexample { grid_step, out } => {
            cmd_sweep(FigureArg::Counterexample, None, grid_step, None, out.as_deref())
        }
        Command::Sequence { source, n } => cmd_sequence(&source, n),
    }
}

/// Rounds to 12 significant digits for reproducible golden files.
fn sig12(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("round-trip of a finite float")
}

fn rounded(report: BoundsReport) -> BoundsReport {
    BoundsReport {
        theory: report.theory,
        lower: sig12(report.lower),
        upper: sig12(report.upper),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(internal)?;
    println!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct BoundsOutput {
    #[serde(rename = "H")]
    h: f64,
    #[serde(rename = "H_w")]
    h_w: f64,
    iw_measure: f64,
    weighting: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    uisc_utilities: Option<&'static str>,
    bounds: BoundsSet,
}

#[derive(Serialize)]
struct BoundsSet {
    shannon: BoundsReport,
    uisc: BoundsReport,
    iw: BoundsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    mim: Option<BoundsReport>,
}

fn cmd_bounds(source: &SourceArgs) -> Result<()> {
    let resolved = source.resolve()?;
    let dist = &resolved.dist;
    let base = resolved.base;
    let weights = resolved.weighting.effective_weights(dist);
    let utilities = resolved.weighting.uisc_utilities(dist);

    let output = BoundsOutput {
        h: sig12(shannon_entropy(dist, base)),
        h_w: sig12(weighted_avg_hw(dist, &weights).map_err(internal)?),
        iw_measure: sig12(iw_measure(dist, &weights, base).map_err(internal)?),
        weighting: resolved.weighting.to_string(),
        uisc_utilities: resolved.weighting.omega().map(|_| "mim_factors"),
        bounds: BoundsSet {
            shannon: rounded(shannon_bounds(dist, base)),
            uisc: rounded(uisc_bounds(dist, &utilities, base).map_err(internal)?),
            iw: rounded(iw_bounds(dist, &weights, base).map_err(internal)?),
            mim: resolved
                .weighting
                .omega()
                .map(|omega| rounded(mim_bounds(dist, omega, base))),
        },
    };
    print_json(&output)
}

fn build_code(
    resolved: &source::ResolvedSource,
    scheme: SchemeArg,
) -> Result<(CodeSpec, iwcode::WeightVector)> {
    let weights = resolved.weighting.effective_weights(&resolved.dist);
    let code = match scheme {
        SchemeArg::Ceiling => {
            let lengths = integer_lengths(&resolved.dist, &weights, resolved.base)
                .map_err(input)?;
            canonical_code(&lengths, resolved.base).map_err(input)?
        }
        SchemeArg::Huffman => {
            huffman_weighted(&resolved.dist, &weights, resolved.base).map_err(input)?
        }
    };
    Ok((code, weights))
}

#[derive(Serialize)]
struct CodeOutput {
    scheme: &'static str,
    code: CodeSpec,
    weighted_length: f64,
}

fn cmd_code(source: &SourceArgs, scheme: SchemeArg) -> Result<()> {
    let resolved = source.resolve()?;
    let (code, weights) = build_code(&resolved, scheme)?;
    let cost =
        weighted_expected_length(&resolved.dist, &weights, code.lengths()).map_err(internal)?;
    print_json(&CodeOutput {
        scheme: scheme.name(),
        code,
        weighted_length: sig12(cost),
    })
}

fn read_data(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(internal)
        }
    }
}

fn cmd_encode(
    source: &SourceArgs,
    scheme: SchemeArg,
    data: &Path,
    out: Option<&Path>,
) -> Result<()> {
    let resolved = source.resolve()?;
    let (code, _) = build_code(&resolved, scheme)?;
    let text = read_data(data)?;
    let symbols: Vec<usize> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|token| !token.is_empty())
        .map(|token| {
            token
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("invalid symbol index {token:?}")))
        })
        .collect::<Result<_>>()?;
    let digits = code.encode(&symbols).map_err(input)?;
    emit(&format!("{digits}\n"), out)
}

fn cmd_decode(
    source: &SourceArgs,
    scheme: SchemeArg,
    data: &Path,
    out: Option<&Path>,
) -> Result<()> {
    let resolved = source.resolve()?;
    let (code, _) = build_code(&resolved, scheme)?;
    let text = read_data(data)?;
    let symbols = code.decode(text.trim()).map_err(input)?;
    let line = symbols
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(",");
    emit(&format!("{line}\n"), out)
}

fn sweep_base(base: Option<u32>) -> Result<CodeBase> {
    CodeBase::new(base.unwrap_or(2)).map_err(input)
}

fn cmd_sweep(
    figure: FigureArg,
    omega: Option<f64>,
    grid_step: f64,
    base: Option<u32>,
    out: Option<&Path>,
) -> Result<()> {
    let grid = grid_with_step(grid_step)
        .map_err(|_| CliError::Input(format!("grid step {grid_step} not in (0, 1)")))?;

    if figure == FigureArg::Counterexample {
        if omega.is_some() {
            return Err(CliError::Input(
                "the counterexample sweep takes no --omega".into(),
            ));
        }
        if base.is_some_and(|b| b != 2) {
            return Err(CliError::Input(
                "the counterexample is defined for the binary code (0, 1)".into(),
            ));
        }
        let rows = counterexample_report(&grid).map_err(input)?;
        let mut buffer = Vec::new();
        write_counterexample_csv(&mut buffer, &rows).map_err(internal)?;
        return emit(&String::from_utf8(buffer).map_err(internal)?, out);
    }

    let base = sweep_base(base)?;
    match omega {
        Some(omega) => {
            let coefficient = ImportanceCoefficient::new(omega).map_err(input)?;
            let csv = render_figure(figure, coefficient, &grid, base)?;
            emit(&csv, out)
        }
        None => {
            // sweep the figure's default coefficient set, one file per ω
            let out = out.ok_or_else(|| {
                CliError::Input("--out is required when --omega is omitted".into())
            })?;
            let omegas: &[f64] = match figure {
                FigureArg::Fig1 => &FIG1_DEFAULT_OMEGAS,
                FigureArg::Fig2 => &FIG2_DEFAULT_OMEGAS,
                FigureArg::Counterexample => unreachable!("handled above"),
            };
            for &omega in omegas {
                let coefficient = ImportanceCoefficient::new(omega).map_err(internal)?;
                let csv = render_figure(figure, coefficient, &grid, base)?;
                let path = path_with_omega(out, omega);
                emit(&csv, Some(&path))?;
            }
            Ok(())
        }
    }
}

fn render_figure(
    figure: FigureArg,
    omega: ImportanceCoefficient,
    grid: &[f64],
    base: CodeBase,
) -> Result<String> {
    let mut buffer = Vec::new();
    match figure {
        FigureArg::Fig1 => {
            let rows = sweep_lengths_fig1(omega, grid, base).map_err(input)?;
            write_fig1_csv(&mut buffer, omega, base, &rows).map_err(internal)?;
        }
        FigureArg::Fig2 => {
            let rows = sweep_bounds_fig2(omega, grid, base).map_err(input)?;
            write_fig2_csv(&mut buffer, omega, base, &rows).map_err(internal)?;
        }
        FigureArg::Counterexample => unreachable!("counterexample rendered separately"),
    }
    String::from_utf8(buffer).map_err(internal)
}

fn path_with_omega(path: &Path, omega: f64) -> PathBuf {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("sweep");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_omega{omega}.{ext}"),
        None => format!("{stem}_omega{omega}"),
    };
    path.with_file_name(name)
}

#[derive(Serialize)]
struct SequenceOutput {
    n: usize,
    weighting: String,
    bounds: BoundsReport,
    lemma1: Option<Lemma1Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

fn seq_cap() -> Result<usize> {
    match std::env::var(SEQ_CAP_ENV) {
        Ok(raw) => raw.parse::<usize>().map_err(|_| {
            CliError::Input(format!("{SEQ_CAP_ENV}={raw} is not a valid entry cap"))
        }),
        Err(_) => Ok(DEFAULT_SEQ_CAP),
    }
}

fn cmd_sequence(source: &SourceArgs, n: usize) -> Result<()> {
    let resolved = source.resolve()?;
    let weights = resolved.weighting.effective_weights(&resolved.dist);
    let bounds =
        sequence_bounds_iid(&resolved.dist, &weights, n, resolved.base).map_err(input)?;

    let cap = seq_cap()?;
    let (lemma1, warning) =
        match verify_lemma1_with_cap(&resolved.dist, &weights, n, resolved.base, cap) {
            Ok(report) => (
                Some(Lemma1Report {
                    hw_joint: sig12(report.hw_joint),
                    hw_power: sig12(report.hw_power),
                    l_joint: sig12(report.l_joint),
                    l_scaled: sig12(report.l_scaled),
                    max_abs_err: sig12(report.max_abs_err),
                }),
                None,
            ),
            Err(Error::ProductSpaceTooLarge { alphabet, n, cap }) => (
                None,
                Some(format!(
                    "verification skipped: product space {alphabet}^{n} exceeds the cap of {cap} entries"
                )),
            ),
            Err(other) => return Err(input(other)),
        };

    print_json(&SequenceOutput {
        n,
        weighting: resolved.weighting.to_string(),
        bounds: rounded(bounds),
        lemma1,
        warning,
    })
}
