//! Command-line interface.
//!
//! Exit codes: 0 on success, 1 for unusable input (bad files, bad flags,
//! I/O failures), 2 when a computation violates an internal invariant or a
//! requested verification fails.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::decompose::decompose;
use crate::diamond::{random_exact_diamond, verify_diamond_matching, DiamondInstance, DiamondReport};
use crate::error::Error;
use crate::field::Field;
use crate::harness::{plant, Rng};
use crate::homology::{verify_strong_diamond, SimplicialZigzag, ZigzagMode};
use crate::io;
use crate::localize::localize_at;
use crate::svg::{render_barcode, render_diagram};
use crate::zigzag::{Barcode, ZigzagType};

#[derive(Debug, Parser)]
#[command(name = "zigzag", version, about = "Zigzag persistence over prime fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Style {
    Barcode,
    Diagram,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Union,
    Intersection,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the barcode of a module file.
    Decompose {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write the r/b/c tables (next to --output, else to stderr).
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Barcodes of the union or intersection zigzag of a complex sequence.
    HomologyZigzag {
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Degree range `min..max` (inclusive); overrides the file.
        #[arg(long)]
        dims: Option<String>,
        /// Prime field; overrides the file.
        #[arg(long)]
        field: Option<u64>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Compare both zigzags and fail with exit code 2 on a mismatch.
        #[arg(long)]
        verify_strong_diamond: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Intervals through one index, from the two filtrations at that index.
    Localize {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Compare against the full decomposition.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check exactness and the interval matching of a diamond.
    DiamondVerify {
        /// Module through W at position k.
        #[arg(long, requires_all = ["minus", "k"], conflicts_with = "seed")]
        plus: Option<PathBuf>,
        /// Module through U at position k.
        #[arg(long, requires_all = ["plus", "k"])]
        minus: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        /// Generate a random exact diamond instead of reading files.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5)]
        length: usize,
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a random module with a known barcode.
    Plant {
        /// Arrow string over {f, g}; empty for a single space.
        #[arg(long = "type", allow_hyphen_values = true)]
        ty: String,
        #[arg(long, default_value_t = 6)]
        max_intervals: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Where to write the planted barcode.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Render a barcode file as SVG.
    Plot {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "barcode")]
        style: Style,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Check(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CliResult = std::result::Result<(), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn barcode_output(bc: &Barcode, format: Format) -> String {
    match format {
        Format::Json => io::write_barcode(bc),
        Format::Svg => render_barcode(bc),
    }
}

fn parse_range(s: &str) -> std::result::Result<std::ops::RangeInclusive<usize>, Failure> {
    let bad = || Failure::Input(format!("--dims expects min..max, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn diamond_json(r: &DiamondReport) -> String {
    io::write_json(&json!({
        "k": r.k,
        "exact": r.exact,
        "ok": r.ok(),
        "plus": io::BarcodeFile::from_barcode(&r.plus),
        "minus": io::BarcodeFile::from_barcode(&r.minus),
        "singletons_plus": r.singletons_plus,
        "singletons_minus": r.singletons_minus,
        "violations": r.violations,
    }))
}

fn run_command(cmd: Command) -> CliResult {
    match cmd {
        Command::Decompose {
            input,
            output,
            trace,
            format,
        } => {
            let m = io::read_module(&read(&input)?)?;
            let (bc, tables) = decompose(&m)?;
            emit(output.as_deref(), &barcode_output(&bc, format))?;
            if trace {
                let text = io::write_json(&tables);
                match &output {
                    Some(p) => {
                        let mut name = p.clone().into_os_string();
                        name.push(".trace.json");
                        emit(Some(Path::new(&name)), &text)?;
                    }
                    None => eprint!("{text}"),
                }
            }
            Ok(())
        }
        Command::HomologyZigzag {
            input,
            mode,
            dims,
            field,
            output,
            verify_strong_diamond: verify,
            format,
        } => {
            let seq = io::read_complex_sequence(&read(&input)?)?;
            if seq.added_faces > 0 {
                eprintln!("warning: added {} missing faces to close the complexes", seq.added_faces);
            }
            let field = match field {
                Some(p) => Field::new(p)?,
                None => seq.field,
            };
            let mode = match mode {
                Some(ModeArg::Union) => ZigzagMode::Union,
                Some(ModeArg::Intersection) => ZigzagMode::Intersection,
                None => seq.mode,
            };
            let degrees = match dims {
                Some(s) => parse_range(&s)?,
                None => seq.degrees.clone(),
            };
            let z = SimplicialZigzag::new(&seq.complexes, mode)?;
            let bc = z.barcodes(degrees.clone(), field)?;
            emit(output.as_deref(), &barcode_output(&bc, format))?;
            if verify {
                if seq.complexes.len() < 2 {
                    return Err(Failure::Input("--verify-strong-diamond needs at least two complexes".into()));
                }
                let report = verify_strong_diamond(&seq.complexes, *degrees.end(), field)?;
                if !report.ok() {
                    return Err(Failure::Check(report.violations.join("\n")));
                }
                eprintln!("strong diamond checks passed for degrees 0..={}", degrees.end());
            }
            Ok(())
        }
        Command::Localize { input, k, check, output } => {
            let m = io::read_module(&read(&input)?)?;
            let local = localize_at(&m, k)?;
            emit(output.as_deref(), &io::write_barcode(&local))?;
            if check {
                let (full, _) = decompose(&m)?;
                let through = full.filter(|iv, _| iv.contains(k));
                if through != local {
                    return Err(Failure::Check(format!(
                        "localization at {k} gives {local}, decomposition gives {through}"
                    )));
                }
                eprintln!("localization at {k} agrees with the decomposition");
            }
            Ok(())
        }
        Command::DiamondVerify {
            plus,
            minus,
            k,
            seed,
            length,
            field,
            output,
        } => {
            let instance = match (plus, minus, k, seed) {
                (Some(p), Some(m), Some(k), _) => {
                    let plus = io::read_module(&read(&p)?)?;
                    let minus = io::read_module(&read(&m)?)?;
                    DiamondInstance::from_modules(plus, minus, k)?
                }
                (None, None, _, Some(seed)) => {
                    if length < 3 {
                        return Err(Failure::Input("--length must be at least 3".into()));
                    }
                    let mut rng = Rng::new(seed);
                    let k = match k {
                        Some(k) => k,
                        None => rng.between(2, length - 1),
                    };
                    if k < 2 || k + 1 > length {
                        return Err(Failure::Input(format!("k = {k} needs 2 <= k <= {}", length - 1)));
                    }
                    random_exact_diamond(&mut rng, Field::new(field)?, length, k, 3)?
                }
                _ => {
                    return Err(Failure::Input(
                        "give either --plus, --minus and --k, or --seed".into(),
                    ))
                }
            };
            let report = verify_diamond_matching(&instance)?;
            emit(output.as_deref(), &diamond_json(&report))?;
            if !report.ok() {
                return Err(Failure::Check(report.violations.join("\n")));
            }
            Ok(())
        }
        Command::Plant {
            ty,
            max_intervals,
            seed,
            field,
            output,
            truth,
        } => {
            let ty: ZigzagType = ty.parse()?;
            let inst = plant(seed, &ty, max_intervals, Field::new(field)?);
            emit(output.as_deref(), &io::write_module(&inst.module))?;
            if let Some(path) = truth {
                emit(Some(&path), &io::write_barcode(&inst.truth))?;
            }
            Ok(())
        }
        Command::Plot {
            input,
            style,
            format,
            output,
        } => {
            if format != Format::Svg {
                return Err(Failure::Input("plot only writes svg".into()));
            }
            let bc = io::read_barcode(&read(&input)?)?;
            let svg = match style {
                Style::Barcode => render_barcode(&bc),
                Style::Diagram => render_diagram(&bc),
            };
            emit(output.as_deref(), &svg)
        }
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run_command(cli.command) {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            2
        }
    }
}
