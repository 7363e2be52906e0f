use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use pellcode_core::blocking::{block_decode_detailed, render_spaces};
use pellcode_core::{
    a_matrix, block_encode, correct, decode, encode, g_matrix, gen_pell, p_power, pell, simulate, verify_det_relation,
    BlockMode, ChannelConfig, CorrectionStatus, Error, MessageMatrix, SequenceParams,
};

use crate::formats::{self, FormatError};
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pellcode", version, about = "Pell matrix coding, error correction and text blocking")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print generalized Pell (p,i) numbers, or classical Pell numbers with --classic.
    Seq {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        p: u32,
        #[arg(long, default_value_t = 1)]
        i: u32,
        #[arg(long, default_value_t = 1)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long)]
        classic: bool,
    },
    /// Print P^n, the companion matrix A, or G_n.
    Matrix {
        #[arg(long, value_enum)]
        kind: MatrixKind,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        p: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Encode a message matrix into a PELLE package.
    Encode {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        p: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Inline matrix, rows separated by ';' and entries by ','.
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        matrix: Option<String>,
        /// File with one whitespace-separated matrix row per line.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode a PELLE package after checking its determinant.
    Decode { path: PathBuf },
    /// Detect and correct errors in a PELLE package (p = 1).
    Correct { path: PathBuf },
    /// Text blocking.
    Block {
        #[command(subcommand)]
        action: BlockAction,
    },
    /// Run the seeded error-injection simulator.
    Simulate {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Damage exactly this many entries; all sizes equally likely when omitted.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        errors: Option<u8>,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        magnitude: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        n_min: u32,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        entry_min: u64,
        #[arg(long, default_value_t = 28, value_parser = clap::value_parser!(u64).range(1..))]
        entry_max: u64,
        /// Append a key=value block after the table.
        #[arg(long)]
        kv: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum BlockAction {
    Encode {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        p: u32,
        #[arg(long)]
        text: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Decode {
        path: PathBuf,
        /// Show '0' runs as single spaces and drop trailing padding.
        #[arg(long)]
        render_spaces: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MatrixKind {
    /// P^n = [[2,1],[1,0]]^n
    Pn,
    A,
    G,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Pell,
    Gpell,
}

impl From<ModeArg> for BlockMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Pell => BlockMode::Pell,
            ModeArg::Gpell => BlockMode::GeneralizedPell,
        }
    }
}

/// A failed command: exit code plus diagnostic.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn malformed(path: &Path, err: FormatError) -> Self {
        Failure { code: EXIT_MALFORMED, message: format!("{}: {err}", path.display()) }
    }

    fn failed(message: impl Into<String>) -> Self {
        Failure { code: EXIT_FAILED, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::InvalidConfig(_) | Error::UnknownSymbol { .. } => EXIT_USAGE,
            _ => EXIT_FAILED,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<i32, Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: EXIT_MALFORMED, message: format!("{}: {e}", path.display()) })
}

fn emit(text: &str, out_path: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out_path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::failed(format!("{}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::failed(e.to_string())),
    }
}

fn execute(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Seq { p, i, from, to, classic } => {
            if from > to {
                return Err(Failure::usage("--from must not exceed --to"));
            }
            let mut text = String::new();
            if classic {
                for k in from..=to {
                    text.push_str(&format!("{k} {}\n", pell(k)));
                }
            } else {
                if from == 0 {
                    return Err(Failure::usage("--from must be at least 1"));
                }
                let params = SequenceParams::new(p, i)?;
                for k in from..=to {
                    text.push_str(&format!("{k} {}\n", gen_pell(params, k)?));
                }
            }
            emit(&text, None, stdout)?;
        }
        Command::Matrix { kind, p, n } => {
            let m = match kind {
                MatrixKind::Pn => p_power(n)?,
                MatrixKind::A => a_matrix(p)?,
                MatrixKind::G => g_matrix(p, n)?,
            };
            emit(&m.to_string(), None, stdout)?;
        }
        Command::Encode { p, n, matrix, input, out } => {
            let m = match (matrix, input) {
                (Some(spec), _) => {
                    let body =
                        formats::parse_inline_matrix(&spec).map_err(|e| Failure::usage(format!("--matrix: {e}")))?;
                    MessageMatrix::new(body).map_err(|e| Failure::usage(format!("--matrix: {e}")))?
                }
                (None, Some(path)) => {
                    formats::read_message(&read_file(&path)?).map_err(|e| Failure::malformed(&path, e))?
                }
                (None, None) => return Err(Failure::usage("one of --matrix or --input is required")),
            };
            let pkg = encode(&m, p, n)?;
            emit(&formats::write_pelle(&pkg), out.as_deref(), stdout)?;
        }
        Command::Decode { path } => {
            let pkg = formats::read_pelle(&read_file(&path)?).map_err(|e| Failure::malformed(&path, e))?;
            if !verify_det_relation(&pkg)? {
                return Err(Failure::failed("determinant check failed: the package is damaged (try `correct`)"));
            }
            emit(&decode(&pkg)?.to_string(), None, stdout)?;
        }
        Command::Correct { path } => {
            let pkg = formats::read_pelle(&read_file(&path)?).map_err(|e| Failure::malformed(&path, e))?;
            let result = correct(&pkg)?;
            emit(&report::correction(&result), None, stdout)?;
            return Ok(match result.status {
                CorrectionStatus::Clean | CorrectionStatus::Corrected => EXIT_OK,
                CorrectionStatus::Ambiguous | CorrectionStatus::Uncorrectable => {
                    let _ = writeln!(stderr, "correction failed: {}", result.status);
                    EXIT_FAILED
                }
            });
        }
        Command::Block { action: BlockAction::Encode { mode, p, text, out } } => {
            let k = block_encode(&text, mode.into(), p).map_err(|e| match e {
                Error::UnrecoverableBlock { .. } => Failure::failed(e.to_string()),
                other => Failure::usage(format!("--text: {other}")),
            })?;
            emit(&formats::write_pellk(&k), out.as_deref(), stdout)?;
        }
        Command::Block { action: BlockAction::Decode { path, render_spaces: render } } => {
            let k = formats::read_pellk(&read_file(&path)?).map_err(|e| Failure::malformed(&path, e))?;
            let decoded = block_decode_detailed(&k).map_err(|e| Failure::failed(e.to_string()))?;
            let text = decoded.grid.to_text();
            let shown = if render { render_spaces(&text) } else { text };
            emit(&format!("{shown}\n"), None, stdout)?;
        }
        Command::Simulate { trials, errors, magnitude, seed, n_min, n_max, entry_min, entry_max, kv } => {
            if n_min > n_max {
                return Err(Failure::usage("--n-min must not exceed --n-max"));
            }
            if entry_min > entry_max {
                return Err(Failure::usage("--entry-min must not exceed --entry-max"));
            }
            let mut cfg = ChannelConfig {
                trials,
                magnitude,
                seed,
                n_range: (n_min, n_max),
                entry_range: (entry_min, entry_max),
                ..ChannelConfig::default()
            };
            if let Some(k) = errors {
                cfg = cfg.with_errors(usize::from(k))?;
            }
            cfg.validate()?;
            let started = Instant::now();
            let rep = simulate(&cfg)?;
            let mut text = report::sim_table(&rep);
            if kv {
                text.push('\n');
                text.push_str(&report::sim_kv(&rep));
            }
            emit(&text, None, stdout)?;
            let _ = writeln!(stderr, "elapsed: {:.3}s", started.elapsed().as_secs_f64());
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
