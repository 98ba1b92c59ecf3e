//! Command-line front end. [`run`] takes the argument list and output streams
//! so it can be driven from tests without spawning a process.
//!
//! Exit codes: 0 success, 1 negative answer (`equiv`, `is-baxter`), 2 invalid
//! input, 3 invalid code, 64 usage error, 74 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::baxter::{self, BaxterError, Permutation};
use crate::codec::{self, CodeString, CodecError};
use crate::fp;
use crate::geometry::{self, FloorplanDrawing};
use crate::oracle::{self, EnumerationReport, OracleError};
use crate::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_INVALID_CODE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(name = "mosaic", version, about = "Mosaic floorplan codec and Baxter bridge")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the code of a floorplan file.
    Encode {
        input: PathBuf,
        /// Also write the code to a binary container.
        #[arg(long, value_name = "OUT.mfc")]
        binary: Option<PathBuf>,
    },
    /// Print the standard-form floorplan of a code.
    Decode {
        /// Code as 0/1 characters; whitespace is ignored.
        #[arg(required_unless_present = "binary", conflicts_with = "binary")]
        bits: Option<String>,
        #[arg(long, value_name = "IN.mfc")]
        binary: Option<PathBuf>,
    },
    /// Print the standard form of a floorplan file.
    Normalize { input: PathBuf },
    /// Exit 0 if two floorplans are equivalent, 1 if not.
    Equiv { a: PathBuf, b: PathBuf },
    /// List every valid code for n blocks.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "csv")]
        count_only: bool,
        /// Print a CSV row comparing the count with the Baxter number.
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
        cap: usize,
    },
    /// Print the Baxter number B(n).
    BaxterNumber {
        #[arg(long)]
        n: u32,
    },
    /// Exit 0 if the permutation is Baxter, 1 if not.
    IsBaxter {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
    },
    /// Print the Baxter permutation of a floorplan file.
    Fp2bp { input: PathBuf },
    /// Print the floorplan of a Baxter permutation.
    Bp2fp {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
    },
    /// Write an SVG drawing of a floorplan file.
    Render {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 20)]
        scale: u32,
    },
    /// Compare the code length with the information-theoretic minimum.
    Stats {
        #[arg(long)]
        n: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<CodecError> for Failure {
    fn from(e: CodecError) -> Self {
        let code = match e {
            CodecError::Geometry(_) => EXIT_INVALID_INPUT,
            _ => EXIT_INVALID_CODE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<BaxterError> for Failure {
    fn from(e: BaxterError) -> Self {
        match e {
            BaxterError::Codec(c) => c.into(),
            other => Failure::new(EXIT_INVALID_INPUT, other.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::new(EXIT_INVALID_INPUT, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_IO, e.to_string())
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn read_floorplan(path: &Path) -> Result<FloorplanDrawing, Failure> {
    fp::parse(&read_text(path)?)
        .map_err(|e| Failure::new(EXIT_INVALID_INPUT, format!("{}: {e}", path.display())))
}

fn parse_perm(parts: &[String]) -> Result<Permutation, Failure> {
    Ok(parts.join(" ").parse::<Permutation>()?)
}

/// Writes through a sibling temporary file so a failed write leaves nothing
/// at `path`.
fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    let result = fs::write(&tmp, bytes).and_then(|_| fs::rename(&tmp, path));
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(Failure::new(EXIT_IO, format!("{}: {e}", path.display())));
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Encode { input, binary } => {
            let f = read_floorplan(&input)?;
            let code = codec::encode(&f)?;
            if let Some(path) = binary {
                write_file(&path, &codec::pack(&code))?;
            }
            writeln!(out, "{}", code.to_ascii())?;
        }
        Command::Decode { bits, binary } => {
            let code = match (bits, binary) {
                (_, Some(path)) => {
                    let bytes = fs::read(&path).map_err(|e| {
                        Failure::new(EXIT_IO, format!("{}: {e}", path.display()))
                    })?;
                    codec::unpack(&bytes)?
                }
                (Some(bits), None) => CodeString::from_ascii(&bits)?,
                (None, None) => return Err(Failure::new(EXIT_USAGE, "no code given")),
            };
            let f = codec::decode(&code)?;
            write!(out, "{}", fp::write(&f))?;
        }
        Command::Normalize { input } => {
            let f = read_floorplan(&input)?;
            let g = geometry::normalize(&f)
                .map_err(|e| Failure::new(EXIT_INVALID_INPUT, e.to_string()))?;
            write!(out, "{}", fp::write(&g))?;
        }
        Command::Equiv { a, b } => {
            let fa = read_floorplan(&a)?;
            let fb = read_floorplan(&b)?;
            let same = codec::equivalent(&fa, &fb)?;
            writeln!(out, "{}", if same { "equivalent" } else { "not equivalent" })?;
            return Ok(if same { EXIT_OK } else { EXIT_NO });
        }
        Command::Enumerate {
            n,
            count_only,
            csv,
            cap,
        } => {
            if csv {
                let report = oracle::enumeration_report(n, cap)?;
                writeln!(out, "{}", EnumerationReport::CSV_HEADER)?;
                writeln!(out, "{}", report.csv_row())?;
            } else {
                let all = oracle::enumerate_floorplans_capped(n, cap)?;
                if count_only {
                    writeln!(out, "{}", all.len())?;
                } else {
                    for (code, _) in &all {
                        writeln!(out, "{}", code.to_ascii())?;
                    }
                }
            }
        }
        Command::BaxterNumber { n } => {
            writeln!(out, "{}", baxter::baxter_number(n))?;
        }
        Command::IsBaxter { perm } => {
            let p = parse_perm(&perm)?;
            let yes = baxter::is_baxter(&p);
            writeln!(out, "{yes}")?;
            return Ok(if yes { EXIT_OK } else { EXIT_NO });
        }
        Command::Fp2bp { input } => {
            let f = read_floorplan(&input)?;
            writeln!(out, "{}", baxter::fp2bp(&f)?)?;
        }
        Command::Bp2fp { perm } => {
            let p = parse_perm(&perm)?;
            write!(out, "{}", fp::write(&baxter::bp2fp(&p)?))?;
        }
        Command::Render {
            input,
            output,
            scale,
        } => {
            if scale == 0 {
                return Err(Failure::new(EXIT_USAGE, "--scale must be at least 1"));
            }
            let f = read_floorplan(&input)?;
            write_file(&output, render::render_svg(&f, scale).as_bytes())?;
        }
        Command::Stats { n } => {
            if n == 0 {
                return Err(Failure::new(EXIT_INVALID_INPUT, "n must be at least 1"));
            }
            let r = oracle::entropy_report(n);
            writeln!(out, "{r}")?;
            writeln!(out, "log2_classes={:.3}", oracle::log2_classes(n))?;
        }
    }
    Ok(EXIT_OK)
}
