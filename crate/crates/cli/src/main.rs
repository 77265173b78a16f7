//! `nestmaps`: command-line front end for the nesting-map engines.
//!
//! Exit codes: 0 when the requested check passes, 1 when a check ran and
//! failed, 2 on usage or input errors.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Report;

pub const OUT_DIR_ENV: &str = "NESTMAPS_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "nestmaps", version, about = "Exact checks around nesting maps of finite Grassmannians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout. Relative to $NESTMAPS_OUT_DIR when set.
    #[arg(short = 'o', long, global = true)]
    pub output: Option<PathBuf>,
    /// Include wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grassmannians over finite fields.
    #[command(subcommand)]
    Grassmann(GrassmannCmd),
    /// Bijective nesting maps.
    #[command(subcommand)]
    Nest(NestCmd),
    /// Chern-class identities and certificates.
    #[command(subcommand)]
    Chern(ChernCmd),
    /// Schwarzenberger conditions and the cyclotomic split search.
    #[command(subcommand)]
    Schw(SchwCmd),
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Field order (a prime power); uses the built-in modulus.
    #[arg(short = 'q', long, conflicts_with_all = ["p", "k", "modulus"])]
    pub q: Option<u64>,
    /// Characteristic.
    #[arg(short = 'p', long)]
    pub p: Option<u64>,
    /// Extension degree.
    #[arg(short = 'k', long, requires = "p")]
    pub k: Option<u32>,
    /// Monic modulus coefficients, lowest degree first, e.g. 1,1,0,1.
    #[arg(long, requires = "p", value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Debug, Subcommand)]
pub enum GrassmannCmd {
    /// Number of i-dimensional subspaces of F^n.
    Count {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'i', long)]
        i: usize,
    },
    /// List the subspaces in canonical order.
    Enum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'i', long)]
        i: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum NestCmd {
    /// Find and verify a bijective nesting Gr(i) -> Gr(j).
    Match {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'i', long)]
        i: usize,
        #[arg(short = 'j', long)]
        j: usize,
        /// Also write the matching as tab-separated `left\tright` ids.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Sampled Hall-condition diagnostics (needs i + j = n).
    Hall {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'i', long)]
        i: usize,
        #[arg(short = 'j', long)]
        j: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The map l -> l^perp for the standard alternating form.
    Perp {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Alternating vs nesting for one Gram matrix, or all invertible ones.
    LinearCheck {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short = 'n', long)]
        n: usize,
        /// Rows separated by ';', entries by ',', e.g. 0,1;-1,0.
        #[arg(long, allow_hyphen_values = true)]
        gram: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ChernCmd {
    /// θ identities and the truncated Whitney identity.
    Verify {
        #[arg(long, default_value_t = 12)]
        d_max: u32,
        #[arg(long, default_value_t = 3)]
        i_max: usize,
        #[arg(long, default_value_t = 9)]
        n_max: usize,
    },
    /// gcd chain for θ_d(1, z) and the Gram determinant of θ_2.
    Certificate {
        #[arg(long, default_value_t = 50)]
        d_max: u32,
    },
    /// Whether the quotient Chern class of Gr(i, n) can split off rank n - j.
    Obstruction {
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'i', long)]
        i: usize,
        #[arg(short = 'j', long)]
        j: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SchwCmd {
    /// Integrality of B_{s,m} for a Chern polynomial.
    Check {
        /// Coefficients of p(t), lowest degree first, e.g. 1,0,-1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        poly: Vec<i64>,
        #[arg(short = 'm', long)]
        m: usize,
        /// Range of s as `a..b` (inclusive); default 0..m.
        #[arg(short = 's', long, allow_hyphen_values = true)]
        s: Option<String>,
    },
    /// Cyclotomic splittings of 1 + t + ... + t^{n-1}.
    Classify {
        #[arg(short = 'n', long)]
        n: usize,
    },
    /// Trace-form identity tr(a b_i) = (i+3)! B_{1,i+3}.
    Trace {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        poly: Vec<i64>,
        #[arg(short = 'm', long)]
        m: usize,
    },
}

fn destination(path: &PathBuf) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.clone(),
    }
}

fn write_out(path: Option<&PathBuf>, body: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let dest = destination(p);
            if let Some(parent) = dest.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&dest, body)?;
        }
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn render(report: &Report, format: Format, elapsed_ms: Option<u128>) -> anyhow::Result<String> {
    Ok(match format {
        Format::Text => {
            let mut s = report.text.clone();
            if let Some(ms) = elapsed_ms {
                s.push_str(&format!("elapsed: {ms} ms\n"));
            }
            s
        }
        Format::Json => {
            let mut v = report.json.clone();
            if let (Some(ms), Some(obj)) = (elapsed_ms, v.as_object_mut()) {
                obj.insert("elapsedMs".into(), serde_json::json!(ms as u64));
            }
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => match &report.csv {
            Some(c) => c.clone(),
            None => anyhow::bail!("csv output is not available for this command"),
        },
    })
}

/// Runs the CLI on `args` and returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let report = match commands::execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return 2;
        }
    };
    let elapsed = cli.timing.then(|| start.elapsed().as_millis());
    let body = match render(&report, cli.format, elapsed) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e:#}");
            return 2;
        }
    };
    let written = write_out(cli.output.as_ref(), &body).and_then(|()| match &report.export {
        Some((path, tsv)) => write_out(Some(path), tsv),
        None => Ok(()),
    });
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return 2;
    }
    if report.pass {
        0
    } else {
        1
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
