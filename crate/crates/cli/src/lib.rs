//! Command-line front end for `pgd-core`.
//!
//! [`dispatch`] parses an argument vector, runs one pipeline and returns a
//! [`Report`] with its exit code: 0 when every check passed, 1 when the
//! input is well formed but a mathematical check fails, 2 for usage, I/O or
//! parse errors. [`emit`] serializes the report deterministically.

mod commands;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use report::{emit, FileDigest, Format, Provenance, Report, Status};

#[derive(Debug, Parser)]
#[command(
    name = "pgd",
    version,
    about = "Exact certificates for partial geometric designs"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Lift the size guards on point sets and digraphs.
    #[arg(long, global = true)]
    pub allow_large: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a scheme, graph or code and write it to a file.
    #[command(subcommand)]
    Construct(Construct),
    /// Certify a scheme, design, graph or digraph read from a file.
    #[command(subcommand)]
    Verify(Verify),
    /// Inspect a linear code or orthogonal array.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Build and certify the flag or antiflag digraph of a design.
    #[command(subcommand)]
    Dsrg(DsrgCmd),
    /// Parameter tables, each backed by certified constructions.
    #[command(subcommand)]
    Catalog(Catalog),
}

#[derive(Debug, Clone, Args)]
pub struct Out {
    /// Output file; without it the file contents go into the report.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Hamming scheme H(d, q) as a relation matrix.
    Hamming {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Mod-3 distance fusion of H(2l+1, 3) as a relation matrix.
    Ksd {
        #[arg(long)]
        l: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Adjacency matrix of the complete multipartite graph with c parts of
    /// size n.
    Multipartite {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Wreath product K_m wr K_n as a relation matrix.
    Wreath {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Ternary [2l+3, 2l+1] family code as a code file.
    FamilyCode {
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        out: Out,
    },
}

/// A design given either as an incidence matrix or as one class of a
/// scheme file.
#[derive(Debug, Clone, Args)]
pub struct DesignInput {
    /// Scheme file (relation matrix).
    #[arg(
        long,
        conflicts_with = "matrix",
        required_unless_present = "matrix",
        requires = "class"
    )]
    pub scheme: Option<PathBuf>,
    /// Class of the scheme whose adjacency matrix is the incidence matrix.
    #[arg(long)]
    pub class: Option<usize>,
    /// Incidence matrix file.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Add the identity to the (square) matrix first.
    #[arg(long)]
    pub add_identity: bool,
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Certify the scheme axioms and compute its eigenmatrices.
    Scheme {
        #[arg(long)]
        scheme: PathBuf,
    },
    /// Certify a partial geometric design.
    Pgd(DesignInput),
    /// Certify a strongly regular graph.
    Srg {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Certify a directed strongly regular graph.
    Dsrg {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CodeCmd {
    /// Size, weight distributions and array strength.
    Info {
        #[arg(long)]
        file: PathBuf,
    },
    /// Write the dual code.
    Dual {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Strength of a code's array of codewords or of an array file;
    /// `--out` exports the array.
    OaStrength {
        #[arg(long, conflicts_with = "array", required_unless_present = "array")]
        file: Option<PathBuf>,
        #[arg(long)]
        array: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Certify the distance-class relations on the codewords.
    Scheme {
        #[arg(long)]
        file: PathBuf,
        /// Distance classes, e.g. "1,4,7;2,5;3,6".
        #[arg(long)]
        classes: String,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Debug, Clone, Args)]
pub struct DsrgArgs {
    #[command(flatten)]
    pub design: DesignInput,
    #[command(flatten)]
    pub out: Out,
}

#[derive(Debug, Subcommand)]
pub enum DsrgCmd {
    /// Digraph on the flags of a design.
    Flag(DsrgArgs),
    /// Digraph on the antiflags of a design.
    Antiflag(DsrgArgs),
}

#[derive(Debug, Subcommand)]
pub enum Catalog {
    /// Flag and antiflag digraph parameters of the three-class family for
    /// m = 3^l, l = 1..=max-l.
    Table1 {
        #[arg(long, default_value_t = 1)]
        max_l: u32,
    },
    /// Design parameters of the mod-3 fusion of H(2l+1, 3).
    Cor55 {
        #[arg(long)]
        l: u32,
    },
    /// Character table and design parameters of the three-class family at
    /// m = 3^l, checked on the mod-3 fusion of H(2l+1, 3).
    ZFamily {
        #[arg(long)]
        l: u32,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> (Report, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    dispatch_with_format(argv).0
}

/// Parses, runs and serializes in the requested format.
pub fn run<I, T>(argv: I) -> (Vec<u8>, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let ((report, code), format) = dispatch_with_format(argv);
    (emit(&report, format), code)
}

fn dispatch_with_format<I, T>(argv: I) -> ((Report, i32), Format)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let format = if echo.contains("--format text") || echo.contains("--format=text") {
                Format::Text
            } else {
                Format::Json
            };
            let (status, payload) = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    (Status::Ok, json!({ "help": e.render().to_string() }))
                }
                _ => (
                    Status::Error,
                    json!({ "error": "usage", "message": e.render().to_string() }),
                ),
            };
            let report = Report {
                command: echo,
                status,
                payload,
                provenance: Provenance::default(),
            };
            let code = report.exit_code();
            return ((report, code), format);
        }
    };
    let format = cli.format;
    let report = commands::execute(echo, &cli);
    let code = report.exit_code();
    ((report, code), format)
}
