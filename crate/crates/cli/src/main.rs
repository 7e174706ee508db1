use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use minorbit_cli::{run, CliError, Command, ComputationRequest, Format};
use minorbit_core::Error;

#[derive(Parser)]
#[command(
    name = "minorbit",
    version,
    about = "Integral cohomology of minimal nilpotent orbits"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print H^*(O_min, Z) for one type.
    Compute(Opts),
    /// Print the level diagram of long roots with its cover edges.
    Diagram(Opts),
    /// Print the differentials D_1, ..., D_{d-1}.
    Matrices(Opts),
    /// Run every check for one type, or for all types with --all.
    Verify {
        #[command(flatten)]
        opts: Opts,
        #[arg(long, conflicts_with_all = ["ty", "rank"])]
        all: bool,
    },
    /// Compute every type within the rank limits.
    All(Opts),
}

#[derive(clap::Args)]
struct Opts {
    /// Type label such as E8 or B4, or a family letter together with --rank.
    #[arg(long = "type", id = "ty")]
    ty: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Maximum number of Weyl-group elements enumerated by coset searches.
    #[arg(long)]
    cap: Option<usize>,
    /// Largest rank for the classical families.
    #[arg(long)]
    max_rank: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Dot,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Dot => Format::Dot,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts, all) = match cli.command {
        Cmd::Compute(o) => (Command::Compute, o, false),
        Cmd::Diagram(o) => (Command::Diagram, o, false),
        Cmd::Matrices(o) => (Command::Matrices, o, false),
        Cmd::Verify { opts, all } => (Command::Verify, opts, all),
        Cmd::All(o) => (Command::All, o, false),
    };
    if command == Command::Verify && !all && opts.ty.is_none() {
        eprintln!("error: verify needs --type or --all");
        return ExitCode::from(2);
    }
    let req = ComputationRequest::new(
        command,
        opts.ty.as_deref(),
        opts.rank,
        opts.format.into(),
        opts.cap,
        opts.max_rank,
    );
    let req = match req {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(&req, &mut out);
    let _ = out.flush();
    match result {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(CliError::Core(Error::CapExceeded { cap, partial })) => {
            eprintln!("error: coset enumeration stopped at {partial} elements (cap {cap}); rerun with a larger --cap");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
