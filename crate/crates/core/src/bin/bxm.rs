use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bxmod::cli::{self, CliError, Options, OutputFormat, Outcome};

#[derive(Parser)]
#[command(name = "bxm", version, about = "Braided crossed modules of finite commutative algebras")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Enumeration budget per hom-set or subspace search.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_enumeration: u128,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Treat cap hits as failures.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and validate every entity.
    Validate { file: PathBuf },
    /// Build a limit or quotient from named inputs.
    Construct {
        file: PathBuf,
        /// equaliser, product, pullback, kernel-pair, coequaliser or quotient
        kind: String,
        args: Vec<String>,
        /// Write the document extended with the apex and legs here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run one check: regular-epi, factorization, stability, equivalence, effective, bilinearity.
    Check { file: PathBuf, check: String, args: Vec<String> },
    /// Run the exactness suite for every base algebra in the document.
    Suite { file: PathBuf },
    /// Print the canonical form of a document.
    Fmt { file: PathBuf },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn run(args: Args) -> Result<i32, CliError> {
    let opts = Options {
        max_enumeration: args.max_enumeration,
        format: match args.format {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        },
        strict: args.strict,
    };
    let outcome: Outcome = match &args.command {
        Command::Validate { file } => cli::cmd_validate(&read(file)?, &opts)?,
        Command::Construct { file, kind, args: rest, emit } => {
            let out = cli::cmd_construct(&read(file)?, kind, rest, emit.is_some(), &opts)?;
            if let (Some(path), Some(doc)) = (emit, &out.emitted) {
                std::fs::write(path, doc).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            out
        }
        Command::Check { file, check, args: rest } => cli::cmd_check(&read(file)?, check, rest, &opts)?,
        Command::Suite { file } => cli::cmd_suite(&read(file)?, &opts)?,
        Command::Fmt { file } => {
            print!("{}", cli::cmd_fmt(&read(file)?)?);
            return Ok(cli::EXIT_PASS);
        }
    };
    print!("{}", outcome.render(opts.format));
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = match run(args) {
        Ok(code) => code,
        Err(e) => {
            if let CliError::Validation { report } = &e {
                print!("{}", report.render_text());
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
