use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dpsplit_cli::commands::{load_form, run, Family, Options, Request, SplitMode};
use dpsplit_cli::document::{FieldDesc, FormDocument};
use dpsplit_cli::{CliError, CliResult};

/// Additive splittings of divided power forms.
#[derive(Parser)]
#[command(name = "dpsplit", version)]
struct Cli {
    /// Print one JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the command's document to this path
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Highest degree used in ideal comparisons
    #[arg(long, global = true, default_value_t = dpsplit::matrix_ideals::DEFAULT_BOUND)]
    degree_bound: usize,
    /// Field for text input and generated forms: Q, or a prime such as 7 or F7
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Number of variables for text input (defaults to the largest index used)
    #[arg(long, global = true)]
    nvars: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormInput {
    /// JSON form document or text form; "-" reads stdin
    input: Option<String>,
    /// Form given inline, e.g. "x1^(3) + x1 x2^(2)"
    #[arg(short, long, conflicts_with = "input")]
    expr: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Regular,
    Degenerate,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function, generators, M_f and its flags
    Analyze(FormInput),
    /// Regular or degenerate splitting
    Split {
        #[command(flatten)]
        form: FormInput,
        #[arg(long, value_enum, default_value = "regular")]
        mode: Mode,
    },
    /// Betti table obtained from the maximal regular splitting
    Betti(FormInput),
    /// Hilbert function, directly and from the splitting
    Hilbert(FormInput),
    /// Tangent space dimension of the Gorenstein parameter space at f
    Tangent(FormInput),
    /// Generate a form from a named family
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// Sum of monomials x^[a] with sum_i (i-1) a_i = k
    Hdk {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: i64,
    },
    /// Form whose M_f is generated by a nilpotent Jordan block
    Jordan {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
    },
    /// Form in 2s+q variables built from consecutive terms of a power
    Counterexample {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        d: usize,
    },
}

fn read_form(input: &FormInput, field: &FieldDesc, nvars: Option<usize>) -> CliResult<FormDocument> {
    let src = match (&input.expr, input.input.as_deref()) {
        (Some(e), _) => e.clone(),
        (None, None) | (None, Some("-")) => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(e.to_string()))?;
            s
        }
        (None, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?
        }
    };
    load_form(&src, field, nvars)
}

fn execute(cli: &Cli) -> CliResult<()> {
    let field = FieldDesc::from_flag(&cli.field)?;
    let form = |input: &FormInput| read_form(input, &field, cli.nvars);
    let req = match &cli.command {
        Command::Analyze(i) => Request::Analyze(form(i)?),
        Command::Split { form: i, mode } => {
            let mode = match mode {
                Mode::Regular => SplitMode::Regular,
                Mode::Degenerate => SplitMode::Degenerate,
            };
            Request::Split(form(i)?, mode)
        }
        Command::Betti(i) => Request::Betti(form(i)?),
        Command::Hilbert(i) => Request::Hilbert(form(i)?),
        Command::Tangent(i) => Request::Tangent(form(i)?),
        Command::Gen { family } => {
            let family = match *family {
                GenFamily::Hdk { r, d, k } => Family::Hdk { r, d, k },
                GenFamily::Jordan { r, d } => Family::Jordan { r, d },
                GenFamily::Counterexample { s, q, d } => Family::Counterexample { s, q, d },
            };
            Request::Gen(field.clone(), family)
        }
    };
    let opts = Options { seed: cli.seed, degree_bound: cli.degree_bound };
    let report = run(&req, &opts)?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report.json).expect("reports serialize"));
    } else {
        print!("{}", report.text);
    }
    if let Some(path) = &cli.out {
        std::fs::write(path, format!("{}\n", report.artifact))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
