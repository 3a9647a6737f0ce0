use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::Parser;
use koszul_core::arith::MonomialOrder;
use koszul_core::cli::{self, Command, Format, JobSpec, Options, Report};
use koszul_core::error::Error;

/// Exact computations with cubes of modules, total complexes and Koszul cubes.
#[derive(Parser, Debug)]
#[command(name = "koszul-lab", version)]
struct Args {
    #[arg(value_parser = PossibleValuesParser::new(Command::names()))]
    command: String,

    /// Input document; standard input when absent.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Overrides the order named in the document.
    #[arg(long, value_parser = ["grevlex", "lex", "grlex"])]
    order: Option<String>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Bound on exponent searches.
    #[arg(long, default_value_t = cli::DEFAULT_MAX_POWER)]
    max_power: u32,

    /// Longest sequence whose permutations are enumerated.
    #[arg(long, default_value_t = koszul_core::koszul::DEFAULT_PERM_CAP)]
    perm_cap: usize,

    #[arg(long, conflicts_with = "text")]
    json: bool,

    #[arg(long)]
    text: bool,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, String> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = Command::parse(&args.command).expect("clap restricts the command set");
    let order = args
        .order
        .as_deref()
        .map(|o| MonomialOrder::parse(o).expect("clap restricts the order names"));
    let job = JobSpec {
        command,
        options: Options {
            order,
            seed: args.seed,
            max_power: args.max_power,
            perm_cap: args.perm_cap,
        },
        format: if args.text { Format::Text } else { Format::Json },
    };
    let report = match read_input(args.input.as_ref()) {
        Ok(text) => cli::run(&job, &text),
        Err(msg) => Report::failed(&job, &Error::Input(msg)),
    };
    print!("{}", report.render(job.format));
    if let Some(d) = &report.error {
        eprintln!("koszul-lab: {}: {}", d.kind, d.message);
    }
    ExitCode::from(report.exit_code() as u8)
}
