use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use superlie_cli::{cmd_h2, cmd_prolong, cmd_verify, pretty_h2, pretty_prolong, pretty_verify, CliError, Registry};

#[derive(Parser)]
#[command(name = "superlie", version, about = "Relations, prolongs and homology of vectorial Lie superalgebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Shorthand for `--format pretty`.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Check a relation table.
    Verify {
        algebra: String,
        side: String,
        /// Count `lhs = c·rhs` rows as passing.
        #[arg(long)]
        allow_scalar: bool,
    },
    /// Dimensions of the prolong of the non-positive part.
    Prolong {
        algebra: String,
        #[arg(long)]
        r: Option<String>,
        #[arg(long, default_value_t = 8, allow_negative_numbers = true)]
        max: i64,
    },
    /// H1 and H2 of one side, per internal degree.
    H2 {
        algebra: String,
        side: Option<String>,
        #[arg(long, default_value_t = 8, allow_negative_numbers = true)]
        max: i64,
    },
    /// Registered algebras and their sides.
    List,
}

fn emit<T: Serialize>(format: Format, value: &T, pretty: impl FnOnce(&T) -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(value).expect("reports serialize")),
        Format::Pretty => print!("{}", pretty(value)),
    }
}

fn run(mut cli: Cli) -> Result<bool, CliError> {
    if cli.pretty {
        cli.format = Format::Pretty;
    }
    let reg = Registry::load_default()?;
    match cli.command {
        Command::Verify {
            algebra,
            side,
            allow_scalar,
        } => {
            let r = cmd_verify(&reg, &algebra, &side)?;
            emit(cli.format, &r, pretty_verify);
            Ok(r.passed(allow_scalar))
        }
        Command::Prolong { algebra, r, max } => {
            let rep = cmd_prolong(&reg, &algebra, r.as_deref(), max)?;
            emit(cli.format, &rep, pretty_prolong);
            Ok(rep.direct_sum != Some(false))
        }
        Command::H2 { algebra, side, max } => {
            let side = match side {
                Some(s) => s,
                None => {
                    let sides: Vec<&String> = reg.algebra(&algebra)?.entry.sides.keys().collect();
                    match sides.as_slice() {
                        [s] => (*s).clone(),
                        _ => return Err(CliError::Usage(format!("`{algebra}` has several sides; name one"))),
                    }
                }
            };
            let rep = cmd_h2(&reg, &algebra, &side, max)?;
            emit(cli.format, &rep, |r| pretty_h2(&algebra, &side, r));
            Ok(rep.complete())
        }
        Command::List => {
            for (id, a) in &reg.algebras {
                let sides: Vec<&str> = a.sides.keys().map(String::as_str).collect();
                println!("{id}\t{}\t{}", a.title, sides.join(" "));
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
