use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chernloci_cli::{run, CliError, Command, CommandRequest};
use clap::{Parser, Subcommand};
use serde_json::Value;

/// Exact Chern-class formulas for degeneracy loci. Reads one JSON object
/// and writes one JSON value.
#[derive(Parser, Debug)]
#[command(name = "chernloci", version)]
struct Cli {
    /// Read the request from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the response to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Validate and normalize a triple, reporting r, ρ, μ, λ.
    Triple,
    /// The class of the locus as a polynomial in Chern symbols.
    Formula,
    /// The signed permutation of a type C triple.
    Perm,
    /// Substitute h- or q-series in x_1..x_m into a formula.
    Specialize,
    /// Run a verification suite; exits 2 if any check fails.
    Verify {
        /// appendixA, oracles or all. Takes precedence over the payload.
        #[arg(long)]
        suite: Option<String>,
        /// Bounds as a JSON object, merged over the payload's bounds.
        #[arg(long)]
        bounds: Option<String>,
    },
    /// A request of the form {"command": ..., "payload": {...}}.
    Run,
}

fn read_input(path: Option<&PathBuf>) -> Result<Value, CliError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Validation(e.to_string()))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("invalid JSON: {e}")))
}

fn request(cli: &Cli) -> Result<CommandRequest, CliError> {
    let simple = |command| -> Result<CommandRequest, CliError> {
        Ok(CommandRequest { command, payload: read_input(cli.input.as_ref())? })
    };
    match &cli.command {
        Sub::Triple => simple(Command::Triple),
        Sub::Formula => simple(Command::Formula),
        Sub::Perm => simple(Command::Perm),
        Sub::Specialize => simple(Command::Specialize),
        Sub::Run => serde_json::from_value(read_input(cli.input.as_ref())?)
            .map_err(|e| CliError::Validation(format!("bad request: {e}"))),
        Sub::Verify { suite, bounds } => {
            // with --suite and no --input there is nothing to read
            let mut payload = if suite.is_some() && cli.input.is_none() {
                Value::Object(Default::default())
            } else {
                read_input(cli.input.as_ref())?
            };
            let obj =
                payload.as_object_mut().ok_or_else(|| CliError::Validation("payload must be an object".into()))?;
            if let Some(s) = suite {
                obj.insert("suite".into(), Value::String(s.clone()));
            }
            if let Some(b) = bounds {
                let extra: Value =
                    serde_json::from_str(b).map_err(|e| CliError::Validation(format!("invalid --bounds: {e}")))?;
                let extra =
                    extra.as_object().ok_or_else(|| CliError::Validation("--bounds must be an object".into()))?;
                let merged = obj.entry("bounds").or_insert_with(|| Value::Object(Default::default()));
                let merged =
                    merged.as_object_mut().ok_or_else(|| CliError::Validation("bounds must be an object".into()))?;
                merged.extend(extra.clone());
            }
            Ok(CommandRequest { command: Command::Verify, payload })
        }
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    let result = match path {
        Some(p) => std::fs::write(p, format!("{text}\n")),
        None => writeln!(std::io::stdout(), "{text}"),
    };
    match result {
        // a closed downstream pipe (`| head`) is not our failure
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => r.map_err(|e| CliError::Internal(format!("writing output: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = request(&cli).and_then(run).and_then(|resp| {
        write_output(cli.output.as_ref(), &resp.to_json(cli.pretty))?;
        Ok(resp.exit_code())
    });
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let body = serde_json::json!({ "error": e.to_string() });
            eprintln!("{body}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
