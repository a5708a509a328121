mod commands;
mod input;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::json;
use trusskit::{Error, Limits};

use commands::Structure;
use report::Report;

#[derive(Parser)]
#[command(name = "trusskit", version)]
#[command(about = "Check heaps, trusses and the isomorphism correspondence for endomorphism trusses")]
struct Cli {
    /// Emit the JSON report instead of the table
    #[arg(long, global = true)]
    json: bool,

    /// Largest enumeration any single step may attempt
    #[arg(long, global = true, env = "TRUSSKIT_MAX_ENUM", default_value_t = Limits::default().max_enumeration)]
    max_enumeration: u64,

    /// Carrier size up to which heap associativity is checked on all
    /// quintuples; larger heaps are sampled
    #[arg(long, global = true, default_value_t = Limits::default().max_full_validation)]
    max_full_validation: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a heap, truss or module given by preset or JSON table file
    #[command(group(ArgGroup::new("structure").required(true).args(["heap", "truss", "module"])))]
    Validate {
        /// from-group:<orders>, endo:<orders>, or a file
        #[arg(long)]
        heap: Option<String>,
        /// endo:<orders>, zn:<n>, fp:<p>, fpxfp:<p>, or a file
        #[arg(long)]
        truss: Option<String>,
        /// zn:<n>, fp:<p>, fpxfp:<p>, fpx0:<p>, 0xfp:<p>, example-non-iso:<p>, or a file
        #[arg(long)]
        module: Option<String>,
    },
    /// Compare heap isomorphisms G -> H with truss isomorphisms E(G) -> E(H)
    Bk {
        /// Cyclic orders of G, e.g. "2,2"
        left: String,
        /// Cyclic orders of H
        right: String,
        /// Also count truss isomorphisms by scanning every bijection
        #[arg(long)]
        brute_force: bool,
    },
    /// Check the intertwiner structure of every truss morphism E(G) -> E(H)
    Inner { left: String, right: String },
    /// Compare module equivalences with truss isomorphisms E_R(M) -> E_S(N)
    ModuleBk {
        /// Module preset or file; example-non-iso:<p> alone names both sides
        left: String,
        right: Option<String>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BoundExceeded { .. } => 3,
        Error::Violation(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits {
        max_enumeration: cli.max_enumeration,
        max_full_validation: cli.max_full_validation,
        ..Limits::default()
    };
    let start = Instant::now();
    let (name, inputs, outcome) = match &cli.command {
        Command::Validate { heap, truss, module } => {
            let (kind, spec) = match (heap, truss, module) {
                (Some(s), _, _) => (Structure::Heap, s),
                (_, Some(s), _) => (Structure::Truss, s),
                (_, _, Some(s)) => (Structure::Module, s),
                _ => unreachable!("clap requires one structure"),
            };
            ("validate", json!({ "spec": spec }), commands::validate(kind, spec, &limits))
        }
        Command::Bk {
            left,
            right,
            brute_force,
        } => (
            "bk",
            json!({"left": left, "right": right}),
            commands::bk(left, right, *brute_force, &limits),
        ),
        Command::Inner { left, right } => (
            "inner",
            json!({"left": left, "right": right}),
            commands::inner(left, right, &limits),
        ),
        Command::ModuleBk { left, right } => (
            "module-bk",
            json!({"left": left, "right": right}),
            commands::module_bk(left, right.as_deref(), &limits),
        ),
    };
    let report = match outcome {
        Ok(r) => r,
        Err(e @ Error::BoundExceeded { .. }) => {
            let mut r = Report::new(name, inputs);
            r.skipped = Some(format!("{e}; raise --max-enumeration to run it"));
            r
        }
        Err(e) => {
            eprintln!("trusskit {name}: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text(start.elapsed()));
    }
    match (&report.skipped, report.passed()) {
        (Some(_), _) => ExitCode::from(3),
        (None, true) => ExitCode::SUCCESS,
        (None, false) => ExitCode::from(1),
    }
}
