//! `picard`: relator checks, enumeration, cycle extraction, classification and
//! the property runner.
//!
//! Exit codes: 0 success, 1 property or structure violation, 2 usage error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use picard_core::{
    build_graph, enumerate, export_dot, export_json, layer_cycles, picard::verify_relators_with,
    run_all, AmbiguityClass, Error, GaussMatrix, Generator, GeneratorSet, PropertyConfig, Rational,
    RealQuadratic,
};

#[derive(Parser, Debug)]
#[command(
    name = "picard",
    version,
    about = "Ambiguous numbers in orbits of the Picard group"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the eight defining relators on the generator matrices.
    VerifyRelators {
        #[arg(long, hide = true)]
        corrupt_generator: Option<Generator>,
    },
    /// List the ambiguous numbers (a + k√3)/c of the closed path through k√3.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        k: i64,
        #[arg(long)]
        json: bool,
    },
    /// Build the ambiguous graph for k, report its C/D cycles and export it.
    Cycles {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        k: i64,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Classify (a + b√3)/c and report its d-value.
    Classify {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(allow_negative_numbers = true)]
        c: i64,
    },
    /// Run every property suite for k up to k-max with a seeded sampler.
    CheckProperties {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        k_max: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        corrupt_generator: Option<Generator>,
    },
}

enum Failure {
    Violation(String),
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn out(s: &str) {
    let _ = io::stdout().lock().write_all(s.as_bytes());
}

/// Replaces one generator by the translation z ↦ z + 1.
fn generators(corrupt: Option<Generator>) -> GeneratorSet {
    let set = GeneratorSet::standard();
    match corrupt {
        Some(g) => set.with_replaced(g, GaussMatrix::from_parts([(1, 0), (1, 0), (0, 0), (1, 0)])),
        None => set,
    }
}

fn verify(corrupt: Option<Generator>) -> Outcome {
    let checks = verify_relators_with(&generators(corrupt));
    let mut s = String::new();
    for c in &checks {
        let verdict = if c.passes() { "PASS" } else { "FAIL" };
        s.push_str(&format!("RELATOR {}: {} {}\n", c.name, c.value, verdict));
    }
    out(&s);
    match checks.iter().find(|c| !c.passes()) {
        Some(c) => Err(Failure::Violation(format!(
            "relator {} does not evaluate to ±I",
            c.name
        ))),
        None => Ok(()),
    }
}

fn core_failure(e: Error) -> Failure {
    match e {
        Error::InvalidK(_) => Failure::Usage(e.to_string()),
        Error::ClosureViolation { .. } => Failure::Violation(format!("closure: {e}")),
        Error::PropositionViolation { .. } => Failure::Violation(format!("partner: {e}")),
        other => Failure::Violation(other.to_string()),
    }
}

fn cmd_enumerate(k: i64, json: bool) -> Outcome {
    let e = enumerate(k).map_err(core_failure)?;
    if json {
        out(&format!("{}\n", e.to_json()));
    } else {
        out(&e.to_string());
    }
    Ok(())
}

fn write_file(path: &PathBuf, contents: &str) -> Outcome {
    fs::write(path, contents)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_cycles(k: i64, dot: Option<PathBuf>, json: Option<PathBuf>) -> Outcome {
    let g = build_graph(k).map_err(core_failure)?;
    let cycles = layer_cycles(&g);
    let lengths: Vec<String> = cycles.iter().map(|c| c.len().to_string()).collect();
    out(&format!(
        "cycles: {} (lengths {})\n",
        cycles.len(),
        lengths.join(", ")
    ));
    if let Some(p) = &dot {
        write_file(p, &export_dot(&g))?;
    }
    if let Some(p) = &json {
        write_file(p, &export_json(&g))?;
    }
    let report = g.structure();
    let violations = report.violations();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(violations.join("; ")))
    }
}

fn cmd_classify(a: i64, b: i64, c: i64) -> Outcome {
    let q = RealQuadratic::new(a, b, c).map_err(|e| Failure::Usage(e.to_string()))?;
    let class = q.classify();
    let (a, b) = (a as i128, b as i128);
    let d = Rational::new((a * a - 3 * b * b).into(), (c as i128).into());
    let integral = if d.is_integer() {
        "integral"
    } else {
        "not integral"
    };
    if class == AmbiguityClass::RationalDegenerate {
        out(&format!(
            "{class}, d = {d} ({integral}), b = 0 so the number is rational\n"
        ));
    } else {
        out(&format!("{class}, d = {d} ({integral})\n"));
    }
    Ok(())
}

fn cmd_check_properties(k_max: i64, seed: u64, corrupt: Option<Generator>) -> Outcome {
    let mut cfg = PropertyConfig::new(k_max, seed);
    cfg.generators = generators(corrupt);
    let report = run_all(&cfg).map_err(core_failure)?;
    out(&report.to_string());
    match report.first_failure() {
        Some(s) => Err(Failure::Violation(format!(
            "property {}: {}",
            s.name,
            s.failure.as_deref().unwrap_or_default()
        ))),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::VerifyRelators { corrupt_generator } => verify(corrupt_generator),
        Command::Enumerate { k, json } => cmd_enumerate(k, json),
        Command::Cycles { k, dot, json } => cmd_cycles(k, dot, json),
        Command::Classify { a, b, c } => cmd_classify(a, b, c),
        Command::CheckProperties {
            k_max,
            seed,
            corrupt_generator,
        } => cmd_check_properties(k_max, seed, corrupt_generator),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("violated: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
