//! Command-line driver: card validation, suite reports over the model
//! catalog, and hamiltonian gauge flows, all in exact rational
//! arithmetic.
//!
//! Exit codes: 0 when every requested check passes, 1 when a report
//! contains a failed check or a flow breaks a conservation law, 2 for
//! input errors (unreadable or invalid cards, unknown names, suites
//! that do not apply to the card kind, malformed polynomials or
//! rationals).

use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num::Zero;
use rayon::prelude::*;

use mcpoisson::card::AlgebraCard;
use mcpoisson::catalog;
use mcpoisson::mcp::McpStructure;
use mcpoisson::poly::Poly;
use mcpoisson::ratlin::{format_q, Q};
use mcpoisson::report::{card_structures, run_report, Report, Suite};

#[derive(Parser)]
#[command(
    name = "mcp",
    version,
    about = "Exact verification of Maurer-Cartan-Poisson structures on finite-dimensional models"
)]
struct Cli {
    /// Seed for the deterministic sample-point generator.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a card and check its schema and algebraic axioms.
    Validate {
        /// Card file path or catalog name.
        card: String,
    },
    /// Run a validation suite and print the reports.
    Report {
        /// Card file paths or catalog names; with none, every catalog
        /// card carrying the suite runs.
        cards: Vec<String>,
        /// Suite: dgla, mcp, extensions, frobenius, symplectic or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Print reports as JSON instead of tables.
        #[arg(long, conflicts_with = "table")]
        json: bool,
        /// Print reports as plain-text tables (the default).
        #[arg(long)]
        table: bool,
    },
    /// List the shipped cards.
    Catalog,
    /// Drive the explicit Euler gauge flow of a polynomial hamiltonian.
    Flow {
        /// Card file path or catalog name.
        card: String,
        /// Hamiltonian in variables x1..xn, n the degree-one dimension.
        #[arg(long)]
        hamiltonian: String,
        /// Number of Euler steps.
        #[arg(long, default_value_t = 8)]
        steps: usize,
        /// Step size as a rational such as 1/10.
        #[arg(long, default_value = "1/10")]
        h: String,
        /// Structure flavor to flow on, for cards carrying several
        /// (two-form or multivector); default is the card's first.
        #[arg(long)]
        structure: Option<String>,
        /// Starting point as comma-separated rationals; must solve the
        /// structure equations. Default: a distinguished solution if
        /// the card has one, otherwise zero.
        #[arg(long)]
        point: Option<String>,
    },
}

const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_INPUT_ERROR: u8 = 2;

fn input_error(message: String) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_INPUT_ERROR)
}

/// Resolves a card argument: an existing file path wins, then a
/// catalog name.
fn resolve_card(spec: &str) -> Result<AlgebraCard, String> {
    let path = Path::new(spec);
    if path.exists() {
        return AlgebraCard::load(path).map_err(|e| format!("{spec}: {e}"));
    }
    match catalog::load(spec) {
        Some(Ok(card)) => Ok(card),
        Some(Err(e)) => Err(format!("{spec}: {e}")),
        None => Err(format!(
            "`{spec}` is neither a readable file nor a catalog name; shipped cards: {}",
            catalog::names().join(", ")
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { card } => cmd_validate(&card),
        Command::Report {
            cards,
            suite,
            json,
            table: _,
        } => cmd_report(&cards, &suite, json, cli.seed),
        Command::Catalog => cmd_catalog(),
        Command::Flow {
            card,
            hamiltonian,
            steps,
            h,
            structure,
            point,
        } => cmd_flow(&card, &hamiltonian, steps, &h, structure.as_deref(), point.as_deref()),
    }
}

fn cmd_validate(spec: &str) -> ExitCode {
    let card = match resolve_card(spec) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    if let Err(e) = card.validate_axioms() {
        return input_error(format!("{}: {e}", card.name));
    }
    println!(
        "card `{}`: {} of dimension {}, schema and axioms valid",
        card.name, card.kind, card.dimension
    );
    ExitCode::SUCCESS
}

fn cmd_report(specs: &[String], suite: &str, json: bool, seed: u64) -> ExitCode {
    let suite = match Suite::from_str(suite) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    let cards: Vec<AlgebraCard> = if specs.is_empty() {
        catalog::all()
            .into_iter()
            .filter(|c| suite.applies_to(c.kind))
            .collect()
    } else {
        let mut out = Vec::new();
        for spec in specs {
            match resolve_card(spec) {
                Ok(c) => out.push(c),
                Err(e) => return input_error(e),
            }
        }
        out
    };
    if cards.is_empty() {
        return input_error(format!("no catalog card carries the `{suite}` suite"));
    }
    // Reports are independent and internally deterministic: compute
    // them concurrently, print them in input order.
    let results: Vec<_> = cards
        .par_iter()
        .map(|card| run_report(card, suite, seed))
        .collect();
    let mut reports: Vec<Report> = Vec::with_capacity(results.len());
    for result in results {
        match result {
            Ok(r) => reports.push(r),
            Err(e) => return input_error(e.to_string()),
        }
    }
    if json {
        let rendered = if reports.len() == 1 {
            reports[0].to_json()
        } else {
            let mut text =
                serde_json::to_string_pretty(&reports).expect("reports serialize");
            text.push('\n');
            text
        };
        print!("{rendered}");
    } else {
        for (i, report) in reports.iter().enumerate() {
            if i > 0 {
                println!();
            }
            print!("{}", report.to_table());
        }
    }
    if reports.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILURE)
    }
}

fn cmd_catalog() -> ExitCode {
    for name in catalog::names() {
        match catalog::load(name) {
            Some(Ok(card)) => println!(
                "{:<18} {:<16} dimension {}",
                card.name,
                card.kind.to_string(),
                card.dimension
            ),
            _ => return input_error(format!("shipped card `{name}` failed to load")),
        }
    }
    ExitCode::SUCCESS
}

fn parse_point(text: &str, dim: usize) -> Result<Vec<Q>, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != dim {
        return Err(format!(
            "starting point has {} coordinates, the degree-one level has dimension {dim}",
            parts.len()
        ));
    }
    parts
        .iter()
        .map(|p| Q::from_str(p).map_err(|e| format!("bad rational `{p}`: {e}")))
        .collect()
}

fn pick_structure(
    structures: Vec<McpStructure>,
    wanted: Option<&str>,
) -> Result<McpStructure, String> {
    let available: Vec<String> = structures.iter().map(|s| s.flavor.to_string()).collect();
    match wanted {
        None => Ok(structures.into_iter().next().expect("cards carry structures")),
        Some(w) => structures
            .into_iter()
            .find(|s| s.flavor.to_string() == w)
            .ok_or(format!(
                "this card has no `{w}` structure; available: {}",
                available.join(", ")
            )),
    }
}

fn cmd_flow(
    spec: &str,
    hamiltonian: &str,
    steps: usize,
    h_text: &str,
    structure: Option<&str>,
    point: Option<&str>,
) -> ExitCode {
    let card = match resolve_card(spec) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    let structures = match card_structures(&card) {
        Ok(s) => s,
        Err(e) => return input_error(e.to_string()),
    };
    let s = match pick_structure(structures, structure) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    let n1 = s.lie().dim(1);
    let f = match Poly::parse(n1, hamiltonian) {
        Ok(f) => f,
        Err(e) => return input_error(format!("hamiltonian: {e}")),
    };
    let h = match Q::from_str(h_text) {
        Ok(h) => h,
        Err(e) => return input_error(format!("step size `{h_text}`: {e}")),
    };
    let mut x = match point {
        Some(text) => match parse_point(text, n1) {
            Ok(p) => p,
            Err(e) => return input_error(e),
        },
        None => s
            .distinguished_mc
            .first()
            .cloned()
            .unwrap_or_else(|| vec![Q::zero(); n1]),
    };
    if s.verify_structure(&x, false).is_err() {
        return input_error(
            "the starting point must solve the structure equations".to_string(),
        );
    }

    println!(
        "flow on {} ({}), hamiltonian {}, step {}, {} steps",
        card.name,
        s.flavor,
        f.render(),
        format_q(&h),
        steps
    );
    println!(
        "{:>4}  {:<22} {:<18} {:<22}",
        "step", "conservation (xdot,DH)", "linear residual", "hamiltonian value"
    );
    let mut conserved = true;
    for step in 1..=steps {
        let fs = s.flow_step(&x, &f, &h);
        let linear_zero = fs
            .twisted_derivative_of_velocity
            .iter()
            .all(|c| c.is_zero());
        if !fs.pairing_with_differential.is_zero() || !linear_zero {
            conserved = false;
        }
        println!(
            "{step:>4}  {:<22} {:<18} {:<22}",
            format_q(&fs.pairing_with_differential),
            if linear_zero { "0" } else { "nonzero" },
            format_q(&f.eval(&fs.new_point))
        );
        x = fs.new_point;
    }
    let final_residual = s.lie().mc_residual(&x);
    println!(
        "final point: [{}]",
        x.iter().map(format_q).collect::<Vec<_>>().join(", ")
    );
    if final_residual.is_zero() {
        println!("final point solves the structure equations exactly");
    } else {
        println!(
            "final point drifted off the cone at order h^2, residual d-part [{}], bracket-part [{}]",
            final_residual
                .d_part
                .iter()
                .map(format_q)
                .collect::<Vec<_>>()
                .join(", "),
            final_residual
                .bracket_part
                .iter()
                .map(format_q)
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    if conserved {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILURE)
    }
}
