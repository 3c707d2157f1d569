//! `mxt`: matroid analysis from the command line.

mod commands;
mod document;
mod error;

use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use mxt_core::{Caps, Matroid};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::commands::Outcome;
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "mxt", version, about = "Locked subsets, bases polytope facets and maximum-weight bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Matroid document (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<String>,

    /// Ground-set cap for exponential enumeration.
    #[arg(long, global = true, value_name = "INT")]
    cap: Option<usize>,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Include wall-clock timings (reports are then no longer byte-stable).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, corank and closure of a subset.
    Rank {
        /// Comma-separated element indices, e.g. "0,2,3".
        #[arg(long)]
        subset: String,
    },
    /// Bases of the dual matroid.
    Dual,
    /// 2-connectivity, components and a separation if one exists.
    Connectivity,
    /// All locked subsets with certificates.
    Locked,
    /// Decide whether the number of locked sets is at most |E|^(k+1).
    #[command(name = "k-locked")]
    KLocked {
        #[arg(long)]
        k: u32,
    },
    /// The minimal facet system of the bases polytope.
    Facets,
    /// Compare the facet system with the brute-force convex hull.
    #[command(name = "verify-facets")]
    VerifyFacets,
    /// Run the separation oracle on a point.
    Separate {
        /// JSON array of rational strings.
        #[arg(long, value_name = "FILE")]
        point: String,
    },
    /// Maximum-weight basis by greedy, brute force and LP vertices.
    Mwbp {
        /// JSON array of rational strings, one per element.
        #[arg(long, value_name = "FILE")]
        weights: String,
    },
    /// Uniformity test.
    #[command(name = "is-uniform")]
    IsUniform,
    /// Search for a minor isomorphic to the target matroid.
    #[command(name = "has-minor")]
    HasMinor {
        #[arg(long, value_name = "FILE")]
        target: String,
    },
    /// Named matroids; without --name, lists the names.
    Catalog {
        #[arg(long)]
        name: Option<String>,
        /// Print only the matroid document.
        #[arg(long, requires = "name")]
        emit: bool,
    },
    /// Run every acceptance criterion.
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Rank { .. } => "rank",
            Command::Dual => "dual",
            Command::Connectivity => "connectivity",
            Command::Locked => "locked",
            Command::KLocked { .. } => "k-locked",
            Command::Facets => "facets",
            Command::VerifyFacets => "verify-facets",
            Command::Separate { .. } => "separate",
            Command::Mwbp { .. } => "mwbp",
            Command::IsUniform => "is-uniform",
            Command::HasMinor { .. } => "has-minor",
            Command::Catalog { .. } => "catalog",
            Command::Selftest => "selftest",
        }
    }

    fn args(&self) -> Value {
        match self {
            Command::Rank { subset } => json!({"subset": subset}),
            Command::KLocked { k } => json!({"k": k}),
            Command::Catalog { name, emit } => json!({"name": name, "emit": emit}),
            _ => json!({}),
        }
    }
}

fn caps_from(cap: Option<usize>) -> Caps {
    let d = Caps::default();
    match cap {
        None => d,
        Some(c) => Caps {
            ground: c,
            polyhedral: d.polyhedral.min(c),
            iso: d.iso.min(c),
        },
    }
}

/// Files read during a run, with their digests.
#[derive(Default)]
struct Inputs(Map<String, Value>);

impl Inputs {
    fn read(&mut self, role: &str, path: &str) -> Result<String, CliError> {
        let bytes = fs::read(path).map_err(|e| CliError::Input(format!("--{role} {path}: {e}")))?;
        let digest = hex::encode(Sha256::digest(&bytes));
        self.0.insert(role.to_string(), json!({"path": path, "sha256": digest}));
        String::from_utf8(bytes).map_err(|_| CliError::Input(format!("--{role} {path}: not UTF-8")))
    }
}

struct Run<'a> {
    cli: &'a Cli,
    caps: Caps,
    inputs: Inputs,
    matroid: Option<Matroid>,
}

impl Run<'_> {
    fn matroid(&mut self) -> Result<Matroid, CliError> {
        let path = self
            .cli
            .input
            .as_deref()
            .ok_or_else(|| CliError::Input(format!("{} needs --input FILE", self.cli.command.name())))?;
        let text = self.inputs.read("input", path)?;
        let m = document::parse_text(&text, self.caps)?;
        self.matroid = Some(m.clone());
        Ok(m)
    }

    fn execute(&mut self) -> Result<Outcome, CliError> {
        match &self.cli.command {
            Command::Rank { subset } => commands::rank(&self.matroid()?, subset),
            Command::Dual => commands::dual(&self.matroid()?),
            Command::Connectivity => commands::connectivity(&self.matroid()?),
            Command::Locked => commands::locked_sets(&self.matroid()?),
            Command::KLocked { k } => commands::k_locked(&self.matroid()?, *k),
            Command::Facets => commands::facets(&self.matroid()?),
            Command::VerifyFacets => commands::verify_facets(&self.matroid()?),
            Command::Separate { point } => {
                let m = self.matroid()?;
                let text = self.inputs.read("point", point)?;
                commands::separate(&m, &commands::parse_rational_list(&text, "--point")?)
            }
            Command::Mwbp { weights } => {
                let m = self.matroid()?;
                let text = self.inputs.read("weights", weights)?;
                commands::mwbp(&m, &commands::parse_rational_list(&text, "--weights")?)
            }
            Command::IsUniform => commands::is_uniform(&self.matroid()?),
            Command::HasMinor { target } => {
                let m = self.matroid()?;
                let text = self.inputs.read("target", target)?;
                let t = document::parse_text(&text, self.caps).map_err(|e| match e {
                    CliError::Input(msg) => CliError::Input(format!("--target {msg}")),
                    CliError::Cap(msg) => CliError::Cap(format!("--target {msg}")),
                })?;
                commands::has_minor(&m, &t)
            }
            Command::Catalog { name: None, .. } => Ok(commands::catalog_list()),
            Command::Catalog { name: Some(name), .. } => {
                let (m, outcome) = commands::catalog_entry(name)?;
                self.matroid = Some(m.with_caps(self.caps));
                Ok(outcome)
            }
            Command::Selftest => Ok(commands::selftest(self.cli.seed, self.cli.timing)),
        }
    }
}

fn report(run: &Run, outcome: Result<&Outcome, &CliError>, elapsed_ms: Option<u128>) -> Value {
    let cli = run.cli;
    let mut r = json!({
        "command": cli.command.name(),
        "args": cli.command.args(),
        "inputs": Value::Object(run.inputs.0.clone()),
        "caps": {"ground": run.caps.ground, "polyhedral": run.caps.polyhedral, "iso": run.caps.iso},
        "matroid": run.matroid.as_ref().map(|m| json!({"name": m.name(), "n": m.len(), "rank": m.full_rank()})),
    });
    if matches!(cli.command, Command::Selftest) {
        r["seed"] = Value::from(cli.seed);
    }
    match outcome {
        Ok(o) => r["result"] = o.result.clone(),
        Err(e) => r["error"] = json!({"kind": e.kind(), "message": e.message(), "exit_code": e.exit_code()}),
    }
    if let Some(ms) = elapsed_ms {
        r["timing_ms"] = Value::from(ms as u64);
    }
    r
}

fn render_text(run: &Run, outcome: Result<&Outcome, &CliError>, elapsed_ms: Option<u128>) -> String {
    let cli = run.cli;
    let mut lines = vec![format!("command: {}", cli.command.name())];
    for (role, v) in &run.inputs.0 {
        lines.push(format!(
            "{role}: {} (sha256 {})",
            v["path"].as_str().unwrap_or(""),
            v["sha256"].as_str().unwrap_or("")
        ));
    }
    if let Some(m) = &run.matroid {
        lines.push(format!(
            "matroid: {} n = {} rank = {}",
            m.name().unwrap_or("-"),
            m.len(),
            m.full_rank()
        ));
    }
    if matches!(cli.command, Command::Selftest) {
        lines.push(format!("seed: {}", cli.seed));
    }
    lines.push(format!(
        "caps: ground {} polyhedral {} iso {}",
        run.caps.ground, run.caps.polyhedral, run.caps.iso
    ));
    match outcome {
        Ok(o) => lines.extend(o.text.iter().cloned()),
        Err(e) => lines.push(format!("error: {e}")),
    }
    if let Some(ms) = elapsed_ms {
        lines.push(format!("time: {ms} ms"));
    }
    lines.join("\n") + "\n"
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut run = Run {
        cli: &cli,
        caps: caps_from(cli.cap),
        inputs: Inputs::default(),
        matroid: None,
    };
    let outcome = run.execute();

    if let (Command::Catalog { emit: true, .. }, Ok(o)) = (&cli.command, &outcome) {
        let doc = &o.result["document"];
        println!("{}", serde_json::to_string_pretty(doc).expect("JSON values serialize"));
        return ExitCode::SUCCESS;
    }

    let elapsed = cli.timing.then(|| start.elapsed().as_millis());
    let out = match cli.format {
        Format::Json => {
            let r = report(&run, outcome.as_ref(), elapsed);
            serde_json::to_string_pretty(&r).expect("JSON values serialize") + "\n"
        }
        Format::Text => render_text(&run, outcome.as_ref(), elapsed),
    };
    let code = match &outcome {
        Ok(o) if o.failed => 4,
        Ok(_) => 0,
        Err(e) => {
            eprintln!("mxt: {e}");
            e.exit_code()
        }
    };
    let mut stdout = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = stdout.write_all(out.as_bytes());
    ExitCode::from(code as u8)
}
