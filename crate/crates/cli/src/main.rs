//! Command-line front end: one verb per engine module plus the aggregate
//! verify suite. Plain mode prints aligned tables; `--json` emits one
//! machine-readable document. Exit codes: 0 pass, 1 check failure,
//! 2 usage/input error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spinverify::euler::{format_rational, LedgerBook};
use spinverify::graphs::enumerate_strata;
use spinverify::induction::{base_cases, resolve_betti, window_reports, BettiConstraintSystem, BettiResolution};
use spinverify::spin::{enumerate_boundary, pic_generators, SpinSignature};
use spinverify::verify::{run_suite, Check, Suite};
use spinverify::arf::{count_by_arf, theta_counts_closed_form, transvection_orbits};

#[derive(Parser)]
#[command(name = "spinverify", version, about = "Exact verification engine for spin moduli combinatorics")]
struct Cli {
    /// Emit one JSON document instead of text tables
    #[arg(long, global = true)]
    json: bool,
    /// Suppress output; communicate through the exit code only
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the stable dual graphs of genus g with n markings
    Strata { g: u32, n: u32 },
    /// Enumerate the boundary divisor types of a spin space
    Boundary {
        g: u32,
        n: u32,
        /// twist vector m_1 .. m_n (each 0 or 1)
        twists: Vec<u8>,
    },
    /// Theta-characteristic counts and transvection orbits at genus g
    Arf { g: u32 },
    /// Evaluate chi ledgers: a bundled ledger name, a book file path, or
    /// the whole bundled book (default)
    Euler {
        #[arg(default_value = "book")]
        target: String,
    },
    /// Vanishing reports and base cases for degree k over a window
    Plan { k: u32, g_max: u32, n_max: u32 },
    /// Resolve a Betti constraint system from a JSON file
    Betti { file: PathBuf },
    /// Count the free Picard generators of a spin space
    PicRank {
        g: u32,
        n: u32,
        /// twist vector m_1 .. m_n (each 0 or 1)
        twists: Vec<u8>,
    },
    /// Run a bundled verification suite
    Verify { suite: SuiteArg },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Boundary,
    Arf,
    Euler,
    Induction,
    Relations,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Boundary => Suite::Boundary,
            SuiteArg::Arf => Suite::Arf,
            SuiteArg::Euler => Suite::Euler,
            SuiteArg::Induction => Suite::Induction,
            SuiteArg::Relations => Suite::Relations,
            SuiteArg::All => Suite::All,
        }
    }
}

struct Output {
    command: String,
    inputs: Value,
    results: Value,
    checks: Vec<Check>,
    pass: bool,
    lines: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(output) => {
            if !cli.quiet {
                use std::io::Write;
                let stdout = std::io::stdout();
                let mut out = stdout.lock();
                let result = if cli.json {
                    let doc = json!({
                        "command": output.command,
                        "inputs": output.inputs,
                        "results": output.results,
                        "checks": output.checks,
                        "pass": output.pass,
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))
                } else {
                    output.lines.iter().try_for_each(|line| writeln!(out, "{line}"))
                };
                // a closed pipe on the reading end is not our failure
                drop(result);
            }
            if output.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            if !cli.quiet {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(2)
        }
    }
}

fn signature_from(g: u32, n: u32, twists: &[u8]) -> Result<SpinSignature> {
    if twists.len() != n as usize {
        return Err(anyhow!(
            "expected {n} twist values, got {}",
            twists.len()
        ));
    }
    SpinSignature::new(g, twists.to_vec()).map_err(|e| anyhow!(e))
}

fn run(command: &Command) -> Result<Output> {
    match command {
        Command::Strata { g, n } => {
            let strata = enumerate_strata(*g, *n).map_err(|e| anyhow!(e))?;
            let mut lines = vec![format!(
                "{} stable graph classes for (g, n) = ({g}, {n})",
                strata.len()
            )];
            lines.push(format!("{:<8} {:<6} {}", "edges", "|Aut|", "record"));
            for s in &strata {
                lines.push(format!(
                    "{:<8} {:<6} {}",
                    s.num_edges(),
                    s.automorphism_count(),
                    s.to_record()
                ));
            }
            Ok(Output {
                command: "strata".into(),
                inputs: json!({"g": g, "n": n}),
                results: json!({
                    "count": strata.len(),
                    "classes": strata.iter().map(|s| json!({
                        "record": s.to_record(),
                        "edges": s.num_edges(),
                        "automorphisms": s.automorphism_count(),
                    })).collect::<Vec<_>>(),
                }),
                checks: vec![],
                pass: true,
                lines,
            })
        }
        Command::Boundary { g, n, twists } => {
            let sig = signature_from(*g, *n, twists)?;
            let types = enumerate_boundary(&sig).map_err(|e| anyhow!(e))?;
            let mut lines = vec![format!("{} boundary divisor types for {sig}", types.len())];
            for t in &types {
                lines.push(t.to_record());
            }
            Ok(Output {
                command: "boundary".into(),
                inputs: json!({"g": g, "n": n, "twists": twists}),
                results: json!({
                    "count": types.len(),
                    "types": types,
                    "records": types.iter().map(|t| t.to_record()).collect::<Vec<_>>(),
                }),
                checks: vec![],
                pass: true,
                lines,
            })
        }
        Command::Arf { g } => {
            let counts = count_by_arf(*g).map_err(|e| anyhow!(e))?;
            let closed = theta_counts_closed_form(*g);
            let mut lines = vec![
                format!("genus {g}: {} even forms, {} odd forms", counts.0, counts.1),
                format!("closed form: {} even, {} odd", closed.0, closed.1),
            ];
            let orbits = if *g <= 3 {
                let partition = transvection_orbits(*g).map_err(|e| anyhow!(e))?;
                for orbit in &partition.orbits {
                    lines.push(format!(
                        "orbit: size {:<4} arf {} representative {}",
                        orbit.size, orbit.arf, orbit.representative
                    ));
                }
                Some(partition)
            } else {
                lines.push("transvection orbits computed for g <= 3 only".into());
                None
            };
            let pass = counts == closed;
            Ok(Output {
                command: "arf".into(),
                inputs: json!({"g": g}),
                results: json!({
                    "even": counts.0,
                    "odd": counts.1,
                    "closed_form": {"even": closed.0, "odd": closed.1},
                    "orbits": orbits,
                }),
                checks: vec![],
                pass,
                lines,
            })
        }
        Command::Euler { target } => {
            let builtin = LedgerBook::builtin();
            let (book, filter) = if target == "book" {
                (builtin, None)
            } else if builtin.find(target).is_some() {
                (builtin, Some(target.clone()))
            } else {
                let text = std::fs::read_to_string(target)
                    .with_context(|| format!("reading ledger book `{target}`"))?;
                (LedgerBook::from_json(&text).map_err(|e| anyhow!(e))?, None)
            };
            let outcomes = book.eval_all().map_err(|e| anyhow!(e))?;
            let selected: Vec<_> = outcomes
                .iter()
                .filter(|o| filter.as_deref().is_none_or(|name| o.name == name))
                .cloned()
                .collect();
            let mut lines = vec![format!("{:<24} {:<10} {:<10} {}", "ledger", "value", "expected", "status")];
            for o in &selected {
                lines.push(format!(
                    "{:<24} {:<10} {:<10} {}",
                    o.name,
                    format_rational(&o.value),
                    format_rational(&o.expected),
                    if o.pass { "pass" } else { "FAIL" }
                ));
            }
            let pass = selected.iter().all(|o| o.pass) && !selected.is_empty();
            Ok(Output {
                command: "euler".into(),
                inputs: json!({"target": target}),
                results: json!({"outcomes": selected}),
                checks: vec![],
                pass,
                lines,
            })
        }
        Command::Plan { k, g_max, n_max } => {
            let reports = window_reports(*k, *g_max, *n_max);
            let bases = base_cases(*k, *g_max, *n_max);
            let mut lines = vec![format!(
                "degree {k} over g <= {g_max}, n <= {n_max}: {} base cases",
                bases.len()
            )];
            lines.push(format!(
                "{:<4} {:<4} {:<6} {:<6} {:<10} {}",
                "g", "n", "c", "dim", "vanishes", "flagged"
            ));
            for r in &reports {
                lines.push(format!(
                    "{:<4} {:<4} {:<6} {:<6} {:<10} {}",
                    r.g, r.n, r.c_value, r.complex_dim, r.vanishes, r.flagged
                ));
            }
            lines.push(format!("base cases: {bases:?}"));
            Ok(Output {
                command: "plan".into(),
                inputs: json!({"k": k, "g_max": g_max, "n_max": n_max}),
                results: json!({"reports": reports, "base_cases": bases}),
                checks: vec![],
                pass: true,
                lines,
            })
        }
        Command::Betti { file } => {
            let text = std::fs::read_to_string(file)
                .with_context(|| format!("reading constraint file `{}`", file.display()))?;
            let system = BettiConstraintSystem::from_json(&text)
                .with_context(|| "parsing constraint file")?;
            let resolution = resolve_betti(&system);
            let (line, pass) = match &resolution {
                BettiResolution::Unique { betti } => (format!("unique solution: {betti:?}"), true),
                BettiResolution::Ambiguous { first, second } => (
                    format!("ambiguous: {first:?} and {second:?} both satisfy the system"),
                    false,
                ),
                BettiResolution::Infeasible => ("infeasible".to_string(), false),
            };
            Ok(Output {
                command: "betti".into(),
                inputs: json!({"file": file.display().to_string(), "system": system}),
                results: json!({"resolution": resolution}),
                checks: vec![],
                pass,
                lines: vec![line],
            })
        }
        Command::PicRank { g, n, twists } => {
            let sig = signature_from(*g, *n, twists)?;
            let generators = pic_generators(&sig).map_err(|e| anyhow!(e))?;
            let mut lines = vec![format!(
                "{} free generators for {sig}{}",
                generators.labels.len(),
                if generators.low_genus_caveat {
                    " (caveat: freeness asserted only for g >= 5)"
                } else {
                    ""
                }
            )];
            lines.push(generators.labels.join(", "));
            Ok(Output {
                command: "pic-rank".into(),
                inputs: json!({"g": g, "n": n, "twists": twists}),
                results: json!({
                    "count": generators.labels.len(),
                    "low_genus_caveat": generators.low_genus_caveat,
                    "labels": generators.labels,
                }),
                checks: vec![],
                pass: true,
                lines,
            })
        }
        Command::Verify { suite } => {
            let report = run_suite((*suite).into());
            let mut lines = vec![format!(
                "suite {}: {} checks, {}",
                report.suite,
                report.checks.len(),
                if report.pass { "pass" } else { "FAIL" }
            )];
            for c in &report.checks {
                lines.push(format!(
                    "[{}] {:<40} expected {} | got {}",
                    if c.pass { "ok" } else { "FAIL" },
                    c.name,
                    c.expected,
                    c.got
                ));
            }
            Ok(Output {
                command: "verify".into(),
                inputs: json!({"suite": report.suite}),
                results: json!({"duration_ms": report.duration_ms}),
                pass: report.pass,
                checks: report.checks,
                lines,
            })
        }
    }
}
