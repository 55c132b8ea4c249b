//! `hodge` — exact classification of Hodge structure degenerations from
//! the command line.
//!
//! Exit status: 0 = success / relation holds, 1 = negative verdict
//! (relation fails, a check fails, golden mismatch), 2 = invalid input.

mod docs;
mod render;
mod scenarios;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use hodge_core::{
    check_pmhs, diamond_of, enumerate_diamonds, orbit_probe, polarized_leq, realize_diamond,
    relation_digraph, validate_hodge_numbers, Diamond, HodgeNumbers, RealizeError, RelationError,
};

use docs::{parse_probe_scalar, to_json, DiamondDocument, DocError, WitnessDocument};
use render::{diamond_label, digraph_json, dot_digraph};
use scenarios::scenarios;

#[derive(Parser)]
#[command(
    name = "hodge",
    version,
    about = "Enumerate Hodge diamonds, decide degeneracy relations, and build exact witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List every Hodge diamond of a period domain in canonical order
    Enumerate {
        /// Hodge numbers from h^{n,0} down to h^{0,n}, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        hodge: Vec<u64>,
        /// Weight; inferred as (number of Hodge numbers) - 1 when omitted
        #[arg(long)]
        weight: Option<i64>,
        /// Write the JSON document here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decide whether the left diamond degenerates to the right one
    Relate {
        left: PathBuf,
        right: PathBuf,
        /// Dump the witnessing level decomposition when the relation holds
        #[arg(long)]
        witness: bool,
    },
    /// Emit the relation digraph of a period domain
    Digraph {
        #[arg(long, value_delimiter = ',', required = true)]
        hodge: Vec<u64>,
        #[arg(long)]
        weight: Option<i64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Keep only edges with no intermediate node
        #[arg(long)]
        covers_only: bool,
        /// Refuse domains with more diamonds than this
        #[arg(long, default_value_t = 64)]
        cap: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Realize a diamond as an explicit witness and verify every axiom
    Realize {
        /// Diamond JSON document
        input: PathBuf,
        /// Write the witness JSON document here
        #[arg(long)]
        output: Option<PathBuf>,
        /// Complex rational samples for the orbit membership probe
        #[arg(long, value_delimiter = ',')]
        probe: Vec<String>,
    },
    /// Regenerate the built-in scenarios and diff them against goldens
    Examples {
        /// Also write the generated files into this directory
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Document(#[from] DocError),
    #[error("{0}")]
    Relation(#[from] RelationError),
    #[error("{0}")]
    Realize(#[from] RealizeError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "invalid-input",
            CliError::Document(_) => "invalid-document",
            CliError::Relation(_) => "relation",
            CliError::Realize(_) => "realize",
            CliError::Io(_) => "io",
            CliError::Json(_) => "json",
        }
    }
}

fn domain_from_flags(hodge: &[u64], weight: Option<i64>) -> Result<HodgeNumbers, CliError> {
    let n = weight.unwrap_or(hodge.len() as i64 - 1);
    if hodge.len() as i64 != n + 1 {
        return Err(CliError::Usage(format!(
            "{} Hodge numbers given, expected weight + 1 = {}",
            hodge.len(),
            n + 1
        )));
    }
    let h = HodgeNumbers::from_row(hodge);
    let violations = validate_hodge_numbers(&h);
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(CliError::Usage(format!(
            "invalid Hodge numbers: {}",
            list.join("; ")
        )));
    }
    Ok(h)
}

fn emit(output: Option<&Path>, content: &str) -> Result<bool, CliError> {
    match output {
        Some(path) => {
            fs::write(path, content)?;
            Ok(true)
        }
        None => {
            print!("{content}");
            Ok(false)
        }
    }
}

fn load_diamond(path: &Path) -> Result<(HodgeNumbers, Diamond, DiamondDocument), CliError> {
    let text = fs::read_to_string(path)?;
    let doc: DiamondDocument = serde_json::from_str(&text)?;
    let h = doc.domain()?;
    let d = doc.diamond()?;
    Ok((h, d, doc))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Enumerate {
            hodge,
            weight,
            output,
        } => {
            let h = domain_from_flags(&hodge, weight)?;
            let diamonds =
                enumerate_diamonds(&h).map_err(|e| CliError::Usage(e.to_string()))?;
            let docs: Vec<DiamondDocument> = diamonds
                .iter()
                .map(|d| DiamondDocument::from_core(&h, d))
                .collect();
            let json = to_json(&docs);
            let wrote = emit(output.as_deref(), &json)?;
            let plural = if diamonds.len() == 1 { "" } else { "s" };
            let summary = format!("{} diamond{plural}", diamonds.len());
            if wrote {
                println!("{summary}");
            } else {
                eprintln!("{summary}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Relate {
            left,
            right,
            witness,
        } => {
            let (h_left, d_left, doc_left) = load_diamond(&left)?;
            let (_, d_right, doc_right) = load_diamond(&right)?;
            if doc_left.weight != doc_right.weight
                || doc_left.hodge_numbers != doc_right.hodge_numbers
            {
                return Err(CliError::Usage(
                    "the two documents live on different period domains".to_string(),
                ));
            }
            let result = polarized_leq(&d_left, &d_right, &h_left)?;
            let l = diamond_label(&h_left, &d_left);
            let r = diamond_label(&h_left, &d_right);
            if result.holds {
                println!("{l} \u{2AAF} {r}");
                if witness {
                    for (level, part) in result.witness.unwrap_or_default() {
                        println!(
                            "level {level} (weight {}): {part}",
                            h_left.weight() + level
                        );
                    }
                }
                Ok(ExitCode::SUCCESS)
            } else {
                println!("{l} \u{22E0} {r}");
                Ok(ExitCode::from(1))
            }
        }
        Command::Digraph {
            hodge,
            weight,
            format,
            covers_only,
            cap,
            output,
        } => {
            let h = domain_from_flags(&hodge, weight)?;
            let g = relation_digraph(&h, cap)?;
            let content = match format {
                Format::Dot => dot_digraph(&g, covers_only),
                Format::Json => digraph_json(&g, covers_only),
            };
            let emitted = if covers_only {
                g.cover_edges().len()
            } else {
                g.edges.len()
            };
            let wrote = emit(output.as_deref(), &content)?;
            if wrote {
                println!("{} nodes, {} edges", g.node_count(), emitted);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Realize {
            input,
            output,
            probe,
        } => {
            let (h, d, _) = load_diamond(&input)?;
            let w = realize_diamond(&h, &d)?;
            let report = check_pmhs(&w);
            print!("{report}");
            let recovered = diamond_of(&w).ok();
            let round_trip = recovered.as_ref() == Some(&d);
            if round_trip {
                println!("ok   diamond recovered from the splitting");
            } else {
                println!("FAIL recovered diamond differs from the input");
            }
            if !probe.is_empty() {
                let samples = probe
                    .iter()
                    .map(|s| parse_probe_scalar(s))
                    .collect::<Result<Vec<_>, _>>()?;
                let probe_report = orbit_probe(&w, &samples);
                println!(
                    "info horizontality N(F^p) within F^(p-1): {}",
                    probe_report.horizontal
                );
                for sample in &probe_report.samples {
                    let verdict = if sample.in_domain {
                        "inside the period domain"
                    } else {
                        "outside the period domain"
                    };
                    println!("probe z = {}: {verdict}", sample.z);
                }
            }
            if let Some(path) = output {
                let rendered = to_json(&WitnessDocument::from_core(&w));
                fs::write(&path, &rendered)?;
                let reparsed: WitnessDocument = serde_json::from_str(&rendered)?;
                if reparsed.to_core()? != w {
                    return Err(CliError::Usage(
                        "witness document did not round-trip".to_string(),
                    ));
                }
                println!("witness written to {}", path.display());
            }
            if report.passed() && round_trip {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Examples { output } => {
            if let Some(dir) = &output {
                fs::create_dir_all(dir)?;
            }
            let mut all_ok = true;
            for scenario in scenarios() {
                let generated = (scenario.generate)();
                if let Some(dir) = &output {
                    fs::write(dir.join(scenario.file), &generated)?;
                }
                if generated == scenario.golden {
                    println!("ok       {}", scenario.name);
                } else {
                    println!("MISMATCH {}", scenario.name);
                    all_ok = false;
                }
            }
            if all_ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error[{}]: {err}", err.code());
            ExitCode::from(2)
        }
    }
}
