//! `arcsys`: enumerate, classify, verify and render arc systems.
//!
//! Exit codes: 0 success, 1 failed check, 2 resource limit, 3 usage or I/O.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use arcsys::classification::match_paper_labels;
use arcsys::enumeration::{find_systems_with_budget, DEFAULT_NODE_BUDGET};
use arcsys::records::{systems_from_json, systems_to_json, OrbitReport, ReferenceFile};
use arcsys::reference::reference_json;
use arcsys::verify::{run, CheckStatus, VerifyOptions};
use arcsys::{classify, render_svg, ArcSystem, Engine, EngineMode, EnumerationError, View};

#[derive(Parser)]
#[command(name = "arcsys", version, about = "Arc systems on the four-punctured sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find all saturated k-systems at a complexity bound.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        k: u8,
        #[arg(long, default_value_t = 6)]
        bound: u32,
        /// Bound of the universe used to confirm saturation.
        #[arg(long = "check-bound", default_value_t = 12)]
        check_bound: u32,
        /// Clique-search node budget.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Group enumerated systems into symmetry classes.
    Classify {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every verification check and write the report.
    Verify {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Corrupt the closed-form engine to exercise the oracle check.
        #[arg(long = "inject-fault")]
        inject_fault: bool,
        /// Run only the given checks.
        #[arg(long = "check")]
        checks: Vec<u32>,
    },
    /// Draw systems as SVG.
    Render {
        /// A system list, an orbit report or a reference file.
        input: PathBuf,
        /// Output file; with several systems, numbered files next to it.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = ViewArg::Pillowcase)]
        view: ViewArg,
    },
    /// Write the reference systems rebuilt from their recipes.
    Reference {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ViewArg {
    Pillowcase,
    Disk,
}

enum Failure {
    Check(String),
    Resource(String),
    Usage(String),
}

impl From<EnumerationError> for Failure {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::ResourceLimit(_) => Failure::Resource(e.to_string()),
            EnumerationError::Bounds(_) => Failure::Usage(e.to_string()),
        }
    }
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_error(path, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| io_error(path, e))?;
    tmp.persist(path).map_err(|e| io_error(path, e.error))?;
    Ok(())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_error(path, e))
}

/// Accepts any of the JSON files the tool writes.
fn load_systems(path: &Path) -> Result<Vec<ArcSystem>, Failure> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| io_error(path, e))?;
    let result = if value.is_array() {
        systems_from_json(&text)
    } else if value.get("classes").is_some() {
        serde_json::from_value::<OrbitReport>(value)
            .map_err(arcsys::RecordError::from)
            .and_then(|r| r.classes.iter().map(|c| c.representative.to_system()).collect())
    } else {
        ReferenceFile::parse(&text).map(|v| v.into_iter().map(|(_, s)| s).collect())
    };
    result.map_err(|e| io_error(path, e))
}

fn numbered(path: &Path, i: usize) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("system");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("svg");
    path.with_file_name(format!("{stem}-{i:04}.{ext}"))
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Enumerate {
            k,
            bound,
            check_bound,
            budget,
            out,
        } => {
            let systems = find_systems_with_budget(k, bound, check_bound, budget)?;
            write_atomic(&out, &systems_to_json(&systems))?;
            println!("{} systems written to {}", systems.len(), out.display());
        }
        Command::Classify { input, out } => {
            let systems = load_systems(&input)?;
            let mut classes = classify(&systems);
            match_paper_labels(&mut classes);
            for c in &classes {
                println!(
                    "{:<10} members {:>4}  |J| {}  degrees {:?}  loops {}",
                    c.label.as_deref().unwrap_or("-"),
                    c.members,
                    c.fingerprint.j_size,
                    c.fingerprint.system_degrees.0,
                    c.fingerprint.loop_count
                );
            }
            println!("{} classes", classes.len());
            if let Some(out) = out {
                let mut text = serde_json::to_string_pretty(&OrbitReport::new(&classes)).expect("serializes");
                text.push('\n');
                write_atomic(&out, &text)?;
            }
        }
        Command::Verify {
            out,
            inject_fault,
            checks,
        } => {
            let engine = Engine {
                mode: if inject_fault { EngineMode::Corrupted } else { EngineMode::Exact },
            };
            let report = run(&VerifyOptions {
                engine,
                only: (!checks.is_empty()).then_some(checks),
            });
            for c in &report.checks {
                let tag = match c.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Reconciled => "RECONCILED",
                    CheckStatus::Fail => "FAIL",
                };
                println!("{tag:<10} [{:>2}] {}", c.id, c.name);
            }
            if let Some(out) = out {
                let mut text = serde_json::to_string_pretty(&report).expect("serializes");
                text.push('\n');
                write_atomic(&out, &text)?;
            }
            if !report.passed() {
                return Err(Failure::Check("verification failed".into()));
            }
        }
        Command::Render { input, out, view } => {
            let systems = load_systems(&input)?;
            let view = match view {
                ViewArg::Pillowcase => View::Pillowcase,
                ViewArg::Disk => View::Disk,
            };
            if systems.len() == 1 {
                write_atomic(&out, &render_svg(&systems[0], view))?;
            } else {
                for (i, s) in systems.iter().enumerate() {
                    write_atomic(&numbered(&out, i), &render_svg(s, view))?;
                }
            }
            println!("{} drawings written", systems.len());
        }
        Command::Reference { out } => {
            write_atomic(&out, &reference_json())?;
            println!("reference systems written to {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
