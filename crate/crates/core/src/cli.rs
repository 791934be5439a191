//! Command-line front end.
//!
//! Subcommands: `graph`, `generators`, `verify`, `orbits`, `components`,
//! `report`. Data goes to stdout (or `--out`), diagnostics and timings to
//! stderr. Exit codes: 0 on success, 1 when a verification check fails,
//! 2 on invalid input. `HITCHIN_MONODROMY_THREADS` sets the worker count
//! for orbit enumeration (default 1).

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::graph::SpectralGraph;
use crate::io;
use crate::monodromy;
use crate::orbits;
use crate::report::{CheckResult, RunReport, ValidationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;

const THREADS_ENV: &str = "HITCHIN_MONODROMY_THREADS";

#[derive(Parser)]
#[command(
    name = "hitchin-monodromy",
    version,
    about = "Spectral ring graph and mod 2 monodromy of the SL(2,C) Hitchin fibration",
    after_help = "Environment:\n  HITCHIN_MONODROMY_THREADS  worker threads for orbit enumeration (default 1)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build the ring graph for a genus (or load one) and emit it
    Graph {
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Load the graph from a JSON file instead of building it
        #[arg(long)]
        graph_file: Option<PathBuf>,
        /// Write the output to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the monodromy generators: matrices, vertex transpositions
    Generators {
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        graph_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification checks and emit a machine-readable report
    Verify {
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        graph_file: Option<PathBuf>,
        /// Comma-separated check groups: graph, coxeter, triviality, block,
        /// kernel, symmetric (default: all)
        #[arg(long)]
        checks: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orbit census of the monodromy action on P[2]
    Orbits {
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        graph_file: Option<PathBuf>,
        /// Exhaustive sweep over all 2^(6g-6) points (genus 3..5)
        #[arg(long, conflicts_with = "classify")]
        enumerate: bool,
        /// Census from the complete orbit invariant, any genus
        #[arg(long)]
        classify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Connected-component counts of the real moduli space
    Components {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full report: every verification group plus orbits and components
    Report {
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        graph_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure that already knows its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID_INPUT,
            message: message.into(),
        }
    }

    fn check(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CHECK_FAILED,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::UnsupportedGenus(g) => Failure::invalid(format!("genus >= 3 required, got {g}")),
            Error::Io(_) | Error::Json(_) | Error::InvalidGraphData(_) | Error::InvalidEdge(_) => {
                Failure::invalid(err.to_string())
            }
            other => Failure::check(other.to_string()),
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_INVALID_INPUT
            } else {
                EXIT_OK
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn dispatch(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Graph {
            genus,
            format,
            graph_file,
            out,
        } => cmd_graph(genus, format, graph_file, out),
        Command::Generators {
            genus,
            format,
            graph_file,
            out,
        } => cmd_generators(genus, format, graph_file, out),
        Command::Verify {
            genus,
            graph_file,
            checks,
            out,
        } => cmd_verify(genus, graph_file, checks, out),
        Command::Orbits {
            genus,
            graph_file,
            enumerate,
            classify,
            out,
        } => cmd_orbits(genus, graph_file, enumerate, classify, out),
        Command::Components { genus, out } => cmd_components(genus, out),
        Command::Report {
            genus,
            graph_file,
            out,
        } => cmd_report(genus, graph_file, out),
    }
}

fn threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n: &usize| n >= 1)
        .unwrap_or(1)
}

fn emit(out: &Option<PathBuf>, data: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, data)
            .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn load_graph(
    genus: Option<usize>,
    graph_file: &Option<PathBuf>,
) -> Result<SpectralGraph, Failure> {
    match graph_file {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
            let graph = io::graph_from_json(&text)?;
            if let Some(g) = genus {
                if g != graph.genus() {
                    return Err(Failure::invalid(format!(
                        "--genus {g} conflicts with genus {} from {}",
                        graph.genus(),
                        path.display()
                    )));
                }
            }
            Ok(graph)
        }
        None => {
            let g = genus
                .ok_or_else(|| Failure::invalid("either --genus or --graph-file is required"))?;
            if g < 3 {
                return Err(Failure::invalid("genus >= 3 required"));
            }
            Ok(SpectralGraph::build(g)?)
        }
    }
}

fn report_json(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization");
    s.push('\n');
    s
}

fn finish_report(report: RunReport, out: &Option<PathBuf>) -> Result<i32, Failure> {
    let ok = report.all_passed();
    emit(out, &report_json(&report))?;
    if !ok {
        for check in report.checks.iter().filter(|c| !c.pass) {
            eprintln!(
                "failed: {} ({})",
                check.name,
                check.witness.as_deref().unwrap_or("no witness")
            );
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_graph(
    genus: Option<usize>,
    format: Format,
    graph_file: Option<PathBuf>,
    out: Option<PathBuf>,
) -> Result<i32, Failure> {
    let graph = load_graph(genus, &graph_file)?;
    let text = match format {
        Format::Json => io::graph_to_json(&graph),
        Format::Dot => io::graph_to_dot(&graph),
        Format::Text => {
            let triangles = graph.faces().iter().filter(|f| f.len() == 3).count();
            let quads = graph.faces().iter().filter(|f| f.len() == 4).count();
            let mut s = format!(
                "genus {}: {} vertices, {} edges, {} faces ({} triangles, {} quadrilaterals)\n",
                graph.genus(),
                graph.vertex_count(),
                graph.edges().len(),
                graph.faces().len(),
                triangles,
                quads
            );
            if let Some(ham) = graph.hamiltonian_edges() {
                let labels: Vec<String> = ham
                    .iter()
                    .map(|&id| graph.edges()[id].label.to_string())
                    .collect();
                let _ = writeln!(s, "hamiltonian cycle: {}", labels.join(" "));
                let e0: Vec<String> = graph
                    .e0_edges()
                    .iter()
                    .map(|&id| graph.edges()[id].label.to_string())
                    .collect();
                let _ = writeln!(s, "complement E0: {}", e0.join(" "));
            }
            s
        }
    };
    emit(&out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_generators(
    genus: Option<usize>,
    format: Format,
    graph_file: Option<PathBuf>,
    out: Option<PathBuf>,
) -> Result<i32, Failure> {
    let graph = load_graph(genus, &graph_file)?;
    let validation = graph.validate();
    if !validation.all_passed() {
        let failed: Vec<&str> = validation.failures().map(|c| c.name.as_str()).collect();
        return Err(Failure::check(format!(
            "graph fails validation: {}",
            failed.join(", ")
        )));
    }
    let gens = monodromy::generators(&graph)?;
    let text = match format {
        Format::Json => {
            let entries: Vec<serde_json::Value> = gens
                .iter()
                .enumerate()
                .map(|(id, g)| {
                    let e = &graph.edges()[id];
                    let rows: Vec<String> = (0..g.matrix.rows())
                        .map(|r| g.matrix.row(r).to_string())
                        .collect();
                    json!({
                        "edge": id,
                        "label": e.label.to_string(),
                        "ends": [e.ends.0, e.ends.1],
                        "transposition": g.perm.cycle_string(),
                        "matrix_rows": rows,
                    })
                })
                .collect();
            let doc = json!({ "genus": graph.genus(), "generators": entries });
            let mut s = serde_json::to_string_pretty(&doc).expect("serialization");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (id, g) in gens.iter().enumerate() {
                let fixed = (0..g.matrix.cols())
                    .filter(|&c| g.matrix.column(c) == crate::gf2::BitVec::unit(g.matrix.rows(), c))
                    .count();
                let _ = writeln!(
                    s,
                    "sigma_{}: swaps {}, fixes {} of {} basis chains",
                    graph.edges()[id].label,
                    g.perm.cycle_string(),
                    fixed,
                    g.matrix.cols()
                );
            }
            s
        }
        Format::Dot => return Err(Failure::invalid("generators have no dot format")),
    };
    emit(&out, &text)?;
    Ok(EXIT_OK)
}

const CHECK_GROUPS: &[&str] = &[
    "graph",
    "coxeter",
    "triviality",
    "block",
    "kernel",
    "symmetric",
];

fn parse_check_groups(checks: &Option<String>) -> Result<Vec<&'static str>, Failure> {
    match checks {
        None => Ok(CHECK_GROUPS.to_vec()),
        Some(list) => {
            let mut selected = Vec::new();
            for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                match CHECK_GROUPS.iter().find(|&&g| g == name) {
                    Some(&g) => {
                        if !selected.contains(&g) {
                            selected.push(g);
                        }
                    }
                    None => {
                        return Err(Failure::invalid(format!(
                            "unknown check group '{name}' (known: {})",
                            CHECK_GROUPS.join(", ")
                        )))
                    }
                }
            }
            if selected.is_empty() {
                return Err(Failure::invalid("empty check selection"));
            }
            Ok(selected)
        }
    }
}

/// Runs the selected verification groups against a graph. Library-level
/// failures (rank deficiencies, block violations) become failed checks
/// rather than hard errors, so the report always lists what was attempted.
fn run_checks(graph: &SpectralGraph, groups: &[&str]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut timings = String::new();
    let t = Instant::now();
    let validation = graph.validate();
    let graph_ok = validation.all_passed();
    if groups.contains(&"graph") {
        report.extend(validation);
    }
    let _ = write!(timings, "graph {:.1?}", t.elapsed());

    let needs_monodromy = groups.iter().any(|g| *g != "graph");
    if needs_monodromy && !graph_ok {
        for group in groups.iter().filter(|g| **g != "graph") {
            report.push(CheckResult::fail(
                &format!("{group}_skipped"),
                "graph validation failed",
            ));
        }
    } else if needs_monodromy {
        let genus = graph.genus();
        let basis = match monodromy::adapted_basis(graph) {
            Ok(b) => Some(b),
            Err(e) => {
                report.push(CheckResult::fail("adapted_basis", e.to_string()));
                None
            }
        };
        for &group in groups {
            if group == "graph" {
                continue;
            }
            let t = Instant::now();
            match group {
                "coxeter" => match monodromy::coxeter_check(graph) {
                    Ok(r) => report.extend(r),
                    Err(e) => report.push(CheckResult::fail("coxeter", e.to_string())),
                },
                "triviality" => {
                    if let Some(basis) = &basis {
                        match monodromy::triviality_check(graph, basis) {
                            Ok(r) => report.extend(r),
                            Err(e) => report.push(CheckResult::fail("triviality", e.to_string())),
                        }
                    }
                }
                "block" => {
                    if let Some(basis) = &basis {
                        match monodromy::block_check(graph, basis, 100, 50, 0xb10c + genus as u64) {
                            Ok(r) => report.extend(r),
                            Err(e) => report.push(CheckResult::fail("block", e.to_string())),
                        }
                    }
                }
                "kernel" => {
                    if let Some(basis) = &basis {
                        match monodromy::kernel_rank_certificate(graph, basis) {
                            Ok(rank) => {
                                let target = 2 * genus * (4 * genus - 6);
                                report.push(CheckResult::from_outcome(
                                    "kernel_rank",
                                    rank == target,
                                    format!("A-block span has rank {rank}, expected {target}"),
                                ));
                            }
                            Err(e) => report.push(CheckResult::fail("kernel_rank", e.to_string())),
                        }
                    }
                }
                "symmetric" => match monodromy::symmetric_order_check(graph) {
                    Ok(r) => report.extend(r),
                    Err(e) => {
                        report.push(CheckResult::fail("symmetric_group_order", e.to_string()))
                    }
                },
                _ => unreachable!("unknown group"),
            }
            let _ = write!(timings, ", {group} {:.1?}", t.elapsed());
        }
        if report.all_passed()
            && ["block", "kernel", "symmetric"]
                .iter()
                .all(|g| groups.contains(g))
        {
            report.push(CheckResult::pass_with(
                "predicted_group_order",
                monodromy::predicted_group_order(genus).to_string(),
            ));
        }
    }
    eprintln!("timings: {timings}");
    report
}

fn cmd_verify(
    genus: Option<usize>,
    graph_file: Option<PathBuf>,
    checks: Option<String>,
    out: Option<PathBuf>,
) -> Result<i32, Failure> {
    let groups = parse_check_groups(&checks)?;
    let graph = load_graph(genus, &graph_file)?;
    let mut report = RunReport::new("verify", graph.genus());
    report.checks = run_checks(&graph, &groups).checks;
    finish_report(report, &out)
}

fn cmd_orbits(
    genus: Option<usize>,
    graph_file: Option<PathBuf>,
    enumerate: bool,
    classify: bool,
    out: Option<PathBuf>,
) -> Result<i32, Failure> {
    let graph = load_graph(genus, &graph_file)?;
    let g = graph.genus();
    let enumerate = enumerate || (!classify && g <= orbits::MAX_ENUMERATION_GENUS);
    let orbit_report = if enumerate {
        if g > orbits::MAX_ENUMERATION_GENUS {
            return Err(Failure::invalid(format!(
                "exhaustive enumeration is capped at genus {}; use --classify for genus {g}",
                orbits::MAX_ENUMERATION_GENUS
            )));
        }
        let basis = monodromy::adapted_basis(&graph)?;
        orbits::enumerate(&graph, &basis, threads())?
    } else {
        orbits::classified_census(g)
    };
    let mut s = serde_json::to_string_pretty(&orbit_report).expect("serialization");
    s.push('\n');
    emit(&out, &s)?;
    Ok(EXIT_OK)
}

fn cmd_components(genus: usize, out: Option<PathBuf>) -> Result<i32, Failure> {
    if genus < 2 {
        return Err(Failure::invalid("genus >= 2 required"));
    }
    let counts = orbits::component_count(genus)?;
    // cross-check against the enumerated orbit count where that is cheap
    let (cross_check, ok) = if (3..=4).contains(&genus) {
        let graph = SpectralGraph::build(genus)?;
        let basis = monodromy::adapted_basis(&graph)?;
        let enumerated = orbits::enumerate(&graph, &basis, threads())?;
        if enumerated.orbit_count == counts.as_complex {
            (
                format!(
                    "agrees with enumeration ({} orbits)",
                    enumerated.orbit_count
                ),
                true,
            )
        } else {
            (
                format!(
                    "enumeration found {} orbits, formula gives {}",
                    enumerated.orbit_count, counts.as_complex
                ),
                false,
            )
        }
    } else if genus == 2 {
        ("skipped: monodromy analysis starts at genus 3".into(), true)
    } else if genus == orbits::MAX_ENUMERATION_GENUS {
        (
            "skipped here: run `orbits --genus 5 --enumerate`".into(),
            true,
        )
    } else {
        ("skipped: state space too large".into(), true)
    };
    let doc = json!({
        "genus": genus,
        "as_complex": counts.as_complex,
        "full_real": counts.full_real,
        "enumeration_cross_check": cross_check,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serialization");
    s.push('\n');
    emit(&out, &s)?;
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_report(
    genus: Option<usize>,
    graph_file: Option<PathBuf>,
    out: Option<PathBuf>,
) -> Result<i32, Failure> {
    let graph = load_graph(genus, &graph_file)?;
    let g = graph.genus();
    let mut report = RunReport::new("report", g);
    report.checks = run_checks(&graph, CHECK_GROUPS).checks;

    let orbit_report = if g <= orbits::MAX_ENUMERATION_GENUS {
        let basis = monodromy::adapted_basis(&graph)?;
        orbits::enumerate(&graph, &basis, threads())?
    } else {
        orbits::classified_census(g)
    };
    let counts = orbits::component_count(g)?;
    report.checks.push(CheckResult::from_outcome(
        "component_count_consistency",
        counts.as_complex == orbit_report.orbit_count,
        format!(
            "census finds {} orbits, closed form gives {}",
            orbit_report.orbit_count, counts.as_complex
        ),
    ));
    report.data = Some(json!({
        "orbits": orbit_report,
        "components": counts,
    }));
    finish_report(report, &out)
}
