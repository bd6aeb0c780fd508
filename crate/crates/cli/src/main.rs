//! `spt`: symmetry-projected tomography toolkit.
//!
//! Subcommands: `reduce` (minimal measurement basis for operator targets),
//! `table` (naive/reduced count table per RDM class), `group` (QWC circuit
//! grouping of a Pauli set), `scaling` (terms/circuits sweeps over register
//! sizes), and `simulate` (the 4-qubit tomography-under-noise study).

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use spt_core::encode::{Encoding, EncodingKind};
use spt_core::fermion::SpinOrder;
use spt_core::group::{build_graph, canonical_order, circuit_basis, clique_cover, scaling_fit};
use spt_core::json::{FermionOperatorJson, PauliSumJson, PauliTermJson, ReducedBasisJson};
use spt_core::pauli::PauliSum;
use spt_core::reduce::{count_table, reduce_measurements, tomography_plan};
use spt_core::symproj::Symmetry;
use spt_noisesim::device::DeviceParameters;
use spt_noisesim::experiment::{run_experiment, ExperimentConfig, NoiseLevel};
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "spt", version, about = "Symmetry-projected tomography toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce operator targets to a minimal projected measurement basis.
    Reduce(ReduceArgs),
    /// Print the naive/reduced measurement count table per RDM class.
    Table(TableArgs),
    /// Group a Pauli set into simultaneously measurable circuits.
    Group(GroupArgs),
    /// Sweep k-RDM term/circuit counts over register sizes.
    Scaling(ScalingArgs),
    /// Run the 4-qubit tomography-under-noise experiment.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct MappingArgs {
    /// Fermion-to-qubit mapping: jw | parity | bk.
    #[arg(long, default_value = "jw")]
    mapping: String,
    /// Projection symmetries: none | n | n,sz.
    #[arg(long, default_value = "n,sz")]
    symmetries: String,
    /// Spin-orbital ordering onto modes: blocked | interleaved.
    #[arg(long, default_value = "blocked")]
    mode_order: String,
}

#[derive(Args)]
struct ReduceArgs {
    #[command(flatten)]
    mapping: MappingArgs,
    /// Fermionic operator target(s), JSON.
    #[arg(long)]
    input: PathBuf,
    /// Number of spatial orbitals (default n_modes / 2).
    #[arg(long)]
    spatial: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    mapping: MappingArgs,
    /// RDM order: 1, 2, or 3.
    #[arg(long)]
    krdm: usize,
    /// Output format: text | csv | json.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct GroupArgs {
    /// Pauli set, JSON (PauliSum schema).
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScalingArgs {
    /// RDM order: 1, 2, or 3.
    #[arg(long, default_value_t = 2)]
    krdm: usize,
    /// Comma-separated mappings, e.g. jw,parity,bk.
    #[arg(long, default_value = "jw")]
    mapping: String,
    /// Comma-separated symmetry sets, e.g. none,n,n+sz.
    #[arg(long, default_value = "none,n+sz")]
    symmetries: String,
    /// Qubit range start:stop:step (inclusive).
    #[arg(long, default_value = "4:16:2")]
    qubits: String,
    /// Spin-orbital ordering onto modes: blocked | interleaved.
    #[arg(long, default_value = "blocked")]
    mode_order: String,
    /// Output CSV path (stdout if omitted).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Report power-law fits (needs >= 3 register sizes).
    #[arg(long, default_value_t = true)]
    fit: bool,
}

#[derive(Args)]
struct SimulateArgs {
    /// Noise levels, e.g. 0,1,2,3,4,inf (strength (1/2)^n).
    #[arg(long, default_value = "0,1,2,3,4,inf")]
    levels: String,
    #[arg(long, default_value_t = 25)]
    states: usize,
    #[arg(long, default_value_t = 8192)]
    shots: u64,
    /// RNG seed; runs are bit-reproducible given the seed.
    #[arg(long)]
    seed: u64,
    /// Device calibration JSON (defaults built in).
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// The experiment is defined for the jw mapping; others warn.
    #[arg(long, default_value = "jw")]
    mapping: String,
}

/// Data/processing failure -> exit code 2 (clap handles usage errors -> 1).
#[derive(Debug)]
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("SPT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    // exit codes: 0 success, 1 usage, 2 data/processing
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.exit_code() == 0 { 0 } else { 1 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = match cli.command {
        Command::Reduce(args) => cmd_reduce(args),
        Command::Table(args) => cmd_table(args),
        Command::Group(args) => cmd_group(args),
        Command::Scaling(args) => cmd_scaling(args),
        Command::Simulate(args) => cmd_simulate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_spin_order(s: &str) -> Result<SpinOrder, CliError> {
    match s {
        "blocked" => Ok(SpinOrder::Blocked),
        "interleaved" => Ok(SpinOrder::Interleaved),
        other => Err(CliError(format!("unknown mode order {other:?}"))),
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> CliResult {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError(e.to_string())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ReduceInput {
    One(FermionOperatorJson),
    Many(Vec<FermionOperatorJson>),
}

fn cmd_reduce(args: ReduceArgs) -> CliResult {
    let order = parse_spin_order(&args.mapping.mode_order)?;
    let kind = EncodingKind::parse(&args.mapping.mapping)?;
    let syms = Symmetry::parse_set(&args.mapping.symmetries)?;
    let text = std::fs::read_to_string(&args.input)?;
    let input: ReduceInput = serde_json::from_str(&text)?;
    let targets_json = match input {
        ReduceInput::One(op) => vec![op],
        ReduceInput::Many(ops) => ops,
    };
    let targets = targets_json
        .iter()
        .map(|j| j.to_operator())
        .collect::<spt_core::Result<Vec<_>>>()?;
    let n_modes = targets
        .first()
        .map(|t| t.n_modes)
        .ok_or_else(|| CliError("no targets in input".into()))?;
    for t in &targets {
        if t.n_modes != n_modes {
            return Err(CliError("targets disagree on n_modes".into()));
        }
    }
    let n_spatial = args.spatial.unwrap_or(n_modes.div_ceil(2)).max(1);
    let enc = Encoding::new(kind, n_modes, order)?;
    let basis = reduce_measurements(&targets, &enc, n_spatial, &syms)?;
    let json = ReducedBasisJson::from(&basis);
    write_output(&args.out, &serde_json::to_string_pretty(&json)?)
}

#[derive(Serialize)]
struct TableRowJson {
    k: usize,
    spin_class: String,
    q_sites: Option<usize>,
    naive: Option<usize>,
    reduced: usize,
}

fn cmd_table(args: TableArgs) -> CliResult {
    let order = parse_spin_order(&args.mapping.mode_order)?;
    let kind = EncodingKind::parse(&args.mapping.mapping)?;
    let syms = Symmetry::parse_set(&args.mapping.symmetries)?;
    let rows = count_table(args.krdm, kind, order, &syms)?;
    let dash = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    match args.format.as_str() {
        "text" => {
            println!("k spin sites naive reduced");
            for r in &rows {
                println!(
                    "{} {} {} {} {}",
                    r.k,
                    r.spin_class,
                    dash(r.q_sites),
                    dash(r.naive),
                    r.reduced
                );
            }
        }
        "csv" => {
            println!("k,spin,sites,naive,reduced");
            for r in &rows {
                println!(
                    "{},{},{},{},{}",
                    r.k,
                    r.spin_class,
                    dash(r.q_sites),
                    dash(r.naive),
                    r.reduced
                );
            }
        }
        "json" => {
            let json: Vec<TableRowJson> = rows
                .iter()
                .map(|r| TableRowJson {
                    k: r.k,
                    spin_class: r.spin_class.clone(),
                    q_sites: r.q_sites,
                    naive: r.naive,
                    reduced: r.reduced,
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&json)?);
        }
        other => return Err(CliError(format!("unknown format {other:?}"))),
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct GroupsJson {
    circuits: Vec<PauliTermJson>,
    /// Member strings per circuit, labels as in the input sum.
    groups: Vec<Vec<String>>,
}

fn cmd_group(args: GroupArgs) -> CliResult {
    let text = std::fs::read_to_string(&args.input)?;
    let sum_json: PauliSumJson = serde_json::from_str(&text)?;
    let sum: PauliSum = sum_json.to_sum()?;
    let strings: Vec<_> = sum
        .iter()
        .map(|p| p.with_coeff(Complex64::new(1.0, 0.0)))
        .collect();
    let json = if strings.is_empty() {
        GroupsJson {
            circuits: vec![],
            groups: vec![],
        }
    } else {
        let sorted: Vec<_> = canonical_order(&strings)
            .into_iter()
            .map(|i| strings[i])
            .collect();
        let cover = clique_cover(&build_graph(&sorted)?);
        let circuits = cover
            .groups
            .iter()
            .map(|g| {
                circuit_basis(&sorted, g).map(|b| PauliTermJson {
                    string: b.label(),
                    re: 1.0,
                    im: 0.0,
                })
            })
            .collect::<spt_core::Result<Vec<_>>>()?;
        let groups = cover
            .groups
            .iter()
            .map(|g| g.iter().map(|&m| sorted[m].label()).collect())
            .collect();
        GroupsJson { circuits, groups }
    };
    write_output(&args.out, &serde_json::to_string_pretty(&json)?)?;
    if args.out.is_some() {
        eprintln!("{} groups", json.groups.len());
    }
    Ok(())
}

fn parse_qubit_range(spec: &str) -> Result<Vec<usize>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || {
        CliError(format!(
            "bad qubit range {spec:?}, expected start:stop[:step]"
        ))
    };
    let start: usize = parts.first().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let stop: usize = parts.get(1).ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let step: usize = match parts.get(2) {
        Some(s) => s.parse().map_err(|_| bad())?,
        None => 2,
    };
    if step == 0 || start == 0 || stop < start || parts.len() > 3 {
        return Err(bad());
    }
    Ok((start..=stop).step_by(step).collect())
}

fn cmd_scaling(args: ScalingArgs) -> CliResult {
    let order = parse_spin_order(&args.mode_order)?;
    let qubit_counts = parse_qubit_range(&args.qubits)?;
    if args.fit && qubit_counts.len() < 3 {
        return Err(CliError(format!(
            "power-law fit needs at least 3 register sizes, got {}",
            qubit_counts.len()
        )));
    }
    let mappings = args
        .mapping
        .split(',')
        .map(EncodingKind::parse)
        .collect::<spt_core::Result<Vec<_>>>()?;
    let symsets = args
        .symmetries
        .split(',')
        .map(|s| Symmetry::parse_set(s).map(|set| (s.trim().to_string(), set)))
        .collect::<spt_core::Result<Vec<_>>>()?;

    let mut lines = vec!["mapping,symmetries,r,terms,circuits,ratio,fitted_n".to_string()];
    for &kind in &mappings {
        for (sym_label, syms) in &symsets {
            let mut points = Vec::new();
            let mut rows = Vec::new();
            for &r in &qubit_counts {
                if r % 2 != 0 {
                    return Err(CliError(format!(
                        "register size {r} is odd; spin orbitals come in alpha/beta pairs"
                    )));
                }
                let plan = tomography_plan(args.krdm, r / 2, kind, order, syms)?;
                let strings = if syms.is_empty() {
                    &plan.naive_strings
                } else {
                    &plan.reduced.measurements
                };
                let terms = strings.len();
                let circuits = spt_core::group::grouped_circuit_count(strings)?;
                points.push((r as f64, circuits as f64));
                rows.push((r, terms, circuits));
            }
            let fitted = if args.fit {
                Some(scaling_fit(&points)?.exponent)
            } else {
                None
            };
            for (r, terms, circuits) in rows {
                lines.push(format!(
                    "{},{},{},{},{},{},{}",
                    kind.label(),
                    sym_label,
                    r,
                    terms,
                    circuits,
                    terms as f64 / circuits as f64,
                    fitted.map_or(String::new(), |f| format!("{f}")),
                ));
            }
        }
    }
    let text = lines.join("\n");
    match &args.csv {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| CliError(e.to_string())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_simulate(args: SimulateArgs) -> CliResult {
    if args.mapping != "jw" {
        eprintln!(
            "warning: simulate is defined for the jw mapping; ignoring --mapping {}",
            args.mapping
        );
    }
    let levels = args
        .levels
        .split(',')
        .map(NoiseLevel::parse)
        .collect::<spt_noisesim::Result<Vec<_>>>()?;
    let device = match &args.params {
        Some(p) => serde_json::from_str(&std::fs::read_to_string(p)?)?,
        None => DeviceParameters::default(),
    };
    let config = ExperimentConfig {
        levels,
        n_states: args.states,
        shots: args.shots,
        seed: args.seed,
        device,
        exact_expectations: false,
    };
    let report = run_experiment(&config)?;
    write_output(&args.out, &serde_json::to_string_pretty(&report)?)
}
