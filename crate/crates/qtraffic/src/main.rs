use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qtraffic::bench::BenchSpec;
use qtraffic::cli::{
    cmd_analyze, cmd_generate, cmd_map, cmd_render, cmd_sweep, load_plan, load_qasm,
};
use qtraffic::mapper::{Architecture, MapOptions};
use qtraffic::metrics::{csv_row, CSV_HEADER};
use qtraffic::sweep::SweepPlan;
use qtraffic::{Error, Result};

/// Benchmark generation, multi-core mapping, and qubit traffic analysis.
#[derive(Parser)]
#[command(name = "qtraffic", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArgs {
    /// Benchmark family: cuccaro, grover, ghz, qft, qaoa_er, qaoa_ws,
    /// vqe_hea1, vqe_hea2.
    #[arg(long)]
    family: Option<String>,
    /// Total qubit count.
    #[arg(long)]
    n: Option<usize>,
    /// Grover iterations.
    #[arg(long)]
    k: Option<usize>,
    /// Ansatz layers.
    #[arg(long)]
    l: Option<usize>,
    /// Graph seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Erdős–Rényi edge probability.
    #[arg(long)]
    p: Option<f64>,
    /// Watts–Strogatz ring degree.
    #[arg(long)]
    kws: Option<usize>,
    /// Watts–Strogatz rewiring probability.
    #[arg(long)]
    beta: Option<f64>,
    /// JSON file with the same fields; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl SpecArgs {
    fn resolve(&self) -> Result<BenchSpec> {
        let mut spec = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                serde_json::from_str::<BenchSpec>(&text).map_err(|e| Error::Parse {
                    line: e.line(),
                    message: format!("{}: {e}", path.display()),
                })?
            }
            None => {
                let family = self.family.as_deref().ok_or_else(|| {
                    Error::InvalidParameter("--family (or --config) is required".into())
                })?;
                let n = self.n.ok_or_else(|| {
                    Error::InvalidParameter("--n (or --config) is required".into())
                })?;
                BenchSpec::new(family.parse()?, n)
            }
        };
        if let Some(family) = &self.family {
            spec.family = family.parse()?;
        }
        if let Some(n) = self.n {
            spec.n = n;
        }
        if let Some(k) = self.k {
            spec.k = k;
        }
        if let Some(l) = self.l {
            spec.l = l;
        }
        if let Some(seed) = self.seed {
            spec.seed = seed;
        }
        if let Some(p) = self.p {
            spec.p = p;
        }
        if let Some(kws) = self.kws {
            spec.kws = kws;
        }
        if let Some(beta) = self.beta {
            spec.beta = beta;
        }
        Ok(spec)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark circuit as OpenQASM.
    Generate {
        #[command(flatten)]
        spec: SpecArgs,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Map a circuit onto a multi-core device; writes trace.json and
    /// metrics.csv.
    Map {
        /// Input QASM file; alternatively generate via --family/--n.
        #[arg(long)]
        qasm: Option<PathBuf>,
        #[command(flatten)]
        spec: SpecArgs,
        /// Core count.
        #[arg(long)]
        cores: usize,
        /// Qubits per core.
        #[arg(long)]
        capacity: usize,
        /// Lookahead decay in (0, 1].
        #[arg(long, default_value_t = 0.5)]
        sigma: f64,
        /// Communication sub-slice duration per wave.
        #[arg(long, default_value_t = 1)]
        tau: usize,
        /// Output directory.
        #[arg(short, long, default_value = ".")]
        output: PathBuf,
    },
    /// Recompute the metrics row from a trace.json document.
    Analyze {
        trace: PathBuf,
        /// Also write the row as a CSV file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a scaling sweep from a plan file (or a built-in default plan).
    Sweep {
        /// Plan JSON; defaults to the built-in plan for --regime.
        plan: Option<PathBuf>,
        /// strong or weak; used when no plan file is given.
        #[arg(long, default_value = "strong")]
        regime: String,
        /// Output directory for metrics.csv / metrics.json / metadata.json.
        #[arg(short, long, default_value = "sweep-out")]
        output: PathBuf,
        /// Worker threads; 0 means one per CPU.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Also write per-point trace.json files.
        #[arg(long)]
        traces: bool,
    },
    /// Render a trace.json document as an SVG heatmap.
    Render {
        trace: PathBuf,
        /// Output SVG path.
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { spec, output } => {
            let text = cmd_generate(&spec.resolve()?, output.as_deref())?;
            if output.is_none() {
                print!("{text}");
            }
        }
        Command::Map {
            qasm,
            spec,
            cores,
            capacity,
            sigma,
            tau,
            output,
        } => {
            let circuit = match qasm {
                Some(path) => load_qasm(&path)?,
                None => spec.resolve()?.generate()?,
            };
            let arch = Architecture::new(cores, capacity)?;
            let opts = MapOptions {
                sigma,
                tau,
                ..MapOptions::default()
            };
            let (mapped, info, report) = cmd_map(&circuit, &arch, &opts, &output)?;
            println!(
                "mapped {} onto {}x{}: depth {} -> {} columns, {} teleports",
                info.name,
                cores,
                capacity,
                mapped.depth(),
                mapped.t_exec(),
                report.temporal_locality
            );
            println!("wrote {}", output.join("trace.json").display());
        }
        Command::Analyze { trace, output } => {
            let (info, report) = cmd_analyze(&trace, output.as_deref())?;
            println!("{}", CSV_HEADER.join(","));
            println!("{}", csv_row(&info, Some(&report)).join(","));
        }
        Command::Sweep {
            plan,
            regime,
            output,
            workers,
            traces,
        } => {
            let plan = match plan {
                Some(path) => load_plan(&path)?,
                None => match regime.as_str() {
                    "strong" => SweepPlan::strong_default(),
                    "weak" => SweepPlan::weak_default(),
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "unknown regime `{other}` (strong or weak)"
                        )))
                    }
                },
            };
            let result = cmd_sweep(&plan, &output, workers, traces)?;
            let ok = result
                .rows
                .iter()
                .filter(|r| r.status == qtraffic::sweep::RunStatus::Ok)
                .count();
            println!(
                "{} points ({ok} ok), results in {}",
                result.rows.len(),
                output.display()
            );
        }
        Command::Render { trace, output } => {
            cmd_render(&trace, &output)?;
            println!("wrote {}", output.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code().clamp(0, 255) as u8)
        }
    }
}
