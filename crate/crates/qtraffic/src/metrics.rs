//! Spatio-temporal performance metrics over a mapped program.
//!
//! Eight headline metrics: the computation-to-communication ratio, mean
//! qubit and core hotspotness, longest gate sequence, qubit lifespan,
//! temporal burstiness, temporal locality (total teleports), and spatial
//! locality (mean fractional core stay time). Variance-to-mean ratios use
//! population variance. Metrics whose underlying mean is zero (for example
//! core hotspotness on a single-core run) report as not applicable rather
//! than failing the run.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mapper::MappedProgram;
use crate::trace::Cell;

/// Knobs resolving ambiguities in the metric definitions.
#[derive(Debug, Clone, Copy)]
pub struct MetricsOptions {
    /// Include physical qubits that never host an operation in the qubit
    /// hotspotness population.
    pub include_idle_qubits: bool,
    /// Measure qubit lifespan on virtual slice indices instead of the
    /// communication-inclusive physical timeline.
    pub virtual_lifespan: bool,
}

impl Default for MetricsOptions {
    fn default() -> MetricsOptions {
        MetricsOptions {
            include_idle_qubits: true,
            virtual_lifespan: false,
        }
    }
}

/// Per-column workload classification totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct WorkloadCounts {
    /// Columns with teleportation activity only.
    pub communication: usize,
    /// Columns where computation and communication overlap.
    pub parallel: usize,
    /// Columns with computation only.
    pub computation: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub ccr: f64,
    pub qubit_hotspotness: f64,
    /// `None` when no teleports occurred.
    pub core_hotspotness: Option<f64>,
    pub longest_gate_sequence: u64,
    pub qubit_lifespan: u64,
    /// `None` when no teleports occurred.
    pub burstiness: Option<f64>,
    pub temporal_locality: u64,
    pub spatial_locality: f64,
    pub workload: WorkloadCounts,
    /// Operations (computation plus teleports) per physical qubit.
    pub ops_per_qubit: Vec<u64>,
    pub teleports_per_core: Vec<u64>,
    pub teleports_per_slice: Vec<u64>,
}

/// Population variance divided by mean; `None` for an empty series or a
/// zero mean.
pub fn variance_to_mean(series: &[f64]) -> Option<f64> {
    if series.is_empty() {
        return None;
    }
    let mean = series.iter().sum::<f64>() / series.len() as f64;
    if mean == 0.0 {
        return None;
    }
    let variance = series
        .iter()
        .map(|x| {
            let d = x - mean;
            d * d
        })
        .sum::<f64>()
        / series.len() as f64;
    Some(variance / mean)
}

/// Normalized ratio of mean computation to mean teleportation operations per
/// physical qubit: `(n_ops - n_telep) / (n_ops + n_telep)`.
pub fn ccr_from_means(n_ops: f64, n_telep: f64) -> Result<f64> {
    let total = n_ops + n_telep;
    if total == 0.0 {
        return Err(Error::Undefined(
            "computation-to-communication ratio of an empty program".into(),
        ));
    }
    Ok((n_ops - n_telep) / total)
}

pub fn compute_ccr(mp: &MappedProgram) -> Result<f64> {
    let physical = mp.arch.physical_qubits() as f64;
    ccr_from_means(
        mp.total_ops() as f64 / physical,
        mp.total_teleports() as f64 / physical,
    )
}

/// Variance-to-mean of combined computation and teleportation operations per
/// physical qubit.
pub fn qubit_hotspotness(mp: &MappedProgram, opts: &MetricsOptions) -> Result<f64> {
    let series: Vec<f64> = mp
        .ops_per_physical
        .iter()
        .zip(&mp.teleports_per_physical)
        .map(|(o, t)| (o + t) as f64)
        .filter(|&x| opts.include_idle_qubits || x > 0.0)
        .collect();
    variance_to_mean(&series)
        .ok_or_else(|| Error::Undefined("qubit hotspotness with no operations".into()))
}

/// Variance-to-mean of teleport participations per core; `None` when the run
/// has no inter-core traffic.
pub fn core_hotspotness(mp: &MappedProgram) -> Option<f64> {
    let series: Vec<f64> = mp.teleports_per_core.iter().map(|&t| t as f64).collect();
    variance_to_mean(&series)
}

/// Maximum number of gates applied to any virtual qubit.
pub fn longest_gate_sequence(mp: &MappedProgram) -> u64 {
    mp.gates_per_virtual.iter().copied().max().unwrap_or(0)
}

/// Longest distance between the first and last gate on a virtual qubit,
/// measured on the physical (communication-inclusive) timeline, or on slice
/// indices with `virtual_lifespan`.
pub fn qubit_lifespan(mp: &MappedProgram, opts: &MetricsOptions) -> u64 {
    let spans = if opts.virtual_lifespan {
        &mp.gate_span_slices
    } else {
        &mp.gate_span_columns
    };
    spans
        .iter()
        .flatten()
        .map(|&(first, last)| (last - first) as u64)
        .max()
        .unwrap_or(0)
}

/// Variance-to-mean of teleports per physical timeslice, zero-teleport
/// slices included; `None` when the run has no teleports.
pub fn burstiness(mp: &MappedProgram) -> Option<f64> {
    let series: Vec<f64> = mp.teleports_per_column.iter().map(|&t| t as f64).collect();
    variance_to_mean(&series)
}

/// Total teleportation count.
pub fn temporal_locality(mp: &MappedProgram) -> u64 {
    let from_columns: u64 = mp.teleports_per_column.iter().sum();
    debug_assert_eq!(from_columns, mp.total_teleports());
    mp.total_teleports()
}

/// Mean core-residency interval length over all (virtual qubit, interval)
/// pairs, as a fraction of the total execution time.
pub fn spatial_locality(mp: &MappedProgram) -> Result<f64> {
    let t_exec = mp.t_exec();
    if t_exec == 0 {
        return Err(Error::Undefined(
            "spatial locality of a zero-length timeline".into(),
        ));
    }
    let mut interval_sum = 0u64;
    let mut interval_count = 0u64;
    for q in 0..mp.width {
        let mut run_len = 0u64;
        let mut run_core = mp.assignment[0][q];
        for (t, row) in mp.assignment.iter().enumerate() {
            if row[q] != run_core {
                interval_sum += run_len;
                interval_count += 1;
                run_core = row[q];
                run_len = 0;
            }
            run_len += mp.step_widths[t] as u64;
        }
        interval_sum += run_len;
        interval_count += 1;
    }
    let mean = interval_sum as f64 / interval_count as f64;
    Ok(mean / t_exec as f64)
}

/// Classify every physical timeslice by the activity it carries.
pub fn workload_series(mp: &MappedProgram) -> WorkloadCounts {
    let mut counts = WorkloadCounts::default();
    for col in 0..mp.trace.cols() {
        let computes = mp.trace.column_contains(col, Cell::Compute);
        let communicates = mp.trace.column_contains(col, Cell::Communicate);
        match (computes, communicates) {
            (true, true) => counts.parallel += 1,
            (false, true) => counts.communication += 1,
            (true, false) => counts.computation += 1,
            (false, false) => {}
        }
    }
    counts
}

pub fn compute_metrics(mp: &MappedProgram) -> Result<MetricsReport> {
    compute_metrics_with(mp, &MetricsOptions::default())
}

pub fn compute_metrics_with(mp: &MappedProgram, opts: &MetricsOptions) -> Result<MetricsReport> {
    Ok(MetricsReport {
        ccr: compute_ccr(mp)?,
        qubit_hotspotness: qubit_hotspotness(mp, opts)?,
        core_hotspotness: core_hotspotness(mp),
        longest_gate_sequence: longest_gate_sequence(mp),
        qubit_lifespan: qubit_lifespan(mp, opts),
        burstiness: burstiness(mp),
        temporal_locality: temporal_locality(mp),
        spatial_locality: spatial_locality(mp)?,
        workload: workload_series(mp),
        ops_per_qubit: mp
            .ops_per_physical
            .iter()
            .zip(&mp.teleports_per_physical)
            .map(|(o, t)| o + t)
            .collect(),
        teleports_per_core: mp.teleports_per_core.clone(),
        teleports_per_slice: mp.teleports_per_column.clone(),
    })
}

/// Column order of [`csv_row`] and the sweep CSV output.
pub const CSV_HEADER: [&str; 20] = [
    "name",
    "family",
    "n",
    "cores",
    "capacity",
    "sigma",
    "tau",
    "seed",
    "status",
    "gates",
    "depth",
    "t_exec",
    "ccr",
    "qubit_hotspotness",
    "core_hotspotness",
    "longest_gate_sequence",
    "qubit_lifespan",
    "burstiness",
    "temporal_locality",
    "spatial_locality",
];

/// Identification of one run for reporting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    pub name: String,
    pub family: String,
    pub n: usize,
    pub cores: usize,
    pub capacity: usize,
    pub sigma: f64,
    pub tau: usize,
    pub seed: u64,
    pub status: String,
    pub gates: u64,
    pub depth: usize,
    pub t_exec: usize,
}

fn fmt_opt(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v}"),
        None => "NA".into(),
    }
}

/// One CSV row; metric cells are `NA` when the report is missing (failed
/// run) or a metric is not applicable.
pub fn csv_row(info: &RunInfo, report: Option<&MetricsReport>) -> Vec<String> {
    let mut row = vec![
        info.name.clone(),
        info.family.clone(),
        info.n.to_string(),
        info.cores.to_string(),
        info.capacity.to_string(),
        format!("{}", info.sigma),
        info.tau.to_string(),
        info.seed.to_string(),
        info.status.clone(),
        info.gates.to_string(),
        info.depth.to_string(),
        info.t_exec.to_string(),
    ];
    match report {
        Some(r) => {
            row.push(format!("{}", r.ccr));
            row.push(format!("{}", r.qubit_hotspotness));
            row.push(fmt_opt(r.core_hotspotness));
            row.push(r.longest_gate_sequence.to_string());
            row.push(r.qubit_lifespan.to_string());
            row.push(fmt_opt(r.burstiness));
            row.push(r.temporal_locality.to_string());
            row.push(format!("{}", r.spatial_locality));
        }
        None => row.extend(std::iter::repeat_n("NA".to_string(), 8)),
    }
    row
}

/// Look up a metric column by CSV name, for trend assertions.
pub fn metric_column(report: &MetricsReport, column: &str) -> Result<Option<f64>> {
    let value = match column {
        "ccr" => Some(report.ccr),
        "qubit_hotspotness" => Some(report.qubit_hotspotness),
        "core_hotspotness" => report.core_hotspotness,
        "longest_gate_sequence" => Some(report.longest_gate_sequence as f64),
        "qubit_lifespan" => Some(report.qubit_lifespan as f64),
        "burstiness" => report.burstiness,
        "temporal_locality" => Some(report.temporal_locality as f64),
        "spatial_locality" => Some(report.spatial_locality),
        other => return Err(Error::UnknownColumn(other.to_string())),
    };
    Ok(value)
}
