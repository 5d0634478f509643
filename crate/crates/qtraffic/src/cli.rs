//! Implementations behind the `qtraffic` binary's subcommands.
//!
//! The functions here take parsed parameters and do the work, so the binary
//! stays a thin flag-to-call shim and tests can drive the exact command
//! paths. The trace JSON written by [`cmd_map`] is the single interchange
//! format: `analyze` and `render` consume it without recomputing anything.

use std::path::Path;

use crate::bench::BenchSpec;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::mapper::{map, Architecture, MapOptions, MappedProgram};
use crate::metrics::{compute_metrics, csv_row, MetricsReport, RunInfo, CSV_HEADER};
use crate::qasm::{export_qasm, import_qasm};
use crate::render::render_svg;
use crate::sweep::{
    run_sweep, write_atomic, write_csv, write_json, SweepPlan, SweepResult,
};

/// Generate a benchmark circuit and serialize it to QASM. Returns the text;
/// writes it to `output` when given.
pub fn cmd_generate(spec: &BenchSpec, output: Option<&Path>) -> Result<String> {
    let circuit = spec.generate()?;
    let text = export_qasm(&circuit);
    if let Some(path) = output {
        write_atomic(path, text.as_bytes())?;
    }
    Ok(text)
}

/// Map a circuit onto an architecture, writing `<outdir>/trace.json` and a
/// one-row `<outdir>/metrics.csv`.
pub fn cmd_map(
    circuit: &Circuit,
    arch: &Architecture,
    opts: &MapOptions,
    out_dir: &Path,
) -> Result<(MappedProgram, RunInfo, MetricsReport)> {
    let sliced = crate::circuit::slice(circuit);
    let mapped = map(&sliced, arch, opts)?;
    let report = compute_metrics(&mapped)?;
    let info = run_info_for(&mapped);

    std::fs::create_dir_all(out_dir)?;
    write_atomic(&out_dir.join("trace.json"), &serde_json::to_vec(&mapped)?)?;
    write_metrics_csv(
        &[(info.clone(), Some(&report))],
        &out_dir.join("metrics.csv"),
    )?;
    Ok((mapped, info, report))
}

/// Recompute the metrics row from a trace JSON document.
pub fn cmd_analyze(trace_path: &Path, out_csv: Option<&Path>) -> Result<(RunInfo, MetricsReport)> {
    let bytes = std::fs::read(trace_path)?;
    let mapped: MappedProgram = serde_json::from_slice(&bytes)?;
    let report = compute_metrics(&mapped)?;
    let info = run_info_for(&mapped);
    if let Some(path) = out_csv {
        write_metrics_csv(&[(info.clone(), Some(&report))], path)?;
    }
    Ok((info, report))
}

/// Run a sweep plan, writing `metrics.csv`, `metrics.json`, and
/// `metadata.json` under `out_dir` (plus per-point traces when requested).
pub fn cmd_sweep(
    plan: &SweepPlan,
    out_dir: &Path,
    workers: usize,
    with_traces: bool,
) -> Result<SweepResult> {
    std::fs::create_dir_all(out_dir)?;
    let trace_dir = with_traces.then(|| out_dir.join("traces"));
    let (result, metadata) = run_sweep(plan, workers, trace_dir.as_deref())?;
    write_csv(&result, &out_dir.join("metrics.csv"))?;
    write_json(&result, &out_dir.join("metrics.json"))?;
    write_atomic(
        &out_dir.join("metadata.json"),
        &serde_json::to_vec_pretty(&metadata)?,
    )?;
    Ok(result)
}

/// Render a trace JSON document to SVG.
pub fn cmd_render(trace_path: &Path, output: &Path) -> Result<()> {
    let bytes = std::fs::read(trace_path)?;
    let mapped: MappedProgram = serde_json::from_slice(&bytes)?;
    write_atomic(output, render_svg(&mapped).as_bytes())
}

/// Load a circuit from a QASM file; the circuit name is the file stem.
pub fn load_qasm(path: &Path) -> Result<Circuit> {
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "circuit".into());
    import_qasm(&text, name).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

/// Load a sweep plan from a JSON file.
pub fn load_plan(path: &Path) -> Result<SweepPlan> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        message: format!("{}: {e}", path.display()),
    })
}

/// Row identification reconstructed from a trace document alone, so a
/// mapped-then-analyzed program reports identically on both paths. The
/// family is the circuit name with its trailing `_<n>` stripped; the seed
/// is not stored in traces and reports as 0.
pub fn run_info_for(mp: &MappedProgram) -> RunInfo {
    let family = match mp.name.rsplit_once('_') {
        Some((prefix, suffix)) if suffix.parse::<usize>().is_ok() => prefix.to_string(),
        _ => mp.name.clone(),
    };
    RunInfo {
        name: mp.name.clone(),
        family,
        n: mp.width,
        cores: mp.arch.cores(),
        capacity: mp.arch.capacity(),
        sigma: mp.sigma,
        tau: mp.tau,
        seed: 0,
        status: "ok".into(),
        gates: mp.total_gates,
        depth: mp.depth(),
        t_exec: mp.t_exec(),
    }
}

/// Write a standalone metrics CSV (header plus one row per entry).
pub fn write_metrics_csv(
    rows: &[(RunInfo, Option<&MetricsReport>)],
    path: &Path,
) -> Result<()> {
    let mut buffer = Vec::new();
    {
        let mut writer = csv::Writer::from_writer(&mut buffer);
        writer
            .write_record(CSV_HEADER)
            .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
        for (info, report) in rows {
            writer
                .write_record(csv_row(info, *report))
                .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
        }
        writer
            .flush()
            .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    }
    write_atomic(path, &buffer)
}
