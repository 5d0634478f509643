//! Strong- and weak-scaling experiment grids.
//!
//! A [`SweepPlan`] crosses benchmark families with architecture points:
//! strong scaling fixes the qubits per core and grows the problem with the
//! core count, weak scaling fixes the total qubit count and splits it over
//! more cores. Points run independently on a worker pool; failures are
//! recorded per row and never leave silent gaps. Reruns with identical
//! plans and seeds rewrite byte-identical CSV and JSON; wall-clock times go
//! to a separate metadata file.

use std::path::Path;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bench::{BenchFamily, BenchSpec};
use crate::circuit::slice;
use crate::error::{Error, Result};
use crate::mapper::{map, Architecture, MapOptions};
use crate::metrics::{
    compute_metrics, csv_row, metric_column, MetricsReport, RunInfo, CSV_HEADER,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Strong,
    Weak,
}

/// Family template; the qubit count comes from the grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: BenchFamily,
    #[serde(default = "one")]
    pub k: usize,
    #[serde(default = "one")]
    pub l: usize,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default = "default_kws")]
    pub kws: usize,
    #[serde(default = "default_beta")]
    pub beta: f64,
}

fn one() -> usize {
    1
}

fn default_p() -> f64 {
    0.2
}

fn default_kws() -> usize {
    4
}

fn default_beta() -> f64 {
    0.1
}

impl From<BenchFamily> for FamilyParams {
    fn from(family: BenchFamily) -> FamilyParams {
        FamilyParams {
            family,
            k: 1,
            l: 1,
            p: 0.2,
            kws: 4,
            beta: 0.1,
        }
    }
}

impl FamilyParams {
    fn spec(&self, n: usize, seed: u64) -> BenchSpec {
        BenchSpec {
            family: self.family,
            n,
            k: self.k,
            l: self.l,
            seed,
            p: self.p,
            kws: self.kws,
            beta: self.beta,
        }
    }
}

/// Declarative sweep description; JSON-loadable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    #[serde(default = "one_u32")]
    pub version: u32,
    pub regime: Regime,
    pub families: Vec<FamilyParams>,
    pub cores: Vec<usize>,
    /// Strong scaling: fixed qubits per core.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubits_per_core: Option<usize>,
    /// Weak scaling: fixed total qubits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_qubits: Option<usize>,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    #[serde(default = "one")]
    pub tau: usize,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    /// Per-point timeout in seconds; 0 disables.
    #[serde(default = "default_timeout")]
    pub timeout_secs: u64,
}

fn one_u32() -> u32 {
    1
}

fn default_sigma() -> f64 {
    0.5
}

fn default_seeds() -> Vec<u64> {
    vec![1]
}

fn default_timeout() -> u64 {
    600
}

impl SweepPlan {
    /// Strong scaling defaults: 16 qubits per core, 4/16/60 cores, every
    /// family, one seed.
    pub fn strong_default() -> SweepPlan {
        SweepPlan {
            version: 1,
            regime: Regime::Strong,
            families: BenchFamily::ALL.into_iter().map(Into::into).collect(),
            cores: vec![4, 16, 60],
            qubits_per_core: Some(16),
            total_qubits: None,
            sigma: 0.5,
            tau: 1,
            seeds: vec![1],
            timeout_secs: 600,
        }
    }

    /// Weak scaling defaults: 512 qubits over 4/16/32 cores.
    pub fn weak_default() -> SweepPlan {
        SweepPlan {
            version: 1,
            regime: Regime::Weak,
            families: BenchFamily::ALL.into_iter().map(Into::into).collect(),
            cores: vec![4, 16, 32],
            qubits_per_core: None,
            total_qubits: Some(512),
            sigma: 0.5,
            tau: 1,
            seeds: vec![1],
            timeout_secs: 600,
        }
    }

    /// Expand into grid points, validating the regime invariants.
    pub fn points(&self) -> Result<Vec<SweepPoint>> {
        let mut points = Vec::new();
        for params in &self.families {
            for &cores in &self.cores {
                if cores == 0 {
                    return Err(Error::InvalidParameter("core count 0 in plan".into()));
                }
                let (n, capacity) = match self.regime {
                    Regime::Strong => {
                        let q = self.qubits_per_core.ok_or_else(|| {
                            Error::InvalidParameter(
                                "strong scaling plan needs qubits_per_core".into(),
                            )
                        })?;
                        (cores * q, q)
                    }
                    Regime::Weak => {
                        let n = self.total_qubits.ok_or_else(|| {
                            Error::InvalidParameter("weak scaling plan needs total_qubits".into())
                        })?;
                        if n % cores != 0 {
                            return Err(Error::InvalidParameter(format!(
                                "total qubits {n} not divisible by {cores} cores"
                            )));
                        }
                        (n, n / cores)
                    }
                };
                for &seed in &self.seeds {
                    points.push(SweepPoint {
                        index: points.len(),
                        spec: params.spec(n, seed),
                        cores,
                        capacity,
                        sigma: self.sigma,
                        tau: self.tau,
                        timeout: (self.timeout_secs > 0)
                            .then(|| Duration::from_secs(self.timeout_secs)),
                    });
                }
            }
        }
        Ok(points)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub index: usize,
    pub spec: BenchSpec,
    pub cores: usize,
    pub capacity: usize,
    pub sigma: f64,
    pub tau: usize,
    pub timeout: Option<Duration>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    Infeasible,
    Timeout,
    Error,
}

impl RunStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::Infeasible => "infeasible",
            RunStatus::Timeout => "timeout",
            RunStatus::Error => "error",
        }
    }
}

/// One grid point's outcome. Reproducible content only; timing lives in
/// [`SweepMetadata`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub info: RunInfo,
    pub status: RunStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<MetricsReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

/// Wall-clock bookkeeping, kept out of the reproducible outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub point_wall_ms: Vec<u128>,
}

/// Run every grid point. `workers` bounds the thread pool (0 = one per
/// CPU). When `trace_dir` is given, each successful point writes its
/// mapped-program JSON there as `<name>_c<cores>_s<seed>.trace.json`.
pub fn run_sweep(
    plan: &SweepPlan,
    workers: usize,
    trace_dir: Option<&Path>,
) -> Result<(SweepResult, SweepMetadata)> {
    let points = plan.points()?;
    if let Some(dir) = trace_dir {
        std::fs::create_dir_all(dir)?;
    }
    let started = SystemTime::now();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;

    let outcomes: Vec<(SweepRow, u128)> = pool.install(|| {
        points
            .par_iter()
            .map(|point| {
                let begin = Instant::now();
                let row = run_point(point, trace_dir);
                (row, begin.elapsed().as_millis())
            })
            .collect()
    });

    let mut rows = Vec::with_capacity(outcomes.len());
    let mut point_wall_ms = Vec::with_capacity(outcomes.len());
    for (row, wall) in outcomes {
        rows.push(row);
        point_wall_ms.push(wall);
    }

    let unix_ms = |t: SystemTime| {
        t.duration_since(UNIX_EPOCH)
            .unwrap_or(Duration::ZERO)
            .as_millis()
    };
    Ok((
        SweepResult { rows },
        SweepMetadata {
            started_unix_ms: unix_ms(started),
            finished_unix_ms: unix_ms(SystemTime::now()),
            point_wall_ms,
        },
    ))
}

fn run_point(point: &SweepPoint, trace_dir: Option<&Path>) -> SweepRow {
    let mut info = RunInfo {
        name: format!(
            "{}_{}_c{}",
            point.spec.family.name(),
            point.spec.n,
            point.cores
        ),
        family: point.spec.family.name().to_string(),
        n: point.spec.n,
        cores: point.cores,
        capacity: point.capacity,
        sigma: point.sigma,
        tau: point.tau,
        seed: point.spec.seed,
        status: String::new(),
        gates: 0,
        depth: 0,
        t_exec: 0,
    };

    let finish = |mut info: RunInfo, status: RunStatus, error: Option<String>, report| {
        info.status = status.as_str().to_string();
        SweepRow {
            info,
            status,
            error,
            report,
        }
    };

    let circuit = match point.spec.generate() {
        Ok(c) => c,
        Err(e) => return finish(info, RunStatus::Error, Some(e.to_string()), None),
    };
    info.gates = circuit.len() as u64;
    let sliced = slice(&circuit);
    info.depth = sliced.depth();

    let arch = match Architecture::new(point.cores, point.capacity) {
        Ok(a) => a,
        Err(e) => return finish(info, RunStatus::Error, Some(e.to_string()), None),
    };
    let opts = MapOptions {
        sigma: point.sigma,
        tau: point.tau,
        count_measure: true,
        deadline: point.timeout.map(|t| Instant::now() + t),
    };
    let mapped = match map(&sliced, &arch, &opts) {
        Ok(mp) => mp,
        Err(Error::Timeout) => {
            return finish(info, RunStatus::Timeout, Some("deadline exceeded".into()), None)
        }
        Err(e @ Error::Infeasible { .. }) => {
            return finish(info, RunStatus::Infeasible, Some(e.to_string()), None)
        }
        Err(e) => return finish(info, RunStatus::Error, Some(e.to_string()), None),
    };
    info.t_exec = mapped.t_exec();

    if let Some(dir) = trace_dir {
        let path = dir.join(format!(
            "{}_s{}.trace.json",
            info.name, point.spec.seed
        ));
        if let Err(e) = write_atomic(&path, &serde_json::to_vec(&mapped).unwrap_or_default())
        {
            return finish(info, RunStatus::Error, Some(e.to_string()), None);
        }
    }

    match compute_metrics(&mapped) {
        Ok(report) => finish(info, RunStatus::Ok, None, Some(report)),
        Err(e) => finish(info, RunStatus::Error, Some(e.to_string()), None),
    }
}

/// Write through a temp file and rename, so readers never see partial data.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Write `metrics.csv` for a sweep result.
pub fn write_csv(result: &SweepResult, path: &Path) -> Result<()> {
    let mut buffer = Vec::new();
    {
        let mut writer = csv::Writer::from_writer(&mut buffer);
        writer
            .write_record(CSV_HEADER)
            .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
        for row in &result.rows {
            let mut record = csv_row(&row.info, row.report.as_ref());
            if let Some(err) = &row.error {
                record[8] = format!("{}:{}", row.status.as_str(), err);
            }
            writer
                .write_record(&record)
                .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
        }
        writer
            .flush()
            .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    }
    write_atomic(path, &buffer)
}

/// Write `metrics.json` for a sweep result.
pub fn write_json(result: &SweepResult, path: &Path) -> Result<()> {
    write_atomic(path, &serde_json::to_vec_pretty(result)?)
}

/// Declarative post-sweep assertions over metric columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrendAssertion {
    /// Every ok row keeps `column` within `[min, max]`.
    InRange { column: String, min: f64, max: f64 },
    /// `column` strictly increases with the core count for `family`.
    StrictlyIncreasingWithCores { column: String, family: String },
    /// `column` of `upper` exceeds `column` of `lower` at every shared
    /// (n, cores, seed) point.
    FamilyDominates {
        column: String,
        upper: String,
        lower: String,
    },
    /// Per family, `column` at the smallest core count is at least its
    /// value at the largest.
    EndpointsNonIncreasingWithCores { column: String },
    /// Log-log slope of `column` against the qubit count is `slope ± tol`
    /// for `family`.
    LogLogSlopeInN {
        column: String,
        family: String,
        slope: f64,
        tol: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendOutcome {
    pub assertion: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct TrendReport {
    pub outcomes: Vec<TrendOutcome>,
}

impl TrendReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = logs
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    Some(sxy / sxx)
}

/// Evaluate trend assertions over a sweep result. Failed or missing points
/// fail their assertions with diagnostics; unknown columns are an error.
pub fn trend_check(result: &SweepResult, assertions: &[TrendAssertion]) -> Result<TrendReport> {
    let ok_rows: Vec<&SweepRow> = result
        .rows
        .iter()
        .filter(|r| r.status == RunStatus::Ok)
        .collect();

    let column_of = |row: &SweepRow, column: &str| -> Result<Option<f64>> {
        metric_column(row.report.as_ref().expect("ok row has report"), column)
    };

    let mut report = TrendReport::default();
    for assertion in assertions {
        let (passed, detail) = match assertion {
            TrendAssertion::InRange { column, min, max } => {
                let mut bad = Vec::new();
                for row in &ok_rows {
                    if let Some(v) = column_of(row, column)? {
                        if v < *min || v > *max {
                            bad.push(format!("{}={v}", row.info.name));
                        }
                    }
                }
                (bad.is_empty(), format!("out of range: {bad:?}"))
            }
            TrendAssertion::StrictlyIncreasingWithCores { column, family } => {
                let mut series: Vec<(usize, f64)> = Vec::new();
                for row in ok_rows.iter().filter(|r| r.info.family == *family) {
                    if let Some(v) = column_of(row, column)? {
                        series.push((row.info.cores, v));
                    }
                }
                series.sort_by_key(|&(c, _)| c);
                let increasing =
                    series.len() >= 2 && series.windows(2).all(|w| w[1].1 > w[0].1);
                (increasing, format!("{family} {column} by cores: {series:?}"))
            }
            TrendAssertion::FamilyDominates {
                column,
                upper,
                lower,
            } => {
                let mut checked = 0usize;
                let mut holds = true;
                let mut detail = String::new();
                for hi in ok_rows.iter().filter(|r| r.info.family == *upper) {
                    let at = (hi.info.n, hi.info.cores, hi.info.seed);
                    for lo in ok_rows.iter().filter(|r| {
                        r.info.family == *lower
                            && (r.info.n, r.info.cores, r.info.seed) == at
                    }) {
                        let (Some(a), Some(b)) =
                            (column_of(hi, column)?, column_of(lo, column)?)
                        else {
                            continue;
                        };
                        checked += 1;
                        if a <= b {
                            holds = false;
                            detail = format!(
                                "{upper}={a} vs {lower}={b} at n={} cores={}",
                                hi.info.n, hi.info.cores
                            );
                        }
                    }
                }
                (
                    holds && checked > 0,
                    if checked == 0 {
                        "no comparable points".into()
                    } else {
                        detail
                    },
                )
            }
            TrendAssertion::EndpointsNonIncreasingWithCores { column } => {
                let mut families: Vec<String> =
                    ok_rows.iter().map(|r| r.info.family.clone()).collect();
                families.sort();
                families.dedup();
                let mut holds = !families.is_empty();
                let mut detail = String::new();
                for family in &families {
                    let mut series: Vec<(usize, f64)> = Vec::new();
                    for row in ok_rows.iter().filter(|r| r.info.family == *family) {
                        if let Some(v) = column_of(row, column)? {
                            series.push((row.info.cores, v));
                        }
                    }
                    series.sort_by_key(|&(c, _)| c);
                    match (series.first(), series.last()) {
                        (Some(&(c_lo, v_lo)), Some(&(c_hi, v_hi))) if c_lo < c_hi => {
                            if v_lo < v_hi {
                                holds = false;
                                detail = format!(
                                    "{family}: {column}({c_lo} cores)={v_lo} < \
                                     {column}({c_hi} cores)={v_hi}"
                                );
                            }
                        }
                        _ => {
                            holds = false;
                            detail = format!("{family}: fewer than two core counts");
                        }
                    }
                }
                (holds, detail)
            }
            TrendAssertion::LogLogSlopeInN {
                column,
                family,
                slope,
                tol,
            } => {
                let mut points: Vec<(f64, f64)> = Vec::new();
                for row in ok_rows.iter().filter(|r| r.info.family == *family) {
                    if let Some(v) = column_of(row, column)? {
                        points.push((row.info.n as f64, v));
                    }
                }
                match log_log_slope(&points) {
                    Some(s) => (
                        (s - slope).abs() <= *tol,
                        format!("{family} {column} slope {s:.3} vs {slope} ± {tol}"),
                    ),
                    None => (false, format!("{family}: not enough points for a fit")),
                }
            }
        };
        report.outcomes.push(TrendOutcome {
            assertion: format!("{assertion:?}"),
            passed,
            detail,
        });
    }
    Ok(report)
}
