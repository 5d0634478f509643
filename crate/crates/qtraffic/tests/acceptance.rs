//! Acceptance suite: seven checks covering generator structure, scaling
//! exponents, mapper validity, brute-force equivalence, metric unit values,
//! qualitative scaling trends, and end-to-end determinism. Each check
//! prints one pass/fail line; the test fails if any check fails or blows
//! its time budget.

mod common;

use std::time::{Duration, Instant};

use rayon::prelude::*;

use qtraffic::bench::{BenchFamily, BenchSpec};
use qtraffic::circuit::slice;
use qtraffic::error::Error;
use qtraffic::graph::gen_graph_er;
use qtraffic::mapper::{map, validate_mapping, Architecture, MapOptions};
use qtraffic::metrics::{
    ccr_from_means, compute_metrics, longest_gate_sequence, variance_to_mean, RunInfo,
};
use qtraffic::qasm::{export_qasm, import_qasm};
use qtraffic::sweep::{
    run_sweep, trend_check, write_csv, write_json, RunStatus, SweepPlan, SweepResult, SweepRow,
    TrendAssertion,
};

use common::{brute_force_min_teleports, separable_under_identity_fill, truncate_to_depth};

const TOL: f64 = 1e-12;

struct Outcome {
    id: usize,
    name: &'static str,
    result: Result<String, String>,
    elapsed: Duration,
    budget: Duration,
}

fn run_criterion(
    id: usize,
    name: &'static str,
    budget: Duration,
    f: impl FnOnce() -> Result<String, String>,
) -> Outcome {
    let start = Instant::now();
    let result = f();
    Outcome {
        id,
        name,
        result,
        elapsed: start.elapsed(),
        budget,
    }
}

#[test]
fn acceptance_criteria() {
    let mut outcomes = Vec::new();

    outcomes.push(run_criterion(
        1,
        "generator gate-count oracles",
        Duration::from_secs(1),
        criterion_gate_counts,
    ));
    outcomes.push(run_criterion(
        2,
        "scaling-exponent fits",
        Duration::from_secs(10),
        criterion_scaling_exponents,
    ));

    let start = Instant::now();
    let (strong_rows, weak_rows, validity) = map_all_sweep_points();
    outcomes.push(Outcome {
        id: 3,
        name: "mapper validity and capacity over the sweep grid",
        result: validity,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(600),
    });

    outcomes.push(run_criterion(
        4,
        "brute-force oracle equivalence",
        Duration::from_secs(120),
        criterion_brute_force,
    ));
    outcomes.push(run_criterion(
        5,
        "metric unit oracles",
        Duration::from_secs(30),
        criterion_metric_units,
    ));
    outcomes.push(run_criterion(
        6,
        "qualitative scaling trends",
        Duration::from_secs(30),
        || criterion_trends(&strong_rows, &weak_rows),
    ));
    outcomes.push(run_criterion(
        7,
        "determinism and round-trips",
        Duration::from_secs(120),
        criterion_determinism,
    ));

    let mut failed = 0;
    for o in &outcomes {
        let over_budget = o.elapsed > o.budget;
        let (verdict, detail) = match (&o.result, over_budget) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => (
                "FAIL",
                format!("{d} (over budget {:?})", o.budget),
            ),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {} {verdict} ({:.2} s): {} - {detail}",
            o.id,
            o.elapsed.as_secs_f64(),
            o.name
        );
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}

// Criterion 1: emitted gate counts match closed-form counters exactly.
fn criterion_gate_counts() -> Result<String, String> {
    let mut checked = 0usize;
    for n in [4usize, 8, 16, 32, 64] {
        let cases: Vec<(BenchSpec, usize)> = vec![
            (BenchSpec::new(BenchFamily::Ghz, n), n),
            (
                BenchSpec::new(BenchFamily::Qft, n),
                n + n * (n - 1) / 2 + n / 2,
            ),
            (BenchSpec::new(BenchFamily::Cuccaro, n), 17 * (n - 2) + 1),
            (BenchSpec::new(BenchFamily::Grover, n), n + 6 * n),
            (
                BenchSpec::new(BenchFamily::QaoaEr, n).with_seed(1),
                n + 3 * gen_graph_er(n, 0.2, 1).unwrap().edge_count() + n,
            ),
            {
                // Ring degree must stay below the vertex count.
                let kws = if n > 4 { 4 } else { 2 };
                let spec = BenchSpec {
                    kws,
                    ..BenchSpec::new(BenchFamily::QaoaWs, n).with_seed(1)
                };
                (spec, n + 3 * (n * kws / 2) + n)
            },
            (BenchSpec::new(BenchFamily::VqeHea1, n), 3 * n - 1),
            (BenchSpec::new(BenchFamily::VqeHea2, n), 3 * n - 1),
        ];
        for (spec, expected) in cases {
            let circuit = spec.generate().map_err(|e| e.to_string())?;
            if circuit.len() != expected {
                return Err(format!(
                    "{} n={n}: {} gates, counter says {expected}",
                    spec.family, circuit.len()
                ));
            }
            checked += 1;
        }
        // Grover with more iterations.
        for k in [2usize, 3] {
            let spec = BenchSpec {
                k,
                ..BenchSpec::new(BenchFamily::Grover, n)
            };
            let circuit = spec.generate().map_err(|e| e.to_string())?;
            if circuit.len() != n + 6 * k * n {
                return Err(format!("grover n={n} k={k}: {} gates", circuit.len()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} family/size counts exact"))
}

fn fit_log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    sxy / sxx
}

// Criterion 2: log-log slope of gate count against qubit count.
fn criterion_scaling_exponents() -> Result<String, String> {
    let sizes = [16usize, 32, 64, 128, 256, 512];
    let families: [(BenchFamily, f64); 6] = [
        (BenchFamily::Ghz, 1.0),
        (BenchFamily::Cuccaro, 1.0),
        (BenchFamily::VqeHea1, 1.0),
        (BenchFamily::QaoaWs, 1.0),
        (BenchFamily::Grover, 1.0),
        (BenchFamily::Qft, 2.0),
    ];
    let mut detail = String::new();
    for (family, expected) in families {
        let points: Vec<(f64, f64)> = sizes
            .iter()
            .map(|&n| {
                let c = BenchSpec::new(family, n)
                    .with_seed(1)
                    .generate()
                    .expect("generators handle these sizes");
                (n as f64, c.len() as f64)
            })
            .collect();
        let slope = fit_log_log_slope(&points);
        if (slope - expected).abs() > 0.15 {
            return Err(format!(
                "{family}: slope {slope:.3} vs {expected} +- 0.15"
            ));
        }
        detail.push_str(&format!("{family}={slope:.2} "));
    }
    Ok(detail.trim_end().to_string())
}

// Criterion 3 (with the per-point reports reused by criterion 6): map every
// family over the strong and weak desk-scale grids, checking validity.
#[allow(clippy::type_complexity)]
fn map_all_sweep_points() -> (Vec<SweepRow>, Vec<SweepRow>, Result<String, String>) {
    // (cores, capacity, n, weak?)
    let mut grid: Vec<(usize, usize, usize, bool)> = Vec::new();
    for cores in [4usize, 16] {
        grid.push((cores, 16, cores * 16, false));
    }
    for cores in [4usize, 16, 32] {
        grid.push((cores, 512 / cores, 512, true));
    }

    let points: Vec<(BenchFamily, usize, usize, usize, bool)> = BenchFamily::ALL
        .into_iter()
        .flat_map(|family| {
            grid.iter()
                .map(move |&(cores, capacity, n, weak)| (family, cores, capacity, n, weak))
        })
        .collect();

    let results: Vec<Result<(SweepRow, bool), String>> = points
        .par_iter()
        .map(|&(family, cores, capacity, n, weak)| {
            let spec = BenchSpec::new(family, n).with_seed(1);
            let circuit = spec
                .generate()
                .map_err(|e| format!("{family} n={n}: {e}"))?;
            let sliced = slice(&circuit);
            let arch = Architecture::new(cores, capacity).unwrap();
            let mapped = map(&sliced, &arch, &MapOptions::default())
                .map_err(|e| format!("{family} n={n} cores={cores}: {e}"))?;
            validate_mapping(&sliced, &mapped)
                .map_err(|e| format!("{family} n={n} cores={cores}: {e}"))?;
            let report = compute_metrics(&mapped)
                .map_err(|e| format!("{family} n={n} cores={cores}: {e}"))?;
            let row = SweepRow {
                info: RunInfo {
                    name: format!("{}_{n}_c{cores}", family.name()),
                    family: family.name().to_string(),
                    n,
                    cores,
                    capacity,
                    sigma: 0.5,
                    tau: 1,
                    seed: 1,
                    status: "ok".into(),
                    gates: circuit.len() as u64,
                    depth: sliced.depth(),
                    t_exec: mapped.t_exec(),
                },
                status: RunStatus::Ok,
                error: None,
                report: Some(report),
            };
            Ok((row, weak))
        })
        .collect();

    let mut strong_rows = Vec::new();
    let mut weak_rows = Vec::new();
    for result in results {
        match result {
            Ok((row, true)) => weak_rows.push(row),
            Ok((row, false)) => strong_rows.push(row),
            Err(e) => return (strong_rows, weak_rows, Err(e)),
        }
    }
    let detail = format!(
        "{} points mapped, zero co-location or capacity violations",
        strong_rows.len() + weak_rows.len()
    );
    (strong_rows, weak_rows, Ok(detail))
}

// Criterion 4: the mapper never beats the exhaustive optimum, matches it on
// the pinned instances, and stays at zero on separable instances.
fn criterion_brute_force() -> Result<String, String> {
    let mut instances: Vec<(String, qtraffic::Circuit, Architecture)> = Vec::new();
    let arches: Vec<(usize, usize)> = vec![(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)];

    let mut circuits: Vec<qtraffic::Circuit> = Vec::new();
    for n in [4usize, 6, 8] {
        circuits.push(BenchSpec::new(BenchFamily::Ghz, n).generate().unwrap());
        circuits.push(
            BenchSpec::new(BenchFamily::VqeHea1, n).generate().unwrap(),
        );
        circuits.push(
            BenchSpec::new(BenchFamily::VqeHea2, n).generate().unwrap(),
        );
    }
    for n in [4usize, 6] {
        circuits.push(BenchSpec::new(BenchFamily::Qft, n).generate().unwrap());
        circuits.push(BenchSpec::new(BenchFamily::Cuccaro, n).generate().unwrap());
    }
    circuits.push(BenchSpec::new(BenchFamily::Grover, 4).generate().unwrap());
    for seed in [1u64, 2] {
        circuits.push(
            BenchSpec::new(BenchFamily::QaoaEr, 5)
                .with_seed(seed)
                .generate()
                .unwrap(),
        );
    }
    circuits.push({
        let spec = BenchSpec {
            kws: 2,
            ..BenchSpec::new(BenchFamily::QaoaWs, 6).with_seed(1)
        };
        spec.generate().unwrap()
    });
    // Hand-built separable instances: gates never leave an identity core.
    circuits.push({
        let mut c = qtraffic::Circuit::new("separable_4", 4);
        for _ in 0..3 {
            c.cnot(0, 1).unwrap();
            c.cnot(2, 3).unwrap();
            c.h(0).unwrap();
        }
        c
    });

    for circuit in circuits {
        // Bound the DP: everything except the pinned GHZ(8) example is cut
        // to six timeslices.
        let capped = if circuit.name() == "ghz_8" {
            circuit.clone()
        } else {
            truncate_to_depth(&circuit, 6)
        };
        for &(cores, capacity) in &arches {
            if capped.width() > cores * capacity {
                continue;
            }
            instances.push((
                format!("{}@{cores}x{capacity}", capped.name()),
                capped.clone(),
                Architecture::new(cores, capacity).unwrap(),
            ));
        }
    }
    if instances.len() < 50 {
        return Err(format!("only {} instances in the suite", instances.len()));
    }

    let mut separable_count = 0usize;
    let mut infeasible_count = 0usize;
    for (name, circuit, arch) in &instances {
        let sliced = slice(circuit);
        let optimum = brute_force_min_teleports(&sliced, arch);
        let mapped = map(&sliced, arch, &MapOptions::default());
        match (optimum, mapped) {
            (Some(best), Ok(mp)) => {
                let got = mp.events.len() as u64;
                if got < best {
                    return Err(format!("{name}: mapper {got} below optimum {best}"));
                }
                if separable_under_identity_fill(&sliced, arch) {
                    separable_count += 1;
                    if got != 0 || best != 0 {
                        return Err(format!(
                            "{name}: separable but mapper={got}, optimum={best}"
                        ));
                    }
                }
            }
            (None, Err(Error::Infeasible { .. })) => infeasible_count += 1,
            (None, Ok(_)) => {
                return Err(format!("{name}: mapper mapped an infeasible instance"))
            }
            (Some(best), Err(e)) => {
                return Err(format!("{name}: optimum {best} but mapper failed: {e}"))
            }
            (None, Err(e)) => {
                return Err(format!("{name}: unexpected error on infeasible case: {e}"))
            }
        }
    }

    // Pinned examples: GHZ(8) on 2x4 hits the optimum exactly; the parallel
    // VQE ansatz repairs its single crossing pair in at most two movements.
    let arch24 = Architecture::new(2, 4).unwrap();
    let ghz = slice(&BenchSpec::new(BenchFamily::Ghz, 8).generate().unwrap());
    let ghz_best = brute_force_min_teleports(&ghz, &arch24).unwrap();
    let ghz_mapped = map(&ghz, &arch24, &MapOptions::default()).unwrap();
    if ghz_mapped.events.len() as u64 != ghz_best {
        return Err(format!(
            "ghz_8@2x4: mapper {} vs optimum {ghz_best}",
            ghz_mapped.events.len()
        ));
    }
    let vqe = slice(&BenchSpec::new(BenchFamily::VqeHea2, 8).generate().unwrap());
    let vqe_mapped = map(&vqe, &arch24, &MapOptions::default()).unwrap();
    let vqe_best = brute_force_min_teleports(&vqe, &arch24).unwrap();
    if vqe_mapped.events.len() > 2 || (vqe_mapped.events.len() as u64) < vqe_best {
        return Err(format!(
            "vqe_hea2_8@2x4: mapper {} vs optimum {vqe_best}, bound 2",
            vqe_mapped.events.len()
        ));
    }

    Ok(format!(
        "{} instances ({separable_count} separable at zero, {infeasible_count} \
         consistently infeasible); ghz_8@2x4 = optimum {ghz_best}",
        instances.len()
    ))
}

// Criterion 5: metric unit oracles at 1e-12.
fn criterion_metric_units() -> Result<String, String> {
    let near = |a: f64, b: f64| (a - b).abs() < TOL;
    let expect = |cond: bool, what: &str| -> Result<(), String> {
        if cond {
            Ok(())
        } else {
            Err(format!("unit oracle failed: {what}"))
        }
    };

    expect(near(ccr_from_means(3.0, 1.0).unwrap(), 0.5), "CCR(3,1)=0.5")?;
    expect(near(ccr_from_means(7.0, 0.0).unwrap(), 1.0), "CCR(x,0)=1")?;
    expect(near(ccr_from_means(0.0, 4.0).unwrap(), -1.0), "CCR(0,x)=-1")?;
    expect(ccr_from_means(0.0, 0.0).is_err(), "CCR(0,0) undefined")?;

    expect(
        near(variance_to_mean(&[2.0, 2.0, 2.0, 2.0]).unwrap(), 0.0),
        "uniform hotspotness 0",
    )?;
    expect(
        near(variance_to_mean(&[4.0, 0.0]).unwrap(), 2.0),
        "hotspotness([4,0])=2",
    )?;
    expect(
        near(variance_to_mean(&[3.0, 1.0, 3.0, 1.0]).unwrap(), 0.5),
        "hotspotness([3,1,3,1])=0.5",
    )?;
    expect(
        near(variance_to_mean(&[8.0, 0.0, 0.0, 0.0]).unwrap(), 6.0),
        "core hotspotness([8,0,0,0])=6",
    )?;
    expect(
        near(variance_to_mean(&[0.0, 4.0]).unwrap(), 2.0),
        "burstiness([0,4])=2",
    )?;
    expect(
        near(variance_to_mean(&[1.0, 1.0, 1.0]).unwrap(), 0.0),
        "burstiness([1,1,1])=0",
    )?;
    expect(
        variance_to_mean(&[0.0, 0.0]).is_none(),
        "zero-mean series not applicable",
    )?;

    // Single-core run: CCR = 1, T = 0, S = 1.
    let ghz4 = slice(&BenchSpec::new(BenchFamily::Ghz, 4).generate().unwrap());
    let single = map(
        &ghz4,
        &Architecture::new(1, 4).unwrap(),
        &MapOptions::default(),
    )
    .unwrap();
    let report = compute_metrics(&single).unwrap();
    expect(near(report.ccr, 1.0), "single-core CCR=1")?;
    expect(report.temporal_locality == 0, "single-core T=0")?;
    expect(near(report.spatial_locality, 1.0), "single-core S=1")?;
    expect(report.core_hotspotness.is_none(), "single-core H_core NA")?;
    expect(report.burstiness.is_none(), "single-core burstiness NA")?;
    expect(report.qubit_lifespan == 3, "ghz_4 lifespan 3")?;
    expect(report.longest_gate_sequence == 4, "ghz_4 longest sequence 4")?;
    expect(
        report.workload.communication == 0 && report.workload.parallel == 0,
        "single-core workload pure computation",
    )?;

    // Longest gate sequence: GHZ(n) = n, QFT(4) = 5, empty = 0.
    let ghz16 = slice(&BenchSpec::new(BenchFamily::Ghz, 16).generate().unwrap());
    let mp16 = map(
        &ghz16,
        &Architecture::new(1, 16).unwrap(),
        &MapOptions::default(),
    )
    .unwrap();
    expect(longest_gate_sequence(&mp16) == 16, "ghz_16 longest sequence")?;
    let qft4 = slice(&BenchSpec::new(BenchFamily::Qft, 4).generate().unwrap());
    let qft4_mp = map(
        &qft4,
        &Architecture::new(1, 4).unwrap(),
        &MapOptions::default(),
    )
    .unwrap();
    expect(longest_gate_sequence(&qft4_mp) == 5, "qft_4 longest sequence 5")?;
    let empty = slice(&qtraffic::Circuit::new("empty", 2));
    let empty_mp = map(
        &empty,
        &Architecture::new(1, 2).unwrap(),
        &MapOptions::default(),
    )
    .unwrap();
    expect(longest_gate_sequence(&empty_mp) == 0, "empty longest sequence 0")?;

    // Multi-core runs produce communication and overlap columns.
    let ghz8 = slice(&BenchSpec::new(BenchFamily::Ghz, 8).generate().unwrap());
    let multi = map(
        &ghz8,
        &Architecture::new(2, 4).unwrap(),
        &MapOptions::default(),
    )
    .unwrap();
    let multi_report = compute_metrics(&multi).unwrap();
    expect(
        multi_report.workload.parallel >= 1,
        "wave overlapping untouched-qubit gates counts as parallel",
    )?;
    let stretched = map(
        &ghz8,
        &Architecture::new(2, 4).unwrap(),
        &MapOptions {
            tau: 2,
            ..MapOptions::default()
        },
    )
    .unwrap();
    let stretched_report = compute_metrics(&stretched).unwrap();
    expect(
        stretched_report.workload.communication >= 1,
        "teleport-only column counts as communication",
    )?;

    Ok("all unit oracles within 1e-12".into())
}

// Criterion 6: qualitative findings at desk scale.
fn criterion_trends(
    strong_rows: &[SweepRow],
    weak_rows: &[SweepRow],
) -> Result<String, String> {
    let strong = SweepResult {
        rows: strong_rows.to_vec(),
    };
    let weak = SweepResult {
        rows: weak_rows.to_vec(),
    };

    let strong_report = trend_check(
        &strong,
        &[
            TrendAssertion::StrictlyIncreasingWithCores {
                column: "temporal_locality".into(),
                family: "qft".into(),
            },
            TrendAssertion::FamilyDominates {
                column: "temporal_locality".into(),
                upper: "qft".into(),
                lower: "cuccaro".into(),
            },
            TrendAssertion::LogLogSlopeInN {
                column: "longest_gate_sequence".into(),
                family: "ghz".into(),
                slope: 1.0,
                tol: 0.15,
            },
            TrendAssertion::InRange {
                column: "ccr".into(),
                min: -1.0,
                max: 1.0,
            },
        ],
    )
    .map_err(|e| e.to_string())?;

    let weak_report = trend_check(
        &weak,
        &[
            TrendAssertion::EndpointsNonIncreasingWithCores {
                column: "spatial_locality".into(),
            },
            TrendAssertion::InRange {
                column: "ccr".into(),
                min: -1.0,
                max: 1.0,
            },
        ],
    )
    .map_err(|e| e.to_string())?;

    for outcome in strong_report
        .outcomes
        .iter()
        .chain(weak_report.outcomes.iter())
    {
        if !outcome.passed {
            return Err(format!("{}: {}", outcome.assertion, outcome.detail));
        }
    }
    Ok(format!(
        "{} trend assertions hold",
        strong_report.outcomes.len() + weak_report.outcomes.len()
    ))
}

// Criterion 7: byte-identical reruns and lossless round-trips.
fn criterion_determinism() -> Result<String, String> {
    let plan = SweepPlan {
        families: vec![
            BenchFamily::Ghz.into(),
            BenchFamily::QaoaEr.into(),
            BenchFamily::VqeHea2.into(),
        ],
        cores: vec![2, 4],
        qubits_per_core: Some(8),
        seeds: vec![1, 2],
        ..SweepPlan::strong_default()
    };
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut artifacts: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
    for run in 0..2 {
        let (result, _) = run_sweep(&plan, if run == 0 { 2 } else { 1 }, None)
            .map_err(|e| e.to_string())?;
        let csv_path = dir.path().join(format!("metrics_{run}.csv"));
        let json_path = dir.path().join(format!("metrics_{run}.json"));
        write_csv(&result, &csv_path).map_err(|e| e.to_string())?;
        write_json(&result, &json_path).map_err(|e| e.to_string())?;
        artifacts.push((
            std::fs::read(&csv_path).map_err(|e| e.to_string())?,
            std::fs::read(&json_path).map_err(|e| e.to_string())?,
        ));
    }
    if artifacts[0] != artifacts[1] {
        return Err("rerun produced different CSV/JSON bytes".into());
    }

    for family in BenchFamily::ALL {
        let circuit = BenchSpec::new(family, 16)
            .with_seed(3)
            .generate()
            .map_err(|e| e.to_string())?;
        let text = export_qasm(&circuit);
        let back = import_qasm(&text, circuit.name()).map_err(|e| e.to_string())?;
        if back != circuit || export_qasm(&back) != text {
            return Err(format!("{family}: QASM round trip not lossless"));
        }

        let sliced = slice(&circuit);
        let arch = Architecture::new(2, 8).unwrap();
        let mapped = map(&sliced, &arch, &MapOptions::default()).map_err(|e| e.to_string())?;
        let json = serde_json::to_string(&mapped).map_err(|e| e.to_string())?;
        let parsed: qtraffic::MappedProgram =
            serde_json::from_str(&json).map_err(|e| e.to_string())?;
        if parsed != mapped || serde_json::to_string(&parsed).unwrap() != json {
            return Err(format!("{family}: trace JSON round trip not lossless"));
        }
        let before = compute_metrics(&mapped).map_err(|e| e.to_string())?;
        let after = compute_metrics(&parsed).map_err(|e| e.to_string())?;
        if before != after {
            return Err(format!("{family}: metrics changed across serialization"));
        }
    }
    Ok("reruns byte-identical; QASM and trace JSON lossless for all families".into())
}
