//! Full pipeline on one instance: generate, slice, map, and print the
//! performance metrics.
//!
//! ```bash
//! cargo run --release -p qtraffic --example metrics_report
//! ```

use qtraffic::bench::{BenchFamily, BenchSpec};
use qtraffic::circuit::slice;
use qtraffic::mapper::{map, Architecture, MapOptions};
use qtraffic::metrics::compute_metrics;

fn main() -> qtraffic::Result<()> {
    let circuit = BenchSpec::new(BenchFamily::Qft, 64).generate()?;
    let sliced = slice(&circuit);
    let arch = Architecture::new(4, 16)?;
    let mapped = map(&sliced, &arch, &MapOptions::default())?;
    let report = compute_metrics(&mapped)?;

    let na = |v: Option<f64>| v.map_or("NA".to_string(), |x| format!("{x:.4}"));
    println!("{} on 4x16 cores", circuit.name());
    println!("  computation-to-communication ratio  {:.4}", report.ccr);
    println!("  mean qubit hotspotness              {:.4}", report.qubit_hotspotness);
    println!("  mean core hotspotness               {}", na(report.core_hotspotness));
    println!("  longest gate sequence               {}", report.longest_gate_sequence);
    println!("  qubit lifespan (timeslices)         {}", report.qubit_lifespan);
    println!("  temporal burstiness                 {}", na(report.burstiness));
    println!("  temporal locality (teleports)       {}", report.temporal_locality);
    println!("  spatial locality (mean stay time)   {:.4}", report.spatial_locality);
    println!(
        "  workload: {} comm / {} parallel / {} compute columns",
        report.workload.communication, report.workload.parallel, report.workload.computation
    );
    Ok(())
}
