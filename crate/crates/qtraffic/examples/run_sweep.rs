//! Run a reduced strong-scaling sweep and write the aggregate CSV and JSON
//! results under `target/sweep-demo/`.
//!
//! ```bash
//! cargo run --release -p qtraffic --example run_sweep
//! ```

use qtraffic::sweep::{run_sweep, write_csv, write_json, SweepPlan};

fn main() -> qtraffic::Result<()> {
    let plan = SweepPlan {
        cores: vec![2, 4],
        qubits_per_core: Some(8),
        ..SweepPlan::strong_default()
    };
    let (result, metadata) = run_sweep(&plan, 0, None)?;

    let out = std::path::Path::new("target/sweep-demo");
    std::fs::create_dir_all(out)?;
    write_csv(&result, &out.join("metrics.csv"))?;
    write_json(&result, &out.join("metrics.json"))?;

    for (row, wall) in result.rows.iter().zip(&metadata.point_wall_ms) {
        println!(
            "{:<16} {}x{:<4} {:<10} T={:<6} {wall} ms",
            row.info.name,
            row.info.cores,
            row.info.capacity,
            row.info.status,
            row.report
                .as_ref()
                .map_or("NA".into(), |r| r.temporal_locality.to_string()),
        );
    }
    println!("\nwrote {}", out.join("metrics.csv").display());
    Ok(())
}
