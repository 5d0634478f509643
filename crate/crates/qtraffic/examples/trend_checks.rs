//! Sweep a pair of families and evaluate declarative trend assertions over
//! the metric columns.
//!
//! ```bash
//! cargo run --release -p qtraffic --example trend_checks
//! ```

use qtraffic::bench::BenchFamily;
use qtraffic::sweep::{run_sweep, trend_check, SweepPlan, TrendAssertion};

fn main() -> qtraffic::Result<()> {
    let plan = SweepPlan {
        families: vec![BenchFamily::Qft.into(), BenchFamily::Cuccaro.into()],
        cores: vec![2, 4, 8],
        qubits_per_core: Some(8),
        ..SweepPlan::strong_default()
    };
    let (result, _) = run_sweep(&plan, 0, None)?;

    let assertions = [
        TrendAssertion::InRange {
            column: "ccr".into(),
            min: -1.0,
            max: 1.0,
        },
        TrendAssertion::StrictlyIncreasingWithCores {
            column: "temporal_locality".into(),
            family: "qft".into(),
        },
        TrendAssertion::FamilyDominates {
            column: "temporal_locality".into(),
            upper: "qft".into(),
            lower: "cuccaro".into(),
        },
    ];
    let report = trend_check(&result, &assertions)?;
    for outcome in &report.outcomes {
        println!(
            "[{}] {}\n      {}",
            if outcome.passed { "pass" } else { "FAIL" },
            outcome.assertion,
            outcome.detail
        );
    }
    std::process::exit(if report.passed() { 0 } else { 1 });
}
