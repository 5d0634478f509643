//! Build one instance of every benchmark family and report its size.
//!
//! ```bash
//! cargo run --release -p qtraffic --example generate_circuits
//! ```

use qtraffic::bench::{BenchFamily, BenchSpec};
use qtraffic::circuit::slice;

fn main() -> qtraffic::Result<()> {
    println!("{:<12} {:>6} {:>8} {:>7} {:>9}", "family", "qubits", "gates", "depth", "2q-gates");
    for family in BenchFamily::ALL {
        let spec = BenchSpec::new(family, 64).with_seed(1);
        let circuit = spec.generate()?;
        let sliced = slice(&circuit);
        let two_qubit = circuit
            .gates()
            .iter()
            .filter(|g| g.kind().is_two_qubit())
            .count();
        println!(
            "{:<12} {:>6} {:>8} {:>7} {:>9}",
            family.name(),
            circuit.width(),
            circuit.len(),
            sliced.depth(),
            two_qubit
        );
    }
    Ok(())
}
