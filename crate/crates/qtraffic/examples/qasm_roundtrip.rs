//! Export a benchmark to OpenQASM, re-import it, and confirm the text is
//! byte-stable.
//!
//! ```bash
//! cargo run --release -p qtraffic --example qasm_roundtrip
//! ```

use qtraffic::bench::{BenchFamily, BenchSpec};
use qtraffic::qasm::{export_qasm, import_qasm};

fn main() -> qtraffic::Result<()> {
    let circuit = BenchSpec::new(BenchFamily::Qft, 4).generate()?;
    let text = export_qasm(&circuit);
    println!("{text}");

    let back = import_qasm(&text, circuit.name())?;
    assert_eq!(back, circuit);
    assert_eq!(export_qasm(&back), text);
    println!("// round trip: {} gates preserved, text byte-identical", back.len());
    Ok(())
}
