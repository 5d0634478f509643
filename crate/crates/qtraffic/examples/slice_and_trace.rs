//! Slice a small circuit into dependency timeslices and print its virtual
//! trace as ASCII art (one row per qubit, `#` = computing).
//!
//! ```bash
//! cargo run --release -p qtraffic --example slice_and_trace
//! ```

use qtraffic::bench::gen_qft;
use qtraffic::circuit::{slice, virtual_trace};
use qtraffic::trace::Cell;

fn main() -> qtraffic::Result<()> {
    let circuit = gen_qft(8)?;
    let sliced = slice(&circuit);
    println!(
        "{}: {} gates in {} timeslices",
        circuit.name(),
        circuit.len(),
        sliced.depth()
    );
    for (t, ts) in sliced.slices().iter().enumerate() {
        println!("  slice {t:>2}: {} gates", ts.gates.len());
    }

    let grid = virtual_trace(&sliced);
    println!("\nvirtual trace ({} x {}):", grid.rows(), grid.cols());
    for q in 0..grid.rows() {
        let row: String = grid
            .row(q)
            .iter()
            .map(|&c| if c == Cell::Compute { '#' } else { '.' })
            .collect();
        println!("  q{q:<2} {row}");
    }
    Ok(())
}
