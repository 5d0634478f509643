//! Map a GHZ circuit onto a two-core device and walk through the resulting
//! teleportation schedule.
//!
//! ```bash
//! cargo run --release -p qtraffic --example map_to_cores
//! ```

use qtraffic::bench::gen_ghz;
use qtraffic::circuit::slice;
use qtraffic::mapper::{map, Architecture, MapOptions, Partner};

fn main() -> qtraffic::Result<()> {
    let circuit = gen_ghz(8)?;
    let sliced = slice(&circuit);
    let arch = Architecture::new(2, 4)?;
    let mapped = map(&sliced, &arch, &MapOptions::default())?;

    println!(
        "{} on {}x{}: {} slices -> {} physical columns, {} teleports",
        circuit.name(),
        arch.cores(),
        arch.capacity(),
        mapped.depth(),
        mapped.t_exec(),
        mapped.events.len()
    );

    for event in &mapped.events {
        let partner = match event.partner {
            Partner::Qubit(q) => format!("paired with q{q}"),
            Partner::Idle => "via an idle slot".to_string(),
        };
        println!(
            "  before slice {:>2}, wave {}: q{} core {} -> core {} ({partner})",
            event.transition, event.wave, event.qubit, event.from_core, event.to_core
        );
    }

    println!("\nper-slice core of qubit 0: {:?}",
        mapped.assignment.iter().map(|row| row[0]).collect::<Vec<_>>());
    Ok(())
}
