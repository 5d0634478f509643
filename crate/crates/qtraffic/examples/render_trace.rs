//! Render physical mapping traces as SVG heatmaps (red compute, white
//! communicate, black idle, one band per core).
//!
//! ```bash
//! cargo run --release -p qtraffic --example render_trace
//! ```

use qtraffic::bench::{BenchFamily, BenchSpec};
use qtraffic::circuit::slice;
use qtraffic::mapper::{map, Architecture, MapOptions};
use qtraffic::render::render_svg;

fn main() -> qtraffic::Result<()> {
    let out_dir = std::path::Path::new("target/traces");
    std::fs::create_dir_all(out_dir)?;
    for family in [BenchFamily::Cuccaro, BenchFamily::Ghz, BenchFamily::Qft] {
        let circuit = BenchSpec::new(family, 64).generate()?;
        let sliced = slice(&circuit);
        let arch = Architecture::new(4, 16)?;
        let mapped = map(&sliced, &arch, &MapOptions::default())?;
        let path = out_dir.join(format!("{}.svg", circuit.name()));
        std::fs::write(&path, render_svg(&mapped))?;
        println!(
            "{}: {} columns, {} teleports -> {}",
            circuit.name(),
            mapped.t_exec(),
            mapped.events.len(),
            path.display()
        );
    }
    Ok(())
}
