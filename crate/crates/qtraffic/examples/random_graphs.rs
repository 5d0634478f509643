//! Generate seeded Erdős–Rényi and Watts–Strogatz problem graphs and show
//! how their edge counts behave across seeds.
//!
//! ```bash
//! cargo run --release -p qtraffic --example random_graphs
//! ```

use qtraffic::graph::{gen_graph_er, gen_graph_ws};

fn main() -> qtraffic::Result<()> {
    let n = 512;
    let p = 0.2;
    let expected = p * (n * (n - 1) / 2) as f64;
    println!("Erdos-Renyi n={n} p={p} (expected |E| ~= {expected:.0}):");
    for seed in 0..5 {
        let g = gen_graph_er(n, p, seed)?;
        println!("  seed {seed}: {} edges", g.edge_count());
    }

    println!("\nWatts-Strogatz n=64 k=4 beta=0.1 (|E| fixed at 128):");
    for seed in 0..5 {
        let g = gen_graph_ws(64, 4, 0.1, seed)?;
        let long_range = g
            .edges()
            .filter(|&(a, b)| {
                let d = (b - a).min(64 - (b - a));
                d > 2
            })
            .count();
        println!(
            "  seed {seed}: {} edges, {long_range} rewired beyond the ring",
            g.edge_count()
        );
    }

    let a = gen_graph_er(64, 0.3, 7)?;
    let b = gen_graph_er(64, 0.3, 7)?;
    assert_eq!(a, b);
    println!("\nsame seed, same graph: reproducible");
    Ok(())
}
