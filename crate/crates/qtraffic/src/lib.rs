//! Inter-core qubit traffic characterization for modular quantum
//! architectures.
//!
//! The crate generates large-scale benchmark circuits, maps them onto
//! multi-core devices with a timesliced lookahead partitioner and
//! teleportation-swap insertion, and reports spatio-temporal performance
//! metrics under strong- and weak-scaling sweeps.
//!
//! The pipeline runs in four stages, each usable on its own:
//!
//! 1. [`bench`](mod@bench) builds a benchmark circuit; [`circuit::slice`]
//!    layers it into dependency timeslices.
//! 2. [`mapper::map`] assigns virtual qubits to cores per timeslice and
//!    schedules the teleportations between slices.
//! 3. [`metrics::compute_metrics`] condenses the mapped program into the
//!    performance metrics.
//! 4. [`sweep::run_sweep`] grids the above over circuit families and
//!    architecture sizes and writes CSV/JSON results.
//!
//! Each capability has a runnable example under `examples/`:
//!
//! ```text
//! cargo run --release -p qtraffic --example generate_circuits
//! cargo run --release -p qtraffic --example slice_and_trace
//! cargo run --release -p qtraffic --example random_graphs
//! cargo run --release -p qtraffic --example qasm_roundtrip
//! cargo run --release -p qtraffic --example map_to_cores
//! cargo run --release -p qtraffic --example metrics_report
//! cargo run --release -p qtraffic --example render_trace
//! cargo run --release -p qtraffic --example run_sweep
//! cargo run --release -p qtraffic --example trend_checks
//! ```
//!
//! The same functionality ships as the `qtraffic` binary with the
//! `generate`, `map`, `analyze`, `sweep`, and `render` subcommands.

pub mod bench;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod graph;
pub mod mapper;
pub mod metrics;
pub mod qasm;
pub mod render;
pub mod sweep;
pub mod trace;

pub use bench::{BenchFamily, BenchSpec};
pub use circuit::{slice, virtual_trace, Circuit, Gate, GateKind, SlicedCircuit};
pub use error::{Error, Result};
pub use graph::{gen_graph_er, gen_graph_ws, ProblemGraph};
pub use mapper::{map, Architecture, MapOptions, MappedProgram, TeleportEvent};
pub use metrics::{compute_metrics, MetricsReport};
pub use sweep::{run_sweep, SweepPlan, SweepResult};
