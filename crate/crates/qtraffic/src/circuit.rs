//! Gate-level circuit representation and dependency timeslicing.
//!
//! A [`Circuit`] is an ordered list of one- and two-qubit gates over virtual
//! qubits. [`slice()`] partitions it into [`Timeslice`]s with an ASAP
//! (as-soon-as-possible) layering: a gate runs one slice after the latest
//! earlier gate that shares a qubit with it. All gates occupy exactly one
//! timeslice regardless of kind.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trace::{Cell, TraceGrid};

/// Gate vocabulary. Angles are radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateKind {
    H,
    X,
    Rx(f64),
    Ry(f64),
    Rz(f64),
    Phase(f64),
    Cnot,
    Cz,
    CPhase(f64),
    Swap,
    Measure,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cz | GateKind::CPhase(_) | GateKind::Swap => 2,
            _ => 1,
        }
    }

    pub fn is_two_qubit(self) -> bool {
        self.arity() == 2
    }

    pub fn angle(self) -> Option<f64> {
        match self {
            GateKind::Rx(t) | GateKind::Ry(t) | GateKind::Rz(t) | GateKind::Phase(t)
            | GateKind::CPhase(t) => Some(t),
            _ => None,
        }
    }
}

/// One gate application. Operands are distinct and validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    kind: GateKind,
    q0: usize,
    q1: Option<usize>,
}

impl Gate {
    pub fn single(kind: GateKind, q: usize) -> Result<Gate> {
        if kind.arity() != 1 {
            return Err(Error::InvalidGate(format!(
                "{kind:?} takes two qubits, one given"
            )));
        }
        Gate::check_angle(kind)?;
        Ok(Gate { kind, q0: q, q1: None })
    }

    pub fn two(kind: GateKind, a: usize, b: usize) -> Result<Gate> {
        if kind.arity() != 2 {
            return Err(Error::InvalidGate(format!(
                "{kind:?} takes one qubit, two given"
            )));
        }
        if a == b {
            return Err(Error::InvalidGate(format!(
                "{kind:?} operands must be distinct, got {a} twice"
            )));
        }
        Gate::check_angle(kind)?;
        Ok(Gate { kind, q0: a, q1: Some(b) })
    }

    fn check_angle(kind: GateKind) -> Result<()> {
        if let Some(theta) = kind.angle() {
            if !theta.is_finite() {
                return Err(Error::InvalidGate(format!("non-finite angle {theta}")));
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn q0(&self) -> usize {
        self.q0
    }

    pub fn q1(&self) -> Option<usize> {
        self.q1
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.q0).chain(self.q1)
    }

    pub fn touches(&self, q: usize) -> bool {
        self.q0 == q || self.q1 == Some(q)
    }

    /// For two-qubit gates, the operand pair normalized as `(min, max)`.
    pub fn pair(&self) -> Option<(usize, usize)> {
        self.q1.map(|b| (self.q0.min(b), self.q0.max(b)))
    }
}

/// Ordered gate list over `width` virtual qubits.
///
/// The gate order is the data-dependency order: gates sharing a qubit
/// execute in list order, so any gate list accepted here is a valid
/// topological order of the dependency DAG.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    name: String,
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(name: impl Into<String>, width: usize) -> Circuit {
        Circuit {
            name: name.into(),
            width,
            gates: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        for q in gate.qubits() {
            if q >= self.width {
                return Err(Error::InvalidGate(format!(
                    "qubit {q} out of range for width {}",
                    self.width
                )));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn h(&mut self, q: usize) -> Result<()> {
        self.push(Gate::single(GateKind::H, q)?)
    }

    pub fn x(&mut self, q: usize) -> Result<()> {
        self.push(Gate::single(GateKind::X, q)?)
    }

    pub fn rx(&mut self, q: usize, theta: f64) -> Result<()> {
        self.push(Gate::single(GateKind::Rx(theta), q)?)
    }

    pub fn ry(&mut self, q: usize, theta: f64) -> Result<()> {
        self.push(Gate::single(GateKind::Ry(theta), q)?)
    }

    pub fn rz(&mut self, q: usize, theta: f64) -> Result<()> {
        self.push(Gate::single(GateKind::Rz(theta), q)?)
    }

    pub fn phase(&mut self, q: usize, theta: f64) -> Result<()> {
        self.push(Gate::single(GateKind::Phase(theta), q)?)
    }

    pub fn measure(&mut self, q: usize) -> Result<()> {
        self.push(Gate::single(GateKind::Measure, q)?)
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.push(Gate::two(GateKind::Cnot, control, target)?)
    }

    pub fn cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.push(Gate::two(GateKind::Cz, a, b)?)
    }

    pub fn cphase(&mut self, a: usize, b: usize, theta: f64) -> Result<()> {
        self.push(Gate::two(GateKind::CPhase(theta), a, b)?)
    }

    pub fn swap(&mut self, a: usize, b: usize) -> Result<()> {
        self.push(Gate::two(GateKind::Swap, a, b)?)
    }

    /// Gate count per qubit, over all gate kinds.
    pub fn gates_per_qubit(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.width];
        for gate in &self.gates {
            for q in gate.qubits() {
                counts[q] += 1;
            }
        }
        counts
    }
}

/// One scheduling step: a set of gates with pairwise disjoint operands.
#[derive(Debug, Clone, PartialEq)]
pub struct Timeslice {
    pub index: usize,
    pub gates: Vec<Gate>,
}

/// A circuit partitioned into dependency timeslices.
#[derive(Debug, Clone, PartialEq)]
pub struct SlicedCircuit {
    circuit: Circuit,
    slices: Vec<Timeslice>,
    /// Normalized `(min, max)` operand pairs of two-qubit gates, per slice,
    /// sorted for binary search.
    pairs: Vec<Vec<(usize, usize)>>,
}

impl SlicedCircuit {
    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn slices(&self) -> &[Timeslice] {
        &self.slices
    }

    pub fn depth(&self) -> usize {
        self.slices.len()
    }

    pub fn width(&self) -> usize {
        self.circuit.width()
    }

    /// Two-qubit interaction pairs of slice `t`, normalized and sorted.
    pub fn pairs(&self, t: usize) -> &[(usize, usize)] {
        &self.pairs[t]
    }

    /// True if qubits `i` and `j` share a two-qubit gate in slice `t`.
    pub fn interaction(&self, i: usize, j: usize, t: usize) -> bool {
        let key = (i.min(j), i.max(j));
        self.pairs[t].binary_search(&key).is_ok()
    }
}

/// ASAP layering: each gate lands at `1 + max(slice of latest predecessor on
/// each of its qubits)`, or slice 0 if it has none. The resulting slice count
/// equals the circuit depth.
pub fn slice(circuit: &Circuit) -> SlicedCircuit {
    let width = circuit.width();
    // ready[q] = first slice index free for qubit q.
    let mut ready = vec![0usize; width];
    let mut slices: Vec<Timeslice> = Vec::new();

    for gate in circuit.gates() {
        let t = gate.qubits().map(|q| ready[q]).max().unwrap_or(0);
        if t == slices.len() {
            slices.push(Timeslice { index: t, gates: Vec::new() });
        }
        slices[t].gates.push(*gate);
        for q in gate.qubits() {
            ready[q] = t + 1;
        }
    }

    let pairs = slices
        .iter()
        .map(|slice| {
            let mut pairs: Vec<(usize, usize)> = slice
                .gates
                .iter()
                .filter_map(|g| g.pair())
                .collect();
            pairs.sort_unstable();
            pairs
        })
        .collect();

    SlicedCircuit {
        circuit: circuit.clone(),
        slices,
        pairs,
    }
}

/// Virtual trace: one row per virtual qubit, one column per timeslice,
/// `Compute` exactly where a gate touches the qubit.
pub fn virtual_trace(sliced: &SlicedCircuit) -> TraceGrid {
    let mut grid = TraceGrid::new(sliced.width(), sliced.depth());
    for slice in sliced.slices() {
        for gate in &slice.gates {
            for q in gate.qubits() {
                grid.set(q, slice.index, Cell::Compute);
            }
        }
    }
    grid
}
