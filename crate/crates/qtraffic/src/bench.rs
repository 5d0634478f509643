//! Deterministic generators for the benchmark circuit families.
//!
//! Eight families: the Cuccaro ripple-carry adder, Grover's main routine,
//! GHZ state preparation, the quantum Fourier transform, the QAOA MaxCut
//! ansatz on Erdős–Rényi and Watts–Strogatz input graphs, and two variants
//! of the VQE hardware-efficient ansatz. Identical [`BenchSpec`]s (including
//! the seed) always produce identical circuits.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::graph::{gen_graph_er, gen_graph_ws, ProblemGraph};

/// Fixed rotation angle used for the variational single-qubit layers.
/// The classical parameter optimization loop is out of scope, so ansatz
/// angles carry no information; any fixed constant gives the same traffic.
const ANSATZ_ANGLE: f64 = FRAC_PI_4;
const MIXER_ANGLE: f64 = FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchFamily {
    Cuccaro,
    Grover,
    Ghz,
    Qft,
    QaoaEr,
    QaoaWs,
    VqeHea1,
    VqeHea2,
}

impl BenchFamily {
    pub const ALL: [BenchFamily; 8] = [
        BenchFamily::Cuccaro,
        BenchFamily::Grover,
        BenchFamily::Ghz,
        BenchFamily::Qft,
        BenchFamily::QaoaEr,
        BenchFamily::QaoaWs,
        BenchFamily::VqeHea1,
        BenchFamily::VqeHea2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchFamily::Cuccaro => "cuccaro",
            BenchFamily::Grover => "grover",
            BenchFamily::Ghz => "ghz",
            BenchFamily::Qft => "qft",
            BenchFamily::QaoaEr => "qaoa_er",
            BenchFamily::QaoaWs => "qaoa_ws",
            BenchFamily::VqeHea1 => "vqe_hea1",
            BenchFamily::VqeHea2 => "vqe_hea2",
        }
    }
}

impl fmt::Display for BenchFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BenchFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<BenchFamily> {
        BenchFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown benchmark family `{s}`")))
    }
}

/// Full description of one benchmark instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSpec {
    pub family: BenchFamily,
    /// Total qubit count.
    pub n: usize,
    /// Grover iterations.
    #[serde(default = "default_one")]
    pub k: usize,
    /// Ansatz layers for QAOA and VQE.
    #[serde(default = "default_one")]
    pub l: usize,
    /// RNG seed for the QAOA input graphs.
    #[serde(default)]
    pub seed: u64,
    /// Erdős–Rényi edge probability.
    #[serde(default = "default_p")]
    pub p: f64,
    /// Watts–Strogatz ring degree.
    #[serde(default = "default_kws")]
    pub kws: usize,
    /// Watts–Strogatz rewiring probability.
    #[serde(default = "default_beta")]
    pub beta: f64,
}

fn default_one() -> usize {
    1
}

fn default_p() -> f64 {
    0.2
}

fn default_kws() -> usize {
    4
}

fn default_beta() -> f64 {
    0.1
}

impl BenchSpec {
    pub fn new(family: BenchFamily, n: usize) -> BenchSpec {
        BenchSpec {
            family,
            n,
            k: 1,
            l: 1,
            seed: 0,
            p: 0.2,
            kws: 4,
            beta: 0.1,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> BenchSpec {
        self.seed = seed;
        self
    }

    pub fn generate(&self) -> Result<Circuit> {
        if self.k < 1 {
            return Err(Error::InvalidParameter(
                "iteration count k must be at least 1".into(),
            ));
        }
        if self.l < 1 {
            return Err(Error::InvalidParameter(
                "layer count l must be at least 1".into(),
            ));
        }
        match self.family {
            BenchFamily::Cuccaro => gen_cuccaro(self.n),
            BenchFamily::Grover => gen_grover(self.n, self.k),
            BenchFamily::Ghz => gen_ghz(self.n),
            BenchFamily::Qft => gen_qft(self.n),
            BenchFamily::QaoaEr => {
                let graph = gen_graph_er(self.n, self.p, self.seed)?;
                gen_qaoa(&graph, self.l)
            }
            BenchFamily::QaoaWs => {
                let graph = gen_graph_ws(self.n, self.kws, self.beta, self.seed)?;
                gen_qaoa(&graph, self.l)
            }
            BenchFamily::VqeHea1 => gen_vqe_hea(self.n, self.l, VqeVariant::Sequential),
            BenchFamily::VqeHea2 => gen_vqe_hea(self.n, self.l, VqeVariant::Parallel),
        }
    }
}

fn width_error(family: &str, n: usize, requirement: &str) -> Error {
    Error::InvalidParameter(format!("{family} needs {requirement}, got n = {n}"))
}

/// GHZ state preparation: H on qubit 0, then CNOT(0, i) for i = 1..n-1.
/// Exactly `n` gates.
pub fn gen_ghz(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(width_error("ghz", n, "at least 2 qubits"));
    }
    let mut c = Circuit::new(format!("ghz_{n}"), n);
    c.h(0)?;
    for i in 1..n {
        c.cnot(0, i)?;
    }
    Ok(c)
}

/// Textbook QFT: per qubit q an H followed by CPHASE(pi / 2^(m-q)) against
/// every later qubit m, then the SWAP network reversing qubit order.
/// Gate count `n + n(n-1)/2 + floor(n/2)`.
pub fn gen_qft(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(width_error("qft", n, "at least 2 qubits"));
    }
    let mut c = Circuit::new(format!("qft_{n}"), n);
    for q in 0..n {
        c.h(q)?;
        for m in (q + 1)..n {
            let theta = PI / f64::powi(2.0, (m - q) as i32);
            c.cphase(q, m, theta)?;
        }
    }
    for i in 0..n / 2 {
        c.swap(i, n - 1 - i)?;
    }
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TofWire {
    C0,
    C1,
    T,
}

/// Standard 6-CNOT, 9-single-qubit Toffoli network, emitted in place.
fn toffoli(c: &mut Circuit, c0: usize, c1: usize, t: usize) -> Result<()> {
    use TofWire::*;
    let wire = |w: TofWire| match w {
        C0 => c0,
        C1 => c1,
        T => t,
    };
    c.h(wire(T))?;
    c.cnot(wire(C1), wire(T))?;
    c.phase(wire(T), -FRAC_PI_4)?;
    c.cnot(wire(C0), wire(T))?;
    c.phase(wire(T), FRAC_PI_4)?;
    c.cnot(wire(C1), wire(T))?;
    c.phase(wire(T), -FRAC_PI_4)?;
    c.cnot(wire(C0), wire(T))?;
    c.phase(wire(C1), FRAC_PI_4)?;
    c.phase(wire(T), FRAC_PI_4)?;
    c.h(wire(T))?;
    c.cnot(wire(C0), wire(C1))?;
    c.phase(wire(C0), FRAC_PI_4)?;
    c.phase(wire(C1), -FRAC_PI_4)?;
    c.cnot(wire(C0), wire(C1))?;
    Ok(())
}

/// MAJ block on wires (carry, b, a).
fn maj(c: &mut Circuit, carry: usize, b: usize, a: usize) -> Result<()> {
    c.cnot(a, b)?;
    c.cnot(a, carry)?;
    toffoli(c, carry, b, a)
}

/// UMA block on wires (carry, b, a), the two-CNOT form.
fn uma(c: &mut Circuit, carry: usize, b: usize, a: usize) -> Result<()> {
    toffoli(c, carry, b, a)?;
    c.cnot(a, carry)?;
    c.cnot(carry, b)
}

/// Cuccaro ripple-carry adder on `n = 2r + 2` qubits: two r-bit registers
/// interleaved as `c0, b0, a0, b1, a1, ..., z` so every two-qubit gate stays
/// within a three-wire window. `r` MAJ blocks ripple the carry up, a CNOT
/// copies it to `z`, and `r` UMA blocks ripple back down. Each MAJ/UMA is
/// 2 CNOTs plus one expanded Toffoli, 17 gates, for `17(n-2) + 1` total.
pub fn gen_cuccaro(n: usize) -> Result<Circuit> {
    if n < 4 || !(n - 2).is_multiple_of(2) {
        return Err(width_error(
            "cuccaro",
            n,
            "an even qubit count of at least 4 (two registers plus ancilla and carry-out)",
        ));
    }
    let r = (n - 2) / 2;
    let mut c = Circuit::new(format!("cuccaro_{n}"), n);
    // Wire i of register pair j: carry chain reuses a_{j-1} as the next carry.
    let carry = |j: usize| if j == 0 { 0 } else { 2 * j };
    let b = |j: usize| 2 * j + 1;
    let a = |j: usize| 2 * j + 2;

    for j in 0..r {
        maj(&mut c, carry(j), b(j), a(j))?;
    }
    c.cnot(a(r - 1), n - 1)?;
    for j in (0..r).rev() {
        uma(&mut c, carry(j), b(j), a(j))?;
    }
    Ok(c)
}

/// Grover's main routine: a global H layer, then `k` oracle-diffuser cycles.
/// The oracle marks a fixed pattern by conjugating with X on the first half
/// of the register and applying CZ(i, i + n/2) across the halves; the
/// diffuser is the usual H/X conjugated CZ layer. `n + 6kn` gates.
pub fn gen_grover(n: usize, k: usize) -> Result<Circuit> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(width_error("grover", n, "an even qubit count of at least 4"));
    }
    if k < 1 {
        return Err(Error::InvalidParameter(
            "grover needs at least one iteration".into(),
        ));
    }
    let half = n / 2;
    let mut c = Circuit::new(format!("grover_{n}"), n);
    for q in 0..n {
        c.h(q)?;
    }
    for _ in 0..k {
        // Oracle.
        for q in 0..half {
            c.x(q)?;
        }
        for i in 0..half {
            c.cz(i, i + half)?;
        }
        for q in 0..half {
            c.x(q)?;
        }
        // Diffuser.
        for q in 0..n {
            c.h(q)?;
        }
        for q in 0..n {
            c.x(q)?;
        }
        for i in 0..half {
            c.cz(i, i + half)?;
        }
        for q in 0..n {
            c.x(q)?;
        }
        for q in 0..n {
            c.h(q)?;
        }
    }
    Ok(c)
}

/// QAOA MaxCut ansatz over a problem graph: a global H layer, then per layer
/// one CNOT-RZ-CNOT block per edge (in sorted edge order) followed by RX on
/// every qubit. `n + l(3|E| + n)` gates.
pub fn gen_qaoa(graph: &ProblemGraph, l: usize) -> Result<Circuit> {
    if l < 1 {
        return Err(Error::InvalidParameter(
            "qaoa needs at least one layer".into(),
        ));
    }
    let n = graph.vertex_count();
    let mut c = Circuit::new(format!("qaoa_{n}"), n);
    for q in 0..n {
        c.h(q)?;
    }
    for _ in 0..l {
        for (u, v) in graph.edges() {
            c.cnot(u, v)?;
            c.rz(v, ANSATZ_ANGLE)?;
            c.cnot(u, v)?;
        }
        for q in 0..n {
            c.rx(q, MIXER_ANGLE)?;
        }
    }
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VqeVariant {
    /// CNOT chain (0,1), (1,2), ..., depth n-1 per layer.
    Sequential,
    /// All even pairs, then all odd pairs, depth 2 per layer.
    Parallel,
}

/// Hardware-efficient VQE ansatz: per layer RX then RY on every qubit,
/// followed by nearest-neighbor CNOTs in the chosen pattern.
/// `l(3n - 1)` gates for both variants.
pub fn gen_vqe_hea(n: usize, l: usize, variant: VqeVariant) -> Result<Circuit> {
    if n < 2 {
        return Err(width_error("vqe", n, "at least 2 qubits"));
    }
    if l < 1 {
        return Err(Error::InvalidParameter(
            "vqe needs at least one layer".into(),
        ));
    }
    let tag = match variant {
        VqeVariant::Sequential => "vqe_hea1",
        VqeVariant::Parallel => "vqe_hea2",
    };
    let mut c = Circuit::new(format!("{tag}_{n}"), n);
    for _ in 0..l {
        for q in 0..n {
            c.rx(q, ANSATZ_ANGLE)?;
        }
        for q in 0..n {
            c.ry(q, ANSATZ_ANGLE)?;
        }
        match variant {
            VqeVariant::Sequential => {
                for i in 0..n - 1 {
                    c.cnot(i, i + 1)?;
                }
            }
            VqeVariant::Parallel => {
                for i in (0..n - 1).step_by(2) {
                    c.cnot(i, i + 1)?;
                }
                for i in (1..n - 1).step_by(2) {
                    c.cnot(i, i + 1)?;
                }
            }
        }
    }
    Ok(c)
}
