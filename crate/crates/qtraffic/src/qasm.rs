//! OpenQASM 2.0 subset import and export.
//!
//! Supported statements: `OPENQASM 2.0;`, `include "qelib1.inc";`, a single
//! `qreg`, an optional `creg`, and the gates `h`, `x`, `rx`, `ry`, `rz`,
//! `u1` (single-qubit phase), `cx`, `cz`, `cp`/`cu1`, `swap`, and
//! `measure q[i] -> c[j]`. Anything else is a parse error naming the line.
//! Angles are plain decimal literals; exports use Rust's shortest
//! round-trip float formatting so export → import → export is byte-stable.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Serialize a circuit to QASM text. A `creg` is emitted only when the
/// circuit contains measurements.
pub fn export_qasm(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.width());
    if circuit
        .gates()
        .iter()
        .any(|g| g.kind() == GateKind::Measure)
    {
        let _ = writeln!(out, "creg c[{}];", circuit.width());
    }
    for gate in circuit.gates() {
        let q0 = gate.q0();
        match gate.kind() {
            GateKind::H => { let _ = writeln!(out, "h q[{q0}];"); }
            GateKind::X => { let _ = writeln!(out, "x q[{q0}];"); }
            GateKind::Rx(t) => { let _ = writeln!(out, "rx({t}) q[{q0}];"); }
            GateKind::Ry(t) => { let _ = writeln!(out, "ry({t}) q[{q0}];"); }
            GateKind::Rz(t) => { let _ = writeln!(out, "rz({t}) q[{q0}];"); }
            GateKind::Phase(t) => { let _ = writeln!(out, "u1({t}) q[{q0}];"); }
            GateKind::Measure => { let _ = writeln!(out, "measure q[{q0}] -> c[{q0}];"); }
            GateKind::Cnot => {
                let _ = writeln!(out, "cx q[{q0}],q[{}];", gate.q1().unwrap());
            }
            GateKind::Cz => {
                let _ = writeln!(out, "cz q[{q0}],q[{}];", gate.q1().unwrap());
            }
            GateKind::CPhase(t) => {
                let _ = writeln!(out, "cp({t}) q[{q0}],q[{}];", gate.q1().unwrap());
            }
            GateKind::Swap => {
                let _ = writeln!(out, "swap q[{q0}],q[{}];", gate.q1().unwrap());
            }
        }
    }
    out
}

/// Parse QASM text produced by [`export_qasm`] or an equivalent subset file.
pub fn import_qasm(source: &str, name: impl Into<String>) -> Result<Circuit> {
    let mut parser = Parser {
        circuit: None,
        name: name.into(),
        qreg: None,
        saw_version: false,
    };
    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let stmt = match raw.find("//") {
            Some(pos) => raw[..pos].trim(),
            None => raw.trim(),
        };
        if stmt.is_empty() {
            continue;
        }
        parser.statement(stmt, line)?;
    }
    parser
        .circuit
        .ok_or_else(|| Error::Parse {
            line: source.lines().count().max(1),
            message: "no qreg declaration found".into(),
        })
}

struct Parser {
    circuit: Option<Circuit>,
    name: String,
    qreg: Option<String>,
    saw_version: bool,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl Parser {
    fn statement(&mut self, stmt: &str, line: usize) -> Result<()> {
        let stmt = stmt
            .strip_suffix(';')
            .ok_or_else(|| parse_err(line, format!("missing `;` in `{stmt}`")))?
            .trim();

        if let Some(rest) = stmt.strip_prefix("OPENQASM") {
            if rest.trim() != "2.0" {
                return Err(parse_err(line, format!("unsupported version `{}`", rest.trim())));
            }
            self.saw_version = true;
            return Ok(());
        }
        if stmt.starts_with("include") {
            return Ok(());
        }
        if let Some(rest) = stmt.strip_prefix("qreg") {
            return self.qreg(rest.trim(), line);
        }
        if stmt.starts_with("creg") {
            return Ok(());
        }
        if let Some(rest) = stmt.strip_prefix("measure") {
            return self.measure(rest.trim(), line);
        }
        self.gate(stmt, line)
    }

    fn qreg(&mut self, decl: &str, line: usize) -> Result<()> {
        if self.circuit.is_some() {
            return Err(parse_err(line, "only one qreg is supported"));
        }
        let (reg, size) = parse_indexed(decl, line)?;
        if size == 0 {
            return Err(parse_err(line, "qreg must have at least one qubit"));
        }
        self.qreg = Some(reg.to_string());
        self.circuit = Some(Circuit::new(self.name.clone(), size));
        Ok(())
    }

    fn measure(&mut self, rest: &str, line: usize) -> Result<()> {
        let (src, _dst) = rest
            .split_once("->")
            .ok_or_else(|| parse_err(line, "measure needs `qubit -> bit`"))?;
        let q = self.qubit(src.trim(), line)?;
        self.push(Gate::single(GateKind::Measure, q), line)
    }

    fn gate(&mut self, stmt: &str, line: usize) -> Result<()> {
        let (head, operands) = stmt
            .split_once(char::is_whitespace)
            .ok_or_else(|| parse_err(line, format!("unknown statement `{stmt}`")))?;

        let (mnemonic, angle) = match head.split_once('(') {
            Some((m, args)) => {
                let args = args
                    .strip_suffix(')')
                    .ok_or_else(|| parse_err(line, "unterminated `(` in gate arguments"))?;
                let theta: f64 = args.trim().parse().map_err(|_| {
                    parse_err(line, format!("cannot parse angle `{}`", args.trim()))
                })?;
                (m, Some(theta))
            }
            None => (head, None),
        };

        let qubits: Vec<usize> = operands
            .split(',')
            .map(|op| self.qubit(op.trim(), line))
            .collect::<Result<_>>()?;

        let require = |arity: usize| -> Result<()> {
            if qubits.len() != arity {
                Err(parse_err(
                    line,
                    format!("`{mnemonic}` takes {arity} operand(s), got {}", qubits.len()),
                ))
            } else {
                Ok(())
            }
        };
        let theta = |gate: &str| -> Result<f64> {
            angle.ok_or_else(|| parse_err(line, format!("`{gate}` needs an angle argument")))
        };

        let gate = match mnemonic {
            "h" => { require(1)?; Gate::single(GateKind::H, qubits[0]) }
            "x" => { require(1)?; Gate::single(GateKind::X, qubits[0]) }
            "rx" => { require(1)?; Gate::single(GateKind::Rx(theta("rx")?), qubits[0]) }
            "ry" => { require(1)?; Gate::single(GateKind::Ry(theta("ry")?), qubits[0]) }
            "rz" => { require(1)?; Gate::single(GateKind::Rz(theta("rz")?), qubits[0]) }
            "u1" => { require(1)?; Gate::single(GateKind::Phase(theta("u1")?), qubits[0]) }
            "cx" => { require(2)?; Gate::two(GateKind::Cnot, qubits[0], qubits[1]) }
            "cz" => { require(2)?; Gate::two(GateKind::Cz, qubits[0], qubits[1]) }
            "cp" | "cu1" => {
                require(2)?;
                Gate::two(GateKind::CPhase(theta(mnemonic)?), qubits[0], qubits[1])
            }
            "swap" => { require(2)?; Gate::two(GateKind::Swap, qubits[0], qubits[1]) }
            other => return Err(parse_err(line, format!("unknown statement `{other}`"))),
        };
        self.push(gate, line)
    }

    fn qubit(&self, operand: &str, line: usize) -> Result<usize> {
        let (reg, index) = parse_indexed(operand, line)?;
        match &self.qreg {
            Some(declared) if declared == reg => Ok(index),
            Some(declared) => Err(parse_err(
                line,
                format!("unknown register `{reg}`, expected `{declared}`"),
            )),
            None => Err(parse_err(line, "gate before qreg declaration")),
        }
    }

    fn push(&mut self, gate: Result<Gate>, line: usize) -> Result<()> {
        let gate = gate.map_err(|e| parse_err(line, e.to_string()))?;
        match &mut self.circuit {
            Some(c) => c.push(gate).map_err(|e| parse_err(line, e.to_string())),
            None => Err(parse_err(line, "gate before qreg declaration")),
        }
    }
}

/// Split `name[index]` into its parts.
fn parse_indexed(text: &str, line: usize) -> Result<(&str, usize)> {
    let open = text
        .find('[')
        .ok_or_else(|| parse_err(line, format!("expected `name[index]`, got `{text}`")))?;
    let close = text
        .strip_suffix(']')
        .ok_or_else(|| parse_err(line, format!("expected `name[index]`, got `{text}`")))?;
    let name = text[..open].trim();
    let index: usize = close[open + 1..]
        .trim()
        .parse()
        .map_err(|_| parse_err(line, format!("bad index in `{text}`")))?;
    if name.is_empty() {
        return Err(parse_err(line, format!("missing register name in `{text}`")));
    }
    Ok((name, index))
}
