//! Text export of circuits in the OpenQASM 2.0 dialect.
//!
//! Output is deterministic byte-for-byte: UTF-8, LF line endings, one
//! instruction per line, floats printed in Rust's shortest round-trip form.
//! Two comment directives carry semantics the dialect itself cannot:
//! `// initial: <bits>` records the basis pattern the register starts from
//! (wire 0 first), and `// postselect q[i] == b` marks the measurement that
//! follows as a postselection.

use std::fmt::Write as _;

use crate::circuit::{Circuit, GateKind, Instruction};
use crate::{Error, Result};

/// Render a circuit as OpenQASM 2.0 text.
pub fn export_qasm(c: &Circuit) -> Result<String> {
    let n = c.n_qubits();
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "// name: {}", c.name);
    let wires: Vec<String> = (0..n).map(|q| format!("q[{q}]={}", c.wires.name(q))).collect();
    let _ = writeln!(out, "// wires: {}", wires.join(" "));
    let _ = writeln!(out, "// initial: {}", c.initial_bits);
    let _ = writeln!(out, "qreg q[{n}];");
    let _ = writeln!(out, "creg c[{n}];");
    for inst in &c.instructions {
        match inst {
            Instruction::Gate1Q { wire, kind } => match kind {
                GateKind::X => {
                    let _ = writeln!(out, "x q[{wire}];");
                }
                GateKind::Z => {
                    let _ = writeln!(out, "z q[{wire}];");
                }
                GateKind::H => {
                    let _ = writeln!(out, "h q[{wire}];");
                }
                GateKind::Ry(zeta) => {
                    let _ = writeln!(out, "ry({zeta}) q[{wire}];");
                }
                // Both reflections fit u3(t,0,pi) = [[cos(t/2), sin(t/2)],
                // [sin(t/2), -cos(t/2)]].
                GateKind::UXi(xi) => {
                    let _ = writeln!(out, "u3({xi},0,pi) q[{wire}];");
                }
                GateKind::UTheta(theta) => {
                    let _ = writeln!(out, "u3({},0,pi) q[{wire}];", 2.0 * theta);
                }
                GateKind::Custom(_) => {
                    return Err(Error::UnsupportedInstruction(format!(
                        "custom gate matrix on q[{wire}] has no named export"
                    )));
                }
            },
            Instruction::Cnot { control, target } => {
                let _ = writeln!(out, "cx q[{control}],q[{target}];");
            }
            Instruction::Measure { wire } => {
                let _ = writeln!(out, "measure q[{wire}] -> c[{wire}];");
            }
            Instruction::PostSelect { wire, bit } => {
                let _ = writeln!(out, "// postselect q[{wire}] == {bit}");
                let _ = writeln!(out, "measure q[{wire}] -> c[{wire}];");
            }
        }
    }
    Ok(out)
}
