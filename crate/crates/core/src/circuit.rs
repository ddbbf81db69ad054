//! Circuit representation and builders for the scenario.
//!
//! The nine-wire register hosts three signal particles a, b, c (one per
//! laboratory) and three auxiliary pairs (alpha, alpha'), (beta, beta'),
//! (gamma, gamma'). Postselection is a first-class instruction so the exact
//! and sampled executors interpret one and the same circuit.

use serde::{Deserialize, Serialize};

use crate::gates::{self, Gate2x2, WPrepAngles};
use crate::{Error, Result};

/// Fixed wire indices for the scenario register.
pub mod wire {
    pub const A: usize = 0;
    pub const B: usize = 1;
    pub const C: usize = 2;
    pub const ALPHA: usize = 3;
    pub const ALPHA_PRIME: usize = 4;
    pub const BETA: usize = 5;
    pub const BETA_PRIME: usize = 6;
    pub const GAMMA: usize = 7;
    pub const GAMMA_PRIME: usize = 8;

    /// The six wires read out for the correlation analysis, in the order the
    /// six-particle state is written: a, alpha, b, beta, c, gamma.
    pub const ANALYSIS: [usize; 6] = [A, ALPHA, B, BETA, C, GAMMA];

    /// The three postselected fusion ancillas.
    pub const FUSION_ANCILLAS: [usize; 3] = [ALPHA_PRIME, BETA_PRIME, GAMMA_PRIME];
}

/// Bijection between wire names and qubit indices for a circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireMap {
    names: Vec<&'static str>,
}

impl WireMap {
    /// The fixed nine-wire scenario map: a, b, c, alpha, alpha', beta,
    /// beta', gamma, gamma' on qubits 0..9 in that order.
    pub fn scenario() -> Self {
        Self {
            names: vec![
                "a", "b", "c", "alpha", "alpha'", "beta", "beta'", "gamma", "gamma'",
            ],
        }
    }

    pub fn signals() -> Self {
        Self { names: vec!["a", "b", "c"] }
    }

    pub fn custom(names: Vec<&'static str>) -> Self {
        Self { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, qubit: usize) -> &'static str {
        self.names[qubit]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| *n == name)
    }
}

/// Named single-qubit gates; the matrix is derived from the kind so the
/// exporter can name every instruction it writes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    X,
    Z,
    H,
    Ry(f64),
    UXi(f64),
    UTheta(f64),
    Custom(Gate2x2),
}

impl GateKind {
    pub fn matrix(&self) -> Result<Gate2x2> {
        Ok(match self {
            GateKind::X => gates::pauli_x(),
            GateKind::Z => gates::pauli_z(),
            GateKind::H => gates::hadamard(),
            GateKind::Ry(zeta) => gates::ry(*zeta)?,
            GateKind::UXi(xi) => gates::u_xi(*xi)?,
            GateKind::UTheta(theta) => gates::u_theta(*theta)?,
            GateKind::Custom(g) => *g,
        })
    }
}

/// One step of a circuit, in execution order.
#[derive(Debug, Clone, PartialEq)]
pub enum Instruction {
    Gate1Q { wire: usize, kind: GateKind },
    Cnot { control: usize, target: usize },
    Measure { wire: usize },
    PostSelect { wire: usize, bit: u8 },
}

/// Which of the two W-state preparations to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WPrepMethod {
    Rotation,
    Unitary,
}

impl WPrepMethod {
    pub fn label(&self) -> &'static str {
        match self {
            WPrepMethod::Rotation => "rotation",
            WPrepMethod::Unitary => "unitary",
        }
    }
}

impl std::str::FromStr for WPrepMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rotation" => Ok(WPrepMethod::Rotation),
            "unitary" => Ok(WPrepMethod::Unitary),
            other => Err(Error::Parse(format!("unknown W preparation method `{other}`"))),
        }
    }
}

/// Choice of measurement basis per laboratory: the friend's recorded bit or
/// the joint (Bell-basis) measurement of signal and record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    Computational,
    Bell,
}

/// One of the eight measurement settings `(k1, k2, k3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementSetting {
    pub k1: u8,
    pub k2: u8,
    pub k3: u8,
}

impl MeasurementSetting {
    /// All eight settings in the canonical table order, used for every
    /// serialization in this crate.
    pub const ALL: [MeasurementSetting; 8] = [
        MeasurementSetting { k1: 0, k2: 0, k3: 0 },
        MeasurementSetting { k1: 1, k2: 0, k3: 0 },
        MeasurementSetting { k1: 0, k2: 1, k3: 0 },
        MeasurementSetting { k1: 0, k2: 0, k3: 1 },
        MeasurementSetting { k1: 1, k2: 1, k3: 0 },
        MeasurementSetting { k1: 1, k2: 0, k3: 1 },
        MeasurementSetting { k1: 0, k2: 1, k3: 1 },
        MeasurementSetting { k1: 1, k2: 1, k3: 1 },
    ];

    pub fn new(k1: u8, k2: u8, k3: u8) -> Result<Self> {
        if k1 > 1 || k2 > 1 || k3 > 1 {
            return Err(Error::Parse(format!("setting bits must be 0 or 1, got ({k1},{k2},{k3})")));
        }
        Ok(Self { k1, k2, k3 })
    }

    /// Position in [`Self::ALL`].
    pub fn table_index(&self) -> usize {
        Self::ALL.iter().position(|s| s == self).expect("setting is one of the eight")
    }

    pub fn label(&self) -> String {
        format!("A{}B{}C{}", self.k1, self.k2, self.k3)
    }

    pub fn basis_for(&self, party: usize) -> Basis {
        let k = match party {
            0 => self.k1,
            1 => self.k2,
            _ => self.k3,
        };
        if k == 0 { Basis::Computational } else { Basis::Bell }
    }
}

impl std::str::FromStr for MeasurementSetting {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let b = s.as_bytes();
        let bit = |i: usize| -> Result<u8> {
            match b.get(i) {
                Some(b'0') => Ok(0),
                Some(b'1') => Ok(1),
                _ => Err(Error::Parse(format!("bad measurement setting `{s}`, expected e.g. A1B0C0"))),
            }
        };
        if b.len() == 6 && (b[0] == b'A' || b[0] == b'a') && (b[2] == b'B' || b[2] == b'b')
            && (b[4] == b'C' || b[4] == b'c')
        {
            return MeasurementSetting::new(bit(1)?, bit(3)?, bit(5)?);
        }
        if b.len() == 3 {
            return MeasurementSetting::new(bit(0)?, bit(1)?, bit(2)?);
        }
        Err(Error::Parse(format!("bad measurement setting `{s}`, expected e.g. A1B0C0 or 100")))
    }
}

impl std::fmt::Display for MeasurementSetting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Ordered instruction list over a named wire register, plus the basis
/// pattern the register starts from.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub name: String,
    pub wires: WireMap,
    pub initial_bits: String,
    pub instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new(name: impl Into<String>, wires: WireMap, initial_bits: impl Into<String>) -> Self {
        let initial_bits = initial_bits.into();
        debug_assert_eq!(initial_bits.len(), wires.len());
        Self { name: name.into(), wires, initial_bits, instructions: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.wires.len()
    }

    pub fn gate(&mut self, wire: usize, kind: GateKind) -> &mut Self {
        self.instructions.push(Instruction::Gate1Q { wire, kind });
        self
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> &mut Self {
        self.instructions.push(Instruction::Cnot { control, target });
        self
    }

    pub fn measure(&mut self, wire: usize) -> &mut Self {
        self.instructions.push(Instruction::Measure { wire });
        self
    }

    pub fn postselect(&mut self, wire: usize, bit: u8) -> &mut Self {
        self.instructions.push(Instruction::PostSelect { wire, bit });
        self
    }

    pub fn extend(&mut self, other: &Circuit) -> &mut Self {
        self.instructions.extend(other.instructions.iter().cloned());
        self
    }

    pub fn cnot_count(&self) -> usize {
        self.instructions
            .iter()
            .filter(|i| matches!(i, Instruction::Cnot { .. }))
            .count()
    }

    /// Wires carrying a `Measure` instruction, in instruction order.
    pub fn measured_wires(&self) -> Vec<usize> {
        self.instructions
            .iter()
            .filter_map(|i| match i {
                Instruction::Measure { wire } => Some(*wire),
                _ => None,
            })
            .collect()
    }
}

/// W-state preparation from `|000>` using y-rotations; four CNOTs and a
/// final X on every signal wire.
pub fn w_state_rotation_circuit() -> Circuit {
    let ang = WPrepAngles::new();
    let mut c = Circuit::new("w-prep-rotation", WireMap::signals(), "000");
    c.gate(wire::B, GateKind::Ry(ang.zeta1))
        .cnot(wire::B, wire::C)
        .gate(wire::C, GateKind::Ry(ang.zeta2))
        .cnot(wire::C, wire::B)
        .gate(wire::B, GateKind::Ry(ang.zeta3))
        .cnot(wire::B, wire::A)
        .cnot(wire::C, wire::A)
        .gate(wire::A, GateKind::X)
        .gate(wire::B, GateKind::X)
        .gate(wire::C, GateKind::X);
    c
}

/// W-state preparation from `|100>` using the reflection gates; also four
/// CNOTs.
pub fn w_state_unitary_circuit() -> Circuit {
    let ang = WPrepAngles::new();
    let mut c = Circuit::new("w-prep-unitary", WireMap::signals(), "100");
    c.gate(wire::B, GateKind::UXi(ang.xi1))
        .gate(wire::B, GateKind::H)
        .cnot(wire::A, wire::B)
        .gate(wire::B, GateKind::H)
        .gate(wire::B, GateKind::UXi(ang.xi1))
        .cnot(wire::B, wire::A)
        .gate(wire::C, GateKind::UXi(ang.xi2))
        .gate(wire::C, GateKind::H)
        .cnot(wire::B, wire::C)
        .gate(wire::C, GateKind::H)
        .gate(wire::C, GateKind::UXi(ang.xi2))
        .cnot(wire::C, wire::B);
    c
}

/// Standalone two-wire singlet preparation: H then CNOT, starting from
/// `|11>`, yields `(|01> - |10>)/sqrt(2)`.
pub fn bell_singlet_circuit() -> Circuit {
    let mut c = Circuit::new("bell-singlet", WireMap::custom(vec!["x", "x'"]), "11");
    c.gate(0, GateKind::H).cnot(0, 1);
    c
}

fn append_bell_prep(c: &mut Circuit, x: usize, x_prime: usize) {
    c.gate(x, GateKind::H).cnot(x, x_prime);
}

/// Fusion stage fragment over the scenario register.
///
/// Each laboratory copies its signal onto the primed ancilla with a CNOT and
/// postselects the ancilla on zero, keeping the parallel components. The
/// trailing Z on each signal wire supplies the projector's relative minus
/// sign on the `|11>` branch; without it the singlet ancillas leave the kept
/// state with the sign of its sin-theta part flipped.
pub fn fusion_stage() -> Circuit {
    let mut c = Circuit::new("fusion-stage", WireMap::scenario(), "000000000");
    c.cnot(wire::A, wire::ALPHA_PRIME)
        .cnot(wire::B, wire::BETA_PRIME)
        .cnot(wire::C, wire::GAMMA_PRIME)
        .postselect(wire::ALPHA_PRIME, 0)
        .postselect(wire::BETA_PRIME, 0)
        .postselect(wire::GAMMA_PRIME, 0)
        .gate(wire::A, GateKind::Z)
        .gate(wire::B, GateKind::Z)
        .gate(wire::C, GateKind::Z);
    c
}

/// Measurement stage fragment for one setting.
///
/// A Bell-basis party appends CNOT(signal -> record) and H(signal); a
/// computational-basis party appends nothing. All six analysis wires are
/// then measured.
pub fn setting_stage(setting: MeasurementSetting) -> Circuit {
    let mut c = Circuit::new(
        format!("setting-{}", setting.label()),
        WireMap::scenario(),
        "000000000",
    );
    let parties = [(wire::A, wire::ALPHA), (wire::B, wire::BETA), (wire::C, wire::GAMMA)];
    for (party, (signal, record)) in parties.iter().enumerate() {
        if setting.basis_for(party) == Basis::Bell {
            c.cnot(*signal, *record).gate(*signal, GateKind::H);
        }
    }
    for w in wire::ANALYSIS {
        c.measure(w);
    }
    c
}

/// The complete executable scenario circuit: W preparation, signal rotation,
/// three singlet preparations, fusion stage, measurement stage.
pub fn scenario_circuit(
    theta: f64,
    setting: MeasurementSetting,
    w_method: WPrepMethod,
) -> Result<Circuit> {
    if !theta.is_finite() {
        return Err(Error::NonFiniteAngle(theta));
    }
    let (w_prep, signal_bits) = match w_method {
        WPrepMethod::Rotation => (w_state_rotation_circuit(), "000"),
        WPrepMethod::Unitary => (w_state_unitary_circuit(), "100"),
    };
    let initial = format!("{signal_bits}111111");
    let mut c = Circuit::new(
        format!("scenario-{}-{}", setting.label(), w_method.label()),
        WireMap::scenario(),
        initial,
    );
    c.extend(&w_prep);
    c.gate(wire::A, GateKind::UTheta(theta));
    append_bell_prep(&mut c, wire::ALPHA, wire::ALPHA_PRIME);
    append_bell_prep(&mut c, wire::BETA, wire::BETA_PRIME);
    append_bell_prep(&mut c, wire::GAMMA, wire::GAMMA_PRIME);
    c.extend(&fusion_stage());
    c.extend(&setting_stage(setting));
    Ok(c)
}

/// The five-wire fusion demonstration for Alice's laboratory alone: W state,
/// one singlet, the fusion CNOT, measurement of everything, postselection of
/// the primed ancilla on zero.
pub fn fusion_demo_circuit() -> Circuit {
    let mut c = Circuit::new(
        "fusion-demo",
        WireMap::custom(vec!["a", "b", "c", "alpha", "alpha'"]),
        "00011",
    );
    c.extend(&w_state_rotation_circuit());
    append_bell_prep(&mut c, 3, 4);
    c.cnot(0, 4);
    c.postselect(4, 0);
    for w in [0, 1, 2, 3] {
        c.measure(w);
    }
    c
}
