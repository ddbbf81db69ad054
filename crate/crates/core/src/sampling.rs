//! Circuit execution: exact evolution with renormalizing postselection, and
//! shot-based sampling from the exact distribution.
//!
//! Sampling is deterministic given a seed. Every shot draws from a
//! counter-based stream keyed by `(seed, stream id)` at the shot's own
//! index, so splitting the shot range across workers cannot change a single
//! outcome; merged counts are identical to the single-threaded run.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::{wire, Circuit, Instruction, MeasurementSetting, WPrepMethod};
use crate::circuit::scenario_circuit;
use crate::rng::CounterRng;
use crate::statevector::StateVector;
use crate::{Error, Result};

/// One valid shot collapsed to the three +/-1 laboratory outcomes,
/// `v = (-1)^bit` of the signal wire after the measurement stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OutcomeTriple {
    pub v1: i8,
    pub v2: i8,
    pub v3: i8,
}

impl OutcomeTriple {
    /// All eight triples in table column order: +++ first, --- last,
    /// the first laboratory most significant.
    pub const ALL: [OutcomeTriple; 8] = [
        OutcomeTriple { v1: 1, v2: 1, v3: 1 },
        OutcomeTriple { v1: 1, v2: 1, v3: -1 },
        OutcomeTriple { v1: 1, v2: -1, v3: 1 },
        OutcomeTriple { v1: 1, v2: -1, v3: -1 },
        OutcomeTriple { v1: -1, v2: 1, v3: 1 },
        OutcomeTriple { v1: -1, v2: 1, v3: -1 },
        OutcomeTriple { v1: -1, v2: -1, v3: 1 },
        OutcomeTriple { v1: -1, v2: -1, v3: -1 },
    ];

    pub fn from_bits(a: u8, b: u8, c: u8) -> Self {
        let v = |bit: u8| if bit == 0 { 1 } else { -1 };
        Self { v1: v(a), v2: v(b), v3: v(c) }
    }

    /// Position in [`Self::ALL`].
    pub fn index(&self) -> usize {
        let bit = |v: i8| usize::from(v < 0);
        (bit(self.v1) << 2) | (bit(self.v2) << 1) | bit(self.v3)
    }

    pub fn product(&self) -> i8 {
        self.v1 * self.v2 * self.v3
    }

    pub fn label(&self) -> String {
        let ch = |v: i8| if v > 0 { '+' } else { '-' };
        format!("{}{}{}", ch(self.v1), ch(self.v2), ch(self.v3))
    }
}

/// Shot counts over the eight outcome triples for one setting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsTable {
    /// Counts indexed in [`OutcomeTriple::ALL`] order.
    pub counts: [u64; 8],
    pub valid_shots: u64,
    pub attempted_shots: u64,
}

impl CountsTable {
    pub fn count(&self, t: OutcomeTriple) -> u64 {
        self.counts[t.index()]
    }
}

/// How shots are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingMode {
    /// Draw valid outcomes directly from the exact postselected
    /// distribution; every shot is valid.
    ExactPostselect,
    /// Sample all nine wires from the full state and discard shots whose
    /// fusion ancillas are not all zero; `shots` counts attempts.
    PhysicalRejection,
}

impl SamplingMode {
    pub fn label(&self) -> &'static str {
        match self {
            SamplingMode::ExactPostselect => "exact_postselect",
            SamplingMode::PhysicalRejection => "physical_rejection",
        }
    }
}

/// Everything a sampled scenario run needs; a given config and seed fully
/// determine the resulting table.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub shots: u64,
    pub seed: u64,
    pub mode: SamplingMode,
    pub theta: f64,
    pub setting: MeasurementSetting,
    pub w_method: WPrepMethod,
    pub workers: usize,
}

impl RunConfig {
    pub fn new(theta: f64, setting: MeasurementSetting, shots: u64, seed: u64) -> Self {
        Self {
            shots,
            seed,
            mode: SamplingMode::ExactPostselect,
            theta,
            setting,
            w_method: WPrepMethod::Rotation,
            workers: 1,
        }
    }
}

/// Exact evolution honoring postselection instructions; returns the final
/// state and the cumulative probability of the kept branches.
pub fn run_to_state(c: &Circuit) -> Result<(StateVector, f64)> {
    let mut state = StateVector::basis_state(c.n_qubits(), &c.initial_bits)?;
    let mut keep_prob = 1.0;
    for inst in &c.instructions {
        match inst {
            Instruction::Gate1Q { wire, kind } => state.apply_1q(*wire, &kind.matrix()?)?,
            Instruction::Cnot { control, target } => state.apply_cnot(*control, *target)?,
            Instruction::Measure { .. } => {}
            Instruction::PostSelect { wire, bit } => keep_prob *= state.postselect(*wire, *bit)?,
        }
    }
    Ok((state, keep_prob))
}

/// Exact evolution of the unitary part only; postselections are collected
/// as `(wire, bit)` requirements instead of being applied.
pub fn run_unitary_part(c: &Circuit) -> Result<(StateVector, Vec<(usize, u8)>)> {
    let mut state = StateVector::basis_state(c.n_qubits(), &c.initial_bits)?;
    let mut requirements = Vec::new();
    for inst in &c.instructions {
        match inst {
            Instruction::Gate1Q { wire, kind } => state.apply_1q(*wire, &kind.matrix()?)?,
            Instruction::Cnot { control, target } => state.apply_cnot(*control, *target)?,
            Instruction::Measure { .. } => {}
            Instruction::PostSelect { wire, bit } => requirements.push((*wire, *bit)),
        }
    }
    Ok((state, requirements))
}

/// Exact outcome-triple distribution for one setting, in
/// [`OutcomeTriple::ALL`] order.
pub fn run_exact(
    theta: f64,
    setting: MeasurementSetting,
    w_method: WPrepMethod,
) -> Result<[f64; 8]> {
    let circuit = scenario_circuit(theta, setting, w_method)?;
    let (state, _) = run_to_state(&circuit)?;
    let mut probs = [0.0f64; 8];
    for (idx, p) in state.probabilities().into_iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let bit = |w: usize| ((idx >> w) & 1) as u8;
        let triple = OutcomeTriple::from_bits(bit(wire::A), bit(wire::B), bit(wire::C));
        probs[triple.index()] += p;
    }
    Ok(probs)
}

fn inverse_cdf(cumulative: &[f64], r: f64) -> usize {
    let mut idx = cumulative.partition_point(|&c| c <= r).min(cumulative.len() - 1);
    // Never land on a zero-width bin when r falls on a float boundary.
    while idx > 0 && cumulative[idx] == cumulative[idx - 1] {
        idx -= 1;
    }
    idx
}

fn cumulative_sums(probs: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    probs
        .iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect()
}

/// Split `0..shots` into at most `workers` contiguous ranges, run `job` on
/// each (in parallel when workers > 1) and fold the partial results in range
/// order. Outcomes depend only on the shot index, so the fold equals the
/// single-threaded result.
fn split_shots<T, F>(shots: u64, workers: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(std::ops::Range<u64>) -> T + Sync,
{
    let workers = workers.clamp(1, 64).min(shots.max(1) as usize);
    if workers == 1 {
        return vec![job(0..shots)];
    }
    let chunk = shots / workers as u64;
    let rem = shots % workers as u64;
    let mut ranges = Vec::with_capacity(workers);
    let mut start = 0u64;
    for w in 0..workers as u64 {
        let len = chunk + u64::from(w < rem);
        ranges.push(start..start + len);
        start += len;
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| scope.spawn(|| job(range)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Sample a counts table for one setting.
pub fn run_sampled(cfg: &RunConfig) -> Result<CountsTable> {
    if cfg.shots == 0 {
        return Err(Error::ZeroShots);
    }
    let rng = CounterRng::new(cfg.seed, cfg.setting.table_index() as u64);
    match cfg.mode {
        SamplingMode::ExactPostselect => {
            let probs = run_exact(cfg.theta, cfg.setting, cfg.w_method)?;
            let cdf = cumulative_sums(&probs);
            let partials = split_shots(cfg.shots, cfg.workers, |range| {
                let mut counts = [0u64; 8];
                for i in range {
                    counts[inverse_cdf(&cdf, rng.f64_at(i))] += 1;
                }
                counts
            });
            let mut counts = [0u64; 8];
            for part in partials {
                for (total, c) in counts.iter_mut().zip(part) {
                    *total += c;
                }
            }
            Ok(CountsTable { counts, valid_shots: cfg.shots, attempted_shots: cfg.shots })
        }
        SamplingMode::PhysicalRejection => {
            let circuit = scenario_circuit(cfg.theta, cfg.setting, cfg.w_method)?;
            let (state, requirements) = run_unitary_part(&circuit)?;
            let cdf = cumulative_sums(&state.probabilities());
            let ok_mask: usize = requirements.iter().map(|(w, _)| 1usize << w).sum();
            let ok_value: usize = requirements
                .iter()
                .filter(|(_, bit)| *bit == 1)
                .map(|(w, _)| 1usize << w)
                .sum();
            let partials = split_shots(cfg.shots, cfg.workers, |range| {
                let mut counts = [0u64; 8];
                let mut valid = 0u64;
                for i in range {
                    let idx = inverse_cdf(&cdf, rng.f64_at(i));
                    if idx & ok_mask != ok_value {
                        continue;
                    }
                    valid += 1;
                    let bit = |w: usize| ((idx >> w) & 1) as u8;
                    let triple =
                        OutcomeTriple::from_bits(bit(wire::A), bit(wire::B), bit(wire::C));
                    counts[triple.index()] += 1;
                }
                (counts, valid)
            });
            let mut counts = [0u64; 8];
            let mut valid = 0u64;
            for (part, v) in partials {
                for (total, c) in counts.iter_mut().zip(part) {
                    *total += c;
                }
                valid += v;
            }
            Ok(CountsTable { counts, valid_shots: valid, attempted_shots: cfg.shots })
        }
    }
}

/// Generic sampled histogram over a circuit's measured wires with rejection
/// of shots that violate its postselections.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WireHistogram {
    /// Measured-wire bitstrings (first measured wire first) to counts, for
    /// bins with at least one shot.
    pub counts: BTreeMap<String, u64>,
    pub valid_shots: u64,
    pub attempted_shots: u64,
}

pub fn sample_wire_histogram(
    circuit: &Circuit,
    shots: u64,
    seed: u64,
    stream_label: &str,
    workers: usize,
) -> Result<WireHistogram> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let readout = circuit.measured_wires();
    let (state, requirements) = run_unitary_part(circuit)?;
    let cdf = cumulative_sums(&state.probabilities());
    let ok_mask: usize = requirements.iter().map(|(w, _)| 1usize << w).sum();
    let ok_value: usize = requirements
        .iter()
        .filter(|(_, bit)| *bit == 1)
        .map(|(w, _)| 1usize << w)
        .sum();
    let rng = CounterRng::labeled(seed, stream_label);
    let partials = split_shots(shots, workers, |range| {
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        let mut valid = 0u64;
        for i in range {
            let idx = inverse_cdf(&cdf, rng.f64_at(i));
            if idx & ok_mask != ok_value {
                continue;
            }
            valid += 1;
            let bits: String = readout
                .iter()
                .map(|w| if idx & (1 << w) != 0 { '1' } else { '0' })
                .collect();
            *counts.entry(bits).or_insert(0) += 1;
        }
        (counts, valid)
    });
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut valid = 0u64;
    for (part, v) in partials {
        for (bits, c) in part {
            *counts.entry(bits).or_insert(0) += c;
        }
        valid += v;
    }
    Ok(WireHistogram { counts, valid_shots: valid, attempted_shots: shots })
}

/// Exact postselected distribution over a circuit's measured wires, as
/// `(bitstring, probability)` pairs for every bin, zeros included.
pub fn exact_wire_distribution(circuit: &Circuit) -> Result<Vec<(String, f64)>> {
    let readout = circuit.measured_wires();
    let (state, _) = run_to_state(circuit)?;
    let mut dist = vec![0.0f64; 1 << readout.len()];
    for (idx, p) in state.probabilities().into_iter().enumerate() {
        let mut bin = 0usize;
        for (pos, w) in readout.iter().enumerate() {
            if idx & (1 << w) != 0 {
                bin |= 1 << pos;
            }
        }
        dist[bin] += p;
    }
    Ok(dist
        .into_iter()
        .enumerate()
        .map(|(bin, p)| {
            let bits: String = (0..readout.len())
                .map(|pos| if bin & (1 << pos) != 0 { '1' } else { '0' })
                .collect();
            (bits, p)
        })
        .collect())
}

/// The fusion-gate demonstration for Alice's laboratory: sampled histogram
/// over `(a, b, c, alpha)` after postselecting the primed ancilla on zero,
/// alongside the exact renormalized distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FusionDemo {
    pub histogram: WireHistogram,
    /// Exact probabilities per `(a, b, c, alpha)` bitstring, all 16 bins.
    pub exact: Vec<(String, f64)>,
}

pub fn run_fusion_demo(shots: u64, seed: u64) -> Result<FusionDemo> {
    let circuit = crate::circuit::fusion_demo_circuit();
    let histogram = sample_wire_histogram(&circuit, shots, seed, "fusion-demo", 1)?;
    let exact = exact_wire_distribution(&circuit)?;
    Ok(FusionDemo { histogram, exact })
}
