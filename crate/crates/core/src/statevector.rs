//! Dense complex statevector over up to 24 qubits.
//!
//! Basis-index convention (global for the whole crate): **bit `i` of the
//! array index holds the value of qubit `i`**, with qubit 0 in the least
//! significant bit. A bitstring rendered for humans lists wire 0 first, so
//! the string `"011"` means qubit 0 = 0, qubit 1 = 1, qubit 2 = 1 and maps
//! to array index 6.

use num_complex::Complex64;

use crate::gates::Gate2x2;
use crate::{Error, Result};

/// Largest register this simulator will allocate (the scenario needs 9).
pub const MAX_QUBITS: usize = 24;

/// Unitarity tolerance applied to gates at application time.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Dense amplitude vector for an `n_qubits` register.
///
/// Mutating operations require `&mut self` (single writer); read-only
/// queries take `&self` and may run concurrently.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state. `bits` lists one character per wire,
    /// wire 0 first.
    pub fn basis_state(n_qubits: usize, bits: &str) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::CapacityExceeded { n_qubits, max: MAX_QUBITS });
        }
        if bits.len() != n_qubits {
            return Err(Error::BitstringLength { expected: n_qubits, got: bits.len() });
        }
        let mut index = 0usize;
        for (i, ch) in bits.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => index |= 1 << i,
                other => return Err(Error::BadBitChar(other)),
            }
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            Err(Error::QubitOutOfRange { qubit, n_qubits: self.n_qubits })
        } else {
            Ok(())
        }
    }

    /// Apply a single-qubit gate.
    ///
    /// The kernel walks the 2^(n-1) amplitude pairs that differ only in the
    /// target bit; see [`pair_indices`] for the pairing contract.
    pub fn apply_1q(&mut self, qubit: usize, g: &Gate2x2) -> Result<()> {
        self.check_qubit(qubit)?;
        if !g.is_unitary(UNITARITY_TOL) {
            return Err(Error::NonUnitaryGate { defect: g.unitarity_defect() });
        }
        let [g00, g01, g10, g11] = g.entries;
        let stride = 1usize << qubit;
        for p in 0..(self.amps.len() >> 1) {
            let i0 = (p & (stride - 1)) | ((p & !(stride - 1)) << 1);
            let i1 = i0 | stride;
            let a0 = self.amps[i0];
            let a1 = self.amps[i1];
            self.amps[i0] = g00 * a0 + g01 * a1;
            self.amps[i1] = g10 * a0 + g11 * a1;
        }
        Ok(())
    }

    /// Apply a CNOT: the target bit flips on every basis state whose control
    /// bit is one.
    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::ControlEqualsTarget(control));
        }
        let cmask = 1usize << control;
        let tmask = 1usize << target;
        for idx in 0..self.amps.len() {
            if idx & cmask != 0 && idx & tmask == 0 {
                self.amps.swap(idx, idx | tmask);
            }
        }
        Ok(())
    }

    /// Marginal probability that the listed qubits read the given bits.
    pub fn probability_of(&self, qubits: &[usize], bits: &str) -> Result<f64> {
        if bits.len() != qubits.len() {
            return Err(Error::BitstringLength { expected: qubits.len(), got: bits.len() });
        }
        let mut mask = 0usize;
        let mut want = 0usize;
        for (&q, ch) in qubits.iter().zip(bits.chars()) {
            self.check_qubit(q)?;
            let bit = 1usize << q;
            if mask & bit != 0 {
                return Err(Error::DuplicateQubit(q));
            }
            mask |= bit;
            match ch {
                '0' => {}
                '1' => want |= bit,
                other => return Err(Error::BadBitChar(other)),
            }
        }
        let mut p = 0.0;
        for (idx, amp) in self.amps.iter().enumerate() {
            if idx & mask == want {
                p += amp.norm_sqr();
            }
        }
        Ok(p.clamp(0.0, 1.0))
    }

    /// Full probability distribution over basis indices.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `|<self|other>|^2`, insensitive to a global phase on either state.
    pub fn fidelity_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        let inner: Complex64 = self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(inner.norm_sqr().clamp(0.0, 1.0))
    }

    /// Project a qubit onto `bit` and renormalize, returning the probability
    /// of the kept branch.
    pub fn postselect(&mut self, qubit: usize, bit: u8) -> Result<f64> {
        self.check_qubit(qubit)?;
        let mask = 1usize << qubit;
        let want = if bit == 0 { 0 } else { mask };
        let mut p = 0.0;
        for (idx, amp) in self.amps.iter().enumerate() {
            if idx & mask == want {
                p += amp.norm_sqr();
            }
        }
        if p <= 0.0 {
            return Err(Error::ImpossiblePostselection { qubit, bit });
        }
        let scale = 1.0 / p.sqrt();
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            if idx & mask == want {
                *amp *= scale;
            } else {
                *amp = Complex64::new(0.0, 0.0);
            }
        }
        Ok(p)
    }
}

/// The amplitude pair touched by a single-qubit gate for pair number `p`:
/// every index appears in exactly one pair and the two indices differ only
/// in bit `qubit`. Exposed so the kernel contract is testable.
pub fn pair_indices(qubit: usize, p: usize) -> (usize, usize) {
    let stride = 1usize << qubit;
    let i0 = (p & (stride - 1)) | ((p & !(stride - 1)) << 1);
    (i0, i0 | stride)
}
