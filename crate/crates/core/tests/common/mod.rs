//! Hand-built reference states and comparison helpers shared by the
//! integration suites. Everything here is constructed directly from the
//! closed-form amplitudes, independent of the circuit builders and the
//! statevector kernels they exercise.
#![allow(dead_code)]

use num_complex::Complex64;

pub type C64 = Complex64;

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Three-qubit W state, wire order a b c (a in the least significant bit):
/// equal 1/sqrt(3) weight on abc = 001, 010, 100.
pub fn w_vector() -> Vec<C64> {
    let mut v = vec![re(0.0); 8];
    let w = 1.0 / 3.0_f64.sqrt();
    v[signal_index(0, 0, 1)] = re(w);
    v[signal_index(0, 1, 0)] = re(w);
    v[signal_index(1, 0, 0)] = re(w);
    v
}

/// Basis index for signal bits (a, b, c) on wires 0, 1, 2.
pub fn signal_index(a: usize, b: usize, c: usize) -> usize {
    a | (b << 1) | (c << 2)
}

/// The rotated three-party input state:
/// (1/sqrt3)[cos t (|001> + |010> - |100>) + sin t (|000> + |101> + |110>)],
/// kets written in a b c order.
pub fn input_state_vector(theta: f64) -> Vec<C64> {
    let mut v = vec![re(0.0); 8];
    let n = 1.0 / 3.0_f64.sqrt();
    let (s, c) = theta.sin_cos();
    v[signal_index(0, 0, 1)] = re(n * c);
    v[signal_index(0, 1, 0)] = re(n * c);
    v[signal_index(1, 0, 0)] = re(-n * c);
    v[signal_index(0, 0, 0)] = re(n * s);
    v[signal_index(1, 0, 1)] = re(n * s);
    v[signal_index(1, 1, 0)] = re(n * s);
    v
}

/// Nine-wire register index from per-wire bits, wire layout
/// a b c alpha alpha' beta beta' gamma gamma' = qubits 0..9.
pub fn nine_index(bits: [usize; 9]) -> usize {
    bits.iter().enumerate().map(|(w, b)| b << w).sum()
}

/// The full nine-particle input: rotated signals tensored with one singlet
/// (|01> - |10>)/sqrt2 per laboratory, record wire listed first.
pub fn nine_particle_input(theta: f64) -> Vec<C64> {
    let signals = input_state_vector(theta);
    let singlet = |rec: usize, anc: usize| -> f64 {
        match (rec, anc) {
            (0, 1) => std::f64::consts::FRAC_1_SQRT_2,
            (1, 0) => -std::f64::consts::FRAC_1_SQRT_2,
            _ => 0.0,
        }
    };
    let mut v = vec![re(0.0); 512];
    for (idx, amp) in v.iter_mut().enumerate() {
        let bit = |w: usize| (idx >> w) & 1;
        *amp = signals[signal_index(bit(0), bit(1), bit(2))]
            * singlet(bit(3), bit(4))
            * singlet(bit(5), bit(6))
            * singlet(bit(7), bit(8));
    }
    v
}

/// Index into the 64-dimensional six-particle space with bit order
/// a alpha b beta c gamma (a least significant).
pub fn six_index(a: usize, al: usize, b: usize, be: usize, c: usize, ga: usize) -> usize {
    a | (al << 1) | (b << 2) | (be << 3) | (c << 4) | (ga << 5)
}

/// The renormalized six-particle state after the three fusion gates,
/// written over a alpha b beta c gamma:
/// (1/sqrt3)[cos t (|010110> + |011001> - |100101>)
///           + sin t (|100110> + |101001> + |010101>)].
pub fn six_particle_vector(theta: f64) -> Vec<C64> {
    let mut v = vec![re(0.0); 64];
    let n = 1.0 / 3.0_f64.sqrt();
    let (s, c) = theta.sin_cos();
    let ket = |bits: &str| -> usize {
        let b: Vec<usize> = bits.bytes().map(|ch| (ch - b'0') as usize).collect();
        six_index(b[0], b[1], b[2], b[3], b[4], b[5])
    };
    v[ket("010110")] = re(n * c);
    v[ket("011001")] = re(n * c);
    v[ket("100101")] = re(-n * c);
    v[ket("100110")] = re(n * s);
    v[ket("101001")] = re(n * s);
    v[ket("010101")] = re(n * s);
    v
}

/// Wire positions of the six analysis particles in the nine-wire register,
/// in a alpha b beta c gamma order.
pub const ANALYSIS_WIRES: [usize; 6] = [0, 3, 1, 5, 2, 7];

/// Extract the 64-dimensional analysis-wire amplitudes from a nine-qubit
/// state whose fusion ancillas (wires 4, 6, 8) must be zero everywhere.
pub fn extract_six_particle(amps: &[C64]) -> Vec<C64> {
    assert_eq!(amps.len(), 512);
    let mut out = vec![re(0.0); 64];
    for (idx, amp) in amps.iter().enumerate() {
        let anc = (idx >> 4) & 1 | (idx >> 6) & 1 | (idx >> 8) & 1;
        if anc != 0 {
            assert!(
                amp.norm() < 1e-12,
                "amplitude {amp} survives outside the postselected subspace at index {idx}"
            );
            continue;
        }
        let bit = |w: usize| (idx >> w) & 1;
        let mut six = 0usize;
        for (pos, w) in ANALYSIS_WIRES.iter().enumerate() {
            six |= bit(*w) << pos;
        }
        out[six] = *amp;
    }
    out
}

pub fn assert_close(actual: &[C64], expect: &[C64], tol: f64, what: &str) {
    assert_eq!(actual.len(), expect.len(), "{what}: dimension mismatch");
    for (i, (a, e)) in actual.iter().zip(expect.iter()).enumerate() {
        assert!(
            (a - e).norm() < tol,
            "{what}: amplitude {i} differs, {a} vs {e}"
        );
    }
}

/// Compare two state vectors after removing one global phase, fixed on the
/// largest reference amplitude.
pub fn assert_close_up_to_phase(actual: &[C64], expect: &[C64], tol: f64, what: &str) {
    assert_eq!(actual.len(), expect.len(), "{what}: dimension mismatch");
    let pivot = expect
        .iter()
        .enumerate()
        .max_by(|(_, x), (_, y)| x.norm().partial_cmp(&y.norm()).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    assert!(expect[pivot].norm() > tol, "{what}: reference state is zero");
    let phase = actual[pivot] / expect[pivot];
    assert!(
        (phase.norm() - 1.0).abs() < tol,
        "{what}: pivot magnitudes differ (|phase| = {})",
        phase.norm()
    );
    for (i, (a, e)) in actual.iter().zip(expect.iter()).enumerate() {
        let aligned = phase * e;
        assert!(
            (a - aligned).norm() < tol,
            "{what}: amplitude {i} differs after phase alignment, {a} vs {aligned}"
        );
    }
}

/// Evenly spaced grid over [start, stop] inclusive.
pub fn theta_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    (0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect()
}
