//! Single-qubit gate matrices and the fixed preparation angles.
//!
//! Every gate used by the scenario circuits is a 2x2 unitary: the Paulis,
//! the Hadamard, the rotation `ry`, and two real reflections `u_xi` /
//! `u_theta` that drive the W-state preparation and the signal rotation.

use num_complex::Complex64;

use crate::{Error, Result};

/// A 2x2 complex matrix in row-major order.
///
/// Constructors in this module always return unitaries; arbitrary entries can
/// be assembled through [`Gate2x2::new`] for testing error paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate2x2 {
    pub entries: [Complex64; 4],
}

impl Gate2x2 {
    pub fn new(entries: [Complex64; 4]) -> Self {
        Self { entries }
    }

    fn real(entries: [f64; 4]) -> Self {
        Self {
            entries: [
                Complex64::new(entries[0], 0.0),
                Complex64::new(entries[1], 0.0),
                Complex64::new(entries[2], 0.0),
                Complex64::new(entries[3], 0.0),
            ],
        }
    }

    /// Max-norm of `G†G - I`; zero (to roundoff) for a unitary.
    pub fn unitarity_defect(&self) -> f64 {
        let [a, b, c, d] = self.entries;
        // G†G entries for G = [[a, b], [c, d]].
        let m00 = a.conj() * a + c.conj() * c;
        let m01 = a.conj() * b + c.conj() * d;
        let m10 = b.conj() * a + d.conj() * c;
        let m11 = b.conj() * b + d.conj() * d;
        let one = Complex64::new(1.0, 0.0);
        [m00 - one, m01, m10, m11 - one]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() < tol
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Gate2x2) -> Gate2x2 {
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = rhs.entries;
        Gate2x2::new([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }
}

/// Pauli X (NOT gate).
pub fn pauli_x() -> Gate2x2 {
    Gate2x2::real([0.0, 1.0, 1.0, 0.0])
}

/// Pauli Y.
pub fn pauli_y() -> Gate2x2 {
    Gate2x2::new([
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, 0.0),
    ])
}

/// Pauli Z.
pub fn pauli_z() -> Gate2x2 {
    Gate2x2::real([1.0, 0.0, 0.0, -1.0])
}

/// Hadamard.
pub fn hadamard() -> Gate2x2 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Gate2x2::real([s, s, s, -s])
}

/// Rotation about the y axis:
/// `[[cos(z/2), -sin(z/2)], [sin(z/2), cos(z/2)]]`.
pub fn ry(zeta: f64) -> Result<Gate2x2> {
    if !zeta.is_finite() {
        return Err(Error::NonFiniteAngle(zeta));
    }
    let (s, c) = (zeta / 2.0).sin_cos();
    Ok(Gate2x2::real([c, -s, s, c]))
}

/// Real reflection `[[cos(x/2), sin(x/2)], [sin(x/2), -cos(x/2)]]`.
///
/// Hermitian and unitary for every angle, so it squares to the identity.
pub fn u_xi(xi: f64) -> Result<Gate2x2> {
    if !xi.is_finite() {
        return Err(Error::NonFiniteAngle(xi));
    }
    let (s, c) = (xi / 2.0).sin_cos();
    Ok(Gate2x2::real([c, s, s, -c]))
}

/// Signal rotation `cos(t)*Z + sin(t)*X`, the full-angle form of [`u_xi`].
pub fn u_theta(theta: f64) -> Result<Gate2x2> {
    if !theta.is_finite() {
        return Err(Error::NonFiniteAngle(theta));
    }
    let (s, c) = theta.sin_cos();
    Ok(Gate2x2::real([c, s, s, -c]))
}

/// The five fixed angles of the two W-state preparation circuits, computed
/// from their closed forms at run time rather than hard-coded decimals.
#[derive(Debug, Clone, Copy)]
pub struct WPrepAngles {
    pub zeta1: f64,
    pub zeta2: f64,
    pub zeta3: f64,
    pub xi1: f64,
    pub xi2: f64,
}

impl WPrepAngles {
    pub fn new() -> Self {
        let sqrt5 = 5.0_f64.sqrt();
        let zeta1 = 2.0 * ((5.0 + sqrt5) / 10.0).sqrt().asin();
        let zeta2 = -2.0 * ((3.0 - sqrt5) / 6.0).sqrt().asin();
        Self {
            zeta1,
            zeta2,
            zeta3: zeta1,
            xi1: (1.0 / 3.0_f64.sqrt()).acos(),
            xi2: std::f64::consts::FRAC_PI_4,
        }
    }
}

impl Default for WPrepAngles {
    fn default() -> Self {
        Self::new()
    }
}
