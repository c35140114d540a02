//! Complex 2\u{d7}2 and 8\u{d7}8 unitary algebra for three-neuron quantum networks.
//!
//! Basis convention: the firing pattern |s\u{2081}s\u{2082}s\u{2083}\u{27e9} of the three neurons maps
//! to the vector index `4*s1 + 2*s2 + s3`, i.e. neuron 1 is the most
//! significant bit. All gate constructors in this crate follow it.

use std::collections::HashMap;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Tolerance on `max |(U†U - I)_ij|` below which a matrix counts as unitary.
pub const UNITARY_TOL: f64 = 1e-12;

/// Number of basis states of one three-neuron network.
pub const DIM: usize = 8;

/// Decompose a basis index into the three neuron bits `[s1, s2, s3]`.
#[inline]
pub fn basis_bits(index: usize) -> [u8; 3] {
    [
        ((index >> 2) & 1) as u8,
        ((index >> 1) & 1) as u8,
        (index & 1) as u8,
    ]
}

/// Pack three neuron bits back into a basis index.
#[inline]
pub fn basis_index(bits: [u8; 3]) -> usize {
    ((bits[0] as usize) << 2) | ((bits[1] as usize) << 1) | bits[2] as usize
}

/// A 2×2 complex matrix; the gates acting on a single neuron live here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    entries: [[Complex64; 2]; 2],
}

impl Matrix2 {
    pub const fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn zero() -> Self {
        Self::new([[Complex64::ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        m[(0, 0)] = Complex64::ONE;
        m[(1, 1)] = Complex64::ONE;
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for r in 0..2 {
            for c in 0..2 {
                out[(r, c)] = self[(c, r)].conj();
            }
        }
        out
    }

    /// Max absolute entry of `U†U - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.adjoint() * *self;
        let mut defect: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                let expected = if r == c { Complex64::ONE } else { Complex64::ZERO };
                defect = defect.max((prod[(r, c)] - expected).norm());
            }
        }
        defect
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_defect() < UNITARY_TOL
    }

    pub fn determinant(&self) -> Complex64 {
        self[(0, 0)] * self[(1, 1)] - self[(0, 1)] * self[(1, 0)]
    }
}

impl Index<(usize, usize)> for Matrix2 {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r][c]
    }
}

impl IndexMut<(usize, usize)> for Matrix2 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r][c]
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let mut out = Matrix2::zero();
        for r in 0..2 {
            for c in 0..2 {
                out[(r, c)] = self[(r, 0)] * rhs[(0, c)] + self[(r, 1)] * rhs[(1, c)];
            }
        }
        out
    }
}

/// An 8×8 complex matrix; operators on a full three-neuron network.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix8 {
    entries: [[Complex64; DIM]; DIM],
}

impl Matrix8 {
    pub fn zero() -> Self {
        Self {
            entries: [[Complex64::ZERO; DIM]; DIM],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for r in 0..DIM {
            for c in 0..DIM {
                out[(r, c)] = self[(c, r)].conj();
            }
        }
        out
    }

    /// Max absolute entry of `U†U - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.adjoint().mul_ref(self);
        let mut defect: f64 = 0.0;
        for r in 0..DIM {
            for c in 0..DIM {
                let expected = if r == c { Complex64::ONE } else { Complex64::ZERO };
                defect = defect.max((prod[(r, c)] - expected).norm());
            }
        }
        defect
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_defect() < UNITARY_TOL
    }

    pub fn mul_ref(&self, rhs: &Matrix8) -> Matrix8 {
        let mut out = Matrix8::zero();
        for r in 0..DIM {
            for c in 0..DIM {
                let mut acc = Complex64::ZERO;
                for k in 0..DIM {
                    acc += self[(r, k)] * rhs[(k, c)];
                }
                out[(r, c)] = acc;
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64; DIM]) -> [Complex64; DIM] {
        let mut out = [Complex64::ZERO; DIM];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for (entry, value) in self.entries[r].iter().zip(v) {
                acc += entry * value;
            }
            *slot = acc;
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix8 {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r][c]
    }
}

impl IndexMut<(usize, usize)> for Matrix8 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r][c]
    }
}

impl Mul for Matrix8 {
    type Output = Matrix8;
    fn mul(self, rhs: Matrix8) -> Matrix8 {
        self.mul_ref(&rhs)
    }
}

/// The Pauli operator σ_j for `j` in 1..=3.
pub fn pauli(j: usize) -> Result<Matrix2> {
    let i = Complex64::I;
    let o = Complex64::ZERO;
    let one = Complex64::ONE;
    match j {
        1 => Ok(Matrix2::new([[o, one], [one, o]])),
        2 => Ok(Matrix2::new([[o, -i], [i, o]])),
        3 => Ok(Matrix2::new([[one, o], [o, -one]])),
        _ => Err(Error::IndexOutOfRange { index: j, bound: 4 }),
    }
}

/// Parameters of a single-neuron gate generated by a two-level Hamiltonian:
/// a global phase half-angle, a rotation half-angle and a unit rotation axis.
///
/// Only the dimensionless angle products enter the gate, so the time step and
/// Planck constant are never stored separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianParams {
    omega_half: f64,
    theta_half: f64,
    u: [f64; 3],
}

impl HamiltonianParams {
    /// Validates that `u` is a unit vector (within `UNITARY_TOL`) and stores
    /// it renormalized so the generated gate is unitary to machine precision.
    pub fn new(omega_half: f64, theta_half: f64, u: [f64; 3]) -> Result<Self> {
        let norm = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > UNITARY_TOL {
            return Err(Error::NonUnitAxis { norm });
        }
        Ok(Self {
            omega_half,
            theta_half,
            u: [u[0] / norm, u[1] / norm, u[2] / norm],
        })
    }

    pub fn omega_half(&self) -> f64 {
        self.omega_half
    }

    pub fn theta_half(&self) -> f64 {
        self.theta_half
    }

    pub fn axis(&self) -> [f64; 3] {
        self.u
    }
}

/// The gate `exp(i·ω/2) · [cos(θ/2)·I - i·sin(θ/2)·(u·σ)]`: a global phase
/// times a rotation about the axis `u`.
pub fn gate_from_hamiltonian(p: &HamiltonianParams) -> Matrix2 {
    let phase = Complex64::cis(p.omega_half);
    let cos = Complex64::new(p.theta_half.cos(), 0.0);
    let msin = Complex64::new(0.0, -p.theta_half.sin());
    let mut m = Matrix2::zero();
    for (j, &uj) in p.u.iter().enumerate() {
        let sigma = pauli(j + 1).expect("pauli index in range");
        for r in 0..2 {
            for c in 0..2 {
                m[(r, c)] += msin * uj * sigma[(r, c)];
            }
        }
    }
    m[(0, 0)] += cos;
    m[(1, 1)] += cos;
    for r in 0..2 {
        for c in 0..2 {
            m[(r, c)] *= phase;
        }
    }
    m
}

/// Draws a Haar-distributed U(2) element.
///
/// Uses the closed-form parameterization
/// `e^{iα} · [[e^{iψ}cosθ, e^{iχ}sinθ], [-e^{-iχ}sinθ, e^{-iψ}cosθ]]`
/// with α, ψ, χ uniform on [0, 2π) and cos²θ uniform on (0, 1), whose
/// `|U₀₀|²` marginal is uniform on (0, 1).
pub fn haar_random_u2<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    use std::f64::consts::TAU;
    let alpha = rng.random::<f64>() * TAU;
    let psi = rng.random::<f64>() * TAU;
    let chi = rng.random::<f64>() * TAU;
    let cos_sq: f64 = rng.random();
    let cos_t = cos_sq.sqrt();
    let sin_t = (1.0 - cos_sq).sqrt();

    let global = Complex64::cis(alpha);
    Matrix2::new([
        [
            global * Complex64::cis(psi) * cos_t,
            global * Complex64::cis(chi) * sin_t,
        ],
        [
            -global * Complex64::cis(-chi) * sin_t,
            global * Complex64::cis(-psi) * cos_t,
        ],
    ])
}

/// Wiring of a conditional single-neuron gate: one target neuron, an ordered
/// set of control neurons, and one unitary per control firing pattern.
///
/// The built operator applies `gate(pattern)` to the target whenever the
/// controls carry `pattern`, and extends as the identity on every neuron that
/// is neither target nor control.
#[derive(Debug, Clone)]
pub struct ConditionalGateSpec {
    target: usize,
    controls: Vec<usize>,
    gates: HashMap<Vec<u8>, Matrix2>,
}

impl ConditionalGateSpec {
    /// Neuron indices are 1-based, as in the network diagrams.
    pub fn new(target: usize, controls: Vec<usize>) -> Result<Self> {
        if !(1..=3).contains(&target) {
            return Err(Error::InvalidWiring {
                reason: format!("target neuron {target} not in 1..=3"),
            });
        }
        for &c in &controls {
            if !(1..=3).contains(&c) {
                return Err(Error::InvalidWiring {
                    reason: format!("control neuron {c} not in 1..=3"),
                });
            }
            if c == target {
                return Err(Error::InvalidWiring {
                    reason: format!("neuron {c} cannot be both target and control"),
                });
            }
        }
        let mut seen = [false; 4];
        for &c in &controls {
            if seen[c] {
                return Err(Error::InvalidWiring {
                    reason: format!("duplicate control neuron {c}"),
                });
            }
            seen[c] = true;
        }
        Ok(Self {
            target,
            controls,
            gates: HashMap::new(),
        })
    }

    /// Assigns the gate applied when the controls carry `pattern` (bits in
    /// the same order as the control list).
    pub fn with_gate(mut self, pattern: &[u8], gate: Matrix2) -> Self {
        self.gates.insert(pattern.to_vec(), gate);
        self
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn controls(&self) -> &[usize] {
        &self.controls
    }
}

/// Builds the 8×8 conditional operator described by `spec`.
///
/// Requires a unitary gate for every one of the `2^|controls|` patterns; the
/// result is unitary by construction and never modifies the control bits.
pub fn build_conditional_gate(spec: &ConditionalGateSpec) -> Result<Matrix8> {
    for (pattern, gate) in &spec.gates {
        let valid_len = pattern.len() == spec.controls.len();
        let valid_bits = pattern.iter().all(|&b| b <= 1);
        if !valid_len || !valid_bits {
            return Err(Error::InvalidControlPattern {
                pattern: pattern.clone(),
            });
        }
        let defect = gate.unitarity_defect();
        if defect >= UNITARY_TOL {
            return Err(Error::NonUnitary { defect });
        }
    }

    let mut m = Matrix8::zero();
    for col in 0..DIM {
        let bits = basis_bits(col);
        let pattern: Vec<u8> = spec.controls.iter().map(|&c| bits[c - 1]).collect();
        let gate = spec
            .gates
            .get(&pattern)
            .ok_or(Error::MissingControlPattern { pattern })?;
        let b_in = bits[spec.target - 1] as usize;
        for b_out in 0..2 {
            let mut out_bits = bits;
            out_bits[spec.target - 1] = b_out as u8;
            m[(basis_index(out_bits), col)] = gate[(b_out, b_in)];
        }
    }
    Ok(m)
}
