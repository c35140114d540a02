//! The recurrent three-neuron network driving one market component.
//!
//! Neuron 3 carries the component's market state, neuron 1 the new market
//! conditions and neuron 2 the synchronization between them. One trading
//! round applies the loop operator `L_Net = L3 · L2 · L1`:
//!
//! * `L1` rotates neuron 1 conditionally on neuron 3 (regime switching),
//! * `L2` flips neuron 2 when neurons 1 and 3 disagree (rule selection),
//! * `L3` flips neuron 3 when neuron 2 fires.
//!
//! On every basis state the loop produces exactly two branches with
//! amplitudes `sin φ` and `i cos φ`; the rotation angle is supplied as
//! `sin²φ` in configuration and converted with [`phi_from_sin2phi`].

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::{
    build_conditional_gate, gate_from_hamiltonian, ConditionalGateSpec, HamiltonianParams,
    Matrix2, Matrix8, DIM, UNITARY_TOL,
};

/// Tolerance on `Σ|ψ(s)|² - 1` below which a state counts as normalized.
pub const NORM_TOL: f64 = 1e-10;

/// Converts the configured `sin²φ` into the rotation angle `φ ∈ [0, π/2]`.
pub fn phi_from_sin2phi(sin2phi: f64) -> f64 {
    sin2phi.sqrt().asin()
}

/// Normalized state of one three-neuron network: eight complex amplitudes in
/// the `|s₁s₂s₃⟩` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkState {
    amplitudes: [Complex64; DIM],
}

impl NetworkState {
    /// The basis state with index `s` (`4·s₁ + 2·s₂ + s₃`).
    pub fn basis(s: usize) -> Result<Self> {
        if s >= DIM {
            return Err(Error::IndexOutOfRange { index: s, bound: DIM });
        }
        let mut amplitudes = [Complex64::ZERO; DIM];
        amplitudes[s] = Complex64::ONE;
        Ok(Self { amplitudes })
    }

    /// Builds a state from raw amplitudes, rejecting unnormalized input.
    pub fn from_amplitudes(amplitudes: [Complex64; DIM]) -> Result<Self> {
        let total: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !total.is_finite() || (total - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { total });
        }
        Ok(Self { amplitudes })
    }

    /// The equal-weight real superposition of all eight firing patterns.
    pub fn uniform() -> Self {
        let w = Complex64::new(1.0 / (DIM as f64).sqrt(), 0.0);
        Self {
            amplitudes: [w; DIM],
        }
    }

    /// The product state `(Ua ⊗ Ub ⊗ Uc)|000⟩`.
    pub fn product_state(ua: &Matrix2, ub: &Matrix2, uc: &Matrix2) -> Self {
        let mut amplitudes = [Complex64::ZERO; DIM];
        for s1 in 0..2 {
            for s2 in 0..2 {
                for s3 in 0..2 {
                    amplitudes[(s1 << 2) | (s2 << 1) | s3] =
                        ua[(s1, 0)] * ub[(s2, 0)] * uc[(s3, 0)];
                }
            }
        }
        Self { amplitudes }
    }

    pub fn amplitude(&self, s: usize) -> Complex64 {
        self.amplitudes[s]
    }

    pub fn amplitudes(&self) -> &[Complex64; DIM] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// The regime-switching operator on neuron 1, controlled by neuron 3.
///
/// When neuron 3 is quiet the applied gate is `sin φ·I + i cos φ·σ₁`; when it
/// fires the roles of the amplitudes swap: `i cos φ·I + sin φ·σ₁`.
pub fn l1(phi: f64) -> Matrix8 {
    let axis = [1.0, 0.0, 0.0];
    let quiet = HamiltonianParams::new(PI, phi + FRAC_PI_2, axis).expect("unit axis");
    let firing = HamiltonianParams::new(FRAC_PI_2, phi, axis).expect("unit axis");
    let spec = ConditionalGateSpec::new(1, vec![3])
        .expect("valid wiring")
        .with_gate(&[0], gate_from_hamiltonian(&quiet))
        .with_gate(&[1], gate_from_hamiltonian(&firing));
    build_conditional_gate(&spec).expect("complete unitary gate map")
}

/// The synchronization operator: flips neuron 2 exactly when neurons 1 and 3
/// carry different firing patterns (a parity-controlled negation).
pub fn l2() -> Matrix8 {
    let axis = [1.0, 0.0, 0.0];
    let hold = gate_from_hamiltonian(&HamiltonianParams::new(0.0, 0.0, axis).expect("unit axis"));
    let flip = gate_from_hamiltonian(
        &HamiltonianParams::new(FRAC_PI_2, FRAC_PI_2, axis).expect("unit axis"),
    );
    let spec = ConditionalGateSpec::new(2, vec![1, 3])
        .expect("valid wiring")
        .with_gate(&[0, 0], hold)
        .with_gate(&[1, 1], hold)
        .with_gate(&[0, 1], flip)
        .with_gate(&[1, 0], flip);
    build_conditional_gate(&spec).expect("complete unitary gate map")
}

/// The market-state update: flips neuron 3 exactly when neuron 2 fires.
pub fn l3() -> Matrix8 {
    let axis = [1.0, 0.0, 0.0];
    let hold = gate_from_hamiltonian(&HamiltonianParams::new(0.0, 0.0, axis).expect("unit axis"));
    let flip = gate_from_hamiltonian(
        &HamiltonianParams::new(FRAC_PI_2, FRAC_PI_2, axis).expect("unit axis"),
    );
    let spec = ConditionalGateSpec::new(3, vec![2])
        .expect("valid wiring")
        .with_gate(&[0], hold)
        .with_gate(&[1], flip);
    build_conditional_gate(&spec).expect("complete unitary gate map")
}

/// The full loop operator `L3 · L2 · L1` applied once per trading round.
pub fn l_net(phi: f64) -> Matrix8 {
    l3().mul_ref(&l2()).mul_ref(&l1(phi))
}

/// Applies one unitary update to the network state.
pub fn step(state: &NetworkState, op: &Matrix8) -> Result<NetworkState> {
    let defect = op.unitarity_defect();
    if defect >= UNITARY_TOL {
        return Err(Error::NonUnitary { defect });
    }
    Ok(NetworkState {
        amplitudes: op.apply(state.amplitudes()),
    })
}

/// An observable that is diagonal in the firing-pattern basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observable8 {
    diagonal: [f64; DIM],
}

impl Observable8 {
    pub fn from_diagonal(diagonal: [f64; DIM]) -> Self {
        Self { diagonal }
    }

    pub fn eigenvalue(&self, s: usize) -> f64 {
        self.diagonal[s]
    }
}

/// `⟨O⟩ = Σ_s O_ss · |ψ(s)|²` for a diagonal observable.
pub fn expectation(state: &NetworkState, obs: &Observable8) -> f64 {
    state
        .amplitudes()
        .iter()
        .zip(&obs.diagonal)
        .map(|(a, &o)| o * a.norm_sqr())
        .sum()
}

/// The weight `|ψ(s)|²` of the projection onto basis state `s`.
pub fn projection_weight(state: &NetworkState, s: usize) -> Result<f64> {
    if s >= DIM {
        return Err(Error::IndexOutOfRange { index: s, bound: DIM });
    }
    Ok(state.amplitude(s).norm_sqr())
}

/// A uniform statistical ensemble of network states.
#[derive(Debug, Clone)]
pub struct EnsembleState {
    members: Vec<NetworkState>,
}

impl EnsembleState {
    pub fn new(members: Vec<NetworkState>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[NetworkState] {
        &self.members
    }
}

/// The density-operator average `(1/M) Σ_k ⟨O⟩_k` over the ensemble.
pub fn ensemble_expectation(ens: &EnsembleState, obs: &Observable8) -> f64 {
    let sum: f64 = ens.members.iter().map(|m| expectation(m, obs)).sum();
    sum / ens.members.len() as f64
}
