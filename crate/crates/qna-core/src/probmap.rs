//! The classical nonlinear system equivalent to one component's quantum
//! evolution.
//!
//! Writing each amplitude as `ψ(s) = √A(s) + i√B(s)` turns the unitary loop
//! update into sixteen coupled real equations
//!
//! ```text
//! A(s,t) = (√A(s')·sin φ − √B(s'')·cos φ)²
//! B(s,t) = (√B(s')·sin φ + √A(s'')·cos φ)²
//! ```
//!
//! where `s'` is the `sin φ` source and `s''` the `i cos φ` source of each
//! row of the loop operator. Taking square roots of `A`/`B` discards the
//! signs of the real and imaginary parts, so this literal map can leave the
//! quantum trajectory once a part turns negative. [`SignedMapState`] carries
//! the parts themselves and stays exactly equivalent to the unitary
//! evolution; both variants are provided, and neither substitutes for the
//! other.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::network::{l_net, NetworkState};
use crate::quantum::DIM;

/// Input states whose total weight misses 1 by more than this are rejected
/// by [`step_map`].
pub const MAP_INPUT_TOL: f64 = 1e-6;

/// Amplitude routing of the loop operator: for every target basis state,
/// the index pair `(sin-source, icos-source)` of its two contributions.
///
/// Generated from the operator matrix itself rather than transcribed.
pub fn routing() -> &'static [(usize, usize); DIM] {
    static ROUTING: OnceLock<[(usize, usize); DIM]> = OnceLock::new();
    ROUTING.get_or_init(|| {
        let phi = 0.6f64; // generic: sin φ and cos φ distinct and nonzero
        let m = l_net(phi);
        let (sin, cos) = (phi.sin(), phi.cos());
        let mut table = [(DIM, DIM); DIM];
        for row in 0..DIM {
            for col in 0..DIM {
                let e = m[(row, col)];
                if (e.re - sin).abs() < 1e-9 && e.im.abs() < 1e-9 {
                    table[row].0 = col;
                } else if e.re.abs() < 1e-9 && (e.im - cos).abs() < 1e-9 {
                    table[row].1 = col;
                } else {
                    assert!(e.norm() < 1e-9, "unexpected loop operator entry");
                }
            }
        }
        assert!(
            table.iter().all(|&(a, b)| a < DIM && b < DIM),
            "loop operator row with missing branch"
        );
        table
    })
}

/// The sixteen non-negative variables `A(s)`, `B(s)` of the literal map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbMapState {
    a: [f64; DIM],
    b: [f64; DIM],
}

impl ProbMapState {
    pub fn new(a: [f64; DIM], b: [f64; DIM]) -> Result<Self> {
        let total: f64 = a.iter().chain(b.iter()).sum();
        let non_negative = a.iter().chain(b.iter()).all(|&x| x >= 0.0 && x.is_finite());
        if !non_negative || (total - 1.0).abs() > MAP_INPUT_TOL {
            return Err(Error::NotNormalized { total });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self, s: usize) -> f64 {
        self.a[s]
    }

    pub fn b(&self, s: usize) -> f64 {
        self.b[s]
    }

    /// Total weight `Σ_s A(s) + B(s)`; 1 up to accumulated rounding.
    pub fn total_weight(&self) -> f64 {
        self.a.iter().chain(self.b.iter()).sum()
    }
}

/// Sign-carrying variant: the real and imaginary parts themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedMapState {
    re: [f64; DIM],
    im: [f64; DIM],
}

impl SignedMapState {
    pub fn new(re: [f64; DIM], im: [f64; DIM]) -> Result<Self> {
        let total: f64 = re
            .iter()
            .zip(&im)
            .map(|(r, i)| r * r + i * i)
            .sum();
        if !total.is_finite() || (total - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { total });
        }
        Ok(Self { re, im })
    }

    pub fn re(&self, s: usize) -> f64 {
        self.re[s]
    }

    pub fn im(&self, s: usize) -> f64 {
        self.im[s]
    }

    pub fn total_weight(&self) -> f64 {
        self.re.iter().zip(&self.im).map(|(r, i)| r * r + i * i).sum()
    }

    /// The squared parts, i.e. the literal-map view of this state.
    pub fn to_prob_map(&self) -> ProbMapState {
        let mut a = [0.0; DIM];
        let mut b = [0.0; DIM];
        for s in 0..DIM {
            a[s] = self.re[s] * self.re[s];
            b[s] = self.im[s] * self.im[s];
        }
        ProbMapState { a, b }
    }
}

impl From<&NetworkState> for SignedMapState {
    fn from(state: &NetworkState) -> Self {
        let mut re = [0.0; DIM];
        let mut im = [0.0; DIM];
        for s in 0..DIM {
            let amp = state.amplitude(s);
            re[s] = amp.re;
            im[s] = amp.im;
        }
        Self { re, im }
    }
}

/// Projects a quantum state onto the map variables: `A = (Re ψ)²`,
/// `B = (Im ψ)²`.
pub fn from_quantum(state: &NetworkState) -> ProbMapState {
    SignedMapState::from(state).to_prob_map()
}

/// Shared update core; `sin_phi` and `cos_phi` must be the non-negative
/// branch amplitudes of an angle in [0, π/2].
fn step_entries(state: &ProbMapState, sin_phi: f64, cos_phi: f64) -> ProbMapState {
    let mut a = [0.0; DIM];
    let mut b = [0.0; DIM];
    for (s, &(src_sin, src_cos)) in routing().iter().enumerate() {
        let ra = state.a[src_sin].sqrt() * sin_phi - state.b[src_cos].sqrt() * cos_phi;
        let rb = state.b[src_sin].sqrt() * sin_phi + state.a[src_cos].sqrt() * cos_phi;
        a[s] = ra * ra;
        b[s] = rb * rb;
    }
    ProbMapState { a, b }
}

/// One iteration of the literal sixteen-variable map.
pub fn step_map(state: &ProbMapState, phi: f64) -> Result<ProbMapState> {
    let total = state.total_weight();
    if (total - 1.0).abs() > MAP_INPUT_TOL {
        return Err(Error::NotNormalized { total });
    }
    Ok(step_entries(state, phi.sin(), phi.cos()))
}

/// One iteration of the sign-carrying map; exactly the unitary update of the
/// real and imaginary parts.
pub fn step_signed(state: &SignedMapState, phi: f64) -> SignedMapState {
    let (sin_phi, cos_phi) = (phi.sin(), phi.cos());
    let mut re = [0.0; DIM];
    let mut im = [0.0; DIM];
    for (s, &(src_sin, src_cos)) in routing().iter().enumerate() {
        re[s] = state.re[src_sin] * sin_phi - state.im[src_cos] * cos_phi;
        im[s] = state.im[src_sin] * sin_phi + state.re[src_cos] * cos_phi;
    }
    SignedMapState { re, im }
}

/// The occupation probability `Prob[s] = A(s) + B(s)`.
pub fn probability(state: &ProbMapState, s: usize) -> f64 {
    state.a[s] + state.b[s]
}

/// The four addends of the post-step probability of `s`: two classical
/// mixture terms and two interference terms proportional to `sin 2φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceTerms {
    /// `Prob[s'] · sin²φ`
    pub sin_sq: f64,
    /// `Prob[s''] · cos²φ`
    pub cos_sq: f64,
    /// `+√(B(s')·A(s'')) · sin 2φ`
    pub cross_plus: f64,
    /// `−√(A(s')·B(s'')) · sin 2φ`
    pub cross_minus: f64,
}

impl InterferenceTerms {
    pub fn total(&self) -> f64 {
        self.sin_sq + self.cos_sq + self.cross_plus + self.cross_minus
    }
}

/// Decomposes the probability of `s` after one map step from `prev`.
pub fn interference_decomposition(
    prev: &ProbMapState,
    phi: f64,
    s: usize,
) -> InterferenceTerms {
    let (src_sin, src_cos) = routing()[s];
    let (sin_phi, cos_phi) = (phi.sin(), phi.cos());
    let sin_2phi = 2.0 * sin_phi * cos_phi;
    InterferenceTerms {
        sin_sq: probability(prev, src_sin) * sin_phi * sin_phi,
        cos_sq: probability(prev, src_cos) * cos_phi * cos_phi,
        cross_plus: (prev.b[src_sin] * prev.a[src_cos]).sqrt() * sin_2phi,
        cross_minus: -(prev.a[src_sin] * prev.b[src_cos]).sqrt() * sin_2phi,
    }
}

/// One iteration of the stochastic map: the branch weights come from the
/// logistic form `sin²φ = 1/(1 + e^{-2βz})` directly, without going through
/// the angle.
pub fn step_map_noisy(state: &ProbMapState, beta: f64, z: f64) -> Result<ProbMapState> {
    let total = state.total_weight();
    if (total - 1.0).abs() > MAP_INPUT_TOL {
        return Err(Error::NotNormalized { total });
    }
    let sin2 = 1.0 / (1.0 + (-2.0 * beta * z).exp());
    let sin_phi = sin2.sqrt();
    let cos_phi = (-beta * z).exp() * sin_phi;
    Ok(step_entries(state, sin_phi, cos_phi))
}
