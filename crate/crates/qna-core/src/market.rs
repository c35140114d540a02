//! The market lattice: independent three-neuron components, one per
//! volatility factor plus one for market polarization, evolved and sampled
//! once per trading round.
//!
//! The lattice state stays a product state at all times, so it is stored as
//! one eight-amplitude vector per component rather than one exponentially
//! large tensor. Outcomes are drawn from the squared amplitudes of each
//! component's market-state neuron without reducing the quantum state: the
//! unitary evolution and the sampling never interact.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{l_net, phi_from_sin2phi, step, NetworkState, Observable8};
use crate::quantum::{haar_random_u2, DIM};
use crate::rng::{derive_stream, StreamDomain};

/// Full parameter set of one simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarketConfig {
    /// Total number of lattice components; the last one carries the market
    /// polarization, the preceding ones are volatility factors.
    pub n_components: usize,
    /// `sin²φ` of the rotation angle used when gates are deterministic.
    pub sin2phi: f64,
    /// Low-volatility eigenvalue; the high one is `2 - v0`.
    pub v0: f64,
    /// Market depth dividing the order unbalance in the log-price rule.
    pub lambda: f64,
    /// Trading rounds to simulate.
    pub steps: u64,
    /// Leading rounds dropped from the recorded series.
    pub transient: u64,
    /// Master seed; every random stream is derived from it.
    pub seed: u64,
    /// When set, each component draws a fresh rotation angle per round from
    /// `sin²φ = 1/(1 + e^{-2βz})` with standard normal `z`.
    pub noise_beta: Option<f64>,
}

impl MarketConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_components < 1 {
            return Err(Error::InvalidConfig(
                "n_components must be at least 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.sin2phi) {
            return Err(Error::InvalidConfig(format!(
                "sin2phi must lie in [0, 1], got {}",
                self.sin2phi
            )));
        }
        if !(self.v0 > 0.0 && self.v0 <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "v0 must lie in (0, 1], got {}",
                self.v0
            )));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "lambda must be positive, got {}",
                self.lambda
            )));
        }
        if self.steps == 0 {
            return Err(Error::InvalidConfig("steps must be positive".into()));
        }
        if self.transient >= self.steps {
            return Err(Error::InvalidConfig(format!(
                "transient ({}) must be smaller than steps ({})",
                self.transient, self.steps
            )));
        }
        if let Some(beta) = self.noise_beta {
            if !(beta >= 0.0 && beta.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "noise beta must be non-negative, got {beta}"
                )));
            }
        }
        Ok(())
    }
}

/// The lattice state after some number of completed rounds.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketState {
    pub components: Vec<NetworkState>,
    pub round: u64,
}

/// Recorded log-returns and the log-price path they accumulate into.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnsSeries {
    pub returns: Vec<f64>,
    pub log_prices: Vec<f64>,
}

impl ReturnsSeries {
    /// Accumulates log-prices from a return sequence, starting at zero.
    pub fn from_returns(returns: Vec<f64>) -> Self {
        let mut log_prices = Vec::with_capacity(returns.len());
        let mut level = 0.0;
        for r in &returns {
            level += r;
            log_prices.push(level);
        }
        Self {
            returns,
            log_prices,
        }
    }

    pub fn rounds(&self) -> usize {
        self.returns.len()
    }
}

/// Volatility eigenvalue of one component: `v0` when the market-state neuron
/// is quiet, `2 - v0` when it fires.
pub fn volatility_eigenvalue(fires: bool, v0: f64) -> f64 {
    if fires {
        2.0 - v0
    } else {
        v0
    }
}

/// Polarization eigenvalue: -1 (bearish) when quiet, +1 (bullish) on firing.
pub fn polarization_eigenvalue(fires: bool) -> f64 {
    if fires {
        1.0
    } else {
        -1.0
    }
}

/// The volatility observable on one component, diagonal in the neural basis.
pub fn volatility_observable(v0: f64) -> Observable8 {
    let mut diag = [0.0; DIM];
    for (s, slot) in diag.iter_mut().enumerate() {
        *slot = volatility_eigenvalue(s & 1 == 1, v0);
    }
    Observable8::from_diagonal(diag)
}

/// The polarization observable on one component.
pub fn polarization_observable() -> Observable8 {
    let mut diag = [0.0; DIM];
    for (s, slot) in diag.iter_mut().enumerate() {
        *slot = polarization_eigenvalue(s & 1 == 1);
    }
    Observable8::from_diagonal(diag)
}

/// The log-return assigned to one joint outcome: the product of the
/// volatility factors times the polarization sign, divided by market depth.
///
/// `bits[k]` is the sampled market-state neuron of component `k`; the last
/// entry is the polarization component.
pub fn returns_eigenvalue(bits: &[bool], cfg: &MarketConfig) -> Result<f64> {
    if bits.len() != cfg.n_components {
        return Err(Error::ComponentCountMismatch {
            expected: cfg.n_components,
            actual: bits.len(),
        });
    }
    let (&polarization, volatility) = bits.split_last().expect("n_components >= 1");
    let mut product = 1.0;
    for &b in volatility {
        product *= volatility_eigenvalue(b, cfg.v0);
    }
    Ok(product * polarization_eigenvalue(polarization) / cfg.lambda)
}

/// The probability that a component's market-state neuron fires: the summed
/// squared amplitudes of the firing half of the basis.
pub fn firing_probability(state: &NetworkState) -> f64 {
    (0..DIM)
        .filter(|s| s & 1 == 1)
        .map(|s| state.amplitude(s).norm_sqr())
        .sum()
}

/// The stochastic rotation angle `φ = arcsin(1/√(1 + e^{-2βz}))`.
pub fn sample_phi(beta: f64, z: f64) -> f64 {
    let sin2 = 1.0 / (1.0 + (-2.0 * beta * z).exp());
    sin2.sqrt().asin()
}

/// The standard normal drift feeding component `k`'s stochastic angle at the
/// given round.
pub fn noise_draw(seed: u64, component: u64, round: u64) -> f64 {
    let mut rng = derive_stream(seed, component, round, StreamDomain::GateNoise);
    StandardNormal.sample(&mut rng)
}

/// Draws the initial lattice: each component is `(Ua ⊗ Ub ⊗ Uc)|000⟩` with
/// three independent Haar-random U(2) gates.
pub fn init_market(cfg: &MarketConfig) -> MarketState {
    let components = (0..cfg.n_components)
        .map(|k| {
            let mut rng = derive_stream(cfg.seed, k as u64, 0, StreamDomain::Init);
            let ua = haar_random_u2(&mut rng);
            let ub = haar_random_u2(&mut rng);
            let uc = haar_random_u2(&mut rng);
            NetworkState::product_state(&ua, &ub, &uc)
        })
        .collect();
    MarketState {
        components,
        round: 0,
    }
}

/// Evolves every component by one round without sampling any outcome.
fn evolve_round(state: &MarketState, cfg: &MarketConfig) -> Result<Vec<NetworkState>> {
    let fixed_op = match cfg.noise_beta {
        Some(_) => None,
        None => Some(l_net(phi_from_sin2phi(cfg.sin2phi))),
    };
    state
        .components
        .iter()
        .enumerate()
        .map(|(k, component)| {
            let op = match (cfg.noise_beta, &fixed_op) {
                (Some(beta), _) => {
                    let z = noise_draw(cfg.seed, k as u64, state.round);
                    l_net(sample_phi(beta, z))
                }
                (None, Some(op)) => op.clone(),
                (None, None) => unreachable!(),
            };
            step(component, &op)
        })
        .collect()
}

/// Samples each component's market-state neuron from the squared amplitudes
/// of `components`, using the outcome streams of the given round.
fn sample_outcomes(components: &[NetworkState], seed: u64, round: u64) -> Vec<bool> {
    components
        .iter()
        .enumerate()
        .map(|(k, component)| {
            let mut rng = derive_stream(seed, k as u64, round, StreamDomain::OutcomeSample);
            rng.random::<f64>() < firing_probability(component)
        })
        .collect()
}

/// Runs one trading round: evolve every component, sample every market-state
/// neuron, and price the joint outcome. The returned lattice state is the
/// evolved one — sampling never collapses it.
pub fn advance_round(state: &MarketState, cfg: &MarketConfig) -> Result<(MarketState, f64)> {
    let components = evolve_round(state, cfg)?;
    let bits = sample_outcomes(&components, cfg.seed, state.round);
    let ret = returns_eigenvalue(&bits, cfg)?;
    Ok((
        MarketState {
            components,
            round: state.round + 1,
        },
        ret,
    ))
}

/// Runs a full simulation: initialize, advance `steps` rounds, drop the
/// transient, and accumulate log-prices from zero.
pub fn simulate(cfg: &MarketConfig) -> Result<ReturnsSeries> {
    cfg.validate()?;
    let mut state = init_market(cfg);
    let mut returns = Vec::with_capacity(cfg.steps as usize);
    for _ in 0..cfg.steps {
        let (next, ret) = advance_round(&state, cfg)?;
        state = next;
        returns.push(ret);
    }
    Ok(ReturnsSeries::from_returns(
        returns.split_off(cfg.transient as usize),
    ))
}
