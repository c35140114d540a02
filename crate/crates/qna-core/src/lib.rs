//! Simulation library for a quantum-neural market model.
//!
//! A market is a lattice of independent three-neuron quantum networks, one
//! per multiplicative volatility component plus one for market polarization.
//! Each trading round applies a conditional-unitary loop operator to every
//! component, samples the market-state neurons from the squared amplitudes
//! (without collapsing anything) and prices the joint outcome into a
//! log-return. The same dynamics is exposed a second time as a classical
//! sixteen-variable nonlinear probability map, together with the statistics
//! used to characterize the resulting heavy-tailed return series.
//!
//! Modules follow the layers of the model:
//!
//! * [`quantum`] — complex 2×2/8×8 matrices, Pauli and Hamiltonian gates,
//!   Haar-random U(2) draws and the conditional-gate builder;
//! * [`network`] — the three-neuron loop operator, state evolution,
//!   observables and ensembles;
//! * [`market`] — lattice configuration, per-round evolution and sampling,
//!   and full return-series simulation;
//! * [`probmap`] — the literal and sign-carrying nonlinear probability maps
//!   with the interference decomposition;
//! * [`stats`] — Fisher kurtosis and the Jarque–Bera normality test;
//! * [`rng`] — deterministic per-(component, round) random stream
//!   derivation.

pub mod error;
pub mod market;
pub mod network;
pub mod probmap;
pub mod quantum;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use market::{MarketConfig, MarketState, ReturnsSeries};
pub use network::{EnsembleState, NetworkState, Observable8};
pub use num_complex::Complex64;
pub use probmap::{ProbMapState, SignedMapState};
pub use quantum::{ConditionalGateSpec, HamiltonianParams, Matrix2, Matrix8};
pub use stats::SeriesSummary;
