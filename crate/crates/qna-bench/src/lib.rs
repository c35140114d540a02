//! Shared fixtures for the benchmark targets.

use qna_core::market::MarketConfig;

/// The reference single-run setup: 20 components, deterministic gates.
pub fn reference_config(steps: u64) -> MarketConfig {
    MarketConfig {
        n_components: 20,
        sin2phi: 0.6,
        v0: 0.7,
        lambda: 1000.0,
        steps,
        transient: 0,
        seed: 12345,
        noise_beta: None,
    }
}

/// Same lattice driven by stochastic gates.
pub fn noisy_config(steps: u64) -> MarketConfig {
    MarketConfig {
        noise_beta: Some(2.0),
        ..reference_config(steps)
    }
}
