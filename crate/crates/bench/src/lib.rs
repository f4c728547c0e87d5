//! Shared inputs for the criterion benchmarks.

use swplace::netgraph::{generate_canonical, perturb_remove_fraction, CanonicalParams};
use swplace::{HardwareConfig, Network};

/// Canonical tree network of `cores` 16-neuron populations and hardware that fits it.
pub fn canonical_case(cores: u32) -> (Network, HardwareConfig) {
    let net = generate_canonical(&CanonicalParams::tree(16, cores, 4), 0).expect("valid parameters");
    let cfg = HardwareConfig::fitting(16, 4, cores as usize).expect("valid hardware");
    (net, cfg)
}

/// [`canonical_case`] with a seeded fraction of its neurons removed.
pub fn perturbed_case(cores: u32, fraction: f64, seed: u64) -> (Network, HardwareConfig) {
    let (net, cfg) = canonical_case(cores);
    (perturb_remove_fraction(&net, fraction, seed).expect("fraction in range"), cfg)
}
