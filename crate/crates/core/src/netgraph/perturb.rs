use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Network;
use crate::error::{param, Result};

/// Removes `k` neurons chosen uniformly without replacement, along with
/// every incident edge. Equal inputs give equal outputs.
pub fn perturb_remove_neurons(net: &Network, k: usize, seed: u64) -> Result<Network> {
    let total = net.num_neurons();
    if k > total {
        return Err(param(format!("cannot remove {k} of {total} neurons")));
    }
    let mut removed = vec![false; total];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in sample(&mut rng, total, k) {
        removed[i] = true;
    }
    let keep = |id| net.index_of(id).is_some_and(|i| !removed[i]);

    let neurons = net.neurons().iter().copied().filter(|&v| keep(v)).collect();
    let edges = net.edges().iter().copied().filter(|&(s, d)| keep(s) && keep(d)).collect();
    let populations =
        net.populations().map(|p| p.iter().filter(|(v, _)| keep(**v)).map(|(v, c)| (*v, *c)).collect());
    Ok(Network::from_parts_unchecked(neurons, edges, populations))
}

/// Removes `round(fraction * |neurons|)` neurons.
pub fn perturb_remove_fraction(net: &Network, fraction: f64, seed: u64) -> Result<Network> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(param(format!("fraction {fraction} outside [0, 1]")));
    }
    let k = (fraction * net.num_neurons() as f64).round() as usize;
    perturb_remove_neurons(net, k.min(net.num_neurons()), seed)
}
