//! Prints the default three-scheme sweep from 2^10 to 2^20 neurons.

use swplace::costmodel::{sweep, CostModelParams, Scheme, Workload};

fn main() {
    let sizes: Vec<u64> = (10..=20).map(|e| 1u64 << e).collect();
    let cfgs: Vec<CostModelParams> = Scheme::ALL.iter().map(|&s| CostModelParams::default_for(s)).collect();
    let rows = sweep(&sizes, &Workload::default(), &cfgs).expect("default sweep");
    println!("{:>8} {:>15} {:>10} {:>14} {:>12}", "size", "scheme", "fan_in", "Mbit", "bits/neuron");
    for r in rows {
        println!(
            "{:>8} {:>15} {:>10.1} {:>14.2} {:>12.2}",
            r.network_size,
            r.scheme,
            r.mean_fan_in,
            r.bits_total as f64 / 1e6,
            r.bits_per_neuron
        );
    }
}
