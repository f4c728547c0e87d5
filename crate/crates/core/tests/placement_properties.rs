use proptest::prelude::*;
use swplace::hwmodel::{max_fan_in, validate_placement};
use swplace::netgraph::{
    generate_canonical, perturb_remove_neurons, random_network, CanonicalParams, DistanceMode,
};
use swplace::placer::clique_cover;
use swplace::{place, EdgeStatus, Error, HardwareConfig, Network, SparePolicy};

fn policy() -> impl Strategy<Value = SparePolicy> {
    prop_oneof![Just(SparePolicy::Off), Just(SparePolicy::ExtraCores)]
}

/// Checks the placement invariants that do not depend on the validator.
fn assert_consistent(net: &Network, placement: &swplace::Placement) {
    assert_eq!(placement.edges.len(), net.num_edges());
    assert_eq!(placement.neuron_core.len(), net.num_neurons());
    for rec in &placement.edges {
        let same_core = placement.neuron_core[&rec.src] == placement.neuron_core[&rec.dst];
        if same_core {
            assert_eq!(rec.status, EdgeStatus::Placed { level: 0 });
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_networks_place_validly(
        size in 1u32..80,
        density in 0.0f64..0.6,
        seed in any::<u64>(),
        n in prop_oneof![Just(4u32), Just(8), Just(16)],
        b in 2u32..5,
        spare in policy(),
    ) {
        let edges = (density * (size * size.saturating_sub(1)) as f64) as usize;
        let net = random_network(size, edges, seed).unwrap();
        let cores = clique_cover(&net, n as usize).unwrap().len();
        let cfg = HardwareConfig::fitting(n, b, cores + 2).unwrap();
        let report = place(&net, &cfg, spare).unwrap();
        assert_consistent(&net, &report.placement);
        let v = validate_placement(&report.placement, &net, &cfg).unwrap();
        prop_assert!(v.ok, "{:?}", v.violations);
        prop_assert_eq!(v.unplaced_count, report.flagged);
    }

    #[test]
    fn spare_cores_never_add_flags(size in 8u32..60, seed in any::<u64>()) {
        let net = random_network(size, (size * size / 3) as usize, seed).unwrap();
        let cfg = HardwareConfig::new(4, 2, 5).unwrap();
        let off = place(&net, &cfg, SparePolicy::Off).unwrap();
        let on = place(&net, &cfg, SparePolicy::ExtraCores).unwrap();
        prop_assert!(on.flagged <= off.flagged);
        prop_assert!(validate_placement(&on.placement, &net, &cfg).unwrap().ok);
    }

    #[test]
    fn perturbed_canonical_stays_within_ground_truth(
        cores in 1u32..=16,
        frac in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let net = generate_canonical(&CanonicalParams::tree(16, cores, 4), 0).unwrap();
        let k = (frac * net.num_neurons() as f64).round() as usize;
        let perturbed = perturb_remove_neurons(&net, k, seed).unwrap();
        let cfg = HardwareConfig::fitting(16, 4, cores as usize).unwrap();
        let report = place(&perturbed, &cfg, SparePolicy::Off).unwrap();
        prop_assert!(report.cores_used <= cores as usize);
        if k == net.num_neurons() {
            prop_assert_eq!(report.cores_used, 0);
        }
        prop_assert!(validate_placement(&report.placement, &perturbed, &cfg).unwrap().ok);
    }
}

#[test]
fn ground_truth_for_power_of_two_core_sizes() {
    for n in [4u32, 8, 16, 32] {
        for b in [2u32, 4] {
            for levels in 1..=3 {
                let cfg = HardwareConfig::new(n, b, levels).unwrap();
                let cores = cfg.total_slots().min(40);
                for c in [1, cores / 2, cores].into_iter().filter(|&c| c > 0) {
                    let params = CanonicalParams {
                        n,
                        num_cores: c,
                        branching: b,
                        distance_mode: DistanceMode::Tree,
                        max_level: None,
                    };
                    let net = generate_canonical(&params, 0).unwrap();
                    let r = place(&net, &cfg, SparePolicy::Off).unwrap();
                    assert_eq!((r.cores_used, r.flagged), (c as usize, 0), "n={n} b={b} L={levels} C={c}");
                    assert!(validate_placement(&r.placement, &net, &cfg).unwrap().ok);
                }
            }
        }
    }
}

#[test]
fn full_tree_reaches_maximum_fan_in() {
    // every neuron of the full canonical tree receives the whole allowance budget
    let cfg = HardwareConfig::new(8, 2, 3).unwrap();
    let net = generate_canonical(&CanonicalParams::tree(8, 8, 2), 0).unwrap();
    let fan_in = net.fan_in(net.neurons()[0]).unwrap();
    assert_eq!(fan_in as u64, max_fan_in(&cfg));
    let r = place(&net, &cfg, SparePolicy::Off).unwrap();
    assert_eq!(r.flagged, 0);
}

#[test]
fn oversubscribed_hardware_is_reported() {
    let net = generate_canonical(&CanonicalParams::tree(16, 7, 4), 0).unwrap();
    let cfg = HardwareConfig::new(16, 4, 1).unwrap();
    match place(&net, &cfg, SparePolicy::Off) {
        Err(Error::Capacity { needed, available }) => assert_eq!((needed, available), (7, 4)),
        other => panic!("expected capacity error, got {other:?}"),
    }
}
