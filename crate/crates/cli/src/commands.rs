use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use swplace::costmodel::{self, CostModelParams, Scheme, Workload};
use swplace::hwmodel::validate_placement;
use swplace::netgraph::{
    generate_canonical, graph_stats, perturb_remove_fraction, perturb_remove_neurons, CanonicalParams,
    DistanceMode,
};
use swplace::placer::{clique_cover, place_with, CountMode, PlaceOptions, SparePolicy};
use swplace::{Error, HardwareConfig, Network};

use crate::error::{CliError, CliResult};
use crate::files::{self, RunManifest};
use crate::{
    CostArgs, CountArg, GenerateArgs, HardwareArgs, ModeArg, PerturbArgs, PlaceArgs, SpareArg, StatsArgs,
    ValidateArgs,
};

/// `println!` that stops quietly when stdout is closed, e.g. piped into `head`.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let mut out = std::io::stdout().lock();
        if let Err(e) = writeln!(out, $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
        }
    }};
}

const DEFAULT_N: u32 = 16;
const DEFAULT_B: u32 = 4;

/// Config file first, then flags; the tree depth falls back to the smallest
/// one with room for `cores()` cores.
fn resolve_hardware(
    args: &HardwareArgs,
    cores: impl FnOnce(u32) -> CliResult<usize>,
) -> CliResult<HardwareConfig> {
    let base = args.config.as_deref().map(files::read_hardware).transpose()?;
    let n = args.n.or(base.map(|c| c.n())).unwrap_or(DEFAULT_N);
    let b = args.b.or(base.map(|c| c.b())).unwrap_or(DEFAULT_B);
    let levels = match args.levels.or(base.map(|c| c.levels())) {
        Some(l) => l,
        None => HardwareConfig::fitting(n, b, cores(n)?)?.levels(),
    };
    Ok(HardwareConfig::new(n, b, levels)?)
}

fn cover_size(net: &Network) -> impl FnOnce(u32) -> CliResult<usize> + '_ {
    move |n| Ok(clique_cover(net, n as usize)?.len())
}

pub fn generate(args: &GenerateArgs) -> CliResult<()> {
    let net = if args.cores == 0 {
        Network::default()
    } else {
        let params = CanonicalParams {
            n: args.n,
            num_cores: args.cores,
            branching: args.b,
            distance_mode: match args.mode {
                ModeArg::Tree => DistanceMode::Tree,
                ModeArg::Line => DistanceMode::Line,
            },
            max_level: args.max_level,
        };
        generate_canonical(&params, args.seed)?
    };
    files::write_network(&args.out, &net)?;
    let mut manifest = RunManifest::new("generate", args);
    manifest.seed = Some(args.seed);
    manifest.outputs = vec![args.out.clone()];
    manifest.write_beside(&args.out)?;
    say!("neurons={} edges={}", net.num_neurons(), net.num_edges());
    Ok(())
}

pub fn place(args: &PlaceArgs) -> CliResult<()> {
    let net = files::read_network(&args.net)?;
    let cfg = resolve_hardware(&args.hw, cover_size(&net))?;
    let opts = PlaceOptions {
        spare_policy: match args.spare {
            SpareArg::Off => SparePolicy::Off,
            SpareArg::ExtraCores => SparePolicy::ExtraCores,
        },
        count_mode: match args.count_mode {
            CountArg::Distinct => CountMode::DistinctSources,
            CountArg::Synapses => CountMode::Synapses,
        },
    };
    let report = place_with(&net, &cfg, &opts)?;
    files::write_text(&args.out, &(report.placement.to_json() + "\n"))?;
    let mut manifest = RunManifest::new("place", args);
    manifest.inputs = vec![args.net.clone()];
    manifest.hardware = Some(cfg);
    manifest.outputs = vec![args.out.clone()];
    manifest.write_beside(&args.out)?;

    say!("{}", report.summary());
    if report.flagged > 0 {
        return Err(CliError::Partial(report.flagged));
    }
    Ok(())
}

pub fn validate(args: &ValidateArgs) -> CliResult<()> {
    let net = files::read_network(&args.net)?;
    let placement = files::read_placement(&args.placement)?;
    let span = placement.core_slot.values().map(|s| s.0 as usize + 1).max().unwrap_or(1);
    let cfg = resolve_hardware(&args.hw, |_| Ok(span))?;
    let report = validate_placement(&placement, &net, &cfg)?;

    say!("ok={} violations={} unplaced={}", report.ok, report.violations.len(), report.unplaced_count);
    for v in &report.violations {
        say!("{}", serde_json::to_string(v).expect("violation serializes"));
    }
    if let Some(out) = &args.out {
        files::write_text(out, &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"))?;
        let mut manifest = RunManifest::new("validate", args);
        manifest.inputs = vec![args.net.clone(), args.placement.clone()];
        manifest.hardware = Some(cfg);
        manifest.outputs = vec![out.clone()];
        manifest.write_beside(out)?;
    }
    if !report.ok {
        return Err(CliError::Invalid(report.violations.len()));
    }
    Ok(())
}

/// Seed of one perturbation trial, derived from the run seed (splitmix64 finalizer).
pub fn trial_seed(seed: u64, removed: usize, trial: u32) -> u64 {
    let mut z = seed ^ (removed as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((trial as u64) << 40);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SweepRecord {
    pub removed: usize,
    pub trial: u32,
    pub cores_used: usize,
    pub flagged: usize,
}

pub fn perturb_sweep(args: &PerturbArgs) -> CliResult<()> {
    let net = files::read_network(&args.net)?;
    let cfg = resolve_hardware(&args.hw, cover_size(&net))?;
    let total = net.num_neurons();

    // (removed count, fraction if any)
    let points: Vec<(usize, Option<f64>)> = match &args.fractions {
        Some(fracs) => fracs
            .iter()
            .map(|&f| {
                if !(0.0..=1.0).contains(&f) {
                    return Err(CliError::Usage(format!("fraction {f} outside [0, 1]")));
                }
                Ok(((f * total as f64).round() as usize, Some(f)))
            })
            .collect::<CliResult<_>>()?,
        None => {
            let to = args.to.unwrap_or(total);
            if to > total || args.from > to {
                return Err(CliError::Usage(format!(
                    "removal range {}..={to} invalid for {total} neurons",
                    args.from
                )));
            }
            (args.from..=to).map(|k| (k, None)).collect()
        }
    };
    let jobs: Vec<(usize, Option<f64>, u32)> =
        points.iter().flat_map(|&(k, f)| (0..args.trials).map(move |t| (k, f, t))).collect();

    let rows: Vec<SweepRecord> = jobs
        .par_iter()
        .map(|&(removed, fraction, trial)| {
            let seed = trial_seed(args.seed, removed, trial);
            let perturbed = match fraction {
                Some(f) => perturb_remove_fraction(&net, f, seed)?,
                None => perturb_remove_neurons(&net, removed, seed)?,
            };
            let (cores_used, flagged) = match place_with(&perturbed, &cfg, &PlaceOptions::default()) {
                Ok(r) => (r.cores_used, r.flagged),
                Err(Error::Capacity { needed, .. }) => (needed, perturbed.num_edges()),
                Err(e) => return Err(e.into()),
            };
            Ok(SweepRecord { removed, trial, cores_used, flagged })
        })
        .collect::<CliResult<_>>()?;

    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        writer.serialize(r).expect("in-memory csv");
    }
    let bytes = writer.into_inner().expect("in-memory csv");
    files::write_text(&args.out, std::str::from_utf8(&bytes).expect("utf8 csv"))?;
    let mut manifest = RunManifest::new("perturb-sweep", args);
    manifest.inputs = vec![args.net.clone()];
    manifest.seed = Some(args.seed);
    manifest.hardware = Some(cfg);
    manifest.outputs = vec![args.out.clone()];
    manifest.write_beside(&args.out)?;

    let worst = rows.iter().map(|r| r.cores_used).max().unwrap_or(0);
    let flagged_runs = rows.iter().filter(|r| r.flagged > 0).count();
    say!("rows={} max_cores_used={worst} runs_with_flags={flagged_runs}", rows.len());
    Ok(())
}

#[derive(Deserialize)]
struct ModelFile {
    model: Vec<CostModelParams>,
}

fn cost_models(args: &CostArgs) -> CliResult<Vec<CostModelParams>> {
    let available: Vec<CostModelParams> = match &args.params {
        Some(path) => files::read_toml::<ModelFile>(path)?.model,
        None => Scheme::ALL.iter().map(|&s| CostModelParams::default_for(s)).collect(),
    };
    let Some(names) = &args.schemes else { return Ok(available) };
    names
        .iter()
        .map(|name| {
            let scheme: Scheme = name.parse()?;
            available
                .iter()
                .find(|m| m.scheme == scheme)
                .copied()
                .ok_or_else(|| CliError::Usage(format!("no parameters for scheme {scheme}")))
        })
        .collect()
}

pub fn cost(args: &CostArgs) -> CliResult<()> {
    let sizes: Vec<u64> = match &args.sizes {
        Some(s) => s.clone(),
        None => {
            if args.min_exp > args.max_exp || args.max_exp > 40 {
                return Err(CliError::Usage("exponent range must satisfy min <= max <= 40".into()));
            }
            (args.min_exp..=args.max_exp).map(|e| 1u64 << e).collect()
        }
    };
    let models = cost_models(args)?;
    let workload = Workload { n: args.workload_n, b: args.workload_b };
    let rows = costmodel::sweep(&sizes, &workload, &models)?;

    let mut buf = Vec::new();
    costmodel::write_sweep_csv(&rows, &mut buf)?;
    files::write_text(&args.out, std::str::from_utf8(&buf).expect("utf8 csv"))?;
    let mut manifest = RunManifest::new("cost", args);
    manifest.inputs = args.params.iter().cloned().collect();
    manifest.outputs = vec![args.out.clone()];
    manifest.write_beside(&args.out)?;

    if let Some(&largest) = sizes.last() {
        let at: Vec<_> = rows.iter().filter(|r| r.network_size == largest).collect();
        let hier = at.iter().find(|r| r.scheme == Scheme::Hierarchical).map(|r| r.bits_total);
        for r in &at {
            let ratio = match hier {
                Some(h) if h > 0 => format!(" ratio={:.1}", r.bits_total as f64 / h as f64),
                _ => String::new(),
            };
            say!("size={largest} scheme={} mbit={:.2}{ratio}", r.scheme, r.bits_total as f64 / 1e6);
        }
    }
    Ok(())
}

pub fn stats(args: &StatsArgs) -> CliResult<()> {
    let net = files::read_network(&args.net)?;
    let s = graph_stats(&net);
    say!("{}", serde_json::to_string_pretty(&s).expect("stats serialize"));
    Ok(())
}
