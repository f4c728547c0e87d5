use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use swplace::netgraph::NeuronId;
use swplace::{Network, Placement};
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swplace")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn generate(dir: &Path, cores: &str, file: &str) {
    let out = run(dir, &["generate", "--cores", cores, "--out", file]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

fn read_net(path: &Path) -> Network {
    Network::from_json(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn generate_writes_canonical_sizes() {
    let dir = TempDir::new().unwrap();
    generate(dir.path(), "7", "small.json");
    generate(dir.path(), "70", "large.json");
    assert_eq!(read_net(&dir.path().join("small.json")).num_neurons(), 112);
    assert_eq!(read_net(&dir.path().join("large.json")).num_neurons(), 1120);
    assert!(dir.path().join("small.json.manifest.json").exists());
}

#[test]
fn zero_cores_gives_an_empty_network() {
    let dir = TempDir::new().unwrap();
    generate(dir.path(), "0", "empty.json");
    let net = read_net(&dir.path().join("empty.json"));
    assert_eq!((net.num_neurons(), net.num_edges()), (0, 0));

    let out = run(dir.path(), &["place", "--net", "empty.json", "--out", "p.json"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("cores_used=0 flagged=0"));
}

#[test]
fn place_prints_summary_for_canonical_network() {
    let dir = TempDir::new().unwrap();
    generate(dir.path(), "7", "net.json");
    let out = run(dir.path(), &["place", "--net", "net.json", "--out", "p.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "cores_used=7 flagged=0 max_level=2");

    let placement = Placement::from_json(&fs::read_to_string(dir.path().join("p.json")).unwrap()).unwrap();
    assert_eq!(placement.cores_used, 7);
    assert_eq!(placement.edges.len(), read_net(&dir.path().join("net.json")).num_edges());
}

#[test]
fn edge_list_input_is_accepted() {
    let dir = TempDir::new().unwrap();
    generate(dir.path(), "7", "net.txt");
    let text = fs::read_to_string(dir.path().join("net.txt")).unwrap();
    assert!(text.starts_with("# neurons 112 "));
    let out = run(dir.path(), &["place", "--net", "net.txt", "--out", "p.json"]);
    assert_eq!(stdout(&out).trim(), "cores_used=7 flagged=0 max_level=2");
}

#[test]
fn line_network_is_partially_placed() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["generate", "--cores", "5", "--mode", "line", "--out", "line.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(read_net(&dir.path().join("line.json")).num_neurons(), 80);

    let out = run(dir.path(), &["place", "--net", "line.json", "--b", "4", "--out", "p.json"]);
    assert_eq!(code(&out), 1);
    let summary = stdout(&out);
    let flagged: usize =
        summary.split_whitespace().find_map(|f| f.strip_prefix("flagged=")).unwrap().parse().unwrap();
    assert!(flagged > 0, "{summary}");
    // the partial placement is still written and valid over its placed edges
    assert_eq!(code(&run(dir.path(), &["validate", "--net", "line.json", "--placement", "p.json"])), 0);
}

#[test]
fn hardware_config_file_and_flag_override() {
    let dir = TempDir::new().unwrap();
    generate(dir.path(), "7", "net.json");
    let cfg = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/hw-16x4.toml");
    let out = run(dir.path(), &["place", "--net", "net.json", "--config", cfg, "--out", "p.json"]);
    assert_eq!(code(&out), 0);
    let manifest = fs::read_to_string(dir.path().join("p.json.manifest.json")).unwrap();
    assert!(manifest.contains("\"L\": 2"));

    let out =
        run(dir.path(), &["place", "--net", "net.json", "--config", cfg, "--levels", "3", "--out", "q.json"]);
    assert_eq!(code(&out), 0);
    let manifest = fs::read_to_string(dir.path().join("q.json.manifest.json")).unwrap();
    assert!(manifest.contains("\"L\": 3"));
}

#[test]
fn too_small_hardware_is_a_capacity_error() {
    let dir = TempDir::new().unwrap();
    generate(dir.path(), "7", "net.json");
    let out = run(dir.path(), &["place", "--net", "net.json", "--levels", "1", "--out", "p.json"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn validate_accepts_emitted_and_rejects_tampered_placement() {
    let dir = TempDir::new().unwrap();
    generate(dir.path(), "7", "net.json");
    run(dir.path(), &["place", "--net", "net.json", "--out", "p.json"]);
    let out = run(dir.path(), &["validate", "--net", "net.json", "--placement", "p.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "ok=true violations=0 unplaced=0");

    // move neuron 0 onto the core of neuron 16, overfilling it
    let mut placement =
        Placement::from_json(&fs::read_to_string(dir.path().join("p.json")).unwrap()).unwrap();
    let other = placement.neuron_core[&NeuronId(16)];
    placement.neuron_core.insert(NeuronId(0), other);
    fs::write(dir.path().join("bad.json"), placement.to_json()).unwrap();
    let out = run(
        dir.path(),
        &["validate", "--net", "net.json", "--placement", "bad.json", "--out", "report.json"],
    );
    assert_eq!(code(&out), 5);
    let text = stdout(&out);
    assert!(text.starts_with("ok=false"));
    assert!(text.contains(r#""kind":"capacity""#), "{text}");
    assert!(text.contains(r#""hosted":17"#), "{text}");
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["ok"], false);
}

#[test]
fn missing_input_is_an_io_error() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["place", "--net", "absent.json", "--out", "p.json"]);
    assert_eq!(code(&out), 6);
    assert!(String::from_utf8_lossy(&out.stderr).contains("absent.json"));
}

#[test]
fn malformed_input_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.json"), "{\"neurons\": [1, 2]").unwrap();
    let out = run(dir.path(), &["place", "--net", "bad.json", "--out", "p.json"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn perturb_sweep_covers_every_removal_count() {
    let dir = TempDir::new().unwrap();
    generate(dir.path(), "7", "net.json");
    let out = run(dir.path(), &["perturb-sweep", "--net", "net.json", "--seed", "3", "--out", "s.csv"]);
    assert_eq!(code(&out), 0);
    let csv = fs::read_to_string(dir.path().join("s.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("removed,trial,cores_used,flagged"));
    let rows: Vec<Vec<usize>> = lines.map(|l| l.split(',').map(|f| f.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 112 * 5);
    assert!(rows.iter().all(|r| r[2] <= 7));
    let last: Vec<_> = rows.iter().filter(|r| r[0] == 112).collect();
    assert_eq!(last.len(), 5);
    assert!(last.iter().all(|r| r[2] == 0 && r[3] == 0));
}

#[test]
fn perturb_sweep_fraction_mode() {
    let dir = TempDir::new().unwrap();
    generate(dir.path(), "7", "net.json");
    let out = run(
        dir.path(),
        &["perturb-sweep", "--net", "net.json", "--fractions", "0,0.5,1", "--trials", "2", "--out", "s.csv"],
    );
    assert_eq!(code(&out), 0);
    let csv = fs::read_to_string(dir.path().join("s.csv")).unwrap();
    let removed: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(removed, ["0", "0", "56", "56", "112", "112"]);
    assert!(csv.lines().nth(1).unwrap().starts_with("0,0,7,0"));

    let out =
        run(dir.path(), &["perturb-sweep", "--net", "net.json", "--fractions", "1.5", "--out", "t.csv"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn commands_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let steps: [&[&str]; 5] = [
        &["generate", "--cores", "7", "--seed", "9", "--out", "OUT/net.json"],
        &["place", "--net", "OUT/net.json", "--spare", "extra-cores", "--out", "OUT/p.json"],
        &["validate", "--net", "OUT/net.json", "--placement", "OUT/p.json", "--out", "OUT/v.json"],
        &["perturb-sweep", "--net", "OUT/net.json", "--from", "50", "--to", "60", "--out", "OUT/s.csv"],
        &["cost", "--out", "OUT/c.csv"],
    ];
    for round in ["a", "b"] {
        for step in steps {
            let args: Vec<String> = step.iter().map(|a| a.replace("OUT", round)).collect();
            let args: Vec<&str> = args.iter().map(String::as_str).collect();
            let out = run(dir.path(), &args);
            assert!(code(&out) <= 1, "{args:?}");
        }
    }
    for file in ["net.json", "p.json", "v.json", "s.csv", "c.csv"] {
        let a = fs::read(dir.path().join("a").join(file)).unwrap();
        let b = fs::read(dir.path().join("b").join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between runs");
    }
}

fn cost_rows(csv: &str) -> Vec<(u64, String, u64)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].to_string(), f[3].parse().unwrap())
        })
        .collect()
}

#[test]
fn cost_sweep_orders_schemes_at_full_size() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["cost", "--out", "c.csv"]);
    assert_eq!(code(&out), 0);
    let csv = fs::read_to_string(dir.path().join("c.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("network_size,scheme,effective_neurons,bits_total,bits_per_neuron"));
    let rows = cost_rows(&csv);
    assert_eq!(rows.len(), 33);
    let bits = |scheme: &str| rows.iter().find(|r| r.0 == 1 << 20 && r.1 == scheme).unwrap().2;
    let (h, c, x) = (bits("hierarchical"), bits("cam_mixed"), bits("crossbar_fixed"));
    assert!(h < c && c < x);
}

#[test]
fn cost_defaults_file_matches_builtin_models() {
    let dir = TempDir::new().unwrap();
    let params = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/cost-defaults.toml");
    run(dir.path(), &["cost", "--out", "builtin.csv"]);
    let out = run(dir.path(), &["cost", "--params", params, "--out", "file.csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        fs::read(dir.path().join("builtin.csv")).unwrap(),
        fs::read(dir.path().join("file.csv")).unwrap()
    );
}

#[test]
fn cost_scheme_filter_and_explicit_sizes() {
    let dir = TempDir::new().unwrap();
    let out = run(
        dir.path(),
        &["cost", "--sizes", "1024,4096", "--schemes", "cam_mixed,hierarchical", "--out", "c.csv"],
    );
    assert_eq!(code(&out), 0);
    let rows = cost_rows(&fs::read_to_string(dir.path().join("c.csv")).unwrap());
    let keys: Vec<(u64, &str)> = rows.iter().map(|r| (r.0, r.1.as_str())).collect();
    assert_eq!(keys.len(), 4);
    assert!(keys.iter().all(|k| k.1 != "crossbar_fixed"));

    let out = run(dir.path(), &["cost", "--schemes", "banyan", "--out", "d.csv"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn stats_reports_graph_measures() {
    let dir = TempDir::new().unwrap();
    generate(dir.path(), "7", "net.json");
    let out = run(dir.path(), &["stats", "--net", "net.json"]);
    assert_eq!(code(&out), 0);
    let stats: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(stats["num_neurons"], 112);
    assert!(stats["global_clustering_coefficient"].as_f64().unwrap() > 0.5);
}
