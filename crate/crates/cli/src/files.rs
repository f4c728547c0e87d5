//! File I/O for networks, placements, configs and run manifests.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use swplace::netgraph::{parse_edge_list, write_edge_list};
use swplace::{HardwareConfig, Network, Placement};

use crate::error::{CliError, CliResult};

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// JSON for `.json` paths, edge list otherwise.
pub fn read_network(path: &Path) -> CliResult<Network> {
    let text = read_text(path)?;
    let net = if is_json(path) { Network::from_json(&text) } else { parse_edge_list(&text) };
    Ok(net?)
}

pub fn write_network(path: &Path, net: &Network) -> CliResult<()> {
    if is_json(path) {
        write_text(path, &(net.to_json() + "\n"))
    } else {
        write_text(path, &write_edge_list(net))
    }
}

pub fn read_placement(path: &Path) -> CliResult<Placement> {
    Ok(Placement::from_json(&read_text(path)?)?)
}

/// Hardware config file with integer keys `n`, `b` and `L`.
pub fn read_hardware(path: &Path) -> CliResult<HardwareConfig> {
    let text = read_text(path)?;
    let parsed = if is_json(path) {
        serde_json::from_str(&text).map_err(|e| e.to_string())
    } else {
        toml::from_str(&text).map_err(|e| e.to_string())
    };
    parsed.map_err(|message| CliError::Config { path: path.to_path_buf(), message })
}

pub fn read_toml<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    toml::from_str(&read_text(path)?)
        .map_err(|e| CliError::Config { path: path.to_path_buf(), message: e.to_string() })
}

/// Everything needed to reproduce one output file.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub seed: Option<u64>,
    pub hardware: Option<HardwareConfig>,
    pub outputs: Vec<PathBuf>,
    pub tool_version: String,
    pub arguments: serde_json::Value,
}

impl RunManifest {
    pub fn new(command: &str, arguments: &impl Serialize) -> Self {
        RunManifest {
            command: command.to_string(),
            inputs: Vec::new(),
            seed: None,
            hardware: None,
            outputs: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            arguments: serde_json::to_value(arguments).expect("arguments serialize"),
        }
    }

    /// Sidecar path: `<output>.manifest.json`.
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    pub fn write_beside(&self, output: &Path) -> CliResult<()> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes") + "\n";
        write_text(&Self::path_for(output), &text)
    }
}
