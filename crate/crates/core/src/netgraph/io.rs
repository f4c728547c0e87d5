use std::fmt::Write as _;

use super::{Network, NeuronId};
use crate::error::{Error, Result};

/// Parses a whitespace-separated edge list.
///
/// Each non-blank line holds `src dst`. A line with a single id declares an
/// isolated neuron. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Network> {
    let mut neurons = Vec::new();
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<u32>()
                .map(NeuronId)
                .map_err(|e| Error::Parse(format!("line {}: {s:?}: {e}", lineno + 1)))
        };
        match fields.as_slice() {
            [id] => neurons.push(parse(id)?),
            [src, dst] => {
                let (s, d) = (parse(src)?, parse(dst)?);
                neurons.extend([s, d]);
                edges.push((s, d));
            }
            _ => return Err(Error::Parse(format!("line {}: expected `src dst`, got {line:?}", lineno + 1))),
        }
    }
    Network::new(neurons, edges)
}

/// Writes `net` as an edge list. Neurons without edges are listed alone.
pub fn write_edge_list(net: &Network) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# neurons {} edges {}", net.num_neurons(), net.num_edges());
    let mut touched = vec![false; net.num_neurons()];
    for (s, d) in net.dense_edges() {
        touched[s as usize] = true;
        touched[d as usize] = true;
    }
    for (id, _) in net.neurons().iter().zip(&touched).filter(|(_, t)| !**t) {
        let _ = writeln!(out, "{id}");
    }
    for (s, d) in net.edges() {
        let _ = writeln!(out, "{s} {d}");
    }
    out
}
