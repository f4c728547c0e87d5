use thiserror::Error;

use crate::netgraph::NeuronId;

/// Errors produced by the placement toolchain.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument is outside its documented domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// A neuron id was looked up in a network that does not contain it.
    #[error("unknown neuron {0}")]
    UnknownNeuron(NeuronId),
    /// Inputs reference each other inconsistently (dangling ids, broken edges, bad slots).
    #[error("structural error: {0}")]
    Structural(String),
    /// The hardware does not have enough core slots.
    #[error("capacity exceeded: {needed} cores needed but only {available} slots available")]
    Capacity { needed: usize, available: usize },
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}
