//! Placement and routing-memory accounting for small-world spiking networks
//! on hierarchical multi-core neuromorphic hardware.
//!
//! - [`netgraph`]: directed neuron graphs, canonical generators, perturbations, statistics.
//! - [`hwmodel`]: router-tree geometry, fan-in allowances and placement validation.
//! - [`placer`]: clique cover, slot assignment and connection routing.
//! - [`costmodel`]: routing-memory models for hierarchical and fixed-fan-in schemes.

pub mod costmodel;
pub mod error;
pub mod hwmodel;
pub mod netgraph;
pub mod placement;
pub mod placer;

pub use error::{Error, Result};
pub use hwmodel::{HardwareConfig, SlotId, ValidationReport, Violation};
pub use netgraph::{CanonicalParams, DistanceMode, GraphStats, Network, NeuronId};
pub use placement::{CoreId, EdgeRecord, EdgeStatus, Placement, RelayCore};
pub use placer::{place, place_with, PlaceOptions, PlacementReport, SparePolicy};
