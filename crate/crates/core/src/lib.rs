//! Reconfiguration of connected graph partitions ("district maps") by
//! single-vertex switches.
//!
//! * [`graph`], [`spqr`]: graphs, block trees, SPQR trees.
//! * [`district`]: maps, switches, plans, contractibility.
//! * [`planner`]: constructive switch plans between maps.
//! * [`connectivity`]: deciding connectedness of the switch graph.
//! * [`oracle`]: brute force over all maps of small graphs.
//! * [`corpus`]: small-graph test corpora.
//! * [`generators`]: lower-bound and reduction instances with witnesses.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod connectivity;
pub mod corpus;
pub mod district;
pub mod error;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod planner;
pub mod spqr;

pub use error::{Error, Result};
pub use graph::Graph;
