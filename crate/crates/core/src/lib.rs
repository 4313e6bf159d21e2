//! Tape reconfiguration, dominating-set reconfiguration and their reductions.

pub mod bitset;
pub mod engine;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod reductions;
pub mod tape;
pub mod tape_reduce;

pub use engine::{DsrInstance, MoveRule, ReconfigResult};
pub use error::{Error, Result};
pub use graph::{Graph, TreeDecomposition, VertexSet};
pub use kernel::{DcrInstance, Family};
pub use tape::{MultiTapeInstance, Tape, TapeInstance};
