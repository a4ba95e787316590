//! Multicut-covering sets and multicut-mimicking networks.

pub mod cli;
pub mod error;
pub mod ffield;
pub mod flow;
pub mod frontend;
pub mod marker;
pub mod matroids;
pub mod netgraph;
pub mod oracles;
pub mod reducer;
pub mod repset;
pub mod tester;
pub mod trace;

pub use error::{Error, Result};
