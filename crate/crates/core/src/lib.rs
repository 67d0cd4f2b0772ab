//! Random quantum states, their limiting spectral laws, and typical distances
//! between them.

pub mod cli;
pub mod coherence;
pub mod constants;
pub mod distances;
pub mod ensembles;
pub mod entanglement;
pub mod error;
pub mod experiments;
pub mod kicked_top;
pub mod laws;
pub mod linalg;
pub mod quad;
pub mod stats;

pub use error::{Error, Result};
