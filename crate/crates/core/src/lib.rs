//! Graphical calculus for qubit entanglement: spiders, diagrams and their
//! tensor semantics, sound rewrite rules, and tangle analytics for the GHZ
//! and W classes.

pub mod cli;
pub mod diagram;
pub mod entangle;
pub mod error;
pub mod evaluator;
pub mod generators;
pub mod phase;
pub mod qtensor;
pub mod rewrite;
pub mod rng;
pub mod wfrob;

pub use diagram::Diagram;
pub use error::{Error, Result};
pub use generators::Color;
pub use phase::Phase;
pub use qtensor::QTensor;
