//! Matching-covered graphs, tight cuts, braces and cycle-conformality.

pub mod error;
pub mod graph;
pub mod matching;

pub use error::{Error, Result};
pub use graph::{Bipartition, Cycle, Graph, Matching, Path};
pub mod census;
pub mod conformality;
pub mod families;
pub mod pfaffian;
pub mod recognizers;
pub mod tightcut;
