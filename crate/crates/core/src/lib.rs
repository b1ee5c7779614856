pub mod algebra;
pub mod error;
pub mod graphs;
pub mod identities;
pub mod invariants;
pub mod kn_flow;
pub mod matroids;
pub mod oracles;
pub mod projective;
pub mod subset;
pub mod targets;

pub use error::{Error, Result};
