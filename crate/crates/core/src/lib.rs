//! Ramsey goodness for uniform hypergraphs, at desk scale.
//!
//! The crate is organised the way the objects depend on each other:
//! [`hg`] holds the data model, [`constructions`] builds extremal colorings,
//! [`search`] finds monochromatic structure, [`exact`] computes small Ramsey
//! quantities, [`chains`] and [`engines`] implement the constructive
//! upper-bound machinery. [`check`] and [`table`] sit on top for the CLI.

pub mod chains;
pub mod check;
pub mod constructions;
pub mod engines;
mod error;
pub mod exact;
pub mod hg;
pub mod par;
pub mod pattern;
pub mod search;
pub mod table;

pub use error::{Error, Result};
pub use hg::{Color, Hypergraph, Tournament, TwoColoring};
pub use pattern::Pattern;
