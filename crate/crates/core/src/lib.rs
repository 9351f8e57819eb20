//! Packing edge-disjoint plane perfect matchings into complete geometric
//! graphs on point sets in general position.

pub mod bichromatic;
pub mod error;
pub mod geom;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod packers;
pub mod persistency;
pub mod pointgen;
pub mod render;

pub use error::{Error, Result};
pub use geom::{Edge, Orientation, Point};
pub use matching::{Matching, Packing};
pub use pointgen::PointSet;
