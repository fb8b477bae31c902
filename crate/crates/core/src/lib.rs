//! Farey-graph paths, lens-space spine bounds and trisection diagrams of
//! connect sums of sphere bundles over the sphere.

pub mod cli;
pub mod construct;
pub mod error;
pub mod evenfarey;
pub mod farey;
pub mod forms;
pub mod lens;
pub mod render;
pub mod schema;

pub use error::{Error, Result};
pub use farey::{Exactness, Geodesic, PathKind, Slope, SlopePath};
pub use lens::LensSpace;
