//! Multi-agent Physarum model on a diffusive lattice, with classical
//! geometry oracles for the convex and concave hulls it approximates.

pub mod agent;
pub mod error;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod params;
pub mod pointsets;
pub mod population;
pub mod scenario;

pub use error::{Error, Result};

#[cfg(test)]
mod preset_table;
#[cfg(test)]
mod proptests;
