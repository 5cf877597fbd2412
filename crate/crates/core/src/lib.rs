//! Exact line-bundle cohomology and tilting-collection analysis.

pub mod cli;
pub mod cohomology;
pub mod geometry;
pub mod lattice;
pub mod linalg;
pub mod presets;
pub mod sheaves;
pub mod tilting;
