//! Exact counting and enumeration of orientations of planar maps with
//! prescribed out-degrees, together with the structures that ride on them:
//! Schnyder woods, bipolar orientations, 2-orientations and perfect
//! matchings.

pub mod planar_map;
pub mod alpha_engine;
pub mod generators;
pub mod reductions;
pub mod structures;
pub mod transfer_matrix;
pub mod combinatorics;
pub mod fixtures;
pub mod verify;
