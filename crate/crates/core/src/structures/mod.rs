//! Structures carried by α-orientations: Schnyder woods, bipolar
//! orientations and their angle-graph and sign encodings, and face
//! 3-colorings of grid-like quadrangulations.

mod bipolar;
mod lieb;
mod schnyder;
mod signs;

pub use bipolar::{
    angle_alpha, angle_to_bipolar, bipolar_check, bipolar_report, bipolar_to_angle, count_bipolar, enumerate_bipolar,
    is_bipolar, strip_decode, strip_encode, strip_inner_edges, is_sparse, BipolarOrientation, BipolarReport,
};
pub use lieb::{
    coloring_from_orientation, count_face_colorings, lieb_grid, lieb_problem, orientation_from_coloring, LiebGrid,
};
pub use schnyder::{
    colors_from_3orientation, enumerate_schnyder_woods, is_schnyder_wood, outer_specials, schnyder_check,
    hexagon_local_count, hexagon_local_problem, schnyder_count_via_completion, SchnyderViolation, SchnyderWood,
};
pub use signs::{
    full_signs, parse_signs, sign_decode, sign_encode, sign_validity_matching, sign_vector_valid, signs_to_string, Sign,
};

use thiserror::Error;

use crate::alpha_engine::EngineError;
use crate::planar_map::{MapError, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructError {
    #[error("no Schnyder coloring matches the orientation")]
    NoColoring,
    #[error("several Schnyder colorings match the orientation")]
    MultipleColorings,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("map is not an inner triangulation")]
    NotInnerTriangulation,
    #[error("decoding stalled with {0} edges unoriented")]
    Stalled(usize),
    #[error("decoded orientation violates an axiom: {0}")]
    AxiomViolation(String),
    #[error("map is not grid-like: {0}")]
    NotGridLike(String),
    #[error("sequence has two consecutive ones")]
    NotSparse,
    #[error("expected {expected} entries, got {got}")]
    Length { expected: usize, got: usize },
    #[error("vertices {0} and {1} must be distinct outer vertices")]
    BadPoles(Vertex, Vertex),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Map(#[from] MapError),
}
