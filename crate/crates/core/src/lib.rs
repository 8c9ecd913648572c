//! Vertex guarding for orthogonal 1.5D terrains.
//!
//! The right-convex guarding problem (guard every right convex vertex with as
//! few reflex vertices as possible) is solved optimally in linear time; its
//! mirror image handles left convex vertices, and the union of the two
//! solutions guards the whole terrain within a factor of two of optimal.
//!
//! Alongside the solvers the crate ships exact brute-force oracles, a property
//! suite for the visibility facts the solvers rely on, a seeded terrain
//! generator, a benchmark harness and an SVG renderer.

pub mod bench;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod generator;
pub mod oracle;
pub mod render;
pub mod solver;
pub mod terrain;
pub mod visibility;

pub use error::{DocumentError, GenError, OracleError, TerrainError, VisibilityError};
pub use solver::{
    solve_full, solve_full_with, solve_left_convex, solve_right_convex_fast,
    solve_right_convex_reference, verify_coverage, Engine, GuardSolution, Side,
};
pub use terrain::{BuildMode, Classification, Point, Terrain, VertexClass};
pub use visibility::{orient, sees, visibility_matrix, VisibilityMatrix};
