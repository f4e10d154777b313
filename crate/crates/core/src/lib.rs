//! Thick origami from flat-foldable crease patterns: validate a flat folded
//! state, widen its creases into strips, fold the result with separated
//! layers and give the panels a physical thickness.

pub mod document;
pub mod error;
pub mod exec;
pub mod export;
pub mod flat_state;
pub mod geometry;
pub mod geometry3d;
pub mod pattern;
pub mod pipeline;
pub mod report;
pub mod samples;
pub mod solidify;
pub mod thickener;

pub use error::{Error, Result};
