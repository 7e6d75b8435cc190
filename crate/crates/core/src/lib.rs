//! Discrete Morse-Bott theory for finite loop-free categories.
//!
//! The crate covers the whole pipeline: validating a category and its
//! grading, computing integral homology of its order complex, checking a
//! vector field, extracting basic sets from the flow multigraph, building the
//! filtration induced by the field, and checking the Morse-Bott inequalities.

pub mod category;
pub mod filtration;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod morse;
pub mod report;
