//! The filtration induced by a vector field, its numerical checks, Morse
//! numbers and the Morse-Bott inequalities.

mod build;
mod checks;

pub use build::{build_filtration, Filtration, FiltrationError, FiltrationStep, StepKind, TieBreak};
pub use checks::{
    basic_set_homology, closure_and_boundary, morse_inequalities, morse_numbers, verify_collapsing,
    verify_excision, CollapseCheck, ExcisionCheck, Inequalities, MorseNumbers,
};
