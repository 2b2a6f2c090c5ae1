//! Command-line front end: CSV input, benchmark manifests, evaluation with a
//! relative error margin, and synthetic suite generation.

pub mod commands;
pub mod eval;
pub mod input;
pub mod manifest;

pub use commands::{run, Cli};
pub use eval::{evaluate, score, EvalRecord, Summary};
