//! Multi-target Grover oracles synthesized from the dichotomy of the target
//! set, with an exact state-vector simulator to check them.
//!
//! The main entry points:
//!
//! - [`synth::build_u`] prepares `|S⟩` and [`synth::build_oracle_o`] gives
//!   `O(S) = 1 − 2|S⟩⟨S|`.
//! - [`reduced`] builds the same search over `S̃ = {0, …, |S| − 1}` plus a
//!   permutation back to `S`.
//! - [`grover::GroverEngine`] runs the conventional, modified and reduced
//!   iterations.
//! - [`complexity`] counts gates and evaluates the cost ratio `Γ`.
//!
//! Qubit 0 carries the most significant bit of a label, and the amplitude of
//! `|x⟩` sits at index `x`.

pub mod circuit;
pub mod cli;
pub mod complexity;
pub mod dichotomy;
pub mod error;
pub mod grover;
pub mod reduced;
pub mod synth;
pub mod targets;

pub use circuit::{Circuit, Control, Gate, StateVector};
pub use error::{Error, Result};
pub use grover::{grover_run, success_probability, AnalyticSchedule, GroverEngine, RunOptions, Variant};
pub use reduced::PermutationMode;
pub use targets::TargetSet;
