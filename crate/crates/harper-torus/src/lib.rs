//! Classical and quantum geometry of periodic wire networks.
//!
//! The crate models the ℤⁿ, triangular, honeycomb and gyroid skeletal graphs
//! exactly, builds their matrix Harper operators over noncommutative tori
//! from a rooted spanning tree and a constant magnetic field, computes spectra
//! and gap labels at rational flux, and checks which matrix algebras the
//! Harper operator and its symmetries generate.
//!
//! Module map:
//! - [`lattice_graph`]: presets, quotient graphs, spanning trees, loops.
//! - [`magnetic`]: skew forms, cocycles, fluxes, phase parameters, cases.
//! - [`torus_poly`]: polynomials and matrices over the noncommutative torus.
//! - [`harper_model`]: the symbolic Harper operator and symmetry representation.
//! - [`nct_rep`]: clock-and-shift representations and characters.
//! - [`spectral`]: eigenvalue sweeps, gaps and gap labels.
//! - [`algebra_gen`]: generated-algebra dimensions and proof-chain replays.
//! - [`cli`]: the command-line front end.

// Dense matrix code reads more clearly with explicit row and column indices.
#![allow(clippy::needless_range_loop)]

pub mod algebra_gen;
pub mod cli;
pub mod exact;
pub mod harper_model;
pub mod lattice_graph;
pub mod magnetic;
pub mod nct_rep;
pub mod spectral;
pub mod torus_poly;

/// Errors surfaced by the library. The CLI maps `Hypothesis` and
/// `Assertion` to exit code 3 and everything else to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("torus elements carry different phase matrices")]
    ThetaMismatch,
    #[error("phase entries must be rational for a finite representation")]
    NonRational,
    #[error("case hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub use exact::{PiPhase, Real, Q};
pub use lattice_graph::Preset;
