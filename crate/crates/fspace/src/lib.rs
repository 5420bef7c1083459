//! Numerical and exact tooling for frequency-decomposition function spaces.
//!
//! The crate has three layers:
//!
//! * **Analysis on periodic grids** — [`grid`] holds sampled functions on
//!   [-L/2, L/2)^n with continuous-convention spectral transforms and
//!   weighted Lebesgue quasi-norms; [`decomposition`] builds the
//!   frequency-uniform window bank and the dyadic shell bank with certified
//!   partition-of-unity and support properties; [`norms`] evaluates the
//!   modulation, Besov and Triebel-Lizorkin quasi-norms (window side and
//!   short-time-transform side) plus the weighted sequence norms they
//!   compare against.
//! * **Exact embedding logic** — [`embedding`] decides every inclusion
//!   condition between these scales in rational arithmetic, with boundary
//!   cells flagged, plus region scans for parameter atlases.
//! * **Experiments** — [`witnesses`] constructs the extremal families whose
//!   norm ratios witness sharpness, validates and generates atoms, and runs
//!   the localization, convolution-constant and multiplier-ratio studies.
//!
//! Start with the runnable examples (`cargo run --example ...`), one per
//! capability; the `fspace` binary exposes the same pipelines as
//! reproducible CSV-emitting subcommands.

pub mod bands;
pub mod cli;
pub mod corpus;
pub mod decomposition;
pub mod embedding;
mod error;
pub mod grid;
pub mod norms;
pub mod params;
mod profile;
pub mod witnesses;

pub use error::{Error, Result};
pub use grid::{convolve, Domain, FunctionDescriptor, Grid, SampledFunction};
pub use params::{Exponent, LpParams, Rational, SpaceParams};
