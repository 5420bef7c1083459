//! Recorded equivalence-band constants and experiment thresholds.
//!
//! The norm comparisons in this crate are two-sided bounds with unspecified
//! constants; these values pin concrete acceptance bands, calibrated once on
//! the default desk-scale grids and then kept fixed. Ratios are normalized by
//! the single-bump norm of the family involved (and, where noted, by the
//! window-kernel norm), so a band [1/C, C] is meaningful across exponents.

/// Lattice-bump family, modulation norm vs the weighted lattice sequence
/// norm times the single-bump L_p norm. The window restriction reproduces
/// each summand exactly, so this ratio is 1 up to quadrature.
pub const LATTICE_MODULATION_BAND: f64 = 2.0;

/// Lattice-bump family, inner-exponent norm vs the plain l_p sequence norm
/// times the single-bump L_p norm; each bump meets at most two shells.
pub const LATTICE_TRIEBEL_BAND: f64 = 4.0;

/// Shell-train family, modulation norm vs the shell sequence norm with the
/// cell-count weight, normalized by the window-kernel L_p norm.
pub const SHELL_MODULATION_BAND: f64 = 4.0;

/// Shell-train family, inner-exponent norm vs the dilation-weighted shell
/// sequence norm times the base annulus-profile L_p norm.
pub const SHELL_TRIEBEL_BAND: f64 = 4.0;

/// Shell-ladder family: both mixed norms factor exactly through the
/// coefficient sequence norms times the single-bump L_p norm.
pub const LADDER_BAND: f64 = 2.0;

/// Localized-support comparison: modulation norm vs the spectrum L_q norm,
/// normalized by the window-kernel L_p norm.
pub const LOCALIZATION_BAND: f64 = 4.0;

/// Agreement between modulation norms computed with two different admissible
/// window profiles.
pub const PROFILE_STABILITY_BAND: f64 = 4.0;

/// Agreement between the transform-based and the window-based modulation
/// norms over the test corpus.
pub const STFT_DISCRETE_BAND: f64 = 4.0;

/// Upper bound for the modulation norm of any generated derivative-bounded
/// atom of the s = n(2/p - 1) class at unit scale.
pub const ATOM_NORM_MAX: f64 = 8.0;

/// Allowed spread (max/min) of the scale-normalized atom modulation norms.
pub const ATOM_SCALING_SPREAD: f64 = 4.0;

/// Allowed spread of the empirical convolution constants across radii.
pub const CONVOLUTION_SPREAD: f64 = 4.0;

/// Relative drift allowed in corpus maxima when the grid is refined twofold.
pub const REFINEMENT_DRIFT: f64 = 0.10;

/// A ratio series is classified as diverging when it is monotone within the
/// tolerance and its total growth reaches this factor.
pub const DIVERGENCE_FACTOR: f64 = 10.0;
pub const MONOTONE_TOLERANCE: f64 = 0.05;
