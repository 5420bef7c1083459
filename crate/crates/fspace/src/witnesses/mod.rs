//! Extremal families, atoms, and the numerical experiments that probe the
//! sharpness of the embedding conditions.

mod atoms;
mod experiments;
mod extremals;
mod sharpness;

pub use atoms::{
    atom_scaling_experiment, make_test_atom, validate_atom, AtomKind, AtomReport,
    AtomScaleSample, AtomScalingReport, AtomSpec,
};
pub use experiments::{
    classify, convolution_constant_sweep, gamma_counts, localization_check, multiplier_order_cap,
    multiplier_ratio, ratio_experiment, spectral_tail_fraction, Classification, GammaCounts,
    RadiusStat, RatioConfig, RatioSeries,
};
pub use extremals::{
    build_lattice_bumps, build_shell_ladder, build_shell_train, ladder_base_bump,
    lattice_base_bump, shell_annulus_function, LADDER_BUMP_RADIUS, LATTICE_BUMP_RADIUS,
};
pub use sharpness::{
    case_grid, predicted_ratio, predicted_series, run_sharpness_case, sharpness_grid, Direction,
    SharpnessCase, SharpnessOutcome, WitnessFamily,
};
