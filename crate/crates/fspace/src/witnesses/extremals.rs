//! Extremal test families assembled directly in the frequency domain.
//!
//! Three constructions drive the sharpness experiments:
//! * a lattice of modulated bumps, one per uniform window cell, translated
//!   apart by a separation parameter N;
//! * a train of dyadic annulus plateaus, one per shell, translated along the
//!   first axis;
//! * a ladder of small bumps centered at the frequencies 2^j e_0, each owned
//!   by exactly one shell and one lattice cell.
//!
//! Each summand occupies a single window of its decomposition, so the window
//! restrictions of the sum reproduce the summands exactly and the mixed
//! norms factor through the coefficient sequence norms.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Domain, Grid, SampledFunction};
use crate::norms::{DyadicCoeffs, UniformCoeffs};
use crate::profile;

/// Largest bump radius that keeps every lattice bump inside the plateau of
/// its own window cell.
pub const LATTICE_BUMP_RADIUS: f64 = 0.125;
/// Ladder bumps use a tighter radius so shell ownership is single-valued.
pub const LADDER_BUMP_RADIUS: f64 = 1.0 / 16.0;

fn ball_profile(t: f64) -> f64 {
    // transition over nearly the whole ball: the smoother the cutoff, the
    // faster the spatial tails decay, which is what lets translated bumps
    // decouple at moderate separations
    profile::fall(t, 0.1, 1.0)
}

/// Annulus plateau: 1 on [7/8, 8/7], supported in [3/4, 4/3].
pub(crate) fn annulus_profile(t: f64) -> f64 {
    profile::rise(t, 0.75, 0.875) * profile::fall(t, 8.0 / 7.0, 4.0 / 3.0)
}

fn add_ball(
    spec: &mut SampledFunction,
    center: [f64; 2],
    radius: f64,
    coeff: Complex64,
    position: [f64; 2],
) {
    let grid = *spec.grid();
    let tau = -2.0 * std::f64::consts::PI;
    let values = spec.values_mut();
    for flat in 0..grid.total_points() {
        let xi = grid.freq_point(flat);
        let mut d2 = (xi[0] - center[0]) * (xi[0] - center[0]);
        if grid.n_dim() == 2 {
            d2 += (xi[1] - center[1]) * (xi[1] - center[1]);
        }
        let profile_value = ball_profile(d2.sqrt() / radius);
        if profile_value == 0.0 {
            continue;
        }
        let mut dot = position[0] * xi[0];
        if grid.n_dim() == 2 {
            dot += position[1] * xi[1];
        }
        values[flat] += coeff * profile_value * Complex64::from_polar(1.0, tau * dot);
    }
}

/// Lattice-bump family: sum over k of a_k T_{N k} (e^{2 pi i k x} g) where g
/// has a ball spectrum of the given radius at the origin.
pub fn build_lattice_bumps(
    coeffs: &UniformCoeffs,
    separation: u32,
    radius: f64,
    grid: Grid,
) -> Result<SampledFunction> {
    if coeffs.n_dim() != grid.n_dim() {
        return Err(Error::GridMismatch);
    }
    if !(0.0..=LATTICE_BUMP_RADIUS + 1e-12).contains(&radius) || radius <= 0.0 {
        return Err(Error::Geometry(format!(
            "bump radius {radius} must lie in (0, {LATTICE_BUMP_RADIUS}] to stay inside one window cell"
        )));
    }
    let k_cap = grid.max_freq() as i64 - 2;
    let reach = coeffs.max_abs_index();
    if reach > k_cap {
        return Err(Error::Geometry(format!(
            "coefficient support reaches |k| = {reach}, grid admits |k| <= {k_cap}"
        )));
    }
    let half = grid.extent() as f64 / 2.0;
    if separation as f64 * reach as f64 >= half {
        return Err(Error::Geometry(format!(
            "translates reach N |k| = {} beyond the half-box {half}",
            separation as f64 * reach as f64
        )));
    }
    let mut spec = SampledFunction::zeros(grid, Domain::Frequency);
    for (k, c) in coeffs.iter() {
        let center = [k[0] as f64, k[1] as f64];
        let position = [
            (separation as i64 * k[0]) as f64,
            (separation as i64 * k[1]) as f64,
        ];
        add_ball(&mut spec, center, radius, *c, position);
    }
    spec.inverse_spectrum()
}

/// The single lattice bump g (unit coefficient at k = 0, no translation).
pub fn lattice_base_bump(grid: Grid, radius: f64) -> Result<SampledFunction> {
    build_lattice_bumps(&UniformCoeffs::spike([0, 0], grid.n_dim()), 0, radius, grid)
}

/// Shell-train family: sum over j >= start_shell of b_j T_{N j e_0} h_j with
/// h_j the annulus plateau at scale 2^j.
pub fn build_shell_train(
    coeffs: &DyadicCoeffs,
    separation: u32,
    start_shell: u32,
    grid: Grid,
) -> Result<SampledFunction> {
    if coeffs.is_empty() {
        return Ok(SampledFunction::zeros(grid, Domain::Space));
    }
    if coeffs.min_index() < start_shell {
        return Err(Error::Geometry(format!(
            "coefficients start at shell {} below the declared first shell {start_shell}",
            coeffs.min_index()
        )));
    }
    let top = coeffs.max_index();
    let needed = 1.5 * (2.0f64).powi(top as i32);
    if needed > grid.max_freq() {
        return Err(Error::Geometry(format!(
            "shell {top} needs frequencies up to {needed}, grid holds {}",
            grid.max_freq()
        )));
    }
    let half = grid.extent() as f64 / 2.0;
    if (separation * top) as f64 >= half {
        return Err(Error::Geometry(format!(
            "translates reach N j = {} beyond the half-box {half}",
            separation * top
        )));
    }
    let tau = -2.0 * std::f64::consts::PI;
    let mut spec = SampledFunction::zeros(grid, Domain::Frequency);
    let n_dim = grid.n_dim();
    let values = spec.values_mut();
    for (j, b) in coeffs.iter() {
        let scale = (2.0f64).powi(*j as i32);
        let position = (separation as f64) * (*j as f64);
        for flat in 0..grid.total_points() {
            let xi = grid.freq_point(flat);
            let norm = Grid::coord_norm_sq(&xi, n_dim).sqrt();
            let w = annulus_profile(norm / scale);
            if w == 0.0 {
                continue;
            }
            values[flat] += b * w * Complex64::from_polar(1.0, tau * position * xi[0]);
        }
    }
    spec.inverse_spectrum()
}

/// Single annulus plateau at shell j; the canonical fixed point of the
/// shell restriction operator.
pub fn shell_annulus_function(grid: Grid, j: u32) -> Result<SampledFunction> {
    build_shell_train(&DyadicCoeffs::spike(j), 0, j, grid)
}

/// Shell-ladder family: sum over j of a_j h_j with h_j a ball bump of the
/// given radius centered at the frequency 2^j e_0. Every summand sits in the
/// plateau of shell j and in the core of the lattice cell k = 2^j e_0, so
/// both decompositions see exactly one term each.
pub fn build_shell_ladder(
    coeffs: &DyadicCoeffs,
    radius: f64,
    grid: Grid,
) -> Result<SampledFunction> {
    if radius <= 0.0 || radius > LADDER_BUMP_RADIUS + 1e-12 {
        return Err(Error::Geometry(format!(
            "ladder bump radius {radius} must lie in (0, {LADDER_BUMP_RADIUS}]"
        )));
    }
    if coeffs.is_empty() {
        return Ok(SampledFunction::zeros(grid, Domain::Space));
    }
    let top = coeffs.max_index();
    let needed = (2.0f64).powi(top as i32) + radius;
    if needed > grid.max_freq() {
        return Err(Error::Geometry(format!(
            "ladder rung {top} needs frequencies up to {needed}, grid holds {}",
            grid.max_freq()
        )));
    }
    let mut spec = SampledFunction::zeros(grid, Domain::Frequency);
    for (j, a) in coeffs.iter() {
        let center = [(2.0f64).powi(*j as i32), 0.0];
        add_ball(&mut spec, center, radius, *a, [0.0, 0.0]);
    }
    spec.inverse_spectrum()
}

/// The single ladder bump (unit coefficient, centered at the origin), whose
/// L_p norm is the natural normalizer for ladder norm ratios.
pub fn ladder_base_bump(grid: Grid, radius: f64) -> Result<SampledFunction> {
    let mut spec = SampledFunction::zeros(grid, Domain::Frequency);
    add_ball(&mut spec, [0.0, 0.0], radius, Complex64::new(1.0, 0.0), [0.0, 0.0]);
    spec.inverse_spectrum()
}
