//! Seeded generators for band-limited test functions.

use num_complex::Complex64;
use rand::Rng;

use crate::grid::{Domain, Grid, SampledFunction};
use crate::profile;

fn random_unit(rng: &mut impl Rng) -> Complex64 {
    let r: f64 = rng.gen_range(0.25..1.0);
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, theta)
}

/// Random smooth function with spectrum supported in |xi|_inf <= max_freq.
/// A smooth envelope rolls the random coefficients off toward the band edge
/// so the result has exact compact spectral support.
pub fn random_band_limited(grid: Grid, max_freq: f64, rng: &mut impl Rng) -> SampledFunction {
    let mut spec = SampledFunction::zeros(grid, Domain::Frequency);
    for flat in 0..grid.total_points() {
        let xi = grid.freq_point(flat);
        let mut inf = xi[0].abs();
        if grid.n_dim() == 2 {
            inf = inf.max(xi[1].abs());
        }
        if inf >= max_freq {
            continue;
        }
        let envelope = profile::fall(inf / max_freq, 0.7, 1.0);
        if envelope == 0.0 {
            continue;
        }
        spec.values_mut()[flat] = random_unit(rng) * envelope;
    }
    spec.inverse_spectrum().expect("frequency-domain input")
}

/// Random function with spectrum in the Euclidean ball B(center, radius).
pub fn random_ball_limited(
    grid: Grid,
    center: [f64; 2],
    radius: f64,
    rng: &mut impl Rng,
) -> SampledFunction {
    ball_limited(grid, center, radius, |_, rng| random_unit(rng), rng)
}

/// Ball-limited function with a smooth random polynomial phase instead of
/// independent coefficients. Coherent spectra of this kind concentrate in
/// space and are the near-extremal inputs for the p < 1 convolution bound.
pub fn coherent_ball_limited(
    grid: Grid,
    center: [f64; 2],
    radius: f64,
    rng: &mut impl Rng,
) -> SampledFunction {
    let a1: f64 = rng.gen_range(-2.0..2.0);
    let a2: f64 = rng.gen_range(-1.0..1.0);
    let a3: f64 = rng.gen_range(-0.5..0.5);
    ball_limited(
        grid,
        center,
        radius,
        move |t, _| Complex64::from_polar(1.0, a1 * t + a2 * t * t + a3 * t * t * t),
        rng,
    )
}

fn ball_limited<F, R: Rng>(
    grid: Grid,
    center: [f64; 2],
    radius: f64,
    mut coeff: F,
    rng: &mut R,
) -> SampledFunction
where
    F: FnMut(f64, &mut R) -> Complex64,
{
    let mut spec = SampledFunction::zeros(grid, Domain::Frequency);
    for flat in 0..grid.total_points() {
        let xi = grid.freq_point(flat);
        let mut d2 = (xi[0] - center[0]) * (xi[0] - center[0]);
        if grid.n_dim() == 2 {
            d2 += (xi[1] - center[1]) * (xi[1] - center[1]);
        }
        let d = d2.sqrt();
        if d >= radius {
            continue;
        }
        let envelope = profile::fall(d / radius, 0.6, 1.0);
        if envelope == 0.0 {
            continue;
        }
        spec.values_mut()[flat] = coeff(d / radius, rng) * envelope;
    }
    spec.inverse_spectrum().expect("frequency-domain input")
}
