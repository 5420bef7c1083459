//! Numerical experiments: growth-schedule ratio series, localized-support
//! norm comparisons, convolution constants for p < 1, inverse-transform
//! multiplier ratios, and window cell counts along dyadic annuli.

use crate::bands;
use crate::decomposition::{spectrum_values, UniformFamily};
use crate::error::{Error, Result};
use crate::grid::{compensated_sum, convolve, Domain, Grid, SampledFunction};
use crate::norms::modulation_norm;
use crate::params::{Exponent, LpParams, Rational, SpaceParams};
use crate::witnesses::extremals::annulus_profile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Bounded,
    Diverging,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Bounded => write!(f, "bounded"),
            Classification::Diverging => write!(f, "diverging"),
        }
    }
}

/// Ratio of two norms along a growth schedule, with the divergence
/// classification: diverging iff the ratios increase monotonically (within
/// the tolerance) and the total growth factor reaches the threshold.
#[derive(Clone, Debug)]
pub struct RatioSeries {
    pub schedule: Vec<u32>,
    pub numerators: Vec<f64>,
    pub denominators: Vec<f64>,
    pub ratios: Vec<f64>,
    pub growth_factor: f64,
    pub monotone: bool,
    pub classification: Classification,
}

#[derive(Clone, Copy, Debug)]
pub struct RatioConfig {
    pub divergence_factor: f64,
    pub monotone_tolerance: f64,
}

impl Default for RatioConfig {
    fn default() -> Self {
        RatioConfig {
            divergence_factor: bands::DIVERGENCE_FACTOR,
            monotone_tolerance: bands::MONOTONE_TOLERANCE,
        }
    }
}

pub fn classify(ratios: &[f64], config: &RatioConfig) -> (bool, f64, Classification) {
    let monotone = ratios
        .windows(2)
        .all(|w| w[1] >= w[0] * (1.0 - config.monotone_tolerance));
    let growth = if ratios.is_empty() {
        0.0
    } else {
        ratios[ratios.len() - 1] / ratios[0]
    };
    let class = if monotone && growth >= config.divergence_factor {
        Classification::Diverging
    } else {
        Classification::Bounded
    };
    (monotone, growth, class)
}

/// Runs numerator and denominator norms of a freshly built function at every
/// schedule step. A vanishing denominator (or a 0/0 step) aborts with a
/// degenerate-experiment error.
pub fn ratio_experiment<B, N, D>(
    schedule: &[u32],
    mut build: B,
    numerator: N,
    denominator: D,
    config: &RatioConfig,
) -> Result<RatioSeries>
where
    B: FnMut(u32) -> Result<SampledFunction>,
    N: Fn(&SampledFunction, u32) -> Result<f64>,
    D: Fn(&SampledFunction, u32) -> Result<f64>,
{
    if schedule.is_empty() {
        return Err(Error::DegenerateExperiment("empty schedule".into()));
    }
    let mut numerators = Vec::with_capacity(schedule.len());
    let mut denominators = Vec::with_capacity(schedule.len());
    let mut ratios = Vec::with_capacity(schedule.len());
    for &step in schedule {
        let f = build(step)?;
        let num = numerator(&f, step)?;
        let den = denominator(&f, step)?;
        if den == 0.0 {
            return Err(Error::DegenerateExperiment(format!(
                "zero denominator norm at step {step}"
            )));
        }
        numerators.push(num);
        denominators.push(den);
        ratios.push(num / den);
    }
    let (monotone, growth_factor, classification) = classify(&ratios, config);
    Ok(RatioSeries {
        schedule: schedule.to_vec(),
        numerators,
        denominators,
        ratios,
        growth_factor,
        monotone,
        classification,
    })
}

/// Cell counts of a dyadic annulus against the uniform window bank:
/// `meets` counts windows whose restriction of the annulus plateau is
/// nonzero, `contained` counts windows lying entirely inside the plateau
/// (where the restriction reproduces the window kernel itself).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaCounts {
    pub meets: usize,
    pub contained: usize,
    /// False when the annulus is too thin to contain a full window cell;
    /// counts at such shells are not comparable to 2^{jn}.
    pub reliable: bool,
}

pub fn gamma_counts(j: u32, grid: Grid, family: &UniformFamily) -> Result<GammaCounts> {
    if family.grid() != &grid {
        return Err(Error::GridMismatch);
    }
    let scale = (2.0f64).powi(j as i32);
    if 1.5 * scale > grid.max_freq() {
        return Err(Error::Geometry(format!(
            "shell {j} is not representable on this grid"
        )));
    }
    let total = grid.total_points();
    let mut annulus = vec![0.0f64; total];
    for (flat, a) in annulus.iter_mut().enumerate() {
        let xi = grid.freq_point(flat);
        let norm = Grid::coord_norm_sq(&xi, grid.n_dim()).sqrt();
        *a = annulus_profile(norm / scale);
    }
    let k_cap = grid.max_freq() as i64 - 2;
    let reach = ((4.0 / 3.0) * scale).ceil() as i64 + 1;
    let cap = reach.min(k_cap);
    let mut meets = 0usize;
    let mut contained = 0usize;
    let axis: Vec<i64> = (-cap..=cap).collect();
    let bs: Vec<i64> = if grid.n_dim() == 2 {
        axis.clone()
    } else {
        vec![0]
    };
    for &a in &axis {
        for &b in &bs {
            let k = [a, b];
            let mut any = false;
            let mut all_plateau = true;
            let mut support_nonempty = false;
            for flat in 0..total {
                let sigma = family.sigma(k, flat);
                if sigma <= 0.0 {
                    continue;
                }
                support_nonempty = true;
                if annulus[flat] > 0.0 {
                    any = true;
                }
                if (annulus[flat] - 1.0).abs() > 1e-12 {
                    all_plateau = false;
                }
            }
            if any {
                meets += 1;
            }
            if support_nonempty && all_plateau {
                contained += 1;
            }
        }
    }
    Ok(GammaCounts {
        meets,
        contained,
        reliable: contained >= 1,
    })
}

/// Modulation norm against the L_q norm of the spectrum, for functions
/// supported in a ball. The support precondition is enforced numerically.
pub fn localization_check(
    f: &SampledFunction,
    center: [f64; 2],
    radius: f64,
    p: &Exponent,
    q: &Exponent,
    family: &UniformFamily,
) -> Result<f64> {
    if f.domain() != Domain::Space {
        return Err(Error::DomainMismatch {
            expected: Domain::Space,
        });
    }
    let grid = *f.grid();
    let total: f64 = compensated_sum(f.values().iter().map(|v| v.norm_sqr()));
    if total == 0.0 {
        return Err(Error::DegenerateExperiment("zero input".into()));
    }
    let outside = compensated_sum(f.values().iter().enumerate().filter_map(|(flat, v)| {
        let x = grid.space_point(flat);
        let mut d2 = (x[0] - center[0]) * (x[0] - center[0]);
        if grid.n_dim() == 2 {
            d2 += (x[1] - center[1]) * (x[1] - center[1]);
        }
        (d2.sqrt() > radius).then(|| v.norm_sqr())
    }));
    if outside > 1e-10 * total {
        return Err(Error::Geometry(format!(
            "support mass fraction {:.3e} escapes the declared ball",
            outside / total
        )));
    }
    let params =
        SpaceParams::new(grid.n_dim() as u32, *p, *q, Exponent::int(2)?, Rational::new(0, 1))?;
    let m = modulation_norm(f, &params, family)?;
    let spec = SampledFunction::from_raw(grid, Domain::Frequency, spectrum_values(f)?);
    let denom = spec.lp_norm(&LpParams::plain(*q));
    if denom == 0.0 {
        return Err(Error::DegenerateExperiment("zero spectrum norm".into()));
    }
    Ok(m / denom)
}

/// One radius step of the convolution-constant sweep.
#[derive(Clone, Copy, Debug)]
pub struct RadiusStat {
    pub radius: f64,
    pub max_constant: f64,
}

/// Empirical constants C(R) = || |f|*|g| ||_p / (R^{n(1/p-1)} ||f||_p ||g||_p)
/// over random pairs with spectra in balls of radius R.
pub fn convolution_constant_sweep(
    p: &Exponent,
    radii: &[f64],
    pairs_per_radius: usize,
    grid: Grid,
    rng: &mut impl rand::Rng,
) -> Result<Vec<RadiusStat>> {
    let p_val = match p.as_rational() {
        Some(v) if v < Rational::from_integer(1) => crate::params::rational_to_f64(v),
        _ => {
            return Err(Error::OutOfTheoremDomain(format!(
                "convolution constants are stated for 0 < p < 1, got p = {p}"
            )))
        }
    };
    let n = grid.n_dim() as f64;
    let lp = LpParams::plain(*p);
    let mut out = Vec::with_capacity(radii.len());
    for &radius in radii {
        if radius <= 0.0 || radius * 2.0 >= grid.max_freq() {
            return Err(Error::Geometry(format!(
                "radius {radius} does not fit the grid frequency range"
            )));
        }
        let mut max_c = 0.0f64;
        for pair in 0..pairs_per_radius {
            let margin = grid.max_freq() - radius - 1.0;
            let c0 = [rng.gen_range(-margin..margin), 0.0];
            let c1 = [rng.gen_range(-margin..margin), 0.0];
            // alternate coherent and rough spectra; the bound is saturated by
            // the coherent ones, the rough ones probe the generic regime
            let (f, g) = if pair % 2 == 0 {
                (
                    crate::corpus::coherent_ball_limited(grid, c0, radius, rng),
                    crate::corpus::coherent_ball_limited(grid, c1, radius, rng),
                )
            } else {
                (
                    crate::corpus::random_ball_limited(grid, c0, radius, rng),
                    crate::corpus::random_ball_limited(grid, c1, radius, rng),
                )
            };
            let conv = convolve(&f.modulus(), &g.modulus())?;
            let denom = radius.powf(n * (1.0 / p_val - 1.0)) * f.lp_norm(&lp) * g.lp_norm(&lp);
            if denom == 0.0 {
                return Err(Error::DegenerateExperiment("zero norm pair".into()));
            }
            max_c = max_c.max(conv.lp_norm(&lp) / denom);
        }
        out.push(RadiusStat {
            radius,
            max_constant: max_c,
        });
    }
    Ok(out)
}

/// Ratio || F^{-1} f ||_p / sum_{|gamma| <= cap} || d^gamma f ||_2 for a
/// frequency-domain input, with cap = [n(1/p - 1/2)] + 1. The derivative
/// L_2 norms are evaluated through the companion identity
/// || d^gamma f ||_2 = || (2 pi x)^gamma F^{-1} f ||_2.
pub fn multiplier_ratio(f: &SampledFunction, p: &Exponent) -> Result<f64> {
    if f.domain() != Domain::Frequency {
        return Err(Error::DomainMismatch {
            expected: Domain::Frequency,
        });
    }
    let p_rat = match p.as_rational() {
        Some(v) if v <= Rational::from_integer(1) => v,
        _ => {
            return Err(Error::OutOfTheoremDomain(format!(
                "multiplier ratios are stated for 0 < p <= 1, got p = {p}"
            )))
        }
    };
    let grid = *f.grid();
    let n = grid.n_dim() as i64;
    let cap_rational =
        Rational::from_integer(n) * (Rational::new(1, 1) / p_rat - Rational::new(1, 2));
    let cap = cap_rational.floor().to_integer() + 1;
    let g = f.inverse_spectrum()?;
    if g.values().iter().all(|v| v.norm() == 0.0) {
        return Err(Error::DegenerateExperiment("zero input".into()));
    }
    let num = g.lp_norm(&LpParams::plain(*p));
    let tau = 2.0 * std::f64::consts::PI;
    let mut den = 0.0;
    for order in multi_indices(grid.n_dim(), cap as u32) {
        let cell = grid.cell_volume(Domain::Space);
        let sum = compensated_sum(g.values().iter().enumerate().map(|(flat, v)| {
            let x = grid.space_point(flat);
            let factor = (tau * x[0]).powi(order[0] as i32)
                * if grid.n_dim() == 2 {
                    (tau * x[1]).powi(order[1] as i32)
                } else {
                    1.0
                };
            v.norm_sqr() * factor * factor * cell
        }));
        den += sum.max(0.0).sqrt();
    }
    Ok(num / den)
}

/// The derivative-order cap [n(1/p - 1/2)] + 1 used by [`multiplier_ratio`].
pub fn multiplier_order_cap(p: &Exponent, n: u32) -> i64 {
    let p_rat = p.as_rational().expect("finite p");
    let cap = Rational::from_integer(n as i64) * (Rational::new(1, 1) / p_rat - Rational::new(1, 2));
    cap.floor().to_integer() + 1
}

fn multi_indices(n_dim: usize, max_total: u32) -> Vec<[u32; 2]> {
    let mut out = Vec::new();
    if n_dim == 1 {
        for a in 0..=max_total {
            out.push([a, 0]);
        }
    } else {
        for a in 0..=max_total {
            for b in 0..=(max_total - a) {
                out.push([a, b]);
            }
        }
    }
    out
}

/// Convenience: modulus of the spectrum energy outside a centered band,
/// used by callers that want to assert coverage before running a sweep.
pub fn spectral_tail_fraction(f: &SampledFunction, band: f64) -> Result<f64> {
    let grid = *f.grid();
    let spec = spectrum_values(f)?;
    let total = compensated_sum(spec.iter().map(|v| v.norm_sqr()));
    if total == 0.0 {
        return Ok(0.0);
    }
    let outside = compensated_sum(spec.iter().enumerate().filter_map(|(flat, v)| {
        let xi = grid.freq_point(flat);
        let mut inf = xi[0].abs();
        if grid.n_dim() == 2 {
            inf = inf.max(xi[1].abs());
        }
        (inf > band).then(|| v.norm_sqr())
    }));
    Ok(outside / total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::UniformFamily;
    use crate::grid::FunctionDescriptor;
    use num_complex::Complex64;
    use rand::SeedableRng;

    #[test]
    fn classification_thresholds() {
        let cfg = RatioConfig::default();
        let (mono, growth, class) = classify(&[1.0, 2.0, 5.0, 12.0], &cfg);
        assert!(mono);
        assert_eq!(growth, 12.0);
        assert_eq!(class, Classification::Diverging);

        let (_, _, class) = classify(&[1.0, 2.0, 2.5, 2.8], &cfg);
        assert_eq!(class, Classification::Bounded);

        let (mono, _, class) = classify(&[1.0, 30.0, 2.0, 40.0], &cfg);
        assert!(!mono);
        assert_eq!(class, Classification::Bounded);
    }

    #[test]
    fn ratio_experiment_rejects_degenerate_steps() {
        let grid = Grid::new(1, 32, 1 << 8).unwrap();
        let err = ratio_experiment(
            &[1, 2],
            |_| Ok(SampledFunction::zeros(grid, Domain::Space)),
            |_, _| Ok(0.0),
            |_, _| Ok(0.0),
            &RatioConfig::default(),
        );
        assert!(matches!(err, Err(Error::DegenerateExperiment(_))));
    }

    #[test]
    fn gamma_counts_track_the_shell_measure() {
        let grid = Grid::new(1, 64, 1 << 14).unwrap();
        let fam = UniformFamily::build(grid).unwrap();
        let mut meets = Vec::new();
        for j in 3..=5 {
            let c = gamma_counts(j, grid, &fam).unwrap();
            assert!(c.reliable);
            let scale = (2.0f64).powi(j as i32);
            let ratio = c.meets as f64 / scale;
            assert!(
                (0.25..=4.0).contains(&ratio),
                "j = {j}: |Gamma_j| / 2^j = {ratio}"
            );
            assert!(c.contained <= c.meets);
            meets.push(c.meets as f64);
        }
        for w in meets.windows(2) {
            let growth = w[1] / w[0];
            assert!(
                (growth - 2.0).abs() / 2.0 <= 0.3,
                "cell counts should double per shell, got {growth}"
            );
        }
        // degenerate thin shell: counts stay positive but are flagged
        let c = gamma_counts(0, grid, &fam).unwrap();
        assert!(c.meets >= 1);
        assert!(!c.reliable);
    }

    #[test]
    fn localization_ratio_is_invariant_under_scaling_and_translation() {
        let grid = Grid::new(1, 64, 1 << 13).unwrap();
        let fam = UniformFamily::build(grid).unwrap();
        let f = SampledFunction::sample(
            &FunctionDescriptor::Bump { radius: 0.5 },
            grid,
            Domain::Space,
        )
        .unwrap();
        let p: Exponent = "1".parse().unwrap();
        let q: Exponent = "2".parse().unwrap();
        let base = localization_check(&f, [0.0, 0.0], 0.5, &p, &q, &fam).unwrap();

        let scaled = f.scaled(Complex64::new(17.0, 0.0));
        let r2 = localization_check(&scaled, [0.0, 0.0], 0.5, &p, &q, &fam).unwrap();
        assert!((base - r2).abs() < 1e-10 * base);

        let shift = 8.0 * grid.spacing() * 16.0;
        let moved = f.translated([shift, 0.0]).unwrap();
        let r3 = localization_check(&moved, [shift, 0.0], 0.5, &p, &q, &fam).unwrap();
        assert!((base - r3).abs() < 1e-8 * base);

        // support violation is caught
        assert!(localization_check(&moved, [0.0, 0.0], 0.5, &p, &q, &fam).is_err());
    }

    #[test]
    fn convolution_constants_do_not_grow_with_radius() {
        let grid = Grid::new(1, 32, 1 << 12).unwrap();
        let p: Exponent = "1/2".parse().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let stats =
            convolution_constant_sweep(&p, &[1.0, 2.0, 4.0, 8.0], 20, grid, &mut rng).unwrap();
        let max = stats.iter().map(|s| s.max_constant).fold(0.0, f64::max);
        let min = stats
            .iter()
            .map(|s| s.max_constant)
            .fold(f64::INFINITY, f64::min);
        assert!(max > 0.0 && min > 0.0);
        assert!(
            max / min < 4.0,
            "constants varied by {}x across radii",
            max / min
        );
        assert!(convolution_constant_sweep(&"2".parse().unwrap(), &[1.0], 1, grid, &mut rng)
            .is_err());
    }

    #[test]
    fn dilation_identity_for_convolution_constants() {
        // Doubling R while dilating the pair tracks the constant through the
        // scaling bookkeeping. On a fixed periodic box, x -> 2x folds the
        // domain: every L_p norm of a dilated function equals the original's,
        // the convolution dilates in place, and the only change left in
        // C(R) is the normalizer (2R)^{n(1/p-1)}. Hence
        // C(2R, dilated pair) = C(R, pair) * 2^{-n(1/p-1)}.
        let grid = Grid::new(1, 32, 1 << 13).unwrap();
        let p: Exponent = "1/2".parse().unwrap();
        let lp = LpParams::plain(p);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let f = crate::corpus::random_ball_limited(grid, [2.0, 0.0], 1.0, &mut rng);
        let g = crate::corpus::random_ball_limited(grid, [-3.0, 0.0], 1.0, &mut rng);

        // exact sample-side dilation: (Df)(x_m) = f(2 x_m), periodically
        let dilate = |h: &SampledFunction| {
            let m = grid.axis_len();
            let values: Vec<Complex64> = (0..m)
                .map(|i| h.values()[(2 * i + m / 2) % m])
                .collect();
            SampledFunction::from_values(grid, Domain::Space, values).unwrap()
        };
        let f2 = dilate(&f);
        let g2 = dilate(&g);
        let c1 = convolve(&f.modulus(), &g.modulus()).unwrap().lp_norm(&lp)
            / (1.0 * f.lp_norm(&lp) * g.lp_norm(&lp));
        let c2 = convolve(&f2.modulus(), &g2.modulus()).unwrap().lp_norm(&lp)
            / (2.0 * f2.lp_norm(&lp) * g2.lp_norm(&lp));
        let expected = c1 * 0.5; // 2^{-n(1/p-1)} with n = 1, p = 1/2
        assert!(
            (c2 - expected).abs() / expected < 1e-4,
            "fold bookkeeping: expected {expected}, got {c2}"
        );
    }

    #[test]
    fn multiplier_ratio_cap_and_stability() {
        assert_eq!(multiplier_order_cap(&"1".parse().unwrap(), 1), 1);
        assert_eq!(multiplier_order_cap(&"1/2".parse().unwrap(), 1), 2);

        let grid = Grid::new(1, 32, 1 << 12).unwrap();
        let f = SampledFunction::sample(
            &FunctionDescriptor::Bump { radius: 2.0 },
            grid,
            Domain::Frequency,
        )
        .unwrap();
        let r = multiplier_ratio(&f, &"1/2".parse().unwrap()).unwrap();
        assert!(r.is_finite() && r > 0.0);

        let fine = Grid::new(1, 32, 1 << 13).unwrap();
        let f2 = SampledFunction::sample(
            &FunctionDescriptor::Bump { radius: 2.0 },
            fine,
            Domain::Frequency,
        )
        .unwrap();
        let r2 = multiplier_ratio(&f2, &"1/2".parse().unwrap()).unwrap();
        assert!((r - r2).abs() / r < 0.1, "grid doubling drift: {r} vs {r2}");

        let zero = SampledFunction::zeros(grid, Domain::Frequency);
        assert!(multiplier_ratio(&zero, &"1".parse().unwrap()).is_err());
    }
}
