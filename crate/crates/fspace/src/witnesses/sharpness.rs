//! Sharpness correspondence: at parameter points where an embedding fails,
//! the matching extremal family must produce a diverging norm-ratio series,
//! and at points where it holds the series must stay bounded.
//!
//! Every case carries its own coefficient extremal (indicator block or
//! spike), growth schedule and grid geometry. Before any function is built,
//! the expected ratio growth is computed from the sequence norms alone; the
//! function-norm experiment then has to reproduce that classification.

use crate::decomposition::{DyadicFamily, UniformFamily};
use crate::embedding::{EmbeddingVerdict, TheoremId};
use crate::error::{Error, Result};
use crate::grid::{Grid, SampledFunction};
use crate::norms::{
    dyadic_seq_norm, modulation_norm, triebel_lizorkin_norm, uniform_seq_norm, DyadicCoeffs,
    UniformCoeffs,
};
use crate::params::{Rational, SpaceParams};
use crate::witnesses::experiments::{classify, ratio_experiment, RatioConfig, RatioSeries};
use crate::witnesses::extremals::{
    build_lattice_bumps, build_shell_ladder, build_shell_train, LADDER_BUMP_RADIUS,
    LATTICE_BUMP_RADIUS,
};

/// Which inclusion the experiment probes; the ratio is always
/// (target-space norm) / (source-space norm).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    ModulationIntoTriebel,
    TriebelIntoModulation,
}

impl Direction {
    pub fn theorem(&self) -> TheoremId {
        match self {
            Direction::ModulationIntoTriebel => TheoremId::ModulationIntoTriebel,
            Direction::TriebelIntoModulation => TheoremId::TriebelIntoModulation,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Direction::ModulationIntoTriebel => "m-into-f",
            Direction::TriebelIntoModulation => "f-into-m",
        }
    }
}

/// Extremal family and coefficient shape used as the witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessFamily {
    /// Lattice bumps with indicator-block coefficients, schedule = block cap.
    LatticeIndicator,
    /// Lattice bumps with a single spike, schedule = spike position.
    LatticeSpike,
    /// Shell train with a single spike, schedule = shell index.
    ShellSpike,
    /// Shell ladder with indicator coefficients, schedule = top rung.
    LadderIndicator,
    /// Shell ladder with a single spike, schedule = rung index.
    LadderSpike,
}

impl WitnessFamily {
    pub fn label(&self) -> &'static str {
        match self {
            WitnessFamily::LatticeIndicator => "lattice-indicator",
            WitnessFamily::LatticeSpike => "lattice-spike",
            WitnessFamily::ShellSpike => "shell-spike",
            WitnessFamily::LadderIndicator => "ladder-indicator",
            WitnessFamily::LadderSpike => "ladder-spike",
        }
    }
}

const LATTICE_SEPARATION: u32 = 32;

#[derive(Clone, Debug)]
pub struct SharpnessCase {
    pub id: usize,
    pub direction: Direction,
    pub family: WitnessFamily,
    pub params: SpaceParams,
    pub schedule: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct SharpnessOutcome {
    pub case: SharpnessCase,
    pub verdict: EmbeddingVerdict,
    pub predicted: Vec<f64>,
    pub predicted_growth: f64,
    pub series: RatioSeries,
    pub agrees: bool,
}

fn next_pow2_u32(x: u32) -> u32 {
    x.next_power_of_two()
}

fn next_pow2_usize(x: usize) -> usize {
    x.next_power_of_two()
}

/// Grid geometry sized for the largest schedule step of a case.
pub fn case_grid(family: WitnessFamily, max_step: u32) -> Result<Grid> {
    match family {
        WitnessFamily::LatticeIndicator => {
            let extent = next_pow2_u32(2 * LATTICE_SEPARATION * max_step + 128);
            // the frequency range must cover the windows up to K + 2 and a
            // full dyadic shell above the block, so the shell bank's covered
            // ball contains every bump
            let content = max_step as f64 + 2.0;
            let shell = (3.0 * content / 4.0).log2().ceil() as i32;
            let max_freq_needed = content.max(1.5 * (2.0f64).powi(shell));
            let points =
                next_pow2_usize((2.0 * extent as f64 * max_freq_needed).ceil() as usize);
            Grid::new(1, extent, points)
        }
        WitnessFamily::LatticeSpike => {
            let points = next_pow2_usize(64 * (max_step as usize + 2));
            Grid::new(1, 32, points)
        }
        WitnessFamily::ShellSpike => {
            let points = next_pow2_usize(96 << max_step);
            Grid::new(1, 32, points)
        }
        WitnessFamily::LadderIndicator | WitnessFamily::LadderSpike => {
            let points = next_pow2_usize(64 * ((1usize << max_step) + 2));
            Grid::new(1, 32, points)
        }
    }
}

fn build_step(
    family: WitnessFamily,
    step: u32,
    grid: Grid,
) -> Result<SampledFunction> {
    match family {
        WitnessFamily::LatticeIndicator => build_lattice_bumps(
            &UniformCoeffs::indicator_block(step as i64),
            LATTICE_SEPARATION,
            LATTICE_BUMP_RADIUS,
            grid,
        ),
        WitnessFamily::LatticeSpike => build_lattice_bumps(
            &UniformCoeffs::spike([step as i64, 0], 1),
            0,
            LATTICE_BUMP_RADIUS,
            grid,
        ),
        WitnessFamily::ShellSpike => {
            build_shell_train(&DyadicCoeffs::spike(step), 0, step, grid)
        }
        WitnessFamily::LadderIndicator => {
            build_shell_ladder(&DyadicCoeffs::indicator_range(0, step), LADDER_BUMP_RADIUS, grid)
        }
        WitnessFamily::LadderSpike => {
            build_shell_ladder(&DyadicCoeffs::spike(step), LADDER_BUMP_RADIUS, grid)
        }
    }
}

/// Sequence-norm prediction of the triebel-side / modulation-side ratio for
/// one schedule step, before any grid function is built.
pub fn predicted_ratio(
    family: WitnessFamily,
    params: &SpaceParams,
    step: u32,
) -> f64 {
    let n = params.n_rational();
    let one = Rational::from_integer(1);
    let zero = Rational::new(0, 1);
    let (triebel_side, modulation_side) = match family {
        WitnessFamily::LatticeIndicator | WitnessFamily::LatticeSpike => {
            let coeffs = match family {
                WitnessFamily::LatticeIndicator => UniformCoeffs::indicator_block(step as i64),
                _ => UniformCoeffs::spike([step as i64, 0], 1),
            };
            (
                uniform_seq_norm(&coeffs, &params.p, zero),
                uniform_seq_norm(&coeffs, &params.q, params.s),
            )
        }
        WitnessFamily::ShellSpike => {
            let coeffs = DyadicCoeffs::spike(step);
            let f_weight = n * (one - params.p.reciprocal());
            let m_weight = params.s + n * params.q.reciprocal();
            (
                dyadic_seq_norm(&coeffs, &params.p, f_weight),
                dyadic_seq_norm(&coeffs, &params.q, m_weight),
            )
        }
        WitnessFamily::LadderIndicator | WitnessFamily::LadderSpike => {
            let coeffs = match family {
                WitnessFamily::LadderIndicator => DyadicCoeffs::indicator_range(0, step),
                _ => DyadicCoeffs::spike(step),
            };
            // modulation side weights sit at lattice points 2^j
            let mut lattice = UniformCoeffs::new(1);
            for (j, v) in coeffs.iter() {
                lattice.set([1i64 << *j, 0], *v);
            }
            (
                dyadic_seq_norm(&coeffs, &params.r, zero),
                uniform_seq_norm(&lattice, &params.q, params.s),
            )
        }
    };
    match_ratio(triebel_side, modulation_side, family, params)
}

fn match_ratio(
    triebel_side: f64,
    modulation_side: f64,
    _family: WitnessFamily,
    _params: &SpaceParams,
) -> f64 {
    triebel_side / modulation_side
}

fn oriented(ratio: f64, direction: Direction) -> f64 {
    match direction {
        Direction::ModulationIntoTriebel => ratio,
        Direction::TriebelIntoModulation => 1.0 / ratio,
    }
}

pub fn predicted_series(case: &SharpnessCase) -> Vec<f64> {
    case.schedule
        .iter()
        .map(|&step| oriented(predicted_ratio(case.family, &case.params, step), case.direction))
        .collect()
}

/// Runs one case end to end: verdict, sequence-norm prediction, and the
/// function-norm ratio experiment on a per-case grid.
pub fn run_sharpness_case(case: &SharpnessCase, config: &RatioConfig) -> Result<SharpnessOutcome> {
    let verdict = case.direction.theorem().evaluate(&case.params)?;
    let predicted = predicted_series(case);
    let (_, predicted_growth, _) = classify(&predicted, config);
    let max_step = *case
        .schedule
        .iter()
        .max()
        .ok_or_else(|| Error::DegenerateExperiment("empty schedule".into()))?;
    let grid = case_grid(case.family, max_step)?;
    let uniform = UniformFamily::build(grid)?;
    let dyadic = DyadicFamily::build(grid)?;

    let triebel_params = SpaceParams {
        s: Rational::new(0, 1),
        ..case.params
    };
    let direction = case.direction;
    let family = case.family;
    let params = case.params;
    // both norms are evaluated once per step; the denominator closure reads
    // the pair cached by the numerator closure for the same step
    let memo: std::cell::RefCell<Option<(u32, f64, f64)>> = std::cell::RefCell::new(None);
    let series = ratio_experiment(
        &case.schedule,
        |step| build_step(family, step, grid),
        |f, step| {
            let t = triebel_lizorkin_norm(f, &triebel_params, &dyadic)?;
            let m = modulation_norm(f, &params, &uniform)?;
            *memo.borrow_mut() = Some((step, t, m));
            Ok(match direction {
                Direction::ModulationIntoTriebel => t,
                Direction::TriebelIntoModulation => m,
            })
        },
        |f, step| {
            let cached = *memo.borrow();
            let (t, m) = match cached {
                Some((cached_step, t, m)) if cached_step == step => (t, m),
                _ => {
                    let t = triebel_lizorkin_norm(f, &triebel_params, &dyadic)?;
                    let m = modulation_norm(f, &params, &uniform)?;
                    (t, m)
                }
            };
            Ok(match direction {
                Direction::ModulationIntoTriebel => m,
                Direction::TriebelIntoModulation => t,
            })
        },
        config,
    )?;
    let diverged = matches!(
        series.classification,
        crate::witnesses::experiments::Classification::Diverging
    );
    Ok(SharpnessOutcome {
        case: case.clone(),
        verdict,
        predicted,
        predicted_growth,
        series,
        agrees: diverged == !verdict.holds,
    })
}

fn sp(p: &str, q: &str, r: &str, s: &str) -> SpaceParams {
    SpaceParams::parse_fields("1", p, q, r, s).expect("valid case parameters")
}

/// The 50-point rational parameter grid used by the correspondence suite.
/// Every point avoids equality in each comparison its verdict depends on,
/// and every failing point is paired with a family whose sequence-norm
/// growth over the schedule reaches the divergence threshold.
pub fn sharpness_grid() -> Vec<SharpnessCase> {
    use Direction::{ModulationIntoTriebel as MF, TriebelIntoModulation as FM};
    use WitnessFamily::*;

    let spike_schedule = vec![4u32, 8, 16, 32, 64];
    let block_schedule = vec![2u32, 4, 8, 16];
    let long_block_schedule = vec![2u32, 4, 8, 16, 32];
    let shell_schedule = vec![2u32, 3, 4, 5, 6];
    let ladder_schedule = vec![2u32, 4, 8, 11];

    let table: Vec<(Direction, WitnessFamily, SpaceParams, Vec<u32>)> = vec![
        // failing points, lattice spikes: s < 0 drives <K>^{-s} growth
        (MF, LatticeSpike, sp("1", "2", "4", "-1"), spike_schedule.clone()),
        (MF, LatticeSpike, sp("1/2", "1", "2", "-3/2"), spike_schedule.clone()),
        (MF, LatticeSpike, sp("1", "4", "1/2", "-2"), spike_schedule.clone()),
        (MF, LatticeSpike, sp("2/3", "2", "3", "-1"), spike_schedule.clone()),
        (MF, LatticeSpike, sp("1", "3/2", "2", "-5/2"), spike_schedule.clone()),
        // failing points, lattice indicator blocks: K^{1/p - 1/q - s} growth
        (MF, LatticeIndicator, sp("1/2", "4", "2", "1/2"), long_block_schedule.clone()),
        (MF, LatticeIndicator, sp("1/3", "2", "1", "1"), block_schedule.clone()),
        (MF, LatticeIndicator, sp("1/2", "inf", "2", "1/2"), block_schedule.clone()),
        (MF, LatticeIndicator, sp("2/3", "6", "3", "1/8"), long_block_schedule.clone()),
        (MF, LatticeIndicator, sp("1/2", "3", "2", "1/2"), long_block_schedule.clone()),
        // failing points, shell spikes: 2^{j (n(1 - 1/p - 1/q) - s)} growth
        (MF, ShellSpike, sp("1", "2", "3", "-3/2"), shell_schedule.clone()),
        (MF, ShellSpike, sp("1", "3/2", "2", "-2"), shell_schedule.clone()),
        (MF, ShellSpike, sp("1/2", "2", "1", "-3"), shell_schedule.clone()),
        (MF, ShellSpike, sp("2/3", "4", "inf", "-2"), shell_schedule.clone()),
        (MF, ShellSpike, sp("1", "4", "3", "-5/4"), shell_schedule.clone()),
        // failing points, ladder indicators: (J+1)^{1/r} against a bounded
        // modulation side (s < 0)
        (MF, LadderIndicator, sp("1", "2", "1/2", "-1"), ladder_schedule.clone()),
        (MF, LadderIndicator, sp("1/2", "4", "1/3", "-1/2"), ladder_schedule.clone()),
        (MF, LadderIndicator, sp("1", "inf", "1/2", "-2"), ladder_schedule.clone()),
        (MF, LadderIndicator, sp("2/3", "3", "2/5", "-1"), ladder_schedule.clone()),
        // failing points, ladder spikes: <2^j>^{-s} growth
        (MF, LadderSpike, sp("1", "2", "4", "-1"), shell_schedule.clone()),
        (MF, LadderSpike, sp("1/2", "3", "inf", "-3/2"), shell_schedule.clone()),
        (MF, LadderSpike, sp("1", "1/2", "2", "-2"), shell_schedule.clone()),
        // holding points, forward direction
        (MF, LatticeIndicator, sp("1/2", "1/4", "1/3", "1"), block_schedule.clone()),
        (MF, LadderIndicator, sp("1", "1/2", "1", "2"), ladder_schedule.clone()),
        (MF, LatticeIndicator, sp("1/2", "2", "4", "2"), block_schedule.clone()),
        (MF, LatticeSpike, sp("1/3", "1", "1/2", "7/2"), spike_schedule.clone()),
        (MF, ShellSpike, sp("1", "3", "5", "1"), shell_schedule.clone()),
        (MF, LadderIndicator, sp("2/3", "1/3", "1/2", "1/2"), ladder_schedule.clone()),
        (MF, LatticeSpike, sp("1", "2", "inf", "3/4"), spike_schedule.clone()),
        // failing, forward, large indicator exponent
        (MF, LatticeIndicator, sp("1/3", "3", "1/4", "1/2"), block_schedule.clone()),
        // failing points, reverse direction, shell spikes:
        // 2^{j (s - n(1 - 1/p - 1/q))} growth
        (FM, ShellSpike, sp("1", "2", "2", "1/2"), shell_schedule.clone()),
        (FM, ShellSpike, sp("1/2", "4", "inf", "0"), shell_schedule.clone()),
        (FM, ShellSpike, sp("2/3", "2", "1", "1"), shell_schedule.clone()),
        (FM, ShellSpike, sp("1", "1/2", "2", "3/2"), shell_schedule.clone()),
        (FM, ShellSpike, sp("1/2", "1", "1/2", "-1/2"), shell_schedule.clone()),
        // failing points, reverse direction, lattice indicators:
        // K^{s + 1/q - 1/p} growth
        (FM, LatticeIndicator, sp("1", "1/2", "2", "1"), block_schedule.clone()),
        (FM, LatticeIndicator, sp("1/2", "1/3", "1", "2"), block_schedule.clone()),
        (FM, LatticeIndicator, sp("1/2", "1/4", "3", "3"), block_schedule.clone()),
        // failing points, reverse direction, lattice spikes: <K>^s growth
        (FM, LatticeSpike, sp("1", "4", "2", "1"), spike_schedule.clone()),
        (FM, LatticeSpike, sp("1/2", "2", "1/3", "2"), spike_schedule.clone()),
        (FM, LatticeSpike, sp("2/3", "6", "1", "3/2"), spike_schedule.clone()),
        // holding points, reverse direction
        (FM, ShellSpike, sp("1", "1/2", "7", "-3"), shell_schedule.clone()),
        (FM, LatticeSpike, sp("1", "inf", "7", "-1/2"), spike_schedule.clone()),
        (FM, ShellSpike, sp("1/2", "1/4", "2", "-6"), shell_schedule.clone()),
        (FM, LatticeIndicator, sp("2/3", "1/3", "1/2", "-4"), block_schedule.clone()),
        (FM, ShellSpike, sp("1", "2", "1/5", "-2"), shell_schedule.clone()),
        (FM, LatticeIndicator, sp("1/2", "1", "10", "-5/2"), block_schedule.clone()),
        // remaining failing points, forward direction
        (MF, LatticeIndicator, sp("1", "3", "1", "-1/2"), vec![2, 4, 12, 48]),
        (MF, LadderIndicator, sp("1/2", "3/2", "1/4", "-3/4"), ladder_schedule.clone()),
        (FM, ShellSpike, sp("2/3", "4", "5", "2"), shell_schedule),
    ];

    table
        .into_iter()
        .enumerate()
        .map(|(id, (direction, family, params, schedule))| SharpnessCase {
            id,
            direction,
            family,
            params,
            schedule,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witnesses::experiments::Classification;

    #[test]
    fn grid_has_fifty_nonboundary_cases_with_adequate_margins() {
        let cases = sharpness_grid();
        assert_eq!(cases.len(), 50);
        let config = RatioConfig::default();
        for case in &cases {
            let verdict = case.direction.theorem().evaluate(&case.params).unwrap();
            assert!(
                !verdict.boundary,
                "case {} ({}) sits on a boundary",
                case.id, case.params
            );
            let predicted = predicted_series(case);
            let (mono, growth, class) = classify(&predicted, &config);
            if verdict.holds {
                assert_eq!(
                    class,
                    Classification::Bounded,
                    "case {}: holding point must predict a bounded ratio",
                    case.id
                );
            } else {
                assert!(mono, "case {}: predicted ratios must grow monotonically", case.id);
                assert!(
                    growth >= config.divergence_factor,
                    "case {}: predicted growth {growth} below the threshold",
                    case.id
                );
            }
        }
    }

    #[test]
    fn spike_case_diverges_and_holding_case_stays_bounded() {
        let config = RatioConfig::default();
        // failing point: lattice spike with s = -1
        let case = SharpnessCase {
            id: 1000,
            direction: Direction::ModulationIntoTriebel,
            family: WitnessFamily::LatticeSpike,
            params: sp("1", "4", "1/2", "-2"),
            schedule: vec![4, 8, 16, 32],
        };
        let out = run_sharpness_case(&case, &config).unwrap();
        assert!(!out.verdict.holds);
        assert_eq!(out.series.classification, Classification::Diverging);
        assert!(out.agrees);

        // holding point: same family, strongly positive s
        let case = SharpnessCase {
            id: 1001,
            direction: Direction::ModulationIntoTriebel,
            family: WitnessFamily::LatticeSpike,
            params: sp("1/3", "1", "1/2", "7/2"),
            schedule: vec![4, 8, 16, 32],
        };
        let out = run_sharpness_case(&case, &config).unwrap();
        assert!(out.verdict.holds);
        assert_eq!(out.series.classification, Classification::Bounded);
        assert!(out.agrees);
    }

    #[test]
    fn short_schedules_underresolve_slow_divergence() {
        // growth exponent 1/2: the trend is strictly monotone but the factor
        // over this schedule stays near 2.9, below the divergence threshold
        let case = SharpnessCase {
            id: 1002,
            direction: Direction::ModulationIntoTriebel,
            family: WitnessFamily::LatticeIndicator,
            params: sp("1/2", "2", "2", "1"),
            schedule: vec![4, 8, 16, 32],
        };
        let config = RatioConfig::default();
        let out = run_sharpness_case(&case, &config).unwrap();
        assert!(!out.verdict.holds);
        assert!(out.series.monotone, "trend must still be visible");
        assert!(out.series.growth_factor > 2.0);
        assert!(out.series.growth_factor < config.divergence_factor);
        assert_eq!(out.series.classification, Classification::Bounded);
        // the sequence oracle predicts the same under-resolved factor
        assert!((out.predicted_growth - out.series.growth_factor).abs()
            / out.predicted_growth < 0.5);
    }
}
