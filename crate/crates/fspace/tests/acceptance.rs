//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test -p fspace --test acceptance -- --nocapture` to see
//! the per-criterion summary lines.

mod common;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fspace::decomposition::{DyadicFamily, RhoProfile, UniformFamily};
use fspace::embedding::{
    hardy_into_modulation, modulation_into_hardy, modulation_into_triebel,
    triebel_into_modulation, Branch,
};
use fspace::norms::{
    besov_norm, dyadic_seq_norm, modulation_norm, stft_modulation_norm, triebel_lizorkin_norm,
    uniform_seq_norm, DyadicCoeffs, UniformCoeffs,
};
use fspace::params::{rational_to_f64, LpParams, Rational, SpaceParams};
use fspace::witnesses::{
    atom_scaling_experiment, build_lattice_bumps, build_shell_ladder, build_shell_train,
    convolution_constant_sweep, gamma_counts, ladder_base_bump, lattice_base_bump,
    localization_check, make_test_atom, multiplier_ratio, run_sharpness_case, sharpness_grid,
    validate_atom, AtomKind, AtomSpec, Classification, RatioConfig, LATTICE_BUMP_RADIUS,
};
use fspace::{Domain, Exponent, FunctionDescriptor, Grid, SampledFunction};

fn sp(p: &str, q: &str, r: &str, s: &str) -> SpaceParams {
    SpaceParams::parse_fields("1", p, q, r, s).unwrap()
}

fn report(criterion: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion} ({name}): {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} ({name}) failed: {detail}");
}

#[test]
fn criterion_1_partition_and_reconstruction() {
    let start = std::time::Instant::now();
    let grid = Grid::new(1, 64, 1 << 14).unwrap();
    let uniform = UniformFamily::build(grid).unwrap();
    let dyadic = DyadicFamily::build(grid).unwrap();
    let dev_u = uniform.partition_deviation();
    let dev_d = dyadic.partition_deviation();

    let grid2 = Grid::new(2, 32, 1 << 8).unwrap();
    let dev_u2 = UniformFamily::build(grid2).unwrap().partition_deviation();
    let dev_d2 = DyadicFamily::build(grid2).unwrap().partition_deviation();

    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let f = fspace::corpus::random_band_limited(grid, 30.0, &mut rng);
        let eu = uniform.reconstruct(&f).unwrap().rel_l2_distance(&f);
        let ed = dyadic.reconstruct(&f).unwrap().rel_l2_distance(&f);
        worst = worst.max(eu).max(ed);
    }
    let elapsed = start.elapsed();
    let pass = dev_u < 1e-10
        && dev_d < 1e-10
        && dev_u2 < 1e-10
        && dev_d2 < 1e-10
        && worst < 1e-8
        && elapsed.as_secs() < 60;
    report(
        1,
        "partition and reconstruction",
        pass,
        &format!(
            "deviations 1-D ({dev_u:.2e}, {dev_d:.2e}), 2-D ({dev_u2:.2e}, {dev_d2:.2e}); \
             worst reconstruction error {worst:.2e} over 200 functions; {:.1?}",
            elapsed
        ),
    );
}

#[test]
fn criterion_2_norm_oracle_equivalence() {
    let grid = Grid::new(1, 32, 256).unwrap();
    let uniform = UniformFamily::build(grid).unwrap();
    let dyadic = DyadicFamily::build(grid).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(402);
    let finite_exps = ["1/2", "2/3", "1", "2"];
    let all_exps = ["1/2", "1", "2", "inf"];
    let s_values = ["-2", "-1/2", "0", "1/2", "3/2"];
    let pick = |rng: &mut ChaCha8Rng, set: &[&str]| set[rng.gen_range(0..set.len())].to_string();

    let mut worst = [0.0f64; 6];
    for _ in 0..100 {
        let f = fspace::corpus::random_band_limited(grid, 2.2, &mut rng);
        let params = sp(
            &pick(&mut rng, &finite_exps),
            &pick(&mut rng, &all_exps),
            &pick(&mut rng, &all_exps),
            &pick(&mut rng, &s_values),
        );
        let m = modulation_norm(&f, &params, &uniform).unwrap();
        let m0 = common::naive_modulation_norm(&f, &params, &uniform);
        worst[0] = worst[0].max((m - m0).abs() / m0.max(1e-300));

        let b = besov_norm(&f, &params, &dyadic).unwrap();
        let b0 = common::naive_besov_norm(&f, &params, &dyadic);
        worst[1] = worst[1].max((b - b0).abs() / b0.max(1e-300));

        let t = triebel_lizorkin_norm(&f, &params, &dyadic).unwrap();
        let t0 = common::naive_triebel_norm(&f, &params, &dyadic);
        worst[2] = worst[2].max((t - t0).abs() / t0.max(1e-300));
    }

    // transform-based modulation norm on a smaller grid (cubic oracle cost)
    let sgrid = Grid::new(1, 32, 128).unwrap();
    let window = SampledFunction::sample(&FunctionDescriptor::Gaussian, sgrid, Domain::Space)
        .unwrap();
    for _ in 0..100 {
        let f = fspace::corpus::random_band_limited(sgrid, 1.5, &mut rng);
        let params = sp(
            &pick(&mut rng, &finite_exps),
            &pick(&mut rng, &all_exps),
            "2",
            &pick(&mut rng, &s_values),
        );
        let v = stft_modulation_norm(&f, &params, &FunctionDescriptor::Gaussian).unwrap();
        let v0 = common::naive_stft_norm(&f, &params, &window);
        worst[3] = worst[3].max((v - v0).abs() / v0.max(1e-300));
    }

    for _ in 0..100 {
        let mut a = UniformCoeffs::new(1);
        let mut b = DyadicCoeffs::new();
        for _ in 0..rng.gen_range(1..12) {
            let k = rng.gen_range(-40i64..=40);
            a.set([k, 0], Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)));
            let j = rng.gen_range(0u32..12);
            b.set(j, Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)));
        }
        if a.is_empty() || b.is_empty() {
            continue;
        }
        let q: Exponent = pick(&mut rng, &all_exps).parse().unwrap();
        let s = fspace::params::parse_rational(&pick(&mut rng, &s_values)).unwrap();
        let u = uniform_seq_norm(&a, &q, s);
        let u0 = common::naive_uniform_seq_norm(&a, &q, s);
        worst[4] = worst[4].max((u - u0).abs() / u0.max(1e-300));
        let d = dyadic_seq_norm(&b, &q, s);
        let d0 = common::naive_dyadic_seq_norm(&b, &q, s);
        worst[5] = worst[5].max((d - d0).abs() / d0.max(1e-300));
    }

    let max_err = worst.iter().fold(0.0f64, |m, &v| m.max(v));
    report(
        2,
        "norm oracle equivalence",
        max_err < 1e-8,
        &format!(
            "worst relative deviations: modulation {:.1e}, besov {:.1e}, triebel {:.1e}, \
             stft {:.1e}, seq-uniform {:.1e}, seq-dyadic {:.1e}",
            worst[0], worst[1], worst[2], worst[3], worst[4], worst[5]
        ),
    );
}

#[test]
fn criterion_3_exact_logic_golden_table() {
    use common::brute::{self, Q};
    let start = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(403);
    let mut checked = 0usize;
    for _ in 0..500 {
        let n = rng.gen_range(1u32..=2);
        // p in (0, 1] so every decision procedure is in domain
        let p_num = rng.gen_range(1i64..=8);
        let (q_num, q_den, q_inf) = random_exponent(&mut rng);
        let (r_num, r_den, r_inf) = random_exponent(&mut rng);
        let s_num = rng.gen_range(-16i64..=16);

        let p = Exponent::ratio(p_num, 8).unwrap();
        let q = if q_inf {
            Exponent::infinity()
        } else {
            Exponent::ratio(q_num, q_den).unwrap()
        };
        let r = if r_inf {
            Exponent::infinity()
        } else {
            Exponent::ratio(r_num, r_den).unwrap()
        };
        let s = Rational::new(s_num, 4);
        let params = SpaceParams::new(n, p, q, r, s).unwrap();

        let ip = Q::inv_of_exponent(p_num as i128, 8);
        let iq = if q_inf {
            Q::inv_of_exponent(1, 0)
        } else {
            Q::inv_of_exponent(q_num as i128, q_den as i128)
        };
        let ir = if r_inf {
            Q::inv_of_exponent(1, 0)
        } else {
            Q::inv_of_exponent(r_num as i128, r_den as i128)
        };
        let sq = Q(s_num as i128, 4);

        let got = modulation_into_triebel(&params).unwrap();
        let want = brute::m_into_f(n as i128, ip, iq, ir, sq);
        assert_eq!(got.holds, want.holds, "forward verdict at {params}");
        assert_eq!(got.branch == Branch::Cond1, want.holds && want.cond1, "{params}");
        assert_eq!(got.boundary, want.boundary, "forward boundary at {params}");

        let got = triebel_into_modulation(&params).unwrap();
        let want = brute::f_into_m(n as i128, ip, iq, sq);
        assert_eq!(got.holds, want.holds, "reverse verdict at {params}");
        assert_eq!(got.boundary, want.boundary, "reverse boundary at {params}");

        let got = modulation_into_hardy(n, &p, &q, s).unwrap();
        let want = brute::m_into_h(n as i128, ip, iq, sq);
        assert_eq!(got.holds, want.holds, "hardy forward at {params}");

        let got = hardy_into_modulation(n, &p, &q, s).unwrap();
        let want = brute::f_into_m(n as i128, ip, iq, sq);
        assert_eq!(got.holds, want.holds, "hardy reverse at {params}");

        for forward in [true, false] {
            let dir = if forward {
                fspace::embedding::BesovDirection::ModulationIntoBesov
            } else {
                fspace::embedding::BesovDirection::BesovIntoModulation
            };
            let got = fspace::embedding::besov_embedding(n, &p, &q, s, dir);
            let (holds, boundary) = brute::besov(n as i128, ip, iq, sq, forward);
            assert_eq!(got.holds, holds, "besov({forward}) at {params}");
            assert_eq!(got.boundary, boundary, "besov boundary at {params}");
        }

        // r = 2 specialization: the general condition collapses to the
        // local-Hardy conditions, and the extra inner-exponent clause is
        // vacuous whenever 1/p <= 1/q
        let two = Exponent::int(2).unwrap();
        let at_r2 = SpaceParams::new(n, p, q, two, s).unwrap();
        let t1 = modulation_into_triebel(&at_r2).unwrap();
        let ta = modulation_into_hardy(n, &p, &q, s).unwrap();
        assert_eq!(t1.holds, ta.holds, "r = 2 forward identity at {params}");
        let t2 = triebel_into_modulation(&at_r2).unwrap();
        let tb = hardy_into_modulation(n, &p, &q, s).unwrap();
        assert_eq!(t2.holds, tb.holds, "r = 2 reverse identity at {params}");
        if p.reciprocal() <= q.reciprocal() {
            assert!(two.reciprocal() <= q.reciprocal(), "clause not vacuous at {params}");
        }
        checked += 1;
    }
    let elapsed = start.elapsed();
    report(
        3,
        "exact logic golden table",
        checked == 500 && elapsed.as_millis() < 1000,
        &format!("{checked} random rational points matched the brute-force evaluator in {elapsed:.1?}"),
    );
}

fn random_exponent(rng: &mut ChaCha8Rng) -> (i64, i64, bool) {
    if rng.gen_range(0..8) == 0 {
        (1, 1, true)
    } else {
        (rng.gen_range(1i64..=12), rng.gen_range(1i64..=4), false)
    }
}

#[test]
fn criterion_4_norm_equivalence_bands() {
    let start = std::time::Instant::now();
    let mut lines = Vec::new();

    // lattice family bands across separations
    {
        let grid = Grid::new(1, 512, 1 << 14).unwrap();
        let uniform = UniformFamily::build(grid).unwrap();
        let dyadic = DyadicFamily::build(grid).unwrap();
        let base = lattice_base_bump(grid, LATTICE_BUMP_RADIUS).unwrap();
        let coeff_families = [
            ("indicator", UniformCoeffs::indicator_block(4)),
            ("spike", UniformCoeffs::spike([3, 0], 1)),
            ("power", UniformCoeffs::power_weights(2.0, 4)),
        ];
        let mut m_lo = f64::INFINITY;
        let mut m_hi = 0.0f64;
        let mut f_lo = f64::INFINITY;
        let mut f_hi = 0.0f64;
        // the smallest inner exponent here is 2/3: at p = 1/2 the bump tails
        // are so heavy in the quasi-norm that separation 8 sits outside the
        // recorded band (that regime is exercised at separation 32 by the
        // sharpness suite instead)
        for params in [sp("1", "1", "1", "0"), sp("2/3", "2", "2", "1"), sp("1", "2", "1/2", "1/2")] {
            let tl_params = SpaceParams { s: Rational::new(0, 1), ..params };
            let g_lp = base.lp_norm(&LpParams::plain(params.p));
            for (_, coeffs) in &coeff_families {
                for n in [8u32, 16, 32] {
                    let g_n = build_lattice_bumps(coeffs, n, LATTICE_BUMP_RADIUS, grid).unwrap();
                    let m_ratio = modulation_norm(&g_n, &params, &uniform).unwrap()
                        / (uniform_seq_norm(coeffs, &params.q, params.s) * g_lp);
                    let f_ratio = triebel_lizorkin_norm(&g_n, &tl_params, &dyadic).unwrap()
                        / (uniform_seq_norm(coeffs, &params.p, Rational::new(0, 1)) * g_lp);
                    m_lo = m_lo.min(m_ratio);
                    m_hi = m_hi.max(m_ratio);
                    f_lo = f_lo.min(f_ratio);
                    f_hi = f_hi.max(f_ratio);
                }
            }
        }
        let bm = fspace::bands::LATTICE_MODULATION_BAND;
        let bf = fspace::bands::LATTICE_TRIEBEL_BAND;
        assert!(m_lo > 1.0 / bm && m_hi < bm, "lattice modulation band [{m_lo:.3}, {m_hi:.3}]");
        assert!(f_lo > 1.0 / bf && f_hi < bf, "lattice triebel band [{f_lo:.3}, {f_hi:.3}]");
        lines.push(format!("lattice M [{m_lo:.2}, {m_hi:.2}] F [{f_lo:.2}, {f_hi:.2}]"));
    }

    // shell-train bands across separations
    {
        let grid = Grid::new(1, 256, 1 << 15).unwrap();
        let uniform = UniformFamily::build(grid).unwrap();
        let dyadic = DyadicFamily::build(grid).unwrap();
        let h_base = fspace::witnesses::shell_annulus_function(grid, 0).unwrap();
        let coeffs = DyadicCoeffs::indicator_range(2, 5);
        let mut m_lo = f64::INFINITY;
        let mut m_hi = 0.0f64;
        let mut f_lo = f64::INFINITY;
        let mut f_hi = 0.0f64;
        for params in [sp("1", "2", "2", "0"), sp("1/2", "1", "2", "1/2"), sp("2/3", "2", "1", "0")] {
            let tl_params = SpaceParams { s: Rational::new(0, 1), ..params };
            let sigma_lp = uniform.base_inverse_lp(&params.p);
            let h_lp = h_base.lp_norm(&LpParams::plain(params.p));
            let m_weight = params.s + params.q.reciprocal();
            let f_weight = Rational::from_integer(1) - params.p.reciprocal();
            for n in [4u32, 8, 16] {
                let f_n = build_shell_train(&coeffs, n, 2, grid).unwrap();
                let m_ratio = modulation_norm(&f_n, &params, &uniform).unwrap()
                    / (dyadic_seq_norm(&coeffs, &params.q, m_weight) * sigma_lp);
                let f_ratio = triebel_lizorkin_norm(&f_n, &tl_params, &dyadic).unwrap()
                    / (dyadic_seq_norm(&coeffs, &params.p, f_weight) * h_lp);
                m_lo = m_lo.min(m_ratio);
                m_hi = m_hi.max(m_ratio);
                f_lo = f_lo.min(f_ratio);
                f_hi = f_hi.max(f_ratio);
            }
        }
        let bm = fspace::bands::SHELL_MODULATION_BAND;
        let bf = fspace::bands::SHELL_TRIEBEL_BAND;
        assert!(m_lo > 1.0 / bm && m_hi < bm, "shell modulation band [{m_lo:.3}, {m_hi:.3}]");
        assert!(f_lo > 1.0 / bf && f_hi < bf, "shell triebel band [{f_lo:.3}, {f_hi:.3}]");
        lines.push(format!("shell M [{m_lo:.2}, {m_hi:.2}] F [{f_lo:.2}, {f_hi:.2}]"));
    }

    // ladder bands (exact factorizations, so the band is tight)
    {
        let grid = Grid::new(1, 32, 1 << 12).unwrap();
        let uniform = UniformFamily::build(grid).unwrap();
        let dyadic = DyadicFamily::build(grid).unwrap();
        let base = ladder_base_bump(grid, fspace::witnesses::LADDER_BUMP_RADIUS).unwrap();
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for coeffs in [
            DyadicCoeffs::indicator_range(0, 5),
            DyadicCoeffs::spike(3),
        ] {
            let h = build_shell_ladder(&coeffs, fspace::witnesses::LADDER_BUMP_RADIUS, grid)
                .unwrap();
            for params in [sp("1", "2", "3/2", "0"), sp("1/2", "1", "2", "0"), sp("1", "4", "1/2", "0")] {
                let lp = base.lp_norm(&LpParams::plain(params.p));
                let f_ratio = triebel_lizorkin_norm(&h, &params, &dyadic).unwrap()
                    / (dyadic_seq_norm(&coeffs, &params.r, Rational::new(0, 1)) * lp);
                let m_ratio = modulation_norm(&h, &params, &uniform).unwrap()
                    / (dyadic_seq_norm(&coeffs, &params.q, Rational::new(0, 1)) * lp);
                lo = lo.min(f_ratio).min(m_ratio);
                hi = hi.max(f_ratio).max(m_ratio);
            }
        }
        let band = fspace::bands::LADDER_BAND;
        assert!(lo > 1.0 / band && hi < band, "ladder band [{lo:.3}, {hi:.3}]");
        lines.push(format!("ladder [{lo:.3}, {hi:.3}]"));
    }

    // localization band over the bump corpus
    {
        let grid = Grid::new(1, 32, 1 << 14).unwrap();
        let uniform = UniformFamily::build(grid).unwrap();
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for (radius, descriptor) in [
            (0.25, FunctionDescriptor::Bump { radius: 0.25 }),
            (0.5, FunctionDescriptor::Bump { radius: 0.5 }),
            (1.0, FunctionDescriptor::Bump { radius: 1.0 }),
            (
                1.0,
                FunctionDescriptor::PolyBump {
                    radius: 1.0,
                    coeffs: vec![1.0, -0.5, 0.25],
                },
            ),
            (
                0.5,
                FunctionDescriptor::PolyBump {
                    radius: 0.5,
                    coeffs: vec![0.2, 1.0],
                },
            ),
        ] {
            let f = SampledFunction::sample(&descriptor, grid, Domain::Space).unwrap();
            for (p, q) in [("1", "2"), ("1/2", "1"), ("1", "1")] {
                let pe: Exponent = p.parse().unwrap();
                let qe: Exponent = q.parse().unwrap();
                let ratio = localization_check(&f, [0.0, 0.0], radius, &pe, &qe, &uniform)
                    .unwrap()
                    / uniform.base_inverse_lp(&pe);
                lo = lo.min(ratio);
                hi = hi.max(ratio);
            }
        }
        let band = fspace::bands::LOCALIZATION_BAND;
        assert!(lo > 1.0 / band && hi < band, "localization band [{lo:.3}, {hi:.3}]");
        lines.push(format!("localization [{lo:.2}, {hi:.2}]"));
    }

    let elapsed = start.elapsed();
    report(
        4,
        "norm equivalence bands",
        elapsed.as_secs() < 600,
        &format!("{}; {:.1?}", lines.join("; "), elapsed),
    );
}

#[test]
fn criterion_5_sharpness_correspondence() {
    let start = std::time::Instant::now();
    let config = RatioConfig::default();
    let cases = sharpness_grid();
    assert_eq!(cases.len(), 50);
    let mut failing = 0;
    let mut holding = 0;
    for case in &cases {
        let outcome = run_sharpness_case(case, &config).unwrap();
        assert!(!outcome.verdict.boundary, "case {} is on a boundary", case.id);
        if outcome.verdict.holds {
            holding += 1;
            assert_eq!(
                outcome.series.classification,
                Classification::Bounded,
                "case {} ({} {} {}): expected bounded, ratios {:?}",
                case.id,
                case.direction.label(),
                case.family.label(),
                case.params,
                outcome.series.ratios
            );
        } else {
            failing += 1;
            assert_eq!(
                outcome.series.classification,
                Classification::Diverging,
                "case {} ({} {} {}): expected diverging, ratios {:?} growth {:.2}",
                case.id,
                case.direction.label(),
                case.family.label(),
                case.params,
                outcome.series.ratios,
                outcome.series.growth_factor
            );
            assert!(
                outcome.series.growth_factor >= config.divergence_factor,
                "case {}: growth {:.2} below the divergence factor",
                case.id,
                outcome.series.growth_factor
            );
        }
        assert!(outcome.agrees);
    }
    let elapsed = start.elapsed();
    report(
        5,
        "sharpness correspondence",
        elapsed.as_secs() < 1800,
        &format!(
            "50 cases agree with the verdicts ({failing} diverging, {holding} bounded); {:.1?}",
            elapsed
        ),
    );
}

#[test]
fn criterion_6_gamma_counting() {
    let grid = Grid::new(1, 64, 1 << 14).unwrap();
    let family = UniformFamily::build(grid).unwrap();
    let mut detail = Vec::new();
    let mut pass = true;
    for j in [3u32, 4, 5] {
        let counts = gamma_counts(j, grid, &family).unwrap();
        let ratio = counts.meets as f64 / (2.0f64).powi(j as i32);
        pass &= (0.25..=4.0).contains(&ratio) && counts.reliable;
        detail.push(format!("j={j}: |Gamma|={} ratio {:.2}", counts.meets, ratio));
    }
    report(6, "window cell counts along shells", pass, &detail.join(", "));
}

#[test]
fn criterion_7_atom_suite() {
    let start = std::time::Instant::now();
    let grid = Grid::new(1, 32, 1 << 14).unwrap();
    let family = UniformFamily::build(grid).unwrap();
    let mut lines = Vec::new();

    // generated atoms pass their validators
    for p_str in ["1/2", "1"] {
        let p: Exponent = p_str.parse().unwrap();
        let s = Rational::from_integer(2) / p.as_rational().unwrap() - Rational::from_integer(1);
        let orders = fspace::embedding::atom_orders(s, &p, 1);
        for variant in 0..3 {
            let spec = AtomSpec {
                kind: AtomKind::SAtom,
                scale: 0,
                orders,
                s,
                p,
                q: Exponent::infinity(),
            };
            let atom = make_test_atom(&spec, grid, variant).unwrap();
            let reportv = validate_atom(&atom, &spec).unwrap();
            assert!(reportv.passed(), "plain atom p={p_str} variant {variant}: {reportv:?}");
        }
        for scale in 0..=4u32 {
            let spec = AtomSpec {
                kind: AtomKind::QAtom,
                scale,
                orders,
                s,
                p,
                q: Exponent::infinity(),
            };
            let atom = make_test_atom(&spec, grid, 0).unwrap();
            let reportv = validate_atom(&atom, &spec).unwrap();
            assert!(reportv.passed(), "cancelling atom p={p_str} scale {scale}: {reportv:?}");
        }
    }
    lines.push("all generated atoms validate".to_string());

    // scale-normalized modulation norms stay in a narrow band
    for p_str in ["1/2", "1"] {
        let p: Exponent = p_str.parse().unwrap();
        let scaling = atom_scaling_experiment(&p, &[0, 1, 2, 3, 4], grid, &family).unwrap();
        assert!(
            scaling.spread < fspace::bands::ATOM_SCALING_SPREAD,
            "p={p_str}: scaled norms spread {:.2}x",
            scaling.spread
        );
        lines.push(format!("p={p_str} scaling spread {:.2}x", scaling.spread));
    }

    // plain-atom modulation norms bounded by the recorded constant
    {
        let p: Exponent = "1".parse().unwrap();
        let s = Rational::from_integer(1);
        let orders = fspace::embedding::atom_orders(s, &p, 1);
        let params = SpaceParams::new(1, p, p, Exponent::int(2).unwrap(), Rational::new(0, 1))
            .unwrap();
        let mut max_norm = 0.0f64;
        for variant in 0..3 {
            let spec = AtomSpec {
                kind: AtomKind::SAtom,
                scale: 0,
                orders,
                s,
                p,
                q: Exponent::infinity(),
            };
            let atom = make_test_atom(&spec, grid, variant).unwrap();
            max_norm = max_norm.max(modulation_norm(&atom, &params, &family).unwrap());
        }
        assert!(max_norm < fspace::bands::ATOM_NORM_MAX);
        lines.push(format!("plain-atom norm max {max_norm:.3}"));
    }

    // multiplier and convolution ratio maxima are stable under refinement
    {
        let coarse = Grid::new(1, 32, 1 << 12).unwrap();
        let fine = Grid::new(1, 32, 1 << 13).unwrap();
        let p: Exponent = "1/2".parse().unwrap();
        let corpus = |grid: Grid| -> f64 {
            let mut max = 0.0f64;
            for (radius, coeffs) in [
                (1.0, vec![1.0]),
                (2.0, vec![1.0, 0.3]),
                (0.5, vec![1.0, 0.0, -0.4]),
                (3.0, vec![0.2, 1.0]),
            ] {
                let f = SampledFunction::sample(
                    &FunctionDescriptor::PolyBump { radius, coeffs },
                    grid,
                    Domain::Frequency,
                )
                .unwrap();
                max = max.max(multiplier_ratio(&f, &p).unwrap());
            }
            max
        };
        let m1 = corpus(coarse);
        let m2 = corpus(fine);
        let drift = (m1 - m2).abs() / m2;
        assert!(drift < fspace::bands::REFINEMENT_DRIFT, "multiplier drift {drift:.3}");

        let sweep = |grid: Grid| -> f64 {
            let mut rng = ChaCha8Rng::seed_from_u64(407);
            convolution_constant_sweep(&p, &[1.0, 2.0, 4.0, 8.0], 20, grid, &mut rng)
                .unwrap()
                .iter()
                .map(|s| s.max_constant)
                .fold(0.0, f64::max)
        };
        let c1 = sweep(coarse);
        let c2 = sweep(fine);
        let conv_drift = (c1 - c2).abs() / c2;
        assert!(conv_drift < fspace::bands::REFINEMENT_DRIFT, "convolution drift {conv_drift:.3}");
        lines.push(format!("refinement drifts {drift:.3} / {conv_drift:.3}"));
    }

    let elapsed = start.elapsed();
    report(7, "atom suite", true, &format!("{}; {:.1?}", lines.join("; "), elapsed));
}

#[test]
fn criterion_8_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_fspace");
    let dir = tempfile::tempdir().unwrap();
    let run = |out: &std::path::Path, args: &[&str]| {
        let status = std::process::Command::new(bin)
            .args(args)
            .arg("--out")
            .arg(out)
            .status()
            .expect("binary runs");
        assert!(status.success(), "fspace {args:?} failed");
        std::fs::read(out).unwrap()
    };

    // seeded checks run twice
    let checks_args = [
        "checks",
        "--suite",
        "partition,localization",
        "--seed",
        "7",
        "--extent",
        "32",
        "--points",
        "4096",
    ];
    let a = run(&dir.path().join("checks-a.csv"), &checks_args);
    let b = run(&dir.path().join("checks-b.csv"), &checks_args);
    let checks_identical = a == b;

    // witness run twice
    let witness_args = [
        "witness",
        "--family",
        "GN",
        "--coeffs",
        "spike",
        "--point",
        "n=1,p=1,q=4,r=2,s=-1",
        "--schedule",
        "K=4,8",
    ];
    let c = run(&dir.path().join("witness-a.csv"), &witness_args);
    let d = run(&dir.path().join("witness-b.csv"), &witness_args);
    let witness_identical = c == d;

    // region scan twice
    let region_args = [
        "region",
        "--theorem",
        "1.1",
        "--n",
        "1",
        "--p",
        "1/2",
        "--r",
        "2",
        "--axes",
        "q:[1/4..2]:1/4,s:[-1..1]:1/2",
    ];
    let e = run(&dir.path().join("region-a.csv"), &region_args);
    let f = run(&dir.path().join("region-b.csv"), &region_args);
    let region_identical = e == f;

    report(
        8,
        "cli determinism",
        checks_identical && witness_identical && region_identical,
        &format!(
            "checks {} bytes, witness {} bytes, region {} bytes, all byte-identical on re-run",
            a.len(),
            c.len(),
            e.len()
        ),
    );
}
