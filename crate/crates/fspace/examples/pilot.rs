//! Scratch pilot for calibrating band constants (dev tool).

use fspace::decomposition::{DyadicFamily, UniformFamily};
use fspace::norms::{
    dyadic_seq_norm, modulation_norm, triebel_lizorkin_norm, uniform_seq_norm, DyadicCoeffs,
    UniformCoeffs,
};
use fspace::params::{LpParams, Rational, SpaceParams};
use fspace::witnesses::{
    build_lattice_bumps, build_shell_train, lattice_base_bump, run_sharpness_case,
    shell_annulus_function, Direction, RatioConfig, SharpnessCase, WitnessFamily,
};
use fspace::Grid;

fn sp(p: &str, q: &str, r: &str, s: &str) -> SpaceParams {
    SpaceParams::parse_fields("1", p, q, r, s).unwrap()
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "indicator".into());
    match which.as_str() {
        "indicator" => pilot_indicator(),
        "bumpwidth" => pilot_bump_width(),
        "bands" => pilot_bands(),
        "shell" => pilot_shell(),
        "ortho" => pilot_orthogonality(),
        "grid50" => pilot_grid50(),
        _ => eprintln!("unknown pilot {which}"),
    }
}

fn pilot_indicator() {
    let config = RatioConfig::default();
    for (label, params) in [
        ("p=1/2,q=2,r=2,s=1", sp("1/2", "2", "2", "1")),
        ("p=1/2,q=4,r=2,s=1/2", sp("1/2", "4", "2", "1/2")),
        ("p=1/3,q=2,r=1,s=1", sp("1/3", "2", "1", "1")),
    ] {
        let case = SharpnessCase {
            id: 0,
            direction: Direction::ModulationIntoTriebel,
            family: WitnessFamily::LatticeIndicator,
            params,
            schedule: vec![2, 4, 8, 16],
        };
        match run_sharpness_case(&case, &config) {
            Ok(out) => {
                println!(
                    "{label}: predicted {:?}\n  actual {:?} growth {:.3} monotone {}",
                    out.predicted, out.series.ratios, out.series.growth_factor, out.series.monotone
                );
            }
            Err(e) => println!("{label}: error {e}"),
        }
    }
}

fn pilot_bump_width() {
    let grid = Grid::new(1, 512, 1 << 14).unwrap();
    let g = lattice_base_bump(grid, 0.125).unwrap();
    let peak = g.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    for x in [2.0f64, 4.0, 8.0, 12.0, 16.0, 24.0, 32.0, 48.0, 64.0] {
        let idx = ((x + 256.0) / grid.spacing()).round() as usize;
        println!("|g({x})|/peak = {:.3e}", g.values()[idx].norm() / peak);
    }
    let p_half = LpParams::plain("1/2".parse().unwrap());
    let p_one = LpParams::plain("1".parse().unwrap());
    println!("||g||_1/2 = {:.4}, ||g||_1 = {:.4}", g.lp_norm(&p_half), g.lp_norm(&p_one));
}

fn pilot_bands() {
    // lattice family bands across N for a fixed indicator block
    let grid = Grid::new(1, 512, 1 << 14).unwrap();
    let uf = UniformFamily::build(grid).unwrap();
    let df = DyadicFamily::build(grid).unwrap();
    let coeffs = UniformCoeffs::indicator_block(4);
    let base = lattice_base_bump(grid, 0.125).unwrap();
    for params in [sp("1", "1", "1", "0"), sp("1/2", "2", "2", "1"), sp("1", "2", "1/2", "1/2")] {
        let g_lp = base.lp_norm(&LpParams::plain(params.p));
        let tl_params = SpaceParams { s: Rational::new(0, 1), ..params };
        for n in [8u32, 16, 32] {
            let g_n = build_lattice_bumps(&coeffs, n, 0.125, grid).unwrap();
            let m = modulation_norm(&g_n, &params, &uf).unwrap();
            let t = triebel_lizorkin_norm(&g_n, &tl_params, &df).unwrap();
            let seq_m = uniform_seq_norm(&coeffs, &params.q, params.s);
            let seq_f = uniform_seq_norm(&coeffs, &params.p, Rational::new(0, 1));
            println!(
                "params {params} N={n}: M-ratio {:.4} F-ratio {:.4}",
                m / (seq_m * g_lp),
                t / (seq_f * g_lp)
            );
        }
    }
    // localization normalizer values
    for p in ["1/2", "1"] {
        let pe = p.parse().unwrap();
        println!("||F^-1 sigma_0||_{p} = {:.4}", uf.base_inverse_lp(&pe));
    }
}

fn pilot_shell() {
    // shell train bands: M-side at N = 0 on a small grid, F-side across N
    let grid = Grid::new(1, 256, 1 << 15).unwrap();
    let uf = UniformFamily::build(grid).unwrap();
    let df = DyadicFamily::build(grid).unwrap();
    let coeffs = DyadicCoeffs::indicator_range(2, 5);
    let h2 = shell_annulus_function(grid, 0).unwrap();
    for params in [sp("1", "2", "2", "0"), sp("1/2", "1", "2", "1/2"), sp("2/3", "2", "1", "0")] {
        let n_over_q = params.q.reciprocal();
        let m_weight = params.s + n_over_q;
        let f_weight = Rational::from_integer(1) - params.p.reciprocal();
        let sigma_lp = uf.base_inverse_lp(&params.p);
        let h_lp = h2.lp_norm(&LpParams::plain(params.p));
        let tl_params = SpaceParams { s: Rational::new(0, 1), ..params };
        for n in [4u32, 8, 16] {
            let f_n = build_shell_train(&coeffs, n, 2, grid).unwrap();
            let m = modulation_norm(&f_n, &params, &uf).unwrap();
            let t = triebel_lizorkin_norm(&f_n, &tl_params, &df).unwrap();
            let seq_m = dyadic_seq_norm(&coeffs, &params.q, m_weight);
            let seq_f = dyadic_seq_norm(&coeffs, &params.p, f_weight);
            println!(
                "params {params} N={n}: M-ratio(sigma) {:.4} F-ratio(h) {:.4}",
                m / (seq_m * sigma_lp),
                t / (seq_f * h_lp)
            );
        }
    }
}

fn pilot_orthogonality() {
    // almost-orthogonality gap at K = 4 across separations
    let grid = Grid::new(1, 512, 1 << 14).unwrap();
    let df = DyadicFamily::build(grid).unwrap();
    let coeffs = UniformCoeffs::indicator_block(4);
    for p_str in ["1/2", "1"] {
        let params = sp(p_str, "2", "2", "0");
        let p = params.p.to_f64();
        // per-piece F norms
        let mut pieces = 0.0;
        for k in -4i64..=4 {
            let single = build_lattice_bumps(&UniformCoeffs::spike([k, 0], 1), 0, 0.125, grid).unwrap();
            pieces += triebel_lizorkin_norm(&single, &params, &df).unwrap().powf(p);
        }
        for n in [8u32, 16, 32] {
            let g_n = build_lattice_bumps(&coeffs, n, 0.125, grid).unwrap();
            let whole = triebel_lizorkin_norm(&g_n, &params, &df).unwrap().powf(p);
            println!("p={p_str} N={n}: gap {:.4}", (whole - pieces).abs() / pieces);
        }
    }
}

fn pilot_grid50() {
    use fspace::witnesses::sharpness_grid;
    let config = RatioConfig::default();
    for case in sharpness_grid() {
        let t0 = std::time::Instant::now();
        let out = run_sharpness_case(&case, &config).unwrap();
        println!(
            "case {:2} {:9} {:17} {}: holds={} class={:?} growth={:8.2} pred={:8.2} agree={} [{:.2?}]",
            case.id,
            case.direction.label(),
            case.family.label(),
            case.params,
            out.verdict.holds,
            out.series.classification,
            out.series.growth_factor,
            out.predicted_growth,
            out.agrees,
            t0.elapsed(),
        );
    }
}
