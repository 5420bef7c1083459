//! Thin command-line front end; all pipelines live in the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fspace::cli::{
    self, load_config_table, parse_axes, parse_point, parse_schedule, table_get, AtlasConfig,
    ChecksConfig, CoeffArg, Command as RunCommand, FamilyArg, GridSpec, NormsConfig, RegionConfig,
    RunConfig, WitnessConfig,
};
use fspace::embedding::TheoremId;
use fspace::params::SpaceParams;
use fspace::witnesses::Direction;

#[derive(Parser)]
#[command(
    name = "fspace",
    version,
    about = "Frequency-decomposition norms, embedding regions and sharpness experiments"
)]
struct Cli {
    /// TOML file with default values for missing options (flat key = value).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized suites; fixed seed means byte-identical output.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output CSV path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Tabulate an embedding condition over a two-axis rational grid.
    Region(RegionArgs),
    /// Evaluate the norm menu of a named test function on a grid.
    Norms(NormsArgs),
    /// Run a norm-ratio growth experiment for one extremal family.
    Witness(WitnessArgs),
    /// Run the property check suites (partition, reconstruction, ...).
    Checks(ChecksArgs),
    /// Emit region tables for several embedding directions at once.
    Atlas(AtlasArgs),
}

#[derive(Args)]
struct RegionArgs {
    /// Embedding direction: m-into-f (1.1), f-into-m (1.2), m-into-h (A),
    /// h-into-m (B), m-into-b, b-into-m.
    #[arg(long)]
    theorem: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    s: Option<String>,
    /// Two scan axes, e.g. "q:[1/8..4]:1/8,s:[-1..3]:1/8".
    #[arg(long)]
    axes: Option<String>,
}

#[derive(Args)]
struct NormsArgs {
    /// Test function: zero | gaussian | spike | bump:R | polybump:R:c0,c1,...
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    extent: Option<String>,
    #[arg(long)]
    points: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    s: Option<String>,
    /// Also evaluate the transform-based modulation norm (slow).
    #[arg(long)]
    with_stft: bool,
}

#[derive(Args)]
struct WitnessArgs {
    /// Extremal family: GN (lattice bumps), FN (shell train), H (ladder).
    #[arg(long)]
    family: Option<String>,
    /// Coefficient shape: auto | indicator | spike.
    #[arg(long)]
    coeffs: Option<String>,
    /// Embedding direction: mf (default) or fm.
    #[arg(long)]
    direction: Option<String>,
    /// Parameter point, e.g. "n=1,p=1/2,q=2,r=2,s=1".
    #[arg(long)]
    point: Option<String>,
    /// Growth schedule, e.g. "K=4,8,16,32", "J=2,3,4,5" or "N=8,16,32".
    #[arg(long)]
    schedule: Option<String>,
    /// Growth factor that classifies a monotone series as diverging.
    #[arg(long)]
    divergence_factor: Option<f64>,
}

#[derive(Args)]
struct ChecksArgs {
    /// Comma-separated suites: partition,reconstruction,localization.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    extent: Option<String>,
    #[arg(long)]
    points: Option<String>,
}

#[derive(Args)]
struct AtlasArgs {
    /// Comma-separated directions; "all" covers both main inclusions plus
    /// the local Hardy comparisons.
    #[arg(long)]
    theorems: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    r: Option<String>,
}

struct Resolver {
    table: toml::Table,
}

impl Resolver {
    fn get(&self, cli_value: Option<String>, key: &str) -> Option<String> {
        cli_value.or_else(|| table_get(&self.table, key))
    }

    fn require(&self, cli_value: Option<String>, key: &str) -> fspace::Result<String> {
        self.get(cli_value, key).ok_or_else(|| {
            fspace::Error::InvalidConfig {
                field: key.to_string(),
                message: "missing (pass --{key} or set it in the config file)".replace("{key}", key),
            }
        })
    }

    fn or_default(&self, cli_value: Option<String>, key: &str, default: &str) -> String {
        self.get(cli_value, key).unwrap_or_else(|| default.to_string())
    }
}

fn grid_spec(
    resolver: &Resolver,
    n: Option<String>,
    extent: Option<String>,
    points: Option<String>,
) -> fspace::Result<GridSpec> {
    let parse_usize = |field: &str, v: String| {
        v.trim().parse::<usize>().map_err(|_| fspace::Error::InvalidConfig {
            field: field.into(),
            message: format!("not an integer: {v:?}"),
        })
    };
    let n = parse_usize("n", resolver.or_default(n, "n", "1"))?;
    let extent = parse_usize("extent", resolver.or_default(extent, "extent", "64"))? as u32;
    let points = parse_usize("points", resolver.or_default(points, "points", "16384"))?;
    Ok(GridSpec {
        n_dim: n,
        extent,
        points,
    })
}

fn build_run_config(cli: Cli) -> fspace::Result<RunConfig> {
    let table = match &cli.config {
        Some(path) => load_config_table(path)?,
        None => toml::Table::new(),
    };
    let resolver = Resolver { table };
    let seed = match resolver.get(cli.seed.map(|s| s.to_string()), "seed") {
        Some(v) => v.trim().parse::<u64>().map_err(|_| fspace::Error::InvalidConfig {
            field: "seed".into(),
            message: format!("not an integer: {v:?}"),
        })?,
        None => 0,
    };
    let out_str = resolver.get(
        cli.out.as_ref().map(|p| p.display().to_string()),
        "out",
    );

    let (command, default_out) = match cli.command {
        CliCommand::Region(args) => {
            let theorem: TheoremId = resolver.require(args.theorem, "theorem")?.parse()?;
            let base = SpaceParams::parse_fields(
                &resolver.or_default(args.n, "n", "1"),
                &resolver.or_default(args.p, "p", "1"),
                &resolver.or_default(args.q, "q", "1"),
                &resolver.or_default(args.r, "r", "2"),
                &resolver.or_default(args.s, "s", "0"),
            )?;
            let (x_axis, y_axis) = parse_axes(&resolver.require(args.axes, "axes")?)?;
            (
                RunCommand::Region(RegionConfig {
                    theorem,
                    base,
                    x_axis,
                    y_axis,
                }),
                "region.csv",
            )
        }
        CliCommand::Norms(args) => {
            let function = resolver
                .or_default(args.function, "function", "gaussian")
                .parse()?;
            let grid = grid_spec(&resolver, args.n.clone(), args.extent, args.points)?;
            let params = SpaceParams::parse_fields(
                &grid.n_dim.to_string(),
                &resolver.or_default(args.p, "p", "1"),
                &resolver.or_default(args.q, "q", "2"),
                &resolver.or_default(args.r, "r", "2"),
                &resolver.or_default(args.s, "s", "0"),
            )?;
            (
                RunCommand::Norms(NormsConfig {
                    function,
                    grid,
                    params,
                    with_stft: args.with_stft,
                }),
                "norms.csv",
            )
        }
        CliCommand::Witness(args) => {
            let family: FamilyArg = resolver.require(args.family, "family")?.parse()?;
            let coeffs: CoeffArg = resolver
                .or_default(args.coeffs, "coeffs", "auto")
                .parse()?;
            let direction = match resolver
                .or_default(args.direction, "direction", "mf")
                .to_ascii_lowercase()
                .as_str()
            {
                "mf" | "m-into-f" | "1.1" => Direction::ModulationIntoTriebel,
                "fm" | "f-into-m" | "1.2" => Direction::TriebelIntoModulation,
                other => {
                    return Err(fspace::Error::InvalidConfig {
                        field: "direction".into(),
                        message: format!("unknown direction {other:?}"),
                    })
                }
            };
            let params = parse_point(&resolver.require(args.point, "point")?)?;
            let (schedule_var, schedule) =
                parse_schedule(&resolver.require(args.schedule, "schedule")?)?;
            let divergence_factor = match resolver.get(
                args.divergence_factor.map(|v| v.to_string()),
                "divergence_factor",
            ) {
                Some(v) => v.trim().parse::<f64>().map_err(|_| {
                    fspace::Error::InvalidConfig {
                        field: "divergence_factor".into(),
                        message: format!("not a number: {v:?}"),
                    }
                })?,
                None => fspace::bands::DIVERGENCE_FACTOR,
            };
            (
                RunCommand::Witness(WitnessConfig {
                    family,
                    coeffs,
                    direction,
                    params,
                    schedule_var,
                    schedule,
                    divergence_factor,
                }),
                "witness.csv",
            )
        }
        CliCommand::Checks(args) => {
            let suites = resolver
                .or_default(args.suite, "suite", "partition,reconstruction,localization")
                .split(',')
                .map(|s| s.parse())
                .collect::<fspace::Result<Vec<_>>>()?;
            let grid = grid_spec(&resolver, args.n, args.extent, args.points)?;
            (RunCommand::Checks(ChecksConfig { suites, grid }), "checks.csv")
        }
        CliCommand::Atlas(args) => {
            let theorems_raw = resolver.or_default(args.theorems, "theorems", "all");
            let theorems: Vec<TheoremId> = if theorems_raw.trim() == "all" {
                vec![
                    TheoremId::ModulationIntoTriebel,
                    TheoremId::TriebelIntoModulation,
                    TheoremId::ModulationIntoHardy,
                    TheoremId::HardyIntoModulation,
                ]
            } else {
                theorems_raw
                    .split(',')
                    .map(|t| t.parse())
                    .collect::<fspace::Result<Vec<_>>>()?
            };
            let base = SpaceParams::parse_fields(
                &resolver.or_default(args.n, "n", "1"),
                &resolver.or_default(args.p, "p", "1/2"),
                "1",
                &resolver.or_default(args.r, "r", "2"),
                "0",
            )?;
            (
                RunCommand::Atlas(AtlasConfig { theorems, base }),
                "atlas.csv",
            )
        }
    };
    let out = PathBuf::from(out_str.unwrap_or_else(|| default_out.to_string()));
    Ok(RunConfig { command, seed, out })
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("FSPACE_THREADS") {
        if let Ok(n) = threads.trim().parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        } else {
            eprintln!("error: FSPACE_THREADS must be an integer, got {threads:?}");
            return ExitCode::from(2);
        }
    }
    let cli = Cli::parse();
    let config = match build_run_config(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match cli::run(&config) {
        Ok(report) => {
            print!("{}", report.render());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
