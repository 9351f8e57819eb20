use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use matchpack::io::{load_packing, load_point_set, packing_to_json, point_set_to_json, LoadOptions, PositionCheck};
use matchpack::matching::verify_packing;
use matchpack::oracle::{self, OracleConfig, OracleReport};
use matchpack::packers::{self, Method};
use matchpack::pointgen::{self, PointSet};
use matchpack::render::render_svg;
use matchpack::{Error, Packing, Result};

#[derive(Parser)]
#[command(name = "matchpack", version, about = "Edge-disjoint plane perfect matchings on planar point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point set.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        /// Number of points (number of triangles for nested-triangles).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a packing of plane perfect matchings.
    Pack {
        #[command(flatten)]
        input: PointsArg,
        #[arg(long, value_enum, default_value_t = PackMethod::Auto)]
        method: PackMethod,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a packing against a point set.
    Verify {
        #[command(flatten)]
        input: PointsArg,
        #[arg(long)]
        packing: PathBuf,
        /// Require every matching to be plane.
        #[arg(long)]
        plane: bool,
        /// Forbid crossings between edges of different matchings.
        #[arg(long)]
        noncrossing: bool,
    },
    /// Number of perfect matchings of the complete graph on n vertices.
    Count {
        #[arg(long)]
        n: usize,
    },
    /// Exact search: plane matching count, maximum packings, persistency.
    Oracle {
        #[command(flatten)]
        input: PointsArg,
        #[arg(long, value_enum)]
        kind: OracleKindArg,
        /// Node budget; unlocks the extended size caps.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Draw a point set and optionally a packing as SVG.
    Render {
        #[command(flatten)]
        input: PointsArg,
        #[arg(long)]
        packing: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PointsArg {
    /// Point set JSON file.
    #[arg(long)]
    points: PathBuf,
    /// Collinearity check on load.
    #[arg(long, value_enum, default_value_t = CheckArg::Full)]
    position_check: CheckArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Full,
    Sampled,
    Skip,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Convex,
    Wheel,
    WheelVariation,
    Random,
    NestedTriangles,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PackMethod {
    Convex,
    Wheel,
    Three,
    Logn,
    Pow2,
    Blocks,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKindArg {
    Count,
    MaxPacking,
    MaxNoncrossing,
    Pmp,
}

impl PointsArg {
    fn load(&self) -> Result<PointSet> {
        let position_check = match self.position_check {
            CheckArg::Full => PositionCheck::Full,
            CheckArg::Sampled => PositionCheck::Sampled(100_000),
            CheckArg::Skip => PositionCheck::Skip,
        };
        load_point_set(&self.points, &LoadOptions { require_even: true, position_check })
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn generate(family: Family, n: usize, seed: u64) -> Result<PointSet> {
    match family {
        Family::Convex => pointgen::gen_convex(n, seed),
        Family::Wheel => pointgen::gen_regular_wheel(n),
        Family::WheelVariation => pointgen::gen_wheel_variation(n),
        Family::Random => pointgen::gen_random(n, seed),
        Family::NestedTriangles => pointgen::gen_nested_triangles(n),
    }
}

fn pack(set: &PointSet, method: PackMethod) -> Result<(Packing, &'static str)> {
    let pts = set.points();
    let single = |p: Result<Packing>, m: Method| p.map(|p| (p, m.name()));
    match method {
        PackMethod::Convex => single(packers::pack_convex(pts), Method::Convex),
        PackMethod::Wheel => single(packers::pack_wheel(pts), Method::Wheel),
        PackMethod::Three => single(packers::pack_three(pts), Method::Three),
        PackMethod::Logn => single(packers::pack_logn(pts), Method::Logn),
        PackMethod::Pow2 => single(packers::pack_power_of_two(pts), Method::PowerOfTwo),
        PackMethod::Blocks => single(packers::pack_blocks_of_three(pts), Method::Blocks),
        PackMethod::Auto => packers::pack_auto(pts).map(|(p, m)| (p, m.name())),
    }
}

fn witness_path(points: &Path) -> PathBuf {
    let mut name = points.as_os_str().to_owned();
    name.push(".witness.json");
    PathBuf::from(name)
}

fn run_oracle(set: &PointSet, kind: OracleKindArg, cfg: &OracleConfig) -> Result<OracleReport> {
    let pts = set.points();
    match kind {
        OracleKindArg::Count => oracle::count_plane_matchings(pts, cfg),
        OracleKindArg::MaxPacking => oracle::max_packing(pts, cfg),
        OracleKindArg::MaxNoncrossing => oracle::max_noncrossing_packing(pts, cfg),
        OracleKindArg::Pmp => oracle::pmp_exact(pts, cfg),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate { family, n, seed, out } => {
            let set = generate(family, n, seed)?;
            emit(out.as_deref(), &point_set_to_json(&set))?;
        }
        Command::Pack { input, method, out } => {
            let set = input.load()?;
            let (packing, used) = pack(&set, method)?;
            let json = packing_to_json(set.len(), &packing);
            match out {
                Some(path) => {
                    fs::write(&path, json)?;
                    println!("{} matchings ({used})", packing.len());
                }
                None => {
                    print!("{json}");
                    eprintln!("{} matchings ({used})", packing.len());
                }
            }
        }
        Command::Verify { input, packing, plane, noncrossing } => {
            let set = input.load()?;
            let packing = load_packing(&packing, Some(set.len()))?;
            let report = verify_packing(set.points(), &packing, plane, noncrossing);
            if report.is_valid() {
                println!("valid: {} matchings", report.size);
            } else {
                println!("invalid: {} violations", report.violations.len());
                for v in &report.violations {
                    println!("  {v}");
                }
                return Ok(ExitCode::from(1));
            }
        }
        Command::Count { n } => {
            println!("{}", oracle::count_abstract_matchings(n)?);
        }
        Command::Oracle { input, kind, budget } => {
            let set = input.load()?;
            let cfg = match budget {
                Some(b) => OracleConfig::with_budget(b),
                None => OracleConfig::from_env()?,
            };
            let report = run_oracle(&set, kind, &cfg)?;
            let mut shown = serde_json::to_value(&report).expect("report serialises");
            if let Some(w) = &report.witness {
                let path = witness_path(&input.points);
                fs::write(&path, packing_to_json(set.len(), w))?;
                shown["witness"] = serde_json::Value::String(path.display().to_string());
            }
            println!("{}", serde_json::to_string_pretty(&shown).expect("report serialises"));
        }
        Command::Render { input, packing, out } => {
            let set = input.load()?;
            let packing = packing.map(|p| load_packing(&p, Some(set.len()))).transpose()?;
            emit(out.as_deref(), &render_svg(set.points(), packing.as_ref()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Internal(_)) {
                eprintln!("this is a bug");
            }
            ExitCode::from(2)
        }
    }
}
