//! Command-line interface: angular convexity, certified Minkowski sums,
//! membership queries, separation witnesses and SVG figures over polygon
//! document files.
//!
//! Exit codes: 0 success, 2 precondition violation, 3 parse/input error,
//! 4 internal inconsistency. Errors print one machine-parsable line on
//! stderr: `error=<kind> message="..."`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use aconvex::geom::aco_polygon;
use aconvex::io::{fmt_radians, fmt_sig, parse_polygon, serialize_polygon};
use aconvex::minkowski::{certify, member, minkowski_sum_seeded};
use aconvex::separation::{region_disjoint, separate};
use aconvex::svg::Scene;
use aconvex::{Error, Polygon, Vec2};

#[derive(Parser)]
#[command(
    name = "aconvex",
    version,
    about = "Angular convexity and hole-free Minkowski sums of simple polygons"
)]
struct Cli {
    /// Seed for randomized remediation (perturbation retries).
    #[arg(long, global = true, env = "ACONVEX_SEED", default_value_t = 0)]
    seed: u64,

    /// Display angles in degrees (values only; keys are unchanged).
    #[arg(long, global = true)]
    degrees: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Angular convexity of each polygon, with its witness arc.
    Aco {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Hole-freeness certificate for a pair of polygons.
    Certify { a: PathBuf, b: PathBuf },
    /// Certified Minkowski sum, written as a polygon document.
    Sum {
        a: PathBuf,
        b: PathBuf,
        /// Output polygon file.
        #[arg(short, long)]
        output: PathBuf,
        /// Name recorded in the output document.
        #[arg(long)]
        name: Option<String>,
    },
    /// Is the point (X, Y) inside the sum A + B?
    Member {
        a: PathBuf,
        b: PathBuf,
        #[arg(allow_negative_numbers = true)]
        x: f64,
        #[arg(allow_negative_numbers = true)]
        y: f64,
    },
    /// Separation witness with apex at the exterior point (X, Y).
    Separate {
        a: PathBuf,
        #[arg(allow_negative_numbers = true)]
        x: f64,
        #[arg(allow_negative_numbers = true)]
        y: f64,
    },
    /// Draw polygons as an SVG figure.
    Render {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Output SVG file.
        #[arg(short, long)]
        output: PathBuf,
        /// Add a slope diagram per polygon.
        #[arg(long)]
        slope: bool,
        /// Also draw the separation witness for this exterior point
        /// (relative to the first polygon).
        #[arg(long, value_names = ["X", "Y"], num_args = 2, allow_negative_numbers = true)]
        witness: Option<Vec<f64>>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let degrees = cli.degrees;
    let seed = cli.seed;
    match run(cli.cmd, seed, degrees) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error={} message={:?}", error_kind(&e), e.to_string());
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cmd: Cmd, seed: u64, degrees: bool) -> Result<(), Error> {
    let angle = |x: f64| -> String {
        if degrees {
            fmt_sig(x.to_degrees(), 12)
        } else {
            fmt_radians(x)
        }
    };
    match cmd {
        Cmd::Aco { files } => {
            for file in files {
                let (name, poly) = load(&file)?;
                let report = aco_polygon(&poly);
                println!(
                    "file={} name={} n={} aco={} witness_start={} witness_end={}",
                    file.display(),
                    name,
                    poly.num_vertices(),
                    angle(report.value),
                    report.witness_start,
                    report.witness_end,
                );
            }
        }
        Cmd::Certify { a, b } => {
            let (_, ka) = load(&a)?;
            let (_, kb) = load(&b)?;
            let r = certify(&ka, &kb);
            println!(
                "aco_k={} aco_l={} certified={} aco_lower_bound={}",
                angle(r.aco_k),
                angle(r.aco_l),
                r.certified,
                angle(r.aco_lower_bound),
            );
        }
        Cmd::Sum { a, b, output, name } => {
            let (name_a, ka) = load(&a)?;
            let (name_b, kb) = load(&b)?;
            let sum = minkowski_sum_seeded(&ka, &kb, seed)?;
            let out_name = name.unwrap_or_else(|| format!("{name_a}+{name_b}"));
            fs::write(&output, serialize_polygon(&sum.polygon, &out_name))
                .map_err(|e| io_error(&output, &e))?;
            let r = sum.certificate;
            println!(
                "certified={} aco_k={} aco_l={} aco_lower_bound={} sum_vertices={} sum_aco={} output={}",
                r.certified,
                angle(r.aco_k),
                angle(r.aco_l),
                angle(r.aco_lower_bound),
                sum.polygon.num_vertices(),
                angle(aco_polygon(&sum.polygon).value),
                output.display(),
            );
        }
        Cmd::Member { a, b, x, y } => {
            let (_, ka) = load(&a)?;
            let (_, kb) = load(&b)?;
            println!("member={}", member(&ka, &kb, Vec2::new(x, y)));
        }
        Cmd::Separate { a, x, y } => {
            let (_, k) = load(&a)?;
            let w = separate(&k, Vec2::new(x, y))?;
            let c = |v: f64| if v == 0.0 { 0.0 } else { v }; // drop negative zero
            println!(
                "apex_x={} apex_y={} ray1_x={} ray1_y={} ray2_x={} ray2_y={} measure={} disjoint={}",
                c(w.apex.x),
                c(w.apex.y),
                c(w.ray1_dir.x),
                c(w.ray1_dir.y),
                c(w.ray2_dir.x),
                c(w.ray2_dir.y),
                angle(w.measure),
                region_disjoint(&w, &k),
            );
        }
        Cmd::Render {
            files,
            output,
            slope,
            witness,
        } => {
            let mut scene = Scene::new();
            let mut first: Option<Polygon> = None;
            for file in &files {
                let (name, poly) = load(file)?;
                scene.add_polygon(&name, &poly);
                first.get_or_insert(poly);
            }
            if let (Some(xy), Some(k)) = (witness, first.as_ref()) {
                let w = separate(k, Vec2::new(xy[0], xy[1]))?;
                scene.add_region(&w);
            }
            if slope {
                scene.with_slope_diagrams();
            }
            fs::write(&output, scene.render()).map_err(|e| io_error(&output, &e))?;
            println!("output={} polygons={}", output.display(), files.len());
        }
    }
    Ok(())
}

fn load(path: &Path) -> Result<(String, Polygon), Error> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, &e))?;
    let (name, poly) = parse_polygon(&text)?;
    let name = if name.is_empty() {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "polygon".into())
    } else {
        name
    };
    Ok((name, poly))
}

fn io_error(path: &Path, e: &std::io::Error) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        message: format!("{}: {e}", path.display()),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ZeroVector => "ZeroVector",
        Error::OppositeVectors => "OppositeVectors",
        Error::NotSimple(_) => "NotSimple",
        Error::NotCcw => "NotCcw",
        Error::DegenerateArea => "DegenerateArea",
        Error::InvalidPolyline(_) => "InvalidPolyline",
        Error::StartsNotAligned(_) => "StartsNotAligned",
        Error::RotationsDiffer(_, _) => "RotationsDiffer",
        Error::AcoPreconditionViolated(_) => "AcoPreconditionViolated",
        Error::TagMismatch => "TagMismatch",
        Error::GeneralPositionFailed(_) => "GeneralPositionFailed",
        Error::NotGeneralPosition => "NotGeneralPosition",
        Error::LoopRotationTooNegative(_) => "LoopRotationTooNegative",
        Error::PointInsidePolygon => "PointInsidePolygon",
        Error::SearchExhausted(_) => "SearchExhausted",
        Error::NotConvex(_) => "NotConvex",
        Error::InternalInconsistency(_) => "InternalInconsistency",
        Error::Parse { .. } => "ParseError",
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 3,
        Error::InternalInconsistency(_)
        | Error::SearchExhausted(_)
        | Error::GeneralPositionFailed(_) => 4,
        _ => 2,
    }
}
