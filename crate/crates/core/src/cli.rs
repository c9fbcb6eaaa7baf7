//! Command-line front end.
//!
//! Every command produces a flat list of [`OutputRecord`]s, printed as an
//! aligned table, a JSON array or CSV. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | success |
//! | 1    | computation or I/O failure |
//! | 2    | two routes for the same quantity disagree by more than `10·tol` |
//! | 64   | usage error or invalid argument value |

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::intrinsic::{
    coxeter_like_i_estimate, curvature_integral, edge_integral, mean_curvature_total, mean_width,
    oloid_intrinsic_volumes, surface_area, volume, EdgeRoute, Estimate, Route,
};
use crate::kinematic::{
    ball_intrinsic_volumes, intersection_expectations, kinematic_functionals, mc_ball_ball_expectations,
};
use crate::mesh::TriMesh;
use crate::montecarlo::McEstimate;
use crate::steiner::parallel_body;
use crate::support::{mean_width_direct, mean_width_montecarlo};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_DISAGREEMENT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "oloid", version, about = "Integral geometry of the oloid")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pair {
    BallBall,
    OloidBall,
    OloidOloid,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Intrinsic quantities of the oloid by every available route.
    Constants {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        radius: f64,
        #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also estimate the mean width by Monte Carlo with this many directions.
        #[arg(long)]
        mc_samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Mean curvature integral, surface area and volume of a parallel body.
    Parallel {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        radius: f64,
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Kinematic functionals and intersection expectations for a body pair.
    Kinematic {
        #[arg(long, value_enum)]
        pair: Pair,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        radius: f64,
        /// Monte Carlo check of the expectations (ball-ball only).
        #[arg(long)]
        mc_samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write a triangle mesh of the unit oloid as OBJ.
    Mesh {
        #[arg(long)]
        resolution: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// One output line.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub quantity: &'static str,
    pub route: &'static str,
    pub value: f64,
    pub err_est: Option<f64>,
    pub units_power_of_r: i32,
}

impl OutputRecord {
    fn new(quantity: &'static str, route: &'static str, value: f64, err_est: Option<f64>, power: i32) -> Self {
        OutputRecord { quantity, route, value, err_est, units_power_of_r: power }
    }

    /// Record for `e` (computed at unit radius) scaled to radius `r`.
    fn scaled(quantity: &'static str, route: &'static str, e: Estimate, r: f64, power: i32) -> Self {
        let s = r.powi(power);
        OutputRecord::new(quantity, route, e.value * s, e.err_est.map(|x| x * s), power)
    }
}

/// A failed command: exit code and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<crate::error::DomainError> for Failure {
    fn from(e: crate::error::DomainError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_FAILURE, message: e.to_string() }
    }
}

struct Outcome {
    records: Vec<OutputRecord>,
    format: Format,
    disagreements: Vec<String>,
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match execute(cli.command) {
        Ok(outcome) => outcome,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            return f.code;
        }
    };
    if let Err(e) = write_records(&outcome.records, outcome.format, out) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_FAILURE;
    }
    if outcome.disagreements.is_empty() {
        EXIT_OK
    } else {
        for d in &outcome.disagreements {
            let _ = writeln!(err, "route disagreement: {d}");
        }
        EXIT_DISAGREEMENT
    }
}

fn positive(name: &str, x: f64) -> Result<f64, Failure> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Failure::usage(format!("--{name} must be positive and finite (got {x})")))
    }
}

fn execute(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Constants { radius, tol, format, mc_samples, seed } => {
            let r = positive("radius", radius)?;
            let tol = positive("tol", tol)?;
            let records = constants(r, tol, mc_samples, seed)?;
            let disagreements = disagreements(&records, tol);
            Ok(Outcome { records, format, disagreements })
        }
        Command::Parallel { radius, rho, format } => {
            let r = positive("radius", radius)?;
            if !(rho >= 0.0 && rho.is_finite()) {
                return Err(Failure::usage(format!("--rho must be non-negative and finite (got {rho})")));
            }
            let p = parallel_body(r, rho)?;
            let records = vec![
                OutputRecord::new("parallel_M", "closed", p.m, None, 1),
                OutputRecord::new("parallel_S", "closed", p.s, None, 2),
                OutputRecord::new("parallel_V", "closed", p.v, None, 3),
            ];
            Ok(Outcome { records, format, disagreements: Vec::new() })
        }
        Command::Kinematic { pair, radius, mc_samples, seed, format } => {
            let r = positive("radius", radius)?;
            let records = kinematic(pair, r, mc_samples, seed)?;
            Ok(Outcome { records, format, disagreements: Vec::new() })
        }
        Command::Mesh { resolution, out, format } => {
            if resolution < 2 {
                return Err(Failure::usage(format!("--resolution must be at least 2 (got {resolution})")));
            }
            let records = mesh(resolution, &out)?;
            Ok(Outcome { records, format, disagreements: Vec::new() })
        }
    }
}

fn constants(r: f64, tol: f64, mc_samples: Option<usize>, seed: u64) -> Result<Vec<OutputRecord>, Failure> {
    let quad = Route::Quadrature { tol };
    let mut out = vec![
        OutputRecord::scaled("surface_area", "closed", surface_area(Route::Closed)?, r, 2),
        OutputRecord::scaled("surface_area", "quadrature", surface_area(quad)?, r, 2),
        OutputRecord::scaled("volume", "closed", volume(Route::Closed)?, r, 3),
        OutputRecord::scaled("volume", "quadrature", volume(quad)?, r, 3),
    ];

    let smooth = curvature_integral(quad)?;
    let edge_direct = edge_integral(EdgeRoute::Direct { tol })?;
    let summed = Estimate {
        value: smooth.value + edge_direct.value,
        err_est: Some(smooth.err_est.unwrap_or(0.0) + edge_direct.err_est.unwrap_or(0.0)),
    };
    out.push(OutputRecord::new("mean_curvature_integral", "closed", mean_curvature_total(r)?, None, 1));
    out.push(OutputRecord::scaled("mean_curvature_integral", "quadrature", summed, r, 1));

    let b = mean_width(r)?;
    out.push(OutputRecord::new("mean_width", "closed", b, None, 1));
    let direct = mean_width_direct(tol)?;
    out.push(OutputRecord::new("mean_width", "direct", direct.value * r, Some(direct.err_est * r), 1));
    if let Some(n) = mc_samples {
        let e = mean_width_montecarlo(n, seed)?;
        push_montecarlo(&mut out, "mean_width", e, b / r, r, 1);
    }

    let i = coxeter_like_i_estimate();
    out.push(OutputRecord::new("coxeter_I", "quadrature", i.value, Some(i.err_est), 0));
    out.push(OutputRecord::scaled("edge_integral", "reduced", edge_integral(EdgeRoute::Reduced)?, r, 1));
    out.push(OutputRecord::scaled("edge_integral", "direct", edge_direct, r, 1));

    let v = oloid_intrinsic_volumes(r)?;
    for (j, name) in ["V0", "V1", "V2", "V3"].into_iter().enumerate() {
        out.push(OutputRecord::new(name, "closed", v.v(j), None, j as i32));
    }
    Ok(out)
}

/// Appends the Monte Carlo estimate of a unit-radius quantity and its
/// z-score against `expected`.
fn push_montecarlo(
    out: &mut Vec<OutputRecord>,
    quantity: &'static str,
    e: McEstimate,
    expected: f64,
    r: f64,
    power: i32,
) {
    let s = r.powi(power);
    out.push(OutputRecord::new(quantity, "montecarlo", e.mean * s, Some(e.std_error * s), power));
    out.push(OutputRecord::new(quantity, "montecarlo_zscore", e.z_score(expected), None, 0));
}

/// Quadrature-type routes that differ from the closed route by more than
/// `10·tol` relative. Monte Carlo routes are judged by their z-scores.
fn disagreements(records: &[OutputRecord], tol: f64) -> Vec<String> {
    let mut found = Vec::new();
    for rec in records.iter().filter(|r| !r.route.starts_with("montecarlo")) {
        let reference =
            records.iter().find(|c| c.quantity == rec.quantity && (c.route == "closed" || c.route == "reduced"));
        if let Some(c) = reference {
            let deviation = ((rec.value - c.value) / c.value).abs();
            if deviation > 10.0 * tol {
                found.push(format!(
                    "{} {} = {} vs {} = {} (relative {:e})",
                    rec.quantity, rec.route, rec.value, c.route, c.value, deviation
                ));
            }
        }
    }
    found
}

fn kinematic(pair: Pair, r: f64, mc_samples: Option<usize>, seed: u64) -> Result<Vec<OutputRecord>, Failure> {
    let oloid = oloid_intrinsic_volumes(r)?;
    let ball = ball_intrinsic_volumes(r)?;
    let (k, m) = match pair {
        Pair::BallBall => (ball, ball),
        Pair::OloidBall => (oloid, ball),
        Pair::OloidOloid => (oloid, oloid),
    };
    if mc_samples.is_some() && pair != Pair::BallBall {
        return Err(Failure {
            code: EXIT_FAILURE,
            message: "Monte Carlo is only available for --pair ball-ball".into(),
        });
    }

    let f = kinematic_functionals(&k, &m);
    let e = intersection_expectations(&k, &m)?;
    let mut out = Vec::new();
    for (j, (name, value)) in ["I0", "I1", "I2", "I3"].into_iter().zip(f.as_array()).enumerate() {
        out.push(OutputRecord::new(name, "closed", value, None, 3 + j as i32));
    }
    out.push(OutputRecord::new("E_mean_width", "closed", e.mean_width, None, 1));
    out.push(OutputRecord::new("E_surface", "closed", e.surface, None, 2));
    out.push(OutputRecord::new("E_volume", "closed", e.volume, None, 3));

    if let Some(n) = mc_samples {
        let mc = mc_ball_ball_expectations(n, seed)?;
        let unit = intersection_expectations(&ball_intrinsic_volumes(1.0)?, &ball_intrinsic_volumes(1.0)?)?;
        push_montecarlo(&mut out, "E_surface", mc.surface, unit.surface, r, 2);
        push_montecarlo(&mut out, "E_volume", mc.volume, unit.volume, r, 3);
    }
    Ok(out)
}

fn mesh(resolution: usize, path: &PathBuf) -> Result<Vec<OutputRecord>, Failure> {
    let mesh = TriMesh::oloid(resolution, resolution);
    let file = File::create(path)
        .map_err(|e| Failure { code: EXIT_FAILURE, message: format!("cannot create {}: {e}", path.display()) })?;
    mesh.write_obj(BufWriter::new(file))?;

    let vol = mesh.volume().map_err(Error::from)?;
    let area = mesh.area();
    let exact_vol = volume(Route::Closed)?.value;
    let exact_area = surface_area(Route::Closed)?.value;
    Ok(vec![
        OutputRecord::new("volume", "mesh", vol, Some((vol - exact_vol).abs()), 3),
        OutputRecord::new("volume", "mesh_relative_deviation", (vol - exact_vol) / exact_vol, None, 0),
        OutputRecord::new("surface_area", "mesh", area, Some((area - exact_area).abs()), 2),
        OutputRecord::new("surface_area", "mesh_relative_deviation", (area - exact_area) / exact_area, None, 0),
    ])
}

/// `x` with `digits` significant digits; positional for moderate
/// exponents, scientific otherwise.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.prec$e}", prec = digits - 1);
    let exponent: i32 = sci[sci.find('e').map_or(0, |i| i + 1)..].parse().unwrap_or(0);
    if (-5..16).contains(&exponent) {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

fn json_number(x: Option<f64>) -> String {
    match x {
        Some(v) if v.is_finite() => format_sig(v, 17),
        _ => "null".to_string(),
    }
}

pub fn write_records(records: &[OutputRecord], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            let mut s = String::from("[\n");
            for (i, r) in records.iter().enumerate() {
                let _ = write!(
                    s,
                    "  {{\"quantity\": \"{}\", \"route\": \"{}\", \"value\": {}, \"err_est\": {}, \"units_power_of_r\": {}}}",
                    r.quantity,
                    r.route,
                    json_number(Some(r.value)),
                    json_number(r.err_est),
                    r.units_power_of_r
                );
                s.push_str(if i + 1 < records.len() { ",\n" } else { "\n" });
            }
            s.push_str("]\n");
            out.write_all(s.as_bytes())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["quantity", "route", "value", "err_est", "units_power_of_r"])?;
            for r in records {
                w.write_record([
                    r.quantity.to_string(),
                    r.route.to_string(),
                    format_sig(r.value, 17),
                    r.err_est.map(|e| format_sig(e, 17)).unwrap_or_default(),
                    r.units_power_of_r.to_string(),
                ])?;
            }
            w.flush()
        }
        Format::Text => {
            for r in records {
                let err = r.err_est.map(|e| format!("± {}", format_sig(e, 3))).unwrap_or_default();
                writeln!(
                    out,
                    "{:<24} {:<24} {:>20} {:<12} r^{}",
                    r.quantity,
                    r.route,
                    format_sig(r.value, 12),
                    err,
                    r.units_power_of_r
                )?;
            }
            out.flush()
        }
    }
}
