//! Command-line interface.
//!
//! Every analysis is a subcommand over one model file. Reports print as
//! aligned tables by default or as JSON with `--format json`; exact rationals
//! render as `p/q` strings and floats as JSON numbers, so reports re-parse to
//! identical values. Exit status is 0 on success, 1 on any error, and 2 when
//! `--strict` is set and a destabilizing configuration was found.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::cone::{build_reeb_cone, is_reeb, ReebVector};
use crate::error::{Error, Result};
use crate::hilbert::HilbertSeries;
use crate::laurent::{expand_index, extract_coefficients};
use crate::model::{parse_csv_vector, parse_model, resolve_vector, Model};
use crate::oracle;
use crate::scalar::{factorial_scalar, Mode, Scalar};
use crate::stability::{futaki, futaki_product, futaki_rees, lichnerowicz_scan, Verdict};
use crate::volmin::{minimize_volume, volume_ratio, DEFAULT_MAX_ITER, DEFAULT_TOL};

#[derive(Parser)]
#[command(
    name = "reeb-stab",
    version,
    about = "K-semistability obstructions for polarized affine cones"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Exit with status 2 when a destabilizing configuration is found.
    #[arg(long, global = true)]
    strict: bool,

    /// Force float evaluation.
    #[arg(long, global = true, conflicts_with = "exact")]
    float: bool,

    /// Force exact rational evaluation.
    #[arg(long, global = true)]
    exact: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Reeb-cone inequalities and decide feasibility.
    Cone { model: PathBuf },
    /// Print the Hilbert series numerator and denominator weights.
    Hilbert { model: PathBuf },
    /// Expand the index character: a0..a_{depth-1}, plus b0,b1,c0 with --eta.
    Expand {
        model: PathBuf,
        /// Named Reeb vector or comma-separated components.
        #[arg(long)]
        xi: Option<String>,
        /// Direction for the weight characters, comma-separated.
        #[arg(long)]
        eta: Option<String>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Donaldson-Futaki invariant of a product or explicit test configuration.
    Futaki {
        model: PathBuf,
        #[arg(long)]
        xi: Option<String>,
        /// Inducing direction, comma-separated.
        #[arg(long)]
        eta: String,
        /// Model file for an explicit central fiber (extended torus); the
        /// Reeb vector is lifted by appending zeros.
        #[arg(long)]
        fiber: Option<PathBuf>,
    },
    /// Futaki invariant of the Rees deformation of a principal ideal.
    Rees {
        model: PathBuf,
        #[arg(long)]
        xi: Option<String>,
        /// Coordinate name or comma-separated weight of the function.
        #[arg(long)]
        function: String,
    },
    /// Scan ambient coordinates for Lichnerowicz obstructions.
    Lichnerowicz {
        model: PathBuf,
        #[arg(long)]
        xi: Option<String>,
    },
    /// Minimize the volume over the Gorenstein cross-section.
    Volmin {
        model: PathBuf,
        /// Starting point (named vector or comma-separated components).
        #[arg(long)]
        xi: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Run the oracle verification suite against the model.
    Verify { model: PathBuf },
}

pub fn run() -> ExitCode {
    check_precision_env();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            if cli.strict && outcome.destabilizing {
                ExitCode::from(2)
            } else if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn check_precision_env() {
    if let Ok(value) = std::env::var("REEB_STAB_PRECISION") {
        match value.parse::<u32>() {
            Ok(bits) if bits > 64 => eprintln!(
                "warning: REEB_STAB_PRECISION={bits} requested; this build evaluates floats at 64 bits"
            ),
            Ok(_) => {}
            Err(_) => eprintln!("warning: ignoring unparsable REEB_STAB_PRECISION={value}"),
        }
    }
}

/// What the command found, for exit-status purposes.
struct Outcome {
    destabilizing: bool,
    failed: bool,
}

impl Outcome {
    fn ok() -> Self {
        Outcome {
            destabilizing: false,
            failed: false,
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let mode_override = if cli.float {
        Some(Mode::Float)
    } else if cli.exact {
        Some(Mode::Exact)
    } else {
        None
    };
    match &cli.command {
        Command::Cone { model } => cmd_cone(model, cli.format),
        Command::Hilbert { model } => cmd_hilbert(model, cli.format),
        Command::Expand {
            model,
            xi,
            eta,
            depth,
        } => cmd_expand(
            model,
            xi.as_deref(),
            eta.as_deref(),
            *depth,
            mode_override,
            cli.format,
        ),
        Command::Futaki {
            model,
            xi,
            eta,
            fiber,
        } => cmd_futaki(
            model,
            xi.as_deref(),
            eta,
            fiber.as_deref(),
            mode_override,
            cli.format,
        ),
        Command::Rees {
            model,
            xi,
            function,
        } => cmd_rees(model, xi.as_deref(), function, mode_override, cli.format),
        Command::Lichnerowicz { model, xi } => {
            cmd_lichnerowicz(model, xi.as_deref(), mode_override, cli.format)
        }
        Command::Volmin {
            model,
            xi,
            tol,
            max_iter,
        } => cmd_volmin(model, xi.as_deref(), *tol, *max_iter, cli.format),
        Command::Verify { model } => cmd_verify(model, cli.format),
    }
}

fn apply_mode(vector: ReebVector, mode_override: Option<Mode>) -> Result<ReebVector> {
    match mode_override {
        None => Ok(vector),
        Some(mode) => vector.to_mode(mode),
    }
}

/// Pick the working Reeb vector: an explicit argument, the model's
/// `default`, or its only entry.
fn resolve_xi(model: &Model, arg: Option<&str>, mode_override: Option<Mode>) -> Result<ReebVector> {
    let vector = match arg {
        Some(text) => resolve_vector(model, text)?,
        None => {
            if let Some(v) = model.reeb_vectors.get("default") {
                v.clone()
            } else if model.reeb_vectors.len() == 1 {
                model.reeb_vectors.values().next().unwrap().clone()
            } else {
                return Err(Error::invalid(
                    "no --xi given and the model has no `default` Reeb vector",
                ));
            }
        }
    };
    apply_mode(vector, mode_override)
}

fn emit<R: Serialize>(report: &R, table: String, format: Format) {
    let text = match format {
        Format::Table => table,
        Format::Json => serde_json::to_string_pretty(report).expect("report serialization"),
    };
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    // A closed pipe (e.g. `reeb-stab ... | head`) is not an error.
    if writeln!(stdout, "{text}").is_err() {
        std::process::exit(0);
    }
}

fn weight_expression(row: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in row.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let var = format!("xi{}", i + 1);
        if out.is_empty() {
            match c {
                1 => out.push_str(&var),
                -1 => out.push_str(&format!("-{var}")),
                _ => out.push_str(&format!("{c}*{var}")),
            }
        } else if c > 0 {
            if c == 1 {
                out.push_str(&format!(" + {var}"));
            } else {
                out.push_str(&format!(" + {c}*{var}"));
            }
        } else if c == -1 {
            out.push_str(&format!(" - {var}"));
        } else {
            out.push_str(&format!(" - {}*{var}", -c));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Serialize)]
struct ConeReport {
    command: &'static str,
    model: String,
    inequalities: Vec<String>,
    feasible: bool,
    sample: Option<Vec<Scalar>>,
}

fn cmd_cone(path: &Path, format: Format) -> Result<Outcome> {
    let model = parse_model(path)?;
    let cone = build_reeb_cone(model.weights())?;
    let sample = cone.sample_interior();
    let report = ConeReport {
        command: "cone",
        model: model.name.clone(),
        inequalities: cone
            .inequalities()
            .iter()
            .map(|row| format!("{} > 0", weight_expression(row)))
            .collect(),
        feasible: !cone.is_empty(),
        sample: sample.map(|s| s.components().to_vec()),
    };
    let mut table = format!("model: {}\n", report.model);
    for (name, ineq) in model.coordinates.iter().zip(&report.inequalities) {
        table.push_str(&format!("  weight({name}): {ineq}\n"));
    }
    table.push_str(&format!(
        "  feasible: {}",
        if report.feasible {
            "yes"
        } else {
            "no (empty Reeb cone)"
        }
    ));
    if let Some(sample) = &report.sample {
        table.push_str(&format!("\n  interior point: {}", scalars_csv(sample)));
    }
    emit(&report, table, format);
    Ok(Outcome::ok())
}

#[derive(Serialize)]
struct HilbertReport {
    command: &'static str,
    model: String,
    torus_rank: usize,
    dimension: usize,
    numerator: String,
    denominators: Vec<Vec<i64>>,
}

fn cmd_hilbert(path: &Path, format: Format) -> Result<Outcome> {
    let model = parse_model(path)?;
    let series = model.hilbert_series()?;
    let report = HilbertReport {
        command: "hilbert",
        model: model.name.clone(),
        torus_rank: series.torus_rank,
        dimension: series.dimension,
        numerator: series.numerator.to_string(),
        denominators: series.denominators.clone(),
    };
    let mut table = format!(
        "model: {}\n  torus rank: {}\n  dimension: {}\n  numerator: {}\n  denominator factors:",
        report.model, report.torus_rank, report.dimension, report.numerator
    );
    for d in &report.denominators {
        table.push_str(&format!("\n    1 - z^{d:?}"));
    }
    emit(&report, table, format);
    Ok(Outcome::ok())
}

#[derive(Serialize)]
struct ExpandReport {
    command: &'static str,
    model: String,
    xi: Vec<Scalar>,
    n: usize,
    /// Normalized coefficients a_i for i <= n.
    coefficients: Vec<Scalar>,
    /// Raw Laurent coefficients of t^{i-(n+1)} beyond i = n, if any.
    raw_tail: Vec<Scalar>,
    b0: Option<Scalar>,
    b1: Option<Scalar>,
    c0: Option<Scalar>,
}

fn cmd_expand(
    path: &Path,
    xi_arg: Option<&str>,
    eta_arg: Option<&str>,
    depth: usize,
    mode_override: Option<Mode>,
    format: Format,
) -> Result<Outcome> {
    let model = parse_model(path)?;
    let series = model.hilbert_series()?;
    let xi = resolve_xi(&model, xi_arg, mode_override)?;
    let n =
        series
            .dimension
            .checked_sub(1)
            .filter(|&n| n >= 1)
            .ok_or(Error::DimensionTooSmall {
                dimension: series.dimension,
            })?;
    let jet = expand_index(&series, &xi, depth.max(2))?;
    let mut coefficients = Vec::new();
    let mut raw_tail = Vec::new();
    for (i, coeff) in jet.coeffs.iter().enumerate().take(depth) {
        if i <= n {
            coefficients.push(coeff.div(&factorial_scalar(n - i, xi.mode()))?);
        } else {
            raw_tail.push(coeff.clone());
        }
    }
    let (b0, b1, c0) = match eta_arg {
        None => (None, None, None),
        Some(text) => {
            let eta = apply_mode(
                parse_csv_vector(text, model.weights().torus_rank())?,
                mode_override.or(Some(xi.mode())),
            )?;
            let coeffs = extract_coefficients(&series, &xi, Some(&eta))?;
            let parts = coeffs.eta.unwrap();
            (Some(parts.b0), Some(parts.b1), Some(parts.c0))
        }
    };
    let report = ExpandReport {
        command: "expand",
        model: model.name.clone(),
        xi: xi.components().to_vec(),
        n,
        coefficients,
        raw_tail,
        b0,
        b1,
        c0,
    };
    let mut table = format!(
        "model: {}\n  xi: {}\n  n: {}",
        report.model,
        scalars_csv(&report.xi),
        report.n
    );
    for (i, c) in report.coefficients.iter().enumerate() {
        table.push_str(&format!("\n  a{i}: {c}"));
    }
    // Raw tail entries start at coefficient index n+1, i.e. order t^0.
    for (i, c) in report.raw_tail.iter().enumerate() {
        table.push_str(&format!("\n  [t^{i}]: {c}"));
    }
    if let (Some(b0), Some(b1), Some(c0)) = (&report.b0, &report.b1, &report.c0) {
        table.push_str(&format!("\n  b0: {b0}\n  b1: {b1}\n  c0: {c0}"));
    }
    emit(&report, table, format);
    Ok(Outcome::ok())
}

#[derive(Serialize)]
struct FutakiReport {
    command: &'static str,
    model: String,
    fiber: Option<String>,
    xi: Vec<Scalar>,
    eta: Vec<Scalar>,
    futaki: Scalar,
    norm_sq: Scalar,
    a0: Scalar,
    a1: Scalar,
    b0: Scalar,
    b1: Scalar,
    c0: Scalar,
    verdict: Verdict,
    near_zero: bool,
    /// Cross-check value (1/2) D_eta a0 when the model is Gorenstein, xi is
    /// on the cross-section, and eta is tangent.
    product_futaki: Option<Scalar>,
}

fn cmd_futaki(
    path: &Path,
    xi_arg: Option<&str>,
    eta_arg: &str,
    fiber: Option<&Path>,
    mode_override: Option<Mode>,
    format: Format,
) -> Result<Outcome> {
    let model = parse_model(path)?;
    let base_xi = resolve_xi(&model, xi_arg, mode_override)?;

    let (series, fiber_name, xi): (HilbertSeries, Option<String>, ReebVector) = match fiber {
        None => (model.hilbert_series()?, None, base_xi.clone()),
        Some(fiber_path) => {
            let fiber_model = parse_model(fiber_path)?;
            let fiber_series = fiber_model.hilbert_series()?;
            let extra = fiber_series
                .torus_rank
                .checked_sub(base_xi.dim())
                .ok_or_else(|| {
                    Error::invalid(
                        "central fiber torus rank is smaller than the model's; cannot lift xi",
                    )
                })?;
            let mut lifted = base_xi.components().to_vec();
            for _ in 0..extra {
                lifted.push(Scalar::zero(base_xi.mode()));
            }
            (
                fiber_series,
                Some(fiber_model.name.clone()),
                ReebVector::new(lifted)?,
            )
        }
    };

    let eta = apply_mode(
        parse_csv_vector(eta_arg, series.torus_rank)?,
        mode_override.or(Some(xi.mode())),
    )?;
    let report_data = futaki(&series, &xi, &eta)?;
    let parts = report_data.coefficients.eta.clone().unwrap();

    // Product-configuration cross-check on the base model, when applicable.
    let product_futaki = match (&model.gorenstein, fiber) {
        (Some(g), None) => match futaki_product(&series, g, &xi, &eta) {
            Ok(v) => Some(v),
            Err(Error::NotOnCrossSection { .. }) | Err(Error::NotTangent { .. }) => None,
            Err(e) => return Err(e),
        },
        _ => None,
    };

    let report = FutakiReport {
        command: "futaki",
        model: model.name.clone(),
        fiber: fiber_name,
        xi: xi.components().to_vec(),
        eta: eta.components().to_vec(),
        futaki: report_data.futaki.clone(),
        norm_sq: report_data.norm_sq.clone(),
        a0: report_data.coefficients.a0.clone(),
        a1: report_data.coefficients.a1.clone(),
        b0: parts.b0,
        b1: parts.b1,
        c0: parts.c0,
        verdict: report_data.verdict,
        near_zero: report_data.near_zero,
        product_futaki,
    };
    let mut table = format!(
        "model: {}\n  xi: {}\n  eta: {}\n  a0: {}\n  a1: {}\n  b0: {}\n  b1: {}\n  c0: {}\n  Fut: {}\n  norm^2: {}\n  verdict: {}",
        report.model,
        scalars_csv(&report.xi),
        scalars_csv(&report.eta),
        report.a0,
        report.a1,
        report.b0,
        report.b1,
        report.c0,
        report.futaki,
        report.norm_sq,
        verdict_label(report.verdict, report.near_zero),
    );
    if let Some(v) = &report.product_futaki {
        table.push_str(&format!(
            "\n  product-configuration check (1/2 D_eta a0): {v}"
        ));
    }
    emit(&report, table, format);
    Ok(Outcome {
        destabilizing: report.verdict == Verdict::Destabilizing,
        failed: false,
    })
}

fn parse_function_weight(model: &Model, text: &str) -> Result<Vec<i64>> {
    if let Some(j) = model.coordinate_index(text) {
        return Ok(model.weights().column(j));
    }
    let parts = text
        .split(',')
        .map(|p| {
            p.trim().parse::<i64>().map_err(|_| {
                Error::invalid(format!(
                    "--function expects a coordinate name or integer weights, got `{text}`"
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if parts.len() != model.weights().torus_rank() {
        return Err(Error::DimensionMismatch {
            expected: model.weights().torus_rank(),
            found: parts.len(),
        });
    }
    Ok(parts)
}

#[derive(Serialize)]
struct ReesCliReport {
    command: &'static str,
    model: String,
    xi: Vec<Scalar>,
    function_weight: Vec<i64>,
    charge: Scalar,
    futaki: Scalar,
    normalized: Scalar,
    generic_futaki: Scalar,
    verdict: Verdict,
    near_zero: bool,
}

fn cmd_rees(
    path: &Path,
    xi_arg: Option<&str>,
    function: &str,
    mode_override: Option<Mode>,
    format: Format,
) -> Result<Outcome> {
    let model = parse_model(path)?;
    let series = model.hilbert_series()?;
    let xi = resolve_xi(&model, xi_arg, mode_override)?;
    let alpha = parse_function_weight(&model, function)?;
    let rees = futaki_rees(&series, &xi, &alpha)?;
    let report = ReesCliReport {
        command: "rees",
        model: model.name.clone(),
        xi: xi.components().to_vec(),
        function_weight: alpha,
        charge: rees.charge.clone(),
        futaki: rees.futaki.clone(),
        normalized: rees.normalized.clone(),
        generic_futaki: rees.generic_futaki.clone(),
        verdict: rees.verdict,
        near_zero: rees.near_zero,
    };
    let table = format!(
        "model: {}\n  xi: {}\n  function weight: {:?}\n  charge lambda: {}\n  Fut (Rees): {}\n  Fut / a0: {}\n  central-fiber check: {}\n  verdict: {}",
        report.model,
        scalars_csv(&report.xi),
        report.function_weight,
        report.charge,
        report.futaki,
        report.normalized,
        report.generic_futaki,
        verdict_label(report.verdict, report.near_zero),
    );
    emit(&report, table, format);
    Ok(Outcome {
        destabilizing: report.verdict == Verdict::Destabilizing,
        failed: false,
    })
}

#[derive(Serialize)]
struct LichnerowiczRow {
    coordinate: String,
    lambda: Scalar,
    rees_futaki: Scalar,
    unstable: bool,
}

#[derive(Serialize)]
struct LichnerowiczReport {
    command: &'static str,
    model: String,
    xi: Vec<Scalar>,
    rows: Vec<LichnerowiczRow>,
    any_unstable: bool,
}

fn cmd_lichnerowicz(
    path: &Path,
    xi_arg: Option<&str>,
    mode_override: Option<Mode>,
    format: Format,
) -> Result<Outcome> {
    let model = parse_model(path)?;
    let gorenstein = model.gorenstein()?.clone();
    let xi = resolve_xi(&model, xi_arg, mode_override)?;
    let rows = lichnerowicz_scan(&model.ring, &gorenstein, &xi, &model.excluded_coordinates)?;
    let rows: Vec<LichnerowiczRow> = rows
        .into_iter()
        .map(|r| LichnerowiczRow {
            coordinate: model.coordinates[r.coordinate].clone(),
            lambda: r.lambda,
            rees_futaki: r.rees_futaki,
            unstable: r.unstable,
        })
        .collect();
    let any_unstable = rows.iter().any(|r| r.unstable);
    let report = LichnerowiczReport {
        command: "lichnerowicz",
        model: model.name.clone(),
        xi: xi.components().to_vec(),
        rows,
        any_unstable,
    };
    let mut table = format!("model: {}\n  xi: {}", report.model, scalars_csv(&report.xi));
    for row in &report.rows {
        table.push_str(&format!(
            "\n  {}: lambda = {}, Fut = {}, {}",
            row.coordinate,
            row.lambda,
            row.rees_futaki,
            if row.unstable { "UNSTABLE" } else { "ok" }
        ));
    }
    table.push_str(&format!(
        "\n  verdict: {}",
        if report.any_unstable {
            "K-unstable (Lichnerowicz obstruction)"
        } else {
            "no coordinate obstruction"
        }
    ));
    emit(&report, table, format);
    Ok(Outcome {
        destabilizing: report.any_unstable,
        failed: false,
    })
}

#[derive(Serialize)]
struct VolminReport {
    command: &'static str,
    model: String,
    start: Vec<Scalar>,
    minimizer: Vec<Scalar>,
    /// Coordinate charges `alpha_j(xi*)` at the minimizer.
    coordinate_weights: Vec<Scalar>,
    volume: Scalar,
    ratio: Scalar,
    gradient_norm: f64,
    iterations: usize,
    tangent_basis: Vec<Vec<i64>>,
    certificates: Vec<Scalar>,
    exact_point: Vec<Scalar>,
    exact_certificates: Vec<Scalar>,
}

fn cmd_volmin(
    path: &Path,
    xi_arg: Option<&str>,
    tol: Option<f64>,
    max_iter: Option<usize>,
    format: Format,
) -> Result<Outcome> {
    let model = parse_model(path)?;
    let series = model.hilbert_series()?;
    let gorenstein = model.gorenstein()?.clone();
    let start = match xi_arg {
        Some(text) => resolve_vector(&model, text)?,
        None => {
            if let Some(v) = model.reeb_vectors.get("start") {
                v.clone()
            } else if let Some(v) = model.reeb_vectors.get("default") {
                v.clone()
            } else {
                synthesize_start(&model)?
            }
        }
    };
    // The start must sit on the cross-section; rescale exact vectors there.
    let start = place_on_cross_section(&model, start)?;
    let result = minimize_volume(
        &series,
        &gorenstein,
        &start,
        tol.unwrap_or(DEFAULT_TOL),
        max_iter.unwrap_or(DEFAULT_MAX_ITER),
    )?;
    let n = series.dimension - 1;
    let ratio = volume_ratio(&series, &result.minimizer, n)?;
    let coordinate_weights = (0..model.weights().coordinates())
        .map(|j| result.minimizer.pair(&model.weights().column(j)))
        .collect::<Result<Vec<_>>>()?;
    let report = VolminReport {
        command: "volmin",
        model: model.name.clone(),
        start: start.components().to_vec(),
        minimizer: result.minimizer.components().to_vec(),
        coordinate_weights,
        volume: result.volume.clone(),
        ratio,
        gradient_norm: result.gradient_norm,
        iterations: result.iterations,
        tangent_basis: result.tangent_basis.clone(),
        certificates: result.certificates.clone(),
        exact_point: result.exact_point.components().to_vec(),
        exact_certificates: result.exact_certificates.clone(),
    };
    let mut table = format!(
        "model: {}\n  start: {}\n  minimizer: {}\n  coordinate weights: {}\n  volume a0: {}\n  normalized ratio: {}\n  projected gradient norm: {:.3e}\n  iterations: {}",
        report.model,
        scalars_csv(&report.start),
        scalars_csv(&report.minimizer),
        scalars_csv(&report.coordinate_weights),
        report.volume,
        report.ratio,
        report.gradient_norm,
        report.iterations,
    );
    for (basis, cert) in report.tangent_basis.iter().zip(&report.certificates) {
        table.push_str(&format!("\n  certificate Fut along {basis:?}: {cert}"));
    }
    table.push_str(&format!(
        "\n  exact point: {}",
        scalars_csv(&report.exact_point)
    ));
    for (basis, cert) in report.tangent_basis.iter().zip(&report.exact_certificates) {
        table.push_str(&format!("\n  exact certificate along {basis:?}: {cert}"));
    }
    emit(&report, table, format);
    Ok(Outcome::ok())
}

/// A feasible cross-section start synthesized from the cone's sample point.
fn synthesize_start(model: &Model) -> Result<ReebVector> {
    let cone = build_reeb_cone(model.weights())?;
    let sample = cone.sample_interior().ok_or(Error::EmptyReebCone)?;
    place_on_cross_section(model, sample)
}

/// Rescale an exact vector onto the cross-section (scaling preserves cone
/// membership); float vectors are passed through for the minimizer's own
/// feasibility check.
fn place_on_cross_section(model: &Model, xi: ReebVector) -> Result<ReebVector> {
    let Some(gorenstein) = &model.gorenstein else {
        return Ok(xi);
    };
    match xi.mode() {
        Mode::Float => Ok(xi),
        Mode::Exact => {
            let value = gorenstein.theta_pairing(&xi)?;
            if !value.is_positive() {
                return Err(Error::InfeasibleStart {
                    reason: format!("theta weight {value} is not positive at the start"),
                });
            }
            let factor = Scalar::from_integer(gorenstein.level, Mode::Exact).div(&value)?;
            xi.scale(&factor)
        }
    }
}

#[derive(Serialize)]
pub struct VerifyCheck {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    model: String,
    checks: Vec<VerifyCheck>,
    all_passed: bool,
}

fn cmd_verify(path: &Path, format: Format) -> Result<Outcome> {
    let model = parse_model(path)?;
    let checks = run_verification(&model)?;
    let all_passed = checks.iter().all(|c| c.pass);
    let report = VerifyReport {
        command: "verify",
        model: model.name.clone(),
        checks,
        all_passed,
    };
    let mut table = format!("model: {}", report.model);
    for check in &report.checks {
        table.push_str(&format!(
            "\n  {} {} -- {}",
            if check.pass { "PASS" } else { "FAIL" },
            check.check,
            check.detail
        ));
    }
    table.push_str(&format!(
        "\n  result: {}",
        if report.all_passed {
            "all checks passed"
        } else {
            "FAILURES PRESENT"
        }
    ));
    emit(&report, table, format);
    Ok(Outcome {
        destabilizing: false,
        failed: !report.all_passed,
    })
}

/// The oracle suite for one model. Returns one named pass/fail per check.
pub fn run_verification(model: &Model) -> Result<Vec<VerifyCheck>> {
    let mut checks = Vec::new();
    let series = model.hilbert_series()?;
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(VerifyCheck {
            check: name.to_string(),
            pass,
            detail,
        });
    };

    // Cone feasibility and sample membership.
    let cone = build_reeb_cone(model.weights())?;
    match cone.sample_interior() {
        Some(sample) => {
            let member = is_reeb(model.weights(), &sample)?;
            push(
                "cone-feasibility",
                member,
                format!("interior sample {}", scalars_csv(sample.components())),
            );
        }
        None => push("cone-feasibility", false, "Reeb cone is empty".into()),
    }

    let exact_xi = model
        .reeb_vectors
        .get("default")
        .filter(|v| v.mode() == Mode::Exact)
        .cloned()
        .or_else(|| cone.sample_interior());

    // Nonnegativity of the power-series expansion to degree 50.
    if let Some(xi) = &exact_xi {
        let expansion = oracle::series_coefficients(&series, xi, 50)?;
        let negative = expansion
            .coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| c < &&num_bigint::BigInt::from(0));
        match negative {
            None => push(
                "series-nonnegativity",
                true,
                "dimensions are nonnegative through degree 50".into(),
            ),
            Some((m, c)) => push(
                "series-nonnegativity",
                false,
                format!(
                    "negative dimension {c} at degree {m}: the declared relations are not a \
                     regular sequence or the numerator is invalid"
                ),
            ),
        }
    }

    // Partial sums vs direct rational-function evaluation.
    if let Some(xi) = &exact_xi {
        let mut worst: f64 = 0.0;
        let mut pass = true;
        for t_value in [0.25f64, 0.5, 1.0] {
            let t = Scalar::float(t_value);
            let degree = oracle::auto_degree(&series, xi, &t, 1e-6)?;
            let partial = oracle::partial_sum_character(&series, xi, &t, degree)?;
            let direct =
                oracle::evaluate_character_directly(&series, &xi.to_mode(Mode::Float)?, t_value)?;
            let diff = (partial.value - direct).abs();
            worst = worst.max(diff / partial.tail_bound.max(f64::MIN_POSITIVE));
            if diff > partial.tail_bound {
                pass = false;
            }
        }
        push(
            "partial-sums",
            pass,
            format!("worst |diff|/bound = {worst:.3e} at t in {{1/4, 1/2, 1}}"),
        );
    }

    // Finite differences against jet derivatives, with quadratic decay.
    if series.dimension >= 2 {
        if let Some(xi) = &exact_xi {
            let xi_float = xi.to_mode(Mode::Float)?;
            let mut rng = StdRng::seed_from_u64(7);
            let mut worst_residual: f64 = 0.0;
            let mut pass = true;
            let mut ratio_note = String::new();
            for _ in 0..3 {
                let eta = random_direction(&mut rng, &xi_float);
                let report = oracle::finite_diff_check(&series, &xi_float, &eta, 1e-4)?;
                for r in [report.residual_b0, report.residual_b1, report.residual_c0] {
                    worst_residual = worst_residual.max(r);
                    if r > 1e-6 {
                        pass = false;
                    }
                }
                let coarse = oracle::finite_diff_check(&series, &xi_float, &eta, 1e-3)?;
                let fine = oracle::finite_diff_check(&series, &xi_float, &eta, 5e-4)?;
                for (c, f) in [
                    (coarse.residual_b0, fine.residual_b0),
                    (coarse.residual_b1, fine.residual_b1),
                    (coarse.residual_c0, fine.residual_c0),
                ] {
                    if c < 1e-12 {
                        continue; // residual at the noise floor; decay is meaningless
                    }
                    let ratio = c / f;
                    if !(3.5..=4.5).contains(&ratio) {
                        pass = false;
                        ratio_note = format!("; decay ratio {ratio:.2} outside [3.5, 4.5]");
                    }
                }
            }
            push(
                "finite-differences",
                pass,
                format!("worst residual {worst_residual:.3e} at h = 1e-4{ratio_note}"),
            );
        }
    }

    // Exact homogeneity of a0 and a1 under scaling.
    if series.dimension >= 2 {
        if let Some(xi) = &exact_xi {
            let base = extract_coefficients(&series, xi, None)?;
            let lambda = Scalar::exact(2, 1);
            let scaled = extract_coefficients(&series, &xi.scale(&lambda)?, None)?;
            let n = base.n as u32;
            let two_n1 = Scalar::exact(2i64.pow(n + 1), 1);
            let two_n = Scalar::exact(2i64.pow(n), 1);
            let ok = scaled.a0.mul(&two_n1)? == base.a0 && scaled.a1.mul(&two_n)? == base.a1;
            push(
                "homogeneity",
                ok,
                "a0(2 xi) = 2^-(n+1) a0(xi) and a1(2 xi) = 2^-n a1(xi), exactly".into(),
            );
        }
    }

    // Gorenstein defect on the cross-section.
    if let (Some(gorenstein), Some(xi)) = (&model.gorenstein, &exact_xi) {
        if series.dimension >= 2 {
            let on_sigma = place_on_cross_section(model, xi.clone())?;
            let defect = crate::stability::gorenstein_check(&series, gorenstein, &on_sigma)?;
            push(
                "gorenstein-defect",
                defect.is_zero(),
                format!("a1 - n(n+1)/2 a0 = {defect} on the cross-section"),
            );
        }
    }

    // Positivity: a0 > 0, c0 >= 0, norm^2 >= 0 along random exact directions.
    if series.dimension >= 2 {
        if let Some(xi) = &exact_xi {
            let mut rng = StdRng::seed_from_u64(11);
            let mut pass = true;
            for _ in 0..3 {
                let eta = random_exact_direction(&mut rng, xi.dim());
                let report = futaki(&series, xi, &eta)?;
                if !report.coefficients.a0.is_positive()
                    || report.coefficients.eta.as_ref().unwrap().c0.is_negative()
                    || report.norm_sq.is_negative()
                {
                    pass = false;
                }
            }
            push(
                "positivity",
                pass,
                "a0 > 0, c0 >= 0, norm^2 >= 0 along random directions".into(),
            );
        }
    }

    Ok(checks)
}

/// A random direction scaled componentwise by the base point, so step sizes
/// are relative perturbations regardless of where the model is normalized.
/// Components stay bounded away from zero to keep finite-difference
/// residuals above the float noise floor.
fn random_direction(rng: &mut StdRng, base: &ReebVector) -> ReebVector {
    let components: Vec<f64> = base
        .to_f64s()
        .iter()
        .map(|x| {
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            sign * rng.random_range(0.3..1.0) * x
        })
        .collect();
    ReebVector::from_f64s(&components)
}

fn random_exact_direction(rng: &mut StdRng, dim: usize) -> ReebVector {
    let components: Vec<Scalar> = (0..dim)
        .map(|_| Scalar::exact(rng.random_range(-6i64..=6), rng.random_range(1i64..=4)))
        .collect();
    ReebVector::new(components).expect("uniform exact mode")
}

fn scalars_csv(values: &[Scalar]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn verdict_label(verdict: Verdict, near_zero: bool) -> String {
    let base = match verdict {
        Verdict::Destabilizing => "DESTABILIZING",
        Verdict::Nonnegative => "nonnegative",
    };
    if near_zero {
        format!("{base} (near zero)")
    } else {
        base.to_string()
    }
}
