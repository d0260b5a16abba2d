//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage, validation or IO errors, 2 when
//! `verify` reports failing rows.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    classify, default_v_grid, fit_power_law, verify_all, verify_proposition, FitOptions,
    FitOutcome, PropositionId, VerificationReport, VerifyOptions, DEFAULT_CLASS_POINTS,
    DEFAULT_TOL_CLASS,
};
use crate::error::Error;
use crate::export::{csv_row, to_json};
use crate::families::{trace_curve, CurveFamily};
use crate::invariants::{extract_invariants, CurvaturePair};
use crate::spec::SurfaceSpec;
use crate::surface::{GallerySurface, StandardRuledSurface, GALLERY_NAMES};

#[derive(Debug, Parser)]
#[command(
    name = "ruled",
    version,
    about = "Skew ruled surfaces in striction-line form"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Obj,
    Text,
}

#[derive(Debug, Args)]
struct SpecArgs {
    /// SurfaceSpec JSON file
    #[arg(long)]
    spec: PathBuf,
    /// Bring a general (c, d) expression spec into standard form first
    #[arg(long)]
    standardize: bool,
}

#[derive(Debug, Args)]
struct OutArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariants and curvatures on a uniform u-grid
    Invariants {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 33)]
        u_points: usize,
        /// Striction distance for the curvature columns
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        v: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Class flags from invariant residuals
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = DEFAULT_TOL_CLASS)]
        tol_class: f64,
        #[arg(long, default_value_t = DEFAULT_CLASS_POINTS)]
        u_points: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Fit k_N = f(u)·w^n along a curve family
    Fit {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_parser = parse_family)]
        family: CurveFamily,
        #[arg(long, allow_hyphen_values = true)]
        n_min: Option<i32>,
        #[arg(long, allow_hyphen_values = true)]
        n_max: Option<i32>,
        #[arg(long)]
        tol_fit: Option<f64>,
        #[arg(long)]
        u_points: Option<usize>,
        #[arg(long)]
        v_points: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Trace one curve of a family with fixed-step RK4
    Trace {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_parser = parse_family)]
        family: CurveFamily,
        #[arg(long, allow_hyphen_values = true)]
        u0: f64,
        #[arg(long, allow_hyphen_values = true)]
        v0: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Surface arclength per step; negative traces backwards
        #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
        step_size: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// List gallery surfaces or describe one
    Gallery {
        #[arg(long)]
        name: Option<String>,
        /// Parameter as key=value; repeatable
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        /// Print the surface as a SurfaceSpec
        #[arg(long)]
        emit_spec: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check the classification table and the converse controls
    Verify {
        /// All propositions and the corollary (the default)
        #[arg(long)]
        all: bool,
        /// Single proposition: 1-5 or corollary; repeatable
        #[arg(long = "prop", value_parser = parse_prop)]
        props: Vec<PropositionId>,
        #[arg(long)]
        tol_fit: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn parse_family(s: &str) -> Result<CurveFamily, String> {
    s.parse()
}

fn parse_prop(s: &str) -> Result<PropositionId, String> {
    s.parse()
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|e| format!("bad value for `{k}`: {e}"))?;
    Ok((k.trim().to_string(), v))
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "invalid arguments: {m}"),
            Failure::Compute(e) => write!(f, "{e}"),
            Failure::Io(m) => write!(f, "{m}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn require(cond: bool, msg: &str) -> CliResult<()> {
    if cond {
        Ok(())
    } else {
        Err(Failure::Usage(msg.to_string()))
    }
}

fn load(spec: &SpecArgs) -> CliResult<StandardRuledSurface> {
    let src = fs::read_to_string(&spec.spec)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", spec.spec.display())))?;
    Ok(SurfaceSpec::from_json(&src)?.build(spec.standardize)?)
}

fn json<T: Serialize + ?Sized>(value: &T) -> CliResult<String> {
    to_json(value).map_err(|e| Failure::Io(e.to_string()))
}

fn format_or(out: &OutArgs, default: Format, allowed: &[Format]) -> CliResult<Format> {
    let f = out.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage(format!(
            "format {:?} is not available here",
            f.to_possible_value()
                .map(|v| v.get_name().to_string())
                .unwrap_or_default()
        )))
    }
}

#[derive(Serialize)]
struct InvariantRow {
    u: f64,
    k: f64,
    delta: f64,
    delta_prime: f64,
    sigma: f64,
    lambda: f64,
    gaussian: f64,
    mean: f64,
    k1: f64,
    k2: f64,
}

#[derive(Serialize)]
struct InvariantTable {
    v: f64,
    rows: Vec<InvariantRow>,
}

fn cmd_invariants(
    surf: &StandardRuledSurface,
    u_points: usize,
    v: f64,
    format: Format,
) -> CliResult<String> {
    let mut rows = Vec::with_capacity(u_points);
    for u in surf.domain().linspace(u_points) {
        let p = extract_invariants(surf, u)?;
        let c = CurvaturePair::at(&p, v)?;
        rows.push(InvariantRow {
            u,
            k: p.k,
            delta: p.delta,
            delta_prime: p.delta_prime,
            sigma: p.sigma,
            lambda: p.lambda,
            gaussian: c.gaussian,
            mean: c.mean,
            k1: c.k1,
            k2: c.k2,
        });
    }
    if format == Format::Csv {
        let mut out = String::from("u,k,delta,delta_prime,sigma,lambda,K,H,k1,k2\n");
        for r in &rows {
            out.push_str(&csv_row(&[
                r.u,
                r.k,
                r.delta,
                r.delta_prime,
                r.sigma,
                r.lambda,
                r.gaussian,
                r.mean,
                r.k1,
                r.k2,
            ]));
            out.push('\n');
        }
        Ok(out)
    } else {
        json(&InvariantTable { v, rows })
    }
}

#[derive(Serialize)]
struct FitReport<'a> {
    family: CurveFamily,
    #[serde(flatten)]
    outcome: &'a FitOutcome,
}

fn fit_csv(outcome: &FitOutcome) -> String {
    match outcome {
        FitOutcome::Fit(f) => {
            let mut out = format!(
                "# n = {}, residual = {}\nu,f\n",
                f.n.map_or("none".to_string(), |n| n.to_string()),
                f.residual
            );
            for &(u, y) in &f.f_samples {
                out.push_str(&csv_row(&[u, y]));
                out.push('\n');
            }
            out
        }
        FitOutcome::NoFit { residuals } => {
            let mut out = String::from("# no fit\nn,residual\n");
            for &(n, r) in residuals {
                out.push_str(&format!("{n},{}\n", crate::export::csv_number(r)));
            }
            out
        }
    }
}

#[derive(Serialize)]
struct GallerySummary {
    name: &'static str,
    params: BTreeMap<String, f64>,
    domain: [f64; 2],
    flags: crate::analysis::ClassFlags,
}

fn execute(cli: Cli) -> CliResult<(String, Option<PathBuf>, i32)> {
    match cli.command {
        Command::Invariants {
            spec,
            u_points,
            v,
            out,
        } => {
            require(u_points >= 1, "--u-points must be at least 1")?;
            require(v.is_finite(), "--v must be finite")?;
            let format = format_or(&out, Format::Json, &[Format::Json, Format::Csv])?;
            let surf = load(&spec)?;
            Ok((cmd_invariants(&surf, u_points, v, format)?, out.out, 0))
        }
        Command::Classify {
            spec,
            tol_class,
            u_points,
            out,
        } => {
            require(
                tol_class > 0.0 && tol_class.is_finite(),
                "--tol-class must be positive",
            )?;
            require(u_points >= 1, "--u-points must be at least 1")?;
            format_or(&out, Format::Json, &[Format::Json])?;
            let surf = load(&spec)?;
            let report = classify(&surf, &surf.domain().linspace(u_points), tol_class)?;
            Ok((json(&report)?, out.out, 0))
        }
        Command::Fit {
            spec,
            family,
            n_min,
            n_max,
            tol_fit,
            u_points,
            v_points,
            out,
        } => {
            let d = FitOptions::default();
            let opts = FitOptions {
                n_min: n_min.unwrap_or(d.n_min),
                n_max: n_max.unwrap_or(d.n_max),
                tol_fit: tol_fit.unwrap_or(d.tol_fit),
                u_points: u_points.unwrap_or(d.u_points),
                v_points: v_points.unwrap_or(d.v_points),
                ..d
            };
            require(opts.n_min <= opts.n_max, "--n-min must not exceed --n-max")?;
            require(
                opts.tol_fit > 0.0 && opts.tol_fit.is_finite(),
                "--tol-fit must be positive",
            )?;
            require(opts.u_points >= 1, "--u-points must be at least 1")?;
            require(
                opts.v_points >= crate::analysis::MIN_V_SAMPLES,
                "--v-points must be at least 17",
            )?;
            let format = format_or(&out, Format::Json, &[Format::Json, Format::Csv])?;
            let surf = load(&spec)?;
            let u_grid = surf.domain().linspace(opts.u_points);
            let v_grid = default_v_grid(&surf, &u_grid, opts.v_points)?;
            let outcome = fit_power_law(&surf, family, &u_grid, &v_grid, &opts)?;
            let text = match format {
                Format::Csv => fit_csv(&outcome),
                _ => json(&FitReport {
                    family,
                    outcome: &outcome,
                })?,
            };
            Ok((text, out.out, 0))
        }
        Command::Trace {
            spec,
            family,
            u0,
            v0,
            steps,
            step_size,
            out,
        } => {
            require(
                u0.is_finite() && v0.is_finite(),
                "--u0 and --v0 must be finite",
            )?;
            require(
                step_size.is_finite() && step_size != 0.0,
                "--step-size must be finite and nonzero",
            )?;
            let format = format_or(&out, Format::Csv, &[Format::Csv, Format::Obj, Format::Json])?;
            let surf = load(&spec)?;
            let curve = trace_curve(family, &surf, u0, v0, steps, step_size)?;
            let text = match format {
                Format::Obj => curve.to_obj(),
                Format::Json => json(&curve)?,
                _ => curve.to_csv(),
            };
            Ok((text, out.out, 0))
        }
        Command::Gallery {
            name,
            params,
            emit_spec,
            out,
        } => {
            format_or(&out, Format::Json, &[Format::Json])?;
            let Some(name) = name else {
                require(!emit_spec, "--emit-spec needs --name")?;
                return Ok((json(&GALLERY_NAMES)?, out.out, 0));
            };
            let params: BTreeMap<String, f64> = params.into_iter().collect();
            let surface = GallerySurface::from_name(&name, &params)?;
            let spec = SurfaceSpec::Gallery {
                name,
                params: params.clone(),
                domain: None,
            };
            let surf = spec.build(false)?;
            if emit_spec {
                return Ok((json(&spec)?, out.out, 0));
            }
            let domain = surf.domain();
            let summary = GallerySummary {
                name: surface.name(),
                params: surface.params(),
                domain: [domain.lo, domain.hi],
                flags: crate::analysis::classify_default(&surf)?.flags,
            };
            Ok((json(&summary)?, out.out, 0))
        }
        Command::Verify {
            all,
            props,
            tol_fit,
            seed,
            out,
        } => {
            require(
                !(all && !props.is_empty()),
                "--all and --prop are exclusive",
            )?;
            let format = format_or(&out, Format::Text, &[Format::Text, Format::Json])?;
            let d = VerifyOptions::default();
            let opts = VerifyOptions {
                fit: FitOptions {
                    tol_fit: tol_fit.unwrap_or(d.fit.tol_fit),
                    ..d.fit
                },
                seed: seed.unwrap_or(d.seed),
                ..d
            };
            require(
                opts.fit.tol_fit > 0.0 && opts.fit.tol_fit.is_finite(),
                "--tol-fit must be positive",
            )?;
            let report = if props.is_empty() {
                verify_all(&opts)
            } else {
                merge(props.iter().map(|&p| verify_proposition(p, &opts)))
            };
            let code = if report.passed { 0 } else { 2 };
            let text = match format {
                Format::Json => json(&report)?,
                _ => report.to_text(),
            };
            Ok((text, out.out, code))
        }
    }
}

fn merge(reports: impl Iterator<Item = VerificationReport>) -> VerificationReport {
    let mut merged = VerificationReport {
        rows: Vec::new(),
        controls: Vec::new(),
        corollary: None,
        passed: true,
    };
    for r in reports {
        merged.passed &= r.passed;
        merged.rows.extend(r.rows);
        merged.controls.extend(r.controls);
        if r.corollary.is_some() {
            merged.corollary = r.corollary;
        }
    }
    merged
}

/// Runs the tool on `argv` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    match execute(cli) {
        Ok((text, path, code)) => {
            let written = match path {
                Some(p) => fs::write(&p, text.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}
