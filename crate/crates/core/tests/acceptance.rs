//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so the PASS/FAIL lines are always shown;
//! the process exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ruled::analysis::{
    classify_default, control_surfaces, default_v_grid, fit_power_law, verify_all, FitOptions,
    VerifyOptions,
};
use ruled::curve::{Interval, Vec3};
use ruled::expr::{Expr, ParseError};
use ruled::families::{trace_curve, CurveFamily, StopReason};
use ruled::invariants::{extract_invariants, CurvaturePair};
use ruled::jet::{Jet2, Scalar};
use ruled::surface::{
    surface_from_invariants, Frame, GallerySurface, InvariantTriple, Profile, ReconstructOptions,
};

use common::{central_differences, embedding_curvatures, gallery_members};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Gauge conditions on 256-point grids, tolerance 1e-7.
fn ac1_gauge() -> Outcome {
    let mut worst = 0.0f64;
    for g in gallery_members() {
        let surf = g.build().map_err(|e| e.to_string())?;
        for u in surf.domain().linspace(256) {
            let r = surf.gauge_residuals(u).map_err(|e| e.to_string())?;
            worst = worst.max(r.max());
            ensure(r.max() < 1e-7, || format!("{} at u = {u}: {r:?}", g.name()))?;
        }
    }
    Ok(format!("5 surfaces x 256 points, max residual {worst:.1e}"))
}

/// Closed-form K, H against the embedding on 1000 random points per surface.
fn ac2_curvature_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut worst_k, mut worst_h) = (0.0f64, 0.0f64);
    for g in gallery_members() {
        let surf = g.build().map_err(|e| e.to_string())?;
        let d = surf.domain();
        for _ in 0..1000 {
            let u = rng.gen_range(d.lo..=d.hi);
            let v = rng.gen_range(-3.0..=3.0);
            let inv = extract_invariants(&surf, u).map_err(|e| e.to_string())?;
            let c = CurvaturePair::at(&inv, v).map_err(|e| e.to_string())?;
            let (k, h) = embedding_curvatures(&surf, u, v);
            let rel_k = (c.gaussian - k).abs() / k.abs();
            // H vanishes identically on the helicoid; measure it against
            // the curvature scale |H| + √|K|
            let rel_h = (c.mean - h).abs() / (h.abs() + k.abs().sqrt());
            worst_k = worst_k.max(rel_k);
            worst_h = worst_h.max(rel_h);
            ensure(rel_k < 1e-7 && rel_h < 1e-7, || {
                format!(
                    "{} at ({u}, {v}): K {} vs {k}, H {} vs {h}",
                    g.name(),
                    c.gaussian,
                    c.mean
                )
            })?;
        }
    }
    Ok(format!(
        "5000 points, max rel. error K {worst_k:.1e}, H {worst_h:.1e}"
    ))
}

/// Principal curvatures of Edlinger surfaces and the corollary relation.
fn ac3_edlinger() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst, mut worst_cor) = (0.0f64, 0.0f64);
    for c in [0.5, 1.0, 2.0] {
        let surf = GallerySurface::HyperboloidEdlinger { c }
            .build()
            .map_err(|e| e.to_string())?;
        let d = surf.domain();
        for _ in 0..200 {
            let u = rng.gen_range(d.lo..=d.hi);
            let v = rng.gen_range(-3.0..=3.0);
            let p = extract_invariants(&surf, u).map_err(|e| e.to_string())?;
            let cp = CurvaturePair::at(&p, v).map_err(|e| e.to_string())?;
            let w = p.w(v);
            let e1 = (cp.k1 + p.k / w).abs();
            let e2 = (cp.k2 - p.delta * p.delta / (p.k * w.powi(3))).abs();
            let lhs = p.delta * p.delta * cp.k1.powi(3);
            let cor = (lhs + p.k.powi(4) * cp.k2).abs() / lhs.abs();
            worst = worst.max(e1).max(e2);
            worst_cor = worst_cor.max(cor);
            ensure(e1 < 1e-8 && e2 < 1e-8 && cor < 1e-8, || {
                format!("c = {c} at ({u}, {v}): k1 err {e1:e}, k2 err {e2:e}, corollary {cor:e}")
            })?;
        }
    }
    Ok(format!(
        "c in {{0.5, 1, 2}}, max |k_i - closed form| {worst:.1e}, corollary {worst_cor:.1e}"
    ))
}

/// All twelve table rows, and `verify --all` exits with 0.
fn ac4_table() -> Outcome {
    let report = verify_all(&VerifyOptions::default());
    ensure(report.rows.len() == 12, || {
        format!("{} rows", report.rows.len())
    })?;
    let mut worst_f = 0.0f64;
    for r in &report.rows {
        ensure(r.passed, || {
            format!("row {} failed: {:?}", r.row.index, r.checks)
        })?;
        for c in &r.checks {
            ensure(c.fitted_n == r.row.n, || {
                format!("row {}: n = {:?}", r.row.index, c.fitted_n)
            })?;
            let f = c.f_error.unwrap_or(f64::INFINITY);
            ensure(f <= 1e-6, || format!("row {}: f error {f:e}", r.row.index))?;
            worst_f = worst_f.max(f);
        }
    }
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = ruled::cli::run(["ruled", "verify", "--all"], &mut out, &mut err);
    ensure(code == 0, || {
        format!(
            "verify --all exited {code}: {}",
            String::from_utf8_lossy(&err)
        )
    })?;
    let text = String::from_utf8_lossy(&out);
    let table_lines = text
        .lines()
        .filter(|l| l.ends_with("pass") && l.starts_with(char::is_numeric))
        .count();
    ensure(table_lines == 12, || {
        format!("printed {table_lines} passing rows")
    })?;
    Ok(format!(
        "12/12 rows, max rel. f error {worst_f:.1e}, verify --all exit 0"
    ))
}

/// No fit and no class flag on random and near-miss controls.
fn ac5_controls() -> Outcome {
    let opts = FitOptions::default();
    let controls = control_surfaces(VerifyOptions::default().seed, 20);
    ensure(controls.len() == 25, || {
        format!("{} controls", controls.len())
    })?;
    let mut smallest = f64::INFINITY;
    for (i, sp) in controls.iter().enumerate() {
        let surf = sp.build().map_err(|e| e.to_string())?;
        let flags = classify_default(&surf).map_err(|e| e.to_string())?.flags;
        if i < 20 {
            ensure(!flags.any(), || format!("{}: flags {flags:?}", sp.label))?;
        } else {
            // near-misses built on constant-δ surfaces keep that flag
            ensure(!flags.any_special(), || {
                format!("{}: flags {flags:?}", sp.label)
            })?;
        }
        let u_grid = surf.domain().linspace(opts.u_points);
        let v_grid = default_v_grid(&surf, &u_grid, opts.v_points).map_err(|e| e.to_string())?;
        for family in CurveFamily::ALL {
            let out =
                fit_power_law(&surf, family, &u_grid, &v_grid, &opts).map_err(|e| e.to_string())?;
            match out {
                ruled::analysis::FitOutcome::NoFit { residuals } => {
                    smallest = residuals.iter().map(|r| r.1).fold(smallest, f64::min);
                }
                other => return Err(format!("{} along {family}: {other:?}", sp.label)),
            }
        }
    }
    Ok(format!(
        "25 surfaces x 6 families without fit, smallest residual {smallest:.1e}"
    ))
}

fn round_trip(inv: &InvariantTriple, domain: Interval, grid: &[f64]) -> Result<f64, String> {
    let surf = surface_from_invariants(
        inv,
        Frame::standard(),
        Vec3::zeros(),
        domain,
        &ReconstructOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for &u in grid {
        let p = extract_invariants(&surf, u).map_err(|e| e.to_string())?;
        let err = (p.k - inv.k.eval(u).value())
            .abs()
            .max((p.delta - inv.delta.eval(u).value()).abs())
            .max((p.sigma - inv.sigma.eval(u).value()).abs());
        worst = worst.max(err);
    }
    Ok(worst)
}

/// Invariants survive reconstruction, for closed-form and sampled profiles.
fn ac6_round_trip() -> Outcome {
    let domain = Interval::new(0.0, 3.0).unwrap();
    let grid = domain.linspace(101);
    let constant = InvariantTriple::constant(0.7, -1.3, -0.9);
    let e_const = round_trip(&constant, domain, &grid)?;
    let varying = InvariantTriple::new(
        Profile::from_fn(|u| Jet2::variable(u).sin()),
        Profile::expr("1 + 0.3*cos(u)").map_err(|e| e.to_string())?,
        Profile::expr("1.2 - 0.2*sin(2*u)").map_err(|e| e.to_string())?,
    );
    let e_vary = round_trip(&varying, domain, &grid)?;
    ensure(e_const < 1e-6 && e_vary < 1e-6, || {
        format!("constant {e_const:e}, k = sin u {e_vary:e}")
    })?;

    // sampled from every gallery surface, then rebuilt from the samples
    let mut e_gallery = 0.0f64;
    for g in gallery_members() {
        let surf = g.build().map_err(|e| e.to_string())?;
        let u = surf.domain().linspace(65);
        let pts: Vec<_> = u
            .iter()
            .map(|&x| extract_invariants(&surf, x))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let take = |f: fn(&ruled::invariants::PointInvariants) -> f64| {
            pts.iter().map(f).collect::<Vec<_>>()
        };
        let inv = InvariantTriple::from_samples(
            &u,
            &take(|p| p.k),
            &take(|p| p.delta),
            &take(|p| p.sigma),
        )
        .map_err(|e| e.to_string())?;
        let e = round_trip(&inv, surf.domain(), &u)?;
        ensure(e < 1e-6, || format!("{}: {e:e}", g.name()))?;
        e_gallery = e_gallery.max(e);
    }
    Ok(format!(
        "sup error constant {e_const:.1e}, k = sin u {e_vary:.1e}, gallery samples {e_gallery:.1e}"
    ))
}

/// K is constant along S4 traces; RK4 converges with order four.
fn ac7_s4_traces() -> Outcome {
    let surf = GallerySurface::GenericSkew {
        k: 0.8,
        delta0: 1.0,
        delta1: 0.25,
        alpha0: 0.6,
    }
    .build()
    .map_err(|e| e.to_string())?;
    let gauss = |u: f64, v: f64| {
        let p = extract_invariants(&surf, u).unwrap();
        CurvaturePair::at(&p, v).unwrap().gaussian
    };
    let mut worst = 0.0f64;
    for (u0, v0, h) in [
        (-1.0, 0.8, 0.01),
        (0.0, -1.5, 0.01),
        (0.5, 0.3, -0.02),
        (-0.8, 2.5, 0.02),
    ] {
        let t = trace_curve(CurveFamily::ConstGauss, &surf, u0, v0, 150, h)
            .map_err(|e| e.to_string())?;
        ensure(t.points.len() > 10, || {
            format!("trace from ({u0}, {v0}) stopped: {:?}", t.stop)
        })?;
        let k0 = gauss(u0, v0);
        for p in &t.points {
            worst = worst.max((gauss(p.u, p.v) - k0).abs() / k0.abs());
        }
    }
    ensure(worst < 1e-6, || format!("relative K variation {worst:e}"))?;

    let end = |n: usize| {
        let t = trace_curve(CurveFamily::ConstGauss, &surf, -1.0, 0.8, n, 1.2 / n as f64).unwrap();
        assert_eq!(t.stop, StopReason::Completed);
        let p = *t.points.last().unwrap();
        (p.u, p.v)
    };
    let reference = end(2560);
    let err = |n| {
        let (u, v) = end(n);
        (u - reference.0).hypot(v - reference.1)
    };
    let ratio = err(10) / err(20);
    ensure((12.0..=20.0).contains(&ratio), || {
        format!("error ratio {ratio}")
    })?;
    Ok(format!(
        "max relative K variation {worst:.1e}, step-halving error ratio {ratio:.2}"
    ))
}

const JET_FIXTURES: [&str; 30] = [
    "cos(u)",
    "u^2 + 3",
    "sin(u)",
    "tan(u/2)",
    "sqrt(u + 4)",
    "exp(u)",
    "log(u + 3)",
    "sinh(u)",
    "cosh(u)",
    "u^3 - 2*u",
    "1/(1 + u^2)",
    "exp(-u^2)",
    "sin(u)*cos(u)",
    "sqrt(1 + u^2)",
    "u*exp(u/2)",
    "log(cosh(u))",
    "(u + 2)^(1/3)",
    "2^u",
    "(u + 3)^u",
    "-u^4/4 + u",
    "sin(cos(u))",
    "exp(sin(u))",
    "pi*u^2",
    "tan(u)^2",
    "cosh(u)^2 - sinh(u)^2",
    "(u - 1)/(u + 5)",
    "sqrt(exp(u) + 1)",
    "sin(3*u + pi/4)",
    "log(2 + sin(u))*u",
    "u^(-2) + 1",
];

const MALFORMED: [(&str, usize); 12] = [
    ("cos(u", 5),
    ("u +", 3),
    ("2*/u", 2),
    ("sin u", 4),
    ("u)", 1),
    ("foo(u)", 0),
    ("u ^ ^ 2", 4),
    ("1.2.3", 0),
    ("u $ 2", 2),
    ("", 0),
    ("exp()", 4),
    ("3 u", 2),
];

/// Jets agree with central differences; malformed input gives positioned errors.
fn ac8_parser() -> Outcome {
    let mut worst = 0.0f64;
    for src in JET_FIXTURES {
        let e = Expr::parse(src).map_err(|err| format!("{src}: {err}"))?;
        for u in [-0.7, 0.35, 1.1, 2.4] {
            let j = e.eval(Jet2::variable(u));
            let (d1, d2) = central_differences(|x| e.eval(x), u);
            let r1 = (j.d1() - d1).abs() / j.d1().abs().max(1.0);
            let r2 = (j.d2() - d2).abs() / j.d2().abs().max(1.0);
            worst = worst.max(r1).max(r2);
            ensure(r1 < 1e-6 && r2 < 1e-6, || {
                format!(
                    "{src} at u = {u}: d1 {} vs {d1}, d2 {} vs {d2}",
                    j.d1(),
                    j.d2()
                )
            })?;
        }
    }
    for (src, pos) in MALFORMED {
        match Expr::parse(src) {
            Err(e @ (ParseError::Syntax { .. } | ParseError::UnknownIdentifier { .. })) => {
                ensure(e.position() == pos, || {
                    format!("{src:?}: position {} not {pos}", e.position())
                })?
            }
            Ok(_) => return Err(format!("{src:?} parsed")),
        }
    }
    Ok(format!(
        "30 fixtures, max relative derivative error {worst:.1e}; {} malformed inputs positioned",
        MALFORMED.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("AC1", "gauge conditions on gallery surfaces", ac1_gauge),
        (
            "AC2",
            "closed-form K, H match the embedding",
            ac2_curvature_oracle,
        ),
        (
            "AC3",
            "Edlinger principal curvatures and corollary",
            ac3_edlinger,
        ),
        ("AC4", "classification table reproduced", ac4_table),
        ("AC5", "negative controls", ac5_controls),
        ("AC6", "invariant round trip", ac6_round_trip),
        ("AC7", "S4 level sets and RK4 order", ac7_s4_traces),
        ("AC8", "parser and jets", ac8_parser),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let result = panic::catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        match result {
            Ok(detail) => println!("{id} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL  {name}: {detail}");
            }
        }
    }
    println!("acceptance: {}/8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
