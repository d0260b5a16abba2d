//! Executable form of the classification table: which surface classes carry
//! which power law along which family, and the converse on controls.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curve::Interval;
use crate::error::Result;
use crate::families::CurveFamily;
use crate::invariants::{extract_invariants, CurvaturePair};
use crate::surface::{
    generic_skew_random, helical_strip, ClosedFormInvariants, GallerySurface, StandardRuledSurface,
    DEFAULT_DOMAIN,
};

use super::{classify_default, default_v_grid, fit_power_law, ClassFlags, FitOptions, FitOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropositionId {
    P1,
    P2,
    P3,
    P4,
    P5,
    Corollary,
}

impl PropositionId {
    pub const ALL: [PropositionId; 6] = [
        PropositionId::P1,
        PropositionId::P2,
        PropositionId::P3,
        PropositionId::P4,
        PropositionId::P5,
        PropositionId::Corollary,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PropositionId::P1 => "1",
            PropositionId::P2 => "2",
            PropositionId::P3 => "3",
            PropositionId::P4 => "4",
            PropositionId::P5 => "5",
            PropositionId::Corollary => "corollary",
        }
    }

    /// Families whose normal curvature the proposition constrains.
    pub fn families(self) -> &'static [CurveFamily] {
        match self {
            PropositionId::P1 => &[
                CurveFamily::CurvatureLinesBranch1,
                CurveFamily::CurvatureLinesBranch2,
            ],
            PropositionId::P2 => &[CurveFamily::ConstStriction],
            PropositionId::P3 => &[CurveFamily::OrthTrajS1],
            PropositionId::P4 => &[CurveFamily::OrthTrajRulings],
            PropositionId::P5 => &[CurveFamily::ConstGauss],
            PropositionId::Corollary => &[],
        }
    }
}

impl fmt::Display for PropositionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for PropositionId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim().to_ascii_lowercase();
        let s = s.strip_prefix('p').unwrap_or(&s);
        PropositionId::ALL
            .into_iter()
            .find(|p| p.label() == s || (s == "c" && *p == PropositionId::Corollary))
            .ok_or_else(|| format!("unknown proposition `{s}` (expected 1-5 or corollary)"))
    }
}

/// Closed form of `f(u)` in a table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectedF {
    Zero,
    MinusK,
    PlusMinusDelta,
    DeltaSqOverK,
    MinusDeltaSqLambda,
}

impl ExpectedF {
    pub fn label(self) -> &'static str {
        match self {
            ExpectedF::Zero => "0",
            ExpectedF::MinusK => "-k",
            ExpectedF::PlusMinusDelta => "±δ",
            ExpectedF::DeltaSqOverK => "δ²/k",
            ExpectedF::MinusDeltaSqLambda => "-δ²λ",
        }
    }

    /// Admissible values of `f` at one ruling.
    fn candidates(self, c: &ClosedFormInvariants) -> Vec<f64> {
        match self {
            ExpectedF::Zero => vec![0.0],
            ExpectedF::MinusK => vec![-c.k],
            ExpectedF::PlusMinusDelta => vec![c.delta, -c.delta],
            ExpectedF::DeltaSqOverK => vec![c.delta * c.delta / c.k],
            ExpectedF::MinusDeltaSqLambda => vec![-c.delta * c.delta * c.lambda],
        }
    }

    fn sign_choices(self) -> usize {
        if self == ExpectedF::PlusMinusDelta {
            2
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceClass {
    RightHelicoid,
    Edlinger,
    Orthoid,
    OrthoidConstDelta,
    ConoidalConstDelta,
}

impl SurfaceClass {
    pub fn label(self) -> &'static str {
        match self {
            SurfaceClass::RightHelicoid => "right helicoid",
            SurfaceClass::Edlinger => "Edlinger surface",
            SurfaceClass::Orthoid => "orthoid surface",
            SurfaceClass::OrthoidConstDelta => "orthoid, const. δ",
            SurfaceClass::ConoidalConstDelta => "conoidal, const. δ",
        }
    }

    pub fn holds(self, flags: &ClassFlags) -> bool {
        match self {
            SurfaceClass::RightHelicoid => flags.right_helicoid,
            SurfaceClass::Edlinger => flags.edlinger,
            SurfaceClass::Orthoid => flags.orthoid,
            SurfaceClass::OrthoidConstDelta => flags.orthoid_const_delta,
            SurfaceClass::ConoidalConstDelta => flags.conoidal_const_delta,
        }
    }

    /// Members of the class used as test specimens.
    fn specimens(self) -> Vec<Specimen> {
        let g = |s: GallerySurface| Specimen::gallery(s);
        match self {
            SurfaceClass::RightHelicoid => vec![
                g(GallerySurface::RightHelicoid { c: 1.0 }),
                g(GallerySurface::RightHelicoid { c: -0.5 }),
            ],
            SurfaceClass::Edlinger => vec![
                g(GallerySurface::HyperboloidEdlinger { c: 1.0 }),
                g(GallerySurface::HyperboloidEdlinger { c: 0.5 }),
            ],
            SurfaceClass::Orthoid => vec![
                g(GallerySurface::OrthoidConstDelta { r: 0.6, delta: 1.0 }),
                Specimen::strip("orthoid_varying_delta", (0.0, 1.0, 0.25, 0.0)),
            ],
            SurfaceClass::OrthoidConstDelta => vec![
                g(GallerySurface::OrthoidConstDelta { r: 0.6, delta: 1.0 }),
                g(GallerySurface::OrthoidConstDelta {
                    r: 0.8,
                    delta: -0.7,
                }),
            ],
            SurfaceClass::ConoidalConstDelta => vec![
                g(GallerySurface::ConoidalConstDelta {
                    alpha: 2.0,
                    beta: 1.0,
                }),
                g(GallerySurface::ConoidalConstDelta {
                    alpha: -0.5,
                    beta: 0.8,
                }),
            ],
        }
    }
}

/// A helical strip with known closed-form invariants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Specimen {
    pub label: String,
    /// `(k, δ₀, δ₁, α₀)`.
    pub coefficients: (f64, f64, f64, f64),
}

impl Specimen {
    pub fn gallery(g: GallerySurface) -> Self {
        let params = g
            .params()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",");
        Self {
            label: format!("{}({params})", g.name()),
            coefficients: g.strip(),
        }
    }

    pub fn strip(label: &str, coefficients: (f64, f64, f64, f64)) -> Self {
        Self {
            label: label.to_string(),
            coefficients,
        }
    }

    pub fn build(&self) -> Result<StandardRuledSurface> {
        let (k, d0, d1, a0) = self.coefficients;
        helical_strip(
            k,
            d0,
            d1,
            a0,
            Interval::new(DEFAULT_DOMAIN.0, DEFAULT_DOMAIN.1)?,
        )
    }

    pub fn invariants(&self, u: f64) -> ClosedFormInvariants {
        ClosedFormInvariants::of_strip(self.coefficients, u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySelector {
    /// Either branch of the lines of curvature.
    LinesOfCurvature,
    Single(CurveFamily),
}

impl FamilySelector {
    pub fn families(self) -> Vec<CurveFamily> {
        match self {
            FamilySelector::LinesOfCurvature => vec![
                CurveFamily::CurvatureLinesBranch1,
                CurveFamily::CurvatureLinesBranch2,
            ],
            FamilySelector::Single(f) => vec![f],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FamilySelector::LinesOfCurvature => "lc",
            FamilySelector::Single(f) => f.tag(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub index: usize,
    pub proposition: PropositionId,
    pub family: FamilySelector,
    pub f: ExpectedF,
    pub n: Option<i32>,
    /// The row holds on each of these classes.
    pub classes: Vec<SurfaceClass>,
}

impl TableRow {
    pub fn type_label(&self) -> String {
        let names: Vec<_> = self.classes.iter().map(|c| c.label()).collect();
        if names.len() > 1 {
            format!("either {}", names.join(" or "))
        } else {
            names.concat()
        }
    }
}

/// The twelve rows of the classification table, in table order.
pub fn table_rows() -> Vec<TableRow> {
    use CurveFamily::*;
    use ExpectedF::*;
    use FamilySelector::*;
    use PropositionId::*;
    use SurfaceClass::*;
    let row = |index, proposition, family, f, n, classes: &[SurfaceClass]| TableRow {
        index,
        proposition,
        family,
        f,
        n,
        classes: classes.to_vec(),
    };
    vec![
        row(1, P1, LinesOfCurvature, MinusK, Some(-1), &[Edlinger]),
        row(
            2,
            P1,
            LinesOfCurvature,
            PlusMinusDelta,
            Some(-2),
            &[RightHelicoid],
        ),
        row(3, P1, LinesOfCurvature, DeltaSqOverK, Some(-3), &[Edlinger]),
        row(4, P2, Single(ConstStriction), Zero, None, &[RightHelicoid]),
        row(
            5,
            P2,
            Single(ConstStriction),
            MinusK,
            Some(-1),
            &[OrthoidConstDelta, Edlinger],
        ),
        row(6, P3, Single(OrthTrajS1), Zero, None, &[Orthoid]),
        row(
            7,
            P3,
            Single(OrthTrajS1),
            DeltaSqOverK,
            Some(-3),
            &[Edlinger],
        ),
        row(8, P4, Single(OrthTrajRulings), Zero, None, &[RightHelicoid]),
        row(
            9,
            P4,
            Single(OrthTrajRulings),
            MinusK,
            Some(-1),
            &[OrthoidConstDelta],
        ),
        row(
            10,
            P4,
            Single(OrthTrajRulings),
            MinusDeltaSqLambda,
            Some(-3),
            &[ConoidalConstDelta],
        ),
        row(11, P5, Single(ConstGauss), Zero, None, &[RightHelicoid]),
        row(
            12,
            P5,
            Single(ConstGauss),
            MinusK,
            Some(-1),
            &[OrthoidConstDelta, Edlinger],
        ),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub fit: FitOptions,
    /// Relative tolerance on fitted `f(u)` against the closed form.
    pub tol_f: f64,
    pub tol_corollary: f64,
    pub seed: u64,
    pub random_controls: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            fit: FitOptions::default(),
            tol_f: 1e-6,
            tol_corollary: 1e-8,
            seed: 20_240_917,
            random_controls: 20,
        }
    }
}

/// One specimen checked against one row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceCheck {
    pub specimen: String,
    pub class: SurfaceClass,
    /// Classification confirms the specimen belongs to `class`.
    pub class_confirmed: bool,
    /// Family whose fit matched the row, if any.
    pub matched_family: Option<CurveFamily>,
    pub fitted_n: Option<i32>,
    pub fit_residual: Option<f64>,
    /// Largest relative deviation of fitted `f` from the closed form.
    pub f_error: Option<f64>,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowReport {
    pub row: TableRow,
    pub checks: Vec<SurfaceCheck>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyControl {
    pub family: CurveFamily,
    /// `"no fit"`, `"zero"` or `"n = …"`.
    pub outcome: String,
    pub passed: bool,
}

/// A surface outside every special class: no family may fit and no class
/// flag may be set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ControlReport {
    pub specimen: String,
    pub flags: Option<ClassFlags>,
    pub families: Vec<FamilyControl>,
    pub corollary_residual: Option<f64>,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorollaryCheck {
    pub specimen: String,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorollaryReport {
    /// `δ²k1³ + k⁴k2 = 0` on Edlinger surfaces.
    pub edlinger: Vec<CorollaryCheck>,
    /// The relation fails on every control.
    pub controls_violate: bool,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<RowReport>,
    pub controls: Vec<ControlReport>,
    pub corollary: Option<CorollaryReport>,
    pub passed: bool,
}

fn check_row_on(
    row: &TableRow,
    class: SurfaceClass,
    sp: &Specimen,
    opts: &VerifyOptions,
) -> SurfaceCheck {
    let mut check = SurfaceCheck {
        specimen: sp.label.clone(),
        class,
        class_confirmed: false,
        matched_family: None,
        fitted_n: None,
        fit_residual: None,
        f_error: None,
        passed: false,
        error: None,
    };
    let run = |check: &mut SurfaceCheck| -> Result<()> {
        let surf = sp.build()?;
        check.class_confirmed = class.holds(&classify_default(&surf)?.flags);
        let u_grid = surf.domain().linspace(opts.fit.u_points);
        let v_grid = default_v_grid(&surf, &u_grid, opts.fit.v_points)?;
        for family in row.family.families() {
            let FitOutcome::Fit(fit) = fit_power_law(&surf, family, &u_grid, &v_grid, &opts.fit)?
            else {
                continue;
            };
            let n_ok = if row.f == ExpectedF::Zero {
                fit.is_zero
            } else {
                !fit.is_zero && fit.n == row.n && !fit.ambiguous
            };
            if !n_ok {
                continue;
            }
            // one sign choice must hold on the whole grid
            let f_error = (0..row.f.sign_choices())
                .map(|choice| {
                    fit.f_samples
                        .iter()
                        .map(|&(u, f)| {
                            let exp = row.f.candidates(&sp.invariants(u))[choice];
                            if exp == 0.0 {
                                f.abs()
                            } else {
                                (f - exp).abs() / exp.abs()
                            }
                        })
                        .fold(0.0, f64::max)
                })
                .fold(f64::INFINITY, f64::min);
            let f_ok = row.f == ExpectedF::Zero || f_error <= opts.tol_f;
            if f_ok && check.matched_family.is_none() {
                check.matched_family = Some(family);
                check.fitted_n = fit.n;
                check.fit_residual = Some(fit.residual);
                check.f_error = Some(if row.f == ExpectedF::Zero {
                    0.0
                } else {
                    f_error
                });
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut check) {
        check.error = Some(e.to_string());
    }
    check.passed = check.error.is_none() && check.class_confirmed && check.matched_family.is_some();
    check
}

pub fn verify_row(row: &TableRow, opts: &VerifyOptions) -> RowReport {
    let checks: Vec<SurfaceCheck> = row
        .classes
        .iter()
        .flat_map(|&class| class.specimens().into_iter().map(move |sp| (class, sp)))
        .map(|(class, sp)| check_row_on(row, class, &sp, opts))
        .collect();
    let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
    RowReport {
        row: row.clone(),
        checks,
        passed,
    }
}

/// Seeded random generic surfaces followed by perturbations of special
/// surfaces that break exactly one defining condition by about 10⁻².
pub fn control_surfaces(seed: u64, random: usize) -> Vec<Specimen> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Specimen> = (0..random)
        .map(|i| {
            let g = generic_skew_random(&mut rng);
            let mut sp = Specimen::gallery(g);
            sp.label = format!("random_{i:02}:{}", sp.label);
            sp
        })
        .collect();
    let k_orth = 0.8 / 0.6;
    out.extend([
        // δ′ = 0, kλ + 1 = 0.01
        Specimen::strip("near_edlinger_lambda", (1.0, -1.0, 0.0, 0.99)),
        // kλ + 1 = 0 at u = 0, δ′ = 0.01
        Specimen::strip("near_edlinger_delta_prime", (1.0, -1.0, 0.01, 1.0)),
        // conoidal, const. δ with k = 0.01
        Specimen::strip("near_conoidal", (0.01, 1.0, 0.0, 2.0)),
        // orthoid, const. δ with λ = 0.01
        Specimen::strip("near_orthoid", (k_orth, 1.0, 0.0, 0.01)),
        // right helicoid with k = λ = 0.01
        Specimen::strip("near_helicoid", (0.01, 1.0, 0.0, 0.01)),
    ]);
    out
}

fn describe(outcome: &FitOutcome) -> String {
    match outcome {
        FitOutcome::NoFit { .. } => "no fit".into(),
        FitOutcome::Fit(f) if f.is_zero => "zero".into(),
        FitOutcome::Fit(f) => format!("n = {}", f.n.unwrap_or_default()),
    }
}

/// `max |δ²k1³ + k⁴k2| / |δ²k1³|` over the grid.
pub fn corollary_residual(
    surf: &StandardRuledSurface,
    u_grid: &[f64],
    v_grid: &[f64],
) -> Result<f64> {
    let mut worst = 0.0f64;
    for &u in u_grid {
        let p = extract_invariants(surf, u)?;
        for &v in v_grid {
            let c = CurvaturePair::at(&p, v)?;
            let lhs = p.delta * p.delta * c.k1.powi(3);
            worst = worst.max((lhs + p.k.powi(4) * c.k2).abs() / lhs.abs());
        }
    }
    Ok(worst)
}

fn corollary_on(surf: &StandardRuledSurface, opts: &VerifyOptions) -> Result<f64> {
    let u_grid = surf.domain().linspace(opts.fit.u_points);
    let v_grid = default_v_grid(surf, &u_grid, opts.fit.v_points)?;
    corollary_residual(surf, &u_grid, &v_grid)
}

fn check_control(
    sp: &Specimen,
    families: &[CurveFamily],
    corollary: bool,
    opts: &VerifyOptions,
) -> ControlReport {
    let mut report = ControlReport {
        specimen: sp.label.clone(),
        flags: None,
        families: Vec::new(),
        corollary_residual: None,
        passed: false,
        error: None,
    };
    let run = |report: &mut ControlReport| -> Result<()> {
        let surf = sp.build()?;
        report.flags = Some(classify_default(&surf)?.flags);
        let u_grid = surf.domain().linspace(opts.fit.u_points);
        let v_grid = default_v_grid(&surf, &u_grid, opts.fit.v_points)?;
        for &family in families {
            let outcome = fit_power_law(&surf, family, &u_grid, &v_grid, &opts.fit)?;
            report.families.push(FamilyControl {
                family,
                outcome: describe(&outcome),
                passed: outcome.is_no_fit(),
            });
        }
        if corollary {
            report.corollary_residual = Some(corollary_residual(&surf, &u_grid, &v_grid)?);
        }
        Ok(())
    };
    if let Err(e) = run(&mut report) {
        report.error = Some(e.to_string());
    }
    report.passed = report.error.is_none()
        && report.flags.is_some_and(|f| !f.any_special())
        && report.families.iter().all(|f| f.passed)
        && report
            .corollary_residual
            .is_none_or(|r| r > opts.tol_corollary);
    report
}

fn verify_corollary(controls: &[ControlReport], opts: &VerifyOptions) -> CorollaryReport {
    let edlinger: Vec<CorollaryCheck> = [0.5, 1.0, 2.0]
        .into_iter()
        .map(|c| {
            let sp = Specimen::gallery(GallerySurface::HyperboloidEdlinger { c });
            let residual = sp
                .build()
                .and_then(|s| corollary_on(&s, opts))
                .unwrap_or(f64::INFINITY);
            CorollaryCheck {
                specimen: sp.label,
                residual,
                passed: residual < opts.tol_corollary,
            }
        })
        .collect();
    let controls_violate = controls
        .iter()
        .all(|c| c.corollary_residual.is_some_and(|r| r > opts.tol_corollary));
    CorollaryReport {
        passed: edlinger.iter().all(|c| c.passed) && controls_violate,
        edlinger,
        controls_violate,
        tolerance: opts.tol_corollary,
    }
}

fn assemble(ids: &[PropositionId], opts: &VerifyOptions) -> VerificationReport {
    let rows: Vec<RowReport> = table_rows()
        .iter()
        .filter(|r| ids.contains(&r.proposition))
        .map(|r| verify_row(r, opts))
        .collect();
    let families: Vec<CurveFamily> = CurveFamily::ALL
        .into_iter()
        .filter(|f| ids.iter().any(|id| id.families().contains(f)))
        .collect();
    let with_corollary = ids.contains(&PropositionId::Corollary);
    let controls: Vec<ControlReport> = control_surfaces(opts.seed, opts.random_controls)
        .iter()
        .map(|sp| check_control(sp, &families, with_corollary, opts))
        .collect();
    let corollary = with_corollary.then(|| verify_corollary(&controls, opts));
    let passed = rows.iter().all(|r| r.passed)
        && controls.iter().all(|c| c.passed)
        && corollary.as_ref().is_none_or(|c| c.passed);
    VerificationReport {
        rows,
        controls,
        corollary,
        passed,
    }
}

/// Rows and controls belonging to one proposition (or the corollary).
pub fn verify_proposition(id: PropositionId, opts: &VerifyOptions) -> VerificationReport {
    assemble(&[id], opts)
}

/// The full table, every family on every control, and the corollary.
pub fn verify_all(opts: &VerifyOptions) -> VerificationReport {
    assemble(&PropositionId::ALL, opts)
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

impl VerificationReport {
    /// Aligned text in the layout of the classification table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.rows.is_empty() {
            let header = [
                "row",
                "prop",
                "along",
                "f",
                "n",
                "type of surface",
                "matched",
                "result",
            ];
            let body: Vec<[String; 8]> = self
                .rows
                .iter()
                .map(|r| {
                    let matched: Vec<String> = r
                        .checks
                        .iter()
                        .map(|c| {
                            c.matched_family
                                .map_or("-".to_string(), |f| f.tag().to_string())
                        })
                        .collect();
                    [
                        r.row.index.to_string(),
                        r.row.proposition.to_string(),
                        r.row.family.label().to_string(),
                        r.row.f.label().to_string(),
                        r.row.n.map_or("-".to_string(), |n| n.to_string()),
                        r.row.type_label(),
                        matched.join(","),
                        pass(r.passed).to_string(),
                    ]
                })
                .collect();
            let mut widths = header.map(|h| h.chars().count());
            for line in &body {
                for (w, cell) in widths.iter_mut().zip(line) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let mut emit = |cells: &[&str]| {
                let line: Vec<String> = cells
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                let _ = writeln!(out, "{}", line.join("  ").trim_end());
            };
            emit(&header);
            for line in &body {
                emit(&line.each_ref().map(String::as_str));
            }
        }
        if !self.controls.is_empty() {
            let failed: Vec<&str> = self
                .controls
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.specimen.as_str())
                .collect();
            let _ = writeln!(
                out,
                "controls: {}/{} without fit or class flag{}",
                self.controls.len() - failed.len(),
                self.controls.len(),
                if failed.is_empty() {
                    String::new()
                } else {
                    format!(" (failed: {})", failed.join(", "))
                }
            );
        }
        if let Some(c) = &self.corollary {
            let worst = c.edlinger.iter().map(|e| e.residual).fold(0.0, f64::max);
            let _ = writeln!(
                out,
                "corollary: max residual {worst:.3e} on Edlinger surfaces, violated on all controls: {} .. {}",
                c.controls_violate,
                pass(c.passed)
            );
        }
        let _ = writeln!(out, "overall: {}", pass(self.passed));
        out
    }
}
