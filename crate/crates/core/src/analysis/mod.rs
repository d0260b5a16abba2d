//! Power-law detection `k_N = f(u)·wⁿ` and classification by invariants.

mod verify;

pub use verify::{
    control_surfaces, corollary_residual, table_rows, verify_all, verify_proposition,
    ControlReport, CorollaryReport, PropositionId, RowReport, SurfaceCheck, TableRow,
    VerificationReport, VerifyOptions,
};

use serde::Serialize;

use crate::curve::linspace;
use crate::error::{Error, Result};
use crate::families::{normal_curvature_along_at, CurveFamily};
use crate::invariants::{extract_invariants, PointInvariants};
use crate::surface::StandardRuledSurface;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitOptions {
    pub n_min: i32,
    pub n_max: i32,
    /// Bound on the relative spread of `k_N·w⁻ⁿ` along each ruling.
    pub tol_fit: f64,
    /// `f ≡ 0` when `max |k_N| < tol_zero / δ̄`.
    pub tol_zero: f64,
    /// Points of the default `v` grid on `[−3δ̄, 3δ̄]`.
    pub v_points: usize,
    pub u_points: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            n_min: -5,
            n_max: 2,
            tol_fit: 1e-6,
            tol_zero: 1e-9,
            // even, so the default grid avoids the striction line v = 0
            v_points: 18,
            u_points: 33,
        }
    }
}

/// Minimum number of usable `v` samples per ruling.
pub const MIN_V_SAMPLES: usize = 17;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawFit {
    /// `None` when `f ≡ 0`.
    pub n: Option<i32>,
    /// `(u, f(u))`; the mean of `k_N·w⁻ⁿ` over the `v` grid.
    pub f_samples: Vec<(f64, f64)>,
    pub residual: f64,
    pub is_zero: bool,
    /// More than one exponent met the tolerance.
    pub ambiguous: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FitOutcome {
    Fit(PowerLawFit),
    NoFit {
        /// Residual of every exponent tried, in increasing `n`.
        residuals: Vec<(i32, f64)>,
    },
}

impl FitOutcome {
    pub fn fit(&self) -> Option<&PowerLawFit> {
        match self {
            FitOutcome::Fit(f) => Some(f),
            FitOutcome::NoFit { .. } => None,
        }
    }

    pub fn is_no_fit(&self) -> bool {
        matches!(self, FitOutcome::NoFit { .. })
    }
}

/// Mean `|δ|` over a grid; the length scale of the `v` grid and of `tol_zero`.
pub fn characteristic_delta(invs: &[PointInvariants]) -> f64 {
    invs.iter().map(|p| p.delta.abs()).sum::<f64>() / invs.len() as f64
}

/// `linspace(−3δ̄, 3δ̄, points)`.
pub fn default_v_grid(
    surf: &StandardRuledSurface,
    u_grid: &[f64],
    points: usize,
) -> Result<Vec<f64>> {
    if u_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let invs = u_grid
        .iter()
        .map(|&u| extract_invariants(surf, u))
        .collect::<Result<Vec<_>>>()?;
    let d = characteristic_delta(&invs);
    Ok(linspace(-3.0 * d, 3.0 * d, points))
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Samples `(v, w, k_N)` along one ruling, skipping degenerate points.
fn ruling_samples(
    family: CurveFamily,
    inv: &PointInvariants,
    u: f64,
    v_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(v_grid.len());
    for &v in v_grid {
        match normal_curvature_along_at(family, inv, v) {
            Ok(kn) => out.push((inv.w(v), kn)),
            Err(Error::DegenerateField { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if out.len() < MIN_V_SAMPLES {
        return Err(Error::DegenerateField {
            family: family.tag(),
            u,
            v: f64::NAN,
        });
    }
    Ok(out)
}

/// Fits `k_N = f(u)·wⁿ` along `family` over `u_grid × v_grid`.
///
/// The zero law is tested first. Otherwise each `n` in `[n_min, n_max]` is
/// scored by the largest relative spread over `v` of `k_N·w⁻ⁿ` on a ruling,
/// `stdev / max(ε_f, |mean|)` with `ε_f = 10⁻⁹·max_u |mean|`. The best `n`
/// is returned if its score is within `tol_fit`.
pub fn fit_power_law(
    surf: &StandardRuledSurface,
    family: CurveFamily,
    u_grid: &[f64],
    v_grid: &[f64],
    opts: &FitOptions,
) -> Result<FitOutcome> {
    if u_grid.is_empty() || v_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if opts.n_min > opts.n_max {
        return Err(Error::ParamOutOfRange {
            param: "n_min".into(),
            value: opts.n_min as f64,
            reason: "must not exceed n_max",
        });
    }
    let invs = u_grid
        .iter()
        .map(|&u| extract_invariants(surf, u))
        .collect::<Result<Vec<_>>>()?;
    let samples = invs
        .iter()
        .zip(u_grid)
        .map(|(inv, &u)| ruling_samples(family, inv, u, v_grid))
        .collect::<Result<Vec<_>>>()?;

    let delta_bar = characteristic_delta(&invs);
    let max_abs = samples
        .iter()
        .flatten()
        .map(|&(_, kn)| kn.abs())
        .fold(0.0, f64::max);
    if max_abs < opts.tol_zero / delta_bar {
        return Ok(FitOutcome::Fit(PowerLawFit {
            n: None,
            f_samples: u_grid.iter().map(|&u| (u, 0.0)).collect(),
            residual: max_abs,
            is_zero: true,
            ambiguous: false,
        }));
    }

    let mut scored = Vec::new();
    for n in opts.n_min..=opts.n_max {
        let stats: Vec<(f64, f64)> = samples
            .iter()
            .map(|ruling| {
                let y: Vec<f64> = ruling.iter().map(|&(w, kn)| kn * w.powi(-n)).collect();
                mean_std(&y)
            })
            .collect();
        let eps = 1e-9 * stats.iter().map(|s| s.0.abs()).fold(0.0, f64::max);
        let residual = stats
            .iter()
            .map(|&(m, s)| s / eps.max(m.abs()))
            .fold(0.0, f64::max);
        let f_samples: Vec<(f64, f64)> =
            u_grid.iter().zip(&stats).map(|(&u, s)| (u, s.0)).collect();
        scored.push((n, residual, f_samples));
    }

    let passing = scored.iter().filter(|s| s.1 <= opts.tol_fit).count();
    let best = scored
        .iter()
        .filter(|s| s.1 <= opts.tol_fit)
        .min_by(|a, b| a.1.total_cmp(&b.1));
    Ok(match best {
        Some((n, residual, f_samples)) => FitOutcome::Fit(PowerLawFit {
            n: Some(*n),
            f_samples: f_samples.clone(),
            residual: *residual,
            is_zero: false,
            ambiguous: passing > 1,
        }),
        None => FitOutcome::NoFit {
            residuals: scored.iter().map(|s| (s.0, s.1)).collect(),
        },
    })
}

/// Fit on the default grids: `opts.u_points` uniform `u` values and the
/// default `v` grid.
pub fn fit_power_law_default(
    surf: &StandardRuledSurface,
    family: CurveFamily,
    opts: &FitOptions,
) -> Result<FitOutcome> {
    let u_grid = surf.domain().linspace(opts.u_points);
    let v_grid = default_v_grid(surf, &u_grid, opts.v_points)?;
    fit_power_law(surf, family, &u_grid, &v_grid, opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ClassFlags {
    pub right_helicoid: bool,
    pub edlinger: bool,
    pub orthoid: bool,
    pub conoidal: bool,
    pub const_delta: bool,
    pub orthoid_const_delta: bool,
    pub conoidal_const_delta: bool,
}

impl ClassFlags {
    /// Any flag naming a special class; `const_delta` alone does not count.
    pub fn any_special(&self) -> bool {
        self.right_helicoid
            || self.edlinger
            || self.orthoid
            || self.conoidal
            || self.orthoid_const_delta
            || self.conoidal_const_delta
    }

    pub fn any(&self) -> bool {
        self.any_special() || self.const_delta
    }
}

/// Largest absolute value of each condition over the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassResiduals {
    pub delta_prime: f64,
    pub lambda: f64,
    pub k: f64,
    pub k_lambda_plus_one: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub flags: ClassFlags,
    pub residuals: ClassResiduals,
    pub tolerance: f64,
    pub grid_points: usize,
}

pub const DEFAULT_TOL_CLASS: f64 = 1e-8;
pub const DEFAULT_CLASS_POINTS: usize = 256;

pub fn classify(
    surf: &StandardRuledSurface,
    u_grid: &[f64],
    tol: f64,
) -> Result<ClassificationReport> {
    if u_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut r = ClassResiduals {
        delta_prime: 0.0,
        lambda: 0.0,
        k: 0.0,
        k_lambda_plus_one: 0.0,
    };
    for &u in u_grid {
        let p = extract_invariants(surf, u)?;
        r.delta_prime = r.delta_prime.max(p.delta_prime.abs());
        r.lambda = r.lambda.max(p.lambda.abs());
        r.k = r.k.max(p.k.abs());
        r.k_lambda_plus_one = r.k_lambda_plus_one.max((p.k * p.lambda + 1.0).abs());
    }
    let orthoid = r.lambda < tol;
    let conoidal = r.k < tol;
    let const_delta = r.delta_prime < tol;
    let flags = ClassFlags {
        right_helicoid: orthoid && conoidal && const_delta,
        edlinger: const_delta && r.k_lambda_plus_one < tol,
        orthoid,
        conoidal,
        const_delta,
        orthoid_const_delta: orthoid && const_delta,
        conoidal_const_delta: conoidal && const_delta,
    };
    Ok(ClassificationReport {
        flags,
        residuals: r,
        tolerance: tol,
        grid_points: u_grid.len(),
    })
}

/// Classification on a uniform grid of [`DEFAULT_CLASS_POINTS`] with [`DEFAULT_TOL_CLASS`].
pub fn classify_default(surf: &StandardRuledSurface) -> Result<ClassificationReport> {
    classify(
        surf,
        &surf.domain().linspace(DEFAULT_CLASS_POINTS),
        DEFAULT_TOL_CLASS,
    )
}
