//! The five distinguished curve families and their normal curvatures.
//!
//! Each family is a direction field `A du + B dv = 0` on the parameter plane:
//!
//! | tag | family | relation |
//! |-----|--------|----------|
//! | `lc1`, `lc2` | lines of curvature for `k1`, `k2` | principal directions |
//! | `s1` | constant striction distance | `dv = 0` |
//! | `s2` | orthogonal trajectories of `s1` | `[v² + δ²(λ²+1)] du + δλ dv = 0` |
//! | `s3` | orthogonal trajectories of the rulings | `δλ du + dv = 0` |
//! | `s4` | constant Gaussian curvature | `δ′(δ² − v²) du + 2δv dv = 0` |

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{
    extract_invariants, principal_directions_at, CurvaturePair, Direction, FundamentalForms,
    PointInvariants,
};
use crate::surface::StandardRuledSurface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CurveFamily {
    #[serde(rename = "lc1")]
    CurvatureLinesBranch1,
    #[serde(rename = "lc2")]
    CurvatureLinesBranch2,
    #[serde(rename = "s1")]
    ConstStriction,
    #[serde(rename = "s2")]
    OrthTrajS1,
    #[serde(rename = "s3")]
    OrthTrajRulings,
    #[serde(rename = "s4")]
    ConstGauss,
}

impl CurveFamily {
    pub const ALL: [CurveFamily; 6] = [
        CurveFamily::CurvatureLinesBranch1,
        CurveFamily::CurvatureLinesBranch2,
        CurveFamily::ConstStriction,
        CurveFamily::OrthTrajS1,
        CurveFamily::OrthTrajRulings,
        CurveFamily::ConstGauss,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            CurveFamily::CurvatureLinesBranch1 => "lc1",
            CurveFamily::CurvatureLinesBranch2 => "lc2",
            CurveFamily::ConstStriction => "s1",
            CurveFamily::OrthTrajS1 => "s2",
            CurveFamily::OrthTrajRulings => "s3",
            CurveFamily::ConstGauss => "s4",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CurveFamily::CurvatureLinesBranch1 => "lines of curvature (k1)",
            CurveFamily::CurvatureLinesBranch2 => "lines of curvature (k2)",
            CurveFamily::ConstStriction => "constant striction distance",
            CurveFamily::OrthTrajS1 => "orthogonal trajectories of s1",
            CurveFamily::OrthTrajRulings => "orthogonal trajectories of the rulings",
            CurveFamily::ConstGauss => "constant Gaussian curvature",
        }
    }

    pub fn is_curvature_line(self) -> bool {
        matches!(
            self,
            CurveFamily::CurvatureLinesBranch1 | CurveFamily::CurvatureLinesBranch2
        )
    }
}

impl fmt::Display for CurveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CurveFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CurveFamily::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| format!("unknown family `{s}` (expected lc1, lc2, s1, s2, s3 or s4)"))
    }
}

/// `(B, −A)` for the relation `A du + B dv = 0`, before normalization.
fn raw_direction(family: CurveFamily, inv: &PointInvariants, v: f64) -> Result<Direction> {
    let PointInvariants {
        delta,
        delta_prime,
        lambda,
        ..
    } = *inv;
    let d = match family {
        CurveFamily::CurvatureLinesBranch1 | CurveFamily::CurvatureLinesBranch2 => {
            let [d1, d2] = principal_directions_at(inv, v)?;
            return Ok(if family == CurveFamily::CurvatureLinesBranch1 {
                d1
            } else {
                d2
            });
        }
        CurveFamily::ConstStriction => Direction::new(1.0, 0.0),
        CurveFamily::OrthTrajS1 => Direction::new(
            -delta * lambda,
            v * v + delta * delta * (lambda * lambda + 1.0),
        ),
        CurveFamily::OrthTrajRulings => Direction::new(1.0, -delta * lambda),
        CurveFamily::ConstGauss => {
            let d = Direction::new(2.0 * delta * v, -delta_prime * (delta * delta - v * v));
            // both coefficients vanish only for δ′ = 0, v = 0
            if d.du.hypot(d.dv) <= 1e-12 * (v * v + delta * delta) {
                return Err(Error::DegenerateField {
                    family: family.tag(),
                    u: f64::NAN,
                    v,
                });
            }
            d
        }
    };
    Ok(d)
}

/// g-unit direction of `family` at striction distance `v`, oriented with
/// `du > 0` (or `dv > 0` along a ruling).
pub fn direction_at(family: CurveFamily, inv: &PointInvariants, v: f64) -> Result<Direction> {
    let ff = FundamentalForms::at(inv, v);
    Ok(raw_direction(family, inv, v)?
        .g_normalized(&ff)?
        .canonical())
}

fn at_u<T>(r: Result<T>, u: f64) -> Result<T> {
    r.map_err(|e| match e {
        Error::DegenerateField { family, v, .. } => Error::DegenerateField { family, u, v },
        other => other,
    })
}

pub fn direction_field(
    family: CurveFamily,
    surf: &StandardRuledSurface,
    u: f64,
    v: f64,
) -> Result<Direction> {
    let inv = extract_invariants(surf, u)?;
    at_u(direction_at(family, &inv, v), u)
}

/// Closed-form normal curvature along `family`.
pub fn normal_curvature_along_at(
    family: CurveFamily,
    inv: &PointInvariants,
    v: f64,
) -> Result<f64> {
    let PointInvariants {
        k,
        delta,
        delta_prime: dp,
        lambda,
        ..
    } = *inv;
    let w = inv.w(v);
    let d2 = delta * delta;
    let v2 = v * v;
    let g11 = v2 + d2 * (lambda * lambda + 1.0);
    let kn = match family {
        CurveFamily::CurvatureLinesBranch1 => CurvaturePair::at(inv, v)?.k1,
        CurveFamily::CurvatureLinesBranch2 => CurvaturePair::at(inv, v)?.k2,
        CurveFamily::ConstStriction => -(k * v2 + dp * v + d2 * (k - lambda)) / (w * g11),
        CurveFamily::OrthTrajS1 => {
            let q = (k * lambda + 2.0) * v2
                + dp * lambda * v
                + d2 * (lambda * lambda + k * lambda + 2.0);
            -d2 * lambda * q / (w * w * w * g11)
        }
        CurveFamily::OrthTrajRulings => -(k * v2 + dp * v + d2 * (k + lambda)) / (w * w * w),
        CurveFamily::ConstGauss => {
            raw_direction(family, inv, v)?;
            let d4 = d2 * d2;
            let a = (4.0 * d2 + dp * dp) * v2 * v2
                + 4.0 * d2 * dp * lambda * v2 * v
                + 2.0 * d2 * (2.0 * d2 * (lambda * lambda + 1.0) - dp * dp) * v2
                - 4.0 * d4 * dp * lambda * v
                + d4 * dp * dp;
            -4.0 * d2 * v * (k * v2 * v + d2 * (k - lambda) * v + d2 * dp) / (w * a)
        }
    };
    Ok(kn)
}

pub fn normal_curvature_along(
    family: CurveFamily,
    surf: &StandardRuledSurface,
    u: f64,
    v: f64,
) -> Result<f64> {
    let inv = extract_invariants(surf, u)?;
    at_u(normal_curvature_along_at(family, &inv, v), u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", content = "step", rename_all = "snake_case")]
pub enum StopReason {
    Completed,
    /// The step with this index would leave the parameter domain.
    DomainExit(usize),
    /// The field degenerates during the step with this index.
    DegenerateField(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub u: f64,
    pub v: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TracedCurve {
    pub family: CurveFamily,
    pub points: Vec<TracePoint>,
    /// Length of the trace; steps are measured in surface arclength.
    pub arclength: f64,
    pub stop: StopReason,
}

struct Tracer<'a> {
    family: CurveFamily,
    surf: &'a StandardRuledSurface,
}

impl Tracer<'_> {
    /// Field at `(u, v)` oriented to agree with `reference`.
    fn field(&self, u: f64, v: f64, reference: Direction) -> Result<Direction> {
        let inv = extract_invariants(self.surf, u)?;
        let d = direction_at(self.family, &inv, v)?;
        let ff = FundamentalForms::at(&inv, v);
        Ok(if ff.first(d, reference) < 0.0 { -d } else { d })
    }

    fn rk4(&self, u: f64, v: f64, h: f64, reference: Direction) -> Result<(f64, f64, Direction)> {
        let k1 = self.field(u, v, reference)?;
        let k2 = self.field(u + 0.5 * h * k1.du, v + 0.5 * h * k1.dv, k1)?;
        let k3 = self.field(u + 0.5 * h * k2.du, v + 0.5 * h * k2.dv, k1)?;
        let k4 = self.field(u + h * k3.du, v + h * k3.dv, k1)?;
        let du = (k1.du + 2.0 * (k2.du + k3.du) + k4.du) / 6.0;
        let dv = (k1.dv + 2.0 * (k2.dv + k3.dv) + k4.dv) / 6.0;
        Ok((u + h * du, v + h * dv, k1))
    }
}

/// Fixed-step RK4 trace of `family` from `(u0, v0)`.
///
/// The field is g-normalized, so `step_size` is surface arclength. The
/// initial direction is the canonical one; a negative `step_size` traces
/// the opposite way. The trace stops early, keeping all completed points,
/// when a step would leave the domain or meet a degenerate field.
pub fn trace_curve(
    family: CurveFamily,
    surf: &StandardRuledSurface,
    u0: f64,
    v0: f64,
    steps: usize,
    step_size: f64,
) -> Result<TracedCurve> {
    if !(step_size.is_finite() && step_size != 0.0) || !v0.is_finite() {
        return Err(Error::ParamOutOfRange {
            param: "step_size".into(),
            value: step_size,
            reason: "must be finite and nonzero",
        });
    }
    let tracer = Tracer { family, surf };
    let mut reference = direction_field(family, surf, u0, v0)?;
    let point = |u: f64, v: f64| -> Result<TracePoint> {
        let x = surf.point(u, v)?;
        Ok(TracePoint {
            u,
            v,
            x: x.x,
            y: x.y,
            z: x.z,
        })
    };

    let mut points = vec![point(u0, v0)?];
    let (mut u, mut v) = (u0, v0);
    let mut stop = StopReason::Completed;
    for i in 0..steps {
        match tracer.rk4(u, v, step_size, reference) {
            Ok((un, vn, k1)) if surf.domain().contains(un) => {
                u = un;
                v = vn;
                reference = k1;
                points.push(point(u, v)?);
            }
            Ok(_) | Err(Error::OutOfDomain { .. }) => {
                stop = StopReason::DomainExit(i);
                break;
            }
            Err(Error::DegenerateField { .. } | Error::ZeroDirection) => {
                stop = StopReason::DegenerateField(i);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let arclength = step_size.abs() * (points.len() - 1) as f64;
    Ok(TracedCurve {
        family,
        points,
        arclength,
        stop,
    })
}
