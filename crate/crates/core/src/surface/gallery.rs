//! Closed-form surfaces of the special classes, plus a generic control.
//!
//! All members are helical strips: the director runs along a circle of
//! Euclidean radius `r = 1/√(1+k²)` on the unit sphere (constant conical
//! curvature `k`), and the striction curve moves with
//! `s′ = a(u) e + b(u) e×e′`, `a = α₀ + k δ₁ u`, `b = δ₀ + δ₁ u`.
//! This keeps `s` integrable in closed form while giving
//! `δ = δ₀ + δ₁ u` and `λ = a / b`.

use std::collections::BTreeMap;

use rand::Rng;

use crate::curve::{CurveR3, Interval};
use crate::error::{Error, Result};

use super::StandardRuledSurface;

pub const GALLERY_NAMES: [&str; 5] = [
    "right_helicoid",
    "hyperboloid_edlinger",
    "orthoid_const_delta",
    "conoidal_const_delta",
    "generic_skew",
];

pub const DEFAULT_DOMAIN: (f64, f64) = (-1.5, 1.5);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GallerySurface {
    /// `(k, δ, λ) = (0, c, 0)`.
    RightHelicoid { c: f64 },
    /// Rulings of a rotational hyperboloid with gorge radius 1 and axis slope
    /// `c`: `(k, δ, λ) = (c, −c, −1/c)`, so `δ′ = 0` and `kλ + 1 = 0`.
    HyperboloidEdlinger { c: f64 },
    /// Director on a circle of radius `r`: `k = √(1−r²)/r`, `λ = 0`, constant `δ`.
    OrthoidConstDelta { r: f64, delta: f64 },
    /// `s′ = α e + β e×e′` with a great-circle director: `(k, δ, λ) = (0, β, α/β)`.
    ConoidalConstDelta { alpha: f64, beta: f64 },
    /// `δ = δ₀ + δ₁ u` with `δ₁ ≠ 0`, `k ≠ 0` and non-constant `λ`.
    GenericSkew {
        k: f64,
        delta0: f64,
        delta1: f64,
        alpha0: f64,
    },
}

/// Invariants of a gallery surface at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormInvariants {
    pub k: f64,
    pub delta: f64,
    pub delta_prime: f64,
    pub lambda: f64,
}

impl ClosedFormInvariants {
    /// Invariants of [`helical_strip`] with coefficients `(k, δ₀, δ₁, α₀)`.
    pub fn of_strip((k, delta0, delta1, alpha0): (f64, f64, f64, f64), u: f64) -> Self {
        let delta = delta0 + delta1 * u;
        Self {
            k,
            delta,
            delta_prime: delta1,
            lambda: (alpha0 + k * delta1 * u) / delta,
        }
    }
}

fn out_of_range(param: &str, value: f64, reason: &'static str) -> Error {
    Error::ParamOutOfRange {
        param: param.to_string(),
        value,
        reason,
    }
}

impl GallerySurface {
    pub fn name(&self) -> &'static str {
        match self {
            GallerySurface::RightHelicoid { .. } => "right_helicoid",
            GallerySurface::HyperboloidEdlinger { .. } => "hyperboloid_edlinger",
            GallerySurface::OrthoidConstDelta { .. } => "orthoid_const_delta",
            GallerySurface::ConoidalConstDelta { .. } => "conoidal_const_delta",
            GallerySurface::GenericSkew { .. } => "generic_skew",
        }
    }

    /// Parses a gallery name and parameter map. Missing parameters take
    /// their defaults; `u_min`/`u_max` are domain keys, handled by [`gallery`].
    pub fn from_name(name: &str, params: &BTreeMap<String, f64>) -> Result<Self> {
        let allowed: &[&str] = match name {
            "right_helicoid" | "hyperboloid_edlinger" => &["c"],
            "orthoid_const_delta" => &["r", "delta"],
            "conoidal_const_delta" => &["alpha", "beta"],
            "generic_skew" => &["k", "delta0", "delta1", "alpha0"],
            other => return Err(Error::UnknownGalleryName(other.to_string())),
        };
        if let Some(bad) = params
            .keys()
            .find(|k| !allowed.contains(&k.as_str()) && *k != "u_min" && *k != "u_max")
        {
            return Err(Error::UnknownParameter {
                surface: name.to_string(),
                param: bad.clone(),
            });
        }
        let p = |key: &str, default: f64| params.get(key).copied().unwrap_or(default);
        let surface = match name {
            "right_helicoid" => GallerySurface::RightHelicoid { c: p("c", 1.0) },
            "hyperboloid_edlinger" => GallerySurface::HyperboloidEdlinger { c: p("c", 1.0) },
            "orthoid_const_delta" => GallerySurface::OrthoidConstDelta {
                r: p("r", 0.6),
                delta: p("delta", 1.0),
            },
            "conoidal_const_delta" => GallerySurface::ConoidalConstDelta {
                alpha: p("alpha", 2.0),
                beta: p("beta", 1.0),
            },
            _ => GallerySurface::GenericSkew {
                k: p("k", 0.8),
                delta0: p("delta0", 1.0),
                delta1: p("delta1", 0.25),
                alpha0: p("alpha0", 0.6),
            },
        };
        surface.validate()?;
        Ok(surface)
    }

    pub fn params(&self) -> BTreeMap<String, f64> {
        let pairs: Vec<(&str, f64)> = match *self {
            GallerySurface::RightHelicoid { c } | GallerySurface::HyperboloidEdlinger { c } => {
                vec![("c", c)]
            }
            GallerySurface::OrthoidConstDelta { r, delta } => vec![("r", r), ("delta", delta)],
            GallerySurface::ConoidalConstDelta { alpha, beta } => {
                vec![("alpha", alpha), ("beta", beta)]
            }
            GallerySurface::GenericSkew {
                k,
                delta0,
                delta1,
                alpha0,
            } => vec![
                ("k", k),
                ("delta0", delta0),
                ("delta1", delta1),
                ("alpha0", alpha0),
            ],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    fn validate(&self) -> Result<()> {
        for (k, v) in self.params() {
            if !v.is_finite() {
                return Err(out_of_range(&k, v, "must be finite"));
            }
        }
        match *self {
            GallerySurface::RightHelicoid { c } if c == 0.0 => {
                Err(out_of_range("c", c, "must be nonzero"))
            }
            GallerySurface::HyperboloidEdlinger { c } if c <= 0.0 => {
                Err(out_of_range("c", c, "must be positive"))
            }
            GallerySurface::OrthoidConstDelta { r, .. } if !(r > 0.0 && r < 1.0) => {
                Err(out_of_range("r", r, "must lie in (0, 1)"))
            }
            GallerySurface::OrthoidConstDelta { delta, .. } if delta == 0.0 => {
                Err(out_of_range("delta", delta, "must be nonzero"))
            }
            GallerySurface::ConoidalConstDelta { beta, .. } if beta == 0.0 => {
                Err(out_of_range("beta", beta, "must be nonzero"))
            }
            GallerySurface::GenericSkew { k, .. } if k == 0.0 => {
                Err(out_of_range("k", k, "must be nonzero"))
            }
            GallerySurface::GenericSkew { delta1, .. } if delta1 == 0.0 => {
                Err(out_of_range("delta1", delta1, "must be nonzero"))
            }
            _ => Ok(()),
        }
    }

    /// Helical-strip coefficients `(k, δ₀, δ₁, α₀)`.
    pub fn strip(&self) -> (f64, f64, f64, f64) {
        match *self {
            GallerySurface::RightHelicoid { c } => (0.0, c, 0.0, 0.0),
            GallerySurface::HyperboloidEdlinger { c } => (c, -c, 0.0, 1.0),
            GallerySurface::OrthoidConstDelta { r, delta } => {
                ((1.0 - r * r).sqrt() / r, delta, 0.0, 0.0)
            }
            GallerySurface::ConoidalConstDelta { alpha, beta } => (0.0, beta, 0.0, alpha),
            GallerySurface::GenericSkew {
                k,
                delta0,
                delta1,
                alpha0,
            } => (k, delta0, delta1, alpha0),
        }
    }

    pub fn closed_form_invariants(&self, u: f64) -> ClosedFormInvariants {
        ClosedFormInvariants::of_strip(self.strip(), u)
    }

    pub fn build(&self) -> Result<StandardRuledSurface> {
        self.build_on(Interval::new(DEFAULT_DOMAIN.0, DEFAULT_DOMAIN.1)?)
    }

    pub fn build_on(&self, domain: Interval) -> Result<StandardRuledSurface> {
        self.validate()?;
        let (k, delta0, delta1, alpha0) = self.strip();
        // δ is affine, so a sign change on the domain means a torsal ruling
        let (a, b) = (delta0 + delta1 * domain.lo, delta0 + delta1 * domain.hi);
        if a * b <= 0.0 {
            let u = if delta1 != 0.0 {
                -delta0 / delta1
            } else {
                domain.lo
            };
            return Err(Error::NonSkew { u, delta: 0.0 });
        }
        helical_strip(k, delta0, delta1, alpha0, domain)
    }
}

/// Parses `name`/`params` (including optional `u_min`/`u_max`) and builds the surface.
pub fn gallery(name: &str, params: &BTreeMap<String, f64>) -> Result<StandardRuledSurface> {
    let surface = GallerySurface::from_name(name, params)?;
    let lo = params.get("u_min").copied().unwrap_or(DEFAULT_DOMAIN.0);
    let hi = params.get("u_max").copied().unwrap_or(DEFAULT_DOMAIN.1);
    surface.build_on(Interval::new(lo, hi)?)
}

fn lit(x: f64) -> String {
    format!("({x:?})")
}

/// Helical strip with conical curvature `k`, `δ = δ₀ + δ₁ u` and
/// `⟨e, s′⟩ = α₀ + k δ₁ u`, in closed form.
pub fn helical_strip(
    k: f64,
    delta0: f64,
    delta1: f64,
    alpha0: f64,
    domain: Interval,
) -> Result<StandardRuledSurface> {
    let r = 1.0 / (1.0 + k * k).sqrt();
    let h = k * r;
    let p = alpha0 * r - delta0 * h;
    let q0 = alpha0 * h + delta0 * r;
    let q1 = delta1 / r;
    let theta = format!("(u/{})", lit(r));
    let director = CurveR3::parse(
        [
            &format!("{}*cos{theta}", lit(r)),
            &format!("{}*sin{theta}", lit(r)),
            &lit(h),
        ],
        domain,
    )?;
    let striction = CurveR3::parse(
        [
            &format!("{}*sin{theta}", lit(p * r)),
            &format!("{}*cos{theta}", lit(-p * r)),
            &format!("{}*u + {}*u^2", lit(q0), lit(0.5 * q1)),
        ],
        domain,
    )?;
    StandardRuledSurface::new(striction, director)
}

/// Random generic skew surface with `δ` bounded away from zero on the
/// default domain and `kλ + 1` varying along `u`.
pub fn generic_skew_random<R: Rng + ?Sized>(rng: &mut R) -> GallerySurface {
    let mut signed = |lo: f64, hi: f64| {
        let m = rng.gen_range(lo..hi);
        if rng.gen_bool(0.5) {
            m
        } else {
            -m
        }
    };
    GallerySurface::GenericSkew {
        k: signed(0.3, 1.5),
        delta0: signed(0.6, 1.6),
        delta1: signed(0.05, 0.3),
        alpha0: signed(0.2, 1.2),
    }
}
