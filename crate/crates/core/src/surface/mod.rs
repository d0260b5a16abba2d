//! Skew ruled surfaces `x(u, v) = s(u) + v·e(u)` in striction-line form.
//!
//! The standard gauge requires the director `e` to be a unit vector moving
//! with unit speed on the sphere and the striction curve `s` to satisfy
//! `⟨s′, e′⟩ = 0`. Every [`StandardRuledSurface`] built through the public
//! constructors has been checked against these conditions.

mod gallery;
mod reconstruct;
mod standardize;

pub use gallery::{
    gallery, generic_skew_random, helical_strip, ClosedFormInvariants, GallerySurface,
    DEFAULT_DOMAIN, GALLERY_NAMES,
};
pub use reconstruct::{
    surface_from_invariants, Frame, InvariantTriple, Profile, ReconstructOptions,
};
pub use standardize::{standardize, StandardizeOptions};

use crate::curve::{CurveJet, CurveR3, Interval, Vec3};
use crate::error::{Error, Result};

/// Tolerances used when validating the standard gauge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeTolerances {
    /// Bound on `||e| − 1|`, `||e′| − 1|` and the relative size of `⟨s′, e′⟩`.
    pub gauge: f64,
    /// Lower bound on `|δ|` relative to `max(1, |s′|)`.
    pub skew: f64,
    /// Number of uniformly spaced parameters checked.
    pub samples: usize,
}

impl Default for GaugeTolerances {
    fn default() -> Self {
        Self {
            gauge: 1e-7,
            skew: 1e-9,
            samples: 65,
        }
    }
}

/// Striction curve and director jets at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalJets {
    pub s: CurveJet,
    pub e: CurveJet,
}

impl LocalJets {
    /// Point `x(u, v) = s + v e`.
    pub fn point(&self, v: f64) -> Vec3 {
        self.s.value + self.e.value * v
    }
}

/// Residuals of the standard-gauge conditions at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeResiduals {
    pub unit_director: f64,
    pub unit_speed: f64,
    pub orthogonality: f64,
}

impl GaugeResiduals {
    pub fn of(jets: &LocalJets) -> Self {
        Self {
            unit_director: (jets.e.value.norm() - 1.0).abs(),
            unit_speed: (jets.e.d1.norm() - 1.0).abs(),
            orthogonality: jets.s.d1.dot(&jets.e.d1).abs(),
        }
    }

    pub fn max(&self) -> f64 {
        self.unit_director
            .max(self.unit_speed)
            .max(self.orthogonality)
    }
}

#[derive(Debug, Clone)]
pub struct StandardRuledSurface {
    striction: CurveR3,
    director: CurveR3,
    domain: Interval,
}

impl StandardRuledSurface {
    /// Validates the standard gauge and skewness with default tolerances.
    pub fn new(striction: CurveR3, director: CurveR3) -> Result<Self> {
        Self::with_tolerances(striction, director, GaugeTolerances::default())
    }

    pub fn with_tolerances(
        striction: CurveR3,
        director: CurveR3,
        tol: GaugeTolerances,
    ) -> Result<Self> {
        let domain = striction.domain();
        if director.domain() != domain {
            return Err(Error::InvalidSpec(
                "striction curve and director must share a domain".into(),
            ));
        }
        let surf = Self {
            striction,
            director,
            domain,
        };
        for u in domain.linspace(tol.samples.max(2)) {
            let jets = surf.local(u)?;
            if !jets.s.is_finite() || !jets.e.is_finite() {
                return Err(Error::Internal(format!(
                    "non-finite surface jets at u = {u}"
                )));
            }
            let r = GaugeResiduals::of(&jets);
            let scale = jets.s.d1.norm().max(1.0);
            for (condition, residual, bound) in [
                ("|e| = 1", r.unit_director, tol.gauge),
                ("|e'| = 1", r.unit_speed, tol.gauge),
                ("<s', e'> = 0", r.orthogonality, tol.gauge * scale),
            ] {
                if !(residual <= bound) {
                    return Err(Error::GaugeViolation {
                        u,
                        condition,
                        residual,
                        tolerance: bound,
                    });
                }
            }
            let delta = jets.e.value.cross(&jets.e.d1).dot(&jets.s.d1);
            if !(delta.abs() > tol.skew * scale) {
                return Err(Error::NonSkew { u, delta });
            }
        }
        Ok(surf)
    }

    pub fn striction(&self) -> &CurveR3 {
        &self.striction
    }

    pub fn director(&self) -> &CurveR3 {
        &self.director
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn local(&self, u: f64) -> Result<LocalJets> {
        self.domain.check(u)?;
        Ok(LocalJets {
            s: self.striction.jet(u),
            e: self.director.jet(u),
        })
    }

    pub fn point(&self, u: f64, v: f64) -> Result<Vec3> {
        self.domain.check(u)?;
        Ok(self.striction.point(u) + self.director.point(u) * v)
    }

    pub fn gauge_residuals(&self, u: f64) -> Result<GaugeResiduals> {
        Ok(GaugeResiduals::of(&self.local(u)?))
    }

    /// Image under the homothety `x ↦ factor·x`. The director and the
    /// parameter are unchanged; `v` and all lengths scale by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::ParamOutOfRange {
                param: "factor".into(),
                value: factor,
                reason: "homothety factor must be positive",
            });
        }
        Self::new(self.striction.scaled(factor), self.director.clone())
    }
}
