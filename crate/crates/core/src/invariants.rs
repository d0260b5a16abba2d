//! Scalar invariants, fundamental forms, curvatures and normal curvature of a
//! standard ruled surface.
//!
//! Everything here is a closed-form expression in `(k, δ, δ′, λ)` at a ruling
//! and the striction distance `v`, with `w = √(v² + δ²)`. The normal is
//! oriented as `x_u × x_v`, which fixes the signs of `h12 = δ/w`, of `H` and
//! of the principal curvatures.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{LocalJets, StandardRuledSurface};

/// `(k, δ, δ′, σ, λ)` at one ruling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointInvariants {
    /// Conical curvature `(e, e′, e″)`.
    pub k: f64,
    /// Parameter of distribution `(e, e′, s′)`.
    pub delta: f64,
    /// `dδ/du`.
    pub delta_prime: f64,
    /// Striction in `(−π/2, π/2]` with `cot σ = λ`.
    pub sigma: f64,
    /// `⟨e, s′⟩ / δ`.
    pub lambda: f64,
}

/// Round-off bound below which `λ` counts as zero.
pub const LAMBDA_ZERO: f64 = 1e-14;

/// `σ ∈ (−π/2, π/2]` with `cot σ = λ`.
///
/// `λ = 0` is the branch cut; values within [`LAMBDA_ZERO`] of it map to
/// `π/2` so that orthoid surfaces do not flicker between `±π/2`.
pub fn sigma_from_lambda(lambda: f64) -> f64 {
    if lambda.abs() < LAMBDA_ZERO {
        FRAC_PI_2
    } else if lambda > 0.0 {
        FRAC_PI_2 - lambda.atan()
    } else {
        -FRAC_PI_2 - lambda.atan()
    }
}

impl PointInvariants {
    pub fn from_jets(j: &LocalJets) -> Self {
        let e = j.e.value;
        let e3 = e.cross(&j.e.d1);
        let k = e3.dot(&j.e.d2);
        let delta = e3.dot(&j.s.d1);
        let delta_prime = e3.dot(&j.s.d2) + e.cross(&j.e.d2).dot(&j.s.d1);
        let lambda = e.dot(&j.s.d1) / delta;
        Self {
            k,
            delta,
            delta_prime,
            sigma: sigma_from_lambda(lambda),
            lambda,
        }
    }

    /// Whether `sign σ = sign δ`; equivalent to `⟨e, s′⟩ ≥ 0` when `λ ≠ 0`.
    pub fn sign_convention_holds(&self) -> bool {
        self.sigma.signum() == self.delta.signum()
    }

    pub fn w(&self, v: f64) -> f64 {
        v.hypot(self.delta)
    }
}

pub fn extract_invariants(surf: &StandardRuledSurface, u: f64) -> Result<PointInvariants> {
    Ok(PointInvariants::from_jets(&surf.local(u)?))
}

/// Tangent direction `du : dv`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Direction {
    pub du: f64,
    pub dv: f64,
}

impl Direction {
    pub fn new(du: f64, dv: f64) -> Self {
        Self { du, dv }
    }

    /// Scaled to unit length in the first fundamental form.
    pub fn g_normalized(self, ff: &FundamentalForms) -> Result<Self> {
        let n = ff.first(self, self).sqrt();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::ZeroDirection);
        }
        Ok(Self::new(self.du / n, self.dv / n))
    }

    /// Orientation with `du > 0`, or `dv > 0` along a ruling.
    pub fn canonical(self) -> Self {
        if self.du < 0.0 || (self.du == 0.0 && self.dv < 0.0) {
            -self
        } else {
            self
        }
    }
}

impl std::ops::Neg for Direction {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.du, -self.dv)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FundamentalForms {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub h11: f64,
    pub h12: f64,
    pub h22: f64,
    pub w: f64,
}

impl FundamentalForms {
    pub fn at(inv: &PointInvariants, v: f64) -> Self {
        let PointInvariants {
            k,
            delta,
            delta_prime,
            lambda,
            ..
        } = *inv;
        let w = inv.w(v);
        let d2 = delta * delta;
        Self {
            g11: v * v + d2 * (lambda * lambda + 1.0),
            g12: delta * lambda,
            g22: 1.0,
            h11: -(k * v * v + delta_prime * v + d2 * (k - lambda)) / w,
            h12: delta / w,
            h22: 0.0,
            w,
        }
    }

    pub fn det_g(&self) -> f64 {
        self.g11 * self.g22 - self.g12 * self.g12
    }

    /// First fundamental form as a bilinear form.
    pub fn first(&self, a: Direction, b: Direction) -> f64 {
        self.g11 * a.du * b.du + self.g12 * (a.du * b.dv + a.dv * b.du) + self.g22 * a.dv * b.dv
    }

    pub fn second(&self, a: Direction, b: Direction) -> f64 {
        self.h11 * a.du * b.du + self.h12 * (a.du * b.dv + a.dv * b.du) + self.h22 * a.dv * b.dv
    }
}

pub fn fundamental_forms(surf: &StandardRuledSurface, u: f64, v: f64) -> Result<FundamentalForms> {
    Ok(FundamentalForms::at(&extract_invariants(surf, u)?, v))
}

/// Gaussian and mean curvature with principal curvatures `k1 ≤ k2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvaturePair {
    pub gaussian: f64,
    pub mean: f64,
    pub k1: f64,
    pub k2: f64,
}

impl CurvaturePair {
    pub fn at(inv: &PointInvariants, v: f64) -> Result<Self> {
        let w = inv.w(v);
        let d2 = inv.delta * inv.delta;
        let gaussian = -d2 / (w * w * w * w);
        let mean =
            -(inv.k * v * v + inv.delta_prime * v + d2 * (inv.k + inv.lambda)) / (2.0 * w * w * w);
        let mut disc = mean * mean - gaussian;
        if disc < 0.0 {
            if disc < -1e-12 {
                return Err(Error::Internal(format!("H^2 - K = {disc:e} < 0")));
            }
            disc = 0.0;
        }
        let root = disc.sqrt();
        Ok(Self {
            gaussian,
            mean,
            k1: mean - root,
            k2: mean + root,
        })
    }
}

pub fn gaussian_mean(surf: &StandardRuledSurface, u: f64, v: f64) -> Result<CurvaturePair> {
    CurvaturePair::at(&extract_invariants(surf, u)?, v)
}

pub fn normal_curvature_at(ff: &FundamentalForms, dir: Direction) -> Result<f64> {
    if !(dir.du.is_finite() && dir.dv.is_finite()) || (dir.du == 0.0 && dir.dv == 0.0) {
        return Err(Error::ZeroDirection);
    }
    Ok(ff.second(dir, dir) / ff.first(dir, dir))
}

/// Normal curvature in direction `du : dv`.
pub fn normal_curvature(
    surf: &StandardRuledSurface,
    u: f64,
    v: f64,
    du: f64,
    dv: f64,
) -> Result<f64> {
    normal_curvature_at(&fundamental_forms(surf, u, v)?, Direction::new(du, dv))
}

/// g-unit principal directions for `k1` and `k2`, in canonical orientation.
pub fn principal_directions_at(inv: &PointInvariants, v: f64) -> Result<[Direction; 2]> {
    let ff = FundamentalForms::at(inv, v);
    let cp = CurvaturePair::at(inv, v)?;
    // K < 0 rules out umbilics
    assert!(cp.k2 > cp.k1, "umbilic point on a skew ruled surface");
    let dir = |kappa: f64| -> Result<Direction> {
        let a = ff.h11 - kappa * ff.g11;
        let b = ff.h12 - kappa * ff.g12;
        let c = ff.h22 - kappa * ff.g22;
        // null vector of [[a, b], [b, c]] from the better-conditioned row
        let d = if a.hypot(b) >= b.hypot(c) {
            Direction::new(-b, a)
        } else {
            Direction::new(-c, b)
        };
        Ok(d.g_normalized(&ff)?.canonical())
    };
    Ok([dir(cp.k1)?, dir(cp.k2)?])
}

pub fn principal_directions(surf: &StandardRuledSurface, u: f64, v: f64) -> Result<[Direction; 2]> {
    principal_directions_at(&extract_invariants(surf, u)?, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::GallerySurface;

    fn helicoid(c: f64) -> StandardRuledSurface {
        GallerySurface::RightHelicoid { c }.build().unwrap()
    }

    #[test]
    fn right_helicoid_invariants() {
        let surf = helicoid(2.0);
        for u in [-1.0, 0.0, 0.4, 1.5] {
            let p = extract_invariants(&surf, u).unwrap();
            assert!(p.k.abs() < 1e-14);
            assert!((p.delta - 2.0).abs() < 1e-14);
            assert!(p.lambda.abs() < 1e-14);
            assert!(p.delta_prime.abs() < 1e-14);
            assert!((p.sigma - FRAC_PI_2).abs() < 1e-14);
        }
    }

    #[test]
    fn conoidal_invariants() {
        let surf = GallerySurface::ConoidalConstDelta {
            alpha: 2.0,
            beta: 1.0,
        }
        .build()
        .unwrap();
        let p = extract_invariants(&surf, 0.3).unwrap();
        assert!(p.k.abs() < 1e-14);
        assert!((p.delta - 1.0).abs() < 1e-14);
        assert!((p.lambda - 2.0).abs() < 1e-14);
    }

    #[test]
    fn sigma_branch() {
        assert_eq!(sigma_from_lambda(0.0), FRAC_PI_2);
        assert!((sigma_from_lambda(1.0) - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!((sigma_from_lambda(-1.0) + std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert_eq!(sigma_from_lambda(-1e-17), FRAC_PI_2);
        for l in [-1e6, -3.0, -1e-9, 1e-9, 0.5, 1e6] {
            let s = sigma_from_lambda(l);
            assert!(s > -FRAC_PI_2 && s <= FRAC_PI_2);
            assert!((1.0 / s.tan() - l).abs() <= 1e-9 * l.abs().max(1.0));
        }
    }

    #[test]
    fn out_of_domain() {
        let surf = helicoid(1.0);
        assert!(matches!(
            extract_invariants(&surf, 10.0),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn helicoid_forms_at_striction() {
        let ff = fundamental_forms(&helicoid(1.0), 0.2, 0.0).unwrap();
        assert!((ff.g11 - 1.0).abs() < 1e-14 && ff.g12.abs() < 1e-14 && ff.g22 == 1.0);
        assert!(ff.h11.abs() < 1e-14 && (ff.h12 - 1.0).abs() < 1e-14 && ff.h22 == 0.0);
    }

    #[test]
    fn gaussian_at_striction() {
        let inv = PointInvariants {
            k: 0.3,
            delta: 2.0,
            delta_prime: 0.1,
            sigma: 1.0,
            lambda: 1.0f64.tan().recip(),
        };
        let cp = CurvaturePair::at(&inv, 0.0).unwrap();
        assert!((cp.gaussian + 0.25).abs() < 1e-15);
    }

    #[test]
    fn helicoid_principal_curvatures() {
        let cp = gaussian_mean(&helicoid(1.0), 0.0, 0.0).unwrap();
        assert!(cp.mean.abs() < 1e-14);
        assert!((cp.k1 + 1.0).abs() < 1e-14 && (cp.k2 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rulings_are_asymptotic() {
        let surf = GallerySurface::GenericSkew {
            k: 0.8,
            delta0: 1.0,
            delta1: 0.25,
            alpha0: 0.6,
        }
        .build()
        .unwrap();
        assert_eq!(normal_curvature(&surf, 0.3, 0.7, 0.0, 1.0).unwrap(), 0.0);
        let a = normal_curvature(&surf, 0.3, 0.7, 1.0, 0.4).unwrap();
        let b = normal_curvature(&surf, 0.3, 0.7, 2.0, 0.8).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            normal_curvature(&surf, 0.3, 0.7, 0.0, 0.0).unwrap_err(),
            Error::ZeroDirection
        );
    }

    #[test]
    fn helicoid_constant_striction_curves_are_asymptotic() {
        let surf = helicoid(1.0);
        for (u, v) in [(0.0, 0.0), (0.5, 1.3), (-1.2, -2.0)] {
            assert!(normal_curvature(&surf, u, v, 1.0, 0.0).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn edlinger_principal_directions() {
        let surf = GallerySurface::HyperboloidEdlinger { c: 1.0 }
            .build()
            .unwrap();
        for (u, v) in [(0.0, 0.0), (0.5, 1.3), (-1.2, -2.0)] {
            let p = extract_invariants(&surf, u).unwrap();
            let [d1, d2] = principal_directions(&surf, u, v).unwrap();
            // first branch runs along v = const
            assert!(d1.dv.abs() < 1e-12, "{d1:?}");
            let (k, delta) = (p.k, p.delta);
            let residual =
                (k * k * v * v + delta * delta * (k * k + 1.0)) * d2.du - delta * k * d2.dv;
            assert!(residual.abs() < 1e-12, "{residual}");
            let ff = FundamentalForms::at(&p, v);
            assert!(ff.first(d1, d2).abs() < 1e-12);
        }
    }
}
