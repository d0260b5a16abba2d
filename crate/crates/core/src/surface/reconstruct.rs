//! Reconstruction of a standard ruled surface from its invariants `(k, δ, σ)`.
//!
//! Along the spherical director the frame `e₁ = e`, `e₂ = e′`, `e₃ = e × e′`
//! obeys `e₁′ = e₂`, `e₂′ = −e₁ + k e₃`, `e₃′ = −k e₂`, and the striction curve
//! moves with `s′ = δ (λ e₁ + e₃)` where `λ = cot σ`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use crate::curve::{CurveJet, CurveR3, Interval, Vec3};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jet::{Jet2, Scalar};
use crate::spline::CubicSpline;

use super::StandardRuledSurface;

/// A scalar function of `u` with first and second derivatives.
#[derive(Clone)]
pub struct Profile(Arc<dyn Fn(f64) -> Jet2 + Send + Sync>);

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Profile(..)")
    }
}

impl Profile {
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(f64) -> Jet2 + Send + Sync + 'static,
    {
        Self(Arc::new(f))
    }

    pub fn constant(c: f64) -> Self {
        Self::from_fn(move |_| Jet2::constant(c))
    }

    pub fn expr(src: &str) -> Result<Self> {
        let e = Expr::parse(src)?;
        Ok(Self::from_fn(move |u| e.eval(Jet2::variable(u))))
    }

    pub fn spline(u: &[f64], values: &[f64]) -> Result<Self> {
        let s = CubicSpline::new(u, values)?;
        Ok(Self::from_fn(move |t| s.eval(t)))
    }

    pub fn eval(&self, u: f64) -> Jet2 {
        (self.0)(u)
    }
}

/// Conical curvature `k`, parameter of distribution `δ` and striction `σ`
/// as functions of the director's arclength.
#[derive(Debug, Clone)]
pub struct InvariantTriple {
    pub k: Profile,
    pub delta: Profile,
    pub sigma: Profile,
}

impl InvariantTriple {
    pub fn new(k: Profile, delta: Profile, sigma: Profile) -> Self {
        Self { k, delta, sigma }
    }

    pub fn constant(k: f64, delta: f64, sigma: f64) -> Self {
        Self::new(
            Profile::constant(k),
            Profile::constant(delta),
            Profile::constant(sigma),
        )
    }

    /// Natural cubic splines through sampled invariants.
    pub fn from_samples(u: &[f64], k: &[f64], delta: &[f64], sigma: &[f64]) -> Result<Self> {
        if u.len() < 4 {
            return Err(Error::InvalidSamples(format!(
                "need at least 4 samples, got {}",
                u.len()
            )));
        }
        if [k.len(), delta.len(), sigma.len()]
            .iter()
            .any(|&n| n != u.len())
        {
            return Err(Error::InvalidSamples(
                "u, k, delta and sigma must have equal length".into(),
            ));
        }
        Ok(Self::new(
            Profile::spline(u, k)?,
            Profile::spline(u, delta)?,
            Profile::spline(u, sigma)?,
        ))
    }

    /// `λ = cot σ` with derivatives.
    pub fn lambda(&self, u: f64) -> Jet2 {
        let s = self.sigma.eval(u);
        s.cos() / s.sin()
    }
}

/// Right-handed orthonormal frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub e1: Vec3,
    pub e2: Vec3,
    pub e3: Vec3,
}

impl Frame {
    pub fn standard() -> Self {
        Self {
            e1: Vec3::x(),
            e2: Vec3::y(),
            e3: Vec3::z(),
        }
    }

    pub fn new(e1: Vec3, e2: Vec3, e3: Vec3) -> Result<Self> {
        let f = Self { e1, e2, e3 };
        let tol = 1e-9;
        let ok = [e1, e2, e3].iter().all(|v| (v.norm() - 1.0).abs() < tol)
            && e1.dot(&e2).abs() < tol
            && e1.dot(&e3).abs() < tol
            && e2.dot(&e3).abs() < tol
            && (e1.cross(&e2) - e3).norm() < tol;
        if ok {
            Ok(f)
        } else {
            Err(Error::InvalidFrame)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructOptions {
    /// Largest RK4 step of the stored frame table.
    pub max_step: f64,
    pub min_steps: usize,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        Self {
            max_step: 1e-3,
            min_steps: 64,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct State {
    frame: [Vec3; 3],
    s: Vec3,
}

impl State {
    fn axpy(&self, h: f64, d: &State) -> State {
        State {
            frame: [
                self.frame[0] + d.frame[0] * h,
                self.frame[1] + d.frame[1] * h,
                self.frame[2] + d.frame[2] * h,
            ],
            s: self.s + d.s * h,
        }
    }

    fn is_finite(&self) -> bool {
        self.frame
            .iter()
            .chain(std::iter::once(&self.s))
            .all(|v| v.iter().all(|x| x.is_finite()))
    }
}

struct FrameTable {
    inv: InvariantTriple,
    lo: f64,
    step: f64,
    nodes: Vec<State>,
}

impl FrameTable {
    fn rhs(&self, u: f64, y: &State) -> State {
        let k = self.inv.k.eval(u).value();
        let delta = self.inv.delta.eval(u).value();
        let lambda = self.inv.lambda(u).value();
        let [e1, e2, e3] = y.frame;
        State {
            frame: [e2, -e1 + e3 * k, -e2 * k],
            s: (e1 * lambda + e3) * delta,
        }
    }

    fn rk4(&self, u: f64, y: &State, h: f64) -> State {
        let k1 = self.rhs(u, y);
        let k2 = self.rhs(u + 0.5 * h, &y.axpy(0.5 * h, &k1));
        let k3 = self.rhs(u + 0.5 * h, &y.axpy(0.5 * h, &k2));
        let k4 = self.rhs(u + h, &y.axpy(h, &k3));
        State {
            frame: std::array::from_fn(|i| {
                y.frame[i]
                    + (k1.frame[i] + (k2.frame[i] + k3.frame[i]) * 2.0 + k4.frame[i]) * (h / 6.0)
            }),
            s: y.s + (k1.s + (k2.s + k3.s) * 2.0 + k4.s) * (h / 6.0),
        }
    }

    fn state(&self, u: f64) -> State {
        let pos = ((u - self.lo) / self.step).floor();
        let j = (pos.max(0.0) as usize).min(self.nodes.len() - 1);
        let u_j = self.lo + self.step * j as f64;
        let h = u - u_j;
        if h == 0.0 {
            self.nodes[j]
        } else {
            self.rk4(u_j, &self.nodes[j], h)
        }
    }

    fn jets(&self, u: f64) -> (CurveJet, CurveJet) {
        let y = self.state(u);
        let [e1, e2, e3] = y.frame;
        let k = self.inv.k.eval(u).value();
        let b = self.inv.delta.eval(u);
        let a = b * self.inv.lambda(u);
        let e = CurveJet {
            value: e1,
            d1: e2,
            d2: -e1 + e3 * k,
        };
        let s = CurveJet {
            value: y.s,
            d1: e1 * a.value() + e3 * b.value(),
            d2: e1 * a.d1() + e2 * (a.value() - b.value() * k) + e3 * b.d1(),
        };
        (s, e)
    }
}

/// Integrates the moving frame of `inv` from `frame0` and `s0` at the left end
/// of `domain`. The result is unique up to the rigid motion fixed by the
/// initial frame and point.
pub fn surface_from_invariants(
    inv: &InvariantTriple,
    frame0: Frame,
    s0: Vec3,
    domain: Interval,
    opts: &ReconstructOptions,
) -> Result<StandardRuledSurface> {
    let steps = ((domain.length() / opts.max_step).ceil() as usize).max(opts.min_steps.max(1));
    let step = domain.length() / steps as f64;
    for i in 0..=steps {
        let u = domain.lo + step * i as f64;
        let sigma = inv.sigma.eval(u).value();
        if !(sigma > -FRAC_PI_2 && sigma <= FRAC_PI_2 + 1e-12) || sigma.abs() < 1e-12 {
            return Err(Error::InvalidSigma { u, sigma });
        }
        let delta = inv.delta.eval(u).value();
        if !(delta.abs() > 1e-12) {
            return Err(Error::NonSkew { u, delta });
        }
        if !inv.k.eval(u).is_finite() || !inv.delta.eval(u).is_finite() {
            return Err(Error::IntegrationFailure { u });
        }
    }

    let mut table = FrameTable {
        inv: inv.clone(),
        lo: domain.lo,
        step,
        nodes: Vec::with_capacity(steps + 1),
    };
    let mut y = State {
        frame: [frame0.e1, frame0.e2, frame0.e3],
        s: s0,
    };
    table.nodes.push(y);
    for i in 0..steps {
        let u = domain.lo + step * i as f64;
        y = table.rk4(u, &y, step);
        if !y.is_finite() {
            return Err(Error::IntegrationFailure { u: u + step });
        }
        table.nodes.push(y);
    }

    let table = Arc::new(table);
    let for_s = Arc::clone(&table);
    let for_e = table;
    let striction = CurveR3::from_jet_fn(move |u| for_s.jets(u).0.to_components(), domain);
    let director = CurveR3::from_jet_fn(move |u| for_e.jets(u).1.to_components(), domain);
    StandardRuledSurface::new(striction, director)
}
