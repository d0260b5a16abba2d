//! Space curves evaluated as jets, and the parameter intervals they live on.

use std::fmt;
use std::sync::Arc;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jet::{Jet, Jet2, Jet3};

pub type Vec3 = Vector3<f64>;

/// Closed parameter interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::InvalidInterval { lo, hi })
        }
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    fn slack(&self) -> f64 {
        1e-12 * self.length().max(self.lo.abs()).max(self.hi.abs()).max(1.0)
    }

    /// Membership with a round-off allowance at the endpoints.
    pub fn contains(&self, u: f64) -> bool {
        u.is_finite() && u >= self.lo - self.slack() && u <= self.hi + self.slack()
    }

    pub fn check(&self, u: f64) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                u,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }

    /// `n` uniformly spaced samples including both endpoints.
    pub fn linspace(&self, n: usize) -> Vec<f64> {
        linspace(self.lo, self.hi, n)
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

/// Position and first two derivatives of a space curve at one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet {
    pub value: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
}

impl CurveJet {
    pub fn from_components(c: &[Jet2; 3]) -> Self {
        Self {
            value: Vec3::new(c[0].value(), c[1].value(), c[2].value()),
            d1: Vec3::new(c[0].d1(), c[1].d1(), c[2].d1()),
            d2: Vec3::new(c[0].d2(), c[1].d2(), c[2].d2()),
        }
    }

    pub fn to_components(&self) -> [Jet2; 3] {
        std::array::from_fn(|i| Jet::from_derivatives([self.value[i], self.d1[i], self.d2[i]]))
    }

    pub fn is_finite(&self) -> bool {
        self.value
            .iter()
            .chain(self.d1.iter())
            .chain(self.d2.iter())
            .all(|x| x.is_finite())
    }
}

type JetFn = dyn Fn(f64) -> [Jet2; 3] + Send + Sync;

#[derive(Clone)]
enum CurveEval {
    Expr(Arc<[Expr; 3]>),
    Jets(Arc<JetFn>),
}

/// A curve `u ↦ R³` on a closed interval with second-order jet access.
///
/// Expression-backed curves can also be evaluated to third order, which
/// `standardize` needs for the striction curve's second derivative.
#[derive(Clone)]
pub struct CurveR3 {
    eval: CurveEval,
    domain: Interval,
}

impl fmt::Debug for CurveR3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("CurveR3");
        if let CurveEval::Expr(e) = &self.eval {
            d.field(
                "components",
                &[e[0].to_string(), e[1].to_string(), e[2].to_string()],
            );
        }
        d.field("domain", &self.domain).finish()
    }
}

impl CurveR3 {
    pub fn from_exprs(components: [Expr; 3], domain: Interval) -> Self {
        Self {
            eval: CurveEval::Expr(Arc::new(components)),
            domain,
        }
    }

    pub fn parse(components: [&str; 3], domain: Interval) -> Result<Self> {
        let [x, y, z] = components;
        Ok(Self::from_exprs(
            [Expr::parse(x)?, Expr::parse(y)?, Expr::parse(z)?],
            domain,
        ))
    }

    pub fn from_jet_fn<F>(f: F, domain: Interval) -> Self
    where
        F: Fn(f64) -> [Jet2; 3] + Send + Sync + 'static,
    {
        Self {
            eval: CurveEval::Jets(Arc::new(f)),
            domain,
        }
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn exprs(&self) -> Option<&[Expr; 3]> {
        match &self.eval {
            CurveEval::Expr(e) => Some(e),
            CurveEval::Jets(_) => None,
        }
    }

    /// Second-order jets of the three components. No domain check.
    pub fn jet2(&self, u: f64) -> [Jet2; 3] {
        match &self.eval {
            CurveEval::Expr(e) => {
                let x = Jet2::variable(u);
                [e[0].eval(x), e[1].eval(x), e[2].eval(x)]
            }
            CurveEval::Jets(f) => f(u),
        }
    }

    /// Third-order jets, available for expression-backed curves only.
    pub fn jet3(&self, u: f64) -> Option<[Jet3; 3]> {
        match &self.eval {
            CurveEval::Expr(e) => {
                let x = Jet3::variable(u);
                Some([e[0].eval(x), e[1].eval(x), e[2].eval(x)])
            }
            CurveEval::Jets(_) => None,
        }
    }

    pub fn jet(&self, u: f64) -> CurveJet {
        CurveJet::from_components(&self.jet2(u))
    }

    pub fn point(&self, u: f64) -> Vec3 {
        match &self.eval {
            CurveEval::Expr(e) => Vec3::new(e[0].eval(u), e[1].eval(u), e[2].eval(u)),
            CurveEval::Jets(f) => {
                let c = f(u);
                Vec3::new(c[0].value(), c[1].value(), c[2].value())
            }
        }
    }

    /// Same curve with every point multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let inner = self.clone();
        Self::from_jet_fn(move |u| inner.jet2(u).map(|c| c * factor), self.domain)
    }
}
