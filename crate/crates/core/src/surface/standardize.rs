use std::sync::Arc;

use crate::curve::{CurveJet, CurveR3, Interval};
use crate::error::{Error, Result};
use crate::jet::{Jet2, Jet3, Scalar};

use super::StandardRuledSurface;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardizeOptions {
    /// Nodes of the arclength table used to invert `t(u)`.
    pub grid_points: usize,
    /// Minimum `|d|` before the director counts as degenerate.
    pub tol_director: f64,
    /// Minimum spherical speed `|ē′|` before a ruling counts as torsal.
    pub tol_torsal: f64,
    /// Newton corrections applied after the cubic inverse.
    pub newton_iterations: usize,
}

impl Default for StandardizeOptions {
    fn default() -> Self {
        Self {
            grid_points: 1024,
            tol_director: 1e-12,
            tol_torsal: 1e-9,
            newton_iterations: 3,
        }
    }
}

// 5-point Gauss-Legendre on [-1, 1]
const GAUSS_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GAUSS_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

fn dot<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn normalized<S: Scalar>(d: &[S; 3]) -> [S; 3] {
    let n = dot(d, d).sqrt();
    [d[0] / n, d[1] / n, d[2] / n]
}

struct Reparam {
    base: CurveR3,
    director: CurveR3,
    u: Vec<f64>,
    t: Vec<f64>,
    speed: Vec<f64>,
    newton_iterations: usize,
}

impl Reparam {
    fn speed(&self, u: f64) -> f64 {
        let e = normalized(&self.director.jet2(u));
        (e[0].d1().powi(2) + e[1].d1().powi(2) + e[2].d1().powi(2)).sqrt()
    }

    fn arc(&self, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * GAUSS_NODES
            .iter()
            .zip(GAUSS_WEIGHTS)
            .map(|(x, w)| w * self.speed(mid + half * x))
            .sum::<f64>()
    }

    fn total(&self) -> f64 {
        *self.t.last().expect("non-empty arclength table")
    }

    /// Old parameter `u` for spherical arclength `t`.
    fn invert(&self, t: f64) -> f64 {
        let n = self.t.len();
        let t = t.clamp(0.0, self.total());
        let j = self.t.partition_point(|&x| x <= t).clamp(1, n - 1) - 1;
        let (t0, t1) = (self.t[j], self.t[j + 1]);
        let (u0, u1) = (self.u[j], self.u[j + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let (s2, s3) = (s * s, s * s * s);
        // cubic Hermite in t with exact slopes du/dt = 1/|ē′|
        let mut u = (2.0 * s3 - 3.0 * s2 + 1.0) * u0
            + (s3 - 2.0 * s2 + s) * h / self.speed[j]
            + (-2.0 * s3 + 3.0 * s2) * u1
            + (s3 - s2) * h / self.speed[j + 1];
        for _ in 0..self.newton_iterations {
            let residual = t0 + self.arc(u0, u) - t;
            u = (u - residual / self.speed(u)).clamp(u0, u1);
        }
        u
    }

    fn jets(&self, t: f64) -> (CurveJet, CurveJet) {
        let u = self.invert(t);
        let c3 = self.base.jet3(u).expect("checked at construction");
        let d3 = self.director.jet3(u).expect("checked at construction");
        let e3: [Jet3; 3] = normalized(&d3);

        let e: [Jet2; 3] = e3.map(|x| x.truncate());
        let ep: [Jet2; 3] = e3.map(|x| x.derivative_jet());
        let c: [Jet2; 3] = c3.map(|x| x.truncate());
        let cp: [Jet2; 3] = c3.map(|x| x.derivative_jet());

        // striction curve in the old parameter
        let mu = dot(&cp, &ep) / dot(&ep, &ep);
        let s: [Jet2; 3] = std::array::from_fn(|i| c[i] - mu * e[i]);

        let m = dot(&ep, &ep).value().sqrt();
        let m_prime =
            (ep[0].value() * ep[0].d1() + ep[1].value() * ep[1].d1() + ep[2].value() * ep[2].d1())
                / m;
        let inner = Jet2::from_derivatives([u, 1.0 / m, -m_prime / (m * m * m)]);

        let s_t = s.map(|x| inner.compose(&x));
        let e_t = e.map(|x| inner.compose(&x));
        (
            CurveJet::from_components(&s_t),
            CurveJet::from_components(&e_t),
        )
    }
}

/// Brings a ruled surface `c(u) + v·d(u)` into standard form.
///
/// The director is normalized and reparametrized by its spherical arclength
/// `t`, which starts at 0 at the left end of the input domain; the base curve
/// is replaced by the striction curve `c − (⟨c′, ē′⟩/⟨ē′, ē′⟩) ē`.
pub fn standardize(
    base: &CurveR3,
    director: &CurveR3,
    opts: &StandardizeOptions,
) -> Result<StandardRuledSurface> {
    let domain = base.domain();
    if director.domain() != domain {
        return Err(Error::InvalidSpec(
            "base curve and director must share a domain".into(),
        ));
    }
    let grid = domain.linspace(opts.grid_points.max(2));
    for &u in &grid {
        if base.jet3(u).is_none() {
            return Err(Error::MissingDerivatives);
        }
        let d = director.jet3(u).ok_or(Error::MissingDerivatives)?;
        let norm = d.iter().map(|x| x.value().powi(2)).sum::<f64>().sqrt();
        if !(norm >= opts.tol_director) {
            return Err(Error::DegenerateDirector { u, norm });
        }
    }

    let mut table = Reparam {
        base: base.clone(),
        director: director.clone(),
        u: Vec::with_capacity(grid.len()),
        t: Vec::with_capacity(grid.len()),
        speed: Vec::with_capacity(grid.len()),
        newton_iterations: opts.newton_iterations,
    };
    for &u in &grid {
        let speed = table.speed(u);
        if !(speed >= opts.tol_torsal) {
            return Err(Error::TorsalRuling { u, speed });
        }
        table.speed.push(speed);
    }
    let mut t = 0.0;
    table.t.push(0.0);
    for w in grid.windows(2) {
        t += table.arc(w[0], w[1]);
        table.t.push(t);
    }
    table.u = grid;

    let new_domain = Interval::new(0.0, table.total())?;
    let table = Arc::new(table);
    let for_s = Arc::clone(&table);
    let for_e = table;
    let striction = CurveR3::from_jet_fn(move |t| for_s.jets(t).0.to_components(), new_domain);
    let director = CurveR3::from_jet_fn(move |t| for_e.jets(t).1.to_components(), new_domain);
    StandardRuledSurface::new(striction, director)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::GallerySurface;

    fn domain(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn helicoid_input_is_already_standard() {
        let c = CurveR3::parse(["0", "0", "u"], domain(0.0, 2.0)).unwrap();
        let d = CurveR3::parse(["cos(u)", "sin(u)", "0"], domain(0.0, 2.0)).unwrap();
        let surf = standardize(&c, &d, &StandardizeOptions::default()).unwrap();
        assert!((surf.domain().hi - 2.0).abs() < 1e-12);
        for t in [0.0, 0.3, 1.1, 2.0] {
            let j = surf.local(t).unwrap();
            assert!((j.s.value - c.point(t)).norm() < 1e-12);
            assert!((j.e.value - d.point(t)).norm() < 1e-12);
        }
    }

    #[test]
    fn hyperboloid_rulings_from_gorge_circle() {
        let c = CurveR3::parse(["cos(u)", "sin(u)", "0"], domain(0.0, 3.0)).unwrap();
        let d = CurveR3::parse(
            ["-sin(u)/sqrt(2)", "cos(u)/sqrt(2)", "1/sqrt(2)"],
            domain(0.0, 3.0),
        )
        .unwrap();
        let surf = standardize(&c, &d, &StandardizeOptions::default()).unwrap();
        assert!((surf.domain().hi - 3.0 / 2f64.sqrt()).abs() < 1e-12);
        for i in 0..=20 {
            let t = surf.domain().hi * i as f64 / 20.0;
            let j = surf.local(t).unwrap();
            let r = super::super::GaugeResiduals::of(&j);
            assert!(r.max() < 1e-10, "{r:?}");
            // striction stays on the gorge circle
            let u = t * 2f64.sqrt();
            assert!((j.s.value - c.point(u)).norm() < 1e-10);
        }
    }

    #[test]
    fn constant_director_is_torsal() {
        let c = CurveR3::parse(["u", "0", "0"], domain(0.0, 1.0)).unwrap();
        let d = CurveR3::parse(["0", "0", "1"], domain(0.0, 1.0)).unwrap();
        let err = standardize(&c, &d, &StandardizeOptions::default()).unwrap_err();
        assert!(matches!(err, Error::TorsalRuling { .. }));
    }

    #[test]
    fn vanishing_director_is_degenerate() {
        let c = CurveR3::parse(["u", "0", "0"], domain(0.0, 1.0)).unwrap();
        let d = CurveR3::parse(["u*cos(u)", "u*sin(u)", "0"], domain(0.0, 1.0)).unwrap();
        let err = standardize(&c, &d, &StandardizeOptions::default()).unwrap_err();
        assert!(matches!(err, Error::DegenerateDirector { .. }));
    }

    #[test]
    fn cone_is_not_skew() {
        // every ruling passes through the origin
        let c = CurveR3::parse(["0", "0", "0"], domain(0.0, 1.0)).unwrap();
        let d = CurveR3::parse(["cos(u)", "sin(u)", "1"], domain(0.0, 1.0)).unwrap();
        let err = standardize(&c, &d, &StandardizeOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NonSkew { .. }));
    }

    #[test]
    fn jet_backed_input_is_rejected() {
        let surf = GallerySurface::RightHelicoid { c: 1.0 }.build().unwrap();
        let scaled = surf.scaled(2.0).unwrap();
        let err = standardize(
            scaled.striction(),
            scaled.director(),
            &StandardizeOptions::default(),
        )
        .unwrap_err();
        assert_eq!(err, Error::MissingDerivatives);
    }

    #[test]
    fn non_unit_speed_director_gets_unit_speed() {
        // director speed varies with u; striction must be recomputed
        let c = CurveR3::parse(["u", "u^2/3", "sin(u)"], domain(-1.0, 1.0)).unwrap();
        let d = CurveR3::parse(
            ["cos(u + u^3/5)", "sin(u + u^3/5)", "0.4 + 0.1*u"],
            domain(-1.0, 1.0),
        )
        .unwrap();
        let surf = standardize(&c, &d, &StandardizeOptions::default()).unwrap();
        for t in surf.domain().linspace(101) {
            let r = surf.gauge_residuals(t).unwrap();
            assert!(r.max() < 1e-10, "t = {t}: {r:?}");
        }
    }
}
