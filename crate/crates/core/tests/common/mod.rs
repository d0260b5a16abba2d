#![allow(dead_code)]

use ruled::surface::{GallerySurface, StandardRuledSurface};

pub fn gallery_members() -> Vec<GallerySurface> {
    vec![
        GallerySurface::RightHelicoid { c: 1.0 },
        GallerySurface::HyperboloidEdlinger { c: 1.0 },
        GallerySurface::OrthoidConstDelta { r: 0.6, delta: 1.0 },
        GallerySurface::ConoidalConstDelta {
            alpha: 2.0,
            beta: 1.0,
        },
        GallerySurface::GenericSkew {
            k: 0.8,
            delta0: 1.0,
            delta1: 0.25,
            alpha0: 0.6,
        },
    ]
}

/// `(K, H)` from `x = s + v e` directly: partial derivatives, unit normal
/// `x_u × x_v`, and the classical quotient formulas.
pub fn embedding_curvatures(surf: &StandardRuledSurface, u: f64, v: f64) -> (f64, f64) {
    let j = surf.local(u).unwrap();
    let xu = j.s.d1 + j.e.d1 * v;
    let xv = j.e.value;
    let xuu = j.s.d2 + j.e.d2 * v;
    let xuv = j.e.d1;
    let n = xu.cross(&xv).normalize();
    let (e, f, g) = (xu.dot(&xu), xu.dot(&xv), xv.dot(&xv));
    let (l, m, nn) = (xuu.dot(&n), xuv.dot(&n), 0.0);
    let det = e * g - f * f;
    (
        (l * nn - m * m) / det,
        (e * nn - 2.0 * f * m + g * l) / (2.0 * det),
    )
}

/// First and second derivative by central differences: a 2-point stencil
/// with `h = 10⁻⁵·max(1, |u|)` and a 5-point stencil with `h = 10⁻³`.
pub fn central_differences(f: impl Fn(f64) -> f64, u: f64) -> (f64, f64) {
    let h = 1e-5 * u.abs().max(1.0);
    let d1 = (f(u + h) - f(u - h)) / (2.0 * h);
    let h = 1e-3 * u.abs().max(1.0);
    let d2 = (-f(u + 2.0 * h) + 16.0 * f(u + h) - 30.0 * f(u) + 16.0 * f(u - h) - f(u - 2.0 * h))
        / (12.0 * h * h);
    (d1, d2)
}
