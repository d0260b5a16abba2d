//! Truncated Taylor jets in one variable.
//!
//! A `Jet<N>` carries a value together with its first `N - 1` derivatives
//! with respect to the curve parameter `u`. Arithmetic follows the Leibniz
//! rule and elementary functions use the chain rule (Faà di Bruno up to third
//! order), so evaluating an expression on the identity jet yields exact
//! derivatives without finite differencing.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Value plus first and second derivative.
pub type Jet2 = Jet<3>;
/// Value plus first, second and third derivative.
pub type Jet3 = Jet<4>;

const BINOMIAL: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0],
    [1.0, 2.0, 1.0, 0.0],
    [1.0, 3.0, 3.0, 1.0],
];

/// Truncated jet; `d[i]` is the `i`-th derivative. Supports `1 <= N <= 4`.
#[derive(Clone, Copy, PartialEq)]
pub struct Jet<const N: usize> {
    d: [f64; N],
}

impl<const N: usize> Jet<N> {
    const SUPPORTED: () = assert!(N >= 1 && N <= 4, "jets are supported up to third order");

    pub fn from_derivatives(d: [f64; N]) -> Self {
        let () = Self::SUPPORTED;
        Self { d }
    }

    pub fn constant(c: f64) -> Self {
        let mut d = [0.0; N];
        d[0] = c;
        Self::from_derivatives(d)
    }

    /// The identity jet at `u`: value `u`, slope 1.
    pub fn variable(u: f64) -> Self {
        let mut d = [0.0; N];
        d[0] = u;
        if N > 1 {
            d[1] = 1.0;
        }
        Self::from_derivatives(d)
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.d[0]
    }

    #[inline]
    pub fn d1(&self) -> f64 {
        self.derivative(1)
    }

    #[inline]
    pub fn d2(&self) -> f64 {
        self.derivative(2)
    }

    /// `i`-th derivative, zero beyond the truncation order.
    #[inline]
    pub fn derivative(&self, i: usize) -> f64 {
        if i < N {
            self.d[i]
        } else {
            0.0
        }
    }

    pub fn derivatives(&self) -> [f64; N] {
        self.d
    }

    pub fn is_finite(&self) -> bool {
        self.d.iter().all(|x| x.is_finite())
    }

    /// Drops (or zero-pads) derivatives to another order.
    pub fn truncate<const M: usize>(&self) -> Jet<M> {
        let mut d = [0.0; M];
        for (i, slot) in d.iter_mut().enumerate() {
            *slot = self.derivative(i);
        }
        Jet::from_derivatives(d)
    }

    /// Jet of the derivative, one order lower: `(f', f'', ...)`.
    pub fn derivative_jet<const M: usize>(&self) -> Jet<M> {
        let mut d = [0.0; M];
        for (i, slot) in d.iter_mut().enumerate() {
            *slot = self.derivative(i + 1);
        }
        Jet::from_derivatives(d)
    }

    /// Applies a scalar function given its derivatives `[φ, φ', φ'', φ''']`
    /// at `self.value()`.
    pub fn chain(&self, phi: [f64; 4]) -> Self {
        let a1 = self.derivative(1);
        let a2 = self.derivative(2);
        let a3 = self.derivative(3);
        let mut d = [0.0; N];
        d[0] = phi[0];
        if N > 1 {
            d[1] = phi[1] * a1;
        }
        if N > 2 {
            d[2] = phi[2] * a1 * a1 + phi[1] * a2;
        }
        if N > 3 {
            d[3] = phi[3] * a1 * a1 * a1 + 3.0 * phi[2] * a1 * a2 + phi[1] * a3;
        }
        Self { d }
    }

    /// `outer ∘ self`, where `outer` holds the derivatives of the outer
    /// function evaluated at `self.value()`.
    pub fn compose(&self, outer: &Self) -> Self {
        let mut phi = [0.0; 4];
        for (i, p) in phi.iter_mut().enumerate() {
            *p = outer.derivative(i);
        }
        self.chain(phi)
    }

    pub fn recip(self) -> Self {
        let x = self.value();
        let r = 1.0 / x;
        self.chain([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }
}

impl<const N: usize> fmt::Debug for Jet<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Jet").field(&self.d).finish()
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(rhs.d) {
            *a += b;
        }
        Self { d }
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(rhs.d) {
            *a -= b;
        }
        Self { d }
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            d: self.d.map(|x| -x),
        }
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut d = [0.0; N];
        for (n, slot) in d.iter_mut().enumerate() {
            *slot = (0..=n)
                .map(|k| BINOMIAL[n][k] * self.d[k] * rhs.d[n - k])
                .sum();
        }
        Self { d }
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl<const N: usize> Mul<f64> for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self {
            d: self.d.map(|x| x * rhs),
        }
    }
}

/// Field-like numbers that expressions can be evaluated on.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(c: f64) -> Self;
    fn value(&self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn tan(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn powf(self, p: f64) -> Self;
}

impl Scalar for f64 {
    fn from_f64(c: f64) -> Self {
        c
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn tan(self) -> Self {
        f64::tan(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }
}

// Coefficient times power, treating a zero coefficient as exactly zero so
// that e.g. the third derivative of x^2 at x = 0 is 0 rather than NaN.
fn coef_pow(c: f64, x: f64, p: f64, integer: Option<i32>) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    match integer {
        Some(n) => c * x.powi(n),
        None => c * x.powf(p),
    }
}

impl<const N: usize> Scalar for Jet<N> {
    fn from_f64(c: f64) -> Self {
        Self::constant(c)
    }
    fn value(&self) -> f64 {
        self.d[0]
    }
    fn sin(self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.chain([s, c, -s, -c])
    }
    fn cos(self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.chain([c, -s, -c, s])
    }
    fn tan(self) -> Self {
        let t = self.value().tan();
        let sec2 = 1.0 + t * t;
        self.chain([t, sec2, 2.0 * t * sec2, sec2 * (2.0 + 6.0 * t * t)])
    }
    fn sqrt(self) -> Self {
        let x = self.value();
        let r = x.sqrt();
        self.chain([r, 0.5 / r, -0.25 / (x * r), 0.375 / (x * x * r)])
    }
    fn exp(self) -> Self {
        let e = self.value().exp();
        self.chain([e, e, e, e])
    }
    fn ln(self) -> Self {
        let x = self.value();
        let r = 1.0 / x;
        self.chain([x.ln(), r, -r * r, 2.0 * r * r * r])
    }
    fn sinh(self) -> Self {
        let x = self.value();
        let (s, c) = (x.sinh(), x.cosh());
        self.chain([s, c, s, c])
    }
    fn cosh(self) -> Self {
        let x = self.value();
        let (s, c) = (x.sinh(), x.cosh());
        self.chain([c, s, c, s])
    }
    fn powi(self, n: i32) -> Self {
        let x = self.value();
        let nf = f64::from(n);
        self.chain([
            x.powi(n),
            coef_pow(nf, x, 0.0, Some(n - 1)),
            coef_pow(nf * (nf - 1.0), x, 0.0, Some(n - 2)),
            coef_pow(nf * (nf - 1.0) * (nf - 2.0), x, 0.0, Some(n - 3)),
        ])
    }
    fn powf(self, p: f64) -> Self {
        let x = self.value();
        self.chain([
            x.powf(p),
            coef_pow(p, x, p - 1.0, None),
            coef_pow(p * (p - 1.0), x, p - 2.0, None),
            coef_pow(p * (p - 1.0) * (p - 2.0), x, p - 3.0, None),
        ])
    }
}
