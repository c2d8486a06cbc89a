//! Analytic Hamiltonians, monotone numerical Hamiltonians and the derivative
//! reconstructions (centered, ENO2, projected) used to assemble schemes.

use std::sync::Arc;

/// `H(x, p)` in one space dimension.
pub trait Hamiltonian1d: Send + Sync {
    fn value(&self, x: f64, p: f64) -> f64;
}

impl<F> Hamiltonian1d for F
where
    F: Fn(f64, f64) -> f64 + Send + Sync,
{
    fn value(&self, x: f64, p: f64) -> f64 {
        self(x, p)
    }
}

/// `H(x, y, p, q)` in two space dimensions.
pub trait Hamiltonian2d: Send + Sync {
    fn value(&self, x: f64, y: f64, p: f64, q: f64) -> f64;
}

impl<F> Hamiltonian2d for F
where
    F: Fn(f64, f64, f64, f64) -> f64 + Send + Sync,
{
    fn value(&self, x: f64, y: f64, p: f64, q: f64) -> f64 {
        self(x, y, p, q)
    }
}

/// Numerical Hamiltonian `h(x, u-, u+)` fed with backward/forward differences.
///
/// Monotone fluxes are nondecreasing in `u-` and nonincreasing in `u+`, and
/// satisfy `h(x, p, p) = H(x, p)`.
pub trait NumericalHamiltonian1d: Send + Sync {
    fn flux(&self, x: f64, minus: f64, plus: f64) -> f64;
}

impl<F> NumericalHamiltonian1d for F
where
    F: Fn(f64, f64, f64) -> f64 + Send + Sync,
{
    fn flux(&self, x: f64, minus: f64, plus: f64) -> f64 {
        self(x, minus, plus)
    }
}

/// Numerical Hamiltonian `h(x, y, ux-, ux+, uy-, uy+)`.
pub trait NumericalHamiltonian2d: Send + Sync {
    fn flux(&self, x: f64, y: f64, dx: DerivativePair, dy: DerivativePair) -> f64;
}

pub type SharedHamiltonian1d = Arc<dyn Hamiltonian1d>;
pub type SharedHamiltonian2d = Arc<dyn Hamiltonian2d>;
pub type SharedFlux1d = Arc<dyn NumericalHamiltonian1d>;
pub type SharedFlux2d = Arc<dyn NumericalHamiltonian2d>;

/// Left- and right-biased derivative estimates at one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativePair {
    pub minus: f64,
    pub plus: f64,
}

impl DerivativePair {
    pub fn new(minus: f64, plus: f64) -> Self {
        DerivativePair { minus, plus }
    }
}

/// Upwind flux for `H(p) = |p|`: `max(u-, -u+)`.
pub fn upwind_eikonal(_x: f64, minus: f64, plus: f64) -> f64 {
    minus.max(-plus)
}

/// Upwind flux for `H(p) = p^2 / 2`.
pub fn upwind_burgers(_x: f64, minus: f64, plus: f64) -> f64 {
    let left = if minus > 0.0 { 0.5 * minus * minus } else { 0.0 };
    let right = if plus < 0.0 { 0.5 * plus * plus } else { 0.0 };
    left + right
}

/// Upwind flux for linear transport `H(x, p) = a(x) p`.
#[derive(Clone)]
pub struct UpwindAdvection1d<V> {
    pub velocity: V,
}

impl<V> NumericalHamiltonian1d for UpwindAdvection1d<V>
where
    V: Fn(f64) -> f64 + Send + Sync,
{
    fn flux(&self, x: f64, minus: f64, plus: f64) -> f64 {
        let a = (self.velocity)(x);
        a.max(0.0) * minus + a.min(0.0) * plus
    }
}

/// Lax–Friedrichs flux `H(x, (u- + u+)/2) - (c0/2)(u+ - u-)`.
///
/// Monotone when `c0 >= max |dH/dp|` over the range of slopes encountered.
pub struct LaxFriedrichs1d {
    pub hamiltonian: SharedHamiltonian1d,
    pub c0: f64,
}

impl LaxFriedrichs1d {
    pub fn new(hamiltonian: SharedHamiltonian1d, c0: f64) -> Self {
        LaxFriedrichs1d { hamiltonian, c0 }
    }
}

impl NumericalHamiltonian1d for LaxFriedrichs1d {
    fn flux(&self, x: f64, minus: f64, plus: f64) -> f64 {
        self.hamiltonian.value(x, 0.5 * (minus + plus)) - 0.5 * self.c0 * (plus - minus)
    }
}

/// Two-dimensional Lax–Friedrichs flux with per-axis dissipation `cx`, `cy`.
pub struct LaxFriedrichs2d {
    pub hamiltonian: SharedHamiltonian2d,
    pub cx: f64,
    pub cy: f64,
}

impl LaxFriedrichs2d {
    pub fn new(hamiltonian: SharedHamiltonian2d, cx: f64, cy: f64) -> Self {
        LaxFriedrichs2d { hamiltonian, cx, cy }
    }
}

impl NumericalHamiltonian2d for LaxFriedrichs2d {
    fn flux(&self, x: f64, y: f64, dx: DerivativePair, dy: DerivativePair) -> f64 {
        self.hamiltonian.value(
            x,
            y,
            0.5 * (dx.minus + dx.plus),
            0.5 * (dy.minus + dy.plus),
        ) - 0.5 * self.cx * (dx.plus - dx.minus)
            - 0.5 * self.cy * (dy.plus - dy.minus)
    }
}

/// Upwind flux for `v_t + f1 v_x + f2 v_y = 0`, selecting one-sided
/// differences by the sign of each velocity component.
pub struct UpwindAdvection2d<V> {
    pub velocity: V,
}

impl<V> UpwindAdvection2d<V> {
    pub fn new(velocity: V) -> Self {
        UpwindAdvection2d { velocity }
    }
}

impl<V> NumericalHamiltonian2d for UpwindAdvection2d<V>
where
    V: Fn(f64, f64) -> (f64, f64) + Send + Sync,
{
    fn flux(&self, x: f64, y: f64, dx: DerivativePair, dy: DerivativePair) -> f64 {
        let (f1, f2) = (self.velocity)(x, y);
        f1.max(0.0) * dx.minus + f1.min(0.0) * dx.plus + f2.max(0.0) * dy.minus + f2.min(0.0) * dy.plus
    }
}

/// Minmod: the argument of smaller magnitude when both share a sign, else 0.
pub fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() <= b.abs() {
        a
    } else {
        b
    }
}

/// One-sided first differences `D-u_j`, `D+u_j` on a padded array.
#[inline]
pub fn first_differences(u: &[f64], j: usize, dx: f64) -> DerivativePair {
    DerivativePair {
        minus: (u[j] - u[j - 1]) / dx,
        plus: (u[j + 1] - u[j]) / dx,
    }
}

#[inline]
fn second_difference(u: &[f64], j: usize, dx: f64) -> f64 {
    (u[j + 1] - 2.0 * u[j] + u[j - 1]) / (dx * dx)
}

/// Second-order ENO derivatives at index `j` of a padded array
/// (`u[j-2..=j+2]` must exist):
/// `D̄±u_j = D±u_j ∓ (dx/2) m(D²u_j, D²u_{j±1})`.
#[inline]
pub fn eno2_derivatives(u: &[f64], j: usize, dx: f64) -> DerivativePair {
    let d = first_differences(u, j, dx);
    let d2 = second_difference(u, j, dx);
    let d2_left = second_difference(u, j - 1, dx);
    let d2_right = second_difference(u, j + 1, dx);
    DerivativePair {
        minus: d.minus + 0.5 * dx * minmod(d2, d2_left),
        plus: d.plus - 0.5 * dx * minmod(d2, d2_right),
    }
}

/// Centered first difference `(u_{j+1} - u_{j-1}) / (2 dx)`.
#[inline]
pub fn centered_difference(u: &[f64], j: usize, dx: f64) -> f64 {
    (u[j + 1] - u[j - 1]) / (2.0 * dx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionMode {
    /// Clamp into `[a - b, a + b]`.
    Clamp,
    /// Keep `y` inside `[a - b, a + b]`, otherwise fall back to `a`.
    Reset,
}

/// Projects a high-order derivative estimate `y` around the first-order
/// difference `a` with half-width `b` (typically `M * dx`).
pub fn project_derivative(a: f64, b: f64, y: f64, mode: ProjectionMode) -> f64 {
    debug_assert!(b >= 0.0);
    match mode {
        ProjectionMode::Clamp => y.max(a - b).min(a + b),
        ProjectionMode::Reset => {
            if (y - a).abs() <= b {
                y
            } else {
                a
            }
        }
    }
}
