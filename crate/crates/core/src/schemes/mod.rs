//! One-step operators `u^n -> u^{n+1}` and the machinery that combines them:
//! monotone and high-order finite differences, Heun composition, filtering,
//! limiting, obstacles, steady iteration and the semi-Lagrangian step.

mod fd1d;
mod fd2d;
mod filter;
mod limiter;
mod sl;
mod steady;

use std::sync::Arc;

use crate::error::{Error, Result};

pub use fd1d::{
    centered_euler_step, eno2_euler_step, monotone_step, CenteredEuler1d, EnoEuler1d,
    MonotoneFd1d, Stencil1d,
};
pub use fd2d::{CenteredEuler2d, EnoEuler2d, MonotoneFd2d, Stencil2d};
pub use filter::{
    compute_epsilon, estimate_switching_constant, filter_eval, filtered_blend, filtered_step,
    EpsilonRule, Filter, Filtered, StepReport,
};
pub use limiter::{limiter_1d, limiter_clamp_2d, obstacle_step, Limited, Limiter, WithObstacle};
pub use sl::{interpolate_p1, sl_monotone_step, SemiLagrangian1d, SlControls};
pub use steady::{steady_solve, SteadyOutcome, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE};

/// A one-step map on a discrete field.
pub trait Step: Send + Sync {
    fn apply(&self, u: &[f64]) -> Result<Vec<f64>>;
}

pub type SharedStep = Arc<dyn Step>;

impl<S: Step + ?Sized> Step for Arc<S> {
    fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        (**self).apply(u)
    }
}

impl<S: Step + ?Sized> Step for Box<S> {
    fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        (**self).apply(u)
    }
}

/// Adapts a closure into a [`Step`].
pub struct FnStep<F>(pub F);

impl<F> Step for FnStep<F>
where
    F: Fn(&[f64]) -> Result<Vec<f64>> + Send + Sync,
{
    fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        (self.0)(u)
    }
}

/// Heun composition `S(u) = (u + S0(S0(u))) / 2`.
pub struct Rk2<S> {
    pub inner: S,
}

impl<S> Rk2<S> {
    pub fn new(inner: S) -> Self {
        Rk2 { inner }
    }
}

impl<S: Step> Step for Rk2<S> {
    fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        rk2_compose(&self.inner, u)
    }
}

pub fn rk2_compose<S: Step + ?Sized>(s0: &S, u: &[f64]) -> Result<Vec<f64>> {
    let stage = s0.apply(u)?;
    let twice = s0.apply(&stage)?;
    if twice.len() != u.len() {
        return Err(Error::ShapeMismatch {
            expected: u.len(),
            actual: twice.len(),
        });
    }
    let out: Vec<f64> = u.iter().zip(&twice).map(|(a, b)| 0.5 * (a + b)).collect();
    check_finite(&out)?;
    Ok(out)
}

/// Applies `step` `n` times starting from `u0`.
pub fn march<S: Step + ?Sized>(step: &S, u0: &[f64], n: usize) -> Result<Vec<f64>> {
    let mut u = u0.to_vec();
    for _ in 0..n {
        u = step.apply(&u)?;
    }
    Ok(u)
}

pub(crate) fn check_finite(u: &[f64]) -> Result<()> {
    match u.iter().position(|v| !v.is_finite()) {
        Some(node) => Err(Error::Diverged { node }),
        None => Ok(()),
    }
}

pub(crate) fn check_len<T>(u: &[T], expected: usize) -> Result<()> {
    if u.len() != expected {
        return Err(Error::ShapeMismatch {
            expected,
            actual: u.len(),
        });
    }
    Ok(())
}
