use crate::error::{Error, Result};

use super::Step;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_MAX_ITERATIONS: usize = 5000;

#[derive(Debug, Clone, PartialEq)]
pub struct SteadyOutcome {
    pub u: Vec<f64>,
    pub iterations: usize,
    /// `max_i |u^{n+1}_i - u^n_i|` at the last iteration.
    pub residual: f64,
    pub converged: bool,
}

/// Iterates `step` from `u0` until the sup-norm update drops to `tol` or
/// `max_iterations` is reached.
///
/// Non-convergence is reported through [`SteadyOutcome::converged`];
/// a non-finite iterate is an [`Error::Diverged`].
pub fn steady_solve<S: Step + ?Sized>(
    step: &S,
    u0: &[f64],
    tol: f64,
    max_iterations: usize,
) -> Result<SteadyOutcome> {
    if !(tol > 0.0) || max_iterations == 0 {
        return Err(Error::InvalidParameter(format!(
            "steady solve needs tol > 0 and at least one iteration (got {tol}, {max_iterations})"
        )));
    }
    let mut u = u0.to_vec();
    let mut residual = f64::INFINITY;
    for n in 1..=max_iterations {
        let next = step.apply(&u)?;
        residual = next
            .iter()
            .zip(&u)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        u = next;
        if residual <= tol {
            return Ok(SteadyOutcome {
                u,
                iterations: n,
                residual,
                converged: true,
            });
        }
    }
    Ok(SteadyOutcome {
        u,
        iterations: max_iterations,
        residual,
        converged: false,
    })
}
