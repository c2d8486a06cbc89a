use crate::error::{Error, Result};
use crate::mesh::{fill_ghosts, fill_ghosts_2d, BoundaryCondition};

use super::{check_len, SharedStep, Stencil1d, Stencil2d, Step};

/// Clamps proposed high-order fluxes `h^A_j` at triggered nodes into
/// `[(u_j - u_max,j) / tau, (u_j - u_min,j) / tau]`, with the three-point
/// neighbourhood extrema of `u`.
pub fn limiter_1d(
    u: &[f64],
    h_a: &[f64],
    trigger: &[bool],
    tau: f64,
    bc: &BoundaryCondition,
) -> Result<Vec<f64>> {
    check_len(h_a, u.len())?;
    check_len(trigger, u.len())?;
    let p = fill_ghosts(u, bc, 1);
    Ok((0..u.len())
        .map(|j| {
            if !trigger[j] {
                return h_a[j];
            }
            let (lo, hi) = min_max(&[p[j], p[j + 1], p[j + 2]]);
            let h_max = (u[j] - lo) / tau;
            let h_min = (u[j] - hi) / tau;
            h_a[j].max(h_min).min(h_max)
        })
        .collect())
}

/// Clamps `u_new` nodewise into the five-point stencil range of `u_prev`.
pub fn limiter_clamp_2d(
    u_prev: &[f64],
    u_new: &[f64],
    nx: usize,
    ny: usize,
    bc: &BoundaryCondition,
) -> Result<Vec<f64>> {
    check_len(u_new, u_prev.len())?;
    let p = fill_ghosts_2d(u_prev, nx, ny, bc, 1)?;
    let ey = ny + 2;
    let mut out = Vec::with_capacity(nx * ny);
    for i in 0..nx {
        for j in 0..ny {
            let k = (i + 1) * ey + j + 1;
            let (lo, hi) = min_max(&[p[k], p[k - ey], p[k + ey], p[k - 1], p[k + 1]]);
            out.push(u_new[i * ny + j].max(lo).min(hi));
        }
    }
    Ok(out)
}

fn min_max(vals: &[f64]) -> (f64, f64) {
    vals.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

/// Local extremum limiters applied to a proposed high-order step.
#[derive(Debug, Clone)]
pub enum Limiter {
    /// Three-point clamp at nodes where the characteristic speeds change sign.
    Extrema1d {
        stencil: Stencil1d,
        trigger: Vec<bool>,
    },
    /// Five-point clamp at every node.
    Clamp2d { stencil: Stencil2d },
}

impl Limiter {
    /// Limits `proposed = S^A(u_prev)`.
    ///
    /// The 1D form clamps the step itself into `[u_min, u_max]`, which is the
    /// flux clamp of [`limiter_1d`] rewritten through `S^A = u - tau h^A`.
    pub fn apply(&self, u_prev: &[f64], proposed: &[f64]) -> Result<Vec<f64>> {
        match self {
            Limiter::Extrema1d { stencil, trigger } => {
                check_len(u_prev, stencil.len())?;
                check_len(proposed, stencil.len())?;
                check_len(trigger, stencil.len())?;
                let p = fill_ghosts(u_prev, &stencil.bc, 1);
                Ok((0..proposed.len())
                    .map(|j| {
                        if trigger[j] {
                            let (lo, hi) = min_max(&[p[j], p[j + 1], p[j + 2]]);
                            proposed[j].max(lo).min(hi)
                        } else {
                            proposed[j]
                        }
                    })
                    .collect())
            }
            Limiter::Clamp2d { stencil } => {
                let (nx, ny) = stencil.shape();
                limiter_clamp_2d(u_prev, proposed, nx, ny, &stencil.bc)
            }
        }
    }
}

/// A step followed by a limiter against its input.
pub struct Limited {
    pub inner: SharedStep,
    pub limiter: Limiter,
}

impl Step for Limited {
    fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        let proposed = self.inner.apply(u)?;
        self.limiter.apply(u, &proposed)
    }
}

/// `max(step(u)_j, g_j)`.
pub fn obstacle_step<S: Step + ?Sized>(step: &S, u: &[f64], g: &[f64]) -> Result<Vec<f64>> {
    let mut out = step.apply(u)?;
    if g.len() != out.len() {
        return Err(Error::ShapeMismatch {
            expected: out.len(),
            actual: g.len(),
        });
    }
    out.iter_mut().zip(g).for_each(|(v, &gj)| *v = v.max(gj));
    Ok(out)
}

/// Wraps a step so that every update is floored by the obstacle values `g`.
pub struct WithObstacle {
    pub inner: SharedStep,
    pub g: Vec<f64>,
}

impl Step for WithObstacle {
    fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        obstacle_step(&self.inner, u, &self.g)
    }
}
