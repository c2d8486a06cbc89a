use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mesh::{fill_ghosts, BoundaryCondition, GHOST_WIDTH};

use super::{check_finite, check_len, Stencil1d, Step};

pub type ControlFn = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// Discretized control sets with dynamics `f(x, a, b)` and running cost
/// `l(x, a, b)`. The step takes `min` over `a` and `max` over `b`.
#[derive(Clone)]
pub struct SlControls {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub dynamics: ControlFn,
    pub cost: ControlFn,
}

impl SlControls {
    /// Single-player controls (`b` is a dummy singleton).
    pub fn minimizing(a: Vec<f64>, dynamics: ControlFn, cost: ControlFn) -> Self {
        SlControls {
            a,
            b: vec![0.0],
            dynamics,
            cost,
        }
    }

    /// `count` equally spaced values covering `[lo, hi]`.
    pub fn uniform(lo: f64, hi: f64, count: usize) -> Vec<f64> {
        match count {
            0 => Vec::new(),
            1 => vec![0.5 * (lo + hi)],
            _ => (0..count)
                .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
                .collect(),
        }
    }
}

/// Piecewise-linear interpolation of nodal values `v` (with `v[0]` at `x0`)
/// on a uniform mesh of spacing `dx`.
pub fn interpolate_p1(v: &[f64], x0: f64, dx: f64, x: f64) -> Result<f64> {
    let hi = x0 + (v.len() - 1) as f64 * dx;
    let s = (x - x0) / dx;
    if !(s >= -1e-12 && s <= (v.len() - 1) as f64 + 1e-12) {
        return Err(Error::FootPointOutside { x, lo: x0, hi });
    }
    let k = (s.floor().max(0.0) as usize).min(v.len() - 2);
    let theta = s - k as f64;
    Ok((1.0 - theta) * v[k] + theta * v[k + 1])
}

/// `min_a max_b ([u](x_j + tau f(x_j, a, b)) + tau l(x_j, a, b))`.
pub fn sl_monotone_step(
    stencil: &Stencil1d,
    controls: &SlControls,
    tau: f64,
    u: &[f64],
) -> Result<Vec<f64>> {
    if controls.a.is_empty() || controls.b.is_empty() {
        return Err(Error::InvalidParameter("empty control set".into()));
    }
    let n = stencil.len();
    check_len(u, n)?;
    let padded = fill_ghosts(u, &stencil.bc, GHOST_WIDTH);
    let dx = stencil.grid.dx;
    let x0 = stencil.grid.xmin - GHOST_WIDTH as f64 * dx;
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        if let BoundaryCondition::Dirichlet(c) = stencil.bc {
            if j == 0 || j + 1 == n {
                out.push(c);
                continue;
            }
        }
        let x = stencil.grid.node(j);
        let mut best = f64::INFINITY;
        for &a in &controls.a {
            let mut worst = f64::NEG_INFINITY;
            for &b in &controls.b {
                let foot = x + tau * (controls.dynamics)(x, a, b);
                let v = interpolate_p1(&padded, x0, dx, foot)? + tau * (controls.cost)(x, a, b);
                worst = worst.max(v);
            }
            best = best.min(worst);
        }
        out.push(best);
    }
    check_finite(&out)?;
    Ok(out)
}

pub struct SemiLagrangian1d {
    pub stencil: Stencil1d,
    pub controls: SlControls,
    pub tau: f64,
}

impl Step for SemiLagrangian1d {
    fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        sl_monotone_step(&self.stencil, &self.controls, self.tau, u)
    }
}
