//! Uniform grids, time-step selection and ghost-value boundary handling.
//!
//! Nodes are vertex-centered: node `j` sits at `xmin + j * dx` with
//! `dx = (xmax - xmin) / M`. A Dirichlet grid stores the `M + 1` nodes
//! `j = 0..=M` (both endpoints); a periodic grid stores the `M` nodes
//! `j = 0..M` and identifies `x_M` with `x_0`.

use crate::error::{Error, Result};

/// Ghost layer width used by every stencil in the crate.
pub const GHOST_WIDTH: usize = 2;

/// Smallest number of cells a grid may have (ENO2 reads two neighbours on each side).
pub const MIN_CELLS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition {
    /// Boundary nodes and ghost values are held at a constant.
    Dirichlet(f64),
    Periodic,
}

impl BoundaryCondition {
    pub fn is_periodic(&self) -> bool {
        matches!(self, BoundaryCondition::Periodic)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub xmin: f64,
    pub xmax: f64,
    /// Number of cells.
    pub cells: usize,
    pub dx: f64,
}

impl Grid1D {
    pub fn new(xmin: f64, xmax: f64, cells: usize) -> Result<Self> {
        if !(xmin.is_finite() && xmax.is_finite()) || xmax <= xmin {
            return Err(Error::InvalidGrid(format!(
                "degenerate interval [{xmin}, {xmax}]"
            )));
        }
        if cells < MIN_CELLS {
            return Err(Error::InvalidGrid(format!(
                "{cells} cells is below the stencil minimum of {MIN_CELLS}"
            )));
        }
        Ok(Grid1D {
            xmin,
            xmax,
            cells,
            dx: (xmax - xmin) / cells as f64,
        })
    }

    pub fn node(&self, j: usize) -> f64 {
        self.xmin + j as f64 * self.dx
    }

    /// Number of stored values for the given boundary condition.
    pub fn node_count(&self, bc: &BoundaryCondition) -> usize {
        match bc {
            BoundaryCondition::Dirichlet(_) => self.cells + 1,
            BoundaryCondition::Periodic => self.cells,
        }
    }

    pub fn nodes(&self, bc: &BoundaryCondition) -> Vec<f64> {
        (0..self.node_count(bc)).map(|j| self.node(j)).collect()
    }

    pub fn length(&self) -> f64 {
        self.xmax - self.xmin
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

impl Grid2D {
    pub fn new(x: (f64, f64, usize), y: (f64, f64, usize)) -> Result<Self> {
        Ok(Grid2D {
            x: Grid1D::new(x.0, x.1, x.2)?,
            y: Grid1D::new(y.0, y.1, y.2)?,
        })
    }

    /// Square grid with the same interval and cell count on both axes.
    pub fn square(lo: f64, hi: f64, cells: usize) -> Result<Self> {
        Self::new((lo, hi, cells), (lo, hi, cells))
    }

    pub fn shape(&self, bc: &BoundaryCondition) -> (usize, usize) {
        (self.x.node_count(bc), self.y.node_count(bc))
    }
}

/// Uniform time levels `t_n = n * tau` with `N * tau = T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_final: f64,
    pub steps: usize,
    pub tau: f64,
}

impl TimeGrid {
    pub fn new(t_final: f64, steps: usize) -> Result<Self> {
        if !(t_final > 0.0) || steps == 0 {
            return Err(Error::InvalidParameter(format!(
                "time grid needs T > 0 and N >= 1 (got T = {t_final}, N = {steps})"
            )));
        }
        Ok(TimeGrid {
            t_final,
            steps,
            tau: t_final / steps as f64,
        })
    }

    /// Smallest `N` whose step `T / N` does not exceed `tau_max`.
    pub fn with_max_step(t_final: f64, tau_max: f64) -> Result<Self> {
        if !(tau_max > 0.0) {
            return Err(Error::InvalidParameter(format!("tau_max = {tau_max}")));
        }
        // The guard keeps exact ratios such as 0.5 / 0.025 from rounding up.
        let ratio = t_final / tau_max;
        let steps = (ratio * (1.0 - 1e-12)).ceil().max(1.0) as usize;
        Self::new(t_final, steps)
    }

    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.tau
    }
}

fn check_cfl(cfl: f64, c0: f64) -> Result<()> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(Error::InvalidCfl(format!("CFL number {cfl} outside (0, 1]")));
    }
    if !(c0 > 0.0) || !c0.is_finite() {
        return Err(Error::InvalidCfl(format!("speed bound c0 = {c0} must be positive")));
    }
    Ok(())
}

/// `tau = cfl * dx / c0`, so that `c0 * tau / dx = cfl`.
pub fn tau_from_cfl(grid: &Grid1D, cfl: f64, c0: f64) -> Result<f64> {
    check_cfl(cfl, c0)?;
    Ok(cfl * grid.dx / c0)
}

/// `tau = mu / (c0 * (1/dx + 1/dy))`, so that `c0 * (tau/dx + tau/dy) = mu`.
pub fn tau_from_cfl_2d(grid: &Grid2D, mu: f64, c0: f64) -> Result<f64> {
    check_cfl(mu, c0)?;
    Ok(mu / (c0 * (1.0 / grid.x.dx + 1.0 / grid.y.dx)))
}

/// Pads `u` with `width` ghost values on each side.
pub fn fill_ghosts(u: &[f64], bc: &BoundaryCondition, width: usize) -> Vec<f64> {
    let n = u.len();
    let mut out = Vec::with_capacity(n + 2 * width);
    match *bc {
        BoundaryCondition::Dirichlet(c) => {
            out.extend(std::iter::repeat(c).take(width));
            out.extend_from_slice(u);
            out.extend(std::iter::repeat(c).take(width));
        }
        BoundaryCondition::Periodic => {
            assert!(n > 0, "periodic ghost fill of an empty field");
            let wrap = |k: isize| u[k.rem_euclid(n as isize) as usize];
            let w = width as isize;
            out.extend((-w..0).map(wrap));
            out.extend_from_slice(u);
            out.extend((n as isize..n as isize + w).map(wrap));
        }
    }
    out
}

/// 2D ghost fill of a row-major `nx * ny` field (x index outer).
///
/// Returns the extended `(nx + 2w) * (ny + 2w)` array, also row-major.
pub fn fill_ghosts_2d(
    u: &[f64],
    nx: usize,
    ny: usize,
    bc: &BoundaryCondition,
    width: usize,
) -> Result<Vec<f64>> {
    if u.len() != nx * ny {
        return Err(Error::ShapeMismatch {
            expected: nx * ny,
            actual: u.len(),
        });
    }
    let (ex, ey) = (nx + 2 * width, ny + 2 * width);
    let w = width as isize;
    let mut out = vec![0.0; ex * ey];
    match *bc {
        BoundaryCondition::Dirichlet(c) => {
            out.iter_mut().for_each(|v| *v = c);
            for i in 0..nx {
                let dst = (i + width) * ey + width;
                out[dst..dst + ny].copy_from_slice(&u[i * ny..(i + 1) * ny]);
            }
        }
        BoundaryCondition::Periodic => {
            for ei in 0..ex {
                let i = (ei as isize - w).rem_euclid(nx as isize) as usize;
                for ej in 0..ey {
                    let j = (ej as isize - w).rem_euclid(ny as isize) as usize;
                    out[ei * ey + ej] = u[i * ny + j];
                }
            }
        }
    }
    Ok(out)
}
