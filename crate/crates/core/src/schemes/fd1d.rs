use crate::error::Result;
use crate::hamiltonians::{
    centered_difference, eno2_derivatives, first_differences, SharedFlux1d, SharedHamiltonian1d,
};
use crate::mesh::{fill_ghosts, BoundaryCondition, Grid1D, GHOST_WIDTH};

use super::{check_finite, check_len, Step};

/// Grid plus boundary condition: everything a 1D stencil update needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stencil1d {
    pub grid: Grid1D,
    pub bc: BoundaryCondition,
}

impl Stencil1d {
    pub fn new(grid: Grid1D, bc: BoundaryCondition) -> Self {
        Stencil1d { grid, bc }
    }

    pub fn len(&self) -> usize {
        self.grid.node_count(&self.bc)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Evaluates `update(padded, k, x_j)` at every free node, where `k` is the
    /// padded index of node `j`. Dirichlet end nodes keep the boundary value.
    pub fn map<F>(&self, u: &[f64], update: F) -> Result<Vec<f64>>
    where
        F: Fn(&[f64], usize, f64) -> f64,
    {
        let n = self.len();
        check_len(u, n)?;
        let padded = fill_ghosts(u, &self.bc, GHOST_WIDTH);
        let out: Vec<f64> = (0..n)
            .map(|j| match self.bc {
                BoundaryCondition::Dirichlet(c) if j == 0 || j + 1 == n => c,
                _ => update(&padded, j + GHOST_WIDTH, self.grid.node(j)),
            })
            .collect();
        check_finite(&out)?;
        Ok(out)
    }
}

/// `u_j - tau h(x_j, D-u_j, D+u_j)`.
pub fn monotone_step(
    stencil: &Stencil1d,
    flux: &dyn crate::hamiltonians::NumericalHamiltonian1d,
    tau: f64,
    u: &[f64],
) -> Result<Vec<f64>> {
    let dx = stencil.grid.dx;
    stencil.map(u, |p, k, x| {
        let d = first_differences(p, k, dx);
        p[k] - tau * flux.flux(x, d.minus, d.plus)
    })
}

/// `u_j - tau H(x_j, (u_{j+1} - u_{j-1}) / (2 dx))`.
pub fn centered_euler_step(
    stencil: &Stencil1d,
    hamiltonian: &dyn crate::hamiltonians::Hamiltonian1d,
    tau: f64,
    u: &[f64],
) -> Result<Vec<f64>> {
    let dx = stencil.grid.dx;
    stencil.map(u, |p, k, x| {
        p[k] - tau * hamiltonian.value(x, centered_difference(p, k, dx))
    })
}

/// `u_j - tau h(x_j, D̄-u_j, D̄+u_j)` with ENO2 one-sided derivatives.
pub fn eno2_euler_step(
    stencil: &Stencil1d,
    flux: &dyn crate::hamiltonians::NumericalHamiltonian1d,
    tau: f64,
    u: &[f64],
) -> Result<Vec<f64>> {
    let dx = stencil.grid.dx;
    stencil.map(u, |p, k, x| {
        let d = eno2_derivatives(p, k, dx);
        p[k] - tau * flux.flux(x, d.minus, d.plus)
    })
}

pub struct MonotoneFd1d {
    pub stencil: Stencil1d,
    pub flux: SharedFlux1d,
    pub tau: f64,
}

impl Step for MonotoneFd1d {
    fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        monotone_step(&self.stencil, self.flux.as_ref(), self.tau, u)
    }
}

/// Forward Euler step with centered differences; wrap in [`super::Rk2`] for
/// the second-order scheme.
pub struct CenteredEuler1d {
    pub stencil: Stencil1d,
    pub hamiltonian: SharedHamiltonian1d,
    pub tau: f64,
}

impl Step for CenteredEuler1d {
    fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        centered_euler_step(&self.stencil, self.hamiltonian.as_ref(), self.tau, u)
    }
}

/// Forward Euler step with ENO2 derivatives fed into a monotone flux.
pub struct EnoEuler1d {
    pub stencil: Stencil1d,
    pub flux: SharedFlux1d,
    pub tau: f64,
}

impl Step for EnoEuler1d {
    fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        eno2_euler_step(&self.stencil, self.flux.as_ref(), self.tau, u)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::hamiltonians::upwind_eikonal;
    use crate::schemes::Rk2;

    fn periodic(cells: usize, lo: f64, hi: f64) -> Stencil1d {
        Stencil1d::new(Grid1D::new(lo, hi, cells).unwrap(), BoundaryCondition::Periodic)
    }

    #[test]
    fn monotone_hand_example() {
        // u = [.., 0, 1, 0, ..] on unit spacing: middle node drops to 0.5.
        let s = periodic(4, 0.0, 4.0);
        let out = monotone_step(&s, &upwind_eikonal, 0.5, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(out[1], 0.5);
    }

    #[test]
    fn monotone_constant_is_steady() {
        let s = periodic(8, -1.0, 1.0);
        let u = vec![0.7; 8];
        assert_eq!(monotone_step(&s, &upwind_eikonal, 0.1, &u).unwrap(), u);
    }

    #[test]
    fn affine_data_moves_by_tau_times_slope() {
        let slope = -1.5;
        let s = Stencil1d::new(Grid1D::new(0.0, 1.0, 10).unwrap(), BoundaryCondition::Dirichlet(9.0));
        let u: Vec<f64> = (0..=10).map(|j| slope * s.grid.node(j)).collect();
        let tau = 0.01;
        let abs = |_x: f64, p: f64| p.abs();
        let mono = monotone_step(&s, &upwind_eikonal, tau, &u).unwrap();
        let cent = centered_euler_step(&s, &abs, tau, &u).unwrap();
        let eno = eno2_euler_step(&s, &upwind_eikonal, tau, &u).unwrap();
        for j in 2..9 {
            for out in [&mono, &cent, &eno] {
                assert!((out[j] - (u[j] - tau * slope.abs())).abs() < 1e-13);
            }
        }
        assert_eq!(mono[0], 9.0);
        assert_eq!(mono[10], 9.0);
    }

    #[test]
    fn centered_misses_the_peak() {
        let s = periodic(4, 0.0, 4.0);
        let abs = |_x: f64, p: f64| p.abs();
        let out = centered_euler_step(&s, &abs, 0.5, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(out[1], 1.0);
    }

    #[test]
    fn eno2_matches_exact_derivatives_on_quadratics() {
        // u = (x - 0.3)^2 with an upwind eikonal flux, away from the minimum.
        let s = periodic(40, -4.0, 4.0);
        let u: Vec<f64> = (0..40).map(|j| (s.grid.node(j) - 0.3).powi(2)).collect();
        let tau = 0.02;
        let out = eno2_euler_step(&s, &upwind_eikonal, tau, &u).unwrap();
        for j in 5..35 {
            let x = s.grid.node(j);
            if (x - 0.3).abs() < 0.5 {
                continue;
            }
            let exact = u[j] - tau * (2.0 * (x - 0.3)).abs();
            assert!((out[j] - exact).abs() < 1e-12, "node {j}");
        }
    }

    #[test]
    fn steps_reject_wrong_length() {
        let s = periodic(8, 0.0, 1.0);
        assert!(monotone_step(&s, &upwind_eikonal, 0.1, &[0.0; 7]).is_err());
    }

    #[test]
    fn rk2_centered_transports_affine_data() {
        let s = periodic(16, 0.0, 1.0);
        // Periodic data cannot be affine everywhere; use a constant instead.
        let step = Rk2::new(CenteredEuler1d {
            stencil: s,
            hamiltonian: Arc::new(|_x: f64, p: f64| p.abs()),
            tau: 0.01,
        });
        let u = vec![2.0; 16];
        assert_eq!(step.apply(&u).unwrap(), u);
    }
}
