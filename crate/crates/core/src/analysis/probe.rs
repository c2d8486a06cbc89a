use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hamiltonians::{upwind_eikonal, SharedFlux1d};
use crate::mesh::{BoundaryCondition, Grid1D};
use crate::schemes::{CenteredEuler1d, EnoEuler1d, MonotoneFd1d, Rk2, SharedStep, Stencil1d};

use super::SchemeKind;

/// A smooth exact solution on a periodic interval, with the window in which
/// the local truncation error is measured.
#[derive(Clone)]
pub struct SmoothTest {
    pub lo: f64,
    pub hi: f64,
    pub exact: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    pub window: (f64, f64),
}

impl SmoothTest {
    /// `v = sin(x - t)` solves `v_t + |v_x| = 0` wherever `cos(x - t) > 0`,
    /// which covers the window `[-1, 1]` for the short times probed.
    pub fn eikonal_sine() -> Self {
        SmoothTest {
            lo: -std::f64::consts::PI,
            hi: std::f64::consts::PI,
            exact: Arc::new(|t, x| (x - t).sin()),
            window: (-1.0, 1.0),
        }
    }
}

/// Least-squares line `log(err) = order * log(h) + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub order: f64,
    pub r_squared: f64,
}

impl LinearFit {
    pub fn fit(samples: &[(f64, f64)]) -> Result<Self> {
        if samples.len() < 2 || samples.iter().any(|&(h, e)| !(h > 0.0 && e > 0.0)) {
            return Err(Error::InvalidParameter(
                "log-log fit needs at least two positive samples".into(),
            ));
        }
        let pts: Vec<(f64, f64)> = samples.iter().map(|&(h, e)| (h.ln(), e.ln())).collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
        let order = sxy / sxx;
        let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
        Ok(LinearFit { order, r_squared })
    }

    pub fn is_reliable(&self) -> bool {
        self.r_squared >= 0.99
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyProbeResult {
    pub spatial: LinearFit,
    pub temporal: LinearFit,
    /// `(dx, error)` at a fixed tiny time step.
    pub spatial_samples: Vec<(f64, f64)>,
    /// `(tau, error)` on a fixed fine mesh.
    pub temporal_samples: Vec<(f64, f64)>,
}

impl ConsistencyProbeResult {
    pub fn is_reliable(&self) -> bool {
        self.spatial.is_reliable() && self.temporal.is_reliable()
    }
}

/// Builds a one-step operator on a periodic stencil with time step `tau`.
pub type StepBuilder<'a> = &'a dyn Fn(Stencil1d, f64) -> Result<SharedStep>;

fn local_error(build: StepBuilder, test: &SmoothTest, cells: usize, tau: f64) -> Result<f64> {
    let grid = Grid1D::new(test.lo, test.hi, cells)?;
    let stencil = Stencil1d::new(grid, BoundaryCondition::Periodic);
    let step = build(stencil, tau)?;
    let nodes = grid.nodes(&BoundaryCondition::Periodic);
    let v0: Vec<f64> = nodes.iter().map(|&x| (test.exact)(0.0, x)).collect();
    let v1 = step.apply(&v0)?;
    let (a, b) = test.window;
    Ok(nodes
        .iter()
        .zip(&v1)
        .filter(|(&x, _)| x >= a && x <= b)
        .map(|(&x, &u)| (((test.exact)(tau, x) - u) / tau).abs())
        .fold(0.0, f64::max))
}

/// Measures the local truncation error `|(v(tau) - S(v(0))) / tau|` of a
/// scheme on smooth data and fits its order in `dx` (at the fixed small step
/// `spatial_tau`) and in `tau` (on the fixed fine mesh `temporal_cells`).
pub fn consistency_probe(
    build: StepBuilder,
    test: &SmoothTest,
    spatial_cells: &[usize],
    spatial_tau: f64,
    temporal_cells: usize,
    temporal_taus: &[f64],
) -> Result<ConsistencyProbeResult> {
    if spatial_cells.len() < 4 || temporal_taus.len() < 4 {
        return Err(Error::InvalidParameter(
            "consistency fits need at least four refinement levels".into(),
        ));
    }
    let spatial_samples = spatial_cells
        .iter()
        .map(|&m| Ok(((test.hi - test.lo) / m as f64, local_error(build, test, m, spatial_tau)?)))
        .collect::<Result<Vec<_>>>()?;
    let temporal_samples = temporal_taus
        .iter()
        .map(|&tau| Ok((tau, local_error(build, test, temporal_cells, tau)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConsistencyProbeResult {
        spatial: LinearFit::fit(&spatial_samples)?,
        temporal: LinearFit::fit(&temporal_samples)?,
        spatial_samples,
        temporal_samples,
    })
}

/// Probes `kind` on [`SmoothTest::eikonal_sine`] with `flux` as the monotone
/// Hamiltonian (also used by ENO2).
pub fn probe_eikonal(kind: SchemeKind, flux: Option<SharedFlux1d>) -> Result<ConsistencyProbeResult> {
    let flux = flux.unwrap_or_else(|| Arc::new(upwind_eikonal));
    let build = move |stencil: Stencil1d, tau: f64| -> Result<SharedStep> {
        Ok(match kind {
            SchemeKind::Monotone => Arc::new(MonotoneFd1d {
                stencil,
                flux: flux.clone(),
                tau,
            }),
            SchemeKind::Centered => Arc::new(Rk2::new(CenteredEuler1d {
                stencil,
                hamiltonian: Arc::new(|_x: f64, p: f64| p.abs()),
                tau,
            })),
            SchemeKind::Eno2 => Arc::new(Rk2::new(EnoEuler1d {
                stencil,
                flux: flux.clone(),
                tau,
            })),
            other => {
                return Err(Error::Unsupported(format!(
                    "consistency probe for the {other} scheme"
                )))
            }
        })
    };
    consistency_probe(
        &build,
        &SmoothTest::eikonal_sine(),
        &[64, 128, 256, 512, 1024],
        1e-6,
        65536,
        &[0.04, 0.02, 0.01, 0.005],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_power_law() {
        let samples: Vec<(f64, f64)> = [0.1, 0.05, 0.025, 0.0125]
            .iter()
            .map(|&h: &f64| (h, 3.0 * h * h))
            .collect();
        let fit = LinearFit::fit(&samples).unwrap();
        assert!((fit.order - 2.0).abs() < 1e-12);
        assert!(fit.r_squared > 0.999_999);
        assert!(LinearFit::fit(&[(0.1, 0.0), (0.2, 1.0)]).is_err());
    }

    #[test]
    fn too_few_levels_rejected() {
        let build = |s: Stencil1d, tau: f64| -> Result<SharedStep> {
            Ok(Arc::new(MonotoneFd1d {
                stencil: s,
                flux: Arc::new(upwind_eikonal),
                tau,
            }))
        };
        let r = consistency_probe(&build, &SmoothTest::eikonal_sine(), &[64, 128], 1e-6, 1024, &[0.1; 4]);
        assert!(r.is_err());
    }
}
