use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::problems::{Model, Problem, TimeMode};
use crate::schemes::{
    march, steady_solve, CenteredEuler1d, CenteredEuler2d, EnoEuler1d, EnoEuler2d, EpsilonRule,
    Filter, Filtered, Limited, Limiter, MonotoneFd1d, MonotoneFd2d, Rk2, SemiLagrangian1d,
    SharedStep, Stencil1d, Stencil2d, WithObstacle,
};

use super::{convergence_order, error_norms, ErrorNorms};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Monotone,
    Centered,
    Eno2,
    FilteredCentered,
    FilteredEno2,
    SemiLagrangian,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 6] = [
        SchemeKind::Monotone,
        SchemeKind::Centered,
        SchemeKind::Eno2,
        SchemeKind::FilteredCentered,
        SchemeKind::FilteredEno2,
        SchemeKind::SemiLagrangian,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SchemeKind::Monotone => "monotone",
            SchemeKind::Centered => "centered",
            SchemeKind::Eno2 => "eno2",
            SchemeKind::FilteredCentered => "filtered-centered",
            SchemeKind::FilteredEno2 => "filtered-eno2",
            SchemeKind::SemiLagrangian => "sl",
        }
    }

    pub fn is_filtered(self) -> bool {
        matches!(self, SchemeKind::FilteredCentered | SchemeKind::FilteredEno2)
    }

    /// Schemes built on a high-order step that a limiter can act on.
    pub fn is_high_order(self) -> bool {
        matches!(
            self,
            SchemeKind::Centered
                | SchemeKind::Eno2
                | SchemeKind::FilteredCentered
                | SchemeKind::FilteredEno2
        )
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown scheme '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub kind: SchemeKind,
    pub filter: Filter,
    pub epsilon: EpsilonRule,
    pub limiter: bool,
    pub cfl: f64,
}

impl SchemeConfig {
    /// The problem's reference settings; limiters only act on filtered schemes.
    pub fn for_problem(problem: &Problem, kind: SchemeKind) -> Self {
        SchemeConfig {
            kind,
            filter: Filter::New,
            epsilon: EpsilonRule::linear(problem.eps_c1),
            limiter: problem.limiter && kind.is_filtered(),
            cfl: problem.cfl,
        }
    }
}

/// Assembles the full one-step operator for `problem` on `cells` cells.
pub fn build_step(problem: &Problem, config: &SchemeConfig, cells: usize, tau: f64) -> Result<SharedStep> {
    let kind = config.kind;
    let step: SharedStep = match &problem.model {
        Model::OneD(model) => {
            let stencil = Stencil1d::new(problem.grid_1d(cells)?, problem.bc);
            let monotone: SharedStep = Arc::new(MonotoneFd1d {
                stencil,
                flux: model.flux.clone(),
                tau,
            });
            let high: Option<SharedStep> = match kind {
                SchemeKind::Centered | SchemeKind::FilteredCentered => Some(Arc::new(Rk2::new(CenteredEuler1d {
                    stencil,
                    hamiltonian: model.hamiltonian.clone(),
                    tau,
                }))),
                SchemeKind::Eno2 | SchemeKind::FilteredEno2 => Some(Arc::new(Rk2::new(EnoEuler1d {
                    stencil,
                    flux: model.flux.clone(),
                    tau,
                }))),
                _ => None,
            };
            let limiter = (config.limiter && kind.is_high_order()).then(|| Limiter::Extrema1d {
                stencil,
                trigger: stencil
                    .grid
                    .nodes(&problem.bc)
                    .iter()
                    .map(|&x| (model.sign_change)(x))
                    .collect(),
            });
            let step = match (kind, high) {
                (SchemeKind::Monotone, _) => monotone,
                (SchemeKind::SemiLagrangian, _) => Arc::new(SemiLagrangian1d {
                    stencil,
                    controls: model.sl.clone(),
                    tau,
                }),
                (_, Some(high)) => combine(kind, monotone, high, limiter, config, stencil.grid.dx, tau)?,
                (_, None) => unreachable!("high-order kinds always build a high-order step"),
            };
            match problem.obstacle_field(cells)? {
                Some(g) => Arc::new(WithObstacle { inner: step, g }),
                None => step,
            }
        }
        Model::TwoD(model) => {
            let stencil = Stencil2d::new(problem.grid_2d(cells)?, problem.bc);
            let monotone: SharedStep = Arc::new(MonotoneFd2d {
                stencil,
                flux: model.flux.clone(),
                tau,
            });
            let high: SharedStep = match kind {
                SchemeKind::Monotone => return Ok(monotone),
                SchemeKind::SemiLagrangian => {
                    return Err(Error::Unsupported(
                        "the semi-Lagrangian scheme is one-dimensional".into(),
                    ))
                }
                SchemeKind::Centered | SchemeKind::FilteredCentered => Arc::new(Rk2::new(CenteredEuler2d {
                    stencil,
                    hamiltonian: model.hamiltonian.clone(),
                    tau,
                })),
                SchemeKind::Eno2 | SchemeKind::FilteredEno2 => Arc::new(Rk2::new(EnoEuler2d {
                    stencil,
                    flux: model.flux.clone(),
                    tau,
                })),
            };
            let limiter = config.limiter.then_some(Limiter::Clamp2d { stencil });
            combine(kind, monotone, high, limiter, config, stencil.grid.x.dx.max(stencil.grid.y.dx), tau)?
        }
    };
    Ok(step)
}

fn combine(
    kind: SchemeKind,
    monotone: SharedStep,
    high: SharedStep,
    limiter: Option<Limiter>,
    config: &SchemeConfig,
    dx: f64,
    tau: f64,
) -> Result<SharedStep> {
    if kind.is_filtered() {
        return Ok(Arc::new(Filtered {
            monotone,
            high,
            filter: config.filter,
            eps: config.epsilon.eval(dx)?,
            tau,
            limiter,
        }));
    }
    Ok(match limiter {
        Some(limiter) => Arc::new(Limited { inner: high, limiter }),
        None => high,
    })
}

/// Outcome of one refinement level.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelResult {
    /// Resolution label as it appears in the tables.
    pub m: usize,
    pub cells: usize,
    /// Time steps taken (iterations for steady problems).
    pub steps: usize,
    /// Error in the problem's norm; NaN when the run diverged.
    pub error: f64,
    pub norms: Option<ErrorNorms>,
    pub field: Option<Vec<f64>>,
    /// Final time of the error evaluation (0 for steady problems).
    pub time: f64,
    pub diverged: bool,
    /// For steady problems: whether the stopping tolerance was met.
    pub converged: Option<bool>,
}

/// Runs `config` on `problem` at resolution label `m` (see
/// [`Problem::cells`]). Divergence yields a NaN error rather than an `Err`.
pub fn solve_level(problem: &Problem, config: &SchemeConfig, m: usize) -> Result<LevelResult> {
    let cells = problem.cells(m)?;
    let tau = problem.tau_max(cells, config.cfl)?;
    let u0 = problem.initial_field(cells)?;
    let (outcome, steps, time, converged) = match problem.time {
        TimeMode::Evolution { .. } => {
            let tg = problem
                .time_grid(cells, config.cfl)?
                .expect("evolution problems have a time grid");
            let step = build_step(problem, config, cells, tg.tau)?;
            (march(&step, &u0, tg.steps), tg.steps, tg.t_final, None)
        }
        TimeMode::Steady { tol, max_iterations } => {
            let step = build_step(problem, config, cells, tau)?;
            match steady_solve(&step, &u0, tol, max_iterations) {
                Ok(out) => (Ok(out.u), out.iterations, 0.0, Some(out.converged)),
                Err(e) => (Err(e), max_iterations, 0.0, Some(false)),
            }
        }
    };
    let u = match outcome {
        Ok(u) => u,
        Err(Error::Diverged { .. }) => {
            return Ok(LevelResult {
                m,
                cells,
                steps,
                error: f64::NAN,
                norms: None,
                field: None,
                time,
                diverged: true,
                converged: converged.map(|_| false),
            })
        }
        Err(e) => return Err(e),
    };
    let exact = problem.exact_field(cells, time)?;
    let mask = problem.error_mask(cells)?;
    let weight = match problem.model {
        Model::OneD(_) => problem.grid_1d(cells)?.dx,
        Model::TwoD(_) => {
            let g = problem.grid_2d(cells)?;
            g.x.dx * g.y.dx
        }
    };
    let norms = error_norms(&u, &exact, Some(&mask), weight)?;
    Ok(LevelResult {
        m,
        cells,
        steps,
        error: norms.get(problem.norm),
        norms: Some(norms),
        field: Some(u),
        time,
        diverged: false,
        converged,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub m: usize,
    pub n: usize,
    pub error: f64,
    /// Order against the previous (coarser) row.
    pub order: Option<f64>,
}

pub fn rows_from_levels(levels: &[LevelResult]) -> Vec<ConvergenceRow> {
    levels
        .iter()
        .enumerate()
        .map(|(k, l)| ConvergenceRow {
            m: l.m,
            n: l.steps,
            error: l.error,
            order: k
                .checked_sub(1)
                .and_then(|p| convergence_order(levels[p].error, l.error)),
        })
        .collect()
}

/// Runs `config` at each resolution in `levels` (each double the previous).
pub fn refinement_study(problem: &Problem, config: &SchemeConfig, levels: &[usize]) -> Result<Vec<ConvergenceRow>> {
    validate_levels(levels)?;
    let results = levels
        .iter()
        .map(|&m| solve_level(problem, config, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(rows_from_levels(&results))
}

/// Checks that refinement levels are non-empty and double at each step.
pub fn validate_levels(levels: &[usize]) -> Result<()> {
    if levels.is_empty() {
        return Err(Error::InvalidParameter("no refinement levels given".into()));
    }
    for w in levels.windows(2) {
        if w[1] != 2 * w[0] {
            return Err(Error::InvalidParameter(format!(
                "refinement levels must double: {} is followed by {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}
