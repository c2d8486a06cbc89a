//! The benchmark problems: PDE data, boundary conditions, exact solutions and
//! brute-force oracles used to cross-check them.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::analysis::{Norm, SchemeKind};
use crate::error::{Error, Result};
use crate::hamiltonians::{
    upwind_burgers, upwind_eikonal, LaxFriedrichs2d, SharedFlux1d, SharedFlux2d,
    SharedHamiltonian1d, SharedHamiltonian2d, UpwindAdvection1d, UpwindAdvection2d,
};
use crate::mesh::{tau_from_cfl, tau_from_cfl_2d, BoundaryCondition, Grid1D, Grid2D, TimeGrid};
use crate::schemes::{SlControls, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE};

pub type Fn1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type Fn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type Exact1 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type Exact2 = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemId {
    Ex1a,
    Ex1b,
    Ex2,
    Ex3,
    Ex4,
    Ex5,
    Ex6,
    Ex7,
}

impl ProblemId {
    pub const ALL: [ProblemId; 8] = [
        ProblemId::Ex1a,
        ProblemId::Ex1b,
        ProblemId::Ex2,
        ProblemId::Ex3,
        ProblemId::Ex4,
        ProblemId::Ex5,
        ProblemId::Ex6,
        ProblemId::Ex7,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProblemId::Ex1a => "ex1a",
            ProblemId::Ex1b => "ex1b",
            ProblemId::Ex2 => "ex2",
            ProblemId::Ex3 => "ex3",
            ProblemId::Ex4 => "ex4",
            ProblemId::Ex5 => "ex5",
            ProblemId::Ex6 => "ex6",
            ProblemId::Ex7 => "ex7",
        }
    }

    pub fn problem(self) -> Problem {
        match self {
            ProblemId::Ex1a => example1_eikonal(InitialData::Regular),
            ProblemId::Ex1b => example1_eikonal(InitialData::Reversed),
            ProblemId::Ex2 => example2_burgers(),
            ProblemId::Ex3 => example3_rotation(),
            ProblemId::Ex4 => example4_eikonal2d(),
            ProblemId::Ex5 => example5_steady_eikonal(),
            ProblemId::Ex6 => example6_obstacle_advection(),
            ProblemId::Ex7 => example7_obstacle_eikonal(),
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

pub fn problem_by_id(id: &str) -> Result<Problem> {
    Ok(id.parse::<ProblemId>()?.problem())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeMode {
    Evolution { t_final: f64 },
    /// Iterate the time-marching form to a fixed point.
    Steady { tol: f64, max_iterations: usize },
}

/// How a table's resolution label `M` maps to a mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    /// `M` cells per axis.
    Cells,
    /// `M` nodes per axis, boundary included (`M - 1` cells).
    Nodes,
}

/// Half-width of the excluded neighbourhood around each singular point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GuardRadius {
    /// A fixed distance, independent of the mesh.
    Fixed(f64),
    /// A multiple of `dx`.
    Cells(f64),
}

impl GuardRadius {
    pub fn width(self, dx: f64) -> f64 {
        match self {
            GuardRadius::Fixed(r) => r,
            GuardRadius::Cells(c) => c * dx,
        }
    }
}

/// Nodes within the guard radius of any point are excluded from the error.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularMask {
    pub points: Vec<f64>,
    pub radius: GuardRadius,
}

impl SingularMask {
    pub fn keeps(&self, x: f64, dx: f64) -> bool {
        let r = self.radius.width(dx);
        self.points.iter().all(|s| (x - s).abs() > r)
    }
}

#[derive(Clone)]
pub struct Model1d {
    pub xmin: f64,
    pub xmax: f64,
    pub hamiltonian: SharedHamiltonian1d,
    /// Monotone numerical Hamiltonian, also used inside ENO2 steps.
    pub flux: SharedFlux1d,
    pub initial: Fn1,
    /// `exact(t, x)`; steady problems ignore `t`.
    pub exact: Exact1,
    pub obstacle: Option<Fn1>,
    pub sl: SlControls,
    /// Whether the characteristic speeds change sign at `x` (limiter trigger).
    pub sign_change: Arc<dyn Fn(f64) -> bool + Send + Sync>,
}

#[derive(Clone)]
pub struct Model2d {
    pub lo: f64,
    pub hi: f64,
    pub hamiltonian: SharedHamiltonian2d,
    pub flux: SharedFlux2d,
    pub initial: Fn2,
    pub exact: Exact2,
}

#[derive(Clone)]
pub enum Model {
    OneD(Model1d),
    TwoD(Model2d),
}

#[derive(Clone)]
pub struct Problem {
    pub id: ProblemId,
    pub title: &'static str,
    pub model: Model,
    pub bc: BoundaryCondition,
    pub time: TimeMode,
    pub cfl: f64,
    /// Speed bound entering the time-step restriction.
    pub c0: f64,
    pub eps_c1: f64,
    pub limiter: bool,
    pub norm: Norm,
    pub mask: Option<SingularMask>,
    pub levels: Vec<usize>,
    pub resolution: Resolution,
    /// Scheme columns of the reference table.
    pub schemes: Vec<SchemeKind>,
}

impl Problem {
    pub fn dimension(&self) -> usize {
        match self.model {
            Model::OneD(_) => 1,
            Model::TwoD(_) => 2,
        }
    }

    pub fn model_1d(&self) -> Result<&Model1d> {
        match &self.model {
            Model::OneD(m) => Ok(m),
            Model::TwoD(_) => Err(Error::Unsupported(format!("{} is two-dimensional", self.id))),
        }
    }

    pub fn model_2d(&self) -> Result<&Model2d> {
        match &self.model {
            Model::TwoD(m) => Ok(m),
            Model::OneD(_) => Err(Error::Unsupported(format!("{} is one-dimensional", self.id))),
        }
    }

    /// Cells per axis for the resolution label `m`.
    pub fn cells(&self, m: usize) -> Result<usize> {
        match self.resolution {
            Resolution::Cells => Ok(m),
            Resolution::Nodes => m
                .checked_sub(1)
                .ok_or_else(|| Error::InvalidGrid(format!("{m} nodes per axis"))),
        }
    }

    pub fn grid_1d(&self, cells: usize) -> Result<Grid1D> {
        let m = self.model_1d()?;
        Grid1D::new(m.xmin, m.xmax, cells)
    }

    pub fn grid_2d(&self, cells: usize) -> Result<Grid2D> {
        let m = self.model_2d()?;
        Grid2D::square(m.lo, m.hi, cells)
    }

    /// Largest stable step at the problem's CFL number.
    pub fn tau_max(&self, cells: usize, cfl: f64) -> Result<f64> {
        match self.model {
            Model::OneD(_) => tau_from_cfl(&self.grid_1d(cells)?, cfl, self.c0),
            Model::TwoD(_) => tau_from_cfl_2d(&self.grid_2d(cells)?, cfl, self.c0),
        }
    }

    /// Uniform time levels for evolution problems; `None` when steady.
    pub fn time_grid(&self, cells: usize, cfl: f64) -> Result<Option<TimeGrid>> {
        match self.time {
            TimeMode::Evolution { t_final } => {
                Ok(Some(TimeGrid::with_max_step(t_final, self.tau_max(cells, cfl)?)?))
            }
            TimeMode::Steady { .. } => Ok(None),
        }
    }

    /// Node coordinates, one entry per stored value (`(x, y)` pairs in 2D,
    /// with `y = 0` in 1D).
    pub fn nodes(&self, cells: usize) -> Result<Vec<(f64, f64)>> {
        match self.model {
            Model::OneD(_) => Ok(self
                .grid_1d(cells)?
                .nodes(&self.bc)
                .into_iter()
                .map(|x| (x, 0.0))
                .collect()),
            Model::TwoD(_) => {
                let g = self.grid_2d(cells)?;
                let (nx, ny) = g.shape(&self.bc);
                Ok((0..nx)
                    .flat_map(|i| (0..ny).map(move |j| (g.x.node(i), g.y.node(j))))
                    .collect())
            }
        }
    }

    pub fn initial_field(&self, cells: usize) -> Result<Vec<f64>> {
        let nodes = self.nodes(cells)?;
        Ok(match &self.model {
            Model::OneD(m) => nodes.iter().map(|&(x, _)| (m.initial)(x)).collect(),
            Model::TwoD(m) => nodes.iter().map(|&(x, y)| (m.initial)(x, y)).collect(),
        })
    }

    pub fn exact_field(&self, cells: usize, t: f64) -> Result<Vec<f64>> {
        let nodes = self.nodes(cells)?;
        Ok(match &self.model {
            Model::OneD(m) => nodes.iter().map(|&(x, _)| (m.exact)(t, x)).collect(),
            Model::TwoD(m) => nodes.iter().map(|&(x, y)| (m.exact)(t, x, y)).collect(),
        })
    }

    pub fn obstacle_field(&self, cells: usize) -> Result<Option<Vec<f64>>> {
        match &self.model {
            Model::OneD(m) => match &m.obstacle {
                Some(g) => Ok(Some(self.grid_1d(cells)?.nodes(&self.bc).iter().map(|&x| g(x)).collect())),
                None => Ok(None),
            },
            Model::TwoD(_) => Ok(None),
        }
    }

    /// Nodes kept by the error mask (all nodes when there is none).
    pub fn error_mask(&self, cells: usize) -> Result<Vec<bool>> {
        let nodes = self.nodes(cells)?;
        Ok(match (&self.mask, &self.model) {
            (Some(mask), Model::OneD(_)) => {
                let dx = self.grid_1d(cells)?.dx;
                nodes.iter().map(|&(x, _)| mask.keeps(x, dx)).collect()
            }
            _ => vec![true; nodes.len()],
        })
    }
}

/// Sampling resolution for the brute-force oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub samples_per_unit_1d: f64,
    pub samples_per_unit_2d: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            samples_per_unit_1d: 1e4,
            samples_per_unit_2d: 1e3,
        }
    }
}

/// `min_{y in [a, b]} f(y)` by uniform sampling (endpoints included).
pub fn min_over_interval(f: &dyn Fn(f64) -> f64, a: f64, b: f64, samples_per_unit: f64) -> f64 {
    let n = (((b - a) * samples_per_unit).ceil() as usize).max(1);
    (0..=n)
        .map(|k| f(a + (b - a) * k as f64 / n as f64))
        .fold(f64::INFINITY, f64::min)
}

/// Hopf–Lax value `min_y v0(y) + (x - y)^2 / (2t)` over `y` in `[lo, hi]`,
/// by sampling followed by a golden-section polish around the best sample.
pub fn hopf_lax_1d(
    v0: &dyn Fn(f64) -> f64,
    t: f64,
    x: f64,
    (lo, hi): (f64, f64),
    samples_per_unit: f64,
) -> f64 {
    if t <= 0.0 {
        return v0(x);
    }
    let g = |y: f64| v0(y) + (x - y) * (x - y) / (2.0 * t);
    let n = (((hi - lo) * samples_per_unit).ceil() as usize).max(2);
    let h = (hi - lo) / n as f64;
    let (k_best, _) = (0..=n)
        .map(|k| (k, g(lo + k as f64 * h)))
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    let (mut a, mut b) = (
        (lo + (k_best as f64 - 1.0) * h).max(lo),
        (lo + (k_best as f64 + 1.0) * h).min(hi),
    );
    let r = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let c = b - r * (b - a);
        let d = a + r * (b - a);
        if g(c) < g(d) {
            b = d;
        } else {
            a = c;
        }
    }
    g(0.5 * (a + b)).min(g(lo + k_best as f64 * h))
}

/// `min_{|q - p| <= r} f(q)` by sampling a square lattice clipped to the disc
/// plus a dense sampling of the boundary circle.
pub fn min_over_disc(f: &dyn Fn(f64, f64) -> f64, px: f64, py: f64, r: f64, samples_per_unit: f64) -> f64 {
    if r <= 0.0 {
        return f(px, py);
    }
    let n = ((r * samples_per_unit).ceil() as i64).max(1);
    let h = r / n as f64;
    let mut best = f64::INFINITY;
    for i in -n..=n {
        for j in -n..=n {
            let (dx, dy) = (i as f64 * h, j as f64 * h);
            if dx * dx + dy * dy <= r * r {
                best = best.min(f(px + dx, py + dy));
            }
        }
    }
    let m = ((2.0 * PI * r * samples_per_unit * 10.0).ceil() as usize).max(16);
    for k in 0..m {
        let th = 2.0 * PI * k as f64 / m as f64;
        best = best.min(f(px + r * th.cos(), py + r * th.sin()));
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialData {
    Regular,
    Reversed,
}

fn bump4(x: f64) -> f64 {
    (1.0 - x * x).max(0.0).powi(4)
}

fn eikonal_sl_controls() -> SlControls {
    SlControls::minimizing(
        SlControls::uniform(-1.0, 1.0, 21),
        Arc::new(|_x, a, _b| a),
        Arc::new(|_x, _a, _b| 0.0),
    )
}

fn abs_hamiltonian() -> SharedHamiltonian1d {
    Arc::new(|_x: f64, p: f64| p.abs())
}

fn always(_x: f64) -> bool {
    true
}

const LEVELS_1D: [usize; 5] = [40, 80, 160, 320, 640];

/// `v_t + |v_x| = 0` on `(-2, 2)` with a smooth bump or its negative.
pub fn example1_eikonal(data: InitialData) -> Problem {
    let (id, title, initial, exact, limiter): (ProblemId, &'static str, Fn1, Exact1, bool) = match data {
        InitialData::Regular => (
            ProblemId::Ex1a,
            "eikonal, bump initial data",
            Arc::new(bump4),
            // Unimodal data: the minimum over [x - t, x + t] sits at an end.
            Arc::new(|t: f64, x: f64| bump4(x - t).min(bump4(x + t))),
            false,
        ),
        InitialData::Reversed => (
            ProblemId::Ex1b,
            "eikonal, reversed bump initial data",
            Arc::new(|x: f64| -bump4(x)),
            // The reversed bump decreases towards 0; the minimum is at the
            // point of [x - t, x + t] nearest to the origin.
            Arc::new(|t: f64, x: f64| -bump4(0.0f64.clamp(x - t, x + t))),
            true,
        ),
    };
    Problem {
        id,
        title,
        model: Model::OneD(Model1d {
            xmin: -2.0,
            xmax: 2.0,
            hamiltonian: abs_hamiltonian(),
            flux: Arc::new(upwind_eikonal),
            initial,
            exact,
            obstacle: None,
            sl: eikonal_sl_controls(),
            sign_change: Arc::new(always),
        }),
        bc: BoundaryCondition::Dirichlet(0.0),
        time: TimeMode::Evolution { t_final: 0.3 },
        cfl: 0.37,
        c0: 1.0,
        eps_c1: 5.0,
        limiter,
        norm: Norm::L2,
        mask: None,
        levels: LEVELS_1D.to_vec(),
        resolution: Resolution::Cells,
        schemes: vec![SchemeKind::FilteredCentered, SchemeKind::Centered, SchemeKind::Eno2],
    }
}

/// Closed-form solution of `v_t + v_x^2 / 2 = 0`, `v(0, x) = max(0, 1 - x^2)`,
/// valid for `0 <= t < 1/2`.
pub fn burgers_exact(t: f64, x: f64) -> f64 {
    if t <= 0.0 {
        return (1.0 - x * x).max(0.0);
    }
    let s = 1.0 - 2.0 * t;
    let ax = x.abs();
    if ax <= s {
        1.0 - x * x / s
    } else if ax <= 1.0 {
        (ax - 1.0).powi(2) / (2.0 * t)
    } else {
        0.0
    }
}

pub const BURGERS_T0: f64 = 0.1;

/// `v_t + v_x^2 / 2 = 0` on `(-2, 2)` started from the smooth profile
/// `v(0.1, .)` of the compactly supported parabola.
pub fn example2_burgers() -> Problem {
    Problem {
        id: ProblemId::Ex2,
        title: "Burgers-type HJ equation, shifted initial data",
        model: Model::OneD(Model1d {
            xmin: -2.0,
            xmax: 2.0,
            hamiltonian: Arc::new(|_x: f64, p: f64| 0.5 * p * p),
            flux: Arc::new(upwind_burgers),
            initial: Arc::new(|x| burgers_exact(BURGERS_T0, x)),
            exact: Arc::new(|t, x| burgers_exact(t + BURGERS_T0, x)),
            obstacle: None,
            sl: SlControls::minimizing(
                SlControls::uniform(-2.5, 2.5, 51),
                Arc::new(|_x, a, _b| a),
                Arc::new(|_x, a, _b| 0.5 * a * a),
            ),
            sign_change: Arc::new(always),
        }),
        bc: BoundaryCondition::Dirichlet(0.0),
        time: TimeMode::Evolution { t_final: 0.3 },
        cfl: 0.37,
        c0: 1.0,
        eps_c1: 5.0,
        limiter: false,
        norm: Norm::L2,
        mask: None,
        levels: LEVELS_1D.to_vec(),
        resolution: Resolution::Cells,
        schemes: vec![SchemeKind::FilteredCentered, SchemeKind::Centered, SchemeKind::Eno2],
    }
}

const R0: f64 = 0.5;

/// `0.5 - 0.5 max(0, (1 - r^2) / (1 - r0^2))^4` as a function of the distance
/// `r` to the hump centre.
pub fn hump_profile(r: f64) -> f64 {
    0.5 - 0.5 * ((1.0 - r * r) / (1.0 - R0 * R0)).max(0.0).powi(4)
}

pub fn rotation_initial(x: f64, y: f64) -> f64 {
    hump_profile((x - 1.0).hypot(y))
}

/// `v_t - y v_x + x v_y = 0` on `(-2.5, 2.5)^2`: rigid rotation of a hump.
pub fn example3_rotation() -> Problem {
    Problem {
        id: ProblemId::Ex3,
        title: "rigid rotation",
        model: Model::TwoD(Model2d {
            lo: -2.5,
            hi: 2.5,
            hamiltonian: Arc::new(|x: f64, y: f64, p: f64, q: f64| -y * p + x * q),
            flux: Arc::new(UpwindAdvection2d::new(|x: f64, y: f64| (-y, x))),
            initial: Arc::new(rotation_initial),
            exact: Arc::new(|t: f64, x: f64, y: f64| {
                let (s, c) = t.sin_cos();
                rotation_initial(c * x + s * y, -s * x + c * y)
            }),
        }),
        bc: BoundaryCondition::Dirichlet(0.5),
        time: TimeMode::Evolution { t_final: PI / 2.0 },
        cfl: 0.37,
        c0: 2.5,
        eps_c1: 20.0,
        limiter: false,
        norm: Norm::L2,
        mask: None,
        levels: vec![20, 40, 80, 160, 320],
        resolution: Resolution::Nodes,
        schemes: vec![SchemeKind::FilteredCentered, SchemeKind::Centered, SchemeKind::Eno2],
    }
}

pub fn two_humps_initial(x: f64, y: f64) -> f64 {
    hump_profile((x - 1.0).hypot(y)).min(hump_profile((x + 1.0).hypot(y)))
}

/// Exact solution of `v_t + |grad v| = 0` from the two-hump data: the minimum
/// of `v0` over the disc of radius `t`, which for radial humps is the profile
/// at the nearest point of each disc.
pub fn two_humps_exact(t: f64, x: f64, y: f64) -> f64 {
    let a = ((x - 1.0).hypot(y) - t).max(0.0);
    let b = ((x + 1.0).hypot(y) - t).max(0.0);
    hump_profile(a).min(hump_profile(b))
}

/// `v_t + |grad v| = 0` on `(-3, 3)^2` with two separated humps.
pub fn example4_eikonal2d() -> Problem {
    let h: SharedHamiltonian2d = Arc::new(|_x: f64, _y: f64, p: f64, q: f64| p.hypot(q));
    Problem {
        id: ProblemId::Ex4,
        title: "eikonal, two humps",
        model: Model::TwoD(Model2d {
            lo: -3.0,
            hi: 3.0,
            hamiltonian: h.clone(),
            flux: Arc::new(LaxFriedrichs2d::new(h, 1.0, 1.0)),
            initial: Arc::new(two_humps_initial),
            exact: Arc::new(two_humps_exact),
        }),
        bc: BoundaryCondition::Dirichlet(0.5),
        time: TimeMode::Evolution { t_final: 0.6 },
        cfl: 0.37,
        c0: 1.0,
        eps_c1: 20.0,
        limiter: true,
        norm: Norm::L2,
        mask: None,
        levels: vec![25, 50, 100, 200, 400],
        resolution: Resolution::Nodes,
        schemes: vec![SchemeKind::FilteredCentered, SchemeKind::Centered, SchemeKind::Eno2],
    }
}

/// Constants of the steady eikonal benchmark: `(x0, a)`.
pub fn steady_constants() -> (f64, f64) {
    let c = 2f64.cbrt();
    let x0 = (c + 2.0) / (4.0 * c);
    let a = (1.0 - 2.0 * x0.powi(3)) / (2.0 * x0 - 1.0);
    (x0, a)
}

pub fn steady_source(x: f64) -> f64 {
    let (_, a) = steady_constants();
    3.0 * x * x + a
}

pub fn steady_exact(x: f64) -> f64 {
    let (x0, a) = steady_constants();
    if x <= x0 {
        x.powi(3) + a * x
    } else {
        1.0 + a - a * x - x.powi(3)
    }
}

/// `|v_x| = f(x)` on `(0, 1)` with zero boundary values, solved by marching
/// `v_t + |v_x| - f(x) = 0` to steady state from zero data.
pub fn example5_steady_eikonal() -> Problem {
    Problem {
        id: ProblemId::Ex5,
        title: "steady eikonal",
        model: Model::OneD(Model1d {
            xmin: 0.0,
            xmax: 1.0,
            hamiltonian: Arc::new(|x: f64, p: f64| p.abs() - steady_source(x)),
            flux: Arc::new(|x: f64, m: f64, p: f64| m.max(-p) - steady_source(x)),
            initial: Arc::new(|_x| 0.0),
            exact: Arc::new(|_t, x| steady_exact(x)),
            obstacle: None,
            sl: SlControls::minimizing(
                SlControls::uniform(-1.0, 1.0, 21),
                Arc::new(|_x, a, _b| a),
                Arc::new(|x, _a, _b| steady_source(x)),
            ),
            sign_change: Arc::new(always),
        }),
        bc: BoundaryCondition::Dirichlet(0.0),
        time: TimeMode::Steady {
            tol: DEFAULT_TOLERANCE,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        },
        cfl: 0.37,
        c0: 1.0,
        eps_c1: 5.0,
        limiter: false,
        norm: Norm::Linf,
        mask: None,
        levels: vec![50, 100, 200, 400, 800],
        resolution: Resolution::Cells,
        schemes: vec![
            SchemeKind::FilteredCentered,
            SchemeKind::Centered,
            SchemeKind::FilteredEno2,
        ],
    }
}

fn obstacle_initial(x: f64) -> f64 {
    0.5 + (PI * x).sin()
}

fn obstacle_g(x: f64) -> f64 {
    (PI * x).sin()
}

/// `max_{y in [a, b]} sin(pi y)`.
pub fn max_sin_pi(a: f64, b: f64) -> f64 {
    // Peaks of sin(pi y) sit at y = 1/2 + 2k.
    let k = ((a - 0.5) / 2.0).ceil();
    if 0.5 + 2.0 * k <= b {
        1.0
    } else {
        (PI * a).sin().max((PI * b).sin())
    }
}

/// Exact solution of `min(v_t + v_x, v - sin(pi x)) = 0` with
/// `v0 = 0.5 + sin(pi x)`: transported data floored by the largest obstacle
/// value met along the characteristic.
pub fn obstacle_advection_exact(t: f64, x: f64) -> f64 {
    obstacle_initial(x - t).max(max_sin_pi(x - t, x))
}

pub const OBSTACLE_SINGULAR_POINTS: [f64; 3] = [-0.1349733, 0.5, 2.0 / 3.0];

/// Twice the coarsest mesh width of the refinement study.
pub const OBSTACLE_GUARD_RADIUS: f64 = 0.1;

/// `min(v_t + v_x, v - g) = 0`, periodic on `[-1, 1]`.
pub fn example6_obstacle_advection() -> Problem {
    Problem {
        id: ProblemId::Ex6,
        title: "advection with an obstacle",
        model: Model::OneD(Model1d {
            xmin: -1.0,
            xmax: 1.0,
            hamiltonian: Arc::new(|_x: f64, p: f64| p),
            flux: Arc::new(UpwindAdvection1d { velocity: |_x: f64| 1.0 }),
            initial: Arc::new(obstacle_initial),
            exact: Arc::new(obstacle_advection_exact),
            obstacle: Some(Arc::new(obstacle_g)),
            sl: SlControls::minimizing(
                vec![-1.0],
                Arc::new(|_x, a, _b| a),
                Arc::new(|_x, _a, _b| 0.0),
            ),
            sign_change: Arc::new(|_x| false),
        }),
        bc: BoundaryCondition::Periodic,
        time: TimeMode::Evolution { t_final: 0.5 },
        cfl: 0.5,
        c0: 1.0,
        eps_c1: 5.0,
        limiter: false,
        norm: Norm::Linf,
        mask: Some(SingularMask {
            points: OBSTACLE_SINGULAR_POINTS.to_vec(),
            radius: GuardRadius::Fixed(OBSTACLE_GUARD_RADIUS),
        }),
        levels: LEVELS_1D.to_vec(),
        resolution: Resolution::Cells,
        schemes: vec![SchemeKind::FilteredCentered, SchemeKind::Centered, SchemeKind::Eno2],
    }
}

/// Piecewise form of `min_{y in [x - t, x + t]} (0.5 + sin(pi y))` for
/// `x` in `[-1, 1)` and small `t`.
pub fn obstacle_eikonal_free(t: f64, x: f64) -> f64 {
    if x < -0.5 - t {
        obstacle_initial(x + t)
    } else if x <= -0.5 + t {
        -0.5
    } else {
        obstacle_initial(x - t).min(obstacle_initial(x + t))
    }
}

pub fn obstacle_eikonal_exact(t: f64, x: f64) -> f64 {
    obstacle_eikonal_free(t, x).max(obstacle_g(x))
}

/// `min(v_t + |v_x|, v - g) = 0`, periodic on `[-1, 1]`.
pub fn example7_obstacle_eikonal() -> Problem {
    Problem {
        id: ProblemId::Ex7,
        title: "eikonal with an obstacle",
        model: Model::OneD(Model1d {
            xmin: -1.0,
            xmax: 1.0,
            hamiltonian: abs_hamiltonian(),
            flux: Arc::new(upwind_eikonal),
            initial: Arc::new(obstacle_initial),
            exact: Arc::new(obstacle_eikonal_exact),
            obstacle: Some(Arc::new(obstacle_g)),
            sl: eikonal_sl_controls(),
            sign_change: Arc::new(always),
        }),
        bc: BoundaryCondition::Periodic,
        time: TimeMode::Evolution { t_final: 0.2 },
        cfl: 0.5,
        c0: 1.0,
        eps_c1: 5.0,
        limiter: true,
        norm: Norm::L2,
        mask: None,
        levels: LEVELS_1D.to_vec(),
        resolution: Resolution::Cells,
        schemes: vec![SchemeKind::FilteredCentered, SchemeKind::Eno2],
    }
}
