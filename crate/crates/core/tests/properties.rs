use std::sync::Arc;

use proptest::collection::vec;
use proptest::prelude::*;

use hjfilter::analysis::{convergence_order, error_norms};
use hjfilter::hamiltonians::{
    centered_difference, eno2_derivatives, minmod, project_derivative, upwind_burgers, upwind_eikonal,
    DerivativePair, LaxFriedrichs1d, LaxFriedrichs2d, NumericalHamiltonian1d, NumericalHamiltonian2d,
    ProjectionMode, SharedFlux1d, UpwindAdvection1d, UpwindAdvection2d,
};
use hjfilter::mesh::{fill_ghosts, fill_ghosts_2d, BoundaryCondition, Grid1D, Grid2D};
use hjfilter::schemes::{
    filtered_blend, limiter_clamp_2d, obstacle_step, CenteredEuler1d, Filter, Filtered, Limiter,
    MonotoneFd1d, MonotoneFd2d, Rk2, SemiLagrangian1d, SharedStep, SlControls, Stencil1d, Stencil2d,
    Step,
};

const CELLS: usize = 24;

fn bc_strategy() -> impl Strategy<Value = BoundaryCondition> {
    prop_oneof![Just(BoundaryCondition::Periodic), (-1.0..1.0f64).prop_map(BoundaryCondition::Dirichlet)]
}

fn stencil(bc: BoundaryCondition) -> Stencil1d {
    Stencil1d::new(Grid1D::new(-1.0, 1.0, CELLS).unwrap(), bc)
}

/// A field and a pointwise nonnegative perturbation of it.
fn ordered_pair(len: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (vec(-1.0..1.0f64, len), vec(0.0..0.5f64, len))
        .prop_map(|(u, d)| {
            let v = u.iter().zip(&d).map(|(a, b)| a + b).collect();
            (u, v)
        })
}

fn max_slope(u: &[f64], bc: &BoundaryCondition, dx: f64) -> f64 {
    let p = fill_ghosts(u, bc, 1);
    p.windows(2).map(|w| ((w[1] - w[0]) / dx).abs()).fold(0.0, f64::max)
}

fn assert_ordered(lo: &[f64], hi: &[f64]) -> Result<(), TestCaseError> {
    for (j, (a, b)) in lo.iter().zip(hi).enumerate() {
        prop_assert!(a <= &(b + 1e-12), "node {j}: {a} > {b}");
    }
    Ok(())
}

fn monotone_1d(flux: SharedFlux1d, bc: BoundaryCondition, tau: f64) -> MonotoneFd1d {
    MonotoneFd1d {
        stencil: stencil(bc),
        flux,
        tau,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eikonal_monotone_step_is_monotone(bc in bc_strategy(), (u, v) in ordered_pair(CELLS + 1)) {
        let s = stencil(bc);
        let u = &u[..s.len()];
        let v = &v[..s.len()];
        let step = monotone_1d(Arc::new(upwind_eikonal), bc, 0.9 * s.grid.dx);
        assert_ordered(&step.apply(u).unwrap(), &step.apply(v).unwrap())?;
    }

    #[test]
    fn burgers_monotone_step_is_monotone(bc in bc_strategy(), (u, v) in ordered_pair(CELLS + 1)) {
        let s = stencil(bc);
        let u = &u[..s.len()];
        let v = &v[..s.len()];
        let c0 = max_slope(u, &bc, s.grid.dx).max(max_slope(v, &bc, s.grid.dx)).max(1.0);
        let step = monotone_1d(Arc::new(upwind_burgers), bc, 0.45 * s.grid.dx / c0);
        assert_ordered(&step.apply(u).unwrap(), &step.apply(v).unwrap())?;
    }

    #[test]
    fn lax_friedrichs_step_is_monotone(bc in bc_strategy(), (u, v) in ordered_pair(CELLS + 1)) {
        let s = stencil(bc);
        let u = &u[..s.len()];
        let v = &v[..s.len()];
        let flux = LaxFriedrichs1d::new(Arc::new(|_x: f64, p: f64| p.abs()), 1.0);
        let step = monotone_1d(Arc::new(flux), bc, 0.9 * s.grid.dx);
        assert_ordered(&step.apply(u).unwrap(), &step.apply(v).unwrap())?;
    }

    #[test]
    fn advection_step_is_monotone(bc in bc_strategy(), (u, v) in ordered_pair(CELLS + 1)) {
        let s = stencil(bc);
        let u = &u[..s.len()];
        let v = &v[..s.len()];
        let flux = UpwindAdvection1d { velocity: |x: f64| (3.0 * x).sin() };
        let step = monotone_1d(Arc::new(flux), bc, 0.9 * s.grid.dx);
        assert_ordered(&step.apply(u).unwrap(), &step.apply(v).unwrap())?;
    }

    #[test]
    fn semi_lagrangian_step_is_monotone(bc in bc_strategy(), (u, v) in ordered_pair(CELLS + 1)) {
        let s = stencil(bc);
        let u = &u[..s.len()];
        let v = &v[..s.len()];
        let controls = SlControls::minimizing(
            SlControls::uniform(-1.0, 1.0, 7),
            Arc::new(|_x, a, _b| a),
            Arc::new(|x: f64, a: f64, _b| 0.5 * a * a + x),
        );
        let step = SemiLagrangian1d { stencil: s, controls, tau: 1.5 * s.grid.dx };
        assert_ordered(&step.apply(u).unwrap(), &step.apply(v).unwrap())?;
    }

    #[test]
    fn two_dimensional_steps_are_monotone(
        periodic in any::<bool>(),
        (u, v) in ordered_pair(11 * 11),
    ) {
        let bc = if periodic { BoundaryCondition::Periodic } else { BoundaryCondition::Dirichlet(0.5) };
        let cells = if periodic { 11 } else { 10 };
        let grid = Grid2D::square(-1.0, 1.0, cells).unwrap();
        let s = Stencil2d::new(grid, bc);
        let tau = 0.9 / (1.0 / grid.x.dx + 1.0 / grid.y.dx);
        let lf = LaxFriedrichs2d::new(Arc::new(|_x: f64, _y: f64, p: f64, q: f64| p.hypot(q)), 1.0, 1.0);
        let rot = UpwindAdvection2d::new(|x: f64, y: f64| (-y, x));
        let steps: [SharedStep; 2] = [
            Arc::new(MonotoneFd2d { stencil: s, flux: Arc::new(lf), tau }),
            Arc::new(MonotoneFd2d { stencil: s, flux: Arc::new(rot), tau }),
        ];
        for step in steps {
            assert_ordered(&step.apply(&u).unwrap(), &step.apply(&v).unwrap())?;
        }
    }

    #[test]
    fn filtered_step_stays_within_eps_tau_of_monotone(
        sm in vec(-2.0..2.0f64, 16),
        delta in vec(-0.1..0.1f64, 16),
        eps in 0.01..1.0f64,
        tau in 0.001..0.1f64,
        fo in any::<bool>(),
    ) {
        let sa: Vec<f64> = sm.iter().zip(&delta).map(|(a, d)| a + d).collect();
        let filter = if fo { Filter::FroeseOberman } else { Filter::New };
        let (sf, _) = filtered_blend(&sm, &sa, filter, eps, tau).unwrap();
        for (f, m) in sf.iter().zip(&sm) {
            prop_assert!((f - m).abs() <= eps * tau * (1.0 + 1e-12));
        }
    }

    #[test]
    fn new_filter_switches_bit_exactly(
        sm in vec(-2.0..2.0f64, 16),
        delta in vec(-0.1..0.1f64, 16),
        eps in 0.01..1.0f64,
        tau in 0.001..0.1f64,
    ) {
        let sa: Vec<f64> = sm.iter().zip(&delta).map(|(a, d)| a + d).collect();
        let (sf, report) = filtered_blend(&sm, &sa, Filter::New, eps, tau).unwrap();
        for ((f, a), m) in sf.iter().zip(&sa).zip(&sm) {
            if ((a - m) / (eps * tau)).abs() <= 1.0 {
                prop_assert_eq!(f.to_bits(), a.to_bits());
            } else {
                prop_assert_eq!(f.to_bits(), m.to_bits());
            }
        }
        prop_assert!((0.0..=1.0).contains(&report.used_high_order_fraction));
    }

    #[test]
    fn filtered_scheme_is_eps_monotone(bc in bc_strategy(), (u, v) in ordered_pair(CELLS + 1), c1 in 0.5..20.0f64) {
        let s = stencil(bc);
        let u = &u[..s.len()];
        let v = &v[..s.len()];
        let tau = 0.9 * s.grid.dx;
        let eps = c1 * s.grid.dx;
        for filter in [Filter::New, Filter::FroeseOberman] {
            let sf = Filtered {
                monotone: Arc::new(monotone_1d(Arc::new(upwind_eikonal), bc, tau)),
                high: Arc::new(Rk2::new(CenteredEuler1d {
                    stencil: s,
                    hamiltonian: Arc::new(|_x: f64, p: f64| p.abs()),
                    tau,
                })),
                filter,
                eps,
                tau,
                limiter: None,
            };
            let (a, b) = (sf.apply(u).unwrap(), sf.apply(v).unwrap());
            for (x, y) in a.iter().zip(&b) {
                prop_assert!(*x <= y + 2.0 * eps * tau + 1e-12);
            }
        }
    }

    #[test]
    fn eno2_is_exact_on_quadratics(a in -5.0..5.0f64, b in -5.0..5.0f64, c in -5.0..5.0f64, x0 in -2.0..2.0f64) {
        let dx = 0.05;
        let u: Vec<f64> = (0..9).map(|k| {
            let x = x0 + k as f64 * dx;
            a * x * x + b * x + c
        }).collect();
        let j = 4;
        let exact = 2.0 * a * (x0 + j as f64 * dx) + b;
        let d = eno2_derivatives(&u, j, dx);
        prop_assert!((d.minus - exact).abs() < 1e-8);
        prop_assert!((d.plus - exact).abs() < 1e-8);
        prop_assert!((centered_difference(&u, j, dx) - exact).abs() < 1e-8);
    }

    #[test]
    fn monotone_fluxes_are_consistent_and_monotone(
        x in -2.0..2.0f64,
        p in -3.0..3.0f64,
        dm in 0.0..1.0f64,
        dp in 0.0..1.0f64,
    ) {
        let lf = LaxFriedrichs1d::new(Arc::new(|_x: f64, p: f64| p.abs()), 1.0);
        let adv = UpwindAdvection1d { velocity: |x: f64| x.cos() - 0.5 };
        let cases: [(&dyn NumericalHamiltonian1d, f64); 4] = [
            (&upwind_eikonal, p.abs()),
            (&upwind_burgers, 0.5 * p * p),
            (&lf, p.abs()),
            (&adv, (x.cos() - 0.5) * p),
        ];
        for (h, exact) in cases {
            prop_assert!((h.flux(x, p, p) - exact).abs() < 1e-12);
            prop_assert!(h.flux(x, p + dm, p) >= h.flux(x, p, p) - 1e-12);
            prop_assert!(h.flux(x, p, p + dp) <= h.flux(x, p, p) + 1e-12);
        }
        let lf2 = LaxFriedrichs2d::new(Arc::new(|_x: f64, _y: f64, p: f64, q: f64| p.hypot(q)), 1.0, 1.0);
        let same = DerivativePair::new(p, p);
        let q = DerivativePair::new(dm, dm);
        prop_assert!((lf2.flux(x, 0.0, same, q) - p.hypot(dm)).abs() < 1e-12);
        prop_assert!(lf2.flux(x, 0.0, DerivativePair::new(p + dm, p), q) >= lf2.flux(x, 0.0, same, q) - 1e-12);
        prop_assert!(lf2.flux(x, 0.0, DerivativePair::new(p, p + dp), q) <= lf2.flux(x, 0.0, same, q) + 1e-12);
    }

    #[test]
    fn minmod_properties(a in -10.0..10.0f64, b in -10.0..10.0f64) {
        let m = minmod(a, b);
        prop_assert_eq!(m, minmod(b, a));
        prop_assert!(m.abs() <= a.abs().min(b.abs()));
        prop_assert!(m == 0.0 || m.signum() == a.signum());
        prop_assert_eq!(minmod(a, a), a);
        if a * b <= 0.0 {
            prop_assert_eq!(m, 0.0);
        }
    }

    #[test]
    fn projections_stay_in_range(a in -5.0..5.0f64, b in 0.0..2.0f64, y in -10.0..10.0f64) {
        let c = project_derivative(a, b, y, ProjectionMode::Clamp);
        prop_assert!(c >= a - b && c <= a + b);
        let r = project_derivative(a, b, y, ProjectionMode::Reset);
        prop_assert!(r == y || r == a);
        prop_assert!((r - a).abs() <= b);
    }

    #[test]
    fn periodic_ghosts_wrap(u in vec(-1.0..1.0f64, 3..20), width in 1usize..3) {
        let p = fill_ghosts(&u, &BoundaryCondition::Periodic, width);
        let n = u.len();
        prop_assert_eq!(&p[width..width + n], &u[..]);
        for k in 0..width {
            prop_assert_eq!(p[k], u[(n - width + k) % n]);
            prop_assert_eq!(p[width + n + k], u[k % n]);
        }
        // Refilling the interior of a padded copy reproduces it.
        prop_assert_eq!(fill_ghosts(&p[width..width + n], &BoundaryCondition::Periodic, width), p);
    }

    #[test]
    fn periodic_ghosts_2d_wrap(u in vec(-1.0..1.0f64, 20), w in 1usize..3) {
        let (nx, ny) = (4, 5);
        let p = fill_ghosts_2d(&u, nx, ny, &BoundaryCondition::Periodic, w).unwrap();
        let ey = ny + 2 * w;
        for ei in 0..nx + 2 * w {
            for ej in 0..ey {
                let i = (ei + nx * 3 - w) % nx;
                let j = (ej + ny * 3 - w) % ny;
                prop_assert_eq!(p[ei * ey + ej], u[i * ny + j]);
            }
        }
    }

    #[test]
    fn clamp_limiters_stay_in_local_range(
        prev in vec(-1.0..1.0f64, 36),
        proposed in vec(-2.0..2.0f64, 36),
        periodic in any::<bool>(),
    ) {
        let bc = if periodic { BoundaryCondition::Periodic } else { BoundaryCondition::Dirichlet(0.0) };
        let out = limiter_clamp_2d(&prev, &proposed, 6, 6, &bc).unwrap();
        let p = fill_ghosts_2d(&prev, 6, 6, &bc, 1).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let k = (i + 1) * 8 + j + 1;
                let around = [p[k], p[k - 8], p[k + 8], p[k - 1], p[k + 1]];
                let lo = around.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = around.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let v = out[i * 6 + j];
                prop_assert!(v >= lo && v <= hi);
                if proposed[i * 6 + j] >= lo && proposed[i * 6 + j] <= hi {
                    prop_assert_eq!(v, proposed[i * 6 + j]);
                }
            }
        }

        let s = Stencil1d::new(Grid1D::new(0.0, 1.0, 36).unwrap(), BoundaryCondition::Periodic);
        let trigger: Vec<bool> = (0..36).map(|j| j % 3 != 0).collect();
        let lim = Limiter::Extrema1d { stencil: s, trigger: trigger.clone() };
        let out = lim.apply(&prev, &proposed).unwrap();
        for j in 0..36 {
            if !trigger[j] {
                prop_assert_eq!(out[j], proposed[j]);
                continue;
            }
            let around = [prev[(j + 35) % 36], prev[j], prev[(j + 1) % 36]];
            let lo = around.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = around.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(out[j] >= lo && out[j] <= hi);
        }
    }

    #[test]
    fn obstacle_output_dominates_obstacle(u in vec(-1.0..1.0f64, CELLS), g in vec(-1.0..1.0f64, CELLS)) {
        let step = monotone_1d(Arc::new(upwind_eikonal), BoundaryCondition::Periodic, 0.05);
        let out = obstacle_step(&step, &u, &g).unwrap();
        let plain = step.apply(&u).unwrap();
        for ((o, p), gj) in out.iter().zip(&plain).zip(&g) {
            prop_assert!(o >= gj);
            prop_assert_eq!(*o, p.max(*gj));
        }
    }

    #[test]
    fn norms_are_homogeneous_and_translation_invariant(
        u in vec(-1.0..1.0f64, 12),
        exact in vec(-1.0..1.0f64, 12),
        lambda in -3.0..3.0f64,
        shift in -5.0..5.0f64,
        w in 0.01..1.0f64,
    ) {
        let base = error_norms(&u, &exact, None, w).unwrap();
        let us: Vec<f64> = u.iter().map(|v| v + shift).collect();
        let es: Vec<f64> = exact.iter().map(|v| v + shift).collect();
        let shifted = error_norms(&us, &es, None, w).unwrap();
        let tol = 1e-9 * (1.0 + base.l1);
        prop_assert!((shifted.l1 - base.l1).abs() <= tol);
        prop_assert!((shifted.l2 - base.l2).abs() <= tol);
        prop_assert!((shifted.linf - base.linf).abs() <= tol);

        let e: Vec<f64> = u.iter().zip(&exact).map(|(a, b)| lambda * (a - b)).collect();
        let scaled = error_norms(&e, &vec![0.0; 12], None, w).unwrap();
        let l = lambda.abs();
        prop_assert!((scaled.l1 - l * base.l1).abs() <= 1e-9 * (1.0 + scaled.l1));
        prop_assert!((scaled.l2 - l * base.l2).abs() <= 1e-9 * (1.0 + scaled.l2));
        prop_assert!((scaled.linf - l * base.linf).abs() <= 1e-9 * (1.0 + scaled.linf));
    }

    #[test]
    fn order_of_exact_ratios(e in 1e-12..1e3f64) {
        prop_assert_eq!(convergence_order(e, e), Some(0.0));
        prop_assert_eq!(convergence_order(4.0 * e, e), Some(2.0));
    }
}
