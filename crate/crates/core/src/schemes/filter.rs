use crate::error::{Error, Result};

use super::{check_finite, check_len, Limiter, SharedStep, Step};

/// Bounded filter functions used to blend the monotone and high-order steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Filter {
    /// `x` on `[-1, 1]` and `0` outside: the high-order value is kept verbatim
    /// or discarded.
    #[default]
    New,
    /// Continuous hat-shaped filter `sign(x) max(1 - ||x| - 1|, 0)`.
    FroeseOberman,
}

impl Filter {
    pub fn eval(self, x: f64) -> f64 {
        filter_eval(self, x)
    }
}

pub fn filter_eval(filter: Filter, x: f64) -> f64 {
    match filter {
        Filter::New => {
            if x.abs() <= 1.0 {
                x
            } else {
                0.0
            }
        }
        Filter::FroeseOberman => x.signum() * (1.0 - (x.abs() - 1.0).abs()).max(0.0),
    }
}

/// Switching parameter `eps` as a function of the mesh size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonRule {
    pub c1: f64,
    /// When set, `eps = min(c1 dx, cap sqrt(dx))`.
    pub cap: Option<f64>,
}

impl EpsilonRule {
    pub fn linear(c1: f64) -> Self {
        EpsilonRule { c1, cap: None }
    }

    pub fn capped(c1: f64, cap: f64) -> Self {
        EpsilonRule { c1, cap: Some(cap) }
    }

    pub fn eval(&self, dx: f64) -> Result<f64> {
        compute_epsilon(self, dx)
    }
}

pub fn compute_epsilon(rule: &EpsilonRule, dx: f64) -> Result<f64> {
    if !(dx > 0.0) || !dx.is_finite() {
        return Err(Error::InvalidParameter(format!("mesh size dx = {dx}")));
    }
    if !(rule.c1 > 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon coefficient c1 = {}", rule.c1)));
    }
    let linear = rule.c1 * dx;
    match rule.cap {
        None => Ok(linear),
        Some(cap) if cap > 0.0 => Ok(linear.min(cap * dx.sqrt())),
        Some(cap) => Err(Error::InvalidParameter(format!("epsilon cap {cap}"))),
    }
}

/// Smallest `c1` for which smooth regions are expected to take the
/// high-order branch: `0.5 * |v_xx| * |dh/du+ - dh/du-|`.
pub fn estimate_switching_constant(vxx_bound: f64, dh_spread: f64) -> f64 {
    0.5 * vxx_bound * dh_spread
}

/// Diagnostics for one filtered step.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepReport {
    /// Share of nodes where `|S^A - S^M| <= eps tau`.
    pub used_high_order_fraction: f64,
    /// Largest `|S^A - S^M| / (eps tau)` over the field.
    pub max_filter_argument: f64,
}

/// Nodewise `S^M + eps tau F((S^A - S^M) / (eps tau))`.
///
/// With [`Filter::New`] the high-order value is returned bit-for-bit wherever
/// it is accepted.
pub fn filtered_blend(
    monotone: &[f64],
    high: &[f64],
    filter: Filter,
    eps: f64,
    tau: f64,
) -> Result<(Vec<f64>, StepReport)> {
    if !(eps > 0.0 && tau > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "filtered step needs eps > 0 and tau > 0 (got {eps}, {tau})"
        )));
    }
    check_len(high, monotone.len())?;
    let scale = eps * tau;
    let mut accepted = 0usize;
    let mut max_arg = 0.0f64;
    let out: Vec<f64> = monotone
        .iter()
        .zip(high)
        .map(|(&m, &a)| {
            let x = (a - m) / scale;
            max_arg = max_arg.max(x.abs());
            if x.abs() <= 1.0 {
                accepted += 1;
            }
            match filter {
                Filter::New if x.abs() <= 1.0 => a,
                _ => m + scale * filter_eval(filter, x),
            }
        })
        .collect();
    check_finite(&out)?;
    let n = monotone.len().max(1);
    Ok((
        out,
        StepReport {
            used_high_order_fraction: accepted as f64 / n as f64,
            max_filter_argument: max_arg,
        },
    ))
}

pub fn filtered_step(
    u: &[f64],
    monotone: &dyn Step,
    high: &dyn Step,
    filter: Filter,
    eps: f64,
    tau: f64,
) -> Result<(Vec<f64>, StepReport)> {
    let sm = monotone.apply(u)?;
    let sa = high.apply(u)?;
    filtered_blend(&sm, &sa, filter, eps, tau)
}

/// Filtered scheme `S^F`, optionally limiting the high-order step against
/// the previous field before blending.
pub struct Filtered {
    pub monotone: SharedStep,
    pub high: SharedStep,
    pub filter: Filter,
    pub eps: f64,
    pub tau: f64,
    pub limiter: Option<Limiter>,
}

impl Filtered {
    pub fn apply_with_report(&self, u: &[f64]) -> Result<(Vec<f64>, StepReport)> {
        let sm = self.monotone.apply(u)?;
        let mut sa = self.high.apply(u)?;
        if let Some(limiter) = &self.limiter {
            sa = limiter.apply(u, &sa)?;
        }
        filtered_blend(&sm, &sa, self.filter, self.eps, self.tau)
    }
}

impl Step for Filtered {
    fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        self.apply_with_report(u).map(|(v, _)| v)
    }
}
