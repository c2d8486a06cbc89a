//! Error norms, convergence orders, refinement studies and consistency probes.

mod probe;
mod study;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use probe::{consistency_probe, probe_eikonal, ConsistencyProbeResult, LinearFit, SmoothTest};
pub use study::{
    build_step, refinement_study, rows_from_levels, solve_level, ConvergenceRow, LevelResult,
    SchemeConfig, SchemeKind, validate_levels,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Norm {
    L1,
    L2,
    Linf,
}

impl Norm {
    pub fn as_str(self) -> &'static str {
        match self {
            Norm::L1 => "L1",
            Norm::L2 => "L2",
            Norm::Linf => "Linf",
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(Norm::L1),
            "l2" => Ok(Norm::L2),
            "linf" => Ok(Norm::Linf),
            _ => Err(Error::InvalidParameter(format!("unknown norm '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorNorms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
    pub mask_description: String,
}

impl ErrorNorms {
    pub fn get(&self, norm: Norm) -> f64 {
        match norm {
            Norm::L1 => self.l1,
            Norm::L2 => self.l2,
            Norm::Linf => self.linf,
        }
    }
}

/// Cell-weighted norms of `u - exact` over the nodes selected by `mask`:
/// `l1 = w sum |e|`, `l2 = (w sum e^2)^(1/2)`, `linf = max |e|`, where `w` is
/// the cell measure (`dx` in 1D, `dx dy` in 2D).
pub fn error_norms(u: &[f64], exact: &[f64], mask: Option<&[bool]>, weight: f64) -> Result<ErrorNorms> {
    if exact.len() != u.len() {
        return Err(Error::ShapeMismatch {
            expected: u.len(),
            actual: exact.len(),
        });
    }
    if let Some(m) = mask {
        if m.len() != u.len() {
            return Err(Error::ShapeMismatch {
                expected: u.len(),
                actual: m.len(),
            });
        }
    }
    let keep = |j: usize| mask.is_none_or(|m| m[j]);
    let (mut sum1, mut sum2, mut max, mut count) = (0.0, 0.0, 0.0f64, 0usize);
    for (j, (a, b)) in u.iter().zip(exact).enumerate() {
        if !keep(j) {
            continue;
        }
        let e = (a - b).abs();
        sum1 += e;
        sum2 += e * e;
        // NaN must not be swallowed by max.
        max = if e.is_nan() || max.is_nan() { f64::NAN } else { max.max(e) };
        count += 1;
    }
    if count == 0 {
        return Err(Error::EmptyMask);
    }
    Ok(ErrorNorms {
        l1: weight * sum1,
        l2: (weight * sum2).sqrt(),
        linf: max,
        mask_description: match mask {
            Some(_) => format!("{count} of {} nodes", u.len()),
            None => "all nodes".to_string(),
        },
    })
}

/// `log2(coarse / fine)`; `None` unless both errors are positive and finite.
pub fn convergence_order(coarse: f64, fine: f64) -> Option<f64> {
    let ok = |e: f64| e.is_finite() && e > 0.0;
    (ok(coarse) && ok(fine)).then(|| (coarse / fine).log2())
}
