use serde::Serialize;

use super::DistTable;
use crate::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum LevyMethod {
    ExactFromTable,
    /// Exact over an enumerated, equally weighted list of outcomes.
    ExactEnumeration { outcomes: usize },
    /// Lower-bound estimator over sampled outcomes.
    MonteCarlo { trials: usize, se: f64 },
}

/// sup_r P(|X - r| <= delta).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevyEstimate {
    pub delta: f64,
    pub value: f64,
    pub method: LevyMethod,
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta >= 0.0) {
        return Err(LabError::InvalidParameter(format!("delta = {delta} must be >= 0")));
    }
    Ok(())
}

/// Exact Levy concentration of a lattice table: the largest mass of a closed
/// window of length 2*delta.
pub fn levy_concentration(table: &DistTable, delta: f64) -> Result<LevyEstimate> {
    check_delta(delta)?;
    let width = (2.0 * delta + 1e-12).floor().min(i64::MAX as f64) as i64;
    Ok(LevyEstimate {
        delta,
        value: table.window_max(width).to_f64(),
        method: LevyMethod::ExactFromTable,
    })
}

/// Largest number of points of a sorted slice inside a closed window of length `2 delta`.
fn window_count(sorted: &[f64], delta: f64) -> usize {
    let span = 2.0 * delta * (1.0 + 1e-12) + 1e-12;
    let (mut best, mut lo) = (0, 0);
    for hi in 0..sorted.len() {
        while sorted[hi] - sorted[lo] > span {
            lo += 1;
        }
        best = best.max(hi - lo + 1);
    }
    best
}

/// Levy concentration of a uniform distribution on `outcomes` (with
/// multiplicity), e.g. all 2^n signed sums of a real vector.
pub fn levy_from_outcomes(mut outcomes: Vec<f64>, delta: f64) -> Result<LevyEstimate> {
    check_delta(delta)?;
    if outcomes.is_empty() {
        return Err(LabError::InvalidParameter("no outcomes".into()));
    }
    outcomes.sort_by(f64::total_cmp);
    let n = outcomes.len();
    Ok(LevyEstimate {
        delta,
        value: window_count(&outcomes, delta) as f64 / n as f64,
        method: LevyMethod::ExactEnumeration { outcomes: n },
    })
}

/// Monte Carlo estimate: windows anchored at every sample value.
pub fn levy_monte_carlo(mut samples: Vec<f64>, delta: f64) -> Result<LevyEstimate> {
    check_delta(delta)?;
    let trials = samples.len();
    if trials == 0 {
        return Err(LabError::InvalidParameter("no samples".into()));
    }
    samples.sort_by(f64::total_cmp);
    let p = window_count(&samples, delta) as f64 / trials as f64;
    Ok(LevyEstimate {
        delta,
        value: p,
        method: LevyMethod::MonteCarlo {
            trials,
            se: (p * (1.0 - p) / trials as f64).sqrt(),
        },
    })
}
