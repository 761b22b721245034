//! Least common denominator search.
//!
//! The objective `g(theta) = dist(theta a, Z^n) - min(gamma |theta a|, alpha)`
//! is continuous and `(1 + gamma)`-Lipschitz for a unit vector `a`, and the
//! LCD is the infimum of `{theta > 0 : g(theta) < 0}`. Nothing below
//! `1 / (2 max |a_i|)` is admissible, and from there the scan evaluates
//! `g` on a uniform grid; a cell whose endpoint values add up to at least
//! `(1 + gamma) h` cannot contain an admissible point, every other cell is
//! searched by golden-section minimization, and each sign change is
//! bisected down to the admissible side. The admissible set is open, so the
//! returned `theta_star` is a verified admissible point within bisection
//! precision of a crossing, not the infimum itself.
//!
//! `ExceedsThetaMax` only says that no admissible point was located; it is
//! a certificate of `LCD > theta_max` only when `uncertified_cells == 0`.

use serde::Serialize;

use crate::models::ExponentProfile;
use crate::{LabError, Result};

/// Upper bound on `n * grid points` for one scan.
pub const LCD_WORK_CAP: u128 = 400_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LcdParams {
    pub gamma: f64,
    pub alpha: f64,
    pub theta_max: f64,
    /// Grid step; `None` picks `1e-3 / max |a_i|`.
    pub grid_resolution: Option<f64>,
    /// Bisection / golden-section iterations per bracket.
    pub refine_iters: usize,
}

impl LcdParams {
    pub fn new(gamma: f64, alpha: f64, theta_max: f64) -> Self {
        Self {
            gamma,
            alpha,
            theta_max,
            grid_resolution: None,
            refine_iters: 60,
        }
    }

    pub fn with_resolution(mut self, h: f64) -> Self {
        self.grid_resolution = Some(h);
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(LabError::InvalidParameter(format!("gamma = {} not in (0,1)", self.gamma)));
        }
        if !(self.alpha > 0.0) {
            return Err(LabError::InvalidParameter(format!("alpha = {} must be positive", self.alpha)));
        }
        if !(self.theta_max > 0.0 && self.theta_max.is_finite()) {
            return Err(LabError::InvalidParameter(format!(
                "theta_max = {} must be positive and finite",
                self.theta_max
            )));
        }
        if let Some(h) = self.grid_resolution {
            if !(h > 0.0) {
                return Err(LabError::InvalidParameter("grid resolution must be positive".into()));
            }
        }
        if self.refine_iters == 0 {
            return Err(LabError::InvalidParameter("refine_iters must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum LcdStatus {
    Found {
        theta_star: f64,
        /// Nearest lattice point to `theta_star * a`.
        witness: Vec<i64>,
        dist: f64,
    },
    ExceedsThetaMax,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LcdResult {
    pub status: LcdStatus,
    pub params: LcdParams,
    pub resolution: f64,
    pub grid_points: u64,
    /// Cells below the located point (or below `theta_max`) that could not
    /// be ruled out by the Lipschitz bound and held no admissible point
    /// the local search could find.
    pub uncertified_cells: u64,
}

impl LcdResult {
    pub fn theta_star(&self) -> Option<f64> {
        match self.status {
            LcdStatus::Found { theta_star, .. } => Some(theta_star),
            LcdStatus::ExceedsThetaMax => None,
        }
    }
}

/// Euclidean distance from `theta a` to the integer lattice.
pub fn lattice_distance(a: &[f64], theta: f64) -> f64 {
    a.iter()
        .map(|&x| {
            let y = theta * x;
            let d = y - y.round();
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// The defining strict inequality, evaluated directly.
pub fn is_admissible(a: &[f64], theta: f64, gamma: f64, alpha: f64) -> bool {
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    theta > 0.0 && lattice_distance(a, theta) < (gamma * theta * norm).min(alpha)
}

fn require_unit(a: &[f64]) -> Result<()> {
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if a.is_empty() || (norm - 1.0).abs() > 1e-10 {
        return Err(LabError::NonUnitVector(norm));
    }
    Ok(())
}

struct Objective<'a> {
    a: &'a [f64],
    gamma: f64,
    alpha: f64,
}

impl Objective<'_> {
    fn eval(&self, theta: f64) -> f64 {
        lattice_distance(self.a, theta) - (self.gamma * theta).min(self.alpha)
    }

    /// Bisect a bracket with `g(lo) >= 0 > g(hi)`; returns the admissible end.
    fn bisect(&self, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
        for _ in 0..iters {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.eval(mid) < 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// Golden-section search for the minimum of `g` on `[lo, hi]`.
    fn golden_min(&self, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
        const INV_PHI: f64 = 0.618_033_988_749_894_9;
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let (mut f1, mut f2) = (self.eval(x1), self.eval(x2));
        for _ in 0..iters {
            if f1 < 0.0 || f2 < 0.0 {
                break;
            }
            if f1 <= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - INV_PHI * (hi - lo);
                f1 = self.eval(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + INV_PHI * (hi - lo);
                f2 = self.eval(x2);
            }
        }
        if f1 <= f2 {
            (x1, f1)
        } else {
            (x2, f2)
        }
    }
}

/// Locate the least admissible theta in `(0, theta_max]`.
pub fn lcd_estimate(a: &[f64], params: &LcdParams) -> Result<LcdResult> {
    params.validate()?;
    require_unit(a)?;
    let max_abs = a.iter().fold(0f64, |m, x| m.max(x.abs()));
    let h = params.grid_resolution.unwrap_or(1e-3 / max_abs);
    // Below 1/(2 max|a_i|) every coordinate rounds to 0, so dist = theta > gamma theta.
    let start = (0.5 / max_abs).min(params.theta_max);
    let points = ((params.theta_max - start) / h).ceil() as u128;
    if points * a.len() as u128 > LCD_WORK_CAP {
        return Err(LabError::BudgetExceeded {
            what: "LCD grid scan",
            needed: points * a.len() as u128,
            cap: LCD_WORK_CAP,
        });
    }
    let g = Objective {
        a,
        gamma: params.gamma,
        alpha: params.alpha,
    };
    let lipschitz = 1.0 + params.gamma;
    let iters = params.refine_iters;
    let mut uncertified = 0u64;
    let mut prev_theta = start;
    let mut prev_g = g.eval(start);
    let mut found = None;
    for j in 1..=points as u64 {
        let theta = (start + j as f64 * h).min(params.theta_max);
        let gj = g.eval(theta);
        if gj < 0.0 {
            let left = if prev_g >= 0.0 { prev_theta } else { theta };
            found = Some(g.bisect(left, theta, iters));
            break;
        }
        if prev_g + gj < lipschitz * (theta - prev_theta) {
            let (tm, gm) = g.golden_min(prev_theta, theta, iters);
            if gm < 0.0 {
                found = Some(g.bisect(prev_theta, tm, iters));
                break;
            }
            uncertified += 1;
        }
        prev_theta = theta;
        prev_g = gj;
    }
    let status = match found {
        Some(theta_star) => {
            debug_assert!(g.eval(theta_star) < 0.0);
            LcdStatus::Found {
                theta_star,
                witness: a.iter().map(|&x| (theta_star * x).round() as i64).collect(),
                dist: lattice_distance(a, theta_star),
            }
        }
        None => LcdStatus::ExceedsThetaMax,
    };
    Ok(LcdResult {
        status,
        params: *params,
        resolution: h,
        grid_points: points as u64,
        uncertified_cells: uncertified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GammaClass {
    /// LCD at least the threshold (certified scan).
    Gamma1,
    /// An admissible theta below the threshold was found.
    Gamma2,
    Undetermined,
}

/// Classify against an explicit LCD threshold.
pub fn classify_against(a: &[f64], threshold: f64, params: &LcdParams) -> Result<GammaClass> {
    let scan = LcdParams {
        theta_max: threshold,
        ..*params
    };
    let res = match lcd_estimate(a, &scan) {
        Ok(r) => r,
        Err(LabError::BudgetExceeded { .. }) => return Ok(GammaClass::Undetermined),
        Err(e) => return Err(e),
    };
    Ok(match res.status {
        LcdStatus::Found { theta_star, .. } if theta_star < threshold => GammaClass::Gamma2,
        LcdStatus::Found { .. } => GammaClass::Undetermined,
        LcdStatus::ExceedsThetaMax if res.uncertified_cells == 0 => GammaClass::Gamma1,
        LcdStatus::ExceedsThetaMax => GammaClass::Undetermined,
    })
}

/// Gamma^1 / Gamma^2 split at `n^{lcd_threshold_exp} / eta`.
pub fn classify_gamma(
    a: &[f64],
    eta: f64,
    profile: &ExponentProfile,
    params: &LcdParams,
) -> Result<GammaClass> {
    if !(eta > 0.0) {
        return Err(LabError::InvalidParameter(format!("eta = {eta} must be positive")));
    }
    classify_against(a, profile.lcd_threshold(a.len(), eta), params)
}
