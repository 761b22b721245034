use crate::{LabError, Result};

/// `ln((100 C)^n rho^n)`; `-inf` when `C = 0` or `rho = 0`.
pub fn union_bound_report(c: f64, n: usize, rho_cap: f64) -> Result<f64> {
    if !(c >= 0.0 && rho_cap >= 0.0 && c.is_finite() && rho_cap.is_finite()) || n == 0 {
        return Err(LabError::InvalidParameter(format!(
            "union bound needs C, rho >= 0 and n >= 1; got C={c}, rho={rho_cap}, n={n}"
        )));
    }
    Ok(n as f64 * ((100.0 * c).ln() + rho_cap.ln()))
}
