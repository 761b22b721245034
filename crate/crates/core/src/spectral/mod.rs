//! Singular values, operator norms (full and restricted to the zero-sum
//! hyperplane), and exact singularity.

mod exact;

pub use exact::{exact_determinant, exact_singularity};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::models::IntMatrix;
use crate::{LabError, Result};

/// Default relative tolerance of the floating point routines.
pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_SVD_ITERS: usize = 10_000;

/// A computed extreme singular value together with the residual of its
/// singular triple, `max(|Mv - s u|, |M^T u - s v|) / max(s_max, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularValue {
    pub value: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralSummary {
    pub s_min: f64,
    pub s_max: f64,
    pub restricted_norm_h: Option<f64>,
    pub exact_singular: Option<bool>,
}

fn require_square(m: &DMatrix<f64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(LabError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(())
}

/// All singular values in decreasing order, without singular vectors.
pub fn singular_values(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    if m.is_empty() {
        return Ok(Vec::new());
    }
    let svd = m
        .clone()
        .try_svd(false, false, f64::EPSILON, MAX_SVD_ITERS)
        .ok_or(LabError::NonConvergence {
            residual: f64::INFINITY,
        })?;
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

enum Extreme {
    Smallest,
    Largest,
}

fn extreme_singular_value(m: &DMatrix<f64>, which: Extreme, tol: f64) -> Result<SingularValue> {
    require_square(m)?;
    if m.is_empty() {
        return Ok(SingularValue {
            value: 0.0,
            residual: 0.0,
        });
    }
    let svd = m
        .clone()
        .try_svd(true, true, f64::EPSILON, MAX_SVD_ITERS)
        .ok_or(LabError::NonConvergence {
            residual: f64::INFINITY,
        })?;
    let s = &svd.singular_values;
    let (mut k, mut kmax) = (0, 0);
    for i in 0..s.len() {
        let better = match which {
            Extreme::Smallest => s[i] < s[k],
            Extreme::Largest => s[i] > s[k],
        };
        if better {
            k = i;
        }
        if s[i] > s[kmax] {
            kmax = i;
        }
    }
    let u = svd.u.as_ref().expect("requested U").column(k).into_owned();
    let v = svd.v_t.as_ref().expect("requested V^T").row(k).transpose();
    let sigma = s[k];
    let r1 = (m * &v - &u * sigma).norm();
    let r2 = (m.transpose() * &u - &v * sigma).norm();
    let residual = r1.max(r2) / s[kmax].max(1.0);
    if !(residual <= tol) {
        return Err(LabError::NonConvergence { residual });
    }
    Ok(SingularValue {
        value: sigma,
        residual,
    })
}

/// s_n(M) = inf over unit x of |Mx|.
pub fn smallest_singular_value(m: &DMatrix<f64>, tol: f64) -> Result<SingularValue> {
    extreme_singular_value(m, Extreme::Smallest, tol)
}

/// s_1(M), the l2 operator norm.
pub fn operator_norm(m: &DMatrix<f64>, tol: f64) -> Result<SingularValue> {
    extreme_singular_value(m, Extreme::Largest, tol)
}

/// Orthonormal basis of H = {v : sum v = 0} as the columns of an
/// n x (n-1) matrix (normalized Helmert contrasts).
pub fn hyperplane_basis(n: usize) -> DMatrix<f64> {
    let mut u = DMatrix::zeros(n, n.saturating_sub(1));
    for j in 1..n {
        let scale = 1.0 / ((j * (j + 1)) as f64).sqrt();
        for i in 0..j {
            u[(i, j - 1)] = scale;
        }
        u[(j, j - 1)] = -(j as f64) * scale;
    }
    u
}

/// sup over unit v in H of |Mv|; zero when n = 1 since H = {0}.
pub fn restricted_norm_h(m: &DMatrix<f64>) -> Result<f64> {
    require_square(m)?;
    let n = m.nrows();
    if n <= 1 {
        return Ok(0.0);
    }
    let mu = m * hyperplane_basis(n);
    Ok(singular_values(&mu)?.first().copied().unwrap_or(0.0))
}

pub fn spectral_summary(m: &IntMatrix, tol: f64, with_restricted: bool) -> Result<SpectralSummary> {
    let real = m.to_real();
    let s_min = smallest_singular_value(&real, tol)?.value;
    let s_max = operator_norm(&real, tol)?.value;
    let restricted = if with_restricted {
        Some(restricted_norm_h(&real)?)
    } else {
        None
    };
    Ok(SpectralSummary {
        s_min,
        s_max,
        restricted_norm_h: restricted,
        exact_singular: Some(exact_singularity(m)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[f64]]) -> DMatrix<f64> {
        let n = rows.len();
        DMatrix::from_row_iterator(n, rows[0].len(), rows.iter().flat_map(|r| r.iter().copied()))
    }

    #[test]
    fn smallest_singular_values() {
        let id = DMatrix::<f64>::identity(5, 5);
        assert!((smallest_singular_value(&id, DEFAULT_TOL).unwrap().value - 1.0).abs() < 1e-12);
        let ones = mat(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(smallest_singular_value(&ones, DEFAULT_TOL).unwrap().value.abs() < 1e-12);
        let h = mat(&[&[1.0, 1.0], &[1.0, -1.0]]);
        let s = smallest_singular_value(&h, DEFAULT_TOL).unwrap();
        assert!((s.value - 2f64.sqrt()).abs() < 1e-12);
        assert!(s.residual < 1e-14);
    }

    #[test]
    fn operator_norms() {
        let id = DMatrix::<f64>::identity(3, 3);
        assert!((operator_norm(&id, DEFAULT_TOL).unwrap().value - 1.0).abs() < 1e-12);
        let ones = DMatrix::from_element(6, 6, 1.0);
        assert!((operator_norm(&ones, DEFAULT_TOL).unwrap().value - 6.0).abs() < 1e-12);
        let d = mat(&[&[1.0, 0.0], &[0.0, 2.0]]);
        assert!((operator_norm(&d, DEFAULT_TOL).unwrap().value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn restricted_norms() {
        let ones = DMatrix::from_element(5, 5, 1.0);
        assert!(restricted_norm_h(&ones).unwrap() < 1e-12);
        let id = DMatrix::<f64>::identity(4, 4);
        assert!((restricted_norm_h(&id).unwrap() - 1.0).abs() < 1e-12);
        let d = mat(&[&[2.0, 0.0], &[0.0, 0.0]]);
        assert!((restricted_norm_h(&d).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(restricted_norm_h(&DMatrix::from_element(1, 1, 3.0)).unwrap(), 0.0);
    }

    #[test]
    fn hyperplane_basis_is_orthonormal_and_zero_sum() {
        let u = hyperplane_basis(7);
        let g = u.transpose() * &u;
        assert!((g - DMatrix::<f64>::identity(6, 6)).norm() < 1e-12);
        for j in 0..6 {
            assert!(u.column(j).sum().abs() < 1e-12);
        }
    }

    #[test]
    fn non_square_rejected() {
        let m = DMatrix::<f64>::zeros(2, 3);
        assert!(matches!(
            smallest_singular_value(&m, DEFAULT_TOL),
            Err(LabError::NotSquare { .. })
        ));
    }
}
