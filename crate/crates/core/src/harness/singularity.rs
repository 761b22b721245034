use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::harness::config::ModelKind;
use crate::models::{IntMatrix, ModelTag};
use crate::spectral::exact_singularity;
use crate::{LabError, Result};

/// Largest number of matrices enumerated (covers Rademacher n = 5).
pub const ENUMERATION_CAP: u128 = 1 << 25;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactFrequency {
    pub n: usize,
    pub singular: u128,
    pub total: u128,
}

impl ExactFrequency {
    pub fn ratio(&self) -> Ratio<u128> {
        Ratio::new(self.singular, self.total)
    }
}

fn slice_rows(n: usize) -> Vec<Vec<i64>> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == n / 2)
        .map(|m| (0..n).map(|j| (m >> j & 1) as i64).collect())
        .collect()
}

/// Exact fraction of singular matrices, by exhaustive enumeration with
/// fraction-free elimination.
pub fn exact_singularity_frequency(n: usize, model: ModelKind) -> Result<ExactFrequency> {
    if n == 0 {
        return Err(LabError::InvalidParameter("n must be positive".into()));
    }
    let (rows, tag): (Vec<Vec<i64>>, ModelTag) = match model {
        ModelKind::IidRademacher => (
            (0u64..1 << n)
                .map(|m| (0..n).map(|j| if m >> j & 1 == 1 { 1 } else { -1 }).collect())
                .collect(),
            ModelTag::IidRademacher,
        ),
        ModelKind::RowRegular => {
            if n % 2 == 1 {
                return Err(LabError::OddDimension(n));
            }
            (slice_rows(n), ModelTag::RowRegular)
        }
        ModelKind::GaussianBaseline => {
            return Err(LabError::InvalidParameter("exact enumeration needs a discrete model".into()))
        }
    };
    let r = rows.len() as u128;
    let total = r.checked_pow(n as u32).filter(|&t| t <= ENUMERATION_CAP).ok_or(LabError::BudgetExceeded {
        what: "exact singularity enumeration",
        needed: r.saturating_pow(n as u32),
        cap: ENUMERATION_CAP,
    })?;
    let singular = (0..total as u64)
        .into_par_iter()
        .map(|mut code| {
            let mut entries = Vec::with_capacity(n * n);
            for _ in 0..n {
                entries.extend_from_slice(&rows[(code % r as u64) as usize]);
                code /= r as u64;
            }
            u128::from(exact_singularity(&IntMatrix::from_parts_unchecked(n, entries, tag)))
        })
        .sum();
    Ok(ExactFrequency { n, singular, total })
}
