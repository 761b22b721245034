use num_rational::Ratio;

use super::sums::RANGE_CAP;
use super::{atom_probability, ExactProb};
use crate::models::{difference_vector, Base};
use crate::{LabError, Result};

/// Both sides of the two-step comparison for one row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoStepAtom {
    /// Largest atom of `(Q_sigma v)_i` over the 2^{n/2} bit choices.
    pub lhs: ExactProb,
    /// rho of the row's difference vector.
    pub rhs: ExactProb,
}

impl TwoStepAtom {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

const MAX_PAIRS: usize = 126;

/// Row `i` of `Q_sigma v` is `sum_k min(v_a, v_b) + sum_k c_k |v_a - v_b|`
/// with independent fair bits `c_k`; its law is built by a counting DP on
/// the offsets and compared against rho of the difference vector.
pub fn two_step_row_atom(v: &[i64], base: &Base, i: usize) -> Result<TwoStepAtom> {
    let diff = difference_vector(v, base, i)?;
    let half = diff.len();
    if half > MAX_PAIRS {
        return Err(LabError::BudgetExceeded {
            what: "two-step row enumeration",
            needed: half as u128,
            cap: MAX_PAIRS as u128,
        });
    }
    let gaps: Vec<usize> = diff.iter().map(|d| d.unsigned_abs() as usize).collect();
    let width = gaps.iter().sum::<usize>() + 1;
    if width as u128 > RANGE_CAP {
        return Err(LabError::BudgetExceeded {
            what: "DP value range",
            needed: width as u128,
            cap: RANGE_CAP,
        });
    }
    let mut dp = vec![0u128; width];
    dp[0] = 1;
    let mut reach = 0;
    for &g in &gaps {
        for s in (0..=reach).rev() {
            let c = dp[s];
            dp[s + g] += c;
        }
        reach += g;
    }
    let best = dp.iter().copied().max().unwrap_or(0);
    let rhs = atom_probability(&diff)?
        .exact()
        .expect("exact mode below the term cap");
    Ok(TwoStepAtom {
        lhs: Ratio::new(best, 1u128 << half),
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_vector_is_a_point_mass() {
        let base = Base::identity(6).unwrap();
        let r = two_step_row_atom(&[4; 6], &base, 2).unwrap();
        assert_eq!(r.lhs, Ratio::new(1, 1));
        assert_eq!(r.rhs, Ratio::new(1, 1));
    }

    #[test]
    fn hand_examples() {
        let base = Base::identity(4).unwrap();
        let r = two_step_row_atom(&[5, 1, 7, 2], &base, 0).unwrap();
        assert_eq!(r.rhs, Ratio::new(1, 4));
        // row values: {5,1} + {7,2} -> 12, 7, 8, 3, all distinct
        assert_eq!(r.lhs, Ratio::new(1, 4));
        assert!(r.holds());
        let base = Base::identity(2).unwrap();
        let r = two_step_row_atom(&[1, 0], &base, 1).unwrap();
        assert_eq!((r.lhs, r.rhs), (Ratio::new(1, 2), Ratio::new(1, 2)));
    }
}
