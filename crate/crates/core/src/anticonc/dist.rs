use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;

/// Exact probabilities carry a common power-of-two or binomial denominator,
/// so `u128` ratios are enough for every table the crate builds in exact mode.
pub type ExactProb = Ratio<u128>;

/// Arithmetic mode of a [`DistTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Mode {
    Exact,
    Float,
}

/// A probability in either arithmetic mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Probability {
    Exact(ExactProb),
    Float(f64),
}

impl Probability {
    pub fn to_f64(self) -> f64 {
        match self {
            Probability::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            Probability::Float(x) => x,
        }
    }

    pub fn exact(self) -> Option<ExactProb> {
        match self {
            Probability::Exact(r) => Some(r),
            Probability::Float(_) => None,
        }
    }
}

impl PartialOrd for Probability {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Probability::Exact(a), Probability::Exact(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Weights {
    Exact { counts: Vec<u128>, total: u128 },
    Float(Vec<f64>),
}

/// Exact finite law of an integer-valued (or residue-valued) random variable.
///
/// Support values are sorted, distinct, and carry positive mass.
#[derive(Debug, Clone, PartialEq)]
pub struct DistTable {
    support: Vec<i64>,
    weights: Weights,
}

impl DistTable {
    /// Table from dense counts indexed by `value - offset`; zero cells dropped.
    pub(crate) fn from_dense_counts(offset: i64, counts: &[u128], total: u128) -> Self {
        let (support, counts) = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (offset + i as i64, c))
            .unzip();
        Self {
            support,
            weights: Weights::Exact { counts, total },
        }
    }

    pub(crate) fn from_dense_probs(offset: i64, probs: &[f64]) -> Self {
        let (support, probs) = probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, &p)| (offset + i as i64, p))
            .unzip();
        Self {
            support,
            weights: Weights::Float(probs),
        }
    }

    /// Multiply every support value by `scale` (> 0).
    pub(crate) fn scale_support(mut self, scale: i64) -> Self {
        self.support.iter_mut().for_each(|x| *x *= scale);
        self
    }

    /// Point mass at `value`.
    pub fn point_mass(value: i64) -> Self {
        Self {
            support: vec![value],
            weights: Weights::Exact {
                counts: vec![1],
                total: 1,
            },
        }
    }

    pub fn mode(&self) -> Mode {
        match self.weights {
            Weights::Exact { .. } => Mode::Exact,
            Weights::Float(_) => Mode::Float,
        }
    }

    pub fn support(&self) -> &[i64] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn probability(&self, idx: usize) -> Probability {
        match &self.weights {
            Weights::Exact { counts, total } => Probability::Exact(Ratio::new(counts[idx], *total)),
            Weights::Float(p) => Probability::Float(p[idx]),
        }
    }

    /// Probability of `value`, zero off the support.
    pub fn mass_at(&self, value: i64) -> Probability {
        match self.support.binary_search(&value) {
            Ok(i) => self.probability(i),
            Err(_) => match self.weights {
                Weights::Exact { total, .. } => Probability::Exact(Ratio::new(0, total)),
                Weights::Float(_) => Probability::Float(0.0),
            },
        }
    }

    pub fn probs_f64(&self) -> Vec<f64> {
        match &self.weights {
            Weights::Exact { counts, total } => {
                counts.iter().map(|&c| c as f64 / *total as f64).collect()
            }
            Weights::Float(p) => p.clone(),
        }
    }

    /// Raw numerators and common denominator in exact mode.
    pub fn exact_counts(&self) -> Option<(&[u128], u128)> {
        match &self.weights {
            Weights::Exact { counts, total } => Some((counts, *total)),
            Weights::Float(_) => None,
        }
    }

    /// Total mass; 1 exactly (exact mode) or to within rounding (float mode).
    pub fn total_mass(&self) -> Probability {
        match &self.weights {
            Weights::Exact { counts, total } => {
                Probability::Exact(Ratio::new(counts.iter().sum(), *total))
            }
            Weights::Float(p) => Probability::Float(p.iter().sum()),
        }
    }

    /// Largest atom.
    pub fn max_atom(&self) -> Probability {
        self.window_max(0)
    }

    /// Largest mass in a closed window `[x, x + width]` of integer width.
    pub fn window_max(&self, width: i64) -> Probability {
        let s = &self.support;
        match &self.weights {
            Weights::Exact { counts, total } => {
                let (mut best, mut acc, mut lo) = (0u128, 0u128, 0usize);
                for hi in 0..s.len() {
                    acc += counts[hi];
                    while s[hi] - s[lo] > width {
                        acc -= counts[lo];
                        lo += 1;
                    }
                    best = best.max(acc);
                }
                Probability::Exact(Ratio::new(best, *total))
            }
            Weights::Float(p) => {
                let (mut best, mut lo) = (0f64, 0usize);
                let mut acc = 0f64;
                for hi in 0..s.len() {
                    acc += p[hi];
                    while s[hi] - s[lo] > width {
                        acc -= p[lo];
                        lo += 1;
                    }
                    best = best.max(acc);
                }
                Probability::Float(best)
            }
        }
    }

    /// E[X^power] exactly (exact mode only).
    pub fn moment_exact(&self, power: u32) -> Option<BigRational> {
        let (counts, total) = self.exact_counts()?;
        let mut num = BigInt::zero();
        for (&x, &c) in self.support.iter().zip(counts) {
            num += BigInt::from(x).pow(power) * BigInt::from(c);
        }
        Some(BigRational::new(num, BigInt::from(total)))
    }

    /// E[f(X)] in floating point.
    pub fn expectation(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.support
            .iter()
            .zip(self.probs_f64())
            .map(|(&x, p)| p * f(x as f64))
            .sum()
    }

    /// `value,probability` CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,probability\n");
        for (i, &x) in self.support.iter().enumerate() {
            match self.probability(i) {
                Probability::Exact(r) => writeln!(out, "{x},{}/{}", r.numer(), r.denom()),
                Probability::Float(p) => writeln!(out, "{x},{p}"),
            }
            .expect("writing to a String cannot fail");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_scan_exact_and_float_agree() {
        let counts = [1u128, 0, 2, 0, 1];
        let t = DistTable::from_dense_counts(-2, &counts, 4);
        assert_eq!(t.support(), &[-2, 0, 2]);
        assert_eq!(t.max_atom(), Probability::Exact(Ratio::new(1, 2)));
        assert_eq!(t.window_max(2), Probability::Exact(Ratio::new(3, 4)));
        assert_eq!(t.window_max(4), Probability::Exact(Ratio::new(1, 1)));
        let f = DistTable::from_dense_probs(-2, &[0.25, 0.0, 0.5, 0.0, 0.25]);
        assert_eq!(f.window_max(2).to_f64(), 0.75);
        assert_eq!(f.mass_at(1).to_f64(), 0.0);
    }

    #[test]
    fn csv_and_moments() {
        let t = DistTable::from_dense_counts(0, &[1, 1], 2);
        assert_eq!(t.to_csv(), "value,probability\n0,1/2\n1,1/2\n");
        assert_eq!(
            t.moment_exact(2).unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
        assert_eq!(t.total_mass(), Probability::Exact(Ratio::new(1, 1)));
    }
}
