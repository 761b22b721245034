//! `T_v` and witnessing pairs.

use std::cmp::Ordering;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::models::{difference_vector, Base, ExponentProfile};
use crate::primes::require_odd_prime;
use crate::structure::rkstar::r_k_star;
use crate::{LabError, Result};

/// Rows whose difference vector has at least `min_support` nonzero entries.
pub fn compute_t_v(v: &[i64], base: &Base, min_support: usize) -> Result<Vec<usize>> {
    let mut t = Vec::new();
    for i in 0..base.n() {
        let d = difference_vector(v, base, i)?;
        if d.iter().filter(|&&x| x != 0).count() >= min_support {
            t.push(i);
        }
    }
    Ok(t)
}

/// `compute_t_v` at the profile's support threshold.
pub fn compute_t_v_profile(v: &[i64], base: &Base, profile: &ExponentProfile) -> Result<Vec<usize>> {
    compute_t_v(v, base, profile.t_v_min_support(base.n()))
}

/// Min over qualifying subvectors of `R_k^*(b) / |b|^{2k}`; `None` when no
/// subvector qualifies (the minimum over an empty set, i.e. +infinity).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RowScore(pub Option<(u128, u128)>);

impl RowScore {
    fn ratio(&self) -> Option<Ratio<u128>> {
        self.0.map(|(n, d)| Ratio::new(n, d))
    }

    pub fn to_f64(&self) -> f64 {
        match self.0 {
            Some((n, d)) => n as f64 / d as f64,
            None => f64::INFINITY,
        }
    }
}

impl PartialOrd for RowScore {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RowScore {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.ratio(), other.ratio()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => a.cmp(&b),
        }
    }
}

/// Score of one difference vector, by exhaustive subvector enumeration.
pub fn row_score(diff: &[i64], k: usize, s2: usize, p: u64, max_len: usize) -> Result<RowScore> {
    require_odd_prime(p)?;
    let n = diff.len();
    if n > max_len || n >= 64 {
        return Err(LabError::BudgetExceeded {
            what: "subvector enumeration",
            needed: 1u128 << n.min(127),
            cap: 1u128 << max_len.min(63),
        });
    }
    let mut best: Option<Ratio<u128>> = None;
    let mut b = Vec::with_capacity(n);
    for mask in 1u64..(1u64 << n) {
        b.clear();
        b.extend((0..n).filter(|i| mask >> i & 1 == 1).map(|i| diff[i]));
        if b.iter().filter(|&&x| x.rem_euclid(p as i64) != 0).count() < s2 {
            continue;
        }
        let r = r_k_star(&b, k, p)?;
        let den = (b.len() as u128).pow(2 * k as u32);
        let q = Ratio::new(r, den);
        if best.is_none_or(|cur| q < cur) {
            best = Some(q);
        }
    }
    Ok(RowScore(best.map(|q| (*q.numer(), *q.denom()))))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    pub t_v: Vec<usize>,
    /// Aligned with `t_v`.
    pub scores: Vec<RowScore>,
    pub witnessing_pair: Option<(usize, usize)>,
}

/// `score(i1) >= score(i2) >= score(i)` for every other `i` in `T_v`.
pub fn is_witnessing_pair(t_v: &[usize], scores: &[RowScore], i1: usize, i2: usize) -> bool {
    let pos = |i| t_v.iter().position(|&x| x == i);
    let (Some(a), Some(b)) = (pos(i1), pos(i2)) else {
        return false;
    };
    a != b
        && scores[a] >= scores[b]
        && scores
            .iter()
            .enumerate()
            .all(|(j, s)| j == a || j == b || scores[b] >= *s)
}

/// Lexicographically first witnessing pair among rows of `t_v`.
pub fn witnessing_pair(
    v: &[i64],
    base: &Base,
    t_v: &[usize],
    k: usize,
    s2: usize,
    p: u64,
    max_len: usize,
) -> Result<StructureReport> {
    let scores = t_v
        .par_iter()
        .map(|&i| row_score(&difference_vector(v, base, i)?, k, s2, p, max_len))
        .collect::<Result<Vec<_>>>()?;
    let mut pair = None;
    'outer: for &i1 in t_v {
        for &i2 in t_v {
            if is_witnessing_pair(t_v, &scores, i1, i2) {
                pair = Some((i1, i2));
                break 'outer;
            }
        }
    }
    Ok(StructureReport {
        t_v: t_v.to_vec(),
        scores,
        witnessing_pair: pair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_v_examples() {
        let base = Base::identity(4).unwrap();
        assert!(compute_t_v(&[3, 3, 3, 3], &base, 1).unwrap().is_empty());
        assert_eq!(compute_t_v(&[5, 1, 7, 2], &base, 2).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(compute_t_v(&[5, 1, 7, 2], &base, 1).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn identical_rows_pick_first_two() {
        let base = Base::identity(4).unwrap();
        let t = compute_t_v(&[5, 1, 7, 2], &base, 2).unwrap();
        let rep = witnessing_pair(&[5, 1, 7, 2], &base, &t, 1, 2, 5, 20).unwrap();
        assert_eq!(rep.witnessing_pair, Some((0, 1)));
    }

    #[test]
    fn single_row_absent() {
        let base = Base::identity(4).unwrap();
        let rep = witnessing_pair(&[5, 1, 7, 2], &base, &[2], 1, 2, 5, 20).unwrap();
        assert_eq!(rep.witnessing_pair, None);
    }

    #[test]
    fn score_ordering() {
        assert!(RowScore(None) > RowScore(Some((100, 1))));
        assert!(RowScore(Some((1, 4))) < RowScore(Some((1, 2))));
    }
}
