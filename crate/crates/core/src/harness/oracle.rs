//! Brute-force enumerators backing the invariant suites. They share no
//! code with the dynamic programs they check.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::anticonc::DistTable;

pub type Law = BTreeMap<i64, Ratio<u128>>;

fn normalize(counts: BTreeMap<i64, u128>, total: u128) -> Law {
    counts.into_iter().map(|(k, c)| (k, Ratio::new(c, total))).collect()
}

/// Law of `sum eps_i w_i` over all `2^n` sign patterns.
pub fn signed_sum_law(w: &[i64]) -> Law {
    let n = w.len();
    let mut counts = BTreeMap::new();
    for mask in 0u64..1 << n {
        let s: i64 = (0..n).map(|i| if mask >> i & 1 == 1 { w[i] } else { -w[i] }).sum();
        *counts.entry(s).or_insert(0u128) += 1;
    }
    normalize(counts, 1u128 << n)
}

/// Law of the signed sum reduced into `[0, p)`.
pub fn signed_sum_law_mod_p(w: &[i64], p: u64) -> Law {
    let mut counts = BTreeMap::new();
    for (v, q) in signed_sum_law(w) {
        *counts.entry(v.rem_euclid(p as i64)).or_insert(Ratio::new(0, *q.denom())) += q;
    }
    counts
}

/// Law of `sum v_i (1 + x_i)` over all balanced `±1` vectors.
pub fn slice_sum_law(v: &[i64]) -> Law {
    let n = v.len();
    let mut counts = BTreeMap::new();
    let mut total = 0u128;
    for mask in 0u64..1 << n {
        if mask.count_ones() as usize * 2 != n {
            continue;
        }
        let s: i64 = (0..n).map(|i| if mask >> i & 1 == 1 { 2 * v[i] } else { 0 }).sum();
        *counts.entry(s).or_insert(0u128) += 1;
        total += 1;
    }
    normalize(counts, total)
}

/// Exact table as a law, or `None` in float mode.
pub fn table_law(t: &DistTable) -> Option<Law> {
    let (counts, total) = t.exact_counts()?;
    Some(
        t.support()
            .iter()
            .zip(counts)
            .map(|(&v, &c)| (v, Ratio::new(c, total)))
            .collect(),
    )
}

/// All slice outcomes `sum_{i in S} a_i` over `n/2`-subsets `S`.
pub fn slice_outcomes(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize * 2 == n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| a[i]).sum())
        .collect()
}

/// All `2^n` signed sums of a real vector.
pub fn signed_outcomes(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    (0u64..1 << n)
        .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { a[i] } else { -a[i] }).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_laws() {
        let l = signed_sum_law(&[1, 1]);
        assert_eq!(l[&0], Ratio::new(1, 2));
        assert_eq!(slice_sum_law(&[1, 2]).len(), 2);
        assert_eq!(signed_sum_law_mod_p(&[1, 1], 3)[&2], Ratio::new(1, 4));
    }
}
