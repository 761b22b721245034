//! Additive-energy style count `R_k^*` over `F_p`.
//!
//! `R_k^*(a)` counts pairs (ordered index tuple `(i_1..i_2k)`, sign pattern)
//! with `sum_j ±a_{i_j} ≡ 0 (mod p)` and more than `1.01 k` distinct indices.

use std::collections::HashMap;

use crate::anticonc::binomial_u128;
use crate::primes::require_odd_prime;
use crate::{LabError, Result};

/// Cap on `|a|^{2k} 4^k` for the brute-force engine.
pub const BRUTE_FORCE_CAP: u128 = 50_000_000;
/// Largest `k` handled by the inclusion–exclusion engine (Bell(2k) partitions).
pub const IE_MAX_K: usize = 5;

/// `100 d > 101 k`, i.e. `d > 1.01 k` in exact arithmetic.
pub fn enough_distinct(d: usize, k: usize) -> bool {
    100 * d > 101 * k
}

/// `2^{2k} |a|^{2k}`; saturates at `u128::MAX`.
pub fn r_k_star_trivial_bound(len: usize, k: usize) -> u128 {
    (4u128.saturating_mul(len as u128 * len as u128)).checked_pow(k as u32).unwrap_or(u128::MAX)
}

fn residues(a: &[i64], p: u64) -> Vec<usize> {
    a.iter().map(|&x| x.rem_euclid(p as i64) as usize).collect()
}

fn check_args(k: usize, p: u64) -> Result<()> {
    require_odd_prime(p)?;
    if k == 0 {
        return Err(LabError::InvalidParameter("k must be positive".into()));
    }
    Ok(())
}

/// Direct enumeration of every index tuple and sign pattern.
pub fn r_k_star_brute(a: &[i64], k: usize, p: u64) -> Result<u128> {
    check_args(k, p)?;
    let n = a.len();
    let m = 2 * k;
    let needed = r_k_star_trivial_bound(n, k);
    if needed > BRUTE_FORCE_CAP {
        return Err(LabError::BudgetExceeded {
            what: "R_k^* brute force",
            needed,
            cap: BRUTE_FORCE_CAP,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let r = residues(a, p);
    let p = p as usize;
    let mut idx = vec![0usize; m];
    let mut seen = vec![0u32; n];
    let mut count = 0u128;
    loop {
        let mut distinct = 0;
        for &i in &idx {
            if seen[i] == 0 {
                distinct += 1;
            }
            seen[i] += 1;
        }
        for &i in &idx {
            seen[i] = 0;
        }
        if enough_distinct(distinct, k) {
            for signs in 0u32..(1 << m) {
                let mut s = 0usize;
                for (j, &i) in idx.iter().enumerate() {
                    s += if signs >> j & 1 == 1 { p - r[i] } else { r[i] };
                }
                if s.is_multiple_of(p) {
                    count += 1;
                }
            }
        }
        // odometer
        let mut j = 0;
        while j < m {
            idx[j] += 1;
            if idx[j] < n {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == m {
            break;
        }
    }
    Ok(count)
}

/// All set partitions of `{0..m}` as restricted growth strings.
fn set_partitions(m: usize, mut visit: impl FnMut(&[usize], usize)) {
    fn rec(pos: usize, blocks: usize, rgs: &mut Vec<usize>, m: usize, visit: &mut dyn FnMut(&[usize], usize)) {
        if pos == m {
            visit(rgs, blocks);
            return;
        }
        for b in 0..=blocks {
            rgs.push(b);
            rec(pos + 1, blocks.max(b + 1), rgs, m, visit);
            rgs.pop();
        }
    }
    let mut rgs = Vec::with_capacity(m);
    rec(0, 0, &mut rgs, m, &mut visit);
}

fn block_sizes(rgs: &[usize], blocks: usize) -> Vec<usize> {
    let mut sizes = vec![0; blocks];
    for &b in rgs {
        sizes[b] += 1;
    }
    sizes.sort_unstable();
    sizes
}

struct IeEngine {
    p: usize,
    /// `f[s][r]`: number of (index, sign pattern on s slots) with sum ≡ r.
    f: Vec<Vec<i128>>,
    at_least: HashMap<Vec<usize>, i128>,
}

impl IeEngine {
    fn new(r: &[usize], k: usize, p: usize) -> Self {
        let mut f = vec![vec![0i128; p]; 2 * k + 1];
        for (s, fs) in f.iter_mut().enumerate().skip(1) {
            for &ri in r {
                for j in 0..=s {
                    let coeff = (2 * j as i64 - s as i64).rem_euclid(p as i64) as usize;
                    fs[coeff * ri % p] += binomial_u128(s, j) as i128;
                }
            }
        }
        Self {
            p,
            f,
            at_least: HashMap::new(),
        }
    }

    /// Solutions where positions in each block share an index (indices of
    /// different blocks unconstrained).
    fn count_at_least(&mut self, sizes: &[usize]) -> i128 {
        if let Some(&v) = self.at_least.get(sizes) {
            return v;
        }
        let p = self.p;
        let mut acc = self.f[sizes[0]].clone();
        for &s in &sizes[1..] {
            let fs = &self.f[s];
            let mut next = vec![0i128; p];
            for (x, &ax) in acc.iter().enumerate() {
                if ax == 0 {
                    continue;
                }
                for (y, &fy) in fs.iter().enumerate() {
                    next[(x + y) % p] += ax * fy;
                }
            }
            acc = next;
        }
        let v = acc[0];
        self.at_least.insert(sizes.to_vec(), v);
        v
    }

    /// Solutions whose index-equality pattern is exactly a partition with
    /// the given block sizes, by Möbius inversion over coarsenings.
    fn count_exact(&mut self, sizes: &[usize]) -> i128 {
        let mut total = 0i128;
        let mut coarsenings = Vec::new();
        set_partitions(sizes.len(), |rgs, blocks| {
            let mut merged = vec![0usize; blocks];
            let mut members = vec![0usize; blocks];
            for (b, &g) in rgs.iter().enumerate() {
                merged[g] += sizes[b];
                members[g] += 1;
            }
            let mut mu = 1i128;
            for &c in &members {
                let sign = if (c - 1) % 2 == 0 { 1 } else { -1 };
                mu *= sign * (1..c as i128).product::<i128>();
            }
            merged.sort_unstable();
            coarsenings.push((merged, mu));
        });
        for (merged, mu) in coarsenings {
            total += mu * self.count_at_least(&merged);
        }
        total
    }
}

/// Inclusion–exclusion over index-equality patterns on top of residue
/// convolutions. Cost grows with Bell(2k) and `p^2`, not with `|a|^{2k}`.
pub fn r_k_star_ie(a: &[i64], k: usize, p: u64) -> Result<u128> {
    check_args(k, p)?;
    if k > IE_MAX_K {
        return Err(LabError::BudgetExceeded {
            what: "R_k^* inclusion-exclusion (k)",
            needed: k as u128,
            cap: IE_MAX_K as u128,
        });
    }
    if r_k_star_trivial_bound(a.len(), k) >= 1u128 << 120 {
        return Err(LabError::BudgetExceeded {
            what: "R_k^* count width",
            needed: r_k_star_trivial_bound(a.len(), k),
            cap: 1u128 << 120,
        });
    }
    if a.is_empty() {
        return Ok(0);
    }
    let mut pattern_count: HashMap<Vec<usize>, u128> = HashMap::new();
    set_partitions(2 * k, |rgs, blocks| {
        if enough_distinct(blocks, k) && blocks <= a.len() {
            *pattern_count.entry(block_sizes(rgs, blocks)).or_default() += 1;
        }
    });
    let mut engine = IeEngine::new(&residues(a, p), k, p as usize);
    let mut patterns: Vec<_> = pattern_count.into_iter().collect();
    patterns.sort();
    let mut total = 0i128;
    for (sizes, mult) in patterns {
        total += mult as i128 * engine.count_exact(&sizes);
    }
    debug_assert!(total >= 0);
    Ok(total as u128)
}

/// Brute force when cheap, inclusion–exclusion otherwise.
pub fn r_k_star(a: &[i64], k: usize, p: u64) -> Result<u128> {
    if r_k_star_trivial_bound(a.len(), k) <= 4096 {
        r_k_star_brute(a, k, p)
    } else {
        r_k_star_ie(a, k, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        for engine in [r_k_star_brute, r_k_star_ie] {
            assert_eq!(engine(&[1, 1], 1, 5).unwrap(), 4);
            assert_eq!(engine(&[1, 2], 1, 5).unwrap(), 0);
            assert_eq!(engine(&[1, 4], 1, 5).unwrap(), 4);
        }
    }

    #[test]
    fn trivial_bound() {
        assert_eq!(r_k_star_trivial_bound(2, 1), 16);
        assert_eq!(r_k_star_trivial_bound(3, 1), 36);
    }

    #[test]
    fn distinctness_threshold() {
        assert!(!enough_distinct(1, 1));
        assert!(enough_distinct(2, 1));
        assert!(!enough_distinct(2, 2));
        assert!(enough_distinct(3, 2));
        assert!(!enough_distinct(101, 100));
    }

    #[test]
    fn engines_agree_k3() {
        let a = [1, 2, 3, 5, 8];
        assert_eq!(r_k_star_brute(&a, 3, 7).unwrap(), r_k_star_ie(&a, 3, 7).unwrap());
    }

    #[test]
    fn rejects_bad_prime() {
        assert!(r_k_star_ie(&[1], 1, 9).is_err());
        assert!(r_k_star_brute(&[1], 1, 2).is_err());
    }
}
