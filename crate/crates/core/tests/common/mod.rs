//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

use lsvlab::anticonc::DistTable;

pub type Law = BTreeMap<i64, Ratio<u128>>;

/// Every sign vector in `{-1, 1}^n`, built recursively.
pub fn sign_vectors(n: usize) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for tail in sign_vectors(n - 1) {
        for s in [-1, 1] {
            let mut v = vec![s];
            v.extend(&tail);
            out.push(v);
        }
    }
    out
}

/// Balanced sign vectors (the zero-sum slice).
pub fn slice_vectors(n: usize) -> Vec<Vec<i64>> {
    sign_vectors(n).into_iter().filter(|x| x.iter().sum::<i64>() == 0).collect()
}

fn law_of(values: impl Iterator<Item = i64>) -> Law {
    let mut counts: BTreeMap<i64, u128> = BTreeMap::new();
    let mut total = 0u128;
    for v in values {
        *counts.entry(v).or_default() += 1;
        total += 1;
    }
    counts.into_iter().map(|(k, c)| (k, Ratio::new(c, total))).collect()
}

pub fn signed_law(w: &[i64]) -> Law {
    law_of(sign_vectors(w.len()).into_iter().map(|e| e.iter().zip(w).map(|(a, b)| a * b).sum()))
}

pub fn signed_law_mod(w: &[i64], p: i64) -> Law {
    law_of(
        sign_vectors(w.len())
            .into_iter()
            .map(|e| e.iter().zip(w).map(|(a, b)| a * b).sum::<i64>().rem_euclid(p)),
    )
}

/// Law of `sum v_i (1 + x_i)` on the slice.
pub fn slice_law(v: &[i64]) -> Law {
    law_of(slice_vectors(v.len()).into_iter().map(|x| x.iter().zip(v).map(|(a, b)| (1 + a) * b).sum()))
}

pub fn table_to_law(t: &DistTable) -> Law {
    let (counts, total) = t.exact_counts().expect("exact table");
    t.support().iter().zip(counts).map(|(&v, &c)| (v, Ratio::new(c, total))).collect()
}

pub fn max_atom(l: &Law) -> Ratio<u128> {
    l.values().copied().max().unwrap()
}

/// Leibniz expansion over all permutations.
pub fn leibniz_det(m: &[Vec<i64>]) -> i128 {
    fn perms(items: Vec<usize>) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.clone();
            let x = rest.remove(i);
            for mut p in perms(rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    let n = m.len();
    perms((0..n).collect())
        .into_iter()
        .map(|p| {
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            let sign: i128 = if inversions % 2 == 0 { 1 } else { -1 };
            sign * (0..n).map(|i| m[i][p[i]] as i128).product::<i128>()
        })
        .sum()
}

/// `R_k^*` by recursion over positions, carrying the partial residue.
pub fn r_star_oracle(a: &[i64], k: usize, p: i64) -> u128 {
    fn rec(a: &[i64], p: i64, left: usize, sum: i64, used: &mut Vec<usize>, need: usize) -> u128 {
        if left == 0 {
            let mut d = used.clone();
            d.sort_unstable();
            d.dedup();
            return u128::from(sum.rem_euclid(p) == 0 && d.len() * 100 > need);
        }
        let mut c = 0;
        for i in 0..a.len() {
            used.push(i);
            c += rec(a, p, left - 1, sum + a[i], used, need);
            c += rec(a, p, left - 1, sum - a[i], used, need);
            used.pop();
        }
        c
    }
    rec(a, p, 2 * k, 0, &mut Vec::new(), 101 * k)
}

pub fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn ratio_to_big(r: Ratio<u128>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// `E[f(X)]` over a law, exactly.
pub fn law_expectation(l: &Law, f: impl Fn(i64) -> BigRational) -> BigRational {
    l.iter().map(|(&x, &q)| f(x) * ratio_to_big(q)).sum()
}
