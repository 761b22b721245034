//! Value-indexed convolution engines for signed sums, residues mod p, and
//! linear forms on the zero-sum slice.

use super::{DistTable, Mode, Probability};
use crate::primes::require_odd_prime;
use crate::{LabError, Result};

/// Largest dense DP table (cells) any engine will allocate.
pub const RANGE_CAP: u128 = 1 << 25;

/// Counts up to 2^n must fit in `u128`.
const EXACT_MAX_TERMS: usize = 126;

fn check_exact(mode: Mode, terms: usize) -> Result<()> {
    if mode == Mode::Exact && terms > EXACT_MAX_TERMS {
        return Err(LabError::BudgetExceeded {
            what: "exact-mode denominator",
            needed: terms as u128,
            cap: EXACT_MAX_TERMS as u128,
        });
    }
    Ok(())
}

fn check_range(cells: u128) -> Result<()> {
    if cells > RANGE_CAP {
        return Err(LabError::BudgetExceeded {
            what: "DP value range",
            needed: cells,
            cap: RANGE_CAP,
        });
    }
    Ok(())
}

/// Exact mode when the denominator fits, float mode otherwise.
pub fn auto_mode(terms: usize) -> Mode {
    if terms <= EXACT_MAX_TERMS {
        Mode::Exact
    } else {
        Mode::Float
    }
}

/// Law of `sum eps_i w_i` with i.i.d. uniform signs.
pub fn signed_sum_distribution(w: &[i64], mode: Mode) -> Result<DistTable> {
    check_exact(mode, w.len())?;
    let range: i64 = w.iter().map(|x| x.abs()).sum();
    let width = 2 * range as usize + 1;
    check_range(width as u128)?;
    let r = range as usize;
    match mode {
        Mode::Exact => {
            let mut cur = vec![0u128; width];
            cur[r] = 1;
            let mut next = vec![0u128; width];
            let mut reach = 0usize;
            for &x in w {
                let a = x.unsigned_abs() as usize;
                next[r - reach - a..=r + reach + a].iter_mut().for_each(|c| *c = 0);
                for idx in r - reach..=r + reach {
                    let c = cur[idx];
                    if c != 0 {
                        next[idx - a] += c;
                        next[idx + a] += c;
                    }
                }
                reach += a;
                std::mem::swap(&mut cur, &mut next);
            }
            Ok(DistTable::from_dense_counts(-range, &cur, 1u128 << w.len()))
        }
        Mode::Float => {
            let mut cur = vec![0f64; width];
            cur[r] = 1.0;
            let mut next = vec![0f64; width];
            let mut reach = 0usize;
            for &x in w {
                let a = x.unsigned_abs() as usize;
                next[r - reach - a..=r + reach + a].iter_mut().for_each(|c| *c = 0.0);
                for idx in r - reach..=r + reach {
                    let c = cur[idx];
                    if c != 0.0 {
                        next[idx - a] += 0.5 * c;
                        next[idx + a] += 0.5 * c;
                    }
                }
                reach += a;
                std::mem::swap(&mut cur, &mut next);
            }
            Ok(DistTable::from_dense_probs(-range, &cur))
        }
    }
}

/// rho(w), the largest atom of the signed sum.
pub fn atom_probability(w: &[i64]) -> Result<Probability> {
    Ok(signed_sum_distribution(w, auto_mode(w.len()))?.max_atom())
}

/// Law of `sum eps_i a_i mod p` as a table over residues `0..p`.
pub fn signed_sum_distribution_mod_p(a: &[i64], p: u64, mode: Mode) -> Result<DistTable> {
    require_odd_prime(p)?;
    check_exact(mode, a.len())?;
    check_range(p as u128)?;
    let pm = p as usize;
    let residues: Vec<usize> = a.iter().map(|&x| x.rem_euclid(p as i64) as usize).collect();
    match mode {
        Mode::Exact => {
            let mut cur = vec![0u128; pm];
            cur[0] = 1;
            let mut next = vec![0u128; pm];
            for &r in &residues {
                for (x, slot) in next.iter_mut().enumerate() {
                    *slot = cur[(x + pm - r) % pm] + cur[(x + r) % pm];
                }
                std::mem::swap(&mut cur, &mut next);
            }
            Ok(DistTable::from_dense_counts(0, &cur, 1u128 << a.len()))
        }
        Mode::Float => {
            let mut cur = vec![0f64; pm];
            cur[0] = 1.0;
            let mut next = vec![0f64; pm];
            for &r in &residues {
                for (x, slot) in next.iter_mut().enumerate() {
                    *slot = 0.5 * (cur[(x + pm - r) % pm] + cur[(x + r) % pm]);
                }
                std::mem::swap(&mut cur, &mut next);
            }
            Ok(DistTable::from_dense_probs(0, &cur))
        }
    }
}

/// rho over F_p: the largest atom of `sum eps_i a_i mod p`.
pub fn atom_probability_mod_p(a: &[i64], p: u64) -> Result<Probability> {
    Ok(signed_sum_distribution_mod_p(a, p, auto_mode(a.len()))?.max_atom())
}

pub(crate) fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Law of `X = sum v_i (1 + x_i)` with `x` uniform on the zero-sum +-1 slice.
///
/// Equivalently `X = 2 * sum_{i in S} v_i` for a uniform n/2-subset S; the
/// DP runs over (index, |S| so far, partial sum).
pub fn slice_sum_distribution(v: &[i64], mode: Mode) -> Result<DistTable> {
    let n = v.len();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(LabError::OddDimension(n));
    }
    check_exact(mode, n)?;
    let half = n / 2;
    let range: i64 = v.iter().map(|x| x.abs()).sum();
    let width = 2 * range as usize + 1;
    check_range(width as u128 * (half as u128 + 1))?;
    let r = range as usize;
    // dp[j * width + s]: subsets of size j with partial sum s - range
    macro_rules! run {
        ($zero:expr, $one:expr) => {{
            let mut dp = vec![$zero; (half + 1) * width];
            dp[r] = $one;
            for (i, &x) in v.iter().enumerate() {
                let top = (i + 1).min(half);
                for j in (1..=top).rev() {
                    let (lower, upper) = dp.split_at_mut(j * width);
                    let src = &lower[(j - 1) * width..];
                    let dst = &mut upper[..width];
                    if x >= 0 {
                        let a = x as usize;
                        for s in 0..width - a {
                            dst[s + a] += src[s];
                        }
                    } else {
                        let a = (-x) as usize;
                        for s in a..width {
                            dst[s - a] += src[s];
                        }
                    }
                }
            }
            dp.split_off(half * width)
        }};
    }
    let table = match mode {
        Mode::Exact => {
            let last: Vec<u128> = run!(0u128, 1u128);
            DistTable::from_dense_counts(-range, &last, binomial_u128(n, half))
        }
        Mode::Float => {
            let last: Vec<f64> = run!(0f64, 1f64);
            let total = binomial_u128(n, half) as f64;
            let probs: Vec<f64> = last.iter().map(|c| c / total).collect();
            DistTable::from_dense_probs(-range, &probs)
        }
    };
    Ok(table.scale_support(2))
}
