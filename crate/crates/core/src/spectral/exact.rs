use std::ops::{Div, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::models::IntMatrix;

/// Fraction-free Gaussian elimination. Returns the determinant; every
/// intermediate is a minor of the input, and divisions are exact.
fn bareiss<T>(mut a: Vec<T>, n: usize) -> T
where
    T: Clone + Zero + One + PartialEq + Mul<Output = T> + Sub<Output = T> + Div<Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
            return T::zero();
        };
        if p != k {
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = num / prev.clone();
            }
        }
        prev = a[k * n + k].clone();
    }
    let det = a[n * n - 1].clone();
    if negate {
        T::zero() - det
    } else {
        det
    }
}

/// log2 of the Hadamard bound on every minor of `m`.
fn hadamard_log2(m: &IntMatrix) -> f64 {
    m.rows()
        .map(|r| {
            let sq: f64 = r.iter().map(|&x| (x as f64) * (x as f64)).sum();
            0.5 * sq.max(1.0).log2()
        })
        .sum()
}

/// Exact determinant with arbitrary precision.
pub fn exact_determinant(m: &IntMatrix) -> BigInt {
    let n = m.n();
    // Products of two minors must fit in i128.
    if hadamard_log2(m) < 62.0 {
        let a: Vec<i128> = m.entries().iter().map(|&x| x as i128).collect();
        BigInt::from(bareiss(a, n))
    } else {
        let a: Vec<BigInt> = m.entries().iter().map(|&x| BigInt::from(x)).collect();
        bareiss(a, n)
    }
}

/// True iff det(M) = 0, decided in exact integer arithmetic.
pub fn exact_singularity(m: &IntMatrix) -> bool {
    exact_determinant(m).is_zero()
}
