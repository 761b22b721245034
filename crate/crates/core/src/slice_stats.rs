//! Moments of `X = sum v_i (1 + x_i)` with `x` uniform on the zero-sum
//! `±1` slice, the moment and MGF bounds built from them, and the
//! fixed-vector invertibility experiment.
//!
//! The closed forms are generic so the same code runs in `f64` and in
//! exact `BigRational` arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};
use rand::seq::index;
use rayon::prelude::*;
use serde::Serialize;

use crate::anticonc::{slice_sum_distribution, Mode};
use crate::models::{sample_rademacher, sample_row_regular};
use crate::rng::{derive_seed, stream_rng};
use crate::{LabError, Result};

/// Default `epsilon` for the invertibility threshold schedule.
pub const DEFAULT_EPSILON: f64 = 0.006;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentParams {
    pub q: u32,
    pub t: u32,
    pub lambda: f64,
    pub epsilon: f64,
}

impl MomentParams {
    pub fn validate(&self) -> Result<()> {
        if self.q == 0 {
            return Err(LabError::InvalidParameter("q must be positive".into()));
        }
        if self.t < 3 {
            return Err(LabError::InvalidParameter(format!("t = {} must be at least 3", self.t)));
        }
        if !(self.lambda > 0.0) {
            return Err(LabError::InvalidParameter("lambda must be positive".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(LabError::InvalidParameter("epsilon must lie in (0,1)".into()));
        }
        Ok(())
    }
}

fn from_usize<T: FromPrimitive>(x: usize) -> T {
    T::from_usize(x).expect("usize conversion")
}

fn sums<T: Clone + Num>(v: &[T]) -> (T, T) {
    let s = v.iter().cloned().fold(T::zero(), |a, b| a + b);
    let s2 = v.iter().cloned().fold(T::zero(), |a, b| a + b.clone() * b);
    (s, s2)
}

/// `E[X^2] = (n-2)/(n-1) (sum v)^2 + n/(n-1) sum v^2`.
pub fn slice_second_moment<T: Clone + Num + FromPrimitive>(v: &[T]) -> Result<T> {
    let n = v.len();
    if n < 2 {
        return Err(LabError::InvalidParameter(format!("slice moments need n >= 2, got {n}")));
    }
    let (s, s2) = sums(v);
    let nm1: T = from_usize(n - 1);
    Ok((from_usize::<T>(n - 2) * s.clone() * s + from_usize::<T>(n) * s2) / nm1)
}

/// `E[Y^2] = (sum v)^2 + sum v^2` for i.i.d. signs.
pub fn iid_second_moment<T: Clone + Num>(v: &[T]) -> T {
    let (s, s2) = sums(v);
    s.clone() * s + s2
}

/// `E |Q_n v|^2` for the row-regular model.
pub fn q_row_norm_expectation<T: Clone + Num + FromPrimitive>(v: &[T]) -> Result<T> {
    let n = v.len();
    if n < 2 || n % 2 == 1 {
        return Err(LabError::OddDimension(n));
    }
    let (s, s2) = sums(v);
    let den: T = from_usize(4 * (n - 1));
    Ok((from_usize::<T>(n * n - 2 * n) * s.clone() * s + from_usize::<T>(n * n) * s2) / den)
}

/// `(100 sqrt n)^{1/q} 5q E[X^2]`.
pub fn moment_norm_bound(q: u32, n: usize, ex2: f64) -> f64 {
    (100.0 * (n as f64).sqrt()).powf(1.0 / q as f64) * 5.0 * q as f64 * ex2
}

/// `100 sqrt n (4q)^q E[X^2]^q`.
pub fn high_moment_bound(q: u32, n: usize, ex2: f64) -> f64 {
    100.0 * (n as f64).sqrt() * (4.0 * q as f64).powi(q as i32) * ex2.powi(q as i32)
}

/// `1 + O_t lambda^2 E[X^2]^2 + 200 sqrt n 20^t lambda^t E[X^2]^t`,
/// defined for `0 < lambda < 1 / (40 E[X^2])`.
pub fn mgf_bound(lambda: f64, ex2: f64, t: u32, n: usize, o_t: f64) -> Result<f64> {
    if !(lambda > 0.0) || !(ex2 >= 0.0) || (ex2 > 0.0 && lambda >= 1.0 / (40.0 * ex2)) {
        return Err(LabError::ConstraintViolated(format!(
            "mgf bound needs 0 < lambda < 1/(40 E[X^2]); lambda = {lambda}, E[X^2] = {ex2}"
        )));
    }
    if t < 3 {
        return Err(LabError::InvalidParameter(format!("t = {t} must be at least 3")));
    }
    let le = lambda * ex2;
    Ok(1.0 + o_t * le * le + 200.0 * (n as f64).sqrt() * (20.0 * le).powi(t as i32))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceMomentCheck {
    pub q: u32,
    pub n: usize,
    /// `E[X^{2q}]` (exact value rendered as a float).
    pub moment: f64,
    /// Exact rational when computed from an exact table.
    #[serde(skip)]
    pub moment_exact: Option<BigRational>,
    /// Monte Carlo standard error, if sampled.
    pub se: Option<f64>,
    pub ex2: f64,
    /// `E[X^{2q}] / E[X^2]^q`, the quantity bounded by `O_q(1)`.
    pub low_ratio: f64,
    /// `E[X^{2q}] / (100 sqrt n (4q)^q E[X^2]^q)`; must not exceed 1.
    pub high_ratio: f64,
}

impl SliceMomentCheck {
    pub fn holds(&self) -> bool {
        self.high_ratio <= 1.0
    }
}

fn finish(q: u32, n: usize, moment: f64, moment_exact: Option<BigRational>, se: Option<f64>, ex2: f64) -> SliceMomentCheck {
    let low_ratio = if ex2 > 0.0 { moment / ex2.powi(q as i32) } else { 0.0 };
    let hb = high_moment_bound(q, n, ex2);
    let high_ratio = if hb > 0.0 { moment / hb } else { 0.0 };
    SliceMomentCheck {
        q,
        n,
        moment,
        moment_exact,
        se,
        ex2,
        low_ratio,
        high_ratio,
    }
}

fn to_rational(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// `E[X^{2q}]` from the exact slice distribution of an integer vector.
pub fn slice_moment_exact(v: &[i64], q: u32) -> Result<SliceMomentCheck> {
    if q == 0 {
        return Err(LabError::InvalidParameter("q must be positive".into()));
    }
    let table = slice_sum_distribution(v, Mode::Exact)?;
    let m = table
        .moment_exact(2 * q)
        .expect("exact table carries exact moments");
    let ex2 = slice_second_moment(&to_rational(v))?;
    Ok(finish(
        q,
        v.len(),
        m.to_f64().unwrap_or(f64::INFINITY),
        Some(m),
        None,
        ex2.to_f64().unwrap_or(f64::INFINITY),
    ))
}

/// Draw `X` once: twice the sum of `v` over a uniform half-size subset.
fn slice_draw(v: &[f64], rng: &mut crate::rng::LabRng) -> f64 {
    let n = v.len();
    2.0 * index::sample(rng, n, n / 2).iter().map(|i| v[i]).sum::<f64>()
}

/// Monte Carlo `E[X^{2q}]` with standard error.
pub fn slice_moment_mc(v: &[f64], q: u32, samples: usize, seed: u64) -> Result<SliceMomentCheck> {
    let n = v.len();
    if n < 2 || n % 2 == 1 {
        return Err(LabError::OddDimension(n));
    }
    if q == 0 || samples < 2 {
        return Err(LabError::InvalidParameter("need q >= 1 and at least 2 samples".into()));
    }
    let mut rng = stream_rng(seed, 0);
    let vals: Vec<f64> = (0..samples)
        .map(|_| slice_draw(v, &mut rng).powi(2 * q as i32))
        .collect();
    let mean = vals.iter().sum::<f64>() / samples as f64;
    let var = vals.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (samples - 1) as f64;
    let ex2 = slice_second_moment(v)?;
    Ok(finish(q, n, mean, None, Some((var / samples as f64).sqrt()), ex2))
}

/// Exact `E[exp(lambda Z)]`, `Z = E[X^2] - X^2`, from the slice table.
pub fn exact_mgf(v: &[i64], lambda: f64) -> Result<f64> {
    let table = slice_sum_distribution(v, Mode::Exact)?;
    let ex2 = slice_second_moment(&to_rational(v))?.to_f64().unwrap_or(f64::INFINITY);
    Ok(table.expectation(|x| (lambda * (ex2 - x * x)).exp()))
}

/// `E[exp(lambda Z)] - 1` accumulated through `expm1`, accurate for tiny lambda.
pub fn exact_mgf_excess(v: &[i64], lambda: f64) -> Result<f64> {
    let table = slice_sum_distribution(v, Mode::Exact)?;
    let ex2 = slice_second_moment(&to_rational(v))?.to_f64().unwrap_or(f64::INFINITY);
    Ok(table.expectation(|x| (lambda * (ex2 - x * x)).exp_m1()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MatrixFamily {
    /// Row-regular `Q_n`.
    RowRegular,
    /// I.i.d. Rademacher `M_n`.
    Rademacher,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvertibilityCheck {
    pub family: MatrixFamily,
    pub n: usize,
    pub trials: u64,
    pub hits: u64,
    pub p_hat: f64,
}

/// Fraction of sampled matrices with `|M v| <= (sqrt n / 2) |v|`.
pub fn fixed_vector_invertibility_check(
    v: &[f64],
    family: MatrixFamily,
    trials: u64,
    seed: u64,
) -> Result<InvertibilityCheck> {
    let n = v.len();
    if trials == 0 {
        return Err(LabError::InvalidParameter("trials must be at least 1".into()));
    }
    if family == MatrixFamily::RowRegular && n % 2 == 1 {
        return Err(LabError::OddDimension(n));
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = (n as f64).sqrt() / 2.0 * norm;
    let hits = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<u64> {
            let s = derive_seed(seed, &[trial]);
            let m = match family {
                MatrixFamily::RowRegular => sample_row_regular(n, s)?,
                MatrixFamily::Rademacher => sample_rademacher(n, s)?,
            };
            let image = m.apply(v);
            let len = image.iter().map(|x| x * x).sum::<f64>().sqrt();
            Ok(u64::from(len <= threshold))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(InvertibilityCheck {
        family,
        n,
        trials,
        hits,
        p_hat: hits as f64 / trials as f64,
    })
}
