//! Halász-type bound, B-set membership and the counting bound.

use rand::seq::index;
use rand::Rng;
use serde::Serialize;

use crate::primes::require_odd_prime;
use crate::rng::stream_rng;
use crate::structure::rkstar::{r_k_star, r_k_star_trivial_bound};
use crate::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalaszParams {
    pub p: u64,
    pub k: usize,
    pub m: f64,
    /// Calibration constant multiplying both correction terms.
    pub c_halasz: f64,
}

impl HalaszParams {
    pub fn new(p: u64, k: usize, m: f64) -> Self {
        Self { p, k, m, c_halasz: 1.0 }
    }
}

/// The two preconditions `30 M <= |supp a|` and `80 k M <= n`.
pub fn check_halasz_constraints(n: usize, support: usize, k: usize, m: f64) -> Result<()> {
    if !(m > 0.0) {
        return Err(LabError::InvalidParameter(format!("M = {m} must be positive")));
    }
    if k == 0 {
        return Err(LabError::InvalidParameter("k must be positive".into()));
    }
    if 30.0 * m > support as f64 {
        return Err(LabError::ConstraintViolated(format!("30M <= |supp(a)| fails: 30*{m} > {support}")));
    }
    if 80.0 * k as f64 * m > n as f64 {
        return Err(LabError::ConstraintViolated(format!("80kM <= n fails: 80*{k}*{m} > {n}")));
    }
    Ok(())
}

/// Right-hand side as a function of `R_k^*`; no precondition checks.
pub fn halasz_rhs(n: usize, r_star: f64, params: &HalaszParams) -> f64 {
    let k = params.k as f64;
    let n = n as f64;
    let c = params.c_halasz;
    let extra = (40.0 * k.powf(0.99) * n.powf(1.01)).powf(k);
    let denom = 4f64.powf(k) * n.powf(2.0 * k) * params.m.sqrt();
    1.0 / params.p as f64 + (c * r_star + c * extra) / denom + (-params.m).exp()
}

/// Evaluate the bound for the vector `a` (computes `R_k^*(a)` exactly).
pub fn halasz_bound(a: &[i64], params: &HalaszParams) -> Result<f64> {
    require_odd_prime(params.p)?;
    let p = params.p as i64;
    let support = a.iter().filter(|&&x| x.rem_euclid(p) != 0).count();
    check_halasz_constraints(a.len(), support, params.k, params.m)?;
    let r = r_k_star(a, params.k, params.p)?;
    Ok(halasz_rhs(a.len(), r as f64, params))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BSetParams {
    pub k: usize,
    pub s1: usize,
    pub s2: usize,
    pub t: u64,
    pub p: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Exhaustive subvector enumeration up to this length.
    pub exhaustive_max_len: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            exhaustive_max_len: 20,
            samples: 2000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Membership {
    Member,
    /// Indices (into `a`) of a subvector violating the threshold.
    NonMember(Vec<usize>),
    Undetermined { samples: usize },
}

fn support_mod(a: &[i64], p: u64) -> usize {
    a.iter().filter(|&&x| x.rem_euclid(p as i64) != 0).count()
}

/// `R_k^*(b) p >= t 4^k |b|^{2k}`, compared exactly.
fn meets_threshold(b: &[i64], prm: &BSetParams) -> Result<bool> {
    let r = r_k_star(b, prm.k, prm.p)?;
    let lhs = r.checked_mul(prm.p as u128);
    let rhs = (prm.t as u128).checked_mul(r_k_star_trivial_bound(b.len(), prm.k));
    match (lhs, rhs) {
        (Some(l), Some(r)) => Ok(l >= r),
        _ => Err(LabError::BudgetExceeded {
            what: "B-set threshold width",
            needed: u128::MAX,
            cap: u128::MAX,
        }),
    }
}

fn validate_bset(a: &[i64], prm: &BSetParams) -> Result<()> {
    require_odd_prime(prm.p)?;
    if prm.k == 0 {
        return Err(LabError::InvalidParameter("k must be positive".into()));
    }
    if prm.s2 > prm.s1 {
        return Err(LabError::InvalidParameter(format!("s2 = {} exceeds s1 = {}", prm.s2, prm.s1)));
    }
    if prm.t > prm.p {
        return Err(LabError::InvalidParameter(format!("t = {} exceeds p = {}", prm.t, prm.p)));
    }
    let supp = support_mod(a, prm.p);
    if supp < prm.s1 {
        return Err(LabError::ConstraintViolated(format!("|supp(a)| = {supp} < s1 = {}", prm.s1)));
    }
    Ok(())
}

/// Does every subvector `b` with `|supp b| >= s2` clear the `R_k^*` threshold?
pub fn b_set_membership(a: &[i64], prm: &BSetParams, budget: &SearchBudget) -> Result<Membership> {
    validate_bset(a, prm)?;
    if prm.t == 0 {
        return Ok(Membership::Member);
    }
    let n = a.len();
    let check = |idx: &[usize]| -> Result<Option<Vec<usize>>> {
        let b: Vec<i64> = idx.iter().map(|&i| a[i]).collect();
        if support_mod(&b, prm.p) < prm.s2 {
            return Ok(None);
        }
        Ok((!meets_threshold(&b, prm)?).then(|| idx.to_vec()))
    };
    if n <= budget.exhaustive_max_len {
        let mut idx = Vec::with_capacity(n);
        for mask in 1u64..(1u64 << n) {
            idx.clear();
            idx.extend((0..n).filter(|i| mask >> i & 1 == 1));
            if let Some(w) = check(&idx)? {
                return Ok(Membership::NonMember(w));
            }
        }
        return Ok(Membership::Member);
    }
    let full: Vec<usize> = (0..n).collect();
    if let Some(w) = check(&full)? {
        return Ok(Membership::NonMember(w));
    }
    let mut rng = stream_rng(budget.seed, 0);
    let lo = prm.s2.max(1);
    for _ in 0..budget.samples {
        let size = rng.random_range(lo..=n);
        let mut idx = index::sample(&mut rng, n, size).into_vec();
        idx.sort_unstable();
        if let Some(w) = check(&idx)? {
            return Ok(Membership::NonMember(w));
        }
    }
    Ok(Membership::Undetermined {
        samples: budget.samples,
    })
}

/// Natural log of `200^n (s2/s1)^{2k-1} p^n t^{-n+s2}`.
pub fn counting_bound(n: usize, k: usize, s1: usize, s2: usize, t: u64, p: u64) -> Result<f64> {
    if !(1 <= s2 && s2 <= s1 && s1 <= n) {
        return Err(LabError::InvalidParameter(format!("need 1 <= s2 <= s1 <= n, got s2={s2} s1={s1} n={n}")));
    }
    if !(1 <= t && t <= p) {
        return Err(LabError::InvalidParameter(format!("need 1 <= t <= p, got t={t} p={p}")));
    }
    if k == 0 {
        return Err(LabError::InvalidParameter("k must be positive".into()));
    }
    let n_f = n as f64;
    Ok(n_f * 200f64.ln()
        + (2 * k - 1) as f64 * (s2 as f64 / s1 as f64).ln()
        + n_f * (p as f64).ln()
        + (s2 as f64 - n_f) * (t as f64).ln())
}
