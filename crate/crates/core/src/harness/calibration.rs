//! Corpus-calibrated constants for the `≲` statements.
//!
//! Each routine returns the least constant that makes the stated
//! inequality hold on a fixed, seeded corpus. The values are frozen in
//! `fixtures/calibration.json`; reruns must land within [`SLACK`].

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::anticonc::{atom_probability_mod_p, levy_from_outcomes};
use crate::harness::config::{ExperimentConfig, ModelKind};
use crate::harness::oracle::{signed_outcomes, slice_outcomes};
use crate::harness::tails::{calibrate_tail_constant, run_tail_experiment};
use crate::primes::least_prime_at_least;
use crate::rng::{derive_seed, stream_rng};
use crate::slice_stats::{exact_mgf_excess, mgf_bound, slice_moment_exact, slice_second_moment};
use crate::structure::{halasz_rhs, lcd_estimate, r_k_star, HalaszParams, LcdParams};
use crate::Result;

/// Relative tolerance between a rerun and the frozen value.
pub const SLACK: f64 = 0.05;

pub const CALIBRATION_SEED: u64 = 20_240_601;

const FIXTURE: &str = include_str!("../../fixtures/calibration.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    /// `max E[X^{2q}] / E[X^2]^q`, `q = 1..=4`.
    pub o_q: Vec<f64>,
    /// MGF constant at `t = 3`.
    pub o_t: f64,
    pub halasz: HalaszCalibration,
    pub tail_c_iid: f64,
    pub tail_c_rr: f64,
    pub small_ball_c: f64,
    pub slice_levy_c: f64,
}

impl Calibration {
    pub fn frozen() -> Self {
        serde_json::from_str(FIXTURE).expect("calibration fixture parses")
    }
}

/// `|fresh - frozen| <= SLACK |frozen|` (exact match when frozen is 0).
pub fn within_slack(fresh: f64, frozen: f64) -> bool {
    (fresh - frozen).abs() <= SLACK * frozen.abs() + 1e-12
}

fn integer_corpus(seed: u64, size: usize, max_n: usize) -> Vec<Vec<i64>> {
    let mut rng = stream_rng(seed, 0);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let n = 2 * rng.random_range(1..=max_n / 2);
        let v: Vec<i64> = (0..n).map(|_| rng.random_range(-9..=9)).collect();
        if v.iter().any(|&x| x != 0) {
            out.push(v);
        }
    }
    out
}

/// Low-moment constants on exact slice laws, `n <= 12`.
pub fn calibrate_o_q(seed: u64) -> Result<Vec<f64>> {
    let corpus = integer_corpus(derive_seed(seed, &[1]), 300, 12);
    (1..=4u32)
        .map(|q| {
            corpus.iter().try_fold(0f64, |m, v| Ok(m.max(slice_moment_exact(v, q)?.low_ratio)))
        })
        .collect()
}

/// Fractions of `1 / (40 E[X^2])` used as the lambda grid.
pub const LAMBDA_FRACTIONS: [f64; 7] = [1e-6, 1e-4, 0.01, 0.1, 0.25, 0.5, 0.9];

/// Least `O_t` (t = 3) with `E exp(lambda Z) <= mgf_bound` on the corpus.
pub fn calibrate_o_t(seed: u64) -> Result<f64> {
    let corpus = integer_corpus(derive_seed(seed, &[2]), 200, 12);
    let mut best = 0f64;
    for v in &corpus {
        let ex2: f64 = slice_second_moment(&v.iter().map(|&x| x as f64).collect::<Vec<_>>())?;
        for f in LAMBDA_FRACTIONS {
            let lambda = f / (40.0 * ex2);
            let excess = exact_mgf_excess(v, lambda)?;
            let high = mgf_bound(lambda, ex2, 3, v.len(), 0.0)? - 1.0;
            best = best.max((excess - high) / (lambda * lambda * ex2 * ex2));
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalaszCalibration {
    pub n: usize,
    pub p: u64,
    pub corpus: usize,
    /// Least `C >= 0` making the full inequality hold on the corpus.
    pub c: f64,
    /// Same, with the `e^{-M}` term dropped (diagnostic only).
    pub c_without_tail: f64,
    pub max_rho: f64,
}

/// Entry ranges cycled through by the Halász corpus.
const HALASZ_RANGES: [i64; 7] = [1, 2, 4, 8, 32, 128, 1251];

pub fn halasz_corpus(seed: u64, size: usize, n: usize) -> Vec<Vec<i64>> {
    (0..size)
        .map(|j| {
            let mut rng = stream_rng(derive_seed(seed, &[3, j as u64]), 0);
            let r = HALASZ_RANGES[j % HALASZ_RANGES.len()];
            (0..n)
                .map(|_| {
                    let x = rng.random_range(1..=r);
                    if rng.random::<bool>() { x } else { -x }
                })
                .collect()
        })
        .collect()
}

/// Minimal corpus constant for the Halász inequality at `n = 160`, `k = 1`,
/// `M = 2`, `p = 2503`.
pub fn calibrate_halasz(seed: u64, size: usize) -> Result<HalaszCalibration> {
    let n = 160;
    let p = least_prime_at_least(2500);
    let prm = HalaszParams::new(p, 1, 2.0);
    let zero = HalaszParams { c_halasz: 0.0, ..prm };
    let one = HalaszParams { c_halasz: 1.0, ..prm };
    let tail = (-prm.m).exp();
    let (mut c, mut c_nt, mut max_rho) = (0f64, 0f64, 0f64);
    for a in halasz_corpus(seed, size, n) {
        let rho = atom_probability_mod_p(&a, p)?.to_f64();
        let r = r_k_star(&a, 1, p)? as f64;
        let base = halasz_rhs(n, r, &zero);
        let slope = halasz_rhs(n, r, &one) - base;
        c = c.max((rho - base) / slope);
        c_nt = c_nt.max((rho - base + tail) / slope);
        max_rho = max_rho.max(rho);
    }
    Ok(HalaszCalibration {
        n,
        p,
        corpus: size,
        c: c.max(0.0),
        c_without_tail: c_nt.max(0.0),
        max_rho,
    })
}

pub fn tail_grid() -> Vec<f64> {
    vec![1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2]
}

pub const TAIL_TRIALS: u64 = 10_000;

/// Least `C` with `p_hat <= C eta n^{a} + 3 se` over `n in {20, 40}`.
pub fn calibrate_tail(model: ModelKind, seed: u64, trials: u64) -> Result<f64> {
    let cfg = ExperimentConfig::new(model, vec![20, 40], trials, tail_grid(), derive_seed(seed, &[4]));
    Ok(calibrate_tail_constant(&run_tail_experiment(&cfg)?.cells, 3.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmallBallSample {
    pub n: usize,
    pub theta_star: f64,
    pub delta: f64,
    pub levy_iid: f64,
    pub levy_slice: f64,
}

pub const SMALL_BALL_GAMMA: f64 = 0.1;

/// Exact Levy values at `delta = (4/pi) / LCD` on random unit vectors.
pub fn small_ball_corpus(seed: u64, size: usize) -> Result<Vec<SmallBallSample>> {
    let mut out = Vec::new();
    for j in 0..size {
        let mut rng = stream_rng(derive_seed(seed, &[5, j as u64]), 0);
        let n = [8, 10, 12, 14][j % 4];
        let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        let a: Vec<f64> = g.iter().map(|x| x / norm).collect();
        let alpha = (n as f64).powf(0.25);
        let res = lcd_estimate(&a, &LcdParams::new(SMALL_BALL_GAMMA, alpha, 200.0))?;
        let Some(theta_star) = res.theta_star() else { continue };
        let delta = 4.0 / std::f64::consts::PI / theta_star;
        out.push(SmallBallSample {
            n,
            theta_star,
            delta,
            levy_iid: levy_from_outcomes(signed_outcomes(&a), delta)?.value,
            levy_slice: levy_from_outcomes(slice_outcomes(&a), delta)?.value,
        });
    }
    Ok(out)
}

/// `(C_iid, C_slice)` for `L <= C (delta/gamma + e^{-alpha^2/2})` and the
/// slice variant with the extra `sqrt n`.
pub fn calibrate_small_ball(seed: u64, size: usize) -> Result<(f64, f64)> {
    let g = SMALL_BALL_GAMMA;
    let (mut ci, mut cs) = (0f64, 0f64);
    for s in small_ball_corpus(seed, size)? {
        let alpha = (s.n as f64).powf(0.25);
        let rhs = s.delta / g + (-alpha * alpha / 2.0).exp();
        ci = ci.max(s.levy_iid / rhs);
        cs = cs.max(s.levy_slice / ((s.n as f64).sqrt() * rhs));
    }
    Ok((ci, cs))
}

/// Recompute every constant (slow: includes the tail experiments).
pub fn calibrate_all(seed: u64) -> Result<Calibration> {
    let (small_ball_c, slice_levy_c) = calibrate_small_ball(seed, 100)?;
    Ok(Calibration {
        o_q: calibrate_o_q(seed)?,
        o_t: calibrate_o_t(seed)?,
        halasz: calibrate_halasz(seed, 500)?,
        tail_c_iid: calibrate_tail(ModelKind::IidRademacher, seed, TAIL_TRIALS)?,
        tail_c_rr: calibrate_tail(ModelKind::RowRegular, seed, TAIL_TRIALS)?,
        small_ball_c,
        slice_levy_c,
    })
}
