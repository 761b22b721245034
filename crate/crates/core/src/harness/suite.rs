//! Named invariant batteries with machine-readable reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::anticonc::{
    signed_sum_distribution, signed_sum_distribution_mod_p, slice_sum_distribution, two_step_row_atom, Mode,
};
use crate::harness::calibration::{calibrate_o_q, calibrate_o_t, within_slack, Calibration, CALIBRATION_SEED};
use crate::harness::oracle::{signed_sum_law, signed_sum_law_mod_p, slice_sum_law, table_law};
use crate::models::{audit_base, sample_base, AuditConfig, Base, ExponentProfile};
use crate::rng::{derive_seed, stream_rng};
use crate::slice_stats::{iid_second_moment, q_row_norm_expectation, slice_second_moment};
use crate::structure::{lcd_estimate, r_k_star_brute, r_k_star_ie, r_k_star_trivial_bound, LcdParams};
use crate::{LabError, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

type SuiteFn = fn(u64) -> Result<Vec<CheckResult>>;

const REGISTRY: &[(&str, SuiteFn)] = &[
    ("anticonc-oracle", anticonc_oracle),
    ("rkstar", rkstar),
    ("slice-moments", slice_moments),
    ("two-step", two_step),
    ("base-audit", base_audit),
    ("lcd", lcd),
    ("calibration", calibration),
];

pub fn suite_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|(n, _)| *n).collect()
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Run the named suites in order. An empty list is an error.
pub fn run_invariant_suite(names: &[&str], seed: u64) -> Result<SuiteReport> {
    if names.is_empty() {
        return Err(LabError::UnknownSuite("empty suite list".into()));
    }
    let mut suites = Vec::new();
    for &name in names {
        let f = REGISTRY
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, f)| *f)
            .ok_or_else(|| LabError::UnknownSuite(name.to_string()))?;
        let checks = f(seed)?;
        suites.push(SuiteResult {
            suite: name.to_string(),
            seed,
            passed: checks.iter().all(|c| c.passed),
            checks,
        });
    }
    Ok(SuiteReport {
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}

fn random_vec(rng: &mut impl Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.random_range(-9..=9)).collect()
}

fn anticonc_oracle(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = stream_rng(derive_seed(seed, &[101]), 0);
    let (mut signed, mut modp, mut slice, mut cases) = (0, 0, 0, 0);
    for _ in 0..200 {
        let n = rng.random_range(1..=14);
        let w = random_vec(&mut rng, n);
        let p = [3u64, 5, 7, 11, 13][rng.random_range(0..5)];
        cases += 1;
        signed += usize::from(table_law(&signed_sum_distribution(&w, Mode::Exact)?) != Some(signed_sum_law(&w)));
        modp += usize::from(
            table_law(&signed_sum_distribution_mod_p(&w, p, Mode::Exact)?) != Some(signed_sum_law_mod_p(&w, p)),
        );
        if n % 2 == 0 {
            slice += usize::from(table_law(&slice_sum_distribution(&w, Mode::Exact)?) != Some(slice_sum_law(&w)));
        }
    }
    Ok(vec![
        check("signed-sum", signed == 0, format!("{signed} mismatches in {cases}")),
        check("signed-sum-mod-p", modp == 0, format!("{modp} mismatches in {cases}")),
        check("slice-sum", slice == 0, format!("{slice} mismatches")),
    ])
}

fn rkstar(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = stream_rng(derive_seed(seed, &[102]), 0);
    let (mut bad, mut over) = (0, 0);
    for _ in 0..150 {
        let len = rng.random_range(1..=6);
        let k = rng.random_range(1..=2);
        let p = [3u64, 5, 7, 11, 13][rng.random_range(0..5)];
        let a: Vec<i64> = (0..len).map(|_| rng.random_range(0..p as i64)).collect();
        let b = r_k_star_brute(&a, k, p)?;
        bad += usize::from(b != r_k_star_ie(&a, k, p)?);
        over += usize::from(b > r_k_star_trivial_bound(len, k));
    }
    Ok(vec![
        check("engines-agree", bad == 0, format!("{bad} disagreements in 150")),
        check("trivial-bound", over == 0, format!("{over} violations in 150")),
    ])
}

fn rationals(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

fn slice_moments(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = stream_rng(derive_seed(seed, &[103]), 0);
    let mut bad = Vec::new();
    for trial in 0..60 {
        let n = 2 * rng.random_range(1..=5);
        let v = random_vec(&mut rng, n);
        let rv = rationals(&v);
        let law = slice_sum_law(&v);
        let ex2: BigRational = law
            .iter()
            .map(|(&x, q)| {
                BigRational::from_integer(BigInt::from(x) * BigInt::from(x))
                    * BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
            })
            .sum();
        let ey2: BigRational = signed_sum_law(&v)
            .iter()
            .map(|(&x, q)| {
                let y = BigInt::from(x) + BigInt::from(v.iter().sum::<i64>());
                BigRational::from_integer(&y * &y) * BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
            })
            .sum();
        let quarter_n = BigRational::new(BigInt::from(n), BigInt::from(4));
        let ok = slice_second_moment(&rv)? == ex2
            && iid_second_moment(&rv) == ey2
            && q_row_norm_expectation(&rv)? == ex2 * quarter_n;
        if !ok {
            bad.push(trial);
        }
    }
    Ok(vec![check(
        "closed-forms",
        bad.is_empty(),
        format!("{} mismatches in 60", bad.len()),
    )])
}

fn two_step(seed: u64) -> Result<Vec<CheckResult>> {
    let mut viol = 0;
    let mut cases = 0;
    for j in 0..60u64 {
        let s = derive_seed(seed, &[104, j]);
        let n = 2 * (1 + j as usize % 5);
        let base = sample_base(n, s)?;
        let mut rng = stream_rng(s, 1);
        let v = random_vec(&mut rng, n);
        for i in 0..n {
            cases += 1;
            viol += usize::from(!two_step_row_atom(&v, &base, i)?.holds());
        }
    }
    Ok(vec![check("row-atom-comparison", viol == 0, format!("{viol} violations in {cases} rows"))])
}

fn base_audit(seed: u64) -> Result<Vec<CheckResult>> {
    let profile = ExponentProfile::desk();
    let cfg = AuditConfig {
        seed,
        ..AuditConfig::default()
    };
    let identity = audit_base(&Base::identity(16)?, &profile, &cfg)?;
    let base = sample_base(64, derive_seed(seed, &[105]))?;
    let a = audit_base(&base, &profile, &cfg)?;
    let b = audit_base(&base, &profile, &cfg)?;
    Ok(vec![
        check(
            "identity-base-fails-q1",
            !identity.q1.passed,
            format!("max components {}", identity.q1.max_components),
        ),
        check("random-base-q1", a.q1.passed, format!("max components {} (cap {})", a.q1.max_components, a.q1.component_cap)),
        check("audit-deterministic", serde_json::to_string(&a)? == serde_json::to_string(&b)?, "two audits of the same base"),
    ])
}

fn lcd(_seed: u64) -> Result<Vec<CheckResult>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::new();
    for gamma in [0.01, 0.1, 0.5] {
        for (label, a, want) in [("e1", vec![1.0], 1.0), ("diag", vec![s, s], 2f64.sqrt())] {
            let res = lcd_estimate(&a, &LcdParams::new(gamma, 1.0, 3.0))?;
            let target = want / (1.0 + gamma);
            let ok = res.theta_star().is_some_and(|t| (t - target).abs() <= res.resolution);
            out.push(check(
                format!("{label}-gamma-{gamma}"),
                ok,
                format!("theta* {:?}, expected {target}", res.theta_star()),
            ));
        }
    }
    Ok(out)
}

fn calibration(_seed: u64) -> Result<Vec<CheckResult>> {
    let frozen = Calibration::frozen();
    let o_q = calibrate_o_q(CALIBRATION_SEED)?;
    let o_t = calibrate_o_t(CALIBRATION_SEED)?;
    let oq_ok = o_q.len() == frozen.o_q.len() && o_q.iter().zip(&frozen.o_q).all(|(a, b)| within_slack(*a, *b));
    Ok(vec![
        check("o_q", oq_ok, format!("fresh {o_q:?}, frozen {:?}", frozen.o_q)),
        check("o_t", within_slack(o_t, frozen.o_t), format!("fresh {o_t}, frozen {}", frozen.o_t)),
    ])
}
