//! Expansion audit of a base: property (Q1) on all row pairs and property
//! (Q2) on disjoint vertex-set pairs, exhaustively when few enough pairs
//! qualify and by seeded sampling otherwise.

use rand::seq::index;
use rand::Rng;
use serde::Serialize;

use super::{union_components, Base, ExponentProfile};
use crate::rng::stream_rng;
use crate::Result;

/// How the (Q2) pairs are chosen.
#[derive(Debug, Clone, Copy)]
pub struct AuditConfig {
    /// Enumerate every qualifying (A, B) when there are at most this many.
    pub exact_cap: u128,
    /// Number of sampled (A, B) pairs otherwise.
    pub samples: usize,
    pub seed: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            exact_cap: 20_000,
            samples: 200,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Q1Report {
    pub passed: bool,
    pub component_cap: usize,
    pub max_components: usize,
    /// Row pair attaining `max_components`.
    pub worst_pair: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Q2Method {
    /// No (A, B) satisfies the size window; the property holds vacuously.
    Vacuous,
    Exhaustive { pairs: u128 },
    /// Sizes uniform in `[min_set, n/2]`, then A uniform of its size and B
    /// uniform among subsets of the complement of A.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct Q2Witness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub bad_rows: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Q2Report {
    pub passed: bool,
    pub method: Q2Method,
    pub min_set: usize,
    pub bad_row_cap: usize,
    /// Pair with the most rows below the |A||B|/(8n) edge threshold.
    pub worst: Option<Q2Witness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BaseAudit {
    pub n: usize,
    pub q1: Q1Report,
    pub q2: Q2Report,
}

impl BaseAudit {
    pub fn passed(&self) -> bool {
        self.q1.passed && self.q2.passed
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// Number of ordered disjoint pairs (A, B) with `lo <= |A|, |B| <= n/2`.
pub fn q2_pair_count(n: usize, lo: usize) -> u128 {
    let hi = n / 2;
    let mut total = 0u128;
    for a in lo..=hi {
        for b in lo..=hi {
            total = total.saturating_add(binomial(n, a).saturating_mul(binomial(n - a, b)));
        }
    }
    total
}

struct Q2Checker<'a> {
    base: &'a Base,
    bad_row_cap: usize,
    in_a: Vec<bool>,
    in_b: Vec<bool>,
}

impl Q2Checker<'_> {
    /// Rows whose matching has fewer than |A||B|/(8n) edges between A and B.
    fn bad_rows(&mut self, a: &[usize], b: &[usize]) -> usize {
        let n = self.base.n();
        self.in_a.iter_mut().for_each(|x| *x = false);
        self.in_b.iter_mut().for_each(|x| *x = false);
        for &x in a {
            self.in_a[x] = true;
        }
        for &x in b {
            self.in_b[x] = true;
        }
        let target = a.len() * b.len();
        self.base
            .matchings()
            .iter()
            .filter(|m| {
                let edges = m
                    .pairs()
                    .iter()
                    .filter(|&&(x, y)| {
                        (self.in_a[x] && self.in_b[y]) || (self.in_a[y] && self.in_b[x])
                    })
                    .count();
                8 * n * edges < target
            })
            .count()
    }
}

fn for_each_subset(pool: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=pool.len() - need {
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(pool, k, 0, &mut Vec::with_capacity(k), f);
}

pub fn audit_base(base: &Base, profile: &ExponentProfile, cfg: &AuditConfig) -> Result<BaseAudit> {
    let n = base.n();

    let component_cap = profile.component_cap(n);
    let mut max_components = 0;
    let mut worst_pair = None;
    for i in 0..n {
        for j in i + 1..n {
            let c = union_components(base.matching(i), base.matching(j))?;
            if c > max_components {
                max_components = c;
                worst_pair = Some((i, j));
            }
        }
    }
    let q1 = Q1Report {
        passed: max_components <= component_cap,
        component_cap,
        max_components,
        worst_pair,
    };

    let min_set = profile.q2_min_set(n).max(1);
    let bad_row_cap = profile.q2_bad_row_cap(n);
    let mut checker = Q2Checker {
        base,
        bad_row_cap,
        in_a: vec![false; n],
        in_b: vec![false; n],
    };
    let mut worst: Option<Q2Witness> = None;
    let mut consider = |checker: &mut Q2Checker, a: &[usize], b: &[usize]| {
        let bad = checker.bad_rows(a, b);
        if worst.as_ref().is_none_or(|w| bad > w.bad_rows) {
            worst = Some(Q2Witness {
                a: a.to_vec(),
                b: b.to_vec(),
                bad_rows: bad,
            });
        }
    };

    let pairs = q2_pair_count(n, min_set);
    let method = if min_set > n / 2 {
        Q2Method::Vacuous
    } else if pairs <= cfg.exact_cap {
        let all: Vec<usize> = (0..n).collect();
        for a_size in min_set..=n / 2 {
            for_each_subset(&all, a_size, &mut |a| {
                let rest: Vec<usize> = all.iter().copied().filter(|x| !a.contains(x)).collect();
                for b_size in min_set..=n / 2 {
                    for_each_subset(&rest, b_size, &mut |b| consider(&mut checker, a, b));
                }
            });
        }
        Q2Method::Exhaustive { pairs }
    } else {
        let mut rng = stream_rng(cfg.seed, 0);
        for _ in 0..cfg.samples {
            let a_size = rng.random_range(min_set..=n / 2);
            let b_size = rng.random_range(min_set..=n / 2);
            let mut a = index::sample(&mut rng, n, a_size).into_vec();
            a.sort_unstable();
            let rest: Vec<usize> = (0..n).filter(|x| a.binary_search(x).is_err()).collect();
            let mut b: Vec<usize> = index::sample(&mut rng, rest.len(), b_size)
                .into_iter()
                .map(|k| rest[k])
                .collect();
            b.sort_unstable();
            consider(&mut checker, &a, &b);
        }
        Q2Method::Sampled {
            samples: cfg.samples,
            seed: cfg.seed,
        }
    };
    let passed = worst.as_ref().is_none_or(|w| w.bad_rows <= checker.bad_row_cap);
    let q2 = Q2Report {
        passed,
        method,
        min_set,
        bad_row_cap,
        worst,
    };
    Ok(BaseAudit { n, q1, q2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::sample_base;

    #[test]
    fn identity_base_components() {
        let base = Base::identity(4).unwrap();
        let audit = audit_base(&base, &ExponentProfile::strict(), &AuditConfig::default()).unwrap();
        assert_eq!(audit.q1.max_components, 2);
        // 4^0.8 = 3.03 -> 4 > n/2, no (A, B) qualifies
        assert_eq!(audit.q2.method, Q2Method::Vacuous);
    }

    #[test]
    fn n2_always_passes() {
        for seed in 0..5 {
            let base = sample_base(2, seed).unwrap();
            let audit =
                audit_base(&base, &ExponentProfile::strict(), &AuditConfig::default()).unwrap();
            assert!(audit.passed());
            assert_eq!(audit.q1.max_components, 1);
        }
    }

    #[test]
    fn pair_count_matches_enumeration() {
        // n = 6, lo = 2: sizes (2,2),(2,3),(3,2),(3,3)
        let expected = 15 * 6 + 15 * 4 + 20 * 3 + 20;
        assert_eq!(q2_pair_count(6, 2), expected);
    }

    #[test]
    fn exhaustive_mode_is_used_when_small() {
        let mut profile = ExponentProfile::strict();
        profile.q2_set_min = 0.5;
        let base = sample_base(8, 1).unwrap();
        let audit = audit_base(&base, &profile, &AuditConfig::default()).unwrap();
        assert!(matches!(audit.q2.method, Q2Method::Exhaustive { .. }));
        assert!(audit.q2.worst.is_some());
    }

    #[test]
    fn identity_base_fails_q2_when_edges_are_missing() {
        // every row pairs (0,1),(2,3),...; A = evens, B = odds gets all edges,
        // but A = {0,1,..}, B = {n/2..} gets none.
        let n = 16;
        let base = Base::identity(n).unwrap();
        let mut profile = ExponentProfile::strict();
        profile.q2_set_min = 0.5;
        let cfg = AuditConfig {
            exact_cap: 0,
            samples: 500,
            seed: 3,
        };
        let audit = audit_base(&base, &profile, &cfg).unwrap();
        assert!(!audit.q2.passed);
    }
}
