mod common;

use common::*;
use lsvlab::anticonc::*;
use lsvlab::models::{sample_base, Base};
use lsvlab::LabError;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.random_range(-9..=9)).collect()
}

#[test]
fn signed_sum_examples() {
    let t = signed_sum_distribution(&[1, 1], Mode::Exact).unwrap();
    assert_eq!(t.support(), &[-2, 0, 2]);
    assert_eq!(t.mass_at(0).exact().unwrap(), Ratio::new(1, 2));
    assert_eq!(atom_probability(&[1, 2]).unwrap().exact().unwrap(), Ratio::new(1, 4));
    assert_eq!(atom_probability(&[0, 0, 0]).unwrap().exact().unwrap(), Ratio::new(1, 1));
    assert_eq!(atom_probability(&[1, 1, 1, 1]).unwrap().exact().unwrap(), Ratio::new(6, 16));
}

#[test]
fn mod_p_examples() {
    let t = signed_sum_distribution_mod_p(&[1, 1], 3, Mode::Exact).unwrap();
    assert_eq!(table_to_law(&t), signed_law_mod(&[1, 1], 3));
    assert_eq!(atom_probability_mod_p(&[1, 2, 3], 5).unwrap().to_f64(), max_atom(&signed_law_mod(&[1, 2, 3], 5)).to_f64());
    assert!(matches!(signed_sum_distribution_mod_p(&[1], 4, Mode::Exact), Err(LabError::NotOddPrime(4))));
}

trait ToF64 {
    fn to_f64(self) -> f64;
}

impl ToF64 for Ratio<u128> {
    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

#[test]
fn slice_examples() {
    let t = slice_sum_distribution(&[1; 6], Mode::Exact).unwrap();
    assert_eq!(t.support(), &[6]);
    let t = slice_sum_distribution(&[1, 2], Mode::Exact).unwrap();
    assert_eq!(t.support(), &[2, 4]);
    assert_eq!(t.mass_at(2).exact().unwrap(), Ratio::new(1, 2));
    let t = slice_sum_distribution(&[1, 0, 0, 0, 0, 0], Mode::Exact).unwrap();
    assert_eq!(t.support(), &[0, 2]);
    assert_eq!(t.mass_at(2).exact().unwrap(), Ratio::new(1, 2));
    assert!(matches!(slice_sum_distribution(&[1, 2, 3], Mode::Exact), Err(LabError::OddDimension(3))));
}

#[test]
fn engines_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for _ in 0..150 {
        let n = rng.random_range(1..=12);
        let w = random_vec(&mut rng, n);
        assert_eq!(table_to_law(&signed_sum_distribution(&w, Mode::Exact).unwrap()), signed_law(&w), "{w:?}");
        let p = [3, 5, 7, 11, 13][rng.random_range(0..5)];
        assert_eq!(
            table_to_law(&signed_sum_distribution_mod_p(&w, p as u64, Mode::Exact).unwrap()),
            signed_law_mod(&w, p)
        );
        if n % 2 == 0 {
            assert_eq!(table_to_law(&slice_sum_distribution(&w, Mode::Exact).unwrap()), slice_law(&w));
        }
    }
}

#[test]
fn float_mode_tracks_exact_mode() {
    let w: Vec<i64> = (1..=20).collect();
    let e = signed_sum_distribution(&w, Mode::Exact).unwrap();
    let f = signed_sum_distribution(&w, Mode::Float).unwrap();
    assert_eq!(e.support(), f.support());
    for (a, b) in e.probs_f64().iter().zip(f.probs_f64()) {
        assert!((a - b).abs() < 1e-14);
    }
    assert_eq!(auto_mode(126), Mode::Exact);
    assert_eq!(auto_mode(127), Mode::Float);
    assert!(signed_sum_distribution(&vec![1; 127], Mode::Exact).is_err());
}

#[test]
fn range_budget() {
    let huge = vec![1i64 << 30; 4];
    assert!(matches!(
        signed_sum_distribution(&huge, Mode::Float),
        Err(LabError::BudgetExceeded { .. })
    ));
}

#[test]
fn levy_examples() {
    let c = DistTable::point_mass(3);
    assert_eq!(levy_concentration(&c, 0.7).unwrap().value, 1.0);
    let t = signed_sum_distribution(&[1, 1], Mode::Exact).unwrap();
    assert_eq!(levy_concentration(&t, 0.0).unwrap().value, 0.5);
    assert_eq!(levy_concentration(&t, 1.0).unwrap().value, 0.75);
    assert_eq!(levy_concentration(&t, 2.0).unwrap().value, 1.0);
    assert!(levy_concentration(&t, -1.0).is_err());
}

#[test]
fn levy_from_real_outcomes() {
    let e = levy_from_outcomes(vec![0.0, 0.3, 1.0, 1.0], 0.15).unwrap();
    assert_eq!(e.value, 0.5);
    assert!(matches!(e.method, LevyMethod::ExactEnumeration { outcomes: 4 }));
    let m = levy_monte_carlo(vec![0.0; 50], 0.1).unwrap();
    assert_eq!(m.value, 1.0);
}

#[test]
fn levy_matches_window_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..60 {
        let n = rng.random_range(1..=10);
        let w = random_vec(&mut rng, n);
        let law = signed_law(&w);
        let t = signed_sum_distribution(&w, Mode::Exact).unwrap();
        for delta in [0.0, 0.5, 1.0, 2.5, 7.0] {
            let best = law
                .keys()
                .map(|&r| {
                    law.iter()
                        .filter(|(&x, _)| x >= r && (x - r) as f64 <= 2.0 * delta)
                        .map(|(_, &q)| q)
                        .sum::<Ratio<u128>>()
                })
                .max()
                .unwrap();
            assert!((levy_concentration(&t, delta).unwrap().value - best.to_f64()).abs() < 1e-15);
        }
    }
}

#[test]
fn csv_rendering() {
    let t = signed_sum_distribution(&[1], Mode::Exact).unwrap();
    assert_eq!(t.to_csv(), "value,probability\n-1,1/2\n1,1/2\n");
}

#[test]
fn two_step_examples() {
    let base = Base::identity(4).unwrap();
    let a = two_step_row_atom(&[2, 2, 2, 2], &base, 0).unwrap();
    assert_eq!((a.lhs, a.rhs), (Ratio::new(1, 1), Ratio::new(1, 1)));
    let a = two_step_row_atom(&[5, 1, 7, 2], &base, 0).unwrap();
    assert_eq!(a.rhs, Ratio::new(1, 4));
    assert!(a.holds());
    let b2 = Base::identity(2).unwrap();
    let a = two_step_row_atom(&[1, 0], &b2, 1).unwrap();
    assert_eq!((a.lhs, a.rhs), (Ratio::new(1, 2), Ratio::new(1, 2)));
}

/// lhs by assembling every bit pattern of row i directly.
fn row_atom_oracle(v: &[i64], base: &Base, i: usize) -> Ratio<u128> {
    let pairs = base.matching(i).pairs();
    let h = pairs.len();
    let mut values = std::collections::BTreeMap::new();
    for bits in 0u64..1 << h {
        let s: i64 = pairs
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| if bits >> k & 1 == 1 { v[a] } else { v[b] })
            .sum();
        *values.entry(s).or_insert(0u128) += 1;
    }
    Ratio::new(*values.values().max().unwrap(), 1u128 << h)
}

#[test]
fn two_step_against_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for j in 0..80 {
        let n = 2 * rng.random_range(1..=5);
        let base = sample_base(n, j).unwrap();
        let v = random_vec(&mut rng, n);
        for i in 0..n {
            let a = two_step_row_atom(&v, &base, i).unwrap();
            assert_eq!(a.lhs, row_atom_oracle(&v, &base, i));
            let diff = lsvlab::models::difference_vector(&v, &base, i).unwrap();
            assert_eq!(a.rhs, max_atom(&signed_law(&diff)));
            assert!(a.holds());
        }
    }
}
