use lsvlab::anticonc::{atom_probability, atom_probability_mod_p, levy_concentration, signed_sum_distribution, Mode};
use lsvlab::models::{difference_vector, sample_base, union_components, Matching};
use lsvlab::structure::{
    b_set_membership, lcd_estimate, r_k_star, r_k_star_trivial_bound, BSetParams, LcdParams, Membership, SearchBudget,
};
use proptest::prelude::*;

fn int_vec(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-12i64..=12, 1..=max_len)
}

fn unit_vec(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 1..=max_len)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.into_iter().map(|x| x / n).collect()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn atom_invariant_under_permutation_sign_and_scale(w in int_vec(10), seed in 0u64..1000, c in 1i64..5) {
        let base = atom_probability(&w).unwrap();
        let mut u = w.clone();
        u.rotate_left(seed as usize % w.len());
        let i = seed as usize % u.len();
        u[i] = -u[i];
        prop_assert_eq!(atom_probability(&u).unwrap(), base);
        let scaled: Vec<i64> = w.iter().map(|x| c * x).collect();
        prop_assert_eq!(atom_probability(&scaled).unwrap(), base);
        prop_assert_eq!(
            atom_probability_mod_p(&u, 7).unwrap(),
            atom_probability_mod_p(&w, 7).unwrap()
        );
    }

    #[test]
    fn levy_monotone_in_delta(w in int_vec(10), d1 in 0.0f64..6.0, d2 in 0.0f64..6.0) {
        let t = signed_sum_distribution(&w, Mode::Exact).unwrap();
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let a = levy_concentration(&t, lo).unwrap().value;
        let b = levy_concentration(&t, hi).unwrap().value;
        prop_assert!(a <= b);
        prop_assert!(b <= 1.0);
    }

    #[test]
    fn difference_vector_is_linear(half in 1usize..=4, seed in 0u64..500, c in -3i64..=3) {
        let n = 2 * half;
        let base = sample_base(n, seed).unwrap();
        let v: Vec<i64> = (0..n as i64).map(|i| (i * 7 + seed as i64) % 11 - 5).collect();
        let w: Vec<i64> = (0..n as i64).map(|i| (i * i + 3) % 5 - 2).collect();
        let sum: Vec<i64> = v.iter().zip(&w).map(|(a, b)| c * a + b).collect();
        for i in 0..n {
            let dv = difference_vector(&v, &base, i).unwrap();
            let dw = difference_vector(&w, &base, i).unwrap();
            let ds = difference_vector(&sum, &base, i).unwrap();
            let want: Vec<i64> = dv.iter().zip(&dw).map(|(a, b)| c * a + b).collect();
            prop_assert_eq!(ds, want);
        }
    }

    #[test]
    fn matching_union_with_itself(half in 1usize..=8, seed in 0u64..500) {
        let n = 2 * half;
        let base = sample_base(n, seed).unwrap();
        let m: &Matching = base.matching(0);
        prop_assert_eq!(union_components(m, m).unwrap(), half);
    }

    #[test]
    fn lcd_invariant_under_permutation_and_signs(a in unit_vec(4), flips in 0u32..16) {
        let p = LcdParams::new(0.2, 1.0, 12.0);
        let ra = lcd_estimate(&a, &p).unwrap();
        let mut b: Vec<f64> = a.iter().rev().copied().collect();
        for (i, x) in b.iter_mut().enumerate() {
            if flips >> i & 1 == 1 {
                *x = -*x;
            }
        }
        let rb = lcd_estimate(&b, &p).unwrap();
        match (ra.theta_star(), rb.theta_star()) {
            (Some(x), Some(y)) => prop_assert!((x - y).abs() <= ra.resolution.max(rb.resolution) * 1.0001),
            (None, None) => {}
            (x, y) => prop_assert!(false, "asymmetric {:?} {:?}", x, y),
        }
    }

    #[test]
    fn r_star_within_trivial_bound(a in prop::collection::vec(-30i64..=30, 1..=6), k in 1usize..=2) {
        let r = r_k_star(&a, k, 7).unwrap();
        prop_assert!(r <= r_k_star_trivial_bound(a.len(), k));
    }

    #[test]
    fn b_set_membership_monotone_in_t(a in prop::collection::vec(1i64..=10, 2..=6), t in 1u64..=10) {
        let budget = SearchBudget::default();
        let p = BSetParams { k: 1, s1: 2, s2: 2, t, p: 11 };
        if b_set_membership(&a, &p, &budget).unwrap() == Membership::Member {
            let lower = BSetParams { t: t - 1, ..p };
            prop_assert_eq!(b_set_membership(&a, &lower, &budget).unwrap(), Membership::Member);
        }
    }
}
