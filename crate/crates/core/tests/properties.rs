use hurwitz_core::chambers::{chamber_signature, sample_in_chamber, symbolic_polynomial};
use hurwitz_core::partitions::{find_wall, hurwitz_oracle};
use hurwitz_core::patterns::{closed_form, hurwitz_number, hurwitz_number_with, ClosedFormJson};
use hurwitz_core::{ClosedForm, HurwitzInput, Ordering};
use proptest::prelude::*;
use proptest::sample::subsequence;

/// Splits `d` into `k` positive parts at sorted cut points.
fn composition(d: u64, k: usize) -> impl Strategy<Value = Vec<u64>> {
    subsequence((1..d).collect::<Vec<_>>(), k - 1).prop_map(move |cuts| {
        let mut edges = vec![0];
        edges.extend(cuts);
        edges.push(d);
        edges.windows(2).map(|w| w[1] - w[0]).collect()
    })
}

/// Off-wall labeled inputs with `d ≤ max_d`, at most three parts a side and
/// at least three parts in total.
fn off_wall_input(max_d: u64) -> impl Strategy<Value = HurwitzInput> {
    (3..=max_d)
        .prop_flat_map(|d| {
            let cap = (d as usize).min(3);
            (Just(d), 1..=cap, 1..=cap)
        })
        .prop_filter("more than two parts", |&(_, m, n)| m + n >= 3)
        .prop_flat_map(|(d, m, n)| (composition(d, m), composition(d, n)))
        .prop_map(|(mu, nu)| HurwitzInput::new(mu, nu).expect("equal sizes"))
        .prop_filter("off-wall", |h| find_wall(h).is_none())
}

fn permutation(k: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..k).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_matches_the_character_sum(h in off_wall_input(9), g in 0u64..=2) {
        let r = h.r_for_genus(g) as u32;
        prop_assert_eq!(hurwitz_number(&h, r).unwrap(), hurwitz_oracle(&h, r));
    }

    #[test]
    fn every_ordering_gives_the_same_numbers(
        (h, mu, nu) in off_wall_input(9)
            .prop_flat_map(|h| { let (m, n) = (h.m(), h.n()); (Just(h), permutation(m), permutation(n)) }),
        g in 0u64..=2,
    ) {
        let r = h.r_for_genus(g) as u32;
        let ordering = Ordering { mu, nu };
        let a = hurwitz_number_with(&h, r, Some(&ordering), r as i64 + 2).unwrap();
        prop_assert_eq!(a, hurwitz_oracle(&h, r));
    }

    #[test]
    fn closed_form_json_round_trips(h in off_wall_input(10)) {
        let cf = closed_form(&h, None).unwrap();
        let text = serde_json::to_string(&cf.to_json()).unwrap();
        let wire: ClosedFormJson = serde_json::from_str(&text).unwrap();
        let back = ClosedForm::from_json(&wire).unwrap();
        prop_assert_eq!(back.evaluate_series(&h, 8).unwrap(), cf.evaluate_series(&h, 8).unwrap());
        prop_assert_eq!(back, cf);
    }

    #[test]
    fn relabeling_parts_leaves_numbers_unchanged(h in off_wall_input(9)) {
        let mut mu = h.mu().to_vec();
        let mut nu = h.nu().to_vec();
        mu.reverse();
        nu.rotate_left(1);
        let swapped = HurwitzInput::new(mu, nu).unwrap();
        let r = h.r_for_genus(1) as u32;
        prop_assert_eq!(hurwitz_number(&swapped, r).unwrap(), hurwitz_number(&h, r).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn chamber_polynomials_reproduce_the_oracle(h in off_wall_input(10), seed in 0u64..1000) {
        let cp = symbolic_polynomial(&h, 1).unwrap();
        let sig = chamber_signature(&h).unwrap();
        for p in sample_in_chamber(&h, 3, seed).unwrap() {
            prop_assert_eq!(&chamber_signature(&p).unwrap(), &sig);
            let value = cp.polynomial.eval(&p.reduced_coordinates());
            prop_assert_eq!(value, hurwitz_oracle(&p, cp.r));
        }
    }
}
