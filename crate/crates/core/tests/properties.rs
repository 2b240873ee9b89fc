use hultman::arrangement::chamber_count;
use hultman::bruhat::{bruhat_leq, bruhat_leq_full, identity_rank, rank_at, LowerInterval};
use hultman::diagram::{coessential_set, diagram, in_hull, HullBounds};
use hultman::group::SignedWindow;
use hultman::pattern::{bp_contains, classical_contains, flatten_at, PatternSpec};
use hultman::{Family, Group, Perm};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle().prop_map(|v| Perm::new(v).unwrap())
}

/// A uniformly shuffled signed permutation embedded in `S_{2n}`.
fn signed(n: usize) -> impl Strategy<Value = Perm> {
    (Just((1..=n as i32).collect::<Vec<i32>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n)).prop_map(
        |(abs, signs)| {
            let window = abs.into_iter().zip(signs).map(|(a, s)| if s { -a } else { a }).collect();
            SignedWindow(window).embed().unwrap()
        },
    )
}

proptest! {
    #[test]
    fn display_round_trips(w in (1usize..=12).prop_flat_map(perm)) {
        prop_assert_eq!(w.to_string().parse::<Perm>().unwrap(), w);
    }

    #[test]
    fn inverse_composes_to_identity(w in perm(8), v in perm(8)) {
        prop_assert!((&w * &w.inverse()).is_identity());
        prop_assert_eq!((&w * &v).inverse(), &v.inverse() * &w.inverse());
    }

    #[test]
    fn signed_window_round_trips(w in signed(5)) {
        let b5 = Group::b(5);
        prop_assert!(b5.contains(&w));
        prop_assert_eq!(b5.signed_window(&w).unwrap().embed().unwrap(), w);
    }

    #[test]
    fn type_b_length_counts_inversion_reflections(w in signed(5)) {
        let b5 = Group::b(5);
        let inversions = b5.reflections().iter().filter(|t| t.is_inversion_of(&w)).count();
        prop_assert_eq!(b5.length(&w), inversions);
    }

    #[test]
    fn coessential_boxes_decide_bruhat_order(u in perm(7), w in perm(7)) {
        prop_assert_eq!(LowerInterval::new(&w).contains(&u), bruhat_leq_full(&u, &w));
    }

    #[test]
    fn coessential_boxes_are_diagram_corners(w in perm(8)) {
        let d = diagram(&w);
        for b in coessential_set(&w) {
            prop_assert!(d.contains(&(b.p, b.q)));
            prop_assert!(!d.contains(&(b.p - 1, b.q)) && !d.contains(&(b.p, b.q + 1)));
            prop_assert_eq!(b.r, rank_at(&w, b.p, b.q));
            prop_assert!(b.r >= identity_rank(b.p, b.q));
        }
    }

    #[test]
    fn lower_interval_inside_hull(u in perm(7), w in perm(7)) {
        let bounds = HullBounds::new(&w);
        prop_assert!(bounds.contains(&w));
        if bruhat_leq(&u, &w) {
            prop_assert!(in_hull(&u, &w));
        }
    }

    #[test]
    fn chambers_invariant_under_inverse(w in signed(4)) {
        let b4 = Group::b(4);
        prop_assert_eq!(chamber_count(&b4, &w), chamber_count(&b4, &w.inverse()));
    }

    #[test]
    fn flattenings_are_contained(w in perm(8), ix in subsequence((1..=8usize).collect::<Vec<_>>(), 1..=8)) {
        let v = flatten_at(&w, &ix);
        let found = classical_contains(&w, &v).unwrap();
        prop_assert!(found <= ix);
        prop_assert_eq!(flatten_at(&w, &found), v);
    }

    #[test]
    fn b_in_b_flattenings_are_contained(w in signed(5), half in subsequence((1..=5usize).collect::<Vec<_>>(), 1..=5)) {
        let ix: Vec<usize> = half.iter().copied().chain(half.iter().rev().map(|&i| 11 - i)).collect();
        let v = PatternSpec::new(flatten_at(&w, &ix), Family::B).unwrap();
        prop_assert!(bp_contains(&w, Family::B, &v).is_some());
    }

    #[test]
    fn bp_containment_is_transitive(
        w in signed(5),
        a in subsequence((1..=5usize).collect::<Vec<_>>(), 1..=5),
        b in subsequence((1..=5usize).collect::<Vec<_>>(), 1..=5),
    ) {
        let mirror = |half: &[usize], n: usize| -> Vec<usize> {
            half.iter().copied().chain(half.iter().rev().map(|&i| 2 * n + 1 - i)).collect()
        };
        let u = flatten_at(&w, &mirror(&a, 5));
        let m = a.len();
        let b: Vec<usize> = b.into_iter().filter(|&i| i <= m).collect();
        prop_assume!(!b.is_empty());
        let v = PatternSpec::new(flatten_at(&u, &mirror(&b, m)), Family::B).unwrap();
        prop_assert!(bp_contains(&u, Family::B, &v).is_some());
        prop_assert!(bp_contains(&w, Family::B, &v).is_some());
    }
}
