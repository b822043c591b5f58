//! Property-based tests for the exact-arithmetic invariants.

use proptest::prelude::*;

use twistcond_core::characters::UnitCharacter;
use twistcond_core::counting::{count_exact, count_up_to};
use twistcond_core::localfield::{norm_image_level, LocalFieldParams};
use twistcond_core::reps::{conductor_from_level, level_from_conductor, QuasiSquareIntegrable};

fn any_field() -> impl Strategy<Value = LocalFieldParams> {
    prop_oneof![
        Just(LocalFieldParams::new(3, 1).unwrap()),
        Just(LocalFieldParams::new(5, 1).unwrap()),
        Just(LocalFieldParams::new(7, 1).unwrap()),
        Just(LocalFieldParams::new(3, 2).unwrap()),
    ]
}

/// A character over a fixed field, built from arbitrary raw exponents at an
/// arbitrary small level.
fn character_over(field: LocalFieldParams) -> impl Strategy<Value = UnitCharacter> {
    (0u64..=4).prop_flat_map(move |level| {
        let len = if level == 0 {
            0
        } else {
            1 + field.residue_degree() as usize
        };
        proptest::collection::vec(0u64..10_000, len)
            .prop_map(move |raw| UnitCharacter::from_exponents(field, level, &raw).unwrap())
    })
}

fn character_pair() -> impl Strategy<Value = (UnitCharacter, UnitCharacter)> {
    any_field().prop_flat_map(|field| (character_over(field), character_over(field)))
}

fn character_triple() -> impl Strategy<Value = (UnitCharacter, UnitCharacter, UnitCharacter)> {
    any_field().prop_flat_map(|field| {
        (
            character_over(field),
            character_over(field),
            character_over(field),
        )
    })
}

proptest! {
    #[test]
    fn ceiling_defining_property(m in 0u64..1_000_000, n in 1u64..1000) {
        let c = norm_image_level(m, n);
        prop_assert!((n as i128) * (c as i128 - 1) < m as i128);
        prop_assert!(m <= n * c);
    }

    #[test]
    fn canonical_form_is_a_fixed_point(chi in any_field().prop_flat_map(character_over)) {
        let again = UnitCharacter::from_exponents(
            chi.field(),
            chi.conductor(),
            chi.exponents(),
        ).unwrap();
        prop_assert_eq!(&again, &chi);
        // Exponents are reduced against the conductor-level factors.
        let group = twistcond_core::UnitQuotientGroup::new(chi.field(), chi.conductor()).unwrap();
        for (e, d) in chi.exponents().iter().zip(group.invariant_factors()) {
            prop_assert!(e < d);
        }
    }

    #[test]
    fn product_conductor_max_rule((a, b) in character_pair()) {
        let ab = a.multiply(&b).unwrap();
        prop_assert!(ab.conductor() <= a.conductor().max(b.conductor()));
        if a.conductor() != b.conductor() {
            prop_assert_eq!(ab.conductor(), a.conductor().max(b.conductor()));
        }
    }

    #[test]
    fn group_laws((a, b, c) in character_triple()) {
        prop_assert_eq!(
            a.multiply(&b).unwrap(),
            b.multiply(&a).unwrap()
        );
        prop_assert_eq!(
            a.multiply(&b).unwrap().multiply(&c).unwrap(),
            a.multiply(&b.multiply(&c).unwrap()).unwrap()
        );
        prop_assert!(a.multiply(&a.inverse()).unwrap().is_trivial());
    }

    #[test]
    fn power_is_iterated_multiplication(
        a in any_field().prop_flat_map(character_over),
        e in 0i64..6,
    ) {
        let mut acc = UnitCharacter::trivial(a.field());
        for _ in 0..e {
            acc = acc.multiply(&a).unwrap();
        }
        prop_assert_eq!(a.pow(e), acc.clone());
        prop_assert_eq!(a.pow(-e), acc.inverse());
    }

    #[test]
    fn level_conductor_round_trip(l in 0u64..1000, n in 1u64..64) {
        let a = conductor_from_level(l, n).unwrap();
        prop_assert_eq!(level_from_conductor(a, n).unwrap(), l);
    }

    #[test]
    fn exact_counts_are_sphere_differences(
        q in prop_oneof![Just(3u64), Just(5), Just(7), Just(9), Just(11), Just(25)],
        k in 1u64..8,
    ) {
        prop_assert_eq!(
            count_exact(q, k).unwrap(),
            count_up_to(q, k).unwrap() - count_up_to(q, k - 1).unwrap()
        );
    }

    #[test]
    fn twisted_conductor_respects_the_max_bound(
        (chi, mu) in character_pair(),
        rank in 1u64..4,
        slack in 0u64..3,
    ) {
        let minimal = if rank == 1 { 0 } else { rank - 1 + slack };
        let atom = QuasiSquareIntegrable::new(rank, "m", minimal, mu, None).unwrap();
        let twisted = atom.twisted_conductor(&chi).unwrap();
        let pinned = atom.conductor().max(rank * chi.conductor());
        prop_assert!(twisted <= pinned);
        if atom.is_twist_minimal() || atom.conductor() != rank * chi.conductor() {
            prop_assert_eq!(twisted, pinned);
        }
    }
}
