//! Cross-module invariants under randomized inputs, checked exactly.
//! These run at the default case count; the acceptance suite repeats the
//! headline algebraic laws at 10^4 cases each.

use std::collections::BTreeSet;

use cohstab::charge::{compare_slopes, heart_slope, ChargeParams, SlopeClass, SlopeOrdering};
use cohstab::degeneration::{s_equivalent, sequiv_classes};
use cohstab::klattice::ClassVector;
use cohstab::rat::Rat;
use cohstab::support::{qform, QuadFormParams};
use cohstab::walls::{enumerate_candidates, hn_candidates, wall_locus, SearchBounds};
use cohstab::{emit_plot_data, genus4_bound, quadratic_dominates, Dominance, Quadratic};

use proptest::prelude::*;

fn class_strategy(limit: i64) -> impl Strategy<Value = ClassVector> {
    let e = move || -limit..=limit;
    (e(), e(), e()).prop_map(|(r, d, n)| ClassVector::new(r, d, n))
}

/// Class with `im = d - b r > 0` at the given `b`, by lifting the degree.
fn upper_class(b: Rat, r: i64, lift: i64, n: i64) -> ClassVector {
    let d = (b * Rat::from(r)).floor_int() as i64 + 1 + lift;
    ClassVector::new(r, d, n)
}

fn small_b() -> impl Strategy<Value = Rat> {
    (-8i128..=16, 1i128..=4).prop_map(|(p, q)| Rat::new(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    /// Whatever the enumeration returns satisfies the documented candidate
    /// predicates, restated here from scratch.
    #[test]
    fn enumerated_candidates_satisfy_their_contract(
        r in -2i64..=2,
        lift in 0i64..=2,
        n in -3i64..=3,
        b in small_b(),
    ) {
        let v = upper_class(b, r, lift, n);
        let q = QuadFormParams::genus4();
        let sb = SearchBounds::new(3, 2, b + Rat::new(1, 2), b + Rat::int(6)).unwrap();
        let kernel = q.kernel_direction();
        let im = |u: ClassVector| Rat::from(u.d) - b * Rat::from(u.r);
        let re = |u: ClassVector, w: Rat| -Rat::from(u.n) + w * Rat::from(u.r);
        let form_ok = |u: ClassVector| {
            u.is_proportional_to(kernel) || !qform(u, &q).is_negative()
        };
        let cone_ok = |u: ClassVector| {
            im(u).is_positive()
                || (im(u).is_zero()
                    && (!re(u, sb.w_min).is_positive() || !re(u, sb.w_max).is_positive()))
        };
        for cand in enumerate_candidates(v, b, &q, &sb).unwrap() {
            prop_assert!(!cand.is_zero() && cand != v);
            prop_assert!(cand.r.abs() <= sb.r_max);
            prop_assert!(!im(cand).is_negative() && im(cand) <= im(v));
            prop_assert!(form_ok(cand), "form violated by {cand}");
            prop_assert!(form_ok(v - cand), "form violated by complement of {cand}");
            prop_assert!(cone_ok(cand), "cone violated by {cand}");
            prop_assert!(cone_ok(v - cand), "cone violated by complement of {cand}");
        }
    }

    /// At a reported locus the two slopes agree exactly; a `None` locus
    /// means the slope difference cannot vanish at any `w`.
    #[test]
    fn wall_locus_pins_slope_agreement(
        r1 in -3i64..=3, l1 in 0i64..=3, n1 in -6i64..=6,
        r2 in -3i64..=3, l2 in 0i64..=3, n2 in -6i64..=6,
        b in small_b(),
    ) {
        let a = upper_class(b, r1, l1, n1);
        let c = upper_class(b, r2, l2, n2);
        prop_assume!(!c.is_proportional_to(a));
        match wall_locus(a, c, b).unwrap() {
            Some(w) => {
                let p = ChargeParams::new(b, w);
                prop_assert_eq!(compare_slopes(a, c, p), SlopeOrdering::Equal);
            }
            None => {
                // Denominator r2*im1 - r1*im2 vanishes; since the classes
                // are not proportional the slopes never meet.
                let im1 = Rat::from(a.d) - b * Rat::from(a.r);
                let im2 = Rat::from(c.d) - b * Rat::from(c.r);
                prop_assert_eq!(
                    Rat::from(c.r) * im1 - Rat::from(a.r) * im2,
                    Rat::zero()
                );
                for w in [Rat::zero(), Rat::int(5), Rat::int(-7)] {
                    let p = ChargeParams::new(b, w);
                    prop_assert_ne!(compare_slopes(a, c, p), SlopeOrdering::Equal);
                }
            }
        }
        // Symmetry of the locus when both classes sit above the axis.
        prop_assert_eq!(wall_locus(a, c, b).unwrap(), wall_locus(c, a, b).unwrap());
    }

    /// The exact dominance decision agrees with a dense grid scan, and a
    /// reported witness is a genuine violation.
    #[test]
    fn dominance_decision_matches_grid_scan(
        s_num in 1i128..=8,
        b0_num in -4i128..=28,
        k_num in 0i128..=12,
        exclude_center in proptest::bool::ANY,
    ) {
        let bound = genus4_bound();
        let s = Rat::new(s_num, 2);
        let b0 = Rat::new(b0_num, 4);
        let k = Rat::new(k_num, 4);
        let mut excluded: BTreeSet<Rat> = BTreeSet::new();
        if exclude_center {
            excluded.insert(b0);
        }
        let quad = Quadratic::new(s, b0, k).unwrap();
        // Dominance is strict: a violation is quad(x) <= bound(x).
        match quadratic_dominates(&bound, s, b0, k, &excluded).unwrap() {
            Dominance::Holds => {
                for i in -128i128..=512 {
                    let x = Rat::new(i, 64);
                    if excluded.contains(&x) {
                        continue;
                    }
                    prop_assert!(
                        quad.eval(x) > bound.evaluate(x),
                        "grid point {x} violates a claimed dominance"
                    );
                }
            }
            Dominance::Fails { witness } => {
                prop_assert!(!excluded.contains(&witness));
                prop_assert!(
                    quad.eval(witness) <= bound.evaluate(witness),
                    "witness {witness} is not a violation"
                );
            }
        }
    }

    /// Splittings sum to the class, stay within the rank cap, and descend
    /// strictly in slope.
    #[test]
    fn splittings_are_ordered_filtrations(
        r in -2i64..=2,
        lift in 0i64..=1,
        n in -3i64..=3,
        w_num in 2i128..=5,
    ) {
        let v = upper_class(Rat::int(3), r, lift, n);
        let p = ChargeParams::new(Rat::int(3), Rat::new(w_num, 1));
        let q = QuadFormParams::genus4();
        let cap = v.r.abs().max(1);
        for parts in hn_candidates(v, p, &q, 2).unwrap() {
            prop_assert!(parts.len() == 2);
            let total = parts.iter().fold(ClassVector::ZERO, |acc, &u| acc + u);
            prop_assert_eq!(total, v);
            for &part in &parts {
                prop_assert!(!part.is_zero());
                prop_assert!(part.r.abs() <= cap);
                prop_assert!(heart_slope(part, p).in_cone());
            }
            prop_assert_eq!(
                compare_slopes(parts[0], parts[1], p),
                SlopeOrdering::Greater
            );
        }
    }

    /// Plot tables are sorted exact samples covering the grid and every
    /// override point in range.
    #[test]
    fn plot_tables_sample_the_grid_exactly(
        a in -8i128..=8,
        width in 0i128..=16,
        s in 1i128..=8,
    ) {
        let bound = genus4_bound();
        let x_min = Rat::new(a, 4);
        let x_max = x_min + Rat::new(width, 4);
        let step = Rat::new(1, s);
        let table = emit_plot_data(&bound, x_min, x_max, step, None).unwrap();
        let rows = table.rows();
        prop_assert!(!rows.is_empty());
        for pair in rows.windows(2) {
            prop_assert!(pair[0].x < pair[1].x, "rows out of order");
        }
        for row in rows {
            prop_assert!(x_min <= row.x && row.x <= x_max);
            prop_assert_eq!(row.bound, bound.evaluate(row.x));
            prop_assert_eq!(row.overlay, None);
        }
        // Grid points present.
        let mut x = x_min;
        while x <= x_max {
            prop_assert!(rows.iter().any(|row| row.x == x), "missing grid point {x}");
            x = x + step;
        }
        // Override points present whenever in range.
        for x0 in [Rat::zero(), Rat::int(3), Rat::int(6)] {
            if x_min <= x0 && x0 <= x_max {
                prop_assert!(rows.iter().any(|row| row.x == x0), "missing override {x0}");
            }
        }
        let csv = table.to_csv(false);
        prop_assert_eq!(csv.lines().count(), rows.len() + 1);
        prop_assert!(csv.starts_with("x,bound\n"));
    }

    /// Grouping by boundary equivalence is a partition into mutually
    /// equivalent families with pairwise inequivalent representatives.
    #[test]
    fn equivalence_grouping_is_a_partition(
        classes in proptest::collection::vec(class_strategy(6), 0..24),
    ) {
        let groups = sequiv_classes(&classes);
        let total: usize = groups.iter().map(Vec::len).sum();
        prop_assert_eq!(total, classes.len());
        for group in &groups {
            prop_assert!(!group.is_empty());
            let key = |v: &ClassVector| (v.r.abs(), v.d.abs(), v.n.abs());
            for &member in group {
                prop_assert!(s_equivalent(group[0], member));
                prop_assert!(key(&group[0]) <= key(&member), "representative not canonical");
            }
        }
        for (i, g1) in groups.iter().enumerate() {
            for g2 in groups.iter().skip(i + 1) {
                prop_assert!(!s_equivalent(g1[0], g2[0]));
            }
        }
    }

    /// Lattice classes and rationals survive a JSON round trip unchanged.
    #[test]
    fn serde_round_trips(v in class_strategy(10_000), p in -10_000i128..10_000, q in 1i128..100) {
        let json = serde_json::to_string(&v).unwrap();
        let back: ClassVector = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, v);
        let x = Rat::new(p, q);
        let json = serde_json::to_string(&x).unwrap();
        let back: Rat = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn three_part_splittings_extend_two_part_ones() {
    let q = QuadFormParams::genus4();
    let p = ChargeParams::new(Rat::int(3), Rat::int(2));
    let v = ClassVector::new(0, 2, 2);
    let two = hn_candidates(v, p, &q, 2).unwrap();
    let three = hn_candidates(v, p, &q, 3).unwrap();
    for parts in &two {
        assert!(three.contains(parts), "raising the cap must keep {parts:?}");
    }
    assert!(three.len() > two.len());
    assert!(three.contains(&vec![
        ClassVector::new(0, 0, 1),
        ClassVector::new(0, 1, 1),
        ClassVector::new(0, 1, 0),
    ]));
}

#[test]
fn integer_imaginary_parts_cap_chain_length() {
    // At b = 3 the imaginary parts are integers, so a class with im = 1
    // admits at most one finite-slope part: chains cannot exceed 2 parts.
    let q = QuadFormParams::genus4();
    let p = ChargeParams::new(Rat::int(3), Rat::int(5));
    let v = ClassVector::new(-1, -2, -1);
    let two = hn_candidates(v, p, &q, 2).unwrap();
    let four = hn_candidates(v, p, &q, 4).unwrap();
    assert_eq!(two, four);
}

#[test]
fn slope_classification_partitions_the_plane() {
    // Every class falls in exactly one classification bucket, decided by
    // the sign pattern of the charge.
    let p = ChargeParams::new(Rat::new(7, 2), Rat::new(-3, 4));
    for r in -6..=6i64 {
        for d in -6..=6i64 {
            for n in -6..=6i64 {
                let v = ClassVector::new(r, d, n);
                let z = cohstab::central_charge(v, p);
                let expected = if z.im.is_positive() {
                    SlopeClass::Finite(-z.re / z.im)
                } else if z.im.is_negative() || z.re.is_positive() {
                    SlopeClass::Invalid
                } else if z.re.is_negative() {
                    SlopeClass::Infinite
                } else {
                    SlopeClass::Kernel
                };
                assert_eq!(heart_slope(v, p), expected, "at {v}");
            }
        }
    }
}
