mod common;

use proptest::prelude::*;

use vr_lattice::homology::betti_z2;
use vr_lattice::lattice::{antilex_less, l1_distance, lambda_op, shift, IndexSet};
use vr_lattice::morse::build_matching_mu;
use vr_lattice::reduce::{
    dismantle, reduction_schedule, verify_certificate, Step, Strategy as Order,
};
use vr_lattice::{build_complex, Caps, FlagComplex, LatticePoint};

fn point(n: usize, lim: i32) -> impl Strategy<Value = LatticePoint> {
    prop::collection::vec(-lim..=lim, n).prop_map(|c| LatticePoint::new(c).unwrap())
}

fn triple() -> impl Strategy<Value = (LatticePoint, LatticePoint, LatticePoint)> {
    (1usize..=6).prop_flat_map(|n| (point(n, 10), point(n, 10), point(n, 10)))
}

/// A small cloud of distinct points in a box, with a scale.
fn cloud(max: usize) -> impl Strategy<Value = (Vec<LatticePoint>, u32)> {
    (2usize..=3, 1u32..=3).prop_flat_map(move |(n, r)| {
        (
            prop::collection::btree_set(prop::collection::vec(0i32..=3, n), 1..=max).prop_map(
                |s| {
                    s.into_iter()
                        .map(|c| LatticePoint::new(c).unwrap())
                        .collect()
                },
            ),
            Just(r),
        )
    })
}

fn complex(points: Vec<LatticePoint>, r: u32) -> FlagComplex {
    build_complex(points, r, &Caps::default()).unwrap()
}

proptest! {
    #[test]
    fn manhattan_is_a_metric((x, y, z) in triple()) {
        let d = |a, b| l1_distance(a, b).unwrap();
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert_eq!(d(&x, &y) == 0, x == y);
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
        prop_assert_eq!(d(&x, &y), common::manhattan(x.coords(), y.coords()));
    }

    #[test]
    fn antilex_is_a_strict_total_order((x, y, z) in triple()) {
        let lt = |a, b| antilex_less(a, b).unwrap();
        let held = [lt(&x, &y), x == y, lt(&y, &x)];
        prop_assert_eq!(held.iter().filter(|&&h| h).count(), 1);
        if lt(&x, &y) && lt(&y, &z) {
            prop_assert!(lt(&x, &z));
        }
        prop_assert_eq!(lt(&x, &y), common::antilex_cmp(x.coords(), y.coords()).is_lt());
        prop_assert_eq!(lt(&x, &y), x < y);
    }

    #[test]
    fn lambda_moves_toward_zero(
        (x, axes) in (1usize..=6).prop_flat_map(|n| {
            (point(n, 10), prop::sample::subsequence((1..=n).collect::<Vec<_>>(), 0..=n))
        })
    ) {
        let y = lambda_op(&x, &axes).unwrap();
        for (a, b) in x.coords().iter().zip(y.coords()) {
            prop_assert!(b.abs() <= a.abs());
        }
        let moved = axes.iter().filter(|&&i| x.get(i) != 0).count() as u32;
        prop_assert_eq!(x.l1_norm() - y.l1_norm(), moved);
    }

    #[test]
    fn shift_is_undone_by_the_opposite_shift(
        (x, idx) in (1usize..=6).prop_flat_map(|n| {
            let axes = prop::sample::subsequence((1..=n as i32).collect::<Vec<_>>(), 0..=n);
            (point(n, 10), axes, prop::collection::vec(any::<bool>(), n))
        }).prop_map(|(x, axes, signs)| {
            let idx: Vec<i32> = axes.iter().zip(signs).map(|(&a, s)| if s { a } else { -a }).collect();
            (x, idx)
        })
    ) {
        let n = x.dim();
        let there = shift(&x, &IndexSet::new(idx.clone(), n).unwrap()).unwrap();
        prop_assert_eq!(common::manhattan(x.coords(), there.coords()), idx.len() as u32);
        let back = IndexSet::new(idx.iter().map(|i| -i).collect(), n).unwrap();
        prop_assert_eq!(shift(&there, &back).unwrap(), x);
    }

    #[test]
    fn stages_shrink_monotonically(
        (n, r, x) in (2usize..=6).prop_flat_map(|n| (Just(n), n as u32..=12))
            .prop_flat_map(|(n, r)| (Just(n), Just(r), point(n, r as i32)))
    ) {
        let schedule = reduction_schedule(n, r).unwrap();
        for w in schedule.windows(2) {
            if w[1].admits(&x) {
                prop_assert!(w[0].admits(&x), "{:?} admits {} but {:?} does not", w[1].kind, x, w[0].kind);
            }
        }
    }

    #[test]
    fn dismantling_certificates_verify((pts, r) in cloud(12)) {
        let k = complex(pts.clone(), r);
        let cert = dismantle(&k, Order::GreedyAntilexMaxFirst);
        prop_assert!(verify_certificate(&k, &cert).is_valid());
        prop_assert_eq!(cert.steps.len() + cert.residual.len(), k.len());
        if cert.is_contractible() {
            let betti = common::dense_betti(&pts, r, 2);
            prop_assert_eq!(betti, vec![1, 0, 0]);
        }
    }

    #[test]
    fn tampered_certificates_are_rejected((pts, r) in cloud(10), pick in any::<prop::sample::Index>()) {
        let k = complex(pts, r);
        let mut cert = dismantle(&k, Order::GreedyAntilexMaxFirst);
        prop_assume!(!cert.steps.is_empty());
        let i = pick.index(cert.steps.len());
        let Step { removed, dominator } = cert.steps[i].clone();
        // Claim the removal is justified by a vertex that does not dominate.
        let alive: Vec<&LatticePoint> = k
            .vertices()
            .iter()
            .filter(|p| !cert.steps[..i].iter().any(|s| &s.removed == *p))
            .collect();
        let close = |a: &LatticePoint| alive.iter().filter(|b| a.dist(b) <= r).count();
        let bad = alive
            .iter()
            .find(|b| **b != &removed && **b != &dominator && close(b) < close(&removed));
        prop_assume!(bad.is_some());
        cert.steps[i].dominator = (*bad.unwrap()).clone();
        prop_assert!(!verify_certificate(&k, &cert).is_valid());
    }

    #[test]
    fn homology_matches_dense_oracle((pts, r) in cloud(12)) {
        let k = complex(pts.clone(), r);
        let lib = betti_z2(&k, 3, &Caps::default()).unwrap();
        prop_assert_eq!(lib.betti, common::dense_betti(&pts, r, 3));
    }

    #[test]
    fn maximal_cliques_match_subset_oracle((pts, r) in cloud(12)) {
        let k = complex(pts, r);
        let lib: Vec<Vec<u32>> =
            k.maximal_simplices(&Caps::default()).unwrap().into_iter().map(|s| s.0).collect();
        prop_assert_eq!(lib, common::maximal_clique_masks(k.vertices(), r));
    }

    #[test]
    fn matching_is_acyclic_and_bounds_homology((pts, r) in cloud(12)) {
        let k = complex(pts.clone(), r);
        let caps = Caps::default();
        let m = build_matching_mu(&k, k.len() as isize, &caps).unwrap();
        prop_assert!(m.verify_acyclic());
        let census = m.critical_census(false);
        prop_assert!(!census.empty_critical);
        prop_assert_eq!(census.euler_characteristic(), m.euler_characteristic());
        // Weak Morse inequalities against the reduced Betti numbers.
        let reduced = betti_z2(&k, 4, &caps).unwrap().to_reduced();
        for d in 0..=4 {
            prop_assert!(reduced.get(d) <= census.count(d));
        }
    }
}
