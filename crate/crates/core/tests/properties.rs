use std::collections::BTreeSet;

use proptest::prelude::*;

use dpt_core::catalog;
use dpt_core::compound::Policy;
use dpt_core::lattice::{sublattice_representatives, Matrix2, WrapVector};
use dpt_core::motif::TorusDiagram;
use dpt_core::moves::{self, GaugeAssignment};
use dpt_core::report::{invariant_report, InvariantReport};

fn entry() -> impl Strategy<Value = TorusDiagram> {
    (0..catalog::entries().len()).prop_map(|k| catalog::entries()[k].diagram())
}

fn small_cover(max_det: i64) -> impl Strategy<Value = Matrix2> {
    let all: Vec<Matrix2> = (1..=max_det).flat_map(sublattice_representatives).collect();
    (0..all.len()).prop_map(move |k| all[k])
}

fn unimodular() -> impl Strategy<Value = Matrix2> {
    let gens = [Matrix2::new(1, 1, 0, 1), Matrix2::new(0, -1, 1, 0), Matrix2::new(1, 0, -1, 1)];
    prop::collection::vec(0..3usize, 0..5)
        .prop_map(move |ks| ks.into_iter().fold(Matrix2::new(1, 0, 0, 1), |m, k| m * gens[k]))
}

fn report(d: &TorusDiagram) -> InvariantReport {
    invariant_report(d, Policy::LinkingAdjacency).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn covers_compose(d in entry(), l1 in small_cover(2), l2 in small_cover(2)) {
        let twice = moves::cover(&moves::cover(&d, &l1).unwrap().diagram, &l2).unwrap().diagram;
        let once = moves::cover(&d, &(l1 * l2)).unwrap().diagram;
        prop_assert!(moves::isomorphic(&twice, &once), "{} then {}", l1, l2);
    }

    #[test]
    fn rebase_carries_directions_along(d in entry(), m in unimodular()) {
        let before = report(&d);
        let after = report(&moves::rebase(&d, &m, false).unwrap());
        let moved: Option<BTreeSet<_>> =
            before.direction_set().map(|s| s.into_iter().map(|x| x.transformed(&m)).collect());
        prop_assert_eq!(after.direction_set(), moved);
        prop_assert_eq!(after.directional_type, before.directional_type);
        prop_assert_eq!(after.motif_class, before.motif_class);
    }

    #[test]
    fn covers_keep_class_subclasses_and_type(d in entry(), l in small_cover(3)) {
        let before = report(&d);
        let covered = moves::cover(&d, &l).unwrap().diagram;
        prop_assume!(covered.crossings.len() <= 48);
        let after = report(&covered);
        prop_assume!(before.direction_set().is_some() && after.direction_set().is_some());
        prop_assert_eq!(after.motif_class, before.motif_class);
        prop_assert_eq!(after.subclass_set(), before.subclass_set());
        prop_assert_eq!(after.directional_type, before.directional_type);
        prop_assert_eq!(after.direction_count, before.direction_count);
    }

    #[test]
    fn gauge_shifts_keep_the_invariants(d in entry(), du in -2i64..=2, dv in -2i64..=2, k in any::<usize>()) {
        prop_assume!(!d.crossings.is_empty());
        let c = d.crossings[k % d.crossings.len()].id;
        let g: GaugeAssignment = [(c, WrapVector::new(du, dv))].into();
        let shifted = moves::gauge_shift(&d, &g);
        prop_assert!(moves::isomorphic(&shifted, &d));
        // Wrap sequences and boundary counts are gauge-dependent; the invariants are not.
        let (a, b) = (report(&shifted), report(&d));
        prop_assert_eq!(a.compounds, b.compounds);
        prop_assert_eq!(a.motif_class, b.motif_class);
        prop_assert_eq!(a.directions, b.directions);
        prop_assert_eq!(a.directional_type, b.directional_type);
        prop_assert_eq!(a.axis_motif.map(|x| (x.torus_links, x.trivial_knots)), b.axis_motif.map(|x| (x.torus_links, x.trivial_knots)));
    }
}

#[test]
fn e1_covers_split_as_the_index_predicts() {
    let e1 = catalog::get("E1").unwrap();
    for (l, comps) in [(Matrix2::diag(2, 1), 1), (Matrix2::diag(1, 2), 2), (Matrix2::diag(3, 3), 3)] {
        assert_eq!(report(&moves::cover(&e1, &l).unwrap().diagram).components, comps, "{l}");
    }
}
