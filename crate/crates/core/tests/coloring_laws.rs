//! Colorings and the cocycle invariant under braid moves, plus the
//! Wirtinger and monochromatic checks.

mod common;

use heapknot_core::algebra::{make_group, FiniteGroup};
use heapknot_core::cocycle_lib::{phi, psi_dihedral};
use heapknot_core::coloring::{classify, count_colorings, enumerate_colorings, wirtinger_images, ComponentColor};
use heapknot_core::link_model::FramedLink;
use heapknot_core::state_sum::{invariant, InvariantValue};
use heapknot_core::tsd_complex::{coboundary1, Cochain2, Coefficients};
use num_bigint::BigInt;
use proptest::prelude::*;

const BUDGET: u128 = 10_000_000;

fn group_and_cocycle(which: usize) -> (FiniteGroup, Cochain2) {
    if which == 0 {
        (make_group("Z3").unwrap(), phi(3, 1).unwrap().cochain)
    } else {
        (make_group("D3").unwrap(), psi_dihedral(3, 1).unwrap().cochain)
    }
}

/// Equality up to relabelling the components.
fn same_up_to_components(a: &InvariantValue, b: &InvariantValue) -> bool {
    a.components() == b.components()
        && common::permutations(a.components()).iter().any(|p| a.permute_components(p).unwrap() == *b)
}

fn assert_same_invariants(before: &FramedLink, after: &FramedLink, g: &FiniteGroup, psi: &Cochain2, what: &str) {
    assert_eq!(count_colorings(before, g, BUDGET).unwrap(), count_colorings(after, g, BUDGET).unwrap(), "{what}: counts");
    let (a, b) = (invariant(before, g, psi, BUDGET).unwrap(), invariant(after, g, psi, BUDGET).unwrap());
    assert!(same_up_to_components(&a, &b), "{what}: {a} vs {b}");
}

/// Framings follow the components: each component of `after` is matched to
/// the component of `before` containing the same top strand `s` that the
/// move sends to it.
fn reframe(after_braid: heapknot_core::link_model::BraidWord, before: &FramedLink, strand_map: &[usize]) -> FramedLink {
    let count = common::cycle_count(&after_braid.strand_ends());
    let probe = FramedLink::new(after_braid.clone(), &vec![0; count]).unwrap();
    let framings: Vec<i64> = probe
        .components()
        .iter()
        .map(|comp| {
            let old_strand = strand_map[comp[0]];
            before.framings()[before.component_of_strand(old_strand)]
        })
        .collect();
    FramedLink::new(after_braid, &framings).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn invariants_survive_braid_moves(link in common::framed_braid(6), which in 0usize..2, pick in 0usize..64) {
        let (g, psi) = group_and_cocycle(which);
        let braid = link.braid();
        let n = braid.strands();
        let identity: Vec<usize> = (0..n).collect();

        // Far commutation and the braid relation keep strand identities at the top.
        let sites = braid.braid_relation_sites();
        if !sites.is_empty() {
            let moved = braid.apply_braid_relation(sites[pick % sites.len()]).unwrap();
            assert_same_invariants(&link, &reframe(moved, &link, &identity), &g, &psi, "braid relation");
        }
        let sites = braid.commutation_sites();
        if !sites.is_empty() {
            let moved = braid.apply_commutation(sites[pick % sites.len()]).unwrap();
            assert_same_invariants(&link, &reframe(moved, &link, &identity), &g, &psi, "commutation");
        }
        if n >= 2 {
            let at = pick % (braid.letters().len() + 1);
            let position = 1 + pick % (n - 1);
            let sign = if pick % 2 == 0 { 1 } else { -1 };
            let moved = braid.insert_cancelling_pair(at, position, sign).unwrap();
            assert_same_invariants(&link, &reframe(moved, &link, &identity), &g, &psi, "cancelling pair");
        }
        // Cyclic conjugation: the first letter moves to the bottom, so the
        // strand now starting at top position p began at p's preimage.
        if let Some(first) = braid.letters().first() {
            let mut map = identity.clone();
            map.swap(first.position - 1, first.position);
            let moved = braid.rotate_left();
            assert_same_invariants(&link, &reframe(moved, &link, &map), &g, &psi, "conjugation");
        }
        // Kinks may sit on any strand of their component.
        for (c, comp) in link.components().iter().enumerate() {
            let strand = comp[pick % comp.len()];
            let moved = link.with_kink_strand(c, strand).unwrap();
            let a = invariant(&link, &g, &psi, BUDGET).unwrap();
            let b = invariant(&moved, &g, &psi, BUDGET).unwrap();
            prop_assert_eq!(a, b, "kink relocation");
        }
    }

    #[test]
    fn coboundary_cocycles_give_trivial_invariants(
        link in common::framed_braid(6),
        which in 0usize..2,
        values in proptest::collection::vec(-3i64..=3, 6),
    ) {
        let (g, _) = group_and_cocycle(which);
        let f: Vec<BigInt> = values[..g.order()].iter().map(|&v| BigInt::from(v)).collect();
        let psi = coboundary1(&g, &f, Coefficients::Integers).unwrap();
        let v = invariant(&link, &g, &psi, BUDGET).unwrap();
        prop_assert!(v.is_trivial(), "{}", v);
    }

    #[test]
    fn colorings_satisfy_wirtinger_relations(link in common::framed_braid(6), which in 0usize..2) {
        let (g, _) = group_and_cocycle(which);
        for c in enumerate_colorings(&link, &g, BUDGET).unwrap() {
            prop_assert!(wirtinger_images(&g, &c).holds);
        }
    }

    #[test]
    fn knots_have_one_monochromatic_coloring_per_element(link in common::framed_braid(6), which in 0usize..2) {
        prop_assume!(link.component_count() == 1);
        let (g, _) = group_and_cocycle(which);
        let mono = enumerate_colorings(&link, &g, BUDGET)
            .unwrap()
            .iter()
            .filter(|c| classify(&link, c) == vec![ComponentColor::Monochromatic])
            .count();
        prop_assert_eq!(mono, g.order());
    }
}
