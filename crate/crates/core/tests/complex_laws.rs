//! Algebraic laws of the ternary self-distributive complex and its
//! degenerate, nondegenerate, localized and relative variants.

mod common;

use heapknot_core::algebra::{make_group, FiniteGroup};
use heapknot_core::cocycle_lib::{degenerate_generator, phi, psi_dihedral, ring_cocycle};
use heapknot_core::linalg::{smith_normal_form, AbelianGroup, IntMatrix};
use heapknot_core::tsd_complex::{
    boundary_matrix, coboundary1, first_cocycle_failure, is_coboundary, is_cocycle2, second_cohomology, Cochain2,
    Cocomplex2, Coefficients, ComplexVariant,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `A ⊕ B` in invariant-factor form.
fn direct_sum(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    let mut diag: Vec<BigInt> = Vec::new();
    diag.extend(std::iter::repeat_n(big(0), a.free_rank + b.free_rank));
    diag.extend(a.torsion.iter().cloned());
    diag.extend(b.torsion.iter().cloned());
    let n = diag.len();
    let rows: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { i64::try_from(&diag[i]).unwrap() } else { 0 }).collect()).collect();
    let snf = smith_normal_form(&IntMatrix::from_dense(&rows));
    let mut entries = snf.factors.clone();
    entries.extend(std::iter::repeat_n(big(0), n - snf.rank));
    AbelianGroup::from_diagonal(&entries)
}

fn variants(g: &FiniteGroup, specs: &[&str]) -> Vec<ComplexVariant> {
    specs.iter().map(|s| ComplexVariant::parse(s, g).unwrap()).collect()
}

#[test]
fn boundary_squares_to_zero_in_low_degrees() {
    for spec in ["Z2", "Z3", "Z4", "Z2xZ2"] {
        let g = make_group(spec).unwrap();
        let d2 = boundary_matrix(&g, 2).unwrap();
        let d3 = boundary_matrix(&g, 3).unwrap();
        assert!(d2.mul(&d3).unwrap().is_zero(), "d2 d3 ≠ 0 for {spec}");
    }
    for spec in ["Z2", "Z3"] {
        let g = make_group(spec).unwrap();
        let d3 = boundary_matrix(&g, 3).unwrap();
        let d4 = boundary_matrix(&g, 4).unwrap();
        assert!(d3.mul(&d4).unwrap().is_zero(), "d3 d4 ≠ 0 for {spec}");
    }
}

#[test]
fn coboundaries_are_cocycles_in_every_variant() {
    let cases: Vec<(FiniteGroup, Vec<&str>)> = vec![
        (make_group("Z4").unwrap(), vec!["full", "dh", "ndh", "loc:G=2", "rel:G=2"]),
        (make_group("D3").unwrap(), vec!["full", "dh", "ndh", "loc:G=a", "rel:G=a", "loc2:G=a,F=r", "rel2:G=a,F=r"]),
        (common::quaternion_group(), vec!["full", "dh", "ndh", "loc:G=-1", "rel:G=-1", "loc:G=i", "rel:G=i"]),
    ];
    for (g, specs) in cases {
        for coeff in [Coefficients::Integers, Coefficients::modular(3).unwrap()] {
            for v in variants(&g, &specs) {
                let cx = Cocomplex2::new(&g, coeff, &v).unwrap();
                for b in cx.coboundary_generators() {
                    let c = cx.extend(&b);
                    assert!(cx.is_cocycle(&c), "{} {}: a coboundary fails the cocycle equations", g.spec(), v.tag());
                }
            }
        }
    }
}

#[test]
fn quaternion_table_is_a_group() {
    let q = common::quaternion_group();
    assert!(q.is_associative());
    let i = q.parse_element("i").unwrap();
    assert_eq!(q.element_order(i), 4);
    assert_eq!(q.name(q.mul(i, q.parse_element("j").unwrap())), "k");
}

#[test]
fn full_cohomology_splits_into_degenerate_and_nondegenerate() {
    for spec in ["Z2", "Z3", "Z4", "D3"] {
        let g = make_group(spec).unwrap();
        for coeff in [Coefficients::Integers, Coefficients::modular(2).unwrap(), Coefficients::modular(3).unwrap()] {
            let full = second_cohomology(&g, coeff, &ComplexVariant::Full).unwrap().group;
            let dh = second_cohomology(&g, coeff, &ComplexVariant::Degenerate).unwrap().group;
            let ndh = second_cohomology(&g, coeff, &ComplexVariant::Nondegenerate).unwrap().group;
            assert_eq!(full, direct_sum(&dh, &ndh), "{spec} over {coeff}");
        }
    }
}

#[test]
fn degenerate_cohomology_is_the_coefficient_group() {
    for spec in ["Z2", "Z3", "Z5", "D3", "Z2xZ2"] {
        let g = make_group(spec).unwrap();
        let over_z = second_cohomology(&g, Coefficients::Integers, &ComplexVariant::Degenerate).unwrap();
        assert_eq!(over_z.group, AbelianGroup { free_rank: 1, torsion: vec![] }, "{spec} over Z");
        for m in [2u64, 3, 4] {
            let r = second_cohomology(&g, Coefficients::modular(m).unwrap(), &ComplexVariant::Degenerate).unwrap();
            assert_eq!(r.group, AbelianGroup { free_rank: 0, torsion: vec![big(m as i64)] }, "{spec} over Z{m}");
        }
        // The generator is the explicit degenerate cocycle, and it is not a coboundary.
        let d = degenerate_generator(&g, Coefficients::Integers);
        d.verify(&g).unwrap();
        assert!(is_coboundary(&g, &d.cochain, &ComplexVariant::Degenerate).unwrap().is_none());
    }
}

#[test]
fn explicit_families_satisfy_the_cocycle_condition() {
    for n in 2..=5u64 {
        let g = make_group(&format!("Z{n}")).unwrap();
        for (a, b, c) in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 1, 1)] {
            ring_cocycle(n, a, b, c).unwrap().verify(&g).unwrap();
        }
        for i in 1..n as usize {
            phi(n as usize, i).unwrap().verify(&g).unwrap();
        }
    }
    for n in 2..=4 {
        let g = make_group(&format!("D{n}")).unwrap();
        for i in 1..n {
            psi_dihedral(n, i).unwrap().verify(&g).unwrap();
        }
    }
}

/// `ψ_g(x, y, z) = ψ(gx, gy, gz)`.
fn translate(g: &FiniteGroup, psi: &Cochain2, by: usize) -> Cochain2 {
    let n = g.order();
    let mut out = Cochain2::zero(n, psi.coefficients());
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                out.set(x, y, z, psi.get(g.mul(by, x), g.mul(by, y), g.mul(by, z)).clone());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coboundaries_satisfy_the_cocycle_condition(values in proptest::collection::vec(-5i64..=5, 6)) {
        let g = make_group("D3").unwrap();
        let f: Vec<BigInt> = values.iter().map(|&v| big(v)).collect();
        let psi = coboundary1(&g, &f, Coefficients::Integers).unwrap();
        prop_assert!(is_cocycle2(&g, &psi));
        prop_assert_eq!(first_cocycle_failure(&g, &psi), None);
        let witness = is_coboundary(&g, &psi, &ComplexVariant::Full).unwrap();
        prop_assert!(witness.is_some());
        let again = coboundary1(&g, &witness.unwrap(), Coefficients::Integers).unwrap();
        prop_assert_eq!(again, psi);
    }

    #[test]
    fn left_translation_preserves_cocycles(
        coords in proptest::collection::vec(-3i64..=3, 24),
        by in 0usize..6,
        which in 0usize..5,
    ) {
        let g = make_group("D3").unwrap();
        let spec = ["full", "ndh", "loc:G=a", "rel:G=a", "rel2:G=a,F=r"][which];
        let v = ComplexVariant::parse(spec, &g).unwrap();
        let cx = Cocomplex2::new(&g, Coefficients::Integers, &v).unwrap();
        let basis = cx.cocycle_lattice();
        let mut psi = Cochain2::zero(g.order(), Coefficients::Integers);
        for (b, &c) in basis.iter().zip(coords.iter().cycle()) {
            psi = psi.combine(1, &cx.extend(b), c).unwrap();
        }
        prop_assert!(cx.is_cocycle(&psi));
        prop_assert!(cx.is_cocycle(&translate(&g, &psi, by)), "{} not equivariant under {}", spec, by);
    }

    #[test]
    fn modular_cocycles_reduce_integral_ones(values in proptest::collection::vec(-4i64..=4, 3)) {
        let g = make_group("Z3").unwrap();
        let psi = heapknot_core::cocycle_lib::phi_combination(3, &values[..2]).unwrap().cochain;
        prop_assert!(is_cocycle2(&g, &psi));
        let m = psi.with_coefficients(Coefficients::modular(3).unwrap());
        prop_assert!(is_cocycle2(&g, &m));
    }
}
