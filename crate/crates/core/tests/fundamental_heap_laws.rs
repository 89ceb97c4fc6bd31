//! Properties of symbolic propagation and fundamental heap presentations.

mod common;

use heapknot_core::algebra::make_group;
use heapknot_core::coloring::propagate;
use heapknot_core::fundamental_heap::{
    abelianization, alpha_form, presentation, symbolic_propagate, tietze_simplify, FreeWord, Presentation,
};
use heapknot_core::linalg::{smith_normal_form, AbelianGroup, IntMatrix};
use heapknot_core::link_model::{torus_2, FramedLink};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Cokernel of the linking matrix: framings (kinks plus self-writhe) on the
/// diagonal, linking numbers off it.
fn linking_cokernel(link: &FramedLink) -> AbelianGroup {
    let r = link.component_count();
    let mut twice = vec![vec![0i64; r]; r];
    for (level, l) in link.braid().letters().iter().enumerate() {
        let a = link.component_at(level, l.position - 1);
        let b = link.component_at(level, l.position);
        let s = i64::from(l.sign);
        if a == b {
            twice[a][a] += 2 * s;
        } else {
            twice[a][b] += s;
            twice[b][a] += s;
        }
    }
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| twice[i][j] / 2 + if i == j { link.framings()[i] } else { 0 }).collect())
        .collect();
    let snf = smith_normal_form(&IntMatrix::from_dense(&rows));
    let mut entries = snf.factors.clone();
    entries.extend(std::iter::repeat_n(BigInt::from(0), r - snf.rank));
    AbelianGroup::from_diagonal(&entries)
}

fn word(text: &str) -> FreeWord {
    let names: Vec<String> = ["x", "y", "u", "v"].iter().map(|s| s.to_string()).collect();
    FreeWord::parse(text, &names).unwrap()
}

#[test]
fn two_strand_twists_have_the_closed_forms() {
    for n in 1..=8i64 {
        let bottom = symbolic_propagate(&torus_2(n));
        let k = n / 2;
        let ab = "(x^-1 y u^-1 v)";
        let (left, right) = if n % 2 == 0 {
            (
                (word(&format!("x (x^-1 y)^-{k} {ab}^{k}")), word(&format!("y (x^-1 y)^-{k} {ab}^{k}"))),
                (word(&format!("u (u^-1 v)^-{k} {ab}^{k}")), word(&format!("v (u^-1 v)^-{k} {ab}^{k}"))),
            )
        } else {
            (
                (word(&format!("u (u^-1 v)^-{k} {ab}^{k}")), word(&format!("v (u^-1 v)^-{k} {ab}^{k}"))),
                (
                    word(&format!("x (x^-1 y)^-{} {ab}^{}", k + 1, k + 1)),
                    word(&format!("y (x^-1 y)^-{} {ab}^{}", k + 1, k + 1)),
                ),
            )
        };
        assert_eq!(bottom, vec![left, right], "σ₁^{n}");
    }
}

#[test]
fn even_torus_abelianization_matches_the_two_relators() {
    let names: Vec<String> = vec!["a".into(), "b".into()];
    for k in 1..=4i64 {
        let computed = abelianization(&alpha_form(&presentation(&torus_2(2 * k))).unwrap().hat);
        let relators = vec![
            FreeWord::parse(&format!("a^-{k} (a b)^{k}"), &names).unwrap(),
            FreeWord::parse(&format!("b^-{k} (a b)^{k}"), &names).unwrap(),
        ];
        let stated = abelianization(&Presentation::new(names.clone(), relators));
        assert_eq!(computed, stated, "k = {k}");
        let expected_torsion = if k == 1 { vec![] } else { vec![BigInt::from(k); 2] };
        assert_eq!(computed, AbelianGroup { free_rank: 0, torsion: expected_torsion });
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symbolic_propagation_specializes_to_colorings(
        link in common::framed_braid(6),
        labels in proptest::collection::vec(0usize..6, 6),
    ) {
        let g = make_group("D3").unwrap();
        let strands = link.braid().strands();
        let top: Vec<(usize, usize)> = (0..strands).map(|i| (labels[2 * i], labels[2 * i + 1])).collect();
        let eval = |w: &FreeWord| {
            w.runs().iter().fold(g.identity(), |acc, &(s, e)| g.mul(acc, g.pow(labels[s], e)))
        };
        let symbolic: Vec<(usize, usize)> = symbolic_propagate(&link).iter().map(|(p, q)| (eval(p), eval(q))).collect();
        prop_assert_eq!(symbolic, propagate(&g, &link, &top).0);
    }

    #[test]
    fn free_rank_is_the_component_count(link in common::framed_braid(6)) {
        let p = presentation(&link);
        prop_assert!(p.relators.len() <= 2 * link.braid().strands());
        let af = alpha_form(&p).unwrap();
        prop_assert_eq!(af.free_rank(), link.component_count());
    }

    #[test]
    fn hat_abelianization_is_the_linking_cokernel(link in common::framed_braid(6)) {
        let af = alpha_form(&presentation(&link)).unwrap();
        prop_assert_eq!(abelianization(&af.hat), linking_cokernel(&link));
    }

    #[test]
    fn tietze_passes_keep_the_abelianization(link in common::framed_braid(6)) {
        let hat = alpha_form(&presentation(&link)).unwrap().hat;
        let reference = abelianization(&hat);
        for passes in 0..=hat.generators.len() {
            prop_assert_eq!(abelianization(&tietze_simplify(&hat, passes)), reference.clone());
        }
    }
}
