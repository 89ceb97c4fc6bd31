//! Shared generators and small fixtures for the integration tests.

#![allow(dead_code)]

use heapknot_core::algebra::FiniteGroup;
use heapknot_core::link_model::{BraidWord, FramedLink};
use proptest::prelude::*;

/// Random framed braid: 1–3 strands, up to `max_letters` letters, framings
/// in `[-2, 2]`.
pub fn framed_braid(max_letters: usize) -> impl Strategy<Value = FramedLink> {
    (1usize..=3)
        .prop_flat_map(move |strands| {
            let letter = if strands == 1 {
                Just(0i64).boxed()
            } else {
                let top = strands as i64 - 1;
                prop_oneof![1..=top, -top..=-1].boxed()
            };
            let len = if strands == 1 { 0..=0 } else { 0..=max_letters };
            (Just(strands), proptest::collection::vec(letter, len), proptest::collection::vec(-2i64..=2, 3))
        })
        .prop_map(|(strands, letters, framing_pool)| {
            let braid = BraidWord::new(strands, &letters).expect("valid letters");
            let count = cycle_count(&braid.strand_ends());
            FramedLink::new(braid, &framing_pool[..count]).expect("framed closure")
        })
}

/// Number of cycles of a permutation given as an image list.
pub fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut count = 0;
    for start in 0..perm.len() {
        if !seen[start] {
            count += 1;
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                s = perm[s];
            }
        }
    }
    count
}

/// The quaternion group from an explicit multiplication table, with
/// elements `1, i, j, k, -1, -i, -j, -k`.
pub fn quaternion_group() -> FiniteGroup {
    // Products of the units 1, i, j, k as (sign, unit).
    let unit = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let table: Vec<Vec<usize>> = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (neg, u) = unit(a % 4, b % 4);
                    let sign = (a / 4 + b / 4 + usize::from(neg)) % 2;
                    4 * sign + u
                })
                .collect()
        })
        .collect();
    let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"].iter().map(|s| s.to_string()).collect();
    FiniteGroup::from_table(table, names, "Q8").expect("quaternion table")
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}
