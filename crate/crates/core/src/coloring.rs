//! Heap colorings of doubled strands: crossing and kink maps, propagation
//! through a framed braid, enumeration, mono/bicolor classification and the
//! Wirtinger check of meridian images.
//!
//! Each strand position carries a pair `(p, q)`. The maps are
//! - positive letter: `((x,y),(u,v)) ↦ ((u,v),(xβ,yβ))`, `β = u⁻¹v`;
//! - negative letter: `((p,q),(r,s)) ↦ ((rq⁻¹p, sq⁻¹p),(p,q))`;
//! - positive kink: `(p,q) ↦ (pα, qα)`, negative kink: `(p,q) ↦ (pα⁻¹, qα⁻¹)`,
//!   with `α = p⁻¹q`.
//!
//! The maps only use multiplication and inversion, so they are written once
//! over [`GroupOps`] and shared with the symbolic (free group) propagation.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::algebra::{FiniteGroup, GroupElement};
use crate::link_model::{CrossingSite, FramedLink, Letter, SiteKind};
use crate::{Error, Result};

/// Multiplication and inversion; all the crossing maps need.
pub trait GroupOps {
    /// Element type.
    type Elem: Clone + PartialEq;
    /// Product `a·b`.
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Inverse `a⁻¹`.
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    /// `a⁻¹·b`.
    fn quotient(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.product(&self.inverse(a), b)
    }
}

impl GroupOps for FiniteGroup {
    type Elem = GroupElement;
    fn product(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.mul(*a, *b)
    }
    fn inverse(&self, a: &GroupElement) -> GroupElement {
        self.inv(*a)
    }
}

/// A doubled-strand label `(p, q)`.
pub type Pair<E> = (E, E);

/// Positive letter on the pairs at positions `i−1, i`: returns the new
/// `(left, right)` pairs.
pub fn cross_positive<G: GroupOps>(g: &G, left: &Pair<G::Elem>, right: &Pair<G::Elem>) -> (Pair<G::Elem>, Pair<G::Elem>) {
    let beta = g.quotient(&right.0, &right.1);
    (right.clone(), (g.product(&left.0, &beta), g.product(&left.1, &beta)))
}

/// Negative letter (inverse of [`cross_positive`]).
pub fn cross_negative<G: GroupOps>(g: &G, left: &Pair<G::Elem>, right: &Pair<G::Elem>) -> (Pair<G::Elem>, Pair<G::Elem>) {
    let gamma = g.quotient(&left.1, &left.0);
    ((g.product(&right.0, &gamma), g.product(&right.1, &gamma)), left.clone())
}

/// One kink of the given sign on a pair.
pub fn kink<G: GroupOps>(g: &G, pair: &Pair<G::Elem>, sign: i8) -> Pair<G::Elem> {
    let alpha = g.quotient(&pair.0, &pair.1);
    let a = if sign > 0 { alpha } else { g.inverse(&alpha) };
    (g.product(&pair.0, &a), g.product(&pair.1, &a))
}

/// Applies one braid letter to a state in place and returns the site
/// record.
pub fn apply_letter<G: GroupOps>(g: &G, state: &mut [Pair<G::Elem>], letter: Letter) -> SiteRecord<G::Elem> {
    let (i, j) = (letter.position - 1, letter.position);
    let (left, right) = (state[i].clone(), state[j].clone());
    if letter.sign > 0 {
        let (nl, nr) = cross_positive(g, &left, &right);
        state[i] = nl;
        state[j] = nr.clone();
        SiteRecord { under_in: left, under_out: nr, over: right, sign: 1 }
    } else {
        let (nl, nr) = cross_negative(g, &left, &right);
        state[i] = nl.clone();
        state[j] = nr;
        SiteRecord { under_in: right, under_out: nl, over: left, sign: -1 }
    }
}

/// Applies one kink to a pair and returns the site record. The over pair
/// of a positive kink is its outgoing pair; of a negative kink, its
/// incoming pair.
pub fn apply_kink<G: GroupOps>(g: &G, pair: &Pair<G::Elem>, sign: i8) -> SiteRecord<G::Elem> {
    let out = kink(g, pair, sign);
    let over = if sign > 0 { out.clone() } else { pair.clone() };
    SiteRecord { under_in: pair.clone(), under_out: out, over, sign }
}

/// What happens at one crossing of a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SiteRecord<E> {
    /// Under pair before the crossing.
    pub under_in: Pair<E>,
    /// Under pair after the crossing.
    pub under_out: Pair<E>,
    /// Over pair.
    pub over: Pair<E>,
    /// Crossing sign.
    pub sign: i8,
}

/// Applies one crossing site of `link` to a state (kinks act on the pair at
/// their strand position).
pub fn apply_crossing<G: GroupOps>(
    g: &G,
    link: &FramedLink,
    state: &[Pair<G::Elem>],
    site: &CrossingSite,
) -> Result<Vec<Pair<G::Elem>>> {
    if state.len() != link.braid().strands() {
        return Err(Error::Mismatch("state length differs from the strand count".into()));
    }
    let mut out = state.to_vec();
    match site.kind {
        SiteKind::Letter { index } => {
            let l = *link.braid().letters().get(index).ok_or_else(|| Error::Link("letter index out of range".into()))?;
            apply_letter(g, &mut out, l);
        }
        SiteKind::Kink { strand, .. } => {
            let p = out.get(strand).ok_or_else(|| Error::Link("kink strand out of range".into()))?.clone();
            out[strand] = apply_kink(g, &p, site.sign).under_out;
        }
    }
    Ok(out)
}

/// Propagates a top state through the kinks (at the top of their strands)
/// and then the braid letters. Returns the bottom state and one record per
/// site, in [`FramedLink::crossing_sites`] order.
pub fn propagate<G: GroupOps>(g: &G, link: &FramedLink, top: &[Pair<G::Elem>]) -> (Vec<Pair<G::Elem>>, Vec<SiteRecord<G::Elem>>) {
    let mut state = top.to_vec();
    let letters = link.braid().letters();
    let mut kink_records = Vec::new();
    for (c, &f) in link.framings().iter().enumerate() {
        let strand = link.kink_strands()[c];
        let sign: i8 = if f > 0 { 1 } else { -1 };
        for _ in 0..f.unsigned_abs() {
            let r = apply_kink(g, &state[strand], sign);
            state[strand] = r.under_out.clone();
            kink_records.push(r);
        }
    }
    let mut records = Vec::with_capacity(letters.len() + kink_records.len());
    for &l in letters {
        records.push(apply_letter(g, &mut state, l));
    }
    records.extend(kink_records);
    (state, records)
}

/// A coloring: a top state fixed by propagation, with its site records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    /// Top labels per strand position.
    pub initial: Vec<Pair<GroupElement>>,
    /// One record per crossing site.
    pub records: Vec<SiteRecord<GroupElement>>,
}

/// Number of candidate top states, `|X|^(2·strands)`.
pub fn state_space(link: &FramedLink, g: &FiniteGroup) -> u128 {
    (g.order() as u128).saturating_pow(2 * link.braid().strands() as u32)
}

/// Default cap on enumerated states.
pub const DEFAULT_STATE_BUDGET: u128 = 100_000_000;

fn decode_state(mut index: u128, strands: usize, n: usize) -> Vec<Pair<GroupElement>> {
    let mut digits = vec![0usize; 2 * strands];
    for d in digits.iter_mut().rev() {
        *d = (index % n as u128) as usize;
        index /= n as u128;
    }
    digits.chunks(2).map(|c| (c[0], c[1])).collect()
}

/// Colorings whose top state index lies in `range`, in index order. State
/// index `Σ d_k |X|^(2s−1−k)` encodes the labels `p_0, q_0, p_1, q_1, …`.
pub fn colorings_in_range(link: &FramedLink, g: &FiniteGroup, range: Range<u128>) -> Vec<Coloring> {
    let strands = link.braid().strands();
    let total = state_space(link, g);
    let mut out = Vec::new();
    for idx in range.start..range.end.min(total) {
        let top = decode_state(idx, strands, g.order());
        let (bottom, records) = propagate(g, link, &top);
        if bottom == top {
            out.push(Coloring { initial: top, records });
        }
    }
    out
}

/// Number of colorings whose top state index lies in `range`.
pub fn count_in_range(link: &FramedLink, g: &FiniteGroup, range: Range<u128>) -> u64 {
    let strands = link.braid().strands();
    let total = state_space(link, g);
    let mut count = 0;
    for idx in range.start..range.end.min(total) {
        let top = decode_state(idx, strands, g.order());
        if propagate(g, link, &top).0 == top {
            count += 1;
        }
    }
    count
}

fn check_budget(link: &FramedLink, g: &FiniteGroup, budget: u128) -> Result<u128> {
    let total = state_space(link, g);
    if total > budget {
        return Err(Error::Budget { what: "coloring states", needed: total, limit: budget });
    }
    Ok(total)
}

/// All colorings of `link` by `g`, in top-state index order.
pub fn enumerate_colorings(link: &FramedLink, g: &FiniteGroup, budget: u128) -> Result<Vec<Coloring>> {
    let total = check_budget(link, g, budget)?;
    Ok(colorings_in_range(link, g, 0..total))
}

/// `Col_X(L)`, the number of colorings.
pub fn count_colorings(link: &FramedLink, g: &FiniteGroup, budget: u128) -> Result<u64> {
    let total = check_budget(link, g, budget)?;
    Ok(count_in_range(link, g, 0..total))
}

/// Whether a component's two parallel strands carry equal labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentColor {
    /// `p = q` along the component.
    Monochromatic,
    /// `p ≠ q` along the component.
    Bicolored,
}

/// Per-component mono/bicolor flags of a coloring.
pub fn classify(link: &FramedLink, c: &Coloring) -> Vec<ComponentColor> {
    link.components()
        .iter()
        .map(|comp| {
            let (p, q) = c.initial[comp[0]];
            if p == q {
                ComponentColor::Monochromatic
            } else {
                ComponentColor::Bicolored
            }
        })
        .collect()
}

/// Meridian images at every site and the outcome of the conjugation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WirtingerCheck {
    /// `(λ(under_in), λ(over), λ(under_out))` per site, `λ(p,q) = p⁻¹q`.
    pub images: Vec<[GroupElement; 3]>,
    /// True when `λ(out) = w⁻¹ λ(in) w` with `w = λ(over)^sign` at every site.
    pub holds: bool,
}

/// Wirtinger images of a coloring and the conjugation check.
pub fn wirtinger_images(g: &FiniteGroup, c: &Coloring) -> WirtingerCheck {
    let lambda = |p: &Pair<GroupElement>| g.mul(g.inv(p.0), p.1);
    let mut holds = true;
    let images = c
        .records
        .iter()
        .map(|r| {
            let (a, o, b) = (lambda(&r.under_in), lambda(&r.over), lambda(&r.under_out));
            let w = if r.sign > 0 { o } else { g.inv(o) };
            holds &= b == g.mul(g.mul(g.inv(w), a), w);
            [a, o, b]
        })
        .collect();
    WirtingerCheck { images, holds }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_group;
    use crate::link_model::{cord, torus_2};

    #[test]
    fn kink_on_z3() {
        let g = make_group("Z3").unwrap();
        assert_eq!(kink(&g, &(0, 1), 1), (1, 2));
        assert_eq!(kink(&g, &kink(&g, &(0, 1), 1), -1), (0, 1));
    }

    #[test]
    fn letters_are_inverse() {
        let g = make_group("D3").unwrap();
        for (l, r) in [((0, 4), (5, 2)), ((1, 1), (3, 2))] {
            let (a, b) = cross_positive(&g, &l, &r);
            assert_eq!(cross_negative(&g, &a, &b), (l, r));
        }
    }

    #[test]
    fn cord_counts() {
        let z3 = make_group("Z3").unwrap();
        let z5 = make_group("Z5").unwrap();
        assert_eq!(count_colorings(&cord(3), &z3, DEFAULT_STATE_BUDGET).unwrap(), 9);
        assert_eq!(count_colorings(&cord(3), &z5, DEFAULT_STATE_BUDGET).unwrap(), 5);
        let cols = enumerate_colorings(&cord(3), &z3, DEFAULT_STATE_BUDGET).unwrap();
        let bi = cols.iter().filter(|c| classify(&cord(3), c)[0] == ComponentColor::Bicolored).count();
        assert_eq!(bi, 6);
    }

    #[test]
    fn hopf_link_over_d3() {
        let g = make_group("D3").unwrap();
        let cols = enumerate_colorings(&torus_2(2), &g, DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(cols.len(), 36);
        assert!(cols.iter().all(|c| wirtinger_images(&g, c).holds));
    }

    #[test]
    fn budget_guard() {
        let g = make_group("D3").unwrap();
        assert!(matches!(count_colorings(&torus_2(2), &g, 10), Err(Error::Budget { .. })));
    }
}
