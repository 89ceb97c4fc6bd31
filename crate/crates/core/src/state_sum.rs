//! Boltzmann weights and the componentwise cocycle invariant.
//!
//! At a site with record `(under_in, over, under_out)` and sign `ε` the two
//! weights (one per parallel strand `ℓ ∈ {0, 1}`) are
//! - `ε = +1`: `ψ(under_in.ℓ, over.0, over.1)`;
//! - `ε = −1`: `−ψ(under_out.ℓ, over.0, over.1)`.
//!
//! Coefficients are written additively (an integer `k` stands for `g^k`).
//! For each coloring and component `j`, the pair of sums of weights over
//! the sites whose under-arc lies on `j` is recorded; the invariant is the
//! multiset of these per-component tuples over all colorings.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{FiniteGroup, GroupElement};
use crate::coloring::{enumerate_colorings, Coloring, SiteRecord};
use crate::link_model::FramedLink;
use crate::tsd_complex::{first_cocycle_failure, Coefficients, Cochain2};
use crate::{Error, Result};

/// Per-component weight pairs `(B_0, B_1)` of one coloring.
pub type InvariantKey = Vec<(BigInt, BigInt)>;

/// Multiset of per-component weight tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantValue {
    coeff: Coefficients,
    components: usize,
    terms: BTreeMap<InvariantKey, u64>,
}

impl InvariantValue {
    /// The empty value.
    pub fn empty(coeff: Coefficients, components: usize) -> Self {
        InvariantValue { coeff, components, terms: BTreeMap::new() }
    }

    /// Adds `mult` copies of a key.
    pub fn add(&mut self, key: InvariantKey, mult: u64) {
        assert_eq!(key.len(), self.components, "key length must equal the component count");
        let key = key.into_iter().map(|(a, b)| (self.coeff.reduce(&a), self.coeff.reduce(&b))).collect();
        *self.terms.entry(key).or_insert(0) += mult;
    }

    /// Merges another value into this one.
    pub fn merge(&mut self, other: &InvariantValue) -> Result<()> {
        if other.coeff != self.coeff || other.components != self.components {
            return Err(Error::Mismatch("invariant values from different contexts".into()));
        }
        for (k, m) in &other.terms {
            *self.terms.entry(k.clone()).or_insert(0) += m;
        }
        Ok(())
    }

    /// Coefficients.
    pub fn coefficients(&self) -> Coefficients {
        self.coeff
    }

    /// Number of components.
    pub fn components(&self) -> usize {
        self.components
    }

    /// Terms in canonical key order.
    pub fn terms(&self) -> &BTreeMap<InvariantKey, u64> {
        &self.terms
    }

    /// Multiplicity of a key given by machine integers.
    pub fn multiplicity(&self, key: &[(i64, i64)]) -> u64 {
        let k: InvariantKey =
            key.iter().map(|(a, b)| (self.coeff.reduce(&BigInt::from(*a)), self.coeff.reduce(&BigInt::from(*b)))).collect();
        self.terms.get(&k).copied().unwrap_or(0)
    }

    /// Total multiplicity (the number of colorings).
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// True when every coloring contributes the all-identity tuple.
    pub fn is_trivial(&self) -> bool {
        self.terms.keys().all(|k| k.iter().all(|(a, b)| a.is_zero() && b.is_zero()))
    }

    /// Reorders components: new component `i` is old component `perm[i]`.
    pub fn permute_components(&self, perm: &[usize]) -> Result<InvariantValue> {
        if perm.len() != self.components {
            return Err(Error::Mismatch("permutation length differs from the component count".into()));
        }
        let mut out = InvariantValue::empty(self.coeff, self.components);
        for (k, m) in &self.terms {
            out.add(perm.iter().map(|&i| k[i].clone()).collect(), *m);
        }
        Ok(out)
    }
}

fn power(k: &BigInt) -> String {
    if k.is_zero() {
        "e".into()
    } else if *k == BigInt::from(1) {
        "g".into()
    } else {
        format!("g^{k}")
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, m)| {
                let comps: Vec<String> = k.iter().map(|(a, b)| format!("{}⊗{}", power(a), power(b))).collect();
                format!("{m}({})", comps.join(", "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Weight of one site on strand `strand ∈ {0, 1}`.
pub fn site_weight(psi: &Cochain2, record: &SiteRecord<GroupElement>, strand: usize) -> BigInt {
    let pick = |p: &(GroupElement, GroupElement)| if strand == 0 { p.0 } else { p.1 };
    let (u, v) = record.over;
    if record.sign > 0 {
        psi.get(pick(&record.under_in), u, v).clone()
    } else {
        -psi.get(pick(&record.under_out), u, v).clone()
    }
}

/// Per-component weight pairs of one coloring.
pub fn coloring_key(link: &FramedLink, psi: &Cochain2, coloring: &Coloring) -> InvariantKey {
    let mut key: InvariantKey = (0..link.component_count()).map(|_| (BigInt::zero(), BigInt::zero())).collect();
    for (site, record) in link.crossing_sites().iter().zip(&coloring.records) {
        let entry = &mut key[site.under_component];
        entry.0 += site_weight(psi, record, 0);
        entry.1 += site_weight(psi, record, 1);
    }
    let c = psi.coefficients();
    key.into_iter().map(|(a, b)| (c.reduce(&a), c.reduce(&b))).collect()
}

/// Aggregates the invariant over given colorings (no cocycle check).
pub fn invariant_of_colorings(link: &FramedLink, psi: &Cochain2, colorings: &[Coloring]) -> InvariantValue {
    let mut value = InvariantValue::empty(psi.coefficients(), link.component_count());
    for c in colorings {
        value.add(coloring_key(link, psi, c), 1);
    }
    value
}

/// Checks that `ψ` is a 2-cocycle on `g`.
pub fn require_cocycle(g: &FiniteGroup, psi: &Cochain2) -> Result<()> {
    if psi.order() != g.order() {
        return Err(Error::Mismatch("cochain and group orders differ".into()));
    }
    match first_cocycle_failure(g, psi) {
        None => Ok(()),
        Some(q) => Err(Error::NotACocycle(format!("the cocycle condition fails at {q:?}"))),
    }
}

/// The cocycle invariant `Ψ_ψ(L)` over all colorings by `g`.
pub fn invariant(link: &FramedLink, g: &FiniteGroup, psi: &Cochain2, budget: u128) -> Result<InvariantValue> {
    require_cocycle(g, psi)?;
    let colorings = enumerate_colorings(link, g, budget)?;
    Ok(invariant_of_colorings(link, psi, &colorings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_group;
    use crate::cocycle_lib::{phi, ring_cocycle};
    use crate::coloring::DEFAULT_STATE_BUDGET;
    use crate::link_model::{cord, torus_2};
    use crate::tsd_complex::coboundary1;

    #[test]
    fn odd_cord_is_trivial() {
        let g = make_group("Z3").unwrap();
        let psi = ring_cocycle(3, 1, 0, 0).unwrap().cochain;
        let v = invariant(&cord(3), &g, &psi, DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(v.multiplicity(&[(0, 0)]), 9);
        assert_eq!(v.total(), 9);
    }

    #[test]
    fn coboundary_gives_trivial_value() {
        let g = make_group("Z3").unwrap();
        let f: Vec<BigInt> = [2, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        let psi = coboundary1(&g, &f, Coefficients::Integers).unwrap();
        let v = invariant(&torus_2(3), &g, &psi, DEFAULT_STATE_BUDGET).unwrap();
        assert!(v.is_trivial());
    }

    #[test]
    fn non_cocycles_are_rejected() {
        let g = make_group("Z2").unwrap();
        let mut psi = Cochain2::zero(2, Coefficients::Integers);
        psi.set(0, 0, 1, BigInt::from(1));
        assert!(matches!(invariant(&cord(1), &g, &psi, DEFAULT_STATE_BUDGET), Err(Error::NotACocycle(_))));
    }

    #[test]
    fn multiplicities_sum_to_coloring_count() {
        let g = make_group("Z2").unwrap();
        let psi = phi(2, 1).unwrap().cochain;
        let v = invariant(&torus_2(4), &g, &psi, DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(v.total(), 16);
        assert_eq!(v.components(), 2);
    }
}
